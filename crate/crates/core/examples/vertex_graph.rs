//! Vertex Whitehead graph of the pattern {ab, a^2 b^-1}, printed as DOT.

use peripheral::pattern::LinePattern;
use peripheral::whitehead::wh_vertex;
use peripheral::words::Word;

fn main() -> peripheral::Result<()> {
    let p = LinePattern::parse("ab aaB", None)?;
    let g = wh_vertex(&p);
    println!("{} vertices, {} edges", g.vertex_count(), g.edge_count());
    for line in p.lines_through_vertex(&Word::identity()) {
        let (a, b) = g.edge(&line).expect("every line through 1 is an edge");
        println!("  {line}: {a} -- {b}");
    }
    print!("{}", g.to_dot());
    Ok(())
}
