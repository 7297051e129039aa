//! Builds the Whitehead graph of the edge [1, a] by splicing two vertex
//! graphs and compares it with the direct construction.

use peripheral::cayley::Subtree;
use peripheral::pattern::LinePattern;
use peripheral::whitehead::{wh_subtree, wh_vertex, ComponentId};
use peripheral::words::{Letter, Word};

fn main() -> peripheral::Result<()> {
    let p = LinePattern::parse("ab aaB", None)?;
    let a = Letter::new(0, false);
    let at_a: Word = "a".parse()?;
    let near = wh_vertex(&p).delete_vertex(&ComponentId::frontier(Word::identity(), a))?;
    let far = wh_subtree(&p, &Subtree::single(2, at_a.clone())).delete_vertex(&ComponentId::frontier(at_a.clone(), a.inverse()))?;
    let spliced = near.splice(&far)?;
    let direct = wh_subtree(&p, &Subtree::path(2, &Word::identity(), &at_a));
    println!("spliced: {} vertices, {} edges", spliced.vertex_count(), spliced.edge_count());
    for (line, u, v) in spliced.labeled_edges() {
        println!("  {line}: {u} -- {v}");
    }
    println!("same as direct construction: {}", spliced.labeled_edges() == direct.labeled_edges());
    println!("components {}, cut vertices {:?}", spliced.component_count(), spliced.cut_vertices());
    Ok(())
}
