//! The lines through one edge of the tree always form a cut set; its core
//! prunes down to that edge.

use peripheral::cutsets::edge_cut_set;
use peripheral::pattern::LinePattern;
use peripheral::words::{Letter, Word};

fn main() -> peripheral::Result<()> {
    let p = LinePattern::parse("ab aaB", None)?;
    let report = edge_cut_set(&p, &Word::identity(), Letter::new(0, false))?;
    for line in &report.lines {
        println!("  {line}");
    }
    let core = report.pruned_core.expect("several lines");
    println!("core {} with {} vertices, {} components", core.kind, core.subtree.len(), report.component_count);
    Ok(())
}
