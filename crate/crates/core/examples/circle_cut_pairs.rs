//! The commutator pattern has a circle as its boundary: pairs of lines cut
//! it into two pieces.

use peripheral::cutsets::{boundary_cut_check, certify_lower_bound, default_depth, find_cut_sets, BoundaryPoint};
use peripheral::pattern::LinePattern;

fn main() -> peripheral::Result<()> {
    let p = LinePattern::parse("abAB", None)?;
    let search = find_cut_sets(&p, 2, 2)?;
    println!("{} lines meet the ball of radius 2, {} cut sets found", search.lines_meeting_ball, search.reports.len());
    for report in search.reports.iter().take(5) {
        let lines: Vec<String> = report.lines.iter().map(ToString::to_string).collect();
        println!("  {} -> {} components, minimal {:?}", lines.join(" "), report.component_count, report.minimal);
    }
    let pair = &search.reports[0];
    let points: Vec<BoundaryPoint> = pair.lines.iter().cloned().map(BoundaryPoint::Line).collect();
    let check = boundary_cut_check(&p, &points, default_depth(&p, &points)?)?;
    println!(
        "boundary minus the first pair: {} components at depth {}, {} at depth {}, stabilized {}",
        check.component_count,
        check.depth,
        check.count_at_depth_plus_two,
        check.depth + 2,
        check.stabilized
    );
    println!("certificate: {:?}", certify_lower_bound(&p));
    Ok(())
}
