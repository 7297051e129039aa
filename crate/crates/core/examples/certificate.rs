//! A long random word is 4-full with many edges between every pair of
//! Whitehead graph vertices, which rules out small cut sets; the search
//! near the identity agrees.

use peripheral::cutsets::{certify_lower_bound, find_cut_sets};
use peripheral::genericity::{eval_property, random_words, LengthModel, PropertySpec};
use peripheral::pattern::LinePattern;

fn main() -> peripheral::Result<()> {
    let seed = 6;
    let words = random_words(2, 2000, 1, seed, LengthModel::Sphere)?;
    let w = &words[0];
    println!("H(3) holds: {}", eval_property(&PropertySpec::H(3), 2, w));
    let p = LinePattern::induced(2, &words)?;
    let cert = certify_lower_bound(&p);
    println!("4-full {}, min multiplicity {}, bound {:?}", cert.has_4_full_word, cert.min_multiplicity, cert.certified_lower_bound);
    let search = find_cut_sets(&p, 2, 2)?;
    println!("{} lines meet the ball, {} cut sets of at most 2 lines", search.lines_meeting_ball, search.reports.len());
    Ok(())
}
