#![allow(dead_code)]

use peripheral::cayley::Subtree;
use peripheral::cutsets::lines_meeting;
use peripheral::pattern::{Line, LinePattern};
use peripheral::whitehead::{wh_subtree, wh_vertex, ComponentId, WhiteheadGraph};
use peripheral::words::{random_cyclically_reduced_word, random_reduced_word, Letter, Word};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn w(s: &str) -> Word {
    s.parse().unwrap()
}

pub fn random_pattern<R: Rng>(rng: &mut R, max_words: usize, lengths: std::ops::RangeInclusive<usize>) -> LinePattern {
    let count = rng.random_range(1..=max_words);
    let raw: Vec<Word> = (0..count)
        .map(|_| {
            let n = rng.random_range(lengths.clone());
            random_cyclically_reduced_word(2, n, rng)
        })
        .collect();
    LinePattern::induced(2, &raw).unwrap()
}

/// WH of the geodesic from the identity to `end`, built by splicing one
/// vertex graph at a time.
pub fn spliced_path(p: &LinePattern, end: &Word) -> WhiteheadGraph {
    let mut g = wh_vertex(p);
    let mut at = Word::identity();
    for &x in end.letters() {
        let next = at.times(x);
        let near = g.delete_vertex(&ComponentId::frontier(at.clone(), x)).unwrap();
        let far = wh_subtree(p, &Subtree::single(2, next.clone()))
            .delete_vertex(&ComponentId::frontier(next.clone(), x.inverse()))
            .unwrap();
        g = near.splice(&far).unwrap();
        at = next;
    }
    g
}

/// Spliced and directly built graphs of a random path of length at most 3
/// agree as line labelled edge lists.
pub fn splice_matches_direct<R: Rng>(rng: &mut R) -> Result<(), String> {
    let p = random_pattern(rng, 3, 1..=8);
    let end = random_reduced_word(2, rng.random_range(1..=3), rng);
    let spliced = spliced_path(&p, &end);
    let direct = wh_subtree(&p, &Subtree::path(2, &Word::identity(), &end));
    if spliced.labeled_edges() != direct.labeled_edges() {
        return Err(format!("pattern {:?} path {end}", p.to_file_string()));
    }
    if spliced.vertices().collect::<Vec<_>>() != direct.vertices().collect::<Vec<_>>() {
        return Err(format!("vertex sets differ for path {end}"));
    }
    Ok(())
}

pub fn two_connected(g: &WhiteheadGraph) -> bool {
    g.component_count() == 1 && g.cut_vertices().is_empty()
}

pub struct AddConnectedCase {
    pub pattern: LinePattern,
    pub a: Subtree,
    pub b: Subtree,
    pub removed: Vec<Line>,
}

fn random_path_from<R: Rng>(rng: &mut R, start: &Word, first: Option<Letter>, len: usize) -> Vec<Word> {
    let mut out = vec![start.clone()];
    let mut at = start.clone();
    let mut prev = first;
    for _ in 0..len {
        let x = loop {
            let x = Letter::from_code(rng.random_range(0..4));
            if Some(x.inverse()) != prev && Some(x.inverse()) != at.last() {
                break x;
            }
        };
        at = at.times(x);
        prev = Some(x);
        out.push(at.clone());
    }
    out
}

/// A random pair of adjacent disjoint subtrees with a random set of lines
/// to remove, or `None` if `WH(A)` minus the lines is not 2-connected.
pub fn add_connected_case<R: Rng>(rng: &mut R) -> Option<AddConnectedCase> {
    let pattern = random_pattern(rng, 2, 4..=30);
    let b_len = rng.random_range(0..=2);
    let b_vertices = random_path_from(rng, &Word::identity(), None, b_len);
    let b = Subtree::from_vertices(2, b_vertices).unwrap();
    let frontier = b.frontier();
    let (inside, x) = frontier[rng.random_range(0..frontier.len())].clone();
    let a_root = inside.times(x);
    let a_len = rng.random_range(0..=1);
    let a_vertices = random_path_from(rng, &a_root, Some(x), a_len);
    let a = Subtree::from_vertices(2, a_vertices).unwrap();
    if a.vertices().any(|v| b.contains(v)) {
        return None;
    }
    let union = a.union(&b).unwrap();
    let mut candidates = lines_meeting(&pattern, &union);
    candidates.shuffle(rng);
    candidates.truncate(rng.random_range(0..=3));
    let case = AddConnectedCase { pattern, a, b, removed: candidates };
    two_connected(&wh_subtree(&case.pattern, &case.a).remove_lines(&case.removed)).then_some(case)
}

pub fn add_connected_holds(c: &AddConnectedCase) -> bool {
    let union = c.a.union(&c.b).unwrap();
    let whole = wh_subtree(&c.pattern, &union).remove_lines(&c.removed).component_count();
    let part = wh_subtree(&c.pattern, &c.b).remove_lines(&c.removed).component_count();
    whole == part
}
