mod common;

use common::*;
use peripheral::cayley::Subtree;
use peripheral::whitehead::{wh_subtree, wh_vertex};
use peripheral::words::{random_reduced_word, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn splicing_paths_matches_direct_construction() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for _ in 0..100 {
        splice_matches_direct(&mut rng).unwrap();
    }
}

#[test]
fn adding_a_two_connected_piece_keeps_component_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 200 {
        attempts += 1;
        assert!(attempts < 20_000, "too few instances satisfy the hypothesis");
        if let Some(case) = add_connected_case(&mut rng) {
            assert!(add_connected_holds(&case), "{:?} {:?} {:?}", case.a, case.b, case.removed);
            checked += 1;
        }
    }
}

#[test]
fn two_connected_vertex_graph_spreads_to_subtrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(300);
    let mut checked = 0;
    while checked < 30 {
        let p = random_pattern(&mut rng, 2, 6..=24);
        if !two_connected(&wh_vertex(&p)) {
            continue;
        }
        checked += 1;
        assert!(two_connected(&wh_subtree(&p, &Subtree::ball(2, 1, 100).unwrap())));
        let end = random_reduced_word(2, rng.random_range(1..=4), &mut rng);
        assert!(two_connected(&wh_subtree(&p, &Subtree::path(2, &Word::identity(), &end))));
    }
}

#[test]
fn two_word_path_graph() {
    let p = peripheral::pattern::LinePattern::parse("ab aaB", None).unwrap();
    let g = spliced_path(&p, &w("a"));
    assert_eq!(g.edge_count(), 7);
    assert_eq!(g.vertex_count(), 6);
}
