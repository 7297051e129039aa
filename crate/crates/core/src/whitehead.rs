//! Generalized Whitehead graphs of finite subtrees: vertices are the
//! complementary components (frontier edges), edges are the pattern lines
//! crossing the subtree.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::cayley::Subtree;
use crate::error::{Error, Result};
use crate::pattern::{Line, LinePattern};
use crate::words::{Letter, Word};

pub const DOT_FORMAT_TAG: &str = "// peripheral-wh-dot v1";
pub const JSON_FORMAT_TAG: &str = "peripheral-wh-json v1";

/// A vertex of a Whitehead graph: the complementary component behind the
/// frontier edge `(inside, letter)`, or a terminal left by vertex deletion.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentId {
    Frontier { inside: Word, letter: Letter },
    Loose(usize),
}

impl ComponentId {
    pub fn frontier(inside: Word, letter: Letter) -> ComponentId {
        ComponentId::Frontier { inside, letter }
    }

    pub fn is_loose(&self) -> bool {
        matches!(self, ComponentId::Loose(_))
    }
}

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentId::Frontier { inside, letter } => write!(f, "{inside}:{letter}"),
            ComponentId::Loose(i) => write!(f, "loose#{i}"),
        }
    }
}

impl fmt::Debug for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for ComponentId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn ordered(a: ComponentId, b: ComponentId) -> (ComponentId, ComponentId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct WhiteheadGraph {
    subtree: Subtree,
    vertices: BTreeSet<ComponentId>,
    edges: BTreeMap<Line, (ComponentId, ComponentId)>,
    /// Loose terminal id → the deleted frontier edge it replaced.
    loose: BTreeMap<usize, (Word, Letter)>,
    next_loose: usize,
    /// Deleted frontier edges not yet spliced, including ones no line crosses.
    deleted: BTreeSet<(Word, Letter)>,
}

/// The Whitehead graph of a single vertex, the identity.
pub fn wh_vertex(p: &LinePattern) -> WhiteheadGraph {
    wh_subtree(p, &Subtree::single(p.rank(), Word::identity()))
}

/// The Whitehead graph of a finite subtree.
pub fn wh_subtree(p: &LinePattern, x: &Subtree) -> WhiteheadGraph {
    let frontier = x.frontier();
    let mut exits: BTreeMap<Line, Vec<ComponentId>> = BTreeMap::new();
    for (v, letter) in &frontier {
        for line in p.lines_through_edge(v, *letter) {
            exits.entry(line).or_default().push(ComponentId::frontier(v.clone(), *letter));
        }
    }
    let edges = exits
        .into_iter()
        .map(|(line, ends)| {
            debug_assert_eq!(ends.len(), 2, "line {line} exits {ends:?}");
            let mut ends = ends.into_iter();
            let (a, b) = (ends.next().unwrap(), ends.next().unwrap());
            (line, ordered(a, b))
        })
        .collect();
    WhiteheadGraph {
        subtree: x.clone(),
        vertices: frontier.into_iter().map(|(v, l)| ComponentId::frontier(v, l)).collect(),
        edges,
        loose: BTreeMap::new(),
        next_loose: 0,
        deleted: BTreeSet::new(),
    }
}

impl WhiteheadGraph {
    pub fn subtree(&self) -> &Subtree {
        &self.subtree
    }

    pub fn vertices(&self) -> impl Iterator<Item = &ComponentId> + '_ {
        self.vertices.iter()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Line, &ComponentId, &ComponentId)> + '_ {
        self.edges.iter().map(|(l, (a, b))| (l, a, b))
    }

    pub fn edge(&self, line: &Line) -> Option<(&ComponentId, &ComponentId)> {
        self.edges.get(line).map(|(a, b)| (a, b))
    }

    pub fn loose_edge_count(&self) -> usize {
        self.edges.values().filter(|(a, b)| a.is_loose() || b.is_loose()).count()
    }

    /// Deletes a vertex; every incident edge keeps its other end and gets a
    /// fresh loose terminal.
    pub fn delete_vertex(&self, v: &ComponentId) -> Result<WhiteheadGraph> {
        let ComponentId::Frontier { inside, letter } = v else {
            return Err(Error::VertexAbsent(v.to_string()));
        };
        if !self.vertices.contains(v) {
            return Err(Error::VertexAbsent(v.to_string()));
        }
        let mut g = self.clone();
        g.vertices.remove(v);
        g.deleted.insert((inside.clone(), *letter));
        for (a, b) in g.edges.values_mut() {
            for end in [&mut *a, &mut *b] {
                if end == v {
                    *end = ComponentId::Loose(g.next_loose);
                    g.loose.insert(g.next_loose, (inside.clone(), *letter));
                    g.next_loose += 1;
                }
            }
            let (x, y) = ordered(a.clone(), b.clone());
            *a = x;
            *b = y;
        }
        Ok(g)
    }

    fn loose_lines_at(&self, deleted: &(Word, Letter)) -> BTreeMap<Line, ComponentId> {
        let mut out = BTreeMap::new();
        for (line, (a, b)) in &self.edges {
            for (end, other) in [(a, b), (b, a)] {
                if let ComponentId::Loose(i) = end {
                    if self.loose.get(i) == Some(deleted) {
                        out.insert(line.clone(), other.clone());
                    }
                }
            }
        }
        out
    }

    /// Glues two graphs whose deleted vertices are the two directions of one
    /// tree edge joining their subtrees, pairing loose edges by line.
    pub fn splice(&self, other: &WhiteheadGraph) -> Result<WhiteheadGraph> {
        let pair = self.deleted.iter().find_map(|(u, x)| {
            let back = (u.times(*x), x.inverse());
            other.deleted.contains(&back).then(|| ((u.clone(), *x), back))
        });
        let Some((da, db)) = pair else {
            return Err(Error::SpliceMismatch("deleted vertices are not the two sides of one edge".into()));
        };
        if self.subtree.contains(&db.0) || other.subtree.contains(&da.0) {
            return Err(Error::SpliceMismatch("subtrees overlap".into()));
        }
        let la = self.loose_lines_at(&da);
        let lb = other.loose_lines_at(&db);
        if la.keys().ne(lb.keys()) {
            return Err(Error::SpliceMismatch(format!(
                "{} loose lines on one side, {} on the other, differing as sets",
                la.len(),
                lb.len()
            )));
        }
        let offset = self.next_loose;
        let shift = |c: &ComponentId| match c {
            ComponentId::Loose(i) => ComponentId::Loose(i + offset),
            f => f.clone(),
        };
        let mut edges = BTreeMap::new();
        for (line, (a, b)) in &self.edges {
            if !la.contains_key(line) {
                edges.insert(line.clone(), (a.clone(), b.clone()));
            }
        }
        for (line, (a, b)) in &other.edges {
            if !lb.contains_key(line) {
                if edges.contains_key(line) {
                    return Err(Error::SpliceMismatch(format!("line {line} crosses both sides without the edge")));
                }
                edges.insert(line.clone(), ordered(shift(a), shift(b)));
            }
        }
        for (line, a) in &la {
            edges.insert(line.clone(), ordered(a.clone(), shift(&lb[line])));
        }
        let mut loose = BTreeMap::new();
        for (i, d) in &self.loose {
            if *d != da {
                loose.insert(*i, d.clone());
            }
        }
        for (i, d) in &other.loose {
            if *d != db {
                loose.insert(i + offset, d.clone());
            }
        }
        Ok(WhiteheadGraph {
            subtree: self.subtree.union(&other.subtree)?,
            vertices: self.vertices.union(&other.vertices).cloned().collect(),
            edges,
            loose,
            next_loose: offset + other.next_loose,
            deleted: self.deleted.iter().chain(&other.deleted).filter(|d| **d != da && **d != db).cloned().collect(),
        })
    }

    /// Removes the edges of the given lines; absent lines are ignored.
    pub fn remove_lines<'a, I: IntoIterator<Item = &'a Line>>(&self, lines: I) -> WhiteheadGraph {
        let mut g = self.clone();
        for l in lines {
            g.edges.remove(l);
        }
        g
    }

    /// Connected components of the real vertices; loose terminals do not
    /// count and do not connect anything.
    pub fn components(&self) -> Components {
        let index: BTreeMap<&ComponentId, usize> = self.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut uf = UnionFind::<usize>::new(index.len());
        for (a, b) in self.edges.values() {
            if let (Some(&i), Some(&j)) = (index.get(a), index.get(b)) {
                uf.union(i, j);
            }
        }
        let mut parts: BTreeMap<usize, Vec<ComponentId>> = BTreeMap::new();
        for (v, &i) in &index {
            parts.entry(uf.find(i)).or_default().push((*v).clone());
        }
        let mut parts: Vec<Vec<ComponentId>> = parts.into_values().collect();
        parts.sort();
        Components { count: parts.len(), parts }
    }

    pub fn component_count(&self) -> usize {
        self.components().count
    }

    /// Vertices whose removal increases the number of components.
    pub fn cut_vertices(&self) -> BTreeSet<ComponentId> {
        let base = self.component_count();
        self.vertices
            .iter()
            .filter(|v| {
                let mut g = self.clone();
                g.vertices.remove(*v);
                g.component_count() > base
            })
            .cloned()
            .collect()
    }

    /// Number of edges between each unordered pair of distinct real
    /// vertices, zero entries included.
    pub fn pair_multiplicities(&self) -> BTreeMap<(ComponentId, ComponentId), usize> {
        let mut out = BTreeMap::new();
        let vs: Vec<&ComponentId> = self.vertices.iter().collect();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                out.insert((vs[i].clone(), vs[j].clone()), 0);
            }
        }
        for (a, b) in self.edges.values() {
            if let Some(m) = out.get_mut(&(a.clone(), b.clone())) {
                *m += 1;
            }
        }
        out
    }

    pub fn min_pair_multiplicity(&self) -> usize {
        self.pair_multiplicities().values().copied().min().unwrap_or(0)
    }

    /// Edge list as `(line, end, end)` strings, sorted; used for comparisons.
    pub fn labeled_edges(&self) -> Vec<(String, String, String)> {
        self.edges.iter().map(|(l, (a, b))| (l.to_string(), a.to_string(), b.to_string())).collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str(DOT_FORMAT_TAG);
        out.push('\n');
        out.push_str("graph wh {\n");
        out.push_str("  node [shape=circle];\n");
        for v in &self.vertices {
            out.push_str(&format!("  \"{v}\";\n"));
        }
        for (line, (a, b)) in &self.edges {
            out.push_str(&format!(
                "  \"{a}\" -- \"{b}\" [label=\"{line}\", colorscheme=set19, color={}];\n",
                line.word_id() % 9 + 1
            ));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct EdgeOut<'a> {
            line: &'a Line,
            word_id: usize,
            ends: [&'a ComponentId; 2],
        }
        #[derive(Serialize)]
        struct GraphOut<'a> {
            format: &'static str,
            rank: usize,
            subtree: &'a Subtree,
            vertices: &'a BTreeSet<ComponentId>,
            edges: Vec<EdgeOut<'a>>,
        }
        let out = GraphOut {
            format: JSON_FORMAT_TAG,
            rank: self.subtree.rank(),
            subtree: &self.subtree,
            vertices: &self.vertices,
            edges: self
                .edges
                .iter()
                .map(|(line, (a, b))| EdgeOut { line, word_id: line.word_id(), ends: [a, b] })
                .collect(),
        };
        serde_json::to_value(out).expect("graph serialises")
    }
}

impl fmt::Debug for WhiteheadGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WhiteheadGraph")
            .field("subtree", &self.subtree)
            .field("edges", &self.labeled_edges())
            .finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub count: usize,
    pub parts: Vec<Vec<ComponentId>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::random_reduced_word;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn l(c: char) -> Letter {
        Letter::from_char(c).unwrap()
    }

    fn pat(words: &[&str]) -> LinePattern {
        LinePattern::induced(2, &words.iter().map(|s| w(s)).collect::<Vec<_>>()).unwrap()
    }

    fn at1(c: char) -> ComponentId {
        ComponentId::frontier(Word::identity(), l(c))
    }

    fn letter_pairs(g: &WhiteheadGraph) -> BTreeSet<(char, char)> {
        g.edges()
            .map(|(_, a, b)| match (a, b) {
                (ComponentId::Frontier { letter: x, .. }, ComponentId::Frontier { letter: y, .. }) => (x.to_char(), y.to_char()),
                _ => panic!("loose edge"),
            })
            .collect()
    }

    #[test]
    fn two_word_vertex_graph() {
        let g = wh_vertex(&pat(&["ab", "aaB"]));
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 5);
        let expected = BTreeSet::from([('A', 'b'), ('a', 'B'), ('a', 'b'), ('a', 'A'), ('A', 'B')]);
        assert_eq!(letter_pairs(&g), expected);
        assert_eq!(g.component_count(), 1);
    }

    #[test]
    fn commutator_is_a_four_cycle() {
        let g = wh_vertex(&pat(&["abAB"]));
        assert_eq!(letter_pairs(&g), BTreeSet::from([('A', 'b'), ('A', 'B'), ('a', 'B'), ('a', 'b')]));
        assert_eq!(g.component_count(), 1);
        assert!(g.cut_vertices().is_empty());
        assert_eq!(g.min_pair_multiplicity(), 0);

        let d = g.delete_vertex(&at1('a')).unwrap();
        assert_eq!(d.loose_edge_count(), 2);
        assert_eq!(d.component_count(), 1);
        assert!(matches!(d.delete_vertex(&at1('a')), Err(Error::VertexAbsent(_))));

        let lines: Vec<Line> = g.edges().map(|(l, _, _)| l.clone()).collect();
        assert_eq!(g.remove_lines(&lines).component_count(), 4);
        // opposite edges of the 4-cycle
        let opposite: Vec<Line> = g
            .edges()
            .filter(|(_, a, b)| (*a, *b) == (&at1('a'), &at1('b')) || (*a, *b) == (&at1('A'), &at1('B')))
            .map(|(l, _, _)| l.clone())
            .collect();
        assert_eq!(opposite.len(), 2);
        assert_eq!(g.remove_lines(&opposite).component_count(), 2);
    }

    #[test]
    fn empty_edge_set_components() {
        let p = pat(&["a"]);
        let g = wh_vertex(&p);
        let lines: Vec<Line> = g.edges().map(|(l, _, _)| l.clone()).collect();
        assert_eq!(g.remove_lines(&lines).component_count(), 4);
    }

    #[test]
    fn removing_foreign_lines_changes_nothing() {
        let p = pat(&["abAB"]);
        let g = wh_vertex(&p);
        let far = p.lines_through_vertex(&w("aaaa"));
        assert_eq!(g.remove_lines(&far), g);
    }

    #[test]
    fn path_graph_edge_count() {
        let p = pat(&["ab", "aaB"]);
        let g = wh_subtree(&p, &Subtree::path(2, &Word::identity(), &w("a")));
        assert_eq!(g.edge_count(), 7);
        assert_eq!(g.vertex_count(), 6);
    }

    #[test]
    fn ball_graph_counts_lines() {
        let p = pat(&["abAB"]);
        let ball = Subtree::ball(2, 1, 100).unwrap();
        let mut lines = BTreeSet::new();
        for v in ball.vertices() {
            lines.extend(p.lines_through_vertex(v));
        }
        assert_eq!(wh_subtree(&p, &ball).edge_count(), lines.len());
    }

    #[test]
    fn splice_one_edge() {
        let p = pat(&["ab", "aaB"]);
        let a = l('a');
        let left = wh_vertex(&p).delete_vertex(&at1('a')).unwrap();
        let right = wh_subtree(&p, &Subtree::single(2, w("a")))
            .delete_vertex(&ComponentId::frontier(w("a"), a.inverse()))
            .unwrap();
        let glued = left.splice(&right).unwrap();
        let direct = wh_subtree(&p, &Subtree::path(2, &Word::identity(), &w("a")));
        assert_eq!(glued.labeled_edges(), direct.labeled_edges());
        assert_eq!(glued.edge_count(), 7);
    }

    #[test]
    fn splice_across_an_edge_no_line_crosses() {
        let p = pat(&["b"]);
        let left = wh_vertex(&p).delete_vertex(&at1('a')).unwrap();
        let right = wh_subtree(&p, &Subtree::single(2, w("a")))
            .delete_vertex(&ComponentId::frontier(w("a"), l('A')))
            .unwrap();
        let glued = left.splice(&right).unwrap();
        let direct = wh_subtree(&p, &Subtree::path(2, &Word::identity(), &w("a")));
        assert_eq!(glued.labeled_edges(), direct.labeled_edges());
        assert_eq!(glued.component_count(), direct.component_count());
    }

    #[test]
    fn splice_rejects_mismatch() {
        let p = pat(&["ab", "aaB"]);
        let left = wh_vertex(&p).delete_vertex(&at1('a')).unwrap();
        assert!(matches!(left.splice(&left), Err(Error::SpliceMismatch(_))));
    }

    #[test]
    fn vertex_graph_edge_count_is_total_length() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for _ in 0..50 {
            let raw: Vec<Word> = (0..rng.random_range(1..4)).map(|_| random_reduced_word(2, rng.random_range(1..10), &mut rng)).collect();
            let p = LinePattern::induced(2, &raw).unwrap();
            assert_eq!(wh_vertex(&p).edge_count(), p.total_length());
        }
    }

    #[test]
    fn cut_vertex_of_a_path() {
        // {ab}: edges {A,b} and {B,a}, two components
        let g = wh_vertex(&pat(&["ab"]));
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.component_count(), 2);
        assert!(g.cut_vertices().is_empty());
        let g = wh_vertex(&pat(&["ab", "aB"]));
        // edges {A,b},{B,a},{A,B},{b,a}: a 4-cycle
        assert!(g.cut_vertices().is_empty());
        let g = wh_vertex(&pat(&["ab", "aaB"]));
        // a–A, a–B, A–b, A–B, a–b: no cut vertex
        assert!(g.cut_vertices().is_empty());
        let g = wh_vertex(&pat(&["ab", "aB", "a"]));
        assert!(g.cut_vertices().is_empty());
        let g = wh_vertex(&pat(&["aab"]));
        // edges from aa, ab, ba: {A,a},{A,b},{B,a}, the path b–A–a–B
        let cuts = g.cut_vertices();
        assert_eq!(cuts, BTreeSet::from([at1('A'), at1('a')]));
    }
}
