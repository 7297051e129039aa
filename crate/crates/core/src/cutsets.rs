//! Cut sets of the decomposition space: the fullness/multiplicity
//! certificate, radius-bounded search for small cut sets, and truncated
//! connectivity checks for a few boundary points.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::Serialize;

use crate::cayley::{hull_core, prune_core, CoreKind, PrunedCore, Ray, Subtree};
use crate::error::{Error, Result};
use crate::pattern::{Line, LinePattern, Reading};
use crate::whitehead::{wh_subtree, wh_vertex, ComponentId, WhiteheadGraph};
use crate::words::{Letter, Word, DEFAULT_ENUMERATION_CAP};

/// Number of components of a complement; removing a single line can leave
/// infinitely many.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentCount {
    Finite(usize),
    Infinite,
}

impl ComponentCount {
    pub fn disconnects(self) -> bool {
        !matches!(self, ComponentCount::Finite(0 | 1))
    }
}

impl fmt::Display for ComponentCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentCount::Finite(n) => write!(f, "{n}"),
            ComponentCount::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for ComponentCount {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ComponentCount::Finite(n) => s.serialize_u64(*n as u64),
            ComponentCount::Infinite => s.serialize_str("infinite"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub has_4_full_word: bool,
    pub min_multiplicity: usize,
    pub certified_lower_bound: Option<usize>,
}

/// A bound on cut set size is emitted only when some pattern word is
/// 4-full; it is then the minimum edge multiplicity of the vertex graph.
pub fn certify_lower_bound(p: &LinePattern) -> Certificate {
    let has_4_full_word = p.words().iter().any(|w| w.word.is_k_full(p.rank(), 4));
    let min_multiplicity = wh_vertex(p).min_pair_multiplicity();
    Certificate {
        has_4_full_word,
        min_multiplicity,
        certified_lower_bound: has_4_full_word.then_some(min_multiplicity),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutSetReport {
    pub lines: Vec<Line>,
    /// `None` for a single line, whose complement is computed on the whole line.
    pub pruned_core: Option<PrunedCore>,
    pub component_count: ComponentCount,
    /// `None` when the set was too large for subsets to be re-tested.
    pub minimal: Option<bool>,
}

/// Largest set whose proper subsets are all re-tested for minimality.
pub const MINIMALITY_LIMIT: usize = 16;

/// Components of the boundary minus the two endpoints of one line.
///
/// The Whitehead graph of the whole line is infinite but periodic: the
/// stabiliser of the line acts on it with finite quotient. Each component of
/// the quotient lifts to as many components as the index of the subgroup
/// generated by the windings of its cycles.
pub fn line_complement_count(p: &LinePattern, line: &Line) -> ComponentCount {
    let word = p.word(line.word_id()).letters();
    let axis = Reading { word, inverted: false, shift: 0 };
    let n = word.len();
    let rank = p.rank();
    let slots = 2 * rank;
    let node = |pos: usize, l: Letter| pos * slots + l.code();
    let mut uf = WeightedUnionFind::new(n * slots);
    let mut real = vec![false; n * slots];
    for i in 0..n {
        let fwd = axis.letter(i);
        let back = axis.letter((i + n - 1) % n).inverse();
        for l in Letter::all(rank) {
            if l != fwd && l != back {
                real[node(i, l)] = true;
            }
        }
    }
    for i in 0..n {
        let back = axis.letter((i + n - 1) % n).inverse();
        for (id, r) in p.readings() {
            if id == line.word_id() && r.shift == i {
                continue;
            }
            if r.first() == back || r.last().inverse() == back {
                continue;
            }
            // orient r so that, if it follows the axis, it does so forwards
            let mut r = if r.last().inverse() == axis.letter(i) { r.reversed() } else { r };
            let start_exit = r.last().inverse();
            let mut j = i;
            while r.first() == axis.letter(j % n) {
                r = r.advance();
                j += 1;
            }
            let end_exit = r.first();
            let a = node(i, start_exit);
            let b = node(j % n, end_exit);
            uf.union(a, b, (j / n) as i64);
        }
    }
    let mut total = 0usize;
    let mut seen = BTreeSet::new();
    for x in 0..n * slots {
        if !real[x] {
            continue;
        }
        let root = uf.find(x).0;
        if seen.insert(root) {
            match uf.gcd[root] {
                0 => return ComponentCount::Infinite,
                g => total += g as usize,
            }
        }
    }
    ComponentCount::Finite(total)
}

/// Union-find with integer potentials; records the gcd of cycle windings.
struct WeightedUnionFind {
    parent: Vec<usize>,
    offset: Vec<i64>,
    gcd: Vec<u64>,
}

impl WeightedUnionFind {
    fn new(n: usize) -> Self {
        WeightedUnionFind { parent: (0..n).collect(), offset: vec![0; n], gcd: vec![0; n] }
    }

    /// Root of `x` and the potential of `x` relative to it.
    fn find(&mut self, x: usize) -> (usize, i64) {
        let mut path = Vec::new();
        let mut cur = x;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        let mut acc = 0;
        for &v in path.iter().rev() {
            acc += self.offset[v];
            self.offset[v] = acc;
            self.parent[v] = root;
        }
        (root, if x == root { 0 } else { self.offset[x] })
    }

    /// Adds an edge from `a` at potential 0 to `b` at potential `w`.
    fn union(&mut self, a: usize, b: usize, w: i64) {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            let cycle = (pa + w - pb).unsigned_abs();
            self.gcd[ra] = gcd(self.gcd[ra], cycle);
        } else {
            // potential(b) = potential(a) + w, so potential(rb) = pa + w - pb
            self.parent[rb] = ra;
            self.offset[rb] = pa + w - pb;
            self.gcd[ra] = gcd(self.gcd[ra], self.gcd[rb]);
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Pruned core and complement count of a set of at least two lines.
pub fn evaluate_lines(p: &LinePattern, lines: &[Line]) -> Result<(PrunedCore, ComponentCount)> {
    let core = hull_core(p.rank(), lines)?;
    let pc = prune_core(&core, lines);
    let count = wh_subtree(p, &pc.subtree).remove_lines(lines).component_count();
    Ok((pc, ComponentCount::Finite(count)))
}

/// Pruned core (absent for a single line) and complement count of any
/// nonempty line set.
pub fn evaluate_cut_set(p: &LinePattern, lines: &[Line]) -> Result<(Option<PrunedCore>, ComponentCount)> {
    match lines {
        [] => Err(Error::TooFewLines(0)),
        [l] => Ok((None, line_complement_count(p, l))),
        _ => evaluate_lines(p, lines).map(|(pc, c)| (Some(pc), c)),
    }
}

/// Is `lines` a cut set with no disconnecting proper subset?
fn minimality(p: &LinePattern, lines: &[Line], cache: &mut BTreeMap<usize, ComponentCount>) -> Result<Option<bool>> {
    let n = lines.len();
    if n > MINIMALITY_LIMIT {
        return Ok(None);
    }
    for mask in 1u32..(1u32 << n) - 1 {
        let subset: Vec<Line> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| lines[i].clone()).collect();
        let count = if let [l] = subset.as_slice() {
            *cache.entry(l.word_id()).or_insert_with(|| line_complement_count(p, l))
        } else {
            evaluate_lines(p, &subset)?.1
        };
        if count.disconnects() {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

/// The set of all lines through one edge, with that edge as pruned core.
pub fn edge_cut_set(p: &LinePattern, from: &Word, letter: Letter) -> Result<CutSetReport> {
    let lines = p.lines_through_edge(from, letter);
    if lines.is_empty() {
        return Err(Error::NoLinesThroughEdge(format!("{from}:{letter}")));
    }
    let pc = PrunedCore::edge(p.rank(), from, letter);
    let count = ComponentCount::Finite(wh_subtree(p, &pc.subtree).remove_lines(&lines).component_count());
    let minimal = if count.disconnects() { minimality(p, &lines, &mut BTreeMap::new())? } else { Some(false) };
    Ok(CutSetReport { lines, pruned_core: Some(pc), component_count: count, minimal })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Grouped evaluation for sets of at most two lines, brute force above.
    Auto,
    /// Evaluate every candidate subset individually.
    Exhaustive,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub max_size: usize,
    pub radius: usize,
    /// Maximum number of candidate sets evaluated by brute force.
    pub budget: u64,
    pub strategy: Strategy,
}

impl SearchOptions {
    pub fn new(max_size: usize, radius: usize) -> SearchOptions {
        SearchOptions { max_size, radius, budget: 10_000_000, strategy: Strategy::Auto }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CutSearch {
    pub radius: usize,
    pub max_size: usize,
    pub lines_meeting_ball: usize,
    pub candidates_evaluated: u64,
    pub truncated: bool,
    pub reports: Vec<CutSetReport>,
}

/// Cut sets of at most `max_size` lines among the lines meeting the ball of
/// the given radius, plus the full line sets of edges in the ball. A negative
/// result only covers that radius.
pub fn find_cut_sets(p: &LinePattern, max_size: usize, radius: usize) -> Result<CutSearch> {
    find_cut_sets_with(p, &SearchOptions::new(max_size, radius))
}

pub fn find_cut_sets_with(p: &LinePattern, opts: &SearchOptions) -> Result<CutSearch> {
    let ball = Subtree::ball(p.rank(), opts.radius, DEFAULT_ENUMERATION_CAP)?;
    let mut search = CutSearch {
        radius: opts.radius,
        max_size: opts.max_size,
        lines_meeting_ball: 0,
        candidates_evaluated: 0,
        truncated: false,
        reports: Vec::new(),
    };
    if opts.max_size == 0 {
        return Ok(search);
    }
    let mut singles: BTreeMap<usize, ComponentCount> = BTreeMap::new();
    for pw in p.words() {
        let axis = p.line_from_reading(pw.id, Word::identity(), Reading { word: pw.letters(), inverted: false, shift: 0 });
        singles.insert(pw.id, line_complement_count(p, &axis));
    }
    let mut found: BTreeMap<Vec<Line>, CutSetReport> = BTreeMap::new();

    if opts.strategy == Strategy::Auto && opts.max_size <= 2 {
        search.lines_meeting_ball = count_lines_meeting(p, &ball);
        search.candidates_evaluated += p.words().len() as u64;
        for v in ball.vertices() {
            for l in p.lines_through_vertex(v) {
                let count = singles[&l.word_id()];
                if count.disconnects() {
                    found.entry(vec![l.clone()]).or_insert_with(|| CutSetReport {
                        lines: vec![l],
                        pruned_core: None,
                        component_count: count,
                        minimal: Some(true),
                    });
                }
            }
        }
        if opts.max_size == 2 {
            search.candidates_evaluated += grouped_pairs(p, &ball, &mut found)?;
        }
    } else {
        let lines = lines_meeting(p, &ball);
        search.lines_meeting_ball = lines.len();
        let mut evaluated = 0u64;
        'sizes: for k in 1..=opts.max_size.min(lines.len()) {
            let mut idx: Vec<usize> = (0..k).collect();
            loop {
                if evaluated >= opts.budget {
                    search.truncated = true;
                    break 'sizes;
                }
                evaluated += 1;
                let subset: Vec<Line> = idx.iter().map(|&i| lines[i].clone()).collect();
                let (pc, count) = if k == 1 {
                    (None, singles[&subset[0].word_id()])
                } else {
                    let (pc, c) = evaluate_lines(p, &subset)?;
                    (Some(pc), c)
                };
                if count.disconnects() {
                    found.insert(
                        subset.clone(),
                        CutSetReport { lines: subset, pruned_core: pc, component_count: count, minimal: None },
                    );
                }
                if !next_combination(&mut idx, lines.len()) {
                    break;
                }
            }
        }
        search.candidates_evaluated = evaluated;
    }

    for (v, letter) in ball.edges() {
        let lines = p.lines_through_edge(&v, letter);
        if lines.is_empty() || lines.len() > opts.max_size || found.contains_key(&lines) {
            continue;
        }
        search.candidates_evaluated += 1;
        let report = edge_cut_set(p, &v, letter)?;
        if report.component_count.disconnects() {
            found.insert(lines, report);
        }
    }

    let mut reports: Vec<CutSetReport> = found.into_values().collect();
    let mut cache = singles.clone();
    for r in reports.iter_mut() {
        if r.minimal.is_none() {
            r.minimal = match r.lines.len() {
                1 => Some(true),
                _ => minimality(p, &r.lines, &mut cache)?,
            };
        }
    }
    reports.sort_by(|a, b| (a.lines.len(), &a.lines).cmp(&(b.lines.len(), &b.lines)));
    search.reports = reports;
    Ok(search)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Every line meeting the subtree, sorted.
pub fn lines_meeting(p: &LinePattern, x: &Subtree) -> Vec<Line> {
    let mut set = BTreeSet::new();
    for v in x.vertices() {
        set.extend(p.lines_through_vertex(v));
    }
    set.into_iter().collect()
}

/// Lines through vertices minus lines through inner edges (the meeting set
/// of a line with a subtree is a path).
fn count_lines_meeting(p: &LinePattern, x: &Subtree) -> usize {
    let through_edges: usize = x
        .edges()
        .iter()
        .map(|(_, l)| p.readings().filter(|(_, r)| r.first() == *l || r.last() == l.inverse()).count())
        .sum::<usize>();
    x.len() * p.total_length() - through_edges
}

/// Multiplicity matrix of a Whitehead graph over its frontier nodes.
struct LocalGraph {
    nodes: Vec<ComponentId>,
    index: BTreeMap<ComponentId, usize>,
    mult: BTreeMap<(usize, usize), usize>,
}

impl LocalGraph {
    fn new(g: &WhiteheadGraph) -> LocalGraph {
        let nodes: Vec<ComponentId> = g.vertices().cloned().collect();
        let index: BTreeMap<ComponentId, usize> = nodes.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let mut mult = BTreeMap::new();
        for (_, a, b) in g.edges() {
            *mult.entry((index[a], index[b])).or_insert(0) += 1;
        }
        LocalGraph { nodes, index, mult }
    }

    fn cell(&self, a: &ComponentId, b: &ComponentId) -> (usize, usize) {
        let (i, j) = (self.index[a], self.index[b]);
        (i.min(j), i.max(j))
    }

    /// Components after deleting one edge per listed cell (repeats allowed),
    /// or `None` if a cell lacks the edges.
    fn components_without(&self, removed: &[(usize, usize)]) -> Option<usize> {
        let mut mult = self.mult.clone();
        for c in removed {
            let m = mult.get_mut(c)?;
            if *m == 0 {
                return None;
            }
            *m -= 1;
        }
        let mut uf = UnionFind::<usize>::new(self.nodes.len());
        for (&(a, b), &m) in &mult {
            if m > 0 {
                uf.union(a, b);
            }
        }
        let roots: BTreeSet<usize> = (0..self.nodes.len()).map(|i| uf.find(i)).collect();
        Some(roots.len())
    }

    fn cells_at(&self, inside: &Word) -> Vec<(usize, usize)> {
        self.mult
            .iter()
            .filter(|(&(a, b), &m)| m > 0 && at_vertex(&self.nodes[a], inside) && at_vertex(&self.nodes[b], inside))
            .map(|(&c, _)| c)
            .collect()
    }
}

fn at_vertex(c: &ComponentId, v: &Word) -> bool {
    matches!(c, ComponentId::Frontier { inside, .. } if inside == v)
}

fn exit_pair(line: &Line, v: &Word) -> (Letter, Letter) {
    let (x, y) = line.exits_at(v).expect("line passes through v");
    (x.min(y), x.max(y))
}

/// Evaluates every pair of distinct lines meeting the ball, grouped by the
/// local configuration that determines the answer, and materialises the
/// pairs of disconnecting configurations. Returns the number of
/// configurations evaluated.
///
/// Two lines either cross at one vertex (pruned core that vertex), are
/// disjoint (pruned core the bridge between them, which lies in the ball)
/// or share a segment (pruned core one edge of it). In each case the
/// complement graph depends only on the translation class of the pruned core
/// and on which edges of its Whitehead graph the two lines occupy.
fn grouped_pairs(p: &LinePattern, ball: &Subtree, found: &mut BTreeMap<Vec<Line>, CutSetReport>) -> Result<u64> {
    let rank = p.rank();
    let one = Word::identity();
    let mut evaluated = 0u64;
    let mut insert = |lines: Vec<Line>, pc: PrunedCore, count: usize| {
        found.entry(lines.clone()).or_insert(CutSetReport {
            lines,
            pruned_core: Some(pc),
            component_count: ComponentCount::Finite(count),
            minimal: None,
        });
    };

    // crossings at a single vertex
    let vertex_graph = LocalGraph::new(&wh_vertex(p));
    let cells = vertex_graph.cells_at(&one);
    let mut cutting_crossings = Vec::new();
    for (i, &c1) in cells.iter().enumerate() {
        for &c2 in &cells[i + 1..] {
            if [c1.0, c1.1].iter().any(|x| *x == c2.0 || *x == c2.1) {
                continue;
            }
            evaluated += 1;
            if let Some(n) = vertex_graph.components_without(&[c1, c2]) {
                if n >= 2 {
                    cutting_crossings.push((c1, c2, n));
                }
            }
        }
    }
    if !cutting_crossings.is_empty() {
        let letter_of = |i: usize| match &vertex_graph.nodes[i] {
            ComponentId::Frontier { letter, .. } => *letter,
            ComponentId::Loose(_) => unreachable!(),
        };
        for v in ball.vertices() {
            let through = p.lines_through_vertex(v);
            for &(c1, c2, n) in &cutting_crossings {
                let pair = |c: (usize, usize)| {
                    let want = (letter_of(c.0).min(letter_of(c.1)), letter_of(c.0).max(letter_of(c.1)));
                    through.iter().filter(move |l| exit_pair(l, v) == want)
                };
                for l1 in pair(c1) {
                    for l2 in pair(c2) {
                        let mut lines = vec![l1.clone(), l2.clone()];
                        lines.sort();
                        let pc = PrunedCore { kind: CoreKind::Vertex, subtree: Subtree::single(rank, v.clone()), retained_edge: None };
                        insert(lines, pc, n);
                    }
                }
            }
        }
    }

    // disjoint lines, grouped by the bridge word
    let mut bridges: BTreeSet<Word> = BTreeSet::new();
    for u in ball.vertices() {
        for v in ball.vertices() {
            if u != v {
                bridges.insert(&u.inverse() * v);
            }
        }
    }
    let bridges: Vec<Word> = bridges.into_iter().collect();
    let outcomes: Vec<(Word, Vec<((usize, usize), (usize, usize), usize)>, LocalGraph, u64)> = bridges
        .par_iter()
        .map(|t| {
            let path = Subtree::path(rank, &one, t);
            let g = LocalGraph::new(&wh_subtree(p, &path));
            let near = g.cells_at(&one);
            let far = g.cells_at(t);
            let mut cutting = Vec::new();
            let mut n_eval = 0;
            for &c1 in &near {
                for &c2 in &far {
                    n_eval += 1;
                    if let Some(n) = g.components_without(&[c1, c2]) {
                        if n >= 2 {
                            cutting.push((c1, c2, n));
                        }
                    }
                }
            }
            (t.clone(), cutting, g, n_eval)
        })
        .collect();
    for (t, cutting, g, n_eval) in outcomes {
        evaluated += n_eval;
        if cutting.is_empty() {
            continue;
        }
        let rel_near = p.lines_through_vertex(&one);
        let rel_far = p.lines_through_vertex(&t);
        let in_cell = |l: &Line, v: &Word, c: (usize, usize)| {
            let (x, y) = l.exits_at(v).expect("line passes through v");
            g.cell(&ComponentId::frontier(v.clone(), x), &ComponentId::frontier(v.clone(), y)) == c
        };
        let path_letter = t.first().unwrap();
        let back_letter = t.last().unwrap().inverse();
        for u1 in ball.vertices() {
            let u2 = u1 * &t;
            if !ball.contains(&u2) {
                continue;
            }
            for &(c1, c2, n) in &cutting {
                for l1 in rel_near.iter().filter(|l| !l.contains_edge(&one, path_letter) && in_cell(l, &one, c1)) {
                    for l2 in rel_far.iter().filter(|l| !l.contains_edge(&t, back_letter) && in_cell(l, &t, c2)) {
                        let mut lines = vec![l1.translate(u1), l2.translate(u1)];
                        lines.sort();
                        let pc = PrunedCore { kind: CoreKind::Tree, subtree: Subtree::path(rank, u1, &u2), retained_edge: None };
                        insert(lines, pc, n);
                    }
                }
            }
        }
    }

    // lines sharing a segment, grouped by the retained edge's letter
    let mut cutting_shared = BTreeMap::new();
    let mut edge_graphs = BTreeMap::new();
    for z in Letter::all(rank) {
        let g = LocalGraph::new(&wh_subtree(p, &Subtree::path(rank, &one, &one.times(z))));
        let through: Vec<(usize, usize)> = g
            .mult
            .keys()
            .copied()
            .filter(|&(a, b)| at_vertex(&g.nodes[a], &one) != at_vertex(&g.nodes[b], &one))
            .collect();
        for (i, &c1) in through.iter().enumerate() {
            for &c2 in &through[i..] {
                evaluated += 1;
                if let Some(n) = g.components_without(&[c1, c2]) {
                    if n >= 2 {
                        cutting_shared.insert((z, c1.min(c2), c1.max(c2)), n);
                    }
                }
            }
        }
        edge_graphs.insert(z, g);
    }
    if !cutting_shared.is_empty() {
        for (v, x) in ball.vertices().flat_map(|v| Letter::all(rank).map(move |x| (v, x))) {
            let through = p.lines_through_edge(v, x);
            for i in 0..through.len() {
                for j in i + 1..through.len() {
                    let (l1, l2) = (&through[i], &through[j]);
                    let (a, z) = retained_shared_edge(l1, l2, v, x);
                    let g = &edge_graphs[&z];
                    let cell = |l: &Line| {
                        let rel = l.translate(&a.inverse());
                        let b = one.times(z);
                        let (p1, q1) = rel.exits_at(&one).unwrap();
                        let (p2, q2) = rel.exits_at(&b).unwrap();
                        let near = if p1 == z { q1 } else { p1 };
                        let far = if p2 == z.inverse() { q2 } else { p2 };
                        g.cell(&ComponentId::frontier(one.clone(), near), &ComponentId::frontier(b, far))
                    };
                    let (c1, c2) = (cell(l1), cell(l2));
                    if let Some(&n) = cutting_shared.get(&(z, c1.min(c2), c1.max(c2))) {
                        let mut lines = vec![l1.clone(), l2.clone()];
                        lines.sort();
                        insert(lines, PrunedCore::edge(rank, &a, z), n);
                    }
                }
            }
        }
    }
    Ok(evaluated)
}

/// For two distinct lines through the edge `(v, x)`, the edge of their shared
/// segment that survives pruning (smaller end removed first), as
/// `(vertex, letter)` with `vertex < vertex·letter`.
fn retained_shared_edge(l1: &Line, l2: &Line, v: &Word, x: Letter) -> (Word, Letter) {
    fn orient<'a>(l: &'a Line, v: &Word, x: Letter) -> Reading<'a> {
        let r = l.reading_at(v).expect("line passes through v");
        if r.first() == x {
            r
        } else {
            r.reversed()
        }
    }
    let (mut r1, mut r2) = (orient(l1, v, x), orient(l2, v, x));
    let mut path = vec![v.clone()];
    while r1.first() == r2.first() {
        let next = path.last().unwrap().times(r1.first());
        path.push(next);
        r1 = r1.advance();
        r2 = r2.advance();
    }
    let (mut r1, mut r2) = (orient(l1, v, x), orient(l2, v, x));
    let mut back = Vec::new();
    let mut cur = v.clone();
    while r1.last() == r2.last() {
        cur = cur.times(r1.last().inverse());
        back.push(cur.clone());
        r1 = r1.retreat();
        r2 = r2.retreat();
    }
    back.reverse();
    back.extend(path);
    let mut lo = 0;
    let mut hi = back.len() - 1;
    while hi - lo > 1 {
        if back[lo] < back[hi] {
            lo += 1;
        } else {
            hi -= 1;
        }
    }
    let (a, b) = (&back[lo], &back[hi]);
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    let z = (&a.inverse() * b).first().unwrap();
    (a.clone(), z)
}

/// A point of the decomposition space given by a line (a good point) or by
/// an eventually periodic ray.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BoundaryPoint {
    Line(Line),
    Ray(Ray),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryCheck {
    pub depth: usize,
    pub component_count: usize,
    pub count_at_depth_plus_two: usize,
    pub stabilized: bool,
    pub good_points: usize,
    pub bad_points: usize,
}

struct ResolvedPoints {
    lines: Vec<Line>,
    rays: Vec<Ray>,
    bad: usize,
}

fn resolve_points(p: &LinePattern, points: &[BoundaryPoint]) -> Result<ResolvedPoints> {
    if points.is_empty() || points.len() > 4 {
        return Err(Error::UnsupportedPoints(format!("{} points (1 to 4 supported)", points.len())));
    }
    let mut lines = BTreeSet::new();
    let mut bad = BTreeSet::new();
    for pt in points {
        match pt {
            BoundaryPoint::Line(l) => {
                lines.insert(l.clone());
            }
            BoundaryPoint::Ray(r) => match p.line_with_reading(r.prefix(), r.period()) {
                Some(l) => {
                    lines.insert(l);
                }
                None => {
                    bad.insert(r.clone());
                }
            },
        }
    }
    if lines.len() + bad.len() != points.len() {
        return Err(Error::UnsupportedPoints("repeated boundary point".into()));
    }
    if lines.is_empty() && bad.len() == 1 {
        return Err(Error::UnsupportedPoints("a single bad point".into()));
    }
    let mut rays: Vec<Ray> = lines.iter().flat_map(|l| {
        let (x, y) = l.endpoints();
        [x, y]
    }).collect();
    let n_bad = bad.len();
    rays.extend(bad);
    Ok(ResolvedPoints { lines: lines.into_iter().collect(), rays, bad: n_bad })
}

fn depth_bounds(rays: &[Ray]) -> Result<(usize, usize)> {
    let mut branch = 0;
    for i in 0..rays.len() {
        for j in i + 1..rays.len() {
            branch = branch.max(rays[i].agreement(&rays[j])?);
        }
    }
    let periodic = rays.iter().map(|r| r.prefix().len() + r.period().len()).max().unwrap_or(0);
    Ok((branch, periodic))
}

/// Smallest truncation depth accepted by [`boundary_cut_check`].
pub fn required_depth(p: &LinePattern, points: &[BoundaryPoint]) -> Result<usize> {
    let resolved = resolve_points(p, points)?;
    let (branch, periodic) = depth_bounds(&resolved.rays)?;
    Ok((branch + 1).max(periodic))
}

/// Depth used when none is given: twice the longest pattern word past the
/// deepest branch point, plus 4, and at least the required depth.
pub fn default_depth(p: &LinePattern, points: &[BoundaryPoint]) -> Result<usize> {
    let resolved = resolve_points(p, points)?;
    let (branch, periodic) = depth_bounds(&resolved.rays)?;
    Ok((branch + 2 * p.max_word_length() + 4).max(branch + 1).max(periodic))
}

/// Components of the boundary minus 1 to 4 points, estimated from the hull
/// of their preimages truncated at `depth` and again at `depth + 2`. The
/// frontier edges continuing the rays past the truncation stand for the
/// rest of each ray and are kept as ordinary vertices.
pub fn boundary_cut_check(p: &LinePattern, points: &[BoundaryPoint], depth: usize) -> Result<BoundaryCheck> {
    let resolved = resolve_points(p, points)?;
    let (branch, periodic) = depth_bounds(&resolved.rays)?;
    let required = (branch + 1).max(periodic);
    if depth < required {
        return Err(Error::DepthTooSmall { depth, required });
    }
    let count_at = |d: usize| -> Result<usize> {
        let tips: Vec<Word> = resolved.rays.iter().map(|r| r.vertex(d)).collect();
        let hull = Subtree::hull(p.rank(), tips.iter())?;
        Ok(wh_subtree(p, &hull).remove_lines(&resolved.lines).component_count())
    };
    let c0 = count_at(depth)?;
    let c2 = count_at(depth + 2)?;
    Ok(BoundaryCheck {
        depth,
        component_count: c0,
        count_at_depth_plus_two: c2,
        stabilized: c0 == c2,
        good_points: resolved.lines.len(),
        bad_points: resolved.bad,
    })
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

    fn pat(words: &[&str]) -> LinePattern {
        LinePattern::induced(2, &words.iter().map(|s| w(s)).collect::<Vec<_>>()).unwrap()
    }

    fn a() -> Letter {
        Letter::new(0, false)
    }

    #[test]
    fn commutator_certificate() {
        let c = certify_lower_bound(&pat(&["abAB"]));
        assert!(!c.has_4_full_word);
        assert_eq!(c.min_multiplicity, 0);
        assert_eq!(c.certified_lower_bound, None);
        let c = certify_lower_bound(&pat(&["ab", "aaB"]));
        assert!(!c.has_4_full_word);
        assert_eq!(c.certified_lower_bound, None);
    }

    #[test]
    fn single_line_complements() {
        // the circle minus a point is connected
        let p = pat(&["abAB"]);
        let axis = p.lines_through_vertex(&Word::identity())[0].clone();
        assert_eq!(line_complement_count(&p, &axis), ComponentCount::Finite(1));
        // a lone axis of a generator: nothing crosses it
        let p = pat(&["a"]);
        let axis = p.lines_through_vertex(&Word::identity())[0].clone();
        assert_eq!(line_complement_count(&p, &axis), ComponentCount::Infinite);
        // {a, b}: the boundary is a Cantor set with pairs glued; removing an
        // a-line still leaves infinitely many pieces
        let p = pat(&["a", "b"]);
        let axis = p.lines_through_vertex(&Word::identity())[0].clone();
        assert_eq!(line_complement_count(&p, &axis), ComponentCount::Infinite);
    }

    /// Oracle for single lines: the truncated graph on a long stretch of the
    /// line, counting only components that touch the middle period.
    #[test]
    fn single_line_matches_long_truncation() {
        let mut rng = ChaCha8Rng::seed_from_u64(91);
        let mut checked = 0;
        while checked < 25 {
            let raw: Vec<Word> = (0..rng.random_range(1..3)).map(|_| random_reduced_word(2, rng.random_range(2..6), &mut rng)).collect();
            let p = LinePattern::induced(2, &raw).unwrap();
            let pw = p.word(0);
            let axis = p.line_from_reading(0, Word::identity(), Reading { word: pw.letters(), inverted: false, shift: 0 });
            let exact = line_complement_count(&p, &axis);
            let n = pw.len();
            let period = pw.word.to_word();
            let power = |k: i64| {
                let base = if k < 0 { period.inverse() } else { period.clone() };
                (0..k.unsigned_abs()).fold(Word::identity(), |acc, _| &acc * &base)
            };
            let stretch = Subtree::path(2, &power(-12), &power(12));
            let g = wh_subtree(&p, &stretch).remove_lines([&axis]);
            let comps = g.components();
            // components with a side branch in the four central periods
            let central: BTreeSet<Word> =
                (-2..2).flat_map(|k| (0..n).map(move |i| (k, i))).map(|(k, i)| &power(k) * &period.prefix(i)).collect();
            let touching = comps
                .parts
                .iter()
                .filter(|part| part.iter().any(|c| matches!(c, ComponentId::Frontier { inside, .. } if central.contains(inside))))
                .count();
            match exact {
                ComponentCount::Finite(k) => assert_eq!(touching, k, "pattern {:?}", p.words()),
                ComponentCount::Infinite => assert!(touching >= 2),
            }
            checked += 1;
        }
    }

    #[test]
    fn two_word_edge_cut_set() {
        let p = pat(&["ab", "aaB"]);
        let r = edge_cut_set(&p, &Word::identity(), a()).unwrap();
        assert_eq!(r.lines.len(), 3);
        let pc = r.pruned_core.unwrap();
        assert_eq!(pc.kind, CoreKind::Edge);
        assert_eq!(pc.retained_edge, Some((Word::identity(), a())));
        assert_eq!(edge_cut_set(&pat(&["ab"]), &Word::identity(), a()).unwrap().lines.len(), 1);
        let r = edge_cut_set(&pat(&["abAB"]), &Word::identity(), a()).unwrap();
        let direct = wh_subtree(&pat(&["abAB"]), &Subtree::path(2, &Word::identity(), &w("a")))
            .remove_lines(&r.lines)
            .component_count();
        assert_eq!(r.component_count, ComponentCount::Finite(direct));
        assert!(matches!(edge_cut_set(&pat(&["a"]), &Word::identity(), Letter::new(1, false)), Err(Error::NoLinesThroughEdge(_))));
    }

    #[test]
    fn commutator_has_cut_pairs() {
        let p = pat(&["abAB"]);
        let s = find_cut_sets(&p, 2, 2).unwrap();
        assert!(!s.truncated);
        let pairs: Vec<&CutSetReport> = s.reports.iter().filter(|r| r.lines.len() == 2).collect();
        assert!(!pairs.is_empty());
        for r in &pairs {
            assert_eq!(r.component_count, ComponentCount::Finite(2));
            assert_eq!(r.minimal, Some(true));
        }
        assert!(s.reports.iter().all(|r| r.lines.len() == 2));
    }

    #[test]
    fn empty_search() {
        let s = find_cut_sets(&pat(&["abAB"]), 0, 2).unwrap();
        assert!(s.reports.is_empty());
    }

    fn assert_same_search(p: &LinePattern, max_size: usize, radius: usize) {
        let fast = find_cut_sets(p, max_size, radius).unwrap();
        let mut opts = SearchOptions::new(max_size, radius);
        opts.strategy = Strategy::Exhaustive;
        let slow = find_cut_sets_with(p, &opts).unwrap();
        assert!(!slow.truncated);
        assert_eq!(fast.lines_meeting_ball, slow.lines_meeting_ball);
        assert_eq!(fast.reports, slow.reports, "pattern {:?}", p.words());
    }

    #[test]
    fn grouped_pairs_match_brute_force() {
        for words in [vec!["abAB"], vec!["ab", "aaB"], vec!["aab"], vec!["ab"], vec!["aabAB"], vec!["abbAB", "ab"]] {
            let p = pat(&words);
            assert_same_search(&p, 2, 1);
            assert_same_search(&p, 2, 2);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(97);
        for _ in 0..20 {
            let raw: Vec<Word> = (0..rng.random_range(1..3)).map(|_| random_reduced_word(2, rng.random_range(2..7), &mut rng)).collect();
            let p = LinePattern::induced(2, &raw).unwrap();
            assert_same_search(&p, 2, rng.random_range(1..3));
        }
    }

    #[test]
    fn boundary_checks_on_the_circle() {
        let p = pat(&["abAB"]);
        let l1 = p.lines_through_vertex(&Word::identity())[0].clone();
        let one = [BoundaryPoint::Line(l1.clone())];
        let r = boundary_cut_check(&p, &one, 8).unwrap();
        assert_eq!((r.component_count, r.stabilized), (1, true));
        let s = find_cut_sets(&p, 2, 2).unwrap();
        for rep in s.reports.iter().filter(|r| r.lines.len() == 2).take(10) {
            let pts: Vec<BoundaryPoint> = rep.lines.iter().cloned().map(BoundaryPoint::Line).collect();
            let d = default_depth(&p, &pts).unwrap();
            let r = boundary_cut_check(&p, &pts, d).unwrap();
            assert_eq!((r.component_count, r.stabilized), (2, true), "{:?}", rep.lines);
        }
        assert!(matches!(boundary_cut_check(&p, &one, 1), Err(Error::DepthTooSmall { .. })));
        let bad = Ray::new(Word::identity(), w("a")).unwrap();
        assert!(matches!(boundary_cut_check(&p, &[BoundaryPoint::Ray(bad)], 8), Err(Error::UnsupportedPoints(_))));
    }

    #[test]
    fn ray_points_are_promoted_to_lines() {
        let p = pat(&["abAB"]);
        let l = p.lines_through_vertex(&Word::identity())[0].clone();
        let (x, y) = l.endpoints();
        let by_line = boundary_cut_check(&p, &[BoundaryPoint::Line(l)], 10).unwrap();
        let by_ray = boundary_cut_check(&p, &[BoundaryPoint::Ray(x)], 10).unwrap();
        assert_eq!(by_line, by_ray);
        assert_eq!(by_ray.good_points, 1);
        let _ = y;
    }
}
