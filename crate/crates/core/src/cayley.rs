//! Finite subtrees of the Cayley tree, eventually periodic rays, hulls and
//! pruned cores of line collections.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pattern::Line;
use crate::words::{check_rank, count_reduced, Letter, Word};

/// An eventually periodic boundary point `prefix · period^∞`.
///
/// The prefix is as short as possible and `prefix · period^k` is reduced as
/// written; `period` is a primitive cyclically reduced word in the rotation
/// actually read after the prefix.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ray {
    prefix: Word,
    period: Word,
}

impl Ray {
    pub fn new(prefix: Word, period: Word) -> Result<Ray> {
        if period.is_identity() {
            return Err(Error::TrivialWord);
        }
        let red = period.cyclic_reduce();
        // prefix · c⁻¹ core^k c has the same limit as (prefix · c⁻¹) · core^∞
        let mut prefix = &prefix * &red.conjugator.inverse();
        let core = red.core.into_letters();
        let root = smallest_root(&core);
        let mut period: Vec<Letter> = core[..root].to_vec();
        while let Some(last) = prefix.last() {
            if last == period[0].inverse() {
                prefix = prefix.parent().unwrap();
                period.rotate_left(1);
            } else if last == period[period.len() - 1] {
                prefix = prefix.parent().unwrap();
                period.rotate_right(1);
            } else {
                break;
            }
        }
        Ok(Ray { prefix, period: Word::from_vec_unchecked(period) })
    }

    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    /// The `i`-th letter of the ray read from the identity.
    #[inline]
    pub fn letter(&self, i: usize) -> Letter {
        let p = self.prefix.len();
        if i < p {
            self.prefix.letters()[i]
        } else {
            self.period.letters()[(i - p) % self.period.len()]
        }
    }

    /// The vertex at distance `depth` from the identity along the ray.
    pub fn vertex(&self, depth: usize) -> Word {
        Word::from_vec_unchecked((0..depth).map(|i| self.letter(i)).collect())
    }

    /// Left translate `h · self`.
    pub fn translate(&self, h: &Word) -> Ray {
        Ray::new(h * &self.prefix, self.period.clone()).expect("period is nontrivial")
    }

    /// Depth after which two distinct rays with these parameters cannot agree.
    fn agreement_bound(&self, other: &Ray) -> usize {
        self.prefix.len() + other.prefix.len() + 2 * (self.period.len() + other.period.len())
    }

    /// Length of the longest common prefix of the two rays.
    pub(crate) fn agreement(&self, other: &Ray) -> Result<usize> {
        let bound = self.agreement_bound(other);
        (0..=bound).find(|&i| self.letter(i) != other.letter(i)).ok_or(Error::RaysCoincide)
    }
}

fn smallest_root(letters: &[Letter]) -> usize {
    let n = letters.len();
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .find(|&d| (d..n).all(|i| letters[i] == letters[i - d]))
        .unwrap_or(n)
}

/// `prefix(period)…`, e.g. `b(ab)…`.
impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prefix.is_identity() {
            write!(f, "({})…", self.period)
        } else {
            write!(f, "{}({})…", self.prefix, self.period)
        }
    }
}

impl fmt::Debug for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ray({self})")
    }
}

impl Serialize for Ray {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The last common vertex of two distinct rays from the identity.
pub fn divergence_vertex(x: &Ray, y: &Ray) -> Result<Word> {
    if x == y {
        return Err(Error::RaysCoincide);
    }
    let depth = x.agreement(y)?;
    Ok(x.vertex(depth))
}

/// A nonempty connected finite set of vertices of the Cayley tree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subtree {
    rank: usize,
    vertices: BTreeSet<Word>,
}

impl Subtree {
    pub fn single(rank: usize, v: Word) -> Subtree {
        Subtree { rank, vertices: BTreeSet::from([v]) }
    }

    /// All vertices within `radius` of the identity.
    pub fn ball(rank: usize, radius: usize, cap: u64) -> Result<Subtree> {
        check_rank(rank)?;
        let total: num_bigint::BigUint = (0..=radius).map(|n| count_reduced(rank, n)).sum();
        if total > num_bigint::BigUint::from(cap) {
            return Err(Error::CapExceeded { requested: total.to_string(), cap });
        }
        let mut vertices = BTreeSet::from([Word::identity()]);
        let mut layer = vec![Word::identity()];
        for _ in 0..radius {
            let mut next = Vec::new();
            for v in &layer {
                for l in Letter::all(rank) {
                    if v.last() != Some(l.inverse()) {
                        next.push(v.times(l));
                    }
                }
            }
            vertices.extend(next.iter().cloned());
            layer = next;
        }
        Ok(Subtree { rank, vertices })
    }

    /// Checks connectivity: exactly one vertex may lack its parent.
    pub fn from_vertices<I: IntoIterator<Item = Word>>(rank: usize, vertices: I) -> Result<Subtree> {
        check_rank(rank)?;
        let vertices: BTreeSet<Word> = vertices.into_iter().collect();
        if vertices.is_empty() {
            return Err(Error::BadSubtree("empty"));
        }
        for v in &vertices {
            v.check_rank(rank)?;
        }
        let roots = vertices
            .iter()
            .filter(|v| v.parent().is_none_or(|p| !vertices.contains(&p)))
            .count();
        if roots != 1 {
            return Err(Error::BadSubtree("not connected"));
        }
        Ok(Subtree { rank, vertices })
    }

    /// The geodesic from `u` to `v`.
    pub fn path(rank: usize, u: &Word, v: &Word) -> Subtree {
        Subtree { rank, vertices: geodesic(u, v).into_iter().collect() }
    }

    /// Smallest subtree containing every given vertex.
    pub fn hull<'a, I: IntoIterator<Item = &'a Word>>(rank: usize, points: I) -> Result<Subtree> {
        let mut iter = points.into_iter();
        let first = iter.next().ok_or(Error::BadSubtree("empty"))?;
        let mut vertices = BTreeSet::from([first.clone()]);
        for p in iter {
            vertices.extend(geodesic(first, p));
        }
        Ok(Subtree { rank, vertices })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Word> + '_ {
        self.vertices.iter()
    }

    pub fn vertex_set(&self) -> &BTreeSet<Word> {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: &Word) -> bool {
        self.vertices.contains(v)
    }

    /// Letters at `v` leading to other vertices of the subtree.
    pub fn inner_letters(&self, v: &Word) -> Vec<Letter> {
        Letter::all(self.rank).filter(|&l| self.vertices.contains(&v.times(l))).collect()
    }

    /// Directed edges `(v, letter)` leaving the subtree, sorted.
    pub fn frontier(&self) -> Vec<(Word, Letter)> {
        let mut out = Vec::new();
        for v in &self.vertices {
            for l in Letter::all(self.rank) {
                if !self.vertices.contains(&v.times(l)) {
                    out.push((v.clone(), l));
                }
            }
        }
        out
    }

    /// Vertices with at most one neighbour inside.
    pub fn leaves(&self) -> Vec<Word> {
        self.vertices.iter().filter(|v| self.inner_letters(v).len() <= 1).cloned().collect()
    }

    /// Undirected edges, each as `(v, letter)` with `v < v·letter`.
    pub fn edges(&self) -> Vec<(Word, Letter)> {
        let mut out = Vec::new();
        for v in &self.vertices {
            for l in self.inner_letters(v) {
                let w = v.times(l);
                if *v < w {
                    out.push((v.clone(), l));
                }
            }
        }
        out
    }

    pub fn union(&self, other: &Subtree) -> Result<Subtree> {
        Subtree::from_vertices(self.rank, self.vertices.iter().chain(other.vertices.iter()).cloned())
    }

    pub(crate) fn remove(&mut self, v: &Word) {
        self.vertices.remove(v);
    }
}

impl fmt::Debug for Subtree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.vertices.iter().map(|v| v.to_string())).finish()
    }
}

impl Serialize for Subtree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.vertices.len()))?;
        for v in &self.vertices {
            seq.serialize_element(&v.to_string())?;
        }
        seq.end()
    }
}

/// Vertices on the geodesic from `u` to `v`, in order.
pub fn geodesic(u: &Word, v: &Word) -> Vec<Word> {
    let t = &u.inverse() * v;
    let mut out = Vec::with_capacity(t.len() + 1);
    let mut cur = u.clone();
    out.push(cur.clone());
    for &l in t.letters() {
        cur.push(l);
        out.push(cur.clone());
    }
    out
}

/// The centre of the tripod spanned by three distinct rays.
fn median(x: &Ray, y: &Ray, z: &Ray) -> Result<Word> {
    let dxy = x.agreement(y)?;
    let dxz = x.agreement(z)?;
    let dyz = y.agreement(z)?;
    Ok(if dyz >= dxy && dyz >= dxz {
        y.vertex(dyz)
    } else if dxz >= dxy {
        x.vertex(dxz)
    } else {
        x.vertex(dxy)
    })
}

/// The core of the convex hull of the endpoints of `lines`: the hull of all
/// branch points, i.e. of the medians of every triple of endpoints.
pub fn hull_core(rank: usize, lines: &[Line]) -> Result<Subtree> {
    let distinct: BTreeSet<&Line> = lines.iter().collect();
    if distinct.len() < 2 {
        return Err(Error::TooFewLines(distinct.len()));
    }
    let mut rays = Vec::with_capacity(2 * distinct.len());
    for l in &distinct {
        let (x, y) = l.endpoints();
        rays.push(x);
        rays.push(y);
    }
    let mut medians = BTreeSet::new();
    for i in 0..rays.len() {
        for j in i + 1..rays.len() {
            for k in j + 1..rays.len() {
                medians.insert(median(&rays[i], &rays[j], &rays[k])?);
            }
        }
    }
    Subtree::hull(rank, medians.iter())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CoreKind {
    Edge,
    Vertex,
    Tree,
}

impl fmt::Display for CoreKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoreKind::Edge => "EDGE",
            CoreKind::Vertex => "VERTEX",
            CoreKind::Tree => "TREE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrunedCore {
    pub kind: CoreKind,
    pub subtree: Subtree,
    #[serde(serialize_with = "serialize_edge")]
    pub retained_edge: Option<(Word, Letter)>,
}

fn serialize_edge<S: serde::Serializer>(e: &Option<(Word, Letter)>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match e {
        Some((v, l)) => s.collect_str(&format_args!("{v}:{l}")),
        None => s.serialize_none(),
    }
}

impl PrunedCore {
    /// The pruned core of the lines through a single edge.
    pub fn edge(rank: usize, from: &Word, letter: Letter) -> PrunedCore {
        let to = from.times(letter);
        let edge = if *from < to { (from.clone(), letter) } else { (to.clone(), letter.inverse()) };
        PrunedCore {
            kind: CoreKind::Edge,
            subtree: Subtree::path(rank, from, &to),
            retained_edge: Some(edge),
        }
    }
}

/// Removes leaves all of whose lines continue through the stem, smallest
/// prunable leaf first.
pub fn prune_core(core: &Subtree, lines: &[Line]) -> PrunedCore {
    prune_core_in_order(core, lines, |_| 0)
}

/// As [`prune_core`], with `pick` choosing which of the currently prunable
/// leaves (sorted) to remove next.
pub fn prune_core_in_order<F: FnMut(usize) -> usize>(core: &Subtree, lines: &[Line], mut pick: F) -> PrunedCore {
    let mut tree = core.clone();
    loop {
        if tree.len() == 1 {
            return PrunedCore { kind: CoreKind::Vertex, subtree: tree, retained_edge: None };
        }
        let prunable: Vec<Word> = tree
            .leaves()
            .into_iter()
            .filter(|leaf| {
                let stem = tree.inner_letters(leaf)[0];
                lines.iter().filter(|l| l.contains(leaf)).all(|l| l.contains_edge(leaf, stem))
            })
            .collect();
        if tree.len() == 2 && prunable.len() == 2 {
            let v = prunable[0].clone();
            let l = tree.inner_letters(&v)[0];
            return PrunedCore { kind: CoreKind::Edge, subtree: tree, retained_edge: Some((v, l)) };
        }
        if prunable.is_empty() {
            return PrunedCore { kind: CoreKind::Tree, subtree: tree, retained_edge: None };
        }
        let i = pick(prunable.len()) % prunable.len();
        tree.remove(&prunable[i]);
    }
}
