//! Line patterns: the peripheral structure induced by a finite multi-word,
//! and the individual lines it places in the Cayley tree.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::cayley::Ray;
use crate::error::{Error, Result};
use crate::words::{check_rank, CyclicWord, Letter, Word};

/// Header line written at the top of pattern files.
pub const PATTERN_FORMAT_TAG: &str = "# format: peripheral-pattern v1";

/// A primitive cyclic word, canonical up to rotation and inversion.
#[derive(Clone, Debug)]
pub struct PatternWord {
    pub id: usize,
    pub word: CyclicWord,
    letters: Arc<[Letter]>,
}

impl PatternWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }
}

#[derive(Clone, Debug)]
pub struct LinePattern {
    rank: usize,
    words: Vec<PatternWord>,
}

impl LinePattern {
    /// The pattern induced by `raw`: cyclic reduction, primitive root,
    /// canonical form under rotation and inversion, deduplication. Ids follow
    /// first appearance.
    pub fn induced(rank: usize, raw: &[Word]) -> Result<LinePattern> {
        check_rank(rank)?;
        if raw.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let mut seen: BTreeSet<CyclicWord> = BTreeSet::new();
        let mut words = Vec::new();
        for w in raw {
            w.check_rank(rank)?;
            let (root, _) = w.primitive_root()?;
            let inv = root.inverse();
            let canon = if inv < root { inv } else { root };
            if seen.insert(canon.clone()) {
                let letters: Arc<[Letter]> = canon.letters().into();
                words.push(PatternWord { id: words.len(), word: canon, letters });
            }
        }
        Ok(LinePattern { rank, words })
    }

    /// Parses a pattern file: one word per line, `#` starts a comment. When
    /// `rank` is `None` it is inferred (at least 2).
    pub fn parse(text: &str, rank: Option<usize>) -> Result<LinePattern> {
        let mut raw = Vec::new();
        for line in text.lines() {
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            for token in content.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
                raw.push(token.parse::<Word>()?);
            }
        }
        if raw.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let rank = rank.unwrap_or_else(|| raw.iter().map(Word::min_rank).max().unwrap_or(0).max(2));
        if let Some(w) = raw.iter().find(|w| w.is_identity()) {
            let _ = w;
            return Err(Error::TrivialWord);
        }
        LinePattern::induced(rank, &raw)
    }

    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        out.push_str(PATTERN_FORMAT_TAG);
        out.push('\n');
        out.push_str(&format!("# rank: {}\n", self.rank));
        for w in &self.words {
            out.push_str(&w.word.to_string());
            out.push('\n');
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn words(&self) -> &[PatternWord] {
        &self.words
    }

    pub fn word(&self, id: usize) -> &PatternWord {
        &self.words[id]
    }

    /// Σ|g_i|, the number of lines through any vertex.
    pub fn total_length(&self) -> usize {
        self.words.iter().map(PatternWord::len).sum()
    }

    pub fn max_word_length(&self) -> usize {
        self.words.iter().map(PatternWord::len).max().unwrap_or(0)
    }

    /// One reading per line through `v`: every rotation of every pattern word.
    pub(crate) fn readings(&self) -> impl Iterator<Item = (usize, Reading<'_>)> + '_ {
        self.words.iter().flat_map(|pw| {
            (0..pw.len()).map(move |shift| (pw.id, Reading { word: &pw.letters, inverted: false, shift }))
        })
    }

    pub(crate) fn line_from_reading(&self, word_id: usize, at: Word, reading: Reading<'_>) -> Line {
        Line::from_reading(word_id, self.words[word_id].letters.clone(), at, reading)
    }

    /// The Σ|g_i| distinct lines through `v`, sorted.
    pub fn lines_through_vertex(&self, v: &Word) -> Vec<Line> {
        let mut lines: Vec<Line> =
            self.readings().map(|(id, r)| self.line_from_reading(id, v.clone(), r)).collect();
        lines.sort();
        lines
    }

    /// Lines through both `from` and `from·letter`.
    pub fn lines_through_edge(&self, from: &Word, letter: Letter) -> Vec<Line> {
        let mut lines: Vec<Line> = self
            .readings()
            .filter(|(_, r)| r.first() == letter || r.last() == letter.inverse())
            .map(|(id, r)| self.line_from_reading(id, from.clone(), r))
            .collect();
        lines.sort();
        lines
    }

    /// The line through `v` whose forward reading from `v` is `reading`, if
    /// `reading` is a rotation of a pattern word or of its inverse.
    pub fn line_with_reading(&self, v: &Word, reading: &Word) -> Option<Line> {
        for pw in &self.words {
            if pw.len() != reading.len() {
                continue;
            }
            for inverted in [false, true] {
                for shift in 0..pw.len() {
                    let r = Reading { word: &pw.letters, inverted, shift };
                    if (0..r.len()).all(|i| r.letter(i) == reading.letters()[i]) {
                        return Some(self.line_from_reading(pw.id, v.clone(), r));
                    }
                }
            }
        }
        None
    }
}

/// A bi-infinite periodic reading of a pattern word (or its inverse) starting
/// at some offset.
#[derive(Clone, Copy)]
pub(crate) struct Reading<'a> {
    pub word: &'a [Letter],
    pub inverted: bool,
    pub shift: usize,
}

impl<'a> Reading<'a> {
    #[inline]
    pub fn len(&self) -> usize {
        self.word.len()
    }

    #[inline]
    pub fn letter(&self, i: usize) -> Letter {
        let n = self.word.len();
        let j = (self.shift + i) % n;
        if self.inverted {
            self.word[n - 1 - j].inverse()
        } else {
            self.word[j]
        }
    }

    #[inline]
    pub fn first(&self) -> Letter {
        self.letter(0)
    }

    #[inline]
    pub fn last(&self) -> Letter {
        self.letter(self.len() - 1)
    }

    #[inline]
    pub fn advance(self) -> Reading<'a> {
        Reading { shift: (self.shift + 1) % self.len(), ..self }
    }

    #[inline]
    pub fn retreat(self) -> Reading<'a> {
        Reading { shift: (self.shift + self.len() - 1) % self.len(), ..self }
    }

    /// The same line read in the opposite direction from the same vertex.
    #[inline]
    pub fn reversed(self) -> Reading<'a> {
        let n = self.len();
        Reading { word: self.word, inverted: !self.inverted, shift: (n - self.shift) % n }
    }

    fn cmp_letters(&self, other: &Reading<'_>) -> Ordering {
        for i in 0..self.len() {
            match self.letter(i).cmp(&other.letter(i)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    pub fn to_word(&self) -> Word {
        Word::from_vec_unchecked((0..self.len()).map(|i| self.letter(i)).collect())
    }
}

/// One line of the pattern, stored by the vertex closest to the identity
/// (`base`) and the smaller of its two readings from there.
#[derive(Clone)]
pub struct Line {
    word_id: usize,
    base: Word,
    inverted: bool,
    shift: usize,
    word: Arc<[Letter]>,
}

impl Line {
    fn from_reading(word_id: usize, word: Arc<[Letter]>, mut v: Word, reading: Reading<'_>) -> Line {
        let (mut inverted, mut shift) = (reading.inverted, reading.shift);
        {
            let mut r = Reading { word: &word, inverted, shift };
            while let Some(last) = v.last() {
                if last == r.first().inverse() {
                    v.push(r.first());
                    r = r.advance();
                } else if last == r.last() {
                    v.push(r.last().inverse());
                    r = r.retreat();
                } else {
                    break;
                }
            }
            let rev = r.reversed();
            if rev.cmp_letters(&r) == Ordering::Less {
                r = rev;
            }
            inverted = r.inverted;
            shift = r.shift;
        }
        Line { word_id, base: v, inverted, shift, word }
    }

    pub fn word_id(&self) -> usize {
        self.word_id
    }

    pub fn base(&self) -> &Word {
        &self.base
    }

    /// Period length (length of the pattern word).
    pub fn period(&self) -> usize {
        self.word.len()
    }

    pub(crate) fn reading(&self) -> Reading<'_> {
        Reading { word: &self.word, inverted: self.inverted, shift: self.shift }
    }

    /// The canonical reading from `base`.
    pub fn direction(&self) -> Word {
        self.reading().to_word()
    }

    /// The two boundary points, forward then backward.
    pub fn endpoints(&self) -> (Ray, Ray) {
        let r = self.reading();
        (
            Ray::new(self.base.clone(), r.to_word()).expect("line periods are nontrivial"),
            Ray::new(self.base.clone(), r.reversed().to_word()).expect("line periods are nontrivial"),
        )
    }

    /// Forward reading of the line at `v`, if `v` lies on it.
    pub(crate) fn reading_at(&self, v: &Word) -> Option<Reading<'_>> {
        let t = &self.base.inverse() * v;
        let fwd = self.reading();
        if t.letters().iter().enumerate().all(|(i, &l)| fwd.letter(i) == l) {
            let mut r = fwd;
            r.shift = (r.shift + t.len()) % r.len();
            return Some(r);
        }
        let bwd = fwd.reversed();
        if t.letters().iter().enumerate().all(|(i, &l)| bwd.letter(i) == l) {
            let mut r = bwd;
            r.shift = (r.shift + t.len()) % r.len();
            return Some(r.reversed());
        }
        None
    }

    pub fn contains(&self, v: &Word) -> bool {
        self.reading_at(v).is_some()
    }

    /// Does the line traverse the edge from `v` along `letter`?
    pub fn contains_edge(&self, v: &Word, letter: Letter) -> bool {
        match self.reading_at(v) {
            Some(r) => r.first() == letter || r.last() == letter.inverse(),
            None => false,
        }
    }

    /// The two directions in which the line leaves `v` (forward, backward).
    pub fn exits_at(&self, v: &Word) -> Option<(Letter, Letter)> {
        self.reading_at(v).map(|r| (r.first(), r.last().inverse()))
    }

    /// Left translate `h · line`.
    pub fn translate(&self, h: &Word) -> Line {
        let at = h * &self.base;
        Line::from_reading(self.word_id, self.word.clone(), at, self.reading())
    }

    fn key(&self) -> (usize, &Word, bool, usize) {
        (self.word_id, &self.base, self.inverted, self.shift)
    }
}

impl PartialEq for Line {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Line {}

impl Hash for Line {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

impl PartialOrd for Line {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Line {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

/// `word_id:base:direction`, e.g. `1:1:aaB`.
impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.word_id, self.base, self.direction())
    }
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Line({self})")
    }
}

impl serde::Serialize for Line {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
