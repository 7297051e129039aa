//! Words in a free group of rank `r` over a fixed basis.
//!
//! Letters are ordered `a < A < b < B < ...` (generator `i` is the `i`-th
//! lowercase ASCII letter, its inverse the matching uppercase letter). Every
//! canonical form in the crate is taken with respect to this order.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Largest rank expressible in the ASCII word format.
pub const MAX_RANK: usize = 26;

/// Default refusal threshold for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000_000;

pub fn check_rank(rank: usize) -> Result<()> {
    if (2..=MAX_RANK).contains(&rank) {
        Ok(())
    } else {
        Err(Error::BadRank(rank))
    }
}

/// A generator or inverse generator, stored as `2 * generator + inverse`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Letter {
        assert!(generator < MAX_RANK, "generator index {generator} out of range");
        Letter((2 * generator + inverse as usize) as u8)
    }

    pub fn from_code(code: usize) -> Letter {
        assert!(code < 2 * MAX_RANK);
        Letter(code as u8)
    }

    #[inline]
    pub fn code(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    #[inline]
    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn sign(self) -> i8 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    #[inline]
    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    pub fn to_char(self) -> char {
        let c = (b'a' + self.generator() as u8) as char;
        if self.is_inverse() {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        if c.is_ascii_lowercase() {
            Some(Letter::new((c as u8 - b'a') as usize, false))
        } else if c.is_ascii_uppercase() {
            Some(Letter::new((c as u8 - b'A') as usize, true))
        } else {
            None
        }
    }

    /// All `2r` letters of a rank-`r` basis in the canonical order.
    pub fn all(rank: usize) -> impl Iterator<Item = Letter> + Clone {
        (0..2 * rank).map(Letter::from_code)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A freely reduced word. The empty word is the identity and prints as `1`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in raw {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Wraps letters that are already reduced; fails otherwise.
    pub fn from_reduced(letters: Vec<Letter>) -> Result<Word> {
        if letters.windows(2).any(|w| w[0] == w[1].inverse()) {
            return Err(Error::Parse {
                input: letters.iter().map(|l| l.to_char()).collect(),
                reason: "word is not freely reduced".into(),
            });
        }
        Ok(Word(letters))
    }

    pub(crate) fn from_vec_unchecked(letters: Vec<Letter>) -> Word {
        debug_assert!(letters.windows(2).all(|w| w[0] != w[1].inverse()));
        Word(letters)
    }

    #[inline]
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Right multiplication by a single letter.
    pub fn push(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inverse()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn times(&self, l: Letter) -> Word {
        let mut w = self.clone();
        w.push(l);
        w
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    /// The neighbour one step closer to the identity.
    pub fn parent(&self) -> Option<Word> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.prefix(self.len() - 1))
        }
    }

    /// Largest generator index used plus one (0 for the identity).
    pub fn min_rank(&self) -> usize {
        self.0.iter().map(|l| l.generator() + 1).max().unwrap_or(0)
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        match self.0.iter().find(|l| l.generator() >= rank) {
            Some(l) => Err(Error::LetterOutsideRank { letter: l.to_char(), rank }),
            None => Ok(()),
        }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(f), Some(l)) => self.len() == 1 || f != l.inverse(),
            _ => true,
        }
    }

    /// Splits `w = conjugator⁻¹ · core · conjugator` with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> CyclicReduction {
        let n = self.len();
        let mut i = 0;
        while 2 * i + 1 < n && self.0[i] == self.0[n - 1 - i].inverse() {
            i += 1;
        }
        CyclicReduction {
            core: Word(self.0[i..n - i].to_vec()),
            conjugator: Word(self.0[n - i..].to_vec()),
        }
    }

    /// Primitive root of the cyclic reduction and its exponent.
    pub fn primitive_root(&self) -> Result<(CyclicWord, usize)> {
        let core = self.cyclic_reduce().core;
        if core.is_identity() {
            return Err(Error::TrivialWord);
        }
        let period = smallest_period(core.letters());
        let exponent = core.len() / period;
        Ok((CyclicWord::canonical(core.0[..period].to_vec()), exponent))
    }

    /// Does `s` occur in `self` as a contiguous block starting in `[start, end)`
    /// and ending at or before `end`?
    pub fn contains_within(&self, s: &Word, start: usize, end: usize) -> bool {
        let end = end.min(self.len());
        if s.is_identity() {
            return start <= end;
        }
        if start >= end || end - start < s.len() {
            return false;
        }
        self.0[start..end].windows(s.len()).any(|w| w == s.letters())
    }
}

impl std::ops::Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        let mut out = self.clone();
        for &l in rhs.letters() {
            out.push(l);
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Parses the ASCII word format. `1` (or the empty string) is the identity;
/// unreduced input is freely reduced.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::identity());
        }
        let mut letters = Vec::with_capacity(s.len());
        for c in s.chars() {
            letters.push(Letter::from_char(c).ok_or_else(|| Error::Parse {
                input: s.to_string(),
                reason: format!("unexpected character `{c}`"),
            })?);
        }
        Ok(Word::reduce(letters))
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn smallest_period(letters: &[Letter]) -> usize {
    let n = letters.len();
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .find(|&d| (d..n).all(|i| letters[i] == letters[i - d]))
        .unwrap_or(n)
}

/// Index of the lexicographically least rotation.
pub(crate) fn least_rotation(s: &[Letter]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = s[(i + k) % n];
        let b = s[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

/// Result of [`Word::cyclic_reduce`]; `core` is kept as a linear word so that
/// `w = conjugator⁻¹ · core · conjugator` holds literally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicReduction {
    pub core: Word,
    pub conjugator: Word,
}

impl CyclicReduction {
    pub fn is_trivial(&self) -> bool {
        self.core.is_identity()
    }

    pub fn cyclic_word(&self) -> Option<CyclicWord> {
        if self.core.is_identity() {
            None
        } else {
            Some(CyclicWord::canonical(self.core.0.clone()))
        }
    }
}

/// A nonempty cyclically reduced word stored in its least rotation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicWord(Vec<Letter>);

impl CyclicWord {
    /// Cyclic word of `w`'s cyclic reduction. Fails on words conjugate to 1.
    pub fn of(w: &Word) -> Result<CyclicWord> {
        w.cyclic_reduce().cyclic_word().ok_or(Error::TrivialWord)
    }

    pub(crate) fn canonical(mut letters: Vec<Letter>) -> CyclicWord {
        debug_assert!(!letters.is_empty());
        let r = least_rotation(&letters);
        letters.rotate_left(r);
        CyclicWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn to_word(&self) -> Word {
        Word(self.0.clone())
    }

    pub fn inverse(&self) -> CyclicWord {
        CyclicWord::canonical(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    #[inline]
    pub fn at(&self, i: usize) -> Letter {
        self.0[i % self.0.len()]
    }

    /// Number of start positions `p` in `[0, |w|)` at which `s` is read with
    /// wraparound. Inverse occurrences are not counted; overlaps are.
    pub fn subword_count(&self, s: &Word) -> usize {
        assert!(!s.is_identity(), "subword must be nonempty");
        (0..self.len())
            .filter(|&p| s.letters().iter().enumerate().all(|(i, &l)| self.at(p + i) == l))
            .count()
    }

    /// Number of distinct cyclic subwords of length `k` (all are reduced).
    pub fn distinct_subwords(&self, k: usize) -> usize {
        let n = self.len();
        let buf: Vec<Letter> = (0..n + k.saturating_sub(1)).map(|i| self.at(i)).collect();
        let set: HashSet<&[Letter]> = (0..n).map(|p| &buf[p..p + k]).collect();
        set.len()
    }

    /// Every reduced word of length `k` over the rank-`rank` basis occurs.
    pub fn is_k_full(&self, rank: usize, k: usize) -> bool {
        assert!(k >= 1, "k must be positive");
        if self.0.iter().any(|l| l.generator() >= rank) {
            return false;
        }
        match sphere_size_u64(rank, k) {
            Some(needed) if needed <= self.len() as u64 => self.distinct_subwords(k) as u64 == needed,
            _ => false,
        }
    }

    /// Largest `k` for which the word is `k`-full (0 if not even 1-full).
    pub fn fullness(&self, rank: usize) -> usize {
        let mut k = 0;
        while self.is_k_full(rank, k + 1) {
            k += 1;
        }
        k
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclicWord({self})")
    }
}

impl serde::Serialize for CyclicWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `2r(2r-1)^(n-1)`, the number of reduced words of length `n` (1 for `n = 0`).
pub fn count_reduced(rank: usize, n: usize) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    BigUint::from(2 * rank) * BigUint::from(2 * rank - 1).pow(n as u32 - 1)
}

fn sphere_size_u64(rank: usize, n: usize) -> Option<u64> {
    if n == 0 {
        return Some(1);
    }
    (2 * rank as u64 - 1)
        .checked_pow(n as u32 - 1)?
        .checked_mul(2 * rank as u64)
}

/// `(2r-1)^n + r + (-1)^n (r-1)` cyclically reduced words of length `n ≥ 1`.
pub fn count_cyclically_reduced(rank: usize, n: usize) -> BigUint {
    assert!(rank >= 2 && n >= 1);
    let mut total = BigInt::from(2 * rank - 1).pow(n as u32) + BigInt::from(rank);
    let tail = BigInt::from(rank - 1);
    if n.is_multiple_of(2) {
        total += tail;
    } else {
        total -= tail;
    }
    total.to_biguint().expect("count is positive")
}

/// Number of length-`n` words whose cyclic reduction is one fixed cyclically
/// reduced word of length `k`.
pub fn count_with_cyclic_reduction(rank: usize, n: usize, k: usize) -> BigUint {
    assert!(rank >= 2 && 1 <= k && k <= n);
    if n == k {
        return BigUint::one();
    }
    if (n - k) % 2 == 1 {
        return BigUint::zero();
    }
    let half = (n - k) / 2;
    BigUint::from(2 * rank - 2) * BigUint::from(2 * rank - 1).pow(half as u32 - 1)
}

/// Uniform sample from the sphere of reduced words of length exactly `n`.
pub fn random_reduced_word<R: Rng + ?Sized>(rank: usize, n: usize, rng: &mut R) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(n);
    for i in 0..n {
        let l = if i == 0 {
            Letter::from_code(rng.random_range(0..2 * rank))
        } else {
            let forbidden = letters[i - 1].inverse().code();
            let mut c = rng.random_range(0..2 * rank - 1);
            if c >= forbidden {
                c += 1;
            }
            Letter::from_code(c)
        };
        letters.push(l);
    }
    Word(letters)
}

/// Uniform sample from the cyclically reduced words of length `n`, by rejection.
pub fn random_cyclically_reduced_word<R: Rng + ?Sized>(rank: usize, n: usize, rng: &mut R) -> Word {
    loop {
        let w = random_reduced_word(rank, n, rng);
        if w.is_cyclically_reduced() {
            return w;
        }
    }
}

/// Reduced words of one length in lexicographic order, optionally with a
/// fixed first letter (used to partition enumeration across workers).
#[derive(Clone, Debug)]
pub struct ReducedWords {
    rank: usize,
    len: usize,
    fixed_first: Option<Letter>,
    current: Option<Vec<Letter>>,
    done: bool,
}

impl ReducedWords {
    fn smallest_after(&self, prev: Option<Letter>, from: usize) -> Option<Letter> {
        (from..2 * self.rank)
            .map(Letter::from_code)
            .find(|&l| prev.is_none_or(|p| l != p.inverse()))
    }

    fn fill(&self, letters: &mut Vec<Letter>) {
        while letters.len() < self.len {
            let prev = letters.last().copied();
            let l = self.smallest_after(prev, 0).expect("rank ≥ 2 leaves a choice");
            letters.push(l);
        }
    }
}

impl Iterator for ReducedWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        match self.current.as_mut() {
            None => {
                let mut letters = Vec::with_capacity(self.len);
                if let (Some(f), true) = (self.fixed_first, self.len > 0) {
                    letters.push(f);
                }
                self.fill(&mut letters);
                self.current = Some(letters.clone());
                if self.len == 0 {
                    self.done = true;
                }
                Some(Word(letters))
            }
            Some(_) => {
                let mut letters = self.current.take().expect("checked");
                let floor = if self.fixed_first.is_some() { 1 } else { 0 };
                loop {
                    if letters.len() <= floor {
                        self.done = true;
                        return None;
                    }
                    let last = letters.pop().expect("nonempty");
                    let prev = letters.last().copied();
                    if let Some(l) = self.smallest_after(prev, last.code() + 1) {
                        letters.push(l);
                        break;
                    }
                }
                self.fill(&mut letters);
                self.current = Some(letters.clone());
                Some(Word(letters))
            }
        }
    }
}

fn guard(rank: usize, n: usize, cap: u64) -> Result<()> {
    check_rank(rank)?;
    let count = count_reduced(rank, n);
    if count > BigUint::from(cap) {
        return Err(Error::CapExceeded { requested: count.to_string(), cap });
    }
    Ok(())
}

/// All reduced words of length exactly `n`, each once, lexicographically.
pub fn enumerate_reduced_words(rank: usize, n: usize, cap: u64) -> Result<ReducedWords> {
    guard(rank, n, cap)?;
    Ok(ReducedWords { rank, len: n, fixed_first: None, current: None, done: false })
}

/// The slice of [`enumerate_reduced_words`] starting with `first`.
pub fn enumerate_reduced_words_from(rank: usize, n: usize, first: Letter, cap: u64) -> Result<ReducedWords> {
    guard(rank, n, cap)?;
    assert!(n >= 1 && first.generator() < rank);
    Ok(ReducedWords { rank, len: n, fixed_first: Some(first), current: None, done: false })
}
