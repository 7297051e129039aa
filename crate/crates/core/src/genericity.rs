//! Densities of word properties over spheres of reduced words, measured
//! exactly by enumeration or estimated by seeded Monte Carlo sampling.

use std::fmt;
use std::str::FromStr;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pattern::LinePattern;
use crate::words::{
    check_rank, enumerate_reduced_words_from, random_reduced_word, CyclicWord, Letter, Word,
};

pub const CSV_FORMAT_TAG: &str = "# format: peripheral-estimates-csv v1";
pub const CSV_COLUMNS: &str = "name,params,r,n,mode,total,hits,fraction,stderr,seed";

/// Samples drawn from one random stream before switching to the next.
pub const CHUNK_SIZE: u64 = 4096;

#[derive(Clone, Debug, PartialEq)]
pub enum PropertySpec {
    /// The conjugator of the cyclic reduction has length at most `|w|/3`.
    S,
    /// The cyclic reduction is not a proper power.
    N,
    /// The target occurs inside the middle third of the word.
    W(Word),
    /// Length at least `15 r (2r-1) k`.
    L(usize),
    /// Every vertex pair of the vertex Whitehead graph of the cyclic
    /// reduction carries a fraction of the edges within `eps` of uniform.
    Q(f64),
    /// Every reduced word of length 2 occurs at least `k` times cyclically.
    B(usize),
    Full(usize),
    /// `B(k)`, 4-full and not a proper power.
    H(usize),
}

impl PropertySpec {
    pub fn name(&self) -> &'static str {
        match self {
            PropertySpec::S => "S",
            PropertySpec::N => "N",
            PropertySpec::W(_) => "W",
            PropertySpec::L(_) => "L",
            PropertySpec::Q(_) => "Q",
            PropertySpec::B(_) => "B",
            PropertySpec::Full(_) => "FULL",
            PropertySpec::H(_) => "H",
        }
    }

    pub fn params(&self) -> String {
        match self {
            PropertySpec::S | PropertySpec::N => String::new(),
            PropertySpec::W(t) => t.to_string(),
            PropertySpec::L(k) | PropertySpec::B(k) | PropertySpec::Full(k) | PropertySpec::H(k) => k.to_string(),
            PropertySpec::Q(eps) => eps.to_string(),
        }
    }

    fn validate(self, input: &str) -> Result<PropertySpec> {
        let ok = match &self {
            PropertySpec::W(t) => !t.is_identity(),
            PropertySpec::L(k) | PropertySpec::B(k) | PropertySpec::Full(k) | PropertySpec::H(k) => *k >= 1,
            PropertySpec::Q(eps) => eps.is_finite() && *eps > 0.0,
            _ => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::InvalidSpec(input.to_string()))
        }
    }
}

impl fmt::Display for PropertySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropertySpec::W(t) => write!(f, "W:{t}"),
            other => write!(f, "{}{}", other.name(), other.params()),
        }
    }
}

impl FromStr for PropertySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<PropertySpec> {
        let s = s.trim();
        let bad = || Error::InvalidSpec(s.to_string());
        let int = |rest: &str| rest.parse::<usize>().map_err(|_| bad());
        let spec = if s == "S" {
            PropertySpec::S
        } else if s == "N" {
            PropertySpec::N
        } else if let Some(rest) = s.strip_prefix("W:") {
            PropertySpec::W(rest.parse().map_err(|_| bad())?)
        } else if let Some(rest) = s.strip_prefix("FULL") {
            PropertySpec::Full(int(rest)?)
        } else if let Some(rest) = s.strip_prefix('L') {
            PropertySpec::L(int(rest)?)
        } else if let Some(rest) = s.strip_prefix('B') {
            PropertySpec::B(int(rest)?)
        } else if let Some(rest) = s.strip_prefix('H') {
            PropertySpec::H(int(rest)?)
        } else if let Some(rest) = s.strip_prefix('Q') {
            PropertySpec::Q(rest.parse().map_err(|_| bad())?)
        } else {
            return Err(bad());
        };
        spec.validate(s)
    }
}

/// Middle third of a word of length `n` as the index range `[n/3, ceil(2n/3))`.
pub fn middle_third(n: usize) -> (usize, usize) {
    (n / 3, (2 * n).div_ceil(3))
}

/// The window centre `1/(r(2r-1))` for pair frequencies.
pub fn uniform_pair_frequency(rank: usize) -> f64 {
    1.0 / (rank * (2 * rank - 1)) as f64
}

/// Occurrences of each ordered letter pair `xy` as a cyclic subword, indexed
/// by `x.code() * 2r + y.code()`.
pub fn two_letter_counts(rank: usize, w: &[Letter]) -> Vec<usize> {
    let m = 2 * rank;
    let mut counts = vec![0; m * m];
    let n = w.len();
    for i in 0..n {
        let x = w[i];
        let y = w[(i + 1) % n];
        if x.generator() < rank && y.generator() < rank {
            counts[x.code() * m + y.code()] += 1;
        }
    }
    counts
}

/// Edge multiplicities between the unordered vertex pairs of the vertex
/// Whitehead graph of a cyclically reduced word, listed in lexicographic
/// pair order. Each cyclic position reading `xy` adds an edge `{x^-1, y}`.
pub fn pair_counts(rank: usize, w: &[Letter]) -> Vec<usize> {
    let m = 2 * rank;
    let mut pairs = vec![0; m * m];
    let n = w.len();
    for i in 0..n {
        let a = w[i].inverse().code();
        let b = w[(i + 1) % n].code();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        pairs[lo * m + hi] += 1;
    }
    let mut out = Vec::with_capacity(rank * (2 * rank - 1));
    for lo in 0..m {
        for hi in lo + 1..m {
            out.push(pairs[lo * m + hi]);
        }
    }
    out
}

/// Pair multiplicities divided by the length of the word.
pub fn pair_frequencies(rank: usize, w: &CyclicWord) -> Vec<f64> {
    let n = w.len() as f64;
    pair_counts(rank, w.letters()).into_iter().map(|c| c as f64 / n).collect()
}

fn cyclic_core(w: &Word) -> Option<CyclicWord> {
    w.cyclic_reduce().cyclic_word()
}

pub fn eval_property(spec: &PropertySpec, rank: usize, w: &Word) -> bool {
    let n = w.len();
    match spec {
        PropertySpec::S => w.cyclic_reduce().conjugator.len() <= n / 3,
        PropertySpec::N => matches!(w.primitive_root(), Ok((_, 1))),
        PropertySpec::W(t) => {
            let (lo, hi) = middle_third(n);
            w.contains_within(t, lo, hi)
        }
        PropertySpec::L(k) => n >= 15 * rank * (2 * rank - 1) * k,
        PropertySpec::Q(eps) => match cyclic_core(w) {
            None => false,
            Some(c) => {
                let centre = uniform_pair_frequency(rank);
                pair_frequencies(rank, &c).iter().all(|f| (f - centre).abs() < *eps)
            }
        },
        PropertySpec::B(k) => match cyclic_core(w) {
            None => false,
            Some(c) => has_each_two_letter_word(rank, &c, *k),
        },
        PropertySpec::Full(m) => cyclic_core(w).is_some_and(|c| c.is_k_full(rank, *m)),
        PropertySpec::H(k) => match w.primitive_root() {
            Ok((_, 1)) => {
                let c = cyclic_core(w).expect("nontrivial");
                has_each_two_letter_word(rank, &c, *k) && c.is_k_full(rank, 4)
            }
            _ => false,
        },
    }
}

fn has_each_two_letter_word(rank: usize, c: &CyclicWord, k: usize) -> bool {
    if c.letters().iter().any(|l| l.generator() >= rank) {
        return false;
    }
    let m = 2 * rank;
    let counts = two_letter_counts(rank, c.letters());
    (0..m).all(|x| (0..m).all(|y| y == (x ^ 1) || counts[x * m + y] >= k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    #[serde(rename = "EXACT")]
    Exact,
    #[serde(rename = "MC")]
    MonteCarlo,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "EXACT",
            Mode::MonteCarlo => "MC",
        })
    }
}

/// One measured density over the sphere of reduced words of length `n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstimateRow {
    pub name: String,
    pub params: String,
    pub r: usize,
    pub n: usize,
    pub mode: Mode,
    pub total: u64,
    pub hits: u64,
    pub fraction: f64,
    pub stderr: f64,
    pub seed: Option<u64>,
}

impl EstimateRow {
    fn new(spec: &PropertySpec, r: usize, n: usize, mode: Mode, total: u64, hits: u64, seed: Option<u64>) -> EstimateRow {
        let fraction = hits as f64 / total as f64;
        let stderr = match mode {
            Mode::Exact => 0.0,
            Mode::MonteCarlo => (fraction * (1.0 - fraction) / total as f64).sqrt(),
        };
        EstimateRow {
            name: spec.name().to_string(),
            params: spec.params(),
            r,
            n,
            mode,
            total,
            hits,
            fraction,
            stderr,
            seed,
        }
    }

    pub fn failure_fraction(&self) -> f64 {
        1.0 - self.fraction
    }

    pub fn to_csv_line(&self) -> String {
        let seed = self.seed.map(|s| s.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.name, self.params, self.r, self.n, self.mode, self.total, self.hits, self.fraction, self.stderr, seed
        )
    }
}

pub fn rows_to_csv(rows: &[EstimateRow]) -> String {
    let mut out = format!("{CSV_FORMAT_TAG}\n{CSV_COLUMNS}\n");
    for row in rows {
        out.push_str(&row.to_csv_line());
        out.push('\n');
    }
    out
}

/// Exact fraction over all `2r(2r-1)^(n-1)` reduced words of length `n`.
/// Work is split by first letter.
pub fn exact_fraction(spec: &PropertySpec, rank: usize, n: usize, cap: u64) -> Result<EstimateRow> {
    check_rank(rank)?;
    if n == 0 {
        let hit = eval_property(spec, rank, &Word::identity()) as u64;
        return Ok(EstimateRow::new(spec, rank, 0, Mode::Exact, 1, hit, None));
    }
    let parts: Vec<(u64, u64)> = Letter::all(rank)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|first| -> Result<(u64, u64)> {
            let mut total = 0u64;
            let mut hits = 0u64;
            for w in enumerate_reduced_words_from(rank, n, first, cap)? {
                total += 1;
                hits += eval_property(spec, rank, &w) as u64;
            }
            Ok((total, hits))
        })
        .collect::<Result<_>>()?;
    let (total, hits) = parts.iter().fold((0, 0), |(t, h), &(a, b)| (t + a, h + b));
    Ok(EstimateRow::new(spec, rank, n, Mode::Exact, total, hits, None))
}

/// Random stream for one chunk of samples; chunks are independent of the
/// number of worker threads.
pub fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

/// Monte Carlo estimate from `samples` uniform words of length `n`.
pub fn mc_fraction(spec: &PropertySpec, rank: usize, n: usize, samples: u64, seed: u64) -> Result<EstimateRow> {
    check_rank(rank)?;
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let chunks = samples.div_ceil(CHUNK_SIZE);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(seed, c);
            let size = CHUNK_SIZE.min(samples - c * CHUNK_SIZE);
            (0..size)
                .filter(|_| eval_property(spec, rank, &random_reduced_word(rank, n, &mut rng)))
                .count() as u64
        })
        .sum();
    Ok(EstimateRow::new(spec, rank, n, Mode::MonteCarlo, samples, hits, Some(seed)))
}

/// Least squares fit of `ln(1 - fraction) = b - c n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DecayFit {
    pub b: f64,
    pub c: f64,
    pub r_squared: f64,
    pub rows_used: usize,
}

/// Rows whose failure fraction is 0 or 1 are skipped.
pub fn decay_fit(rows: &[EstimateRow]) -> Result<DecayFit> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.fraction > 0.0 && r.fraction < 1.0)
        .map(|r| (r.n as f64, r.failure_fraction().ln()))
        .collect();
    if pts.len() < 3 {
        return Err(Error::InsufficientRows(pts.len()));
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientRows(1));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let r_squared = if syy <= f64::EPSILON * k { 1.0 } else { 1.0 - ss_res / syy };
    Ok(DecayFit { b: intercept, c: -slope + 0.0, r_squared, rows_used: pts.len() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LengthModel {
    /// Uniform over nontrivial reduced words of length at most `n`.
    Ball,
    /// Uniform over reduced words of length exactly `n`.
    Sphere,
}

/// `count` independent words drawn from the ball or sphere of radius `n`.
pub fn random_words(rank: usize, n: usize, count: usize, seed: u64, model: LengthModel) -> Result<Vec<Word>> {
    check_rank(rank)?;
    if n == 0 || count == 0 {
        return Err(Error::InvalidArgument("length and count must be positive".into()));
    }
    let mut rng = chunk_rng(seed, 0);
    let q = (2 * rank - 1) as f64;
    let lengths = WeightedIndex::new((1..=n).map(|i| q.powi(i as i32 - n as i32)))
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    Ok((0..count)
        .map(|_| {
            let len = match model {
                LengthModel::Ball => lengths.sample(&mut rng) + 1,
                LengthModel::Sphere => n,
            };
            random_reduced_word(rank, len, &mut rng)
        })
        .collect())
}

/// The pattern induced by `count` random words; duplicates and conjugates
/// collapse, so it may have fewer words.
pub fn random_peripheral_structure(rank: usize, n: usize, count: usize, seed: u64, model: LengthModel) -> Result<LinePattern> {
    LinePattern::induced(rank, &random_words(rank, n, count, seed, model)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::whitehead::wh_vertex;
    use crate::words::{enumerate_reduced_words, random_cyclically_reduced_word, DEFAULT_ENUMERATION_CAP};
    use rand::Rng;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn spec(s: &str) -> PropertySpec {
        s.parse().unwrap()
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in ["S", "N", "W:ab", "L1", "Q0.05", "B1", "FULL4", "H3"] {
            assert_eq!(spec(s).to_string(), s);
        }
        for s in ["", "X", "L0", "B", "Q0", "Q-1", "W:", "FULL"] {
            assert!(s.parse::<PropertySpec>().is_err(), "{s}");
        }
    }

    #[test]
    fn small_examples() {
        assert!(eval_property(&PropertySpec::S, 2, &w("Baaaab")));
        assert!(!eval_property(&PropertySpec::S, 2, &w("BBBabbb")));
        assert!(!eval_property(&spec("B1"), 2, &w("abAB")));
        assert!(eval_property(&spec("B1"), 2, &w("aabbaBBAAbAB")));
        assert_eq!(uniform_pair_frequency(2), 1.0 / 6.0);
        assert!(!eval_property(&spec("L1"), 2, &random_reduced_word(2, 89, &mut chunk_rng(1, 0))));
        assert!(eval_property(&spec("L1"), 2, &random_reduced_word(2, 90, &mut chunk_rng(1, 0))));
        assert!(eval_property(&spec("W:ab"), 2, &w("bbabaa")));
        assert!(!eval_property(&spec("W:ab"), 2, &w("abbbbb")));
        assert!(!eval_property(&spec("N"), 2, &w("abab")));
        assert!(eval_property(&spec("N"), 2, &w("aab")));
    }

    #[test]
    fn proper_powers_of_length_two() {
        let row = exact_fraction(&PropertySpec::N, 2, 2, DEFAULT_ENUMERATION_CAP).unwrap();
        let oracle = enumerate_reduced_words(2, 2, 100)
            .unwrap()
            .filter(|x| {
                let l = x.letters();
                !(l[0] == l[1] || l[0] == l[1].inverse())
            })
            .count() as u64;
        assert_eq!((row.total, row.hits), (12, oracle));
        assert_eq!(row.hits, 8);
    }

    #[test]
    fn length_threshold_and_pigeonhole() {
        assert!(matches!(
            exact_fraction(&spec("L1"), 2, 89, DEFAULT_ENUMERATION_CAP),
            Err(Error::CapExceeded { .. })
        ));
        let mc89 = mc_fraction(&spec("L1"), 2, 89, 500, 3).unwrap();
        let mc90 = mc_fraction(&spec("L1"), 2, 90, 500, 3).unwrap();
        assert_eq!((mc89.fraction, mc90.fraction), (0.0, 1.0));
        let full = mc_fraction(&spec("FULL4"), 2, 50, 2000, 5).unwrap();
        assert_eq!(full.hits, 0);
    }

    #[test]
    fn one_full_at_length_four_matches_oracle() {
        let row = exact_fraction(&spec("FULL1"), 2, 4, DEFAULT_ENUMERATION_CAP).unwrap();
        let oracle = enumerate_reduced_words(2, 4, 1000)
            .unwrap()
            .filter(|x| {
                let c = x.cyclic_reduce().core;
                Letter::all(2).all(|l| c.letters().contains(&l))
            })
            .count() as u64;
        assert_eq!(row.total, 108);
        assert_eq!(row.hits, oracle);
        assert!(row.hits > 0);
    }

    #[test]
    fn pair_counts_agree_with_whitehead_graph() {
        let mut rng = chunk_rng(11, 0);
        for _ in 0..50 {
            let n = rng.random_range(2..30);
            let x = random_cyclically_reduced_word(2, n, &mut rng);
            let Ok((root, 1)) = x.primitive_root() else { continue };
            let p = LinePattern::induced(2, std::slice::from_ref(&x)).unwrap();
            let mut from_graph: Vec<usize> = wh_vertex(&p).pair_multiplicities().into_values().collect();
            let mut direct = pair_counts(2, root.letters());
            from_graph.sort();
            direct.sort();
            assert_eq!(from_graph, direct);
        }
    }

    #[test]
    fn pair_frequencies_average_to_window_centre() {
        let mut rng = chunk_rng(12, 0);
        for rank in 2..5 {
            let x = random_cyclically_reduced_word(rank, 301, &mut rng);
            let f = pair_frequencies(rank, &CyclicWord::of(&x).unwrap());
            assert_eq!(f.len(), rank * (2 * rank - 1));
            let mean = f.iter().sum::<f64>() / f.len() as f64;
            assert!((mean - uniform_pair_frequency(rank)).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_log_linear_data_fits_perfectly() {
        let mk = |n: usize, fraction: f64| EstimateRow {
            name: "X".into(),
            params: String::new(),
            r: 2,
            n,
            mode: Mode::Exact,
            total: 1,
            hits: 0,
            fraction,
            stderr: 0.0,
            seed: None,
        };
        let rows: Vec<_> = (1..=3).map(|n| mk(n, 1.0 - (-(n as f64)).exp())).collect();
        let fit = decay_fit(&rows).unwrap();
        assert!(fit.b.abs() < 1e-12 && (fit.c - 1.0).abs() < 1e-12 && (fit.r_squared - 1.0).abs() < 1e-12);
        let flat: Vec<_> = (1..=4).map(|n| mk(n, 0.7)).collect();
        assert!(decay_fit(&flat).unwrap().c.abs() < 1e-12);
        assert!(matches!(decay_fit(&rows[..2]), Err(Error::InsufficientRows(2))));
    }

    #[test]
    fn monte_carlo_is_deterministic_and_thread_independent() {
        let a = mc_fraction(&spec("B1"), 2, 40, 10_000, 9).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let b = pool.install(|| mc_fraction(&spec("B1"), 2, 40, 10_000, 9).unwrap());
        assert_eq!(a, b);
        assert_ne!(a, mc_fraction(&spec("B1"), 2, 40, 10_000, 10).unwrap());
    }

    #[test]
    fn monte_carlo_tracks_exact_values() {
        for (s, n) in [("S", 9), ("N", 6), ("B1", 11), ("Q0.1", 12), ("W:ab", 7)] {
            let exact = exact_fraction(&spec(s), 2, n, DEFAULT_ENUMERATION_CAP).unwrap();
            let mc = mc_fraction(&spec(s), 2, n, 20_000, 1).unwrap();
            let sd = (exact.fraction * (1.0 - exact.fraction) / 20_000.0).sqrt();
            assert!((mc.fraction - exact.fraction).abs() <= 4.0 * sd, "{s} {n}");
        }
    }

    #[test]
    fn hierarchy_holds_pointwise() {
        let mut rng = chunk_rng(13, 0);
        for _ in 0..2000 {
            let n = rng.random_range(1..150);
            let x = random_reduced_word(2, n, &mut rng);
            for k in 1..4 {
                if eval_property(&PropertySpec::H(k), 2, &x) {
                    assert!(eval_property(&PropertySpec::B(k), 2, &x));
                }
                if eval_property(&PropertySpec::B(k + 1), 2, &x) {
                    assert!(eval_property(&PropertySpec::B(k), 2, &x));
                }
                if eval_property(&PropertySpec::Full(k + 1), 2, &x) {
                    assert!(eval_property(&PropertySpec::Full(k), 2, &x));
                }
            }
        }
    }

    #[test]
    fn dense_middle_third_gives_k_edges_per_pair() {
        let p = PropertySpec::Q(1.0 / 12.0);
        let mut rng = chunk_rng(2024, 0);
        let mut checked = 0;
        for _ in 0..10_000 {
            let n = rng.random_range(90..400);
            let x = random_reduced_word(2, n, &mut rng);
            let k = n / 90;
            if eval_property(&PropertySpec::S, 2, &x)
                && eval_property(&p, 2, &x)
                && eval_property(&PropertySpec::L(k), 2, &x)
            {
                checked += 1;
                let c = x.cyclic_reduce().cyclic_word().unwrap();
                assert!(pair_counts(2, c.letters()).iter().all(|&m| m >= k), "{x}");
            }
        }
        assert!(checked > 9000);
    }

    #[test]
    fn pair_density_does_not_force_each_two_letter_word() {
        let x = w("aBaabAABABBaBAbaabAbAABBBBaaabaBAbaBBBAbabABABabABaBaBAbAbabAbAAABBBBAbaaaaBAAbABBabAbaBABBAAbAAbaaBBaBabaabaababababAA");
        let p = PropertySpec::Q(1.0 / 12.0);
        assert!(eval_property(&PropertySpec::S, 2, &x));
        assert!(eval_property(&p, 2, &x));
        assert!(eval_property(&PropertySpec::L(1), 2, &x));
        assert!(!eval_property(&PropertySpec::B(1), 2, &x));
    }

    #[test]
    fn random_structures() {
        let p = random_peripheral_structure(2, 12, 3, 4, LengthModel::Ball).unwrap();
        assert!(p.words().len() <= 3 && !p.words().is_empty());
        let again = random_peripheral_structure(2, 12, 3, 4, LengthModel::Ball).unwrap();
        assert_eq!(p.to_file_string(), again.to_file_string());
        let words = random_words(2, 30, 200, 5, LengthModel::Ball).unwrap();
        assert!(words.iter().all(|x| (1..=30).contains(&x.len())));
        let long = words.iter().filter(|x| x.len() == 30).count();
        assert!(long > 100, "about two thirds should have full length, got {long}");
        let sphere = random_words(2, 30, 20, 5, LengthModel::Sphere).unwrap();
        assert!(sphere.iter().all(|x| x.len() == 30));
    }

    #[test]
    fn csv_layout() {
        let row = exact_fraction(&spec("B1"), 2, 3, 1000).unwrap();
        let csv = rows_to_csv(&[row]);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], CSV_FORMAT_TAG);
        assert_eq!(lines[1], CSV_COLUMNS);
        assert_eq!(lines[2], "B,1,2,3,EXACT,36,0,0,0,");
    }
}
