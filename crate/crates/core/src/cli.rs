//! Command line front end. [`run`] parses arguments, writes the report to
//! `out` and returns the process exit code: 0 on success, 2 for input
//! errors, 3 when a budget or cap cut the computation short.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cayley::Ray;
use crate::cutsets::{
    boundary_cut_check, certify_lower_bound, default_depth, find_cut_sets_with, BoundaryPoint, SearchOptions,
    Strategy,
};
use crate::error::{Error, Result};
use crate::genericity::{
    decay_fit, exact_fraction, mc_fraction, random_peripheral_structure, rows_to_csv, EstimateRow, LengthModel,
    PropertySpec,
};
use crate::pattern::LinePattern;
use crate::whitehead::wh_vertex;
use crate::words::{
    count_cyclically_reduced, count_reduced, count_with_cyclic_reduction, enumerate_reduced_words, Word,
    DEFAULT_ENUMERATION_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_TRUNCATED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "peripheral", version, about = "Whitehead graphs and cut sets for free groups with a line pattern")]
pub struct Cli {
    /// Worker threads (0 uses all cores). Output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Vertex Whitehead graph, fullness of each word and the cut set certificate.
    Analyze(AnalyzeArgs),
    /// Search for cut sets made of few lines near the identity.
    Cutsearch(CutsearchArgs),
    /// Count components of the boundary minus a few points.
    Boundary(BoundaryArgs),
    /// Densities of word properties, exact or sampled.
    Generic(GenericArgs),
    /// Counts of reduced and cyclically reduced words.
    Enumerate(EnumerateArgs),
    /// Random peripheral structure.
    Sample(SampleArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct PatternSource {
    /// Pattern words, separated by commas or spaces (lowercase generator, uppercase inverse).
    #[arg(long, conflicts_with = "pattern_file")]
    pub pattern: Option<String>,
    /// Pattern file: one word per line, `#` comments.
    #[arg(long)]
    pub pattern_file: Option<PathBuf>,
    /// Rank of the free group; inferred from the letters when absent.
    #[arg(long)]
    pub rank: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
    Csv,
    Dot,
    Pattern,
}

#[derive(Args, Debug, Serialize)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub source: PatternSource,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug, Serialize)]
pub struct CutsearchArgs {
    #[command(flatten)]
    pub source: PatternSource,
    #[arg(long, default_value_t = 2)]
    pub max_size: usize,
    #[arg(long, default_value_t = 2)]
    pub radius: usize,
    /// Maximum number of candidate sets evaluated one by one.
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: u64,
    /// Evaluate every candidate individually instead of grouping.
    #[arg(long)]
    pub exhaustive: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug, Serialize)]
pub struct BoundaryArgs {
    #[command(flatten)]
    pub source: PatternSource,
    /// `line:BASE:READING` for the line through BASE read as READING, or
    /// `ray:PREFIX:PERIOD` for an eventually periodic ray. Repeat 1 to 4 times.
    #[arg(long = "point", required = true)]
    pub points: Vec<String>,
    /// Truncation depth; a safe default is derived from the points.
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug, Serialize)]
pub struct GenericArgs {
    /// Property: S, N, W:<word>, L<k>, Q<eps>, B<k>, FULL<m> or H<k>. Repeatable.
    #[arg(long = "spec", required = true)]
    pub specs: Vec<String>,
    #[arg(long, default_value_t = 2)]
    pub rank: usize,
    /// Lengths as `start:end:step` (inclusive) or a comma separated list.
    #[arg(long)]
    pub n_grid: String,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long)]
    pub seed: u64,
    /// Lengths up to this value are enumerated exactly.
    #[arg(long, default_value_t = 0)]
    pub exact_below: usize,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub cap: u64,
    /// Fit exponential decay of the failure fraction for each property.
    #[arg(long)]
    pub fit: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args, Debug, Serialize)]
pub struct EnumerateArgs {
    #[arg(long, default_value_t = 2)]
    pub rank: usize,
    /// Largest length listed.
    #[arg(long)]
    pub n: usize,
    /// Also count words whose cyclic reduction is a fixed word of this length.
    #[arg(long)]
    pub core_length: Option<usize>,
    /// Check the closed forms against explicit enumeration.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, default_value_t = 10_000_000)]
    pub cap: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Ball,
    Sphere,
}

#[derive(Args, Debug, Serialize)]
pub struct SampleArgs {
    #[arg(long, default_value_t = 2)]
    pub rank: usize,
    /// Maximum (ball) or exact (sphere) word length.
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Model::Ball)]
    pub model: Model,
    #[arg(long, value_enum, default_value_t = Format::Pattern)]
    pub format: Format,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    format: String,
    config: &'a Command,
    seed: Option<u64>,
    result: T,
}

struct Output {
    text: String,
    truncated: bool,
}

impl Output {
    fn done(text: String) -> Output {
        Output { text, truncated: false }
    }
}

/// Parses `args` (program name first) and runs one subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    match pool.install(|| execute(&cli.command)) {
        Ok(output) => {
            if out.write_all(output.text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return 1;
            }
            if output.truncated {
                let _ = writeln!(err, "warning: computation truncated by budget");
                EXIT_TRUNCATED
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::CapExceeded { .. } => EXIT_TRUNCATED,
                Error::Io(_) => 1,
                _ => EXIT_INPUT,
            }
        }
    }
}

fn execute(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Analyze(a) => analyze(cmd, a),
        Command::Cutsearch(a) => cutsearch(cmd, a),
        Command::Boundary(a) => boundary(cmd, a),
        Command::Generic(a) => generic(cmd, a),
        Command::Enumerate(a) => enumerate(cmd, a),
        Command::Sample(a) => sample(cmd, a),
    }
}

fn config_line(cmd: &Command, prefix: &str) -> String {
    format!("{prefix} config: {}\n", serde_json::to_string(cmd).expect("config serialises"))
}

fn json<T: Serialize>(cmd: &Command, name: &str, seed: Option<u64>, result: T) -> String {
    let env = Envelope { format: format!("peripheral-{name}-json v1"), config: cmd, seed, result };
    let mut s = serde_json::to_string_pretty(&env).expect("report serialises");
    s.push('\n');
    s
}

fn unsupported(format: Format, name: &str) -> Error {
    Error::InvalidArgument(format!("format {format:?} is not available for {name}").to_lowercase())
}

fn load_pattern(src: &PatternSource) -> Result<LinePattern> {
    let text = match (&src.pattern, &src.pattern_file) {
        (Some(p), _) => p.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)?,
        (None, None) => return Err(Error::InvalidArgument("give --pattern or --pattern-file".into())),
    };
    LinePattern::parse(&text, src.rank)
}

#[derive(Serialize)]
struct WordSummary {
    id: usize,
    word: String,
    length: usize,
    fullness: usize,
}

#[derive(Serialize)]
struct PairRow {
    u: String,
    v: String,
    multiplicity: usize,
}

#[derive(Serialize)]
struct AnalyzeReport {
    rank: usize,
    words: Vec<WordSummary>,
    vertex_count: usize,
    edge_count: usize,
    pairs: Vec<PairRow>,
    certificate: crate::cutsets::Certificate,
    graph: serde_json::Value,
}

fn analyze(cmd: &Command, a: &AnalyzeArgs) -> Result<Output> {
    let p = load_pattern(&a.source)?;
    let g = wh_vertex(&p);
    let report = AnalyzeReport {
        rank: p.rank(),
        words: p
            .words()
            .iter()
            .map(|w| WordSummary { id: w.id, word: w.word.to_string(), length: w.len(), fullness: w.word.fullness(p.rank()) })
            .collect(),
        vertex_count: g.vertex_count(),
        edge_count: g.edge_count(),
        pairs: g
            .pair_multiplicities()
            .into_iter()
            .map(|((u, v), m)| PairRow { u: u.to_string(), v: v.to_string(), multiplicity: m })
            .collect(),
        certificate: certify_lower_bound(&p),
        graph: g.to_json(),
    };
    let text = match a.format {
        Format::Json => json(cmd, "analyze", None, &report),
        Format::Dot => {
            let dot = g.to_dot();
            let (tag, body) = dot.split_once('\n').expect("dot has a header");
            format!("{tag}\n{}{body}", config_line(cmd, "//"))
        }
        Format::Text => {
            let mut s = config_line(cmd, "#");
            s.push_str(&format!("rank {}\n", report.rank));
            for w in &report.words {
                s.push_str(&format!("word {} {} length {} fullness {}\n", w.id, w.word, w.length, w.fullness));
            }
            s.push_str(&format!("vertices {} edges {}\n", report.vertex_count, report.edge_count));
            for pr in &report.pairs {
                s.push_str(&format!("pair {} {} {}\n", pr.u, pr.v, pr.multiplicity));
            }
            let c = &report.certificate;
            s.push_str(&format!(
                "4-full word {} min multiplicity {} bound {}\n",
                c.has_4_full_word,
                c.min_multiplicity,
                c.certified_lower_bound.map_or("none".to_string(), |b| b.to_string())
            ));
            s
        }
        f => return Err(unsupported(f, "analyze")),
    };
    Ok(Output::done(text))
}

fn cutsearch(cmd: &Command, a: &CutsearchArgs) -> Result<Output> {
    let p = load_pattern(&a.source)?;
    let opts = SearchOptions {
        max_size: a.max_size,
        radius: a.radius,
        budget: a.budget,
        strategy: if a.exhaustive { Strategy::Exhaustive } else { Strategy::Auto },
    };
    let search = find_cut_sets_with(&p, &opts)?;
    let text = match a.format {
        Format::Json => json(cmd, "cutsearch", None, &search),
        Format::Text => {
            let mut s = config_line(cmd, "#");
            s.push_str(&format!(
                "lines meeting ball {} candidates {} truncated {} found {}\n",
                search.lines_meeting_ball,
                search.candidates_evaluated,
                search.truncated,
                search.reports.len()
            ));
            for r in &search.reports {
                let lines: Vec<String> = r.lines.iter().map(ToString::to_string).collect();
                let core = r.pruned_core.as_ref().map_or("-".to_string(), |c| c.kind.to_string());
                let minimal = r.minimal.map_or("unknown".to_string(), |m| m.to_string());
                s.push_str(&format!(
                    "cut {} components {} core {} minimal {}\n",
                    lines.join(" "),
                    r.component_count,
                    core,
                    minimal
                ));
            }
            s
        }
        f => return Err(unsupported(f, "cutsearch")),
    };
    Ok(Output { text, truncated: search.truncated })
}

fn parse_point(p: &LinePattern, s: &str) -> Result<BoundaryPoint> {
    let bad = |reason: &str| Error::Parse { input: s.to_string(), reason: reason.to_string() };
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(bad("expected line:BASE:READING or ray:PREFIX:PERIOD"));
    }
    let first: Word = parts[1].parse()?;
    let second: Word = parts[2].parse()?;
    first.check_rank(p.rank())?;
    second.check_rank(p.rank())?;
    match parts[0] {
        "line" => p
            .line_with_reading(&first, &second)
            .map(BoundaryPoint::Line)
            .ok_or_else(|| bad("no pattern line has this reading at this vertex")),
        "ray" => Ok(BoundaryPoint::Ray(Ray::new(first, second)?)),
        _ => Err(bad("point kind must be `line` or `ray`")),
    }
}

fn boundary(cmd: &Command, a: &BoundaryArgs) -> Result<Output> {
    let p = load_pattern(&a.source)?;
    let points: Vec<BoundaryPoint> = a.points.iter().map(|s| parse_point(&p, s)).collect::<Result<_>>()?;
    let depth = match a.depth {
        Some(d) => d,
        None => default_depth(&p, &points)?,
    };
    let check = boundary_cut_check(&p, &points, depth)?;
    let text = match a.format {
        Format::Json => json(cmd, "boundary", None, &check),
        Format::Text => format!(
            "{}depth {} components {} at depth+2 {} stabilized {} good {} bad {}\n",
            config_line(cmd, "#"),
            check.depth,
            check.component_count,
            check.count_at_depth_plus_two,
            check.stabilized,
            check.good_points,
            check.bad_points
        ),
        f => return Err(unsupported(f, "boundary")),
    };
    Ok(Output::done(text))
}

fn parse_grid(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::Parse { input: s.to_string(), reason: "expected start:end:step or a list".into() };
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let grid = if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let (start, end, step) = match parts.as_slice() {
            [a, b] => (num(a)?, num(b)?, 1),
            [a, b, c] => (num(a)?, num(b)?, num(c)?),
            _ => return Err(bad()),
        };
        if step == 0 || end < start {
            return Err(bad());
        }
        (start..=end).step_by(step).collect()
    } else {
        s.split(',').map(num).collect::<Result<Vec<_>>>()?
    };
    if grid.is_empty() {
        return Err(bad());
    }
    Ok(grid)
}

#[derive(Serialize)]
struct SpecFit {
    spec: String,
    fit: Option<crate::genericity::DecayFit>,
    error: Option<String>,
}

fn generic(cmd: &Command, a: &GenericArgs) -> Result<Output> {
    let specs: Vec<PropertySpec> = a.specs.iter().map(|s| s.parse()).collect::<Result<_>>()?;
    let grid = parse_grid(&a.n_grid)?;
    let mut rows: Vec<EstimateRow> = Vec::new();
    let mut fits = Vec::new();
    for spec in &specs {
        let mut spec_rows = Vec::new();
        for &n in &grid {
            let row = if n <= a.exact_below {
                exact_fraction(spec, a.rank, n, a.cap)?
            } else {
                mc_fraction(spec, a.rank, n, a.samples, a.seed)?
            };
            spec_rows.push(row);
        }
        if a.fit {
            let (fit, error) = match decay_fit(&spec_rows) {
                Ok(f) => (Some(f), None),
                Err(e) => (None, Some(e.to_string())),
            };
            fits.push(SpecFit { spec: spec.to_string(), fit, error });
        }
        rows.extend(spec_rows);
    }
    let text = match a.format {
        Format::Csv => {
            let csv = rows_to_csv(&rows);
            let (tag, body) = csv.split_once('\n').expect("csv has a header");
            let mut s = format!("{tag}\n{}{body}", config_line(cmd, "#"));
            for f in &fits {
                match (&f.fit, &f.error) {
                    (Some(fit), _) => s.push_str(&format!(
                        "# fit {}: b={} c={} r2={} rows={}\n",
                        f.spec, fit.b, fit.c, fit.r_squared, fit.rows_used
                    )),
                    (None, Some(e)) => s.push_str(&format!("# fit {}: {e}\n", f.spec)),
                    _ => {}
                }
            }
            s
        }
        Format::Json => {
            #[derive(Serialize)]
            struct GenericReport<'a> {
                rows: &'a [EstimateRow],
                fits: &'a [SpecFit],
            }
            json(cmd, "generic", Some(a.seed), GenericReport { rows: &rows, fits: &fits })
        }
        f => return Err(unsupported(f, "generic")),
    };
    Ok(Output::done(text))
}

#[derive(Serialize)]
struct CountRow {
    n: usize,
    reduced: String,
    cyclically_reduced: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    with_fixed_core: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    enumerated_cyclically_reduced: Option<u64>,
}

fn enumerate(cmd: &Command, a: &EnumerateArgs) -> Result<Output> {
    crate::words::check_rank(a.rank)?;
    let mut rows = Vec::new();
    for n in 1..=a.n {
        let enumerated = if a.verify {
            Some(enumerate_reduced_words(a.rank, n, a.cap)?.filter(|w| w.is_cyclically_reduced()).count() as u64)
        } else {
            None
        };
        rows.push(CountRow {
            n,
            reduced: count_reduced(a.rank, n).to_string(),
            cyclically_reduced: count_cyclically_reduced(a.rank, n).to_string(),
            with_fixed_core: a.core_length.map(|k| count_with_cyclic_reduction(a.rank, n, k).to_string()),
            enumerated_cyclically_reduced: enumerated,
        });
    }
    if let Some(r) = rows
        .iter()
        .find(|r| r.enumerated_cyclically_reduced.is_some_and(|e| e.to_string() != r.cyclically_reduced))
    {
        return Err(Error::InvalidArgument(format!("enumeration disagrees with the closed form at n={}", r.n)));
    }
    let text = match a.format {
        Format::Json => json(cmd, "enumerate", None, &rows),
        Format::Text => {
            let mut s = config_line(cmd, "#");
            for r in &rows {
                s.push_str(&format!("n {} reduced {} cyclically_reduced {}", r.n, r.reduced, r.cyclically_reduced));
                if let Some(c) = &r.with_fixed_core {
                    s.push_str(&format!(" with_fixed_core {c}"));
                }
                if let Some(e) = r.enumerated_cyclically_reduced {
                    s.push_str(&format!(" enumerated {e}"));
                }
                s.push('\n');
            }
            s
        }
        f => return Err(unsupported(f, "enumerate")),
    };
    Ok(Output::done(text))
}

fn sample(cmd: &Command, a: &SampleArgs) -> Result<Output> {
    let model = match a.model {
        Model::Ball => LengthModel::Ball,
        Model::Sphere => LengthModel::Sphere,
    };
    let p = random_peripheral_structure(a.rank, a.n, a.count, a.seed, model)?;
    let text = match a.format {
        Format::Pattern => {
            let file = p.to_file_string();
            let (tag, body) = file.split_once('\n').expect("pattern file has a header");
            format!("{tag}\n{}# seed: {}\n{body}", config_line(cmd, "#"), a.seed)
        }
        Format::Json => {
            let words: Vec<String> = p.words().iter().map(|w| w.word.to_string()).collect();
            json(cmd, "sample", Some(a.seed), serde_json::json!({ "rank": p.rank(), "words": words }))
        }
        f => return Err(unsupported(f, "sample")),
    };
    Ok(Output::done(text))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("peripheral").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn grid_syntax() {
        assert_eq!(parse_grid("20:80:10").unwrap(), vec![20, 30, 40, 50, 60, 70, 80]);
        assert_eq!(parse_grid("3,5").unwrap(), vec![3, 5]);
        assert_eq!(parse_grid("4:6").unwrap(), vec![4, 5, 6]);
        assert!(parse_grid("5:1").is_err() && parse_grid("1:5:0").is_err() && parse_grid("x").is_err());
    }

    #[test]
    fn analyze_two_word_pattern() {
        let (code, out, _) = call(&["analyze", "--pattern", "ab,aaB"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["edge_count"], 5);
        assert_eq!(v["format"], "peripheral-analyze-json v1");
        assert_eq!(v["config"]["analyze"]["source"]["pattern"], "ab,aaB");
    }

    #[test]
    fn commutator_has_no_certificate() {
        let (code, out, _) = call(&["analyze", "--pattern", "abAB"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["certificate"]["min_multiplicity"], 0);
        assert!(v["result"]["certificate"]["certified_lower_bound"].is_null());
    }

    #[test]
    fn input_errors_exit_two() {
        assert_eq!(call(&["analyze", "--pattern", ""]).0, 2);
        assert_eq!(call(&["analyze", "--pattern", "# nothing"]).0, 2);
        assert_eq!(call(&["analyze", "--pattern", "ab?"]).0, 2);
        assert_eq!(call(&["analyze"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["generic", "--spec", "B1", "--n-grid", "5"]).0, 2);
        assert_eq!(call(&["generic", "--spec", "Z", "--n-grid", "5", "--seed", "1"]).0, 2);
        assert_eq!(call(&["analyze", "--pattern", "ab", "--format", "csv"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn caps_exit_three() {
        let (code, _, err) = call(&["enumerate", "--n", "30", "--verify", "--cap", "1000"]);
        assert_eq!(code, 3, "{err}");
        let (code, out, _) = call(&["cutsearch", "--pattern", "abAB", "--max-size", "3", "--radius", "1", "--budget", "5"]);
        assert_eq!(code, 3);
        assert!(out.contains("\"truncated\": true"));
    }

    #[test]
    fn generic_grid_row_count() {
        let (code, out, _) = call(&["generic", "--spec", "B1", "--n-grid", "20:80:10", "--samples", "200", "--seed", "1"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], crate::genericity::CSV_FORMAT_TAG);
        assert!(lines[1].starts_with("# config: ") && lines[1].contains("\"seed\":1"));
        assert_eq!(lines.iter().filter(|l| l.starts_with("B,1,2,")).count(), 7);
    }

    #[test]
    fn enumerate_verifies_closed_forms() {
        let (code, out, _) = call(&["enumerate", "--rank", "3", "--n", "4", "--verify", "--format", "text"]);
        assert_eq!(code, 0);
        assert!(out.contains("n 3 reduced 150 cyclically_reduced 126 enumerated 126"));
    }

    #[test]
    fn boundary_on_circle() {
        let (code, out, err) = call(&[
            "boundary", "--pattern", "abAB", "--point", "line:1:abAB", "--point", "line:1:ABab", "--format", "text",
        ]);
        assert_eq!(code, 0, "{err}");
        assert!(out.contains("stabilized true"), "{out}");
        assert_eq!(call(&["boundary", "--pattern", "abAB", "--point", "line:1:aa"]).0, 2);
    }

    #[test]
    fn sample_output_parses_back() {
        let (code, out, _) = call(&["sample", "--n", "40", "--count", "3", "--seed", "7"]);
        assert_eq!(code, 0);
        assert!(out.starts_with(crate::pattern::PATTERN_FORMAT_TAG));
        assert!(out.contains("# seed: 7"));
        let p = LinePattern::parse(&out, Some(2)).unwrap();
        assert!(!p.words().is_empty());
    }
}
