//! Command-line driver: fixture and space resolution, subcommand
//! execution, and deterministic report emission.
//!
//! Exit codes: `0` — the command ran (negative findings included), `1` — a
//! guaranteed verification failed (a catalog fixture breaking an axiom, or
//! a witness that should be injective failing to be), `2` — usage or
//! configuration errors.
//!
//! Reports carry `{schema_version, config, results, timing}`. The `timing`
//! field stays `null` unless `--timing` is passed, so that runs with equal
//! configuration and seeds are byte-identical.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::index::sample as index_sample;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::delta::{AxiomReport, CheckMode, Element, FiniteSet, InjectionWitness};
use crate::dilation::{
    convergence_table, ConvergenceRow, DilationSpace, EuclideanSpace, HeisenbergSpace, Point,
};
use crate::groups::{
    cyclic, dihedral, direct_product, group_delta, heisenberg_mod, symmetric, FiniteGroup,
};
use crate::metric::{
    estimate_threshold, metric_injection, sample_separated_set, separation, MetricError,
    ThresholdRow,
};
use crate::report::{fmt_f64, to_json_string, Csv, SCHEMA_VERSION};

#[derive(Debug, thiserror::Error)]
pub enum CmdError {
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

fn usage(message: impl Into<String>) -> CmdError {
    CmdError::Usage(message.into())
}

#[derive(Debug, Parser)]
#[command(
    name = "ruzsa",
    version,
    about = "Difference structures, Ruzsa injections, and metric spaces with dilations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Write the report to this path instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Record wall-clock timing in the JSON report (makes output
    /// non-reproducible byte-for-byte).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check axioms 1 and 2 of the induced difference structure of a group
    /// fixture.
    Axioms(AxiomsArgs),
    /// Evaluate the Ruzsa triangle inequality and its witness injection.
    Ruzsa(RuzsaArgs),
    /// Tabulate convergence of the approximate difference to its limit.
    Converge(ConvergeArgs),
    /// Build one metric injection and report injectivity.
    Inject(InjectArgs),
    /// Sweep an epsilon grid and estimate the injectivity threshold.
    Threshold(ThresholdArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    /// Exhaustive for carriers of at most 64 elements, sampled otherwise.
    Auto,
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AxiomsArgs {
    /// Fixture name: cyclic:N, dihedral:N, symmetric:N, heisenberg:P, or
    /// `product:<fixture>,<fixture>`.
    #[arg(long)]
    pub fixture: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,
    /// Draw count when sampling.
    #[arg(long, default_value_t = CheckMode::DEFAULT_SAMPLE_COUNT)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RuzsaArgs {
    #[arg(long)]
    pub fixture: String,
    /// Explicit set A as comma-separated element indices, e.g. 0,1.
    #[arg(long = "A")]
    pub a: Option<String>,
    /// Explicit set B.
    #[arg(long = "B")]
    pub b: Option<String>,
    /// Explicit set C.
    #[arg(long = "C")]
    pub c: Option<String>,
    /// File with one element index per line for set A.
    #[arg(long = "A-file")]
    pub a_file: Option<PathBuf>,
    #[arg(long = "B-file")]
    pub b_file: Option<PathBuf>,
    #[arg(long = "C-file")]
    pub c_file: Option<PathBuf>,
    /// Run this many random (A,B,C) trials instead of explicit sets.
    #[arg(long)]
    pub random_trials: Option<usize>,
    /// Largest subset size drawn per set in random trials.
    #[arg(long, default_value_t = 8)]
    pub subset_size: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ConvergeArgs {
    /// Space name: euclid:N or heis1.
    #[arg(long)]
    pub space: String,
    /// Base point e (comma-separated coordinates; defaults to the origin).
    #[arg(long, allow_hyphen_values = true)]
    pub e: Option<String>,
    /// Point a.
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    /// Point b.
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    /// Epsilon grid: explicit values 0.5,0.25,... or
    /// `geometric:<start>,<count>[,<ratio>]` (ratio defaults to 0.5).
    #[arg(long)]
    pub eps: String,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct InjectArgs {
    #[arg(long)]
    pub space: String,
    #[arg(long)]
    pub eps: f64,
    /// Separation parameter of the hypothesis.
    #[arg(long)]
    pub mu: f64,
    /// Point-identification tolerance; defaults to mu/4.
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Base point e (defaults to the origin).
    #[arg(long, allow_hyphen_values = true)]
    pub e: Option<String>,
    /// Explicit set A: points joined by ';', coordinates by ','.
    #[arg(long = "A", allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long = "B", allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long = "C", allow_hyphen_values = true)]
    pub c: Option<String>,
    /// File with one point literal per line for set A.
    #[arg(long = "A-file")]
    pub a_file: Option<PathBuf>,
    #[arg(long = "B-file")]
    pub b_file: Option<PathBuf>,
    #[arg(long = "C-file")]
    pub c_file: Option<PathBuf>,
    /// Sampler set sizes |A|,|B|,|C| (used when no explicit sets are given).
    #[arg(long)]
    pub sizes: Option<String>,
    /// Sampler ball radius around the base point.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ThresholdArgs {
    #[arg(long)]
    pub space: String,
    #[arg(long)]
    pub mu: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub e: Option<String>,
    /// Epsilon grid (same syntax as `converge --eps`).
    #[arg(long = "eps-grid")]
    pub eps_grid: String,
    #[arg(long = "A", allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long = "B", allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long = "C", allow_hyphen_values = true)]
    pub c: Option<String>,
    #[arg(long = "A-file")]
    pub a_file: Option<PathBuf>,
    #[arg(long = "B-file")]
    pub b_file: Option<PathBuf>,
    #[arg(long = "C-file")]
    pub c_file: Option<PathBuf>,
    #[arg(long)]
    pub sizes: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

// ---------------------------------------------------------------------------
// Parsing of fixture/space/set literals
// ---------------------------------------------------------------------------

fn parse_simple_fixture(name: &str) -> Result<FiniteGroup, CmdError> {
    let (family, param) = name
        .split_once(':')
        .ok_or_else(|| usage(format!("unknown fixture `{name}`; expected family:param")))?;
    let n: usize = param
        .parse()
        .map_err(|_| usage(format!("fixture parameter `{param}` is not a number")))?;
    let built = match family {
        "cyclic" => cyclic(n),
        "dihedral" => dihedral(n),
        "symmetric" => symmetric(n),
        "heisenberg" => heisenberg_mod(n),
        other => return Err(usage(format!("unknown fixture family `{other}`"))),
    };
    built.map_err(|e| usage(e.to_string()))
}

/// Resolves a fixture name such as `cyclic:6`, `symmetric:3`, or
/// `product:cyclic:2,cyclic:3`.
pub fn parse_fixture(name: &str) -> Result<FiniteGroup, CmdError> {
    if let Some(rest) = name.strip_prefix("product:") {
        let (left, right) = rest.split_once(',').ok_or_else(|| {
            usage("product fixtures take two comma-separated factors".to_string())
        })?;
        let g = parse_simple_fixture(left.trim())?;
        let h = parse_simple_fixture(right.trim())?;
        return direct_product(&g, &h).map_err(|e| usage(e.to_string()));
    }
    parse_simple_fixture(name)
}

/// Resolves a space name: `euclid:<dim>` or `heis1`.
pub fn parse_space(name: &str) -> Result<Arc<dyn DilationSpace>, CmdError> {
    if name == "heis1" {
        return Ok(Arc::new(HeisenbergSpace::new()));
    }
    if let Some(param) = name.strip_prefix("euclid:") {
        let dim: usize = param
            .parse()
            .map_err(|_| usage(format!("euclid dimension `{param}` is not a number")))?;
        return EuclideanSpace::new(dim)
            .map(|s| Arc::new(s) as Arc<dyn DilationSpace>)
            .map_err(|e| usage(e.to_string()));
    }
    Err(usage(format!(
        "unknown space `{name}`; expected euclid:<dim> or heis1"
    )))
}

fn parse_indices(role: &str, literal: &str) -> Result<FiniteSet, CmdError> {
    let mut elements = Vec::new();
    for part in literal.split(',') {
        let idx: u32 = part
            .trim()
            .parse()
            .map_err(|_| usage(format!("set {role}: `{part}` is not an element index")))?;
        elements.push(Element(idx));
    }
    if elements.is_empty() {
        return Err(usage(format!("set {role} must be non-empty")));
    }
    Ok(FiniteSet::new(elements))
}

fn read_indices_file(role: &str, path: &PathBuf) -> Result<FiniteSet, CmdError> {
    let text = fs::read_to_string(path)?;
    let mut elements = Vec::new();
    for line in text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
    {
        elements.extend(parse_indices(role, line)?.iter());
    }
    if elements.is_empty() {
        return Err(usage(format!("file for set {role} holds no elements")));
    }
    Ok(FiniteSet::new(elements))
}

fn resolve_index_set(
    role: &'static str,
    literal: &Option<String>,
    file: &Option<PathBuf>,
) -> Result<Option<FiniteSet>, CmdError> {
    match (literal, file) {
        (Some(_), Some(_)) => Err(usage(format!("set {role} was given both inline and as a file"))),
        (Some(lit), None) => parse_indices(role, lit).map(Some),
        (None, Some(path)) => read_indices_file(role, path).map(Some),
        (None, None) => Ok(None),
    }
}

fn parse_point(role: &str, literal: &str, dim: usize) -> Result<Point, CmdError> {
    let coords: Result<Vec<f64>, _> = literal.split(',').map(|c| c.trim().parse()).collect();
    let coords =
        coords.map_err(|_| usage(format!("{role}: `{literal}` is not a point literal")))?;
    if coords.len() != dim {
        return Err(usage(format!(
            "{role}: point `{literal}` has {} coordinates, the space expects {dim}",
            coords.len()
        )));
    }
    Point::new(coords).map_err(|e| usage(format!("{role}: {e}")))
}

fn parse_point_list(role: &str, literal: &str, dim: usize) -> Result<Vec<Point>, CmdError> {
    let points: Result<Vec<Point>, CmdError> = literal
        .split(';')
        .filter(|chunk| !chunk.trim().is_empty())
        .map(|chunk| parse_point(role, chunk, dim))
        .collect();
    let points = points?;
    if points.is_empty() {
        return Err(usage(format!("set {role} must be non-empty")));
    }
    Ok(points)
}

fn read_points_file(role: &str, path: &PathBuf, dim: usize) -> Result<Vec<Point>, CmdError> {
    let text = fs::read_to_string(path)?;
    let points: Result<Vec<Point>, CmdError> = text
        .lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with('#'))
        .map(|line| parse_point(role, line, dim))
        .collect();
    let points = points?;
    if points.is_empty() {
        return Err(usage(format!("file for set {role} holds no points")));
    }
    Ok(points)
}

/// Parses an epsilon grid literal: explicit descending values or
/// `geometric:<start>,<count>[,<ratio>]`.
pub fn parse_eps_grid(literal: &str) -> Result<Vec<f64>, CmdError> {
    if let Some(rest) = literal.strip_prefix("geometric:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() < 2 || parts.len() > 3 {
            return Err(usage(
                "geometric grid takes start,count and an optional ratio".to_string(),
            ));
        }
        let start: f64 = parts[0]
            .trim()
            .parse()
            .map_err(|_| usage("geometric grid start is not a number".to_string()))?;
        let count: usize = parts[1]
            .trim()
            .parse()
            .map_err(|_| usage("geometric grid count is not a number".to_string()))?;
        let ratio: f64 = match parts.get(2) {
            Some(r) => r
                .trim()
                .parse()
                .map_err(|_| usage("geometric grid ratio is not a number".to_string()))?,
            None => 0.5,
        };
        if !(ratio > 0.0 && ratio < 1.0) || count == 0 {
            return Err(usage("geometric grid needs 0 < ratio < 1 and count >= 1".to_string()));
        }
        let grid: Vec<f64> = (0..count).map(|k| start * ratio.powi(k as i32)).collect();
        crate::dilation::validate_eps_grid(&grid).map_err(|e| usage(e.to_string()))?;
        return Ok(grid);
    }
    let grid: Result<Vec<f64>, _> = literal.split(',').map(|v| v.trim().parse()).collect();
    let grid = grid.map_err(|_| usage(format!("epsilon grid `{literal}` is not numeric")))?;
    crate::dilation::validate_eps_grid(&grid).map_err(|e| usage(e.to_string()))?;
    Ok(grid)
}

struct PointSetSpec<'s> {
    literal: &'s Option<String>,
    file: &'s Option<PathBuf>,
}

#[derive(Debug)]
struct ResolvedSets {
    a: Vec<Point>,
    b: Vec<Point>,
    c: Vec<Point>,
    source: &'static str,
}

#[allow(clippy::too_many_arguments)]
fn resolve_point_sets(
    space: &Arc<dyn DilationSpace>,
    a: PointSetSpec<'_>,
    b: PointSetSpec<'_>,
    c: PointSetSpec<'_>,
    sizes: &Option<String>,
    mu: f64,
    radius: f64,
    seed: u64,
) -> Result<ResolvedSets, CmdError> {
    let dim = space.dim();
    let explicit = |role: &'static str, spec: &PointSetSpec<'_>| -> Result<Option<Vec<Point>>, CmdError> {
        match (spec.literal, spec.file) {
            (Some(_), Some(_)) => Err(usage(format!(
                "set {role} was given both inline and as a file"
            ))),
            (Some(lit), None) => parse_point_list(role, lit, dim).map(Some),
            (None, Some(path)) => read_points_file(role, path, dim).map(Some),
            (None, None) => Ok(None),
        }
    };
    let (ea, eb, ec) = (explicit("A", &a)?, explicit("B", &b)?, explicit("C", &c)?);
    let any_explicit = ea.is_some() || eb.is_some() || ec.is_some();
    if any_explicit {
        if sizes.is_some() {
            return Err(usage(
                "give either explicit point sets or --sizes, not both".to_string(),
            ));
        }
        match (ea, eb, ec) {
            (Some(a), Some(b), Some(c)) => Ok(ResolvedSets {
                a,
                b,
                c,
                source: "explicit",
            }),
            _ => Err(usage(
                "explicit point sets require all three of A, B, C".to_string(),
            )),
        }
    } else {
        let sizes_literal = sizes
            .as_ref()
            .ok_or_else(|| usage("provide --sizes or explicit point sets".to_string()))?;
        let parsed: Result<Vec<usize>, _> =
            sizes_literal.split(',').map(|v| v.trim().parse()).collect();
        let parsed =
            parsed.map_err(|_| usage(format!("--sizes `{sizes_literal}` is not numeric")))?;
        let [na, nb, nc] = parsed.as_slice() else {
            return Err(usage("--sizes takes exactly three counts".to_string()));
        };
        let draw = |count: usize, offset: u64| {
            sample_separated_set(Arc::clone(space), radius, mu, count, seed.wrapping_add(offset))
                .map(|set| set.points().to_vec())
                .map_err(|e| usage(format!("sampling failed: {e}")))
        };
        Ok(ResolvedSets {
            a: draw(*na, 0)?,
            b: draw(*nb, 1)?,
            c: draw(*nc, 2)?,
            source: "sampled",
        })
    }
}

// ---------------------------------------------------------------------------
// Typed results
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModeEcho {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

impl From<CheckMode> for ModeEcho {
    fn from(mode: CheckMode) -> Self {
        match mode {
            CheckMode::Exhaustive => ModeEcho::Exhaustive,
            CheckMode::Sampled { count, seed } => ModeEcho::Sampled { count, seed },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomsResult {
    pub fixture: String,
    pub order: usize,
    pub mode: ModeEcho,
    pub axiom1: AxiomReport,
    pub axiom2: AxiomReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct RuzsaTrial {
    pub trial: usize,
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub c: Vec<u32>,
    pub lhs: usize,
    pub rhs: usize,
    pub holds: bool,
    pub injective: bool,
    pub source_size: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessEcho {
    pub source_size: usize,
    pub is_injective: bool,
    /// Entries as `[x, b, c, d]` index quadruples.
    pub entries: Vec<[u32; 4]>,
    pub collision: Option<[u32; 4]>,
}

impl From<&InjectionWitness> for WitnessEcho {
    fn from(w: &InjectionWitness) -> Self {
        WitnessEcho {
            source_size: w.source_size,
            is_injective: w.is_injective,
            entries: w
                .entries
                .iter()
                .map(|e| [e.x.0, e.b.0, e.c.0, e.d.0])
                .collect(),
            collision: w
                .collision
                .map(|c| [c.first.0 .0, c.first.1 .0, c.second.0 .0, c.second.1 .0]),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RuzsaResult {
    pub fixture: String,
    pub order: usize,
    pub trials: Vec<RuzsaTrial>,
    pub all_hold: bool,
    pub all_injective: bool,
    /// Full witness map, echoed only for explicit single-triple runs.
    pub witness: Option<WitnessEcho>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergeResult {
    pub space: String,
    pub e: Point,
    pub a: Point,
    pub b: Point,
    pub rows: Vec<ConvergenceRow>,
    pub slope: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MetricWitnessSummary {
    pub source_size: usize,
    pub domain_size: usize,
    pub is_injective: bool,
    pub collision: Option<(usize, usize)>,
    /// Componentwise residual of rebuilding each x from its image pair at
    /// the dilated base.
    pub reconstruction_residual: f64,
    /// Componentwise gap between each x and the exact limit reconstruction.
    pub limit_reconstruction_gap: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct InjectResult {
    pub space: String,
    pub eps: f64,
    pub mu: f64,
    pub tolerance: f64,
    pub source: &'static str,
    pub a_points: Vec<Point>,
    pub b_points: Vec<Point>,
    pub c_points: Vec<Point>,
    pub hypothesis_ok: bool,
    pub hypothesis_detail: Option<String>,
    pub separation_b: f64,
    pub witness: Option<MetricWitnessSummary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ThresholdResult {
    pub space: String,
    pub mu: f64,
    pub tolerance: f64,
    pub source: &'static str,
    pub a_points: Vec<Point>,
    pub b_points: Vec<Point>,
    pub c_points: Vec<Point>,
    pub rows: Vec<ThresholdRow>,
    pub empirical_threshold: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub wall_ms: f64,
}

/// The uniform report envelope.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub config: serde_json::Value,
    pub results: serde_json::Value,
    pub timing: Option<Timing>,
}

/// A finished command: the report plus how to exit.
pub struct CommandOutcome {
    pub report: Report,
    pub csv: String,
    /// True when a verification that is guaranteed to succeed failed,
    /// signalling an implementation bug (exit code 1).
    pub guarantee_failed: bool,
}

// ---------------------------------------------------------------------------
// Subcommand execution
// ---------------------------------------------------------------------------

fn csv_counterexample(report: &AxiomReport) -> String {
    report
        .counterexample
        .map(|[a, b, c]| format!("{a};{b};{c}"))
        .unwrap_or_default()
}

fn cmd_axioms(args: &AxiomsArgs) -> Result<(AxiomsResult, String, bool), CmdError> {
    let group = parse_fixture(&args.fixture)?;
    let structure = group_delta(&group);
    let mode = match args.mode {
        ModeArg::Auto => structure.default_mode(args.seed),
        ModeArg::Exhaustive => CheckMode::Exhaustive,
        ModeArg::Sampled => CheckMode::Sampled {
            count: args.samples,
            seed: args.seed,
        },
    };
    let run = |r: Result<AxiomReport, crate::delta::DeltaError>| {
        r.map_err(|e| usage(e.to_string()))
    };
    let axiom1 = run(structure.check_axiom1(mode))?;
    let axiom2 = run(structure.check_axiom2(mode))?;
    let failed = !(axiom1.ok && axiom2.ok);

    let mut csv = Csv::new();
    csv.header(&["check", "ok", "checked", "counterexample"]);
    for (name, report) in [("axiom1", &axiom1), ("axiom2", &axiom2)] {
        csv.row([
            name.to_string(),
            report.ok.to_string(),
            report.checked.to_string(),
            csv_counterexample(report),
        ]);
    }
    let result = AxiomsResult {
        fixture: group.name().to_string(),
        order: group.order(),
        mode: mode.into(),
        axiom1,
        axiom2,
    };
    Ok((result, csv.finish(), failed))
}

fn random_subset(rng: &mut ChaCha8Rng, order: usize, max_size: usize) -> FiniteSet {
    let cap = max_size.clamp(1, order);
    let k = rng.random_range(1..=cap);
    FiniteSet::new(
        index_sample(rng, order, k)
            .into_iter()
            .map(|i| Element(i as u32)),
    )
}

fn cmd_ruzsa(args: &RuzsaArgs) -> Result<(RuzsaResult, String, bool), CmdError> {
    let group = parse_fixture(&args.fixture)?;
    let structure = group_delta(&group);
    let ea = resolve_index_set("A", &args.a, &args.a_file)?;
    let eb = resolve_index_set("B", &args.b, &args.b_file)?;
    let ec = resolve_index_set("C", &args.c, &args.c_file)?;
    let mut trials = Vec::new();
    let mut witness_echo = None;

    if ea.is_some() || eb.is_some() || ec.is_some() {
        let (Some(a), Some(b), Some(c)) = (ea, eb, ec) else {
            return Err(usage("explicit mode requires all of A, B, C".to_string()));
        };
        let check = structure
            .ruzsa_inequality(&a, &b, &c)
            .map_err(|e| usage(e.to_string()))?;
        witness_echo = Some(WitnessEcho::from(&check.witness));
        trials.push(RuzsaTrial {
            trial: 0,
            a: a.iter().map(|e| e.0).collect(),
            b: b.iter().map(|e| e.0).collect(),
            c: c.iter().map(|e| e.0).collect(),
            lhs: check.lhs,
            rhs: check.rhs,
            holds: check.holds,
            injective: check.witness.is_injective,
            source_size: check.witness.source_size,
        });
    } else {
        let count = args.random_trials.ok_or_else(|| {
            usage("provide explicit sets (--A --B --C) or --random-trials".to_string())
        })?;
        if count == 0 {
            return Err(usage("--random-trials must be at least 1".to_string()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        for trial in 0..count {
            let a = random_subset(&mut rng, group.order(), args.subset_size);
            let b = random_subset(&mut rng, group.order(), args.subset_size);
            let c = random_subset(&mut rng, group.order(), args.subset_size);
            let check = structure
                .ruzsa_inequality(&a, &b, &c)
                .map_err(|e| usage(e.to_string()))?;
            trials.push(RuzsaTrial {
                trial,
                a: a.iter().map(|e| e.0).collect(),
                b: b.iter().map(|e| e.0).collect(),
                c: c.iter().map(|e| e.0).collect(),
                lhs: check.lhs,
                rhs: check.rhs,
                holds: check.holds,
                injective: check.witness.is_injective,
                source_size: check.witness.source_size,
            });
        }
    }

    let all_hold = trials.iter().all(|t| t.holds);
    let all_injective = trials.iter().all(|t| t.injective);
    let mut csv = Csv::new();
    csv.header(&["trial", "lhs", "rhs", "holds", "injective"]);
    for t in &trials {
        csv.row([
            t.trial.to_string(),
            t.lhs.to_string(),
            t.rhs.to_string(),
            t.holds.to_string(),
            t.injective.to_string(),
        ]);
    }
    let result = RuzsaResult {
        fixture: group.name().to_string(),
        order: group.order(),
        trials,
        all_hold,
        all_injective,
        witness: witness_echo,
    };
    // Group fixtures satisfy both axioms, so the witness is guaranteed
    // injective and the inequality must hold; anything else is a bug.
    let failed = !(all_hold && all_injective);
    Ok((result, csv.finish(), failed))
}

fn cmd_converge(args: &ConvergeArgs) -> Result<(ConvergeResult, String), CmdError> {
    let space = parse_space(&args.space)?;
    let dim = space.dim();
    let e = match &args.e {
        Some(literal) => parse_point("e", literal, dim)?,
        None => space.base_point(),
    };
    let a = parse_point("a", &args.a, dim)?;
    let b = parse_point("b", &args.b, dim)?;
    let grid = parse_eps_grid(&args.eps)?;
    let table = convergence_table(space.as_ref(), &e, &a, &b, &grid)
        .map_err(|err| usage(err.to_string()))?;

    let mut csv = Csv::new();
    csv.header(&["eps", "gap"]);
    for row in &table.rows {
        csv.row([fmt_f64(row.eps), fmt_f64(row.gap)]);
    }
    csv.comment(&format!("slope = {}", fmt_f64(table.slope)));
    let result = ConvergeResult {
        space: space.name().to_string(),
        e,
        a,
        b,
        rows: table.rows,
        slope: table.slope,
    };
    Ok((result, csv.finish()))
}

fn cmd_inject(args: &InjectArgs) -> Result<(InjectResult, String), CmdError> {
    let space = parse_space(&args.space)?;
    if !args.mu.is_finite() || args.mu <= 0.0 {
        return Err(usage("--mu must be positive".to_string()));
    }
    let sets = resolve_point_sets(
        &space,
        PointSetSpec { literal: &args.a, file: &args.a_file },
        PointSetSpec { literal: &args.b, file: &args.b_file },
        PointSetSpec { literal: &args.c, file: &args.c_file },
        &args.sizes,
        args.mu,
        args.radius,
        args.seed,
    )?;
    let e = match &args.e {
        Some(literal) => parse_point("e", literal, space.dim())?,
        None => space.base_point(),
    };
    let tolerance = args.tolerance.unwrap_or(args.mu / 4.0);

    let outcome = metric_injection(
        space.as_ref(),
        &e,
        args.eps,
        &sets.a,
        &sets.b,
        &sets.c,
        args.mu,
        tolerance,
    );
    let (hypothesis_ok, hypothesis_detail, witness) = match outcome {
        Ok(w) => {
            let reconstruction = w
                .max_reconstruction_residual(space.as_ref(), &e)
                .map_err(|err| usage(err.to_string()))?;
            let summary = MetricWitnessSummary {
                source_size: w.source_size,
                domain_size: w.domain.len(),
                is_injective: w.is_injective,
                collision: w.collision.as_ref().map(|c| (c.first, c.second)),
                reconstruction_residual: reconstruction,
                limit_reconstruction_gap: w.max_limit_reconstruction_gap(space.as_ref(), &e),
            };
            (true, None, Some(summary))
        }
        // A failed hypothesis is a finding, not a fault.
        Err(err @ (MetricError::SeparationHypothesis { .. }
        | MetricError::AmbiguousClustering { .. })) => (false, Some(err.to_string()), None),
        Err(other) => return Err(usage(other.to_string())),
    };

    let mut csv = Csv::new();
    csv.header(&["eps", "hypothesis_ok", "source_size", "injective"]);
    csv.row([
        fmt_f64(args.eps),
        hypothesis_ok.to_string(),
        witness.as_ref().map_or(0, |w| w.source_size).to_string(),
        witness.as_ref().is_some_and(|w| w.is_injective).to_string(),
    ]);
    if let Some(collision) = witness.as_ref().and_then(|w| w.collision) {
        csv.comment(&format!("collision = {},{}", collision.0, collision.1));
    }
    let result = InjectResult {
        space: space.name().to_string(),
        eps: args.eps,
        mu: args.mu,
        tolerance,
        source: sets.source,
        separation_b: separation(space.as_ref(), &sets.b),
        a_points: sets.a,
        b_points: sets.b,
        c_points: sets.c,
        hypothesis_ok,
        hypothesis_detail,
        witness,
    };
    Ok((result, csv.finish()))
}

fn cmd_threshold(args: &ThresholdArgs) -> Result<(ThresholdResult, String), CmdError> {
    let space = parse_space(&args.space)?;
    if !args.mu.is_finite() || args.mu <= 0.0 {
        return Err(usage("--mu must be positive".to_string()));
    }
    let sets = resolve_point_sets(
        &space,
        PointSetSpec { literal: &args.a, file: &args.a_file },
        PointSetSpec { literal: &args.b, file: &args.b_file },
        PointSetSpec { literal: &args.c, file: &args.c_file },
        &args.sizes,
        args.mu,
        args.radius,
        args.seed,
    )?;
    let e = match &args.e {
        Some(literal) => parse_point("e", literal, space.dim())?,
        None => space.base_point(),
    };
    let grid = parse_eps_grid(&args.eps_grid)?;
    let report = estimate_threshold(
        space.as_ref(),
        &e,
        &sets.a,
        &sets.b,
        &sets.c,
        args.mu,
        &grid,
    )
    .map_err(|err| usage(err.to_string()))?;

    let mut csv = Csv::new();
    csv.header(&["eps", "hypothesis_ok", "injective"]);
    for row in &report.rows {
        csv.row([
            fmt_f64(row.eps),
            row.hypothesis_ok.to_string(),
            row.injective.to_string(),
        ]);
    }
    csv.comment(&format!(
        "empirical_threshold = {}",
        fmt_f64(report.empirical_threshold)
    ));
    let result = ThresholdResult {
        space: space.name().to_string(),
        mu: report.mu,
        tolerance: report.tolerance,
        source: sets.source,
        a_points: sets.a,
        b_points: sets.b,
        c_points: sets.c,
        rows: report.rows,
        empirical_threshold: report.empirical_threshold,
    };
    Ok((result, csv.finish()))
}

// ---------------------------------------------------------------------------
// Dispatch, report assembly, output
// ---------------------------------------------------------------------------

fn config_value(cli: &Cli, subcommand: &str, args: &impl Serialize) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    map.insert("subcommand".to_string(), subcommand.into());
    map.insert(
        "format".to_string(),
        serde_json::to_value(cli.format).expect("format serializes"),
    );
    map.insert(
        "output".to_string(),
        cli.output
            .as_ref()
            .map(|p| p.display().to_string())
            .into(),
    );
    if let serde_json::Value::Object(fields) =
        serde_json::to_value(args).expect("argument structs serialize")
    {
        for (k, v) in fields {
            map.insert(k, v);
        }
    }
    serde_json::Value::Object(map)
}

/// Runs a parsed invocation and assembles the report.
pub fn execute(cli: &Cli) -> Result<CommandOutcome, CmdError> {
    let (config, results, csv, guarantee_failed) = match &cli.command {
        Command::Axioms(args) => {
            let (result, csv, failed) = cmd_axioms(args)?;
            (
                config_value(cli, "axioms", args),
                serde_json::to_value(&result).expect("results serialize"),
                csv,
                failed,
            )
        }
        Command::Ruzsa(args) => {
            let (result, csv, failed) = cmd_ruzsa(args)?;
            (
                config_value(cli, "ruzsa", args),
                serde_json::to_value(&result).expect("results serialize"),
                csv,
                failed,
            )
        }
        Command::Converge(args) => {
            let (result, csv) = cmd_converge(args)?;
            (
                config_value(cli, "converge", args),
                serde_json::to_value(&result).expect("results serialize"),
                csv,
                false,
            )
        }
        Command::Inject(args) => {
            let (result, csv) = cmd_inject(args)?;
            (
                config_value(cli, "inject", args),
                serde_json::to_value(&result).expect("results serialize"),
                csv,
                false,
            )
        }
        Command::Threshold(args) => {
            let (result, csv) = cmd_threshold(args)?;
            (
                config_value(cli, "threshold", args),
                serde_json::to_value(&result).expect("results serialize"),
                csv,
                false,
            )
        }
    };
    Ok(CommandOutcome {
        report: Report {
            schema_version: SCHEMA_VERSION,
            config,
            results,
            timing: None,
        },
        csv,
        guarantee_failed,
    })
}

fn write_output(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.output {
        Some(path) => fs::write(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())
        }
    }
}

/// Executes, writes the report, and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let started = Instant::now();
    match execute(cli) {
        Ok(mut outcome) => {
            if cli.timing {
                outcome.report.timing = Some(Timing {
                    wall_ms: started.elapsed().as_secs_f64() * 1e3,
                });
            }
            let text = match cli.format {
                OutputFormat::Json => match to_json_string(&outcome.report) {
                    Ok(s) => s,
                    Err(err) => {
                        eprintln!("error: report serialization failed: {err}");
                        return 2;
                    }
                },
                OutputFormat::Csv => outcome.csv,
            };
            if let Err(err) = write_output(cli, &text) {
                eprintln!("error: could not write report: {err}");
                return 2;
            }
            if outcome.guarantee_failed {
                1
            } else {
                0
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}
