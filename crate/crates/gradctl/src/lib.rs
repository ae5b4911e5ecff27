//! Batch front end for `gradkit`: decomposition tables, verification suites,
//! eigenvalue bounds, matrix export and the representation cache.
//!
//! [`run`] parses an argument list and returns the exit code together with
//! everything the command printed, so the binary and the tests share one
//! code path.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gradkit::cliffkit::{
    assemble_projectors, default_q_max, pf_bilinear_check, pfaffian_report, specialization_suite, specializations_for,
    verify_equivariance, verify_moment_identities, verify_moments_and_projectors, verify_projectors, CliffordHomSet,
    DENSE_PROJECTOR_LIMIT,
};
use gradkit::curvkit::{bochner_report, curvature_suite, verify_symbols};
use gradkit::report::{canonical_json, Check, Report};
use gradkit::repforge::{write_bundle, DiskCache, RepBuilder, Representation};
use gradkit::weightcalc::{
    decompose, eigenvalue_bound, format_rational, parse_rational, vandermonde_coefficients, BoundReport, DominantWeight,
    HalfInt, Rational,
};
use gradkit::{cmat, Error};

/// Exit code of a run whose checks all pass.
pub const EXIT_OK: i32 = 0;
/// Some identity failed its tolerance.
pub const EXIT_FAILURE: i32 = 1;
/// Malformed or inapplicable input.
pub const EXIT_INPUT: i32 = 2;
/// A size guard refused the computation.
pub const EXIT_CAPACITY: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Samples per representation for the sampled verifiers.
pub const EQUIVARIANCE_SAMPLES: usize = 10;
pub const CURVATURE_SAMPLES: usize = 100;
pub const SYMBOL_SAMPLES: usize = 50;

#[derive(Debug, Parser)]
#[command(name = "gradctl", version, about = "Spin(n) representations, Clifford homomorphisms and Bochner identities")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Dimension of the underlying Euclidean space.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Highest weight as comma-separated "a" or "a/b" tokens, e.g. 1/2,1/2.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub weight: Option<String>,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Highest moment checked; defaults to 2N+2.
    #[arg(long = "q-max", global = true)]
    pub q_max: Option<usize>,
    /// Seed for the sampled verifiers.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cache root; defaults to $GRADKIT_CACHE_DIR, then ./.gradkit-cache.
    #[arg(long = "cache-dir", global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Print canonical JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decomposition of V_ρ ⊗ Rⁿ with conformal weights.
    Decompose,
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Exact eigenvalue lower bound for curvature bounded below by r.
    Bound {
        #[arg(long, allow_hyphen_values = true)]
        r: String,
    },
    /// Write matrices as CMAT1 files plus manifest.json.
    Export {
        #[arg(value_enum)]
        what: ExportKind,
        #[arg(long)]
        out: PathBuf,
    },
    /// Inspect or clear the representation cache.
    Cache {
        #[arg(value_enum)]
        action: CacheAction,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Moments,
    Equivariance,
    Projectors,
    Pfaffian,
    Specialization,
    Curvature,
    Symbols,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Moments => "moments",
            Suite::Equivariance => "equivariance",
            Suite::Projectors => "projectors",
            Suite::Pfaffian => "pfaffian",
            Suite::Specialization => "specialization",
            Suite::Curvature => "curvature",
            Suite::Symbols => "symbols",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportKind {
    Generators,
    Projectors,
    Clifford,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CacheAction {
    List,
    Clear,
    Path,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Json,
    Pretty,
}

/// Validated global options.
#[derive(Clone, Debug)]
pub struct CommandConfig {
    pub n: Option<usize>,
    pub weight: Option<DominantWeight>,
    pub tolerance: f64,
    pub q_max: Option<usize>,
    pub cache: DiskCache,
    pub output: Output,
    pub seed: u64,
}

impl CommandConfig {
    pub fn from_args(args: &GlobalArgs) -> Result<Self, Error> {
        if !(args.tolerance.is_finite() && args.tolerance > 0.0) {
            return Err(Error::Domain(format!("tolerance {} must be positive", args.tolerance)));
        }
        let weight = match (&args.weight, args.n) {
            (Some(w), Some(n)) => Some(DominantWeight::parse(n, w)?),
            (Some(_), None) => return Err(Error::Domain("--weight needs --n".into())),
            _ => None,
        };
        let cache = args.cache_dir.clone().map(DiskCache::new).unwrap_or_else(DiskCache::from_env);
        Ok(CommandConfig {
            n: args.n,
            weight,
            tolerance: args.tolerance,
            q_max: args.q_max,
            cache,
            output: if args.json { Output::Json } else { Output::Pretty },
            seed: args.seed,
        })
    }

    pub fn weight(&self) -> Result<&DominantWeight, Error> {
        self.weight.as_ref().ok_or_else(|| Error::Domain("this command needs --n and --weight".into()))
    }

    fn builder(&self) -> RepBuilder {
        RepBuilder::new().with_disk(self.cache.clone()).with_tolerance(self.tolerance)
    }
}

/// Exit code and captured streams of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Capacity(_) => EXIT_CAPACITY,
        Error::Io(_) => EXIT_IO,
        Error::Integrity(_) | Error::Validation(_) | Error::Numerical(_) => EXIT_FAILURE,
        Error::Domain(_)
        | Error::InvalidWeight(_)
        | Error::Singular(_)
        | Error::NoBound(_)
        | Error::Precondition(_)
        | Error::Format(_)
        | Error::Json(_) => EXIT_INPUT,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut out = Outcome::default();
    let result = CommandConfig::from_args(&cli.global).and_then(|cfg| dispatch(&cfg, &cli.command, &mut out));
    match result {
        Ok(code) => out.code = code,
        Err(e) => {
            out.code = exit_code(&e);
            out.stderr.push_str(&format!("error: {e}\n"));
        }
    }
    out
}

fn dispatch(cfg: &CommandConfig, command: &Command, out: &mut Outcome) -> Result<i32, Error> {
    match command {
        Command::Decompose => cmd_decompose(cfg, out),
        Command::Verify { suite } => {
            let start = Instant::now();
            let result = cmd_verify(cfg, *suite)?;
            out.stderr.push_str(&format!("wall time: {:.3}s\n", start.elapsed().as_secs_f64()));
            Ok(print_suite(cfg, &result, out))
        }
        Command::Bound { r } => cmd_bound(cfg, r, out),
        Command::Export { what, out: dir } => cmd_export(cfg, *what, dir, out),
        Command::Cache { action } => cmd_cache(cfg, *action, out),
    }
}

fn push_json(out: &mut Outcome, value: &impl Serialize) -> Result<(), Error> {
    out.stdout.push_str(&canonical_json(value)?);
    out.stdout.push('\n');
    Ok(())
}

pub fn cmd_decompose(cfg: &CommandConfig, out: &mut Outcome) -> Result<i32, Error> {
    let table = decompose(cfg.weight()?);
    match cfg.output {
        Output::Json => push_json(out, &table)?,
        Output::Pretty => {
            out.stdout.push_str(&format!("V_{} ⊗ R^{}\n", table.rho, table.rho.n()));
            for c in &table.components {
                out.stdout.push_str(&format!(
                    "  {:<24} m = {:<6} dim = {:<6} c = {}{}\n",
                    c.weight.to_string(),
                    format_rational(&c.conformal_weight),
                    c.dimension,
                    format_rational(&c.casimir),
                    if c.exceptional_partner.is_some() { "  (exceptional pair)" } else { "" }
                ));
            }
        }
    }
    Ok(EXIT_OK)
}

/// One case of a [`SuiteResult`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Case {
    pub suite: String,
    #[serde(flatten)]
    pub check: Check,
}

/// Outcome of `verify`. Wall time is printed on stderr only, so equal inputs
/// give byte-identical JSON.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub n: usize,
    pub weight: String,
    pub cases: Vec<Case>,
    pub pass: bool,
    pub skipped: Vec<String>,
    pub max_residual: f64,
}

impl SuiteResult {
    fn new(suite: Suite, weight: &DominantWeight, reports: Vec<Report>, skipped: Vec<String>) -> Self {
        let cases: Vec<Case> = reports
            .into_iter()
            .flat_map(|r| {
                let name = r.name.clone();
                r.checks.into_iter().map(move |check| Case { suite: name.clone(), check })
            })
            .collect();
        let max_residual =
            cases.iter().filter(|c| c.check.tolerance.is_finite()).map(|c| c.check.max_residual).fold(0.0, f64::max);
        SuiteResult {
            suite: suite.name().to_string(),
            n: weight.n(),
            weight: weight.to_string(),
            pass: cases.iter().all(|c| c.check.pass),
            cases,
            skipped,
            max_residual,
        }
    }

    /// Worst failing case by residual over tolerance.
    pub fn worst(&self) -> Option<&Case> {
        let ratio = |c: &Case| {
            let r = c.check.max_residual / c.check.tolerance;
            if r.is_nan() {
                f64::INFINITY
            } else {
                r
            }
        };
        self.cases.iter().filter(|c| !c.check.pass).max_by(|a, b| ratio(a).total_cmp(&ratio(b)))
    }
}

struct Prepared {
    rep: Arc<Representation>,
    set: Option<CliffordHomSet>,
}

fn prepare(cfg: &CommandConfig, weight: &DominantWeight, need_set: bool) -> Result<Prepared, Error> {
    let builder = cfg.builder();
    let rep = builder.build(weight)?;
    cfg.cache.store(&rep)?;
    let set = if need_set {
        Some(CliffordHomSet::from_rep(rep.clone(), builder.max_tensor_dim(), cfg.tolerance)?)
    } else {
        None
    };
    Ok(Prepared { rep, set })
}

fn projector_reports(set: &CliffordHomSet, swept: Report, tolerance: f64) -> Result<Vec<Report>, Error> {
    let mut reports = vec![swept];
    if set.tensor_dim() <= DENSE_PROJECTOR_LIMIT {
        let coeffs = vandermonde_coefficients(set.table())?;
        let dense = assemble_projectors(set, &coeffs)?;
        let ranks: Vec<u64> =
            dense.groups.iter().map(|g| g.iter().map(|&k| set.table().components[k].dimension).sum()).collect();
        let mut agreement = dense.agreement(tolerance);
        agreement.name = "projectors_dense".into();
        let mut algebra = dense.invariants(&ranks, tolerance);
        algebra.name = "projectors_dense".into();
        reports.push(agreement);
        reports.push(algebra);
    }
    Ok(reports)
}

fn pfaffian_reports(p: &Prepared, tolerance: f64) -> Result<Vec<Report>, Error> {
    let set = p.set.as_ref().expect("Pfaffian suite needs the homomorphisms");
    Ok(vec![pfaffian_report(&p.rep, tolerance)?, pf_bilinear_check(set, tolerance)?])
}

fn specialization_reports(weight: &DominantWeight, tolerance: f64) -> Result<Vec<Report>, Error> {
    specializations_for(weight).into_iter().map(|kind| specialization_suite(weight.n(), kind, tolerance)).collect()
}

fn curvature_reports(p: &Prepared, seed: u64, tolerance: f64) -> Result<Vec<Report>, Error> {
    let mut reports = vec![curvature_suite(&p.rep, CURVATURE_SAMPLES, seed, tolerance)?];
    if decompose(p.rep.weight()).distinct_weights().len() >= 2 {
        reports.push(bochner_report(p.rep.weight())?.checks());
    }
    Ok(reports)
}

fn has_bochner_partner(weight: &DominantWeight) -> bool {
    decompose(weight).distinct_weights().len() >= 2
}

/// Runs `suite` on the configured weight. An explicitly requested suite that
/// does not apply to the weight is an input error; `all` skips it.
pub fn cmd_verify(cfg: &CommandConfig, suite: Suite) -> Result<SuiteResult, Error> {
    let weight = cfg.weight()?.clone();
    let tol = cfg.tolerance;
    let seed = cfg.seed;
    let n = weight.n();
    let need_set = !matches!(suite, Suite::Specialization | Suite::Curvature);
    match suite {
        Suite::Pfaffian if n % 2 == 1 => {
            return Err(Error::Domain(format!("the Pfaffian suite needs even n, got {n}")));
        }
        Suite::Specialization if specializations_for(&weight).is_empty() => {
            return Err(Error::Domain(format!("no classical specialization has model V_{weight}")));
        }
        Suite::Symbols if !has_bochner_partner(&weight) => {
            return Err(Error::NoBound(format!("V_{weight} ⊗ R^{n} has a single component")));
        }
        _ => {}
    }
    let p = prepare(cfg, &weight, need_set)?;
    let q_max = |set: &CliffordHomSet| cfg.q_max.unwrap_or_else(|| default_q_max(set));
    let equivariance_tol = 10.0 * tol;
    let reports = match suite {
        Suite::Moments => {
            let set = p.set.as_ref().expect("set");
            vec![verify_moment_identities(set, q_max(set), tol)]
        }
        Suite::Projectors => {
            let set = p.set.as_ref().expect("set");
            let coeffs = vandermonde_coefficients(set.table())?;
            projector_reports(set, verify_projectors(set, &coeffs, tol)?, tol)?
        }
        Suite::Equivariance => {
            vec![verify_equivariance(p.set.as_ref().expect("set"), EQUIVARIANCE_SAMPLES, seed, equivariance_tol)?]
        }
        Suite::Pfaffian => pfaffian_reports(&p, tol)?,
        Suite::Specialization => specialization_reports(&weight, tol)?,
        Suite::Curvature => curvature_reports(&p, seed, tol)?,
        Suite::Symbols => vec![verify_symbols(p.set.as_ref().expect("set"), SYMBOL_SAMPLES, seed, tol)?],
        Suite::All => return verify_all(&weight, &p, q_max(p.set.as_ref().expect("set")), seed, tol),
    };
    Ok(SuiteResult::new(suite, &weight, reports, Vec::new()))
}

type Cell<'a> = Box<dyn FnOnce() -> Result<Vec<Report>, Error> + Send + 'a>;

fn verify_all(weight: &DominantWeight, p: &Prepared, q_max: usize, seed: u64, tol: f64) -> Result<SuiteResult, Error> {
    let set = p.set.as_ref().expect("set");
    let n = weight.n();
    let mut skipped = Vec::new();
    let mut cells: Vec<Cell<'_>> = vec![
        Box::new(move || {
            let coeffs = vandermonde_coefficients(set.table())?;
            let (moments, projectors) = verify_moments_and_projectors(set, q_max, &coeffs, tol)?;
            let mut reports = vec![moments];
            reports.extend(projector_reports(set, projectors, tol)?);
            Ok(reports)
        }),
        Box::new(move || Ok(vec![verify_equivariance(set, EQUIVARIANCE_SAMPLES, seed, 10.0 * tol)?])),
    ];
    if n % 2 == 0 {
        cells.push(Box::new(move || pfaffian_reports(p, tol)));
    } else {
        skipped.push("pfaffian".to_string());
    }
    if specializations_for(weight).is_empty() {
        skipped.push("specialization".to_string());
    } else {
        cells.push(Box::new(move || specialization_reports(weight, tol)));
    }
    cells.push(Box::new(move || curvature_reports(p, seed, tol)));
    if has_bochner_partner(weight) {
        cells.push(Box::new(move || Ok(vec![verify_symbols(set, SYMBOL_SAMPLES, seed, tol)?])));
    } else {
        skipped.push("symbols".to_string());
    }
    let results: Vec<Result<Vec<Report>, Error>> = std::thread::scope(|scope| {
        let handles: Vec<_> = cells.into_iter().map(|cell| scope.spawn(cell)).collect();
        handles.into_iter().map(|h| h.join().expect("suite cell panicked")).collect()
    });
    let mut reports = Vec::new();
    for r in results {
        reports.extend(r?);
    }
    Ok(SuiteResult::new(Suite::All, weight, reports, skipped))
}

fn print_suite(cfg: &CommandConfig, result: &SuiteResult, out: &mut Outcome) -> i32 {
    match cfg.output {
        Output::Json => {
            if let Err(e) = push_json(out, result) {
                out.stderr.push_str(&format!("error: {e}\n"));
                return exit_code(&e);
            }
        }
        Output::Pretty => {
            out.stdout.push_str(&format!("suite {} on V_{} (n = {})\n", result.suite, result.weight, result.n));
            for c in &result.cases {
                let params: Vec<String> = c.check.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                out.stdout.push_str(&format!(
                    "  {} {}/{} {:.3e} (tol {:.1e}) {}\n",
                    if c.check.pass { "PASS" } else { "FAIL" },
                    c.suite,
                    c.check.identity,
                    c.check.max_residual,
                    c.check.tolerance,
                    params.join(" ")
                ));
            }
            for s in &result.skipped {
                out.stdout.push_str(&format!("  SKIP {s}\n"));
            }
            out.stdout.push_str(&format!(
                "{} (max residual {:.3e})\n",
                if result.pass { "PASS" } else { "FAIL" },
                result.max_residual
            ));
        }
    }
    match result.worst() {
        None => EXIT_OK,
        Some(c) => {
            out.stderr.push_str(&format!(
                "worst case: {}/{} residual {:.3e} > tolerance {:.3e}\n",
                c.suite, c.check.identity, c.check.max_residual, c.check.tolerance
            ));
            EXIT_FAILURE
        }
    }
}

/// A known closed form the bound should reproduce.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classical {
    pub name: String,
    pub k: usize,
    #[serde(with = "gradkit::weightcalc::rational_str")]
    pub expected: Rational,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundOutput {
    #[serde(flatten)]
    pub report: BoundReport,
    pub classical: Option<Classical>,
}

/// For `Λ^k`, `1 ≤ k ≤ n/2`, the bound is `k(n−k+1)r`.
pub fn classical_bound(report: &BoundReport) -> Option<Classical> {
    let rho = &report.rho;
    let n = rho.n();
    let coords = rho.coords();
    let k = coords.iter().take_while(|c| **c == HalfInt::ONE).count();
    if k == 0 || coords[k..].iter().any(|c| *c != HalfInt::ZERO) {
        return None;
    }
    let expected = Rational::from_integer((k * (n - k + 1)) as i64) * report.r;
    Some(Classical { name: "forms".into(), k, expected, matches: expected == report.bound })
}

pub fn cmd_bound(cfg: &CommandConfig, r: &str, out: &mut Outcome) -> Result<i32, Error> {
    let r = parse_rational(r)?;
    let report = eigenvalue_bound(cfg.weight()?, r)?;
    let classical = classical_bound(&report);
    let ok = classical.as_ref().is_none_or(|c| c.matches);
    match cfg.output {
        Output::Json => push_json(out, &BoundOutput { report: report.clone(), classical: classical.clone() })?,
        Output::Pretty => out.stdout.push_str(&format!("{}\n", format_rational(&report.bound))),
    }
    if !ok {
        let c = classical.expect("mismatch implies a classical case");
        out.stderr.push_str(&format!(
            "bound {} differs from the {} value {}\n",
            format_rational(&report.bound),
            c.name,
            format_rational(&c.expected)
        ));
        return Ok(EXIT_FAILURE);
    }
    Ok(EXIT_OK)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
struct ExportFile {
    file: String,
    rows: usize,
    cols: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    component: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    group: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    members: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
struct ExportManifest {
    what: String,
    n: usize,
    weight: String,
    files: Vec<ExportFile>,
}

fn blank(file: String, m: &gradkit::ComplexMatrix) -> ExportFile {
    ExportFile {
        file,
        rows: m.rows(),
        cols: m.cols(),
        component: None,
        weight: None,
        index: None,
        group: None,
        m: None,
        members: None,
    }
}

/// Writes the requested matrices into `dir`. Rewriting gives identical bytes.
pub fn cmd_export(cfg: &CommandConfig, what: ExportKind, dir: &Path, out: &mut Outcome) -> Result<i32, Error> {
    let weight = cfg.weight()?.clone();
    let p = prepare(cfg, &weight, what != ExportKind::Generators)?;
    fs::create_dir_all(dir)?;
    let count = match what {
        ExportKind::Generators => write_bundle(dir, &p.rep)?.generators.len(),
        ExportKind::Clifford => {
            let set = p.set.as_ref().expect("set");
            let mut files = Vec::new();
            for (k, c) in set.components().iter().enumerate() {
                for (i, m) in c.matrices().iter().enumerate() {
                    let name = format!("p_{k}_{i}.cmat");
                    cmat::write(&dir.join(&name), m)?;
                    files.push(ExportFile {
                        component: Some(k),
                        weight: Some(c.descriptor.weight.to_string()),
                        index: Some(i),
                        ..blank(name, m)
                    });
                }
            }
            write_manifest(dir, "clifford", &weight, files)?
        }
        ExportKind::Projectors => {
            let set = p.set.as_ref().expect("set");
            let coeffs = vandermonde_coefficients(set.table())?;
            let dense = assemble_projectors(set, &coeffs)?;
            let mut files = Vec::new();
            for (g, m) in dense.projectors().iter().enumerate() {
                let name = format!("projector_{g}.cmat");
                cmat::write(&dir.join(&name), m)?;
                files.push(ExportFile {
                    group: Some(g),
                    m: Some(format_rational(&dense.weights[g])),
                    members: Some(dense.groups[g].clone()),
                    ..blank(name, m)
                });
            }
            write_manifest(dir, "projectors", &weight, files)?
        }
    };
    match cfg.output {
        Output::Json => push_json(out, &serde_json::json!({ "dir": dir.display().to_string(), "files": count }))?,
        Output::Pretty => out.stdout.push_str(&format!("wrote {count} matrices to {}\n", dir.display())),
    }
    Ok(EXIT_OK)
}

fn write_manifest(dir: &Path, what: &str, weight: &DominantWeight, files: Vec<ExportFile>) -> Result<usize, Error> {
    let count = files.len();
    let manifest = ExportManifest { what: what.into(), n: weight.n(), weight: weight.to_string(), files };
    fs::write(dir.join("manifest.json"), canonical_json(&manifest)? + "\n")?;
    Ok(count)
}

pub fn cmd_cache(cfg: &CommandConfig, action: CacheAction, out: &mut Outcome) -> Result<i32, Error> {
    let json = cfg.output == Output::Json;
    match action {
        CacheAction::List => {
            let keys = cfg.cache.list()?;
            if json {
                push_json(out, &keys)?;
            } else {
                keys.iter().for_each(|k| out.stdout.push_str(&format!("{k}\n")));
            }
        }
        CacheAction::Clear => {
            let removed = cfg.cache.clear()?;
            if json {
                push_json(out, &serde_json::json!({ "removed": removed }))?;
            } else {
                out.stdout.push_str(&format!("removed {removed} entries\n"));
            }
        }
        CacheAction::Path => {
            let root = cfg.cache.root().display().to_string();
            if json {
                push_json(out, &serde_json::json!({ "path": root }))?;
            } else {
                out.stdout.push_str(&format!("{root}\n"));
            }
        }
    }
    Ok(EXIT_OK)
}
