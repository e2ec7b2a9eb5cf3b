//! Reproducible verification runs behind the `tmx` binary.
//!
//! Each `cmd_*` function takes typed options, writes its report files, prints
//! a human summary to `out`, and returns the process exit code:
//! `0` success, `1` invalid input or I/O failure, `2` a failed check or a
//! counterexample. Every output file is accompanied by a [`RunManifest`],
//! embedded in JSON reports and written as a `.manifest.json` sidecar next to
//! CSV tables. Identical options produce byte-identical files.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::checks::{reduction_chain, CheckReport, InputDigest, LemmaId};
use crate::ensemble::{sample_constrained_ensemble, EnsembleFamily};
use crate::error::{Error, Result};
use crate::extremal::{
    bernoulli_sum_moment, corollary_growth, enumerate_bernoulli_moment, theorem_max_value,
    BernoulliParams, CorollaryTable, MAX_MOMENT_ORDER,
};
use crate::rng;
use crate::search::{gap_sweep, CellSummary, SearchConfig, SweepGrid};
use crate::trials::{run_trial, TrialShape};

/// Environment variable capping worker threads.
pub const THREADS_ENV: &str = "TMX_THREADS";

pub const SEARCH_CSV_SCHEMA: &str = "tmx-search/v1";
pub const COROLLARY_CSV_SCHEMA: &str = "tmx-corollary/v1";

pub const SEARCH_CSV_HEADER: [&str; 10] = [
    "n",
    "N",
    "p",
    "alphas",
    "Ls",
    "best_value",
    "theorem_value",
    "gap",
    "seed",
    "status",
];

pub const COROLLARY_CSV_HEADER: [&str; 4] = ["n", "p", "value", "ratio"];

/// Provenance attached to every output.
///
/// `timestamp` is taken from `SOURCE_DATE_EPOCH` when set and is otherwise
/// left empty, so reruns stay byte-identical.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: serde_json::Value,
    pub seed: Option<u64>,
    pub version: String,
    pub timestamp: Option<String>,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new<P: Serialize>(
        command: &str,
        parameters: &P,
        seed: Option<u64>,
        outputs: Vec<String>,
    ) -> Self {
        RunManifest {
            command: command.to_string(),
            parameters: serde_json::to_value(parameters).unwrap_or(serde_json::Value::Null),
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: std::env::var("SOURCE_DATE_EPOCH").ok(),
            outputs,
        }
    }
}

/// Runs `f` on a pool capped by `TMX_THREADS`, or on the global pool when unset.
pub fn with_thread_cap<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T> {
    match std::env::var(THREADS_ENV)
        .ok()
        .map(|v| v.trim().parse::<usize>())
    {
        None => Ok(f()),
        Some(Ok(threads)) if threads > 0 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
        Some(_) => Err(Error::InvalidParameter(format!(
            "{THREADS_ENV} must be a positive integer"
        ))),
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    write_file(path, &bytes)
}

/// Sidecar path `<out>.manifest.json`.
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Fails early if `path` cannot be created.
fn probe_writable(path: &Path) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map(|_| ())
        .map_err(|e| Error::io(path, e))
}

fn report_error(_out: &mut dyn Write, err: &Error) -> i32 {
    eprintln!("error: {err}");
    1
}

fn join_floats(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

// ---------------------------------------------------------------------------
// verify-lemmas
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub trials: usize,
    pub dim_max: usize,
    pub p_max: usize,
    pub seed: u64,
    pub out: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaSummary {
    pub lemma: LemmaId,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    /// Smallest `rhs − lhs` seen.
    pub min_slack: f64,
    /// Smallest `(rhs − lhs) / (1 + |rhs|)` seen; the pass threshold is `-1e-9`.
    pub min_margin: f64,
    /// The input that produced `min_margin`.
    pub worst_case: Option<WorstCase>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorstCase {
    pub lhs: f64,
    pub rhs: f64,
    pub input_digest: InputDigest,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialError {
    pub lemma: LemmaId,
    pub trial: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub manifest: RunManifest,
    pub all_passed: bool,
    pub lemmas: Vec<LemmaSummary>,
    /// Failing reports, at most 20 per lemma.
    pub failures: Vec<CheckReport>,
    pub errors: Vec<TrialError>,
}

const MAX_LISTED_FAILURES: usize = 20;

/// Runs every checker on `trials` randomized inputs each.
pub fn run_verify_lemmas(opts: &VerifyOptions) -> Result<VerifyReport> {
    if opts.trials == 0 {
        return Err(Error::InvalidParameter("trials must be positive".into()));
    }
    let shape = TrialShape::new(opts.dim_max, opts.p_max)?;
    let mut lemmas = Vec::new();
    let mut failures = Vec::new();
    let mut errors = Vec::new();
    for lemma in LemmaId::ALL {
        let outcomes: Vec<Result<CheckReport>> = (0..opts.trials)
            .into_par_iter()
            .map(|t| run_trial(lemma, opts.seed, t as u64, shape))
            .collect();
        let mut summary = LemmaSummary {
            lemma,
            trials: opts.trials,
            passed: 0,
            failed: 0,
            errors: 0,
            min_slack: f64::INFINITY,
            min_margin: f64::INFINITY,
            worst_case: None,
        };
        let mut listed = 0;
        for (trial, outcome) in outcomes.into_iter().enumerate() {
            match outcome {
                Ok(report) => {
                    summary.min_slack = summary.min_slack.min(report.slack);
                    if report.margin() < summary.min_margin {
                        summary.min_margin = report.margin();
                        summary.worst_case = Some(WorstCase {
                            lhs: report.lhs,
                            rhs: report.rhs,
                            input_digest: report.input_digest.clone(),
                        });
                    }
                    if report.passed {
                        summary.passed += 1;
                    } else {
                        summary.failed += 1;
                        if listed < MAX_LISTED_FAILURES {
                            failures.push(report);
                            listed += 1;
                        }
                    }
                }
                Err(e) => {
                    summary.errors += 1;
                    errors.push(TrialError {
                        lemma,
                        trial,
                        message: e.to_string(),
                    });
                }
            }
        }
        lemmas.push(summary);
    }
    let all_passed = lemmas.iter().all(|l| l.failed == 0 && l.errors == 0);
    Ok(VerifyReport {
        manifest: RunManifest::new(
            "verify-lemmas",
            opts,
            Some(opts.seed),
            vec![opts.out.display().to_string()],
        ),
        all_passed,
        lemmas,
        failures,
        errors,
    })
}

pub fn cmd_verify_lemmas(opts: &VerifyOptions, out: &mut dyn Write) -> i32 {
    if let Err(e) = probe_writable(&opts.out) {
        return report_error(out, &e);
    }
    let report = match with_thread_cap(|| run_verify_lemmas(opts)).and_then(|r| r) {
        Ok(r) => r,
        Err(e) => return report_error(out, &e),
    };
    if let Err(e) = write_json(&opts.out, &report) {
        return report_error(out, &e);
    }
    for l in &report.lemmas {
        let _ = writeln!(
            out,
            "{:<22} {:>7}/{:<7} passed  failed={} errors={} min_slack={:e} min_margin={:e}",
            l.lemma.name(),
            l.passed,
            l.trials,
            l.failed,
            l.errors,
            l.min_slack,
            l.min_margin
        );
    }
    let _ = writeln!(out, "report: {}", opts.out.display());
    if report.all_passed {
        0
    } else {
        let _ = writeln!(out, "FAILED: at least one check did not pass");
        2
    }
}

// ---------------------------------------------------------------------------
// extremal
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalOptions {
    pub n: usize,
    pub caps: Vec<f64>,
    pub alphas: Vec<f64>,
    pub p: usize,
    /// Also print the `2^N` enumeration.
    pub oracle: bool,
    /// When set, trace the reduction for a sampled admissible family instead of the extremal one.
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub step: usize,
    pub replaced_member: usize,
    pub cap: f64,
    pub probability: f64,
    pub before: f64,
    pub after: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalReport {
    pub manifest: RunManifest,
    pub theorem_value: f64,
    pub bernoulli_moment: f64,
    pub oracle_moment: Option<f64>,
    pub traced_family: String,
    pub reduction: Vec<ReductionStep>,
    /// Theorem value for the traced family's measured ratios `|E X_k| / L_k`,
    /// which match the requested ones up to the sampler tolerance.
    pub traced_theorem_value: f64,
    /// The chain is nondecreasing and ends at `traced_theorem_value`, within tolerance.
    pub reduction_consistent: bool,
}

pub fn run_extremal(opts: &ExtremalOptions) -> Result<ExtremalReport> {
    if opts.p > MAX_MOMENT_ORDER {
        return Err(Error::InvalidParameter(format!(
            "p = {} exceeds the supported maximum {MAX_MOMENT_ORDER}",
            opts.p
        )));
    }
    let params = BernoulliParams::new(opts.caps.clone(), opts.alphas.clone())?;
    let theorem_value = theorem_max_value(opts.n, &params, opts.p)?;
    let bernoulli_moment = bernoulli_sum_moment(&params, opts.p)?;
    let oracle_moment = if opts.oracle {
        Some(enumerate_bernoulli_moment(&params, opts.p)?)
    } else {
        None
    };
    let (family, traced_family) = match opts.seed {
        None => (
            EnsembleFamily::scalar_bernoulli(opts.n, &params)?,
            "extremal".to_string(),
        ),
        Some(seed) => {
            let members = params
                .iter()
                .enumerate()
                .map(|(k, (cap, alpha))| {
                    sample_constrained_ensemble(
                        opts.n,
                        3,
                        cap,
                        alpha,
                        rng::derive_seed(seed, &[k as u64]),
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            (
                EnsembleFamily::new(members)?,
                format!("sampled(seed={seed}, atoms=3)"),
            )
        }
    };
    let chain = reduction_chain(&family, opts.p)?;
    let measured = crate::checks::measured_params(&family)?;
    let reduction: Vec<ReductionStep> = chain
        .windows(2)
        .enumerate()
        .map(|(k, w)| ReductionStep {
            step: k + 1,
            replaced_member: k + 1,
            cap: measured.caps()[k],
            probability: measured.alphas()[k],
            before: w[0],
            after: w[1],
        })
        .collect();
    let traced_theorem_value = theorem_max_value(opts.n, &measured, opts.p)?;
    let tol = |v: f64| crate::checks::CHECK_TOLERANCE * (1.0 + v.abs());
    let reduction_consistent = reduction.iter().all(|s| s.before <= s.after + tol(s.after))
        && chain
            .last()
            .is_some_and(|&v| (v - traced_theorem_value).abs() <= tol(traced_theorem_value));
    Ok(ExtremalReport {
        manifest: RunManifest::new(
            "extremal",
            opts,
            opts.seed,
            opts.out.iter().map(|p| p.display().to_string()).collect(),
        ),
        theorem_value,
        bernoulli_moment,
        oracle_moment,
        traced_family,
        reduction,
        traced_theorem_value,
        reduction_consistent,
    })
}

fn family_term(count: usize, replaced: usize) -> String {
    let mut terms: Vec<String> = (1..=replaced).map(|j| format!("f{j}I")).collect();
    terms.extend((replaced + 1..=count).map(|j| format!("X{j}")));
    terms.join(" + ")
}

fn scalar_sum(count: usize) -> String {
    match count {
        1 => "f1".to_string(),
        2 => "f1 + f2".to_string(),
        _ => format!("f1 + ... + f{count}"),
    }
}

pub fn cmd_extremal(opts: &ExtremalOptions, out: &mut dyn Write) -> i32 {
    let report = match with_thread_cap(|| run_extremal(opts)).and_then(|r| r) {
        Ok(r) => r,
        Err(e) => return report_error(out, &e),
    };
    let count = opts.caps.len();
    let _ = writeln!(out, "theorem_max_value = {}", report.theorem_value);
    let _ = writeln!(
        out,
        "n * E({})^{} with E({})^{} = {}",
        scalar_sum(count),
        opts.p,
        scalar_sum(count),
        opts.p,
        report.bernoulli_moment
    );
    if let Some(oracle) = report.oracle_moment {
        let rel = (oracle - report.bernoulli_moment).abs() / oracle.abs().max(f64::MIN_POSITIVE);
        let _ = writeln!(
            out,
            "oracle (2^{count} outcomes): E({})^{} = {oracle}, n * value = {}, relative difference {rel:e}",
            scalar_sum(count),
            opts.p,
            opts.n as f64 * oracle
        );
    }
    let _ = writeln!(out, "reduction trace ({} family):", report.traced_family);
    for s in &report.reduction {
        let _ = writeln!(
            out,
            "  step {}: E tr({})^{} = {} <= E tr({})^{} = {}   [X{} -> f{} I, L = {}, P(f = L) = {}]",
            s.step,
            family_term(count, s.step - 1),
            opts.p,
            s.before,
            family_term(count, s.step),
            opts.p,
            s.after,
            s.replaced_member,
            s.replaced_member,
            s.cap,
            s.probability
        );
    }
    let _ = writeln!(
        out,
        "  final: n * E({})^{} = {}",
        scalar_sum(count),
        opts.p,
        report.traced_theorem_value
    );
    if let Some(path) = &opts.out {
        if let Err(e) = write_json(path, &report) {
            return report_error(out, &e);
        }
    }
    if report.reduction_consistent {
        0
    } else {
        let _ = writeln!(out, "FAILED: reduction chain is not monotone");
        2
    }
}

// ---------------------------------------------------------------------------
// search
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub grid: SweepGrid,
    pub config: SearchConfig,
    /// Additional admissible families sampled per grid cell and checked against the maximum.
    pub sampler_seeds: usize,
    pub out: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplerAudit {
    pub families: usize,
    pub violations: usize,
    pub errors: usize,
    pub min_margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub manifest: RunManifest,
    pub csv_schema: String,
    pub cells: usize,
    pub failed_cells: usize,
    pub violations: usize,
    pub near_violations: usize,
    pub min_relative_gap: f64,
    pub dumps: Vec<String>,
    pub sampler_audit: SamplerAudit,
}

/// Dump directory `<out>.dumps`.
pub fn dump_dir(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".dumps");
    PathBuf::from(name)
}

#[derive(Serialize)]
struct FamilyDump<'a> {
    cell: usize,
    n: usize,
    p: usize,
    seed: u64,
    best_value: f64,
    theorem_value: f64,
    gap: f64,
    family: &'a EnsembleFamily,
}

/// Writes the sweep table as CSV.
pub fn write_search_csv(path: &Path, cells: &[CellSummary]) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SEARCH_CSV_HEADER)?;
    for c in cells {
        let (best, theorem, gap, status) = match &c.outcome {
            Ok(r) => (
                r.best_value.to_string(),
                r.theorem_value.to_string(),
                r.gap.to_string(),
                if r.is_violation() {
                    "violation".to_string()
                } else {
                    "ok".to_string()
                },
            ),
            Err(msg) => (
                String::new(),
                String::new(),
                String::new(),
                format!("error: {msg}"),
            ),
        };
        w.write_record([
            c.n.to_string(),
            c.member_count.to_string(),
            c.p.to_string(),
            join_floats(c.params.alphas()),
            join_floats(c.params.caps()),
            best,
            theorem,
            gap,
            c.seed.to_string(),
            status,
        ])?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::io(path, e.into_error()))?;
    write_file(path, &bytes)
}

/// Checks `families_per_cell` sampled admissible families per grid cell against the maximum.
pub fn sampler_audit(
    grid: &SweepGrid,
    families_per_cell: usize,
    seed: u64,
    max_atoms: usize,
) -> SamplerAudit {
    let cells = grid.cells();
    let total = cells.len() * families_per_cell;
    let outcomes: Vec<Result<CheckReport>> = (0..total)
        .into_par_iter()
        .map(|i| {
            let (n, count, p) = cells[i % cells.len()];
            let params = grid.params_for(count)?;
            let family_seed = rng::derive_seed(seed, &[0xA0D1, i as u64]);
            let mut r = rng::stream(family_seed, &[]);
            let members = params
                .iter()
                .enumerate()
                .map(|(k, (cap, alpha))| {
                    let s = r.random_range(1..=max_atoms);
                    sample_constrained_ensemble(
                        n,
                        s,
                        cap,
                        alpha,
                        rng::derive_seed(family_seed, &[k as u64]),
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(
                crate::checks::check_theorem_max(&EnsembleFamily::new(members)?, p)?
                    .with_seed(family_seed),
            )
        })
        .collect();
    let mut audit = SamplerAudit {
        families: total,
        violations: 0,
        errors: 0,
        min_margin: f64::INFINITY,
    };
    for o in outcomes {
        match o {
            Ok(r) => {
                audit.min_margin = audit.min_margin.min(r.margin());
                if !r.passed {
                    audit.violations += 1;
                }
            }
            Err(_) => audit.errors += 1,
        }
    }
    audit
}

pub fn run_search(opts: &SearchOptions) -> Result<SearchSummary> {
    let cells = gap_sweep(&opts.grid, &opts.config)?;
    write_search_csv(&opts.out, &cells)?;
    let dumps_dir = dump_dir(&opts.out);
    let mut dumps = Vec::new();
    for (index, c) in cells.iter().enumerate() {
        if let Ok(r) = &c.outcome {
            if r.is_near_violation() || r.is_violation() {
                let path = dumps_dir.join(format!("cell_{index:04}.json"));
                write_json(
                    &path,
                    &FamilyDump {
                        cell: index,
                        n: c.n,
                        p: c.p,
                        seed: c.seed,
                        best_value: r.best_value,
                        theorem_value: r.theorem_value,
                        gap: r.gap,
                        family: &r.best_family,
                    },
                )?;
                dumps.push(path.display().to_string());
            }
        }
    }
    let audit = sampler_audit(
        &opts.grid,
        opts.sampler_seeds,
        opts.config.seed,
        opts.config.max_atoms,
    );
    let ok: Vec<_> = cells
        .iter()
        .filter_map(|c| c.outcome.as_ref().ok())
        .collect();
    let summary = SearchSummary {
        manifest: RunManifest::new(
            "search",
            opts,
            Some(opts.config.seed),
            vec![opts.out.display().to_string()],
        ),
        csv_schema: SEARCH_CSV_SCHEMA.to_string(),
        cells: cells.len(),
        failed_cells: cells.len() - ok.len(),
        violations: ok.iter().filter(|r| r.is_violation()).count(),
        near_violations: ok.iter().filter(|r| r.is_near_violation()).count(),
        min_relative_gap: ok
            .iter()
            .map(|r| r.gap / (1.0 + r.theorem_value.abs()))
            .fold(f64::INFINITY, f64::min),
        dumps,
        sampler_audit: audit,
    };
    write_json(&manifest_path(&opts.out), &summary)?;
    Ok(summary)
}

pub fn cmd_search(opts: &SearchOptions, out: &mut dyn Write) -> i32 {
    let summary = match with_thread_cap(|| run_search(opts)).and_then(|r| r) {
        Ok(s) => s,
        Err(e) => return report_error(out, &e),
    };
    let _ = writeln!(
        out,
        "cells={} failed_cells={} violations={} near_violations={} min_relative_gap={:e}",
        summary.cells,
        summary.failed_cells,
        summary.violations,
        summary.near_violations,
        summary.min_relative_gap
    );
    let _ = writeln!(
        out,
        "sampler audit: families={} violations={} errors={} min_margin={:e}",
        summary.sampler_audit.families,
        summary.sampler_audit.violations,
        summary.sampler_audit.errors,
        summary.sampler_audit.min_margin
    );
    let _ = writeln!(out, "table: {}", opts.out.display());
    if summary.violations > 0 || summary.sampler_audit.violations > 0 {
        let _ = writeln!(
            out,
            "VIOLATION: families dumped to {}",
            dump_dir(&opts.out).display()
        );
        return 2;
    }
    0
}

// ---------------------------------------------------------------------------
// corollary
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorollaryOptions {
    pub p_max: usize,
    pub n_max: usize,
    pub out: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorollarySummary {
    pub manifest: RunManifest,
    pub csv_schema: String,
    pub rows: usize,
    pub sup_ratio: f64,
    pub sup_at: (usize, usize),
    /// Supremum over `p ≤ min(20, p_max)`.
    pub sup_ratio_p_le_20: f64,
    /// `sup_ratio / sup_ratio_p_le_20 − 1`.
    pub relative_growth: f64,
}

pub fn write_corollary_csv(path: &Path, table: &CorollaryTable) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(COROLLARY_CSV_HEADER)?;
    for r in &table.rows {
        w.write_record([
            r.n.to_string(),
            r.p.to_string(),
            r.value.to_string(),
            r.ratio.to_string(),
        ])?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::io(path, e.into_error()))?;
    write_file(path, &bytes)
}

pub fn run_corollary(opts: &CorollaryOptions) -> Result<CorollarySummary> {
    if opts.p_max < 2 || opts.n_max < 2 {
        return Err(Error::InvalidParameter(
            "p_max and n_max must be at least 2".into(),
        ));
    }
    if opts.p_max > MAX_MOMENT_ORDER {
        return Err(Error::InvalidParameter(format!(
            "p_max = {} exceeds the supported maximum {MAX_MOMENT_ORDER}",
            opts.p_max
        )));
    }
    let n_grid: Vec<usize> = (2..=opts.n_max).collect();
    let p_grid: Vec<usize> = (2..=opts.p_max).collect();
    let table = corollary_growth(&n_grid, &p_grid)?;
    write_corollary_csv(&opts.out, &table)?;
    let sup = *table.sup().expect("nonempty grid");
    let base = table.sup_up_to(opts.p_max.min(20)).expect("nonempty grid");
    let summary = CorollarySummary {
        manifest: RunManifest::new(
            "corollary",
            opts,
            None,
            vec![opts.out.display().to_string()],
        ),
        csv_schema: COROLLARY_CSV_SCHEMA.to_string(),
        rows: table.rows.len(),
        sup_ratio: sup.ratio,
        sup_at: (sup.n, sup.p),
        sup_ratio_p_le_20: base,
        relative_growth: sup.ratio / base - 1.0,
    };
    write_json(&manifest_path(&opts.out), &summary)?;
    Ok(summary)
}

pub fn cmd_corollary(opts: &CorollaryOptions, out: &mut dyn Write) -> i32 {
    match with_thread_cap(|| run_corollary(opts)).and_then(|r| r) {
        Ok(s) => {
            let _ = writeln!(
                out,
                "rows={} sup ratio = {} at (n, p) = ({}, {}); sup over p <= 20 = {}; growth {:e}",
                s.rows, s.sup_ratio, s.sup_at.0, s.sup_at.1, s.sup_ratio_p_le_20, s.relative_growth
            );
            let _ = writeln!(out, "table: {}", opts.out.display());
            0
        }
        Err(e) => report_error(out, &e),
    }
}
