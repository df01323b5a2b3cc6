//! `hamcycle` command-line front end.
//!
//! Exit codes: 0 every check holds, 1 a violation was found, 2 usage or
//! input error, 3 degenerate input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde::Serialize;

use crate::bounds::{check_bounds, duality_check, fuzz, k5_lower, k5_upper, BoundReport};
use crate::cycles::{enumerate_cycles, Cycle};
use crate::error::{usage, Error, Result};
use crate::euler::{
    identity_terms, midpoint_parallelogram_relations, midsegment_relations, verify_identity,
    IdentityReport, Pairing, QuadLabeling,
};
use crate::extremal::{conjecture_table, optimize, ratio, theoretical_bound, Objective};
use crate::geometry::{random_config, regular_polygon, Configuration};
use crate::iteration::{trace, TraceRecord};
use crate::pointfile::{read_point_file, AnyConfiguration};
use crate::report::Verdict;
use crate::rng::derive_seed;
use crate::scalar::{Mode, Scalar, RESIDUAL_TOLERANCE, VALUE_TOLERANCE};
use crate::sequences::{bound_limit, lemma1_checks, sequence_rows};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hamcycle", version, about = "Hamiltonian-cycle weight checks on squared-distance complete graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Output {
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a random configuration or a regular polygon as a point file.
    Gen(GenArgs),
    /// Check the K4 / K5 cycle-weight bounds on a file or on random configurations.
    Verify(VerifyArgs),
    /// Check the four-point midpoint identity on a file or on random quadruples.
    Identity(IdentityArgs),
    /// Trace the midpoint iteration on five points as CSV.
    Iterate(IterateArgs),
    /// Tabulate the a-sequence and the bound expression B(n).
    Sequence(SequenceArgs),
    /// Search for extreme cycle-weight ratios.
    Optimize(OptimizeArgs),
    /// Report cycle-weight ratios of a regular polygon.
    Pentagon(PentagonArgs),
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, default_value_t = 5)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "float")]
    mode: Mode,
    /// Emit a regular polygon instead of random points (float, dim 2).
    #[arg(long)]
    polygon: bool,
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Point file with 4 or 5 points.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 5)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random configurations.
    #[arg(long, alias = "fuzz")]
    trials: Option<u64>,
    #[arg(long, default_value_t = crate::bounds::DEFAULT_TOLERANCE)]
    tol: f64,
    #[arg(long)]
    mode: Option<Mode>,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct IdentityArgs {
    /// Point file with 4 points.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, alias = "fuzz")]
    trials: Option<u64>,
    /// Restrict to one pairing (0, 1 or 2).
    #[arg(long)]
    pairing: Option<u8>,
    #[arg(long, default_value_t = RESIDUAL_TOLERANCE)]
    tol: f64,
    #[arg(long)]
    mode: Option<Mode>,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct IterateArgs {
    /// Point file with 5 points; random points from --seed otherwise.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// E-cycle as a comma-separated vertex list.
    #[arg(long, default_value = "0,1,2,3,4")]
    cycle: String,
    #[arg(long, default_value_t = 30)]
    steps: usize,
    #[arg(long, default_value_t = RESIDUAL_TOLERANCE)]
    tol: f64,
    #[arg(long)]
    mode: Option<Mode>,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct SequenceArgs {
    #[arg(long, default_value_t = 20)]
    terms: usize,
    /// Also run the exact ratio-property checks up to --terms.
    #[arg(long)]
    check: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct OptimizeArgs {
    #[arg(long, default_value_t = 5)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "max")]
    objective: Objective,
    #[arg(long, default_value_t = 20)]
    restarts: usize,
    /// Maximum sweeps per restart.
    #[arg(long, default_value_t = 500)]
    budget: usize,
    /// Tabulate min and max for a range of n, e.g. `4-7`.
    #[arg(long)]
    conjecture: Option<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct PentagonArgs {
    #[arg(long, default_value_t = 5)]
    n: usize,
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Fail unless the known equality cases are reproduced.
    #[arg(long)]
    check: bool,
    #[command(flatten)]
    output: Output,
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Reports go to `stdout` (or `--out`), diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let (output, result) = match &cli.command {
        Command::Gen(a) => (&a.output, gen(a)),
        Command::Verify(a) => (&a.output, verify(a)),
        Command::Identity(a) => (&a.output, identity(a)),
        Command::Iterate(a) => (&a.output, iterate(a)),
        Command::Sequence(a) => (&a.output, sequence(a)),
        Command::Optimize(a) => (&a.output, optimize_cmd(a)),
        Command::Pentagon(a) => (&a.output, pentagon(a)),
    };
    match result {
        Ok((text, code)) => match emit(output, &text, stdout) {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                EXIT_USAGE
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::Degenerate(_) => EXIT_DEGENERATE,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn emit(output: &Output, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match &output.out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

type Outcome = Result<(String, i32)>;

fn json_line<T: Serialize>(out: &mut String, value: &T) {
    out.push_str(&serde_json::to_string(value).expect("report types serialize"));
    out.push('\n');
}

fn exit_for(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::Violated => EXIT_VIOLATION,
        Verdict::Degenerate => EXIT_DEGENERATE,
        _ => EXIT_OK,
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if !(2..=3).contains(&dim) {
        return Err(usage(format!("--dim must be 2 or 3, got {dim}")));
    }
    Ok(())
}

fn check_n(n: usize) -> Result<()> {
    if !(3..=10).contains(&n) {
        return Err(usage(format!("--n must be in 3..=10, got {n}")));
    }
    Ok(())
}

fn load(path: &Path, mode: Option<Mode>, expected_n: Option<usize>) -> Result<AnyConfiguration> {
    let c = read_point_file(path, mode)?;
    if let Some(n) = expected_n {
        if c.len() != n {
            return Err(usage(format!("expected {n} points in {}, got {}", path.display(), c.len())));
        }
    }
    Ok(c)
}

fn gen(a: &GenArgs) -> Outcome {
    check_n(a.n)?;
    let text = if a.polygon {
        if a.mode != Mode::Float {
            return Err(usage("regular polygons are generated in float mode only"));
        }
        let c = regular_polygon(a.n, a.radius)?;
        config_text(&AnyConfiguration::Float(c), a.output.json)
    } else {
        check_dim(a.dim)?;
        let c = match a.mode {
            Mode::Float => AnyConfiguration::Float(random_config(a.seed, a.n, a.dim)?),
            Mode::Rational => AnyConfiguration::Rational(random_config(a.seed, a.n, a.dim)?),
        };
        config_text(&c, a.output.json)
    };
    Ok((text, EXIT_OK))
}

#[derive(Serialize)]
struct ConfigJson {
    n: usize,
    dim: usize,
    mode: Mode,
    points: Vec<Vec<String>>,
}

fn config_text(c: &AnyConfiguration, json: bool) -> String {
    if !json {
        return c.to_text();
    }
    fn rows<S: Scalar>(c: &Configuration<S>) -> Vec<Vec<String>> {
        c.points().iter().map(|p| p.coords().iter().map(Scalar::to_token).collect()).collect()
    }
    let points = match c {
        AnyConfiguration::Float(c) => rows(c),
        AnyConfiguration::Rational(c) => rows(c),
    };
    let mut out = String::new();
    json_line(&mut out, &ConfigJson { n: c.len(), dim: c.dim(), mode: c.mode(), points });
    out
}

#[derive(Serialize)]
struct BoundJsonRow<'a> {
    config_id: u64,
    #[serde(flatten)]
    row: &'a crate::bounds::BoundRow,
}

#[derive(Serialize)]
struct FuzzJson<'a> {
    kind: &'static str,
    seed: u64,
    n: usize,
    dim: usize,
    mode: Mode,
    tolerance: f64,
    #[serde(flatten)]
    summary: &'a crate::bounds::BoundSummary,
    verdict: Verdict,
}

fn verify(a: &VerifyArgs) -> Outcome {
    let mut out = String::new();
    if let Some(path) = &a.input {
        let c = load(path, a.mode, None)?;
        let (report, duality) = match &c {
            AnyConfiguration::Float(c) => (check_bounds(c, a.tol)?, dual(c)?),
            AnyConfiguration::Rational(c) => (check_bounds(c, a.tol)?, dual(c)?),
        };
        write_bound_rows(&mut out, &report, a.output.json);
        let mut verdict = report.verdict;
        if let Some(d) = duality {
            verdict = verdict.worst(d.verdict);
            if a.output.json {
                json_line(&mut out, &serde_json::json!({
                    "kind": "duality",
                    "verdict": d.verdict,
                    "min_ratio": d.min_ratio,
                    "max_ratio": d.max_ratio,
                    "extremes_residual": d.extremes_residual,
                }));
            } else {
                let _ = writeln!(
                    out,
                    "duality: min {} + max {} - 1 = {} ({})",
                    d.min_ratio, d.max_ratio, d.extremes_residual, d.verdict
                );
            }
        }
        return Ok((out, exit_for(verdict)));
    }
    let trials = a
        .trials
        .ok_or_else(|| usage("verify needs --in <file> or --trials/--fuzz <k>"))?;
    check_dim(a.dim)?;
    let mode = a.mode.unwrap_or(Mode::Float);
    let report = match mode {
        Mode::Float => fuzz::<f64>(a.seed, trials, a.n, a.dim, a.tol)?,
        Mode::Rational => fuzz::<BigRational>(a.seed, trials, a.n, a.dim, a.tol)?,
    };
    let s = &report.summary;
    if a.output.json {
        json_line(&mut out, &FuzzJson {
            kind: "fuzz",
            seed: a.seed,
            n: a.n,
            dim: a.dim,
            mode,
            tolerance: a.tol,
            summary: s,
            verdict: report.verdict,
        });
    } else {
        let _ = writeln!(
            out,
            "fuzz n={} dim={} mode={} seed={} trials={} rows={}",
            a.n, a.dim, mode, a.seed, s.trials, s.rows
        );
        let _ = writeln!(
            out,
            "violations={} degenerate={} equalities={}",
            s.violations, s.degenerate, s.equalities
        );
        let (lo, hi) = match report.theorem {
            crate::bounds::Theorem::K4 => (0.5, 1.0),
            crate::bounds::Theorem::K5 => (k5_lower(), k5_upper()),
        };
        let _ = writeln!(
            out,
            "min_ratio={} max_ratio={} proven=[{}, {}]",
            fmt_opt(s.min_ratio),
            fmt_opt(s.max_ratio),
            lo,
            hi
        );
        let _ = writeln!(out, "verdict={}", report.verdict);
    }
    Ok((out, exit_for(report.verdict)))
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn dual<S: Scalar>(c: &Configuration<S>) -> Result<Option<crate::bounds::DualityReport>> {
    if c.len() == 5 {
        Ok(Some(duality_check(c)?))
    } else {
        Ok(None)
    }
}

fn write_bound_rows(out: &mut String, report: &BoundReport, json: bool) {
    if json {
        for row in &report.rows {
            json_line(out, &BoundJsonRow { config_id: 0, row });
        }
        return;
    }
    let _ = writeln!(out, "cycle wE wD wK ratio verdict");
    for row in &report.rows {
        let _ = writeln!(
            out,
            "{} {} {} {} {} {}",
            row.cycle,
            row.w_e,
            row.w_d,
            row.w_k,
            fmt_opt(row.ratio),
            row.verdict
        );
    }
    let s = &report.summary;
    let _ = writeln!(
        out,
        "summary: rows={} violations={} degenerate={} equalities={} verdict={}",
        s.rows, s.violations, s.degenerate, s.equalities, report.verdict
    );
}

#[derive(Serialize)]
struct IdentitySummary {
    kind: &'static str,
    quads: u64,
    checks: u64,
    failures: u64,
    max_relative_residual: f64,
    /// Pairs with l5² + l6² > l1² + l2² + l3² + l4² beyond tolerance.
    inequality_violations: u64,
    /// Midpoint relations (parallelogram and midsegment) beyond tolerance.
    relation_failures: u64,
    verdict: Verdict,
}

fn pairings(choice: Option<u8>) -> Result<Vec<Pairing>> {
    match choice {
        Some(i) => Ok(vec![Pairing::new(i)?]),
        None => Ok(Pairing::ALL.to_vec()),
    }
}

struct QuadStats {
    checks: u64,
    failures: u64,
    max_rel: f64,
    inequality_violations: u64,
    relation_failures: u64,
}

fn quad_stats<S: Scalar>(q: &QuadLabeling<S>, tol: f64) -> Result<(IdentityReport, QuadStats)> {
    let report = verify_identity(q, tol)?;
    let t = identity_terms(q);
    let exact = S::MODE == Mode::Rational;
    let small = |v: &S, scale: f64| {
        if exact {
            v.is_zero()
        } else {
            v.to_f64().abs() <= tol * (1.0 + scale)
        }
    };
    let scale = t.rhs.to_f64().abs() + t.lhs.to_f64().abs();
    let pair = t.lengths_sq[4].clone() + t.lengths_sq[5].clone();
    let inequality_ok = if exact {
        pair <= t.rhs
    } else {
        pair.to_f64() <= t.rhs.to_f64() + tol * (1.0 + scale)
    };
    let relations_ok = midpoint_parallelogram_relations(q).iter().all(|v| small(v, scale))
        && midsegment_relations(q).iter().all(|v| small(v, scale));
    let stats = QuadStats {
        checks: 1,
        failures: u64::from(!report.verdict.holds()),
        max_rel: report.relative_residual,
        inequality_violations: u64::from(!inequality_ok),
        relation_failures: u64::from(!relations_ok),
    };
    Ok((report, stats))
}

fn identity(a: &IdentityArgs) -> Outcome {
    let chosen = pairings(a.pairing)?;
    let mut out = String::new();
    let mut total = QuadStats {
        checks: 0,
        failures: 0,
        max_rel: 0.0,
        inequality_violations: 0,
        relation_failures: 0,
    };
    let mut quads = 0u64;
    let mut reports = Vec::new();
    let mut add = |stats: QuadStats| {
        total.checks += stats.checks;
        total.failures += stats.failures;
        total.max_rel = total.max_rel.max(stats.max_rel);
        total.inequality_violations += stats.inequality_violations;
        total.relation_failures += stats.relation_failures;
    };
    fn run_quad<S: Scalar>(
        c: &Configuration<S>,
        pairings: &[Pairing],
        tol: f64,
    ) -> Result<Vec<(IdentityReport, QuadStats)>> {
        pairings
            .iter()
            .map(|&p| quad_stats(&QuadLabeling::from_configuration(c, p)?, tol))
            .collect()
    }
    let file_mode = a.input.is_some();
    if let Some(path) = &a.input {
        let c = load(path, a.mode, Some(4))?;
        quads = 1;
        let results = match &c {
            AnyConfiguration::Float(c) => run_quad(c, &chosen, a.tol)?,
            AnyConfiguration::Rational(c) => run_quad(c, &chosen, a.tol)?,
        };
        for (r, s) in results {
            add(s);
            reports.push(r);
        }
    } else {
        let trials = a
            .trials
            .ok_or_else(|| usage("identity needs --in <file> or --trials/--fuzz <k>"))?;
        check_dim(a.dim)?;
        for i in 0..trials {
            let seed = derive_seed(a.seed, i);
            let results = match a.mode.unwrap_or(Mode::Float) {
                Mode::Float => run_quad(&random_config::<f64>(seed, 4, a.dim)?, &chosen, a.tol)?,
                Mode::Rational => {
                    run_quad(&random_config::<BigRational>(seed, 4, a.dim)?, &chosen, a.tol)?
                }
            };
            quads += 1;
            for (_, s) in results {
                add(s);
            }
        }
    }
    let bad = total.failures + total.inequality_violations + total.relation_failures;
    let verdict = Verdict::from_bool(bad == 0);
    if file_mode {
        if a.output.json {
            for r in &reports {
                json_line(&mut out, r);
            }
        } else {
            let _ = writeln!(out, "pairing l1^2 l2^2 l3^2 l4^2 l5^2 l6^2 4r^2 lhs rhs residual verdict");
            for r in &reports {
                let l: Vec<String> = r.lengths_sq.iter().map(f64::to_string).collect();
                let residual = r.residual_exact.clone().unwrap_or_else(|| r.residual.to_string());
                let _ = writeln!(
                    out,
                    "{} {} {} {} {} {} {}",
                    r.pairing,
                    l.join(" "),
                    r.four_r_sq,
                    r.lhs,
                    r.rhs,
                    residual,
                    r.verdict
                );
            }
        }
    }
    let summary = IdentitySummary {
        kind: "identity",
        quads,
        checks: total.checks,
        failures: total.failures,
        max_relative_residual: total.max_rel,
        inequality_violations: total.inequality_violations,
        relation_failures: total.relation_failures,
        verdict,
    };
    if a.output.json {
        json_line(&mut out, &summary);
    } else {
        let _ = writeln!(
            out,
            "summary: quads={} checks={} failures={} max_relative_residual={} inequality_violations={} relation_failures={} verdict={}",
            summary.quads,
            summary.checks,
            summary.failures,
            summary.max_relative_residual,
            summary.inequality_violations,
            summary.relation_failures,
            verdict
        );
    }
    Ok((out, exit_for(verdict)))
}

fn iterate(a: &IterateArgs) -> Outcome {
    let cycle: Cycle = a.cycle.parse()?;
    let c = match &a.input {
        Some(path) => load(path, a.mode, Some(5))?,
        None => {
            check_dim(a.dim)?;
            match a.mode.unwrap_or(Mode::Float) {
                Mode::Float => AnyConfiguration::Float(random_config(a.seed, 5, a.dim)?),
                Mode::Rational => AnyConfiguration::Rational(random_config(a.seed, 5, a.dim)?),
            }
        }
    };
    fn render<S: Scalar>(
        c: &Configuration<S>,
        cycle: &Cycle,
        steps: usize,
        tol: f64,
        json: bool,
    ) -> Outcome {
        let t = trace(c, cycle, steps)?;
        let text = if json {
            let mut out = String::new();
            for row in t.rows() {
                json_line(&mut out, &TraceRecord::from(&row));
            }
            out
        } else {
            t.to_csv()
        };
        Ok((text, exit_for(Verdict::from_bool(t.identities_hold(tol)))))
    }
    match &c {
        AnyConfiguration::Float(c) => render(c, &cycle, a.steps, a.tol, a.output.json),
        AnyConfiguration::Rational(c) => render(c, &cycle, a.steps, a.tol, a.output.json),
    }
}

fn sequence(a: &SequenceArgs) -> Outcome {
    if a.terms < 2 {
        return Err(usage(format!("--terms must be at least 2, got {}", a.terms)));
    }
    let rows = sequence_rows(a.terms)?;
    let mut out = String::new();
    if a.output.json {
        for r in &rows {
            json_line(&mut out, r);
        }
    } else {
        let _ = writeln!(out, "n,a_n,ratio,B_exact,B");
        for r in &rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                r.n,
                r.a_n,
                r.ratio.map(|v| v.to_string()).unwrap_or_default(),
                r.bound_exact.clone().unwrap_or_default(),
                r.bound.map(|v| v.to_string()).unwrap_or_default()
            );
        }
    }
    let mut code = EXIT_OK;
    if a.check {
        let report = lemma1_checks(a.terms.max(3))?;
        code = exit_for(report.verdict);
        if a.output.json {
            json_line(&mut out, &report);
        } else {
            let _ = writeln!(
                out,
                "# checks through n={}: positive_decreasing={} ratio_above_limit={} ratio_non_increasing={} limit_gap={} verdict={}",
                report.n_max,
                report.positive_decreasing.holds,
                report.ratio_above_limit.holds,
                report.ratio_non_increasing.holds,
                report.limit_gap,
                report.verdict
            );
        }
    }
    Ok((out, code))
}

fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<usize>> {
    let bad = || usage(format!("--conjecture expects `lo-hi`, got `{s}`"));
    let (lo, hi) = s.split_once('-').unwrap_or((s, s));
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    Ok(lo..=hi)
}

/// Whether an optimized value stays inside the proven interval.
fn within_proven(n: usize, value: f64) -> bool {
    let slack = RESIDUAL_TOLERANCE;
    match n {
        4 => value >= 0.5 - slack && value <= 1.0 + slack,
        5 => value >= k5_lower() - slack && value <= k5_upper() + slack,
        _ => true,
    }
}

fn optimize_cmd(a: &OptimizeArgs) -> Outcome {
    check_dim(a.dim)?;
    let mut out = String::new();
    if let Some(range) = &a.conjecture {
        let rows = conjecture_table(a.seed, parse_range(range)?, a.dim, a.restarts, a.budget)?;
        let ok = rows.iter().all(|r| within_proven(r.n, r.min) && within_proven(r.n, r.max));
        if a.output.json {
            for r in &rows {
                json_line(&mut out, r);
            }
        } else {
            let _ = writeln!(out, "n min max status proven");
            for r in &rows {
                let proven = r.proven.as_ref().map_or_else(
                    || "-".to_string(),
                    |p| {
                        let close = if p.upper_attained { "]" } else { ")" };
                        format!("[{}, {}{}", p.lower, p.upper, close)
                    },
                );
                let _ = writeln!(out, "{} {} {} {} {}", r.n, r.min, r.max, r.status, proven);
            }
        }
        return Ok((out, exit_for(Verdict::from_bool(ok))));
    }
    let result = optimize(a.seed, a.n, a.dim, a.objective, a.restarts, a.budget)?;
    let ok = within_proven(a.n, result.value);
    if a.output.json {
        json_line(&mut out, &result);
    } else {
        let _ = writeln!(out, "n={} dim={} objective={}", result.n, result.dim, result.objective_kind);
        let _ = writeln!(out, "value={}", result.value);
        let _ = writeln!(out, "bound={}", fmt_opt(result.bound));
        let _ = writeln!(
            out,
            "cycle={} restarts={} best_restart={} sweeps={}",
            result.cycle, result.restarts, result.best_restart, result.sweeps
        );
        for p in &result.witness_points {
            let row: Vec<String> = p.iter().map(f64::to_string).collect();
            let _ = writeln!(out, "witness {}", row.join(" "));
        }
    }
    Ok((out, exit_for(Verdict::from_bool(ok))))
}

#[derive(Serialize)]
struct PentagonReport {
    n: usize,
    radius: f64,
    total_weight: f64,
    min_ratio: f64,
    min_cycle: Cycle,
    max_ratio: f64,
    max_cycle: Cycle,
    lower_bound: Option<f64>,
    upper_bound: Option<f64>,
    /// d/e for the side cycle of the pentagon, compared with (3+√5)/2.
    d_over_e: Option<f64>,
    checks: Vec<(String, bool)>,
}

fn pentagon(a: &PentagonArgs) -> Outcome {
    check_n(a.n)?;
    let c = regular_polygon(a.n, a.radius)?;
    let mut extremes: Option<((f64, Cycle), (f64, Cycle))> = None;
    for cy in enumerate_cycles(a.n)? {
        let r = ratio(&c, &cy)?;
        extremes = Some(match extremes {
            None => ((r, cy.clone()), (r, cy)),
            Some((lo, hi)) => (
                if r < lo.0 { (r, cy.clone()) } else { lo },
                if r > hi.0 { (r, cy) } else { hi },
            ),
        });
    }
    let ((min_ratio, min_cycle), (max_ratio, max_cycle)) = extremes.expect("n >= 3");
    let near = |a: f64, b: f64| (a - b).abs() <= VALUE_TOLERANCE;
    let mut checks = Vec::new();
    let mut d_over_e = None;
    if a.n == 5 {
        let side = Cycle::identity(5)?;
        let r_side = ratio(&c, &side)?;
        checks.push(("side cycle ratio = (5-sqrt5)/10".to_string(), near(r_side, k5_lower())));
        let star: Cycle = "0,2,4,1,3".parse()?;
        let r_star = ratio(&c, &star)?;
        checks.push(("pentagram ratio = (5+sqrt5)/10".to_string(), near(r_star, k5_upper())));
        let q = (1.0 - r_side) / r_side;
        checks.push(("d/e = (3+sqrt5)/2".to_string(), near(q, bound_limit())));
        d_over_e = Some(q);
    } else if a.n == 4 {
        let r = ratio(&c, &Cycle::identity(4)?)?;
        checks.push(("square perimeter ratio = 1/2".to_string(), near(r, 0.5)));
    }
    let report = PentagonReport {
        n: a.n,
        radius: a.radius,
        total_weight: crate::cycles::total_weight(&c),
        min_ratio,
        min_cycle,
        max_ratio,
        max_cycle,
        lower_bound: theoretical_bound(a.n, Objective::Minimize),
        upper_bound: theoretical_bound(a.n, Objective::Maximize),
        d_over_e,
        checks,
    };
    let ok = report.checks.iter().all(|(_, ok)| *ok);
    let mut out = String::new();
    if a.output.json {
        json_line(&mut out, &report);
    } else {
        let _ = writeln!(out, "regular polygon n={} radius={}", report.n, report.radius);
        let _ = writeln!(out, "total_weight={}", report.total_weight);
        let _ = writeln!(out, "min_ratio={} cycle={}", report.min_ratio, report.min_cycle);
        let _ = writeln!(out, "max_ratio={} cycle={}", report.max_ratio, report.max_cycle);
        if let Some(q) = report.d_over_e {
            let _ = writeln!(out, "d/e={}", q);
        }
        for (name, ok) in &report.checks {
            let _ = writeln!(out, "check {}: {}", name, if *ok { "ok" } else { "FAILED" });
        }
    }
    let code = if a.check { exit_for(Verdict::from_bool(ok)) } else { EXIT_OK };
    Ok((out, code))
}
