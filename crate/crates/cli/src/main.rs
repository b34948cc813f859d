//! Command-line front end for the exact moment-matrix tool chain.
//!
//! Subcommands run the identity verification grid, dump factorizations and
//! Hermite coefficient tables, evaluate and maximize the gain functional,
//! and emit moment sequences. Standard output carries JSON (or an aligned
//! table with `--format table`); standard error carries human diagnostics.
//!
//! Exit codes: 0 on success, 1 for domain failures (indefinite matrices,
//! conditioning, failed verification) with a structured JSON error on
//! stdout, 2 for usage and input-parsing problems with a message on stderr.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hgain::factorization::{closed_form_factors, ldl_decompose, LdlFactorization, Strictness};
use hgain::hankel::{
    build_a, build_b, build_pair, check_determinant_products, check_recurrence,
    check_scaling_split, HankelMatrix,
};
use hgain::hermite::{
    check_commute, check_orthogonality, dense_coefficients, hermite_coefficients,
};
use hgain::matrix::{CheckReport, Mismatch, RatMatrix};
use hgain::moments::{
    empirical_even_moments, gaussian_even_moments, parse_samples, uniform_even_moments,
    DistributionSpec, MomentSequence,
};
use hgain::optimizer::{gain_of, max_gain_with, monte_carlo_gain, WhiteningPath};
use hgain::poly::OddPolynomial;
use hgain::scalar::{format_rational, parse_rational, rat_int, to_f64, Rational};
use hgain::{check_gain_identity, check_hermite_diagonalization};

#[derive(Parser)]
#[command(
    name = "hgain",
    version,
    about = "Exact Hankel moment matrices, their factorizations, and gain-optimal odd polynomials"
)]
struct Cli {
    /// Output format for stdout payloads.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for randomized estimators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Require both moment matrices to be strictly positive definite
    /// wherever one is factored or optimized over.
    #[arg(long, global = true)]
    strict_psd: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every exact identity check over a grid of orders and variances.
    Verify(VerifyArgs),
    /// Maximize the gain over odd polynomials of a fixed order.
    Optimize(OptimizeArgs),
    /// Dump the triangular factorization of one moment matrix.
    Factor(FactorArgs),
    /// Emit probabilists' Hermite coefficients, packed and dense.
    Hermite(HermiteArgs),
    /// Evaluate the exact gain of a fixed odd polynomial.
    Gain(GainArgs),
    /// Emit an even-moment sequence as JSON.
    Moments(MomentsArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest matrix order included in the grid (default 12).
    #[arg(long)]
    m_max: Option<usize>,

    /// Variance grid point as an exact rational; repeatable. The grid is
    /// sorted and deduplicated. Default: 1, 4, 1/4, 9/49.
    #[arg(long = "sigma2", value_name = "P/Q")]
    sigma2: Vec<String>,

    /// TOML file presetting `m_max` and `sigma2`; explicit flags override it.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct OptimizeArgs {
    /// Input distribution family.
    #[arg(long, value_enum)]
    dist: Option<DistKind>,

    /// Distribution variance as an exact rational.
    #[arg(long, value_name = "P/Q")]
    sigma2: Option<String>,

    /// Moment-sequence JSON file used instead of a named distribution.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["dist", "sigma2"])]
    moments: Option<PathBuf>,

    /// Odd polynomial order to optimize over.
    #[arg(long)]
    order: usize,

    /// Whitening arithmetic for the reduction to an eigenproblem.
    #[arg(long, value_enum, default_value_t = PathKind::Float)]
    path: PathKind,
}

#[derive(Args)]
struct FactorArgs {
    /// Which Gaussian moment matrix to factor.
    #[arg(long, value_enum)]
    matrix: Option<MatrixKind>,

    /// Matrix order.
    #[arg(long)]
    m: Option<usize>,

    /// Gaussian variance as an exact rational.
    #[arg(long, value_name = "P/Q")]
    sigma2: Option<String>,

    /// Use the closed-form factor instead of running elimination.
    #[arg(long)]
    closed_form: bool,

    /// Factor a moment-matrix JSON file instead of a Gaussian grid cell.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["matrix", "m", "sigma2", "closed_form"])]
    input: Option<PathBuf>,

    /// Include the factored matrix entries in the output.
    #[arg(long)]
    with_matrix: bool,
}

#[derive(Args)]
struct HermiteArgs {
    /// Polynomial degree.
    #[arg(long)]
    n: usize,

    /// Pad the packed coefficient vector to this length (default n/2 + 1).
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Args)]
struct GainArgs {
    /// JSON file with {"a": ["p/q", ...]} odd-slot coefficients.
    #[arg(long, value_name = "FILE")]
    coeffs: PathBuf,

    /// Input distribution family.
    #[arg(long, value_enum)]
    dist: Option<DistKind>,

    /// Distribution variance as an exact rational.
    #[arg(long, value_name = "P/Q")]
    sigma2: Option<String>,

    /// Moment-sequence JSON file used instead of a named distribution.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["dist", "sigma2"])]
    moments: Option<PathBuf>,

    /// Also estimate the gain by simulation with this many samples
    /// (Gaussian distributions only; seeded by --seed).
    #[arg(long, value_name = "N")]
    monte_carlo: Option<usize>,
}

#[derive(Args)]
struct MomentsArgs {
    /// Input distribution family.
    #[arg(long, value_enum)]
    dist: Option<DistKind>,

    /// Distribution variance as an exact rational.
    #[arg(long, value_name = "P/Q")]
    sigma2: Option<String>,

    /// Text file with one sample value per line, averaged into empirical
    /// moments.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["dist", "sigma2"])]
    samples: Option<PathBuf>,

    /// Number of even moments to emit (the matrix order they support).
    #[arg(long)]
    m: usize,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Table,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum DistKind {
    Gaussian,
    Uniform,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum PathKind {
    /// Float Cholesky whitening with a pivot-ratio conditioning guard.
    Float,
    /// Exact rational whitening, rounded only at the eigensolve.
    Exact,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum MatrixKind {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

/// A failed run, split by the exit-code contract: usage problems go to
/// stderr with exit 2, domain failures go to stdout as structured JSON
/// with exit 1.
enum Failure {
    Usage(String),
    Domain(hgain::Error),
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn file_err(path: &Path, err: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("{}: {err}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(err)) => {
            let payload = json!({
                "error": {"kind": err.kind(), "message": err.to_string()}
            });
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    match &cli.command {
        Command::Verify(args) => cmd_verify(cli, args),
        Command::Optimize(args) => cmd_optimize(cli, args).map(|()| ExitCode::SUCCESS),
        Command::Factor(args) => cmd_factor(cli, args).map(|()| ExitCode::SUCCESS),
        Command::Hermite(args) => cmd_hermite(cli, args).map(|()| ExitCode::SUCCESS),
        Command::Gain(args) => cmd_gain(cli, args).map(|()| ExitCode::SUCCESS),
        Command::Moments(args) => cmd_moments(cli, args).map(|()| ExitCode::SUCCESS),
    }
}

// ---------------------------------------------------------------- shared

fn parse_sigma2(text: &str) -> Result<Rational, Failure> {
    let s2 = parse_rational(text).map_err(|e| usage(format!("invalid sigma2 '{text}': {e}")))?;
    if s2 <= rat_int(0) {
        return Err(usage(format!("sigma2 must be positive, got {text}")));
    }
    Ok(s2)
}

/// Resolve `--dist`/`--sigma2` or a `--moments FILE` into a distribution.
fn build_dist(
    dist: Option<DistKind>,
    sigma2: &Option<String>,
    moments_path: &Option<PathBuf>,
) -> Result<DistributionSpec, Failure> {
    if let Some(path) = moments_path {
        let text = fs::read_to_string(path).map_err(|e| file_err(path, e))?;
        let seq = MomentSequence::from_json_str(&text).map_err(|e| file_err(path, e))?;
        return DistributionSpec::explicit(seq.entries().to_vec()).map_err(Failure::Domain);
    }
    let (Some(kind), Some(text)) = (dist, sigma2) else {
        return Err(usage(
            "provide either --moments FILE or both --dist and --sigma2",
        ));
    };
    let s2 = parse_sigma2(text)?;
    match kind {
        DistKind::Gaussian => DistributionSpec::gaussian(s2),
        DistKind::Uniform => DistributionSpec::uniform(s2),
    }
    .map_err(Failure::Domain)
}

/// Optional strictness gate: demand exact positive definiteness of both
/// moment matrices before any downstream use.
fn enforce_strict_psd(dist: &DistributionSpec, m: usize) -> Result<(), Failure> {
    let moments = dist.even_moments(m).map_err(Failure::Domain)?;
    let a = build_a(&moments, m).map_err(Failure::Domain)?;
    ldl_decompose(a.entries(), Strictness::Strict).map_err(Failure::Domain)?;
    let b = build_b(&moments, m).map_err(Failure::Domain)?;
    ldl_decompose(b.entries(), Strictness::Strict).map_err(Failure::Domain)?;
    Ok(())
}

fn rational_strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

fn matrix_rows(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| rational_strings(m.row(i))).collect()
}

fn emit(format: Format, value: &Value) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).unwrap()),
        Format::Table => print_key_values(value),
    }
}

fn print_key_values(value: &Value) {
    let Value::Object(map) = value else {
        println!("{value}");
        return;
    };
    let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
    for (key, val) in map {
        match val {
            Value::String(s) => println!("{key:<width$}  {s}"),
            other => println!("{key:<width$}  {other}"),
        }
    }
}

// ---------------------------------------------------------------- verify

#[derive(serde::Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct VerifyConfig {
    m_max: Option<usize>,
    sigma2: Option<Vec<String>>,
}

struct CheckRow {
    name: &'static str,
    m: usize,
    sigma2: Rational,
    holds: bool,
    mismatch: Option<Mismatch>,
    elapsed_ms: f64,
}

fn timed_check(
    rows: &mut Vec<CheckRow>,
    name: &'static str,
    m: usize,
    sigma2: &Rational,
    check: impl FnOnce() -> hgain::Result<CheckReport>,
) -> Result<(), Failure> {
    let start = Instant::now();
    let report = check().map_err(Failure::Domain)?;
    rows.push(CheckRow {
        name,
        m,
        sigma2: sigma2.clone(),
        holds: report.holds,
        mismatch: report.mismatch,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    });
    Ok(())
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> Result<ExitCode, Failure> {
    let mut m_max = 12usize;
    let mut grid_text: Vec<String> = ["1", "4", "1/4", "9/49"].map(String::from).to_vec();
    if let Some(path) = &args.config {
        let text = fs::read_to_string(path).map_err(|e| file_err(path, e))?;
        let config: VerifyConfig = toml::from_str(&text).map_err(|e| file_err(path, e))?;
        if let Some(m) = config.m_max {
            m_max = m;
        }
        if let Some(list) = config.sigma2 {
            grid_text = list;
        }
    }
    if let Some(m) = args.m_max {
        m_max = m;
    }
    if !args.sigma2.is_empty() {
        grid_text = args.sigma2.clone();
    }
    if m_max == 0 {
        return Err(usage("m_max must be at least 1"));
    }
    if grid_text.is_empty() {
        return Err(usage("the sigma2 grid must not be empty"));
    }
    let mut grid = Vec::with_capacity(grid_text.len());
    for text in &grid_text {
        grid.push(parse_sigma2(text)?);
    }
    grid.sort();
    grid.dedup();

    let mut rows: Vec<CheckRow> = Vec::with_capacity(7 * m_max * grid.len());
    for m in 1..=m_max {
        for s2 in &grid {
            let moments = gaussian_even_moments(m, s2).map_err(Failure::Domain)?;
            let (a, b) = build_pair(&moments).map_err(Failure::Domain)?;
            timed_check(&mut rows, "commute", m, s2, || Ok(check_commute(m)))?;
            timed_check(&mut rows, "determinant-products", m, s2, || {
                check_determinant_products(m, s2)
            })?;
            timed_check(&mut rows, "gain-identity", m, s2, || {
                check_gain_identity(m, s2)
            })?;
            timed_check(&mut rows, "hermite-diagonalization", m, s2, || {
                check_hermite_diagonalization(m, s2)
            })?;
            timed_check(&mut rows, "orthogonality", m, s2, || {
                Ok(check_orthogonality(2 * m - 1))
            })?;
            timed_check(&mut rows, "recurrence", m, s2, || {
                check_recurrence(&a, &b, s2)
            })?;
            timed_check(&mut rows, "scaling-split", m, s2, || {
                check_scaling_split(&a, &b, s2)
            })?;
        }
    }
    rows.sort_by(|x, y| (x.name, x.m, &x.sigma2).cmp(&(y.name, y.m, &y.sigma2)));

    let overall = rows.iter().all(|r| r.holds);
    let checks: Vec<Value> = rows
        .iter()
        .map(|r| {
            let mut obj = json!({
                "name": r.name,
                "m": r.m,
                "sigma2": format_rational(&r.sigma2),
                "status": if r.holds { "pass" } else { "fail" },
                "elapsed_ms": r.elapsed_ms,
            });
            if let Some(mm) = &r.mismatch {
                obj["first_mismatch"] = json!({
                    "row": mm.row,
                    "col": mm.col,
                    "left": format_rational(&mm.left),
                    "right": format_rational(&mm.right),
                });
            }
            obj
        })
        .collect();
    let report = json!({
        "m_max": m_max,
        "sigma2": rational_strings(&grid),
        "overall": if overall { "pass" } else { "fail" },
        "checks": checks,
    });

    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
        Format::Table => {
            println!(
                "{:<26} {:>3} {:>8} {:>6} {:>10}",
                "check", "m", "sigma2", "status", "ms"
            );
            for r in &rows {
                println!(
                    "{:<26} {:>3} {:>8} {:>6} {:>10.3}",
                    r.name,
                    r.m,
                    format_rational(&r.sigma2),
                    if r.holds { "pass" } else { "fail" },
                    r.elapsed_ms,
                );
                if let Some(mm) = &r.mismatch {
                    println!("    first mismatch {mm}");
                }
            }
            let passed = rows.iter().filter(|r| r.holds).count();
            println!(
                "overall: {} ({passed}/{} checks passed)",
                if overall { "pass" } else { "fail" },
                rows.len(),
            );
        }
    }
    Ok(if overall {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

// -------------------------------------------------------------- optimize

fn cmd_optimize(cli: &Cli, args: &OptimizeArgs) -> Result<(), Failure> {
    if args.order == 0 || args.order.is_multiple_of(2) {
        return Err(usage("--order must be an odd positive integer"));
    }
    let dist = build_dist(args.dist, &args.sigma2, &args.moments)?;
    let m = args.order.div_ceil(2);
    if cli.strict_psd {
        enforce_strict_psd(&dist, m)?;
    }
    let path = match args.path {
        PathKind::Float => WhiteningPath::Float,
        PathKind::Exact => WhiteningPath::ExactLdl,
    };
    let result = max_gain_with(&dist, args.order, path).map_err(Failure::Domain)?;
    let moments = dist.even_moments(m).map_err(Failure::Domain)?;
    let gain_exact = gain_of(&result.polynomial, &moments).map_err(Failure::Domain)?;
    let value = json!({
        "order": args.order,
        "m": m,
        "dist": dist.kind(),
        "sigma2": dist.sigma2().map(format_rational),
        "path": match args.path { PathKind::Float => "float", PathKind::Exact => "exact" },
        "gain": result.gain,
        "gain_exact": format_rational(&gain_exact),
        "a": result.polynomial.to_f64_vec(),
        "a_exact": rational_strings(result.polynomial.coefficients()),
        "eigenvalues": result.eigenvalues,
        "whitened_vector": result.whitened_vector,
        "residual": result.residual,
        "multiplicity": result.multiplicity,
        "normalized_by_last": result.normalized_by_last,
        "ill_conditioned": result.ill_conditioned,
    });
    emit(cli.format, &value);
    Ok(())
}

// ---------------------------------------------------------------- factor

fn factor_value(
    matrix: Option<&str>,
    m: usize,
    shift: usize,
    sigma2: Option<&Rational>,
    source: &str,
    factorization: &LdlFactorization,
    entries: Option<&RatMatrix>,
) -> Value {
    let mut value = json!({
        "matrix": matrix,
        "m": m,
        "shift": shift,
        "sigma2": sigma2.map(format_rational),
        "source": source,
        "pivots": rational_strings(factorization.pivots()),
        "lower": matrix_rows(factorization.lower()),
    });
    if let Some(h) = entries {
        value["entries"] = json!(matrix_rows(h));
    }
    value
}

fn cmd_factor(cli: &Cli, args: &FactorArgs) -> Result<(), Failure> {
    if let Some(path) = &args.input {
        let text = fs::read_to_string(path).map_err(|e| file_err(path, e))?;
        let h = HankelMatrix::from_json_str(&text).map_err(|e| file_err(path, e))?;
        let strictness = if cli.strict_psd {
            Strictness::Strict
        } else {
            Strictness::Lenient
        };
        let f = ldl_decompose(h.entries(), strictness).map_err(Failure::Domain)?;
        let value = factor_value(
            None,
            h.m(),
            h.shift(),
            None,
            "elimination",
            &f,
            args.with_matrix.then(|| h.entries()),
        );
        emit(cli.format, &value);
        return Ok(());
    }

    let (Some(kind), Some(m), Some(sigma2_text)) = (args.matrix, args.m, &args.sigma2) else {
        return Err(usage(
            "--matrix, --m, and --sigma2 are required unless --input is given",
        ));
    };
    if m == 0 {
        return Err(usage("--m must be at least 1"));
    }
    let s2 = parse_sigma2(sigma2_text)?;
    let moments = gaussian_even_moments(m, &s2).map_err(Failure::Domain)?;
    let h = match kind {
        MatrixKind::A => build_a(&moments, m),
        MatrixKind::B => build_b(&moments, m),
    }
    .map_err(Failure::Domain)?;
    let (f, source) = if args.closed_form {
        let (fa, fb) = closed_form_factors(m, &s2).map_err(Failure::Domain)?;
        let f = match kind {
            MatrixKind::A => fa,
            MatrixKind::B => fb,
        };
        (f, "closed-form")
    } else {
        let f = ldl_decompose(h.entries(), Strictness::Strict).map_err(Failure::Domain)?;
        (f, "elimination")
    };
    let name = match kind {
        MatrixKind::A => "A",
        MatrixKind::B => "B",
    };
    let value = factor_value(
        Some(name),
        m,
        h.shift(),
        Some(&s2),
        source,
        &f,
        args.with_matrix.then(|| h.entries()),
    );
    emit(cli.format, &value);
    Ok(())
}

// --------------------------------------------------------------- hermite

fn cmd_hermite(cli: &Cli, args: &HermiteArgs) -> Result<(), Failure> {
    let slots = args.n / 2 + 1;
    let m = args.m.unwrap_or(slots);
    if m < slots {
        return Err(usage(format!(
            "--m must be at least {slots} to hold a degree-{} polynomial",
            args.n
        )));
    }
    let packed = hermite_coefficients(args.n, m).map_err(Failure::Domain)?;
    let dense: Vec<String> = dense_coefficients(args.n)
        .iter()
        .map(|c| c.to_string())
        .collect();
    let value = json!({
        "n": args.n,
        "m": m,
        "packed": rational_strings(packed.packed()),
        "dense": dense,
    });
    emit(cli.format, &value);
    Ok(())
}

// ------------------------------------------------------------------ gain

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct CoeffsFile {
    a: Vec<String>,
}

fn cmd_gain(cli: &Cli, args: &GainArgs) -> Result<(), Failure> {
    let text = fs::read_to_string(&args.coeffs).map_err(|e| file_err(&args.coeffs, e))?;
    let file: CoeffsFile = serde_json::from_str(&text).map_err(|e| file_err(&args.coeffs, e))?;
    let mut coefficients = Vec::with_capacity(file.a.len());
    for entry in &file.a {
        coefficients.push(parse_rational(entry).map_err(|e| file_err(&args.coeffs, e))?);
    }
    let f = OddPolynomial::new(coefficients).map_err(|e| file_err(&args.coeffs, e))?;

    let dist = build_dist(args.dist, &args.sigma2, &args.moments)?;
    if cli.strict_psd {
        enforce_strict_psd(&dist, f.m())?;
    }
    let moments = dist.even_moments(f.m()).map_err(Failure::Domain)?;
    let gain_exact = gain_of(&f, &moments).map_err(Failure::Domain)?;

    let mut value = json!({
        "order": f.order(),
        "m": f.m(),
        "dist": dist.kind(),
        "sigma2": dist.sigma2().map(format_rational),
        "a_exact": rational_strings(f.coefficients()),
        "gain": to_f64(&gain_exact),
        "gain_exact": format_rational(&gain_exact),
    });
    if let Some(samples) = args.monte_carlo {
        if dist.kind() != "gaussian" {
            return Err(usage("--monte-carlo requires a gaussian distribution"));
        }
        let s2 = to_f64(dist.sigma2().expect("gaussian carries a variance"));
        let estimate = monte_carlo_gain(&f, s2, samples, cli.seed).map_err(Failure::Domain)?;
        value["monte_carlo"] = json!({
            "samples": samples,
            "seed": cli.seed,
            "estimate": estimate.estimate,
            "standard_error": estimate.standard_error,
        });
    }
    emit(cli.format, &value);
    Ok(())
}

// --------------------------------------------------------------- moments

fn cmd_moments(cli: &Cli, args: &MomentsArgs) -> Result<(), Failure> {
    if args.m == 0 {
        return Err(usage("--m must be at least 1"));
    }
    let sequence = if let Some(path) = &args.samples {
        let text = fs::read_to_string(path).map_err(|e| file_err(path, e))?;
        let samples = parse_samples(&text).map_err(|e| file_err(path, e))?;
        empirical_even_moments(&samples, args.m).map_err(Failure::Domain)?
    } else {
        let (Some(kind), Some(text)) = (args.dist, &args.sigma2) else {
            return Err(usage(
                "provide either --samples FILE or both --dist and --sigma2",
            ));
        };
        let s2 = parse_sigma2(text)?;
        match kind {
            DistKind::Gaussian => gaussian_even_moments(args.m, &s2),
            DistKind::Uniform => uniform_even_moments(args.m, &s2),
        }
        .map_err(Failure::Domain)?
    };
    let value: Value =
        serde_json::from_str(&sequence.to_json_string()).expect("canonical emission is valid");
    emit(cli.format, &value);
    Ok(())
}
