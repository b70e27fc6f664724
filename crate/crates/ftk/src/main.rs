//! Command-line front end: unimodal counts (exact and via the convergent
//! formula), the truncation table for the false-part coefficients, and seeded
//! verification suites for the transformation laws.
//!
//! Output is JSON lines by default (one record per invocation) or CSV with
//! `--format csv`. Exit codes: 0 success, 2 precondition violation,
//! 3 verification failure, 4 numerical non-convergence.

use std::collections::BTreeMap;
use std::io::Write as _;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use false_theta::modular::SL2Z;
use false_theta::numeric::ComplexValue;
use false_theta::qseries::{coeffs_f, unimodal_count};
use false_theta::rademacher::{term_breakdown, u_estimate, u_rademacher, RademacherConfig};
use false_theta::theta::{
    quantum_residual, selfdual_residual, verify_elliptic_shift, verify_jacobi_s, verify_jacobi_t,
    verify_lemma41, FalseThetaParams, LatticePair,
};

const SCHEMA_VERSION: u32 = 1;

const EXIT_PRECONDITION: i32 = 2;
const EXIT_VERIFICATION: i32 = 3;
const EXIT_NONCONVERGENCE: i32 = 4;

#[derive(Parser)]
#[command(name = "ftk", version, about = "False theta toolkit: unimodal counts and modular-law checks")]
struct Cli {
    /// Output format for records.
    #[arg(long, global = true, value_enum, default_value = "json", env = "FTK_FORMAT")]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count unimodal sequences of size n.
    Unimodal {
        /// Sequence size (must be >= 1).
        #[arg(long, env = "FTK_N")]
        n: u64,
        /// exact: integer q-series; rademacher: truncated convergent formula;
        /// both: run both and assert agreement.
        #[arg(long, value_enum, default_value = "both", env = "FTK_MODE")]
        mode: Mode,
        /// Number of terms retained in the convergent formula.
        #[arg(long, default_value_t = 20, env = "FTK_KMAX")]
        kmax: usize,
    },
    /// False-part coefficient table: rows n in {0,7,9,10,15,19,20}, one
    /// column per truncation level, plus the exact integer column.
    Table1 {
        /// Comma-separated truncation levels.
        #[arg(long, value_delimiter = ',', default_values_t = vec![1usize, 2, 3, 4, 20], env = "FTK_KMAX_LIST")]
        kmax_list: Vec<usize>,
    },
    /// Run a seeded verification suite and report per-case residuals.
    Verify {
        #[arg(long, value_enum, env = "FTK_SUITE")]
        suite: Suite,
        /// Seed for the case generator; fixed seed gives identical cases.
        #[arg(long, default_value_t = 1, env = "FTK_SEED")]
        seed: u64,
        /// Number of cases to run.
        #[arg(long, default_value_t = 8, env = "FTK_COUNT")]
        count: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Rademacher,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Jacobi,
    Quantum,
    Lemma41,
    Selfdual,
}

/// One machine-readable result record.
#[derive(Serialize)]
struct OutputRecord {
    schema_version: u32,
    command: String,
    inputs: BTreeMap<String, String>,
    /// Named values as decimal strings (shortest round-trip form, lossless).
    values: Vec<NamedValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residuals: Option<Vec<ResidualEntry>>,
    elapsed_ms: u64,
}

#[derive(Serialize)]
struct NamedValue {
    name: String,
    value: String,
}

#[derive(Serialize)]
struct ResidualEntry {
    case: String,
    residual: String,
    threshold: String,
    pass: bool,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn precondition(msg: impl Into<String>) -> Self {
        Self { code: EXIT_PRECONDITION, message: msg.into() }
    }

    fn verification(msg: impl Into<String>) -> Self {
        Self { code: EXIT_VERIFICATION, message: msg.into() }
    }
}

impl From<false_theta::Error> for Failure {
    fn from(e: false_theta::Error) -> Self {
        use false_theta::Error::*;
        let code = match e {
            Domain(_) | BranchCut(_) => EXIT_PRECONDITION,
            NonConvergence(_) | TailBound(_) | Range(_) | CostGuard(_) => EXIT_NONCONVERGENCE,
        };
        Self { code, message: e.to_string() }
    }
}

fn fmt_f64(x: f64) -> String {
    // Rust's default float formatting is the shortest string that parses
    // back to the same f64, so this round-trips losslessly.
    format!("{x}")
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = match &cli.cmd {
        Cmd::Unimodal { n, mode, kmax } => run_unimodal(*n, *mode, *kmax),
        Cmd::Table1 { kmax_list } => run_table1(kmax_list),
        Cmd::Verify { suite, seed, count } => run_verify(*suite, *seed, *count),
    };
    match result {
        Ok(mut record) => {
            record.elapsed_ms = started.elapsed().as_millis() as u64;
            let failed = record
                .residuals
                .as_ref()
                .map(|rs| rs.iter().any(|r| !r.pass))
                .unwrap_or(false);
            emit(&record, cli.format);
            if failed {
                eprintln!("ftk: verification failure: at least one residual exceeds its threshold");
                std::process::exit(EXIT_VERIFICATION);
            }
        }
        Err(f) => {
            eprintln!("ftk: {}", f.message);
            std::process::exit(f.code);
        }
    }
}

fn emit(record: &OutputRecord, format: Format) {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => {
            let line = serde_json::to_string(record).expect("record serialization cannot fail");
            writeln!(out, "{line}").expect("stdout write failed");
        }
        Format::Csv => {
            writeln!(out, "name,value").expect("stdout write failed");
            for v in &record.values {
                writeln!(out, "{},{}", v.name, v.value).expect("stdout write failed");
            }
            if let Some(rs) = &record.residuals {
                writeln!(out, "case,residual,threshold,pass").expect("stdout write failed");
                for r in rs {
                    writeln!(out, "{},{},{},{}", r.case, r.residual, r.threshold, r.pass)
                        .expect("stdout write failed");
                }
            }
        }
    }
}

fn run_unimodal(n: u64, mode: Mode, kmax: usize) -> Result<OutputRecord, Failure> {
    if n < 1 {
        return Err(Failure::precondition(
            "usage error: --n must be >= 1 (the generating function forces u(0) = 0)",
        ));
    }
    let mut inputs = BTreeMap::new();
    inputs.insert("n".into(), n.to_string());
    inputs.insert(
        "mode".into(),
        match mode {
            Mode::Exact => "exact",
            Mode::Rademacher => "rademacher",
            Mode::Both => "both",
        }
        .to_string(),
    );
    inputs.insert("kmax".into(), kmax.to_string());
    let cfg = RademacherConfig { kmax, ..RademacherConfig::default() };
    let mut values = Vec::new();
    let exact = match mode {
        Mode::Exact | Mode::Both => {
            let e = unimodal_count(n as usize)?;
            values.push(NamedValue { name: "exact".into(), value: e.to_string() });
            Some(e)
        }
        Mode::Rademacher => None,
    };
    if matches!(mode, Mode::Rademacher | Mode::Both) {
        let est = u_estimate(n, &cfg)?;
        let rounded = u_rademacher(n, &cfg)?;
        values.push(NamedValue { name: "estimate".into(), value: fmt_f64(est) });
        values.push(NamedValue { name: "rounded".into(), value: rounded.to_string() });
        if let Some(e) = exact {
            if e != rounded {
                return Err(Failure::verification(format!(
                    "exact count {e} disagrees with rounded formula value {rounded} (estimate {est})"
                )));
            }
            values.push(NamedValue { name: "agreement".into(), value: "true".into() });
        }
    }
    Ok(OutputRecord {
        schema_version: SCHEMA_VERSION,
        command: "unimodal".into(),
        inputs,
        values,
        residuals: None,
        elapsed_ms: 0,
    })
}

const TABLE_ROWS: [u64; 7] = [0, 7, 9, 10, 15, 19, 20];

fn run_table1(kmax_list: &[usize]) -> Result<OutputRecord, Failure> {
    if kmax_list.is_empty() || kmax_list.iter().any(|&k| k < 1) {
        return Err(Failure::precondition("--kmax-list entries must be >= 1"));
    }
    let mut inputs = BTreeMap::new();
    inputs.insert(
        "kmax_list".into(),
        kmax_list.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(","),
    );
    let max_k = *kmax_list.iter().max().expect("nonempty list");
    let strip = coeffs_f(*TABLE_ROWS.last().expect("nonempty rows") as usize + 1)?;
    let cfg = RademacherConfig { kmax: max_k, ..RademacherConfig::default() };
    let mut values = Vec::new();
    for &n in &TABLE_ROWS {
        values.push(NamedValue {
            name: format!("alpha_f[n={n}][exact]"),
            value: strip.coeff(n as usize).to_string(),
        });
        let terms = term_breakdown(n, &cfg)?;
        // prefix sums of the per-k terms give every requested truncation
        // level from a single pass
        let mut prefix = Vec::with_capacity(max_k);
        let mut acc = 0.0;
        for t in &terms {
            acc += t.false_term;
            prefix.push(acc);
        }
        for &k in kmax_list {
            values.push(NamedValue {
                name: format!("alpha_f[n={n}][kmax={k}]"),
                value: fmt_f64(prefix[k - 1]),
            });
        }
    }
    Ok(OutputRecord {
        schema_version: SCHEMA_VERSION,
        command: "table1".into(),
        inputs,
        values,
        residuals: None,
        elapsed_ms: 0,
    })
}

fn run_verify(suite: Suite, seed: u64, count: usize) -> Result<OutputRecord, Failure> {
    let mut inputs = BTreeMap::new();
    inputs.insert(
        "suite".into(),
        match suite {
            Suite::Jacobi => "jacobi",
            Suite::Quantum => "quantum",
            Suite::Lemma41 => "lemma41",
            Suite::Selfdual => "selfdual",
        }
        .to_string(),
    );
    inputs.insert("seed".into(), seed.to_string());
    inputs.insert("count".into(), count.to_string());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut residuals = Vec::with_capacity(count);
    for i in 0..count {
        let (label, residual, threshold) = match suite {
            Suite::Jacobi => jacobi_case(i, &mut rng)?,
            Suite::Quantum => quantum_case(i, &mut rng)?,
            Suite::Lemma41 => lemma41_case(i, &mut rng)?,
            Suite::Selfdual => selfdual_case(i, &mut rng)?,
        };
        residuals.push(ResidualEntry {
            case: format!("{i}:{label}"),
            residual: fmt_f64(residual),
            threshold: fmt_f64(threshold),
            pass: residual <= threshold,
        });
    }
    Ok(OutputRecord {
        schema_version: SCHEMA_VERSION,
        command: "verify".into(),
        inputs,
        values: Vec::new(),
        residuals: Some(residuals),
        elapsed_ms: 0,
    })
}

fn rank1_lattice() -> LatticePair {
    LatticePair::new(vec![vec![1]], vec![1], vec![1.0], vec![BigRational::from_integer(0.into())])
        .expect("fixed rank-1 lattice data is valid")
}

fn rank2_lattice() -> LatticePair {
    LatticePair::new(
        vec![vec![2, 1], vec![1, 2]],
        vec![0, 0],
        vec![1.0 / 2f64.sqrt(), 0.0],
        vec![BigRational::from_integer(0.into()), BigRational::from_integer(0.into())],
    )
    .expect("fixed rank-2 lattice data is valid")
}

fn random_tau(rng: &mut ChaCha8Rng) -> ComplexValue {
    ComplexValue::new(rng.gen_range(-0.45..0.45), rng.gen_range(0.5..1.2))
}

fn random_w_above(tau: ComplexValue, rng: &mut ChaCha8Rng) -> ComplexValue {
    ComplexValue::new(tau.re + rng.gen_range(0.1..0.5), rng.gen_range(2.0..4.0))
}

fn jacobi_case(i: usize, rng: &mut ChaCha8Rng) -> Result<(String, f64, f64), Failure> {
    let rank2 = i % 2 == 1;
    let (lat, threshold) = if rank2 { (rank2_lattice(), 1e-6) } else { (rank1_lattice(), 1e-8) };
    let rank = lat.rank();
    let tau = random_tau(rng);
    let w = random_w_above(tau, rng);
    let z: Vec<ComplexValue> = (0..rank)
        .map(|_| ComplexValue::new(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3)))
        .collect();
    let law = (i / 2) % 3;
    let (label, residual) = match law {
        0 => ("jacobi-T", verify_jacobi_t(&lat, &z, tau, w, 1e-10)?),
        1 => ("jacobi-S", verify_jacobi_s(&lat, &z, tau, w, 1e-10)?),
        _ => {
            let m: Vec<i64> = (0..rank).map(|_| rng.gen_range(-1..=1)).collect();
            let r: Vec<i64> = (0..rank).map(|_| rng.gen_range(-1..=1)).collect();
            ("elliptic-shift", verify_elliptic_shift(&lat, &z, tau, w, &m, &r, 1e-10)?)
        }
    };
    Ok((format!("{label}-rank{rank}"), residual, threshold))
}

fn quantum_case(i: usize, rng: &mut ChaCha8Rng) -> Result<(String, f64, f64), Failure> {
    let (nn, j) = [(2, 1), (3, 1), (3, 2)][i % 3];
    let matrices = [
        SL2Z::new(0, -1, 1, 0).expect("det 1"),
        SL2Z::new(1, 0, 1, 1).expect("det 1"),
        SL2Z::new(2, 1, 1, 1).expect("det 1"),
    ];
    let m = &matrices[(i / 3) % matrices.len()];
    let p = FalseThetaParams::new(j, nn)?;
    let mut tau = ComplexValue::new(rng.gen_range(-0.45..0.45), rng.gen_range(0.25..0.6));
    // keep the vertical integration path clear of the branch cut that
    // emanates from the cusp -d/c
    let cusp = -(m.d as f64) / (m.c as f64);
    if (tau.re - cusp).abs() < 0.05 {
        tau.re += 0.1;
    }
    let residual = quantum_residual(p, m, tau, 1e-8)?;
    Ok((
        format!("quantum-N{nn}-j{j}-M{}.{}.{}.{}", m.a, m.b, m.c, m.d),
        residual,
        1e-6,
    ))
}

fn lemma41_case(i: usize, rng: &mut ChaCha8Rng) -> Result<(String, f64, f64), Failure> {
    let matrices = [
        SL2Z::new(0, -1, 1, 0).expect("det 1"),
        SL2Z::new(1, 0, 1, 1).expect("det 1"),
        SL2Z::new(1, -1, 2, -1).expect("det 1"),
    ];
    let m = &matrices[i % matrices.len()];
    let tau = random_tau(rng);
    let residual = verify_lemma41(m, tau, 1e-9)?;
    Ok((format!("lemma41-M{}.{}.{}.{}", m.a, m.b, m.c, m.d), residual, 1e-7))
}

fn selfdual_case(i: usize, rng: &mut ChaCha8Rng) -> Result<(String, f64, f64), Failure> {
    // the duality swaps (tau, w) with (-1/tau, -1/w), so both stay on the
    // positive imaginary axis
    let tau = ComplexValue::new(0.0, rng.gen_range(0.4..0.9));
    let w = ComplexValue::new(0.0, rng.gen_range(1.5..3.0));
    let x = rng.gen_range(-1.5..1.5);
    let residual = selfdual_residual(tau, w, x, 1e-9)?;
    Ok((format!("selfdual-case{i}"), residual, 1e-6))
}
