//! Command-line surface. Exit codes: 0 success, 1 decode failure or
//! ambiguity, 2 invalid input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{asymptotic_radius, levenshtein_n, parse_decimal, rational, RadiusMode};
use crate::channel::{adversarial_core, format_read_set, parse_read_set, ChannelConfig, GenMode};
use crate::code::{RsCode, Word};
use crate::error::{Error, Result};
use crate::field::{Field, Symbol};
use crate::reconstruct::{
    brute_force_reconstruct, reconstruct_max_pair, reconstruct_two_reads,
    single_read_list_reconstruct, ReadSet, ReconstructionReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DECODE_FAILURE: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "rs-recon",
    version,
    about = "Sequence reconstruction for Reed-Solomon codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Largest intersection of two radius-t balls whose centres are at distance d.
    Nchan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        d: usize,
    },
    /// Asymptotic decoding radius as a function of the rate, as CSV.
    Radius {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, default_value = "0")]
        epsilon: String,
        #[arg(long, default_value_t = 100)]
        steps: u32,
    },
    /// One end-to-end reconstruction trial, reported as JSON.
    Simulate(SimulateArgs),
    /// Phase timings of two-read reconstruction over a sweep of read counts.
    Bench(BenchArgs),
    /// Encodes a message.
    Encode {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Evaluation points as comma-separated indices (default 0..n).
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        message: String,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ModeArg {
    Linear,
    Quadratic,
    Johnson,
}

impl From<ModeArg> for RadiusMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Linear => RadiusMode::Linear,
            ModeArg::Quadratic => RadiusMode::Quadratic,
            ModeArg::Johnson => RadiusMode::Johnson,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Decoder {
    TwoReads,
    MaxPair,
    Brute,
    SingleList,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum GenArg {
    Random,
    Adversarial,
    Witness,
}

impl From<GenArg> for GenMode {
    fn from(g: GenArg) -> Self {
        match g {
            GenArg::Random => GenMode::Random,
            GenArg::Adversarial => GenMode::Adversarial,
            GenArg::Witness => GenMode::Witness,
        }
    }
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long, default_value_t = 1)]
    mu: u32,
    #[arg(long, value_enum, default_value = "two-reads")]
    decoder: Decoder,
    #[arg(long = "gen", value_enum, default_value = "random")]
    generator: GenArg,
    #[arg(long, default_value_t = 16)]
    reads: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Read set file to decode instead of generating one.
    #[arg(long = "in")]
    input: Option<std::path::PathBuf>,
    /// Writes the read set used to this file.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Random reads carry exactly t errors.
    #[arg(long)]
    exact_t: bool,
    /// Reports zero elapsed times so the output is byte-stable.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    t: usize,
    #[arg(long, default_value_t = 1)]
    mu: u32,
    #[arg(long, value_delimiter = ',', required = true)]
    reads_sweep: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Runs per sweep point; the median is reported.
    #[arg(long, default_value_t = 5)]
    repeats: u32,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct ElapsedMs {
    pub pair_selection: f64,
    pub interpolation: f64,
    pub factorization: f64,
    pub filter: f64,
    pub total: f64,
}

/// JSON output of `simulate`. Big integers are decimal strings.
#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct TrialReport {
    pub success: bool,
    pub decoded: Option<String>,
    pub strategy: String,
    pub pair_distance: Option<usize>,
    pub cost: String,
    pub score: Option<String>,
    pub threshold_squared: String,
    pub list_size: usize,
    pub elapsed_ms: ElapsedMs,
    pub seed: u64,
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

impl TrialReport {
    pub fn new(report: &ReconstructionReport, success: bool, seed: u64, timing: bool) -> Self {
        let tm = &report.timings;
        let t = |d: Duration| if timing { ms(d) } else { 0.0 };
        TrialReport {
            success,
            decoded: report.decoded.as_ref().map(|w| w.join(" ")),
            strategy: report.strategy.as_str().to_string(),
            pair_distance: report.pair_distance,
            cost: report.cost.to_string(),
            score: report.score.as_ref().map(BigUint::to_string),
            threshold_squared: report.threshold_squared.to_string(),
            list_size: report.list_size,
            elapsed_ms: ElapsedMs {
                pair_selection: t(tm.pair_selection),
                interpolation: t(tm.interpolation),
                factorization: t(tm.factorization),
                filter: t(tm.filter),
                total: t(tm.total),
            },
            seed,
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_BAD_INPUT
            } else {
                EXIT_OK
            };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Nchan { n, q, t, d } => cmd_nchan(n, q, t, d).map(|s| (s, EXIT_OK)),
        Command::Radius {
            mode,
            epsilon,
            steps,
        } => cmd_radius(mode.into(), &epsilon, steps).map(|s| (s, EXIT_OK)),
        Command::Simulate(a) => cmd_simulate(&a),
        Command::Bench(a) => cmd_bench(&a).map(|s| (s, EXIT_OK)),
        Command::Encode {
            q,
            n,
            k,
            alpha,
            message,
        } => cmd_encode(q, n, k, alpha.as_deref(), &message).map(|s| (s, EXIT_OK)),
    };
    match result {
        Ok((text, code)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_BAD_INPUT;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_BAD_INPUT
        }
    }
}

pub fn cmd_nchan(n: usize, q: u64, t: usize, d: usize) -> Result<String> {
    if q < 2 || n == 0 || d == 0 || d > n || t > n {
        return Err(Error::InvalidParameter(format!(
            "need q >= 2 and 1 <= d <= n, t <= n; got n = {n}, q = {q}, t = {t}, d = {d}"
        )));
    }
    Ok(format!("{}\n", levenshtein_n(n, q, t, d)))
}

/// Nonnegative `x` rounded half-up to `places` decimals.
fn decimal(x: &BigRational, places: usize) -> String {
    let scale = BigUint::from(10u32).pow(places as u32);
    let scaled = x * BigRational::from_integer(scale.clone().into());
    let rounded = (scaled + rational(1, 2)).floor().to_integer();
    let (whole, frac) = rounded.magnitude().div_rem(&scale);
    format!("{whole}.{frac:0>places$}", frac = frac.to_string())
}

pub fn cmd_radius(mode: RadiusMode, epsilon: &str, steps: u32) -> Result<String> {
    let eps = parse_decimal(epsilon)?;
    if eps < BigRational::zero() {
        return Err(Error::InvalidParameter("epsilon must be >= 0".into()));
    }
    if steps < 2 {
        return Err(Error::InvalidParameter("steps must be >= 2".into()));
    }
    let mut out = String::from("R,rho\n");
    for i in 1..steps {
        let rate = rational(i as i64, steps as i64);
        let rho = asymptotic_radius(&rate, &eps, mode)?;
        let _ = writeln!(out, "{},{}", decimal(&rate, 9), decimal(&rho, 9));
    }
    Ok(out)
}

fn parse_indices(csv: &str, what: &str) -> Result<Vec<u32>> {
    csv.split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|e| Error::InvalidParameter(format!("{what}: {s:?}: {e}")))
        })
        .collect()
}

fn build_code(q: u64, n: usize, k: usize, alpha: Option<&[u32]>) -> Result<RsCode> {
    let field = Field::new(q)?;
    match alpha {
        Some(a) => {
            let pts = a
                .iter()
                .map(|&i| field.element(i))
                .collect::<Result<Vec<_>>>()?;
            RsCode::new(field, n, k, pts)
        }
        None => RsCode::with_default_points(field, n, k),
    }
}

pub fn cmd_encode(
    q: u64,
    n: usize,
    k: usize,
    alpha: Option<&str>,
    message: &str,
) -> Result<String> {
    let alpha = alpha.map(|a| parse_indices(a, "alpha")).transpose()?;
    let code = build_code(q, n, k, alpha.as_deref())?;
    let msg = parse_indices(message, "message")?
        .into_iter()
        .map(|i| code.field().element(i))
        .collect::<Result<Vec<_>>>()?;
    Ok(format!("{}\n", code.encode(&msg)?.join(",")))
}

fn random_message<R: Rng>(rng: &mut R, code: &RsCode) -> Vec<Symbol> {
    let q = code.field().q();
    (0..code.k())
        .map(|_| Symbol::from_index(rng.gen_range(0..q)))
        .collect()
}

fn decode(code: &RsCode, y: &ReadSet, decoder: Decoder, mu: u32) -> Result<ReconstructionReport> {
    match decoder {
        Decoder::TwoReads => reconstruct_two_reads(code, y, mu),
        Decoder::MaxPair => reconstruct_max_pair(code, y, mu),
        Decoder::Brute => brute_force_reconstruct(code, y),
        Decoder::SingleList => single_read_list_reconstruct(code, y, mu),
    }
}

fn io_err(path: &std::path::Path, e: std::io::Error) -> Error {
    Error::InvalidParameter(format!("{}: {e}", path.display()))
}

fn check_flag<T: PartialEq + std::fmt::Display>(
    name: &str,
    flag: Option<T>,
    file: T,
) -> Result<()> {
    match flag {
        Some(v) if v != file => Err(Error::InvalidParameter(format!(
            "--{name} {v} disagrees with the read set file ({file})"
        ))),
        _ => Ok(()),
    }
}

fn cmd_simulate(a: &SimulateArgs) -> Result<(String, i32)> {
    // transmitted codeword, when known
    let (code, y, sent) = match &a.input {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
            let file = parse_read_set(&text)?;
            check_flag("q", a.q, file.q)?;
            check_flag("n", a.n, file.reads.n())?;
            check_flag("t", a.t, file.reads.t())?;
            let code = build_code(file.q, file.reads.n(), a.k, None)?;
            (code, file.reads, None)
        }
        None => {
            let missing =
                |f: &str| Error::InvalidParameter(format!("--{f} is required without --in"));
            let q = a.q.ok_or_else(|| missing("q"))?;
            let n = a.n.ok_or_else(|| missing("n"))?;
            let t = a.t.ok_or_else(|| missing("t"))?;
            let code = build_code(q, n, a.k, None)?;
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            let c = match a.generator {
                GenArg::Adversarial => adversarial_core(&code, t)?.0,
                _ => code.encode(&random_message(&mut rng, &code))?,
            };
            let cfg = ChannelConfig {
                code: code.clone(),
                t,
                mode: a.generator.into(),
                count: a.reads,
                seed: rng.gen(),
                exact_t: a.exact_t,
            };
            let y = cfg.generate(&c)?;
            (code, y, Some(c))
        }
    };
    if let Some(path) = &a.out {
        let q = code.field().q() as u64;
        std::fs::write(path, format_read_set(q, &y)).map_err(|e| io_err(path, e))?;
    }
    let report = decode(&code, &y, a.decoder, a.mu)?;
    let success = match (&sent, report.codeword()) {
        (Some(c), Ok(w)) => w == c,
        (None, Ok(_)) => true,
        (_, Err(_)) => false,
    };
    let trial = TrialReport::new(&report, success, a.seed, !a.no_timing);
    let json = serde_json::to_string_pretty(&trial).expect("report serializes");
    let code = if success {
        EXIT_OK
    } else {
        EXIT_DECODE_FAILURE
    };
    Ok((json + "\n", code))
}

/// One benchmark measurement.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub reads: usize,
    pub phase: &'static str,
    pub ms: f64,
    pub comparisons: u64,
    /// Candidates the filter checked.
    pub list_size: usize,
}

pub const BENCH_PHASES: [&str; 4] = ["pair_selection", "interpolation", "factorization", "filter"];

/// Times two-read reconstruction for each read count in `sweep` and
/// reports the median of `repeats` runs per phase. Repeats are interleaved
/// across the sweep so slow stretches of the machine hit every point alike.
/// Comparison counts do not vary between runs.
pub fn bench_rows(
    code: &RsCode,
    t: usize,
    mu: u32,
    sweep: &[usize],
    seed: u64,
    repeats: u32,
) -> Result<Vec<BenchRow>> {
    if sweep.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(
            "the sweep must be strictly ascending".into(),
        ));
    }
    if repeats == 0 {
        return Err(Error::InvalidParameter("repeats must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sets = Vec::with_capacity(sweep.len());
    for &count in sweep {
        let c = code.encode(&random_message(&mut rng, code))?;
        let cfg = ChannelConfig {
            code: code.clone(),
            t,
            mode: GenMode::Random,
            count,
            seed: rng.gen(),
            exact_t: false,
        };
        sets.push(cfg.generate(&c)?);
    }
    // samples[point][phase][run]
    let mut samples = vec![[const { Vec::new() }; 4]; sweep.len()];
    let mut counts = vec![([0u64; 4], 0usize); sweep.len()];
    for _ in 0..repeats {
        for (i, y) in sets.iter().enumerate() {
            let r = reconstruct_two_reads(code, y, mu)?;
            let tm = &r.timings;
            let phases = [
                tm.pair_selection,
                tm.interpolation,
                tm.factorization,
                tm.filter,
            ];
            for (s, p) in samples[i].iter_mut().zip(phases) {
                s.push(p);
            }
            counts[i] = (
                [r.pair_comparisons, 0, 0, r.filter_comparisons],
                r.list_size,
            );
        }
    }
    let mut rows = Vec::new();
    for (i, &count) in sweep.iter().enumerate() {
        for (p, phase) in BENCH_PHASES.iter().enumerate() {
            let runs = &mut samples[i][p];
            runs.sort();
            rows.push(BenchRow {
                reads: count,
                phase,
                ms: ms(runs[runs.len() / 2]),
                comparisons: counts[i].0[p],
                list_size: counts[i].1,
            });
        }
    }
    Ok(rows)
}

fn cmd_bench(a: &BenchArgs) -> Result<String> {
    let code = build_code(a.q, a.n, a.k, None)?;
    let rows = bench_rows(&code, a.t, a.mu, &a.reads_sweep, a.seed, a.repeats)?;
    let mut out = String::from("N,phase,ms,comparisons\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{:.6},{}", r.reads, r.phase, r.ms, r.comparisons);
    }
    Ok(out)
}

/// Word from comma-separated indices, as printed by `encode`.
pub fn parse_word_csv(csv: &str) -> Result<Word> {
    Ok(Word::from_indices(&parse_indices(csv.trim(), "word")?))
}
