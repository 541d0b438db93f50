//! Command-line frontend: argument parsing, dispatch and record output.

mod commands;
pub mod record;

use std::ffi::OsString;
use std::fmt;
use std::fs::File;
use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use littlewood_core::montecarlo::Event;
use littlewood_core::{Alphabet, CoeffDist, Sign};
use num_rational::BigRational;
use serde::{Serialize, Serializer};

pub use record::{Format, Record};

/// Inclusive integer range `start:stop:step`, or a single value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NRange {
    pub start: usize,
    pub stop: usize,
    pub step: usize,
}

impl NRange {
    pub fn values(&self) -> Vec<usize> {
        (self.start..=self.stop).step_by(self.step).collect()
    }
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("{t:?} is not a nonnegative integer"));
        let parts: Vec<&str> = s.split(':').collect();
        let (start, stop, step) = match parts.as_slice() {
            [a] => (num(a)?, num(a)?, 1),
            [a, b] => (num(a)?, num(b)?, 1),
            [a, b, c] => (num(a)?, num(b)?, num(c)?),
            _ => return Err(format!("range {s:?} must be N or START:STOP[:STEP]")),
        };
        if step == 0 {
            return Err("range step must be positive".into());
        }
        if stop < start {
            return Err(format!("range {s:?} is empty: stop < start"));
        }
        Ok(Self { start, stop, step })
    }
}

impl fmt::Display for NRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}

fn as_display<T: fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn parse_dist(s: &str) -> Result<CoeffDist, String> {
    s.parse().map_err(|e: littlewood_core::Error| e.to_string())
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let bad = || format!("cannot parse {s:?} as a rational p/q");
    let (n, d) = s.trim().split_once('/').unwrap_or((s.trim(), "1"));
    let n = n.trim().parse::<num_bigint::BigInt>().map_err(|_| bad())?;
    let d = d.trim().parse::<num_bigint::BigInt>().map_err(|_| bad())?;
    if num_traits::Zero::is_zero(&d) {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Comma-separated integers, as one argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntList(pub Vec<i64>);

impl FromStr for IntList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| format!("{t:?} is not an integer")))
            .collect::<Result<_, _>>()
            .map(IntList)
    }
}

impl fmt::Display for IntList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Parser, Debug)]
#[command(name = "littlewood", version, about = "Double-root probabilities of random {-1,0,1} polynomials")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json-lines")]
    pub format: Format,
    /// Write records here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, env = "LITTLEWOOD_THREADS", default_value_t = 0)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exhaustive repeated-root census over all coefficient vectors.
    Census(CensusArgs),
    /// Number of +-1 words of length m with zero sum and zero first moment.
    Snull(SnullArgs),
    /// Exact rational probabilities.
    #[command(subcommand)]
    Exact(ExactCommand),
    /// The L_n / n^2 asymptotic law.
    Asym(DistRangeArgs),
    /// Fourier inversion of the (P(-1), P'(-1)) characteristic function.
    Invert(InvertArgs),
    /// Exact mean and covariance of (P(e), P'(e)).
    Moments(MomentsArgs),
    /// Seeded Monte Carlo estimate with a Wilson interval.
    Mc(McArgs),
    /// Closed-form bounds.
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Minimal polynomials with all conjugates inside |z| < 2.
    Minpolys(MinpolysArgs),
    /// Search for repeated roots that are not roots of unity.
    Hunt(HuntArgs),
    /// Exact, asymptotic, inversion and Monte Carlo side by side.
    Report(ReportArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct CensusArgs {
    /// Degree or degree range START:STOP[:STEP] (inclusive).
    #[arg(long)]
    #[serde(serialize_with = "as_display")]
    pub n: NRange,
    #[arg(long, default_value = "pm1")]
    #[serde(serialize_with = "as_display")]
    pub alphabet: Alphabet,
    /// Largest number of vectors to enumerate (default 2^26 for pm1, 3^16 for ternary).
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
pub struct SnullArgs {
    /// Word length or range.
    #[arg(long)]
    #[serde(serialize_with = "as_display")]
    pub m: NRange,
}

#[derive(Args, Debug, Serialize)]
pub struct DistRangeArgs {
    #[arg(long)]
    #[serde(serialize_with = "as_display")]
    pub n: NRange,
    /// Coefficient law p_minus,p_zero,p_plus as exact rationals.
    #[arg(long, default_value = "1/2,0,1/2", value_parser = parse_dist)]
    #[serde(serialize_with = "as_display")]
    pub dist: CoeffDist,
}

#[derive(Subcommand, Debug)]
pub enum ExactCommand {
    /// P(double root at -1, 0 or +1).
    Union(DistRangeArgs),
    /// P(P(e) = a, P'(e) = b).
    Joint(JointArgs),
    /// Largest atom of sum w_j xi_j for weights 1..N (or --weights).
    Atom(AtomArgs),
    /// P(P'(i) = 0).
    DerivI(DistRangeArgs),
    /// P(P(a) = 0) for an integer a.
    RootAt(RootAtArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct JointArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub base: DistRangeArgs,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    #[serde(serialize_with = "as_display")]
    pub sign: Sign,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub a: i64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub b: i64,
}

#[derive(Args, Debug, Serialize)]
pub struct AtomArgs {
    /// Use weights 1..N for each N in this range.
    #[arg(long, conflicts_with = "weights", required_unless_present = "weights")]
    #[serde(serialize_with = "opt_display")]
    pub upto: Option<NRange>,
    /// Explicit distinct weights, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(serialize_with = "opt_display")]
    pub weights: Option<IntList>,
    #[arg(long, default_value = "1/2,0,1/2", value_parser = parse_dist)]
    #[serde(serialize_with = "as_display")]
    pub dist: CoeffDist,
}

fn opt_display<T: fmt::Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

#[derive(Args, Debug, Serialize)]
pub struct RootAtArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub base: DistRangeArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub a: i64,
}

#[derive(Args, Debug, Serialize)]
pub struct InvertArgs {
    /// Degrees with 4 | n + 1.
    #[arg(long)]
    #[serde(serialize_with = "as_display")]
    pub n: NRange,
    /// P(xi = +1) for coefficients on {-1, +1}, as a rational.
    #[arg(long, default_value = "1/2", value_parser = parse_rational)]
    #[serde(serialize_with = "as_display")]
    pub p: BigRational,
    /// Grid points in the first variable (default: smallest exact grid).
    #[arg(long)]
    pub grid1: Option<usize>,
    #[arg(long)]
    pub grid2: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
pub struct MomentsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub base: DistRangeArgs,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    #[serde(serialize_with = "as_display")]
    pub sign: Sign,
}

#[derive(Args, Debug, Serialize)]
pub struct McArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub base: DistRangeArgs,
    /// double_root, double_at_pm1 or root_at_integer(A).
    #[arg(long, default_value = "double_root")]
    #[serde(serialize_with = "as_display")]
    pub event: Event,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum BoundsCommand {
    /// Jensen bound on roots of modulus at least 3/2.
    Jensen(JensenArgs),
    /// Square divisors k^2 | P(3) with k >= B.
    P3(P3Args),
    /// (C / floor(n/k))^(3d/2) for roots of unity of order k.
    Unity(UnityArgs),
    /// exp(-n log 3 / (2 j0)) for a root of the given modulus.
    Offcircle(OffcircleArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct JensenArgs {
    #[arg(long, default_value_t = 0.82)]
    pub r: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct P3Args {
    /// Coefficients c0,c1,..,cn of one polynomial; without it, random
    /// polynomials of degree --n are drawn from --dist.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(serialize_with = "opt_display")]
    pub coeffs: Option<IntList>,
    #[arg(long, default_value_t = 60)]
    pub n: usize,
    #[arg(long, default_value = "1/3,1/3,1/3", value_parser = parse_dist)]
    #[serde(serialize_with = "as_display")]
    pub dist: CoeffDist,
    #[arg(long = "b", default_value_t = 2)]
    pub b: u64,
    #[arg(long, default_value_t = 10_000)]
    pub k_max: u64,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct UnityArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub k: u64,
    #[arg(long)]
    pub d: u64,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct OffcircleArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub modulus: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct MinpolysArgs {
    /// Degree or range, within 1..=4.
    #[arg(long, default_value = "1:4")]
    #[serde(serialize_with = "as_display")]
    pub d: NRange,
    /// Constant c' of the diagnostic Mahler-measure floor.
    #[arg(long, default_value_t = 0.01)]
    pub c_prime: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HuntMode {
    Exhaustive,
    Random,
}

#[derive(Args, Debug, Serialize)]
pub struct HuntArgs {
    #[arg(long)]
    #[serde(serialize_with = "as_display")]
    pub n: NRange,
    #[arg(long, value_enum, default_value = "exhaustive")]
    pub mode: HuntMode,
    /// Alphabet for exhaustive mode.
    #[arg(long, default_value = "pm1")]
    #[serde(serialize_with = "as_display")]
    pub alphabet: Alphabet,
    /// Coefficient law for random mode.
    #[arg(long, default_value = "1/2,0,1/2", value_parser = parse_dist)]
    #[serde(serialize_with = "as_display")]
    pub dist: CoeffDist,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
pub struct ReportArgs {
    #[arg(long, default_value = "3:199:4")]
    #[serde(serialize_with = "as_display")]
    pub n: NRange,
    #[arg(long, default_value = "1/2,0,1/2", value_parser = parse_dist)]
    #[serde(serialize_with = "as_display")]
    pub dist: CoeffDist,
    /// Monte Carlo trials per degree (0 skips the estimate).
    #[arg(long, default_value_t = 0)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest degree for Fourier inversion.
    #[arg(long, default_value_t = 103)]
    pub invert_max: usize,
}

/// Failure of a parsed command, reported with exit code 1.
#[derive(Debug)]
pub struct CommandError(pub String);

impl From<littlewood_core::Error> for CommandError {
    fn from(e: littlewood_core::Error) -> Self {
        Self(e.to_string())
    }
}

impl From<std::io::Error> for CommandError {
    fn from(e: std::io::Error) -> Self {
        Self(format!("cannot write output: {e}"))
    }
}

/// Parse `args` (program name first), run the command and write records to
/// `out` (or `--out`). Returns the process exit code: 0 on success, 2 on a
/// usage error and 1 when the computation fails.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start {} threads: {e}", cli.threads);
            return 1;
        }
    };
    let result = pool.install(|| commands::dispatch(&cli.command));
    let records = match result {
        Ok(r) => r,
        Err(CommandError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return 1;
        }
    };
    let written = match &cli.out {
        Some(path) => File::create(path).and_then(|mut f| record::write_records(&mut f, cli.format, &records)),
        None => record::write_records(out, cli.format, &records),
    };
    match written {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: cannot write output: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!("5".parse::<NRange>().unwrap().values(), vec![5]);
        assert_eq!("3:15:4".parse::<NRange>().unwrap().values(), vec![3, 7, 11, 15]);
        assert_eq!("3:14:4".parse::<NRange>().unwrap().values(), vec![3, 7, 11]);
        assert_eq!("1:3".parse::<NRange>().unwrap().values(), vec![1, 2, 3]);
        assert!("3:1".parse::<NRange>().is_err());
        assert!("1:5:0".parse::<NRange>().is_err());
        assert!("x".parse::<NRange>().is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("2/6").unwrap(), BigRational::new(1.into(), 3.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a").is_err());
    }
}
