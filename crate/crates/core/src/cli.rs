//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification finds a mismatch or a
//! runtime failure occurs (I/O, internal disagreement), 2 on usage errors.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::criterion::{
    range::{check_range, exact_residues},
    residue_fast, trial_division, verify_range, wilson_test, Strategy, VerifyOptions,
    DEFAULT_EXACT_LIMIT,
};
use crate::error::Error;
use crate::parallel::map_chunks;
use crate::sequence::Generator;
use crate::valuation::{
    digit_sum, factorial_valuation_digits, factorial_valuation_recurrence, factorial_valuation_sum,
    PrimeBase,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable overriding the exact-arithmetic limit.
pub const EXACT_LIMIT_ENV: &str = "SCHULTE_EXACT_LIMIT";

/// Inclusive `lo:hi` range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InclusiveRange {
    pub lo: u64,
    pub hi: u64,
}

impl FromStr for InclusiveRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad range bound {x:?}: {e}"))
        };
        let range = InclusiveRange {
            lo: parse(lo)?,
            hi: parse(hi)?,
        };
        if range.lo > range.hi {
            return Err(format!("range {s} is empty (lo > hi)"));
        }
        Ok(range)
    }
}

impl fmt::Display for InclusiveRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum BenchStrategy {
    All,
    Exact,
    Fast,
    Trial,
    Wilson,
}

impl BenchStrategy {
    fn name(self) -> &'static str {
        match self {
            BenchStrategy::All => "all",
            BenchStrategy::Exact => "exact",
            BenchStrategy::Fast => "fast",
            BenchStrategy::Trial => "trial",
            BenchStrategy::Wilson => "wilson",
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "schulte",
    version,
    about = "Verify and benchmark the criterion n | 2*A(n-1) + 4 <=> n prime"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the criterion against trial division over a range.
    Verify(VerifyArgs),
    /// Print the exact term A(n).
    Term {
        n: u64,
    },
    /// Report v_p(n!) by all three Legendre forms, plus the base-p digit sum of n.
    Valuation {
        p: u64,
        n: u64,
    },
    /// Time the evaluation strategies over a range and emit CSV.
    Bench(BenchArgs),
    /// Write A(lo..=hi) in OEIS b-file format.
    ExportBfile(ExportArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Inclusive range lo:hi, lo >= 2.
    #[arg(long)]
    pub range: InclusiveRange,
    #[arg(long, value_enum, default_value_t = Strategy::Fast)]
    pub strategy: Strategy,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Inclusive range lo:hi, lo >= 2.
    #[arg(long)]
    pub range: InclusiveRange,
    #[arg(long, value_enum, default_value_t = BenchStrategy::All)]
    pub strategy: BenchStrategy,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    /// Inclusive range lo:hi, lo >= 1.
    #[arg(long)]
    pub range: InclusiveRange,
    /// Defaults to standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// A parsed command plus the environment-derived exact limit.
#[derive(Debug)]
pub struct RunConfig {
    pub command: Command,
    pub exact_limit: u64,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) => Failure::Runtime(e.to_string()),
            Error::Domain(_) | Error::ResourceLimit { .. } => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn parse_exact_limit(raw: Option<&str>) -> Result<u64, String> {
    match raw {
        None => Ok(DEFAULT_EXACT_LIMIT),
        Some(s) => match s.trim().parse::<u64>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(format!("{EXACT_LIMIT_ENV} must be a positive integer, got {s:?}")),
        },
    }
}

/// Parses `args` (including the program name) and runs the command.
/// `exact_limit_env` is the raw value of [`EXACT_LIMIT_ENV`], if set.
pub fn run<I, T>(args: I, exact_limit_env: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let exact_limit = match parse_exact_limit(exact_limit_env) {
        Ok(v) => v,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let config = RunConfig {
        command: cli.command,
        exact_limit,
    };
    match execute(&config, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            let _ = writeln!(err, "run `schulte --help` for usage");
            EXIT_USAGE
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILURE
        }
    }
}

fn execute(config: &RunConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    match &config.command {
        Command::Verify(args) => cmd_verify(args, config.exact_limit, out),
        Command::Term { n } => cmd_term(*n, config.exact_limit, out),
        Command::Valuation { p, n } => cmd_valuation(*p, *n, out),
        Command::Bench(args) => cmd_bench(args, config.exact_limit, out),
        Command::ExportBfile(args) => cmd_export_bfile(args, config.exact_limit, out),
    }
}

/// Runs `body` against either the named file or `out`.
fn with_sink(
    path: Option<&PathBuf>,
    out: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> Result<(), Failure>,
) -> Result<(), Failure> {
    match path {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| Failure::Runtime(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            body(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => {
            body(out)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn cmd_verify(args: &VerifyArgs, exact_limit: u64, out: &mut dyn Write) -> Result<i32, Failure> {
    let opts = VerifyOptions {
        exact_limit,
        workers: args.workers as usize,
    };
    let report = verify_range(args.range.lo, args.range.hi, args.strategy, &opts)?;
    with_sink(args.output.as_ref(), out, |w| {
        match args.format {
            Format::Csv => report.write_csv(w)?,
            Format::Text => report.write_text(w)?,
        }
        Ok(())
    })?;
    Ok(if report.is_clean() { EXIT_OK } else { EXIT_FAILURE })
}

fn cmd_term(n: u64, exact_limit: u64, out: &mut dyn Write) -> Result<i32, Failure> {
    let term = Generator::with_limit(exact_limit).term_product(n)?;
    writeln!(out, "{}", term.value)?;
    Ok(EXIT_OK)
}

fn cmd_valuation(p: u64, n: u64, out: &mut dyn Write) -> Result<i32, Failure> {
    let base = PrimeBase::new(p)?;
    let sum = factorial_valuation_sum(base, n).exponent;
    let recurrence = factorial_valuation_recurrence(base, n).exponent;
    let digits = factorial_valuation_digits(base, n).exponent;
    let s = digit_sum(p, n)?;
    writeln!(out, "v_{p}({n}!) legendre-sum {sum}")?;
    writeln!(out, "v_{p}({n}!) recurrence {recurrence}")?;
    writeln!(out, "v_{p}({n}!) digit-sum {digits}")?;
    writeln!(out, "s_{p}({n}) {s}")?;
    if sum != recurrence || sum != digits {
        return Err(Failure::Runtime(format!(
            "valuation forms disagree: sum={sum} recurrence={recurrence} digits={digits}"
        )));
    }
    Ok(EXIT_OK)
}

struct BenchRow {
    strategy: BenchStrategy,
    lo: u64,
    hi: u64,
    total_micros: u128,
}

fn time_strategy(
    strategy: BenchStrategy,
    lo: u64,
    hi: u64,
    workers: usize,
    exact_limit: u64,
) -> Result<BenchRow, Failure> {
    let start = Instant::now();
    let sink: Vec<u64> = match strategy {
        BenchStrategy::Fast => map_chunks(lo, hi, workers, |a, b| (a..=b).map(residue_fast).collect())?,
        BenchStrategy::Exact => map_chunks(lo, hi, workers, |a, b| exact_residues(a, b, exact_limit))?,
        BenchStrategy::Wilson => map_chunks(lo, hi, workers, |a, b| {
            (a..=b).map(|n| wilson_test(n).map(u64::from)).collect()
        })?,
        BenchStrategy::Trial => map_chunks(lo, hi, workers, |a, b| {
            (a..=b).map(|n| trial_division(n).map(u64::from)).collect()
        })?,
        BenchStrategy::All => unreachable!("expanded by the caller"),
    };
    std::hint::black_box(sink);
    Ok(BenchRow {
        strategy,
        lo,
        hi,
        total_micros: start.elapsed().as_micros(),
    })
}

fn cmd_bench(args: &BenchArgs, exact_limit: u64, out: &mut dyn Write) -> Result<i32, Failure> {
    let InclusiveRange { lo, hi } = args.range;
    let workers = args.workers as usize;
    check_range(lo, hi, Strategy::Fast, exact_limit)?;

    let mut plan = Vec::new();
    match args.strategy {
        BenchStrategy::All => {
            // The exact route only covers the part of the range inside the limit.
            for s in [BenchStrategy::Exact, BenchStrategy::Fast, BenchStrategy::Trial, BenchStrategy::Wilson] {
                match s {
                    BenchStrategy::Exact if lo > exact_limit => continue,
                    BenchStrategy::Exact => plan.push((s, lo, hi.min(exact_limit))),
                    _ => plan.push((s, lo, hi)),
                }
            }
        }
        BenchStrategy::Exact => {
            check_range(lo, hi, Strategy::Exact, exact_limit)?;
            plan.push((BenchStrategy::Exact, lo, hi));
        }
        s => plan.push((s, lo, hi)),
    }

    let rows = plan
        .into_iter()
        .map(|(s, a, b)| time_strategy(s, a, b, workers, exact_limit))
        .collect::<Result<Vec<_>, _>>()?;

    with_sink(args.output.as_ref(), out, |w| {
        writeln!(w, "strategy,range_lo,range_hi,total_micros,per_n_micros")?;
        for row in &rows {
            let count = (row.hi - row.lo + 1) as f64;
            writeln!(
                w,
                "{},{},{},{},{:.3}",
                row.strategy.name(),
                row.lo,
                row.hi,
                row.total_micros,
                row.total_micros as f64 / count
            )?;
        }
        Ok(())
    })?;
    Ok(EXIT_OK)
}

fn cmd_export_bfile(args: &ExportArgs, exact_limit: u64, out: &mut dyn Write) -> Result<i32, Failure> {
    let InclusiveRange { lo, hi } = args.range;
    if lo < 1 {
        return Err(Failure::Usage(format!("b-file range must start at 1 or above, got {lo}")));
    }
    let generator = Generator::with_limit(exact_limit);
    // Validate before touching the output file.
    generator.terms(lo, lo)?;
    if hi > exact_limit {
        return Err(Error::ResourceLimit {
            what: "sequence index",
            requested: hi,
            limit: exact_limit,
        }
        .into());
    }
    with_sink(args.output.as_ref(), out, |w| {
        generator.export_bfile(lo, hi, w).map_err(|e| match e {
            Error::Io(e) => Failure::Runtime(e.to_string()),
            other => other.into(),
        })?;
        Ok(())
    })?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str], env: Option<&str>) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("schulte").chain(args.iter().copied());
        let code = run(argv, env, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn range_parsing() {
        assert_eq!("2:100".parse::<InclusiveRange>().unwrap(), InclusiveRange { lo: 2, hi: 100 });
        for bad in ["2", "a:3", "5:4", "2:", ":3", "-1:4"] {
            assert!(bad.parse::<InclusiveRange>().is_err(), "{bad}");
        }
    }

    #[test]
    fn exact_limit_env() {
        assert_eq!(parse_exact_limit(None).unwrap(), DEFAULT_EXACT_LIMIT);
        assert_eq!(parse_exact_limit(Some("12")).unwrap(), 12);
        assert!(parse_exact_limit(Some("0")).is_err());
        assert!(parse_exact_limit(Some("x")).is_err());
        let (code, _, err) = run_capture(&["term", "3"], Some("nope"));
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains(EXACT_LIMIT_ENV));
        let (code, _, _) = run_capture(&["term", "13"], Some("12"));
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn term_and_valuation() {
        assert_eq!(run_capture(&["term", "6"], None), (0, "2700\n".into(), String::new()));
        let (code, out, _) = run_capture(&["valuation", "2", "10"], None);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "v_2(10!) legendre-sum 8\nv_2(10!) recurrence 8\nv_2(10!) digit-sum 8\ns_2(10) 2\n"
        );
        assert_eq!(run_capture(&["valuation", "4", "10"], None).0, EXIT_USAGE);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_capture(&[], None).0, EXIT_USAGE);
        assert_eq!(run_capture(&["verify"], None).0, EXIT_USAGE);
        assert_eq!(run_capture(&["verify", "--range", "2:10", "--workers", "0"], None).0, EXIT_USAGE);
        assert_eq!(run_capture(&["verify", "--range", "2:10", "--strategy", "slow"], None).0, EXIT_USAGE);
        let (code, out, _) = run_capture(&["--help"], None);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("verify"));
    }

    #[test]
    fn bench_plan_clamps_exact() {
        let (code, out, _) = run_capture(&["bench", "--range", "2:30"], Some("10"));
        assert_eq!(code, 0);
        let rows: Vec<&str> = out.lines().collect();
        assert_eq!(rows.len(), 5);
        assert!(rows[1].starts_with("exact,2,10,"));
        let (code, out, _) = run_capture(&["bench", "--range", "11:30"], Some("10"));
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 4);
        assert_eq!(run_capture(&["bench", "--range", "2:30", "--strategy", "exact"], Some("10")).0, EXIT_USAGE);
    }
}
