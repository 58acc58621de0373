//! Command-line front end.
//!
//! Exit codes: 0 success, 1 when `decompose` proves no distinct triple exists,
//! 2 usage error, 3 I/O or arithmetic failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand};

use crate::arith::is_prime;
use crate::oracle::{enumerate_three_term, OracleQuery};
use crate::sweep::{self, ReportFormat, Status, SweepConfig, SweepRecord};
use crate::theorem34::DEFAULT_K_BOUND;
use crate::two_term::solve_two_term;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_SOLUTION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "egyptian",
    version,
    about = "Decompose 4/n into three distinct unit fractions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve 4/n and report the construction used.
    Decompose {
        n: u128,
        #[arg(long, default_value_t = u128::from(DEFAULT_K_BOUND))]
        k_bound: u128,
        /// Print the record as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Closed-form two-term decomposition of q/p.
    TwoTerm { q: u128, p: u128 },
    /// Exhaustive three-term enumeration of a/n.
    #[command(group(ArgGroup::new("mode").args(["all", "count", "first"])))]
    Oracle {
        a: u128,
        n: u128,
        /// List every triple.
        #[arg(long)]
        all: bool,
        /// Print only the number of triples.
        #[arg(long)]
        count: bool,
        /// Print the lexicographically smallest triple (default).
        #[arg(long)]
        first: bool,
        /// Allow repeated denominators.
        #[arg(long)]
        allow_repeats: bool,
    },
    /// Solve every n in [start, end].
    Sweep {
        start: u128,
        end: u128,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Report destination; the report goes to stdout when omitted.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
        format: ReportFormat,
        #[arg(long, default_value_t = u128::from(DEFAULT_K_BOUND))]
        k_bound: u128,
    },
    /// Method histogram and hard-class count of a report.
    Stats { report: PathBuf },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, A>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILURE
        }
    }
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<sweep::SweepError> for Failure {
    fn from(e: sweep::SweepError) -> Self {
        match e {
            sweep::SweepError::InvalidConfig(msg) => Failure::Usage(msg),
            e => Failure::Runtime(e.to_string()),
        }
    }
}

fn runtime(e: impl std::fmt::Display) -> Failure {
    Failure::Runtime(e.to_string())
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Decompose { n, k_bound, json } => decompose(n, k_bound, json, out),
        Command::TwoTerm { q, p } => two_term(q, p, out),
        Command::Oracle {
            a,
            n,
            all,
            count,
            first: _,
            allow_repeats,
        } => oracle(a, n, all, count, allow_repeats, out),
        Command::Sweep {
            start,
            end,
            workers,
            checkpoint,
            report,
            format,
            k_bound,
        } => {
            let workers = workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let config = SweepConfig {
                workers,
                k_bound,
                checkpoint_path: checkpoint,
                report_path: report.clone(),
                report_format: format,
                ..SweepConfig::new(start, end)
            };
            let records = sweep::sweep_range(&config)?;
            let s = sweep::stats(&records);
            let count = |st: Status| s.by_status.get(st.as_str()).copied().unwrap_or(0);
            match &report {
                Some(path) => writeln!(
                    out,
                    "swept {} values: {} solved, {} without a distinct solution, {} errors; report written to {}",
                    s.total,
                    count(Status::Solved),
                    count(Status::NoDistinctSolution),
                    count(Status::Error),
                    path.display()
                )?,
                None => sweep::write_report(&records, format, &mut *out)?,
            }
            Ok(if count(Status::Error) > 0 {
                EXIT_FAILURE
            } else {
                EXIT_OK
            })
        }
        Command::Stats { report } => {
            let (_, records) = sweep::parse_report(&report)?;
            let s = sweep::stats(&records);
            writeln!(out, "records: {}", s.total)?;
            writeln!(out, "methods:")?;
            for (m, c) in &s.by_method {
                writeln!(out, "  {m:<20} {c}")?;
            }
            writeln!(out, "statuses:")?;
            for (st, c) in &s.by_status {
                writeln!(out, "  {st:<20} {c}")?;
            }
            writeln!(out, "hard: {}", s.hard)?;
            for (m, c) in &s.hard_by_method {
                writeln!(out, "  {m:<20} {c}")?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn decompose(n: u128, k_bound: u128, json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    if n < 2 {
        return Err(Failure::Usage("n must be at least 2".into()));
    }
    if k_bound == 0 {
        return Err(Failure::Usage("--k-bound must be at least 1".into()));
    }
    let record = sweep::solve(n, k_bound);
    if json {
        serde_json::to_writer_pretty(&mut *out, &record).map_err(runtime)?;
        writeln!(out)?;
    } else {
        write_human(&record, out)?;
    }
    Ok(match record.status {
        Status::Solved => EXIT_OK,
        Status::NoDistinctSolution => EXIT_NO_SOLUTION,
        Status::Error => EXIT_FAILURE,
    })
}

fn write_human(r: &SweepRecord, out: &mut dyn Write) -> Result<(), Failure> {
    let n = r.n;
    writeln!(out, "n = {n}")?;
    match (r.status, r.triple()) {
        (Status::Solved, Some([x1, x2, x3])) => {
            writeln!(out, "4/{n} = 1/{x1} + 1/{x2} + 1/{x3}")?;
            writeln!(out, "triple: ({x1}, {x2}, {x3})")?;
        }
        (Status::NoDistinctSolution, _) => {
            writeln!(
                out,
                "no decomposition of 4/{n} into three distinct unit fractions exists"
            )?;
            writeln!(
                out,
                "proof: exhaustive search of every smallest denominator x with {n}/4 < x <= {}/4 found no distinct triple",
                3 * n
            )?;
            let repeats = enumerate_three_term(&OracleQuery::new(4, n).allow_repeats()).map_err(runtime)?;
            for [x, y, z] in repeats {
                writeln!(out, "with repeats allowed: 4/{n} = 1/{x} + 1/{y} + 1/{z}")?;
            }
        }
        _ => {
            writeln!(out, "error: {}", r.detail.as_deref().unwrap_or("unknown failure"))?;
        }
    }
    writeln!(out, "method: {}", r.method)?;
    writeln!(out, "hard: {}", r.hard)?;
    Ok(())
}

fn two_term(q: u128, p: u128, out: &mut dyn Write) -> Result<i32, Failure> {
    if q == 0 || p == 0 {
        return Err(Failure::Usage("q and p must be positive".into()));
    }
    match solve_two_term(q, p).map_err(runtime)? {
        Some(s) => {
            writeln!(out, "{q}/{p} = 1/{} + 1/{}", s.x1(), s.x2())?;
            if is_prime(p) {
                writeln!(out, "p is prime: this is the only distinct solution")?;
            }
        }
        None if is_prime(p) => {
            writeln!(out, "{q}/{p} has no decomposition into two distinct unit fractions")?;
        }
        None => {
            writeln!(
                out,
                "closed form does not apply to {q}/{p} ({q} does not divide {p} + 1, or the pair repeats); p is composite, so other solutions may exist"
            )?;
        }
    }
    Ok(EXIT_OK)
}

fn oracle(a: u128, n: u128, all: bool, count: bool, allow_repeats: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    if a == 0 || n == 0 {
        return Err(Failure::Usage("a and n must be positive".into()));
    }
    let mut query = OracleQuery::new(a, n);
    if allow_repeats {
        query = query.allow_repeats();
    }
    if !all && !count {
        query = query.limit(1);
    }
    let found = enumerate_three_term(&query).map_err(runtime)?;
    if count {
        writeln!(out, "{}", found.len())?;
    } else if found.is_empty() {
        writeln!(out, "no solution for {a}/{n}")?;
    } else {
        for [x, y, z] in found {
            writeln!(out, "{x} {y} {z}")?;
        }
    }
    Ok(EXIT_OK)
}
