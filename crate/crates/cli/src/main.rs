use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{self, Write as _};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use pretzel_hfk::hfk::Outcome;
use pretzel_hfk::{classify, pretzel_alexander, pretzel_determinant, verify, ClosureSign, DiagramError, TangleParams};
use pretzel_hfk_cli::{build_record, parse_sign, render_ascii, render_csv, render_json, render_latex};

#[derive(Parser)]
#[command(
    name = "pretzel-hfk",
    version,
    about = "Knot Floer homology of P(2a, -2b-1, ±(2c+1))"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the HFK table of one knot.
    ///
    /// JSON and CSV report delta as `delta_times_2`, an integer.
    Compute {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run every check on one knot and print the report.
    Verify {
        #[command(flatten)]
        knot: KnotArgs,
    },
    /// Verify every knot in a parameter box.
    Sweep {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_a: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_b: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_c: u32,
        /// `+`, `-` or `both`
        #[arg(long, default_value = "both", allow_hyphen_values = true, value_parser = parse_signs)]
        sign: Signs,
    },
    /// Normalized Alexander polynomial of P(p, q, r) by Fox calculus.
    Alex {
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        #[arg(long, allow_negative_numbers = true)]
        r: i64,
    },
}

#[derive(Args)]
struct KnotArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    a: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    b: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    c: u32,
    /// Closure sign, `+` or `-`
    #[arg(long, allow_hyphen_values = true, value_parser = parse_sign)]
    sign: ClosureSign,
}

impl KnotArgs {
    fn params(&self) -> TangleParams {
        TangleParams::new(self.a, self.b, self.c, self.sign).expect("clap enforces positive parameters")
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Latex,
    Ascii,
}

#[derive(Clone)]
struct Signs(Vec<ClosureSign>);

fn parse_signs(s: &str) -> Result<Signs, String> {
    if s == "both" {
        Ok(Signs(vec![ClosureSign::Positive, ClosureSign::Negative]))
    } else {
        parse_sign(s).map(|c| Signs(vec![c]))
    }
}

const USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute { knot, format } => compute(knot.params(), format),
        Command::Verify { knot } => verify_one(knot.params()),
        Command::Sweep {
            max_a,
            max_b,
            max_c,
            sign,
        } => sweep(max_a, max_b, max_c, &sign.0),
        Command::Alex { p, q, r } => alex(p, q, r),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn status(passed: bool) -> ExitCode {
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn compute(params: TangleParams, format: Format) -> anyhow::Result<ExitCode> {
    let start = Instant::now();
    let report = verify(params);
    let record = build_record(&report, start.elapsed())?;
    let text = match format {
        Format::Json => render_json(&record)?,
        Format::Csv => render_csv(&record)?,
        Format::Latex => render_latex(&record),
        Format::Ascii => render_ascii(report.table.as_ref().expect("record built from a table")),
    };
    emit(&text)?;
    if !text.ends_with('\n') {
        emit("\n")?;
    }
    Ok(status(report.passed()))
}

fn verify_one(params: TangleParams) -> anyhow::Result<ExitCode> {
    let report = verify(params);
    let mut out = String::new();
    writeln!(out, "{params}: predicted {}", classify(params))?;
    if let Some(table) = &report.table {
        writeln!(out, "{table}")?;
    }
    for check in &report.checks {
        match &check.outcome {
            Outcome::Pass => writeln!(out, "  {:<22} pass", check.name)?,
            Outcome::Skipped(why) => writeln!(out, "  {:<22} skipped ({why})", check.name)?,
            Outcome::Fail(why) => writeln!(out, "  {:<22} FAIL: {why}", check.name)?,
        }
    }
    emit(&out)?;
    Ok(status(report.passed()))
}

fn sweep(max_a: u32, max_b: u32, max_c: u32, signs: &[ClosureSign]) -> anyhow::Result<ExitCode> {
    let mut tuples = Vec::new();
    for a in 1..=max_a {
        for b in 1..=max_b {
            for c in 1..=max_c {
                for &s in signs {
                    tuples.push(TangleParams::new(a, b, c, s).expect("positive parameters"));
                }
            }
        }
    }
    let reports: Vec<_> = tuples.par_iter().map(|&p| verify(p)).collect();
    let mut census: BTreeMap<&str, usize> = BTreeMap::new();
    let mut failed = 0;
    let mut out = String::new();
    for report in &reports {
        let shape = report
            .table
            .as_ref()
            .and_then(|t| pretzel_hfk::classify_table(t).ok())
            .map_or("irregular", |c| c.name());
        *census.entry(shape).or_default() += 1;
        let total = report.table.as_ref().map_or(0, |t| t.total_rank());
        if report.passed() {
            writeln!(out, "{:<16} pass  {shape:<20} rank {total}", report.params.to_string())?;
        } else {
            failed += 1;
            let names: Vec<&str> = report.failures().iter().map(|c| c.name).collect();
            writeln!(
                out,
                "{:<16} FAIL  {shape:<20} rank {total}  failed: {}",
                report.params.to_string(),
                names.join(", ")
            )?;
        }
    }
    writeln!(
        out,
        "{} knots, {} passed, {failed} failed",
        reports.len(),
        reports.len() - failed
    )?;
    for (shape, n) in &census {
        writeln!(out, "  {shape:<20} {n}")?;
    }
    emit(&out)?;
    Ok(status(failed == 0))
}

fn alex(p: i64, q: i64, r: i64) -> anyhow::Result<ExitCode> {
    match pretzel_alexander(p, q, r) {
        Ok(poly) => {
            emit(&format!("{poly}\ndeterminant {}\n", pretzel_determinant(p, q, r)))?;
            Ok(ExitCode::SUCCESS)
        }
        Err(e @ (DiagramError::Link(..) | DiagramError::ZeroTwist(..))) => {
            eprintln!("error: {e}");
            Ok(ExitCode::from(USAGE))
        }
        Err(e) => Err(e.into()),
    }
}

/// Write to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) -> io::Result<()> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => other,
    }
}
