//! Command-line frontend for the exact Stirling-series toolkit.
//!
//! Five subcommands cover the library surface: `coeff` evaluates one
//! coefficient by one formula (or all six side by side), `table` prints a
//! cross-verified table, `verify` recomputes everything six ways and
//! insists on exact agreement, `approx` compares the truncated series
//! against an exact factorial, and `bench` times the formulas against each
//! other.
//!
//! Exit codes: 0 on success, 1 when a verification or evaluation fails,
//! 2 for command-line usage errors.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use stirling_core::coeffs::{
    coeff_by_formula, coeff_recurrence, verify_all, verify_all_with, Formula,
};
use stirling_core::highprec::decimal_of_rational;
use stirling_core::kernels::{CorruptKernels, TriangleKind};
use stirling_core::stirling_approx;

#[derive(Parser)]
#[command(
    name = "stirling",
    version,
    about = "Coefficients of the Stirling series for n!, computed exactly by six \
             independent formulas and cross-verified"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One coefficient, by one formula or by all six side by side.
    Coeff {
        /// Coefficient index k.
        k: usize,
        /// Formula to evaluate, or `all` for a cross-checked report.
        #[arg(long, value_enum, default_value = "all")]
        formula: FormulaArg,
        /// Output format: fraction, decimal[:digits], or json.
        #[arg(long, value_parser = parse_format, default_value = "fraction")]
        format: OutputFormat,
    },
    /// Cross-verified table of the coefficients 0..=k_max.
    Table {
        /// Largest coefficient index.
        #[arg(default_value_t = 12)]
        k_max: usize,
        /// Output format.
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
    /// Recompute every coefficient by all six formulas and require exact,
    /// bit-for-bit agreement.
    Verify {
        /// Largest coefficient index.
        #[arg(default_value_t = 12)]
        k_max: usize,
        /// Read one kernel-table entry with an offset, TABLE:P:Q[:DELTA]
        /// where TABLE is s2, s3, or d3, to demonstrate that the
        /// cross-check catches a single corrupted value.
        #[arg(long, value_parser = parse_corruption)]
        corrupt: Option<Corruption>,
    },
    /// Approximate n! by the truncated series and compare with the exact
    /// factorial.
    Approx {
        /// The n whose factorial is approximated (n >= 1).
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Number of series terms to sum (>= 1).
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        terms: u64,
        /// Significant digits in the reported numbers (>= 10).
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u64).range(10..))]
        precision: u64,
    },
    /// Time every formula at every index up to k_max; results are
    /// cross-checked against the recurrence before being reported.
    Bench {
        /// Largest coefficient index.
        #[arg(default_value_t = 8)]
        k_max: usize,
        /// Repetitions per measurement; the best time is kept.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        reps: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
#[value(rename_all = "snake_case")]
enum FormulaArg {
    Recurrence,
    Comtet,
    #[value(alias = "bm")]
    BrassescoMendez,
    Theorem1,
    Corollary,
    Potential,
    All,
}

impl FormulaArg {
    /// The library formula, or None for `all`.
    fn single(self) -> Option<Formula> {
        match self {
            FormulaArg::Recurrence => Some(Formula::Recurrence),
            FormulaArg::Comtet => Some(Formula::Comtet),
            FormulaArg::BrassescoMendez => Some(Formula::BrassescoMendez),
            FormulaArg::Theorem1 => Some(Formula::Theorem1),
            FormulaArg::Corollary => Some(Formula::Corollary),
            FormulaArg::Potential => Some(Formula::Potential),
            FormulaArg::All => None,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Debug)]
enum OutputFormat {
    Fraction,
    Decimal(usize),
    Json,
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    match s {
        "fraction" => Ok(OutputFormat::Fraction),
        "json" => Ok(OutputFormat::Json),
        "decimal" => Ok(OutputFormat::Decimal(12)),
        _ => {
            if let Some(rest) = s.strip_prefix("decimal:") {
                let digits: usize = rest
                    .parse()
                    .map_err(|_| format!("bad digit count '{rest}' in format '{s}'"))?;
                if digits == 0 {
                    return Err("decimal format needs at least one digit".to_string());
                }
                Ok(OutputFormat::Decimal(digits))
            } else {
                Err(format!(
                    "unknown format '{s}' (expected fraction, decimal[:digits], or json)"
                ))
            }
        }
    }
}

/// A single-entry fault to inject into one of the kernel tables.
#[derive(Clone, Debug)]
struct Corruption {
    kind: TriangleKind,
    p: usize,
    q: usize,
    delta: i64,
}

fn parse_corruption(s: &str) -> Result<Corruption, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() < 3 || parts.len() > 4 {
        return Err(format!("expected TABLE:P:Q[:DELTA], got '{s}'"));
    }
    let kind = match parts[0] {
        "s2" => TriangleKind::SecondKind,
        "s3" => TriangleKind::Assoc3SecondKind,
        "d3" => TriangleKind::Assoc3FirstKind,
        other => {
            return Err(format!("unknown table '{other}' (expected s2, s3, or d3)"));
        }
    };
    let p: usize = parts[1]
        .parse()
        .map_err(|_| format!("bad row index '{}'", parts[1]))?;
    let q: usize = parts[2]
        .parse()
        .map_err(|_| format!("bad column index '{}'", parts[2]))?;
    let delta: i64 = if parts.len() == 4 {
        parts[3]
            .parse()
            .map_err(|_| format!("bad offset '{}'", parts[3]))?
    } else {
        1
    };
    if delta == 0 {
        return Err("an offset of zero corrupts nothing".to_string());
    }
    Ok(Corruption { kind, p, q, delta })
}

fn table_label(kind: TriangleKind) -> &'static str {
    match kind {
        TriangleKind::SecondKind => "stirling2",
        TriangleKind::Assoc3SecondKind => "assoc_stirling2",
        TriangleKind::Assoc3FirstKind => "assoc_stirling1",
    }
}

#[derive(Serialize, Deserialize)]
struct CoeffSingleJson {
    k: usize,
    formula: String,
    value: String,
    decimal: String,
    agree: bool,
}

#[derive(Serialize, Deserialize)]
struct CoeffAllJson {
    k: usize,
    values: BTreeMap<String, String>,
    agree: bool,
}

#[derive(Serialize, Deserialize)]
struct TableRowJson {
    k: usize,
    formula: String,
    value: String,
    decimal: String,
    agree: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Coeff { k, formula, format } => cmd_coeff(k, formula, format),
        Command::Table { k_max, format } => cmd_table(k_max, format),
        Command::Verify { k_max, corrupt } => cmd_verify(k_max, corrupt),
        Command::Approx {
            n,
            terms,
            precision,
        } => cmd_approx(n, terms as usize, precision as usize),
        Command::Bench { k_max, reps } => cmd_bench(k_max, reps as usize),
    }
}

fn cmd_coeff(k: usize, formula: FormulaArg, format: OutputFormat) -> ExitCode {
    match formula.single() {
        Some(f) => {
            let value = coeff_by_formula(f, k);
            match format {
                OutputFormat::Fraction => println!("{value}"),
                OutputFormat::Decimal(digits) => {
                    println!("{}", decimal_of_rational(&value, digits));
                }
                OutputFormat::Json => {
                    let agree = value == coeff_recurrence(k);
                    let row = CoeffSingleJson {
                        k,
                        formula: f.name().to_string(),
                        value: value.to_string(),
                        decimal: decimal_of_rational(&value, 12),
                        agree,
                    };
                    println!("{}", serde_json::to_string(&row).expect("serializable"));
                }
            }
        }
        None => {
            let report = verify_all(k).pop().expect("at least one report");
            match format {
                OutputFormat::Fraction => {
                    for (f, v) in &report.values {
                        println!("{:<16} {v}", f.name());
                    }
                    println!("agree: {}", report.agree);
                }
                OutputFormat::Decimal(digits) => {
                    for (f, v) in &report.values {
                        println!("{:<16} {}", f.name(), decimal_of_rational(v, digits));
                    }
                    println!("agree: {}", report.agree);
                }
                OutputFormat::Json => {
                    let values: BTreeMap<String, String> = report
                        .values
                        .iter()
                        .map(|(f, v)| (f.name().to_string(), v.to_string()))
                        .collect();
                    let row = CoeffAllJson {
                        k,
                        values,
                        agree: report.agree,
                    };
                    println!("{}", serde_json::to_string(&row).expect("serializable"));
                }
            }
        }
    }
    ExitCode::SUCCESS
}

fn cmd_table(k_max: usize, format: TableFormat) -> ExitCode {
    let reports = verify_all(k_max);
    match format {
        TableFormat::Csv => {
            println!("k,value,decimal,agree");
            for report in &reports {
                let value = report.value(Formula::Recurrence);
                println!(
                    "{},{},{},{}",
                    report.k,
                    value,
                    decimal_of_rational(value, 12),
                    report.agree
                );
            }
        }
        TableFormat::Json => {
            let rows: Vec<TableRowJson> = reports
                .iter()
                .map(|report| {
                    let value = report.value(Formula::Recurrence);
                    TableRowJson {
                        k: report.k,
                        formula: "recurrence".to_string(),
                        value: value.to_string(),
                        decimal: decimal_of_rational(value, 12),
                        agree: report.agree,
                    }
                })
                .collect();
            println!("{}", serde_json::to_string(&rows).expect("serializable"));
        }
    }
    ExitCode::SUCCESS
}

fn cmd_verify(k_max: usize, corrupt: Option<Corruption>) -> ExitCode {
    let reports = match &corrupt {
        None => verify_all(k_max),
        Some(c) => {
            println!(
                "note: {} entry ({}, {}) is read with an offset of {}",
                table_label(c.kind),
                c.p,
                c.q,
                c.delta
            );
            let dirty = CorruptKernels {
                table: c.kind,
                p: c.p,
                q: c.q,
                delta: BigInt::from(c.delta),
            };
            verify_all_with(k_max, &dirty)
        }
    };
    for report in &reports {
        if !report.agree {
            println!("disagreement at k = {}:", report.k);
            for (f, v) in &report.values {
                println!("  {:<16} {v}", f.name());
            }
            let names: Vec<&str> = report.dissenters().iter().map(|f| f.name()).collect();
            println!("disagreeing formulas: {}", names.join(", "));
            return ExitCode::from(1);
        }
    }
    println!("verified k = 0..={k_max}: all six formulas agree");
    ExitCode::SUCCESS
}

fn cmd_approx(n: u64, terms: usize, precision: usize) -> ExitCode {
    match stirling_approx(n, terms, precision) {
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Ok(result) => {
            println!("n         = {}", result.n);
            println!("terms     = {}", result.terms_used);
            println!("exact     = {}", result.exact);
            println!("approx    = {}", result.approx.to_decimal_string());
            println!("rel_error = {}", result.rel_error.to_scientific(6));
            for (k, magnitude) in result.term_magnitudes.iter().enumerate() {
                println!("term {k:>3}  = {}", magnitude.to_decimal_string());
            }
            ExitCode::SUCCESS
        }
    }
}

fn cmd_bench(k_max: usize, reps: usize) -> ExitCode {
    println!(
        "{:<16} {:>3} {:>12} {:>7}",
        "formula", "k", "best", "digits"
    );
    for k in 0..=k_max {
        // The reference value also warms the shared memo tables, so the
        // timings below measure the formulas, not first-touch costs.
        let reference = coeff_recurrence(k);
        for formula in Formula::ALL {
            let mut best: Option<Duration> = None;
            let mut value = None;
            for _ in 0..reps {
                let start = Instant::now();
                let v = coeff_by_formula(formula, k);
                let elapsed = start.elapsed();
                if best.is_none_or(|b| elapsed < b) {
                    best = Some(elapsed);
                }
                value = Some(v);
            }
            let value = value.expect("reps >= 1");
            if value != reference {
                eprintln!(
                    "bench aborted: {} disagrees with recurrence at k = {k}",
                    formula.name()
                );
                return ExitCode::from(1);
            }
            let digits = value.numer().to_string().trim_start_matches('-').len()
                + value.denom().to_string().len();
            let time = format!("{:?}", best.expect("reps >= 1"));
            println!("{:<16} {k:>3} {time:>12} {digits:>7}", formula.name());
        }
    }
    ExitCode::SUCCESS
}
