mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use coinwalk::dist::{distribution, pgf};
use coinwalk::dp::dp_pgf;
use coinwalk::legendre::lagrange_series;
use coinwalk::montecarlo::{arcsine_sup_distance, simulate, tv_distance, SimConfig};
use coinwalk::oracle::{
    oracle_conditional_capped, oracle_distribution_capped, PositivityRule, DEFAULT_CAP,
};
use coinwalk::series::{
    coefficient_table, extract_pgf, psi_csaki, psi_even, psi_full, psi_odd, psi_odd_ratio,
    CsakiRadical, DEFAULT_ORDER,
};
use coinwalk::verify::{self, Report, Section, Status, VerifyConfig};
use coinwalk::{conditional_positive, QPolynomial, Rational};
use serde_json::json;

use output::{decimal, exact, write_exact_table, write_json, ExactRow, Format};

#[derive(Parser)]
#[command(name = "coinwalk", version, about = "Exact laws for positive partial sums of a fair coin-tossing walk")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    ChungFeller,
    NonNegative,
}

impl From<Rule> for PositivityRule {
    fn from(r: Rule) -> Self {
        match r {
            Rule::ChungFeller => PositivityRule::ChungFeller,
            Rule::NonNegative => PositivityRule::NonNegative,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Closed-form law
    Closed,
    /// Space-time difference equation
    Dp,
    /// Even or odd part of the double generating function
    Series,
    /// Printed ratio for the whole double generating function
    PrintedRatio,
    /// Exhaustive enumeration
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesKind {
    Even,
    Odd,
    OddRatio,
    Full,
    Csaki,
}

#[derive(Clone, Copy, ValueEnum)]
enum SectionArg {
    All,
    Even,
    Odd,
    Full,
    Csaki,
    Cond,
    Legendre,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form distribution of N_m
    Dist {
        #[arg(long = "n")]
        m: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Generating function p(m, 0, q) by a chosen route
    Pgf {
        #[arg(long = "n")]
        m: u32,
        #[arg(long, value_enum, default_value = "closed")]
        method: Method,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Coefficient table of a double generating function
    Series {
        #[arg(long, value_enum, default_value = "even")]
        kind: SeriesKind,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Distribution by exhaustive enumeration
    Oracle {
        #[arg(long = "n")]
        m: u32,
        #[arg(long, value_enum, default_value = "chung-feller")]
        rule: Rule,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Seeded Monte Carlo histogram of N_m
    Simulate {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value = "chung-feller")]
        rule: Rule,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Enumerated P(S_2n-1 > 0 | N_2n = 2r) against r/n
    Conditional {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Coefficients of 1/sqrt(1 - 2az + (a^2 - 4b^2) z^2)
    Lagrange {
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        a: Rational,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        b: Rational,
        #[arg(long, default_value_t = 10)]
        order: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Cross-check every route; exit 1 on any counted mismatch
    Verify {
        #[arg(long, default_value_t = 12)]
        max_n: u32,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
        sections: Vec<SectionArg>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u32,
        /// Let the non-negative-count check affect the exit code
        #[arg(long)]
        strict_csaki: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| format!("not a rational number: {e}"))
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<coinwalk::Error> for Failure {
    fn from(e: coinwalk::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        // closed stdout pipe, e.g. `coinwalk series | head`
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn poly_rows(n: usize, p: &QPolynomial) -> Vec<ExactRow> {
    p.coeffs()
        .iter()
        .enumerate()
        .map(|(index, value)| ExactRow { n, index, value: value.clone() })
        .collect()
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Dist { m, format } => {
            let d = distribution(m);
            let rows: Vec<ExactRow> = d
                .mass()
                .iter()
                .enumerate()
                .map(|(index, value)| ExactRow { n: m as usize, index, value: value.clone() })
                .collect();
            write_exact_table(&rows, format)?;
        }
        Command::Pgf { m, method, cap, format } => {
            let p = match method {
                Method::Closed => pgf(&distribution(m as u64)),
                Method::Dp => dp_pgf(m),
                Method::Series => {
                    let order = m as usize + 1;
                    let s = if m % 2 == 0 { psi_even(order)? } else { psi_odd(order)? };
                    extract_pgf(&s, m as usize)?
                }
                Method::PrintedRatio => extract_pgf(&psi_full(m as usize + 1)?, m as usize)?,
                Method::Oracle => {
                    pgf(&oracle_distribution_capped(m, PositivityRule::ChungFeller, cap)?)
                }
            };
            match format {
                Format::Text => writeln!(io::stdout(), "{p}")?,
                other => write_exact_table(&poly_rows(m as usize, &p), other)?,
            }
        }
        Command::Series { kind, order, format } => {
            let s = match kind {
                SeriesKind::Even => psi_even(order)?,
                SeriesKind::Odd => psi_odd(order)?,
                SeriesKind::OddRatio => psi_odd_ratio(order)?,
                SeriesKind::Full => psi_full(order)?,
                SeriesKind::Csaki => psi_csaki(order, CsakiRadical::Corrected)?,
            };
            let rows: Vec<ExactRow> = coefficient_table(&s)
                .into_iter()
                .map(|(n, index, value)| ExactRow { n, index, value })
                .collect();
            write_exact_table(&rows, format)?;
        }
        Command::Oracle { m, rule, cap, format } => {
            let d = oracle_distribution_capped(m, rule.into(), cap)?;
            let rows: Vec<ExactRow> = d
                .mass()
                .iter()
                .enumerate()
                .map(|(index, value)| ExactRow { n: m as usize, index, value: value.clone() })
                .collect();
            write_exact_table(&rows, format)?;
        }
        Command::Simulate { m, samples, seed, rule, format } => {
            let cfg = SimConfig::new(m, samples, seed).with_rule(rule.into());
            let hist = simulate(&cfg)?;
            simulate_output(&cfg, &hist, format)?;
        }
        Command::Conditional { n, cap, format } => {
            let oracle = oracle_conditional_capped(n, cap)?;
            conditional_output(n, &oracle, format)?;
        }
        Command::Lagrange { a, b, order, format } => {
            let rows: Vec<ExactRow> = lagrange_series(&a, &b, order)
                .into_iter()
                .enumerate()
                .map(|(index, value)| ExactRow { n: order, index, value })
                .collect();
            write_exact_table(&rows, format)?;
        }
        Command::Verify { max_n, order, sections, cap, strict_csaki, format } => {
            let sections = expand_sections(&sections);
            let cfg = VerifyConfig { max_n, order, sections, cap, strict_csaki };
            let report = verify::run(&cfg);
            verify_output(&report, format)?;
            return Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn expand_sections(args: &[SectionArg]) -> Vec<Section> {
    let mut out = Vec::new();
    for a in args {
        let add: &[Section] = match a {
            SectionArg::All => &Section::ALL,
            SectionArg::Even => &[Section::Even],
            SectionArg::Odd => &[Section::Odd],
            SectionArg::Full => &[Section::Full],
            SectionArg::Csaki => &[Section::Csaki],
            SectionArg::Cond => &[Section::Cond],
            SectionArg::Legendre => &[Section::Legendre],
        };
        for s in add {
            if !out.contains(s) {
                out.push(*s);
            }
        }
    }
    out
}

fn simulate_output(cfg: &SimConfig, hist: &[u64], format: Format) -> io::Result<()> {
    let total = cfg.samples as f64;
    let tv = match cfg.rule {
        PositivityRule::ChungFeller => tv_distance(hist, &distribution(cfg.m as u64)).ok(),
        PositivityRule::NonNegative => None,
    };
    let sup = (cfg.rule == PositivityRule::ChungFeller && cfg.m > 0)
        .then(|| arcsine_sup_distance(hist, cfg.m));
    match format {
        Format::Json => write_json(&json!({
            "m": cfg.m,
            "samples": cfg.samples,
            "seed": cfg.seed,
            "rule": cfg.rule.to_string(),
            "histogram": hist,
            "tv_to_exact": tv,
            "arcsine_sup_distance": sup,
        }))?,
        _ => {
            let mut out = io::stdout().lock();
            writeln!(out, "n,index,count,fraction")?;
            for (j, c) in hist.iter().enumerate() {
                writeln!(out, "{},{j},{c},{}", cfg.m, *c as f64 / total)?;
            }
            if let Some(tv) = tv {
                eprintln!("total variation to exact law: {tv:.6}");
            }
            if let Some(sup) = sup {
                eprintln!("sup distance to arcsine CDF: {sup:.6}");
            }
        }
    }
    Ok(())
}

fn conditional_output(n: u32, oracle: &[Rational], format: Format) -> Result<(), Failure> {
    let mut rows = Vec::new();
    for (r, value) in oracle.iter().enumerate() {
        let formula = conditional_positive(n as u64, r as u64)?;
        rows.push((r, value.clone(), formula.clone(), *value == formula));
    }
    match format {
        Format::Json => write_json(&json!(rows
            .iter()
            .map(|(r, o, f, eq)| json!({
                "n": n, "index": r, "oracle": exact(o), "formula": exact(f), "equal": eq,
            }))
            .collect::<Vec<_>>()))?,
        _ => {
            let mut out = io::stdout().lock();
            writeln!(out, "n,index,oracle,formula,equal")?;
            for (r, o, f, eq) in rows {
                writeln!(out, "{n},{r},{},{},{eq}", exact(&o), exact(&f))?;
            }
        }
    }
    Ok(())
}

fn status_word(status: &Status) -> String {
    match status {
        Status::Ok => "ok".into(),
        Status::Mismatch { index, .. } => format!("mismatch@{index}"),
        Status::Failed(_) => "failed".into(),
        Status::Skipped(_) => "skipped".into(),
    }
}

fn verify_output(report: &Report, format: Format) -> io::Result<()> {
    let mut out = io::stdout().lock();
    match format {
        Format::Text => {
            for row in &report.rows {
                let mark = if row.quarantined { " (not counted)" } else { "" };
                writeln!(
                    out,
                    "[{}] {:<8} n={:<3} {:<6} {}: {}{mark}",
                    status_word(&row.status),
                    row.section.to_string(),
                    row.n,
                    row.route.to_string(),
                    row.check,
                    row.status,
                )?;
            }
            let counted_failures = report.rows.iter().filter(|r| !r.quarantined && r.status.is_failure()).count();
            writeln!(
                out,
                "{} checks, {counted_failures} counted failures: {}",
                report.rows.len(),
                if report.passed() { "PASS" } else { "FAIL" }
            )?;
        }
        Format::Csv => {
            writeln!(out, "section,check,route,n,status,counted,payload")?;
            for row in &report.rows {
                let payload: Vec<String> = row.payload.iter().map(exact).collect();
                writeln!(
                    out,
                    "{},\"{}\",{},{},{},{},{}",
                    row.section,
                    row.check,
                    row.route,
                    row.n,
                    status_word(&row.status),
                    !row.quarantined,
                    payload.join(" "),
                )?;
            }
        }
        Format::Json => {
            let rows: Vec<_> = report
                .rows
                .iter()
                .map(|row| {
                    json!({
                        "section": row.section.to_string(),
                        "check": row.check,
                        "route": row.route.to_string(),
                        "n": row.n,
                        "status": status_word(&row.status),
                        "detail": row.status.to_string(),
                        "counted": !row.quarantined,
                        "payload": row.payload.iter().map(exact).collect::<Vec<_>>(),
                        "payload_decimal": row.payload.iter().map(decimal).collect::<Vec<_>>(),
                    })
                })
                .collect();
            drop(out);
            write_json(&json!({ "passed": report.passed(), "rows": rows }))?;
        }
    }
    Ok(())
}
