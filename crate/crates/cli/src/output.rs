use std::io::{self, Write};

use coinwalk::Rational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

/// Decimal rendering with 15 significant digits, for reporting only.
pub fn decimal(r: &Rational) -> String {
    let x = r.to_f64().unwrap_or(f64::NAN);
    if x.is_zero() || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let places = (14 - magnitude).max(0) as usize;
    format!("{x:.places$}")
}

/// Exact `num/den` string; integers print without a denominator.
pub fn exact(r: &Rational) -> String {
    r.to_string()
}

/// One row of the standard exact table: `n, index, exact, decimal`.
pub struct ExactRow {
    pub n: usize,
    pub index: usize,
    pub value: Rational,
}

pub fn write_exact_table(rows: &[ExactRow], format: Format) -> io::Result<()> {
    let mut out = io::stdout().lock();
    match format {
        Format::Csv => {
            writeln!(out, "n,index,exact,decimal")?;
            for r in rows {
                writeln!(out, "{},{},{},{}", r.n, r.index, exact(&r.value), decimal(&r.value))?;
            }
        }
        Format::Text => {
            for r in rows {
                writeln!(out, "{:>4} {:>4}  {:<24} {}", r.n, r.index, exact(&r.value), decimal(&r.value))?;
            }
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "index": r.index,
                        "exact": exact(&r.value),
                        "decimal": decimal(&r.value),
                    })
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?;
        }
    }
    Ok(())
}

pub fn write_json(value: &Value) -> io::Result<()> {
    let mut out = io::stdout().lock();
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)
}
