//! Cross-route verification harness.
//!
//! Each check computes the same object by an independent route and compares
//! exact coefficient lists positionally. A mismatch records the first index
//! where the routes part ways. Lengths past the enumeration cap or the series
//! order are recorded as skipped rather than failing.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::arith::{int, ratio, QPolynomial, Rational};
use crate::dist::{conditional_positive, distribution, pgf};
use crate::dp::dp_pgfs;
use crate::error::{Error, Result};
use crate::legendre::{
    a_poly, a_poly_laurent, lagrange_series, legendre, p_odd_via_derivative,
    p_odd_via_parity_split, p_odd_via_ratio, p_odd_via_three_term, x_coefficients,
};
use crate::oracle::{oracle_conditional_capped, oracle_distribution_capped, PositivityRule, DEFAULT_CAP};
use crate::series::{psi_csaki, psi_even, psi_full, psi_odd, psi_odd_ratio, CsakiRadical, DEFAULT_ORDER};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Section {
    Even,
    Odd,
    /// The printed closed form for the whole double generating function.
    Full,
    Csaki,
    Cond,
    Legendre,
}

impl Section {
    pub const ALL: [Section; 6] = [
        Section::Even,
        Section::Odd,
        Section::Full,
        Section::Csaki,
        Section::Cond,
        Section::Legendre,
    ];
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Section::Even => "even",
            Section::Odd => "odd",
            Section::Full => "full",
            Section::Csaki => "csaki",
            Section::Cond => "cond",
            Section::Legendre => "legendre",
        })
    }
}

impl FromStr for Section {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Section::ALL
            .into_iter()
            .find(|sec| sec.to_string() == s)
            .ok_or_else(|| Error::Domain(format!("unknown section {s:?}")))
    }
}

/// Where a value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Closed,
    Dp,
    Series,
    Oracle,
    Mc,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Closed => "closed",
            Route::Dp => "dp",
            Route::Series => "series",
            Route::Oracle => "oracle",
            Route::Mc => "mc",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// First position where the route disagrees with the reference.
    Mismatch { index: usize, expected: Rational, found: Rational },
    /// The route raised an error (for instance an inexact division).
    Failed(String),
    /// Not run: outside the enumeration cap or the series order.
    Skipped(String),
}

impl Status {
    pub fn is_ok(&self) -> bool {
        matches!(self, Status::Ok)
    }

    pub fn is_failure(&self) -> bool {
        matches!(self, Status::Mismatch { .. } | Status::Failed(_))
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Ok => f.write_str("ok"),
            Status::Mismatch { index, expected, found } => {
                write!(f, "mismatch at {index}: expected {expected}, found {found}")
            }
            Status::Failed(msg) => write!(f, "failed: {msg}"),
            Status::Skipped(msg) => write!(f, "skipped: {msg}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportRow {
    pub section: Section,
    pub check: String,
    pub route: Route,
    pub n: usize,
    pub payload: Vec<Rational>,
    pub status: Status,
    /// Reported, but ignored when deciding the overall verdict.
    pub quarantined: bool,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub rows: Vec<ReportRow>,
}

impl Report {
    /// True when no counted row failed.
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.quarantined || !r.status.is_failure())
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| r.status.is_failure())
    }

    pub fn section(&self, section: Section) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(move |r| r.section == section)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub max_n: u32,
    pub order: usize,
    pub sections: Vec<Section>,
    pub cap: u32,
    /// Count the non-negative-rule check towards the verdict.
    pub strict_csaki: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_n: 12,
            order: DEFAULT_ORDER,
            sections: Section::ALL.to_vec(),
            cap: DEFAULT_CAP,
            strict_csaki: false,
        }
    }
}

/// Positional comparison, zero-padding the shorter list.
pub fn first_difference(expected: &[Rational], found: &[Rational]) -> Option<usize> {
    let zero = Rational::zero();
    (0..expected.len().max(found.len()))
        .find(|&i| expected.get(i).unwrap_or(&zero) != found.get(i).unwrap_or(&zero))
}

/// Compares `found` against `expected` and builds a status.
pub fn compare(expected: &[Rational], found: &[Rational]) -> Status {
    match first_difference(expected, found) {
        None => Status::Ok,
        Some(index) => {
            let zero = Rational::zero();
            Status::Mismatch {
                index,
                expected: expected.get(index).unwrap_or(&zero).clone(),
                found: found.get(index).unwrap_or(&zero).clone(),
            }
        }
    }
}

struct Builder<'a> {
    cfg: &'a VerifyConfig,
    rows: Vec<ReportRow>,
}

impl Builder<'_> {
    fn push(&mut self, section: Section, check: &str, route: Route, n: usize, payload: Vec<Rational>, status: Status) {
        let quarantined = section == Section::Csaki && !self.cfg.strict_csaki;
        self.rows.push(ReportRow {
            section,
            check: check.to_string(),
            route,
            n,
            payload,
            status,
            quarantined,
        });
    }

    /// Pushes a comparison row for a route that may have errored.
    fn compare_poly(
        &mut self,
        section: Section,
        check: &str,
        route: Route,
        n: usize,
        expected: &[Rational],
        found: Result<QPolynomial>,
    ) {
        match found {
            Ok(p) => {
                let payload = p.into_coeffs();
                let status = compare(expected, &payload);
                self.push(section, check, route, n, payload, status);
            }
            Err(e) => self.push(section, check, route, n, Vec::new(), Status::Failed(e.to_string())),
        }
    }

    fn skip(&mut self, section: Section, check: &str, route: Route, n: usize, why: String) {
        self.push(section, check, route, n, Vec::new(), Status::Skipped(why));
    }
}

/// Runs every selected section.
pub fn run(cfg: &VerifyConfig) -> Report {
    let mut b = Builder { cfg, rows: Vec::new() };
    let wants = |s: Section| cfg.sections.contains(&s);

    let needs_dp = wants(Section::Even) || wants(Section::Odd) || wants(Section::Full);
    let dp = if needs_dp { dp_pgfs(cfg.max_n) } else { Vec::new() };

    if wants(Section::Even) {
        parity_section(&mut b, Section::Even, &dp, psi_even(cfg.order), None);
    }
    if wants(Section::Odd) {
        parity_section(&mut b, Section::Odd, &dp, psi_odd(cfg.order), Some(psi_odd_ratio(cfg.order)));
    }
    if wants(Section::Full) {
        full_section(&mut b, &dp);
    }
    if wants(Section::Csaki) {
        csaki_section(&mut b);
    }
    if wants(Section::Cond) {
        cond_section(&mut b);
    }
    if wants(Section::Legendre) {
        legendre_section(&mut b);
    }
    Report { rows: b.rows }
}

fn series_coeff(
    series: &Result<crate::series::BivariateSeries>,
    m: usize,
) -> Option<Result<QPolynomial>> {
    match series {
        Ok(s) => s.coeff(m).cloned().map(Ok),
        Err(e) => Some(Err(e.clone())),
    }
}

fn parity_section(
    b: &mut Builder<'_>,
    section: Section,
    dp: &[QPolynomial],
    series: Result<crate::series::BivariateSeries>,
    alt_series: Option<Result<crate::series::BivariateSeries>>,
) {
    let cfg = b.cfg;
    let parity = if section == Section::Even { 0 } else { 1 };
    for m in (parity..=cfg.max_n as usize).step_by(2) {
        let closed = pgf(&distribution(m as u64)).into_coeffs();
        b.push(section, "closed form", Route::Closed, m, closed.clone(), Status::Ok);
        b.compare_poly(section, "difference equation", Route::Dp, m, &closed, Ok(dp[m].clone()));

        let (label, alt_label) = if section == Section::Even {
            ("even part of psi", "")
        } else {
            ("odd part of psi, split form", "odd part of psi, ratio form")
        };
        match series_coeff(&series, m) {
            Some(found) => b.compare_poly(section, label, Route::Series, m, &closed, found),
            None => b.skip(section, label, Route::Series, m, format!("beyond order {}", cfg.order)),
        }
        if let Some(alt) = &alt_series {
            match series_coeff(alt, m) {
                Some(found) => b.compare_poly(section, alt_label, Route::Series, m, &closed, found),
                None => b.skip(section, alt_label, Route::Series, m, format!("beyond order {}", cfg.order)),
            }
        }

        let oracle = oracle_distribution_capped(m as u32, PositivityRule::ChungFeller, cfg.cap)
            .map(|d| pgf(&d));
        match oracle {
            Err(Error::CapExceeded { cap, .. }) => {
                b.skip(section, "enumeration", Route::Oracle, m, format!("above cap {cap}"))
            }
            found => b.compare_poly(section, "enumeration", Route::Oracle, m, &closed, found),
        }
    }
}

fn full_section(b: &mut Builder<'_>, dp: &[QPolynomial]) {
    let cfg = b.cfg;
    let full = psi_full(cfg.order);
    for (m, p) in dp.iter().enumerate().take(cfg.max_n as usize + 1) {
        let reference = p.coeffs().to_vec();
        match series_coeff(&full, m) {
            Some(found) => b.compare_poly(Section::Full, "printed ratio for psi", Route::Series, m, &reference, found),
            None => b.skip(Section::Full, "printed ratio for psi", Route::Series, m, format!("beyond order {}", cfg.order)),
        }
    }
}

fn csaki_section(b: &mut Builder<'_>) {
    let cfg = b.cfg;
    let series = psi_csaki(cfg.order, CsakiRadical::Corrected);
    for m in 0..=cfg.max_n as usize {
        let oracle = oracle_distribution_capped(m as u32, PositivityRule::NonNegative, cfg.cap);
        let reference = match oracle {
            Ok(d) => pgf(&d).into_coeffs(),
            Err(e) => {
                b.skip(Section::Csaki, "non-negative count", Route::Series, m, e.to_string());
                continue;
            }
        };
        match series_coeff(&series, m) {
            Some(found) => b.compare_poly(Section::Csaki, "non-negative count", Route::Series, m, &reference, found),
            None => b.skip(Section::Csaki, "non-negative count", Route::Series, m, format!("beyond order {}", cfg.order)),
        }
    }
}

fn cond_section(b: &mut Builder<'_>) {
    let cfg = b.cfg;
    for n in 1..=cfg.max_n {
        let formula: Vec<Rational> = (0..=n as u64)
            .map(|r| conditional_positive(n as u64, r).expect("r in range"))
            .collect();
        match oracle_conditional_capped(n, cfg.cap) {
            Ok(found) => {
                let status = compare(&formula, &found);
                b.push(Section::Cond, "P(S_2n-1 > 0 | N_2n = 2r) = r/n", Route::Oracle, n as usize, found, status);
            }
            Err(Error::CapExceeded { cap, .. }) => b.skip(
                Section::Cond,
                "P(S_2n-1 > 0 | N_2n = 2r) = r/n",
                Route::Oracle,
                n as usize,
                format!("2n above cap {cap}"),
            ),
            Err(e) => b.push(Section::Cond, "P(S_2n-1 > 0 | N_2n = 2r) = r/n", Route::Oracle, n as usize, Vec::new(), Status::Failed(e.to_string())),
        }
    }
}

/// Admissible `(a, b)` pairs with `a^2 - 4 b^2 = 1`.
pub fn legendre_lagrange_pairs() -> [(Rational, Rational); 3] {
    [
        (ratio(5, 4), ratio(3, 8)),
        (ratio(5, 3), ratio(2, 3)),
        (ratio(13, 12), ratio(5, 24)),
    ]
}

fn legendre_section(b: &mut Builder<'_>) {
    let cfg = b.cfg;
    let sec = Section::Legendre;
    for n in 0..=cfg.max_n as u64 {
        let a = a_poly(n).into_coeffs();
        b.compare_poly(sec, "A_n: q^n P_n((q + 1/q)/2)", Route::Closed, n as usize, &a, Ok(a_poly_laurent(n as u32)));

        let closed = pgf(&distribution(2 * n + 1)).into_coeffs();
        let m = 2 * n as usize + 1;
        b.compare_poly(sec, "p(2n+1): (q A_n + A_n+1)/(q+1)", Route::Closed, m, &closed, p_odd_via_ratio(n));
        b.compare_poly(sec, "p(2n+1): derivative of A_n+1", Route::Closed, m, &closed, Ok(p_odd_via_derivative(n)));
        b.compare_poly(sec, "p(2n+1): three-term", Route::Closed, m, &closed, p_odd_via_three_term(n));
        b.compare_poly(sec, "p(2n+1): parity split", Route::Closed, m, &closed, p_odd_via_parity_split(n));
        let xs = x_coefficients(n);
        let status = compare(&closed, &xs);
        b.push(sec, "p(2n+1): w partial sums", Route::Closed, m, xs, status);
    }

    let order = cfg.max_n as usize + 1;
    let ones = lagrange_series(&int(1), &int(0), order);
    let status = compare(&vec![int(1); order], &ones);
    b.push(sec, "Lagrange a=1 b=0", Route::Closed, order, ones, status);
    for (a, bb) in legendre_lagrange_pairs() {
        let found = lagrange_series(&a, &bb, order);
        let expected: Vec<Rational> = (0..order).map(|m| legendre(m as u32).eval(&a)).collect();
        let status = compare(&expected, &found);
        b.push(sec, &format!("Lagrange a={a} b={bb}"), Route::Closed, order, found, status);
    }
}
