//! Truncated power series in `z` with [`QPolynomial`] coefficients.
//!
//! This is the generating-function route: the closed forms for the double
//! generating function `psi(0, q, z) = sum_n p(n, 0, q) z^n` involve square
//! roots of `1 - z^2` and `1 - q^2 z^2`, which expand here exactly and are
//! read back coefficient by coefficient.
//!
//! Coefficients stay plain polynomials in `q`. Division only ever divides by
//! the leading `z`-coefficient of the denominator, and those divisions are
//! exact `q`-polynomial divisions that fail loudly if a remainder appears.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{int, ratio, QPolynomial, Rational};
use crate::error::{Error, Result};

/// Verification order used when none is given.
pub const DEFAULT_ORDER: usize = 32;

/// `sum_{n < order} coeffs[n] z^n`, exactly `order` slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateSeries {
    order: usize,
    coeffs: Vec<QPolynomial>,
}

impl BivariateSeries {
    /// Pads with zeros or truncates to `order` slots.
    pub fn new(order: usize, mut coeffs: Vec<QPolynomial>) -> Self {
        coeffs.resize(order, QPolynomial::zero());
        BivariateSeries { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, QPolynomial::one())
    }

    pub fn constant(order: usize, c: QPolynomial) -> Self {
        Self::new(order, vec![c])
    }

    /// `c z^power`
    pub fn monomial(order: usize, power: usize, c: QPolynomial) -> Self {
        let mut coeffs = vec![QPolynomial::zero(); order];
        if power < order {
            coeffs[power] = c;
        }
        BivariateSeries { order, coeffs }
    }

    /// Sum of `c z^power` terms; repeated powers add up.
    pub fn from_terms(order: usize, terms: &[(usize, QPolynomial)]) -> Self {
        let mut coeffs = vec![QPolynomial::zero(); order];
        for (power, c) in terms {
            if *power < order {
                coeffs[*power] = &coeffs[*power] + c;
            }
        }
        BivariateSeries { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[QPolynomial] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<&QPolynomial> {
        self.coeffs.get(n)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(order.min(self.order), self.coeffs.clone())
    }

    /// Divides by `z^v`; the top `v` slots are lost, so the order drops by `v`.
    pub fn shift_down(&self, v: usize) -> Self {
        let order = self.order.saturating_sub(v);
        Self::new(order, self.coeffs.iter().skip(v).cloned().collect())
    }

    /// Multiplies by `z^v`, keeping the order.
    pub fn shift_up(&self, v: usize) -> Self {
        let mut coeffs = vec![QPolynomial::zero(); v.min(self.order)];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(self.order, coeffs)
    }

    /// Multiplies every coefficient by the same `q`-polynomial.
    pub fn scale(&self, c: &QPolynomial) -> Self {
        BivariateSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides every coefficient by `div`, each division exact.
    pub fn divide_coeffs_exact(&self, div: &QPolynomial) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.divide_exact(div))
            .collect::<Result<_>>()?;
        Ok(BivariateSeries { order: self.order, coeffs })
    }

    /// `z -> -z`.
    pub fn reflect(&self) -> Self {
        BivariateSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| if n % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// Even (`parity == 0`) or odd (`parity == 1`) part in `z`.
    pub fn parity_part(&self, parity: usize) -> Self {
        BivariateSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| if n % 2 == parity { c.clone() } else { QPolynomial::zero() })
                .collect(),
        }
    }
}

pub fn series_add(a: &BivariateSeries, b: &BivariateSeries) -> BivariateSeries {
    let order = a.order.min(b.order);
    let coeffs = (0..order).map(|n| &a.coeffs[n] + &b.coeffs[n]).collect();
    BivariateSeries { order, coeffs }
}

pub fn series_sub(a: &BivariateSeries, b: &BivariateSeries) -> BivariateSeries {
    let order = a.order.min(b.order);
    let coeffs = (0..order).map(|n| &a.coeffs[n] - &b.coeffs[n]).collect();
    BivariateSeries { order, coeffs }
}

/// Cauchy product truncated at the smaller order.
pub fn series_mul(a: &BivariateSeries, b: &BivariateSeries) -> BivariateSeries {
    let order = a.order.min(b.order);
    let coeffs = (0..order)
        .into_par_iter()
        .map(|n| {
            (0..=n)
                .filter(|&i| !a.coeffs[i].is_zero() && !b.coeffs[n - i].is_zero())
                .fold(QPolynomial::zero(), |acc, i| &acc + &(&a.coeffs[i] * &b.coeffs[n - i]))
        })
        .collect();
    BivariateSeries { order, coeffs }
}

/// Series quotient `num / den`.
///
/// A common power of `z` is cancelled first (the result loses that many
/// slots of order). The quotient is then built one coefficient at a time,
/// each step dividing by the denominator's new leading coefficient as an
/// exact `q`-polynomial division.
pub fn series_div(num: &BivariateSeries, den: &BivariateSeries) -> Result<BivariateSeries> {
    let den_val = den.valuation().ok_or(Error::DivisionByZero)?;
    let order = num.order.min(den.order).saturating_sub(den_val);
    let Some(num_val) = num.valuation() else {
        return Ok(BivariateSeries::zero(order));
    };
    if num_val < den_val {
        return Err(Error::Valuation { num: num_val, den: den_val });
    }
    let num = num.shift_down(den_val);
    let den = den.shift_down(den_val);
    let lead = &den.coeffs[0];
    let lead_inv = lead.as_constant().map(|c| c.recip());

    let mut quot: Vec<QPolynomial> = Vec::with_capacity(order);
    for n in 0..order {
        let mut acc = num.coeffs[n].clone();
        for j in 1..=n {
            if !den.coeffs[j].is_zero() && !quot[n - j].is_zero() {
                acc = &acc - &(&den.coeffs[j] * &quot[n - j]);
            }
        }
        let q_n = match &lead_inv {
            Some(inv) => acc.scale(inv),
            None => acc.divide_exact(lead)?,
        };
        quot.push(q_n);
    }
    Ok(BivariateSeries { order, coeffs: quot })
}

pub fn series_reciprocal(s: &BivariateSeries) -> Result<BivariateSeries> {
    series_div(&BivariateSeries::one(s.order), s)
}

/// Square root with constant term 1.
pub fn series_sqrt(s: &BivariateSeries) -> Result<BivariateSeries> {
    let order = s.order;
    if order == 0 {
        return Ok(s.clone());
    }
    if !s.coeffs[0].as_constant().is_some_and(|c| c.is_one()) {
        return Err(Error::SqrtDomain { constant: s.coeffs[0].clone() });
    }
    let half = ratio(1, 2);
    let mut root: Vec<QPolynomial> = Vec::with_capacity(order);
    root.push(QPolynomial::one());
    // (1 + r)^2 = s  =>  2 r_n = s_n - sum_{0<j<n} r_j r_{n-j}
    for n in 1..order {
        let mut acc = s.coeffs[n].clone();
        for j in 1..n {
            acc = &acc - &(&root[j] * &root[n - j]);
        }
        root.push(acc.scale(&half));
    }
    Ok(BivariateSeries { order, coeffs: root })
}

/// Coefficient of `z^n`.
pub fn extract_pgf(s: &BivariateSeries, n: usize) -> Result<QPolynomial> {
    s.coeff(n).cloned().ok_or_else(|| {
        Error::Domain(format!("index {n} is beyond the series order {}", s.order))
    })
}

impl Add for &BivariateSeries {
    type Output = BivariateSeries;
    fn add(self, rhs: &BivariateSeries) -> BivariateSeries {
        series_add(self, rhs)
    }
}

impl Sub for &BivariateSeries {
    type Output = BivariateSeries;
    fn sub(self, rhs: &BivariateSeries) -> BivariateSeries {
        series_sub(self, rhs)
    }
}

impl Mul for &BivariateSeries {
    type Output = BivariateSeries;
    fn mul(self, rhs: &BivariateSeries) -> BivariateSeries {
        series_mul(self, rhs)
    }
}

impl Neg for &BivariateSeries {
    type Output = BivariateSeries;
    fn neg(self) -> BivariateSeries {
        BivariateSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for BivariateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "z^{n}: {c}")?;
        }
        write!(f, "+ O(z^{})", self.order)
    }
}

// ---------------------------------------------------------------------------
// Building blocks for the closed forms.

fn q_poly(pairs: &[(i64, i64)]) -> QPolynomial {
    QPolynomial::from_ratios(pairs)
}

/// `c_0 + c_1 z + c_2 z^2 + ...` with small rational `q`-polynomial coefficients.
fn poly_z(order: usize, coeffs: &[QPolynomial]) -> BivariateSeries {
    BivariateSeries::new(order, coeffs.to_vec())
}

fn k(order: usize, c: i64) -> BivariateSeries {
    BivariateSeries::constant(order, QPolynomial::constant(int(c)))
}

/// `1 - z^2`
fn one_minus_z2(order: usize) -> BivariateSeries {
    poly_z(order, &[QPolynomial::one(), QPolynomial::zero(), q_poly(&[(-1, 1)])])
}

/// `1 - q^2 z^2`
fn one_minus_q2z2(order: usize) -> BivariateSeries {
    poly_z(order, &[QPolynomial::one(), QPolynomial::zero(), q_poly(&[(0, 1), (0, 1), (-1, 1)])])
}

/// `sqrt(1 - z^2)` and `sqrt(1 - q^2 z^2)`.
fn radicals(order: usize) -> Result<(BivariateSeries, BivariateSeries)> {
    Ok((series_sqrt(&one_minus_z2(order))?, series_sqrt(&one_minus_q2z2(order))?))
}

fn z_pow(order: usize, power: usize) -> BivariateSeries {
    BivariateSeries::monomial(order, power, QPolynomial::one())
}

fn q_plus_one() -> QPolynomial {
    q_poly(&[(1, 1), (1, 1)])
}

/// Even part of `psi(0, q, z)`: `1 / (sqrt(1 - z^2) sqrt(1 - q^2 z^2))`.
/// Its `z^2n` coefficient is `A_n(q)`.
pub fn psi_even(order: usize) -> Result<BivariateSeries> {
    let (r, rq) = radicals(order)?;
    series_reciprocal(&(&r * &rq))
}

/// Odd part of `psi(0, q, z)` from its split form
///
/// ```text
/// (E - 1) / ((q + 1) z) + q z E / (q + 1),   E = 1 / (sqrt(1 - z^2) sqrt(1 - q^2 z^2))
/// ```
///
/// The `(q + 1)` is removed from each `z`-coefficient by exact division.
pub fn psi_odd(order: usize) -> Result<BivariateSeries> {
    let wide = order + 1;
    let e = psi_even(wide)?;
    let q = QPolynomial::q();
    let numer = &(&e - &BivariateSeries::one(wide)) + &e.shift_up(2).scale(&q);
    numer.shift_down(1).divide_coeffs_exact(&q_plus_one())
}

/// Odd part of `psi(0, q, z)` as the ratio
///
/// ```text
/// [sqrt(1-z^2) sqrt(1-q^2 z^2)(q z^2 + 1) - z^2 (q^2 (z^2 - 1) - 1) - 1]
///     / [(1 - z^2)(1 - q^2 z^2)(q + 1) z]
/// ```
pub fn psi_odd_ratio(order: usize) -> Result<BivariateSeries> {
    let wide = order + 1;
    let (r, rq) = radicals(wide)?;
    let q2 = q_poly(&[(0, 1), (0, 1), (1, 1)]);
    // q z^2 + 1
    let qz2_plus_1 = poly_z(wide, &[QPolynomial::one(), QPolynomial::zero(), QPolynomial::q()]);
    // z^2 (q^2 (z^2 - 1) - 1) = -(q^2 + 1) z^2 + q^2 z^4
    let middle = poly_z(
        wide,
        &[
            QPolynomial::zero(),
            QPolynomial::zero(),
            -&(&q2 + &QPolynomial::one()),
            QPolynomial::zero(),
            q2,
        ],
    );
    let numer = &(&(&(&r * &rq) * &qz2_plus_1) - &middle) - &BivariateSeries::one(wide);
    let denom = (&(&one_minus_z2(wide) * &one_minus_q2z2(wide)) * &z_pow(wide, 1)).scale(&q_plus_one());
    Ok(series_div(&numer, &denom)?.truncate(order))
}

/// The printed closed form for the whole of `psi(0, q, z)` as a ratio of two
/// radical expressions, expanded verbatim:
///
/// ```text
/// numerator   = -z (q+1) sqrt(1-q^2 z^2) [ (q z^2 - 1)(2 z^2 + sqrt(1-z^2)(z^2 - 1) - 1)
///                                        + (1 - z^2) sqrt(1-q^2 z^2)(2 sqrt(1-z^2) - z^2 + 2) ]
/// denominator = (1 - z^2)(1 - q^2 z^2) [ ((q^2+1) z^2 - 2)(2 sqrt(1-z^2) - z^2 + 2)
///                                      + sqrt(1-q^2 z^2)(4 z^2 + 2 sqrt(1-z^2)(z^2 - 2) - 4) ]
/// ```
///
/// No correction is applied. As printed the ratio vanishes at `z = 0` and is
/// odd in `z`, so it does not reproduce `psi(0, q, z)`; the verification
/// harness reports the first coefficient where it departs from the other
/// routes.
pub fn psi_full(order: usize) -> Result<BivariateSeries> {
    let (r, rq) = radicals(order)?;
    let one = BivariateSeries::one(order);
    let z2 = z_pow(order, 2);
    let q2 = q_poly(&[(0, 1), (0, 1), (1, 1)]);

    // (q z^2 - 1)
    let qz2_minus_1 = poly_z(order, &[q_poly(&[(-1, 1)]), QPolynomial::zero(), QPolynomial::q()]);
    // 2 z^2 + sqrt(1-z^2)(z^2 - 1) - 1
    let inner_a = &(&(&z2.scale(&q_poly(&[(2, 1)])) + &(&r * &(&z2 - &one))) - &one);
    // 2 sqrt(1-z^2) - z^2 + 2
    let shared = &(&r.scale(&q_poly(&[(2, 1)])) - &z2) + &k(order, 2);
    let bracket_num = &(&qz2_minus_1 * inner_a) + &(&(&one_minus_z2(order) * &rq) * &shared);
    let numer = (&(&rq * &bracket_num) * &z_pow(order, 1)).scale(&-q_plus_one());

    // (q^2 + 1) z^2 - 2
    let lead_d = &z2.scale(&(&q2 + &QPolynomial::one())) - &k(order, 2);
    // 4 z^2 + 2 sqrt(1-z^2)(z^2 - 2) - 4
    let inner_d = &(&z2.scale(&q_poly(&[(4, 1)]))
        + &(&r * &(&z2 - &k(order, 2))).scale(&q_poly(&[(2, 1)])))
        - &k(order, 4);
    let bracket_den = &(&lead_d * &shared) + &(&rq * &inner_d);
    let denom = &(&one_minus_z2(order) * &one_minus_q2z2(order)) * &bracket_den;

    series_div(&numer, &denom)
}

/// Which square root to use in the non-negative-count closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CsakiRadical {
    /// `sqrt(1 - q^2 z^2)`.
    Corrected,
    /// `sqrt(1 - q^2 - z^2)` as typeset. Its constant term `1 - q^2` has no
    /// square root among `q`-polynomials, so expansion fails.
    AsPrinted,
}

/// Double generating function of the count of `k` in `0..=n` with `S_k >= 0`:
///
/// ```text
/// q / (1 - q z) + [rad (sqrt(1-z^2) + 1 - z) - (1 - q z) sqrt(1-z^2) + (1 - q(1 - z)) z - 1]
///                 / [2 (z - 1) z (q z - 1)]
/// ```
pub fn psi_csaki(order: usize, radical: CsakiRadical) -> Result<BivariateSeries> {
    let wide = order + 1;
    let r = series_sqrt(&one_minus_z2(wide))?;
    let rad = match radical {
        CsakiRadical::Corrected => series_sqrt(&one_minus_q2z2(wide))?,
        CsakiRadical::AsPrinted => series_sqrt(&poly_z(
            wide,
            &[q_poly(&[(1, 1), (0, 1), (-1, 1)]), QPolynomial::zero(), q_poly(&[(-1, 1)])],
        ))?,
    };
    let one = BivariateSeries::one(wide);
    let z = z_pow(wide, 1);
    let q = QPolynomial::q();
    // 1 - q z
    let one_minus_qz = poly_z(wide, &[QPolynomial::one(), -&q]);

    let lead = series_div(&BivariateSeries::constant(wide, q.clone()), &one_minus_qz)?;

    // 1 - q (1 - z) = (1 - q) + q z
    let bracket = poly_z(wide, &[q_poly(&[(1, 1), (-1, 1)]), q.clone()]);
    let numer = &(&(&(&rad * &(&(&r + &one) - &z)) - &(&one_minus_qz * &r)) + &(&bracket * &z)) - &one;
    // 2 (z - 1) z (q z - 1) = 2 z (z - 1)(q z - 1)
    let z_minus_1 = poly_z(wide, &[q_poly(&[(-1, 1)]), QPolynomial::one()]);
    let denom = (&(&z_minus_1 * &(-&one_minus_qz)) * &z).scale(&q_poly(&[(2, 1)]));

    let tail = series_div(&numer, &denom)?;
    Ok((&lead.truncate(order) + &tail).truncate(order))
}

/// Coefficient table rows `(z power, q power, coefficient)`, skipping zeros.
pub fn coefficient_table(s: &BivariateSeries) -> Vec<(usize, usize, Rational)> {
    s.coeffs
        .iter()
        .enumerate()
        .flat_map(|(n, c)| {
            c.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(move |(i, a)| (n, i, a.clone()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::binomial;
    use num_bigint::BigInt;

    fn qp(pairs: &[(i64, i64)]) -> QPolynomial {
        QPolynomial::from_ratios(pairs)
    }

    fn scalar_series(order: usize, coeffs: &[i64]) -> BivariateSeries {
        BivariateSeries::new(
            order,
            coeffs.iter().map(|&c| QPolynomial::constant(int(c))).collect(),
        )
    }

    /// sqrt(1 - x) = sum_k C(1/2, k) (-x)^k, computed by the generalized binomial
    /// coefficient directly.
    fn sqrt_one_minus_oracle(k_max: usize) -> Vec<Rational> {
        let mut out = Vec::new();
        let half = ratio(1, 2);
        for k in 0..=k_max {
            let mut c = int(1);
            for j in 0..k {
                c = c * (&half - int(j as i64)) / int(j as i64 + 1);
            }
            if k % 2 == 1 {
                c = -c;
            }
            out.push(c);
        }
        out
    }

    #[test]
    fn mul_examples() {
        let a = scalar_series(6, &[1, 1]);
        let b = scalar_series(6, &[1, -1]);
        assert_eq!(&a * &b, scalar_series(6, &[1, 0, -1]));

        let a = poly_z(6, &[QPolynomial::one(), QPolynomial::q()]);
        let b = poly_z(6, &[QPolynomial::one(), -&QPolynomial::q()]);
        assert_eq!(&a * &b, one_minus_q2z2(6));
    }

    #[test]
    fn div_examples() {
        let got = series_div(&scalar_series(6, &[1, 0, -1]), &scalar_series(6, &[1, -1])).unwrap();
        assert_eq!(got, scalar_series(6, &[1, 1]));

        let got = series_div(&scalar_series(6, &[0, 1, 0, 1]), &scalar_series(6, &[0, 1])).unwrap();
        assert_eq!(got.order(), 5);
        assert_eq!(got, scalar_series(5, &[1, 0, 1]));

        assert_eq!(
            series_div(&scalar_series(6, &[1]), &scalar_series(6, &[0, 1])).unwrap_err(),
            Error::Valuation { num: 0, den: 1 }
        );
        assert_eq!(
            series_div(&scalar_series(6, &[1]), &BivariateSeries::zero(6)).unwrap_err(),
            Error::DivisionByZero
        );
        // (1 + z) / (q + z): leading coefficient q does not divide 1
        let den = poly_z(4, &[QPolynomial::q(), QPolynomial::one()]);
        assert!(matches!(
            series_div(&scalar_series(4, &[1, 1]), &den),
            Err(Error::InexactDivision { .. })
        ));
    }

    #[test]
    fn sqrt_examples() {
        let order = 12;
        let root = series_sqrt(&one_minus_z2(order)).unwrap();
        let oracle = sqrt_one_minus_oracle(order / 2);
        for (n, c) in root.coeffs().iter().enumerate() {
            let want = if n % 2 == 0 { oracle[n / 2].clone() } else { int(0) };
            assert_eq!(*c, QPolynomial::constant(want), "z^{n}");
        }
        assert_eq!(root.coeff(2).unwrap(), &qp(&[(-1, 2)]));
        assert_eq!(root.coeff(4).unwrap(), &qp(&[(-1, 8)]));
        assert_eq!(root.coeff(6).unwrap(), &qp(&[(-1, 16)]));

        assert_eq!(series_sqrt(&BivariateSeries::one(5)).unwrap(), BivariateSeries::one(5));

        let rootq = series_sqrt(&one_minus_q2z2(order)).unwrap();
        for n in (0..order).step_by(2) {
            let want = QPolynomial::monomial(oracle[n / 2].clone(), n);
            assert_eq!(rootq.coeff(n).unwrap(), &want, "z^{n}");
        }

        assert!(matches!(
            series_sqrt(&scalar_series(4, &[4, 1])),
            Err(Error::SqrtDomain { .. })
        ));
    }

    #[test]
    fn sqrt_squares_back() {
        for s in [one_minus_z2(16), one_minus_q2z2(16)] {
            let r = series_sqrt(&s).unwrap();
            assert_eq!(&r * &r, s);
        }
    }

    #[test]
    fn even_part_coefficients() {
        let e = psi_even(8).unwrap();
        assert_eq!(extract_pgf(&e, 0).unwrap(), QPolynomial::one());
        assert_eq!(extract_pgf(&e, 2).unwrap(), qp(&[(1, 2), (0, 1), (1, 2)]));
        assert_eq!(
            extract_pgf(&e, 4).unwrap(),
            qp(&[(3, 8), (0, 1), (1, 4), (0, 1), (3, 8)])
        );
        assert!(e.parity_part(1).coeffs().iter().all(QPolynomial::is_zero));
    }

    #[test]
    fn odd_part_coefficients() {
        let o = psi_odd(8).unwrap();
        assert_eq!(o.order(), 8);
        assert!(extract_pgf(&o, 0).unwrap().is_zero());
        assert!(extract_pgf(&o, 2).unwrap().is_zero());
        assert_eq!(extract_pgf(&o, 1).unwrap(), qp(&[(1, 2), (1, 2)]));
        assert_eq!(extract_pgf(&o, 3).unwrap(), qp(&[(3, 8), (1, 8), (1, 8), (3, 8)]));

        let ratio_form = psi_odd_ratio(8).unwrap();
        assert_eq!(ratio_form, o);
        assert_eq!(extract_pgf(&ratio_form, 3).unwrap(), qp(&[(3, 8), (1, 8), (1, 8), (3, 8)]));
    }

    #[test]
    fn extract_out_of_range() {
        assert!(matches!(extract_pgf(&psi_even(4).unwrap(), 4), Err(Error::Domain(_))));
    }

    #[test]
    fn printed_full_ratio_is_odd_and_vanishes_at_origin() {
        let full = psi_full(8).unwrap();
        assert!(full.coeff(0).unwrap().is_zero());
        assert!(full.parity_part(0).coeffs().iter().all(QPolynomial::is_zero));
        // leading term 3 (q + 1) / 8, by hand from the two brackets at z = 0
        assert_eq!(full.coeff(1).unwrap(), &qp(&[(3, 8), (3, 8)]));
    }

    #[test]
    fn csaki_low_order_coefficients() {
        let s = psi_csaki(6, CsakiRadical::Corrected).unwrap();
        assert_eq!(s.order(), 6);
        assert_eq!(s.coeff(0).unwrap(), &QPolynomial::q());
        assert_eq!(s.coeff(1).unwrap(), &qp(&[(0, 1), (1, 2), (1, 2)]));
        // paths ++, +-, -+, --  have 3, 3, 2, 1 non-negative terms among S_0..S_2
        assert_eq!(s.coeff(2).unwrap(), &qp(&[(0, 1), (1, 4), (1, 4), (1, 2)]));
        assert!(matches!(
            psi_csaki(6, CsakiRadical::AsPrinted),
            Err(Error::SqrtDomain { .. })
        ));
    }

    #[test]
    fn central_binomials_in_even_part_at_q_zero() {
        // at q = 0 the even part is 1/sqrt(1 - z^2) = sum u_2k z^2k
        let e = psi_even(20).unwrap();
        for k in 0..10u64 {
            let c = e.coeff(2 * k as usize).unwrap().coeff(0);
            let want = Rational::new(BigInt::from(binomial(2 * k, k)), BigInt::from(4u64.pow(k as u32)));
            assert_eq!(c, want);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn series_strategy(order: usize) -> impl Strategy<Value = BivariateSeries> {
            prop::collection::vec(
                prop::collection::vec((-5i64..=5, 1i64..=4), 0..=4),
                order,
            )
            .prop_map(move |cs| {
                BivariateSeries::new(
                    order,
                    cs.into_iter()
                        .map(|p| QPolynomial::new(p.into_iter().map(|(n, d)| ratio(n, d)).collect()))
                        .collect(),
                )
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn mul_commutes_and_associates(
                a in series_strategy(5), b in series_strategy(5), c in series_strategy(5)
            ) {
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            }

            #[test]
            fn div_inverts_mul(a in series_strategy(6), b in series_strategy(6), c0 in 1i64..=5) {
                let mut b = b;
                b.coeffs[0] = QPolynomial::constant(int(c0));
                let prod = &a * &b;
                prop_assert_eq!(series_div(&prod, &b).unwrap(), a);
            }

            #[test]
            fn sqrt_of_random_even_series(tail in series_strategy(10)) {
                let mut s = tail.parity_part(0);
                s.coeffs[0] = QPolynomial::one();
                let r = series_sqrt(&s).unwrap();
                prop_assert_eq!(&r * &r, s);
            }
        }
    }
}
