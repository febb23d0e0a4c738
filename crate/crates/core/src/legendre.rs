//! Legendre polynomials and the identities linking them to the odd-length
//! generating functions.
//!
//! `A_n(q)` is the generating function of `N_2n`. It has two faces: the
//! convolution `sum_k u_2k u_(2n-2k) q^2k`, and the scaled Legendre value
//! `q^n P_n((q + 1/q) / 2)`. Every odd-length generating function
//! `p(2n+1, 0, q)` can then be written through neighbouring `A`s in several
//! algebraically different ways; each is implemented separately so they can
//! be checked against one another.

use num_traits::Zero;

use crate::arith::{int, ratio, u, QPolynomial, Rational};
use crate::error::Result;

/// `P_n` as a polynomial in its argument `x`, normalized so `P_n(1) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegendrePoly {
    pub n: u32,
    /// Coefficients in `x`; the polynomial type is reused with `x` in place of `q`.
    pub coeffs: QPolynomial,
}

impl LegendrePoly {
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.eval(x)
    }
}

/// `P_n` by `(k+1) P_(k+1) = (2k+1) x P_k - k P_(k-1)`.
pub fn legendre(n: u32) -> LegendrePoly {
    let x = QPolynomial::q();
    let mut prev = QPolynomial::one();
    let mut cur = x.clone();
    if n == 0 {
        return LegendrePoly { n, coeffs: prev };
    }
    for k in 1..n as i64 {
        let next = (&(&x * &cur).scale(&int(2 * k + 1)) - &prev.scale(&int(k)))
            .scale(&ratio(1, k + 1));
        prev = std::mem::replace(&mut cur, next);
    }
    LegendrePoly { n, coeffs: cur }
}

/// `A_n(q) = sum_k u_2k u_(2n-2k) q^2k`.
pub fn a_poly(n: u64) -> QPolynomial {
    let mut coeffs = vec![Rational::zero(); 2 * n as usize + 1];
    for k in 0..=n {
        coeffs[2 * k as usize] = u(k) * u(n - k);
    }
    QPolynomial::new(coeffs)
}

/// `A_n(q) = q^n P_n((q + 1/q) / 2)`.
///
/// With `P_n(x) = sum_k c_k x^k`, each term becomes
/// `c_k (q^2 + 1)^k q^(n-k) / 2^k`. Since `k <= n` no negative power of `q`
/// survives, so the whole sum stays in numerator-only polynomial arithmetic.
pub fn a_poly_laurent(n: u32) -> QPolynomial {
    let p = legendre(n);
    let q2_plus_1 = QPolynomial::from_ratios(&[(1, 1), (0, 1), (1, 1)]);
    let mut power = QPolynomial::one();
    let mut acc = QPolynomial::zero();
    for (k, c) in p.coeffs.coeffs().iter().enumerate() {
        if !c.is_zero() {
            let scale = c / Rational::from_integer(num_bigint::BigInt::from(1u8) << k);
            acc = &acc + &power.shift(n as usize - k).scale(&scale);
        }
        power = &power * &q2_plus_1;
    }
    acc
}

fn q_plus_one() -> QPolynomial {
    QPolynomial::from_ratios(&[(1, 1), (1, 1)])
}

/// `p(2n+1, 0, q) = (q A_n + A_(n+1)) / (q + 1)`.
pub fn p_odd_via_ratio(n: u64) -> Result<QPolynomial> {
    let numer = &a_poly(n).shift(1) + &a_poly(n + 1);
    numer.divide_exact(&q_plus_one())
}

/// `p(2n+1, 0, q) = A_(n+1) + (1 - q) / (2(n+1)) * A'_(n+1)`.
pub fn p_odd_via_derivative(n: u64) -> QPolynomial {
    let a = a_poly(n + 1);
    let one_minus_q = QPolynomial::from_ratios(&[(1, 1), (-1, 1)]);
    let correction = (&one_minus_q * &a.derivative()).scale(&ratio(1, 2 * (n as i64 + 1)));
    &a + &correction
}

/// `p(2n+1, 0, q) = [((2n+3)(q^2+1) + (2n+2) q) q A_n + 2(n+2) A_(n+2)]
///                  / [(1 + q + q^2 + q^3)(2n+3)]`.
pub fn p_odd_via_three_term(n: u64) -> Result<QPolynomial> {
    let n = n as i64;
    // ((2n+3)(q^2+1) + (2n+2) q) q
    let weight = QPolynomial::new(vec![int(0), int(2 * n + 3), int(2 * n + 2), int(2 * n + 3)]);
    let numer = &(&weight * &a_poly(n as u64)) + &a_poly(n as u64 + 2).scale(&int(2 * (n + 2)));
    let denom = QPolynomial::new(vec![int(1), int(1), int(1), int(1)]).scale(&int(2 * n + 3));
    numer.divide_exact(&denom)
}

/// Splits `p(2n+1, 0, q)` into its even and odd powers of `q`:
/// `(A_(n+1) - q^2 A_n) / (1 - q^2)` and `q (A_n - A_(n+1)) / (1 - q^2)`.
pub fn p_odd_parity_parts(n: u64) -> Result<(QPolynomial, QPolynomial)> {
    let a_n = a_poly(n);
    let a_n1 = a_poly(n + 1);
    let one_minus_q2 = QPolynomial::from_ratios(&[(1, 1), (0, 1), (-1, 1)]);
    let even = (&a_n1 - &a_n.shift(2)).divide_exact(&one_minus_q2)?;
    let odd = (&a_n - &a_n1).divide_exact(&one_minus_q2)?.shift(1);
    Ok((even, odd))
}

pub fn p_odd_via_parity_split(n: u64) -> Result<QPolynomial> {
    let (even, odd) = p_odd_parity_parts(n)?;
    Ok(&even + &odd)
}

/// `w[2j, 2n] = u_2j u_(2n-2j)`, zero outside `0..=n`.
fn w(j: u64, n: u64) -> Rational {
    if j > n {
        Rational::zero()
    } else {
        u(j) * u(n - j)
    }
}

/// `P(N_(2n+1) = i)` for `i = 0..=2n+1` from partial sums of `w`:
///
/// ```text
/// x_2i   = sum_{j<=i} w[2j, 2n+2] - sum_{j<i}  w[2j, 2n]
/// x_2i+1 = sum_{j<=i} w[2j, 2n]   - sum_{j<=i} w[2j, 2n+2]
/// ```
pub fn x_coefficients(n: u64) -> Vec<Rational> {
    let mut out = Vec::with_capacity(2 * n as usize + 2);
    let mut upper = Rational::zero(); // running sum of w[2j, 2n+2]
    let mut lower = Rational::zero(); // running sum of w[2j, 2n]
    for i in 0..=n {
        upper += w(i, n + 1);
        out.push(&upper - &lower);
        lower += w(i, n);
        out.push(&lower - &upper);
    }
    out
}

/// First `order` coefficients of `1 / sqrt(1 - 2 a z + (a^2 - 4 b^2) z^2)` via
/// `(m+1) c_(m+1) = (2m+1) a c_m - m (a^2 - 4 b^2) c_(m-1)`.
pub fn lagrange_series(a: &Rational, b: &Rational, order: usize) -> Vec<Rational> {
    let disc = a * a - int(4) * b * b;
    let mut out: Vec<Rational> = Vec::with_capacity(order);
    for m in 0..order {
        let c = match m {
            0 => int(1),
            1 => a.clone(),
            _ => {
                let k = m as i64 - 1;
                (int(2 * k + 1) * a * &out[m - 1] - int(k) * &disc * &out[m - 2]) / int(k + 1)
            }
        };
        out.push(c);
    }
    out
}
