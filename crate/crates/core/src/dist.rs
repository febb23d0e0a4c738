//! Closed-form laws for `N_m`, the number of positive terms among
//! `S_1, ..., S_m` under the Chung–Feller tie rule (a zero counts as positive
//! when the previous partial sum was positive).
//!
//! Even lengths follow the classical law `P(N_2n = 2r) = u_2r u_(2n-2r)`. For
//! odd lengths the mass splits between the two neighbouring even-length
//! products with weights `(n - r + 1)/(n + 1)` and `r/(n + 1)`.

use num_traits::{One, Signed, Zero};

use crate::arith::{int, u, QPolynomial, Rational};
use crate::error::{Error, Result};

/// Exact probability mass function of a count statistic on `0..=length`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    mass: Vec<Rational>,
}

impl Distribution {
    /// Validates non-negativity and exact normalization.
    pub fn new(mass: Vec<Rational>) -> Result<Self> {
        if mass.is_empty() {
            return Err(Error::Domain("distribution needs at least one mass point".into()));
        }
        if let Some(j) = mass.iter().position(Signed::is_negative) {
            return Err(Error::Domain(format!("negative mass at index {j}")));
        }
        let total: Rational = mass.iter().sum();
        if !total.is_one() {
            return Err(Error::Domain(format!("masses sum to {total}, not 1")));
        }
        Ok(Distribution { mass })
    }

    /// The largest index carrying a slot (the number of tosses for `N_m`).
    pub fn length(&self) -> usize {
        self.mass.len() - 1
    }

    pub fn mass(&self) -> &[Rational] {
        &self.mass
    }

    pub fn prob(&self, j: usize) -> Rational {
        self.mass.get(j).cloned().unwrap_or_else(Rational::zero)
    }
}

/// Law of `N_2n`: `mass[2r] = u_2r * u_(2n-2r)`, zero at odd indices.
pub fn even_distribution(n: u64) -> Distribution {
    let mut mass = vec![Rational::zero(); 2 * n as usize + 1];
    for r in 0..=n {
        mass[2 * r as usize] = u(r) * u(n - r);
    }
    Distribution { mass }
}

/// Law of `N_(2n+1)`.
pub fn odd_distribution(n: u64) -> Distribution {
    let mut mass = vec![Rational::zero(); 2 * n as usize + 2];
    let denom = int(n as i64 + 1);
    for r in 0..=n + 1 {
        let base = u(r) * u(n + 1 - r);
        if r <= n {
            mass[2 * r as usize] = &base * int((n - r + 1) as i64) / &denom;
        }
        if r >= 1 {
            mass[2 * r as usize - 1] = &base * int(r as i64) / &denom;
        }
    }
    Distribution { mass }
}

/// Parity dispatch: the closed-form law of `N_m`.
pub fn distribution(m: u64) -> Distribution {
    if m.is_multiple_of(2) {
        even_distribution(m / 2)
    } else {
        odd_distribution(m / 2)
    }
}

/// Probability generating function `sum_j P(N = j) q^j`.
pub fn pgf(dist: &Distribution) -> QPolynomial {
    QPolynomial::new(dist.mass.clone())
}

/// Running partial sums of the mass; the last entry is exactly 1.
pub fn cdf(dist: &Distribution) -> Vec<Rational> {
    dist.mass
        .iter()
        .scan(Rational::zero(), |acc, p| {
            *acc += p;
            Some(acc.clone())
        })
        .collect()
}

/// `P(S_(2n-1) > 0 | N_2n = 2r) = r/n`.
pub fn conditional_positive(n: u64, r: u64) -> Result<Rational> {
    if n == 0 || r > n {
        return Err(Error::Domain(format!(
            "conditional law needs n >= 1 and 0 <= r <= n, got n = {n}, r = {r}"
        )));
    }
    Ok(Rational::new((r as i64).into(), (n as i64).into()))
}
