//! Space–time difference equation for `p(n, x, q) = E_x[q^N_n]`.
//!
//! The walk starts at `x` and `N_n` counts the positive terms among
//! `S_1..S_n` under the Chung–Feller rule. Conditioning on the first step
//! gives
//!
//! ```text
//! x > 0:  p(n, x) = q/2 p(n-1, x+1) + q/2 p(n-1, x-1)
//! x = 0:  p(n, x) = q/2 p(n-1, x+1) + 1/2 p(n-1, x-1)
//! x < 0:  p(n, x) = 1/2 p(n-1, x+1) + 1/2 p(n-1, x-1)
//! ```
//!
//! Position alone is a sufficient state. The only history the tie rule looks
//! at is whether a visit to 0 came from above, and that is settled by the
//! step itself: arriving at 0 from 1 is a step taken from `x > 0`, which
//! always carries `q`, and arriving from -1 is a step taken from `x < 0`,
//! which never does.
//!
//! Initial condition: `p(0, x) = 1` everywhere. Outside the band `|x| <= n`
//! the values are known in closed form: from `x >= n` no partial sum before
//! time `n` can be non-positive, so every step counts and `p(n, x) = q^n`;
//! from `x <= -n` none does and `p(n, x) = 1`.

use rayon::prelude::*;

use crate::arith::{ratio, QPolynomial, Rational};

/// `p(n, x, q)` for `x` in `-n..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSlice {
    n: u32,
    values: Vec<QPolynomial>,
}

impl LatticeSlice {
    /// The slice at time 0: every position has `p = 1`.
    pub fn initial() -> Self {
        LatticeSlice {
            n: 0,
            values: vec![QPolynomial::one()],
        }
    }

    pub fn time(&self) -> u32 {
        self.n
    }

    /// `p(n, x, q)`, including the closed-form values outside the band.
    pub fn get(&self, x: i64) -> QPolynomial {
        let n = self.n as i64;
        if x > n {
            QPolynomial::monomial(Rational::from_integer(1.into()), self.n as usize)
        } else if x < -n {
            QPolynomial::one()
        } else {
            self.values[(x + n) as usize].clone()
        }
    }

    fn at(&self, x: i64) -> std::borrow::Cow<'_, QPolynomial> {
        let n = self.n as i64;
        if (-n..=n).contains(&x) {
            std::borrow::Cow::Borrowed(&self.values[(x + n) as usize])
        } else {
            std::borrow::Cow::Owned(self.get(x))
        }
    }

    /// Positions paired with their generating functions, lowest `x` first.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &QPolynomial)> {
        let n = self.n as i64;
        self.values.iter().enumerate().map(move |(i, p)| (i as i64 - n, p))
    }
}

/// Advances one time step.
pub fn dp_step(prev: &LatticeSlice) -> LatticeSlice {
    let n = prev.n + 1;
    let half = ratio(1, 2);
    let half_q = QPolynomial::monomial(half.clone(), 1);
    let reach = n as i64;
    let values = (-reach..=reach)
        .into_par_iter()
        .map(|x| {
            let up = prev.at(x + 1);
            let down = prev.at(x - 1);
            match x.signum() {
                1 => &half_q * &(up.as_ref() + down.as_ref()),
                0 => &(&half_q * up.as_ref()) + &down.scale(&half),
                _ => (up.as_ref() + down.as_ref()).scale(&half),
            }
        })
        .collect();
    LatticeSlice { n, values }
}

/// The slice at time `n`.
pub fn dp_slice(n: u32) -> LatticeSlice {
    (0..n).fold(LatticeSlice::initial(), |slice, _| dp_step(&slice))
}

/// `p(n, 0, q)`, the generating function of `N_n` for a walk from the origin.
pub fn dp_pgf(n: u32) -> QPolynomial {
    dp_slice(n).get(0)
}

/// `p(m, 0, q)` for every `m` in `0..=max_n`, sharing one sweep.
pub fn dp_pgfs(max_n: u32) -> Vec<QPolynomial> {
    let mut slice = LatticeSlice::initial();
    let mut out = vec![slice.get(0)];
    for _ in 0..max_n {
        slice = dp_step(&slice);
        out.push(slice.get(0));
    }
    out
}
