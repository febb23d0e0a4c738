//! Exact distribution of the number of positive partial sums in a fair
//! coin-tossing walk, computed and cross-checked along independent routes:
//!
//! - [`dist`]: closed-form laws for even and odd walk lengths
//! - [`dp`]: the space–time difference equation for `E_x[q^N_n]`
//! - [`series`]: expansion of the double generating function in `z`
//! - [`legendre`]: Legendre-polynomial identities for the same coefficients
//! - [`oracle`]: exhaustive enumeration of all sign sequences
//! - [`montecarlo`]: seeded simulation for long walks and the arcsine limit
//! - [`verify`]: the harness comparing all of the above
//!
//! All probabilities are exact rationals; floating point appears only in
//! the Monte Carlo reporting.

pub mod arith;
pub mod dist;
pub mod dp;
pub mod error;
pub mod legendre;
pub mod montecarlo;
pub mod oracle;
pub mod series;
pub mod verify;

pub use arith::{binomial, qpoly_divide_exact, u, QPolynomial, Rational};
pub use dist::{cdf, conditional_positive, even_distribution, odd_distribution, pgf, Distribution};
pub use error::{Error, Result};
pub use oracle::{enumerate, oracle_conditional, oracle_distribution, PositivityRule, WalkStats};
pub use series::{extract_pgf, BivariateSeries};
