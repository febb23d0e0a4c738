use thiserror::Error;

use crate::arith::QPolynomial;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A polynomial division that was required to be exact left a remainder.
    /// Every identity in this crate that divides relies on this being
    /// impossible, so it surfaces as a hard error.
    #[error("inexact division: remainder {remainder}")]
    InexactDivision { remainder: QPolynomial },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("walk length {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: u32, cap: u32 },

    #[error("numerator z-valuation {num} is below denominator z-valuation {den}")]
    Valuation { num: usize, den: usize },

    #[error("series square root needs constant term 1, found {constant}")]
    SqrtDomain { constant: QPolynomial },
}

pub type Result<T> = std::result::Result<T, Error>;
