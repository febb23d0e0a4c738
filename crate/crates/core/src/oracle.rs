//! Ground truth by brute force: every one of the `2^n` sign sequences is
//! walked and its count of positive terms tallied.
//!
//! A path is the integer `0..2^n`; bit `k - 1` set means step `k` is `+1`.
//! Nothing clever happens here on purpose: no lattice-path bijections, no
//! reflection arguments, just the rule applied step by step.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::arith::Rational;
use crate::dist::Distribution;
use crate::error::{Error, Result};

/// Longest walk enumerated unless the caller raises the cap (`2^24` paths).
pub const DEFAULT_CAP: u32 = 24;

/// Paths per parallel work unit. Histograms are summed, so the partition does
/// not affect the result.
const CHUNK_BITS: u32 = 16;

/// How a partial sum is judged "positive".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PositivityRule {
    /// Counts `k` in `1..=n` with `S_k > 0`, or `S_k = 0` and `S_(k-1) > 0`.
    ChungFeller,
    /// Counts `k` in `0..=n` with `S_k >= 0`. The starting point always
    /// counts, so the count ranges over `1..=n+1`.
    NonNegative,
}

impl PositivityRule {
    /// Value of `N` after one step from `prev` to `next`.
    #[inline]
    pub fn counts(self, prev: i64, next: i64) -> bool {
        match self {
            PositivityRule::ChungFeller => next > 0 || (next == 0 && prev > 0),
            PositivityRule::NonNegative => next >= 0,
        }
    }

    /// Contribution of the starting point `S_0 = 0`.
    #[inline]
    pub fn initial_count(self) -> usize {
        match self {
            PositivityRule::ChungFeller => 0,
            PositivityRule::NonNegative => 1,
        }
    }
}

impl fmt::Display for PositivityRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PositivityRule::ChungFeller => "chung-feller",
            PositivityRule::NonNegative => "non-negative",
        })
    }
}

impl FromStr for PositivityRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chung-feller" => Ok(PositivityRule::ChungFeller),
            "non-negative" => Ok(PositivityRule::NonNegative),
            other => Err(Error::Domain(format!("unknown positivity rule {other:?}"))),
        }
    }
}

/// Histogram of `N_n` over all paths of length `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkStats {
    pub n: u32,
    pub rule: PositivityRule,
    /// `count_hist[j]` = number of paths with `N_n = j`; length `n + 2`.
    pub count_hist: Vec<u64>,
    /// `joint_pos[j]` = number of paths with `N_n = j` and `S_(n-1) > 0`.
    /// All zero when `n = 0`.
    pub joint_pos: Vec<u64>,
}

impl WalkStats {
    pub fn total(&self) -> u64 {
        self.count_hist.iter().sum()
    }
}

/// Enumerates with the default cap.
pub fn enumerate(n: u32, rule: PositivityRule) -> Result<WalkStats> {
    enumerate_capped(n, rule, DEFAULT_CAP)
}

pub fn enumerate_capped(n: u32, rule: PositivityRule, cap: u32) -> Result<WalkStats> {
    // the path index is a u64; 63 keeps 2^n representable
    if n > cap || n > 62 {
        return Err(Error::CapExceeded { n, cap: cap.min(62) });
    }
    let slots = n as usize + 2;
    let total: u64 = 1 << n;
    let chunk: u64 = 1 << CHUNK_BITS.min(n);
    let chunks = total / chunk;

    let (count_hist, joint_pos) = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut hist = vec![0u64; slots];
            let mut joint = vec![0u64; slots];
            for path in c * chunk..(c + 1) * chunk {
                let (count, penultimate) = walk(path, n, rule);
                hist[count] += 1;
                if n >= 1 && penultimate > 0 {
                    joint[count] += 1;
                }
            }
            (hist, joint)
        })
        .reduce(
            || (vec![0u64; slots], vec![0u64; slots]),
            |(mut h, mut j), (h2, j2)| {
                h.iter_mut().zip(h2).for_each(|(a, b)| *a += b);
                j.iter_mut().zip(j2).for_each(|(a, b)| *a += b);
                (h, j)
            },
        );

    Ok(WalkStats {
        n,
        rule,
        count_hist,
        joint_pos,
    })
}

/// Returns `(N_n, S_(n-1))` for one encoded path.
#[inline]
fn walk(path: u64, n: u32, rule: PositivityRule) -> (usize, i64) {
    let mut count = rule.initial_count();
    let mut prev = 0i64;
    let mut sum = 0i64;
    for k in 0..n {
        prev = sum;
        sum += if path >> k & 1 == 1 { 1 } else { -1 };
        if rule.counts(prev, sum) {
            count += 1;
        }
    }
    (count, prev)
}

/// Normalizes the histogram into exact probabilities.
///
/// Under `ChungFeller` the result has length `n` (the trailing always-empty
/// slot is dropped); under `NonNegative` it spans `0..=n+1`.
pub fn oracle_distribution(n: u32, rule: PositivityRule) -> Result<Distribution> {
    oracle_distribution_capped(n, rule, DEFAULT_CAP)
}

pub fn oracle_distribution_capped(n: u32, rule: PositivityRule, cap: u32) -> Result<Distribution> {
    let stats = enumerate_capped(n, rule, cap)?;
    let denom = BigInt::from(1u8) << n as usize;
    let keep = match rule {
        PositivityRule::ChungFeller => n as usize + 1,
        PositivityRule::NonNegative => n as usize + 2,
    };
    let mass = stats.count_hist[..keep]
        .iter()
        .map(|&c| Rational::new(BigInt::from(c), denom.clone()))
        .collect();
    Distribution::new(mass)
}

/// Enumerated `P(S_(2n-1) > 0 | N_2n = 2r)` for `r = 0..=n`.
pub fn oracle_conditional(n: u32) -> Result<Vec<Rational>> {
    oracle_conditional_capped(n, DEFAULT_CAP)
}

pub fn oracle_conditional_capped(n: u32, cap: u32) -> Result<Vec<Rational>> {
    if n == 0 {
        return Err(Error::Domain("conditional law needs n >= 1".into()));
    }
    let stats = enumerate_capped(2 * n, PositivityRule::ChungFeller, cap)?;
    (0..=n as usize)
        .map(|r| {
            let given = stats.count_hist[2 * r];
            if given.is_zero() {
                return Err(Error::Domain(format!("conditioning event N = {} is empty", 2 * r)));
            }
            Ok(Rational::new(
                BigInt::from(stats.joint_pos[2 * r]),
                BigInt::from(given),
            ))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};

    #[test]
    fn enumerate_examples() {
        let s = enumerate(3, PositivityRule::ChungFeller).unwrap();
        assert_eq!(s.count_hist, vec![3, 1, 1, 3, 0]);

        let s = enumerate(0, PositivityRule::ChungFeller).unwrap();
        assert_eq!(s.count_hist[0], 1);
        assert_eq!(s.total(), 1);

        let s = enumerate(1, PositivityRule::NonNegative).unwrap();
        assert_eq!(s.count_hist, vec![0, 1, 1]);
    }

    #[test]
    fn hand_enumerated_paths_of_length_three() {
        // (+,+,+)=3 (+,+,-)=3 (+,-,+)=3 (+,-,-)=2 (-,+,+)=1 (-,+,-)=0 (-,-,+)=0 (-,-,-)=0
        let expected = [
            (&[1, 1, 1], 3),
            (&[1, 1, -1], 3),
            (&[1, -1, 1], 3),
            (&[1, -1, -1], 2),
            (&[-1, 1, 1], 1),
            (&[-1, 1, -1], 0),
            (&[-1, -1, 1], 0),
            (&[-1, -1, -1], 0),
        ];
        for (steps, n3) in expected {
            let path = steps
                .iter()
                .enumerate()
                .filter(|(_, &s)| s == 1)
                .fold(0u64, |acc, (k, _)| acc | 1 << k);
            assert_eq!(walk(path, 3, PositivityRule::ChungFeller).0, n3, "{steps:?}");
        }
    }

    #[test]
    fn distribution_examples() {
        let d = oracle_distribution(3, PositivityRule::ChungFeller).unwrap();
        assert_eq!(d.mass(), &[ratio(3, 8), ratio(1, 8), ratio(1, 8), ratio(3, 8)]);
        let d = oracle_distribution(2, PositivityRule::ChungFeller).unwrap();
        assert_eq!(d.mass(), &[ratio(1, 2), int(0), ratio(1, 2)]);
        let d = oracle_distribution(0, PositivityRule::NonNegative).unwrap();
        assert_eq!(d.mass(), &[int(0), int(1)]);
    }

    #[test]
    fn conditional_examples() {
        assert_eq!(oracle_conditional(1).unwrap(), vec![int(0), int(1)]);
        assert_eq!(
            oracle_conditional(2).unwrap(),
            vec![int(0), ratio(1, 2), int(1)]
        );
        assert_eq!(
            oracle_conditional(3).unwrap(),
            vec![int(0), ratio(1, 3), ratio(2, 3), int(1)]
        );
        assert!(oracle_conditional(0).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            enumerate(25, PositivityRule::ChungFeller).unwrap_err(),
            Error::CapExceeded { n: 25, cap: 24 }
        );
        assert!(enumerate_capped(5, PositivityRule::NonNegative, 4).is_err());
        assert!(oracle_conditional_capped(3, 5).is_err());
    }

    #[test]
    fn histogram_invariants() {
        for n in 0..=16u32 {
            for rule in [PositivityRule::ChungFeller, PositivityRule::NonNegative] {
                let s = enumerate(n, rule).unwrap();
                assert_eq!(s.total(), 1u64 << n);
                assert!(s.joint_pos.iter().zip(&s.count_hist).all(|(j, c)| j <= c));
                if rule == PositivityRule::NonNegative {
                    assert_eq!(s.count_hist[0], 0, "n = {n}");
                } else {
                    let n = n as usize;
                    for j in 0..=n {
                        assert_eq!(s.count_hist[j], s.count_hist[n - j], "n = {n}, j = {j}");
                    }
                    assert_eq!(s.count_hist[n + 1], 0);
                }
            }
        }
    }

    #[test]
    fn rule_parses_round_trip() {
        for rule in [PositivityRule::ChungFeller, PositivityRule::NonNegative] {
            assert_eq!(rule.to_string().parse::<PositivityRule>().unwrap(), rule);
        }
        assert!("positive".parse::<PositivityRule>().is_err());
    }
}
