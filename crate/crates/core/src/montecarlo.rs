//! Seeded simulation of long walks, for lengths enumeration cannot reach.
//!
//! # Random numbers
//!
//! Everything is driven by SplitMix64:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! return z ^ (z >> 31)
//! ```
//!
//! Seeded with 1234567 the first outputs are 6457827717110365317,
//! 3203168211198807973, 9817491932198370423.
//!
//! Sample `i` (counting from 0) gets its own generator, seeded with the
//! `(i+1)`-th output of a SplitMix64 stream started at the run seed. Each
//! output word supplies 64 steps, least significant bit first, with a set
//! bit meaning `+1`. Because every sample is independent of every other, the
//! histogram does not depend on how samples are split across threads.

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::oracle::PositivityRule;

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const BLOCK: u64 = 4096;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix64(self.state)
    }
}

/// Seed of sample `index`: output `index + 1` of SplitMix64 started at `seed`.
pub fn sample_seed(seed: u64, index: u64) -> u64 {
    mix64(seed.wrapping_add(GAMMA.wrapping_mul(index.wrapping_add(1))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimConfig {
    pub m: u32,
    pub samples: u64,
    pub seed: u64,
    pub rule: PositivityRule,
}

impl SimConfig {
    pub fn new(m: u32, samples: u64, seed: u64) -> Self {
        SimConfig { m, samples, seed, rule: PositivityRule::ChungFeller }
    }

    pub fn with_rule(self, rule: PositivityRule) -> Self {
        SimConfig { rule, ..self }
    }

    /// Histogram slots: `m + 1` under Chung–Feller, `m + 2` when `S_0` counts.
    pub fn slots(&self) -> usize {
        match self.rule {
            PositivityRule::ChungFeller => self.m as usize + 1,
            PositivityRule::NonNegative => self.m as usize + 2,
        }
    }
}

/// The `m` steps of sample `index`, as `+1`/`-1`.
pub fn sample_steps(seed: u64, index: u64, m: u32) -> Vec<i8> {
    let mut rng = SplitMix64::new(sample_seed(seed, index));
    let mut word = 0;
    (0..m)
        .map(|k| {
            if k % 64 == 0 {
                word = rng.next_u64();
            }
            if word >> (k % 64) & 1 == 1 {
                1
            } else {
                -1
            }
        })
        .collect()
}

fn sample_count(seed: u64, index: u64, m: u32, rule: PositivityRule) -> usize {
    let mut rng = SplitMix64::new(sample_seed(seed, index));
    let mut count = rule.initial_count();
    let mut sum = 0i64;
    let mut remaining = m;
    while remaining > 0 {
        let mut word = rng.next_u64();
        for _ in 0..remaining.min(64) {
            let prev = sum;
            sum += ((word & 1) as i64) * 2 - 1;
            word >>= 1;
            if rule.counts(prev, sum) {
                count += 1;
            }
        }
        remaining = remaining.saturating_sub(64);
    }
    count
}

/// Empirical histogram of `N_m` over `cfg.samples` walks.
pub fn simulate(cfg: &SimConfig) -> Result<Vec<u64>> {
    if cfg.samples == 0 {
        return Err(Error::Domain("simulation needs at least one sample".into()));
    }
    let slots = cfg.slots();
    let blocks = cfg.samples.div_ceil(BLOCK);
    let hist = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut hist = vec![0u64; slots];
            for i in b * BLOCK..((b + 1) * BLOCK).min(cfg.samples) {
                hist[sample_count(cfg.seed, i, cfg.m, cfg.rule)] += 1;
            }
            hist
        })
        .reduce(
            || vec![0u64; slots],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(hist)
}

/// Total-variation distance `(1/2) sum_j |emp_j / samples - exact_j|`.
pub fn tv_distance(emp: &[u64], exact: &Distribution) -> Result<f64> {
    if emp.len() != exact.mass().len() {
        return Err(Error::Domain(format!(
            "histogram has {} slots, distribution has {}",
            emp.len(),
            exact.mass().len()
        )));
    }
    let samples: u64 = emp.iter().sum();
    if samples == 0 {
        return Err(Error::Domain("empty histogram".into()));
    }
    let total = samples as f64;
    let sum: f64 = emp
        .iter()
        .zip(exact.mass())
        .map(|(&c, p)| (c as f64 / total - p.to_f64().unwrap_or(f64::NAN)).abs())
        .sum();
    Ok(sum / 2.0)
}

/// Limiting law of the fraction of positive time: `(2/pi) asin(sqrt(u))`.
pub fn arcsine_cdf(u: f64) -> f64 {
    std::f64::consts::FRAC_2_PI * u.clamp(0.0, 1.0).sqrt().asin()
}

/// Sup-norm distance between the empirical CDF of `N_m / m` and the arcsine CDF.
///
/// The empirical CDF is a step function, so the supremum is attained at a
/// jump `j / m`, either just before or at it.
pub fn arcsine_sup_distance(hist: &[u64], m: u32) -> f64 {
    let total: u64 = hist.iter().sum();
    let total = total as f64;
    let mut below = 0u64;
    let mut sup: f64 = 0.0;
    for (j, &c) in hist.iter().enumerate() {
        let f = arcsine_cdf(j as f64 / m as f64);
        let left = below as f64 / total;
        below += c;
        let right = below as f64 / total;
        sup = sup.max((left - f).abs()).max((right - f).abs());
    }
    sup
}
