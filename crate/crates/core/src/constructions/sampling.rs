use alloc::vec::Vec;

use rand::distributions::{Bernoulli, Distribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{for_each_grid_point, LatticePoint, PointSet};
use crate::{Error, Result};

/// Inclusion probability, exact when given as a ratio.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Probability {
    Ratio(u32, u32),
    Real(f64),
}

impl Probability {
    pub fn value(self) -> f64 {
        match self {
            Probability::Ratio(a, b) => f64::from(a) / f64::from(b),
            Probability::Real(p) => p,
        }
    }

    fn bernoulli(self) -> Result<Bernoulli> {
        let b = match self {
            Probability::Ratio(a, b) => Bernoulli::from_ratio(a, b),
            Probability::Real(p) => Bernoulli::new(p),
        };
        b.map_err(|_| Error::InvalidParameter(alloc::format!("probability {self:?} outside [0, 1]")))
    }
}

/// The generator behind every seeded stage: ChaCha8 seeded from `seed`, on
/// its own stream per stage so stages never share randomness.
pub(crate) fn stage_rng(seed: u64, stage: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stage);
    rng
}

/// Each point of `[n]^d` kept independently with probability `prob`,
/// scanning the grid in lexicographic order.
pub fn random_sample(n: i64, d: usize, prob: Probability, seed: u64) -> Result<PointSet> {
    sample_grid(n, d, prob, &mut stage_rng(seed, 0))
}

pub(crate) fn sample_grid(n: i64, d: usize, prob: Probability, rng: &mut ChaCha8Rng) -> Result<PointSet> {
    let coin = prob.bernoulli()?;
    PointSet::empty(d, n)?; // rejects d < 2 and n < 1 before scanning
    let mut points = Vec::new();
    for_each_grid_point(d, n, |x| {
        if coin.sample(rng) {
            points.push(LatticePoint::new(x.to_vec()));
        }
    });
    PointSet::new(d, n, points)
}

/// Keeps each point of `ps` independently with probability `prob`.
pub(crate) fn subsample(ps: &PointSet, prob: Probability, rng: &mut ChaCha8Rng) -> Result<PointSet> {
    let coin = prob.bernoulli()?;
    Ok(ps.retain_indices(|_| coin.sample(rng)))
}

/// Number of subcubes per side for the pipeline partition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartitionChoice {
    pub parts: i64,
    /// `n^(3(d+1)/(d^2+d-1)) |S|^(-1/(d^2+d-1))`.
    pub formula: f64,
    pub clamped: bool,
}

/// The smallest power of 2 at or above the formula value, clamped to the
/// power-of-2 divisors of `n` strictly between 1 and `n`. When `n` has no
/// such divisor the partition is trivial (`D = 1`).
#[allow(non_snake_case)]
pub fn choose_D(n: i64, d: usize, sphere_estimate: f64) -> PartitionChoice {
    let k = (d * d + d - 1) as f64;
    let exponent = 3.0 * (d as f64 + 1.0) / k;
    let formula = libm::exp(exponent * libm::log(n as f64) - libm::log(sphere_estimate.max(1.0)) / k);
    let mut target = 1i64;
    while (target as f64) < formula && target < i64::MAX / 4 {
        target *= 2;
    }
    let candidates: Vec<i64> =
        (1..63).map(|e| 1i64 << e).take_while(|&c| c < n).filter(|&c| n % c == 0).collect();
    let (Some(&lo), Some(&hi)) = (candidates.first(), candidates.last()) else {
        return PartitionChoice { parts: 1, formula, clamped: true };
    };
    let parts = candidates.iter().copied().find(|&c| c >= target).unwrap_or(hi).max(lo);
    PartitionChoice { parts, formula, clamped: parts != target }
}
