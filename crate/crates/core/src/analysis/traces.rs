//! Traces of spheres on small subsets, checked against the Sauer–Shelah bound.
//!
//! A subset `T` of `P'` is the trace of some genuine sphere iff the linear
//! space `V` of generalized spheres through `T` contains a genuine sphere and
//! no other point of `P'` lies on every member of `V`. Avoiding finitely many
//! proper subspaces of `V` is always possible, so this decides realizability
//! exactly without constructing the sphere. The empty set is always a trace.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use itertools::Itertools;
use num_traits::Zero;
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::histogram::binomial;
use crate::geometry::PointSet;
use crate::linalg::{self, rat, Rat};
use crate::{Error, Result};

/// Largest number of `z`-subsets enumerated exhaustively before sampling.
pub const EXHAUSTIVE_BUDGET: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TraceReport {
    pub z: usize,
    pub subsets_examined: u64,
    /// All `z`-subsets were examined; otherwise `max_traces` is a lower bound
    /// on the shatter function.
    pub exhaustive: bool,
    pub max_traces: u64,
    /// `sum_{i <= d+1} C(z, i)`.
    pub sauer_bound: u128,
}

impl TraceReport {
    pub fn within_bound(&self) -> bool {
        u128::from(self.max_traces) <= self.sauer_bound
    }
}

/// Maximum, over `z`-subsets `P'` of `ps`, of the number of distinct sets
/// `S ∩ P'` for spheres `S`. Exhaustive when there are at most
/// [`EXHAUSTIVE_BUDGET`] subsets, otherwise `trials` seeded samples.
pub fn count_traces(ps: &PointSet, z: usize, trials: u64, seed: u64) -> Result<TraceReport> {
    let m = ps.len();
    if z > m {
        return Err(Error::InvalidParameter(alloc::format!("subset size {z} exceeds {m} points")));
    }
    if z > 16 {
        return Err(Error::InvalidParameter(alloc::format!("subset size {z} above 16")));
    }
    let d = ps.d();
    let sauer_bound = (0..=d as u64 + 1).map(|i| binomial(z as u64, i)).sum();
    let total = binomial(m as u64, z as u64);
    let mut oracle = TraceOracle::new(ps);
    let mut max_traces = 0;
    let (subsets_examined, exhaustive) = if total <= EXHAUSTIVE_BUDGET {
        for sub in (0..m).combinations(z) {
            max_traces = max_traces.max(oracle.traces(&sub));
        }
        (total as u64, true)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let mut sub = index::sample(&mut rng, m, z).into_vec();
            sub.sort_unstable();
            max_traces = max_traces.max(oracle.traces(&sub));
        }
        (trials, false)
    };
    Ok(TraceReport { z, subsets_examined, exhaustive, max_traces, sauer_bound })
}

/// Generalized spheres through a point set, as a basis of coefficient
/// vectors `(a_lift, a, a_0)`.
enum Pencil {
    Int(Vec<Vec<i128>>),
    Rat(Vec<Vec<Rat>>),
}

impl Pencil {
    fn has_genuine_sphere(&self) -> bool {
        match self {
            Pencil::Int(b) => b.iter().any(|v| v[0] != 0),
            Pencil::Rat(b) => b.iter().any(|v| !v[0].is_zero()),
        }
    }

    /// Every member of the pencil passes through the lifted point `q`.
    fn forces(&self, q: &[i128]) -> bool {
        let rational = |b: &[Vec<Rat>]| {
            let q: Vec<Rat> = q.iter().map(|&x| rat(x)).collect();
            b.iter().all(|v| linalg::dot(v, &q).is_zero())
        };
        match self {
            Pencil::Int(b) => b.iter().all(|v| match linalg::dot_i128(v, q) {
                Some(x) => x == 0,
                None => rational(&[v.iter().map(|&x| rat(x)).collect()]),
            }),
            Pencil::Rat(b) => rational(b),
        }
    }
}

struct TraceOracle {
    /// Rows `(|p|^2, p, 1)`.
    lifted: Vec<Vec<i128>>,
    /// Bitmask of `T` to the bitmask of points on every surface through `T`,
    /// or `None` when no genuine sphere passes through `T`. Only used for
    /// sets of at most 128 points.
    closures: BTreeMap<u128, Option<u128>>,
}

impl TraceOracle {
    fn new(ps: &PointSet) -> Self {
        let lifted = ps
            .points()
            .iter()
            .map(|p| {
                let mut row = Vec::with_capacity(p.dim() + 2);
                row.push(p.norm_sq());
                row.extend(p.coords().iter().map(|&c| i128::from(c)));
                row.push(1);
                row
            })
            .collect();
        TraceOracle { lifted, closures: BTreeMap::new() }
    }

    fn pencil(&self, t: &[usize]) -> Pencil {
        let cols = self.lifted[0].len();
        let rows: Vec<Vec<i128>> = t.iter().map(|&j| self.lifted[j].clone()).collect();
        match linalg::kernel_i128(&rows, cols) {
            Some(b) => Pencil::Int(b),
            None => {
                let rows: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
                Pencil::Rat(linalg::kernel(&rows, cols))
            }
        }
    }

    /// Distinct sphere traces on the points `sub` (sorted indices).
    fn traces(&mut self, sub: &[usize]) -> u64 {
        let mut count = 1; // the empty trace
        let mut t = Vec::with_capacity(sub.len());
        for mask in 1u32..(1 << sub.len()) {
            t.clear();
            t.extend(sub.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &j)| j));
            count += u64::from(self.realizable(&t, sub));
        }
        count
    }

    fn realizable(&mut self, t: &[usize], sub: &[usize]) -> bool {
        if self.lifted.len() > 128 {
            let pencil = self.pencil(t);
            return pencil.has_genuine_sphere()
                && sub.iter().all(|q| t.binary_search(q).is_ok() || !pencil.forces(&self.lifted[*q]));
        }
        let bits = |s: &[usize]| s.iter().fold(0u128, |acc, &j| acc | 1 << j);
        let key = bits(t);
        let closure = match self.closures.get(&key) {
            Some(&c) => c,
            None => {
                let pencil = self.pencil(t);
                let c = pencil.has_genuine_sphere().then(|| {
                    self.lifted.iter().enumerate().filter(|(_, q)| pencil.forces(q)).fold(0u128, |acc, (j, _)| acc | 1 << j)
                });
                self.closures.insert(key, c);
                c
            }
        };
        closure.is_some_and(|c| c & bits(sub) == key)
    }
}
