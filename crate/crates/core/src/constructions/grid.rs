use alloc::vec::Vec;

use crate::geometry::{LatticePoint, PointSet};
use crate::{Error, Result};

/// Partition of `[1, n]^d` into `D^d` subcubes of side `n / D`. Subcube
/// `(i_1, ..., i_d)` holds the points with `i_j (n/D) < p_j <= (i_j + 1)(n/D)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GridPartition {
    n: i64,
    d: usize,
    parts: i64,
}

impl GridPartition {
    /// `parts` must divide `n`. `parts == n` (unit cells) is allowed.
    pub fn new(n: i64, d: usize, parts: i64) -> Result<Self> {
        if d < 1 || parts < 1 || parts > n || n % parts != 0 {
            return Err(Error::InvalidParameter(alloc::format!(
                "{parts} subcubes per side do not evenly partition [1, {n}]"
            )));
        }
        Ok(GridPartition { n, d, parts })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `D`, the number of subcubes along each axis.
    pub fn parts(&self) -> i64 {
        self.parts
    }

    pub fn side(&self) -> i64 {
        self.n / self.parts
    }

    pub fn subcube_count(&self) -> usize {
        (self.parts as usize).pow(self.d as u32)
    }

    /// Lattice points per subcube, `(n/D)^d`.
    pub fn points_per_subcube(&self) -> u64 {
        (self.side() as u64).pow(self.d as u32)
    }

    /// `i_j = ceil(p_j D / n) - 1` for each axis.
    pub fn subcube_of(&self, p: &LatticePoint) -> Vec<usize> {
        p.coords().iter().map(|&c| ((c - 1) / self.side()) as usize).collect()
    }

    /// Row-major index of a subcube multi-index.
    pub fn linear_index(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.parts as usize + i)
    }

    /// Closed real interval `[lo, hi]` covered by slab `i` along any axis.
    pub fn slab_bounds(&self, i: usize) -> (i64, i64) {
        let w = self.side();
        (i as i64 * w + 1, (i as i64 + 1) * w)
    }

    /// Closed real cell `[i w, (i+1) w]`, `w = n/D`, of slab `i`. Point `p`
    /// belongs to slab `i` iff `i w < p <= (i+1) w`.
    pub fn cell_bounds(&self, i: usize) -> (i64, i64) {
        let w = self.side();
        (i as i64 * w, (i as i64 + 1) * w)
    }

    /// `|Q_j ∩ ps|` for every subcube, in row-major order.
    pub fn populations(&self, ps: &PointSet) -> Vec<u64> {
        let mut pop = alloc::vec![0u64; self.subcube_count()];
        for p in ps.points() {
            pop[self.linear_index(&self.subcube_of(p))] += 1;
        }
        pop
    }
}
