//! Lattice points, point sets, generalized spheres and exact predicates.

mod exact;
mod predicates;
mod surface;

use alloc::vec::Vec;
use core::fmt;

pub use exact::det_exact;
pub use predicates::{
    canonicalize, in_general_position, is_cohyperplanar, is_cospherical_or_cohyperplanar, lift,
    on_surface, sphere_through,
};
pub(crate) use predicates::{check_distinct, subset_surface, SubsetSurface};
pub use surface::GeneralizedSphere;

use crate::{Error, Result};

/// An integer point. The `[1, n]` range is enforced by the owning [`PointSet`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm_sq(&self) -> i128 {
        self.0.iter().map(|&c| i128::from(c) * i128::from(c)).sum()
    }

    /// Returns the point shifted by `offset`.
    pub fn translate(&self, offset: &[i64]) -> Self {
        LatticePoint(self.0.iter().zip(offset).map(|(a, b)| a + b).collect())
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }
}

impl<const D: usize> From<[i64; D]> for LatticePoint {
    fn from(coords: [i64; D]) -> Self {
        LatticePoint(coords.to_vec())
    }
}

impl AsRef<[i64]> for LatticePoint {
    fn as_ref(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A deduplicated, lexicographically sorted subset of `[1, n]^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PointSet {
    d: usize,
    n: i64,
    points: Vec<LatticePoint>,
}

impl PointSet {
    /// Validates and canonicalizes: duplicates are merged and the points are
    /// sorted.
    pub fn new(d: usize, n: i64, mut points: Vec<LatticePoint>) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter(alloc::format!("dimension {d} < 2")));
        }
        if n < 1 {
            return Err(Error::InvalidParameter(alloc::format!("grid size {n} < 1")));
        }
        for p in &points {
            if p.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, found: p.dim() });
            }
            if let Some(&value) = p.coords().iter().find(|&&c| c < 1 || c > n) {
                return Err(Error::OutOfRange { value, n });
            }
        }
        points.sort_unstable();
        points.dedup();
        Ok(PointSet { d, n, points })
    }

    pub fn empty(d: usize, n: i64) -> Result<Self> {
        Self::new(d, n, Vec::new())
    }

    /// Every point of `[1, n]^d`, in lexicographic order.
    pub fn full_grid(d: usize, n: i64) -> Result<Self> {
        let mut points = Vec::new();
        for_each_grid_point(d, n, |p| points.push(LatticePoint::new(p.to_vec())));
        Self::new(d, n, points)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    /// Keeps the points whose index satisfies `keep`.
    pub fn retain_indices(&self, mut keep: impl FnMut(usize) -> bool) -> PointSet {
        let points = self
            .points
            .iter()
            .enumerate()
            .filter(|&(i, _)| keep(i))
            .map(|(_, p)| p.clone())
            .collect();
        PointSet { d: self.d, n: self.n, points }
    }

    /// The set with `p` added; `p` must lie in the cube.
    pub fn with_point(&self, p: LatticePoint) -> Result<PointSet> {
        let mut points = self.points.clone();
        points.push(p);
        PointSet::new(self.d, self.n, points)
    }

    pub fn into_points(self) -> Vec<LatticePoint> {
        self.points
    }
}

/// Calls `f` on every point of `[1, n]^d` in lexicographic order.
pub fn for_each_grid_point(d: usize, n: i64, mut f: impl FnMut(&[i64])) {
    if n < 1 || d == 0 {
        return;
    }
    let mut cur = alloc::vec![1i64; d];
    loop {
        f(&cur);
        let mut i = d;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if cur[i] < n {
                cur[i] += 1;
                break;
            }
            cur[i] = 1;
        }
    }
}

/// A surface together with at least `d+2` points of a set lying on it.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ViolationWitness {
    pub surface: GeneralizedSphere,
    pub members: Vec<LatticePoint>,
}

impl ViolationWitness {
    /// Checks that every member is on the surface and that there are at
    /// least `d+2` distinct members.
    pub fn validate(&self) -> Result<()> {
        let d = self.surface.dim();
        if self.members.len() < d + 2 {
            return Err(Error::WrongArity { expected: d + 2, found: self.members.len() });
        }
        check_distinct(&self.members)?;
        for p in &self.members {
            if !on_surface(&self.surface, p)? {
                return Err(Error::Internal(alloc::format!("witness member {p} is off its surface")));
            }
        }
        Ok(())
    }
}
