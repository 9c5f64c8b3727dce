use alloc::vec::Vec;

use itertools::Itertools;
use rand::seq::SliceRandom;

use super::report::{ConstructionReport, Method};
use super::sampling::stage_rng;
use crate::analysis::find_violations;
use crate::geometry::{for_each_grid_point, subset_surface, GeneralizedSphere, LatticePoint, PointSet, SubsetSurface};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum CandidateOrder {
    #[default]
    Lexicographic,
    /// A seeded shuffle of the grid.
    Random,
}

/// Scans `[n]^d` once, keeping each point whose addition leaves no `d+2`
/// points on a sphere or hyperplane. The result is maximal: a rejected point
/// already conflicted with a subset of the final set.
pub fn greedy_construct(n: i64, d: usize, seed: u64, order: CandidateOrder) -> Result<(PointSet, ConstructionReport)> {
    let mut candidates = Vec::new();
    PointSet::empty(d, n)?;
    for_each_grid_point(d, n, |x| candidates.push(LatticePoint::new(x.to_vec())));
    if order == CandidateOrder::Random {
        candidates.shuffle(&mut stage_rng(seed, 0));
    }
    let mut state = GreedyState::new(d);
    for q in candidates {
        state.offer(q);
    }
    let ps = PointSet::new(d, n, state.chosen)?;
    let mut report = ConstructionReport::new(Method::Greedy, d, n, seed);
    report.final_size = ps.len() as u64;
    report.verified = find_violations(&ps, d + 2)?.is_empty();
    if !report.verified {
        return Err(Error::Internal("greedy output has a violation".into()));
    }
    Ok((ps, report))
}

struct GreedyState {
    d: usize,
    chosen: Vec<LatticePoint>,
    /// Surfaces through every `(d+1)`-subset of `chosen`.
    surfaces: Vec<GeneralizedSphere>,
    /// Some `(d+1)`-subset spans no unique surface, so every further point
    /// completes a violation.
    degenerate: bool,
}

impl GreedyState {
    fn new(d: usize) -> Self {
        GreedyState { d, chosen: Vec::new(), surfaces: Vec::new(), degenerate: false }
    }

    fn offer(&mut self, q: LatticePoint) -> bool {
        if self.degenerate || self.surfaces.iter().any(|s| s.contains(q.coords())) {
            return false;
        }
        for rest in self.chosen.iter().combinations(self.d) {
            let mut sub = rest;
            sub.push(&q);
            match subset_surface(&sub).expect("distinct points of one dimension") {
                SubsetSurface::Unique(s) => self.surfaces.push(s),
                SubsetSurface::Flat(_) => self.degenerate = true,
            }
        }
        self.chosen.push(q);
        true
    }
}
