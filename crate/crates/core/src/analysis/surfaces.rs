//! Surface bucketing: every sphere or hyperplane spanned by `d+1` points of a
//! set, with its complete member list.
//!
//! A `(d+1)`-subset whose lifted points are affinely independent spans exactly
//! one surface. A subset whose lift is degenerate (four concyclic points in
//! `R^3`, say) lies on a pencil of surfaces; it is bucketed by the canonical
//! basis of that pencil and represented by one sphere and one hyperplane from
//! the basis. Every `(d+2)`-tuple on a common surface ends up inside the
//! member list of at least one bucketed surface, which is what lets
//! violation search run over `(d+1)`-subsets instead of `(d+2)`-tuples.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use itertools::Itertools;

use crate::geometry::{subset_surface, GeneralizedSphere, PointSet, ViolationWitness};
use crate::{Error, Result};

/// A surface and the indices (into the owning [`PointSet`]) of all points on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceIncidence {
    pub surface: GeneralizedSphere,
    pub members: Vec<usize>,
}

impl SurfaceIncidence {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Which surfaces a search reports.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SurfaceKind {
    #[default]
    All,
    Spheres,
    Hyperplanes,
}

impl SurfaceKind {
    pub fn admits(self, s: &GeneralizedSphere) -> bool {
        match self {
            SurfaceKind::All => true,
            SurfaceKind::Spheres => s.is_sphere(),
            SurfaceKind::Hyperplanes => s.is_hyperplane(),
        }
    }
}

/// Distinct surfaces spanned by `(d+1)`-subsets of `ps`, in canonical order.
pub(crate) fn spanned_surface_set(ps: &PointSet) -> Result<BTreeSet<GeneralizedSphere>> {
    let d = ps.d();
    let mut surfaces = BTreeSet::new();
    let mut flats = BTreeSet::new();
    for sub in ps.points().iter().combinations(d + 1) {
        match subset_surface(&sub)? {
            crate::geometry::SubsetSurface::Unique(s) => {
                surfaces.insert(s);
            }
            flat => {
                if flats.insert(flat.clone()) {
                    surfaces.extend(flat.representatives());
                }
            }
        }
    }
    Ok(surfaces)
}

/// Every surface through at least `d+1` points of `ps`, each with its full
/// member list, sorted by surface.
pub fn spanned_surfaces(ps: &PointSet) -> Result<Vec<SurfaceIncidence>> {
    let surfaces = spanned_surface_set(ps)?;
    Ok(surfaces
        .into_iter()
        .map(|surface| {
            let members = ps
                .points()
                .iter()
                .enumerate()
                .filter(|(_, p)| surface.contains(p.coords()))
                .map(|(i, _)| i)
                .collect();
            SurfaceIncidence { surface, members }
        })
        .collect())
}

/// Every bucketed surface carrying at least `threshold` points of `ps`.
///
/// The default search uses `threshold = d + 2`; the moment-curve guarantee is
/// checked with `2d` on all surfaces and `d + 1` on hyperplanes.
pub fn find_violations(ps: &PointSet, threshold: usize) -> Result<Vec<ViolationWitness>> {
    find_violations_of_kind(ps, threshold, SurfaceKind::All)
}

pub fn find_violations_of_kind(
    ps: &PointSet,
    threshold: usize,
    kind: SurfaceKind,
) -> Result<Vec<ViolationWitness>> {
    let d = ps.d();
    if threshold < d + 1 {
        return Err(Error::InvalidParameter(alloc::format!(
            "threshold {threshold} below d+1 = {}",
            d + 1
        )));
    }
    if ps.len() < threshold {
        return Ok(Vec::new());
    }
    Ok(spanned_surfaces(ps)?
        .into_iter()
        .filter(|inc| inc.len() >= threshold && kind.admits(&inc.surface))
        .map(|inc| ViolationWitness {
            surface: inc.surface,
            members: inc.members.iter().map(|&i| ps.points()[i].clone()).collect(),
        })
        .collect())
}

/// Number of distinct `(d+2)`-subsets of `ps` on a common sphere or
/// hyperplane. A tuple on several bucketed surfaces is counted once.
pub fn count_violating_tuples(ps: &PointSet) -> Result<u128> {
    let arity = ps.d() + 2;
    let mut seen = BTreeSet::new();
    for inc in spanned_surfaces(ps)? {
        if inc.len() >= arity {
            seen.extend(inc.members.iter().copied().combinations(arity));
        }
    }
    Ok(seen.len() as u128)
}

/// True when no surface carries `d+2` points of `ps`.
pub fn is_violation_free(ps: &PointSet) -> Result<bool> {
    Ok(find_violations(ps, ps.d() + 2)?.is_empty())
}
