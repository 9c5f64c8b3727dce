use alloc::vec::Vec;

use super::surfaces::spanned_surfaces;
use crate::geometry::{GeneralizedSphere, PointSet};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SurfaceRecord {
    pub surface: GeneralizedSphere,
    pub incidences: usize,
}

/// Incidence statistics of all surfaces through at least `d+1` points.
///
/// `dyadic_*[i]` counts surfaces with `2^i <= k < 2^(i+1)` incidences;
/// `rich_*[j]` is `(r, number of surfaces with at least r incidences)` for
/// `r = d+1, d+2, ...` up to the largest incidence count.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RichSurfaceHistogram {
    pub d: usize,
    pub records: Vec<SurfaceRecord>,
    pub dyadic_spheres: Vec<usize>,
    pub dyadic_hyperplanes: Vec<usize>,
    pub rich_spheres: Vec<(usize, usize)>,
    pub rich_hyperplanes: Vec<(usize, usize)>,
}

impl RichSurfaceHistogram {
    /// Number of surfaces, of either kind, with at least `r` incidences.
    pub fn rich_count(&self, r: usize) -> usize {
        self.records.iter().filter(|rec| rec.incidences >= r).count()
    }

    /// `sum over surfaces of C(k, arity)`: each `arity`-tuple counted once
    /// per recorded surface containing it.
    pub fn tuple_incidences(&self, arity: usize) -> u128 {
        self.records.iter().map(|rec| binomial(rec.incidences as u64, arity as u64)).sum()
    }

    pub fn spheres(&self) -> impl Iterator<Item = &SurfaceRecord> {
        self.records.iter().filter(|r| r.surface.is_sphere())
    }

    pub fn hyperplanes(&self) -> impl Iterator<Item = &SurfaceRecord> {
        self.records.iter().filter(|r| r.surface.is_hyperplane())
    }
}

pub fn rich_surface_histogram(ps: &PointSet) -> Result<RichSurfaceHistogram> {
    let d = ps.d();
    let records: Vec<SurfaceRecord> = spanned_surfaces(ps)?
        .into_iter()
        .filter(|inc| inc.len() >= d + 1)
        .map(|inc| SurfaceRecord { incidences: inc.len(), surface: inc.surface })
        .collect();
    let spheres: Vec<usize> = records.iter().filter(|r| r.surface.is_sphere()).map(|r| r.incidences).collect();
    let planes: Vec<usize> = records.iter().filter(|r| r.surface.is_hyperplane()).map(|r| r.incidences).collect();
    Ok(RichSurfaceHistogram {
        d,
        dyadic_spheres: dyadic(&spheres),
        dyadic_hyperplanes: dyadic(&planes),
        rich_spheres: cumulative(&spheres, d + 1),
        rich_hyperplanes: cumulative(&planes, d + 1),
        records,
    })
}

fn dyadic(counts: &[usize]) -> Vec<usize> {
    let mut buckets = Vec::new();
    for &k in counts {
        let i = (usize::BITS - 1 - k.leading_zeros()) as usize;
        if buckets.len() <= i {
            buckets.resize(i + 1, 0);
        }
        buckets[i] += 1;
    }
    buckets
}

fn cumulative(counts: &[usize], from: usize) -> Vec<(usize, usize)> {
    let max = counts.iter().copied().max().unwrap_or(0);
    (from..=max).map(|r| (r, counts.iter().filter(|&&k| k >= r).count())).collect()
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}
