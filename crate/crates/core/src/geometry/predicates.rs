//! Exact incidence predicates built on the paraboloid lift `p -> (p, |p|^2)`.
//!
//! Under the lift, spheres and hyperplanes of `R^d` become hyperplanes of
//! `R^{d+1}`, so "on a common sphere or hyperplane" is a rank condition on
//! the lifted points and is decided by one determinant.

use alloc::vec::Vec;

use itertools::Itertools;
use num_traits::Zero;

use super::exact::{cofactor_kernel, det_is_zero};
use super::{GeneralizedSphere, LatticePoint, PointSet};
use crate::linalg::{self, rat, Rat};
use crate::{Error, Result};

/// `(p_1, ..., p_d, |p|^2)`.
///
/// # Panics
/// If `|p|^2` does not fit in an `i64`.
pub fn lift(p: &LatticePoint) -> LatticePoint {
    let norm = i64::try_from(p.norm_sq()).expect("lifted coordinate overflows i64");
    let mut coords = p.coords().to_vec();
    coords.push(norm);
    LatticePoint::new(coords)
}

pub fn canonicalize(raw: &[i128]) -> Result<GeneralizedSphere> {
    GeneralizedSphere::canonicalize(raw)
}

pub fn on_surface(s: &GeneralizedSphere, p: &LatticePoint) -> Result<bool> {
    if s.dim() != p.dim() {
        return Err(Error::DimensionMismatch { expected: s.dim(), found: p.dim() });
    }
    Ok(s.contains(p.coords()))
}

pub(crate) fn check_distinct<P: core::borrow::Borrow<LatticePoint>>(pts: &[P]) -> Result<()> {
    for (i, a) in pts.iter().enumerate() {
        if pts[i + 1..].iter().any(|b| b.borrow() == a.borrow()) {
            return Err(Error::DuplicatePoint);
        }
    }
    Ok(())
}

/// Checks `pts.len() == d + extra` with a common dimension `d` and returns `d`.
fn check_shape<P: core::borrow::Borrow<LatticePoint>>(pts: &[P], extra: usize) -> Result<usize> {
    let d = match pts.first() {
        Some(p) => p.borrow().dim(),
        None => return Err(Error::WrongArity { expected: extra, found: 0 }),
    };
    if let Some(p) = pts.iter().find(|p| p.borrow().dim() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: p.borrow().dim() });
    }
    if pts.len() != d + extra {
        return Err(Error::WrongArity { expected: d + extra, found: pts.len() });
    }
    check_distinct(pts)?;
    Ok(d)
}

/// `d+1` points of `R^d` on a common hyperplane: `det[1, p_i] = 0`.
pub fn is_cohyperplanar(pts: &[LatticePoint]) -> Result<bool> {
    let d = check_shape(pts, 1)?;
    Ok(cohyperplanar_unchecked(pts, d))
}

pub(crate) fn cohyperplanar_unchecked<P: core::borrow::Borrow<LatticePoint>>(pts: &[P], d: usize) -> bool {
    // Subtracting the first row reduces det[1, p_i] to det[p_i - p_0].
    let origin = pts[0].borrow().coords();
    let mut m = Vec::with_capacity(d * d);
    for p in &pts[1..] {
        m.extend(p.borrow().coords().iter().zip(origin).map(|(&a, &b)| i128::from(a) - i128::from(b)));
    }
    det_is_zero(&m, d)
}

/// `d+2` points of `R^d` on a common sphere or hyperplane:
/// `det[1, p_i, |p_i|^2] = 0`.
pub fn is_cospherical_or_cohyperplanar(pts: &[LatticePoint]) -> Result<bool> {
    let d = check_shape(pts, 2)?;
    Ok(cospherical_unchecked(pts, d))
}

pub(crate) fn cospherical_unchecked<P: core::borrow::Borrow<LatticePoint>>(pts: &[P], d: usize) -> bool {
    // Translating p_0 to the origin is a column operation on [1, p, |p|^2],
    // and the first row then becomes (1, 0, ..., 0).
    let origin = pts[0].borrow().coords();
    let k = d + 1;
    let mut m = Vec::with_capacity(k * k);
    for p in &pts[1..] {
        let mut norm = 0i128;
        for (&a, &b) in p.borrow().coords().iter().zip(origin) {
            let v = i128::from(a) - i128::from(b);
            norm += v * v;
            m.push(v);
        }
        m.push(norm);
    }
    det_is_zero(&m, k)
}

/// True iff no `d+1` points of the set lie on a common hyperplane.
pub fn in_general_position(ps: &PointSet) -> bool {
    let d = ps.d();
    ps.points().iter().combinations(d + 1).all(|sub| !cohyperplanar_unchecked(&sub, d))
}

/// The unique sphere through `d+1` points in general position.
pub fn sphere_through(pts: &[LatticePoint]) -> Result<GeneralizedSphere> {
    let d = check_shape(pts, 1)?;
    if cohyperplanar_unchecked(pts, d) {
        return Err(Error::Degenerate);
    }
    match subset_surface(pts)? {
        SubsetSurface::Unique(s) if s.is_sphere() => Ok(s),
        _ => Err(Error::Internal("points in general position without a unique sphere".into())),
    }
}

/// All generalized spheres through a `(d+1)`-subset.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum SubsetSurface {
    /// The lifted points are affinely independent: exactly one surface.
    Unique(GeneralizedSphere),
    /// The lifted points span a lower-dimensional flat (a `k`-sphere or
    /// `k`-flat with `k < d-1`). The basis is the canonical echelon basis of
    /// every surface through it.
    Flat(Vec<GeneralizedSphere>),
}

impl SubsetSurface {
    /// Surfaces that stand in for the subset when bucketing: the unique one,
    /// or for a flat the first sphere and the first hyperplane of its basis.
    /// A flat always lies in some hyperplane.
    pub(crate) fn representatives(&self) -> Vec<GeneralizedSphere> {
        match self {
            SubsetSurface::Unique(s) => alloc::vec![s.clone()],
            SubsetSurface::Flat(basis) => {
                let mut reps = Vec::with_capacity(2);
                reps.extend(basis.iter().find(|s| s.is_sphere()).cloned());
                reps.extend(basis.iter().find(|s| s.is_hyperplane()).cloned());
                reps
            }
        }
    }
}

/// The surfaces through `d+1` distinct points of a common dimension `d`.
pub(crate) fn subset_surface<P: core::borrow::Borrow<LatticePoint>>(pts: &[P]) -> Result<SubsetSurface> {
    let d = pts[0].borrow().dim();
    debug_assert_eq!(pts.len(), d + 1);
    let cols = d + 2;
    let mut m = Vec::with_capacity((d + 1) * cols);
    for p in pts {
        let p = p.borrow();
        m.push(p.norm_sq());
        m.extend(p.coords().iter().map(|&c| i128::from(c)));
        m.push(1);
    }
    let cof = cofactor_kernel(&m, d + 1);
    if cof.iter().any(|c| !c.is_zero()) {
        return GeneralizedSphere::from_big(&cof).map(SubsetSurface::Unique);
    }
    let rows: Vec<Vec<Rat>> = m.chunks_exact(cols).map(|r| r.iter().map(|&v| rat(v)).collect()).collect();
    let basis = linalg::kernel(&rows, cols)
        .iter()
        .map(|row| GeneralizedSphere::from_big(&linalg::primitive(row)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SubsetSurface::Flat(basis))
}
