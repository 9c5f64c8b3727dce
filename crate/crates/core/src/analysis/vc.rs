//! Certificates that `d+2` points are not shattered by spheres.
//!
//! Each level works in rational coordinates `t` with a Gram matrix `G`, so
//! the squared length of `t` is `t^T G t`. A sphere restricted to a
//! hyperplane is a sphere of the hyperplane; expressing the hyperplane in a
//! rational (not orthonormal) frame `x = o + B t` keeps that true as long as
//! the metric becomes `B^T G B`.

use alloc::boxed::Box;
use alloc::vec::Vec;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::geometry::{check_distinct, LatticePoint};
use crate::linalg::{self, rat, Rat};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum VcReason {
    /// No sphere contains all of `Q`.
    NotCospherical,
    /// The unique sphere through `d+1` points of `Q` also contains the rest.
    UniqueSphereForcesExtraPoint,
    /// `d+1` points of `Q` lie on a hyperplane; refuted inside it.
    DegenerateRecursed,
}

/// A subset `B` of `Q` that is not the trace of any sphere on `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcRefutation {
    pub dim: usize,
    /// `Q` in this level's coordinates: `dim + 2` points.
    pub points: Vec<Vec<Rat>>,
    pub metric: Vec<Vec<Rat>>,
    pub reason: VcReason,
    /// Indices of `B` into `points`.
    pub target: Vec<usize>,
    pub nested: Option<Box<Frame>>,
}

/// A hyperplane of the parent level holding `subset`, with coordinates
/// `x = origin + sum_j t_j basis[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub subset: Vec<usize>,
    pub origin: Vec<Rat>,
    pub basis: Vec<Vec<Rat>>,
    pub refutation: VcRefutation,
}

/// Refutes shattering of `d+2` distinct points of `R^d`.
pub fn vc_refute(q: &[LatticePoint]) -> Result<VcRefutation> {
    let d = q.first().map_or(0, LatticePoint::dim);
    if q.len() != d + 2 {
        return Err(Error::WrongArity { expected: d + 2, found: q.len() });
    }
    if d < 1 {
        return Err(Error::InvalidParameter("points need dimension >= 1".into()));
    }
    check_distinct(q)?;
    let points: Vec<Vec<Rat>> = q.iter().map(|p| p.coords().iter().map(|&c| rat(i128::from(c))).collect()).collect();
    let metric = (0..d).map(|i| (0..d).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect();
    let r = refute(points, metric)?;
    r.validate()?;
    Ok(r)
}

fn refute(points: Vec<Vec<Rat>>, metric: Vec<Vec<Rat>>) -> Result<VcRefutation> {
    let k = metric.len();
    let degenerate = (0..k + 2).combinations(k + 1).find(|sub| cohyperplanar(&points, sub));
    if let Some(subset) = degenerate {
        let origin = points[subset[0]].clone();
        let basis = hyperplane_basis(&points, &subset, k);
        let nested_points = subset
            .iter()
            .map(|&i| {
                let diff: Vec<Rat> = points[i].iter().zip(&origin).map(|(a, b)| a - b).collect();
                linalg::solve_in_span(&basis, &diff).ok_or_else(|| Error::Internal("point outside its frame".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let nested_metric = pullback(&metric, &basis);
        let refutation = refute(nested_points, nested_metric)?;
        let target = refutation.target.iter().map(|&j| subset[j]).collect();
        return Ok(VcRefutation {
            dim: k,
            points,
            metric,
            reason: VcReason::DegenerateRecursed,
            target,
            nested: Some(Box::new(Frame { subset, origin, basis, refutation })),
        });
    }
    let all: Vec<usize> = (0..k + 2).collect();
    let (reason, target) = if cospherical(&points, &metric) {
        (VcReason::UniqueSphereForcesExtraPoint, all[..k + 1].to_vec())
    } else {
        (VcReason::NotCospherical, all)
    };
    Ok(VcRefutation { dim: k, points, metric, reason, target, nested: None })
}

/// Difference vectors of `subset` from its first point, completed by unit
/// vectors to `k - 1` independent directions.
fn hyperplane_basis(points: &[Vec<Rat>], subset: &[usize], k: usize) -> Vec<Vec<Rat>> {
    let origin = &points[subset[0]];
    let mut basis: Vec<Vec<Rat>> = Vec::with_capacity(k - 1);
    let candidates = subset[1..]
        .iter()
        .map(|&i| points[i].iter().zip(origin).map(|(a, b)| a - b).collect::<Vec<Rat>>())
        .chain((0..k).map(|j| (0..k).map(|i| if i == j { Rat::one() } else { Rat::zero() }).collect()));
    for v in candidates {
        if basis.len() == k - 1 {
            break;
        }
        basis.push(v);
        if linalg::rank(&basis) < basis.len() {
            basis.pop();
        }
    }
    basis
}

/// `B^T G B` with the columns of `B` given as `basis`.
fn pullback(g: &[Vec<Rat>], basis: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let gb: Vec<Vec<Rat>> = basis.iter().map(|b| g.iter().map(|row| linalg::dot(row, b)).collect()).collect();
    basis.iter().map(|bi| gb.iter().map(|gbj| linalg::dot(bi, gbj)).collect()).collect()
}

fn differences(points: &[Vec<Rat>], subset: &[usize]) -> Vec<Vec<Rat>> {
    let origin = &points[subset[0]];
    subset[1..].iter().map(|&i| points[i].iter().zip(origin).map(|(a, b)| a - b).collect()).collect()
}

/// `k+1` points on a common hyperplane of `Q^k`.
fn cohyperplanar(points: &[Vec<Rat>], subset: &[usize]) -> bool {
    let k = points[0].len();
    linalg::rank(&differences(points, subset)) < k
}

fn lifted_rows(points: &[Vec<Rat>], metric: &[Vec<Rat>], which: &[usize]) -> Vec<Vec<Rat>> {
    which
        .iter()
        .map(|&i| {
            let t = &points[i];
            let mut row = Vec::with_capacity(t.len() + 2);
            row.push(linalg::quad_form(metric, t));
            row.extend(t.iter().cloned());
            row.push(Rat::one());
            row
        })
        .collect()
}

/// All `k+2` points on one generalized sphere.
fn cospherical(points: &[Vec<Rat>], metric: &[Vec<Rat>]) -> bool {
    let all: Vec<usize> = (0..points.len()).collect();
    linalg::rank(&lifted_rows(points, metric, &all)) < points.len()
}

impl VcRefutation {
    /// Re-checks the certificate at every level.
    pub fn validate(&self) -> Result<()> {
        let k = self.dim;
        let bad = |msg: &str| Err(Error::Internal(alloc::format!("invalid certificate at dimension {k}: {msg}")));
        if self.points.len() != k + 2 || self.points.iter().any(|p| p.len() != k) || self.metric.len() != k {
            return bad("shape");
        }
        if (0..k + 2).tuple_combinations().any(|(i, j)| self.points[i] == self.points[j]) {
            return bad("repeated point");
        }
        let symmetric = (0..k).all(|i| self.metric[i].len() == k && (0..k).all(|j| self.metric[i][j] == self.metric[j][i]));
        if !symmetric {
            return bad("metric");
        }
        match self.reason {
            VcReason::NotCospherical => {
                if self.nested.is_some() || self.target != (0..k + 2).collect::<Vec<_>>() {
                    return bad("target must be all of Q");
                }
                if cospherical(&self.points, &self.metric) {
                    return bad("points are cospherical");
                }
            }
            VcReason::UniqueSphereForcesExtraPoint => {
                if self.nested.is_some() || self.target.len() != k + 1 || !self.target.iter().tuple_windows().all(|(a, b)| a < b) {
                    return bad("target must be d+1 points");
                }
                if self.target.last().is_some_and(|&i| i >= k + 2) || cohyperplanar(&self.points, &self.target) {
                    return bad("target not in general position");
                }
                let rows = lifted_rows(&self.points, &self.metric, &self.target);
                let sphere = linalg::kernel(&rows, k + 2);
                if sphere.len() != 1 || sphere[0][0].is_zero() {
                    return bad("no unique sphere through target");
                }
                let extra: Vec<usize> = (0..k + 2).filter(|i| !self.target.contains(i)).collect();
                let on = lifted_rows(&self.points, &self.metric, &extra)
                    .iter()
                    .all(|row| linalg::dot(row, &sphere[0]).is_zero());
                if !on {
                    return bad("extra point off the sphere");
                }
            }
            VcReason::DegenerateRecursed => {
                let Some(frame) = &self.nested else { return bad("missing frame") };
                let sub = &frame.subset;
                if sub.len() != k + 1 || !sub.iter().tuple_windows().all(|(a, b)| a < b) || sub[k] >= k + 2 {
                    return bad("frame subset");
                }
                if !cohyperplanar(&self.points, sub) {
                    return bad("frame subset not cohyperplanar");
                }
                if frame.basis.len() != k - 1 || linalg::rank(&frame.basis) != k - 1 {
                    return bad("frame basis");
                }
                let inner = &frame.refutation;
                if inner.dim != k - 1 || inner.metric != pullback(&self.metric, &frame.basis) {
                    return bad("frame metric");
                }
                for (j, &i) in sub.iter().enumerate() {
                    let mut x = frame.origin.clone();
                    for (b, t) in frame.basis.iter().zip(&inner.points[j]) {
                        for (xc, bc) in x.iter_mut().zip(b) {
                            *xc += bc * t;
                        }
                    }
                    if x != self.points[i] {
                        return bad("frame does not map back onto Q");
                    }
                }
                let target: Vec<usize> = inner.target.iter().map(|&j| sub[j]).collect();
                if target != self.target {
                    return bad("target does not match nested target");
                }
                inner.validate()?;
            }
        }
        Ok(())
    }

    /// Depth of the Case-2 recursion.
    pub fn depth(&self) -> usize {
        self.nested.as_ref().map_or(0, |f| 1 + f.refutation.depth())
    }

    /// Reason at the innermost level.
    pub fn innermost_reason(&self) -> VcReason {
        self.nested.as_ref().map_or(self.reason, |f| f.refutation.innermost_reason())
    }
}
