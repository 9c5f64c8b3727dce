//! Exact counts of lattice points of `[1, n]^d` on a hyperplane or sphere.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::geometry::GeneralizedSphere;
use crate::{Error, Result};

/// Points of `[1, n]^d` on `a . x + a_0 = 0`, together with the lattice bound
/// `3^d n^(d-1) / s`, `s = max |a_i|`, for hyperplanes through the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct HyperplaneCount {
    pub count: u64,
    /// `max |a_i|`.
    pub s: u64,
    /// Dimension of the linear span of the solutions.
    pub span_dim: usize,
    /// The bound applies: `a_0 = 0`, `n >= s` and the solutions span a
    /// `(d-1)`-dimensional subspace.
    pub precondition_met: bool,
    /// `count * s <= 3^d n^(d-1)`, evaluated whether or not the bound applies.
    pub within_bound: bool,
    pub bound_numerator: u128,
}

impl HyperplaneCount {
    pub fn bound(&self) -> f64 {
        self.bound_numerator as f64 / self.s as f64
    }
}

pub fn lattice_points_on_hyperplane(a: &[i64], a0: i64, n: i64) -> Result<HyperplaneCount> {
    let d = a.len();
    if d < 2 {
        return Err(Error::InvalidParameter("hyperplane needs d >= 2".into()));
    }
    if n < 1 {
        return Err(Error::InvalidParameter(alloc::format!("grid size {n} < 1")));
    }
    let g = a.iter().fold(0i64, |g, &v| g.gcd(&v));
    if g != 1 {
        return Err(Error::InvalidParameter(alloc::format!("normal has gcd {g}, expected 1")));
    }
    // Solve for the coordinate with the largest coefficient.
    let (pivot, &ap) = a.iter().enumerate().max_by_key(|&(_, v)| v.abs()).expect("d >= 2");
    let s = ap.unsigned_abs();
    let mut count = 0u64;
    let mut span = SpanTracker::new(d);
    let mut x = alloc::vec![1i64; d];
    let free: Vec<usize> = (0..d).filter(|&i| i != pivot).collect();
    loop {
        let rest: i128 = i128::from(a0)
            + free.iter().map(|&i| i128::from(a[i]) * i128::from(x[i])).sum::<i128>();
        let ap128 = i128::from(ap);
        if rest % ap128 == 0 {
            let v = -rest / ap128;
            if (1..=i128::from(n)).contains(&v) {
                x[pivot] = v as i64;
                count += 1;
                span.add(&x);
            }
        }
        // Odometer over the free coordinates.
        let mut k = free.len();
        loop {
            if k == 0 {
                let bound_numerator = 3u128.pow(d as u32) * (n as u128).pow(d as u32 - 1);
                let span_dim = span.rank();
                return Ok(HyperplaneCount {
                    count,
                    s,
                    span_dim,
                    precondition_met: a0 == 0 && n as u64 >= s && span_dim == d - 1,
                    within_bound: u128::from(count) * u128::from(s) <= bound_numerator,
                    bound_numerator,
                });
            }
            k -= 1;
            let i = free[k];
            if x[i] < n {
                x[i] += 1;
                break;
            }
            x[i] = 1;
        }
    }
}

/// Incremental rank of integer vectors, by fraction-free elimination.
struct SpanTracker {
    dim: usize,
    rows: Vec<(usize, Vec<i128>)>,
}

impl SpanTracker {
    fn new(dim: usize) -> Self {
        SpanTracker { dim, rows: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn add(&mut self, x: &[i64]) {
        if self.rows.len() == self.dim {
            return;
        }
        let mut v: Vec<i128> = x.iter().map(|&c| i128::from(c)).collect();
        for (p, row) in &self.rows {
            if v[*p] != 0 {
                let (f, g) = (row[*p], v[*p]);
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi = *vi * f - g * ri;
                }
                normalize(&mut v);
            }
        }
        if let Some(p) = v.iter().position(|&c| c != 0) {
            self.rows.push((p, v));
        }
    }
}

fn normalize(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, &c| g.gcd(&c));
    if g > 1 {
        v.iter_mut().for_each(|c| *c /= g);
    }
}

/// Points of `[1, n]^d` on a sphere, with `count / n^(d-2)` as a diagnostic
/// against the `n^(d-2+o(1))` growth expected of a `(d-1)`-sphere.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SphereCount {
    pub count: u64,
    pub diagnostic_ratio: f64,
}

/// Counts by slicing: the first `d-1` coordinates are enumerated and the last
/// one is solved from a quadratic with an exact integer square root.
pub fn lattice_points_on_sphere(s: &GeneralizedSphere, n: i64) -> Result<SphereCount> {
    if s.is_hyperplane() || s.scaled_squared_radius().is_negative() {
        return Err(Error::EmptySphere);
    }
    if n < 1 {
        return Err(Error::InvalidParameter(alloc::format!("grid size {n} < 1")));
    }
    let d = s.dim();
    let a = BigInt::from(s.lift_coefficient());
    let b = BigInt::from(s.linear()[d - 1]);
    let two_a = &a * 2u32;
    let mut count = 0u64;
    let mut x = alloc::vec![1i64; d - 1];
    loop {
        let mut c = BigInt::from(s.constant());
        for (i, &xi) in x.iter().enumerate() {
            c += &a * xi * xi + BigInt::from(s.linear()[i]) * xi;
        }
        let disc = &b * &b - &a * &c * 4u32;
        if !disc.is_negative() {
            let root = disc.sqrt();
            if &root * &root == disc {
                let mut solutions = [-&b + &root, -&b - &root];
                let roots = if root.is_zero() { 1 } else { 2 };
                for num in solutions.iter_mut().take(roots) {
                    let (q, r) = num.div_rem(&two_a);
                    if r.is_zero() && q.to_i64().is_some_and(|v| (1..=n).contains(&v)) {
                        count += 1;
                    }
                }
            }
        }
        let mut k = d - 1;
        loop {
            if k == 0 {
                let scale = libm::pow(n as f64, d as f64 - 2.0);
                return Ok(SphereCount { count, diagnostic_ratio: count as f64 / scale });
            }
            k -= 1;
            if x[k] < n {
                x[k] += 1;
                break;
            }
            x[k] = 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::for_each_grid_point;

    fn scan_hyperplane(a: &[i64], a0: i64, n: i64) -> u64 {
        let mut c = 0;
        for_each_grid_point(a.len(), n, |x| {
            if a.iter().zip(x).map(|(ai, xi)| ai * xi).sum::<i64>() + a0 == 0 {
                c += 1;
            }
        });
        c
    }

    fn scan_sphere(s: &GeneralizedSphere, n: i64) -> u64 {
        let mut c = 0;
        for_each_grid_point(s.dim(), n, |x| {
            if s.contains(x) {
                c += 1;
            }
        });
        c
    }

    #[test]
    fn hyperplane_examples() {
        let diag = lattice_points_on_hyperplane(&[1, -1], 0, 5).unwrap();
        assert_eq!(diag.count, 5);
        assert_eq!(diag.bound(), 45.0);
        assert!(diag.precondition_met && diag.within_bound);

        let line = lattice_points_on_hyperplane(&[1, 0], -2, 5).unwrap();
        assert_eq!(line.count, 5);
        assert!(!line.precondition_met);

        let plane = lattice_points_on_hyperplane(&[1, 1, 1], -6, 4).unwrap();
        assert_eq!(plane.count, scan_hyperplane(&[1, 1, 1], -6, 4));
        assert_eq!(plane.count, 10);
        assert_eq!(plane.bound(), 432.0);
        assert!(plane.within_bound);
    }

    #[test]
    fn hyperplane_rejects_non_primitive_normal() {
        assert!(lattice_points_on_hyperplane(&[2, -2], 0, 5).is_err());
    }

    #[test]
    fn hyperplane_agrees_with_scan() {
        for a in [[3i64, -2, 1], [1, 1, -2], [5, -1, -1], [0, 2, -3]] {
            for a0 in [-4, 0, 3] {
                let got = lattice_points_on_hyperplane(&a, a0, 6).unwrap();
                assert_eq!(got.count, scan_hyperplane(&a, a0, 6), "a={a:?} a0={a0}");
            }
        }
    }

    #[test]
    fn sphere_examples() {
        let cube = GeneralizedSphere::canonicalize(&[1, -3, -3, -3, 6]).unwrap();
        assert_eq!(lattice_points_on_sphere(&cube, 2).unwrap().count, 8);
        let circle = GeneralizedSphere::canonicalize(&[1, -4, -4, 6]).unwrap();
        assert_eq!(lattice_points_on_sphere(&circle, 3).unwrap().count, 4);
        // Squared radius 3/4 about (5/2, 5/2, 5/2): its lattice points are
        // the corners of [2, 3]^3, none of them in [1]^3.
        let shifted = GeneralizedSphere::canonicalize(&[1, -5, -5, -5, 18]).unwrap();
        assert_eq!(lattice_points_on_sphere(&shifted, 1).unwrap().count, 0);
        assert_eq!(lattice_points_on_sphere(&shifted, 3).unwrap().count, 8);
    }

    #[test]
    fn sphere_errors() {
        let empty = GeneralizedSphere::canonicalize(&[1, 0, 0, 1]).unwrap();
        assert_eq!(lattice_points_on_sphere(&empty, 4), Err(Error::EmptySphere));
        let plane = GeneralizedSphere::canonicalize(&[0, 1, 0, -1]).unwrap();
        assert_eq!(lattice_points_on_sphere(&plane, 4), Err(Error::EmptySphere));
    }

    #[test]
    fn sphere_agrees_with_scan() {
        // Spheres centred on lattice and half-lattice points.
        for coeffs in [[1i128, -6, -6, -6, 2], [1, -5, -7, -9, 20], [2, -9, -9, -9, 20], [1, -8, -8, -8, 39]] {
            let s = GeneralizedSphere::canonicalize(&coeffs).unwrap();
            if s.scaled_squared_radius().is_negative() {
                continue;
            }
            for n in [3, 5, 8] {
                assert_eq!(lattice_points_on_sphere(&s, n).unwrap().count, scan_sphere(&s, n), "{s} n={n}");
            }
        }
    }
}
