//! Exact count of point tuples lying on a common hyperplane.
//!
//! Summing `C(k, arity)` over hyperplane buckets double counts tuples that
//! lie on several hyperplanes (five collinear points in `R^3`, say). Instead,
//! every affine flat spanned by the points is enumerated, and each tuple is
//! attributed to its own affine hull by Möbius inversion over inclusion:
//! `exact(F) = C(|F|, arity) - sum over spanned G strictly inside F of exact(G)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;

use super::histogram::binomial;
use crate::geometry::{LatticePoint, PointSet};
use crate::linalg::{self, rat, Rat};
use crate::{Error, Result};

/// Number of `arity`-subsets of `ps` that lie on a common hyperplane.
pub fn count_cohyperplanar_tuples(ps: &PointSet, arity: usize) -> Result<u128> {
    let d = ps.d();
    if arity < d + 1 {
        return Err(Error::InvalidParameter(alloc::format!(
            "arity {arity} below d+1 = {}",
            d + 1
        )));
    }
    // flats[j]: spanned flats of dimension j + 1 carrying at least `arity`
    // points, keyed by their canonical equations.
    let mut flats: Vec<Vec<Vec<usize>>> = Vec::new();
    for dim in 1..d {
        let mut seen: BTreeMap<Vec<Vec<BigInt>>, Vec<usize>> = BTreeMap::new();
        for sub in ps.points().iter().combinations(dim + 1) {
            let Some(eqs) = affine_equations(&sub, dim) else { continue };
            if seen.contains_key(&eqs) {
                continue;
            }
            let members = ps
                .points()
                .iter()
                .enumerate()
                .filter(|(_, p)| satisfies(&eqs, p))
                .map(|(i, _)| i)
                .collect();
            seen.insert(eqs, members);
        }
        flats.push(seen.into_values().filter(|m: &Vec<usize>| m.len() >= arity).collect());
    }

    let mut exact: Vec<Vec<u128>> = Vec::with_capacity(flats.len());
    let mut total: u128 = 0;
    for (level, group) in flats.iter().enumerate() {
        let mut counts = Vec::with_capacity(group.len());
        for members in group {
            let mut own = binomial(members.len() as u64, arity as u64);
            for (lower, lower_counts) in flats[..level].iter().zip(&exact) {
                for (sub, &c) in lower.iter().zip(lower_counts) {
                    if is_subset(sub, members) {
                        own -= c;
                    }
                }
            }
            counts.push(own);
            total += own;
        }
        exact.push(counts);
    }
    Ok(total)
}

/// Canonical equations `w . x + w_0 = 0` of the affine hull of `pts`, or
/// `None` when the hull has dimension below `dim`.
fn affine_equations(pts: &[&LatticePoint], dim: usize) -> Option<Vec<Vec<BigInt>>> {
    let d = pts[0].dim();
    let rows: Vec<Vec<Rat>> = pts
        .iter()
        .map(|p| p.coords().iter().map(|&c| rat(i128::from(c))).chain([rat(1)]).collect())
        .collect();
    if linalg::rank(&rows) != dim + 1 {
        return None;
    }
    Some(linalg::kernel(&rows, d + 1).iter().map(|r| linalg::primitive(r)).collect())
}

fn satisfies(eqs: &[Vec<BigInt>], p: &LatticePoint) -> bool {
    eqs.iter().all(|w| {
        let (w0, lin) = w.split_last().expect("nonempty equation");
        let v: BigInt = lin.iter().zip(p.coords()).map(|(a, &x)| a * x).sum::<BigInt>() + w0;
        v.is_zero()
    })
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.len() < big.len() && small.iter().all(|x| big.binary_search(x).is_ok())
}
