use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::constructions::GridPartition;
use crate::geometry::GeneralizedSphere;
use crate::{Error, Result};

/// Number of subcubes whose closed cell (see [`GridPartition::cell_bounds`])
/// meets the sphere.
///
/// A box meets the sphere iff the squared distance from the center to the
/// nearest point of the box is at most `r^2` and to the farthest corner is at
/// least `r^2`. Everything is scaled by `2 a_lift` so the center becomes the
/// integer vector `-a` and the comparison is exact.
pub fn crossing_count(s: &GeneralizedSphere, grid: &GridPartition) -> Result<u64> {
    if s.dim() != grid.d() {
        return Err(Error::DimensionMismatch { expected: grid.d(), found: s.dim() });
    }
    let radius_sq = s.scaled_squared_radius();
    if s.is_hyperplane() || radius_sq <= BigInt::from(0) {
        return Err(Error::EmptySphere);
    }
    let scale = BigInt::from(s.lift_coefficient()) * 2u32;
    let parts = grid.parts() as usize;

    // Per axis and slab: (min, max) squared offset from the center.
    let slabs: Vec<Vec<(BigInt, BigInt)>> = s
        .linear()
        .iter()
        .map(|&ai| {
            let c = BigInt::from(-ai);
            (0..parts)
                .map(|i| {
                    let (lo, hi) = grid.cell_bounds(i);
                    let lo = &scale * lo;
                    let hi = &scale * hi;
                    let near = if c < lo {
                        &lo - &c
                    } else if c > hi {
                        &c - &hi
                    } else {
                        BigInt::from(0)
                    };
                    let far = core::cmp::max((&c - &lo) * (&c - &lo), (&c - &hi) * (&c - &hi));
                    (&near * &near, far)
                })
                .collect()
        })
        .collect();

    let d = grid.d();
    let mut idx = alloc::vec![0usize; d];
    let mut count = 0u64;
    loop {
        let mut near = BigInt::from(0);
        let mut far = BigInt::from(0);
        for (axis, &i) in idx.iter().enumerate() {
            near += &slabs[axis][i].0;
            far += &slabs[axis][i].1;
        }
        if near <= radius_sq && radius_sq <= far {
            count += 1;
        }
        let mut k = d;
        loop {
            if k == 0 {
                return Ok(count);
            }
            k -= 1;
            if idx[k] + 1 < parts {
                idx[k] += 1;
                break;
            }
            idx[k] = 0;
        }
    }
}
