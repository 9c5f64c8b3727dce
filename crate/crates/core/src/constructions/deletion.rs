use alloc::vec::Vec;

use crate::analysis::{binomial, find_violations, spanned_surfaces};
use crate::geometry::PointSet;
use crate::{Error, Result};

/// Outcome of [`deletion_refine`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    pub points: PointSet,
    pub deleted: u64,
    /// Surfaces with at least `d+2` points before any deletion.
    pub initial_witnesses: u64,
}

/// Deletes points until no sphere or hyperplane carries `d+2` of them.
///
/// Each round removes a point of largest violation degree (the number of
/// violating `(d+2)`-tuples through it, summed over surfaces), the
/// lexicographically smallest among ties. Deleting points never creates a
/// violation, so the surfaces are found once and only their member lists
/// shrink.
pub fn deletion_refine(ps: &PointSet) -> Result<Refinement> {
    let d = ps.d();
    let arity = d + 2;
    let mut surfaces: Vec<Vec<usize>> = spanned_surfaces(ps)?
        .into_iter()
        .filter(|inc| inc.len() >= arity)
        .map(|inc| inc.members)
        .collect();
    let initial_witnesses = surfaces.len() as u64;
    let mut alive = alloc::vec![true; ps.len()];
    let mut deleted = 0u64;
    loop {
        surfaces.retain(|m| m.len() >= arity);
        if surfaces.is_empty() {
            break;
        }
        let mut degree = alloc::vec![0u128; ps.len()];
        for members in &surfaces {
            let through = binomial(members.len() as u64 - 1, arity as u64 - 1);
            for &i in members {
                degree[i] += through;
            }
        }
        // Points are sorted, so the first maximum is the lexicographic tie-break.
        let victim = (0..ps.len())
            .filter(|&i| alive[i])
            .fold(None, |best: Option<usize>, i| match best {
                Some(b) if degree[b] >= degree[i] => Some(b),
                _ => Some(i),
            })
            .filter(|&i| degree[i] > 0)
            .ok_or_else(|| Error::Internal("violating surface without members".into()))?;
        alive[victim] = false;
        deleted += 1;
        for members in surfaces.iter_mut() {
            if let Ok(pos) = members.binary_search(&victim) {
                members.remove(pos);
            }
        }
    }
    let points = ps.retain_indices(|i| alive[i]);
    if !find_violations(&points, arity)?.is_empty() {
        return Err(Error::Internal("deletion left a violation".into()));
    }
    Ok(Refinement { points, deleted, initial_witnesses })
}
