use alloc::vec::Vec;

use super::primes::largest_prime_leq;
use super::report::{ConstructionReport, Method};
use crate::analysis::{find_violations, find_violations_of_kind, SurfaceKind};
use crate::geometry::{LatticePoint, PointSet};
use crate::{Error, Result};

/// `{(x, x^2 mod p, ..., x^d mod p) : 1 <= x <= floor(p / 4d)}` for the
/// largest prime `p <= n`, residues taken in `[1, p]`.
///
/// Verified against its guarantee: no `d+1` points on a hyperplane and no
/// `2d` points on a sphere or hyperplane.
pub fn moment_curve(n: i64, d: usize) -> Result<(PointSet, ConstructionReport)> {
    if d < 2 {
        return Err(Error::InvalidParameter(alloc::format!("dimension {d} < 2")));
    }
    let p = largest_prime_leq(n)?;
    let size = p / (4 * d as i64);
    let mut report = ConstructionReport::new(Method::MomentCurve, d, n, 0);
    report.prime_used = Some(p);
    report.verify_threshold = 2 * d;
    report.hyperplane_threshold = Some(d + 1);
    if size <= 1 {
        report.warnings.push(alloc::format!("n too small for dimension {d}: floor({p}/{}) = {size}", 4 * d));
    }
    let points: Vec<LatticePoint> = (1..=size).map(|x| moment_point(x, d, p)).collect();
    let ps = PointSet::new(d, n, points)?;
    let planes = find_violations_of_kind(&ps, d + 1, SurfaceKind::Hyperplanes)?;
    let surfaces = find_violations(&ps, 2 * d)?;
    report.violations_found = (planes.len() + surfaces.len()) as u64;
    report.final_size = ps.len() as u64;
    report.verified = planes.is_empty() && surfaces.is_empty();
    Ok((ps, report))
}

fn moment_point(x: i64, d: usize, p: i64) -> LatticePoint {
    let mut coords = Vec::with_capacity(d);
    let mut power = 1i128;
    for _ in 0..d {
        power = power * i128::from(x) % i128::from(p);
        coords.push(if power == 0 { p } else { power as i64 });
    }
    LatticePoint::new(coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n97_d2() {
        let (ps, report) = moment_curve(97, 2).unwrap();
        assert_eq!(ps.len(), 12);
        assert_eq!(report.prime_used, Some(97));
        assert!(report.verified);
        let expect: [[i64; 2]; 4] = [[1, 1], [2, 4], [3, 9], [10, 3]];
        for e in expect {
            assert!(ps.contains(&e.into()));
        }
        assert!(ps.contains(&[11, 24].into()));
        assert_eq!(ps.points().last().unwrap().coords(), &[12, 47]);
    }

    #[test]
    fn prime_fallback() {
        assert_eq!(moment_curve(100, 2).unwrap().0.points(), moment_curve(97, 2).unwrap().0.points());
    }

    #[test]
    fn degenerate_sizes_warn() {
        let (ps, report) = moment_curve(16, 3).unwrap();
        assert_eq!(ps.points(), &[LatticePoint::from([1, 1, 1])]);
        assert_eq!(report.final_size, 1);
        assert!(!report.warnings.is_empty());
        let (ps, report) = moment_curve(7, 2).unwrap();
        assert!(ps.is_empty());
        assert!(report.verified);
    }

    #[test]
    fn residue_zero_maps_to_p() {
        assert_eq!(moment_point(5, 2, 5).coords(), &[5, 5]);
    }
}
