use std::collections::BTreeMap;

use latticeset::PointSet;
use num_integer::Integer;

/// Number of 3-subsets of `ps` on a common line, in any dimension.
///
/// From each point the others are bucketed by primitive direction up to
/// sign; a collinear triple shows up as a pair in one bucket of each of its
/// three points.
pub fn collinear_triples(ps: &PointSet) -> u128 {
    let pts = ps.points();
    let mut total = 0u128;
    for a in pts {
        let mut buckets: BTreeMap<Vec<i64>, u128> = BTreeMap::new();
        for b in pts.iter().filter(|b| *b != a) {
            let mut v: Vec<i64> = b.coords().iter().zip(a.coords()).map(|(x, y)| x - y).collect();
            let g = v.iter().fold(0i64, |g, c| g.gcd(c));
            let first = *v.iter().find(|&&c| c != 0).expect("distinct points");
            let g = if first < 0 { -g } else { g };
            v.iter_mut().for_each(|c| *c /= g);
            *buckets.entry(v).or_default() += 1;
        }
        total += buckets.values().map(|&k| k * k.saturating_sub(1) / 2).sum::<u128>();
    }
    total / 3
}

#[cfg(test)]
mod tests {
    use super::*;
    use latticeset::geometry::is_cohyperplanar;
    use latticeset::LatticePoint;

    fn brute(ps: &PointSet) -> u128 {
        let p = ps.points();
        let mut count = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                for k in j + 1..p.len() {
                    let u: Vec<i128> = (0..ps.d()).map(|t| (p[j].coords()[t] - p[i].coords()[t]) as i128).collect();
                    let w: Vec<i128> = (0..ps.d()).map(|t| (p[k].coords()[t] - p[i].coords()[t]) as i128).collect();
                    let parallel = (0..ps.d()).all(|s| (0..ps.d()).all(|t| u[s] * w[t] == u[t] * w[s]));
                    count += u128::from(parallel);
                }
            }
        }
        count
    }

    #[test]
    fn grid_counts() {
        assert_eq!(collinear_triples(&PointSet::full_grid(2, 3).unwrap()), 8);
        // 49 lines of 3 points in the 3x3x3 cube.
        assert_eq!(collinear_triples(&PointSet::full_grid(3, 3).unwrap()), 49);
        for (d, n) in [(2, 5), (3, 4)] {
            let ps = PointSet::full_grid(d, n).unwrap();
            assert_eq!(collinear_triples(&ps), brute(&ps));
        }
    }

    #[test]
    fn planar_triples_agree_with_cohyperplanar() {
        let ps = PointSet::full_grid(2, 4).unwrap();
        let p = ps.points();
        let mut expect = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                for k in j + 1..p.len() {
                    let t: Vec<LatticePoint> = vec![p[i].clone(), p[j].clone(), p[k].clone()];
                    expect += u128::from(is_cohyperplanar(&t).unwrap());
                }
            }
        }
        assert_eq!(collinear_triples(&ps), expect);
    }
}
