use itertools::Itertools;
use latticeset::geometry::{
    canonicalize, is_cohyperplanar, is_cospherical_or_cohyperplanar, lift, on_surface, sphere_through,
};
use latticeset::{LatticePoint, PointSet};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The determinant predicate against "sphere through the first d+1, then
/// test the last". Tuples whose first d+1 points are cohyperplanar are
/// skipped; returns whether the tuple was compared.
fn compare_with_sphere_oracle(tuple: &[LatticePoint]) -> bool {
    let d = tuple[0].dim();
    let head = &tuple[..d + 1];
    if is_cohyperplanar(head).unwrap() {
        return false;
    }
    let s = sphere_through(head).unwrap();
    let expect = on_surface(&s, &tuple[d + 1]).unwrap();
    assert_eq!(is_cospherical_or_cohyperplanar(tuple).unwrap(), expect, "{tuple:?}");
    true
}

#[test]
fn oracle_equivalence_on_small_grids() {
    for (d, n) in [(2, 3), (3, 2)] {
        let grid = PointSet::full_grid(d, n).unwrap();
        let mut compared = 0;
        for tuple in grid.points().iter().cloned().permutations(d + 2) {
            if compare_with_sphere_oracle(&tuple) {
                compared += 1;
            }
        }
        assert!(compared > 0);
    }
}

#[test]
fn oracle_equivalence_on_random_tuples() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut compared = 0;
    let mut positives = 0;
    while compared < 10_000 {
        let tuple: Vec<LatticePoint> = (0..5).map(|_| LatticePoint::new((0..3).map(|_| rng.gen_range(1..=10)).collect())).collect();
        if tuple.iter().tuple_combinations().any(|(a, b)| a == b) {
            continue;
        }
        if compare_with_sphere_oracle(&tuple) {
            compared += 1;
            positives += usize::from(is_cospherical_or_cohyperplanar(&tuple).unwrap());
        }
    }
    assert!(positives > 0);
}

#[test]
fn spec_examples() {
    let p = |v: &[i64]| LatticePoint::new(v.to_vec());
    assert_eq!(lift(&p(&[1, 2, 3])), p(&[1, 2, 3, 14]));
    let five = [p(&[1, 2, 2]), p(&[3, 2, 2]), p(&[2, 1, 2]), p(&[2, 3, 2]), p(&[2, 2, 1])];
    assert!(is_cospherical_or_cohyperplanar(&five).unwrap());
    let circle = sphere_through(&[p(&[1, 1]), p(&[1, 3]), p(&[3, 1])]).unwrap();
    assert_eq!(circle.coefficients(), &[1, -4, -4, 6]);
    assert_eq!(canonicalize(&[0, 0, 3, -6]).unwrap().coefficients(), &[0, 0, 1, -2]);
    assert!(sphere_through(&[p(&[1, 1]), p(&[2, 2]), p(&[3, 3])]).is_err());
}

fn distinct_points(d: usize, k: usize, max: i64) -> impl Strategy<Value = Vec<LatticePoint>> {
    proptest::collection::btree_set(proptest::collection::vec(1..=max, d), k)
        .prop_map(|s| s.into_iter().map(LatticePoint::new).collect::<Vec<_>>())
        .prop_shuffle()
}

fn lifted_cohyperplanar(pts: &[LatticePoint]) -> bool {
    let lifted: Vec<LatticePoint> = pts.iter().map(lift).collect();
    is_cohyperplanar(&lifted).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn permutation_invariance(pts in distinct_points(3, 5, 4), rot in 0usize..5) {
        let mut shuffled = pts.clone();
        shuffled.rotate_left(rot);
        shuffled.swap(0, 4);
        prop_assert_eq!(
            is_cospherical_or_cohyperplanar(&pts).unwrap(),
            is_cospherical_or_cohyperplanar(&shuffled).unwrap()
        );
        let head: Vec<LatticePoint> = pts[..4].iter().rev().cloned().collect();
        prop_assert_eq!(is_cohyperplanar(&pts[..4]).unwrap(), is_cohyperplanar(&head).unwrap());
    }

    #[test]
    fn translation_invariance(pts in distinct_points(2, 4, 6), dx in -50i64..50, dy in -50i64..50) {
        let moved: Vec<LatticePoint> = pts.iter().map(|p| p.translate(&[dx, dy])).collect();
        prop_assert_eq!(is_cospherical_or_cohyperplanar(&pts).unwrap(), is_cospherical_or_cohyperplanar(&moved).unwrap());
        prop_assert_eq!(is_cohyperplanar(&pts[..3]).unwrap(), is_cohyperplanar(&moved[..3]).unwrap());
    }

    #[test]
    fn lifting_soundness(pts in distinct_points(3, 5, 5)) {
        prop_assert_eq!(is_cospherical_or_cohyperplanar(&pts).unwrap(), lifted_cohyperplanar(&pts));
    }

    #[test]
    fn sphere_through_contains_its_points(pts in distinct_points(3, 4, 9)) {
        prop_assume!(!is_cohyperplanar(&pts).unwrap());
        let s = sphere_through(&pts).unwrap();
        prop_assert!(s.is_sphere());
        for p in &pts {
            prop_assert!(on_surface(&s, p).unwrap());
        }
    }

    #[test]
    fn canonicalize_identifies_scalar_multiples(v in proptest::collection::vec(-1000i128..1000, 4), k in -30i128..30) {
        prop_assume!(k != 0 && v.iter().any(|&c| c != 0));
        let scaled: Vec<i128> = v.iter().map(|c| c * k).collect();
        let a = canonicalize(&v).unwrap();
        prop_assert_eq!(&a, &canonicalize(&scaled).unwrap());
        prop_assert_eq!(&a, &canonicalize(a.coefficients()).unwrap());
    }
}
