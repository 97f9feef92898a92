use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::Zero;
use proptest::prelude::*;

use stab_core::modhyp::{
    duality_check, igusa_from_pencil, igusa_lines, igusa_points, igusa_quartic, incidence_15_3, node_hessian_rank,
    perfect_matchings, polar_map, sample_segre_points, segre_cubic, segre_nodes, splits_3_3, verify_singular_point,
    AmbientPoint,
};
use stab_core::scalar::int;
use stab_core::Scalar;

fn permuted(p: &AmbientPoint, perm: &[usize]) -> AmbientPoint {
    let x = p.to_scalars();
    let y: Vec<Scalar> = perm.iter().map(|&i| x[i].clone()).collect();
    AmbientPoint::new(&y).unwrap()
}

#[test]
fn ten_ordinary_nodes_one_per_split() {
    let segre = segre_cubic();
    let nodes = segre_nodes();
    assert_eq!(nodes.len(), 10);
    let splits: BTreeSet<_> = nodes.iter().map(|(s, _)| *s).collect();
    assert_eq!(splits, splits_3_3().into_iter().collect());
    let points: BTreeSet<_> = nodes.iter().map(|(_, p)| p.clone()).collect();
    assert_eq!(points.len(), 10);
    for (split, p) in &nodes {
        assert_eq!(&split.node(), p);
        assert!(segre.evaluate(&p.to_scalars()).is_zero());
        assert!(verify_singular_point(&segre, p));
        assert_eq!(node_hessian_rank(&segre, p), 4);
    }
}

#[test]
fn pencil_search_recovers_the_quartic() {
    let a = igusa_quartic().unwrap();
    let b = igusa_from_pencil().unwrap();
    let x: Vec<Scalar> = [3, -1, 4, -1, -5, 0].map(int).to_vec();
    // both models vanish on the same points up to a constant factor
    let (fa, fb) = (a.evaluate(&x), b.evaluate(&x));
    assert!(!fa.is_zero());
    let c = fb / &fa;
    for p in sample_segre_points(20, 9) {
        let y = p.to_scalars();
        assert_eq!(b.evaluate(&y), &c * a.evaluate(&y));
    }
}

#[test]
fn singular_locus_and_incidence() {
    let igusa = igusa_quartic().unwrap();
    let lines = igusa_lines();
    let points = igusa_points();
    assert_eq!(lines.len(), 15);
    assert_eq!(points.len(), 15);
    for (_, p) in &points {
        assert!(verify_singular_point(&igusa, p));
    }
    // independent flag computation: pair point on matching line iff the pair
    // belongs to the matching
    let expected: BTreeSet<(usize, usize)> = points
        .iter()
        .enumerate()
        .cartesian_product(lines.iter().enumerate())
        .filter(|((_, (pair, _)), (_, line))| line.matching.contains(pair))
        .map(|((i, _), (j, _))| (i, j))
        .collect();
    assert_eq!(expected.len(), 45);
    assert_eq!(incidence_15_3().incidence, expected);
    assert_eq!(perfect_matchings().len(), 15);
}

#[test]
fn duality_round_trip() {
    let report = duality_check(60, 21);
    assert_eq!(report.samples, 60);
    assert!(report.all_hold(), "{report:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polar_map_is_equivariant(seed in any::<u64>(), perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
        let segre = segre_cubic();
        let igusa = igusa_quartic().unwrap();
        for x in sample_segre_points(3, seed) {
            let y = polar_map(&segre, &x).unwrap();
            prop_assert_eq!(polar_map(&segre, &permuted(&x, &perm)).unwrap(), permuted(&y, &perm));
            prop_assert!(igusa.evaluate(&y.to_scalars()).is_zero());
        }
    }

    #[test]
    fn polar_map_ignores_scaling(seed in any::<u64>(), c in -9i64..=9) {
        prop_assume!(c != 0);
        let segre = segre_cubic();
        for x in sample_segre_points(3, seed) {
            let scaled: Vec<Scalar> = x.to_scalars().iter().map(|v| v * int(c)).collect();
            let scaled = AmbientPoint::new(&scaled).unwrap();
            prop_assert_eq!(polar_map(&segre, &scaled).unwrap(), polar_map(&segre, &x).unwrap());
        }
    }
}
