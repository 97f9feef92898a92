//! Seeded generators of test configurations.

use itertools::Itertools;
use rand::Rng;

use crate::geometry::{PointConfiguration, ProjectivePoint};
use crate::linalg;
use crate::scalar::{int, Scalar};

fn fresh<R: Rng + ?Sized>(rng: &mut R, r: usize, bound: i64) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..r).map(|_| rng.gen_range(-bound..=bound)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// `n` points of `P^{r-1}` mixing fresh points, repeated points (rescaled)
/// and combinations of two earlier points, so that coincidences and small
/// dependent subsets occur often.
pub fn mixed_configuration<R: Rng + ?Sized>(rng: &mut R, r: usize, n: usize) -> PointConfiguration {
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(n);
    while rows.len() < n {
        let roll = rng.gen_range(0..10);
        let row = if rows.is_empty() || roll < 5 {
            fresh(rng, r, 3)
        } else if roll < 8 {
            let base = &rows[rng.gen_range(0..rows.len())];
            let c = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
            base.iter().map(|x| c * x).collect()
        } else {
            let p = &rows[rng.gen_range(0..rows.len())];
            let q = &rows[rng.gen_range(0..rows.len())];
            let (a, b) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
            p.iter().zip(q).map(|(x, y)| a * x + b * y).collect()
        };
        if row.iter().any(|&x| x != 0) {
            rows.push(row);
        }
    }
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    PointConfiguration::from_int_rows(&refs).expect("nonzero rows of equal length")
}

/// `n` points of `P^{r-1}` in linear general position: every `r` of them are
/// independent.
pub fn general_configuration<R: Rng + ?Sized>(rng: &mut R, r: usize, n: usize) -> PointConfiguration {
    loop {
        let rows: Vec<Vec<Scalar>> = (0..n).map(|_| fresh(rng, r, 9).into_iter().map(int).collect()).collect();
        let general = (0..n).combinations(r).all(|idx| {
            let sub: Vec<Vec<Scalar>> = idx.iter().map(|&i| rows[i].clone()).collect();
            linalg::rank(&sub) == r
        });
        if general {
            let points = rows.iter().map(|row| ProjectivePoint::new(row)).collect::<crate::Result<Vec<_>>>();
            return PointConfiguration::new(r, points.expect("nonzero rows")).expect("consistent rank");
        }
    }
}

/// Six points `[1 : t : t^2]` of the standard conic for distinct integers `t`
/// drawn from `-bound..=bound`.
pub fn conic_configuration<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> PointConfiguration {
    let mut ts: Vec<i64> = Vec::with_capacity(6);
    while ts.len() < 6 {
        let t = rng.gen_range(-bound..=bound);
        if !ts.contains(&t) {
            ts.push(t);
        }
    }
    let rows: Vec<Vec<i64>> = ts.iter().map(|&t| vec![1, t, t * t]).collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    PointConfiguration::from_int_rows(&refs).expect("nonzero rows")
}
