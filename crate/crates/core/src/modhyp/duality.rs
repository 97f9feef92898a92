//! Rational points on the Segre cubic and exact checks of the polar duality
//! with the Igusa quartic.

use std::collections::BTreeSet;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::models::{igusa_quartic, polar_map, segre_cubic, segre_nodes, verify_singular_point, AmbientPoint};
use super::combinatorics::{perfect_matchings, Matching};
use super::COORDS;
use crate::scalar::{int, Scalar};

const MAX_DRAWS_PER_SAMPLE: usize = 1000;

fn random_direction<R: Rng>(rng: &mut R) -> Vec<Scalar> {
    let mut w: Vec<i64> = (0..COORDS - 1).map(|_| rng.gen_range(-6..=6)).collect();
    w.push(-w.iter().sum::<i64>());
    w.into_iter().map(int).collect()
}

/// Rational points of the Segre cubic, from lines through its nodes.
///
/// On the line `nu + lambda w` through a node `nu` with `sum w_i = 0`, the
/// cubic restricts to `lambda^2 (a2 + a3 lambda)`, so the residual
/// intersection `nu - (a2/a3) w` is rational.
pub fn sample_segre_points(count: usize, seed: u64) -> Vec<AmbientPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nodes: Vec<Vec<Scalar>> = segre_nodes().into_iter().map(|(_, p)| p.to_scalars()).collect();
    let mut out = Vec::with_capacity(count);
    'samples: for _ in 0..count {
        for _ in 0..MAX_DRAWS_PER_SAMPLE {
            let nu = &nodes[rng.gen_range(0..nodes.len())];
            let w = random_direction(&mut rng);
            let a2 = nu.iter().zip(&w).fold(Scalar::zero(), |acc, (n, x)| acc + int(3) * n * x * x);
            let a3 = w.iter().fold(Scalar::zero(), |acc, x| acc + x * x * x);
            if a2.is_zero() || a3.is_zero() {
                continue;
            }
            let lambda = -(a2 / a3);
            let x: Vec<Scalar> = nu.iter().zip(&w).map(|(n, wi)| n + &lambda * wi).collect();
            if let Ok(p) = AmbientPoint::new(&x) {
                out.push(p);
                continue 'samples;
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    /// Segre points on which the full round trip was evaluated.
    pub samples: usize,
    /// Igusa vanishes at the polar image of the Segre point.
    pub forward_holds: usize,
    /// Segre vanishes at the polar image of that Igusa point.
    pub reverse_holds: usize,
    /// The second polar image returns the original Segre point.
    pub bidual_holds: usize,
    /// Draws lying on one of the fifteen planes of the cubic. The polar map
    /// contracts each plane onto a singular line of the quartic, so the
    /// reverse map is undefined there; these are skipped and replaced.
    pub contracted: usize,
    pub counterexamples: Vec<String>,
}

impl DualityReport {
    pub fn all_hold(&self) -> bool {
        self.counterexamples.is_empty()
            && self.forward_holds == self.samples
            && self.reverse_holds == self.samples
            && self.bidual_holds == self.samples
    }
}

/// The matching whose plane `x_a + x_b = 0` (for each pair) contains `x`.
pub fn segre_plane_containing(x: &AmbientPoint) -> Option<Matching> {
    let c = x.to_scalars();
    perfect_matchings()
        .into_iter()
        .find(|m| m.iter().all(|&(a, b)| (&c[a] + &c[b]).is_zero()))
}

/// Checks `igusa(polar(x)) = 0`, `segre(polar(polar(x))) = 0` and
/// `polar(polar(x)) = x` exactly on `samples` rational Segre points off the
/// fifteen planes.
pub fn duality_check(samples: usize, seed: u64) -> DualityReport {
    let segre = segre_cubic();
    let igusa = igusa_quartic().expect("Igusa model");
    let mut report = DualityReport {
        samples: 0,
        forward_holds: 0,
        reverse_holds: 0,
        bidual_holds: 0,
        contracted: 0,
        counterexamples: Vec::new(),
    };
    let mut round = 0u64;
    while report.samples < samples && round < 20 {
        let batch = sample_segre_points(samples - report.samples, seed.wrapping_add(round.wrapping_mul(0x9e37_79b9)));
        round += 1;
        for x in &batch {
            if segre_plane_containing(x).is_some() {
                report.contracted += 1;
                continue;
            }
            report.samples += 1;
            let y = match polar_map(&segre, x) {
                Ok(y) => y,
                Err(e) => {
                    report.counterexamples.push(format!("segre point {x}: {e}"));
                    continue;
                }
            };
            if igusa.evaluate(&y.to_scalars()).is_zero() {
                report.forward_holds += 1;
            } else {
                report.counterexamples.push(format!("igusa does not vanish at polar image {y} of {x}"));
                continue;
            }
            let z = match polar_map(&igusa, &y) {
                Ok(z) => z,
                Err(e) => {
                    report.counterexamples.push(format!("igusa point {y}: {e}"));
                    continue;
                }
            };
            if segre.evaluate(&z.to_scalars()).is_zero() {
                report.reverse_holds += 1;
            } else {
                report.counterexamples.push(format!("segre does not vanish at polar image {z} of {y}"));
            }
            if z == *x {
                report.bidual_holds += 1;
            } else {
                report.counterexamples.push(format!("bidual image {z} differs from {x}"));
            }
        }
    }
    report
}

/// Random search for singular points of the Segre cubic other than the ten
/// nodes: half the trials are random points of the cubic, half random points
/// of the hyperplane.
pub fn extra_singular_points(trials: usize, seed: u64) -> Vec<AmbientPoint> {
    let segre = segre_cubic();
    let nodes: BTreeSet<AmbientPoint> = segre_nodes().into_iter().map(|(_, p)| p).collect();
    let on_cubic = sample_segre_points(trials / 2, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_cafe);
    let in_hyperplane = (0..trials - trials / 2).filter_map(|_| AmbientPoint::new(&random_direction(&mut rng)).ok());
    on_cubic
        .into_iter()
        .chain(in_hyperplane)
        .filter(|p| !nodes.contains(p) && verify_singular_point(&segre, p))
        .collect()
}
