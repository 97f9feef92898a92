//! Gale transform (association) of point configurations.
//!
//! For `gamma` points in `P^r` with coordinate matrix `G` (`gamma x (r+1)`),
//! a configuration `G'` of `gamma` points in `P^s`, `s = gamma - r - 2`, is
//! associated to `G` when `G^T D G' = 0` for a nonsingular diagonal `D`.
//! The columns of `G'` are a basis of the kernel of `G^T D`; the transform is
//! well defined up to projective equivalence.

use itertools::Itertools;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{PointConfiguration, ProjectivePoint};
use crate::linalg::{self, Matrix};
use crate::projective::{projectively_equivalent, ProjectiveTransform};
use crate::scalar::{self, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaleData {
    pub source: PointConfiguration,
    pub target: PointConfiguration,
    pub diag: Vec<Scalar>,
}

impl GaleData {
    /// Evaluates `G^T D G'` on the stored coordinates.
    pub fn relation_matrix(&self) -> Matrix {
        let g = self.source.coordinate_matrix();
        let weighted: Matrix = self
            .target
            .coordinate_matrix()
            .into_iter()
            .zip(&self.diag)
            .map(|(row, d)| row.into_iter().map(|x| x * d).collect())
            .collect();
        linalg::mul(&linalg::transpose(&g), &weighted)
    }

    pub fn relation_holds(&self) -> bool {
        linalg::is_zero_matrix(&self.relation_matrix())
    }
}

fn kernel_columns(config: &PointConfiguration) -> Result<Matrix> {
    let rank = config.ambient_rank();
    let gamma = config.len();
    if gamma < rank + 2 {
        return Err(Error::InvalidInput(format!(
            "Gale transform needs at least {} points in ambient rank {rank}, got {gamma}",
            rank + 2
        )));
    }
    let g = config.coordinate_matrix();
    if linalg::rank(&g) < rank {
        return Err(Error::Degenerate);
    }
    // gamma x (gamma - rank): column j is the j-th kernel vector of G^T
    let basis = linalg::kernel(&linalg::transpose(&g), gamma);
    Ok(linalg::transpose(&basis))
}

fn assemble(config: &PointConfiguration, rows: Matrix) -> Result<GaleData> {
    if let Some(i) = rows.iter().position(|row| row.iter().all(Zero::is_zero)) {
        return Err(Error::RowElimination(i));
    }
    let mut points = Vec::with_capacity(rows.len());
    let mut diag = Vec::with_capacity(rows.len());
    for row in &rows {
        let p = ProjectivePoint::new(row)?;
        // canonical = lambda * row; D absorbs 1/lambda
        let (j, x) = row.iter().find_position(|x| !x.is_zero()).expect("nonzero row");
        let lambda = scalar::from_bigint(p.coords()[j].clone()) / x;
        diag.push(lambda.recip());
        points.push(p);
    }
    let target = PointConfiguration::new(rows[0].len(), points)?;
    Ok(GaleData { source: config.clone(), target, diag })
}

/// The Gale transform computed from the reduced-echelon kernel basis.
pub fn gale_transform(config: &PointConfiguration) -> Result<GaleData> {
    let rows = kernel_columns(config)?;
    assemble(config, rows)
}

/// Same as [`gale_transform`] but with the kernel basis recombined by a
/// seeded random invertible matrix. The target differs from the
/// deterministic one by a projective transformation.
pub fn gale_transform_seeded(config: &PointConfiguration, seed: u64) -> Result<GaleData> {
    let rows = kernel_columns(config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = ProjectiveTransform::random(rows[0].len(), &mut rng);
    assemble(config, linalg::mul(&rows, m.matrix()))
}

/// True when `config` is projectively equivalent, label by label, to its own
/// Gale transform.
pub fn is_self_associated(config: &PointConfiguration) -> Result<bool> {
    let data = gale_transform(config)?;
    if data.target.ambient_rank() != config.ambient_rank() {
        return Ok(false);
    }
    Ok(projectively_equivalent(config, &data.target)?.is_some())
}

/// Conic matrix (scaled by 2) of `a x^2 + b y^2 + c z^2 + d xy + e xz + f yz`.
fn conic_matrix(q: &[Scalar]) -> Matrix {
    let two = scalar::int(2);
    vec![
        vec![&two * &q[0], q[3].clone(), q[4].clone()],
        vec![q[3].clone(), &two * &q[1], q[5].clone()],
        vec![q[4].clone(), q[5].clone(), &two * &q[2]],
    ]
}

/// Whether six points of `P^2` lie on a smooth conic.
pub fn on_smooth_conic(config: &PointConfiguration) -> Result<bool> {
    if config.ambient_rank() != 3 || config.len() != 6 {
        return Err(Error::InvalidInput("expected six points in the projective plane".into()));
    }
    let monomials: Matrix = config
        .coordinate_matrix()
        .iter()
        .map(|p| {
            let (x, y, z) = (&p[0], &p[1], &p[2]);
            vec![x * x, y * y, z * z, x * y, x * z, y * z]
        })
        .collect();
    let conics = linalg::kernel(&monomials, 6);
    match conics.len() {
        0 => Ok(false),
        1 => Ok(!linalg::determinant(&conic_matrix(&conics[0])).is_zero()),
        m => {
            // The determinant is a cubic form on the linear system of conics;
            // if nonzero it cannot vanish on the whole grid {0,1,2,3}^m.
            let grid = (0..m).map(|_| 0..4i64).multi_cartesian_product();
            Ok(grid.into_iter().any(|c| {
                let q: Vec<Scalar> = (0..6)
                    .map(|i| {
                        c.iter()
                            .zip(&conics)
                            .fold(Scalar::zero(), |acc, (w, v)| acc + scalar::int(*w) * &v[i])
                    })
                    .collect();
                !linalg::determinant(&conic_matrix(&q)).is_zero()
            }))
        }
    }
}
