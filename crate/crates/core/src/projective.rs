//! Projective transformations and projective equivalence of configurations.

use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::{PointConfiguration, ProjectivePoint};
use crate::linalg::{self, Matrix};
use crate::scalar::{int, Scalar};

/// An invertible `r x r` matrix acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveTransform {
    matrix: Matrix,
}

impl ProjectiveTransform {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let n = matrix.len();
        if n == 0 || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInput("transform must be a nonempty square matrix".into()));
        }
        if linalg::determinant(&matrix).is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(Self { matrix })
    }

    pub fn identity(r: usize) -> Self {
        Self { matrix: linalg::identity(r) }
    }

    /// A random invertible matrix with small integer entries.
    pub fn random<R: Rng + ?Sized>(r: usize, rng: &mut R) -> Self {
        loop {
            let m: Matrix = (0..r)
                .map(|_| (0..r).map(|_| int(rng.gen_range(-4..=4))).collect())
                .collect();
            if let Ok(t) = Self::new(m) {
                return t;
            }
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply(&self, p: &ProjectivePoint) -> ProjectivePoint {
        let v = linalg::mul_vec(&self.matrix, &p.to_scalars());
        ProjectivePoint::new(&v).expect("invertible map sends nonzero vectors to nonzero vectors")
    }

    pub fn apply_config(&self, c: &PointConfiguration) -> Result<PointConfiguration> {
        if c.ambient_rank() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: c.ambient_rank() });
        }
        PointConfiguration::new(c.ambient_rank(), c.points().iter().map(|p| self.apply(p)).collect())
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self { matrix: linalg::mul(&self.matrix, &other.matrix) }
    }

    pub fn inverse(&self) -> Self {
        Self { matrix: linalg::inverse(&self.matrix).expect("transform is invertible") }
    }

    /// True when the two matrices agree up to a nonzero scalar factor.
    pub fn equal_up_to_scale(&self, other: &Self) -> bool {
        if self.rank() != other.rank() {
            return false;
        }
        let mut factor: Option<Scalar> = None;
        for (a, b) in self.matrix.iter().flatten().zip(other.matrix.iter().flatten()) {
            match (a.is_zero(), b.is_zero()) {
                (true, true) => {}
                (false, false) => {
                    let f = b / a;
                    match &factor {
                        Some(prev) if *prev != f => return false,
                        Some(_) => {}
                        None => factor = Some(f),
                    }
                }
                _ => return false,
            }
        }
        true
    }
}

/// The transform sending `e_1, .., e_r, (1,..,1)` to the first `r + 1` points.
fn frame_transform(c: &PointConfiguration) -> Result<Matrix> {
    let r = c.ambient_rank();
    if c.len() < r + 1 {
        return Err(Error::FrameDegenerate);
    }
    let cols: Matrix = c.points()[..r].iter().map(ProjectivePoint::to_scalars).collect();
    let p = linalg::transpose(&cols);
    let last = c.points()[r].to_scalars();
    let weights = linalg::solve(&p, &last).ok_or(Error::FrameDegenerate)?;
    // every r of the r+1 frame points independent  <=>  all weights nonzero
    if weights.iter().any(Zero::is_zero) {
        return Err(Error::FrameDegenerate);
    }
    Ok(p.iter()
        .map(|row| row.iter().zip(&weights).map(|(x, w)| x * w).collect())
        .collect())
}

/// Searches for `A` with `A c1[i] ~ c2[i]` for every `i`.
///
/// Both configurations are moved to the standard frame using their first
/// `r + 1` points; they are equivalent exactly when the normalized remaining
/// points coincide. Callers wanting a different frame must permute first.
pub fn projectively_equivalent(
    c1: &PointConfiguration,
    c2: &PointConfiguration,
) -> Result<Option<ProjectiveTransform>> {
    if c1.ambient_rank() != c2.ambient_rank() {
        return Err(Error::DimensionMismatch { expected: c1.ambient_rank(), found: c2.ambient_rank() });
    }
    if c1.len() != c2.len() {
        return Err(Error::InvalidInput(format!(
            "configurations have {} and {} points",
            c1.len(),
            c2.len()
        )));
    }
    let t1 = frame_transform(c1)?;
    let t2 = frame_transform(c2)?;
    let n1 = ProjectiveTransform { matrix: linalg::inverse(&t1).ok_or(Error::FrameDegenerate)? };
    let n2 = ProjectiveTransform { matrix: linalg::inverse(&t2).ok_or(Error::FrameDegenerate)? };
    let r = c1.ambient_rank();
    let same = c1.points()[r + 1..]
        .iter()
        .zip(&c2.points()[r + 1..])
        .all(|(p, q)| n1.apply(p) == n2.apply(q));
    if !same {
        return Ok(None);
    }
    Ok(Some(ProjectiveTransform { matrix: linalg::mul(&t2, &n1.matrix) }))
}
