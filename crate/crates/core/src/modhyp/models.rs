use itertools::Itertools;
use num_traits::{One, Zero};

use super::combinatorics::{line_parameters, perfect_matchings, splits_3_3, IgusaLine, Split};
use super::poly::Polynomial;
use super::COORDS;
use crate::error::{Error, Result};
use crate::geometry::ProjectivePoint;
use crate::linalg::{self, Matrix};
use crate::scalar::{int, Scalar};

/// A point of `P^4 = {x_1 + ... + x_6 = 0} ⊂ P^5` in canonical primitive form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AmbientPoint(ProjectivePoint);

impl AmbientPoint {
    pub fn new(coords: &[Scalar]) -> Result<Self> {
        if coords.len() != COORDS {
            return Err(Error::DimensionMismatch { expected: COORDS, found: coords.len() });
        }
        if !coords.iter().fold(Scalar::zero(), |a, x| a + x).is_zero() {
            return Err(Error::OffHyperplane);
        }
        ProjectivePoint::new(coords).map(Self)
    }

    pub fn to_scalars(&self) -> Vec<Scalar> {
        self.0.to_scalars()
    }

    pub fn as_projective(&self) -> &ProjectivePoint {
        &self.0
    }
}

impl std::fmt::Display for AmbientPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// A symmetric hypersurface `F = 0` inside the hyperplane `sum x_i = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricHypersurfaceModel {
    name: String,
    degree: u32,
    polynomial: Polynomial,
    gradient: Vec<Polynomial>,
    hessian: Vec<Vec<Polynomial>>,
}

impl SymmetricHypersurfaceModel {
    pub fn new(name: &str, polynomial: Polynomial) -> Result<Self> {
        if polynomial.nvars() != COORDS {
            return Err(Error::InvalidInput("model polynomial must have six variables".into()));
        }
        let degree = polynomial
            .homogeneous_degree()
            .ok_or_else(|| Error::InvalidInput("model polynomial must be homogeneous".into()))?;
        if !is_symmetric(&polynomial) {
            return Err(Error::InvalidInput("model polynomial must be S6-invariant".into()));
        }
        let gradient: Vec<Polynomial> = (0..COORDS).map(|i| polynomial.derivative(i)).collect();
        let hessian = gradient.iter().map(|g| (0..COORDS).map(|j| g.derivative(j)).collect()).collect();
        Ok(Self { name: name.to_string(), degree, polynomial, gradient, hessian })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.polynomial
    }

    pub fn evaluate(&self, x: &[Scalar]) -> Scalar {
        self.polynomial.eval(x)
    }

    pub fn gradient_at(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.gradient.iter().map(|g| g.eval(x)).collect()
    }

    pub fn hessian_at(&self, x: &[Scalar]) -> Matrix {
        self.hessian.iter().map(|row| row.iter().map(|h| h.eval(x)).collect()).collect()
    }
}

/// Invariance under the transposition `(1 2)` and the 6-cycle, which
/// generate `S_6`.
pub(crate) fn is_symmetric(p: &Polynomial) -> bool {
    let swap = [1, 0, 2, 3, 4, 5];
    let cycle = [1, 2, 3, 4, 5, 0];
    p.permute(&swap) == *p && p.permute(&cycle) == *p
}

pub fn segre_cubic() -> SymmetricHypersurfaceModel {
    SymmetricHypersurfaceModel::new("segre", Polynomial::power_sum(COORDS, 3)).expect("Segre model is valid")
}

fn quartic_pencil_member(a: &Scalar, b: &Scalar) -> Polynomial {
    let p2 = Polynomial::power_sum(COORDS, 2);
    let p4 = Polynomial::power_sum(COORDS, 4);
    &p2.pow(2).scale(a) + &p4.scale(b)
}

/// The Igusa quartic `(sum x^2)^2 - 4 sum x^4`, validated against its
/// singular locus; falls back to [`igusa_from_pencil`] if validation fails.
pub fn igusa_quartic() -> Result<SymmetricHypersurfaceModel> {
    let candidate = SymmetricHypersurfaceModel::new("igusa", quartic_pencil_member(&int(1), &int(-4)))?;
    if singular_lines_check(&candidate) {
        return Ok(candidate);
    }
    igusa_from_pencil()
}

/// Finds the member `a p2^2 + b p4` of the pencil of symmetric quartics that
/// is singular along the matching lines, by solving the linear conditions
/// in `(a, b)` on one line and validating on all fifteen.
pub fn igusa_from_pencil() -> Result<SymmetricHypersurfaceModel> {
    let basis = [quartic_pencil_member(&int(1), &int(0)), quartic_pencil_member(&int(0), &int(1))];
    let grads: Vec<Vec<Polynomial>> =
        basis.iter().map(|p| (0..COORDS).map(|i| p.derivative(i)).collect()).collect();
    let line = IgusaLine::new(perfect_matchings()[0]);
    let mut rows: Matrix = Vec::new();
    for (t, u) in line_parameters() {
        let x = line.point_at(&t, &u);
        rows.push(basis.iter().map(|p| p.eval(&x)).collect());
        for i in 1..COORDS {
            rows.push(grads.iter().map(|g| g[i].eval(&x) - g[0].eval(&x)).collect());
        }
    }
    let kernel = linalg::kernel(&rows, 2);
    if kernel.len() != 1 {
        return Err(Error::PencilSearchFailed);
    }
    let model = SymmetricHypersurfaceModel::new("igusa", quartic_pencil_member(&kernel[0][0], &kernel[0][1]))?;
    if singular_lines_check(&model) {
        Ok(model)
    } else {
        Err(Error::PencilSearchFailed)
    }
}

/// Whether every matching line lies in the singular locus of `model`.
pub fn singular_lines_check(model: &SymmetricHypersurfaceModel) -> bool {
    perfect_matchings().into_iter().map(IgusaLine::new).all(|line| {
        line_parameters().iter().all(|(t, u)| {
            AmbientPoint::new(&line.point_at(t, u)).is_ok_and(|p| verify_singular_point(model, &p))
        })
    })
}

fn all_equal(v: &[Scalar]) -> bool {
    v.iter().all_equal()
}

/// `F(p) = 0` and the gradient is a multiple of the hyperplane normal.
pub fn verify_singular_point(model: &SymmetricHypersurfaceModel, p: &AmbientPoint) -> bool {
    let x = p.to_scalars();
    model.evaluate(&x).is_zero() && all_equal(&model.gradient_at(&x))
}

/// Rank of the Hessian restricted to the hyperplane `sum x_i = 0`; four at an
/// ordinary double point of a threefold in `P^4`.
pub fn node_hessian_rank(model: &SymmetricHypersurfaceModel, p: &AmbientPoint) -> usize {
    let h = model.hessian_at(&p.to_scalars());
    // columns e_i - e_6, i = 1..5, span the hyperplane
    let b: Matrix = (0..COORDS)
        .map(|row| {
            (0..COORDS - 1)
                .map(|col| {
                    if row == col {
                        Scalar::one()
                    } else if row == COORDS - 1 {
                        -Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                })
                .collect()
        })
        .collect();
    let restricted = linalg::mul(&linalg::mul(&linalg::transpose(&b), &h), &b);
    linalg::rank(&restricted)
}

/// The ten nodes of the Segre cubic, labelled by their splits and verified.
pub fn segre_nodes() -> Vec<(Split, AmbientPoint)> {
    let model = segre_cubic();
    splits_3_3()
        .into_iter()
        .map(|s| (s, s.node()))
        .inspect(|(s, p)| assert!(verify_singular_point(&model, p), "node {} not singular", s.label()))
        .collect()
}

/// Gradient of `F` at `p`, projected to the hyperplane by subtracting the
/// mean coordinate.
pub fn polar_map(model: &SymmetricHypersurfaceModel, p: &AmbientPoint) -> Result<AmbientPoint> {
    let x = p.to_scalars();
    if !model.evaluate(&x).is_zero() {
        return Err(Error::NotOnHypersurface);
    }
    let grad = model.gradient_at(&x);
    let mean = grad.iter().fold(Scalar::zero(), |a, g| a + g) / int(COORDS as i64);
    let projected: Vec<Scalar> = grad.into_iter().map(|g| g - &mean).collect();
    if projected.iter().all(Zero::is_zero) {
        return Err(Error::SingularPoint);
    }
    AmbientPoint::new(&projected)
}
