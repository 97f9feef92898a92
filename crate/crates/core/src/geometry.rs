//! Projective points, ordered point configurations and linear spans.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::{self, Scalar, ScalarRepr};

/// A point of projective space, stored as its primitive integer vector with
/// positive leading nonzero entry. Equality is therefore projective equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: Vec<BigInt>,
}

impl ProjectivePoint {
    pub fn new(coords: &[Scalar]) -> Result<Self> {
        let l = coords.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = coords.iter().map(|x| x.numer() * (&l / x.denom())).collect();
        Self::from_bigints(ints)
    }

    pub fn from_bigints(mut coords: Vec<BigInt>) -> Result<Self> {
        let Some(lead) = coords.iter().find(|x| !x.is_zero()) else {
            return Err(Error::ZeroVector);
        };
        let mut g = coords.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if lead.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for x in coords.iter_mut() {
                *x /= &g;
            }
        }
        Ok(Self { coords })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        Self::from_bigints(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn to_scalars(&self) -> Vec<Scalar> {
        self.coords.iter().cloned().map(scalar::from_bigint).collect()
    }

    /// Length of the coordinate vector, i.e. the ambient rank.
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(":")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

/// An ordered list of points in `P^{r-1}`. Repeated points are allowed and
/// keep their own labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfiguration {
    ambient_rank: usize,
    points: Vec<ProjectivePoint>,
}

impl PointConfiguration {
    pub fn new(ambient_rank: usize, points: Vec<ProjectivePoint>) -> Result<Self> {
        if ambient_rank == 0 {
            return Err(Error::InvalidInput("ambient rank must be positive".into()));
        }
        if let Some(p) = points.iter().find(|p| p.len() != ambient_rank) {
            return Err(Error::DimensionMismatch { expected: ambient_rank, found: p.len() });
        }
        Ok(Self { ambient_rank, points })
    }

    /// Builds a configuration from small integer rows; the rank is read off the
    /// first row.
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        let r = rows.first().map_or(0, |row| row.len());
        let points = rows.iter().map(|row| ProjectivePoint::from_ints(row)).collect::<Result<_>>()?;
        Self::new(r, points)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The `n x r` matrix whose rows are the canonical coordinate vectors.
    pub fn coordinate_matrix(&self) -> Matrix {
        self.points.iter().map(ProjectivePoint::to_scalars).collect()
    }

    /// Linear dimension of the span of the selected points; 0 for the empty set.
    pub fn span_dim(&self, subset: &[usize]) -> Result<usize> {
        let rows = self.select(subset)?;
        Ok(linalg::rank_integer(&rows))
    }

    pub(crate) fn select(&self, subset: &[usize]) -> Result<Vec<Vec<BigInt>>> {
        subset
            .iter()
            .map(|&i| {
                self.points
                    .get(i)
                    .map(|p| p.coords.clone())
                    .ok_or(Error::IndexOutOfRange { index: i, len: self.points.len() })
            })
            .collect()
    }

    pub fn span(&self, subset: &[usize]) -> Result<LinearSubspace> {
        let rows = self.select(subset)?;
        let rows: Matrix = rows
            .into_iter()
            .map(|r| r.into_iter().map(scalar::from_bigint).collect())
            .collect();
        Ok(LinearSubspace::from_vectors(&rows, self.ambient_rank))
    }

    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let points = order
            .iter()
            .map(|&i| {
                self.points
                    .get(i)
                    .cloned()
                    .ok_or(Error::IndexOutOfRange { index: i, len: self.points.len() })
            })
            .collect::<Result<_>>()?;
        Self::new(self.ambient_rank, points)
    }

    pub fn with_point(&self, p: ProjectivePoint) -> Result<Self> {
        let mut points = self.points.clone();
        points.push(p);
        Self::new(self.ambient_rank, points)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ConfigJson =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        raw.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ConfigJson::from(self)).expect("configuration serializes")
    }
}

/// Wire form shared by every command: rationals as `"p/q"` strings or bare
/// integers.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigJson {
    pub ambient_rank: usize,
    pub points: Vec<Vec<ScalarRepr>>,
}

impl TryFrom<ConfigJson> for PointConfiguration {
    type Error = Error;

    fn try_from(raw: ConfigJson) -> Result<Self> {
        let points = raw
            .points
            .into_iter()
            .map(|coords| {
                if coords.len() != raw.ambient_rank {
                    return Err(Error::DimensionMismatch {
                        expected: raw.ambient_rank,
                        found: coords.len(),
                    });
                }
                let coords: Vec<Scalar> = coords.into_iter().map(|c| c.0).collect();
                ProjectivePoint::new(&coords)
            })
            .collect::<Result<_>>()?;
        PointConfiguration::new(raw.ambient_rank, points)
    }
}

impl From<&PointConfiguration> for ConfigJson {
    fn from(c: &PointConfiguration) -> Self {
        ConfigJson {
            ambient_rank: c.ambient_rank,
            points: c
                .points
                .iter()
                .map(|p| p.to_scalars().into_iter().map(ScalarRepr).collect())
                .collect(),
        }
    }
}

impl Serialize for PointConfiguration {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ConfigJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for PointConfiguration {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ConfigJson::deserialize(d)?;
        raw.try_into().map_err(serde::de::Error::custom)
    }
}

/// A linear subspace of `Q^r`, kept as a reduced-row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSubspace {
    ambient: usize,
    basis: Matrix,
}

impl LinearSubspace {
    pub fn from_vectors(vectors: &[Vec<Scalar>], ambient: usize) -> Self {
        let (r, pivots) = linalg::rref(vectors);
        let basis = r.into_iter().take(pivots.len()).collect();
        Self { ambient, basis }
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        linalg::rank(&rows) == self.dim()
    }
}
