//! GIT (semi)stability of ordered point sets in `P^{r-1}` under the diagonal
//! `PGL(r)` action, via the numerical span criterion.
//!
//! A configuration is semistable (resp. stable) with weight `g` when every
//! subset of `k` points spanning a proper linear subspace of dimension `s`
//! satisfies `s >= k/g` (resp. `s > k/g`). Dimensions are linear, so a
//! single point spans dimension 1.
//!
//! [`classify`] enumerates only *flats*: subspaces spanned by at most `r - 1`
//! independent points, together with every point they contain. A violating
//! subset can always be enlarged to its closure, which keeps `s` and raises
//! `k`, so flats are the only candidates. [`oracle_classify`] checks every
//! subset literally and is kept as an independent reference.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{LinearSubspace, PointConfiguration};
use crate::linalg;
use crate::scalar::{self, Scalar};

/// Default cap on the number of points the exhaustive oracle accepts.
pub const ORACLE_MAX_POINTS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum StabilityClass {
    Stable,
    StrictlySemistable,
    Unstable,
}

impl StabilityClass {
    pub fn is_semistable(self) -> bool {
        self != StabilityClass::Unstable
    }

    pub fn is_stable(self) -> bool {
        self == StabilityClass::Stable
    }
}

/// The subset realizing the smallest value of `s*g - k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub span_dim: usize,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityVerdict {
    pub class: StabilityClass,
    pub witness: Option<Witness>,
    #[serde(with = "scalar::serde_scalar")]
    pub weight_g: Scalar,
}

/// A proper subspace spanned by some of the points, listing every point it
/// contains.
#[derive(Debug, Clone)]
pub(crate) struct Flat {
    pub members: Vec<usize>,
    pub dim: usize,
    pub spanning: Vec<usize>,
}

pub(crate) fn check_weight(g: &Scalar) -> Result<()> {
    if !g.is_positive() {
        return Err(Error::InvalidInput(format!(
            "weight g must be positive, got {}",
            scalar::format_scalar(g)
        )));
    }
    Ok(())
}

fn check_nonempty(config: &PointConfiguration) -> Result<()> {
    if config.is_empty() {
        return Err(Error::InvalidInput("configuration has no points".into()));
    }
    Ok(())
}

/// All flats of dimension `1..r-1`, each listed once, sorted by members.
pub(crate) fn proper_flats(config: &PointConfiguration) -> Vec<Flat> {
    let r = config.ambient_rank();
    let points = config.points();
    let mut seen = BTreeSet::new();
    let reps: Vec<usize> = (0..points.len())
        .filter(|&i| points[..i].iter().all(|q| *q != points[i]))
        .collect();
    let mut flats = Vec::new();
    for size in 1..r {
        for combo in reps.iter().copied().combinations(size) {
            let rows: Vec<Vec<BigInt>> = combo.iter().map(|&i| points[i].coords().to_vec()).collect();
            if linalg::rank_integer(&rows) != size {
                continue;
            }
            let members: Vec<usize> = (0..points.len())
                .filter(|&i| {
                    let mut ext = rows.clone();
                    ext.push(points[i].coords().to_vec());
                    linalg::rank_integer(&ext) == size
                })
                .collect();
            if seen.insert(members.clone()) {
                flats.push(Flat { members, dim: size, spanning: combo });
            }
        }
    }
    flats.sort_by(|a, b| a.members.cmp(&b.members));
    flats
}

// Smaller s*g - k first, then smaller subsets, then lexicographic indices.
fn witness_order(a: &(Scalar, Witness), b: &(Scalar, Witness)) -> Ordering {
    a.0.cmp(&b.0)
        .then(a.1.size.cmp(&b.1.size))
        .then_with(|| a.1.indices.cmp(&b.1.indices))
}

fn verdict_from_best(best: Option<(Scalar, Witness)>, g: &Scalar) -> StabilityVerdict {
    let (class, witness) = match best {
        Some((value, w)) if value.is_negative() => (StabilityClass::Unstable, Some(w)),
        Some((value, w)) if value.is_zero() => (StabilityClass::StrictlySemistable, Some(w)),
        _ => (StabilityClass::Stable, None),
    };
    StabilityVerdict { class, witness, weight_g: g.clone() }
}

fn deficit(span_dim: usize, size: usize, g: &Scalar) -> Scalar {
    scalar::int(span_dim as i64) * g - scalar::int(size as i64)
}

/// Classifies `config` with weight `g` (the genus, when `n = r g`).
pub fn classify(config: &PointConfiguration, g: &Scalar) -> Result<StabilityVerdict> {
    check_weight(g)?;
    check_nonempty(config)?;
    let best = proper_flats(config)
        .into_iter()
        .map(|f| {
            let w = Witness { size: f.members.len(), span_dim: f.dim, indices: f.members };
            (deficit(w.span_dim, w.size, g), w)
        })
        .min_by(witness_order);
    Ok(verdict_from_best(best, g))
}

/// Exhaustive version of [`classify`] over all `2^n - 1` nonempty subsets.
pub fn oracle_classify(config: &PointConfiguration, g: &Scalar) -> Result<StabilityVerdict> {
    oracle_classify_capped(config, g, ORACLE_MAX_POINTS)
}

pub fn oracle_classify_capped(
    config: &PointConfiguration,
    g: &Scalar,
    cap: usize,
) -> Result<StabilityVerdict> {
    check_weight(g)?;
    check_nonempty(config)?;
    let n = config.len();
    if n > cap || n >= usize::BITS as usize {
        return Err(Error::TooLarge { len: n, cap });
    }
    let r = config.ambient_rank();
    let mut best: Option<(Scalar, Witness)> = None;
    for mask in 1usize..(1 << n) {
        let indices: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let s = config.span_dim(&indices)?;
        if s >= r {
            continue;
        }
        let cand = (
            deficit(s, indices.len(), g),
            Witness { size: indices.len(), span_dim: s, indices },
        );
        if best.as_ref().is_none_or(|b| witness_order(&cand, b) == Ordering::Less) {
            best = Some(cand);
        }
    }
    Ok(verdict_from_best(best, g))
}

/// The proper subspace maximizing `#points in W - g dim W`, with that margin.
///
/// `None` when the points span no proper nonzero subspace (ambient rank 1).
pub fn worst_subspace(
    config: &PointConfiguration,
    g: &Scalar,
) -> Result<Option<(LinearSubspace, Scalar)>> {
    check_weight(g)?;
    check_nonempty(config)?;
    let best = proper_flats(config)
        .into_iter()
        .map(|f| (-deficit(f.dim, f.members.len(), g), f))
        .max_by(|a, b| {
            a.0.cmp(&b.0)
                .then(b.1.members.len().cmp(&a.1.members.len()))
                .then_with(|| b.1.members.cmp(&a.1.members))
        });
    match best {
        None => Ok(None),
        Some((margin, flat)) => Ok(Some((config.span(&flat.spanning)?, margin))),
    }
}
