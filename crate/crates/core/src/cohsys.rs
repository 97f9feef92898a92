//! Alpha-slope arithmetic for coherent systems of numerical type `(r, d, k)`
//! and the dictionary between point configurations and subsystems.
//!
//! A configuration `v` of `n = r g` points in `P^{r-1}` determines a
//! generically generated coherent system of type `(r, r g, r)`. A subset of
//! `d` points spanning a linear subspace of dimension `s` determines a
//! subsystem of type `(s, d, s)`, and the alpha-slope comparison
//! `d/s + alpha <= g + alpha` is the span inequality `s >= d/g`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{PointConfiguration, ProjectivePoint};
use crate::gitstab::{self, StabilityVerdict};
use crate::scalar::{self, int, Scalar};

/// Numerical type of a coherent system: rank, degree, number of sections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SystemType {
    pub r: u64,
    pub d: u64,
    pub k: u64,
}

impl SystemType {
    pub fn new(r: u64, d: u64, k: u64) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidInput("rank must be at least 1".into()));
        }
        Ok(Self { r, d, k })
    }

    /// `k / r`, the coefficient of alpha in the slope.
    pub fn section_ratio(&self) -> Scalar {
        Scalar::new(self.k.into(), self.r.into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalValueSet {
    #[serde(with = "scalar::serde_scalar_vec")]
    pub values: Vec<Scalar>,
    pub generating_type: SystemType,
}

/// Search box for subtypes `(s, d', k')` in the critical value enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubtypeBounds {
    pub max_degree: u64,
    pub max_sections: u64,
}

impl SubtypeBounds {
    pub fn for_type(t: &SystemType) -> Self {
        Self { max_degree: t.d, max_sections: t.k }
    }
}

pub fn alpha_slope(t: &SystemType, alpha: &Scalar) -> Scalar {
    let r = BigInt::from(t.r);
    Scalar::new(BigInt::from(t.d), r.clone()) + alpha * Scalar::new(BigInt::from(t.k), r)
}

/// The `alpha` at which `sub` and `full` have equal slopes, if the section
/// ratios differ.
pub fn crossing_alpha(full: &SystemType, sub: &SystemType) -> Option<Scalar> {
    let gap = sub.section_ratio() - full.section_ratio();
    if gap.is_zero() {
        return None;
    }
    let zero = Scalar::zero();
    Some((alpha_slope(full, &zero) - alpha_slope(sub, &zero)) / gap)
}

/// Every subtype in the bounds together with the positive critical value it
/// produces, in enumeration order.
pub fn critical_value_sources(t: &SystemType, bounds: SubtypeBounds) -> Vec<(SystemType, Scalar)> {
    let mut out = Vec::new();
    for s in 1..t.r {
        for d in 0..=bounds.max_degree {
            for k in 0..=bounds.max_sections {
                let sub = SystemType { r: s, d, k };
                if let Some(alpha) = crossing_alpha(t, &sub) {
                    if alpha.is_positive() {
                        out.push((sub, alpha));
                    }
                }
            }
        }
    }
    out
}

pub fn critical_values(t: &SystemType) -> CriticalValueSet {
    critical_values_with(t, SubtypeBounds::for_type(t))
}

pub fn critical_values_with(t: &SystemType, bounds: SubtypeBounds) -> CriticalValueSet {
    let values: BTreeSet<Scalar> = critical_value_sources(t, bounds).into_iter().map(|(_, a)| a).collect();
    CriticalValueSet { values: values.into_iter().collect(), generating_type: *t }
}

/// Beyond this value of alpha the moduli of type `(r, r g, r)` no longer change.
pub fn stabilization_threshold(r: u64, g: u64) -> u64 {
    g * r.saturating_sub(1)
}

/// Maximal subsystem types `(s, d_max(s), s)` for `s = 1..r-1`, where
/// `d_max(s)` is the largest number of points whose span has dimension `<= s`.
pub fn subsystem_types_from_config(config: &PointConfiguration) -> Vec<SystemType> {
    let flats = gitstab::proper_flats(config);
    (1..config.ambient_rank())
        .map(|s| {
            let d = flats
                .iter()
                .filter(|f| f.dim <= s)
                .map(|f| f.members.len())
                .max()
                .unwrap_or(0);
            SystemType { r: s as u64, d: d as u64, k: s as u64 }
        })
        .collect()
}

fn full_type(config: &PointConfiguration, g: &Scalar) -> Result<SystemType> {
    gitstab::check_weight(g)?;
    let r = config.ambient_rank() as i64;
    let expected = int(r) * g;
    if expected != int(config.len() as i64) {
        return Err(Error::SizeMismatch { len: config.len(), expected: scalar::format_scalar(&expected) });
    }
    let n = config.len() as u64;
    Ok(SystemType { r: r as u64, d: n, k: r as u64 })
}

fn alpha_check(config: &PointConfiguration, g: &Scalar, alpha: &Scalar, strict: bool) -> Result<bool> {
    let full = full_type(config, g)?;
    let target = alpha_slope(&full, alpha);
    Ok(subsystem_types_from_config(config).iter().all(|sub| {
        let mu = alpha_slope(sub, alpha);
        if strict {
            mu < target
        } else {
            mu <= target
        }
    }))
}

/// Alpha-semistability of the coherent system attached to `config`, tested
/// against its span-derived subsystems.
pub fn alpha_semistable_config(config: &PointConfiguration, g: &Scalar, alpha: &Scalar) -> Result<bool> {
    alpha_check(config, g, alpha, false)
}

pub fn alpha_stable_config(config: &PointConfiguration, g: &Scalar, alpha: &Scalar) -> Result<bool> {
    alpha_check(config, g, alpha, true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub git: StabilityVerdict,
    #[serde(with = "scalar::serde_scalar")]
    pub alpha: Scalar,
    pub alpha_semistable: bool,
    pub alpha_stable: bool,
    pub agree: bool,
}

/// Compares GIT (semi)stability with alpha-(semi)stability just above the
/// stabilization threshold.
pub fn equivalence_check(config: &PointConfiguration, g: u64) -> Result<EquivalenceReport> {
    let gs = int(g as i64);
    full_type(config, &gs)?;
    let git = gitstab::classify(config, &gs)?;
    let alpha = int(stabilization_threshold(config.ambient_rank() as u64, g) as i64 + 1);
    let alpha_semistable = alpha_semistable_config(config, &gs, &alpha)?;
    let alpha_stable = alpha_stable_config(config, &gs, &alpha)?;
    let agree = git.class.is_semistable() == alpha_semistable && git.class.is_stable() == alpha_stable;
    Ok(EquivalenceReport { git, alpha, alpha_semistable, alpha_stable, agree })
}

/// True when `sub` has strictly larger alpha-slope than `full`.
pub fn subsystem_violates(full: &SystemType, sub: &SystemType, alpha: &Scalar) -> bool {
    alpha_slope(sub, alpha) > alpha_slope(full, alpha)
}

/// The point set of the destabilizing-bundle example in genus `g`: `g - 1`
/// copies of `[1:0]` followed by `[lambda_i : 1]` for `g + 1` distinct
/// nonzero `lambda_i`. Defaults to `lambda_i = i` when none are given.
pub fn destable_example(genus: u64, lambdas: Option<&[Scalar]>) -> Result<PointConfiguration> {
    if genus < 2 {
        return Err(Error::InvalidInput("genus must be at least 2".into()));
    }
    let default: Vec<Scalar>;
    let lambdas = match lambdas {
        Some(l) => l,
        None => {
            default = (1..=genus as i64 + 1).map(int).collect();
            &default
        }
    };
    if lambdas.len() as u64 != genus + 1 {
        return Err(Error::InvalidInput(format!("expected {} lambdas, got {}", genus + 1, lambdas.len())));
    }
    if lambdas.iter().any(Zero::is_zero) {
        return Err(Error::InvalidInput("lambdas must be nonzero".into()));
    }
    if lambdas.iter().collect::<BTreeSet<_>>().len() != lambdas.len() {
        return Err(Error::InvalidInput("lambdas must be pairwise distinct".into()));
    }
    let mut points = vec![ProjectivePoint::from_ints(&[1, 0])?; genus as usize - 1];
    for l in lambdas {
        points.push(ProjectivePoint::new(&[l.clone(), int(1)])?);
    }
    PointConfiguration::new(2, points)
}
