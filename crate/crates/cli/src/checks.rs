//! The checks run by `stab verify-all`.

use std::collections::BTreeSet;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use stab_core::cohsys::{self, SubtypeBounds};
use stab_core::gale;
use stab_core::gitstab::{classify, oracle_classify};
use stab_core::modhyp::{
    duality_check, extra_singular_points, geometric_incidence, igusa_points, igusa_quartic, incidence_15_3,
    node_hessian_rank, pairs, perfect_matchings, segre_cubic, segre_nodes, singular_lines_check, splits_3_3,
    verify_singular_point,
};
use stab_core::projective::projectively_equivalent;
use stab_core::random::{conic_configuration, general_configuration, mixed_configuration};
use stab_core::scalar::{format_scalar, int, ratio};
use stab_core::{ProjectiveTransform, Scalar, StabilityClass, SystemType};

/// Random configurations per randomized check.
pub const RANDOM_CONFIGS: usize = 1000;
pub const GALE_CONFIGS: usize = 100;
pub const CONIC_CONFIGS: usize = 12;
/// Random search points per duality sample in the singular point search.
pub const SEARCH_POINTS_PER_SAMPLE: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub samples: usize,
    pub checks: Vec<Check>,
    pub passed: bool,
}

fn check(id: u8, name: &'static str, passed: bool, detail: String) -> Check {
    Check { id, name, passed, detail }
}

fn sub_seed(seed: u64, id: u8) -> u64 {
    seed ^ (u64::from(id) << 56) ^ 0x0123_4567_89ab_cdef
}

fn weights() -> [Scalar; 6] {
    [int(1), ratio(3, 2), int(2), ratio(5, 2), int(3), int(4)]
}

pub fn oracle_agreement(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, 1));
    let ws = weights();
    let mut disagreements = Vec::new();
    let mut classes = [0usize; 3];
    for _ in 0..RANDOM_CONFIGS {
        let r = rng.gen_range(2..=3);
        let n = rng.gen_range(4..=9);
        let c = mixed_configuration(&mut rng, r, n);
        let g = &ws[rng.gen_range(0..ws.len())];
        let (fast, slow) = (classify(&c, g), oracle_classify(&c, g));
        match (fast, slow) {
            (Ok(a), Ok(b)) if a == b => classes[a.class as usize] += 1,
            (a, b) => disagreements.push(format!("{} g={}: {a:?} vs {b:?}", c.to_json(), format_scalar(g))),
        }
    }
    check(
        1,
        "classify agrees with the exhaustive oracle",
        disagreements.is_empty(),
        format!(
            "{}/{RANDOM_CONFIGS} agree (stable {}, strictly semistable {}, unstable {}){}",
            RANDOM_CONFIGS - disagreements.len(),
            classes[0],
            classes[1],
            classes[2],
            first(&disagreements)
        ),
    )
}

pub fn dictionary_agreement(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, 2));
    let mut failures = Vec::new();
    let mut classes = [0usize; 3];
    for _ in 0..RANDOM_CONFIGS {
        let r = rng.gen_range(2..=3);
        let g = rng.gen_range(2..=4u64);
        let c = mixed_configuration(&mut rng, r, r * g as usize);
        match cohsys::equivalence_check(&c, g) {
            Ok(rep) if rep.agree => classes[rep.git.class as usize] += 1,
            other => failures.push(format!("{} g={g}: {other:?}", c.to_json())),
        }
    }
    check(
        2,
        "GIT and alpha-stability agree above the threshold",
        failures.is_empty(),
        format!(
            "{}/{RANDOM_CONFIGS} agree (stable {}, strictly semistable {}, unstable {}){}",
            RANDOM_CONFIGS - failures.len(),
            classes[0],
            classes[1],
            classes[2],
            first(&failures)
        ),
    )
}

pub fn destabilizing_example() -> Check {
    let probes = [ratio(1, 4), ratio(1, 2), ratio(99, 100), int(1), ratio(101, 100), ratio(3, 2), int(2), int(7)];
    let mut problems = Vec::new();
    for g in 4..=8u64 {
        let stable = cohsys::destable_example(g, None)
            .and_then(|c| classify(&c, &int(g as i64)))
            .map(|v| v.class == StabilityClass::Stable);
        if stable != Ok(true) {
            problems.push(format!("genus {g}: configuration not stable ({stable:?})"));
        }
        let full = SystemType { r: 2, d: 2 * g, k: 2 };
        if !cohsys::critical_values(&full).values.contains(&int(1)) {
            problems.push(format!("genus {g}: 1 is not a critical value"));
        }
        let sub = SystemType { r: 1, d: g + 1, k: 0 };
        for a in &probes {
            if cohsys::subsystem_violates(&full, &sub, a) != (*a < int(1)) {
                problems.push(format!("genus {g}: wrong violation verdict at alpha {}", format_scalar(a)));
            }
        }
    }
    check(
        3,
        "destabilizing example: stable points, critical value 1, violation below 1",
        problems.is_empty(),
        if problems.is_empty() { "genus 4..8 all hold".into() } else { problems.join("; ") },
    )
}

pub fn thresholds() -> Check {
    let mut problems = Vec::new();
    let mut scanned = 0usize;
    for r in 1..=6u64 {
        for g in 1..=6u64 {
            let cap = g * (r - 1);
            if cohsys::stabilization_threshold(r, g) != cap {
                problems.push(format!("threshold({r},{g}) != {cap}"));
            }
            let t = SystemType { r, d: r * g, k: r };
            for (sub, alpha) in cohsys::critical_value_sources(&t, SubtypeBounds::for_type(&t)) {
                if sub.k < sub.r {
                    scanned += 1;
                    if alpha >= int(cap as i64) {
                        problems.push(format!(
                            "type ({r},{},{r}) subtype ({},{},{}) gives {} >= {cap}",
                            r * g,
                            sub.r,
                            sub.d,
                            sub.k,
                            format_scalar(&alpha)
                        ));
                    }
                }
            }
        }
    }
    let count = problems.len();
    problems.truncate(3);
    check(
        4,
        "stabilization threshold and strict bound on critical values",
        count == 0,
        format!("{scanned} critical values scanned, {count} violations{}", first_list(&problems)),
    )
}

pub fn gale_checks(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, 5));
    let mut problems = Vec::new();
    let mut involutions = 0;
    for _ in 0..GALE_CONFIGS {
        let c = general_configuration(&mut rng, 3, 6);
        let ok = gale::gale_transform(&c).and_then(|once| {
            let twice = gale::gale_transform(&once.target)?;
            Ok(once.relation_holds()
                && twice.relation_holds()
                && projectively_equivalent(&c, &twice.target)?.is_some())
        });
        match ok {
            Ok(true) => involutions += 1,
            other => problems.push(format!("involution fails on {}: {other:?}", c.to_json())),
        }
    }
    let mut conics = 0;
    for _ in 0..CONIC_CONFIGS {
        let c = conic_configuration(&mut rng, 6);
        let c = ProjectiveTransform::random(3, &mut rng).apply_config(&c).expect("same rank");
        let ok = gale::gale_transform(&c).map(|d| d.relation_holds()).unwrap_or(false)
            && gale::on_smooth_conic(&c) == Ok(true)
            && gale::is_self_associated(&c) == Ok(true);
        if ok {
            conics += 1;
        } else {
            problems.push(format!("conic configuration not self-associated: {}", c.to_json()));
        }
    }
    let mut generic = 0;
    while generic < CONIC_CONFIGS && problems.len() < 5 {
        let c = general_configuration(&mut rng, 3, 6);
        if gale::on_smooth_conic(&c) != Ok(false) {
            continue;
        }
        let ok = gale::gale_transform(&c).map(|d| d.relation_holds()).unwrap_or(false)
            && gale::is_self_associated(&c) == Ok(false);
        if ok {
            generic += 1;
        } else {
            problems.push(format!("generic configuration self-associated: {}", c.to_json()));
        }
    }
    check(
        5,
        "Gale transform: involution, conic self-association, exact relation",
        problems.is_empty() && involutions == GALE_CONFIGS && conics >= 10 && generic >= 10,
        format!(
            "involution {involutions}/{GALE_CONFIGS}, self-associated conics {conics}, non-self-associated generic {generic}{}",
            first(&problems)
        ),
    )
}

pub fn segre_checks(samples: usize, seed: u64) -> Check {
    let segre = segre_cubic();
    let nodes = segre_nodes();
    let mut problems = Vec::new();
    if nodes.len() != 10 {
        problems.push(format!("{} nodes", nodes.len()));
    }
    for (split, p) in &nodes {
        let x = p.to_scalars();
        if !segre.evaluate(&x).is_zero() || !verify_singular_point(&segre, p) || node_hessian_rank(&segre, p) != 4 {
            problems.push(format!("node {} at {p} fails", split.label()));
        }
        if split.node() != *p {
            problems.push(format!("node {} mislabelled", split.label()));
        }
    }
    let labels: BTreeSet<_> = nodes.iter().map(|(s, _)| *s).collect();
    let points: BTreeSet<_> = nodes.iter().map(|(_, p)| p.clone()).collect();
    if labels != splits_3_3().into_iter().collect() || points.len() != nodes.len() {
        problems.push("nodes are not in bijection with the splits".into());
    }
    let trials = samples * SEARCH_POINTS_PER_SAMPLE;
    let extra = extra_singular_points(trials, sub_seed(seed, 6));
    if let Some(p) = extra.first() {
        problems.push(format!("extra singular point {p}"));
    }
    check(
        6,
        "Segre cubic: ten ordinary nodes, one per split, no others",
        problems.is_empty(),
        format!("{} nodes, {trials} random points searched{}", nodes.len(), first(&problems)),
    )
}

pub fn igusa_checks() -> Check {
    let mut problems = Vec::new();
    let model = match igusa_quartic() {
        Ok(m) => m,
        Err(e) => return check(7, "Igusa quartic", false, format!("model: {e}")),
    };
    if !singular_lines_check(&model) {
        problems.push("matching lines not singular".to_string());
    }
    let points = igusa_points();
    if points.len() != 15 || !points.iter().all(|(_, p)| verify_singular_point(&model, p)) {
        problems.push("distinguished points not singular".into());
    }
    let inc = incidence_15_3();
    let geometric = geometric_incidence();
    if !inc.is_configuration(15, 3) || inc.incidence.len() != 45 || geometric != inc.incidence {
        problems.push(format!("incidence mismatch: {} geometric flags", geometric.len()));
    }
    check(
        7,
        "Igusa quartic: fifteen singular lines and points in a 15_3 configuration",
        problems.is_empty(),
        format!("{} geometric flags{}", geometric.len(), first(&problems)),
    )
}

pub fn duality(samples: usize, seed: u64) -> Check {
    let report = duality_check(samples, sub_seed(seed, 8));
    check(
        8,
        "Segre cubic and Igusa quartic are dual under the polar maps",
        report.all_hold() && report.samples == samples,
        format!(
            "forward {}/{samples}, reverse {}/{samples}, bidual {}/{samples}, skipped on planes {}{}",
            report.forward_holds,
            report.reverse_holds,
            report.bidual_holds,
            report.contracted,
            first(&report.counterexamples)
        ),
    )
}

pub fn combinatorics() -> Check {
    let ms = perfect_matchings();
    let ps = pairs();
    let degrees_ok = ps.iter().all(|p| ms.iter().filter(|m| m.contains(p)).count() == 3);
    let sizes_ok = ms.iter().all(|m| m.iter().collect::<BTreeSet<_>>().len() == 3);
    let passed = ms.len() == 15 && splits_3_3().len() == 10 && ps.len() == 15 && degrees_ok && sizes_ok;
    check(
        9,
        "matchings, splits and the edge-matching incidence",
        passed,
        format!(
            "{} matchings, {} splits, edge degree 3: {degrees_ok}, matching size 3: {sizes_ok}",
            ms.len(),
            splits_3_3().len()
        ),
    )
}

pub fn verify_all(samples: usize, seed: u64) -> VerifyReport {
    let checks = vec![
        oracle_agreement(seed),
        dictionary_agreement(seed),
        destabilizing_example(),
        thresholds(),
        gale_checks(seed),
        segre_checks(samples, seed),
        igusa_checks(),
        duality(samples, seed),
        combinatorics(),
    ];
    let passed = checks.iter().all(|c| c.passed);
    VerifyReport { seed, samples, checks, passed }
}

fn first(items: &[String]) -> String {
    items.first().map(|s| format!("; first: {s}")).unwrap_or_default()
}

fn first_list(items: &[String]) -> String {
    if items.is_empty() {
        String::new()
    } else {
        format!("; e.g. {}", items.join("; "))
    }
}
