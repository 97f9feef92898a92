//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stab_core::cohsys::{self, SubtypeBounds};
use stab_core::gale;
use stab_core::gitstab::{classify, oracle_classify};
use stab_core::linalg;
use stab_core::modhyp::{
    duality_check, extra_singular_points, geometric_incidence, igusa_lines, igusa_points, incidence_15_3,
    node_hessian_rank, perfect_matchings, sample_segre_points, segre_cubic, segre_nodes, splits_3_3,
    AmbientPoint,
};
use stab_core::projective::projectively_equivalent;
use stab_core::random::{conic_configuration, general_configuration, mixed_configuration};
use stab_core::scalar::{format_scalar, int, ratio};
use stab_core::{PointConfiguration, ProjectiveTransform, Scalar, StabilityClass, SystemType};

const SEED: u64 = 20_240_917;

// pinned sizes and runtime limits
const ORACLE_CASES: usize = 1000;
const DICTIONARY_CASES: usize = 1000;
const GALE_CASES: usize = 100;
const CONIC_CASES: usize = 10;
const SEARCH_POINTS: usize = 10_000;
const DUALITY_SAMPLES: usize = 200;
const VERIFY_ALL_SAMPLES: &str = "200";
const VERIFY_ALL_SEED: &str = "7";

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn sum(xs: &[Scalar]) -> Scalar {
    xs.iter().fold(Scalar::zero(), |a, x| a + x)
}

fn power_sum(xs: &[Scalar], k: u32) -> Scalar {
    xs.iter().fold(Scalar::zero(), |a, x| a + num_traits::pow(x.clone(), k as usize))
}

fn all_equal(xs: &[Scalar]) -> bool {
    xs.windows(2).all(|w| w[0] == w[1])
}

// Closed forms written out independently of the polynomial machinery.
fn cubic(x: &[Scalar]) -> Scalar {
    power_sum(x, 3)
}

fn cubic_gradient(x: &[Scalar]) -> Vec<Scalar> {
    x.iter().map(|v| int(3) * v * v).collect()
}

fn quartic(x: &[Scalar]) -> Scalar {
    let p2 = power_sum(x, 2);
    &p2 * &p2 - int(4) * power_sum(x, 4)
}

fn quartic_gradient(x: &[Scalar]) -> Vec<Scalar> {
    let p2 = power_sum(x, 2);
    x.iter().map(|v| int(4) * &p2 * v - int(16) * v * v * v).collect()
}

fn project(grad: Vec<Scalar>) -> Vec<Scalar> {
    let mean = sum(&grad) / int(grad.len() as i64);
    grad.into_iter().map(|g| g - &mean).collect()
}

fn on_some_plane(x: &[Scalar]) -> bool {
    // x_a + x_b = 0 on the three pairs of some perfect matching
    let zero_pairs: Vec<(usize, usize)> =
        (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b))).filter(|&(a, b)| (&x[a] + &x[b]).is_zero()).collect();
    zero_pairs.iter().any(|&(a, b)| {
        zero_pairs.iter().any(|&(c, d)| {
            let used = [a, b, c, d];
            if used.iter().collect::<BTreeSet<_>>().len() < 4 {
                return false;
            }
            let rest: Vec<usize> = (0..6).filter(|i| !used.contains(i)).collect();
            (&x[rest[0]] + &x[rest[1]]).is_zero()
        })
    })
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let weights = [int(1), ratio(3, 2), int(2), ratio(5, 2), int(3)];
    let mut classes = BTreeSet::new();
    let mut coincident = 0;
    for i in 0..ORACLE_CASES {
        let r = 2 + i % 2;
        let n = rng.gen_range(4..=9);
        let c = mixed_configuration(&mut rng, r, n);
        if c.points().iter().collect::<BTreeSet<_>>().len() < n {
            coincident += 1;
        }
        let g = &weights[rng.gen_range(0..weights.len())];
        let fast = classify(&c, g).expect("valid input");
        let slow = oracle_classify(&c, g).expect("valid input");
        if fast != slow {
            return outcome(false, format!("case {i}: {} g={}: {fast:?} vs {slow:?}", c.to_json(), format_scalar(g)));
        }
        classes.insert(fast.class);
    }
    outcome(
        classes.len() == 3 && coincident > 100,
        format!("{ORACLE_CASES} configurations agree, {coincident} with coincident points, classes seen {classes:?}"),
    )
}

fn dictionary() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut classes = BTreeSet::new();
    for i in 0..DICTIONARY_CASES {
        let r = rng.gen_range(2..=3usize);
        let g = rng.gen_range(2..=4u64);
        let c = mixed_configuration(&mut rng, r, r * g as usize);
        let gs = int(g as i64);
        let git = classify(&c, &gs).expect("valid input").class;
        let alpha = int((g * (r as u64 - 1) + 1) as i64);
        let semistable = cohsys::alpha_semistable_config(&c, &gs, &alpha).expect("n = r g");
        let stable = cohsys::alpha_stable_config(&c, &gs, &alpha).expect("n = r g");
        let report = cohsys::equivalence_check(&c, g).expect("n = r g");
        if git.is_semistable() != semistable || git.is_stable() != stable || !report.agree || report.alpha != alpha {
            return outcome(false, format!("case {i}: {} g={g}: git {git:?}, alpha {semistable}/{stable}", c.to_json()));
        }
        classes.insert(git);
    }
    outcome(classes.len() == 3, format!("{DICTIONARY_CASES} configurations agree, classes seen {classes:?}"))
}

fn destabilizing_example() -> Outcome {
    for g in 4..=8i64 {
        let mut rows: Vec<Vec<i64>> = vec![vec![1, 0]; (g - 1) as usize];
        rows.extend((1..=g + 1).map(|l| vec![l * l + 1, l]));
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let by_hand = PointConfiguration::from_int_rows(&refs).unwrap();
        let generated = cohsys::destable_example(g as u64, None).unwrap();
        for c in [&by_hand, &generated] {
            if classify(c, &int(g)).unwrap().class != StabilityClass::Stable {
                return outcome(false, format!("genus {g}: {} not stable", c.to_json()));
            }
        }
        let full = SystemType { r: 2, d: 2 * g as u64, k: 2 };
        if !cohsys::critical_values(&full).values.contains(&int(1)) {
            return outcome(false, format!("genus {g}: 1 missing from critical values"));
        }
        let sub = SystemType { r: 1, d: g as u64 + 1, k: 0 };
        for num in 1..=40 {
            let alpha = ratio(num, 8);
            // slopes g + 1 and g + alpha
            let expected = int(g + 1) > int(g) + &alpha;
            if cohsys::subsystem_violates(&full, &sub, &alpha) != expected || expected != (alpha < int(1)) {
                return outcome(false, format!("genus {g}: wrong verdict at alpha {}", format_scalar(&alpha)));
            }
        }
    }
    outcome(true, "genus 4..8: stable, 1 critical, violation exactly below 1")
}

fn thresholds() -> Outcome {
    for r in 1..=6u64 {
        for g in 1..=6u64 {
            if cohsys::stabilization_threshold(r, g) != g * (r - 1) {
                return outcome(false, format!("threshold({r},{g})"));
            }
        }
    }
    let mut scanned = 0;
    let mut violations = Vec::new();
    for r in 2..=6i64 {
        for g in 1..=6i64 {
            let t = SystemType { r: r as u64, d: (r * g) as u64, k: r as u64 };
            let listed = cohsys::critical_values(&t).values;
            let cap = int(g * (r - 1));
            for s in 1..r {
                for d in 0..=r * g {
                    for k in 0..s {
                        // d/s + a k/s = g + a  =>  a = (d/s - g) / (1 - k/s)
                        let alpha = (ratio(d, s) - int(g)) / (int(1) - ratio(k, s));
                        if alpha <= Scalar::zero() {
                            continue;
                        }
                        scanned += 1;
                        if !listed.contains(&alpha) {
                            return outcome(false, format!("({s},{d},{k}) value {} not listed", format_scalar(&alpha)));
                        }
                        if alpha >= cap {
                            violations.push(format!(
                                "type ({r},{},{r}) subtype ({s},{d},{k}) gives {} >= {}",
                                r * g,
                                format_scalar(&alpha),
                                format_scalar(&cap)
                            ));
                        }
                    }
                }
            }
            // the source enumeration agrees with the scan above
            let from_lib = cohsys::critical_value_sources(&t, SubtypeBounds::for_type(&t))
                .into_iter()
                .filter(|(sub, _)| sub.k < sub.r)
                .count();
            let by_hand = (1..r)
                .flat_map(|s| (0..=r * g).flat_map(move |d| (0..s).map(move |k| (s, d, k))))
                .filter(|&(s, d, k)| (ratio(d, s) - int(g)) / (int(1) - ratio(k, s)) > Scalar::zero())
                .count();
            if from_lib != by_hand {
                return outcome(false, format!("type ({r},{},{r}): {from_lib} sources vs {by_hand}", r * g));
            }
        }
    }
    let n = violations.len();
    violations.truncate(2);
    outcome(
        n == 0,
        format!("thresholds match; {scanned} values from k' < s scanned, {n} not strictly below g(r-1): {violations:?}"),
    )
}

fn relation_is_zero(data: &stab_core::GaleData) -> bool {
    let g = data.source.coordinate_matrix();
    let h = data.target.coordinate_matrix();
    (0..g[0].len()).all(|a| {
        (0..h[0].len()).all(|b| {
            (0..g.len()).fold(Scalar::zero(), |acc, i| acc + &g[i][a] * &data.diag[i] * &h[i][b]).is_zero()
        })
    })
}

fn gale_criterion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    for i in 0..GALE_CASES {
        let c = general_configuration(&mut rng, 3, 6);
        let once = gale::gale_transform(&c).unwrap();
        let twice = gale::gale_transform(&once.target).unwrap();
        if !relation_is_zero(&once) || !relation_is_zero(&twice) {
            return outcome(false, format!("case {i}: relation fails"));
        }
        if projectively_equivalent(&c, &twice.target).unwrap().is_none() {
            return outcome(false, format!("case {i}: not an involution on {}", c.to_json()));
        }
    }
    let mut conics = 0;
    for _ in 0..CONIC_CASES {
        let c = conic_configuration(&mut rng, 7);
        let c = ProjectiveTransform::random(3, &mut rng).apply_config(&c).unwrap();
        // independent conic test: the 6x6 matrix of degree two monomials is singular
        let m: Vec<Vec<Scalar>> = c
            .coordinate_matrix()
            .iter()
            .map(|p| vec![&p[0] * &p[0], &p[1] * &p[1], &p[2] * &p[2], &p[0] * &p[1], &p[0] * &p[2], &p[1] * &p[2]])
            .collect();
        let data = gale::gale_transform(&c).unwrap();
        if linalg::rank(&m) == 5 && relation_is_zero(&data) && gale::is_self_associated(&c).unwrap() {
            conics += 1;
        } else {
            return outcome(false, format!("conic configuration {} not self-associated", c.to_json()));
        }
    }
    let mut generic = 0;
    while generic < CONIC_CASES {
        let c = general_configuration(&mut rng, 3, 6);
        if gale::on_smooth_conic(&c).unwrap() {
            continue;
        }
        let data = gale::gale_transform(&c).unwrap();
        if !relation_is_zero(&data) || gale::is_self_associated(&c).unwrap() {
            return outcome(false, format!("generic configuration {} self-associated", c.to_json()));
        }
        generic += 1;
    }
    outcome(
        true,
        format!("involution on {GALE_CASES}, {conics} conics self-associated, {generic} generic not, relation exact"),
    )
}

fn segre_criterion() -> Outcome {
    let segre = segre_cubic();
    // every sign pattern with three +1 entries, up to overall sign
    let mut expected = BTreeSet::new();
    for mask in 0u32..64 {
        if mask.count_ones() == 3 {
            let v: Vec<Scalar> = (0..6).map(|i| if mask >> i & 1 == 1 { int(1) } else { int(-1) }).collect();
            expected.insert(AmbientPoint::new(&v).unwrap());
        }
    }
    let nodes = segre_nodes();
    let found: BTreeSet<AmbientPoint> = nodes.iter().map(|(_, p)| p.clone()).collect();
    if found != expected || nodes.len() != 10 {
        return outcome(false, format!("{} nodes found", nodes.len()));
    }
    for (split, p) in &nodes {
        let x = p.to_scalars();
        if !cubic(&x).is_zero() || !all_equal(&cubic_gradient(&x)) || node_hessian_rank(&segre, p) != 4 {
            return outcome(false, format!("node {} fails", split.label()));
        }
    }
    let labels: BTreeSet<_> = nodes.iter().map(|(s, _)| *s).collect();
    if labels != splits_3_3().into_iter().collect() {
        return outcome(false, "nodes not in bijection with the splits");
    }
    let extra = extra_singular_points(SEARCH_POINTS, SEED + 6);
    outcome(extra.is_empty(), format!("10 nodes of rank 4, {SEARCH_POINTS} search points, extra {}", extra.len()))
}

fn igusa_criterion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let lines = igusa_lines();
    if lines.len() != 15 {
        return outcome(false, format!("{} lines", lines.len()));
    }
    for line in &lines {
        for _ in 0..8 {
            let (t, u) = (int(rng.gen_range(-20..=20)), int(rng.gen_range(-20..=20)));
            let x = line.point_at(&t, &u);
            if !quartic(&x).is_zero() || !all_equal(&quartic_gradient(&x)) {
                return outcome(false, format!("line {} not singular at ({t}, {u})", line.label()));
            }
        }
    }
    let points = igusa_points();
    for (pair, p) in &points {
        let x = p.to_scalars();
        // up to sign: -2 on the pair, 1 elsewhere
        let unit = x.iter().enumerate().find(|(i, _)| *i != pair.0 && *i != pair.1).map(|(_, v)| v.clone()).unwrap();
        let shape_ok = (0..6).all(|i| x[i] == if i == pair.0 || i == pair.1 { int(-2) * &unit } else { unit.clone() });
        if !shape_ok || !quartic(&x).is_zero() || !all_equal(&quartic_gradient(&x)) {
            return outcome(false, format!("point {p} not singular"));
        }
    }
    let membership: BTreeSet<(usize, usize)> = points
        .iter()
        .enumerate()
        .flat_map(|(i, (pair, _))| {
            lines.iter().enumerate().filter(|(_, l)| l.matching.contains(pair)).map(move |(j, _)| (i, j))
        })
        .collect();
    let inc = incidence_15_3();
    let passed = points.len() == 15
        && membership.len() == 45
        && geometric_incidence() == membership
        && inc.incidence == membership
        && inc.is_configuration(15, 3);
    outcome(passed, format!("15 lines, {} points, {} flags", points.len(), membership.len()))
}

fn duality_criterion() -> Outcome {
    let report = duality_check(DUALITY_SAMPLES, SEED + 8);
    if !report.all_hold() || report.samples != DUALITY_SAMPLES {
        return outcome(false, format!("{report:?}"));
    }
    let mut checked = 0;
    for x in sample_segre_points(4 * DUALITY_SAMPLES, SEED + 9) {
        let x = x.to_scalars();
        if on_some_plane(&x) {
            continue;
        }
        let y = project(cubic_gradient(&x));
        if !quartic(&y).is_zero() {
            return outcome(false, "quartic does not vanish on a polar image");
        }
        let z = project(quartic_gradient(&y));
        if !cubic(&z).is_zero() || linalg::rank(&[x.clone(), z]) != 1 {
            return outcome(false, "reverse polar image off the cubic");
        }
        checked += 1;
        if checked == DUALITY_SAMPLES {
            break;
        }
    }
    outcome(
        checked == DUALITY_SAMPLES,
        format!(
            "library report {}/{} both ways; closed forms {checked}/{DUALITY_SAMPLES}",
            report.reverse_holds, report.samples
        ),
    )
}

fn combinatorics() -> Outcome {
    // matchings as sets of pairs, from all orderings of six labels
    let mut by_brute_force = BTreeSet::new();
    let mut perm: Vec<usize> = (0..6).collect();
    permutations(&mut perm, 0, &mut |p| {
        let mut m: Vec<(usize, usize)> = p.chunks(2).map(|c| (c[0].min(c[1]), c[0].max(c[1]))).collect();
        m.sort_unstable();
        by_brute_force.insert(m);
    });
    let listed: BTreeSet<Vec<(usize, usize)>> = perfect_matchings().iter().map(|m| m.to_vec()).collect();
    let splits = (0u32..64).filter(|m| m.count_ones() == 3 && m & 1 == 1).count();
    let edges: Vec<(usize, usize)> = (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b))).collect();
    let degree_three = edges.iter().all(|e| listed.iter().filter(|m| m.contains(e)).count() == 3);
    let size_three = listed.iter().all(|m| m.len() == 3);
    let passed = by_brute_force.len() == 15
        && listed == by_brute_force
        && splits == 10
        && splits_3_3().len() == 10
        && degree_three
        && size_three;
    outcome(passed, format!("{} matchings, {splits} splits, degree 3: {degree_three}, size 3: {size_three}", listed.len()))
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

fn verify_all_binary() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_stab"))
        .args(["verify-all", "--samples", VERIFY_ALL_SAMPLES, "--seed", VERIFY_ALL_SEED])
        .output()
        .expect("binary runs");
    let report: serde_json::Value = match serde_json::from_slice(&out.stdout) {
        Ok(v) => v,
        Err(e) => return outcome(false, format!("unparseable output: {e}")),
    };
    let failed: Vec<String> = report["checks"]
        .as_array()
        .map(|cs| cs.iter().filter(|c| c["passed"] != true).map(|c| c["id"].to_string()).collect())
        .unwrap_or_default();
    outcome(
        out.status.code() == Some(0),
        format!("exit {:?}, failing checks {failed:?}", out.status.code()),
    )
}

fn main() {
    type Criterion = (u8, &'static str, Duration, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        (1, "GIT classifier agrees with exhaustive oracle", Duration::from_secs(10), oracle_equivalence),
        (2, "GIT and alpha-stability dictionary", Duration::from_secs(10), dictionary),
        (3, "destabilizing example", Duration::from_secs(1), destabilizing_example),
        (4, "stabilization threshold bounds", Duration::from_secs(1), thresholds),
        (5, "Gale transform", Duration::from_secs(5), gale_criterion),
        (6, "Segre cubic nodes", Duration::from_secs(30), segre_criterion),
        (7, "Igusa quartic singular locus and incidence", Duration::from_secs(5), igusa_criterion),
        (8, "polar duality", Duration::from_secs(10), duality_criterion),
        (9, "matching and split combinatorics", Duration::from_secs(1), combinatorics),
        (10, "verify-all end to end", Duration::from_secs(60), verify_all_binary),
    ];
    let mut failures = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let passed = result.passed && elapsed < limit;
        if !passed {
            failures += 1;
        }
        println!(
            "[{}] {id:>2} {name} ({} ms, limit {} ms): {}",
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_millis(),
            limit.as_millis(),
            result.detail
        );
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
