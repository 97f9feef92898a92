//! Pairs, perfect matchings and 3+3 splits of six labels, and the `15_3`
//! incidence they carry on the Igusa quartic.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::Zero;
use serde::Serialize;

use super::models::{igusa_quartic, verify_singular_point, AmbientPoint};
use super::COORDS;
use crate::linalg;
use crate::scalar::{int, Scalar};

/// An unordered pair `{i, j}` of labels `0..6`, `i < j`.
pub type Pair = (usize, usize);

/// A perfect matching of `0..6`, pairs sorted.
pub type Matching = [Pair; 3];

/// An unordered split into two triples; the first triple contains label 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Split {
    pub first: [usize; 3],
    pub second: [usize; 3],
}

impl Split {
    /// Normalizes the two triples so that `Split::new(a, b) == Split::new(b, a)`.
    pub fn new(a: [usize; 3], b: [usize; 3]) -> Self {
        let (mut a, mut b) = (a, b);
        a.sort_unstable();
        b.sort_unstable();
        if a[0] < b[0] {
            Self { first: a, second: b }
        } else {
            Self { first: b, second: a }
        }
    }

    /// `+1` on the first triple, `-1` on the second.
    pub fn node(&self) -> AmbientPoint {
        let mut c = vec![int(-1); COORDS];
        for &i in &self.first {
            c[i] = int(1);
        }
        AmbientPoint::new(&c).expect("split vector sums to zero")
    }

    pub fn label(&self) -> String {
        format!("{}|{}", digits(&self.first), digits(&self.second))
    }
}

fn digits(labels: &[usize]) -> String {
    labels.iter().map(|i| char::from(b'1' + *i as u8)).collect()
}

pub fn pair_label(p: Pair) -> String {
    digits(&[p.0, p.1])
}

pub fn matching_label(m: &Matching) -> String {
    m.iter().map(|&p| pair_label(p)).join("|")
}

/// The fifteen pairs in lexicographic order.
pub fn pairs() -> Vec<Pair> {
    (0..COORDS).tuple_combinations().collect()
}

/// All perfect matchings of `0..6`, in lexicographic order.
pub fn perfect_matchings() -> Vec<Matching> {
    fn extend(rest: &[usize], acc: &mut Vec<Pair>, out: &mut Vec<Matching>) {
        let Some((&first, tail)) = rest.split_first() else {
            out.push([acc[0], acc[1], acc[2]]);
            return;
        };
        for (idx, &partner) in tail.iter().enumerate() {
            let remaining: Vec<usize> =
                tail.iter().enumerate().filter(|(j, _)| *j != idx).map(|(_, &x)| x).collect();
            acc.push((first, partner));
            extend(&remaining, acc, out);
            acc.pop();
        }
    }
    let labels: Vec<usize> = (0..COORDS).collect();
    let mut out = Vec::new();
    extend(&labels, &mut Vec::new(), &mut out);
    out
}

/// The ten unordered splits into complementary triples.
pub fn splits_3_3() -> Vec<Split> {
    (1..COORDS)
        .tuple_combinations()
        .map(|(a, b)| {
            let first = [0, a, b];
            let rest: Vec<usize> = (0..COORDS).filter(|i| !first.contains(i)).collect();
            Split::new(first, [rest[0], rest[1], rest[2]])
        })
        .collect()
}

/// The line of the Igusa quartic where coordinates agree within each pair of
/// a matching: `t` on the first pair, `u` on the second, `-t-u` on the third.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IgusaLine {
    pub matching: Matching,
    pub basis: [Vec<Scalar>; 2],
}

impl IgusaLine {
    pub fn new(matching: Matching) -> Self {
        let vector = |own: Pair| {
            let mut v = vec![Scalar::zero(); COORDS];
            let last = matching[2];
            v[own.0] = int(1);
            v[own.1] = int(1);
            v[last.0] = int(-1);
            v[last.1] = int(-1);
            v
        };
        Self { matching, basis: [vector(matching[0]), vector(matching[1])] }
    }

    pub fn point_at(&self, t: &Scalar, u: &Scalar) -> Vec<Scalar> {
        self.basis[0].iter().zip(&self.basis[1]).map(|(a, b)| a * t + b * u).collect()
    }

    pub fn contains(&self, p: &AmbientPoint) -> bool {
        let rows = vec![self.basis[0].clone(), self.basis[1].clone(), p.to_scalars()];
        linalg::rank(&rows) == 2
    }

    pub fn label(&self) -> String {
        matching_label(&self.matching)
    }
}

/// Parameter values `(t, u)`, pairwise projectively distinct. A binary form
/// of degree at most four vanishing at five distinct points of `P^1` is zero.
pub(crate) fn line_parameters() -> [(Scalar, Scalar); 5] {
    [(int(1), int(0)), (int(0), int(1)), (int(1), int(1)), (int(1), int(2)), (int(2), int(-1))]
}

/// The fifteen matching lines, each checked to be singular on the Igusa model.
pub fn igusa_lines() -> Vec<IgusaLine> {
    let model = igusa_quartic().expect("Igusa model");
    perfect_matchings()
        .into_iter()
        .map(IgusaLine::new)
        .inspect(|line| {
            for (t, u) in line_parameters() {
                let p = AmbientPoint::new(&line.point_at(&t, &u)).expect("nonzero point on line");
                assert!(verify_singular_point(&model, &p), "line {} not singular", line.label());
            }
        })
        .collect()
}

/// The point with `-2` at both labels of the pair and `1` elsewhere.
pub fn pair_point(p: Pair) -> AmbientPoint {
    let mut c = vec![int(1); COORDS];
    c[p.0] = int(-2);
    c[p.1] = int(-2);
    AmbientPoint::new(&c).expect("pair vector sums to zero")
}

/// The fifteen distinguished singular points, one per pair.
pub fn igusa_points() -> Vec<(Pair, AmbientPoint)> {
    let model = igusa_quartic().expect("Igusa model");
    pairs()
        .into_iter()
        .map(|p| (p, pair_point(p)))
        .inspect(|(p, x)| assert!(verify_singular_point(&model, x), "pair {p:?} not singular"))
        .collect()
}

/// Points, lines and flags `(point index, line index)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncidenceStructure {
    pub points: Vec<String>,
    pub lines: Vec<String>,
    pub incidence: BTreeSet<(usize, usize)>,
}

impl IncidenceStructure {
    pub fn points_on_line(&self, line: usize) -> Vec<usize> {
        self.incidence.iter().filter(|f| f.1 == line).map(|f| f.0).collect()
    }

    pub fn lines_through_point(&self, point: usize) -> Vec<usize> {
        self.incidence.iter().filter(|f| f.0 == point).map(|f| f.1).collect()
    }

    /// `n_k` configuration test: `n` points, `n` lines, `k` on each.
    pub fn is_configuration(&self, n: usize, k: usize) -> bool {
        self.points.len() == n
            && self.lines.len() == n
            && (0..n).all(|l| self.points_on_line(l).len() == k)
            && (0..n).all(|p| self.lines_through_point(p).len() == k)
    }
}

/// Edges of the complete graph on six labels against perfect matchings,
/// incidence by membership.
pub fn incidence_15_3() -> IncidenceStructure {
    let ps = pairs();
    let ms = perfect_matchings();
    let incidence = ps
        .iter()
        .enumerate()
        .flat_map(|(i, p)| {
            ms.iter().enumerate().filter(move |(_, m)| m.contains(p)).map(move |(j, _)| (i, j))
        })
        .collect();
    IncidenceStructure {
        points: ps.into_iter().map(pair_label).collect(),
        lines: ms.iter().map(matching_label).collect(),
        incidence,
    }
}

/// Flags `(pair index, matching index)` where the pair point lies on the
/// matching line, decided by coordinates alone.
pub fn geometric_incidence() -> BTreeSet<(usize, usize)> {
    let lines = igusa_lines();
    let points = igusa_points();
    points
        .iter()
        .enumerate()
        .flat_map(|(i, (_, x))| {
            lines.iter().enumerate().filter(|(_, l)| l.contains(x)).map(move |(j, _)| (i, j))
        })
        .collect()
}
