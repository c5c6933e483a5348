//! Exhaustive enumeration of triangulations by traversing the flip graph.
//!
//! Every triangulation is reached from the seed by edge flips, so a
//! breadth-first (or depth-first) walk with deduplication on the canonical
//! edge set visits each one exactly once. Expansion of a BFS level may run on
//! the rayon pool; candidates are merged in a fixed order so the result is
//! identical to the sequential walk.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::geom::{AugmentedPointSet, GeomError};
use crate::number::{BigCount, Fraction, Rational};
use crate::triangulation::{EdgeSet, Fingerprint, Triangulable, Triangulation};

#[derive(Debug, Error, Clone)]
pub enum EnumerateError {
    #[error("enumeration stopped after {} triangulations (cap reached)", .0.count)]
    CapExceeded(Box<EnumerationResult>),
    #[error("delta must satisfy 0 < delta <= 1")]
    InvalidDelta,
    #[error("needs at least one base point")]
    NoBasePoints,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Traversal {
    #[default]
    BreadthFirst,
    DepthFirst,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct EnumerationStats {
    #[serde(skip)]
    pub elapsed: Duration,
    pub frontier_peak: usize,
}

#[derive(Clone, Debug)]
pub struct EnumerationResult {
    /// Number of points whose degrees are tallied.
    pub n: usize,
    pub count: BigCount,
    /// `Σ_T v_i(T)` per degree `i`.
    pub degree_totals: BTreeMap<usize, BigCount>,
    pub fingerprints: Option<Vec<Fingerprint>>,
    pub exhaustive: bool,
    pub stats: EnumerationStats,
}

impl EnumerationResult {
    /// Exact expected number of degree-`i` points of a uniformly random
    /// triangulation.
    pub fn vhat(&self, i: usize) -> Rational {
        let total = self.degree_totals.get(&i).cloned().unwrap_or_default();
        Rational::new(BigInt::from(total), BigInt::from(self.count.clone()))
    }

    pub fn to_json(&self) -> EnumerationJson {
        EnumerationJson {
            n: self.n,
            count: self.count.to_string(),
            degree_totals: self.degree_totals.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
            vhat3: Fraction::from(&self.vhat(3)),
            exhaustive: self.exhaustive,
            fingerprints: self.fingerprints.as_ref().map(|fps| fps.iter().map(|f| f.to_string()).collect()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationJson {
    pub n: usize,
    pub count: String,
    pub degree_totals: BTreeMap<String, String>,
    pub vhat3: Fraction,
    pub exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fingerprints: Option<Vec<String>>,
}

/// Configurable flip-graph walk.
#[derive(Clone, Debug, Default)]
pub struct Enumerator {
    pub cap: Option<u64>,
    pub traversal: Traversal,
    pub parallel: bool,
    pub keep_fingerprints: bool,
}

impl Enumerator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cap(mut self, cap: Option<u64>) -> Self {
        self.cap = cap;
        self
    }

    pub fn traversal(mut self, t: Traversal) -> Self {
        self.traversal = t;
        self
    }

    pub fn parallel(mut self, on: bool) -> Self {
        self.parallel = on;
        self
    }

    pub fn keep_fingerprints(mut self, on: bool) -> Self {
        self.keep_fingerprints = on;
        self
    }

    /// Calls `visit` once per triangulation, in discovery order. The flag is
    /// `true` if the walk was exhaustive, `false` if it hit the cap.
    pub fn walk<P, F>(&self, input: &P, mut visit: F) -> (bool, EnumerationStats)
    where
        P: Triangulable + ?Sized,
        F: FnMut(&Triangulation),
    {
        let start = Instant::now();
        let seed = input.initial_triangulation();
        let cap = self.cap.unwrap_or(u64::MAX);
        let mut seen: HashSet<EdgeSet> = HashSet::new();
        seen.insert(seed.edge_set().clone());
        let mut visited: u64 = 0;
        let mut peak = 1usize;

        let exhaustive = match (self.traversal, self.parallel) {
            (Traversal::BreadthFirst, true) => {
                let mut level = vec![seed];
                loop {
                    if level.is_empty() {
                        break true;
                    }
                    peak = peak.max(level.len());
                    if visited + level.len() as u64 > cap {
                        for t in level.iter().take((cap - visited) as usize) {
                            visit(t);
                        }
                        break false;
                    }
                    for t in &level {
                        visit(t);
                    }
                    visited += level.len() as u64;
                    let candidates: Vec<Vec<Triangulation>> = level.par_iter().map(neighbours).collect();
                    let mut next = Vec::new();
                    for t in candidates.into_iter().flatten() {
                        if seen.insert(t.edge_set().clone()) {
                            next.push(t);
                        }
                    }
                    level = next;
                }
            }
            _ => {
                let mut frontier = VecDeque::from([seed]);
                loop {
                    let next = match self.traversal {
                        Traversal::BreadthFirst => frontier.pop_front(),
                        Traversal::DepthFirst => frontier.pop_back(),
                    };
                    let Some(t) = next else { break true };
                    if visited == cap {
                        break false;
                    }
                    visit(&t);
                    visited += 1;
                    for nb in neighbours(&t) {
                        if seen.insert(nb.edge_set().clone()) {
                            frontier.push_back(nb);
                        }
                    }
                    peak = peak.max(frontier.len());
                }
            }
        };
        (exhaustive, EnumerationStats { elapsed: start.elapsed(), frontier_peak: peak })
    }

    /// Runs the walk and tallies counts and degree totals.
    pub fn run<P: Triangulable + ?Sized>(&self, input: &P) -> Result<EnumerationResult, EnumerateError> {
        let mut tally = Tally::new(input.counted_points(), self.keep_fingerprints);
        let (exhaustive, stats) = self.walk(input, |t| tally.add(t));
        tally.finish(exhaustive, stats)
    }

    /// Materialises every triangulation.
    pub fn collect<P: Triangulable + ?Sized>(&self, input: &P) -> Result<Vec<Triangulation>, EnumerateError> {
        let mut all = Vec::new();
        let mut tally = Tally::new(input.counted_points(), self.keep_fingerprints);
        let (exhaustive, stats) = self.walk(input, |t| {
            tally.add(t);
            all.push(t.clone());
        });
        tally.finish(exhaustive, stats).map(|_| all)
    }
}

struct Tally {
    n: usize,
    count: u64,
    totals: BTreeMap<usize, u64>,
    fingerprints: Option<Vec<Fingerprint>>,
}

impl Tally {
    fn new(n: usize, keep_fingerprints: bool) -> Self {
        Tally { n, count: 0, totals: BTreeMap::new(), fingerprints: keep_fingerprints.then(Vec::new) }
    }

    fn add(&mut self, t: &Triangulation) {
        self.count += 1;
        for &d in &t.degrees()[..self.n] {
            *self.totals.entry(d).or_insert(0) += 1;
        }
        if let Some(f) = self.fingerprints.as_mut() {
            f.push(t.fingerprint());
        }
    }

    fn finish(self, exhaustive: bool, stats: EnumerationStats) -> Result<EnumerationResult, EnumerateError> {
        let result = EnumerationResult {
            n: self.n,
            count: BigCount::from(self.count),
            degree_totals: self.totals.into_iter().map(|(k, v)| (k, BigCount::from(v))).collect(),
            fingerprints: self.fingerprints,
            exhaustive,
            stats,
        };
        if exhaustive {
            Ok(result)
        } else {
            Err(EnumerateError::CapExceeded(Box::new(result)))
        }
    }
}

fn neighbours(t: &Triangulation) -> Vec<Triangulation> {
    t.flippable_edges().into_iter().map(|e| t.flip(e).expect("flippable edge flips")).collect()
}

/// All triangulations of `input`, counted exactly.
pub fn enumerate_all<P: Triangulable + ?Sized>(
    input: &P,
    cap: Option<u64>,
) -> Result<EnumerationResult, EnumerateError> {
    Enumerator::new().cap(cap).run(input)
}

pub fn collect_triangulations<P: Triangulable + ?Sized>(
    input: &P,
    cap: Option<u64>,
) -> Result<Vec<Triangulation>, EnumerateError> {
    Enumerator::new().cap(cap).collect(input)
}

/// `v̂_i = Σ_T v_i(T) / tri(S)` as an exact rational.
pub fn vhat<P: Triangulable + ?Sized>(input: &P, i: usize) -> Result<Rational, EnumerateError> {
    Ok(enumerate_all(input, None)?.vhat(i))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct V3RecursionReport {
    /// `Σ_{T ∈ Tr(S⁺)} v₃(T)`.
    pub lhs: String,
    /// `Σ_{q ∈ S} tri(S⁺ \ {q})`.
    pub rhs: String,
    pub holds: bool,
}

/// Checks that every triangulation with a degree-3 point arises exactly
/// once per such point from a triangulation of the set with that point
/// removed.
pub fn check_v3_recursion(p: &AugmentedPointSet, cap: Option<u64>) -> Result<V3RecursionReport, EnumerateError> {
    if p.interior_count() == 0 {
        return Err(EnumerateError::NoBasePoints);
    }
    let full = enumerate_all(p, cap)?;
    let lhs = full.degree_totals.get(&3).cloned().unwrap_or_default();
    let mut rhs = BigCount::zero();
    for q in 0..p.interior_count() {
        rhs += enumerate_all(&p.without(q)?, cap)?.count;
    }
    Ok(V3RecursionReport { holds: lhs == rhs, lhs: lhs.to_string(), rhs: rhs.to_string() })
}

/// `⌈(1/δ)ⁿ⌉`: the triangulation-count bound implied by `v̂₃ ≥ δn`.
pub fn tri_upper_bound(n: u32, delta: &Rational) -> Result<BigCount, EnumerateError> {
    if *delta <= Rational::zero() || *delta > Rational::one() {
        return Err(EnumerateError::InvalidDelta);
    }
    let base = delta.recip();
    let mut acc = Rational::one();
    for _ in 0..n {
        acc *= &base;
    }
    Ok(acc.ceil().to_integer().to_biguint().expect("positive"))
}

/// One step of the counting recursion: `tri(S) ≤ (n / v̂₃)·tri(n - 1)`.
/// Reporting helper only.
pub fn recursion_step_bound(n: usize, vhat3: &Rational, tri_prev: &BigCount) -> Option<Rational> {
    if vhat3.is_zero() {
        return None;
    }
    let n = Rational::from_integer(BigInt::from(n));
    Some(n / vhat3 * Rational::from_integer(BigInt::from(tri_prev.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalan::catalan;
    use crate::geom::{augment, gen_convex, gen_convex_arc_in_triangle, gen_random, PointSet};
    use crate::number::rational;

    #[test]
    fn convex_small_counts() {
        assert_eq!(enumerate_all(&gen_convex(4).unwrap(), None).unwrap().count, BigCount::from(2u32));
        assert_eq!(enumerate_all(&gen_convex(5).unwrap(), None).unwrap().count, BigCount::from(5u32));
        assert_eq!(enumerate_all(&gen_convex(3).unwrap(), None).unwrap().count, BigCount::from(1u32));
    }

    #[test]
    fn degenerate_small_sets_have_one_triangulation() {
        for pts in [vec![(0, 0)], vec![(0, 0), (3, 1)]] {
            let s = PointSet::new(pts.into_iter().map(Into::into).collect()).unwrap();
            assert_eq!(enumerate_all(&s, None).unwrap().count, BigCount::from(1u32));
        }
    }

    #[test]
    fn cap_reports_partial() {
        let s = gen_convex(6).unwrap();
        match enumerate_all(&s, Some(1)) {
            Err(EnumerateError::CapExceeded(r)) => {
                assert!(!r.exhaustive);
                assert_eq!(r.count, BigCount::from(1u32));
            }
            other => panic!("expected cap, got {other:?}"),
        }
        assert!(enumerate_all(&s, Some(14)).is_ok());
        assert!(enumerate_all(&s, Some(13)).is_err());
    }

    #[test]
    fn capped_fingerprints_are_a_subset() {
        let aug = augment(&gen_random(5, 11).unwrap());
        let full: HashSet<_> =
            Enumerator::new().keep_fingerprints(true).run(&aug).unwrap().fingerprints.unwrap().into_iter().collect();
        for cap in [1, 7, 40] {
            let Err(EnumerateError::CapExceeded(r)) =
                Enumerator::new().keep_fingerprints(true).cap(Some(cap)).run(&aug)
            else {
                panic!("expected cap at {cap}")
            };
            let part = r.fingerprints.unwrap();
            assert_eq!(part.len() as u64, cap);
            assert!(part.iter().all(|f| full.contains(f)));
        }
    }

    #[test]
    fn traversal_order_does_not_matter() {
        for seed in 0..4 {
            let aug = augment(&gen_random(6, seed).unwrap());
            let bfs = Enumerator::new().run(&aug).unwrap();
            let dfs = Enumerator::new().traversal(Traversal::DepthFirst).run(&aug).unwrap();
            let par = Enumerator::new().parallel(true).keep_fingerprints(true).run(&aug).unwrap();
            let seq = Enumerator::new().keep_fingerprints(true).run(&aug).unwrap();
            assert_eq!(bfs.count, dfs.count);
            assert_eq!(bfs.degree_totals, dfs.degree_totals);
            assert_eq!(par.count, bfs.count);
            assert_eq!(par.fingerprints, seq.fingerprints);
        }
    }

    #[test]
    fn parallel_cap_matches_sequential_cap() {
        let s = gen_convex(8).unwrap();
        let Err(EnumerateError::CapExceeded(a)) =
            Enumerator::new().parallel(true).cap(Some(30)).keep_fingerprints(true).run(&s)
        else {
            panic!()
        };
        assert_eq!(a.count, BigCount::from(30u32));
    }

    #[test]
    fn degree_totals_sum_to_n_times_count() {
        let aug = augment(&gen_random(6, 5).unwrap());
        let r = enumerate_all(&aug, None).unwrap();
        let sum: BigCount = r.degree_totals.values().sum();
        assert_eq!(sum, r.count.clone() * BigCount::from(6u32));
        assert!(r.count >= BigCount::from(1u32));
    }

    #[test]
    fn arc_vhat3() {
        let arc = gen_convex_arc_in_triangle(5).unwrap();
        assert_eq!(vhat(&arc, 3).unwrap(), rational(5, 3));
        let one = gen_convex_arc_in_triangle(1).unwrap();
        assert_eq!(vhat(&one, 3).unwrap(), rational(1, 1));
        assert_eq!(enumerate_all(&gen_convex_arc_in_triangle(3).unwrap(), None).unwrap().count, catalan(3));
    }

    #[test]
    fn v3_recursion_examples() {
        let one = gen_convex_arc_in_triangle(1).unwrap();
        let r = check_v3_recursion(&one, None).unwrap();
        assert_eq!((r.lhs.as_str(), r.rhs.as_str()), ("1", "1"));
        let four = gen_convex_arc_in_triangle(4).unwrap();
        let r = check_v3_recursion(&four, None).unwrap();
        assert!(r.holds);
        assert_eq!(r.rhs, "20");
    }

    #[test]
    fn upper_bound_values() {
        assert_eq!(tri_upper_bound(3, &rational(1, 30)).unwrap(), BigCount::from(27000u32));
        assert_eq!(tri_upper_bound(0, &rational(1, 7)).unwrap(), BigCount::from(1u32));
        assert_eq!(tri_upper_bound(2, &rational(1, 59)).unwrap(), BigCount::from(3481u32));
        assert_eq!(tri_upper_bound(2, &rational(2, 3)).unwrap(), BigCount::from(3u32));
        assert!(tri_upper_bound(2, &rational(0, 1)).is_err());
        assert!(tri_upper_bound(2, &rational(3, 2)).is_err());
    }

    #[test]
    fn recursion_step_bound_matches_identity() {
        let arc = gen_convex_arc_in_triangle(4).unwrap();
        let r = enumerate_all(&arc, None).unwrap();
        let prev = catalan(3);
        let bound = recursion_step_bound(4, &r.vhat(3), &prev).unwrap();
        // equality here: every removal leaves the same count C₃
        assert_eq!(bound, Rational::from_integer(BigInt::from(14)));
    }

    #[test]
    fn json_report_shape() {
        let r = enumerate_all(&gen_convex_arc_in_triangle(2).unwrap(), None).unwrap();
        let v = serde_json::to_value(r.to_json()).unwrap();
        assert_eq!(v["count"], "2");
        assert_eq!(v["n"], 2);
        assert_eq!(v["exhaustive"], true);
        assert_eq!(v["vhat3"]["num"], "1");
        assert!(v.get("fingerprints").is_none());
    }
}
