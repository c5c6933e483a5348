//! Whole-instance audit: every 3-vint of every triangulation of `S⁺`.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fliptree::{build_flip_tree, convex_across, FlipTree, DEFAULT_SUBTREE_CAP};
use super::{charge, charge_ceiling, worst_known_charge, ChargingError, SupportCache};
use crate::catalan::catalan;
use crate::enumerate::Enumerator;
use crate::geom::AugmentedPointSet;
use crate::number::{decimal_round, mixed, BigCount, Fraction, Rational};
use crate::triangulation::{Fingerprint, Triangulation};

/// Samples of failing checks kept per report.
const MAX_SAMPLES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VintId {
    pub fingerprint: Fingerprint,
    pub point: usize,
}

#[derive(Clone, Debug)]
pub struct AuditOptions {
    pub enumeration_cap: Option<u64>,
    pub subtree_cap: u64,
    pub parallel: bool,
    pub check_rules: bool,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions { enumeration_cap: None, subtree_cap: DEFAULT_SUBTREE_CAP, parallel: true, check_rules: true }
    }
}

/// `Σ_T Σ_p (7 - deg p)` against the total charge received by 3-vints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conservation {
    pub emitted: BigInt,
    pub received: Rational,
}

impl Conservation {
    pub fn holds(&self) -> bool {
        self.received == Rational::from_integer(self.emitted.clone())
    }
}

/// Largest number of `degree`-vints charging a single 3-vint, against
/// `C_{degree-1} - C_{degree-2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargerCount {
    pub degree: usize,
    pub max_observed: u64,
    pub bound: BigCount,
}

impl ChargerCount {
    pub fn holds(&self) -> bool {
        BigCount::from(self.max_observed) <= self.bound
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RuleReport {
    pub trees: u64,
    /// Rigid level-1/2 core edges with two non-rigid children.
    pub rule1_checked: u64,
    pub rule1_violations: u64,
    /// (subtree, subtree minus one leaf) pairs compared.
    pub monotonicity_checked: u64,
    pub monotonicity_violations: u64,
    pub catalan_checked: u64,
    /// Holes that are convex and reach `C_{deg-2}`.
    pub catalan_equalities: u64,
    pub catalan_violations: u64,
    pub samples: Vec<String>,
}

impl RuleReport {
    pub fn holds(&self) -> bool {
        self.rule1_violations == 0 && self.monotonicity_violations == 0 && self.catalan_violations == 0
    }

    fn merge(&mut self, o: RuleReport) {
        self.trees += o.trees;
        self.rule1_checked += o.rule1_checked;
        self.rule1_violations += o.rule1_violations;
        self.monotonicity_checked += o.monotonicity_checked;
        self.monotonicity_violations += o.monotonicity_violations;
        self.catalan_checked += o.catalan_checked;
        self.catalan_equalities += o.catalan_equalities;
        self.catalan_violations += o.catalan_violations;
        for s in o.samples {
            if self.samples.len() < MAX_SAMPLES {
                self.samples.push(s);
            }
        }
    }

    fn note(&mut self, s: String) {
        if self.samples.len() < MAX_SAMPLES {
            self.samples.push(s);
        }
    }

    pub fn to_json(&self) -> RuleJson {
        RuleJson {
            holds: self.holds(),
            trees: self.trees,
            rule1_checked: self.rule1_checked,
            rule1_violations: self.rule1_violations,
            monotonicity_checked: self.monotonicity_checked,
            monotonicity_violations: self.monotonicity_violations,
            catalan_checked: self.catalan_checked,
            catalan_equalities: self.catalan_equalities,
            catalan_violations: self.catalan_violations,
            samples: self.samples.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct AuditReport {
    /// Number of base (non-frame) points.
    pub n: usize,
    pub triangulations: BigCount,
    pub three_vints: u64,
    pub max_charge: Option<Rational>,
    pub argmax: Option<VintId>,
    pub conservation: Conservation,
    pub charger_counts: Vec<ChargerCount>,
    pub vhat3: Rational,
    /// 3-vints charged more than `28 17/28`; noteworthy, not a failure.
    pub above_worst_known: Vec<(VintId, Rational)>,
    pub rules: Option<RuleReport>,
}

impl AuditReport {
    pub fn max_below_ceiling(&self) -> bool {
        self.max_charge.as_ref().is_none_or(|m| *m < charge_ceiling())
    }

    /// `30 · v̂₃ >= n`.
    pub fn vhat3_bound_holds(&self) -> bool {
        &self.vhat3 * Rational::from_integer(BigInt::from(30)) >= Rational::from_integer(BigInt::from(self.n))
    }

    /// Human-readable descriptions of every failed check.
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        if !self.max_below_ceiling() {
            let m = self.max_charge.as_ref().expect("checked above");
            v.push(format!("max charge {} is not below 30", mixed(m)));
        }
        if !self.conservation.holds() {
            v.push(format!(
                "conservation: emitted {} but received {}",
                self.conservation.emitted,
                mixed(&self.conservation.received)
            ));
        }
        for c in &self.charger_counts {
            if !c.holds() {
                v.push(format!("{} {}-vints charge one 3-vint, bound {}", c.max_observed, c.degree, c.bound));
            }
        }
        if !self.vhat3_bound_holds() {
            v.push(format!("30 * vhat3 = 30 * {} < n = {}", mixed(&self.vhat3), self.n));
        }
        if let Some(r) = &self.rules {
            if !r.holds() {
                v.push(format!(
                    "structural rules: rule1 {}, monotonicity {}, catalan bound {}",
                    r.rule1_violations, r.monotonicity_violations, r.catalan_violations
                ));
            }
        }
        v
    }

    pub fn passed(&self) -> bool {
        self.violations().is_empty()
    }

    pub fn to_json(&self) -> AuditJson {
        AuditJson {
            n: self.n,
            triangulations: self.triangulations.to_string(),
            three_vints: self.three_vints,
            max_charge: self.max_charge.as_ref().map(Fraction::from),
            max_charge_mixed: self.max_charge.as_ref().map(mixed),
            max_charge_decimal: self.max_charge.as_ref().map(|m| decimal_round(m, 6)),
            argmax: self.argmax.map(|id| VintJson { fingerprint: id.fingerprint.to_string(), point: id.point }),
            max_below_30: self.max_below_ceiling(),
            conservation: ConservationJson {
                emitted: self.conservation.emitted.to_string(),
                received: Fraction::from(&self.conservation.received),
                holds: self.conservation.holds(),
            },
            charger_counts: self
                .charger_counts
                .iter()
                .map(|c| ChargerCountJson {
                    degree: c.degree,
                    max_observed: c.max_observed,
                    bound: c.bound.to_string(),
                    holds: c.holds(),
                })
                .collect(),
            vhat3: Fraction::from(&self.vhat3),
            vhat3_times_30_ge_n: self.vhat3_bound_holds(),
            above_28_17_28: self
                .above_worst_known
                .iter()
                .map(|(id, c)| FlaggedJson {
                    fingerprint: id.fingerprint.to_string(),
                    point: id.point,
                    charge: Fraction::from(c),
                })
                .collect(),
            rules: self.rules.as_ref().map(RuleReport::to_json),
            violations: self.violations(),
            passed: self.passed(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AuditJson {
    pub n: usize,
    pub triangulations: String,
    pub three_vints: u64,
    pub max_charge: Option<Fraction>,
    pub max_charge_mixed: Option<String>,
    pub max_charge_decimal: Option<String>,
    pub argmax: Option<VintJson>,
    pub max_below_30: bool,
    pub conservation: ConservationJson,
    pub charger_counts: Vec<ChargerCountJson>,
    pub vhat3: Fraction,
    pub vhat3_times_30_ge_n: bool,
    pub above_28_17_28: Vec<FlaggedJson>,
    pub rules: Option<RuleJson>,
    pub violations: Vec<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VintJson {
    pub fingerprint: String,
    pub point: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConservationJson {
    pub emitted: String,
    pub received: Fraction,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChargerCountJson {
    pub degree: usize,
    pub max_observed: u64,
    pub bound: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FlaggedJson {
    pub fingerprint: String,
    pub point: usize,
    pub charge: Fraction,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RuleJson {
    pub holds: bool,
    pub trees: u64,
    pub rule1_checked: u64,
    pub rule1_violations: u64,
    pub monotonicity_checked: u64,
    pub monotonicity_violations: u64,
    pub catalan_checked: u64,
    pub catalan_equalities: u64,
    pub catalan_violations: u64,
    pub samples: Vec<String>,
}

/// Result of one triangulation.
struct TriangulationAudit {
    emitted: i64,
    v3: u64,
    charges: Vec<(VintId, Rational, Vec<u64>)>,
    rules: RuleReport,
}

fn audit_triangulation(
    t: &Triangulation,
    cache: &mut SupportCache,
    opts: &AuditOptions,
) -> Result<TriangulationAudit, ChargingError> {
    let n = t.base_len();
    let degrees = t.degrees();
    let emitted: i64 = degrees[..n].iter().map(|&d| 7 - d as i64).sum();
    let mut out = TriangulationAudit { emitted, v3: 0, charges: Vec::new(), rules: RuleReport::default() };
    for (p, &d) in degrees[..n].iter().enumerate() {
        if d != 3 {
            continue;
        }
        out.v3 += 1;
        let tree = build_flip_tree(t, p)?;
        let report = charge(&tree, cache, opts.subtree_cap)?;
        if opts.check_rules {
            check_tree_rules(&tree, &report, cache, &mut out.rules)?;
        }
        out.charges.push((report.target, report.total.clone(), report.chargers_by_degree()));
    }
    Ok(out)
}

/// Rule 1 on the rigid core, support monotonicity along single down-flips
/// inside the tree, and `supp <= C_{deg-2}` with equality iff convex.
fn check_tree_rules(
    tree: &FlipTree,
    report: &super::ChargeReport,
    cache: &mut SupportCache,
    rules: &mut RuleReport,
) -> Result<(), ChargingError> {
    rules.trees += 1;
    let pts = tree.triangulation().points();
    let id = report.target;
    let in_core = |mut x: usize| {
        while x != 0 {
            if !tree.node(x).rigid {
                return false;
            }
            x = tree.node(x).parent.expect("non-root node has a parent");
        }
        true
    };
    for (d, node) in tree.nodes().iter().enumerate().skip(1) {
        if !(node.level == 1 || node.level == 2) || !in_core(d) || node.children.len() != 2 {
            continue;
        }
        let (e, f) = (node.children[0], node.children[1]);
        if tree.node(e).rigid || tree.node(f).rigid {
            continue;
        }
        rules.rule1_checked += 1;
        let (u, w) = node.parent_edge.expect("non-root node has a parent edge");
        let parent = tree.node(node.parent.expect("non-root node has a parent"));
        let z = *parent.triangle.iter().find(|&&x| x != u && x != w).expect("triangle has a third vertex");
        let oe = tree.node(e).apex.expect("apex");
        let of = tree.node(f).apex.expect("apex");
        if convex_across(pts, z, u, w, oe) && convex_across(pts, z, u, w, of) {
            rules.rule1_violations += 1;
            rules.note(format!("rule 1: {}/{} edge {}-{} unlocked by both children", id.fingerprint, id.point, u, w));
        }
    }

    let mut supports: HashMap<&[usize], &BigCount> = HashMap::with_capacity(report.contributions.len());
    for c in &report.contributions {
        supports.insert(&c.nodes, &c.support);
    }
    for c in &report.contributions {
        let info = cache.hole(pts, &c.hole, tree.point())?;
        rules.catalan_checked += 1;
        let bound = catalan(c.degree() as u32 - 2);
        let at_bound = c.support == bound;
        if c.support > bound || at_bound != info.convex {
            rules.catalan_violations += 1;
            rules.note(format!(
                "catalan bound: {}/{} degree {} support {} convex {}",
                id.fingerprint,
                id.point,
                c.degree(),
                c.support,
                info.convex
            ));
        }
        if at_bound {
            rules.catalan_equalities += 1;
        }
        for (i, &leaf) in c.nodes.iter().enumerate() {
            if tree.node(leaf).children.iter().any(|ch| c.nodes.binary_search(ch).is_ok()) {
                continue;
            }
            let mut smaller = c.nodes.clone();
            smaller.remove(i);
            let s = supports.get(smaller.as_slice()).expect("subtrees are closed under leaf removal");
            rules.monotonicity_checked += 1;
            if c.support < **s {
                rules.monotonicity_violations += 1;
                rules.note(format!(
                    "monotonicity: {}/{} support {} below {} after one down-flip",
                    id.fingerprint, id.point, c.support, s
                ));
            }
        }
    }
    Ok(())
}

fn run(p: &AugmentedPointSet, opts: &AuditOptions) -> Result<AuditReport, ChargingError> {
    let triangulations = Enumerator::new().cap(opts.enumeration_cap).parallel(opts.parallel).collect(p)?;
    let per: Vec<Result<TriangulationAudit, ChargingError>> = if opts.parallel {
        triangulations.par_iter().map_init(SupportCache::new, |cache, t| audit_triangulation(t, cache, opts)).collect()
    } else {
        let mut cache = SupportCache::new();
        triangulations.iter().map(|t| audit_triangulation(t, &mut cache, opts)).collect()
    };

    let mut emitted = BigInt::from(0);
    let mut received = Rational::from_integer(BigInt::from(0));
    let mut v3_total = BigInt::from(0);
    let mut three_vints = 0u64;
    let mut best: Option<(Rational, VintId)> = None;
    let mut chargers: Vec<u64> = Vec::new();
    let mut above = Vec::new();
    let mut rules = RuleReport::default();
    let worst = worst_known_charge();
    for r in per {
        let r = r?;
        emitted += r.emitted;
        v3_total += r.v3;
        rules.merge(r.rules);
        for (id, total, by_degree) in r.charges {
            three_vints += 1;
            received += &total;
            if by_degree.len() > chargers.len() {
                chargers.resize(by_degree.len(), 0);
            }
            for (d, &k) in by_degree.iter().enumerate() {
                chargers[d] = chargers[d].max(k);
            }
            if total > worst {
                above.push((id, total.clone()));
            }
            let better = match &best {
                None => true,
                Some((m, bid)) => total > *m || (total == *m && id < *bid),
            };
            if better {
                best = Some((total, id));
            }
        }
    }
    above.sort();
    let count = BigCount::from(triangulations.len());
    let charger_counts = chargers
        .iter()
        .enumerate()
        .skip(3)
        .map(|(d, &k)| ChargerCount {
            degree: d,
            max_observed: k,
            bound: catalan(d as u32 - 1) - catalan(d as u32 - 2),
        })
        .collect();
    Ok(AuditReport {
        n: p.interior_count(),
        vhat3: Rational::new(v3_total, BigInt::from(count.clone())),
        triangulations: count,
        three_vints,
        max_charge: best.as_ref().map(|(m, _)| m.clone()),
        argmax: best.map(|(_, id)| id),
        conservation: Conservation { emitted, received },
        charger_counts,
        above_worst_known: above,
        rules: opts.check_rules.then_some(rules),
    })
}

/// Charges every 3-vint of every triangulation of `p` and checks
/// conservation, the charger-count bounds, `30·v̂₃ >= n` and the charge
/// ceiling.
pub fn audit(p: &AugmentedPointSet, opts: &AuditOptions) -> Result<AuditReport, ChargingError> {
    run(p, opts)
}

/// The structural properties alone, over every flip-tree of `p`.
pub fn check_structural_rules(p: &AugmentedPointSet, opts: &AuditOptions) -> Result<RuleReport, ChargingError> {
    let opts = AuditOptions { check_rules: true, ..opts.clone() };
    Ok(run(p, &opts)?.rules.unwrap_or_default())
}
