//! Vints, holes, supports and the charging scheme.
//!
//! An `i`-vint `u` charges `(7 - i) / supp(u)` to every 3-vint it flips down
//! to. The vints flipping down to a 3-vint `v` are read off the flip-tree of
//! `v`: one per root-containing subtree, with `i = 3 + j` for a `j`-edge
//! subtree.

mod audit;
mod core;
mod fliptree;

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use self::audit::{
    audit, check_structural_rules, AuditJson, AuditOptions, AuditReport, ChargerCount, ChargerCountJson, Conservation,
    ConservationJson, FlaggedJson, RuleJson, RuleReport, VintId, VintJson,
};
pub use self::core::{
    contr_minus, contr_minus_bound, contr_plus, contr_plus_bound, contr_plus_census, random_core, rigid_core,
    CoreError, CoreStats, RigidCore, RootedTree,
};
pub use self::fliptree::{build_flip_tree, convex_across, FlipTree, FlipTreeError, FlipTreeNode, DEFAULT_SUBTREE_CAP};

use crate::enumerate::EnumerateError;
use crate::geom::Point;
use crate::number::{mixed, BigCount, Fraction, Rational};
use crate::polygon::{count_triangulations, PolygonError, SimplePolygon};
use crate::triangulation::{EdgeRef, Fingerprint, Triangulation};

#[derive(Debug, Error, Clone)]
pub enum ChargingError {
    #[error("point {0} is not an interior non-frame vertex")]
    NotInterior(usize),
    #[error(transparent)]
    FlipTree(#[from] FlipTreeError),
    #[error("hole polygon: {0}")]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
}

/// A (point, triangulation) pair with the point interior and not a frame
/// corner.
#[derive(Clone, Debug)]
pub struct Vint {
    point: usize,
    triangulation: Triangulation,
    degree: usize,
}

impl Vint {
    pub fn new(triangulation: Triangulation, point: usize) -> Result<Self, ChargingError> {
        let ok = point < triangulation.base_len() && triangulation.is_interior_point(point);
        if !ok {
            return Err(ChargingError::NotInterior(point));
        }
        let degree = triangulation.degree(point);
        Ok(Vint { point, triangulation, degree })
    }

    pub fn point(&self) -> usize {
        self.point
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.triangulation
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn fingerprint(&self) -> Fingerprint {
        self.triangulation.fingerprint()
    }

    pub fn id(&self) -> VintId {
        VintId { fingerprint: self.fingerprint(), point: self.point }
    }
}

/// The polygon left by deleting a vint's point and its edges, star-shaped
/// with respect to that point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarHole {
    pub polygon: SimplePolygon,
}

/// Polygon on the point labels `cycle` (CCW), with `p` as kernel witness.
fn labeled_polygon(points: &[Point], cycle: &[usize], p: usize) -> Result<SimplePolygon, PolygonError> {
    SimplePolygon::new(cycle.iter().map(|&l| points[l]).collect())?
        .with_labels(cycle.to_vec())?
        .with_kernel_witness(points[p])
}

pub fn hole_of(u: &Vint) -> Result<StarHole, ChargingError> {
    let t = &u.triangulation;
    let link = t.link(u.point).ok_or(ChargingError::NotInterior(u.point))?;
    Ok(StarHole { polygon: labeled_polygon(t.points(), &link, u.point)? })
}

pub fn support(u: &Vint) -> Result<BigCount, ChargingError> {
    Ok(count_triangulations(&hole_of(u)?.polygon))
}

/// Hole supports keyed by the label cycle rotated to start at its minimum.
/// Valid for one point set only.
#[derive(Debug, Default)]
pub struct SupportCache {
    map: HashMap<Vec<u32>, HoleInfo>,
}

#[derive(Clone, Debug)]
pub(crate) struct HoleInfo {
    pub support: BigCount,
    pub convex: bool,
}

impl SupportCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub(crate) fn hole(&mut self, points: &[Point], cycle: &[usize], p: usize) -> Result<HoleInfo, PolygonError> {
        let start = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap_or(0);
        let key: Vec<u32> = cycle[start..].iter().chain(&cycle[..start]).map(|&l| l as u32).collect();
        if let Some(h) = self.map.get(&key) {
            return Ok(h.clone());
        }
        let poly = labeled_polygon(points, cycle, p)?;
        let info = HoleInfo { support: count_triangulations(&poly), convex: poly.is_convex() };
        self.map.insert(key, info.clone());
        Ok(info)
    }

    pub fn support(&mut self, points: &[Point], cycle: &[usize], p: usize) -> Result<BigCount, PolygonError> {
        Ok(self.hole(points, cycle, p)?.support)
    }
}

/// Every vint flipping down to the 3-vint of `tree`, paired with its
/// subtree, in canonical subtree order.
pub fn enumerate_charging_vints(tree: &FlipTree, cap: u64) -> Result<Vec<(Vec<usize>, Vint)>, ChargingError> {
    tree.subtrees(cap)?
        .into_iter()
        .map(|s| {
            let u = Vint::new(tree.realize(&s), tree.point())?;
            Ok((s, u))
        })
        .collect()
}

/// One charging vint's share of a 3-vint's charge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contribution {
    /// Flip-tree nodes of the subtree (sorted).
    pub nodes: Vec<usize>,
    /// Triangulation edges dual to the subtree edges (sorted).
    pub dual_edges: Vec<EdgeRef>,
    /// Hole boundary of the charging vint, CCW.
    pub hole: Vec<usize>,
    pub support: BigCount,
    /// `(4 - j) / support` with `j = nodes.len()`.
    pub amount: Rational,
}

impl Contribution {
    pub fn edges(&self) -> usize {
        self.nodes.len()
    }

    pub fn degree(&self) -> usize {
        self.nodes.len() + 3
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeReport {
    pub target: VintId,
    pub contributions: Vec<Contribution>,
    pub total: Rational,
}

impl ChargeReport {
    /// Number of charging vints of each degree, indexed by degree.
    pub fn chargers_by_degree(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for c in &self.contributions {
            let d = c.degree();
            if out.len() <= d {
                out.resize(d + 1, 0);
            }
            out[d] += 1;
        }
        out
    }

    pub fn to_json(&self) -> ChargeJson {
        ChargeJson {
            fingerprint: self.target.fingerprint.to_string(),
            point: self.target.point,
            total: Fraction::from(&self.total),
            total_mixed: mixed(&self.total),
            contributions: self
                .contributions
                .iter()
                .map(|c| ContributionJson {
                    edges: c.edges(),
                    degree: c.degree(),
                    dual_edges: c.dual_edges.iter().map(|e| e.endpoints().into()).collect(),
                    support: c.support.to_string(),
                    amount: Fraction::from(&c.amount),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeJson {
    pub fingerprint: String,
    pub point: usize,
    pub total: Fraction,
    pub total_mixed: String,
    pub contributions: Vec<ContributionJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContributionJson {
    pub edges: usize,
    pub degree: usize,
    pub dual_edges: Vec<[usize; 2]>,
    pub support: String,
    pub amount: Fraction,
}

/// Exact charge received by the 3-vint of `tree`.
pub fn charge(tree: &FlipTree, cache: &mut SupportCache, cap: u64) -> Result<ChargeReport, ChargingError> {
    let pts = tree.triangulation().points();
    let mut contributions = Vec::new();
    let mut total = Rational::from_integer(BigInt::from(0));
    for nodes in tree.subtrees(cap)? {
        let hole = tree.subtree_polygon(&nodes);
        let support = cache.support(pts, &hole, tree.point())?;
        let j = nodes.len() as i64;
        let amount = Rational::new(BigInt::from(4 - j), BigInt::from(support.clone()));
        total += &amount;
        let mut dual_edges: Vec<EdgeRef> = nodes.iter().filter_map(|&n| tree.node(n).dual_edge()).collect();
        dual_edges.sort_unstable();
        contributions.push(Contribution { nodes, dual_edges, hole, support, amount });
    }
    Ok(ChargeReport { target: VintId { fingerprint: tree.fingerprint(), point: tree.point() }, contributions, total })
}

/// `28 17/28`, the largest single-tree charge known to be attainable.
pub fn worst_known_charge() -> Rational {
    Rational::new(BigInt::from(28 * 28 + 17), BigInt::from(28))
}

/// Every 3-vint must receive strictly less than this.
pub fn charge_ceiling() -> Rational {
    Rational::from_integer(BigInt::from(30))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::collect_triangulations;
    use crate::geom::{augment, gen_convex_arc_in_triangle, PointSet};
    use crate::number::rational;
    use crate::triangulation::initial_triangulation;

    #[test]
    fn isolated_three_vint_charges_four() {
        let aug = augment(&PointSet::new(vec![Point::new(0, 0)]).unwrap());
        let t = initial_triangulation(&aug);
        let tree = build_flip_tree(&t, 0).unwrap();
        let r = charge(&tree, &mut SupportCache::new(), DEFAULT_SUBTREE_CAP).unwrap();
        assert_eq!(r.total, rational(4, 1));
        assert_eq!(r.contributions.len(), 1);
        assert_eq!(r.contributions[0].support, BigCount::from(1u8));
        let u = Vint::new(t, 0).unwrap();
        assert_eq!(support(&u).unwrap(), BigCount::from(1u8));
        assert_eq!(hole_of(&u).unwrap().polygon.len(), 3);
    }

    #[test]
    fn frame_corner_is_not_a_vint() {
        let aug = augment(&PointSet::new(vec![Point::new(0, 0)]).unwrap());
        let t = initial_triangulation(&aug);
        assert!(matches!(Vint::new(t, 1), Err(ChargingError::NotInterior(1))));
    }

    #[test]
    fn charges_on_arc() {
        let aug = gen_convex_arc_in_triangle(4).unwrap();
        let mut cache = SupportCache::new();
        for t in collect_triangulations(&aug, None).unwrap() {
            for p in 0..aug.interior_count() {
                let Ok(tree) = build_flip_tree(&t, p) else { continue };
                let r = charge(&tree, &mut cache, DEFAULT_SUBTREE_CAP).unwrap();
                assert_eq!(r.contributions[0].amount, rational(4, 1));
                assert!(r.total < charge_ceiling());
                let sum: Rational = r.contributions.iter().map(|c| c.amount.clone()).sum();
                assert_eq!(sum, r.total);
                for (s, u) in enumerate_charging_vints(&tree, DEFAULT_SUBTREE_CAP).unwrap() {
                    let c = r.contributions.iter().find(|c| c.nodes == s).unwrap();
                    assert_eq!(support(&u).unwrap(), c.support);
                    assert_eq!(u.degree(), c.degree());
                }
            }
        }
        assert!(!cache.is_empty());
    }

    #[test]
    fn worst_known_renders() {
        assert_eq!(mixed(&worst_known_charge()), "28 17/28");
    }
}
