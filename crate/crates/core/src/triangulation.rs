//! Triangle-soup-with-adjacency triangulations, edge flips and canonical
//! fingerprints.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{convex_hull, left_of, strictly_inside_triangle, AugmentedPointSet, Point, PointSet};

const NONE: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangulationError {
    #[error("edge {0} is not in the triangulation")]
    UnknownEdge(EdgeRef),
    #[error("edge {0} is not flippable")]
    NotFlippable(EdgeRef),
    #[error("degree vectors need a point set with a bounding frame")]
    NotAugmented,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("invalid triangulation: {0}")]
    Invalid(String),
}

/// Undirected edge, stored with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeRef {
    a: usize,
    b: usize,
}

impl EdgeRef {
    pub fn new(i: usize, j: usize) -> Self {
        EdgeRef { a: i.min(j), b: i.max(j) }
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn contains(self, v: usize) -> bool {
        self.a == v || self.b == v
    }

    pub fn other(self, v: usize) -> Option<usize> {
        if self.a == v {
            Some(self.b)
        } else if self.b == v {
            Some(self.a)
        } else {
            None
        }
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// 64-bit FNV-1a over the sorted edge list, each endpoint as a little-endian
/// `u32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint(pub u64);

impl Fingerprint {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;

    pub fn of_edges(edges: &[(u32, u32)]) -> Self {
        let mut h = Self::OFFSET;
        for &(a, b) in edges {
            for byte in a.to_le_bytes().into_iter().chain(b.to_le_bytes()) {
                h ^= byte as u64;
                h = h.wrapping_mul(Self::PRIME);
            }
        }
        Fingerprint(h)
    }

    pub fn parse(s: &str) -> Option<Self> {
        u64::from_str_radix(s.trim().trim_start_matches("0x"), 16).ok().map(Fingerprint)
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

/// Canonical sorted edge list. Hashes by fingerprint, compares the full list,
/// so a fingerprint collision can never merge two triangulations.
#[derive(Clone, Debug)]
pub struct EdgeSet {
    edges: Arc<[(u32, u32)]>,
    fingerprint: Fingerprint,
}

impl EdgeSet {
    pub fn from_sorted(edges: Vec<(u32, u32)>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let fingerprint = Fingerprint::of_edges(&edges);
        EdgeSet { edges: Arc::from(edges), fingerprint }
    }

    pub fn from_edges<I: IntoIterator<Item = EdgeRef>>(edges: I) -> Self {
        let mut v: Vec<(u32, u32)> = edges.into_iter().map(|e| (e.a as u32, e.b as u32)).collect();
        v.sort_unstable();
        v.dedup();
        Self::from_sorted(v)
    }

    pub fn fingerprint(&self) -> Fingerprint {
        self.fingerprint
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeRef) -> bool {
        self.edges.binary_search(&(e.a as u32, e.b as u32)).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeRef> + '_ {
        self.edges.iter().map(|&(a, b)| EdgeRef { a: a as usize, b: b as usize })
    }

    pub fn raw(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// `self - remove + add`, kept sorted.
    pub fn replaced(&self, remove: EdgeRef, add: EdgeRef) -> Self {
        let mut v = self.edges.to_vec();
        if let Ok(i) = v.binary_search(&(remove.a as u32, remove.b as u32)) {
            v.remove(i);
        }
        let key = (add.a as u32, add.b as u32);
        if let Err(i) = v.binary_search(&key) {
            v.insert(i, key);
        }
        Self::from_sorted(v)
    }
}

impl PartialEq for EdgeSet {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint && self.edges == other.edges
    }
}

impl Eq for EdgeSet {}

impl Hash for EdgeSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.fingerprint.hash(state);
    }
}

#[derive(Debug)]
struct Carrier {
    points: Arc<[Point]>,
    /// Points `0..base_len` are the vint-eligible (non-frame) points.
    base_len: usize,
    augmented: bool,
    on_hull: Vec<bool>,
}

/// Per-degree counts over base points plus the frame-corner degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeVector {
    pub counts: BTreeMap<usize, usize>,
    pub frame_degrees: [usize; 3],
}

impl DegreeVector {
    pub fn v(&self, i: usize) -> usize {
        self.counts.get(&i).copied().unwrap_or(0)
    }

    pub fn interior_count(&self) -> usize {
        self.counts.values().sum()
    }

    /// `Σ i·v_i`.
    pub fn weighted_sum(&self) -> usize {
        self.counts.iter().map(|(i, v)| i * v).sum()
    }

    /// `d₁ + d₂ + d₃ + Σ i·v_i`, which equals `6n + 6` for every
    /// triangulation of `S⁺`.
    pub fn degree_sum(&self) -> usize {
        self.frame_degrees.iter().sum::<usize>() + self.weighted_sum()
    }

    /// `Σ (7 - i)·v_i`, the total charge emitted by the base points.
    pub fn emitted_charge(&self) -> i64 {
        self.counts.iter().map(|(&i, &v)| (7 - i as i64) * v as i64).sum()
    }
}

/// Any source a triangulation can be seeded from.
pub trait Triangulable {
    fn initial_triangulation(&self) -> Triangulation;
    /// Points whose degrees are tallied (all points for a plain set, the base
    /// points for `S⁺`).
    fn counted_points(&self) -> usize;
}

impl Triangulable for PointSet {
    fn initial_triangulation(&self) -> Triangulation {
        Triangulation::incremental(self.shared(), self.len(), false)
    }

    fn counted_points(&self) -> usize {
        self.len()
    }
}

impl Triangulable for AugmentedPointSet {
    fn initial_triangulation(&self) -> Triangulation {
        Triangulation::incremental(self.shared(), self.interior_count(), true)
    }

    fn counted_points(&self) -> usize {
        self.interior_count()
    }
}

/// Seeds an enumeration: fan over the hull, then incremental insertion.
pub fn initial_triangulation(p: &AugmentedPointSet) -> Triangulation {
    p.initial_triangulation()
}

/// A triangulation of a planar point set. Triangles are CCW index triples;
/// `neighbors[t][k]` is the triangle across the edge opposite corner `k`.
/// Immutable: [`Triangulation::flip`] returns a new value.
#[derive(Clone, Debug)]
pub struct Triangulation {
    carrier: Arc<Carrier>,
    triangles: Vec<[u32; 3]>,
    neighbors: Vec<[u32; 3]>,
    edges: EdgeSet,
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.carrier, &other.carrier) && self.edges == other.edges
    }
}

impl Triangulation {
    fn incremental(points: Arc<[Point]>, base_len: usize, augmented: bool) -> Self {
        let hull = convex_hull(&points);
        let mut triangles: Vec<[u32; 3]> = Vec::new();
        if hull.len() >= 3 {
            for w in 1..hull.len() - 1 {
                triangles.push([hull[0] as u32, hull[w] as u32, hull[w + 1] as u32]);
            }
            for (i, &p) in points.iter().enumerate() {
                if hull.contains(&i) {
                    continue;
                }
                let t = triangles
                    .iter()
                    .position(|t| {
                        strictly_inside_triangle(points[t[0] as usize], points[t[1] as usize], points[t[2] as usize], p)
                    })
                    .expect("general position: every interior point lies inside one triangle");
                let [a, b, c] = triangles[t];
                let i = i as u32;
                triangles[t] = [a, b, i];
                triangles.push([b, c, i]);
                triangles.push([c, a, i]);
            }
        }
        Self::build(points, base_len, augmented, triangles, &hull)
            .expect("incremental construction yields a valid triangulation")
    }

    /// Assembles a triangulation from CCW triangles over `points`, computing
    /// adjacency and the edge set.
    pub fn from_triangles(
        points: Arc<[Point]>,
        base_len: usize,
        augmented: bool,
        triangles: Vec<[usize; 3]>,
    ) -> Result<Self, TriangulationError> {
        let hull = convex_hull(&points);
        let tris = triangles.into_iter().map(|t| [t[0] as u32, t[1] as u32, t[2] as u32]).collect();
        Self::build(points, base_len, augmented, tris, &hull)
    }

    fn build(
        points: Arc<[Point]>,
        base_len: usize,
        augmented: bool,
        triangles: Vec<[u32; 3]>,
        hull: &[usize],
    ) -> Result<Self, TriangulationError> {
        let n = points.len();
        let mut on_hull = vec![false; n];
        for &h in hull {
            on_hull[h] = true;
        }
        let mut directed: HashMap<(u32, u32), (u32, usize)> = HashMap::with_capacity(triangles.len() * 3);
        for (ti, t) in triangles.iter().enumerate() {
            for k in 0..3 {
                let (u, w) = (t[(k + 1) % 3], t[(k + 2) % 3]);
                if u as usize >= n || w as usize >= n {
                    return Err(TriangulationError::VertexOutOfRange(u.max(w) as usize));
                }
                if directed.insert((u, w), (ti as u32, k)).is_some() {
                    return Err(TriangulationError::Invalid(format!("directed edge {u}->{w} used twice")));
                }
            }
        }
        let mut neighbors = vec![[NONE; 3]; triangles.len()];
        let mut edges: Vec<(u32, u32)> = Vec::with_capacity(directed.len());
        for (&(u, w), &(ti, k)) in &directed {
            if let Some(&(tj, _)) = directed.get(&(w, u)) {
                neighbors[ti as usize][k] = tj;
            }
            if u < w || !directed.contains_key(&(w, u)) {
                edges.push((u.min(w), u.max(w)));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        if n == 2 {
            edges.push((0, 1));
        }
        let carrier = Arc::new(Carrier { points, base_len, augmented, on_hull });
        Ok(Triangulation { carrier, triangles, neighbors, edges: EdgeSet::from_sorted(edges) })
    }

    pub fn points(&self) -> &[Point] {
        &self.carrier.points
    }

    pub fn point(&self, v: usize) -> Point {
        self.carrier.points[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.carrier.points.len()
    }

    /// Number of vint-eligible points (`n` for `S⁺`).
    pub fn base_len(&self) -> usize {
        self.carrier.base_len
    }

    pub fn is_augmented(&self) -> bool {
        self.carrier.augmented
    }

    pub fn is_hull_vertex(&self, v: usize) -> bool {
        self.carrier.on_hull[v]
    }

    /// A base point of `S⁺` (never a frame corner).
    pub fn is_interior_point(&self, v: usize) -> bool {
        v < self.carrier.base_len && !self.carrier.on_hull[v]
    }

    pub fn triangles(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        self.triangles.iter().map(|t| [t[0] as usize, t[1] as usize, t[2] as usize])
    }

    pub fn inner_face_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn edge_set(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeRef> + '_ {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn fingerprint(&self) -> Fingerprint {
        self.edges.fingerprint()
    }

    pub fn contains_edge(&self, e: EdgeRef) -> bool {
        self.edges.contains(e)
    }

    /// Triangle index and corner index `k` such that the triangle has the
    /// directed edge `u -> w` opposite corner `k`.
    fn directed_edge(&self, u: usize, w: usize) -> Option<(usize, usize)> {
        let (u, w) = (u as u32, w as u32);
        self.triangles
            .iter()
            .enumerate()
            .find_map(|(ti, t)| (0..3).find(|&k| t[(k + 1) % 3] == u && t[(k + 2) % 3] == w).map(|k| (ti, k)))
    }

    /// Apex of the triangle lying to the left of the directed edge `u -> w`.
    pub fn apex_left_of(&self, u: usize, w: usize) -> Option<usize> {
        self.directed_edge(u, w).map(|(ti, k)| self.triangles[ti][k] as usize)
    }

    fn flip_quad(&self, e: EdgeRef) -> Result<Option<FlipQuad>, TriangulationError> {
        if !self.contains_edge(e) {
            return Err(TriangulationError::UnknownEdge(e));
        }
        let (a, b) = e.endpoints();
        let (Some((t1, k1)), Some((t2, k2))) = (self.directed_edge(a, b), self.directed_edge(b, a)) else {
            return Ok(None);
        };
        let c = self.triangles[t1][k1] as usize;
        let d = self.triangles[t2][k2] as usize;
        Ok(Some(FlipQuad { a, b, c, d, t1, k1, t2, k2 }))
    }

    /// Hull edges are never flippable; an interior edge is flippable iff its
    /// two triangles form a strictly convex quadrilateral.
    pub fn is_flippable(&self, e: EdgeRef) -> Result<bool, TriangulationError> {
        Ok(match self.flip_quad(e)? {
            None => false,
            Some(q) => q.is_convex(self.points()),
        })
    }

    pub fn flippable_edges(&self) -> Vec<EdgeRef> {
        self.edges().filter(|&e| self.is_flippable(e).unwrap_or(false)).collect()
    }

    /// Replaces `e` by the other diagonal of its quadrilateral.
    pub fn flip(&self, e: EdgeRef) -> Result<Triangulation, TriangulationError> {
        let q = self.flip_quad(e)?.ok_or(TriangulationError::NotFlippable(e))?;
        if !q.is_convex(self.points()) {
            return Err(TriangulationError::NotFlippable(e));
        }
        let FlipQuad { a, b, c, d, t1, k1, t2, k2 } = q;
        // t1 = (a, b, c), t2 = (b, a, d). Outer neighbours by the edge they
        // share: (b,c), (c,a) from t1 and (a,d), (d,b) from t2.
        let n1 = self.neighbors[t1];
        let n2 = self.neighbors[t2];
        let across_bc = n1[(k1 + 1) % 3];
        let across_ca = n1[(k1 + 2) % 3];
        let across_ad = n2[(k2 + 1) % 3];
        let across_db = n2[(k2 + 2) % 3];

        let mut triangles = self.triangles.clone();
        let mut neighbors = self.neighbors.clone();
        let (a32, b32, c32, d32) = (a as u32, b as u32, c as u32, d as u32);
        // t1 <- (c, a, d): opposite c is (a,d), opposite a is (d,c), opposite d is (c,a)
        triangles[t1] = [c32, a32, d32];
        neighbors[t1] = [across_ad, t2 as u32, across_ca];
        // t2 <- (d, b, c): opposite d is (b,c), opposite b is (c,d), opposite c is (d,b)
        triangles[t2] = [d32, b32, c32];
        neighbors[t2] = [across_bc, t1 as u32, across_db];
        let repoint = |neighbors: &mut Vec<[u32; 3]>, t: u32, from: usize, to: usize| {
            if t != NONE {
                for slot in neighbors[t as usize].iter_mut() {
                    if *slot == from as u32 {
                        *slot = to as u32;
                    }
                }
            }
        };
        repoint(&mut neighbors, across_ad, t2, t1);
        repoint(&mut neighbors, across_bc, t1, t2);

        Ok(Triangulation {
            carrier: self.carrier.clone(),
            triangles,
            neighbors,
            edges: self.edges.replaced(e, EdgeRef::new(c, d)),
        })
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges().filter(|e| e.contains(v)).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for e in self.edges() {
            deg[e.a] += 1;
            deg[e.b] += 1;
        }
        deg
    }

    pub fn degree_vector(&self) -> Result<DegreeVector, TriangulationError> {
        if !self.carrier.augmented {
            return Err(TriangulationError::NotAugmented);
        }
        let deg = self.degrees();
        let base = self.carrier.base_len;
        let mut counts = BTreeMap::new();
        for &d in &deg[..base] {
            *counts.entry(d).or_insert(0) += 1;
        }
        Ok(DegreeVector { counts, frame_degrees: [deg[base], deg[base + 1], deg[base + 2]] })
    }

    /// Neighbours of an interior vertex in CCW order (the boundary of its
    /// hole). `None` for hull vertices.
    pub fn link(&self, v: usize) -> Option<Vec<usize>> {
        if v >= self.vertex_count() || self.carrier.on_hull[v] {
            return None;
        }
        let v32 = v as u32;
        let mut next: HashMap<u32, u32> = HashMap::new();
        for t in &self.triangles {
            if let Some(k) = t.iter().position(|&x| x == v32) {
                next.insert(t[(k + 1) % 3], t[(k + 2) % 3]);
            }
        }
        let &start = next.keys().min()?;
        let mut cycle = vec![start as usize];
        let mut cur = next[&start];
        while cur != start {
            cycle.push(cur as usize);
            cur = *next.get(&cur)?;
            if cycle.len() > next.len() {
                return None;
            }
        }
        Some(cycle)
    }

    /// Structural self-check: CCW triangles, adjacency involution, Euler
    /// counts and a consistent edge set.
    pub fn check_invariants(&self) -> Result<(), String> {
        let pts = self.points();
        for (ti, t) in self.triangles.iter().enumerate() {
            let [a, b, c] = t.map(|x| pts[x as usize]);
            if !left_of(a, b, c) {
                return Err(format!("triangle {ti} {t:?} is not CCW"));
            }
            for k in 0..3 {
                let nb = self.neighbors[ti][k];
                let (u, w) = (t[(k + 1) % 3], t[(k + 2) % 3]);
                if nb == NONE {
                    if !(self.carrier.on_hull[u as usize] && self.carrier.on_hull[w as usize]) {
                        return Err(format!("edge {u}-{w} has one triangle but is not on the hull"));
                    }
                    continue;
                }
                let other = self.triangles[nb as usize];
                let Some(kk) = (0..3).find(|&kk| other[(kk + 1) % 3] == w && other[(kk + 2) % 3] == u) else {
                    return Err(format!("triangle {nb} does not share edge {u}-{w} with {ti}"));
                };
                if self.neighbors[nb as usize][kk] != ti as u32 {
                    return Err(format!("adjacency is not an involution at {ti}/{nb}"));
                }
            }
        }
        let mut from_tris: Vec<(u32, u32)> = self
            .triangles
            .iter()
            .flat_map(|t| (0..3).map(move |k| (t[k].min(t[(k + 1) % 3]), t[k].max(t[(k + 1) % 3]))))
            .collect();
        from_tris.sort_unstable();
        from_tris.dedup();
        if self.vertex_count() >= 3 && from_tris.as_slice() != self.edges.raw() {
            return Err("edge set does not match the triangles".into());
        }
        let n = self.vertex_count();
        let h = self.carrier.on_hull.iter().filter(|&&b| b).count();
        if n >= 3 {
            if self.edges.len() != 3 * n - 3 - h {
                return Err(format!("expected {} edges, found {}", 3 * n - 3 - h, self.edges.len()));
            }
            if self.triangles.len() != 2 * n - 2 - h {
                return Err(format!("expected {} faces, found {}", 2 * n - 2 - h, self.triangles.len()));
            }
        }
        Ok(())
    }

    /// `{ "n": vertex count, "edges": [[i, j], ...] }`, `i < j`, sorted.
    pub fn to_json(&self) -> TriangulationJson {
        TriangulationJson {
            n: self.vertex_count(),
            edges: self.edges.raw().iter().map(|&(a, b)| [a as usize, b as usize]).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

struct FlipQuad {
    a: usize,
    b: usize,
    c: usize,
    d: usize,
    t1: usize,
    k1: usize,
    t2: usize,
    k2: usize,
}

impl FlipQuad {
    /// Quad `a, d, b, c` is strictly convex iff both replacement triangles
    /// `(c, a, d)` and `(d, b, c)` are CCW.
    fn is_convex(&self, pts: &[Point]) -> bool {
        left_of(pts[self.c], pts[self.a], pts[self.d]) && left_of(pts[self.d], pts[self.b], pts[self.c])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{augment, gen_convex, gen_convex_arc_in_triangle, gen_random, Point};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn square() -> Triangulation {
        let pts = PointSet::new(vec![Point::new(0, 0), Point::new(1, 0), Point::new(1, 1), Point::new(0, 1)]).unwrap();
        Triangulation::from_triangles(pts.shared(), 4, false, vec![[0, 1, 2], [0, 2, 3]]).unwrap()
    }

    #[test]
    fn frame_only() {
        let aug = AugmentedPointSet::with_frame(&[], [Point::new(0, 0), Point::new(10, 0), Point::new(0, 10)]).unwrap();
        let t = initial_triangulation(&aug);
        assert_eq!(t.inner_face_count(), 1);
        assert_eq!(t.edge_count(), 3);
        t.check_invariants().unwrap();
    }

    #[test]
    fn single_interior_point() {
        let aug = augment(&PointSet::new(vec![Point::new(0, 0)]).unwrap());
        let t = initial_triangulation(&aug);
        assert_eq!(t.inner_face_count(), 3);
        assert_eq!(t.edge_count(), 6);
        let dv = t.degree_vector().unwrap();
        assert_eq!(dv.v(3), 1);
        assert_eq!(dv.frame_degrees, [3, 3, 3]);
        assert!(t.flippable_edges().is_empty());
    }

    #[test]
    fn random_four_counts() {
        let aug = augment(&gen_random(4, 3).unwrap());
        let t = initial_triangulation(&aug);
        assert_eq!(t.edge_count(), 15);
        assert_eq!(t.inner_face_count(), 9);
        t.check_invariants().unwrap();
    }

    #[test]
    fn square_diagonal_flip() {
        let t = square();
        let e = EdgeRef::new(0, 2);
        assert!(t.is_flippable(e).unwrap());
        let f = t.flip(e).unwrap();
        assert!(f.contains_edge(EdgeRef::new(1, 3)));
        assert!(!f.contains_edge(e));
        f.check_invariants().unwrap();
        assert_ne!(f.fingerprint(), t.fingerprint());
        let back = f.flip(EdgeRef::new(1, 3)).unwrap();
        assert_eq!(back.fingerprint(), t.fingerprint());
        assert_eq!(back.edge_set(), t.edge_set());
    }

    #[test]
    fn hull_edges_and_unknown_edges() {
        let t = square();
        assert!(!t.is_flippable(EdgeRef::new(0, 1)).unwrap());
        assert_eq!(t.flip(EdgeRef::new(0, 1)), Err(TriangulationError::NotFlippable(EdgeRef::new(0, 1))));
        assert_eq!(t.is_flippable(EdgeRef::new(1, 3)), Err(TriangulationError::UnknownEdge(EdgeRef::new(1, 3))));
    }

    #[test]
    fn reflex_quad_diagonal_not_flippable() {
        // (1, 1) is a reflex corner of the quad 0-1-2-3
        let pts = PointSet::new(vec![Point::new(0, 0), Point::new(4, 0), Point::new(1, 1), Point::new(0, 4)]).unwrap();
        let t = Triangulation::from_triangles(pts.shared(), 4, false, vec![[0, 1, 2], [0, 2, 3]]).unwrap();
        assert!(!t.is_flippable(EdgeRef::new(0, 2)).unwrap());
    }

    #[test]
    fn fingerprint_ignores_triangle_order() {
        let pts = PointSet::new(vec![Point::new(0, 0), Point::new(1, 0), Point::new(1, 1), Point::new(0, 1)]).unwrap();
        let a = Triangulation::from_triangles(pts.shared(), 4, false, vec![[0, 1, 2], [0, 2, 3]]).unwrap();
        let b = Triangulation::from_triangles(pts.shared(), 4, false, vec![[3, 0, 2], [2, 0, 1]]).unwrap();
        assert_eq!(a.fingerprint(), b.fingerprint());
        assert_eq!(a.edge_set(), b.edge_set());
    }

    #[test]
    fn fingerprint_is_fixed_fnv() {
        // FNV-1a of the empty input is the offset basis
        assert_eq!(Fingerprint::of_edges(&[]).0, 0xcbf2_9ce4_8422_2325);
        let fp = Fingerprint::of_edges(&[(0, 1)]);
        assert_eq!(Fingerprint::parse(&fp.to_string()), Some(fp));
    }

    #[test]
    fn link_is_ccw_cycle() {
        let aug = gen_convex_arc_in_triangle(3).unwrap();
        let t = initial_triangulation(&aug);
        for v in 0..3 {
            let link = t.link(v).unwrap();
            assert_eq!(link.len(), t.degree(v));
            for w in 0..link.len() {
                let (a, b) = (t.point(link[w]), t.point(link[(w + 1) % link.len()]));
                assert!(left_of(a, b, t.point(v)));
            }
        }
        assert!(t.link(3).is_none());
    }

    #[test]
    fn plain_convex_has_no_frame() {
        let t = gen_convex(6).unwrap().initial_triangulation();
        assert_eq!(t.degree_vector(), Err(TriangulationError::NotAugmented));
        assert_eq!(t.edge_count(), 9);
        t.check_invariants().unwrap();
    }

    #[test]
    fn json_shape() {
        let json = serde_json::to_value(square().to_json()).unwrap();
        assert_eq!(json, serde_json::json!({"n": 4, "edges": [[0,1],[0,2],[0,3],[1,2],[2,3]]}));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn random_flip_walk_keeps_invariants(n in 1usize..9, seed in 0u64..1000, steps in 1usize..60) {
            let aug = augment(&gen_random(n, seed).unwrap());
            let mut t = initial_triangulation(&aug);
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
            for _ in 0..steps {
                let flippable = t.flippable_edges();
                if flippable.is_empty() { break; }
                let e = flippable[rng.random_range(0..flippable.len())];
                let f = t.flip(e).unwrap();
                prop_assert_eq!(f.edge_count(), 3 * n + 3);
                prop_assert_eq!(f.inner_face_count(), 2 * n + 1);
                prop_assert_eq!(f.edge_set().raw().iter().filter(|x| !t.edge_set().raw().contains(x)).count(), 1);
                prop_assert!(f.check_invariants().is_ok(), "{:?}", f.check_invariants());
                let dv = f.degree_vector().unwrap();
                prop_assert_eq!(dv.degree_sum(), 6 * n + 6);
                prop_assert!(dv.weighted_sum() <= 6 * n - 3);
                prop_assert_eq!(dv.v(1) + dv.v(2), 0);
                t = f;
            }
        }
    }
}
