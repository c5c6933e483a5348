//! Triangulation counts of simple polygons.
//!
//! Vertices are assumed in general position (no three collinear), which is
//! what holes of general-position point sets provide. Two vertices see each
//! other iff the open segment between them lies strictly inside the polygon.

use std::io::{BufRead, Write};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::catalan;
use crate::geom::{left_of, on_segment, orient_sign, read_point_list, segments_intersect, GeomError, Point};
use crate::number::BigCount;

/// Largest polygon accepted by [`brute_force_count`].
pub const BRUTE_FORCE_MAX: usize = 12;

/// Coordinates must stay below this in absolute value so that doubled
/// coordinates (used for exact midpoints) fit in `i64`.
pub const COORD_LIMIT: i64 = 1 << 60;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolygonError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("boundary is not simple: edges {0} and {1} meet")]
    NotSimple(usize, usize),
    #[error("vertices {0}, {1} and {2} are collinear")]
    Collinear(usize, usize, usize),
    #[error("boundary is clockwise")]
    Clockwise,
    #[error("vertex {0} has a coordinate outside +-2^60")]
    CoordinateRange(usize),
    #[error("boundary edge {0} does not see the kernel witness")]
    NotStarShaped(usize),
    #[error("brute force is limited to {BRUTE_FORCE_MAX} vertices, got {0}")]
    TooLarge(usize),
    #[error("chord {0}-{1} is not a valid diagonal")]
    InvalidChord(usize, usize),
    #[error("chords {0:?} and {1:?} cross")]
    CrossingChords((usize, usize), (usize, usize)),
    #[error("labels length {labels} differs from vertex count {vertices}")]
    LabelMismatch { labels: usize, vertices: usize },
    #[error("template needs {0}")]
    Template(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// A simple polygon with CCW boundary. `labels` map boundary positions back
/// to point indices when the polygon was cut out of a triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplePolygon {
    vertices: Vec<Point>,
    labels: Option<Vec<usize>>,
    kernel_witness: Option<Point>,
}

impl SimplePolygon {
    pub fn new(vertices: Vec<Point>) -> Result<Self, PolygonError> {
        validate(&vertices)?;
        Ok(SimplePolygon { vertices, labels: None, kernel_witness: None })
    }

    pub fn with_labels(mut self, labels: Vec<usize>) -> Result<Self, PolygonError> {
        if labels.len() != self.vertices.len() {
            return Err(PolygonError::LabelMismatch { labels: labels.len(), vertices: self.vertices.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Attaches `w` as a witness of star-shapedness: every boundary edge must
    /// have `w` strictly on its left.
    pub fn with_kernel_witness(mut self, w: Point) -> Result<Self, PolygonError> {
        let k = self.len();
        for i in 0..k {
            if !left_of(self.vertices[i], self.vertices[(i + 1) % k], w) {
                return Err(PolygonError::NotStarShaped(i));
            }
        }
        self.kernel_witness = Some(w);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    /// Label of position `i`, or `i` itself for unlabeled polygons.
    pub fn label(&self, i: usize) -> usize {
        self.labels.as_ref().map_or(i, |l| l[i])
    }

    pub fn kernel_witness(&self) -> Option<Point> {
        self.kernel_witness
    }

    pub fn is_convex(&self) -> bool {
        let k = self.len();
        (0..k).all(|i| left_of(self.vertices[i], self.vertices[(i + 1) % k], self.vertices[(i + 2) % k]))
    }

    /// Open segment `i`-`j` lies strictly inside the polygon.
    pub fn is_valid_diagonal(&self, i: usize, j: usize) -> bool {
        let k = self.len();
        if i >= k || j >= k || i == j || (i + 1) % k == j || (j + 1) % k == i {
            return false;
        }
        let (a, b) = (self.vertices[i], self.vertices[j]);
        for (m, &v) in self.vertices.iter().enumerate() {
            if m != i && m != j && on_segment(a, b, v) {
                return false;
            }
        }
        for e in 0..k {
            let f = (e + 1) % k;
            if e == i || e == j || f == i || f == j {
                continue;
            }
            if segments_intersect(a, b, self.vertices[e], self.vertices[f]) {
                return false;
            }
        }
        let mid = Point::new(a.x + b.x, a.y + b.y);
        winding_doubled(&self.vertices, mid) != 0
    }

    /// Sub-polygon on the given boundary positions (kept in CCW order).
    fn sub_polygon(&self, positions: &[usize]) -> SimplePolygon {
        SimplePolygon {
            vertices: positions.iter().map(|&p| self.vertices[p]).collect(),
            labels: Some(positions.iter().map(|&p| self.label(p)).collect()),
            kernel_witness: None,
        }
    }

    pub fn write_text<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{}", self.len())?;
        for p in &self.vertices {
            writeln!(w, "{} {}", p.x, p.y)?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_text(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("ascii output")
    }

    pub fn read_text<R: BufRead>(r: R) -> Result<Self, PolygonError> {
        Self::new(read_point_list(r)?)
    }

    pub fn from_text(s: &str) -> Result<Self, PolygonError> {
        Self::read_text(s.as_bytes())
    }
}

fn validate(v: &[Point]) -> Result<(), PolygonError> {
    let k = v.len();
    if k < 3 {
        return Err(PolygonError::TooFewVertices(k));
    }
    if let Some(i) = v.iter().position(|p| p.x.abs() >= COORD_LIMIT || p.y.abs() >= COORD_LIMIT) {
        return Err(PolygonError::CoordinateRange(i));
    }
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                if orient_sign(v[i], v[j], v[l]) == 0 {
                    return Err(PolygonError::Collinear(i, j, l));
                }
            }
        }
    }
    // With no three vertices collinear, simplicity reduces to: non-adjacent
    // edges are disjoint.
    for e in 0..k {
        for f in e + 2..k {
            if e == 0 && f == k - 1 {
                continue;
            }
            if segments_intersect(v[e], v[e + 1], v[f], v[(f + 1) % k]) {
                return Err(PolygonError::NotSimple(e, f));
            }
        }
    }
    if twice_area(v) < 0 {
        return Err(PolygonError::Clockwise);
    }
    Ok(())
}

fn twice_area(v: &[Point]) -> i128 {
    let k = v.len();
    (0..k)
        .map(|i| {
            let (p, q) = (v[i], v[(i + 1) % k]);
            p.x as i128 * q.y as i128 - q.x as i128 * p.y as i128
        })
        .sum()
}

/// Winding number of `m` (given in doubled coordinates) around the polygon.
/// `m` must not lie on the boundary.
fn winding_doubled(v: &[Point], m: Point) -> i32 {
    let k = v.len();
    let d = |p: Point| Point::new(2 * p.x, 2 * p.y);
    let mut wn = 0;
    for i in 0..k {
        let (a, b) = (d(v[i]), d(v[(i + 1) % k]));
        if a.y <= m.y {
            if b.y > m.y && left_of(a, b, m) {
                wn += 1;
            }
        } else if b.y <= m.y && left_of(b, a, m) {
            wn -= 1;
        }
    }
    wn
}

/// Interval DP over valid diagonals: `f(i, j) = Σ_m f(i, m)·f(m, j)`.
#[allow(clippy::needless_range_loop)]
pub fn count_triangulations(p: &SimplePolygon) -> BigCount {
    let k = p.len();
    let mut ok = vec![vec![false; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let v = j == i + 1 || (i == 0 && j == k - 1) || p.is_valid_diagonal(i, j);
            ok[i][j] = v;
            ok[j][i] = v;
        }
    }
    let zero = BigCount::from(0u8);
    let mut f = vec![vec![zero.clone(); k]; k];
    for i in 0..k - 1 {
        f[i][i + 1] = BigCount::from(1u8);
    }
    for gap in 2..k {
        for i in 0..k - gap {
            let j = i + gap;
            if !ok[i][j] {
                continue;
            }
            let mut acc = zero.clone();
            for m in i + 1..j {
                if ok[i][m] && ok[m][j] {
                    acc += &f[i][m] * &f[m][j];
                }
            }
            f[i][j] = acc;
        }
    }
    f[0][k - 1].clone()
}

/// Independent oracle: fixes the edge `(v_0, v_{k-1})`, tries every apex
/// whose two sides are diagonals (cone test plus edge-crossing test), and
/// recurses on both sides without memoization.
pub fn brute_force_count(p: &SimplePolygon) -> Result<BigCount, PolygonError> {
    if p.len() > BRUTE_FORCE_MAX {
        return Err(PolygonError::TooLarge(p.len()));
    }
    Ok(BigCount::from(ears(p.vertices())))
}

fn ears(v: &[Point]) -> u64 {
    let k = v.len();
    if k <= 3 {
        return 1;
    }
    let mut total = 0;
    for m in 1..k - 1 {
        if (m == 1 || cone_diagonal(v, 0, m)) && (m == k - 2 || cone_diagonal(v, m, k - 1)) {
            total += ears(&v[..=m]) * ears(&v[m..]);
        }
    }
    total
}

fn in_cone(v: &[Point], a: usize, b: usize) -> bool {
    let k = v.len();
    let (prev, next) = (v[(a + k - 1) % k], v[(a + 1) % k]);
    let (pa, pb) = (v[a], v[b]);
    if orient_sign(pa, next, prev) >= 0 {
        left_of(pa, pb, prev) && left_of(pb, pa, next)
    } else {
        !(orient_sign(pa, pb, next) >= 0 && orient_sign(pb, pa, prev) >= 0)
    }
}

fn cone_diagonal(v: &[Point], a: usize, b: usize) -> bool {
    if !(in_cone(v, a, b) && in_cone(v, b, a)) {
        return false;
    }
    let k = v.len();
    (0..k).all(|c| {
        let c1 = (c + 1) % k;
        c == a || c == b || c1 == a || c1 == b || !segments_intersect(v[a], v[b], v[c], v[c1])
    })
}

/// An internal chord between two boundary positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chord {
    pub a: usize,
    pub b: usize,
}

impl Chord {
    pub fn new(i: usize, j: usize) -> Self {
        Chord { a: i.min(j), b: i.max(j) }
    }

    /// Strictly interleaving endpoints; shared endpoints do not cross.
    pub fn crosses(self, o: Chord) -> bool {
        let inside = |x: usize| self.a < x && x < self.b;
        let shared = self.a == o.a || self.a == o.b || self.b == o.a || self.b == o.b;
        !shared && inside(o.a) != inside(o.b)
    }
}

/// Number of triangulations containing every chord in `required`: the
/// product of the counts of the pieces the chords cut `p` into.
pub fn tr_with_chords(p: &SimplePolygon, required: &[Chord]) -> Result<BigCount, PolygonError> {
    for &c in required {
        if !p.is_valid_diagonal(c.a, c.b) {
            return Err(PolygonError::InvalidChord(c.a, c.b));
        }
    }
    for (i, &c) in required.iter().enumerate() {
        for &d in &required[i + 1..] {
            if c.crosses(d) {
                return Err(PolygonError::CrossingChords((c.a, c.b), (d.a, d.b)));
            }
        }
    }
    let positions: Vec<usize> = (0..p.len()).collect();
    Ok(split_count(p, &positions, required))
}

fn split_count(p: &SimplePolygon, positions: &[usize], chords: &[Chord]) -> BigCount {
    let Some((&c, rest)) = chords.split_first() else {
        return count_triangulations(&p.sub_polygon(positions));
    };
    let find = |v: usize| positions.iter().position(|&x| x == v).expect("chord endpoint in piece");
    let (ia, ib) = (find(c.a).min(find(c.b)), find(c.a).max(find(c.b)));
    let left: Vec<usize> = positions[ia..=ib].to_vec();
    let right: Vec<usize> = positions[ib..].iter().chain(&positions[..=ia]).copied().collect();
    let within = |piece: &[usize]| -> Vec<Chord> {
        rest.iter().copied().filter(|d| piece.contains(&d.a) && piece.contains(&d.b)).collect()
    };
    split_count(p, &left, &within(&left)) * split_count(p, &right, &within(&right))
}

/// Upper bound for a `k`-gon, attained exactly by convex polygons.
pub fn convex_count(k: usize) -> BigCount {
    catalan::catalan(k as u32 - 2)
}

const TEMPLATE_SCALE: i64 = 4;

/// A `(n + 2)`-gon on the parabola `(S t, S t²)` with each vertex in `dents`
/// pushed just inside the chord joining its neighbours. Each dent is a
/// reflex vertex that blocks exactly that one chord, so with `r` pairwise
/// non-adjacent dents the count is `C^{(r)}_n`.
pub fn reflex_template(n: usize, dents: &[usize]) -> Result<SimplePolygon, PolygonError> {
    let k = n + 2;
    if k < 4 {
        return Err(PolygonError::Template("n >= 2".into()));
    }
    let mut sorted = dents.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.iter().any(|&d| d == 0 || d >= k - 1) {
        return Err(PolygonError::Template(format!("dents within 1..={}", k - 2)));
    }
    if sorted.windows(2).any(|w| w[1] == w[0] + 1) {
        return Err(PolygonError::Template("non-adjacent dents".into()));
    }
    let s = TEMPLATE_SCALE;
    let base = |t: i64| Point::new(s * t, s * t * t);
    for lift in 1..s {
        let vertices: Vec<Point> = (0..k as i64)
            .map(|t| if sorted.contains(&(t as usize)) { Point::new(s * t, s * (t * t + 1) + lift) } else { base(t) })
            .collect();
        match SimplePolygon::new(vertices) {
            Ok(p) => return Ok(p),
            Err(PolygonError::Collinear(..)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(PolygonError::Template("a general-position lift".into()))
}

/// `C'_n` template: one dent at vertex 1.
pub fn c_prime_template(n: usize) -> Result<SimplePolygon, PolygonError> {
    reflex_template(n, &[1])
}

/// `C''_n` template: dents at vertices 1 and 3.
pub fn c_double_prime_template(n: usize) -> Result<SimplePolygon, PolygonError> {
    reflex_template(n, &[1, 3])
}

const STAR_ATTEMPTS: usize = 10_000;

/// Random `k`-gon star-shaped with respect to the origin: sample points in
/// `(-side, side)²`, sort by angle and keep the sample when every edge has
/// the origin strictly on its left.
pub fn random_star_polygon<R: Rng + ?Sized>(rng: &mut R, k: usize, side: i64) -> Result<SimplePolygon, PolygonError> {
    if k < 3 {
        return Err(PolygonError::TooFewVertices(k));
    }
    let origin = Point::new(0, 0);
    for _ in 0..STAR_ATTEMPTS {
        let mut pts: Vec<Point> =
            (0..k).map(|_| Point::new(rng.random_range(-side + 1..side), rng.random_range(-side + 1..side))).collect();
        if pts.contains(&origin) {
            continue;
        }
        pts.sort_by(|&p, &q| angle_cmp(p, q));
        let k = pts.len();
        if !(0..k).all(|i| left_of(pts[i], pts[(i + 1) % k], origin)) {
            continue;
        }
        if let Ok(poly) = SimplePolygon::new(pts) {
            return poly.with_kernel_witness(origin);
        }
    }
    Err(GeomError::ExhaustedRetries(STAR_ATTEMPTS).into())
}

/// Seeded convenience wrapper around [`random_star_polygon`].
pub fn random_star_polygon_seeded(k: usize, seed: u64) -> Result<SimplePolygon, PolygonError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_star_polygon(&mut rng, k, (8 * k * k) as i64)
}

/// Orders nonzero vectors by angle in `[0, 2π)`.
fn angle_cmp(p: Point, q: Point) -> std::cmp::Ordering {
    let half = |v: Point| v.y < 0 || (v.y == 0 && v.x < 0);
    half(p).cmp(&half(q)).then_with(|| 0.cmp(&orient_sign(Point::new(0, 0), p, q)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalan::{catalan, catalan_double_prime, catalan_prime};
    use proptest::prelude::*;

    fn poly(pts: &[(i64, i64)]) -> SimplePolygon {
        SimplePolygon::new(pts.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    fn convex(k: usize) -> SimplePolygon {
        // points on a parabola in increasing x are CCW
        poly(&(0..k as i64).map(|t| (t, t * t)).collect::<Vec<_>>())
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_triangulations(&convex(3)), BigCount::from(1u8));
        assert_eq!(count_triangulations(&convex(4)), BigCount::from(2u8));
        assert_eq!(count_triangulations(&convex(5)), BigCount::from(5u8));
        assert_eq!(brute_force_count(&convex(7)).unwrap(), BigCount::from(42u8));
    }

    #[test]
    fn convex_counts_are_catalan() {
        for k in 3..=14 {
            let p = convex(k);
            assert!(p.is_convex());
            assert_eq!(count_triangulations(&p), catalan(k as u32 - 2), "k = {k}");
        }
    }

    #[test]
    fn reflex_quad_has_one() {
        let p = poly(&[(0, 0), (4, 0), (1, 1), (0, 4)]);
        assert!(!p.is_convex());
        assert!(!p.is_valid_diagonal(1, 3));
        assert!(p.is_valid_diagonal(0, 2));
        assert_eq!(count_triangulations(&p), BigCount::from(1u8));
        assert_eq!(brute_force_count(&p).unwrap(), BigCount::from(1u8));
    }

    #[test]
    fn rejects_bad_boundaries() {
        let pts = |v: &[(i64, i64)]| v.iter().map(|&(x, y)| Point::new(x, y)).collect::<Vec<_>>();
        assert_eq!(SimplePolygon::new(pts(&[(0, 0), (1, 0)])), Err(PolygonError::TooFewVertices(2)));
        assert_eq!(SimplePolygon::new(pts(&[(0, 0), (0, 4), (4, 0)])), Err(PolygonError::Clockwise));
        assert!(matches!(SimplePolygon::new(pts(&[(0, 0), (4, 4), (4, 0), (0, 5)])), Err(PolygonError::NotSimple(..))));
        assert!(matches!(SimplePolygon::new(pts(&[(0, 0), (1, 1), (2, 2), (0, 3)])), Err(PolygonError::Collinear(..))));
        assert_eq!(convex(4).with_labels(vec![1]), Err(PolygonError::LabelMismatch { labels: 1, vertices: 4 }));
        assert_eq!(brute_force_count(&convex(13)), Err(PolygonError::TooLarge(13)));
    }

    #[test]
    fn kernel_witness_checked() {
        let p = poly(&[(0, 0), (4, 0), (1, 1), (0, 4)]);
        assert!(p.clone().with_kernel_witness(Point::new(1, 0)).is_err());
        let sq = poly(&[(-2, -2), (2, -2), (2, 2), (-2, 3)]);
        assert!(sq.with_kernel_witness(Point::new(0, 0)).is_ok());
    }

    #[test]
    fn chords() {
        let hex = convex(6);
        assert_eq!(tr_with_chords(&hex, &[Chord::new(0, 3)]).unwrap(), BigCount::from(4u8));
        assert_eq!(tr_with_chords(&hex, &[]).unwrap(), BigCount::from(14u8));
        let pent = convex(5);
        assert_eq!(tr_with_chords(&pent, &[Chord::new(1, 3)]).unwrap(), BigCount::from(2u8));
        assert_eq!(tr_with_chords(&hex, &[Chord::new(0, 1)]), Err(PolygonError::InvalidChord(0, 1)));
        assert_eq!(
            tr_with_chords(&hex, &[Chord::new(0, 3), Chord::new(1, 4)]),
            Err(PolygonError::CrossingChords((0, 3), (1, 4)))
        );
        // a full triangulation pins the count to 1
        let fan: Vec<Chord> = (2..5).map(|j| Chord::new(0, j)).collect();
        assert_eq!(tr_with_chords(&hex, &fan).unwrap(), BigCount::from(1u8));
    }

    #[test]
    fn chord_count_matches_filtered_brute_force() {
        // Oracle: count hexagon triangulations containing 0-3 by listing all
        // triangulations as diagonal sets.
        fn all(v: &[usize]) -> Vec<Vec<(usize, usize)>> {
            if v.len() <= 3 {
                return vec![vec![]];
            }
            let (first, last) = (v[0], v[v.len() - 1]);
            let mut out = Vec::new();
            for m in 1..v.len() - 1 {
                for l in all(&v[..=m]) {
                    for r in all(&v[m..]) {
                        let mut d = l.clone();
                        d.extend(r);
                        if m != 1 {
                            d.push((first, v[m]));
                        }
                        if m != v.len() - 2 {
                            d.push((v[m], last));
                        }
                        out.push(d);
                    }
                }
            }
            out
        }
        let tris = all(&[0, 1, 2, 3, 4, 5]);
        assert_eq!(tris.len(), 14);
        let with = tris.iter().filter(|d| d.contains(&(0, 3))).count();
        assert_eq!(BigCount::from(with), tr_with_chords(&convex(6), &[Chord::new(0, 3)]).unwrap());
    }

    #[test]
    fn templates_match_inclusion_exclusion() {
        for n in 2..=10 {
            let p = c_prime_template(n).unwrap();
            assert_eq!(p.len(), n + 2);
            assert!(!p.is_convex());
            assert_eq!(count_triangulations(&p), catalan_prime(n as u32).unwrap(), "C'_{n}");
            assert_eq!(brute_force_count(&p).unwrap(), count_triangulations(&p));
        }
        for n in 4..=10 {
            let p = c_double_prime_template(n).unwrap();
            assert_eq!(count_triangulations(&p), catalan_double_prime(n as u32).unwrap(), "C''_{n}");
            assert_eq!(brute_force_count(&p).unwrap(), count_triangulations(&p));
        }
        assert_eq!(count_triangulations(&c_prime_template(4).unwrap()), BigCount::from(9u8));
        assert!(reflex_template(4, &[1, 2]).is_err());
        assert!(reflex_template(4, &[0]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let p = c_prime_template(5).unwrap();
        assert_eq!(SimplePolygon::from_text(&p.to_text()).unwrap(), p);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn dp_matches_brute_force(seed in any::<u64>(), k in 3usize..=10) {
            let p = random_star_polygon_seeded(k, seed).unwrap();
            let dp = count_triangulations(&p);
            prop_assert_eq!(&dp, &brute_force_count(&p).unwrap());
            prop_assert!(dp >= BigCount::from(1u8));
            prop_assert!(dp <= convex_count(k));
            prop_assert_eq!(dp == convex_count(k), p.is_convex());
        }

        #[test]
        fn apex_partition(seed in any::<u64>(), k in 4usize..=10) {
            // Every triangulation has exactly one triangle on edge 0-(k-1),
            // so counts with that triangle forced partition the total.
            let p = random_star_polygon_seeded(k, seed).unwrap();
            let mut sum = BigCount::from(0u8);
            for m in 1..k - 1 {
                let sides: Vec<Chord> = [(0, m), (m, k - 1)]
                    .into_iter()
                    .filter(|&(a, b)| b - a > 1)
                    .map(|(a, b)| Chord::new(a, b))
                    .collect();
                if sides.iter().all(|c| p.is_valid_diagonal(c.a, c.b)) {
                    sum += tr_with_chords(&p, &sides).unwrap();
                }
            }
            prop_assert_eq!(sum, count_triangulations(&p));
        }
    }
}
