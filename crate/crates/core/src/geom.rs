//! Exact planar primitives, point-set containers and the configuration
//! generators used throughout the crate.
//!
//! Coordinates are `i64`; every predicate is evaluated exactly (in `i128`,
//! falling back to big integers on overflow). There is no floating point in
//! any predicate.

use std::fmt;
use std::io::{BufRead, Write};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("point set is empty")]
    Empty,
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("points {0}, {1} and {2} are collinear")]
    CollinearTriple(usize, usize, usize),
    #[error("frame triangle does not strictly contain point {0}")]
    FrameNotContaining(usize),
    #[error("frame triangle is degenerate")]
    DegenerateFrame,
    #[error("generator needs n >= {min}, got {n}")]
    TooFewPoints { n: usize, min: usize },
    #[error("no general-position sample found after {0} attempts")]
    ExhaustedRetries(usize),
    #[error("point index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for GeomError {
    fn from(e: std::io::Error) -> Self {
        GeomError::Io(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point { x, y }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }

    pub fn is_ccw(self) -> bool {
        self == Orientation::CounterClockwise
    }
}

/// Sign of the determinant of `(b - a, c - a)`.
pub fn orient(a: Point, b: Point, c: Point) -> Orientation {
    match orient_sign(a, b, c) {
        s if s > 0 => Orientation::CounterClockwise,
        s if s < 0 => Orientation::Clockwise,
        _ => Orientation::Collinear,
    }
}

/// `true` iff `c` lies strictly to the left of the directed line `a -> b`.
#[inline]
pub fn left_of(a: Point, b: Point, c: Point) -> bool {
    orient_sign(a, b, c) > 0
}

/// Returns -1, 0 or 1.
pub fn orient_sign(a: Point, b: Point, c: Point) -> i8 {
    let abx = b.x as i128 - a.x as i128;
    let aby = b.y as i128 - a.y as i128;
    let acx = c.x as i128 - a.x as i128;
    let acy = c.y as i128 - a.y as i128;
    let det = abx.checked_mul(acy).zip(aby.checked_mul(acx)).and_then(|(l, r)| l.checked_sub(r));
    match det {
        Some(d) => d.signum() as i8,
        None => {
            let d = BigInt::from(abx) * BigInt::from(acy) - BigInt::from(aby) * BigInt::from(acx);
            if d.is_positive() {
                1
            } else if d.is_negative() {
                -1
            } else {
                0
            }
        }
    }
}

/// `p` lies on the closed segment `ab` (assumes nothing about `p`).
pub fn on_segment(a: Point, b: Point, p: Point) -> bool {
    orient_sign(a, b, p) == 0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// Closed segments `ab` and `cd` share at least one point.
pub fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orient_sign(a, b, c);
    let o2 = orient_sign(a, b, d);
    let o3 = orient_sign(c, d, a);
    let o4 = orient_sign(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && on_segment(a, b, c))
        || (o2 == 0 && on_segment(a, b, d))
        || (o3 == 0 && on_segment(c, d, a))
        || (o4 == 0 && on_segment(c, d, b))
}

/// `p` strictly inside the CCW triangle `abc`.
pub fn strictly_inside_triangle(a: Point, b: Point, c: Point, p: Point) -> bool {
    left_of(a, b, p) && left_of(b, c, p) && left_of(c, a, p)
}

/// Convex hull in CCW order, starting from the lexicographically smallest
/// point. Collinear boundary points are dropped.
pub fn convex_hull(points: &[Point]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by_key(|&i| (points[i].x, points[i].y));
    idx.dedup_by_key(|i| points[*i]);
    if idx.len() < 3 {
        return idx;
    }
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2
            && orient_sign(points[lower[lower.len() - 2]], points[lower[lower.len() - 1]], points[i]) <= 0
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && orient_sign(points[upper[upper.len() - 2]], points[upper[upper.len() - 1]], points[i]) <= 0
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// An ordered set of points in general position. Labels are the indices
/// `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Arc<[Point]>,
}

impl PointSet {
    /// Validating constructor; see [`validate_general_position`].
    pub fn new(points: Vec<Point>) -> Result<Self, GeomError> {
        validate_general_position(&points)
    }

    pub(crate) fn empty() -> Self {
        PointSet { points: Arc::from(Vec::new()) }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn shared(&self) -> Arc<[Point]> {
        self.points.clone()
    }

    pub fn get(&self, i: usize) -> Option<Point> {
        self.points.get(i).copied()
    }

    pub fn hull(&self) -> Vec<usize> {
        convex_hull(&self.points)
    }

    /// Writes the point-set text format: `n`, then `x y` per line.
    pub fn write_text<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{}", self.points.len())?;
        for p in self.points.iter() {
            writeln!(w, "{} {}", p.x, p.y)?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_text(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("ascii output")
    }

    pub fn read_text<R: BufRead>(r: R) -> Result<Self, GeomError> {
        let points = read_point_list(r)?;
        validate_general_position(&points)
    }

    pub fn from_text(s: &str) -> Result<Self, GeomError> {
        Self::read_text(s.as_bytes())
    }
}

/// Parses `k` followed by `k` lines of `x y`. Shared by the point-set and
/// polygon formats.
pub fn read_point_list<R: BufRead>(r: R) -> Result<Vec<Point>, GeomError> {
    let mut lines = r.lines().enumerate().filter_map(|(i, l)| match l {
        Ok(l) if l.trim().is_empty() => None,
        other => Some((i + 1, other)),
    });
    let (line, header) = lines.next().ok_or(GeomError::Parse { line: 1, msg: "missing point count".into() })?;
    let header = header?;
    let n: usize =
        header.trim().parse().map_err(|_| GeomError::Parse { line, msg: format!("bad count {:?}", header.trim()) })?;
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, text) =
            lines.next().ok_or(GeomError::Parse { line: line + points.len() + 1, msg: "missing point".into() })?;
        let text = text?;
        let mut it = text.split_whitespace();
        let mut coord = || -> Result<i64, GeomError> {
            it.next()
                .and_then(|t| t.parse().ok())
                .ok_or(GeomError::Parse { line, msg: format!("expected `x y`, got {:?}", text) })
        };
        let x = coord()?;
        let y = coord()?;
        points.push(Point { x, y });
    }
    if let Some((line, _)) = lines.next() {
        return Err(GeomError::Parse { line, msg: "trailing content after last point".into() });
    }
    Ok(points)
}

/// Accepts `points` iff they are pairwise distinct and no three are collinear.
pub fn validate_general_position(points: &[Point]) -> Result<PointSet, GeomError> {
    if points.is_empty() {
        return Err(GeomError::Empty);
    }
    check_general_position(points)?;
    Ok(PointSet { points: Arc::from(points.to_vec()) })
}

fn check_general_position(points: &[Point]) -> Result<(), GeomError> {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            if points[i] == points[j] {
                return Err(GeomError::DuplicatePoint(i, j));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orient_sign(points[i], points[j], points[k]) == 0 {
                    return Err(GeomError::CollinearTriple(i, j, k));
                }
            }
        }
    }
    Ok(())
}

/// `candidate` keeps `existing` in general position.
fn extends_general_position(existing: &[Point], candidate: Point) -> bool {
    for (i, &p) in existing.iter().enumerate() {
        if p == candidate {
            return false;
        }
        for &q in &existing[i + 1..] {
            if orient_sign(p, q, candidate) == 0 {
                return false;
            }
        }
    }
    true
}

/// A point set together with a bounding triangle whose corners become the
/// whole convex hull. Base points keep indices `0..n`; the frame occupies
/// `n, n + 1, n + 2` in CCW order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedPointSet {
    base: PointSet,
    frame: [Point; 3],
    all: Arc<[Point]>,
}

impl AugmentedPointSet {
    /// Builds `base ∪ frame`, checking strict containment and general
    /// position. The frame may be given in either orientation.
    pub fn with_frame(base: &[Point], frame: [Point; 3]) -> Result<Self, GeomError> {
        let mut frame = frame;
        match orient(frame[0], frame[1], frame[2]) {
            Orientation::Collinear => return Err(GeomError::DegenerateFrame),
            Orientation::Clockwise => frame.swap(1, 2),
            Orientation::CounterClockwise => {}
        }
        for (i, &p) in base.iter().enumerate() {
            if !strictly_inside_triangle(frame[0], frame[1], frame[2], p) {
                return Err(GeomError::FrameNotContaining(i));
            }
        }
        let mut all = base.to_vec();
        all.extend_from_slice(&frame);
        check_general_position(&all)?;
        let base = if base.is_empty() { PointSet::empty() } else { PointSet { points: Arc::from(base.to_vec()) } };
        Ok(AugmentedPointSet { base, frame, all: Arc::from(all) })
    }

    /// Interprets a point set whose hull is a triangle as `S⁺`: the hull
    /// corners become the frame, everything else the base.
    pub fn from_triangular_hull(set: &PointSet) -> Option<Self> {
        let hull = set.hull();
        if hull.len() != 3 {
            return None;
        }
        let base: Vec<Point> = (0..set.len()).filter(|i| !hull.contains(i)).map(|i| set.points()[i]).collect();
        let frame = [set.points()[hull[0]], set.points()[hull[1]], set.points()[hull[2]]];
        Self::with_frame(&base, frame).ok()
    }

    /// Number of base (non-frame) points.
    pub fn interior_count(&self) -> usize {
        self.base.len()
    }

    pub fn base(&self) -> &PointSet {
        &self.base
    }

    pub fn frame(&self) -> [Point; 3] {
        self.frame
    }

    /// Base points followed by the three frame corners.
    pub fn points(&self) -> &[Point] {
        &self.all
    }

    pub fn shared(&self) -> Arc<[Point]> {
        self.all.clone()
    }

    pub fn len(&self) -> usize {
        self.all.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_frame(&self, i: usize) -> bool {
        i >= self.base.len()
    }

    /// `S⁺ \ {q}` for a base point `q`, keeping the same frame. Indices above
    /// `q` shift down by one.
    pub fn without(&self, q: usize) -> Result<Self, GeomError> {
        if q >= self.base.len() {
            return Err(GeomError::IndexOutOfRange(q));
        }
        let base: Vec<Point> =
            self.base.points().iter().enumerate().filter(|&(i, _)| i != q).map(|(_, &p)| p).collect();
        Self::with_frame(&base, self.frame)
    }

    /// The full `n + 3` point list as a plain point set (base first, frame
    /// last), which is how augmented sets are written to disk.
    pub fn as_point_set(&self) -> PointSet {
        PointSet { points: self.all.clone() }
    }
}

/// Wraps `set` in an axis-aligned right triangle: corner one box side below
/// and left of the bounding box, legs of length `4·(w + h) + 4`. Until the
/// union is in general position the corners are nudged outward by one unit
/// in turn (corner left, horizontal leg right, vertical leg up); each nudge
/// only enlarges the triangle.
pub fn augment(set: &PointSet) -> AugmentedPointSet {
    let pts = set.points();
    let (mut minx, mut maxx, mut miny, mut maxy) = (0i64, 0i64, 0i64, 0i64);
    if let Some(p) = pts.first() {
        (minx, maxx, miny, maxy) = (p.x, p.x, p.y, p.y);
    }
    for p in pts {
        minx = minx.min(p.x);
        maxx = maxx.max(p.x);
        miny = miny.min(p.y);
        maxy = maxy.max(p.y);
    }
    let (w, h) = (maxx - minx, maxy - miny);
    let side = w.max(h).max(1);
    let leg = 4 * (w + h) + 4;
    let mut corner = Point::new(minx - side, miny - side);
    let mut right = Point::new(corner.x + leg, corner.y);
    let mut top = Point::new(corner.x, corner.y + leg);
    for step in 0usize.. {
        match AugmentedPointSet::with_frame(pts, [corner, right, top]) {
            Ok(aug) => return aug,
            Err(_) => match step % 3 {
                0 => corner.x -= 1,
                1 => right.x += 1,
                _ => top.y += 1,
            },
        }
    }
    unreachable!()
}

/// `n` points `(t, t²)`, `t = 0..n`: strictly convex, no three collinear.
pub fn gen_convex(n: usize) -> Result<PointSet, GeomError> {
    if n < 3 {
        return Err(GeomError::TooFewPoints { n, min: 3 });
    }
    let points = (0..n as i64).map(|t| Point::new(t, t * t)).collect::<Vec<_>>();
    validate_general_position(&points)
}

/// `n` points on a concave-down parabola whose endpoints are two frame
/// corners; the third corner sits high above. Every chain edge and every
/// edge from the apex to the chain is forced, so `tri(S⁺) = C_n`.
pub fn gen_convex_arc_in_triangle(n: usize) -> Result<AugmentedPointSet, GeomError> {
    if n < 1 {
        return Err(GeomError::TooFewPoints { n, min: 1 });
    }
    let m = n as i64 + 1;
    let base: Vec<Point> = (1..m).map(|i| Point::new(2 * i, i * (m - i))).collect();
    let left = Point::new(0, 0);
    let right = Point::new(2 * m, 0);
    let mut height = 2 * m * m;
    loop {
        let apex = Point::new(m, height);
        match AugmentedPointSet::with_frame(&base, [left, right, apex]) {
            Ok(aug) => return Ok(aug),
            Err(GeomError::CollinearTriple(..)) => height += 1,
            Err(e) => return Err(e),
        }
    }
}

pub const RANDOM_ATTEMPTS_PER_POINT: usize = 10_000;

/// Grid side used by [`gen_random`]: grows with `n²`.
pub fn random_grid_side(n: usize) -> i64 {
    (4 * n * n).max(16) as i64
}

/// Rejection-samples `n` integer points from `[0, side)²` with a ChaCha8
/// stream seeded from `seed`.
pub fn gen_random(n: usize, seed: u64) -> Result<PointSet, GeomError> {
    gen_random_in_grid(n, seed, random_grid_side(n))
}

pub fn gen_random_in_grid(n: usize, seed: u64, side: i64) -> Result<PointSet, GeomError> {
    if n < 1 {
        return Err(GeomError::TooFewPoints { n, min: 1 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Point> = Vec::with_capacity(n);
    let mut attempts = 0usize;
    while points.len() < n {
        let candidate = Point::new(rng.random_range(0..side), rng.random_range(0..side));
        attempts += 1;
        if extends_general_position(&points, candidate) {
            points.push(candidate);
            attempts = 0;
        } else if attempts >= RANDOM_ATTEMPTS_PER_POINT {
            return Err(GeomError::ExhaustedRetries(RANDOM_ATTEMPTS_PER_POINT));
        }
    }
    validate_general_position(&points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn orient_basics() {
        assert_eq!(orient(p(0, 0), p(1, 0), p(0, 1)), Orientation::CounterClockwise);
        assert_eq!(orient(p(0, 0), p(1, 1), p(2, 2)), Orientation::Collinear);
        assert_eq!(orient(p(0, 0), p(0, 1), p(1, 0)), Orientation::Clockwise);
    }

    #[test]
    fn orient_survives_i128_overflow() {
        let a = p(i64::MIN, i64::MIN);
        let b = p(i64::MAX, i64::MIN);
        let c = p(i64::MIN, i64::MAX);
        assert_eq!(orient(a, b, c), Orientation::CounterClockwise);
        assert_eq!(orient(a, c, b), Orientation::Clockwise);
        let mid = p(0, 0);
        assert_eq!(orient(p(i64::MIN + 1, i64::MIN + 1), mid, p(i64::MAX, i64::MAX)), Orientation::Collinear);
    }

    #[test]
    fn validation_examples() {
        assert!(validate_general_position(&[p(0, 0), p(5, 1), p(1, 5)]).is_ok());
        assert_eq!(validate_general_position(&[p(0, 0), p(1, 1), p(2, 2)]), Err(GeomError::CollinearTriple(0, 1, 2)));
        assert_eq!(validate_general_position(&[p(0, 0), p(0, 0)]), Err(GeomError::DuplicatePoint(0, 1)));
        assert_eq!(validate_general_position(&[]), Err(GeomError::Empty));
    }

    #[test]
    fn augment_single_point() {
        let s = PointSet::new(vec![p(0, 0)]).unwrap();
        let aug = augment(&s);
        assert_eq!(aug.len(), 4);
        assert_eq!(convex_hull(aug.points()).len(), 3);
    }

    #[test]
    fn augment_convex_five() {
        let s = gen_convex(5).unwrap();
        let aug = augment(&s);
        assert_eq!(aug.len(), 8);
        let hull = convex_hull(aug.points());
        assert_eq!(hull.len(), 3);
        assert!(hull.iter().all(|&i| aug.is_frame(i)));
    }

    #[test]
    fn augment_nudges_away_from_collinearity() {
        // the initial corner (-1, -1) is on the line through both points
        let s = PointSet::new(vec![p(0, 0), p(1, 1)]).unwrap();
        let aug = augment(&s);
        assert!(validate_general_position(aug.points()).is_ok());
    }

    #[test]
    fn convex_generator_hull() {
        for n in 3..15 {
            let s = gen_convex(n).unwrap();
            assert_eq!(s.hull().len(), n);
        }
        assert!(gen_convex(2).is_err());
    }

    #[test]
    fn arc_generator_shapes() {
        for n in 1..10 {
            let a = gen_convex_arc_in_triangle(n).unwrap();
            assert_eq!(a.interior_count(), n);
            assert_eq!(a.len(), n + 3);
        }
    }

    #[test]
    fn random_is_deterministic() {
        let a = gen_random(6, 1).unwrap();
        let b = gen_random(6, 1).unwrap();
        let c = gen_random(6, 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 6);
        assert!(validate_general_position(c.points()).is_ok());
    }

    #[test]
    fn random_exhausts_on_tiny_grid() {
        assert_eq!(gen_random_in_grid(5, 0, 2), Err(GeomError::ExhaustedRetries(RANDOM_ATTEMPTS_PER_POINT)));
    }

    #[test]
    fn text_round_trip_and_errors() {
        let s = gen_random(7, 9).unwrap();
        let text = s.to_text();
        assert_eq!(PointSet::from_text(&text).unwrap(), s);
        assert_eq!(PointSet::from_text(&text).unwrap().to_text(), text);
        assert!(matches!(PointSet::from_text("2\n0 0\n"), Err(GeomError::Parse { .. })));
        assert!(matches!(PointSet::from_text("1\n0 x\n"), Err(GeomError::Parse { .. })));
        assert!(matches!(PointSet::from_text("1\n0 0\n1 1\n"), Err(GeomError::Parse { .. })));
    }

    #[test]
    fn without_removes_one_base_point() {
        let a = gen_convex_arc_in_triangle(4).unwrap();
        let b = a.without(1).unwrap();
        assert_eq!(b.interior_count(), 3);
        assert_eq!(b.frame(), a.frame());
        assert!(a.without(4).is_err());
    }

    #[test]
    fn triangular_hull_detection() {
        let a = gen_convex_arc_in_triangle(3).unwrap();
        let back = AugmentedPointSet::from_triangular_hull(&a.as_point_set()).unwrap();
        assert_eq!(back.interior_count(), 3);
        assert!(AugmentedPointSet::from_triangular_hull(&gen_convex(5).unwrap()).is_none());
    }

    proptest! {
        #[test]
        fn orient_antisymmetric(ax in -1000i64..1000, ay in -1000i64..1000,
                                bx in -1000i64..1000, by in -1000i64..1000,
                                cx in -1000i64..1000, cy in -1000i64..1000) {
            let (a, b, c) = (p(ax, ay), p(bx, by), p(cx, cy));
            let o = orient(a, b, c);
            prop_assert_eq!(orient(b, a, c), o.reversed());
            prop_assert_eq!(orient(a, c, b), o.reversed());
            prop_assert_eq!(orient(c, b, a), o.reversed());
            prop_assert_eq!(orient(b, c, a), o);
        }

        #[test]
        fn frame_strictly_contains(n in 1usize..12, seed in 0u64..500) {
            let s = gen_random(n, seed).unwrap();
            let aug = augment(&s);
            let [f0, f1, f2] = aug.frame();
            for &q in s.points() {
                prop_assert!(strictly_inside_triangle(f0, f1, f2, q));
            }
            prop_assert!(validate_general_position(aug.points()).is_ok());
        }
    }
}
