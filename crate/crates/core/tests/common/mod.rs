//! Independent oracles shared by the integration and acceptance suites. They
//! use only plain integer geometry, the triangulation flip primitive and
//! exhaustive search; none of them goes through flip-trees, the polygon DP
//! or the enumerator.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use trichor::charging::RootedTree;
use trichor::geom::{augment, gen_random, AugmentedPointSet, Point};
use trichor::number::Rational;
use trichor::triangulation::{EdgeRef, Fingerprint, Triangulation};

pub fn orient(a: Point, b: Point, c: Point) -> i128 {
    let (ax, ay, bx, by, cx, cy) = (a.x as i128, a.y as i128, b.x as i128, b.y as i128, c.x as i128, c.y as i128);
    ((bx - ax) * (cy - ay) - (by - ay) * (cx - ax)).signum()
}

/// Proper crossing of two segments on points in general position.
pub fn crosses(pts: &[Point], (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let (pa, pb, pc, pd) = (pts[a], pts[b], pts[c], pts[d]);
    orient(pa, pb, pc) * orient(pa, pb, pd) < 0 && orient(pc, pd, pa) * orient(pc, pd, pb) < 0
}

/// Every triangulation of a point set in general position, as a sorted edge
/// list: the maximal families of pairwise non-crossing segments.
pub fn brute_triangulations(pts: &[Point]) -> Vec<Vec<(usize, usize)>> {
    let mut segs = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            segs.push((i, j));
        }
    }
    assert!(segs.len() <= 128, "oracle limited to 16 points");
    let cross: Vec<u128> = segs
        .iter()
        .map(|&s| segs.iter().enumerate().filter(|(_, &t)| crosses(pts, s, t)).fold(0u128, |m, (j, _)| m | 1 << j))
        .collect();
    let mut out = Vec::new();
    search(&segs, &cross, 0, 0, 0, &mut out);
    out
}

fn search(
    segs: &[(usize, usize)],
    cross: &[u128],
    i: usize,
    inc: u128,
    blocked: u128,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if i == segs.len() {
        let all = if segs.len() == 128 { u128::MAX } else { (1u128 << segs.len()) - 1 };
        if (inc | blocked) == all {
            out.push((0..segs.len()).filter(|&j| inc >> j & 1 == 1).map(|j| segs[j]).collect());
        }
        return;
    }
    let bit = 1u128 << i;
    if blocked & bit != 0 {
        search(segs, cross, i + 1, inc, blocked, out);
        return;
    }
    search(segs, cross, i + 1, inc | bit, blocked | cross[i], out);
    // leaving segment i out needs a later, still available segment to cross it
    let later = !((bit << 1) - 1);
    if cross[i] & later & !blocked != 0 {
        search(segs, cross, i + 1, inc, blocked, out);
    }
}

pub fn degrees_of(n_points: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut d = vec![0; n_points];
    for &(a, b) in edges {
        d[a] += 1;
        d[b] += 1;
    }
    d
}

/// `C_m` by Segner's recurrence.
pub fn catalan_oracle(m: usize) -> BigInt {
    let mut c = vec![BigInt::from(1)];
    for k in 1..=m {
        let mut s = BigInt::from(0);
        for i in 0..k {
            s += &c[i] * &c[k - 1 - i];
        }
        c.push(s);
    }
    c[m].clone()
}

fn flippable(t: &Triangulation, e: EdgeRef) -> bool {
    matches!(t.is_flippable(e), Ok(true))
}

/// Every triangulation reachable from `t` by flips that each add an edge at
/// `p` (the vints flipping down to `(p, t)`), including `t` itself.
pub fn up_flip_closure(t: &Triangulation, p: usize) -> Vec<Triangulation> {
    let mut seen = HashSet::from([t.fingerprint()]);
    let mut out = vec![t.clone()];
    let mut queue = VecDeque::from([t.clone()]);
    while let Some(cur) = queue.pop_front() {
        let link = cur.link(p).expect("p stays interior");
        for k in 0..link.len() {
            let e = EdgeRef::new(link[k], link[(k + 1) % link.len()]);
            if !flippable(&cur, e) {
                continue;
            }
            let next = cur.flip(e).expect("flippable");
            assert_eq!(next.degree(p), cur.degree(p) + 1);
            if seen.insert(next.fingerprint()) {
                out.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    out
}

/// Memo for [`down_flip_targets`], keyed by vint. Valid for one point set.
pub type DownMemo = HashMap<(Fingerprint, usize), HashSet<Fingerprint>>;

/// Distinct 3-vints reached from `(p, t)` by flips that each remove an edge
/// at `p`. Its size is the support of `(p, t)`.
pub fn down_flip_targets(t: &Triangulation, p: usize, memo: &mut DownMemo) -> HashSet<Fingerprint> {
    if t.degree(p) == 3 {
        return HashSet::from([t.fingerprint()]);
    }
    if let Some(s) = memo.get(&(t.fingerprint(), p)) {
        return s.clone();
    }
    let mut acc = HashSet::new();
    for x in t.link(p).expect("p stays interior") {
        let e = EdgeRef::new(p, x);
        if flippable(t, e) {
            let next = t.flip(e).expect("flippable");
            assert_eq!(next.degree(p) + 1, t.degree(p));
            acc.extend(down_flip_targets(&next, p, memo));
        }
    }
    memo.insert((t.fingerprint(), p), acc.clone());
    acc
}

/// One-step down-flips of `(p, t)`.
pub fn down_flips(t: &Triangulation, p: usize) -> Vec<Triangulation> {
    t.link(p)
        .expect("p stays interior")
        .into_iter()
        .map(|x| EdgeRef::new(p, x))
        .filter(|&e| flippable(t, e))
        .map(|e| t.flip(e).expect("flippable"))
        .collect()
}

/// Whether the link of `p` bounds a strictly convex polygon.
pub fn hole_is_convex(t: &Triangulation, p: usize) -> bool {
    let link = t.link(p).expect("interior");
    let pts = t.points();
    let k = link.len();
    (0..k).all(|i| orient(pts[link[i]], pts[link[(i + 1) % k]], pts[link[(i + 2) % k]]) > 0)
}

/// Charge received by the 3-vint `(p, t)` straight from the definition:
/// `Σ (7 - deg u) / supp(u)` over all `u` flipping down to it.
pub fn charge_oracle(t: &Triangulation, p: usize, memo: &mut DownMemo) -> Rational {
    let mut total = Rational::from_integer(BigInt::from(0));
    for u in up_flip_closure(t, p) {
        let supp = down_flip_targets(&u, p, memo).len();
        total += Rational::new(BigInt::from(7 - u.degree(p) as i64), BigInt::from(supp));
    }
    total
}

/// All root-containing node sets of a rooted tree, each as a bitmask over
/// non-root nodes (bit `x - 1` for node `x`).
pub fn brute_rooted_subtrees(t: &RootedTree) -> Vec<u64> {
    let m = t.edge_count();
    assert!(m <= 24, "oracle limited to 24 edges");
    (0u64..1 << m)
        .filter(|&mask| {
            (1..=m).filter(|&x| mask >> (x - 1) & 1 == 1).all(|x| match t.parent(x) {
                Some(0) => true,
                Some(par) => mask >> (par - 1) & 1 == 1,
                None => false,
            })
        })
        .collect()
}

/// Root-containing subtrees with at most `k` edges, by closure check over
/// all small node subsets.
pub fn small_rooted_subtree_sizes(t: &RootedTree, k: usize) -> Vec<usize> {
    let m = t.edge_count();
    let mut out = vec![0];
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(1, Vec::new())];
    while let Some((next, chosen)) = stack.pop() {
        for x in next..=m {
            let mut c = chosen.clone();
            c.push(x);
            if c.iter().all(|&y| t.parent(y).is_some_and(|par| par == 0 || c.contains(&par))) {
                out.push(c.len());
            }
            if c.len() < k {
                stack.push((x + 1, c));
            }
        }
    }
    out
}

/// `S⁺` around `n` random points.
pub fn random_instance(n: usize, seed: u64) -> AugmentedPointSet {
    augment(&gen_random(n, seed).expect("random generation succeeds"))
}

/// Nine points in three nested, alternately rotated triangles; the outer
/// triangle is the frame.
pub fn three_rings() -> AugmentedPointSet {
    let base = [
        // middle ring
        Point::new(0, -200),
        Point::new(173, 100),
        Point::new(-173, 100),
        // inner ring
        Point::new(1, 60),
        Point::new(-53, -31),
        Point::new(52, -29),
    ];
    let frame = [Point::new(-1000, -580), Point::new(1000, -577), Point::new(3, 1155)];
    AugmentedPointSet::with_frame(&base, frame).expect("rings are in general position")
}
