//! Flip-trees of 3-vints and their root-containing subtrees.
//!
//! Node 0 is the root and stands for the hole triangle `(a, b, c)` of the
//! 3-vint, listed CCW. Every other node is the triangle of `T_v` across a
//! directed edge `(u, w)` that has `p` strictly on its left; its apex `q`
//! lies on the right. Nodes occupy disjoint angular sectors around `p`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::geom::{left_of, Point};
use crate::triangulation::{EdgeRef, Fingerprint, Triangulation};

/// Default bound on the number of root-containing subtrees enumerated.
pub const DEFAULT_SUBTREE_CAP: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlipTreeError {
    #[error("point {point} is not a 3-vint of this triangulation (degree {degree}, interior {interior})")]
    NotA3Vint { point: usize, degree: usize, interior: bool },
    #[error("flip-tree has {count} root-containing subtrees, above the cap of {cap}")]
    CapExceeded { count: u128, cap: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipTreeNode {
    /// CCW triangle. For the root this is the hole `(a, b, c)`; otherwise
    /// `(u, q, w)` for the parent edge `(u, w)`.
    pub triangle: [usize; 3],
    pub apex: Option<usize>,
    pub parent: Option<usize>,
    /// Directed parent edge `(u, w)`, with `p` on its left.
    pub parent_edge: Option<(usize, usize)>,
    /// The parent edge cannot be flipped inside the union of this triangle
    /// and the parent's.
    pub rigid: bool,
    pub level: usize,
    pub children: Vec<usize>,
}

impl FlipTreeNode {
    /// Triangulation edge dual to the tree edge above this node.
    pub fn dual_edge(&self) -> Option<EdgeRef> {
        self.parent_edge.map(|(u, w)| EdgeRef::new(u, w))
    }
}

#[derive(Clone, Debug)]
pub struct FlipTree {
    point: usize,
    triangulation: Triangulation,
    nodes: Vec<FlipTreeNode>,
}

/// Quadrilateral `u, q, w, z` is strictly convex, where `z` lies left of
/// `u -> w` and `q` right of it.
pub fn convex_across(pts: &[Point], z: usize, u: usize, w: usize, q: usize) -> bool {
    left_of(pts[z], pts[u], pts[q]) && left_of(pts[z], pts[q], pts[w])
}

pub fn build_flip_tree(t: &Triangulation, p: usize) -> Result<FlipTree, FlipTreeError> {
    let degree = if p < t.vertex_count() { t.degree(p) } else { 0 };
    let link = t.link(p);
    let interior = link.is_some();
    let Some(link) = link.filter(|l| l.len() == 3) else {
        return Err(FlipTreeError::NotA3Vint { point: p, degree, interior });
    };
    let root = FlipTreeNode {
        triangle: [link[0], link[1], link[2]],
        apex: None,
        parent: None,
        parent_edge: None,
        rigid: false,
        level: 0,
        children: Vec::new(),
    };
    let mut tree = FlipTree { point: p, triangulation: t.clone(), nodes: vec![root] };
    let [a, b, c] = tree.nodes[0].triangle;
    tree.grow(0, [(a, b, c), (b, c, a), (c, a, b)]);
    Ok(tree)
}

impl FlipTree {
    /// Adds children of `node` across each `(u, w)` whose third triangle
    /// vertex is `z`, then recurses.
    fn grow<const K: usize>(&mut self, node: usize, edges: [(usize, usize, usize); K]) {
        let p = self.point;
        let level = self.nodes[node].level + 1;
        for (u, w, z) in edges {
            let Some(q) = self.triangulation.apex_left_of(w, u) else {
                continue;
            };
            let pts = self.triangulation.points();
            if !(left_of(pts[p], pts[u], pts[q]) && left_of(pts[p], pts[q], pts[w])) {
                continue;
            }
            let rigid = !convex_across(pts, z, u, w, q);
            let id = self.nodes.len();
            self.nodes.push(FlipTreeNode {
                triangle: [u, q, w],
                apex: Some(q),
                parent: Some(node),
                parent_edge: Some((u, w)),
                rigid,
                level,
                children: Vec::new(),
            });
            self.nodes[node].children.push(id);
            self.grow(id, [(u, q, w), (q, w, u)]);
        }
    }

    pub fn point(&self) -> usize {
        self.point
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.triangulation
    }

    pub fn fingerprint(&self) -> Fingerprint {
        self.triangulation.fingerprint()
    }

    pub fn nodes(&self) -> &[FlipTreeNode] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &FlipTreeNode {
        &self.nodes[i]
    }

    /// Number of tree edges.
    pub fn edge_count(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Number of root-containing subtrees: `f(x) = Π_children (1 + f(c))`.
    pub fn subtree_count(&self) -> u128 {
        fn f(t: &FlipTree, x: usize) -> u128 {
            t.nodes[x].children.iter().fold(1u128, |acc, &c| acc.saturating_mul(1 + f(t, c)))
        }
        f(self, 0)
    }

    /// All root-containing subtrees, each as the sorted list of its non-root
    /// nodes, in canonical order: by size, then by the sorted list of dual
    /// edges.
    pub fn subtrees(&self, cap: u64) -> Result<Vec<Vec<usize>>, FlipTreeError> {
        let count = self.subtree_count();
        if count > cap as u128 {
            return Err(FlipTreeError::CapExceeded { count, cap });
        }
        let mut out = self.subtrees_below(0);
        for s in &mut out {
            s.sort_unstable();
        }
        let mut keyed: Vec<(usize, Vec<EdgeRef>, Vec<usize>)> = out
            .into_iter()
            .map(|s| {
                let mut duals: Vec<EdgeRef> = s.iter().filter_map(|&n| self.nodes[n].dual_edge()).collect();
                duals.sort_unstable();
                (s.len(), duals, s)
            })
            .collect();
        keyed.sort_unstable();
        Ok(keyed.into_iter().map(|(_, _, s)| s).collect())
    }

    /// Subtrees rooted at `x` (not listing `x` itself).
    fn subtrees_below(&self, x: usize) -> Vec<Vec<usize>> {
        let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
        for &c in &self.nodes[x].children {
            let below = self.subtrees_below(c);
            let mut next = Vec::with_capacity(acc.len() * (1 + below.len()));
            for base in &acc {
                next.push(base.clone());
                for s in &below {
                    let mut v = base.clone();
                    v.push(c);
                    v.extend_from_slice(s);
                    next.push(v);
                }
            }
            acc = next;
        }
        acc
    }

    /// CCW boundary of the union of the root triangle and the triangles of
    /// `subtree` (a root-containing node set).
    pub fn subtree_polygon(&self, subtree: &[usize]) -> Vec<usize> {
        let included = self.membership(subtree);
        let mut out = Vec::with_capacity(3 + subtree.len());
        let [a, b, c] = self.nodes[0].triangle;
        for (u, w) in [(a, b), (b, c), (c, a)] {
            self.expand(0, u, w, &included, &mut out);
        }
        out
    }

    fn expand(&self, node: usize, u: usize, w: usize, included: &[bool], out: &mut Vec<usize>) {
        let child = self.nodes[node]
            .children
            .iter()
            .copied()
            .find(|&c| included[c] && self.nodes[c].parent_edge == Some((u, w)));
        match child {
            Some(c) => {
                let q = self.nodes[c].apex.expect("non-root node has an apex");
                self.expand(c, u, q, included, out);
                self.expand(c, q, w, included, out);
            }
            None => out.push(u),
        }
    }

    fn membership(&self, subtree: &[usize]) -> Vec<bool> {
        let mut included = vec![false; self.nodes.len()];
        included[0] = true;
        for &n in subtree {
            included[n] = true;
        }
        included
    }

    /// The vint a subtree stands for: flip the subtree's dual edges top-down,
    /// each flip joining `p` to the node's apex.
    pub fn realize(&self, subtree: &[usize]) -> Triangulation {
        let mut order: Vec<usize> = subtree.to_vec();
        order.sort_by_key(|&n| (self.nodes[n].level, n));
        let mut t = self.triangulation.clone();
        for n in order {
            let e = self.nodes[n].dual_edge().expect("non-root node has a dual edge");
            t = t.flip(e).expect("flip-tree edges flip top-down");
        }
        t
    }

    /// `true` iff `subtree` is closed under parents.
    pub fn is_root_containing(&self, subtree: &[usize]) -> bool {
        let included = self.membership(subtree);
        subtree.iter().all(|&n| n != 0 && self.nodes[n].parent.is_some_and(|par| included[par]))
    }

    /// Graphviz rendering: nodes labeled by apex (the root by its three
    /// vertices), rigid edges solid and non-rigid edges dashed.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let [a, b, c] = self.nodes[0].triangle;
        let _ = writeln!(s, "graph fliptree {{");
        let _ = writeln!(s, "  label=\"point {} / {}\";", self.point, self.fingerprint());
        let _ = writeln!(s, "  n0 [label=\"{a},{b},{c}\", shape=box];");
        for (i, node) in self.nodes.iter().enumerate().skip(1) {
            let q = node.apex.expect("non-root node has an apex");
            let _ = writeln!(s, "  n{i} [label=\"{q}\"];");
        }
        for (i, node) in self.nodes.iter().enumerate().skip(1) {
            let parent = node.parent.expect("non-root node has a parent");
            let style = if node.rigid { "solid" } else { "dashed" };
            let _ = writeln!(s, "  n{parent} -- n{i} [style={style}];");
        }
        s.push_str("}\n");
        s
    }
}
