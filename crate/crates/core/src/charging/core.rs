//! Rigid cores as abstract rooted trees, their level statistics and the
//! positive and negative contributions of their subtrees.

use num_bigint::BigInt;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::fliptree::FlipTree;
use crate::catalan::binomial;
use crate::number::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoreError {
    #[error("core has an edge at level {0}; the closed form covers levels 1 to 3")]
    HasDeepEdges(usize),
    #[error("node {0} has {1} children, above the fan-out limit")]
    FanOut(usize, usize),
}

/// A rooted tree with node 0 as root; `parent[0]` is `None`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RootedTree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    level: Vec<usize>,
}

impl RootedTree {
    pub fn root_only() -> Self {
        RootedTree { parent: vec![None], children: vec![Vec::new()], level: vec![0] }
    }

    /// Appends a child of `parent` and returns its id.
    pub fn add_child(&mut self, parent: usize) -> usize {
        let id = self.parent.len();
        self.parent.push(Some(parent));
        self.children.push(Vec::new());
        self.level.push(self.level[parent] + 1);
        self.children[parent].push(id);
        id
    }

    /// The complete tree with root fan-out 3, inner fan-out 2, down to
    /// `height`.
    pub fn complete(height: usize) -> Self {
        let mut t = Self::root_only();
        let mut frontier = vec![0];
        for _ in 0..height {
            let mut next = Vec::new();
            for &x in &frontier {
                let k = if x == 0 { 3 } else { 2 };
                for _ in 0..k {
                    next.push(t.add_child(x));
                }
            }
            frontier = next;
        }
        t
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn edge_count(&self) -> usize {
        self.parent.len() - 1
    }

    pub fn parent(&self, x: usize) -> Option<usize> {
        self.parent[x]
    }

    pub fn children(&self, x: usize) -> &[usize] {
        &self.children[x]
    }

    /// Level of the edge above `x`, i.e. the depth of `x`.
    pub fn level(&self, x: usize) -> usize {
        self.level[x]
    }

    pub fn depth(&self) -> usize {
        self.level.iter().copied().max().unwrap_or(0)
    }

    /// Root fan-out at most 3, every other node at most 2.
    pub fn check_fan_out(&self) -> Result<(), CoreError> {
        for (x, ch) in self.children.iter().enumerate() {
            let limit = if x == 0 { 3 } else { 2 };
            if ch.len() > limit {
                return Err(CoreError::FanOut(x, ch.len()));
            }
        }
        Ok(())
    }

    /// `counts[j]` = number of root-containing subtrees with `j` edges.
    pub fn subtree_size_counts(&self) -> Vec<BigInt> {
        fn poly(t: &RootedTree, x: usize) -> Vec<BigInt> {
            let mut acc = vec![BigInt::from(1)];
            for &c in &t.children[x] {
                // factor (1 + z·f_c(z))
                let fc = poly(t, c);
                let mut next = vec![BigInt::from(0); acc.len() + fc.len()];
                for (i, a) in acc.iter().enumerate() {
                    next[i] += a;
                    for (j, b) in fc.iter().enumerate() {
                        next[i + j + 1] += a * b;
                    }
                }
                while next.len() > 1 && next.last().is_some_and(|v| *v == BigInt::from(0)) {
                    next.pop();
                }
                acc = next;
            }
            acc
        }
        poly(self, 0)
    }
}

/// Level statistics of a rigid core.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreStats {
    pub m: usize,
    pub lambda1: usize,
    pub lambda2: usize,
    pub lambda3: usize,
    pub nu2: usize,
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidCore {
    tree: RootedTree,
    /// Flip-tree node id of each core node, when extracted from a flip-tree.
    origin: Option<Vec<usize>>,
}

impl RigidCore {
    pub fn from_tree(tree: RootedTree) -> Self {
        RigidCore { tree, origin: None }
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    /// Flip-tree node ids of the core nodes (root first).
    pub fn flip_tree_nodes(&self) -> Option<&[usize]> {
        self.origin.as_deref()
    }

    pub fn stats(&self) -> CoreStats {
        let t = &self.tree;
        let at = |l: usize| (1..t.node_count()).filter(|&x| t.level(x) == l).count();
        CoreStats {
            m: t.edge_count(),
            lambda1: at(1),
            lambda2: at(2),
            lambda3: at(3),
            nu2: (1..t.node_count()).filter(|&x| t.level(x) == 1 && t.children(x).len() == 2).count(),
            depth: t.depth(),
        }
    }
}

/// The maximal root-containing subtree of `tree` made of rigid edges.
pub fn rigid_core(tree: &FlipTree) -> RigidCore {
    let mut core = RootedTree::root_only();
    let mut origin = vec![0];
    let mut stack = vec![(0usize, 0usize)];
    while let Some((fnode, cnode)) = stack.pop() {
        for &c in &tree.node(fnode).children {
            if tree.node(c).rigid {
                let id = core.add_child(cnode);
                origin.push(c);
                stack.push((c, id));
            }
        }
    }
    RigidCore { tree: core, origin: Some(origin) }
}

/// `4 + binom(λ1, 3) + λ1² + 2λ1 + (λ1 + 1)λ2 + λ3 + ν2`, valid for cores
/// without level-4 edges.
pub fn contr_plus(core: &RigidCore) -> Result<Rational, CoreError> {
    let s = core.stats();
    if s.depth >= 4 {
        return Err(CoreError::HasDeepEdges(s.depth));
    }
    let l1 = s.lambda1 as u64;
    let value = BigInt::from(4u64 + l1 * l1 + 2 * l1 + (l1 + 1) * s.lambda2 as u64 + s.lambda3 as u64 + s.nu2 as u64)
        + BigInt::from(binomial(s.lambda1 as u32, 3));
    Ok(Rational::from_integer(value))
}

/// `Σ (4 - j)` over root-containing subtrees with `j <= 3` edges.
pub fn contr_plus_census(core: &RigidCore) -> Rational {
    census(core, |j| j <= 3)
}

/// `Σ (4 - j)` over root-containing subtrees with `j >= 5` edges.
pub fn contr_minus(core: &RigidCore) -> Rational {
    census(core, |j| j >= 5)
}

fn census(core: &RigidCore, keep: impl Fn(usize) -> bool) -> Rational {
    let counts = core.tree.subtree_size_counts();
    let sum: BigInt =
        counts.iter().enumerate().filter(|(j, _)| keep(*j)).map(|(j, c)| c * BigInt::from(4 - j as i64)).sum();
    Rational::from_integer(sum)
}

/// `(13 + 9m) / 2`.
pub fn contr_plus_bound(m: usize) -> Rational {
    Rational::new(BigInt::from(13 + 9 * m as i64), BigInt::from(2))
}

/// `min{0, 14 - 3m}`.
pub fn contr_minus_bound(m: usize) -> Rational {
    Rational::from_integer(BigInt::from((14 - 3 * m as i64).min(0)))
}

/// Random root-containing subtree of the complete tree of the given height:
/// each edge is kept with probability `keep` when its parent is kept.
pub fn random_core<R: Rng + ?Sized>(rng: &mut R, height: usize, keep: f64) -> RigidCore {
    let mut t = RootedTree::root_only();
    let mut frontier = vec![0];
    for _ in 0..height {
        let mut next = Vec::new();
        for &x in &frontier {
            let k = if x == 0 { 3 } else { 2 };
            for _ in 0..k {
                if rng.random_bool(keep) {
                    next.push(t.add_child(x));
                }
            }
        }
        frontier = next;
    }
    RigidCore::from_tree(t)
}
