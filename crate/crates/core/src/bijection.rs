//! Decorated trees and the weight-preserving unsorting bijection.
//!
//! A decorated tree is a pair `(T, phi)` where `phi` sends every increasing
//! vertex `v` of `T` into its own hook, at or above `v`. Valid pairs are
//! graded by `(i, j)`: `i` decreasing vertices and `j` increasing vertices
//! with `phi(v) != v` ("displaced"). [`unsort_step`] moves a pair from
//! grade `(i, j)` to `(i + 1, j - 1)` without changing its weight, and
//! [`resort_step`] undoes it. Iterating from an increasing tree ends at a
//! Cayley tree with `phi` the identity.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::poly::Polynomial;
use crate::trees::{enumerate_cayley, LabelSet, RootedTree};
use crate::weights::decorated_weight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("phi is not defined on increasing vertex {0}")]
    PhiMissing(u32),
    #[error("phi is defined on {0}, which is not an increasing vertex")]
    PhiExtra(u32),
    #[error("condition (1) fails at vertex {vertex}: phi({vertex}) = {image} must lie in its hook and be >= {vertex}")]
    Condition1 { vertex: u32, image: u32 },
    #[error("condition (2) fails at vertex {vertex}: it is displaced but {blocker} on its root path is decreasing")]
    Condition2 { vertex: u32, blocker: u32 },
    #[error("condition (3) fails: displaced vertex {displaced} is not below decreasing vertex {decreasing}")]
    Condition3 { displaced: u32, decreasing: u32 },
    #[error("nothing to unsort: no displaced increasing vertex")]
    NothingToUnsort,
    #[error("nothing to resort: no decreasing vertex")]
    NothingToResort,
    #[error("no unique re-attachment point for decreasing vertex {0}")]
    NoResortPair(u32),
}

impl BijectionError {
    /// Which defining condition was violated, if any (domain errors give 0).
    pub fn condition(&self) -> Option<u8> {
        match self {
            BijectionError::PhiMissing(_) | BijectionError::PhiExtra(_) => Some(0),
            BijectionError::Condition1 { .. } => Some(1),
            BijectionError::Condition2 { .. } => Some(2),
            BijectionError::Condition3 { .. } => Some(3),
            _ => None,
        }
    }
}

/// Grade `(i, j)` of a decorated tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LIndex {
    /// `i`: number of decreasing vertices
    pub decreasing: usize,
    /// `j`: number of increasing vertices with `phi(v) != v`
    pub displaced: usize,
}

impl LIndex {
    pub fn new(decreasing: usize, displaced: usize) -> Self {
        LIndex {
            decreasing,
            displaced,
        }
    }
}

impl fmt::Display for LIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.decreasing, self.displaced)
    }
}

/// Checks every defining condition and returns the grade.
pub fn validate(tree: &RootedTree, phi: &BTreeMap<u32, u32>) -> Result<LIndex, BijectionError> {
    let increasing: Vec<u32> = tree.increasing_vertices().collect();
    for &v in &increasing {
        if !phi.contains_key(&v) {
            return Err(BijectionError::PhiMissing(v));
        }
    }
    if let Some(&v) = phi.keys().find(|v| increasing.binary_search(v).is_err()) {
        return Err(BijectionError::PhiExtra(v));
    }

    for &v in &increasing {
        let image = phi[&v];
        if image < v || !tree.labels().contains(image) || !tree.is_ancestor_or_self(v, image) {
            return Err(BijectionError::Condition1 { vertex: v, image });
        }
    }

    let displaced: Vec<u32> = increasing
        .iter()
        .copied()
        .filter(|v| phi[v] != *v)
        .collect();
    for &v in &displaced {
        let path = tree.path_to_root(v);
        // path ends at the root, which is exempt
        for &w in &path[..path.len() - 1] {
            if tree.father(w).is_some_and(|f| f > w) {
                return Err(BijectionError::Condition2 {
                    vertex: v,
                    blocker: w,
                });
            }
        }
    }

    let decreasing: Vec<u32> = tree.decreasing_vertices().collect();
    if let (Some(&lowest_dec), Some(&highest_disp)) = (decreasing.first(), displaced.last()) {
        if highest_disp > lowest_dec {
            return Err(BijectionError::Condition3 {
                displaced: highest_disp,
                decreasing: lowest_dec,
            });
        }
    }

    Ok(LIndex::new(decreasing.len(), displaced.len()))
}

/// A validated `(T, phi)` pair together with its grade.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecoratedTree {
    tree: RootedTree,
    phi: BTreeMap<u32, u32>,
    index: LIndex,
}

impl DecoratedTree {
    pub fn new(tree: RootedTree, phi: BTreeMap<u32, u32>) -> Result<Self, BijectionError> {
        let index = validate(&tree, &phi)?;
        Ok(DecoratedTree { tree, phi, index })
    }

    /// Any tree with `phi` fixing every increasing vertex. Always valid.
    pub fn identity(tree: RootedTree) -> Self {
        let phi = tree.increasing_vertices().map(|v| (v, v)).collect();
        DecoratedTree::new(tree, phi).expect("identity decoration is always valid")
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn phi(&self) -> &BTreeMap<u32, u32> {
        &self.phi
    }

    pub fn index(&self) -> LIndex {
        self.index
    }

    pub fn weight(&self) -> Polynomial {
        decorated_weight(&self.tree, &self.phi)
    }

    pub fn into_parts(self) -> (RootedTree, BTreeMap<u32, u32>) {
        (self.tree, self.phi)
    }

    #[cfg(debug_assertions)]
    fn recheck(self, expected: LIndex) -> Result<Self, BijectionError> {
        let idx = validate(&self.tree, &self.phi)?;
        assert_eq!(idx, expected, "bijection step landed in the wrong grade");
        Ok(self)
    }

    #[cfg(not(debug_assertions))]
    fn recheck(self, _expected: LIndex) -> Result<Self, BijectionError> {
        Ok(self)
    }
}

/// One unsorting step, grade `(i, j)` to `(i + 1, j - 1)`.
///
/// Picks the largest displaced vertex `v`, with `a` its father and `b` the
/// child of `v` whose hook holds `phi(v)`; replaces edges `a-v` and `v-b` by
/// `a-b` and `phi(v)-v`. `v` becomes decreasing and leaves the domain of phi.
pub fn unsort_step(d: &DecoratedTree) -> Result<DecoratedTree, BijectionError> {
    let DecoratedTree { tree, phi, index } = d;
    let mut displaced = phi.iter().filter(|(v, p)| v != p).map(|(&v, _)| v);
    let v = displaced
        .next_back()
        .ok_or(BijectionError::NothingToUnsort)?;
    let target = phi[&v];
    let a = tree.father(v).expect("displaced vertex is not the root");
    let b = *tree
        .path_to_root(target)
        .iter()
        .find(|&&w| tree.father(w) == Some(v))
        .expect("phi(v) lies strictly below v");

    let new_tree = tree.with_fathers(&[(b, a), (v, target)]);
    let mut new_phi = phi.clone();
    new_phi.remove(&v);
    let expected = LIndex::new(index.decreasing + 1, index.displaced - 1);
    DecoratedTree {
        tree: new_tree,
        phi: new_phi,
        index: expected,
    }
    .recheck(expected)
}

/// Inverse of [`unsort_step`], grade `(i, j)` to `(i - 1, j + 1)`.
///
/// The smallest decreasing vertex `v` is re-inserted between the unique
/// adjacent pair `b -> a` on its root path with `a < v < b` and an
/// all-increasing path from `a` to the root.
pub fn resort_step(d: &DecoratedTree) -> Result<DecoratedTree, BijectionError> {
    let DecoratedTree { tree, phi, index } = d;
    let v = tree
        .decreasing_vertices()
        .next()
        .ok_or(BijectionError::NothingToResort)?;
    let target = tree.father(v).expect("decreasing vertex has a father");

    let path = tree.path_to_root(target);
    let all_increasing_above = |w: u32| {
        tree.path_to_root(w)
            .into_iter()
            .all(|u| tree.father(u).is_none_or(|f| f < u))
    };
    let mut pairs = path
        .windows(2)
        .map(|w| (w[0], w[1]))
        .filter(|&(b, a)| a < v && v < b && all_increasing_above(a));
    let (b, a) = pairs.next().ok_or(BijectionError::NoResortPair(v))?;
    if pairs.next().is_some() {
        return Err(BijectionError::NoResortPair(v));
    }

    let new_tree = tree.with_fathers(&[(v, a), (b, v)]);
    let mut new_phi = phi.clone();
    new_phi.insert(v, target);
    let expected = LIndex::new(index.decreasing - 1, index.displaced + 1);
    DecoratedTree {
        tree: new_tree,
        phi: new_phi,
        index: expected,
    }
    .recheck(expected)
}

/// Every intermediate pair from `d` down to its grade `(i, 0)` image,
/// starting with `d` itself.
pub fn unsort_chain(d: &DecoratedTree) -> Result<Vec<DecoratedTree>, BijectionError> {
    let mut chain = vec![d.clone()];
    while chain.last().expect("non-empty").index.displaced > 0 {
        let next = unsort_step(chain.last().expect("non-empty"))?;
        chain.push(next);
    }
    Ok(chain)
}

/// Applies [`unsort_step`] until nothing is displaced.
pub fn unsort_full(d: &DecoratedTree) -> Result<DecoratedTree, BijectionError> {
    let mut cur = d.clone();
    while cur.index.displaced > 0 {
        cur = unsort_step(&cur)?;
    }
    Ok(cur)
}

/// Every valid decorated tree on `labels`, any grade.
///
/// Walks all Cayley trees and, for each, every `phi` meeting condition (1);
/// the remaining conditions filter.
pub fn enumerate_decorated(labels: &LabelSet) -> impl Iterator<Item = DecoratedTree> {
    enumerate_cayley(labels).flat_map(|tree| {
        let hooks = tree.hooks();
        let verts: Vec<u32> = tree.increasing_vertices().collect();
        let options: Vec<Vec<u32>> = verts
            .iter()
            .map(|v| hooks[v].iter().copied().filter(|w| w >= v).collect())
            .collect();
        let mut out = Vec::new();
        let mut pick = vec![0usize; verts.len()];
        loop {
            let phi: BTreeMap<u32, u32> = verts
                .iter()
                .zip(&pick)
                .zip(&options)
                .map(|((&v, &k), opts)| (v, opts[k]))
                .collect();
            if let Ok(d) = DecoratedTree::new(tree.clone(), phi) {
                out.push(d);
            }
            let mut k = pick.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                pick[k] += 1;
                if pick[k] < options[k].len() {
                    break;
                }
                pick[k] = 0;
            }
        }
    })
}

/// Members of grade `(i, j)`.
pub fn enumerate_l(labels: &LabelSet, i: usize, j: usize) -> impl Iterator<Item = DecoratedTree> {
    let want = LIndex::new(i, j);
    enumerate_decorated(labels).filter(move |d| d.index == want)
}
