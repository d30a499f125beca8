//! Weight functions taking trees to polynomials.
//!
//! All weights read edges off the father map with explicit child/father
//! roles, so the edge-direction convention never matters.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::poly::{Monomial, Polynomial, Var};
use crate::trees::RootedTree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("hook weight needs an increasing tree, vertex {0} is decreasing")]
    NotIncreasing(u32),
}

/// Product over non-root `v` of `x[father(v)] * sum_{w in hook(v)} y[v,w]`.
pub fn hook_weight(tree: &RootedTree) -> Result<Polynomial, WeightError> {
    if let Some(v) = tree.decreasing_vertices().next() {
        return Err(WeightError::NotIncreasing(v));
    }
    let hooks = tree.hooks();
    Ok(tree
        .father_map()
        .iter()
        .map(|(&v, &f)| {
            let hook_sum: Polynomial = hooks[&v].iter().map(|&w| Polynomial::y(v, w)).sum();
            &Polynomial::x(f) * &hook_sum
        })
        .product())
}

/// Hook sum at the root: `sum_{j in A} y[m(A), j]`. Independent of the tree
/// shape since the root's hook is the whole label set.
pub fn root_hook_factor(tree: &RootedTree) -> Polynomial {
    let m = tree.root();
    tree.labels().iter().map(|j| Polynomial::y(m, j)).sum()
}

/// `x[v] y[v,f]` for a decreasing vertex, `x[f] y[v,v]` for an increasing one.
pub fn cayley_weight(tree: &RootedTree) -> Polynomial {
    Polynomial::term(
        1,
        Monomial::from_pairs(tree.father_map().iter().flat_map(|(&v, &f)| {
            if v < f {
                [(Var::x(v), 1), (Var::y(v, f), 1)]
            } else {
                [(Var::x(f), 1), (Var::y(v, v), 1)]
            }
        })),
    )
}

/// Weight of a decorated tree: increasing `w` gives `x[f(w)] y[w,phi(w)]`,
/// decreasing `w` gives `x[w] y[w,f(w)]`. `phi` is not validated here.
///
/// # Panics
/// If `phi` is missing an increasing vertex or maps one below itself.
pub fn decorated_weight(tree: &RootedTree, phi: &BTreeMap<u32, u32>) -> Polynomial {
    Polynomial::term(
        1,
        Monomial::from_pairs(tree.father_map().iter().flat_map(|(&w, &f)| {
            if w < f {
                [(Var::x(w), 1), (Var::y(w, f), 1)]
            } else {
                let target = *phi.get(&w).expect("phi defined on every increasing vertex");
                [(Var::x(f), 1), (Var::y(w, target), 1)]
            }
        })),
    )
}
