//! Exact hook-length generating polynomials for unordered increasing trees.
//!
//! The crate computes `Θ_A`, the sum over increasing trees on a label set
//! `A` of a hook weight in the variables `x[i]` and `y[i,j]`, and checks it
//! against its product formula through several independent routes:
//!
//! - [`weights`] and [`trees`]: direct enumeration of increasing trees and
//!   Cayley trees with their weights;
//! - [`bijection`]: the weight-preserving unsorting map from decorated
//!   increasing trees to Cayley trees;
//! - [`matrixtree`]: the determinant of a reduced Kirchhoff matrix;
//! - [`identities`]: the product formula itself, root-edge recursions, the
//!   Abel/Hurwitz/Strehl convolutions, and the leaf-addition recursion.
//!
//! All arithmetic is exact, over [`poly::Polynomial`].

pub mod bijection;
pub mod identities;
pub mod json;
pub mod matrixtree;
pub mod poly;
pub mod trees;
pub mod weights;

pub use bijection::{DecoratedTree, LIndex};
pub use matrixtree::PolyMatrix;
pub use poly::{Monomial, Polynomial, Var};
pub use trees::{LabelSet, RootedTree, VertexClass};
