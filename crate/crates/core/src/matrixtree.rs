//! Weighted Kirchhoff matrix of the complete graph and its exact determinant.
//!
//! Row `v` of the matrix lists the weight of `v` choosing each possible
//! father, negated, with the row total on the diagonal. Deleting the row and
//! column of the root leaves a minor whose determinant is the sum of
//! `cayley_weight` over all trees rooted at the minimum label.

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::identities::theta_product;
use crate::poly::Polynomial;
use crate::trees::{enumerate_cayley, LabelSet};
use crate::weights::cayley_weight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("need at least {need} labels, got {got}")]
    TooSmall { need: usize, got: usize },
    #[error("matrix of dimension {0} has no principal minor")]
    NoMinor(usize),
}

/// Dense square matrix of polynomials, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    dim: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    /// # Panics
    /// If `rows` is not square.
    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        PolyMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Polynomial) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        PolyMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.dim + c]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Polynomial]> {
        self.entries.chunks(self.dim.max(1)).take(self.dim)
    }

    /// Drops row and column `k`.
    pub fn minor(&self, k: usize) -> PolyMatrix {
        let skip = |i: usize| if i >= k { i + 1 } else { i };
        PolyMatrix::from_fn(self.dim - 1, |r, c| self.get(skip(r), skip(c)).clone())
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Kirchhoff matrix indexed by the sorted labels of `labels`.
///
/// Off-diagonal `(i, j)`: `-x[i] y[i,j]` when `i < j`, `-x[j] y[i,i]` when
/// `i > j`. Diagonal: `y[i,i] * sum_{m<i} x[m] + x[i] * sum_{m>i} y[i,m]`,
/// so every row sums to zero.
pub fn build_kirchhoff(labels: &LabelSet) -> Result<PolyMatrix, MatrixError> {
    if labels.len() < 2 {
        return Err(MatrixError::TooSmall {
            need: 2,
            got: labels.len(),
        });
    }
    let lab = labels.as_slice();
    Ok(PolyMatrix::from_fn(lab.len(), |r, c| {
        let (i, j) = (lab[r], lab[c]);
        if r == c {
            let below: Polynomial = lab[..r].iter().map(|&m| Polynomial::x(m)).sum();
            let above: Polynomial = lab[r + 1..].iter().map(|&m| Polynomial::y(i, m)).sum();
            &Polynomial::y(i, i) * &below + &Polynomial::x(i) * &above
        } else if i < j {
            -(&Polynomial::x(i) * &Polynomial::y(i, j))
        } else {
            -(&Polynomial::x(j) * &Polynomial::y(i, i))
        }
    }))
}

/// Removes the row and column of the root (sorted position 0).
pub fn principal_minor(m: &PolyMatrix) -> Result<PolyMatrix, MatrixError> {
    if m.dim() < 2 {
        return Err(MatrixError::NoMinor(m.dim()));
    }
    Ok(m.minor(0))
}

/// Exact quotient `num / den`, or `None` if `den` does not divide `num`.
///
/// Multivariate division by leading terms under the graded order; for an
/// exact divisor the remainder is zero at every step.
pub(crate) fn exact_div(num: &Polynomial, den: &Polynomial) -> Option<Polynomial> {
    let (dm, dc) = den.leading_term()?;
    let (dm, dc) = (dm.clone(), dc.clone());
    let mut rem = num.clone();
    let mut quot = Polynomial::zero();
    while let Some((lm, lc)) = rem.leading_term() {
        let qm = lm.checked_div(&dm)?;
        let (qc, r) = lc.div_rem(&dc);
        if !r.is_zero() {
            return None;
        }
        for (m, c) in den.terms() {
            rem.add_term(m.mul(&qm), -(c * &qc));
        }
        quot.add_term(qm, qc);
    }
    Some(quot)
}

/// Counters from one determinant evaluation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DetStats {
    /// exact pivot divisions performed (each one verified remainder-free)
    pub exact_divisions: usize,
    /// true when a zero pivot forced cofactor expansion
    pub cofactor_fallback: bool,
}

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// # Panics
/// If a pivot division leaves a remainder, which cannot happen over an
/// integral domain and signals a bug.
pub fn det_exact(m: &PolyMatrix) -> Polynomial {
    det_exact_with_stats(m).0
}

pub fn det_exact_with_stats(m: &PolyMatrix) -> (Polynomial, DetStats) {
    let n = m.dim();
    let mut stats = DetStats::default();
    if n == 0 {
        return (Polynomial::one(), stats);
    }
    let mut a: Vec<Vec<Polynomial>> = m.rows().map(|r| r.to_vec()).collect();
    let mut prev = Polynomial::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            stats.cofactor_fallback = true;
            return (det_cofactor(m), stats);
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let cross = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = if prev.is_one() {
                    cross
                } else {
                    stats.exact_divisions += 1;
                    exact_div(&cross, &prev).unwrap_or_else(|| {
                        panic!("inexact Bareiss division at pivot {k}: ({cross}) / ({prev})")
                    })
                };
            }
            a[i][k] = Polynomial::zero();
        }
        prev = a[k][k].clone();
    }
    (a[n - 1][n - 1].clone(), stats)
}

/// Laplace expansion along the first row.
pub fn det_cofactor(m: &PolyMatrix) -> Polynomial {
    match m.dim() {
        0 => Polynomial::one(),
        1 => m.get(0, 0).clone(),
        n => {
            let mut acc = Polynomial::zero();
            for c in 0..n {
                let e = m.get(0, c);
                if e.is_zero() {
                    continue;
                }
                let sub = PolyMatrix::from_fn(n - 1, |r, k| {
                    m.get(r + 1, if k >= c { k + 1 } else { k }).clone()
                });
                let term = e * &det_cofactor(&sub);
                if c % 2 == 0 {
                    acc += term;
                } else {
                    acc = &acc - &term;
                }
            }
            acc
        }
    }
}

/// Which pair of the three routes to the tree generating polynomial disagree.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixTreeMismatch {
    #[error("tree sum differs from determinant")]
    SumVsDet { sum: Polynomial, det: Polynomial },
    #[error("determinant differs from closed-form product")]
    DetVsProduct {
        det: Polynomial,
        product: Polynomial,
    },
    #[error("{0}")]
    Input(#[from] MatrixError),
}

/// The three polynomials compared by [`matrix_tree_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixTreeRoutes {
    pub tree_sum: Polynomial,
    pub determinant: Polynomial,
    pub product: Polynomial,
    pub stats: DetStats,
}

pub fn matrix_tree_routes(labels: &LabelSet) -> Result<MatrixTreeRoutes, MatrixError> {
    let minor = principal_minor(&build_kirchhoff(labels)?)?;
    let (determinant, stats) = det_exact_with_stats(&minor);
    Ok(MatrixTreeRoutes {
        tree_sum: enumerate_cayley(labels).map(|t| cayley_weight(&t)).sum(),
        determinant,
        product: theta_product(labels),
        stats,
    })
}

/// Sum of `cayley_weight` over all trees, determinant of the reduced
/// Kirchhoff matrix, and the closed-form product must coincide exactly.
pub fn matrix_tree_check(labels: &LabelSet) -> Result<MatrixTreeRoutes, MatrixTreeMismatch> {
    let routes = matrix_tree_routes(labels)?;
    if routes.tree_sum != routes.determinant {
        return Err(MatrixTreeMismatch::SumVsDet {
            sum: routes.tree_sum,
            det: routes.determinant,
        });
    }
    if routes.determinant != routes.product {
        return Err(MatrixTreeMismatch::DetVsProduct {
            det: routes.determinant,
            product: routes.product,
        });
    }
    Ok(routes)
}
