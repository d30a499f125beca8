//! Closed forms for the hook generating polynomial and the identities that
//! relate them.
//!
//! `Θ_A` is computed two ways: [`theta_sum`] sums hook weights over
//! increasing trees, [`theta_product`] evaluates the product formula. Every
//! check in this module compares two independently computed polynomials and
//! returns both on failure.
//!
//! Convolution checks need two fresh symbols `u` and `v`. They are encoded
//! as `x[M+1]` and `x[M+2]` where `M` is the largest label involved (see
//! [`fresh_pair`]).

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::bijection::{
    enumerate_decorated, resort_step, unsort_full, unsort_step, BijectionError, DecoratedTree,
    LIndex,
};
use crate::matrixtree::{matrix_tree_check, MatrixTreeMismatch};
use crate::poly::{Monomial, Polynomial, Var, VarKind};
use crate::trees::{enumerate_cayley, enumerate_increasing, LabelSet};
use crate::weights::{cayley_weight, hook_weight, root_hook_factor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{check}: {detail}")]
    Mismatch {
        check: &'static str,
        detail: String,
        left: Polynomial,
        right: Polynomial,
    },
    #[error("{check}: {detail}")]
    Broken { check: &'static str, detail: String },
    #[error("bijection: {0}")]
    Bijection(#[from] BijectionError),
    #[error("matrix tree: {0}")]
    MatrixTree(#[from] MatrixTreeMismatch),
}

impl IdentityError {
    /// The two disagreeing sides, when the failure is a mismatch.
    pub fn sides(&self) -> Option<(&Polynomial, &Polynomial)> {
        match self {
            IdentityError::Mismatch { left, right, .. } => Some((left, right)),
            IdentityError::MatrixTree(MatrixTreeMismatch::SumVsDet { sum, det }) => {
                Some((sum, det))
            }
            IdentityError::MatrixTree(MatrixTreeMismatch::DetVsProduct { det, product }) => {
                Some((det, product))
            }
            _ => None,
        }
    }
}

fn expect_equal(
    check: &'static str,
    detail: impl FnOnce() -> String,
    left: Polynomial,
    right: Polynomial,
) -> Result<(), IdentityError> {
    if left == right {
        Ok(())
    } else {
        Err(IdentityError::Mismatch {
            check,
            detail: detail(),
            left,
            right,
        })
    }
}

fn x(i: u32) -> Polynomial {
    Polynomial::x(i)
}

fn y(i: u32, j: u32) -> Polynomial {
    Polynomial::y(i, j)
}

/// `y[i,i] * sum_{j<=i} x[j] + x[i] * sum_{j>i} y[i,j]`, over `labels`.
fn middle_factor(labels: &[u32], i: u32) -> Polynomial {
    let low: Polynomial = labels.iter().filter(|&&j| j <= i).map(|&j| x(j)).sum();
    let high: Polynomial = labels.iter().filter(|&&j| j > i).map(|&j| y(i, j)).sum();
    &y(i, i) * &low + &x(i) * &high
}

/// Product formula over a sorted slice of distinct labels, which may
/// include 0. A single label gives 1.
pub(crate) fn theta_closed(labels: &[u32]) -> Polynomial {
    debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
    if labels.len() <= 1 {
        return Polynomial::one();
    }
    let (m, big_m) = (labels[0], labels[labels.len() - 1]);
    let head = &x(m) * &y(big_m, big_m);
    labels[1..labels.len() - 1]
        .iter()
        .map(|&i| middle_factor(labels, i))
        .fold(head, |acc, f| &acc * &f)
}

/// `x[m] y[M,M] * prod_{i != m, M} (y[i,i] sum_{j<=i} x[j] + x[i] sum_{j>i} y[i,j])`,
/// and 1 for a single label.
pub fn theta_product(labels: &LabelSet) -> Polynomial {
    theta_closed(labels.as_slice())
}

/// Sum of [`hook_weight`] over every increasing tree on `labels`.
pub fn theta_sum(labels: &LabelSet) -> Polynomial {
    enumerate_increasing(labels)
        .map(|t| hook_weight(&t).expect("enumerated trees are increasing"))
        .sum()
}

/// `y[n,n] * prod_{i=1}^{n-1} (y[i,i] sum_{j<=i} x[j] + x[i] sum_{j>i} y[i,j])`:
/// the variant that also carries the root's hook sum.
pub fn theta_n(n: u32) -> Result<Polynomial, IdentityError> {
    if n == 0 {
        return Err(IdentityError::InvalidParameter(
            "n must be at least 1".into(),
        ));
    }
    let labels: Vec<u32> = (1..=n).collect();
    Ok((1..n)
        .map(|i| middle_factor(&labels, i))
        .fold(y(n, n), |acc, f| &acc * &f))
}

/// Combinatorial side of [`theta_n`]: every vertex, root included,
/// contributes its hook sum.
pub fn theta_n_sum(n: u32) -> Result<Polynomial, IdentityError> {
    if n == 0 {
        return Err(IdentityError::InvalidParameter(
            "n must be at least 1".into(),
        ));
    }
    Ok(enumerate_increasing(&LabelSet::range(n))
        .map(|t| &root_hook_factor(&t) * &hook_weight(&t).expect("increasing"))
        .sum())
}

/// [`theta_product`] times the root's hook sum `sum_{j in A} y[m(A),j]`.
/// On `{1..n}` this is [`theta_n`].
pub fn theta_with_root_hook(labels: &LabelSet) -> Polynomial {
    let m = labels.min_label();
    let root: Polynomial = labels.iter().map(|j| y(m, j)).sum();
    &root * &theta_product(labels)
}

fn need_two(labels: &LabelSet) -> Result<(), IdentityError> {
    if labels.len() < 2 {
        Err(IdentityError::InvalidParameter(format!(
            "label set {labels} needs at least two labels"
        )))
    } else {
        Ok(())
    }
}

/// Generating polynomial of trees with a single root edge, closed form:
/// the product formula with `m(A)` removed from both inner sums.
pub fn r_closed(labels: &LabelSet) -> Result<Polynomial, IdentityError> {
    need_two(labels)?;
    let lab = labels.as_slice();
    let (m, big_m) = (labels.min_label(), labels.max_label());
    let rest = &lab[1..];
    let head = &x(m) * &y(big_m, big_m);
    Ok(lab[1..lab.len() - 1]
        .iter()
        .map(|&i| middle_factor(rest, i))
        .fold(head, |acc, f| &acc * &f))
}

/// `x[m] * (d/dx[m] p)` evaluated at `x[m] = 0`: keeps exactly the terms
/// linear in `x[m]`.
pub fn root_edge_part(p: &Polynomial, m: u32) -> Polynomial {
    let xm = Var::x(m);
    let d = p.derivative(xm);
    let at_zero = d.substitute(&BTreeMap::from([(xm, Polynomial::zero())]));
    &x(m) * &at_zero
}

/// `r_A` recomputed from the derivative of the product formula.
pub fn r_via_derivative(labels: &LabelSet) -> Result<Polynomial, IdentityError> {
    need_two(labels)?;
    Ok(root_edge_part(&theta_product(labels), labels.min_label()))
}

/// `Γ_A`: the single-root-edge part of `Θ_A`, via the derivative.
pub fn gamma(labels: &LabelSet) -> Result<Polynomial, IdentityError> {
    need_two(labels)?;
    Ok(root_edge_part(&theta_product(labels), labels.min_label()))
}

/// All splits `A = B ⊔ C`, as sorted vectors, in bitmask order.
fn splits(items: &[u32]) -> impl Iterator<Item = (Vec<u32>, Vec<u32>)> + '_ {
    (0u64..1 << items.len()).map(move |mask| {
        let (mut b, mut c) = (Vec::new(), Vec::new());
        for (k, &v) in items.iter().enumerate() {
            if mask >> k & 1 == 1 {
                b.push(v);
            } else {
                c.push(v);
            }
        }
        (b, c)
    })
}

fn label_set(v: &[u32]) -> LabelSet {
    LabelSet::new(v.iter().copied()).expect("non-empty positive labels")
}

/// Root-edge recursion: splitting off the subtree of the root that holds
/// `a`,
///
/// `Θ_A = sum_{B ⊔ C = A, m(A) in C, a in B} x[m(A)] (sum_{j in B} y[m(B),j]) Θ_B Θ_C`.
///
/// Checked with `Θ` from the product formula, from the tree sum, and in the
/// intermediate form `t_A = sum r_{B ∪ m(A)} t_C`.
pub fn recursion_check(labels: &LabelSet, a: u32) -> Result<(), IdentityError> {
    need_two(labels)?;
    let m = labels.min_label();
    if a == m || !labels.contains(a) {
        return Err(IdentityError::InvalidParameter(format!(
            "a = {a} must be a non-minimal element of {labels}"
        )));
    }
    let others: Vec<u32> = labels.iter().filter(|&v| v != m && v != a).collect();

    let mut via_product = Polynomial::zero();
    let mut via_sum = Polynomial::zero();
    let mut via_r = Polynomial::zero();
    for (mut b, mut c) in splits(&others) {
        b.push(a);
        b.sort_unstable();
        c.insert(0, m);
        let (bs, cs) = (label_set(&b), label_set(&c));
        let edge = &x(m) * &b.iter().map(|&j| y(b[0], j)).sum::<Polynomial>();
        via_product += &(&edge * &theta_product(&bs)) * &theta_product(&cs);
        via_sum += &(&edge * &theta_sum(&bs)) * &theta_sum(&cs);
        let mut bm = b.clone();
        bm.insert(0, m);
        via_r += &r_closed(&label_set(&bm))? * &theta_product(&cs);
    }
    expect_equal(
        "recursion",
        || format!("product formula on {labels}, a = {a}"),
        theta_product(labels),
        via_product,
    )?;
    expect_equal(
        "recursion",
        || format!("tree sums on {labels}, a = {a}"),
        theta_sum(labels),
        via_sum,
    )?;
    expect_equal(
        "recursion",
        || format!("single-edge form on {labels}, a = {a}"),
        theta_product(labels),
        via_r,
    )
}

/// Fresh symbols `(u, v)` as `x[M+1]`, `x[M+2]` for the largest label `M`.
pub fn fresh_pair(labels: &LabelSet) -> (Var, Var) {
    let top = labels.max_label();
    (Var::x(top + 1), Var::x(top + 2))
}

fn with_zero(labels: &[u32]) -> Vec<u32> {
    let mut v = Vec::with_capacity(labels.len() + 1);
    v.push(0);
    v.extend_from_slice(labels);
    v
}

/// `Θ_{B ∪ {0}}` with `x[0]` replaced by `z`.
pub fn theta_rooted_at_zero(b: &[u32], z: &Polynomial) -> Polynomial {
    theta_closed(&with_zero(b)).substitute(&BTreeMap::from([(Var::x(0), z.clone())]))
}

/// The multivariate Abel polynomial
/// `w_B(z) = z * prod_{i in B, i != M(B)} (z + sum_{j<=i} x[j] + sum_{j>i} y[i,j])`,
/// with `w_∅ = 1`.
pub fn strehl_w(b: &[u32], z: &Polynomial) -> Polynomial {
    if b.is_empty() {
        return Polynomial::one();
    }
    b[..b.len() - 1]
        .iter()
        .map(|&i| {
            let low: Polynomial = b.iter().filter(|&&j| j <= i).map(|&j| x(j)).sum();
            let high: Polynomial = b.iter().filter(|&&j| j > i).map(|&j| y(i, j)).sum();
            z + &(low + high)
        })
        .fold(z.clone(), |acc, f| &acc * &f)
}

/// Specialization `y[i,i] -> 1`, `y[i,j] -> y[i,j] / x[i]` (`i < j`),
/// carried out monomial by monomial. Fails if some `x[i]` exponent would
/// go negative, i.e. the image is not a polynomial.
pub fn strehl_bridge(p: &Polynomial) -> Result<Polynomial, IdentityError> {
    let mut out = Polynomial::zero();
    for (m, c) in p.terms() {
        let mut exps: BTreeMap<Var, i64> = BTreeMap::new();
        for (v, e) in m.iter() {
            if v.kind() == VarKind::Y && v.i() == v.j() {
                continue;
            }
            *exps.entry(v).or_insert(0) += i64::from(e);
            if v.kind() == VarKind::Y {
                *exps.entry(Var::x(v.i())).or_insert(0) -= i64::from(e);
            }
        }
        if let Some((v, _)) = exps.iter().find(|(_, &e)| e < 0) {
            return Err(IdentityError::InvalidParameter(format!(
                "specialization is not polynomial: {v} exponent negative in {m}"
            )));
        }
        let mono = Monomial::from_pairs(exps.into_iter().map(|(v, e)| (v, e as u32)));
        out.add_term(mono, c.clone());
    }
    Ok(out)
}

/// The bridge from the rooted-at-zero product formula to the Abel
/// polynomial: `strehl_bridge(Θ_{B ∪ {0}}|_{x[0] = z}) = w_B(z)`.
pub fn strehl_bridge_check(labels: &LabelSet) -> Result<(), IdentityError> {
    let (z, _) = fresh_pair(labels);
    let z = Polynomial::var(z);
    for (b, _) in splits(labels.as_slice()) {
        let bridged = strehl_bridge(&theta_rooted_at_zero(&b, &z))?;
        expect_equal(
            "strehl-bridge",
            || format!("B = {b:?}"),
            bridged,
            strehl_w(&b, &z),
        )?;
    }
    Ok(())
}

/// Binomial-type convolution of the rooted-at-zero product formula,
///
/// `Θ_{A∪0}|_{x0=u+v} = sum_{B ⊔ C = A} Θ_{B∪0}|_{x0=u} Θ_{C∪0}|_{x0=v}`,
///
/// together with the same convolution for `w_A` and the bridge between them.
pub fn strehl_convolution_check(labels: &LabelSet) -> Result<(), IdentityError> {
    let (u, v) = fresh_pair(labels);
    let (u, v) = (Polynomial::var(u), Polynomial::var(v));
    let uv = &u + &v;
    let lab = labels.as_slice();

    let lhs = theta_rooted_at_zero(lab, &uv);
    let rhs: Polynomial = splits(lab)
        .map(|(b, c)| &theta_rooted_at_zero(&b, &u) * &theta_rooted_at_zero(&c, &v))
        .sum();
    expect_equal(
        "strehl",
        || format!("theta convolution on {labels}"),
        lhs,
        rhs,
    )?;

    let lhs = strehl_w(lab, &uv);
    let rhs: Polynomial = splits(lab)
        .map(|(b, c)| &strehl_w(&b, &u) * &strehl_w(&c, &v))
        .sum();
    expect_equal("strehl", || format!("w convolution on {labels}"), lhs, rhs)?;

    strehl_bridge_check(labels)
}

/// `w_B(z)` after `y[i,j] -> x[j]`, obtained from the product formula
/// through [`strehl_bridge`].
pub fn hurwitz_w(b: &[u32], z: &Polynomial) -> Result<Polynomial, IdentityError> {
    let bridged = strehl_bridge(&theta_rooted_at_zero(b, z))?;
    let to_x: BTreeMap<Var, Polynomial> = bridged
        .variables()
        .into_iter()
        .filter(|v| v.kind() == VarKind::Y)
        .map(|v| (v, x(v.j())))
        .collect();
    Ok(bridged.substitute(&to_x))
}

/// `z (z + sum_{i in B} x[i])^{|B|-1}`, and 1 for empty `B`.
pub fn hurwitz_display(b: &[u32], z: &Polynomial) -> Polynomial {
    if b.is_empty() {
        return Polynomial::one();
    }
    let s: Polynomial = b.iter().map(|&i| x(i)).sum();
    z * &(z + &s).pow(b.len() as u32 - 1)
}

/// Hurwitz's identity
///
/// `(u+v)(u+v+sum_A x)^{|A|-1} = sum_{B ⊔ C = A} u(u+sum_B x)^{|B|-1} v(v+sum_C x)^{|C|-1}`,
///
/// with each factor computed from the specialized product formula and
/// compared to the display form.
pub fn hurwitz_check(labels: &LabelSet) -> Result<(), IdentityError> {
    let (u, v) = fresh_pair(labels);
    let (u, v) = (Polynomial::var(u), Polynomial::var(v));
    let uv = &u + &v;
    let lab = labels.as_slice();

    for (b, _) in splits(lab) {
        expect_equal(
            "hurwitz",
            || format!("specialized family vs display for B = {b:?}"),
            hurwitz_w(&b, &u)?,
            hurwitz_display(&b, &u),
        )?;
    }
    let lhs = hurwitz_w(lab, &uv)?;
    expect_equal(
        "hurwitz",
        || format!("left side on {labels}"),
        lhs.clone(),
        hurwitz_display(lab, &uv),
    )?;
    let mut rhs = Polynomial::zero();
    for (b, c) in splits(lab) {
        rhs += &hurwitz_w(&b, &u)? * &hurwitz_w(&c, &v)?;
    }
    expect_equal("hurwitz", || format!("convolution on {labels}"), lhs, rhs)
}

/// `z (z + k)^{k-1}`, with the empty-set value 1 at `k = 0`.
fn abel_factor(z: &BigInt, k: u32) -> BigInt {
    if k == 0 {
        BigInt::one()
    } else {
        z * num_traits::pow(z + BigInt::from(k), k as usize - 1)
    }
}

/// Both sides of Abel's identity
/// `(u+v)(u+v+n)^{n-1} = sum_k C(n,k) u(u+k)^{k-1} v(v+n-k)^{n-k-1}`.
pub fn abel_sides(n: u32, u: &BigInt, v: &BigInt) -> (BigInt, BigInt) {
    let lhs = abel_factor(&(u + v), n);
    let mut rhs = BigInt::zero();
    let mut binom = BigInt::one();
    for k in 0..=n {
        rhs += &binom * abel_factor(u, k) * abel_factor(v, n - k);
        binom = binom * BigInt::from(n - k) / BigInt::from(k + 1);
    }
    (lhs, rhs)
}

pub fn abel_check(n: u32, u: &BigInt, v: &BigInt) -> Result<(), IdentityError> {
    if n == 0 {
        return Err(IdentityError::InvalidParameter(
            "n must be at least 1".into(),
        ));
    }
    let (lhs, rhs) = abel_sides(n, u, v);
    expect_equal(
        "abel",
        || format!("n = {n}, u = {u}, v = {v}"),
        Polynomial::constant(lhs),
        Polynomial::constant(rhs),
    )
}

/// Leaf-addition recursion `Θ_{n+1} = y[n+1,n+1] sum_{i=1}^n x[i] ψ^i_{n+1} Θ_n`.
pub fn psi_recursion(n: u32) -> Result<Polynomial, IdentityError> {
    let base = theta_n(n)?;
    let mut acc = Polynomial::zero();
    for i in 1..=n {
        let moved = base
            .psi_map(i, n + 1)
            .map_err(|e| IdentityError::InvalidParameter(e.to_string()))?;
        acc += &x(i) * &moved;
    }
    Ok(&y(n + 1, n + 1) * &acc)
}

pub fn psi_recursion_check(n: u32) -> Result<(), IdentityError> {
    expect_equal(
        "psi",
        || format!("n = {n}"),
        psi_recursion(n)?,
        theta_n(n + 1)?,
    )
}

/// Tree sum against product formula, plus the Cayley-tree sum and the
/// determinant route when there are at least two labels.
pub fn theorem11_check(labels: &LabelSet) -> Result<(), IdentityError> {
    let product = theta_product(labels);
    expect_equal(
        "thm11",
        || format!("tree sum vs product on {labels}"),
        theta_sum(labels),
        product.clone(),
    )?;
    let cayley: Polynomial = enumerate_cayley(labels).map(|t| cayley_weight(&t)).sum();
    expect_equal(
        "thm11",
        || format!("Cayley sum vs product on {labels}"),
        cayley,
        product,
    )?;
    if labels.len() >= 2 {
        matrix_tree_check(labels)?;
    }
    Ok(())
}

/// Tallies from an exhaustive run of [`bijection_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionSummary {
    /// number of members per grade `(i, j)`
    pub grades: BTreeMap<LIndex, usize>,
    pub unsort_steps: usize,
    pub resort_steps: usize,
}

/// Exhaustive check of the unsorting bijection on one label set: round
/// trips in both directions, exact weight preservation, equal cardinality
/// of adjacent grades, and agreement of the grade-`(0, *)` total, the
/// grade-`(*, 0)` total, the Cayley sum and the hook-weight sum.
pub fn bijection_check(labels: &LabelSet) -> Result<BijectionSummary, IdentityError> {
    let all: Vec<DecoratedTree> = enumerate_decorated(labels).collect();
    let mut grades: BTreeMap<LIndex, usize> = BTreeMap::new();
    let (mut unsort_steps, mut resort_steps) = (0, 0);
    let mut from_increasing = Polynomial::zero();
    let mut to_cayley = Polynomial::zero();
    let mut images = BTreeSet::new();

    for d in &all {
        let idx = d.index();
        *grades.entry(idx).or_insert(0) += 1;
        if idx.displaced > 0 {
            let e = unsort_step(d)?;
            unsort_steps += 1;
            expect_equal(
                "bijection",
                || format!("weight preserved by unsorting {d:?}"),
                d.weight(),
                e.weight(),
            )?;
            if e.index() != LIndex::new(idx.decreasing + 1, idx.displaced - 1) {
                return Err(IdentityError::Broken {
                    check: "bijection",
                    detail: format!("unsort_step sent grade {idx} to {}", e.index()),
                });
            }
            if resort_step(&e)? != *d {
                return Err(IdentityError::Broken {
                    check: "bijection",
                    detail: format!("resort does not invert unsort on {d:?}"),
                });
            }
        }
        if idx.decreasing > 0 {
            let r = resort_step(d)?;
            resort_steps += 1;
            if unsort_step(&r)? != *d {
                return Err(IdentityError::Broken {
                    check: "bijection",
                    detail: format!("unsort does not invert resort on {d:?}"),
                });
            }
        }
        if idx.decreasing == 0 {
            from_increasing += d.weight();
            images.insert(unsort_full(d)?);
        }
        if idx.displaced == 0 {
            to_cayley += d.weight();
        }
    }

    for (&idx, &count) in &grades {
        if idx.displaced > 0 {
            let next = LIndex::new(idx.decreasing + 1, idx.displaced - 1);
            let other = grades.get(&next).copied().unwrap_or(0);
            if other != count {
                return Err(IdentityError::Broken {
                    check: "bijection",
                    detail: format!("grade {idx} has {count} members but {next} has {other}"),
                });
            }
        }
    }

    let from_count: usize = grades
        .iter()
        .filter(|(i, _)| i.decreasing == 0)
        .map(|(_, c)| c)
        .sum();
    let cayley_count = enumerate_cayley(labels).count();
    if images.len() != from_count || images.len() != cayley_count {
        return Err(IdentityError::Broken {
                    check: "bijection",
                    detail: format!(
            "unsorting chain is not a bijection: {from_count} sources, {} images, {cayley_count} Cayley trees",
            images.len()
        ),
});
    }

    expect_equal(
        "bijection",
        || format!("grade (0,*) total vs grade (*,0) total on {labels}"),
        from_increasing.clone(),
        to_cayley.clone(),
    )?;
    expect_equal(
        "bijection",
        || format!("grade (*,0) total vs Cayley sum on {labels}"),
        to_cayley,
        enumerate_cayley(labels).map(|t| cayley_weight(&t)).sum(),
    )?;
    expect_equal(
        "bijection",
        || format!("grade (0,*) total vs hook-weight sum on {labels}"),
        from_increasing,
        theta_sum(labels),
    )?;

    Ok(BijectionSummary {
        grades,
        unsort_steps,
        resort_steps,
    })
}
