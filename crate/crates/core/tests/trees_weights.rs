use std::collections::{BTreeMap, BTreeSet};

use hooksum_core::bijection::enumerate_decorated;
use hooksum_core::trees::{enumerate_cayley, enumerate_increasing};
use hooksum_core::weights::{cayley_weight, decorated_weight, hook_weight};
use hooksum_core::{LabelSet, Polynomial, RootedTree, VertexClass};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Every map from non-root labels to labels that reaches the root
/// without cycling, by brute force.
fn brute_force_trees(labels: &LabelSet) -> BTreeSet<BTreeMap<u32, u32>> {
    let lab = labels.as_slice();
    let root = lab[0];
    let others = &lab[1..];
    let mut out = BTreeSet::new();
    let total = lab.len().pow(others.len() as u32);
    for mut code in 0..total {
        let mut father = BTreeMap::new();
        for &v in others {
            father.insert(v, lab[code % lab.len()]);
            code /= lab.len();
        }
        let reaches_root = others.iter().all(|&v| {
            let mut cur = v;
            for _ in 0..lab.len() {
                if cur == root {
                    return true;
                }
                cur = father[&cur];
            }
            cur == root
        });
        if reaches_root {
            out.insert(father);
        }
    }
    out
}

fn subset_strategy(universe: u32, max_len: usize) -> impl Strategy<Value = LabelSet> {
    prop::collection::btree_set(1..=universe, 1..=max_len).prop_map(|s| LabelSet::new(s).unwrap())
}

#[test]
fn cayley_counts() {
    for n in 1..=7u32 {
        let expected = if n == 1 { 1 } else { (n as usize).pow(n - 2) };
        assert_eq!(
            enumerate_cayley(&LabelSet::range(n)).count(),
            expected,
            "n = {n}"
        );
    }
}

#[test]
fn increasing_counts() {
    let mut fact = 1usize;
    for n in 1..=8u32 {
        assert_eq!(
            enumerate_increasing(&LabelSet::range(n)).count(),
            fact,
            "n = {n}"
        );
        fact *= n as usize;
    }
}

#[test]
fn cayley_matches_brute_force() {
    for labels in [
        LabelSet::range(4),
        LabelSet::range(5),
        LabelSet::new([2, 5, 9, 11]).unwrap(),
    ] {
        let enumerated: BTreeSet<_> = enumerate_cayley(&labels)
            .map(|t| t.father_map().clone())
            .collect();
        assert_eq!(enumerated.len(), enumerate_cayley(&labels).count());
        assert_eq!(enumerated, brute_force_trees(&labels));
    }
}

#[test]
fn increasing_matches_cayley_filter() {
    for n in 1..=6 {
        let labels = LabelSet::range(n);
        let direct: BTreeSet<_> = enumerate_increasing(&labels)
            .map(|t| t.father_map().clone())
            .collect();
        let filtered: BTreeSet<_> = enumerate_cayley(&labels)
            .filter(RootedTree::is_increasing_tree)
            .map(|t| t.father_map().clone())
            .collect();
        assert_eq!(direct, filtered, "n = {n}");
    }
}

#[test]
fn enumeration_is_deterministic() {
    let labels = LabelSet::new([1, 3, 4, 8, 9]).unwrap();
    let a: Vec<_> = enumerate_cayley(&labels).collect();
    let b: Vec<_> = enumerate_cayley(&labels).collect();
    assert_eq!(a, b);
}

proptest! {
    #[test]
    fn prufer_round_trip(labels in subset_strategy(12, 7), seed in any::<u64>()) {
        let n = labels.len();
        if n >= 2 {
            let mut s = seed;
            let code: Vec<u32> = (0..n - 2)
                .map(|_| {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    labels.as_slice()[(s >> 33) as usize % n]
                })
                .collect();
            let t = RootedTree::from_prufer(&labels, &code).unwrap();
            prop_assert_eq!(t.prufer_code(), code);
            prop_assert_eq!(RootedTree::from_prufer(&labels, &t.prufer_code()).unwrap(), t);
        }
    }

    #[test]
    fn hooks_are_laminar(labels in subset_strategy(10, 6), pick in any::<prop::sample::Index>()) {
        let trees: Vec<_> = enumerate_cayley(&labels).collect();
        let t = &trees[pick.index(trees.len())];
        let hooks = t.hooks();
        prop_assert_eq!(hooks[&t.root()].len(), labels.len());
        for (a, ha) in &hooks {
            prop_assert!(ha.contains(a));
            for (b, hb) in &hooks {
                let nested = ha.is_subset(hb) || hb.is_subset(ha);
                prop_assert!(nested || ha.is_disjoint(hb), "hooks of {} and {}", a, b);
            }
        }
        let hook_total: usize = hooks.values().map(BTreeSet::len).sum();
        let depth_total: usize = labels.iter().map(|v| t.depth(v) + 1).sum();
        prop_assert_eq!(hook_total, depth_total);
        for v in labels.iter() {
            let class = t.classify(v).unwrap();
            match t.father(v) {
                None => prop_assert_eq!(class, VertexClass::Root),
                Some(f) if f < v => prop_assert_eq!(class, VertexClass::Increasing),
                Some(_) => prop_assert_eq!(class, VertexClass::Decreasing),
            }
        }
    }

    #[test]
    fn cayley_weight_shape(labels in subset_strategy(10, 6), pick in any::<prop::sample::Index>()) {
        let trees: Vec<_> = enumerate_cayley(&labels).collect();
        let t = &trees[pick.index(trees.len())];
        let w = cayley_weight(t);
        prop_assert_eq!(w.len(), 1);
        let (m, c) = w.leading_term().unwrap();
        prop_assert_eq!(c, &BigInt::from(1));
        prop_assert_eq!(m.degree() as usize, 2 * (labels.len() - 1));
    }
}

#[test]
fn hook_weight_is_sum_of_decorations() {
    for labels in [
        LabelSet::range(4),
        LabelSet::new([1, 3, 6, 7]).unwrap(),
        LabelSet::range(5),
    ] {
        let mut per_tree: BTreeMap<BTreeMap<u32, u32>, Polynomial> = BTreeMap::new();
        for d in enumerate_decorated(&labels) {
            if d.tree().is_increasing_tree() {
                *per_tree.entry(d.tree().father_map().clone()).or_default() +=
                    &decorated_weight(d.tree(), d.phi());
            }
        }
        for t in enumerate_increasing(&labels) {
            let hw = hook_weight(&t).unwrap();
            assert!(hw.is_homogeneous());
            assert_eq!(hw.total_degree().unwrap() as usize, 2 * (labels.len() - 1));
            assert_eq!(per_tree[t.father_map()], hw, "tree {:?}", t.father_map());
        }
    }
}
