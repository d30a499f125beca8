use std::collections::BTreeMap;

use hooksum_core::identities::{
    abel_check, abel_sides, gamma, hurwitz_check, psi_recursion, psi_recursion_check, r_closed,
    r_via_derivative, recursion_check, strehl_bridge, strehl_convolution_check, strehl_w,
    theorem11_check, theta_n, theta_n_sum, theta_product, theta_rooted_at_zero, theta_sum,
    IdentityError,
};
use hooksum_core::trees::enumerate_increasing;
use hooksum_core::weights::hook_weight;
use hooksum_core::{LabelSet, Polynomial, Var};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn subsets(universe: u32, min_len: usize, max_len: usize) -> Vec<LabelSet> {
    (1u32..1 << universe)
        .filter(|m| (min_len..=max_len).contains(&(m.count_ones() as usize)))
        .map(|m| LabelSet::new((1..=universe).filter(|k| m >> (k - 1) & 1 == 1)).unwrap())
        .collect()
}

fn single_root_edge_sum(labels: &LabelSet) -> Polynomial {
    enumerate_increasing(labels)
        .filter(|t| t.root_degree() == 1)
        .map(|t| hook_weight(&t).unwrap())
        .sum()
}

#[test]
fn theorem11_on_sampled_subsets() {
    for labels in subsets(7, 1, 5) {
        theorem11_check(&labels).unwrap();
    }
    theorem11_check(&LabelSet::new([2, 4, 7, 8, 11]).unwrap()).unwrap();
}

#[test]
fn single_root_edge_part_three_ways() {
    for labels in subsets(6, 2, 5) {
        let oracle = single_root_edge_sum(&labels);
        assert_eq!(r_closed(&labels).unwrap(), oracle, "{labels}");
        assert_eq!(r_via_derivative(&labels).unwrap(), oracle, "{labels}");
        assert_eq!(gamma(&labels).unwrap(), oracle, "{labels}");
    }
    for labels in [
        LabelSet::range(6),
        LabelSet::new([1, 3, 4, 6, 8, 9]).unwrap(),
    ] {
        assert_eq!(
            r_closed(&labels).unwrap(),
            r_via_derivative(&labels).unwrap()
        );
    }
}

#[test]
fn root_edge_recursion() {
    for labels in subsets(6, 2, 5) {
        for a in labels.iter().skip(1) {
            recursion_check(&labels, a).unwrap();
        }
    }
    let labels = LabelSet::range(3);
    assert!(matches!(
        recursion_check(&labels, 1),
        Err(IdentityError::InvalidParameter(_))
    ));
}

#[test]
fn strehl_and_hurwitz() {
    for labels in subsets(5, 1, 4) {
        strehl_convolution_check(&labels).unwrap();
    }
    for labels in subsets(5, 1, 3) {
        hurwitz_check(&labels).unwrap();
    }
}

#[test]
fn bridge_recovers_w_from_theta() {
    let z = Polynomial::x(20);
    for labels in subsets(5, 1, 4) {
        let b = labels.as_slice();
        let bridged = strehl_bridge(&theta_rooted_at_zero(b, &z)).unwrap();
        assert_eq!(bridged, strehl_w(b, &z), "{labels}");
    }
}

#[test]
fn abel_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for n in 1..=8 {
        for _ in 0..100 {
            let u = BigInt::from(rng.gen_range(-50i64..=50));
            let v = BigInt::from(rng.gen_range(-50i64..=50));
            abel_check(n, &u, &v).unwrap();
        }
    }
    let (l, r) = abel_sides(3, &BigInt::from(2), &BigInt::from(1));
    assert_eq!((l, r), (BigInt::from(108), BigInt::from(108)));
}

#[test]
fn abel_matches_w_at_all_ones() {
    let z = Polynomial::x(30);
    for n in 1..=5u32 {
        let b: Vec<u32> = (1..=n).collect();
        let w = strehl_w(&b, &z);
        for zval in [-3i64, 1, 4] {
            let vals: BTreeMap<Var, BigInt> = w
                .variables()
                .into_iter()
                .map(|v| (v, BigInt::from(if v == Var::x(30) { zval } else { 1 })))
                .collect();
            let at = w.eval(&vals).unwrap();
            let zb = BigInt::from(zval);
            let expected = &zb * num_traits::pow(&zb + BigInt::from(n), n as usize - 1);
            assert_eq!(at, expected, "n = {n}, z = {zval}");
        }
    }
}

#[test]
fn psi_recursion_rebuilds_theta_n() {
    for n in 1..=6 {
        psi_recursion_check(n).unwrap();
        assert_eq!(psi_recursion(n).unwrap(), theta_n(n + 1).unwrap());
    }
    assert_eq!(theta_n(1).unwrap(), Polynomial::y(1, 1));
    let two =
        &(&Polynomial::x(1) * &(Polynomial::y(1, 1) + Polynomial::y(1, 2))) * &Polynomial::y(2, 2);
    assert_eq!(theta_n(2).unwrap(), two);
    for n in 1..=5 {
        assert_eq!(theta_n(n).unwrap(), theta_n_sum(n).unwrap());
    }
}

#[test]
fn theta_sum_is_product_on_six_labels() {
    for labels in [
        LabelSet::range(6),
        LabelSet::new([1, 2, 5, 6, 8, 9]).unwrap(),
    ] {
        assert_eq!(theta_sum(&labels), theta_product(&labels));
    }
}
