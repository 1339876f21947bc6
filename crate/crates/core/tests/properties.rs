use bicay_core::graphalg::{search_automorphisms, Graph};
use bicay_core::pgroup::{oracle, GroupAutomorphism, GroupElement, GroupParams};
use bicay_core::residue::{pow_mod, solve_k};
use proptest::prelude::*;

const PARAMS: [(u64, u32, u32); 6] = [(3, 1, 1), (3, 2, 1), (3, 2, 2), (5, 1, 1), (5, 2, 1), (7, 3, 1)];

fn group() -> impl Strategy<Value = GroupParams> {
    prop::sample::select(&PARAMS[..]).prop_map(|(p, t, s)| GroupParams::new(p, t, s).unwrap())
}

fn elem(h: &GroupParams, r: u64) -> GroupElement {
    h.unrank(r % h.order()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn associative(h in group(), r in any::<[u64; 3]>()) {
        let [x, y, z] = r.map(|r| elem(&h, r));
        prop_assert_eq!(h.multiply(&h.multiply(&x, &y), &z), h.multiply(&x, &h.multiply(&y, &z)));
    }

    #[test]
    fn agrees_with_oracle(h in group(), r in any::<[u64; 2]>()) {
        let [x, y] = r.map(|r| elem(&h, r));
        prop_assert_eq!(h.multiply(&x, &y), oracle::multiply(&h, &x, &y));
    }

    #[test]
    fn power_law(h in group(), r in any::<[u64; 2]>()) {
        let [x, y] = r.map(|r| elem(&h, r));
        let p = h.p() as i64;
        prop_assert_eq!(h.power(&h.multiply(&x, &y), p), h.multiply(&h.power(&x, p), &h.power(&y, p)));
    }

    #[test]
    fn inverse_and_order(h in group(), r in any::<u64>()) {
        let x = elem(&h, r);
        prop_assert!(h.multiply(&x, &h.inverse(&x)).is_identity());
        let o = h.element_order(&x);
        prop_assert!(h.power(&x, o as i64).is_identity());
        prop_assert_eq!(o, h.element_order_naive(&x));
    }

    #[test]
    fn rank_round_trip(h in group(), r in any::<u64>()) {
        let x = elem(&h, r);
        prop_assert_eq!(h.unrank(h.rank(&x)).unwrap(), x);
    }

    #[test]
    fn automorphisms_are_homomorphisms(h in group(), r in any::<[u64; 4]>()) {
        let [u, v, x, y] = r.map(|r| elem(&h, r));
        if let Ok(phi) = GroupAutomorphism::from_images(h, u, v) {
            prop_assert_eq!(phi.apply(&h.multiply(&x, &y)), h.multiply(&phi.apply(&x), &phi.apply(&y)));
            prop_assert_eq!(h.element_order(&phi.apply(&x)), h.element_order(&x));
            prop_assert_eq!(phi.preimage(&phi.apply(&x)), x);
        }
    }

    #[test]
    fn solve_k_roots(pi in 0usize..5, e in 1u32..5) {
        let p = [3u64, 7, 13, 19, 31][pi];
        let m = p.pow(e);
        for k in solve_k(p, e).unwrap() {
            prop_assert_eq!((pow_mod(k, 2, m) + 1 + m - k) % m, 0);
        }
    }

    #[test]
    fn relabelled_graph_keeps_aut_order(seed in any::<u64>()) {
        // Prism over a 6-cycle, relabelled by a random permutation.
        let mut edges = Vec::new();
        for i in 0..6 {
            edges.push((i, (i + 1) % 6));
            edges.push((6 + i, 6 + (i + 1) % 6));
            edges.push((i, 6 + i));
        }
        let g = Graph::from_edges(12, &edges).unwrap();
        let mut images: Vec<usize> = (0..12).collect();
        let mut s = seed;
        for i in (1..12).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            images.swap(i, (s >> 33) as usize % (i + 1));
        }
        let relabelled = g.permuted(&bicay_core::graphalg::Permutation::from_images(images).unwrap());
        prop_assert_eq!(search_automorphisms(&relabelled).order, 24);
    }
}
