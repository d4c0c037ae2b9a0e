use std::sync::Arc;

use mapgen::graph::{encode_graph6, parse_graph6};
use mapgen::{
    apply_automorphism, canonical_string, compute_automorphism_group, is_canonical, Graph, Map,
    Permutation,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        prop::collection::vec(prop::bool::weighted(0.6), n * (n - 1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
            .prop_filter("connected", |g| g.is_connected())
    })
}

fn random_map(g: &Graph, seed: u64) -> Map {
    let mut rng = StdRng::seed_from_u64(seed);
    let rotations: Vec<Vec<usize>> = (0..g.order())
        .map(|v| {
            let mut r = g.neighbors(v).to_vec();
            r.shuffle(&mut rng);
            r
        })
        .collect();
    Map::from_rotations(Arc::new(g.clone()), &rotations).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph6_round_trip(g in any_graph(20)) {
        let text = encode_graph6(&g);
        prop_assert_eq!(parse_graph6(text.as_bytes()).unwrap(), g);
    }

    #[test]
    fn rotation_code_round_trip(g in connected_graph(8), seed in any::<u64>()) {
        let m = random_map(&g, seed);
        let back = Map::from_rotation_code(&m.to_rotation_code()).unwrap();
        prop_assert_eq!(back.to_rotation_code(), m.to_rotation_code());
        prop_assert_eq!(back.face_count(), m.face_count());
    }

    #[test]
    fn euler_characteristic_is_even(g in connected_graph(8), seed in any::<u64>()) {
        let m = random_map(&g, seed);
        let chi = g.order() as i64 - g.size() as i64 + m.face_count() as i64;
        prop_assert!(chi <= 2 && chi % 2 == 0);
        prop_assert_eq!(m.genus().unwrap() as i64, (2 - chi) / 2);
    }

    #[test]
    fn canonical_string_is_a_class_invariant(g in connected_graph(7), seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let group = compute_automorphism_group(&g).unwrap();
        let m = random_map(&g, seed);
        let s = canonical_string(&m, &group);
        prop_assert_eq!(&canonical_string(&m.mirror(), &group), &s);
        let phi = group.element(pick.index(group.order()));
        let image = apply_automorphism(&m, &phi).unwrap();
        prop_assert_eq!(&canonical_string(&image, &group), &s);
        // the class representative rebuilt from the string is canonical
        let rep = s.to_map(Arc::new(g.clone())).unwrap();
        prop_assert!(is_canonical(&rep, &group));
        prop_assert_eq!(rep.face_count(), m.face_count());
    }

    #[test]
    fn automorphisms_compose(g in connected_graph(7), seed in any::<u64>(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let group = compute_automorphism_group(&g).unwrap();
        let a = group.element(i.index(group.order()));
        let b = group.element(j.index(group.order()));
        let m = random_map(&g, seed);
        let twice = apply_automorphism(&apply_automorphism(&m, &a).unwrap(), &b).unwrap();
        let once = apply_automorphism(&m, &b.compose(&a)).unwrap();
        prop_assert_eq!(twice.to_rotation_code(), once.to_rotation_code());
        let identity = Permutation::identity(g.order());
        prop_assert_eq!(apply_automorphism(&m, &identity).unwrap().to_rotation_code(), m.to_rotation_code());
    }
}
