use fanramsey::graph::{random_graph, Graph, VertexSet};
use fanramsey::graph6::{parse_graph6, write_graph6};
use fanramsey::matching::{max_matching, max_matching_within, neighborhood_structure};
use fanramsey::trees::{
    balanced_separator, degree_two_set, min_degree_embed, prufer_decode, prufer_encode,
    random_tree, random_unicyclic, unicyclic_normalize,
};
use fanramsey::witness::{designated_split, find_witness_tree, WitnessJson};
use fanramsey::{check_embedding, Embedding};
use proptest::prelude::*;

fn graph_strategy(max: usize) -> impl Strategy<Value = Graph> {
    (1..=max, 0.0..=1.0f64, any::<u64>()).prop_map(|(n, p, s)| random_graph(n, p, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn graph6_round_trips(g in graph_strategy(80)) {
        let text = write_graph6(&g);
        prop_assert!(text.bytes().all(|b| (63..=126).contains(&b)));
        prop_assert_eq!(parse_graph6(&text).unwrap(), g);
    }

    #[test]
    fn degrees_sum_to_twice_the_edges(g in graph_strategy(60)) {
        let sum: usize = (0..g.order()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(sum, 2 * g.edge_count());
        let c = g.complement();
        for v in 0..g.order() {
            prop_assert_eq!(g.degree(v) + c.degree(v), g.order() - 1);
        }
    }

    #[test]
    fn prufer_round_trips(n in 2usize..200, seed in any::<u64>()) {
        let t = random_tree(n, seed);
        prop_assert_eq!(t.edges().count(), n - 1);
        prop_assert_eq!(prufer_decode(&prufer_encode(&t)).unwrap(), t);
    }

    #[test]
    fn bipartition_is_proper(n in 1usize..200, seed in any::<u64>()) {
        let t = random_tree(n, seed);
        prop_assert!(t.a_side().count() >= t.b_side().count());
        prop_assert_eq!(t.a_side().count() + t.b_side().count(), n);
        for (u, v) in t.edges() {
            prop_assert_ne!(t.in_a(u), t.in_a(v));
        }
    }

    #[test]
    fn degree_two_set_invariants(n in 2usize..300, seed in any::<u64>(), with_f in any::<bool>()) {
        let t = random_tree(n, seed);
        let mut f = VertexSet::new(n);
        if with_f {
            let (a, b) = t.edges().next().unwrap();
            f.insert(a);
            f.insert(b);
        }
        let d = degree_two_set(&t, &f);
        prop_assert!(d.verify(&t).is_ok(), "{:?}", d.verify(&t));
    }

    #[test]
    fn separator_invariants(n in 3usize..300, seed in any::<u64>()) {
        let t = random_tree(n, seed);
        let s = balanced_separator(&t).unwrap();
        prop_assert!(s.verify(&t).is_ok(), "{:?}", s.verify(&t));
    }

    #[test]
    fn matching_meets_its_certificate(g in graph_strategy(40)) {
        let (m, tb) = max_matching(&g);
        let all = g.vertices();
        prop_assert!(m.verify(&g, &all).is_ok());
        prop_assert_eq!(tb.upper_bound(&g, &all).unwrap(), m.size());
        prop_assert!(2 * m.size() <= g.order());
    }

    #[test]
    fn restricted_matching_stays_inside(g in graph_strategy(40), mask in any::<u64>()) {
        let s = VertexSet::from_iter(g.order(), (0..g.order()).filter(|&v| mask >> (v % 64) & 1 == 1));
        let (m, tb) = max_matching_within(&g, &s);
        prop_assert!(m.verify(&g, &s).is_ok());
        prop_assert_eq!(tb.upper_bound(&g, &s).unwrap(), m.size());
    }

    #[test]
    fn neighborhood_structure_invariants(g in graph_strategy(50), v in any::<prop::sample::Index>(), extra in 1usize..4) {
        let v = v.index(g.order());
        let s = g.vertices();
        let nb = g.neighbors_in(v, &s);
        let m = max_matching_within(&g, &nb).0.size() + extra;
        let ns = neighborhood_structure(&g, v, &s, m).unwrap();
        prop_assert!(ns.verify(&g, m).is_ok(), "{:?}", ns.verify(&g, m));
        // At the matching number itself the fan is found.
        if m > extra {
            prop_assert!(neighborhood_structure(&g, v, &s, m - extra).is_err());
        }
    }

    #[test]
    fn min_degree_embedding_is_valid(n in 2usize..30, seed in any::<u64>(), w in any::<prop::sample::Index>()) {
        let t = random_tree(n, seed);
        let host = Graph::complete(n + 3);
        let e = min_degree_embed(&t, &host, 0, w.index(n + 3)).unwrap();
        prop_assert!(check_embedding(&t.to_graph(), &host, &e).is_ok());
    }

    #[test]
    fn unicyclic_normal_form(n in 4usize..200, seed in any::<u64>()) {
        let u = random_unicyclic(n, seed);
        prop_assume!(!u.is_pure_cycle());
        let (t1, t2, t) = unicyclic_normalize(&u).unwrap();
        prop_assert!(u.graph().has_edge(t1, t2));
        prop_assert!(!t.has_edge(t1, t2));
        prop_assert!(t.degree(t1) >= 2);
        prop_assert_eq!(t.edges().count() + 1, u.graph().edge_count());
    }

    #[test]
    fn designated_split_invariants(seed in any::<u64>()) {
        let u = random_unicyclic(307, seed);
        prop_assume!(!u.is_pure_cycle());
        let (t1, t2, t) = unicyclic_normalize(&u).unwrap();
        let s = designated_split(&t, t1, t2, 18).unwrap();
        prop_assert!(s.is_some());
        prop_assert!(s.unwrap().verify(&t, t1, t2, 18).is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tree_engine_always_verifies(p in 0.0..=1.0f64, seed in any::<u64>()) {
        let g = random_graph(145, p, seed);
        let t = random_tree(73, seed ^ 1);
        let w = find_witness_tree(&g, &t, 9).unwrap();
        prop_assert!(w.verify(&g, &t.to_graph(), 9).is_ok());
        let json = serde_json::to_string(&WitnessJson::new(&w, 73, 9)).unwrap();
        let back: WitnessJson = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back.kind.as_str(), w.kind());
        if let fanramsey::witness::Witness::Tree(e) = &w {
            let mut dup = e.map.clone();
            dup[1] = dup[0];
            prop_assert!(check_embedding(&t.to_graph(), &g, &Embedding::new(dup, true)).is_err());
        }
    }
}
