mod common;

use std::collections::BTreeSet;

use cospec::similarity::{
    gm_search, gm_switch, gm_validate, is_perfect_square, PrimitiveIntVector,
};
use cospec::*;
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use proptest::sample::subsequence;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn graph_of_order(n: usize) -> impl Strategy<Value = Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
        let mut edges = Vec::new();
        let mut it = bits.into_iter();
        for u in 0..n {
            for v in u + 1..n {
                if it.next().unwrap() {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    })
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(graph_of_order)
}

fn same_order_pair(max_n: usize) -> impl Strategy<Value = (Graph, Graph)> {
    (1..=max_n).prop_flat_map(|n| (graph_of_order(n), graph_of_order(n)))
}

fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn graph_and_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), arb_perm(n))
    })
}

fn cubic(n: usize) -> Vec<Graph> {
    generate(GenSpec::connected(n, 3)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trip(g in arb_graph(32)) {
        let s = to_graph6(&g);
        prop_assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn canonical_form_is_relabeling_invariant((g, p) in graph_and_perm(20)) {
        let h = g.relabel(&p).unwrap();
        let cg = canonical_form(&g);
        prop_assert_eq!(&cg.graph, &canonical_form(&h).graph);
        prop_assert_eq!(g.relabel(&cg.perm).unwrap(), cg.graph);
    }

    #[test]
    fn canonical_form_separates_non_isomorphic((g, h) in same_order_pair(7)) {
        prop_assert_eq!(
            canonical_form(&g).graph == canonical_form(&h).graph,
            common::oracle_isomorphic(&g, &h)
        );
        prop_assert_eq!(is_isomorphic(&g, &h), common::oracle_isomorphic(&g, &h));
    }

    #[test]
    fn charpoly_low_coefficients(g in arb_graph(20)) {
        let n = g.order();
        let p = char_poly(&g);
        prop_assert_eq!(p.degree(), n);
        if n >= 1 {
            prop_assert_eq!(&p.coeffs()[n - 1], &BigInt::from(0));
        }
        if n >= 2 {
            prop_assert_eq!(&p.coeffs()[n - 2], &-BigInt::from(g.edge_count()));
        }
        if n >= 3 {
            prop_assert_eq!(&p.coeffs()[n - 3], &-BigInt::from(2 * g.triangle_count()));
        }
    }

    #[test]
    fn charpoly_is_relabeling_invariant((g, p) in graph_and_perm(16)) {
        prop_assert_eq!(char_poly(&g), char_poly(&g.relabel(&p).unwrap()));
    }

    #[test]
    fn charpoly_matches_leibniz_on_random_graphs(g in arb_graph(7)) {
        prop_assert!(common::charpoly_matches_leibniz(&g));
    }

    #[test]
    fn integral_roots_divide_exactly(g in arb_graph(12)) {
        let p = char_poly(&g);
        let mut q = p.poly().clone();
        let mut total = 0;
        for r in p.integral_roots() {
            for _ in 0..r.multiplicity {
                let (quot, rem) = q.div_linear(&BigInt::from(r.value));
                prop_assert_eq!(rem, BigInt::from(0));
                q = quot;
            }
            // Nothing left at this root.
            prop_assert!(q.div_linear(&BigInt::from(r.value)).1 != BigInt::from(0));
            total += r.multiplicity;
        }
        prop_assert!(total <= g.order());
    }

    #[test]
    fn perfect_squares(r in 1u64..1 << 40, s in 1u64..1 << 40) {
        let s2 = BigInt::from(s) * BigInt::from(s);
        let r2s2 = &s2 * BigInt::from(r) * BigInt::from(r);
        let a = PrimitiveIntVector { entries: vec![BigInt::from(1)], normsq: s2 };
        let b = PrimitiveIntVector { entries: vec![BigInt::from(1)], normsq: r2s2 };
        prop_assert!(norm_ratio_rational(&a, &b));
        let sq = BigUint::from(r) * BigUint::from(r);
        prop_assert!(is_perfect_square(&sq));
        prop_assert!(!is_perfect_square(&(sq + 1u32)) || r == 0);
    }

    #[test]
    fn primes_are_not_squares(idx in 0usize..12) {
        let primes = [2u64, 3, 5, 7, 11, 13, 1_000_003, 2_147_483_647, 998_244_353, 1_000_000_007, 4_294_967_291, 67_280_421_310_721];
        let one = PrimitiveIntVector { entries: vec![BigInt::from(1)], normsq: BigInt::from(1) };
        let p = PrimitiveIntVector { entries: vec![BigInt::from(1)], normsq: BigInt::from(primes[idx]) };
        prop_assert!(!norm_ratio_rational(&one, &p));
    }

    #[test]
    fn kernel_vectors_are_exact_and_labeling_invariant((g, p) in graph_and_perm(12)) {
        let h = g.relabel(&p).unwrap();
        for r in char_poly(&g).integral_roots() {
            if r.multiplicity != 1 {
                continue;
            }
            let v = kernel_vector(&g, r.value).unwrap();
            let w = kernel_vector(&h, r.value).unwrap();
            prop_assert!(v.is_eigenvector(&g, r.value));
            prop_assert!(w.is_eigenvector(&h, r.value));
            prop_assert_eq!(&v.normsq, &w.normsq);
            prop_assert!(v.entries.iter().find(|e| **e != BigInt::from(0)).unwrap() > &BigInt::from(0));
        }
    }

    #[test]
    fn gm_switch_preserves_spectrum(g in arb_graph(10), size in prop_oneof![Just(2usize), Just(4)]) {
        for p in gm_search(&g, size) {
            prop_assert!(gm_validate(&g, &p));
            let h = gm_switch(&g, &p).unwrap();
            prop_assert_eq!(char_poly(&h), char_poly(&g));
            prop_assert!(!lemma1_obstruction(&g, &h).unwrap().is_obstruction());
        }
    }

    #[test]
    fn triangle_replace_shape(idx in 0usize..19, s in subsequence((0..10).collect::<Vec<_>>(), 0..=4)) {
        let g = &cubic(10)[idx];
        let set: BTreeSet<usize> = s.into_iter().collect();
        let h = triangle_replace(g, &set).unwrap();
        prop_assert!(h.is_cubic());
        prop_assert_eq!(h.order(), 10 + 2 * set.len());
        prop_assert_eq!(h.edge_count(), 15 + 3 * set.len());
    }
}

#[test]
fn triangle_replace_preserves_coloring_count() {
    for n in [4, 6, 8] {
        for g in cubic(n) {
            let base = count_3_edge_colorings(&g).unwrap();
            for v in 0..n {
                let h = triangle_replace(&g, &BTreeSet::from([v])).unwrap();
                assert_eq!(count_3_edge_colorings(&h).unwrap(), base, "{g} at {v}");
            }
        }
    }
}

#[test]
fn canonical_form_under_100_relabelings() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let mut graphs = vec![named(NamedGraph::Petersen), named(NamedGraph::K33)];
    graphs.extend(cubic(12).into_iter().step_by(9));
    graphs.push(cospec::census::petersen_with_triangles());
    for g in graphs {
        let c = canonical_form(&g).graph;
        let mut perm: Vec<usize> = (0..g.order()).collect();
        for _ in 0..100 {
            perm.shuffle(&mut rng);
            assert_eq!(canonical_form(&g.relabel(&perm).unwrap()).graph, c);
        }
    }
}

#[test]
fn generated_graphs_are_pairwise_non_isomorphic() {
    for n in [8, 10] {
        let gs = cubic(n);
        for (i, a) in gs.iter().enumerate() {
            for b in &gs[i + 1..] {
                assert!(!is_isomorphic(a, b));
                assert!(!common::oracle_isomorphic(a, b));
            }
        }
    }
}

#[test]
fn connected_regular_graphs_have_simple_top_eigenvalue() {
    for n in [10, 12] {
        for g in cubic(n) {
            let roots = char_poly(&g).integral_roots();
            assert!(
                roots.iter().any(|r| r.value == 3 && r.multiplicity == 1),
                "{g}"
            );
        }
    }
}
