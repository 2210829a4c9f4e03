//! Property-based invariants: series-algebra ring axioms and normal-form
//! stability, structural graph identities (decomposition reassembly, the
//! complement/join duality, cut-point-set transfer under joins and partial
//! joins), dispatcher relabeling invariance, and oracle multiplicativity.

mod common;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use bei_core::family::FamilySpec;
use bei_core::formula::{analyze, series_partial_join_complete, series_path};
use bei_core::graph::{enumerate, Graph};
use bei_core::oracle::oracle_series;
use bei_core::poly::IntPoly;
use bei_core::series::PoleSeries;

fn arb_poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-6i64..=6, 0..6).prop_map(|v| IntPoly::from_ints(&v))
}

fn arb_series() -> impl Strategy<Value = PoleSeries> {
    (arb_poly(), 0i64..8).prop_map(|(p, d)| PoleSeries::new(p, d))
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = enumerate::edge_pairs(n);
        let count = pairs.len();
        prop::collection::vec(any::<bool>(), count).prop_map(move |bits| {
            let edges = pairs.iter().zip(&bits).filter(|(_, &b)| b).map(|(&e, _)| e);
            Graph::new(n, edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn normalize_is_idempotent(s in arb_series()) {
        let again = PoleSeries::new(s.num().clone(), s.pole() as i64);
        prop_assert_eq!(again, s);
    }

    #[test]
    fn normal_form_invariant_after_ops(a in arb_series(), b in arb_series()) {
        for s in [a.add(&b), a.sub(&b), a.mul(&b)] {
            if !s.is_zero() && s.pole() > 0 {
                prop_assert!(!s.num().eval_at_one().is_zero(), "reducible numerator: {}", s);
            }
            if s.is_zero() {
                prop_assert_eq!(s.pole(), 0);
            }
        }
    }

    #[test]
    fn ring_axioms(a in arb_series(), b in arb_series(), c in arb_series()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), PoleSeries::zero());
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn hilbert_polynomial_agrees_with_taylor(s in arb_series()) {
        prop_assume!(!s.is_zero());
        let h = s.hilbert_data().unwrap();
        let deg = s.num().degree().unwrap();
        let taylor = s.taylor(deg + 5);
        for k in deg + 1..=deg + 4 {
            prop_assert_eq!(h.eval_polynomial(k), taylor[k].clone(), "k = {}", k);
        }
    }

    #[test]
    fn series_json_round_trip(s in arb_series()) {
        let text = serde_json::to_string(&s).unwrap();
        let back: PoleSeries = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn edge_list_round_trip(g in arb_graph(7)) {
        let text = g.to_edge_list();
        prop_assert_eq!(Graph::parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn complement_of_join_is_disjoint_union_of_complements(
        h1 in arb_graph(4),
        h2 in arb_graph(4),
    ) {
        let joined = h1.join(&h2);
        let expect = h1.complement().disjoint_union(&h2.complement());
        prop_assert_eq!(joined.complement(), expect);
    }

    #[test]
    fn decompose_reassembles_and_glues_at_free_vertices(g in arb_graph(7)) {
        let dec = g.decompose();
        // parts cover the vertex set
        let mut covered: Vec<usize> = dec.parts.iter().flatten().copied().collect();
        covered.sort_unstable();
        covered.dedup();
        prop_assert_eq!(covered, (1..=g.n()).collect::<Vec<_>>());
        // induced edges of the parts reassemble the edge set exactly
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for part in &dec.parts {
            for (i, &u) in part.iter().enumerate() {
                for &v in &part[i + 1..] {
                    if g.has_edge(u, v) {
                        edges.push((u, v));
                    }
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        prop_assert_eq!(edges, g.edges().to_vec());
        // pairwise intersections are single free vertices, as recorded
        for i in 0..dec.parts.len() {
            for j in i + 1..dec.parts.len() {
                let shared: Vec<usize> = dec.parts[i]
                    .iter()
                    .copied()
                    .filter(|v| dec.parts[j].contains(v))
                    .collect();
                prop_assert!(shared.len() <= 1);
                match shared.first() {
                    Some(&v) => {
                        prop_assert!(dec.gluing.contains(&(i, j, v)));
                        for side in [i, j] {
                            let sub = g.induced(&dec.parts[side]);
                            let pos = dec.parts[side].iter().position(|&w| w == v).unwrap();
                            prop_assert!(
                                sub.is_free_vertex(pos + 1),
                                "vertex {} not free in part {:?}",
                                v,
                                dec.parts[side]
                            );
                        }
                    }
                    None => prop_assert!(!dec.gluing.iter().any(|&(a, b, _)| (a, b) == (i, j))),
                }
            }
        }
    }

    #[test]
    fn free_vertex_is_unique_maximal_clique_membership(g in arb_graph(5)) {
        for v in 1..=g.n() {
            let free = g.is_free_vertex(v);
            let count = common::maximal_cliques_containing(&g, v);
            prop_assert_eq!(free, count == 1, "vertex {} in {:?}", v, g.edges());
        }
    }

    #[test]
    fn cut_point_sets_match_naive_enumeration(g in arb_graph(5)) {
        let got: Vec<Vec<usize>> = g
            .cut_point_sets()
            .unwrap()
            .into_iter()
            .map(|c| c.t)
            .collect();
        prop_assert_eq!(got, common::naive_cut_point_sets(&g));
    }

    #[test]
    fn cut_sets_of_join_with_complete(h in arb_graph(4), q in 1usize..=3) {
        // for disconnected H: C(H * K_q) = {0} u {T + [q] : T in C(H)}
        prop_assume!(h.connected_components().len() >= 2);
        let p = h.n();
        let g = h.join(&Graph::complete(q));
        let got: Vec<Vec<usize>> = g
            .cut_point_sets()
            .unwrap()
            .into_iter()
            .map(|c| c.t)
            .collect();
        let mut expect: Vec<Vec<usize>> = vec![vec![]];
        for t in common::naive_cut_point_sets(&h) {
            let mut lifted = t;
            lifted.extend(p + 1..=p + q);
            expect.push(lifted);
        }
        expect.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        expect.dedup();
        prop_assert_eq!(got, expect);
    }

    #[test]
    fn cut_sets_of_partial_join(h in arb_graph(4), q in 2usize..=4, roff in 0usize..4) {
        // C(H (*)^r K_q) = {0} u {T + {v_1..v_r} : T in C(H)} for r < q
        let r = 1 + roff % (q - 1);
        let p = h.n();
        let g = h.partial_join(q, r).unwrap();
        let got: Vec<Vec<usize>> = g
            .cut_point_sets()
            .unwrap()
            .into_iter()
            .map(|c| c.t)
            .collect();
        let mut expect: Vec<Vec<usize>> = vec![vec![]];
        for t in common::naive_cut_point_sets(&h) {
            let mut lifted = t;
            lifted.extend(p + 1..=p + r);
            expect.push(lifted);
        }
        expect.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        expect.dedup();
        prop_assert_eq!(got, expect);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn analyze_is_relabeling_invariant(g in arb_graph(5), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (1..=g.n()).collect();
        perm.shuffle(&mut rng);
        let permuted = g.permute(&perm).unwrap();
        let a = analyze(&g).unwrap().result;
        let b = analyze(&permuted).unwrap().result;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn oracle_multiplies_over_disjoint_unions(a in arb_graph(3), b in arb_graph(3)) {
        let u = a.disjoint_union(&b);
        let left = oracle_series(&u).unwrap();
        let right = oracle_series(&a).unwrap().mul(&oracle_series(&b).unwrap());
        prop_assert_eq!(left, right);
    }

    #[test]
    fn analyze_pole_equals_cutset_dimension(g in arb_graph(5)) {
        let d = analyze(&g).unwrap().result.pole();
        prop_assert_eq!(d, g.dimension_from_cutsets().unwrap());
    }

    #[test]
    fn partial_join_formula_matches_dispatcher(p in 1usize..=3, q in 2usize..=4, roff in 0usize..4) {
        // graph-level check of the partial-join series rule
        let r = 1 + roff % (q - 1);
        let h = FamilySpec::Path(p).build().unwrap();
        let g = h.partial_join(q, r).unwrap();
        let got = analyze(&g).unwrap().result;
        let expect = series_partial_join_complete(&series_path(p), p, q, r).unwrap();
        prop_assert_eq!(got, expect);
    }
}

/// The two 7-vertex showcase graphs, pinned against the oracle on 14
/// variables: the join of a 4-clique with three isolated vertices, and a
/// 3-path partially joined to two vertices of a 4-clique.
#[test]
fn seven_vertex_showcases_match_oracle() {
    use bei_core::formula::{series_complete_join_edgeless, series_join};
    use bei_core::oracle::{oracle_series_with, MonomialOrder};

    let k4_join_e3 = Graph::complete(4).join(&Graph::empty(3));
    let oracle = oracle_series_with(&k4_join_e3, MonomialOrder::DegRevLex, 16).unwrap();
    assert_eq!(
        series_join(
            &bei_core::formula::series_complete(4),
            &bei_core::formula::series_edgeless(3),
            4,
            3
        ),
        oracle
    );
    assert_eq!(series_complete_join_edgeless(4, 3), oracle);
    assert_eq!(analyze(&k4_join_e3).unwrap().result, oracle);

    let p3_pj_k4 = FamilySpec::Path(3)
        .build()
        .unwrap()
        .partial_join(4, 2)
        .unwrap();
    let oracle = oracle_series_with(&p3_pj_k4, MonomialOrder::DegRevLex, 16).unwrap();
    assert_eq!(
        series_partial_join_complete(&series_path(3), 3, 4, 2).unwrap(),
        oracle
    );

    // K_p (*)^{q-1} K_q at p=2, q=3
    let k2_pj_k3 = Graph::complete(2).partial_join(3, 2).unwrap();
    let oracle = oracle_series_with(&k2_pj_k3, MonomialOrder::DegRevLex, 16).unwrap();
    assert_eq!(
        series_partial_join_complete(&bei_core::formula::series_complete(2), 2, 3, 2).unwrap(),
        oracle
    );
}

/// Multiplicity of a cone `H * {v}` over connected `H` on `p` vertices,
/// split by `dim(S_H/J_H)`: above `p+2` the cone keeps `e(H)`, at `p+2` it
/// gains `p+1`, at `p+1` (the minimum) it becomes `p+1`.
#[test]
fn cone_multiplicity_case_table() {
    for p in 1..=4usize {
        for h in enumerate::connected_labeled_graphs(p) {
            let h_series = analyze(&h).unwrap().result;
            let dim_h = h_series.pole();
            let e_h = h_series.num().eval_at_one();
            assert!(dim_h > p, "dimension lower bound");
            let cone = h.join(&Graph::complete(1));
            let e_cone = analyze(&cone).unwrap().result.num().eval_at_one();
            let expect = if dim_h >= p + 3 {
                e_h
            } else if dim_h == p + 2 {
                BigInt::from(p as u64 + 1) + e_h
            } else {
                BigInt::from(p as u64 + 1)
            };
            assert_eq!(e_cone, expect, "cone over {:?}", h.edges());
        }
    }
}

/// The decomposition part multiset does not depend on vertex labels.
#[test]
fn decomposition_is_label_independent() {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let samples = [
        FamilySpec::Path(6).build().unwrap(),
        FamilySpec::Lollipop {
            m: 4,
            handles: vec![2, 3],
        }
        .build()
        .unwrap(),
        Graph::new(6, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (4, 6), (5, 6)]).unwrap(),
    ];
    for g in &samples {
        let mut sizes: Vec<usize> = g.decompose().parts.iter().map(|p| p.len()).collect();
        sizes.sort_unstable();
        for _ in 0..10 {
            let mut perm: Vec<usize> = (1..=g.n()).collect();
            perm.shuffle(&mut rng);
            let permuted = g.permute(&perm).unwrap();
            let mut other: Vec<usize> =
                permuted.decompose().parts.iter().map(|p| p.len()).collect();
            other.sort_unstable();
            assert_eq!(sizes, other);
        }
    }
}

/// Graph-derived series always have positive multiplicity and a unit
/// constant term.
#[test]
fn graph_series_shape() {
    for n in 0..=4usize {
        for g in enumerate::labeled_graphs(n) {
            let s = analyze(&g).unwrap().result;
            assert!(s.num().eval_at_one() > BigInt::zero());
            assert!(s.taylor(0)[0].is_one());
        }
    }
}
