use proptest::prelude::*;

use tr2dom::bounds::ParamValues;
use tr2dom::closed_forms::{classify, ClassKind};
use tr2dom::graph::{connected_components, Graph};
use tr2dom::harness::{enumerate_connected_graphs, tree_from_prufer};
use tr2dom::labeling::{check_tr2df, Labeling};
use tr2dom::reduction::{is_bipartite, is_chordal, reduce, Variant, X3CInstance};
use tr2dom::solvers::{
    branch_and_bound, enumerate_optimal_tr2df, gamma_tr2_exact, greedy_tr2df, solve, Method, Param, SolverConfig,
    DEFAULT_ENUMERATION_CAP,
};
use tr2dom::tree_dp::tree_gamma_tr2;

/// Random connected graph: a Prüfer tree plus each remaining pair with
/// probability `density / 4`.
fn arb_connected(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let seq = proptest::collection::vec(0..n, n.saturating_sub(2));
            let coins = proptest::collection::vec(0u32..4, n * (n - 1) / 2);
            (Just(n), seq, coins, 0u32..4)
        })
        .prop_map(|(n, seq, coins, density)| {
            let tree = if n == 2 { Graph::new(2, [(0, 1)]).unwrap() } else { tree_from_prufer(&seq) };
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let added: Vec<_> = coins
                .iter()
                .zip(pairs)
                .filter(|&(&c, (u, v))| c < density && !tree.has_edge(u, v))
                .map(|(_, e)| e)
                .collect();
            tree.with_edges(added).unwrap()
        })
}

fn brute(g: &Graph) -> u32 {
    gamma_tr2_exact(g, &SolverConfig::forced(Method::BruteForce)).unwrap().value
}

fn assert_witness(g: &Graph, f: &Labeling, value: u32) {
    assert!(check_tr2df(g, f).is_ok(), "invalid witness {f}");
    assert_eq!(f.weight(), value);
}

#[test]
fn branch_and_bound_matches_brute_force_exhaustively() {
    for n in 2..=7 {
        for g in enumerate_connected_graphs(n).unwrap() {
            let r = branch_and_bound(&g, &SolverConfig::default()).unwrap();
            assert_eq!(r.value, brute(&g));
            assert_witness(&g, r.labeling(), r.value);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn solvers_agree(g in arb_connected(9)) {
        let want = brute(&g);
        let bb = branch_and_bound(&g, &SolverConfig::default()).unwrap();
        prop_assert_eq!(bb.value, want);
        let auto = gamma_tr2_exact(&g, &SolverConfig::default()).unwrap();
        prop_assert_eq!(auto.value, want);
        assert_witness(&g, auto.labeling(), want);
        let greedy = greedy_tr2df(&g);
        prop_assert!(check_tr2df(&g, &greedy).is_ok());
        prop_assert!(greedy.weight() >= want);
    }

    #[test]
    fn brute_force_witness_is_first_optimum(g in arb_connected(7)) {
        let r = gamma_tr2_exact(&g, &SolverConfig::forced(Method::BruteForce)).unwrap();
        let mut optima = enumerate_optimal_tr2df(&g, DEFAULT_ENUMERATION_CAP).unwrap();
        prop_assert_eq!(optima.value(), r.value);
        prop_assert_eq!(optima.next(), Some(r.labeling().clone()));
    }

    #[test]
    fn parameter_chain(g in arb_connected(8)) {
        let p = ParamValues::compute(&g, &SolverConfig::default()).unwrap();
        prop_assert!(p.total <= p.tr2 && p.tr2 <= 2 * p.total);
        prop_assert!(p.r2 <= p.tr2);
        prop_assert!(p.tr2 <= 3 * p.dom);
        prop_assert!(p.tr2 <= p.double);
        prop_assert!(p.dom <= p.total && p.total <= p.double);
    }

    #[test]
    fn classification_is_sound(g in arb_connected(8)) {
        let v = brute(&g);
        let c = classify(&g).unwrap();
        let n = g.order() as u32;
        match c.kind {
            ClassKind::ValueTwo => prop_assert_eq!(v, 2),
            ClassKind::ValueThree => prop_assert_eq!(v, 3),
            ClassKind::ValueN => prop_assert_eq!(v, n),
            ClassKind::Other => prop_assert!(v != 2 && v != n && (v != 3 || n < 5)),
        }
        prop_assert_eq!(c.also_value_n, c.kind != ClassKind::ValueN && v == n);
    }

    #[test]
    fn disconnected_values_add(a in arb_connected(6), b in arb_connected(6)) {
        let u = a.disjoint_union(&b);
        prop_assert_eq!(connected_components(&u).len(), 2);
        for param in Param::ALL {
            let whole = solve(&u, param, &SolverConfig::default()).unwrap().value;
            let parts = solve(&a, param, &SolverConfig::default()).unwrap().value
                + solve(&b, param, &SolverConfig::default()).unwrap().value;
            prop_assert_eq!(whole, parts, "{}", param);
        }
    }

    #[test]
    fn forest_dp_matches_brute_force(
        a in proptest::collection::vec(0usize..5, 3),
        b in proptest::collection::vec(0usize..4, 2),
    ) {
        let f = tree_from_prufer(&a).disjoint_union(&tree_from_prufer(&b));
        let r = tree_gamma_tr2(&f).unwrap();
        prop_assert_eq!(r.value, brute(&f));
        assert_witness(&f, r.labeling(), r.value);
    }

    #[test]
    fn gadget_shape(q in 1usize..4, raw in proptest::collection::vec((0usize..9, 0usize..9, 0usize..9), 0..6)) {
        let sets: Vec<[usize; 3]> = raw
            .into_iter()
            .map(|(a, b, c)| [a % (3 * q), b % (3 * q), c % (3 * q)])
            .filter(|s| s[0] != s[1] && s[0] != s[2] && s[1] != s[2])
            .collect();
        let inst = X3CInstance::new(q, sets).unwrap();
        let t = inst.sets.len();
        let bip = reduce(&inst, Variant::Bipartite);
        let cho = reduce(&inst, Variant::Chordal);
        prop_assert_eq!(bip.k as usize, 4 * t + 16 * q);
        prop_assert_eq!(bip.graph.order(), 30 * q + 8 * t);
        prop_assert_eq!(cho.graph.size(), bip.graph.size() + t * t.saturating_sub(1) / 2);
        prop_assert!(is_bipartite(&bip.graph));
        prop_assert!(is_chordal(&cho.graph));
    }
}
