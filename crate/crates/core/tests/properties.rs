use nalgebra::DMatrix;
use proptest::prelude::*;

use qspex::graph::{canonical_form, from_graph6, to_graph6, Graph};
use qspex::spectral::{q_radius, rayleigh_sum};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = Graph::empty(n).unwrap();
            let mut k = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if bits[k] {
                        g.add_edge(a, b).unwrap();
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn graph_and_permutation(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph_strategy(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn dense_q(g: &Graph) -> f64 {
    let n = g.n();
    if n == 0 {
        return 0.0;
    }
    let q = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            g.degree(i) as f64
        } else {
            f64::from(u8::from(g.has_edge(i, j)))
        }
    });
    q.symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn graph6_round_trip(g in graph_strategy(14)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn canonical_form_ignores_labels((g, perm) in graph_and_permutation(10)) {
        prop_assert_eq!(canonical_form(&g), canonical_form(&g.permute(&perm)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn q_matches_dense_eigensolve(g in graph_strategy(12)) {
        let s = q_radius(&g);
        prop_assert!((s.q - dense_q(&g)).abs() <= 1e-9);
        prop_assert!(s.residual <= 1e-10);
        prop_assert!(s.x.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn adding_an_edge_never_lowers_q(g in graph_strategy(10), a in 0usize..10, b in 0usize..10) {
        let (a, b) = (a % g.n(), b % g.n());
        prop_assume!(a != b && !g.has_edge(a, b));
        let mut h = g.clone();
        h.add_edge(a, b).unwrap();
        prop_assert!(q_radius(&h).q >= q_radius(&g).q - 1e-10);
    }

    #[test]
    fn q_is_at_most_m_plus_one(g in graph_strategy(10)) {
        prop_assume!(g.m() > 0);
        // q <= max over edges of d_u + d_v <= m + 1
        let q = q_radius(&g).q;
        let edge_bound = g.edges().iter().map(|&(u, v)| g.degree(u) + g.degree(v)).max().unwrap();
        prop_assert!(q <= edge_bound as f64 + 1e-9);
        prop_assert!(q <= (g.m() + 1) as f64 + 1e-9);
    }

    #[test]
    fn rayleigh_quotient_is_bounded_by_q(
        g in graph_strategy(10),
        raw in proptest::collection::vec(-1.0f64..1.0, 10),
    ) {
        let mut x: Vec<f64> = raw[..g.n()].to_vec();
        let len = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        prop_assume!(len > 1e-3);
        x.iter_mut().for_each(|v| *v /= len);
        prop_assert!(rayleigh_sum(&g, &x).unwrap() <= q_radius(&g).q + 1e-9);
    }

    #[test]
    fn union_takes_the_larger_radius(g in graph_strategy(7), h in graph_strategy(7)) {
        let u = g.disjoint_union(&h).unwrap();
        let expected = q_radius(&g).q.max(q_radius(&h).q);
        prop_assert!((q_radius(&u).q - expected).abs() <= 1e-9);
    }
}
