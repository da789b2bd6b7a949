use std::collections::{BTreeMap, BTreeSet};

use qspex::graph::{canonical_form, CanonicalForm, Graph};
use qspex::matching::matching_number;
use qspex::search::{brute_force_max, enumerate_graphs, EnumerationQuery, SearchConfig};

/// Every labeled graph with `m` edges and no isolated vertices whose vertices
/// first appear in label order along the sorted edge list. Breadth-first
/// labeling shows that every isomorphism class has such a representative.
fn labeled_oracle(m: usize) -> BTreeMap<CanonicalForm, usize> {
    fn go(
        m: usize,
        edges: &mut Vec<(usize, usize)>,
        top: usize,
        out: &mut BTreeMap<CanonicalForm, usize>,
    ) {
        if edges.len() == m {
            let g = Graph::from_edges(top, edges).unwrap();
            out.insert(canonical_form(&g), matching_number(&g));
            return;
        }
        let last = edges.last().copied();
        for a in 0..=top {
            for b in a + 1..=top + 1 {
                if last.is_some_and(|l| (a, b) <= l) {
                    continue;
                }
                let next = match (a == top, b) {
                    (true, b) if b == top + 1 => top + 2,
                    (true, _) => continue,
                    (false, b) if b == top => top + 1,
                    (false, b) if b == top + 1 => continue,
                    _ => top,
                };
                edges.push((a, b));
                go(m, edges, next, out);
                edges.pop();
            }
        }
    }
    let mut out = BTreeMap::new();
    go(m, &mut Vec::new(), 0, &mut out);
    out
}

#[test]
fn class_counts_match_labeled_oracle() {
    let cfg = SearchConfig::default();
    // graphs with m edges and no isolated vertices
    let totals = [1, 2, 5, 11, 26, 68];
    for m in 1..=6 {
        let oracle = labeled_oracle(m);
        assert_eq!(oracle.len(), totals[m - 1], "total for m = {m}");
        for beta in 1..=m {
            let expected: BTreeSet<&CanonicalForm> = oracle
                .iter()
                .filter(|(_, &b)| b == beta)
                .map(|(f, _)| f)
                .collect();
            let found = enumerate_graphs(&EnumerationQuery::exact(m, beta), &cfg).unwrap();
            let forms: Vec<CanonicalForm> = found.iter().map(canonical_form).collect();
            assert!(
                forms.windows(2).all(|w| w[0] < w[1]),
                "strictly increasing at ({m},{beta})"
            );
            assert_eq!(
                forms.iter().collect::<BTreeSet<_>>(),
                expected,
                "classes at ({m},{beta})"
            );
        }
    }
}

#[test]
fn enumerated_graphs_are_canonical_and_in_class() {
    let cfg = SearchConfig::default();
    for g in enumerate_graphs(&EnumerationQuery::at_least(7, 3), &cfg).unwrap() {
        assert_eq!(canonical_form(&g).as_str(), g.to_string());
        assert_eq!(g.m(), 7);
        assert!(matching_number(&g) >= 3);
        assert!(g.isolated_vertices().is_empty());
    }
}

#[test]
fn at_least_and_exact_share_the_maximum() {
    let cfg = SearchConfig::default();
    for beta in 2..=4 {
        for m in beta..=8 {
            let exact = brute_force_max(&EnumerationQuery::exact(m, beta), &cfg).unwrap();
            let at_least = brute_force_max(&EnumerationQuery::at_least(m, beta), &cfg).unwrap();
            assert!((exact.qmax - at_least.qmax).abs() <= 1e-9, "({m},{beta})");
            assert_eq!(exact.argmax, at_least.argmax, "({m},{beta})");
        }
    }
}

#[test]
fn at_least_is_the_union_of_exact_classes() {
    let cfg = SearchConfig::default();
    let m = 6;
    let union: BTreeSet<String> = (2..=m)
        .flat_map(|b| enumerate_graphs(&EnumerationQuery::exact(m, b), &cfg).unwrap())
        .map(|g| g.to_string())
        .collect();
    let at_least: BTreeSet<String> = enumerate_graphs(&EnumerationQuery::at_least(m, 2), &cfg)
        .unwrap()
        .iter()
        .map(Graph::to_string)
        .collect();
    assert_eq!(union, at_least);
}
