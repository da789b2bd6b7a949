//! Maximum matchings and the eigenvector-weighted matching structures.
//!
//! The matching number comes from Edmonds' blossom algorithm restricted to a
//! vertex mask. Maximum matchings are listed by branching on the smallest
//! uncovered vertex with a blossom bound for pruning. Among them, the
//! extremal matching maximizes `Σ (x_u + x_v)²` for a principal eigenvector
//! `x`; ties within [`WEIGHT_BAND`] go to the lexicographically smallest
//! sorted edge list.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{bits, edge, Edge, Graph};

/// Weights closer than this are treated as equal.
pub const WEIGHT_BAND: f64 = 1e-12;

/// Order limit for [`all_maximum_matchings`].
pub const ENUMERATION_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("graph has {0} vertices; matching enumeration is limited to {ENUMERATION_LIMIT}")]
    TooLarge(usize),
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("eigenvector has {found} entries, graph has {expected} vertices")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0:?} is not an edge of the graph")]
    NotAnEdge(Edge),
    #[error("vertex {0} is covered twice")]
    NotDisjoint(usize),
}

/// A set of pairwise disjoint edges, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    /// Validates that `edges` are edges of `g` and pairwise disjoint.
    pub fn new(g: &Graph, edges: &[Edge]) -> Result<Self, MatchingError> {
        let mut covered = 0u64;
        let mut sorted = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if !g.has_edge(a, b) {
                return Err(MatchingError::NotAnEdge((a, b)));
            }
            for v in [a, b] {
                if covered >> v & 1 == 1 {
                    return Err(MatchingError::NotDisjoint(v));
                }
                covered |= 1 << v;
            }
            sorted.push(edge(a, b));
        }
        sorted.sort_unstable();
        Ok(Self { edges: sorted })
    }

    fn from_sorted(mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        Self { edges }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn covered_mask(&self) -> u64 {
        self.edges
            .iter()
            .fold(0, |acc, &(a, b)| acc | 1 << a | 1 << b)
    }

    pub fn covers(&self, v: usize) -> bool {
        self.covered_mask() >> v & 1 == 1
    }

    /// `Σ_{uv∈M} (x_u + x_v)²`.
    pub fn weight(&self, x: &[f64]) -> f64 {
        self.edges.iter().map(|&(u, v)| (x[u] + x[v]).powi(2)).sum()
    }
}

/// Mate array of a maximum matching on the vertices in `mask`.
fn blossom_mates(g: &Graph, mask: u64) -> Vec<Option<usize>> {
    let n = g.n();
    let mut mate: Vec<Option<usize>> = vec![None; n];

    // greedy start
    for v in bits(mask) {
        if mate[v].is_none() {
            if let Some(w) = bits(g.neighbor_mask(v) & mask).find(|&w| mate[w].is_none()) {
                mate[v] = Some(w);
                mate[w] = Some(v);
            }
        }
    }

    for root in bits(mask) {
        if mate[root].is_some() {
            continue;
        }
        if let Some(end) = augmenting_path(g, mask, &mate, root) {
            let parent = end.1;
            let mut v = Some(end.0);
            while let Some(cur) = v {
                let pv = parent[cur].expect("path vertex has a parent");
                let next = mate[pv];
                mate[cur] = Some(pv);
                mate[pv] = Some(cur);
                v = next;
            }
        }
    }
    mate
}

/// Breadth-first search for an augmenting path from `root`, contracting
/// odd cycles. Returns the free endpoint and the parent links.
fn augmenting_path(
    g: &Graph,
    mask: u64,
    mate: &[Option<usize>],
    root: usize,
) -> Option<(usize, Vec<Option<usize>>)> {
    let n = g.n();
    let mut used = vec![false; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut queue = VecDeque::new();
    used[root] = true;
    queue.push_back(root);

    while let Some(v) = queue.pop_front() {
        for to in bits(g.neighbor_mask(v) & mask) {
            if base[v] == base[to] || mate[v] == Some(to) {
                continue;
            }
            let to_is_outer = to == root || mate[to].is_some_and(|mt| parent[mt].is_some());
            if to_is_outer {
                let cur = lowest_common_base(&base, mate, &parent, v, to);
                let mut in_blossom = vec![false; n];
                mark_path(&base, mate, &mut parent, &mut in_blossom, v, cur, to);
                mark_path(&base, mate, &mut parent, &mut in_blossom, to, cur, v);
                for i in bits(mask) {
                    if in_blossom[base[i]] {
                        base[i] = cur;
                        if !used[i] {
                            used[i] = true;
                            queue.push_back(i);
                        }
                    }
                }
            } else if parent[to].is_none() {
                parent[to] = Some(v);
                match mate[to] {
                    None => return Some((to, parent)),
                    Some(next) => {
                        used[next] = true;
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    None
}

fn lowest_common_base(
    base: &[usize],
    mate: &[Option<usize>],
    parent: &[Option<usize>],
    mut a: usize,
    mut b: usize,
) -> usize {
    let mut seen = vec![false; base.len()];
    loop {
        a = base[a];
        seen[a] = true;
        match mate[a] {
            None => break,
            Some(ma) => match parent[ma] {
                Some(p) => a = p,
                None => break,
            },
        }
    }
    loop {
        b = base[b];
        if seen[b] {
            return b;
        }
        b = parent[mate[b].expect("inner path vertex is matched")]
            .expect("inner path vertex has a parent");
    }
}

fn mark_path(
    base: &[usize],
    mate: &[Option<usize>],
    parent: &mut [Option<usize>],
    in_blossom: &mut [bool],
    mut v: usize,
    b: usize,
    mut child: usize,
) {
    while base[v] != b {
        let mv = mate[v].expect("blossom path vertex is matched");
        in_blossom[base[v]] = true;
        in_blossom[base[mv]] = true;
        parent[v] = Some(child);
        child = mv;
        v = parent[mv].expect("blossom path vertex has a parent");
    }
}

fn matching_number_within(g: &Graph, mask: u64) -> usize {
    blossom_mates(g, mask).iter().flatten().count() / 2
}

/// β(G): the size of a maximum matching.
pub fn matching_number(g: &Graph) -> usize {
    matching_number_within(g, g.vertex_mask())
}

/// One maximum matching found by the blossom algorithm.
pub fn maximum_matching(g: &Graph) -> Matching {
    let mate = blossom_mates(g, g.vertex_mask());
    let edges = mate
        .iter()
        .enumerate()
        .filter_map(|(v, m)| m.filter(|&w| v < w).map(|w| (v, w)))
        .collect();
    Matching::from_sorted(edges)
}

/// Every maximum matching of `g`, sorted by edge list.
pub fn all_maximum_matchings(g: &Graph) -> Result<Vec<Matching>, MatchingError> {
    if g.n() > ENUMERATION_LIMIT {
        return Err(MatchingError::TooLarge(g.n()));
    }
    let beta = matching_number(g);
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(beta);
    branch(g, g.vertex_mask(), beta, &mut current, &mut out);
    out.sort();
    Ok(out)
}

fn branch(g: &Graph, avail: u64, need: usize, current: &mut Vec<Edge>, out: &mut Vec<Matching>) {
    if need == 0 {
        out.push(Matching::from_sorted(current.clone()));
        return;
    }
    if avail == 0 || matching_number_within(g, avail) < need {
        return;
    }
    let v = avail.trailing_zeros() as usize;
    let rest = avail & !(1 << v);
    for w in bits(g.neighbor_mask(v) & rest) {
        current.push((v, w));
        branch(g, rest & !(1 << w), need - 1, current, out);
        current.pop();
    }
    // v stays uncovered
    branch(g, rest, need, current, out);
}

/// The maximum matching of largest eigenvector weight (ties: smallest edge list).
pub fn extremal_matching(g: &Graph, x: &[f64]) -> Result<Matching, MatchingError> {
    if g.m() == 0 {
        return Err(MatchingError::EmptyGraph);
    }
    if x.len() != g.n() {
        return Err(MatchingError::DimensionMismatch {
            expected: g.n(),
            found: x.len(),
        });
    }
    let all = all_maximum_matchings(g)?;
    let weights: Vec<f64> = all.iter().map(|m| m.weight(x)).collect();
    let best = weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let index = weights
        .iter()
        .position(|&w| w >= best - WEIGHT_BAND)
        .expect("at least one maximum matching");
    Ok(all[index].clone())
}

/// Ranks vertices by eigenvector entry, merging entries that chain together
/// within [`WEIGHT_BAND`]. Equal ranks mean numerically equal entries.
pub fn tie_ranks(x: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut rank = vec![0; x.len()];
    let mut r = 0;
    for k in 1..order.len() {
        if x[order[k]] - x[order[k - 1]] > WEIGHT_BAND {
            r += 1;
        }
        rank[order[k]] = r;
    }
    rank
}

/// A maximum matching with each edge oriented `(u_i, v_i)` and ordered so that
/// `x_{v_i} >= x_{u_i}`, the `v` entries are non-increasing, and `u` entries
/// break ties between equal `v` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderedMatching {
    pairs: Vec<(usize, usize)>,
    x: Vec<f64>,
}

impl OrderedMatching {
    /// `(u_i, v_i)` pairs in order.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// The eigenvector the ordering is proper to.
    pub fn eigenvector(&self) -> &[f64] {
        &self.x
    }

    /// `v_1`, the matched vertex with the largest entry.
    pub fn v1(&self) -> Option<usize> {
        self.pairs.first().map(|&(_, v)| v)
    }

    /// All matched endpoints (`V*`).
    pub fn matched_vertices(&self) -> Vec<usize> {
        let mask = self
            .pairs
            .iter()
            .fold(0u64, |acc, &(u, v)| acc | 1 << u | 1 << v);
        bits(mask).collect()
    }

    pub fn to_matching(&self) -> Matching {
        Matching::from_sorted(self.pairs.iter().map(|&(u, v)| edge(u, v)).collect())
    }

    /// Whether the three ordering conditions hold, comparing entries exactly
    /// up to [`WEIGHT_BAND`].
    pub fn is_proper(&self) -> bool {
        let x = &self.x;
        let ge = |a: f64, b: f64| a >= b - WEIGHT_BAND;
        let eq = |a: f64, b: f64| (a - b).abs() <= WEIGHT_BAND;
        self.pairs.iter().all(|&(u, v)| ge(x[v], x[u]))
            && self.pairs.windows(2).all(|w| {
                let ((u1, v1), (u2, v2)) = (w[0], w[1]);
                ge(x[v1], x[v2]) && (!eq(x[v1], x[v2]) || ge(x[u1], x[u2]))
            })
    }
}

/// Orients and orders `m` properly with respect to `x`. Remaining ties go to
/// the smaller vertex index: inside an edge the smaller endpoint takes the
/// `v` slot, and between edges the smaller `v` comes first.
pub fn proper_ordering(m: &Matching, x: &[f64]) -> OrderedMatching {
    let rank = tie_ranks(x);
    let mut pairs: Vec<(usize, usize)> = m
        .edges()
        .iter()
        .map(|&(a, b)| {
            // a < b
            if rank[b] > rank[a] {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    pairs.sort_by(|&(u1, v1), &(u2, v2)| {
        rank[v2]
            .cmp(&rank[v1])
            .then(rank[u2].cmp(&rank[u1]))
            .then(v1.cmp(&v2))
            .then(u1.cmp(&u2))
    });
    OrderedMatching {
        pairs,
        x: x.to_vec(),
    }
}

/// `E_1` = matching edges plus every edge at `v_1`; `E_2` = the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePartition {
    pub e1: Vec<Edge>,
    pub e2: Vec<Edge>,
}

pub fn edge_partition(g: &Graph, om: &OrderedMatching) -> EdgePartition {
    let matched: Vec<Edge> = om.to_matching().edges().to_vec();
    let (e1, e2) = g.edges().into_iter().partition(|&(a, b)| {
        matched.contains(&(a, b)) || om.v1().is_some_and(|v1| a == v1 || b == v1)
    });
    EdgePartition { e1, e2 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{build_h, build_s};
    use crate::spectral::q_radius;

    /// Largest set of pairwise disjoint edges, by recursion over the edge list.
    fn exhaustive_matching_number(g: &Graph) -> usize {
        fn go(edges: &[Edge], i: usize, used: u64) -> usize {
            if i == edges.len() {
                return 0;
            }
            let skip = go(edges, i + 1, used);
            let (a, b) = edges[i];
            if used >> a & 1 == 0 && used >> b & 1 == 0 {
                skip.max(1 + go(edges, i + 1, used | 1 << a | 1 << b))
            } else {
                skip
            }
        }
        go(&g.edges(), 0, 0)
    }

    #[test]
    fn matching_numbers() {
        assert_eq!(matching_number(&Graph::complete(3).unwrap()), 1);
        assert_eq!(matching_number(&Graph::matching_graph(2).unwrap()), 2);
        let h2 = build_h(2).unwrap();
        assert_eq!(exhaustive_matching_number(&h2), 3);
        assert_eq!(matching_number(&h2), 3);
        assert_eq!(matching_number(&Graph::cycle(7).unwrap()), 3);
        assert_eq!(matching_number(&Graph::complete(9).unwrap()), 4);
        assert_eq!(matching_number(&Graph::empty(4).unwrap()), 0);
    }

    #[test]
    fn blossom_needed_for_odd_cycles() {
        // two triangles joined by a path: greedy can get stuck
        let g = Graph::from_edges(
            8,
            &[
                (0, 1),
                (1, 2),
                (0, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (5, 7),
            ],
        )
        .unwrap();
        assert_eq!(matching_number(&g), exhaustive_matching_number(&g));
        let petersen = Graph::from_edges(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
            ],
        )
        .unwrap();
        assert_eq!(matching_number(&petersen), 5);
    }

    #[test]
    fn enumerates_maximum_matchings() {
        let p3 = Graph::path(3).unwrap();
        let all = all_maximum_matchings(&p3).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all[0].edges(), &[(0, 1)]);
        assert_eq!(all[1].edges(), &[(1, 2)]);

        let h1 = build_h(1).unwrap();
        let all = all_maximum_matchings(&h1).unwrap();
        let lists: Vec<&[Edge]> = all.iter().map(|m| m.edges()).collect();
        assert_eq!(lists, vec![&[(0, 1), (2, 3)][..], &[(0, 3), (1, 2)][..]]);

        assert_eq!(
            all_maximum_matchings(&Graph::matching_graph(4).unwrap())
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            all_maximum_matchings(&Graph::empty(21).unwrap()),
            Err(MatchingError::TooLarge(21))
        );
    }

    #[test]
    fn extremal_matching_examples() {
        let s110 = build_s(1, 1, 0).unwrap();
        let x = q_radius(&s110).x;
        assert_eq!(
            extremal_matching(&s110, &x).unwrap().edges(),
            &[(0, 1), (2, 3)]
        );

        let p3 = Graph::path(3).unwrap();
        let x = q_radius(&p3).x;
        assert_eq!(extremal_matching(&p3, &x).unwrap().edges(), &[(0, 1)]);

        // v1 = 0, pendants 1 and 2, triangle 0-3-4
        let s201 = build_s(2, 0, 1).unwrap();
        let x = q_radius(&s201).x;
        assert_eq!(
            extremal_matching(&s201, &x).unwrap().edges(),
            &[(0, 1), (3, 4)]
        );

        assert_eq!(
            extremal_matching(&Graph::empty(2).unwrap(), &[0.0, 0.0]),
            Err(MatchingError::EmptyGraph)
        );
    }

    #[test]
    fn proper_ordering_examples() {
        let s110 = build_s(1, 1, 0).unwrap();
        let x = q_radius(&s110).x;
        let om = proper_ordering(&extremal_matching(&s110, &x).unwrap(), &x);
        assert_eq!(om.pairs(), &[(1, 0), (3, 2)]);
        assert!(om.is_proper());

        let g = Graph::matching_graph(3).unwrap();
        let x = q_radius(&g).x;
        let om = proper_ordering(&extremal_matching(&g, &x).unwrap(), &x);
        assert_eq!(om.pairs()[0], (1, 0));
        assert!(om.is_proper());

        let h1 = build_h(1).unwrap();
        let x = q_radius(&h1).x;
        let m = Matching::new(&h1, &[(0, 1), (2, 3)]).unwrap();
        let om = proper_ordering(&m, &x);
        assert!(om.pairs().iter().all(|&(_, v)| h1.degree(v) == 3));
        assert!(om.is_proper());
    }

    #[test]
    fn edge_partition_examples() {
        let partition_of = |g: &Graph| {
            let x = q_radius(g).x;
            edge_partition(g, &proper_ordering(&extremal_matching(g, &x).unwrap(), &x))
        };
        assert!(partition_of(&build_s(2, 0, 1).unwrap()).e2.is_empty());
        // u1 = 0, v1 = 1, u2 = 2, v2 = 3; E2 is the cross edge u1 v2
        let p = partition_of(&build_h(1).unwrap());
        assert_eq!(p.e2, vec![(0, 3)]);
        assert_eq!(p.e1.len() + p.e2.len(), 5);
        assert!(partition_of(&Graph::star(5).unwrap()).e2.is_empty());
    }

    #[test]
    fn matching_validation() {
        let p3 = Graph::path(3).unwrap();
        assert_eq!(
            Matching::new(&p3, &[(0, 2)]),
            Err(MatchingError::NotAnEdge((0, 2)))
        );
        assert_eq!(
            Matching::new(&p3, &[(0, 1), (1, 2)]),
            Err(MatchingError::NotDisjoint(1))
        );
    }
}
