//! Isomorph-free enumeration of graphs with a given size and matching number,
//! the brute-force maximizer of `q`, and a steepest-ascent rewiring climber.
//!
//! Connected graphs are grown one edge at a time (every connected graph with
//! `k` edges arises from one with `k - 1` edges by adding an edge, possibly to
//! a new vertex) and deduplicated by canonical form. A graph without isolated
//! vertices is a multiset of connected pieces whose sizes add up to `m`; its
//! matching number is the sum and its `q` the maximum over the pieces.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::family::{extremal_beta1, predicted_extremal, FamilyError};
use crate::graph::{
    canonical_graph, is_isomorphic, to_graph6, CanonicalForm, Edge, Graph, GraphError,
};
use crate::matching::matching_number;
use crate::spectral::q_radius;
use crate::transform::{kelmans_swap, rotate, RewireResult, TransformError};

/// Default bound on `m` for exhaustive enumeration.
pub const DEFAULT_GUARD: usize = 10;

/// Graphs within this distance of the maximum all count as maximizers.
pub const ARGMAX_BAND: f64 = 1e-8;

/// Smallest `q` gain the climber accepts.
pub const CLIMB_MARGIN: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("m = {m} exceeds the enumeration guard {guard}")]
    GuardExceeded { m: usize, guard: usize },
    #[error("query needs m >= 1 and beta >= 1 (got m = {m}, beta = {beta})")]
    InvalidQuery { m: usize, beta: usize },
    #[error("no graph has {m} edges and matching number {beta}")]
    EmptyClass { m: usize, beta: usize },
    #[error("start graph (m = {m}, beta = {beta}) is outside the query class")]
    StartOutsideClass { m: usize, beta: usize },
    #[error("worker pool: {0}")]
    Workers(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Matching number exactly `beta`.
    Exact,
    /// Matching number at least `beta`.
    AtLeast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct EnumerationQuery {
    pub m: usize,
    pub beta: usize,
    pub mode: Mode,
}

impl EnumerationQuery {
    pub fn exact(m: usize, beta: usize) -> Self {
        Self {
            m,
            beta,
            mode: Mode::Exact,
        }
    }

    pub fn at_least(m: usize, beta: usize) -> Self {
        Self {
            m,
            beta,
            mode: Mode::AtLeast,
        }
    }

    pub fn admits_beta(&self, beta: usize) -> bool {
        match self.mode {
            Mode::Exact => beta == self.beta,
            Mode::AtLeast => beta >= self.beta,
        }
    }

    pub fn admits(&self, g: &Graph) -> bool {
        g.m() == self.m && self.admits_beta(matching_number(g))
    }

    fn validate(&self, guard: usize) -> Result<(), SearchError> {
        if self.m == 0 || self.beta == 0 {
            return Err(SearchError::InvalidQuery {
                m: self.m,
                beta: self.beta,
            });
        }
        if self.m > guard {
            return Err(SearchError::GuardExceeded { m: self.m, guard });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub guard: usize,
    /// Worker threads for catalog construction; `None` uses the global pool.
    pub workers: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            guard: DEFAULT_GUARD,
            workers: None,
        }
    }
}

/// A canonical connected graph with cached invariants.
#[derive(Debug, Clone)]
pub struct Piece {
    pub graph: Graph,
    pub form: CanonicalForm,
    pub beta: usize,
    pub q: f64,
}

/// One isomorphism class of a query, in canonical labeling.
#[derive(Debug, Clone)]
pub struct ClassMember {
    pub graph: Graph,
    pub form: CanonicalForm,
    pub beta: usize,
    pub q: f64,
}

/// All connected graphs with `1..=max_edges` edges, one per isomorphism class,
/// sorted by edge count and then canonical form.
#[derive(Debug, Clone)]
pub struct Catalog {
    max_edges: usize,
    pieces: Vec<Piece>,
    /// `starts[k]` is the index of the first piece with `k` edges.
    starts: Vec<usize>,
}

fn with_workers<T: Send>(
    workers: Option<usize>,
    f: impl FnOnce() -> T + Send,
) -> Result<T, SearchError> {
    match workers {
        None => Ok(f()),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| SearchError::Workers(e.to_string())),
    }
}

fn extensions(parent: &Graph) -> Vec<(CanonicalForm, Graph)> {
    let n = parent.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !parent.has_edge(a, b) {
                let mut g = parent.clone();
                g.add_edge(a, b).expect("vertices in range");
                let (canon, form) = canonical_graph(&g);
                out.push((form, canon));
            }
        }
    }
    if n < crate::graph::MAX_ORDER {
        for v in 0..n {
            let mut g = parent.clone();
            let w = g.add_vertices(1).expect("order checked");
            g.add_edge(v, w).expect("vertices in range");
            let (canon, form) = canonical_graph(&g);
            out.push((form, canon));
        }
    }
    out
}

impl Catalog {
    pub fn build(max_edges: usize, workers: Option<usize>) -> Result<Self, SearchError> {
        with_workers(workers, || Self::build_in_pool(max_edges))
    }

    fn build_in_pool(max_edges: usize) -> Self {
        let mut levels: Vec<Vec<(CanonicalForm, Graph)>> = Vec::with_capacity(max_edges);
        if max_edges >= 1 {
            let k2 = Graph::complete(2).expect("K2");
            let (canon, form) = canonical_graph(&k2);
            levels.push(vec![(form, canon)]);
        }
        for _ in 2..=max_edges {
            let prev = levels.last().expect("previous level");
            let mut next: Vec<(CanonicalForm, Graph)> = prev
                .par_iter()
                .flat_map_iter(|(_, g)| extensions(g))
                .collect();
            next.par_sort_by(|a, b| a.0.cmp(&b.0));
            next.dedup_by(|a, b| a.0 == b.0);
            levels.push(next);
        }

        let mut starts = vec![0; max_edges + 2];
        let mut flat = Vec::new();
        for (k, level) in levels.into_iter().enumerate() {
            starts[k + 1] = flat.len();
            flat.extend(level);
        }
        starts[max_edges + 1] = flat.len();
        let pieces = flat
            .into_par_iter()
            .map(|(form, graph)| {
                let beta = matching_number(&graph);
                let q = q_radius(&graph).q;
                Piece {
                    graph,
                    form,
                    beta,
                    q,
                }
            })
            .collect();
        Self {
            max_edges,
            pieces,
            starts,
        }
    }

    pub fn max_edges(&self) -> usize {
        self.max_edges
    }

    /// Connected classes with exactly `k` edges.
    pub fn connected(&self, k: usize) -> &[Piece] {
        if k == 0 || k > self.max_edges {
            return &[];
        }
        &self.pieces[self.starts[k]..self.starts[k + 1]]
    }

    /// Every class of the query, without isolated vertices, sorted by
    /// canonical form.
    pub fn classes(&self, query: &EnumerationQuery) -> Result<Vec<ClassMember>, SearchError> {
        query.validate(self.max_edges)?;
        let mut chosen = Vec::with_capacity(query.m);
        let mut out = Vec::new();
        self.compose(query, 0, query.m, &mut chosen, &mut out);
        out.sort_by(|a, b| a.form.cmp(&b.form));
        Ok(out)
    }

    fn compose(
        &self,
        query: &EnumerationQuery,
        from: usize,
        remaining: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<ClassMember>,
    ) {
        if remaining == 0 {
            let beta: usize = chosen.iter().map(|&i| self.pieces[i].beta).sum();
            if query.admits_beta(beta) {
                out.push(self.assemble(chosen, beta));
            }
            return;
        }
        let end = self.starts[remaining + 1];
        for i in from..end {
            chosen.push(i);
            let size = self.pieces[i].graph.m();
            self.compose(query, i, remaining - size, chosen, out);
            chosen.pop();
        }
    }

    fn assemble(&self, chosen: &[usize], beta: usize) -> ClassMember {
        let mut parts: Vec<&Piece> = chosen.iter().map(|&i| &self.pieces[i]).collect();
        parts.sort_by(|a, b| a.form.cmp(&b.form));
        let mut graph = Graph::empty(0).expect("empty graph");
        for p in &parts {
            graph = graph
                .disjoint_union(&p.graph)
                .expect("at most 2m <= 62 vertices");
        }
        let q = parts.iter().map(|p| p.q).fold(0.0, f64::max);
        let form = canonical_form_of_assembled(&graph);
        ClassMember {
            graph,
            form,
            beta,
            q,
        }
    }
}

fn canonical_form_of_assembled(g: &Graph) -> CanonicalForm {
    // pieces are canonical and concatenated in form order, which is exactly
    // what canonical_graph produces for a disconnected graph
    let form = crate::graph::canonical_form(g);
    debug_assert_eq!(form.as_str(), to_graph6(g));
    form
}

/// One representative per isomorphism class, no isolated vertices, sorted by
/// canonical form.
pub fn enumerate_graphs(
    query: &EnumerationQuery,
    config: &SearchConfig,
) -> Result<Vec<Graph>, SearchError> {
    query.validate(config.guard)?;
    let catalog = Catalog::build(query.m, config.workers)?;
    Ok(catalog
        .classes(query)?
        .into_iter()
        .map(|c| c.graph)
        .collect())
}

#[derive(Debug, Clone)]
pub struct MaxResult {
    pub qmax: f64,
    /// Every class within [`ARGMAX_BAND`] of `qmax`, canonical and sorted.
    pub argmax: Vec<Graph>,
    pub classes: usize,
}

pub fn brute_force_max(
    query: &EnumerationQuery,
    config: &SearchConfig,
) -> Result<MaxResult, SearchError> {
    query.validate(config.guard)?;
    let catalog = Catalog::build(query.m, config.workers)?;
    brute_force_max_in(&catalog, query)
}

pub fn brute_force_max_in(
    catalog: &Catalog,
    query: &EnumerationQuery,
) -> Result<MaxResult, SearchError> {
    let members = catalog.classes(query)?;
    if members.is_empty() {
        return Err(SearchError::EmptyClass {
            m: query.m,
            beta: query.beta,
        });
    }
    let qmax = members
        .iter()
        .map(|c| c.q)
        .fold(f64::NEG_INFINITY, f64::max);
    let classes = members.len();
    let argmax = members
        .into_iter()
        .filter(|c| c.q >= qmax - ARGMAX_BAND)
        .map(|c| c.graph)
        .collect();
    Ok(MaxResult {
        qmax,
        argmax,
        classes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    Rotation,
    KelmansSwap,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClimbStep {
    pub kind: MoveKind,
    pub result: RewireResult,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClimbTrace {
    pub start: Graph,
    pub end: Graph,
    pub steps: Vec<ClimbStep>,
    pub q_start: f64,
    pub q_end: f64,
    /// The end graph is a predicted maximizer, isolated vertices aside.
    pub converged_to_prediction: bool,
    pub hit_step_cap: bool,
}

/// Maximizers predicted for the query's `(m, beta)`.
pub fn predicted_maximizers(m: usize, beta: usize) -> Result<Vec<Graph>, SearchError> {
    if beta == 1 {
        Ok(extremal_beta1(m)?.1)
    } else {
        Ok(vec![predicted_extremal(m, beta)?])
    }
}

#[derive(Debug, Clone, Copy)]
enum Candidate {
    Rotation {
        remove: Edge,
        add: Edge,
    },
    Swap {
        first: (usize, usize),
        second: (usize, usize),
    },
}

/// Steepest ascent over rotations whose eigenvector sums do not decrease and
/// swaps with a positive predicted gain, keeping the graph in the query class.
/// Equal gains go to the first move in enumeration order: rotations by
/// (removed, added) edge, then swaps by edge pair and pairing.
pub fn hill_climb(
    start: &Graph,
    constraint: &EnumerationQuery,
    max_steps: usize,
) -> Result<ClimbTrace, SearchError> {
    if !constraint.admits(start) {
        return Err(SearchError::StartOutsideClass {
            m: start.m(),
            beta: matching_number(start),
        });
    }
    let mut g = start.clone();
    let mut steps = Vec::new();
    let q_start = q_radius(start).q;
    let mut hit_step_cap = false;

    loop {
        let s = q_radius(&g);
        let Some(best) = best_move(&g, &s.x, s.q, constraint) else {
            break;
        };
        if steps.len() == max_steps {
            hit_step_cap = true;
            break;
        }
        let (kind, result) = match best {
            Candidate::Rotation { remove, add } => {
                (MoveKind::Rotation, rotate(&g, &s.x, remove, add)?)
            }
            Candidate::Swap { first, second } => (
                MoveKind::KelmansSwap,
                kelmans_swap(&g, &s.x, first, second)?,
            ),
        };
        g = result.graph.clone();
        steps.push(ClimbStep { kind, result });
    }

    let q_end = q_radius(&g).q;
    let normalized = g.normalize();
    let converged_to_prediction = match predicted_maximizers(constraint.m, constraint.beta) {
        Ok(targets) => targets
            .iter()
            .any(|t| is_isomorphic(&t.normalize(), &normalized)),
        Err(_) => false,
    };
    Ok(ClimbTrace {
        start: start.clone(),
        end: g,
        steps,
        q_start,
        q_end,
        converged_to_prediction,
        hit_step_cap,
    })
}

fn best_move(g: &Graph, x: &[f64], q: f64, constraint: &EnumerationQuery) -> Option<Candidate> {
    let edges = g.edges();
    let n = g.n();
    let mut scored: Vec<(Candidate, f64)> = Vec::new();
    let mut consider = |candidate: Candidate, next: Graph| {
        if !constraint.admits_beta(matching_number(&next)) {
            return;
        }
        let q_next = q_radius(&next).q;
        if q_next > q + CLIMB_MARGIN {
            scored.push((candidate, q_next));
        }
    };

    for &(a, b) in &edges {
        for c in 0..n {
            for d in c + 1..n {
                if g.has_edge(c, d) {
                    continue;
                }
                let added = x[c] + x[d];
                if added < x[a] + x[b] || added <= 0.0 {
                    continue;
                }
                let mut next = g.clone();
                next.remove_edge(a, b).expect("edge present");
                next.add_edge(c, d).expect("non-edge");
                consider(
                    Candidate::Rotation {
                        remove: (a, b),
                        add: (c, d),
                    },
                    next,
                );
            }
        }
    }

    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            // (u_i, v_i) = (a, b) against (u_j, v_j) = (c, d), then (d, c)
            for (uj, vj) in [(c, d), (d, c)] {
                if g.has_edge(a, uj) || g.has_edge(b, vj) {
                    continue;
                }
                if 2.0 * (x[vj] - x[a]) * (x[b] - x[uj]) <= 0.0 {
                    continue;
                }
                let mut next = g.clone();
                next.remove_edge(a, b).expect("edge present");
                next.remove_edge(c, d).expect("edge present");
                next.add_edge(a, uj).expect("non-edge");
                next.add_edge(b, vj).expect("non-edge");
                consider(
                    Candidate::Swap {
                        first: (a, b),
                        second: (uj, vj),
                    },
                    next,
                );
            }
        }
    }

    let top = scored
        .iter()
        .map(|(_, q)| *q)
        .fold(f64::NEG_INFINITY, f64::max);
    scored
        .into_iter()
        .find(|(_, q)| *q >= top - 1e-12)
        .map(|(c, _)| c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::build_s;

    fn forms(graphs: &[Graph]) -> Vec<String> {
        graphs
            .iter()
            .map(|g| crate::graph::canonical_form(g).to_string())
            .collect()
    }

    #[test]
    fn connected_counts_match_known_sequence() {
        // connected graphs with k edges: 1, 1, 3, 5, 12, 30, 79
        let catalog = Catalog::build(7, None).unwrap();
        let counts: Vec<usize> = (1..=7).map(|k| catalog.connected(k).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 5, 12, 30, 79]);
    }

    #[test]
    fn small_classes() {
        let cfg = SearchConfig::default();
        let two = enumerate_graphs(&EnumerationQuery::exact(2, 2), &cfg).unwrap();
        assert_eq!(forms(&two), forms(&[Graph::matching_graph(2).unwrap()]));

        let one = enumerate_graphs(&EnumerationQuery::exact(3, 1), &cfg).unwrap();
        let mut expected = forms(&[Graph::complete(3).unwrap(), Graph::star(3).unwrap()]);
        expected.sort();
        assert_eq!(forms(&one), expected);

        let all = enumerate_graphs(&EnumerationQuery::at_least(3, 1), &cfg).unwrap();
        assert_eq!(all.len(), 5);
        let p3_k2 = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        for g in [
            Graph::path(4).unwrap(),
            p3_k2,
            Graph::matching_graph(3).unwrap(),
        ] {
            assert!(all.iter().any(|h| is_isomorphic(h, &g)));
        }
    }

    #[test]
    fn stream_is_sorted_and_free_of_isolated_vertices() {
        let cfg = SearchConfig::default();
        let all = enumerate_graphs(&EnumerationQuery::at_least(6, 1), &cfg).unwrap();
        // graphs with 6 edges and no isolated vertices
        assert_eq!(all.len(), 68);
        let f = forms(&all);
        assert!(f.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|g| g.isolated_vertices().is_empty()));
    }

    #[test]
    fn guard_and_validation() {
        let cfg = SearchConfig {
            guard: 4,
            workers: None,
        };
        assert_eq!(
            enumerate_graphs(&EnumerationQuery::exact(5, 2), &cfg).unwrap_err(),
            SearchError::GuardExceeded { m: 5, guard: 4 }
        );
        assert!(matches!(
            enumerate_graphs(&EnumerationQuery::exact(0, 1), &cfg),
            Err(SearchError::InvalidQuery { .. })
        ));
        assert_eq!(
            brute_force_max(&EnumerationQuery::exact(2, 3), &cfg).unwrap_err(),
            SearchError::EmptyClass { m: 2, beta: 3 }
        );
    }

    #[test]
    fn brute_force_examples() {
        let cfg = SearchConfig::default();
        let r = brute_force_max(&EnumerationQuery::exact(5, 2), &cfg).unwrap();
        assert!((r.qmax - 5.3234).abs() < 5e-4);
        assert_eq!(r.argmax.len(), 1);
        assert!(is_isomorphic(&r.argmax[0], &build_s(2, 0, 1).unwrap()));

        let r = brute_force_max(&EnumerationQuery::exact(3, 1), &cfg).unwrap();
        assert!((r.qmax - 4.0).abs() < 1e-9);
        assert_eq!(r.argmax.len(), 2);

        let r = brute_force_max(&EnumerationQuery::exact(4, 2), &cfg).unwrap();
        assert_eq!(r.argmax.len(), 1);
        assert!(is_isomorphic(&r.argmax[0], &build_s(1, 0, 1).unwrap()));
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let q = EnumerationQuery::at_least(6, 2);
        let one = enumerate_graphs(
            &q,
            &SearchConfig {
                guard: 10,
                workers: Some(1),
            },
        )
        .unwrap();
        let four = enumerate_graphs(
            &q,
            &SearchConfig {
                guard: 10,
                workers: Some(4),
            },
        )
        .unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn climb_from_five_cycle() {
        let trace = hill_climb(
            &Graph::cycle(5).unwrap(),
            &EnumerationQuery::at_least(5, 2),
            50,
        )
        .unwrap();
        assert!(trace.converged_to_prediction);
        assert!(is_isomorphic(
            &trace.end.normalize(),
            &build_s(2, 0, 1).unwrap()
        ));
        let mut q = trace.q_start;
        for step in &trace.steps {
            assert!(step.result.q_after > q + CLIMB_MARGIN);
            q = step.result.q_after;
        }
    }

    #[test]
    fn climb_fixed_points() {
        let start = Graph::matching_graph(3).unwrap();
        let trace = hill_climb(&start, &EnumerationQuery::at_least(3, 3), 10).unwrap();
        assert!(trace.steps.is_empty());
        assert!(trace.converged_to_prediction);

        let start = predicted_extremal(7, 3).unwrap();
        let trace = hill_climb(&start, &EnumerationQuery::exact(7, 3), 10).unwrap();
        assert!(trace.steps.is_empty());

        assert!(matches!(
            hill_climb(&Graph::path(3).unwrap(), &EnumerationQuery::exact(2, 2), 10),
            Err(SearchError::StartOutsideClass { m: 2, beta: 1 })
        ));
    }
}
