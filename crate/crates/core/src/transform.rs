//! Edge rewirings that do not decrease `q`.
//!
//! * [`rotate`]: delete `u_1u_2`, insert `v_1v_2` when the eigenvector sum on
//!   the new pair is at least the sum on the old one. `q` strictly increases.
//! * [`kelmans_swap`]: replace disjoint `u_iv_i`, `u_jv_j` by `u_iu_j`, `v_iv_j`.
//!   For a principal `x`, `q` grows by at least `2(x_{v_j}-x_{u_i})(x_{v_i}-x_{u_j})`.
//! * [`pendant_collapse`]: move every edge of a set onto a fresh pendant
//!   vertex at a chosen center.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{edge, Edge, Graph, GraphError};
use crate::spectral::{apply_q, q_radius};

/// Slack allowed when checking that a rotation did not lower `q`.
pub const SOLVER_MARGIN: f64 = 1e-10;

/// Tolerance for accepting a caller-supplied vector as the principal eigenvector.
pub const EIGENVECTOR_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransformError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("{0:?} is not an edge")]
    EdgeMissing(Edge),
    #[error("{0:?} is already an edge")]
    EdgePresent(Edge),
    #[error("{0:?} is a loop")]
    Loop(Edge),
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("vector is not a principal eigenvector of the graph")]
    EigenvectorMismatch,
    #[error("eigenvector sum on the new edge ({added}) is below the sum on the removed edge ({removed}) or zero")]
    SumCondition { removed: f64, added: f64 },
    #[error("edges {0:?} and {1:?} share a vertex")]
    SharedVertex(Edge, Edge),
    #[error("edge {0:?} listed twice")]
    DuplicateEdge(Edge),
    #[error("q decreased from {before} to {after}")]
    NotIncreasing { before: f64, after: f64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Which move produced a [`RewireResult`].
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Certificate {
    Rotation {
        removed: Edge,
        added: Edge,
    },
    KelmansSwap {
        /// `2(x_{v_j}-x_{u_i})(x_{v_i}-x_{u_j})`.
        predicted_gain: f64,
        /// `x` was a principal eigenvector, so `predicted_gain` bounds the change.
        principal: bool,
        /// `principal` and both factors strictly positive: `q` strictly grows.
        strict: bool,
    },
    PendantCollapse {
        center: usize,
        moved: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RewireResult {
    pub graph: Graph,
    pub q_before: f64,
    pub q_after: f64,
    pub certificate: Certificate,
}

impl RewireResult {
    pub fn delta(&self) -> f64 {
        self.q_after - self.q_before
    }
}

fn check_vertex(g: &Graph, v: usize) -> Result<(), TransformError> {
    if v < g.n() {
        Ok(())
    } else {
        Err(TransformError::VertexOutOfRange {
            vertex: v,
            n: g.n(),
        })
    }
}

/// Nonnegative, unit, and `Qx = q(G)x` within [`EIGENVECTOR_TOLERANCE`].
pub fn is_principal_eigenvector(g: &Graph, x: &[f64], q: f64) -> bool {
    if x.len() != g.n() || x.iter().any(|&v| v < -EIGENVECTOR_TOLERANCE) {
        return false;
    }
    let len = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (len - 1.0).abs() > EIGENVECTOR_TOLERANCE {
        return false;
    }
    apply_q(g, x)
        .iter()
        .zip(x)
        .all(|(y, xi)| (y - q * xi).abs() <= EIGENVECTOR_TOLERANCE)
}

/// `G - remove + add`, with `x` the principal eigenvector of `G`.
pub fn rotate(
    g: &Graph,
    x: &[f64],
    remove: Edge,
    add: Edge,
) -> Result<RewireResult, TransformError> {
    for v in [remove.0, remove.1, add.0, add.1] {
        check_vertex(g, v)?;
    }
    if g.m() == 0 {
        return Err(TransformError::EmptyGraph);
    }
    if add.0 == add.1 {
        return Err(TransformError::Loop(add));
    }
    if !g.has_edge(remove.0, remove.1) {
        return Err(TransformError::EdgeMissing(remove));
    }
    if g.has_edge(add.0, add.1) {
        return Err(TransformError::EdgePresent(add));
    }
    let q_before = q_radius(g).q;
    if !is_principal_eigenvector(g, x, q_before) {
        return Err(TransformError::EigenvectorMismatch);
    }
    let removed = x[remove.0] + x[remove.1];
    let added = x[add.0] + x[add.1];
    if added < removed || added <= 0.0 {
        return Err(TransformError::SumCondition { removed, added });
    }

    let mut out = g.clone();
    out.remove_edge(remove.0, remove.1)?;
    out.add_edge(add.0, add.1)?;
    let q_after = q_radius(&out).q;
    if q_after <= q_before - SOLVER_MARGIN {
        return Err(TransformError::NotIncreasing {
            before: q_before,
            after: q_after,
        });
    }
    Ok(RewireResult {
        graph: out,
        q_before,
        q_after,
        certificate: Certificate::Rotation {
            removed: edge(remove.0, remove.1),
            added: edge(add.0, add.1),
        },
    })
}

/// `G - u_iv_i - u_jv_j + u_iu_j + v_iv_j` for `first = (u_i, v_i)` and
/// `second = (u_j, v_j)`. `x` need not be principal; the certificate says
/// whether it was.
pub fn kelmans_swap(
    g: &Graph,
    x: &[f64],
    first: (usize, usize),
    second: (usize, usize),
) -> Result<RewireResult, TransformError> {
    let (ui, vi) = first;
    let (uj, vj) = second;
    for v in [ui, vi, uj, vj] {
        check_vertex(g, v)?;
    }
    if x.len() != g.n() {
        return Err(TransformError::EigenvectorMismatch);
    }
    for e in [first, second] {
        if !g.has_edge(e.0, e.1) {
            return Err(TransformError::EdgeMissing(e));
        }
    }
    if [ui, vi].iter().any(|v| *v == uj || *v == vj) {
        return Err(TransformError::SharedVertex(first, second));
    }
    for target in [(ui, uj), (vi, vj)] {
        if g.has_edge(target.0, target.1) {
            return Err(TransformError::EdgePresent(target));
        }
    }

    let q_before = q_radius(g).q;
    let principal = is_principal_eigenvector(g, x, q_before);
    let left = x[vj] - x[ui];
    let right = x[vi] - x[uj];
    let predicted_gain = 2.0 * left * right;

    let mut out = g.clone();
    out.remove_edge(ui, vi)?;
    out.remove_edge(uj, vj)?;
    out.add_edge(ui, uj)?;
    out.add_edge(vi, vj)?;
    let q_after = q_radius(&out).q;
    Ok(RewireResult {
        graph: out,
        q_before,
        q_after,
        certificate: Certificate::KelmansSwap {
            predicted_gain,
            principal,
            strict: principal && left > 0.0 && right > 0.0,
        },
    })
}

/// Deletes each edge of `moved` and attaches one new pendant vertex to
/// `center` per deleted edge. The edge count is unchanged; new vertices are
/// appended in the order of `moved`.
///
/// Accepts any edge subset, not only the `E_2` set of an extremal matching.
pub fn pendant_collapse(
    g: &Graph,
    center: usize,
    moved: &[Edge],
) -> Result<RewireResult, TransformError> {
    check_vertex(g, center)?;
    let mut seen: Vec<Edge> = Vec::with_capacity(moved.len());
    for &(a, b) in moved {
        check_vertex(g, a)?;
        check_vertex(g, b)?;
        if !g.has_edge(a, b) {
            return Err(TransformError::EdgeMissing((a, b)));
        }
        let e = edge(a, b);
        if seen.contains(&e) {
            return Err(TransformError::DuplicateEdge(e));
        }
        seen.push(e);
    }

    let q_before = q_radius(g).q;
    let mut out = g.clone();
    let first = out.add_vertices(moved.len())?;
    for (i, &(a, b)) in moved.iter().enumerate() {
        out.remove_edge(a, b)?;
        out.add_edge(center, first + i)?;
    }
    let q_after = q_radius(&out).q;
    Ok(RewireResult {
        graph: out,
        q_before,
        q_after,
        certificate: Certificate::PendantCollapse {
            center,
            moved: moved.len(),
        },
    })
}
