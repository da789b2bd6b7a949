//! The extremal family `S_{a,b,c}`, the fixed graphs `H_1`–`H_4`, and the
//! predicted maximizer of `q` over graphs with `m` edges and matching number β.
//!
//! `S_{a,b,c}` is a center `v_1` with `a` pendant edges, `b` pendant paths of
//! length two and `c` pendant triangles. Vertex numbering: `v_1 = 0`, then the
//! pendant leaves, then each path as (near, far), then each triangle's two
//! outer vertices, then any isolated edges.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("S_{{a,b,c}} needs a + b + c >= 1")]
    AllZero,
    #[error("H_k is defined for k in 1..=4, got {0}")]
    UnknownH(u8),
    #[error("matching number {0} < 2; use extremal_beta1")]
    BetaTooSmall(usize),
    #[error("no graph has {m} edges and matching number {beta}")]
    Infeasible { m: usize, beta: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `(a, b, c, d)`: the maximizer is `S_{a,b,c} ∪ d·K_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyParams {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl FamilyParams {
    pub fn size(&self) -> usize {
        self.a + 2 * self.b + 3 * self.c + self.d
    }

    /// Matching number of `S_{a,b,c} ∪ d·K_2`.
    pub fn matching_number(&self) -> usize {
        let center = usize::from(self.a > 0);
        self.b + self.c + self.d + center
    }

    pub fn order(&self) -> usize {
        1 + self.a + 2 * self.b + 2 * self.c + 2 * self.d
    }
}

pub fn build_s(a: usize, b: usize, c: usize) -> Result<Graph, FamilyError> {
    if a + b + c == 0 {
        return Err(FamilyError::AllZero);
    }
    let mut g = Graph::empty(1 + a + 2 * b + 2 * c)?;
    let mut next = 1;
    for _ in 0..a {
        g.add_edge(0, next)?;
        next += 1;
    }
    for _ in 0..b {
        g.add_edge(0, next)?;
        g.add_edge(next, next + 1)?;
        next += 2;
    }
    for _ in 0..c {
        g.add_edge(0, next)?;
        g.add_edge(0, next + 1)?;
        g.add_edge(next, next + 1)?;
        next += 2;
    }
    Ok(g)
}

/// The fixed subgraphs. Vertices are `u_1, v_1, u_2, v_2, (u_3, v_3)` in that
/// order, then the extra pendant of `H_3`.
///
/// * `H_1`: `K_4` minus `u_1 u_2`.
/// * `H_2`: the matching `u_i v_i` plus the triangle `v_1 v_2 v_3`.
/// * `H_3`: `H_1` plus a pendant edge at `v_1`.
/// * `H_4`: `H_2` plus `u_2 v_1`.
pub fn build_h(k: u8) -> Result<Graph, FamilyError> {
    const U1: usize = 0;
    const V1: usize = 1;
    const U2: usize = 2;
    const V2: usize = 3;
    const U3: usize = 4;
    const V3: usize = 5;
    let h1 = [(U1, V1), (U2, V2), (V1, V2), (U1, V2), (U2, V1)];
    let h2 = [(U1, V1), (U2, V2), (U3, V3), (V1, V2), (V2, V3), (V1, V3)];
    let g = match k {
        1 => Graph::from_edges(4, &h1)?,
        2 => Graph::from_edges(6, &h2)?,
        3 => {
            let mut g = Graph::from_edges(5, &h1)?;
            g.add_edge(V1, 4)?;
            g
        }
        4 => {
            let mut g = Graph::from_edges(6, &h2)?;
            g.add_edge(U2, V1)?;
            g
        }
        other => return Err(FamilyError::UnknownH(other)),
    };
    Ok(g)
}

/// Parameters of the maximizer for `m` edges and matching number `beta >= 2`.
///
/// * `m >= 3β - 1`: `(m - 3β + 3, 0, β - 1, 0)`
/// * `m <= 3β - 2`, `m - β` odd: `(1, 1, (m - β - 1)/2, (3β - m - 3)/2)`
/// * `m <= 3β - 2`, `m - β` even: `(1, 0, (m - β)/2, (3β - m - 2)/2)`
pub fn extremal_params(m: usize, beta: usize) -> Result<FamilyParams, FamilyError> {
    if beta < 2 {
        return Err(FamilyError::BetaTooSmall(beta));
    }
    if m < beta {
        return Err(FamilyError::Infeasible { m, beta });
    }
    let params = if m + 1 >= 3 * beta {
        FamilyParams {
            a: m + 3 - 3 * beta,
            b: 0,
            c: beta - 1,
            d: 0,
        }
    } else if (m - beta) % 2 == 1 {
        FamilyParams {
            a: 1,
            b: 1,
            c: (m - beta - 1) / 2,
            d: (3 * beta - m - 3) / 2,
        }
    } else {
        FamilyParams {
            a: 1,
            b: 0,
            c: (m - beta) / 2,
            d: (3 * beta - m - 2) / 2,
        }
    };
    debug_assert_eq!(params.size(), m);
    debug_assert_eq!(params.matching_number(), beta);
    Ok(params)
}

/// Matching number one: stars, plus the triangle when `m = 3`.
/// Returns the maximal `q` and the maximizers.
pub fn extremal_beta1(m: usize) -> Result<(f64, Vec<Graph>), FamilyError> {
    if m == 0 {
        return Err(FamilyError::Infeasible { m, beta: 1 });
    }
    let star = Graph::star(m)?;
    if m == 3 {
        Ok((4.0, vec![star, Graph::complete(3)?]))
    } else {
        Ok(((m + 1) as f64, vec![star]))
    }
}

/// `S_{a,b,c} ∪ d·K_2` for the parameters of [`extremal_params`].
pub fn predicted_extremal(m: usize, beta: usize) -> Result<Graph, FamilyError> {
    let p = extremal_params(m, beta)?;
    Ok(build_s(p.a, p.b, p.c)?.disjoint_union(&Graph::matching_graph(p.d)?)?)
}
