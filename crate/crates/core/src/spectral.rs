//! Signless Laplacian spectral radius `q(G)` and principal eigenvector.
//!
//! `Q(G) = D(G) + A(G)` is entrywise nonnegative and positive semidefinite,
//! so on each connected component power iteration from the all-ones vector
//! converges to the positive Perron vector. A disconnected graph reports the
//! largest component value and an eigenvector supported on that component,
//! zero elsewhere.

use thiserror::Error;

use crate::graph::Graph;

/// Margin for comparing `q` values of different graphs.
pub const Q_MARGIN: f64 = 1e-9;

/// Required bound on `‖Qx - qx‖₂` for reported spectral data.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

/// Accepted deviation of `‖x‖₂` from 1 in [`rayleigh_sum`].
pub const UNIT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("vector has {found} entries, graph has {expected} vertices")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vector norm {0} is not 1")]
    NotUnit(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Stop once successive Rayleigh quotients differ by at most this much
    /// and the residual is within `residual_tolerance`.
    pub convergence: f64,
    pub residual_tolerance: f64,
    pub max_iterations: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            convergence: 1e-13,
            residual_tolerance: RESIDUAL_TOLERANCE,
            max_iterations: 1_000_000,
        }
    }
}

/// `q(G)`, a nonnegative unit principal eigenvector and its residual.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData {
    pub q: f64,
    pub x: Vec<f64>,
    /// `‖Q x - q x‖₂`.
    pub residual: f64,
    /// Index (in [`Graph::components`] order) of the component carrying `x`;
    /// `None` for an edgeless graph.
    pub support_component: Option<usize>,
}

impl SpectralData {
    pub fn zero(n: usize) -> Self {
        Self {
            q: 0.0,
            x: vec![0.0; n],
            residual: 0.0,
            support_component: None,
        }
    }
}

pub fn q_radius(g: &Graph) -> SpectralData {
    q_radius_with(g, &SolverConfig::default())
}

pub fn q_radius_with(g: &Graph, config: &SolverConfig) -> SpectralData {
    if g.m() == 0 {
        return SpectralData::zero(g.n());
    }
    if g.is_connected() {
        let (q, x) = perron(g, config);
        let residual = residual_norm(g, q, &x);
        return SpectralData {
            q,
            x,
            residual,
            support_component: Some(0),
        };
    }

    let parts = g.components();
    let solved: Vec<Option<(f64, Vec<f64>)>> = parts
        .parts
        .iter()
        .map(|p| (p.graph.m() > 0).then(|| perron(&p.graph, config)))
        .collect();
    let best_q = solved
        .iter()
        .flatten()
        .map(|(q, _)| *q)
        .fold(f64::NEG_INFINITY, f64::max);
    // ties go to the component with the smallest vertex
    let index = solved
        .iter()
        .position(|s| matches!(s, Some((q, _)) if *q >= best_q - Q_MARGIN))
        .expect("some component has an edge");
    let (q, local) = solved[index].clone().expect("chosen component is solved");
    let mut x = vec![0.0; g.n()];
    for (i, &v) in parts.parts[index].vertices.iter().enumerate() {
        x[v] = local[i];
    }
    let residual = residual_norm(g, q, &x);
    SpectralData {
        q,
        x,
        residual,
        support_component: Some(index),
    }
}

/// `y = Q x`.
pub fn apply_q(g: &Graph, x: &[f64]) -> Vec<f64> {
    (0..g.n())
        .map(|v| g.degree(v) as f64 * x[v] + g.neighbors(v).map(|w| x[w]).sum::<f64>())
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn residual_norm(g: &Graph, q: f64, x: &[f64]) -> f64 {
    let y = apply_q(g, x);
    y.iter()
        .zip(x)
        .map(|(yi, xi)| (yi - q * xi).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Power iteration on a connected graph with at least one edge.
fn perron(g: &Graph, config: &SolverConfig) -> (f64, Vec<f64>) {
    let n = g.n();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut previous = f64::NEG_INFINITY;
    for _ in 0..config.max_iterations {
        let y = apply_q(g, &x);
        let q = dot(&x, &y);
        let residual = y
            .iter()
            .zip(&x)
            .map(|(yi, xi)| (yi - q * xi).powi(2))
            .sum::<f64>()
            .sqrt();
        let scale = norm(&y);
        let settled =
            (q - previous).abs() <= config.convergence && residual <= config.residual_tolerance;
        if settled || residual <= 1e-14 * q.max(1.0) {
            break;
        }
        previous = q;
        x = y.into_iter().map(|v| v / scale).collect();
    }
    // one more Rayleigh quotient on the normalized iterate
    let scale = norm(&x);
    x.iter_mut().for_each(|v| *v /= scale);
    let q = dot(&x, &apply_q(g, &x));
    (q, x)
}

/// `Σ_{uv∈E} (x_u + x_v)²`, equal to `xᵀ Q x`.
pub fn rayleigh_sum(g: &Graph, x: &[f64]) -> Result<f64, SpectralError> {
    if x.len() != g.n() {
        return Err(SpectralError::DimensionMismatch {
            expected: g.n(),
            found: x.len(),
        });
    }
    let len = norm(x);
    if (len - 1.0).abs() > UNIT_TOLERANCE {
        return Err(SpectralError::NotUnit(len));
    }
    Ok(g.edges().iter().map(|&(u, v)| (x[u] + x[v]).powi(2)).sum())
}

/// `max_v |q x_v - d(v) x_v - Σ_{w∈N(v)} x_w|`.
pub fn eigen_equation_check(g: &Graph, s: &SpectralData) -> f64 {
    let y = apply_q(g, &s.x);
    y.iter()
        .zip(&s.x)
        .map(|(yi, xi)| (s.q * xi - yi).abs())
        .fold(0.0, f64::max)
}
