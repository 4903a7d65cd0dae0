//! Per-node wedge and triangle counts and the closure / clustering coefficients.
//!
//! For node `i`:
//!
//! * `d_i` is the degree,
//! * `V_i = Σ_{j,k ∉ {i}} A_ij A_jk` counts ordered wedges whose *head* is `i`
//!   (path `i – j – k`), computed as `Σ_j A_ij (d_j − 1)`,
//! * `Δ_i = Σ_{j≠k} A_ij A_jk A_ki` is twice the number of triangles through `i`.
//!
//! The local closure coefficient is `Δ_i / V_i` and the local clustering
//! coefficient `Δ_i / (d_i (d_i − 1))`; both are zero when the denominator is.

use crate::model::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeStats {
    pub degree: Vec<u64>,
    pub head_wedges: Vec<u64>,
    pub closed_wedges: Vec<u64>,
}

impl NodeStats {
    pub fn n(&self) -> usize {
        self.degree.len()
    }

    pub fn triangle_count(&self) -> u64 {
        self.closed_wedges.iter().sum::<u64>() / 6
    }
}

pub fn node_motif_counts(g: &Graph) -> NodeStats {
    let n = g.n();
    let degree: Vec<u64> = (0..n).map(|i| g.degree(i) as u64).collect();
    let mut head_wedges = vec![0u64; n];
    let mut closed_wedges = vec![0u64; n];
    for (i, j) in g.edges() {
        head_wedges[i] += degree[j] - 1;
        head_wedges[j] += degree[i] - 1;
        let common = g.common_neighbors(i, j) as u64;
        closed_wedges[i] += common;
        closed_wedges[j] += common;
    }
    NodeStats {
        degree,
        head_wedges,
        closed_wedges,
    }
}

/// Local closure coefficients and their average `H̄`.
pub fn closure_coefficients(s: &NodeStats) -> (Vec<f64>, f64) {
    let local: Vec<f64> = s
        .closed_wedges
        .iter()
        .zip(&s.head_wedges)
        .map(|(&t, &v)| ratio(t, v))
        .collect();
    let avg = mean(&local);
    (local, avg)
}

/// Local clustering coefficients and their average `C̄`.
pub fn clustering_coefficients(g: &Graph) -> (Vec<f64>, f64) {
    clustering_from_stats(&node_motif_counts(g))
}

pub fn clustering_from_stats(s: &NodeStats) -> (Vec<f64>, f64) {
    let local: Vec<f64> = s
        .closed_wedges
        .iter()
        .zip(&s.degree)
        .map(|(&t, &d)| ratio(t, d * d.saturating_sub(1)))
        .collect();
    let avg = mean(&local);
    (local, avg)
}

/// `H̄` straight from a graph.
pub fn average_closure(g: &Graph) -> f64 {
    closure_coefficients(&node_motif_counts(g)).1
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        0.0
    } else {
        xs.iter().sum::<f64>() / xs.len() as f64
    }
}
