use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphstats::{closure_coefficients, clustering_from_stats, node_motif_counts};
use crate::model::{EdgeProbMatrix, Graph};

/// Largest graph for which all `2^{C(n,2)}` edge subsets are enumerated.
pub const MAX_ENUM_NODES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnumResult {
    pub mean: f64,
    pub variance: f64,
    pub clustering_mean: f64,
    pub clustering_variance: f64,
    pub graphs: u64,
    /// Should be 1 up to rounding.
    pub total_probability: f64,
}

/// Exact moments of `H̄` (and `C̄`) by summing over every graph on `n ≤ 5` nodes.
pub fn exact_enumeration(mu: &EdgeProbMatrix) -> Result<EnumResult> {
    let n = mu.n();
    if n > MAX_ENUM_NODES {
        return Err(Error::Size(format!(
            "exact enumeration supports n <= {MAX_ENUM_NODES}, got {n}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let count = 1u64 << pairs.len();

    let mut outcomes = Vec::with_capacity(count as usize);
    for mask in 0..count {
        let mut g = Graph::empty(n);
        let mut prob = 1.0;
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            let m = mu.get(i, j);
            if mask >> bit & 1 == 1 {
                g.add_edge(i, j);
                prob *= m;
            } else {
                prob *= 1.0 - m;
            }
        }
        let stats = node_motif_counts(&g);
        let h = closure_coefficients(&stats).1;
        let c = clustering_from_stats(&stats).1;
        outcomes.push((prob, h, c));
    }

    let total_probability: f64 = outcomes.iter().map(|o| o.0).sum();
    let mean: f64 = outcomes.iter().map(|o| o.0 * o.1).sum();
    let clustering_mean: f64 = outcomes.iter().map(|o| o.0 * o.2).sum();
    let variance = outcomes.iter().map(|o| o.0 * (o.1 - mean).powi(2)).sum();
    let clustering_variance = outcomes
        .iter()
        .map(|o| o.0 * (o.2 - clustering_mean).powi(2))
        .sum();
    Ok(EnumResult {
        mean,
        variance,
        clustering_mean,
        clustering_variance,
        graphs: count,
        total_probability,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_nodes_half() {
        let r = exact_enumeration(&EdgeProbMatrix::erdos_renyi(3, 0.5).unwrap()).unwrap();
        assert_eq!(r.graphs, 8);
        assert!((r.mean - 0.125).abs() < 1e-12);
        assert!((r.variance - 0.109375).abs() < 1e-12);
        assert!((r.total_probability - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_nodes_have_no_wedges() {
        let r = exact_enumeration(&EdgeProbMatrix::erdos_renyi(2, 0.7).unwrap()).unwrap();
        assert_eq!(r.mean, 0.0);
        assert_eq!(r.variance, 0.0);
    }

    #[test]
    fn certain_edges_are_a_point_mass() {
        let r = exact_enumeration(&EdgeProbMatrix::erdos_renyi(4, 1.0).unwrap()).unwrap();
        assert_eq!(r.mean, 1.0);
        assert_eq!(r.variance, 0.0);
        assert_eq!(r.graphs, 64);
    }

    #[test]
    fn too_large() {
        let mu = EdgeProbMatrix::erdos_renyi(6, 0.5).unwrap();
        assert!(matches!(exact_enumeration(&mu), Err(Error::Size(_))));
    }
}
