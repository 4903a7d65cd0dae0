//! Leading linearisations of `H̄ − E[H̄]` in terms of the centred adjacency
//! `Ā_ij = A_ij − μ_ij`:
//!
//! * triangle (cubic) term: `(2/n) Σ_{i<j<k} (1/ν_i + 1/ν_j + 1/ν_k) Ā_ij Ā_ik Ā_jk`,
//! * edge (linear) term: `(1/n) Σ_{i<j} coef_ij Ā_ij` with the coefficients of
//!   [`theory::edge_coefficients`].
//!
//! For α > ½ the cubic term carries the fluctuations, for α < ½ the linear
//! one, and at α = ½ their sum.
//!
//! The cubic term equals `(1/n) tr(R Ā³)` with `R = diag(1/ν)`. Expanding
//! `Ā = A − μ` gives eight traces; the ones involving only `μ` are
//! precomputed once, the rest cost `O(Σ_k d_k² + |E|)` per graph.

use ndarray::{Array1, Array2};
use serde::Serialize;

use crate::graphstats::node_motif_counts;
use crate::model::{EdgeProbMatrix, Graph};
use crate::theory::{self, closed_walks, weighted_square, Regime, TheoryParams};

/// Dense `Ā = A − μ`. Only practical for small graphs; the evaluators below never build it.
#[derive(Debug, Clone, PartialEq)]
pub struct CenteredAdjacency {
    abar: Array2<f64>,
}

impl CenteredAdjacency {
    pub fn new(g: &Graph, mu: &EdgeProbMatrix) -> Self {
        let n = g.n();
        let m = mu.as_array();
        let abar = Array2::from_shape_fn((n, n), |(i, j)| {
            if i == j {
                0.0
            } else {
                f64::from(u8::from(g.has_edge(i, j))) - m[[i, j]]
            }
        });
        CenteredAdjacency { abar }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.abar[[i, j]]
    }

    pub fn as_array(&self) -> &Array2<f64> {
        &self.abar
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LeadingTerms {
    pub cubic: f64,
    pub linear: f64,
    pub regime: Regime,
}

impl LeadingTerms {
    /// The regime-appropriate approximation of `H̄ − E[H̄]`.
    pub fn approximation(&self) -> f64 {
        match self.regime {
            Regime::SparseSide => self.cubic,
            Regime::Dense => self.linear,
            Regime::Critical => self.cubic + self.linear,
        }
    }
}

/// Precomputed state for evaluating the cubic term on many graphs.
#[derive(Debug, Clone)]
pub struct CubicTerm {
    mu: Array2<f64>,
    inv_nu: Array1<f64>,
    mu2: Array2<f64>,
    /// `μ R μ`
    mu_r_mu: Array2<f64>,
    /// `Σ_i r_i (μ³)_ii`
    pure_mu: f64,
    /// Common off-diagonal value when μ is constant.
    uniform: Option<f64>,
}

impl CubicTerm {
    pub fn new(mu: &EdgeProbMatrix, nu: &Array1<f64>) -> Self {
        let m = mu.as_array();
        let mu2 = m.dot(m);
        let inv_nu = nu.mapv(|v| 1.0 / v);
        let pure_mu = closed_walks(m, &mu2).dot(&inv_nu);
        let first = if mu.n() > 1 { m[[0, 1]] } else { 0.0 };
        let uniform = m
            .indexed_iter()
            .all(|((i, j), &x)| i == j || x == first)
            .then_some(first);
        CubicTerm {
            mu: m.clone(),
            inv_nu,
            mu_r_mu: weighted_square(m, nu),
            mu2,
            pure_mu,
            uniform,
        }
    }

    pub fn evaluate(&self, g: &Graph) -> f64 {
        let n = g.n();
        let r = &self.inv_nu;
        let adj = g.adjacency_lists();
        let stats = node_motif_counts(g);

        // tr(R A³)
        let t_aaa: f64 = (0..n).map(|i| r[i] * stats.closed_wedges[i] as f64).sum();

        // tr(R A²μ) + tr(R μA²) + tr(R AμA) = Σ_k Σ_{i,j ∈ N(k)} (2 r_i + r_k) μ_ij
        let mut t_aam = 0.0;
        for (k, nbrs) in adj.iter().enumerate() {
            match self.uniform {
                Some(c) => {
                    let w: f64 = nbrs.iter().map(|&i| 2.0 * r[i] + r[k]).sum();
                    t_aam += c * (nbrs.len() as f64 - 1.0) * w;
                }
                None => {
                    for &i in nbrs {
                        let row = self.mu.row(i);
                        let s: f64 = nbrs.iter().map(|&j| row[j]).sum();
                        t_aam += (2.0 * r[i] + r[k]) * s;
                    }
                }
            }
        }

        // tr(R Aμ²) + tr(R μ²A) + tr(R μAμ), all supported on the edges
        let mut t_amm = 0.0;
        for (i, j) in g.edges() {
            t_amm += (r[i] + r[j]) * self.mu2[[i, j]] + self.mu_r_mu[[i, j]];
        }
        t_amm *= 2.0;

        (t_aaa - t_aam + t_amm - self.pure_mu) / n as f64
    }
}

/// Precomputed edge coefficients for evaluating the linear term on many graphs.
#[derive(Debug, Clone)]
pub struct LinearTerm {
    coef: Array2<f64>,
    /// `Σ_{i<j} coef_ij μ_ij`
    offset: f64,
}

impl LinearTerm {
    pub fn new(mu: &EdgeProbMatrix, params: &TheoryParams) -> Self {
        let coef = theory::edge_coefficients(&params.tables);
        let m = mu.as_array();
        let n = mu.n();
        let mut offset = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                offset += coef[[i, j]] * m[[i, j]];
            }
        }
        LinearTerm { coef, offset }
    }

    pub fn evaluate(&self, g: &Graph) -> f64 {
        let present: f64 = g.edges().map(|(i, j)| self.coef[[i, j]]).sum();
        (present - self.offset) / g.n() as f64
    }
}

/// Both leading terms for one regime, ready to evaluate per graph.
#[derive(Debug, Clone)]
pub struct LeadingTermEvaluator {
    cubic: CubicTerm,
    linear: LinearTerm,
    regime: Regime,
}

impl LeadingTermEvaluator {
    pub fn new(mu: &EdgeProbMatrix, params: &TheoryParams, alpha: f64) -> Self {
        LeadingTermEvaluator {
            cubic: CubicTerm::new(mu, &params.nu),
            linear: LinearTerm::new(mu, params),
            regime: Regime::from_alpha(alpha),
        }
    }

    pub fn evaluate(&self, g: &Graph) -> LeadingTerms {
        LeadingTerms {
            cubic: self.cubic.evaluate(g),
            linear: self.linear.evaluate(g),
            regime: self.regime,
        }
    }
}

pub fn cubic_leading_term(g: &Graph, mu: &EdgeProbMatrix, nu: &Array1<f64>) -> f64 {
    CubicTerm::new(mu, nu).evaluate(g)
}

pub fn linear_leading_term(g: &Graph, mu: &EdgeProbMatrix, params: &TheoryParams) -> f64 {
    LinearTerm::new(mu, params).evaluate(g)
}

pub fn leading_approximation(
    g: &Graph,
    mu: &EdgeProbMatrix,
    params: &TheoryParams,
    alpha: f64,
) -> LeadingTerms {
    LeadingTermEvaluator::new(mu, params, alpha).evaluate(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_weight_matrix, sample_graph, WeightKind, WeightSpec};
    use crate::theory::theory_params;

    fn naive_cubic(g: &Graph, mu: &EdgeProbMatrix, nu: &Array1<f64>) -> f64 {
        let n = g.n();
        let abar = CenteredAdjacency::new(g, mu);
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    s += (1.0 / nu[i] + 1.0 / nu[j] + 1.0 / nu[k])
                        * abar.get(i, j)
                        * abar.get(i, k)
                        * abar.get(j, k);
                }
            }
        }
        2.0 * s / n as f64
    }

    fn hetero(n: usize, seed: u64) -> EdgeProbMatrix {
        let w = build_weight_matrix(&WeightSpec {
            n,
            beta: 0.2,
            kind: WeightKind::UniformRandom { seed },
        })
        .unwrap();
        EdgeProbMatrix::with_p(&w, 0.6).unwrap()
    }

    #[test]
    fn centered_adjacency_invariants() {
        let mu = hetero(7, 1);
        let g = sample_graph(&mu, 2);
        let abar = CenteredAdjacency::new(&g, &mu);
        for i in 0..7 {
            assert_eq!(abar.get(i, i), 0.0);
            for j in 0..7 {
                assert_eq!(abar.get(i, j), abar.get(j, i));
                assert!((-1.0..=1.0).contains(&abar.get(i, j)));
            }
        }
    }

    #[test]
    fn cubic_matches_triple_loop() {
        for (n, seed) in [(3, 1), (12, 5), (41, 9), (60, 11)] {
            let mu = hetero(n, seed);
            let nu = theory::nu_vector(&mu);
            let term = CubicTerm::new(&mu, &nu);
            for s in 0..3 {
                let g = sample_graph(&mu, 100 + s);
                let fast = term.evaluate(&g);
                let slow = naive_cubic(&g, &mu, &nu);
                assert!((fast - slow).abs() <= 1e-12 * slow.abs().max(1e-3), "n={n}: {fast} vs {slow}");
            }
        }
    }

    #[test]
    fn cubic_constant_mu_matches_triple_loop() {
        for (n, prob) in [(3, 0.5), (25, 0.3), (40, 0.07)] {
            let mu = EdgeProbMatrix::erdos_renyi(n, prob).unwrap();
            let nu = theory::nu_vector(&mu);
            let term = CubicTerm::new(&mu, &nu);
            assert!(term.uniform.is_some());
            for s in 0..3 {
                let g = sample_graph(&mu, 7 + s);
                let fast = term.evaluate(&g);
                let slow = naive_cubic(&g, &mu, &nu);
                assert!((fast - slow).abs() <= 1e-12 * slow.abs().max(1e-3), "n={n}: {fast} vs {slow}");
            }
        }
    }

    #[test]
    fn cubic_single_triple_by_hand() {
        let mu = hetero(3, 4);
        let nu = theory::nu_vector(&mu);
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let a01 = 1.0 - mu.get(0, 1);
        let a02 = -mu.get(0, 2);
        let a12 = 1.0 - mu.get(1, 2);
        let expected = (2.0 / 3.0) * (1.0 / nu[0] + 1.0 / nu[1] + 1.0 / nu[2]) * a01 * a02 * a12;
        assert!((cubic_leading_term(&g, &mu, &nu) - expected).abs() < 1e-14);
    }

    #[test]
    fn zero_probabilities_give_zero_cubic() {
        let mu = EdgeProbMatrix::from_probabilities(Array2::zeros((5, 5))).unwrap();
        let nu = Array1::ones(5);
        assert_eq!(cubic_leading_term(&Graph::empty(5), &mu, &nu), 0.0);
    }

    #[test]
    fn linear_on_empty_and_complete() {
        let mu = hetero(9, 3);
        let params = theory_params(&mu).unwrap();
        let coef = theory::edge_coefficients(&params.tables);
        let (mut neg, mut pos) = (0.0, 0.0);
        for i in 0..9 {
            for j in (i + 1)..9 {
                neg -= coef[[i, j]] * mu.get(i, j);
                pos += coef[[i, j]] * (1.0 - mu.get(i, j));
            }
        }
        let lin_empty = linear_leading_term(&Graph::empty(9), &mu, &params);
        let lin_full = linear_leading_term(&Graph::complete(9), &mu, &params);
        assert!((lin_empty - neg / 9.0).abs() < 1e-14);
        assert!((lin_full - pos / 9.0).abs() < 1e-14);
    }

    #[test]
    fn regime_selects_approximation() {
        let mu = hetero(8, 2);
        let params = theory_params(&mu).unwrap();
        let g = sample_graph(&mu, 9);
        let sparse = leading_approximation(&g, &mu, &params, 0.8);
        assert_eq!(sparse.regime, Regime::SparseSide);
        assert_eq!(sparse.approximation(), sparse.cubic);
        let dense = leading_approximation(&g, &mu, &params, 0.2);
        assert_eq!(dense.approximation(), dense.linear);
        let crit = leading_approximation(&g, &mu, &params, 0.5);
        assert_eq!(crit.approximation(), crit.cubic + crit.linear);
    }
}
