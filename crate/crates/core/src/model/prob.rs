use std::path::PathBuf;

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use super::weights::{build_weight_matrix, WeightMatrix, WeightSpec};
use crate::error::{Error, Result};

/// Edge probabilities `μ_ij = p·w_ij`, symmetric with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeProbMatrix {
    alpha: Option<f64>,
    p: f64,
    mu: Array2<f64>,
}

impl EdgeProbMatrix {
    /// Exactly one of `alpha ∈ (0, 1)` (giving `p = n^{-α}`) or an explicit
    /// `p ∈ (0, 1]` must be supplied.
    pub fn new(w: &WeightMatrix, alpha: Option<f64>, p: Option<f64>) -> Result<Self> {
        let n = w.n();
        let p = match (alpha, p) {
            (Some(_), Some(_)) => {
                return Err(Error::param("alpha", "give either alpha or p, not both"));
            }
            (None, None) => return Err(Error::param("alpha", "one of alpha or p is required")),
            (Some(a), None) => {
                if !(a > 0.0 && a < 1.0) {
                    return Err(Error::param("alpha", format!("must lie in (0, 1), got {a}")));
                }
                (n as f64).powf(-a)
            }
            (None, Some(p)) => {
                if !(p > 0.0 && p <= 1.0) {
                    return Err(Error::param("p", format!("must lie in (0, 1], got {p}")));
                }
                p
            }
        };
        let mu = w.as_array().mapv(|x| p * x);
        Ok(EdgeProbMatrix { alpha, p, mu })
    }

    pub fn with_alpha(w: &WeightMatrix, alpha: f64) -> Result<Self> {
        Self::new(w, Some(alpha), None)
    }

    pub fn with_p(w: &WeightMatrix, p: f64) -> Result<Self> {
        Self::new(w, None, Some(p))
    }

    /// Plain Erdős–Rényi probabilities: `μ_ij = p` off the diagonal.
    pub fn erdos_renyi(n: usize, p: f64) -> Result<Self> {
        Self::with_p(&WeightMatrix::constant(n, 1.0)?, p)
    }

    /// Arbitrary symmetric probability matrix with zero diagonal and entries
    /// in `[0, 1]`. Used for degenerate cases (`μ ≡ 0`) that no weight matrix produces.
    pub fn from_probabilities(mu: Array2<f64>) -> Result<Self> {
        let (rows, cols) = mu.dim();
        if rows != cols || rows < 2 {
            return Err(Error::param("n", format!("probability matrix is {rows}x{cols}")));
        }
        for i in 0..rows {
            if mu[[i, i]] != 0.0 {
                return Err(Error::Format(format!("mu[{i}][{i}] must be zero")));
            }
            for j in (i + 1)..rows {
                let x = mu[[i, j]];
                if x != mu[[j, i]] || !(0.0..=1.0).contains(&x) {
                    return Err(Error::Format(format!("mu[{i}][{j}] = {x} is not a symmetric probability")));
                }
            }
        }
        let p = mu.iter().cloned().fold(0.0, f64::max);
        Ok(EdgeProbMatrix { alpha: None, p, mu })
    }

    pub fn n(&self) -> usize {
        self.mu.nrows()
    }

    pub fn alpha(&self) -> Option<f64> {
        self.alpha
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.mu[[i, j]]
    }

    pub fn as_array(&self) -> &Array2<f64> {
        &self.mu
    }
}

/// Where the weight matrix comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightSource {
    Generated(WeightSpec),
    File(PathBuf),
}

/// Fully resolved model inputs, echoed into every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub weights: WeightSource,
    pub alpha: Option<f64>,
    pub p: Option<f64>,
}

impl ModelSpec {
    pub fn erdos_renyi_alpha(n: usize, alpha: f64) -> Self {
        ModelSpec {
            weights: WeightSource::Generated(WeightSpec::erdos_renyi(n)),
            alpha: Some(alpha),
            p: None,
        }
    }

    pub fn erdos_renyi_p(n: usize, p: f64) -> Self {
        ModelSpec {
            weights: WeightSource::Generated(WeightSpec::erdos_renyi(n)),
            alpha: None,
            p: Some(p),
        }
    }

    pub fn weight_matrix(&self) -> Result<WeightMatrix> {
        match &self.weights {
            WeightSource::Generated(spec) => build_weight_matrix(spec),
            WeightSource::File(path) => WeightMatrix::read_from(path),
        }
    }

    pub fn resolve(&self) -> Result<EdgeProbMatrix> {
        EdgeProbMatrix::new(&self.weight_matrix()?, self.alpha, self.p)
    }
}
