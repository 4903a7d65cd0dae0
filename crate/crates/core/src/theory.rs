//! Asymptotic variance of the average closure coefficient.
//!
//! With `μ_ij = p·w_ij`, `q_ij = μ_ij(1 − μ_ij)` and `r_i = 1/ν_i`:
//!
//! ```text
//! ν_i  = Σ_{j,k} μ_ij μ_jk
//! b_ij = Σ_k μ_ik μ_jk / ν_k          c_ij = Σ_k μ_ik μ_jk / ν_i
//! a_s  = Σ_{i,j,k} μ_ij μ_jk μ_ki μ_is / ν_i²
//! e_is = Σ_{j,k,t} μ_ij μ_jk μ_ki μ_st / ν_i²
//! σ₁²  = (4/n²) Σ_{i<j<k} (r_i + r_j + r_k)² q_ij q_jk q_ki
//! σ₂²  = (1/n²) Σ_{i<j} (2b_ij + 2c_ij + 2c_ji − (a_i + a_j) − (e_ij + e_ji))² q_ij
//! ```
//!
//! Everything is evaluated with dense matrix products. Because `μ` has a zero
//! diagonal, every term of the unrestricted sums above with coincident indices
//! vanishes, so `a` and `e` factor through `T_i = (μ³)_ii`, the weight of
//! ordered closed 3-walks at `i`:
//!
//! ```text
//! a_s  = Σ_i (T_i / ν_i²) μ_is        e_is = (T_i / ν_i²) Σ_t μ_st
//! ```
//!
//! `ν_i` is the full double sum, which includes the walk `i → j → i`; the
//! head-wedge count `V_i` excludes it. The difference is lower order.
//!
//! The edge coefficient has the same `2b_ij + 2c_ij + 2c_ji − …` form in every
//! regime, including α = ½.

use ndarray::{Array1, Array2, Zip};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::EdgeProbMatrix;

/// Which variance component dominates, decided by α against ½.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// α < ½: edge fluctuations (σ₂²) dominate.
    Dense,
    /// α = ½: both components are of the same order.
    Critical,
    /// α > ½: triangle fluctuations (σ₁²) dominate.
    SparseSide,
}

impl Regime {
    pub const CRITICAL_TOLERANCE: f64 = 1e-12;

    pub fn from_alpha(alpha: f64) -> Self {
        if (alpha - 0.5).abs() <= Self::CRITICAL_TOLERANCE {
            Regime::Critical
        } else if alpha < 0.5 {
            Regime::Dense
        } else {
            Regime::SparseSide
        }
    }
}

#[derive(Debug, Clone)]
pub struct CoefficientTables {
    /// Symmetric, zero diagonal.
    pub b: Array2<f64>,
    /// `c_ij ν_i = c_ji ν_j`; zero diagonal.
    pub c: Array2<f64>,
    pub a: Array1<f64>,
    pub e: Array2<f64>,
}

#[derive(Debug, Clone)]
pub struct TheoryParams {
    pub nu: Array1<f64>,
    pub tables: CoefficientTables,
    pub sigma1_sq: f64,
    pub sigma2_sq: f64,
    pub sigma_sq: f64,
}

/// `ν = μ (μ 1)`.
pub fn nu_vector(mu: &EdgeProbMatrix) -> Array1<f64> {
    let m = mu.as_array();
    m.dot(&m.sum_axis(ndarray::Axis(1)))
}

fn check_nu(nu: &Array1<f64>) -> Result<()> {
    if let Some((i, &v)) = nu.iter().enumerate().find(|(_, &v)| v.is_nan() || v <= 0.0) {
        return Err(Error::param("nu", format!("ν_{i} = {v}; every node needs a positive two-step weight")));
    }
    Ok(())
}

/// `T_i = (μ³)_ii = Σ_j μ_ij (μ²)_ij`.
pub(crate) fn closed_walks(mu: &Array2<f64>, mu2: &Array2<f64>) -> Array1<f64> {
    (mu * mu2).sum_axis(ndarray::Axis(1))
}

/// `μ · diag(1/ν) · μ`, including its diagonal. Exactly symmetric.
pub(crate) fn weighted_square(mu: &Array2<f64>, nu: &Array1<f64>) -> Array2<f64> {
    let scaled = mu / &nu.view().insert_axis(ndarray::Axis(0));
    let mut out = scaled.dot(mu);
    let n = out.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            out[[j, i]] = out[[i, j]];
        }
    }
    out
}

pub fn coefficient_tables(mu: &EdgeProbMatrix, nu: &Array1<f64>) -> Result<CoefficientTables> {
    check_nu(nu)?;
    let m = mu.as_array();
    let n = mu.n();
    let mu2 = m.dot(m);

    let mut b = weighted_square(m, nu);
    let mut c = &mu2 / &nu.view().insert_axis(ndarray::Axis(1));
    for i in 0..n {
        b[[i, i]] = 0.0;
        c[[i, i]] = 0.0;
    }

    let t = closed_walks(m, &mu2);
    let weight = Zip::from(&t).and(nu).map_collect(|&t, &v| t / (v * v));
    let a = m.t().dot(&weight);
    let row_sums = m.sum_axis(ndarray::Axis(1));
    let e = weight
        .view()
        .insert_axis(ndarray::Axis(1))
        .dot(&row_sums.view().insert_axis(ndarray::Axis(0)));

    Ok(CoefficientTables { b, c, a, e })
}

/// Edge coefficients `2b_ij + 2c_ij + 2c_ji − (a_i + a_j) − (e_ij + e_ji)`;
/// symmetric with a zero diagonal.
pub fn edge_coefficients(tables: &CoefficientTables) -> Array2<f64> {
    let n = tables.a.len();
    let mut coef = Array2::zeros((n, n));
    for i in 0..n {
        for j in (i + 1)..n {
            let x = 2.0 * tables.b[[i, j]] + 2.0 * tables.c[[i, j]] + 2.0 * tables.c[[j, i]]
                - (tables.a[i] + tables.a[j])
                - (tables.e[[i, j]] + tables.e[[j, i]]);
            coef[[i, j]] = x;
            coef[[j, i]] = x;
        }
    }
    coef
}

/// Triangle component σ₁², via
/// `Σ_{i<j<k} (r_i+r_j+r_k)² q q q = ½ Σ_i r_i² (Q³)_ii + Σ_{i<j} 2 r_i r_j q_ij (Q²)_ij`.
pub fn sigma1_sq(mu: &EdgeProbMatrix, nu: &Array1<f64>) -> f64 {
    let m = mu.as_array();
    let n = mu.n();
    let q = m.mapv(|x| x * (1.0 - x));
    let q2 = q.dot(&q);
    let r = nu.mapv(|v| 1.0 / v);

    let mut diag_part = 0.0;
    let mut pair_part = 0.0;
    for i in 0..n {
        let qi = q.row(i);
        let q2i = q2.row(i);
        let mut cube_ii = 0.0;
        let mut pairs = 0.0;
        for j in 0..n {
            let prod = qi[j] * q2i[j];
            cube_ii += prod;
            if j > i {
                pairs += r[j] * prod;
            }
        }
        diag_part += r[i] * r[i] * cube_ii;
        pair_part += r[i] * pairs;
    }
    let total = 0.5 * diag_part + 2.0 * pair_part;
    4.0 * total / (n * n) as f64
}

/// Edge component σ₂².
pub fn sigma2_sq(mu: &EdgeProbMatrix, tables: &CoefficientTables) -> f64 {
    let m = mu.as_array();
    let n = mu.n();
    let coef = edge_coefficients(tables);
    let mut total = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let x = m[[i, j]];
            total += coef[[i, j]].powi(2) * x * (1.0 - x);
        }
    }
    total / (n * n) as f64
}

pub fn theory_params(mu: &EdgeProbMatrix) -> Result<TheoryParams> {
    let nu = nu_vector(mu);
    let tables = coefficient_tables(mu, &nu)?;
    let sigma1_sq = sigma1_sq(mu, &nu);
    let sigma2_sq = sigma2_sq(mu, &tables);
    Ok(TheoryParams {
        nu,
        tables,
        sigma1_sq,
        sigma2_sq,
        sigma_sq: sigma1_sq + sigma2_sq,
    })
}

/// Leading-order Erdős–Rényi variances `6/n^{3−α}`, `2/n^{2+α}` and the
/// regime-selected total (`8/n^{5/2}` at α = ½).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErLeading {
    pub sigma1_sq: f64,
    pub sigma2_sq: f64,
    pub sigma_sq: f64,
    pub regime: Regime,
}

pub fn er_closed_forms(n: usize, alpha: f64) -> Result<ErLeading> {
    if n < 2 {
        return Err(Error::param("n", format!("must be at least 2, got {n}")));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::param("alpha", format!("must lie in (0, 1), got {alpha}")));
    }
    let nf = n as f64;
    let s1 = 6.0 / nf.powf(3.0 - alpha);
    let s2 = 2.0 / nf.powf(2.0 + alpha);
    let regime = Regime::from_alpha(alpha);
    let total = match regime {
        Regime::SparseSide => s1,
        Regime::Dense => s2,
        Regime::Critical => 8.0 / (nf * nf * nf.sqrt()),
    };
    Ok(ErLeading {
        sigma1_sq: s1,
        sigma2_sq: s2,
        sigma_sq: total,
        regime,
    })
}

/// Exact finite-`n` values of every theory quantity for `w ≡ 1`, where all
/// nodes and pairs are exchangeable. O(1) in `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErExact {
    pub n: usize,
    pub p: f64,
    pub nu: f64,
    pub b: f64,
    pub c: f64,
    pub a: f64,
    pub e: f64,
    pub edge_coefficient: f64,
    pub sigma1_sq: f64,
    pub sigma2_sq: f64,
    pub sigma_sq: f64,
}

pub fn er_exact(n: usize, p: f64) -> Result<ErExact> {
    if n < 3 {
        return Err(Error::param("n", format!("must be at least 3, got {n}")));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::param("p", format!("must lie in (0, 1], got {p}")));
    }
    let nf = n as f64;
    let nu = (nf - 1.0).powi(2) * p * p;
    // b, c: the n−2 common neighbours; a, e: (n−1)(n−2) closed 3-walks times n−1 tails.
    let b = (nf - 2.0) * p * p / nu;
    let c = b;
    let a = (nf - 1.0).powi(2) * (nf - 2.0) * p.powi(4) / (nu * nu);
    let e = a;
    let coef = 2.0 * b + 4.0 * c - 2.0 * a - 2.0 * e;
    let q = p * (1.0 - p);
    let triples = nf * (nf - 1.0) * (nf - 2.0) / 6.0;
    let pairs = nf * (nf - 1.0) / 2.0;
    let sigma1_sq = 4.0 / (nf * nf) * triples * (3.0 / nu).powi(2) * q.powi(3);
    let sigma2_sq = pairs * coef * coef * q / (nf * nf);
    Ok(ErExact {
        n,
        p,
        nu,
        b,
        c,
        a,
        e,
        edge_coefficient: coef,
        sigma1_sq,
        sigma2_sq,
        sigma_sq: sigma1_sq + sigma2_sq,
    })
}

/// [`er_exact`] with `p = n^{−α}`.
pub fn er_exact_alpha(n: usize, alpha: f64) -> Result<ErExact> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::param("alpha", format!("must lie in (0, 1), got {alpha}")));
    }
    er_exact(n, (n as f64).powf(-alpha))
}
