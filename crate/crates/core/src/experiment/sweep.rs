use std::io::Write;

use serde::Serialize;

use super::montecarlo::{run_monte_carlo, McConfig, Record};
use crate::error::Result;
use crate::format::fmt12;
use crate::model::ModelSpec;
use crate::theory::{er_closed_forms, er_exact_alpha};

/// Optional Monte Carlo column of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepMc {
    pub replicates: usize,
    pub master_seed: u64,
    pub threads: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub alpha: f64,
    pub p: f64,
    pub sigma1_sq: f64,
    pub sigma2_sq: f64,
    pub sigma_sq: f64,
    pub sigma1_leading: f64,
    pub sigma2_leading: f64,
    pub sigma_leading: f64,
    /// `n^{3−α} σ₁²`, tends to 6.
    pub scaled_sigma1: f64,
    /// `n^{2+α} σ₂²`, tends to 2.
    pub scaled_sigma2: f64,
    /// `n^{5/2} σ²`, tends to 8 at α = ½.
    pub scaled_sigma: f64,
    pub mc_variance_ratio: Option<f64>,
}

/// Erdős–Rényi variance components over an `(n, α)` grid, exact at finite `n`.
pub fn alpha_sweep(nlist: &[usize], alphalist: &[f64], mc: Option<&SweepMc>) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::with_capacity(nlist.len() * alphalist.len());
    for &n in nlist {
        for &alpha in alphalist {
            let exact = er_exact_alpha(n, alpha)?;
            let leading = er_closed_forms(n, alpha)?;
            let nf = n as f64;
            let mc_variance_ratio = match mc {
                Some(mc) => {
                    let cfg = McConfig {
                        model: ModelSpec::erdos_renyi_alpha(n, alpha),
                        replicates: mc.replicates,
                        master_seed: mc.master_seed,
                        threads: mc.threads,
                        record: Record::default(),
                    };
                    run_monte_carlo(&cfg)?.variance_ratio
                }
                None => None,
            };
            rows.push(SweepRow {
                n,
                alpha,
                p: exact.p,
                sigma1_sq: exact.sigma1_sq,
                sigma2_sq: exact.sigma2_sq,
                sigma_sq: exact.sigma_sq,
                sigma1_leading: leading.sigma1_sq,
                sigma2_leading: leading.sigma2_sq,
                sigma_leading: leading.sigma_sq,
                scaled_sigma1: nf.powf(3.0 - alpha) * exact.sigma1_sq,
                scaled_sigma2: nf.powf(2.0 + alpha) * exact.sigma2_sq,
                scaled_sigma: nf.powf(2.5) * exact.sigma_sq,
                mc_variance_ratio,
            });
        }
    }
    Ok(rows)
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| crate::Error::Io(e.into());
    w.write_record([
        "n",
        "alpha",
        "p",
        "sigma1_sq",
        "sigma2_sq",
        "sigma_sq",
        "sigma1_leading",
        "sigma2_leading",
        "sigma_leading",
        "scaled_sigma1",
        "scaled_sigma2",
        "scaled_sigma",
        "mc_variance_ratio",
    ])
    .map_err(io)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            fmt12(r.alpha),
            fmt12(r.p),
            fmt12(r.sigma1_sq),
            fmt12(r.sigma2_sq),
            fmt12(r.sigma_sq),
            fmt12(r.sigma1_leading),
            fmt12(r.sigma2_leading),
            fmt12(r.sigma_leading),
            fmt12(r.scaled_sigma1),
            fmt12(r.scaled_sigma2),
            fmt12(r.scaled_sigma),
            r.mc_variance_ratio.map(fmt12).unwrap_or_default(),
        ])
        .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}
