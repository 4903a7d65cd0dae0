use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumeration::{exact_enumeration, MAX_ENUM_NODES};
use super::normality::{normality_stats, NormalityStats, MIN_NORMALITY_SAMPLE};
use super::{mean_var, pearson};
use crate::error::{Error, Result};
use crate::expansion::LeadingTermEvaluator;
use crate::format::fmt12;
use crate::graphstats::{closure_coefficients, clustering_from_stats, node_motif_counts};
use crate::model::{sample_graph, EdgeProbMatrix, ModelSpec};
use crate::theory::{theory_params, Regime};

/// Optional per-replicate statistics. `H̄` is always recorded.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub clustering: bool,
    pub leading_terms: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub model: ModelSpec,
    pub replicates: usize,
    pub master_seed: u64,
    /// Worker threads; 0 lets rayon decide. Never affects results.
    #[serde(skip)]
    pub threads: usize,
    pub record: Record,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Replicate {
    pub index: usize,
    pub seed: u64,
    pub hbar: f64,
    pub cbar: Option<f64>,
    pub cubic: Option<f64>,
    pub linear: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Centering {
    SampleMean,
    ExactMean,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComponentSummary {
    pub mean: f64,
    pub variance: f64,
    /// `variance / reference`, absent when the reference is not positive.
    pub variance_ratio: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LeadingSummary {
    pub regime: Regime,
    /// α used to pick the regime; derived from `p = n^{−α}` when only `p` was given.
    pub alpha: f64,
    /// Ratio reference is σ₁².
    pub cubic: ComponentSummary,
    /// Ratio reference is σ₂².
    pub linear: ComponentSummary,
    /// Pearson correlation of `H̄ − mean` with the regime's approximation.
    pub correlation: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct McSummary {
    pub config: McConfig,
    pub n: usize,
    pub p: f64,
    pub replicates: Vec<Replicate>,
    pub mean: f64,
    pub variance: f64,
    pub sigma1_sq: f64,
    pub sigma2_sq: f64,
    pub sigma_sq: f64,
    pub variance_ratio: Option<f64>,
    /// Set when the sample variance or σ² is zero; scores and diagnostics are then omitted.
    pub degenerate: bool,
    pub centering: Centering,
    pub center: f64,
    pub z: Vec<f64>,
    pub normality: Option<NormalityStats>,
    pub clustering: Option<ComponentSummary>,
    pub leading: Option<LeadingSummary>,
}

fn splitmix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for replicate `index`; depends only on `(master, index)`.
pub fn replicate_seed(master: u64, index: usize) -> u64 {
    splitmix(master ^ splitmix((index as u64).wrapping_add(0x9e37_79b9_7f4a_7c15)))
}

fn effective_alpha(mu: &EdgeProbMatrix) -> f64 {
    mu.alpha()
        .unwrap_or_else(|| -mu.p().ln() / (mu.n() as f64).ln())
}

fn component(xs: &[f64], reference: f64) -> ComponentSummary {
    let (mean, variance) = mean_var(xs);
    ComponentSummary {
        mean,
        variance,
        variance_ratio: (reference > 0.0).then(|| variance / reference),
    }
}

pub fn run_monte_carlo(cfg: &McConfig) -> Result<McSummary> {
    if cfg.replicates < 2 {
        return Err(Error::param(
            "replicates",
            format!("need at least 2 replicates, got {}", cfg.replicates),
        ));
    }
    let mu = cfg.model.resolve()?;
    let n = mu.n();
    let params = theory_params(&mu)?;
    let alpha = effective_alpha(&mu);
    let evaluator = cfg
        .record
        .leading_terms
        .then(|| LeadingTermEvaluator::new(&mu, &params, alpha));

    let run_one = |index: usize| {
        let seed = replicate_seed(cfg.master_seed, index);
        let g = sample_graph(&mu, seed);
        let stats = node_motif_counts(&g);
        let hbar = closure_coefficients(&stats).1;
        let cbar = cfg.record.clustering.then(|| clustering_from_stats(&stats).1);
        let terms = evaluator.as_ref().map(|ev| ev.evaluate(&g));
        Replicate {
            index,
            seed,
            hbar,
            cbar,
            cubic: terms.map(|t| t.cubic),
            linear: terms.map(|t| t.linear),
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::param("threads", e.to_string()))?;
    let replicates: Vec<Replicate> =
        pool.install(|| (0..cfg.replicates).into_par_iter().map(run_one).collect());

    let hbar: Vec<f64> = replicates.iter().map(|r| r.hbar).collect();
    let (mean, variance) = mean_var(&hbar);
    let sigma_sq = params.sigma_sq;
    let degenerate = !(variance > 0.0 && sigma_sq > 0.0);

    let (centering, center) = if n <= MAX_ENUM_NODES {
        (Centering::ExactMean, exact_enumeration(&mu)?.mean)
    } else {
        (Centering::SampleMean, mean)
    };
    let z: Vec<f64> = if degenerate {
        Vec::new()
    } else {
        let sigma = sigma_sq.sqrt();
        hbar.iter().map(|h| (h - center) / sigma).collect()
    };
    let normality = if !degenerate && z.len() >= MIN_NORMALITY_SAMPLE {
        normality_stats(&z).ok()
    } else {
        None
    };

    let clustering = cfg.record.clustering.then(|| {
        let cbar: Vec<f64> = replicates.iter().filter_map(|r| r.cbar).collect();
        component(&cbar, sigma_sq)
    });
    let leading = evaluator.is_some().then(|| {
        let cubic: Vec<f64> = replicates.iter().filter_map(|r| r.cubic).collect();
        let linear: Vec<f64> = replicates.iter().filter_map(|r| r.linear).collect();
        let regime = Regime::from_alpha(alpha);
        let approx: Vec<f64> = cubic
            .iter()
            .zip(&linear)
            .map(|(&c, &l)| match regime {
                Regime::SparseSide => c,
                Regime::Dense => l,
                Regime::Critical => c + l,
            })
            .collect();
        let centred: Vec<f64> = hbar.iter().map(|h| h - mean).collect();
        LeadingSummary {
            regime,
            alpha,
            cubic: component(&cubic, params.sigma1_sq),
            linear: component(&linear, params.sigma2_sq),
            correlation: pearson(&centred, &approx),
        }
    });

    Ok(McSummary {
        config: cfg.clone(),
        n,
        p: mu.p(),
        replicates,
        mean,
        variance,
        sigma1_sq: params.sigma1_sq,
        sigma2_sq: params.sigma2_sq,
        sigma_sq,
        variance_ratio: (!degenerate).then(|| variance / sigma_sq),
        degenerate,
        centering,
        center,
        z,
        normality,
        clustering,
        leading,
    })
}

/// One row per replicate: `replicate,seed,Hbar,Cbar,cubic_term,linear_term`.
/// Statistics that were not recorded are left empty.
pub fn write_replicates_csv<W: Write>(summary: &McSummary, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.into());
    w.write_record(["replicate", "seed", "Hbar", "Cbar", "cubic_term", "linear_term"])
        .map_err(io)?;
    let opt = |x: Option<f64>| x.map(fmt12).unwrap_or_default();
    for r in &summary.replicates {
        w.write_record([
            r.index.to_string(),
            r.seed.to_string(),
            fmt12(r.hbar),
            opt(r.cbar),
            opt(r.cubic),
            opt(r.linear),
        ])
        .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}
