//! Monte Carlo harness, normality diagnostics, exact enumeration and α-sweeps.

mod enumeration;
mod montecarlo;
mod normality;
mod sweep;

pub use enumeration::{exact_enumeration, EnumResult, MAX_ENUM_NODES};
pub use montecarlo::{
    replicate_seed, run_monte_carlo, write_replicates_csv, Centering, ComponentSummary,
    LeadingSummary, McConfig, McSummary, Record, Replicate,
};
pub use normality::{normality_stats, standard_normal_cdf, NormalityStats, MIN_NORMALITY_SAMPLE};
pub use sweep::{alpha_sweep, write_sweep_csv, SweepMc, SweepRow};

/// Sample mean and unbiased sample variance.
pub(crate) fn mean_var(xs: &[f64]) -> (f64, f64) {
    let m = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / m;
    let var = if xs.len() > 1 {
        xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0)
    } else {
        0.0
    };
    (mean, var)
}

pub(crate) fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let (mx, vx) = mean_var(xs);
    let (my, vy) = mean_var(ys);
    if !(vx > 0.0 && vy > 0.0) {
        return None;
    }
    let cov = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum::<f64>()
        / (xs.len() as f64 - 1.0);
    Some(cov / (vx * vy).sqrt())
}
