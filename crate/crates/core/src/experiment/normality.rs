use serde::Serialize;
use statrs::function::erf::erfc;

use crate::error::{Error, Result};

pub const MIN_NORMALITY_SAMPLE: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalityStats {
    /// Kolmogorov–Smirnov distance to the standard normal CDF.
    pub ks: f64,
    /// Asymptotic KS critical values `1.36/√m` and `1.63/√m`.
    pub ks_critical_5pct: f64,
    pub ks_critical_1pct: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
}

pub fn standard_normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// KS distance of `z` to N(0, 1) plus moment-ratio skewness and excess kurtosis.
/// The scores are compared as given; they are not re-standardised.
pub fn normality_stats(z: &[f64]) -> Result<NormalityStats> {
    let m = z.len();
    if m < MIN_NORMALITY_SAMPLE {
        return Err(Error::param(
            "replicates",
            format!("normality diagnostics need at least {MIN_NORMALITY_SAMPLE} values, got {m}"),
        ));
    }
    if z.iter().all(|&x| x == z[0]) {
        return Err(Error::Degenerate("scores have zero variance".into()));
    }
    let mf = m as f64;
    let mean = z.iter().sum::<f64>() / mf;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for &x in z {
        let d = x - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= mf;
    m3 /= mf;
    m4 /= mf;
    if m2.is_nan() || m2 <= 0.0 {
        return Err(Error::Degenerate("scores have zero variance".into()));
    }

    let mut sorted = z.to_vec();
    sorted.sort_by(f64::total_cmp);
    let ks = sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = standard_normal_cdf(x);
            ((i + 1) as f64 / mf - f).max(f - i as f64 / mf)
        })
        .fold(0.0, f64::max);

    Ok(NormalityStats {
        ks,
        ks_critical_5pct: 1.36 / mf.sqrt(),
        ks_critical_1pct: 1.63 / mf.sqrt(),
        skewness: m3 / m2.powf(1.5),
        excess_kurtosis: m4 / (m2 * m2) - 3.0,
    })
}
