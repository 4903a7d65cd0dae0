use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which family of weights to generate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WeightKind {
    /// Every off-diagonal weight equals `value`. `value = 1` gives the plain
    /// Erdős–Rényi graph.
    Constant { value: f64 },
    /// Nodes `0..first_block` form one block, the rest the other.
    TwoBlock {
        first_block: usize,
        within: f64,
        cross: f64,
    },
    /// Independent `Uniform[β, 1]` weights drawn from a seeded generator.
    UniformRandom { seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub n: usize,
    pub beta: f64,
    #[serde(flatten)]
    pub kind: WeightKind,
}

impl WeightSpec {
    pub fn erdos_renyi(n: usize) -> Self {
        WeightSpec {
            n,
            beta: 1.0,
            kind: WeightKind::Constant { value: 1.0 },
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_n(self.n)?;
        check_beta(self.beta)?;
        let in_range = |x: f64| x >= self.beta && x <= 1.0;
        match self.kind {
            WeightKind::Constant { value } => {
                if !in_range(value) {
                    return Err(Error::param(
                        "weight-value",
                        format!("{value} is outside [beta, 1] = [{}, 1]", self.beta),
                    ));
                }
            }
            WeightKind::TwoBlock {
                first_block,
                within,
                cross,
            } => {
                if first_block == 0 || first_block >= self.n {
                    return Err(Error::param(
                        "block-size",
                        format!("first block must hold between 1 and n-1 nodes, got {first_block}"),
                    ));
                }
                if !in_range(within) {
                    return Err(Error::param("within", format!("{within} is outside [beta, 1]")));
                }
                if !in_range(cross) {
                    return Err(Error::param("cross", format!("{cross} is outside [beta, 1]")));
                }
            }
            WeightKind::UniformRandom { .. } => {}
        }
        Ok(())
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::param("n", format!("must be at least 2, got {n}")));
    }
    Ok(())
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::param("beta", format!("must lie in (0, 1], got {beta}")));
    }
    Ok(())
}

/// Symmetric weight matrix with zero diagonal and off-diagonal entries in `[β, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix {
    beta: f64,
    w: Array2<f64>,
}

impl WeightMatrix {
    /// Wraps a raw matrix after checking symmetry, the zero diagonal and the `[β, 1]` range.
    pub fn new(w: Array2<f64>, beta: f64) -> Result<Self> {
        check_beta(beta)?;
        let (rows, cols) = w.dim();
        if rows != cols {
            return Err(Error::Format(format!("weight matrix is {rows}x{cols}, not square")));
        }
        check_n(rows)?;
        for i in 0..rows {
            if w[[i, i]] != 0.0 {
                return Err(Error::Format(format!("w[{i}][{i}] = {} but the diagonal must be zero", w[[i, i]])));
            }
            for j in (i + 1)..rows {
                let x = w[[i, j]];
                if x != w[[j, i]] {
                    return Err(Error::Format(format!("w[{i}][{j}] = {x} differs from w[{j}][{i}] = {}", w[[j, i]])));
                }
                if !(x >= beta && x <= 1.0) {
                    return Err(Error::Format(format!("w[{i}][{j}] = {x} is outside [{beta}, 1]")));
                }
            }
        }
        Ok(WeightMatrix { beta, w })
    }

    pub fn constant(n: usize, value: f64) -> Result<Self> {
        build_weight_matrix(&WeightSpec {
            n,
            beta: value,
            kind: WeightKind::Constant { value },
        })
    }

    pub fn n(&self) -> usize {
        self.w.nrows()
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.w[[i, j]]
    }

    pub fn as_array(&self) -> &Array2<f64> {
        &self.w
    }

    /// Loads the plain-text format: first line `n`, then `n` rows of `n`
    /// whitespace-separated reals. `beta` is taken as the smallest off-diagonal entry.
    pub fn read_from(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Format("empty weight file".into()))?;
        let n: usize = header
            .trim()
            .parse()
            .map_err(|_| Error::Format(format!("first line must be n, got `{}`", header.trim())))?;
        check_n(n)?;
        let mut w = Array2::zeros((n, n));
        for i in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::Format(format!("expected {n} rows, found {i}")))?;
            let row: Vec<f64> = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<f64>()
                        .map_err(|_| Error::Format(format!("row {i}: `{tok}` is not a number")))
                })
                .collect::<Result<_>>()?;
            if row.len() != n {
                return Err(Error::Format(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for (j, x) in row.into_iter().enumerate() {
                w[[i, j]] = x;
            }
        }
        if lines.next().is_some() {
            return Err(Error::Format(format!("more than {n} rows")));
        }
        let beta = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| w[[i, j]])
            .fold(f64::INFINITY, f64::min);
        if beta.is_nan() || beta <= 0.0 {
            return Err(Error::Format(format!("off-diagonal weights must be positive, minimum is {beta}")));
        }
        Self::new(w, beta.min(1.0))
    }

    /// Serialises in the format accepted by [`WeightMatrix::parse`]. Values are
    /// written in shortest round-trip form so a reload is bit-identical.
    pub fn to_text(&self) -> String {
        let n = self.n();
        let mut out = format!("{n}\n");
        for i in 0..n {
            for j in 0..n {
                if j > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{:?}", self.w[[i, j]]);
            }
            out.push('\n');
        }
        out
    }

    pub fn write_to(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_text())?;
        Ok(())
    }
}

pub fn build_weight_matrix(spec: &WeightSpec) -> Result<WeightMatrix> {
    spec.validate()?;
    let n = spec.n;
    let mut w = Array2::zeros((n, n));
    match spec.kind {
        WeightKind::Constant { value } => fill_upper(&mut w, |_, _| value),
        WeightKind::TwoBlock {
            first_block,
            within,
            cross,
        } => fill_upper(&mut w, |i, j| {
            if (i < first_block) == (j < first_block) {
                within
            } else {
                cross
            }
        }),
        WeightKind::UniformRandom { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let lo = spec.beta;
            fill_upper(&mut w, |_, _| {
                if lo < 1.0 {
                    rng.random_range(lo..=1.0)
                } else {
                    1.0
                }
            });
        }
    }
    Ok(WeightMatrix { beta: spec.beta, w })
}

/// Fills the strict upper triangle row-major and mirrors it.
fn fill_upper(w: &mut Array2<f64>, mut value: impl FnMut(usize, usize) -> f64) {
    let n = w.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let x = value(i, j);
            w[[i, j]] = x;
            w[[j, i]] = x;
        }
    }
}
