//! Brute-force reference implementations written straight from the defining
//! sums, shared by the integration and acceptance tests.
#![allow(dead_code, clippy::needless_range_loop)]

use closure_core::model::{build_weight_matrix, EdgeProbMatrix, Graph, WeightKind, WeightSpec};

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

pub fn hetero_mu(n: usize, beta: f64, p: f64, seed: u64) -> EdgeProbMatrix {
    let w = build_weight_matrix(&WeightSpec {
        n,
        beta,
        kind: WeightKind::UniformRandom { seed },
    })
    .unwrap();
    EdgeProbMatrix::with_p(&w, p).unwrap()
}

/// Graph whose edges are the set bits of `mask` over the pairs `i<j` in row-major order.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::empty(n);
    let mut bit = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(i, j);
            }
            bit += 1;
        }
    }
    g
}

pub struct NaiveCounts {
    pub degree: Vec<u64>,
    pub head_wedges: Vec<u64>,
    pub closed_wedges: Vec<u64>,
}

/// `V_i = Σ_{j, k ∉ {i}} A_ij A_jk` and `Δ_i = Σ_{j≠k} A_ij A_jk A_ki`.
pub fn naive_counts(g: &Graph) -> NaiveCounts {
    let n = g.n();
    let a = |i: usize, j: usize| u64::from(g.has_edge(i, j));
    let mut out = NaiveCounts {
        degree: vec![0; n],
        head_wedges: vec![0; n],
        closed_wedges: vec![0; n],
    };
    for i in 0..n {
        for j in 0..n {
            out.degree[i] += a(i, j);
            for k in 0..n {
                if k != i {
                    out.head_wedges[i] += a(i, j) * a(j, k);
                }
                if j != k {
                    out.closed_wedges[i] += a(i, j) * a(j, k) * a(k, i);
                }
            }
        }
    }
    out
}

pub fn naive_hbar(g: &Graph) -> f64 {
    let c = naive_counts(g);
    let n = g.n();
    (0..n)
        .map(|i| {
            if c.head_wedges[i] == 0 {
                0.0
            } else {
                c.closed_wedges[i] as f64 / c.head_wedges[i] as f64
            }
        })
        .sum::<f64>()
        / n as f64
}

pub struct NaiveTheory {
    pub nu: Vec<f64>,
    pub b: Vec<Vec<f64>>,
    pub c: Vec<Vec<f64>>,
    pub a: Vec<f64>,
    pub e: Vec<Vec<f64>>,
    pub sigma1_sq: f64,
    pub sigma2_sq: f64,
}

/// Every quantity by its literal nested sum; `O(n⁴)`.
pub fn naive_theory(mu: &EdgeProbMatrix) -> NaiveTheory {
    let n = mu.n();
    let m = |i: usize, j: usize| mu.get(i, j);
    let q = |i: usize, j: usize| m(i, j) * (1.0 - m(i, j));

    let mut nu = vec![0.0; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                nu[i] += m(i, j) * m(j, k);
            }
        }
    }

    let mut b = vec![vec![0.0; n]; n];
    let mut c = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for k in 0..n {
                b[i][j] += m(i, k) * m(j, k) / nu[k];
                c[i][j] += m(i, k) * m(j, k) / nu[i];
            }
        }
    }

    let mut a = vec![0.0; n];
    for s in 0..n {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    a[s] += m(i, j) * m(j, k) * m(k, i) * m(i, s) / (nu[i] * nu[i]);
                }
            }
        }
    }

    let mut e = vec![vec![0.0; n]; n];
    for i in 0..n {
        let mut tri = 0.0;
        for j in 0..n {
            for k in 0..n {
                tri += m(i, j) * m(j, k) * m(k, i);
            }
        }
        for s in 0..n {
            let row: f64 = (0..n).map(|t| m(s, t)).sum();
            e[i][s] = tri * row / (nu[i] * nu[i]);
        }
    }

    let nf = n as f64;
    let mut s1 = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let w = 1.0 / nu[i] + 1.0 / nu[j] + 1.0 / nu[k];
                s1 += w * w * q(i, j) * q(i, k) * q(j, k);
            }
        }
    }

    let mut s2 = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let coef = 2.0 * b[i][j] + 2.0 * c[i][j] + 2.0 * c[j][i] - (a[i] + a[j]) - (e[i][j] + e[j][i]);
            s2 += coef * coef * q(i, j);
        }
    }

    NaiveTheory {
        nu,
        b,
        c,
        a,
        e,
        sigma1_sq: 4.0 * s1 / (nf * nf),
        sigma2_sq: s2 / (nf * nf),
    }
}
