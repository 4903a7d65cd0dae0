use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::prob::EdgeProbMatrix;

/// Simple undirected graph on `0..n` stored as one bitset row per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    edges: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
            edges: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in (i + 1)..n {
                g.add_edge(i, j);
            }
        }
        g
    }

    /// Builds a graph from an edge list. Self loops are ignored and repeated edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(i, j) in edges {
            g.add_edge(i, j);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// Inserts `{i, j}`; returns false if it was already present or `i == j`.
    pub fn add_edge(&mut self, i: usize, j: usize) -> bool {
        assert!(i < self.n && j < self.n, "node index out of range");
        if i == j || self.has_edge(i, j) {
            return false;
        }
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
        self.bits[j * self.words + i / 64] |= 1 << (i % 64);
        self.edges += 1;
        true
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Adjacency row of `i` as packed 64-bit words.
    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `|N(i) ∩ N(j)|` by popcount of the AND of two rows.
    pub fn common_neighbors(&self, i: usize, j: usize) -> usize {
        self.row(i)
            .iter()
            .zip(self.row(j))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + bit)
            })
        })
    }

    /// Edges `(i, j)` with `i < j`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| self.neighbors(i).filter(move |&j| j > i).map(move |j| (i, j)))
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|i| self.neighbors(i).collect()).collect()
    }

    /// Plain-text edge list: first line `n`, then one `i j` pair per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (i, j) in self.edges() {
            out.push_str(&format!("{i} {j}\n"));
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> crate::Result<Self> {
        use crate::Error;
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .and_then(|l| l.parse().ok())
            .ok_or_else(|| Error::Format("edge list must start with the node count".into()))?;
        let mut g = Graph::empty(n);
        for line in lines {
            let mut it = line.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(i)), Some(Ok(j)), None) if i < n && j < n && i != j => {
                    g.add_edge(i, j);
                }
                _ => return Err(Error::Format(format!("bad edge line `{line}`"))),
            }
        }
        Ok(g)
    }
}

/// Draws each `A_ij`, `i < j`, independently as Bernoulli(`μ_ij`) in row-major
/// order from a ChaCha8 stream seeded with `seed`.
pub fn sample_graph(mu: &EdgeProbMatrix, seed: u64) -> Graph {
    let n = mu.n();
    let probs = mu.as_array();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for i in 0..n {
        let row = probs.row(i);
        for j in (i + 1)..n {
            let u: f64 = rng.random();
            if u < row[j] {
                g.bits[i * g.words + j / 64] |= 1 << (j % 64);
                g.bits[j * g.words + i / 64] |= 1 << (i % 64);
                g.edges += 1;
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array2;

    #[test]
    fn bitset_basics() {
        let mut g = Graph::empty(130);
        assert!(g.add_edge(0, 129));
        assert!(!g.add_edge(129, 0));
        assert!(!g.add_edge(5, 5));
        g.add_edge(0, 64);
        g.add_edge(64, 129);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degree(0), 2);
        assert_eq!(g.common_neighbors(0, 64), 1);
        assert_eq!(g.neighbors(0).collect::<Vec<_>>(), vec![64, 129]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 64), (0, 129), (64, 129)]);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::from_edges(5, &[(0, 1), (3, 1), (4, 2)]);
        assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
        assert!(Graph::parse_edge_list("3\n0 3\n").is_err());
        assert!(Graph::parse_edge_list("x\n").is_err());
    }

    #[test]
    fn zero_and_one_probabilities() {
        let zero = EdgeProbMatrix::from_probabilities(Array2::zeros((6, 6))).unwrap();
        assert_eq!(sample_graph(&zero, 1).edge_count(), 0);
        let one = EdgeProbMatrix::erdos_renyi(6, 1.0).unwrap();
        assert_eq!(sample_graph(&one, 1), Graph::complete(6));
    }

    #[test]
    fn sampling_is_deterministic() {
        let mu = EdgeProbMatrix::erdos_renyi(70, 0.3).unwrap();
        assert_eq!(sample_graph(&mu, 42), sample_graph(&mu, 42));
        assert_ne!(sample_graph(&mu, 42), sample_graph(&mu, 43));
    }
}
