//! Heterogeneous Erdős–Rényi model: weights `w_ij ∈ [β, 1]`, edge
//! probabilities `μ_ij = p·w_ij` and independent Bernoulli edge sampling.

mod graph;
mod prob;
mod weights;

pub use graph::{sample_graph, Graph};
pub use prob::{EdgeProbMatrix, ModelSpec, WeightSource};
pub use weights::{build_weight_matrix, WeightKind, WeightMatrix, WeightSpec};
