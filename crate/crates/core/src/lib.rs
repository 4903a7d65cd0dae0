//! Average closure coefficient of heterogeneous Erdős–Rényi graphs.
//!
//! The crate is organised around the pipeline used to study the statistic:
//!
//! * [`model`] builds weight and edge-probability matrices and samples graphs,
//! * [`graphstats`] counts head-wedges and closed wedges per node and forms the
//!   closure and clustering coefficients,
//! * [`theory`] evaluates the asymptotic variance components σ₁², σ₂² for an
//!   arbitrary weight matrix, plus the Erdős–Rényi reductions,
//! * [`expansion`] evaluates the leading linearisations of `H̄ − E[H̄]`,
//! * [`experiment`] runs seeded Monte Carlo, normality diagnostics, exact
//!   enumeration on tiny graphs and α-sweeps,
//! * [`cli`] ties everything together behind the `closure` binary.

pub mod cli;
pub mod error;
pub mod expansion;
pub mod experiment;
pub mod graphstats;
pub mod model;
pub mod theory;

mod format;

pub use error::{Error, Result};
pub use format::sig12;
