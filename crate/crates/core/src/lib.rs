//! Extremes of locally stationary Gaussian random fields and Shepp statistics.
//!
//! The library is organised around the pipeline
//!
//! 1. [`models`] — covariance / variance model families, the exact correlation
//!    of the standardized Shepp field, local-structure extraction `(α, g)`,
//!    and numerical validators for the model assumptions;
//! 2. [`fieldsim`] — exact Gaussian path simulation (circulant embedding,
//!    Davies–Harte) and construction of the standardized field on rectangular
//!    grids, plus a small-instance dense-Cholesky oracle;
//! 3. [`asymptotics`] — closed-form tail asymptotes `T·C·u^{4/α}Ψ(u)`,
//!    normalizing sequences `(a_T, b_T)` and the limiting distribution
//!    `G_r(x) = E exp(−e^{−x−r+√(2r)N})`;
//! 4. [`pickands`] — Monte Carlo estimation of the Pickands constants `H_α`
//!    and their lattice variants `H_{α,d}`;
//! 5. [`experiments`] — seeded, replication-parallel studies (tail ratios,
//!    limit-law convergence, grid refinement, oracle comparisons) with CSV
//!    and JSON-manifest persistence.
//!
//! All simulation is deterministic given a 64-bit seed: replication `k`
//! derives its generator from [`rng::subseed`], and reductions are performed
//! in replication order so results do not depend on worker count.

pub mod asymptotics;
pub mod error;
pub mod experiments;
pub mod fieldsim;
pub mod models;
pub mod pickands;
pub mod quad;
pub mod rng;

pub use error::{Error, Result};
