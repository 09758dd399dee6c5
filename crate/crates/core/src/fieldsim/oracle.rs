//! Small-instance exceedance oracle, fully independent of the FFT pipeline:
//! the exact correlation matrix of the field restricted to the grid is
//! factored by dense Cholesky and sampled directly.

use super::grid::SheppGrid;
use crate::error::{Error, Result};
use crate::models::FieldModel;
use crate::rng::replication_rng;
use rand_distr::{Distribution, StandardNormal};

/// Grids larger than this are refused (the point of the oracle is an exact
/// dense factorization of a small instance).
pub const ORACLE_MAX_POINTS: usize = 64;

/// Diagonal jitter applied once if the correlation matrix is not numerically
/// positive definite.
pub const ORACLE_JITTER: f64 = 1e-10;

/// Exceedance estimate from the dense-Cholesky oracle.
#[derive(Debug, Clone, Copy)]
pub struct OracleEstimate {
    pub p_hat: f64,
    pub stderr: f64,
    pub n: usize,
    pub u: f64,
    pub seed: u64,
    /// Whether the factorization needed the jitter retry.
    pub jittered: bool,
}

/// Estimate `P(max > u)` on a grid of at most [`ORACLE_MAX_POINTS`] points by
/// exact multivariate-normal sampling of the field restricted to the grid.
pub fn oracle_sample_max(
    model: &FieldModel,
    grid: &SheppGrid,
    u: f64,
    n: usize,
    seed: u64,
) -> Result<OracleEstimate> {
    let pts = grid.points();
    if pts > ORACLE_MAX_POINTS {
        return Err(Error::validation(format!(
            "oracle grid has {pts} points (cap {ORACLE_MAX_POINTS})"
        )));
    }
    if n == 0 {
        return Err(Error::validation("need at least one replication"));
    }
    // points in row-major (τ_j outer, s_l inner) order
    let coords: Vec<(f64, f64)> = (0..grid.n_tau())
        .flat_map(|j| (0..grid.n_s()).map(move |l| (j, l)))
        .map(|(j, l)| (grid.tau(j), grid.s(l)))
        .collect();
    let mut cov = nalgebra::DMatrix::zeros(pts, pts);
    for p in 0..pts {
        for q in 0..=p {
            let (t1, s1) = coords[p];
            let (t2, s2) = coords[q];
            let c = model.correlation(t1, s1, t2, s2)?;
            cov[(p, q)] = c;
            cov[(q, p)] = c;
        }
    }
    let (chol, jittered) = match cov.clone().cholesky() {
        Some(c) => (c, false),
        None => {
            let mut bumped = cov;
            for i in 0..pts {
                bumped[(i, i)] += ORACLE_JITTER;
            }
            match bumped.cholesky() {
                Some(c) => (c, true),
                None => {
                    return Err(Error::CholeskyFailure(format!(
                        "correlation matrix not PSD even with jitter {ORACLE_JITTER:e}"
                    )))
                }
            }
        }
    };
    let l = chol.unpack();
    let mut count = 0usize;
    let mut g = vec![0.0; pts];
    for k in 0..n {
        let mut rng = replication_rng(seed, k as u64);
        for gi in g.iter_mut() {
            *gi = StandardNormal.sample(&mut rng);
        }
        let mut best = f64::NEG_INFINITY;
        for i in 0..pts {
            let mut acc = 0.0;
            for j in 0..=i {
                acc += l[(i, j)] * g[j];
            }
            if acc > best {
                best = acc;
            }
        }
        if best > u {
            count += 1;
        }
    }
    let p_hat = count as f64 / n as f64;
    Ok(OracleEstimate {
        p_hat,
        stderr: (p_hat * (1.0 - p_hat) / n as f64).sqrt(),
        n,
        u,
        seed,
        jittered,
    })
}
