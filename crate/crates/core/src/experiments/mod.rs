//! Desk-scale experiment orchestration: tail-ratio studies, limit-law
//! convergence, grid-refinement diagnostics and pipeline-vs-oracle
//! comparisons.
//!
//! Every experiment is a parallel map over replications with counter-derived
//! sub-seeds followed by an order-independent (or replication-ordered)
//! reduction, so results are identical for any worker count.

mod ks;
mod persist;

pub use ks::{ks_distance, ks_distance_sorted};
pub use persist::{
    append_csv_rows, config_digest, persist_results, write_csv_rows, write_manifest, Manifest,
};

use crate::asymptotics::{self, tail_constant};
use crate::error::{Error, Result};
use crate::fieldsim::{oracle_sample_max, FieldSimulator, SheppGrid};
use crate::models::{local_structure, FieldModel};
use crate::rng::{replication_rng, subseed};
use rayon::prelude::*;
use serde::Serialize;

/// Monte Carlo exceedance estimate with provenance.
#[derive(Debug, Clone, Serialize)]
pub struct McEstimate {
    pub p_hat: f64,
    /// Binomial standard error `√(p̂(1−p̂)/n)`.
    pub stderr: f64,
    pub n: usize,
    pub u: f64,
    pub config_digest: String,
    pub seed: u64,
}

/// Fraction of `n` independent field replications whose max exceeds `u`.
pub fn estimate_tail_mc(
    model: &FieldModel,
    grid: &SheppGrid,
    u: f64,
    n: usize,
    seed: u64,
) -> Result<McEstimate> {
    if n < 1000 {
        return Err(Error::validation("tail estimation needs n >= 1000"));
    }
    let sim = FieldSimulator::new(model, grid)?;
    let count: u64 = (0..n as u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = replication_rng(seed, k);
            u64::from(sim.sample_max(&mut rng) > u)
        })
        .sum();
    let p_hat = count as f64 / n as f64;
    let digest = config_digest(&serde_json::json!({
        "experiment": "tail-mc",
        "model": model,
        "grid": grid,
        "u": u,
        "n": n,
        "seed": seed,
    }));
    Ok(McEstimate {
        p_hat,
        stderr: (p_hat * (1.0 - p_hat) / n as f64).sqrt(),
        n,
        u,
        config_digest: digest,
        seed,
    })
}

/// One row of the tail-ratio table.
#[derive(Debug, Clone, Serialize)]
pub struct TailRow {
    pub u: f64,
    pub p_hat: f64,
    pub stderr: f64,
    /// First-order asymptote `T·C·u^{4/α}Ψ(u)` (unclamped).
    pub asym: f64,
    pub ratio: f64,
    pub n_tau: usize,
    pub n_s: usize,
}

/// Trend summary of the ratio column.
#[derive(Debug, Clone, Serialize)]
pub struct TrendSummary {
    pub min_ratio: f64,
    pub max_ratio: f64,
    /// `(max − min) / midpoint` over the studied levels.
    pub variation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TailStudy {
    pub rows: Vec<TailRow>,
    pub trend: TrendSummary,
    /// The horizon-free constant `C = H_α²∫g^{2/α}`.
    pub constant: f64,
    pub alpha: f64,
}

/// Tail-ratio study over an increasing level ladder. Each level gets the
/// mesh `q = mesh_factor · u^{−2/α}` on both axes and its own sub-seed.
#[allow(clippy::too_many_arguments)]
pub fn tail_ratio_study(
    model: &FieldModel,
    a: f64,
    b: f64,
    horizon: f64,
    mesh_factor: f64,
    u_ladder: &[f64],
    n: usize,
    pickands_sq: f64,
    seed: u64,
) -> Result<TailStudy> {
    if u_ladder.is_empty() || u_ladder.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::validation("u ladder must be nonempty and increasing"));
    }
    let ls = local_structure(model, a, b)?;
    let ta = tail_constant(&ls, horizon, pickands_sq)?;
    let alpha = ls.alpha;
    let mut rows = Vec::with_capacity(u_ladder.len());
    for (i, &u) in u_ladder.iter().enumerate() {
        if !(u > 0.0) {
            return Err(Error::validation("levels must be positive"));
        }
        let q = mesh_factor * u.powf(-2.0 / alpha);
        let grid = SheppGrid::with_target_spacing(a, b, horizon, q)?;
        let est = estimate_tail_mc(model, &grid, u, n, subseed(seed, i as u64))?;
        let asym = asymptotics::tail_probability_asym(&ta, u);
        rows.push(TailRow {
            u,
            p_hat: est.p_hat,
            stderr: est.stderr,
            asym,
            ratio: est.p_hat / asym,
            n_tau: grid.n_tau(),
            n_s: grid.n_s(),
        });
    }
    let min_ratio = rows.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
    let max_ratio = rows.iter().map(|r| r.ratio).fold(f64::NEG_INFINITY, f64::max);
    let mid = 0.5 * (min_ratio + max_ratio);
    Ok(TailStudy {
        rows,
        trend: TrendSummary {
            min_ratio,
            max_ratio,
            variation: if mid > 0.0 { (max_ratio - min_ratio) / mid } else { f64::NAN },
        },
        constant: ta.constant,
        alpha,
    })
}

/// One horizon of the limit-law study.
#[derive(Debug, Clone, Serialize)]
pub struct LimitLawRow {
    pub horizon: f64,
    pub ks: f64,
    pub n: usize,
    pub a_t: f64,
    pub b_t: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LimitLawReport {
    pub rows: Vec<LimitLawRow>,
    pub r: f64,
}

/// Empirical limit law: for each horizon `T` in the increasing ladder
/// (each > e), simulate `n_per_t` maxima, normalize by `(a_T, b_T)` and
/// report the KS distance to the limit CDF `G_r`.
///
/// The model must be a Shepp or two-process field (all of which are
/// homogeneous in `s`). The sampled-field route requires `r = 0`; no built-in
/// covariance has `δ(v)ln v → r > 0`, so `G_{r>0}` is validated against
/// Monte Carlo quadrature only.
#[allow(clippy::too_many_arguments)]
pub fn empirical_limit_law(
    model: &FieldModel,
    a: f64,
    b: f64,
    t_ladder: &[f64],
    mesh_factor: f64,
    n_per_t: usize,
    pickands_sq: f64,
    r: f64,
    seed: u64,
) -> Result<LimitLawReport> {
    if t_ladder.is_empty() || t_ladder.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::validation("horizon ladder must be increasing"));
    }
    if t_ladder[0] <= std::f64::consts::E {
        return Err(Error::validation("every horizon must exceed e"));
    }
    if r != 0.0 {
        return Err(Error::validation(
            "simulated limit-law runs support r = 0 only (no admissible strongly \
             dependent covariance model is built in)",
        ));
    }
    let ls = local_structure(model, a, b)?;
    let alpha = ls.alpha;
    let mut rows = Vec::with_capacity(t_ladder.len());
    for (i, &t) in t_ladder.iter().enumerate() {
        let ta = tail_constant(&ls, t, pickands_sq)?;
        let norm = asymptotics::normalizers(&ta, t, r)?;
        let q = mesh_factor * norm.b_t.powf(-2.0 / alpha);
        let grid = SheppGrid::with_target_spacing(a, b, t, q)?;
        let sim = FieldSimulator::new(model, &grid)?;
        let t_seed = subseed(seed, i as u64);
        let mut maxima: Vec<f64> = (0..n_per_t as u64)
            .into_par_iter()
            .map(|k| {
                let mut rng = replication_rng(t_seed, k);
                sim.sample_max(&mut rng)
            })
            .collect();
        for m in maxima.iter_mut() {
            *m = norm.a_t * (*m - norm.b_t);
        }
        maxima.sort_by(f64::total_cmp);
        let ks = ks_distance_sorted(&maxima, |x| {
            asymptotics::limit_cdf(x, r).expect("r validated nonnegative")
        });
        rows.push(LimitLawRow {
            horizon: t,
            ks,
            n: n_per_t,
            a_t: norm.a_t,
            b_t: norm.b_t,
        });
    }
    Ok(LimitLawReport { rows, r })
}

/// One mesh level of the refinement study.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceRow {
    /// Mesh-scaling factor `d` in `q = d·u^{−2/α}`.
    pub d: f64,
    /// Realized grid spacings.
    pub dtau: f64,
    pub ds: f64,
    pub p_hat: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceStudy {
    pub rows: Vec<ConvergenceRow>,
    /// Whether the two finest levels agree within two combined stderr.
    pub stabilized: bool,
}

/// Grid-refinement study at a fixed level `u`: the mesh ladder
/// `q(d) = d·u^{−2/α}` for decreasing `d`, evaluated on nested grids with
/// shared paths, so `p̂(d)` is nondecreasing as `d` decreases pathwise.
///
/// Each coarser `d` must be an integer multiple of the finest.
pub fn convergence_study(
    model: &FieldModel,
    a: f64,
    b: f64,
    horizon: f64,
    u: f64,
    d_ladder: &[f64],
    n: usize,
    seed: u64,
) -> Result<ConvergenceStudy> {
    if d_ladder.is_empty() {
        return Err(Error::validation("mesh ladder must be nonempty"));
    }
    if d_ladder.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::validation("mesh ladder must be strictly decreasing"));
    }
    let d_min = *d_ladder.last().expect("nonempty");
    let strides: Vec<usize> = d_ladder
        .iter()
        .map(|&d| {
            let ratio = d / d_min;
            let k = ratio.round();
            if k < 1.0 || (ratio - k).abs() > 1e-9 * ratio {
                return Err(Error::validation(format!(
                    "mesh factor {d} must be an integer multiple of the finest {d_min}"
                )));
            }
            Ok(k as usize)
        })
        .collect::<Result<Vec<_>>>()?;
    let alpha = model.alpha();
    let q_min = d_min * u.powf(-2.0 / alpha);
    // round point counts up to multiples of every stride so each coarse
    // lattice is a true sub-grid of the finest
    let lcm = strides.iter().copied().fold(1usize, lcm);
    let round_up = |x: f64| -> usize {
        let k = x.ceil() as usize;
        k.div_ceil(lcm) * lcm
    };
    let k_tau = round_up((b - a) / q_min);
    let k_s = round_up(horizon / q_min);
    let grid = SheppGrid::new(a, b, horizon, k_tau + 1, k_s + 1)?;
    let sim = FieldSimulator::new(model, &grid)?;
    let counts: Vec<u64> = (0..n as u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = replication_rng(seed, k);
            let maxes = sim.sample_max_strided(&mut rng, &strides);
            maxes
                .iter()
                .map(|&m| u64::from(m > u))
                .collect::<Vec<u64>>()
        })
        .reduce(
            || vec![0u64; strides.len()],
            |mut acc, row| {
                for (a, r) in acc.iter_mut().zip(row) {
                    *a += r;
                }
                acc
            },
        );
    let rows: Vec<ConvergenceRow> = d_ladder
        .iter()
        .zip(&strides)
        .zip(&counts)
        .map(|((&d, &stride), &count)| {
            let p_hat = count as f64 / n as f64;
            ConvergenceRow {
                d,
                dtau: grid.dtau() * stride as f64,
                ds: grid.ds() * stride as f64,
                p_hat,
                stderr: (p_hat * (1.0 - p_hat) / n as f64).sqrt(),
            }
        })
        .collect();
    let stabilized = if rows.len() >= 2 {
        let fine = &rows[rows.len() - 1];
        let next = &rows[rows.len() - 2];
        let tol = 2.0 * (fine.stderr * fine.stderr + next.stderr * next.stderr).sqrt();
        (fine.p_hat - next.p_hat).abs() <= tol
    } else {
        true
    };
    Ok(ConvergenceStudy { rows, stabilized })
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// One level of the pipeline-vs-oracle comparison.
#[derive(Debug, Clone, Serialize)]
pub struct OracleCompareRow {
    pub u: f64,
    pub p_pipeline: f64,
    pub se_pipeline: f64,
    pub p_oracle: f64,
    pub se_oracle: f64,
    pub diff: f64,
    pub combined_se: f64,
    pub within_3se: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleCompareReport {
    pub rows: Vec<OracleCompareRow>,
    pub all_within_3se: bool,
}

/// Compare the FFT pipeline against the dense-Cholesky oracle on a matched
/// small grid (≤ 64 points) at each level of the ladder.
pub fn oracle_compare(
    model: &FieldModel,
    grid: &SheppGrid,
    u_ladder: &[f64],
    n: usize,
    seed: u64,
) -> Result<OracleCompareReport> {
    let mut rows = Vec::with_capacity(u_ladder.len());
    for (i, &u) in u_ladder.iter().enumerate() {
        let pipe = estimate_tail_mc(model, grid, u, n, subseed(seed, 2 * i as u64))?;
        let orac = oracle_sample_max(model, grid, u, n, subseed(seed, 2 * i as u64 + 1))?;
        let diff = pipe.p_hat - orac.p_hat;
        let combined_se = (pipe.stderr * pipe.stderr + orac.stderr * orac.stderr).sqrt();
        rows.push(OracleCompareRow {
            u,
            p_pipeline: pipe.p_hat,
            se_pipeline: pipe.stderr,
            p_oracle: orac.p_hat,
            se_oracle: orac.stderr,
            diff,
            combined_se,
            within_3se: diff.abs() <= 3.0 * combined_se,
        });
    }
    let all = rows.iter().all(|r| r.within_3se);
    Ok(OracleCompareReport {
        rows,
        all_within_3se: all,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{IncrementVariance, SheppInput};

    fn brownian() -> FieldModel {
        FieldModel::Shepp(SheppInput::Increment(IncrementVariance::fbm(0.5).unwrap()))
    }

    #[test]
    fn sure_exceedance_and_stderr_scaling() {
        let grid = SheppGrid::new(0.5, 1.0, 2.0, 3, 5).unwrap();
        let est = estimate_tail_mc(&brownian(), &grid, -10.0, 1000, 1).unwrap();
        assert_eq!(est.p_hat, 1.0);
        let e1 = estimate_tail_mc(&brownian(), &grid, 1.0, 1000, 2).unwrap();
        let e2 = estimate_tail_mc(&brownian(), &grid, 1.0, 4000, 2).unwrap();
        // quadrupling n halves the binomial stderr scale
        let expected = (e1.p_hat * (1.0 - e1.p_hat) / 1000.0).sqrt();
        assert!((e1.stderr - expected).abs() < 1e-15);
        assert!(e2.stderr < e1.stderr);
        assert!(estimate_tail_mc(&brownian(), &grid, 1.0, 10, 0).is_err());
    }

    #[test]
    fn determinism_and_digest() {
        let grid = SheppGrid::new(0.5, 1.0, 2.0, 3, 5).unwrap();
        let a = estimate_tail_mc(&brownian(), &grid, 1.5, 1200, 9).unwrap();
        let b = estimate_tail_mc(&brownian(), &grid, 1.5, 1200, 9).unwrap();
        assert_eq!(a.p_hat, b.p_hat);
        assert_eq!(a.config_digest, b.config_digest);
        let c = estimate_tail_mc(&brownian(), &grid, 1.5, 1200, 10).unwrap();
        assert_ne!(a.config_digest, c.config_digest);
    }

    #[test]
    fn tail_study_rows_and_trend() {
        let study = tail_ratio_study(
            &brownian(),
            0.5,
            1.0,
            4.0,
            0.5,
            &[1.5, 2.0],
            2000,
            1.0,
            3,
        )
        .unwrap();
        assert_eq!(study.rows.len(), 2);
        for r in &study.rows {
            assert!(r.ratio.is_finite() && r.ratio > 0.0);
            assert!(r.asym > 0.0);
        }
        assert!(study.trend.variation >= 0.0);
        assert!((study.constant - 0.25).abs() < 1e-9);
    }

    #[test]
    fn convergence_is_pathwise_monotone_and_validates() {
        let study =
            convergence_study(&brownian(), 0.5, 1.0, 2.0, 2.0, &[2.0, 1.0, 0.5], 1500, 5).unwrap();
        assert_eq!(study.rows.len(), 3);
        // nested grids with shared paths: p̂ nondecreasing as d decreases
        assert!(study.rows[1].p_hat >= study.rows[0].p_hat);
        assert!(study.rows[2].p_hat >= study.rows[1].p_hat);
        assert!(convergence_study(&brownian(), 0.5, 1.0, 2.0, 2.0, &[], 1500, 5).is_err());
        assert!(
            convergence_study(&brownian(), 0.5, 1.0, 2.0, 2.0, &[0.5, 1.0], 1500, 5).is_err(),
            "must be decreasing"
        );
        assert!(
            convergence_study(&brownian(), 0.5, 1.0, 2.0, 2.0, &[1.5, 1.0], 1500, 5).is_err(),
            "must be integer multiples of the finest"
        );
    }

    #[test]
    fn oracle_compare_small_grid() {
        let grid = SheppGrid::new(0.5, 1.0, 1.5, 4, 8).unwrap();
        let rep = oracle_compare(&brownian(), &grid, &[1.5, 2.0], 4000, 11).unwrap();
        assert_eq!(rep.rows.len(), 2);
        assert!(rep.all_within_3se, "{:?}", rep.rows);
    }

    #[test]
    fn limit_law_basicchecks() {
        let rep = empirical_limit_law(
            &brownian(),
            0.5,
            1.0,
            &[5.0, 10.0],
            0.5,
            300,
            1.0,
            0.0,
            13,
        )
        .unwrap();
        assert_eq!(rep.rows.len(), 2);
        for row in &rep.rows {
            assert!((0.0..=1.0).contains(&row.ks));
        }
        assert!(empirical_limit_law(
            &brownian(),
            0.5,
            1.0,
            &[5.0, 10.0],
            0.5,
            300,
            1.0,
            0.5,
            13
        )
        .is_err());
        assert!(
            empirical_limit_law(&brownian(), 0.5, 1.0, &[2.0, 5.0], 0.5, 300, 1.0, 0.0, 13)
                .is_err(),
            "horizons must exceed e"
        );
    }
}
