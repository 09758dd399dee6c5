//! Variance functions `σ_X²(t)` for stationary-increment inputs.

use super::covariance::StationaryCovariance;
use crate::error::{Error, Result};
use crate::quad;
use serde::{Deserialize, Serialize};

/// Relative tolerance for the integrated-family variance quadrature. The
/// variance enters denominators of `g`, so it is resolved tightly.
pub const VARIANCE_QUAD_REL_TOL: f64 = 1e-10;

/// Default refinement factor of the simulation sub-grid for integrated
/// processes (the driving stationary path is simulated this many times finer
/// than the requested output grid).
pub const DEFAULT_INTEGRATED_SUBGRID: u32 = 8;

/// Variance model `σ_X²(t)` of a centered stationary-increment input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum IncrementVariance {
    /// Fractional Brownian motion: `σ²(t) = t^{2H}`, `H ∈ (0, 1)`.
    Fbm { hurst: f64 },
    /// `X = Σ λ_i B_{H_i}` with independent fBms, `Σ λ_i² = 1`,
    /// `H_1 < … < H_n`: `σ²(t) = Σ λ_i² t^{2H_i}`.
    MixedFbm { weights: Vec<f64>, hursts: Vec<f64> },
    /// `X(t) = ∫_0^t ζ(s) ds` for a unit-variance stationary `ζ`:
    /// `σ²(t) = 2∫_0^t (t−s) r_ζ(s) ds`, evaluated by adaptive quadrature.
    Integrated {
        zeta: StationaryCovariance,
        /// Simulation sub-grid refinement factor (≥ 4).
        subgrid: u32,
    },
}

impl IncrementVariance {
    pub fn fbm(hurst: f64) -> Result<Self> {
        let m = IncrementVariance::Fbm { hurst };
        m.validate()?;
        Ok(m)
    }

    pub fn mixed_fbm(weights: Vec<f64>, hursts: Vec<f64>) -> Result<Self> {
        let m = IncrementVariance::MixedFbm { weights, hursts };
        m.validate()?;
        Ok(m)
    }

    pub fn integrated(zeta: StationaryCovariance) -> Result<Self> {
        let m = IncrementVariance::Integrated {
            zeta,
            subgrid: DEFAULT_INTEGRATED_SUBGRID,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            IncrementVariance::Fbm { hurst } => {
                if !(hurst.is_finite() && *hurst > 0.0 && *hurst < 1.0) {
                    return Err(Error::validation(format!(
                        "fBm Hurst index {hurst} must lie in (0, 1)"
                    )));
                }
            }
            IncrementVariance::MixedFbm { weights, hursts } => {
                if weights.is_empty() || weights.len() != hursts.len() {
                    return Err(Error::validation(
                        "mixed fBm needs equal-length nonempty weights and hursts",
                    ));
                }
                for &l in weights {
                    if !(l.is_finite() && l > 0.0) {
                        return Err(Error::validation("mixed fBm weights must be positive"));
                    }
                }
                let sq: f64 = weights.iter().map(|l| l * l).sum();
                if (sq - 1.0).abs() > 1e-12 {
                    return Err(Error::validation(format!(
                        "mixed fBm weights must satisfy sum of squares = 1 (got {sq})"
                    )));
                }
                for w in hursts.windows(2) {
                    if !(w[0] < w[1]) {
                        return Err(Error::validation(
                            "mixed fBm Hurst indices must be strictly increasing",
                        ));
                    }
                }
                for &h in hursts {
                    if !(h.is_finite() && h > 0.0 && h < 1.0) {
                        return Err(Error::validation(format!(
                            "mixed fBm Hurst index {h} must lie in (0, 1)"
                        )));
                    }
                }
            }
            IncrementVariance::Integrated { zeta, subgrid } => {
                zeta.validate()?;
                if *subgrid < 4 {
                    return Err(Error::validation(format!(
                        "integrated sub-grid factor {subgrid} must be at least 4"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `σ_X²(t)` for `t ≥ 0`.
    pub fn variance(&self, t: f64) -> Result<f64> {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::validation(format!(
                "variance lag {t} must be finite and nonnegative"
            )));
        }
        match self {
            IncrementVariance::Fbm { hurst } => Ok(t.powf(2.0 * hurst)),
            IncrementVariance::MixedFbm { weights, hursts } => Ok(weights
                .iter()
                .zip(hursts)
                .map(|(l, h)| l * l * t.powf(2.0 * h))
                .sum()),
            IncrementVariance::Integrated { zeta, .. } => {
                if t == 0.0 {
                    return Ok(0.0);
                }
                let v = 2.0
                    * quad::integrate(
                        |s| Ok((t - s) * zeta.correlation(s)?),
                        0.0,
                        t,
                        VARIANCE_QUAD_REL_TOL,
                    )?;
                if v <= 0.0 {
                    return Err(Error::DegenerateVariance(format!(
                        "integrated variance at t={t} is {v} (covariance integral not positive)"
                    )));
                }
                Ok(v)
            }
        }
    }

    /// `Cov(X(t), X(u)) = ½[σ²(t) + σ²(u) − σ²(|t−u|)]`.
    pub fn covariance(&self, t: f64, u: f64) -> Result<f64> {
        Ok(0.5 * (self.variance(t)? + self.variance(u)? - self.variance((t - u).abs())?))
    }

    /// Local exponent `α ∈ (0, 2]` of `σ²(t) ~ a₂ t^α`.
    pub fn alpha(&self) -> f64 {
        match self {
            IncrementVariance::Fbm { hurst } => 2.0 * hurst,
            IncrementVariance::MixedFbm { hursts, .. } => 2.0 * hursts[0],
            IncrementVariance::Integrated { .. } => 2.0,
        }
    }

    /// Local coefficient `a₂` of `σ²(t) ~ a₂ t^α`.
    pub fn a2(&self) -> f64 {
        match self {
            IncrementVariance::Fbm { .. } => 1.0,
            IncrementVariance::MixedFbm { weights, .. } => weights[0] * weights[0],
            // r_ζ(0) = 1 forces σ²(t) = t²(1 + o(1))
            IncrementVariance::Integrated { .. } => 1.0,
        }
    }

    pub fn tag(&self) -> String {
        match self {
            IncrementVariance::Fbm { hurst } => format!("fbm(H={hurst})"),
            IncrementVariance::MixedFbm { weights, hursts } => {
                format!("mixed-fbm({weights:?},{hursts:?})")
            }
            IncrementVariance::Integrated { zeta, .. } => format!("integrated({})", zeta.tag()),
        }
    }
}
