//! Stationary correlation models for the process driving the Shepp field.
//!
//! Every family satisfies `r(0) = 1`, `|r(t)| ≤ 1`, `r(t) < 1` for `t > 0`,
//! and behaves like `1 − a₁ t^α` near zero; `α` and `a₁` are exposed so the
//! local structure of the derived field can be formed without refitting.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Parametric stationary correlation `r_X(t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum StationaryCovariance {
    /// `r(t) = exp(−|t|^α)`, `α ∈ (0, 2)`.
    FractionalOu { alpha: f64 },
    /// `r(t) = (1 + |t|^α)^{−β}`, `α ∈ (0, 2)`, `β > 0`.
    GeneralizedCauchy { alpha: f64, beta: f64 },
    /// Piecewise-linear interpolation of `(t, r)` knots; hard error beyond
    /// the last knot (no extrapolation). `alpha`/`a1` declare the local
    /// behaviour `1 − a₁ t^α` the table is meant to follow near zero.
    Tabulated {
        knots: Vec<(f64, f64)>,
        alpha: f64,
        a1: f64,
    },
}

impl StationaryCovariance {
    pub fn fractional_ou(alpha: f64) -> Result<Self> {
        let m = StationaryCovariance::FractionalOu { alpha };
        m.validate()?;
        Ok(m)
    }

    pub fn generalized_cauchy(alpha: f64, beta: f64) -> Result<Self> {
        let m = StationaryCovariance::GeneralizedCauchy { alpha, beta };
        m.validate()?;
        Ok(m)
    }

    pub fn tabulated(knots: Vec<(f64, f64)>, alpha: f64, a1: f64) -> Result<Self> {
        let m = StationaryCovariance::Tabulated { knots, alpha, a1 };
        m.validate()?;
        Ok(m)
    }

    /// Check the family's parameter constraints. Deserialized models must be
    /// passed through this before use.
    pub fn validate(&self) -> Result<()> {
        match self {
            StationaryCovariance::FractionalOu { alpha } => {
                if !(alpha.is_finite() && *alpha > 0.0 && *alpha < 2.0) {
                    return Err(Error::validation(format!(
                        "fractional OU exponent alpha={alpha} must lie in (0, 2)"
                    )));
                }
            }
            StationaryCovariance::GeneralizedCauchy { alpha, beta } => {
                if !(alpha.is_finite() && *alpha > 0.0 && *alpha < 2.0) {
                    return Err(Error::validation(format!(
                        "generalized Cauchy exponent alpha={alpha} must lie in (0, 2)"
                    )));
                }
                if !(beta.is_finite() && *beta > 0.0) {
                    return Err(Error::validation(format!(
                        "generalized Cauchy exponent beta={beta} must be positive"
                    )));
                }
            }
            StationaryCovariance::Tabulated { knots, alpha, a1 } => {
                if !(alpha.is_finite() && *alpha > 0.0 && *alpha <= 2.0) {
                    return Err(Error::validation(format!(
                        "tabulated alpha={alpha} must lie in (0, 2]"
                    )));
                }
                if !(a1.is_finite() && *a1 > 0.0) {
                    return Err(Error::validation(format!(
                        "tabulated a1={a1} must be positive"
                    )));
                }
                if knots.len() < 2 {
                    return Err(Error::validation("tabulated model needs at least 2 knots"));
                }
                if knots[0] != (0.0, 1.0) {
                    return Err(Error::validation(
                        "tabulated model must start at the knot (0, 1)",
                    ));
                }
                for w in knots.windows(2) {
                    if !(w[1].0.is_finite() && w[1].0 > w[0].0) {
                        return Err(Error::validation(
                            "tabulated knot times must be finite and strictly increasing",
                        ));
                    }
                }
                for &(t, r) in &knots[1..] {
                    if !(r.is_finite() && r > -1.0 && r < 1.0) {
                        return Err(Error::validation(format!(
                            "tabulated value r({t}) = {r} must lie strictly inside (-1, 1)"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `r_X(t)` for `t ≥ 0`. Exactly 1 iff `t = 0`.
    pub fn correlation(&self, t: f64) -> Result<f64> {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::validation(format!(
                "correlation lag {t} must be finite and nonnegative"
            )));
        }
        match self {
            StationaryCovariance::FractionalOu { alpha } => Ok((-t.powf(*alpha)).exp()),
            StationaryCovariance::GeneralizedCauchy { alpha, beta } => {
                Ok((-beta * t.powf(*alpha).ln_1p()).exp())
            }
            StationaryCovariance::Tabulated { knots, .. } => {
                let last = knots.last().expect("validated");
                if t > last.0 {
                    return Err(Error::OutOfTableRange { t, max: last.0 });
                }
                let i = knots.partition_point(|&(kt, _)| kt <= t);
                if i == 0 {
                    return Ok(knots[0].1);
                }
                if i == knots.len() {
                    return Ok(last.1);
                }
                let (t0, r0) = knots[i - 1];
                let (t1, r1) = knots[i];
                Ok(r0 + (r1 - r0) * (t - t0) / (t1 - t0))
            }
        }
    }

    /// `1 − r_X(t)` evaluated without cancellation for the analytic families.
    pub fn one_minus(&self, t: f64) -> Result<f64> {
        match self {
            StationaryCovariance::FractionalOu { alpha } => {
                if !(t.is_finite() && t >= 0.0) {
                    return Err(Error::validation(format!("lag {t} must be nonnegative")));
                }
                Ok(-f64::exp_m1(-t.powf(*alpha)))
            }
            StationaryCovariance::GeneralizedCauchy { alpha, beta } => {
                if !(t.is_finite() && t >= 0.0) {
                    return Err(Error::validation(format!("lag {t} must be nonnegative")));
                }
                Ok(-f64::exp_m1(-beta * t.powf(*alpha).ln_1p()))
            }
            StationaryCovariance::Tabulated { .. } => Ok(1.0 - self.correlation(t)?),
        }
    }

    /// Local exponent `α` of `1 − r(t) ~ a₁ t^α`.
    pub fn alpha(&self) -> f64 {
        match self {
            StationaryCovariance::FractionalOu { alpha } => *alpha,
            StationaryCovariance::GeneralizedCauchy { alpha, .. } => *alpha,
            StationaryCovariance::Tabulated { alpha, .. } => *alpha,
        }
    }

    /// Local coefficient `a₁` of `1 − r(t) ~ a₁ t^α`.
    pub fn a1(&self) -> f64 {
        match self {
            StationaryCovariance::FractionalOu { .. } => 1.0,
            StationaryCovariance::GeneralizedCauchy { beta, .. } => *beta,
            StationaryCovariance::Tabulated { a1, .. } => *a1,
        }
    }

    /// Largest lag the model can be evaluated at (`None` when unbounded).
    pub fn max_lag(&self) -> Option<f64> {
        match self {
            StationaryCovariance::Tabulated { knots, .. } => knots.last().map(|k| k.0),
            _ => None,
        }
    }

    /// Short provenance tag for result files.
    pub fn tag(&self) -> String {
        match self {
            StationaryCovariance::FractionalOu { alpha } => format!("fou(alpha={alpha})"),
            StationaryCovariance::GeneralizedCauchy { alpha, beta } => {
                format!("cauchy(alpha={alpha},beta={beta})")
            }
            StationaryCovariance::Tabulated { knots, .. } => {
                format!("tabulated({} knots)", knots.len())
            }
        }
    }
}
