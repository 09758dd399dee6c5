//! The standardized fields under study and their exact correlation.
//!
//! A Shepp field is `Y(τ,s) = (X(s+τ) − X(s)) / σ_X(τ)` for a stationary or
//! stationary-increment input `X`; the constructed two-process field is
//! `Z(τ,s) = (Y(τ+s) + X(s)) σ(τ)/√2` for independent stationary `X, Y`
//! sharing one covariance. Both have unit variance after standardization and
//! correlations that depend on `s, s'` only through the gap `s − s'`.

use super::covariance::StationaryCovariance;
use super::variance::IncrementVariance;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Input process of a Shepp field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SheppInput {
    Stationary(StationaryCovariance),
    Increment(IncrementVariance),
}

impl SheppInput {
    pub fn validate(&self) -> Result<()> {
        match self {
            SheppInput::Stationary(c) => c.validate(),
            SheppInput::Increment(v) => v.validate(),
        }
    }

    /// Standardization `σ_X²(τ) = E(X(s+τ) − X(s))²`: `2(1 − r_X(τ))` for
    /// stationary inputs, `σ_X²(τ)` for stationary-increment inputs.
    pub fn increment_variance(&self, tau: f64) -> Result<f64> {
        let v = match self {
            SheppInput::Stationary(c) => 2.0 * c.one_minus(tau)?,
            SheppInput::Increment(m) => m.variance(tau)?,
        };
        if tau > 0.0 && v <= 0.0 {
            return Err(Error::DegenerateVariance(format!(
                "increment variance at window length {tau} is {v}"
            )));
        }
        Ok(v)
    }

    /// Local exponent of the standardized field.
    pub fn alpha(&self) -> f64 {
        match self {
            SheppInput::Stationary(c) => c.alpha(),
            SheppInput::Increment(v) => v.alpha(),
        }
    }

    pub fn tag(&self) -> String {
        match self {
            SheppInput::Stationary(c) => format!("shepp-{}", c.tag()),
            SheppInput::Increment(v) => format!("shepp-{}", v.tag()),
        }
    }
}

/// Exact correlation of the standardized Shepp field between `(τ, s)` and
/// `(τ', s')`, from the bilinear expansion of the increment covariance.
///
/// Equals 1 iff the two points coincide; always in `[−1, 1]` and symmetric
/// under swapping the points.
pub fn shepp_correlation(
    input: &SheppInput,
    tau: f64,
    s: f64,
    tau2: f64,
    s2: f64,
) -> Result<f64> {
    check_window(tau)?;
    check_window(tau2)?;
    if !(s.is_finite() && s >= 0.0 && s2.is_finite() && s2 >= 0.0) {
        return Err(Error::validation("window starts must be nonnegative"));
    }
    if tau == tau2 && s == s2 {
        return Ok(1.0);
    }
    let delta = s - s2;
    let num = match input {
        SheppInput::Stationary(c) => {
            // Cov = r(δ+τ−τ') − r(δ+τ) − r(δ−τ') + r(δ)
            c.correlation((delta + tau - tau2).abs())? - c.correlation((delta + tau).abs())?
                - c.correlation((delta - tau2).abs())?
                + c.correlation(delta.abs())?
        }
        SheppInput::Increment(m) => {
            // Cov = ½[−σ²(δ+τ−τ') + σ²(δ+τ) + σ²(δ−τ') − σ²(δ)]
            0.5 * (-m.variance((delta + tau - tau2).abs())? + m.variance((delta + tau).abs())?
                + m.variance((delta - tau2).abs())?
                - m.variance(delta.abs())?)
        }
    };
    let den = (self_variance(input, tau)? * self_variance(input, tau2)?).sqrt();
    Ok((num / den).clamp(-1.0, 1.0))
}

fn check_window(tau: f64) -> Result<()> {
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::validation(format!(
            "window length {tau} must be positive"
        )));
    }
    Ok(())
}

fn self_variance(input: &SheppInput, tau: f64) -> Result<f64> {
    let v = input.increment_variance(tau)?;
    if v <= 0.0 {
        return Err(Error::DegenerateVariance(format!(
            "window length {tau} gives increment variance {v}"
        )));
    }
    Ok(v)
}

/// A standardized field model: either a Shepp field or the two-process
/// construction. This is the abstraction the validators, the dense-Cholesky
/// oracle and the simulators all share.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FieldModel {
    Shepp(SheppInput),
    /// `Z(τ,s) = (Y(τ+s) + X(s)) σ(τ)/√2` with independent stationary `X, Y`
    /// sharing covariance `cov`. σ cancels after standardization.
    Example21 { cov: StationaryCovariance },
}

impl FieldModel {
    pub fn validate(&self) -> Result<()> {
        match self {
            FieldModel::Shepp(i) => i.validate(),
            FieldModel::Example21 { cov } => cov.validate(),
        }
    }

    /// Exact correlation between field points `(τ, s)` and `(τ', s')`.
    pub fn correlation(&self, tau: f64, s: f64, tau2: f64, s2: f64) -> Result<f64> {
        match self {
            FieldModel::Shepp(input) => shepp_correlation(input, tau, s, tau2, s2),
            FieldModel::Example21 { cov } => {
                let v = 0.5
                    * (cov.correlation((tau + s - tau2 - s2).abs())?
                        + cov.correlation((s - s2).abs())?);
                Ok(v.clamp(-1.0, 1.0))
            }
        }
    }

    /// Unit variance of the standardized field recomputed through the full
    /// correlation formula (no identical-points shortcut); a numerical
    /// self-check used by the validators.
    pub fn self_variance_via_formula(&self, tau: f64, s: f64) -> Result<f64> {
        match self {
            FieldModel::Shepp(input) => {
                let delta = 0.0_f64;
                let num = match input {
                    SheppInput::Stationary(c) => {
                        c.correlation(delta)? - 2.0 * c.correlation((delta + tau).abs())?
                            + c.correlation(delta)?
                    }
                    SheppInput::Increment(m) => {
                        0.5 * (-m.variance(delta)? + 2.0 * m.variance((delta + tau).abs())?
                            - m.variance(delta)?)
                    }
                };
                Ok(num / self_variance(input, tau)?)
            }
            FieldModel::Example21 { cov } => {
                let _ = s;
                Ok(0.5 * (cov.correlation(0.0)? + cov.correlation(0.0)?))
            }
        }
    }

    /// Unstandardized field variance at `(τ, s)` computed through the
    /// explicit covariance expansion with `s` kept symbolic-free, so that any
    /// accidental `s`-dependence would show up. For the two-process field the
    /// scale `σ(τ)` is taken as 1.
    pub fn unstandardized_variance(&self, tau: f64, s: f64) -> Result<f64> {
        match self {
            FieldModel::Shepp(SheppInput::Stationary(c)) => {
                // Var(X(s+τ) − X(s)) = C(s+τ,s+τ) − 2C(s+τ,s) + C(s,s)
                Ok(c.correlation(0.0)? - 2.0 * c.correlation(tau)? + c.correlation(0.0)?)
            }
            FieldModel::Shepp(SheppInput::Increment(m)) => {
                Ok(m.covariance(s + tau, s + tau)? - 2.0 * m.covariance(s + tau, s)?
                    + m.covariance(s, s)?)
            }
            FieldModel::Example21 { cov } => {
                // Var(Y(τ+s)) + Var(X(s)) over 2
                Ok(0.5 * (cov.correlation(0.0)? + cov.correlation(0.0)?))
            }
        }
    }

    /// Stable `1 − ρ((τ,s); (τ,s+Δ))` along the homogeneous direction. Used
    /// by the local-exponent fit where naive subtraction would cancel.
    pub fn one_minus_correlation_s(&self, tau: f64, dl: f64) -> Result<f64> {
        if !(dl > 0.0) {
            return Err(Error::validation("gap must be positive"));
        }
        match self {
            FieldModel::Shepp(SheppInput::Stationary(c)) => {
                let om_d = c.one_minus(dl)?;
                let om_t = c.one_minus(tau)?;
                let secdiff =
                    (c.one_minus((tau + dl).abs())? - om_t) + (c.one_minus((tau - dl).abs())? - om_t);
                if om_t <= 0.0 {
                    return Err(Error::DegenerateVariance(format!("1 - r({tau}) = {om_t}")));
                }
                Ok((2.0 * om_d - secdiff) / (2.0 * om_t))
            }
            FieldModel::Shepp(SheppInput::Increment(m)) => {
                let s2t = m.variance(tau)?;
                if s2t <= 0.0 {
                    return Err(Error::DegenerateVariance(format!("sigma^2({tau}) = {s2t}")));
                }
                match m {
                    IncrementVariance::Integrated { zeta, .. } => {
                        if tau - dl <= 0.0 {
                            return Err(Error::validation("gap exceeds window length"));
                        }
                        // second difference of σ² via its exact Peano kernel:
                        // σ²(τ+Δ) − 2σ²(τ) + σ²(τ−Δ) = 2∫ (Δ−|s−τ|)⁺ r_ζ(s) ds
                        let hat = 2.0
                            * crate::quad::integrate(
                                |s| Ok((dl - (s - tau).abs()) * zeta.correlation(s)?),
                                tau - dl,
                                tau + dl,
                                1e-10,
                            )?;
                        Ok((m.variance(dl)? - 0.5 * hat) / s2t)
                    }
                    _ => Ok(
                        (s2t - 0.5 * (m.variance(tau + dl)? + m.variance((tau - dl).abs())?)
                            + m.variance(dl)?)
                            / s2t,
                    ),
                }
            }
            FieldModel::Example21 { cov } => cov.one_minus(dl),
        }
    }

    /// Local exponent `α` of the field.
    pub fn alpha(&self) -> f64 {
        match self {
            FieldModel::Shepp(i) => i.alpha(),
            FieldModel::Example21 { cov } => cov.alpha(),
        }
    }

    pub fn tag(&self) -> String {
        match self {
            FieldModel::Shepp(i) => i.tag(),
            FieldModel::Example21 { cov } => format!("example21-{}", cov.tag()),
        }
    }
}
