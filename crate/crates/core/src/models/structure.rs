//! Local structure `(α, g)` of the standardized field on a window `[a, b]`.

use super::covariance::StationaryCovariance;
use super::field::{FieldModel, SheppInput};
use super::variance::IncrementVariance;
use crate::error::{Error, Result};

/// The locally stationary structure of a standardized field over `[a, b]`:
/// correlations decay like `1 − g(τ)(|Δs|^α + |Δτ+Δs|^α)` near the diagonal.
#[derive(Debug, Clone)]
pub struct LocalStructure {
    pub alpha: f64,
    pub a: f64,
    pub b: f64,
    source: GSource,
}

#[derive(Debug, Clone)]
enum GSource {
    /// `g(τ) = a₁ / (2(1 − r_X(τ)))`
    Stationary(StationaryCovariance),
    /// `g(τ) = a₂ / (2 σ_X²(τ))`
    Increment(IncrementVariance),
    /// constant `g ≡ a₁/2` for the two-process field
    Constant(f64),
}

impl LocalStructure {
    /// `g(τ)`; positive and continuous on `[a, b]`.
    pub fn g(&self, tau: f64) -> Result<f64> {
        if !(tau >= self.a && tau <= self.b) {
            return Err(Error::validation(format!(
                "tau={tau} outside local-structure window [{}, {}]",
                self.a, self.b
            )));
        }
        match &self.source {
            GSource::Stationary(c) => {
                let om = c.one_minus(tau)?;
                if om <= 0.0 {
                    return Err(Error::DegenerateVariance(format!("1 - r({tau}) = {om}")));
                }
                Ok(c.a1() / (2.0 * om))
            }
            GSource::Increment(v) => {
                let s2 = v.variance(tau)?;
                if s2 <= 0.0 {
                    return Err(Error::DegenerateVariance(format!("sigma^2({tau}) = {s2}")));
                }
                Ok(v.a2() / (2.0 * s2))
            }
            GSource::Constant(g) => Ok(*g),
        }
    }
}

/// Extract the local structure of a field model over `0 < a < b`.
///
/// Errors with `DegenerateVariance` if the standardizing denominator
/// vanishes anywhere on a scan of `[a, b]`.
pub fn local_structure(model: &FieldModel, a: f64, b: f64) -> Result<LocalStructure> {
    if !(a.is_finite() && b.is_finite() && 0.0 < a && a < b) {
        return Err(Error::validation(format!(
            "window [{a}, {b}] must satisfy 0 < a < b"
        )));
    }
    let source = match model {
        FieldModel::Shepp(SheppInput::Stationary(c)) => GSource::Stationary(c.clone()),
        FieldModel::Shepp(SheppInput::Increment(v)) => GSource::Increment(v.clone()),
        FieldModel::Example21 { cov } => GSource::Constant(cov.a1() / 2.0),
    };
    let ls = LocalStructure {
        alpha: model.alpha(),
        a,
        b,
        source,
    };
    // guard against degenerate denominators inside the window
    const SCAN: usize = 64;
    for i in 0..=SCAN {
        let tau = a + (b - a) * i as f64 / SCAN as f64;
        ls.g(tau)?;
    }
    Ok(ls)
}
