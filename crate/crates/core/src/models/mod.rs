//! Covariance and variance model families, the exact correlation of the
//! standardized Shepp field, local-structure extraction, and validators for
//! the modelling assumptions (variance homogeneity, local power-law decay,
//! Berman coefficient trend).
//!
//! All model types are immutable plain data, serializable for config files,
//! and safe to share across workers; every operation here is a pure function.

mod covariance;
mod field;
mod structure;
mod validate;
mod variance;

pub use covariance::StationaryCovariance;
pub use field::{shepp_correlation, FieldModel, SheppInput};
pub use structure::{local_structure, LocalStructure};
pub use validate::{
    berman_coefficient, fit_local_exponent, validate_variance_homogeneity, BermanSearchParams,
    LocalExponentFit, VarianceHomogeneityReport, FIT_K_RANGE, FIT_RESIDUAL_MAX,
};
pub use variance::{IncrementVariance, DEFAULT_INTEGRATED_SUBGRID, VARIANCE_QUAD_REL_TOL};
