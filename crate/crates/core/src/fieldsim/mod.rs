//! Exact Gaussian path simulation and standardized-field construction.
//!
//! Simulation is replication-parallel by design: samplers are immutable
//! after construction, every replication draws from its own counter-derived
//! generator, and no path or field value is mutated after creation.

mod embedding;
mod field;
mod grid;
mod io;
mod oracle;

pub use embedding::{
    simulate_fbm, simulate_integrated, simulate_mixed_fbm, simulate_stationary, FbmSampler,
    IntegratedSampler, MixedFbmSampler, PathMethod, SimulatedPath, StationarySampler,
    CHOLESKY_JITTER, EMBEDDING_EIG_TOL,
};
pub use field::{
    build_example21_field, build_shepp_field, field_max, FieldSample, FieldSimulator,
};
pub use grid::SheppGrid;
pub use io::{
    decode_field_binary, read_field_binary, read_field_csv, write_field_binary, write_field_csv,
    FieldCsvRow, FIELD_MAGIC,
};
pub use oracle::{oracle_sample_max, OracleEstimate, ORACLE_JITTER, ORACLE_MAX_POINTS};
