//! Standardized field samples on a grid and the simulators that produce them.

use super::embedding::{
    FbmSampler, IntegratedSampler, MixedFbmSampler, SimulatedPath, StationarySampler,
};
use super::grid::SheppGrid;
use crate::error::{Error, Result};
use crate::models::{FieldModel, IncrementVariance, SheppInput};
use rand_chacha::ChaCha8Rng;

/// Standardized field values `Z(τ_j, s_l)/σ(τ_j)` on a grid, with seed
/// provenance. Row `j` is window length `τ_j`, column `l` is start `s_l`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSample {
    pub grid: SheppGrid,
    values: Vec<f64>,
    pub seed: u64,
    pub model_id: String,
}

impl FieldSample {
    pub(crate) fn from_parts(
        grid: SheppGrid,
        values: Vec<f64>,
        seed: u64,
        model_id: String,
    ) -> Result<Self> {
        if values.len() != grid.points() {
            return Err(Error::Decode(format!(
                "value count {} does not match grid {}x{}",
                values.len(),
                grid.n_tau(),
                grid.n_s()
            )));
        }
        Ok(FieldSample {
            grid,
            values,
            seed,
            model_id,
        })
    }

    pub fn value(&self, j: usize, l: usize) -> f64 {
        self.values[j * self.grid.n_s() + l]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Maximum entry of the field sample.
pub fn field_max(sample: &FieldSample) -> f64 {
    sample.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

fn check_path_matches(path: &SimulatedPath, grid: &SheppGrid) -> Result<()> {
    if (path.dt / grid.path_dt() - 1.0).abs() > 1e-9 {
        return Err(Error::IncommensurateGrid(format!(
            "path spacing {} does not match the grid's {}",
            path.dt,
            grid.path_dt()
        )));
    }
    if path.values.len() < grid.path_len() {
        return Err(Error::IncommensurateGrid(format!(
            "path has {} points, grid needs {}",
            path.values.len(),
            grid.path_len()
        )));
    }
    Ok(())
}

fn inverse_sigmas(input: &SheppInput, grid: &SheppGrid) -> Result<Vec<f64>> {
    (0..grid.n_tau())
        .map(|j| {
            let v = input.increment_variance(grid.tau(j))?;
            if v <= 0.0 {
                return Err(Error::DegenerateVariance(format!(
                    "sigma^2({}) = {v}",
                    grid.tau(j)
                )));
            }
            Ok(1.0 / v.sqrt())
        })
        .collect()
}

/// Standardized Shepp field from a simulated input path covering
/// `[0, horizon + b]` on the grid's path spacing:
/// `values[j][l] = (X(s_l + τ_j) − X(s_l)) / σ_X(τ_j)`.
pub fn build_shepp_field(
    path: &SimulatedPath,
    grid: &SheppGrid,
    input: &SheppInput,
    seed: u64,
) -> Result<FieldSample> {
    check_path_matches(path, grid)?;
    let inv_sigma = inverse_sigmas(input, grid)?;
    let mut values = Vec::with_capacity(grid.points());
    for j in 0..grid.n_tau() {
        let is = inv_sigma[j];
        for l in 0..grid.n_s() {
            let x = path.values[grid.path_index_shifted(j, l)] - path.values[grid.path_index_s(l)];
            values.push(x * is);
        }
    }
    FieldSample::from_parts(grid.clone(), values, seed, input.tag())
}

/// Standardized two-process field `(Y(τ+s) + X(s))/√2` from two independent
/// stationary paths sharing one covariance. The scale `σ(τ)` multiplies the
/// raw field and is divided back out by standardization, so it only needs to
/// be positive on the window.
pub fn build_example21_field<F: Fn(f64) -> f64>(
    x_path: &SimulatedPath,
    y_path: &SimulatedPath,
    grid: &SheppGrid,
    sigma: F,
    seed: u64,
    model_id: String,
) -> Result<FieldSample> {
    check_path_matches(x_path, grid)?;
    check_path_matches(y_path, grid)?;
    for j in 0..grid.n_tau() {
        let s = sigma(grid.tau(j));
        if !(s > 0.0) {
            return Err(Error::DegenerateVariance(format!(
                "sigma({}) = {s} must be positive",
                grid.tau(j)
            )));
        }
    }
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut values = Vec::with_capacity(grid.points());
    for j in 0..grid.n_tau() {
        for l in 0..grid.n_s() {
            let y = y_path.values[grid.path_index_shifted(j, l)];
            let x = x_path.values[grid.path_index_s(l)];
            values.push((y + x) * inv_sqrt2);
        }
    }
    FieldSample::from_parts(grid.clone(), values, seed, model_id)
}

enum SimKind {
    Stationary(StationarySampler),
    Fbm(FbmSampler),
    MixedFbm(MixedFbmSampler),
    Integrated(IntegratedSampler),
    Example21(StationarySampler),
}

/// Prepared simulator for a field model on a fixed grid: builds the path
/// sampler(s) and standardization once, then turns one generator stream into
/// one field replication. Immutable after construction and shareable across
/// workers.
pub struct FieldSimulator {
    kind: SimKind,
    grid: SheppGrid,
    inv_sigma: Vec<f64>,
    model_id: String,
}

impl FieldSimulator {
    pub fn new(model: &FieldModel, grid: &SheppGrid) -> Result<Self> {
        model.validate()?;
        let n = grid.path_len();
        let dt = grid.path_dt();
        let (kind, inv_sigma) = match model {
            FieldModel::Shepp(input) => {
                let inv = inverse_sigmas(input, grid)?;
                let kind = match input {
                    SheppInput::Stationary(c) => {
                        SimKind::Stationary(StationarySampler::new(c, n, dt)?)
                    }
                    SheppInput::Increment(IncrementVariance::Fbm { hurst }) => {
                        SimKind::Fbm(FbmSampler::new(*hurst, n, dt)?)
                    }
                    SheppInput::Increment(IncrementVariance::MixedFbm { weights, hursts }) => {
                        SimKind::MixedFbm(MixedFbmSampler::new(weights, hursts, n, dt)?)
                    }
                    SheppInput::Increment(IncrementVariance::Integrated { zeta, subgrid }) => {
                        SimKind::Integrated(IntegratedSampler::new(zeta, *subgrid, n, dt)?)
                    }
                };
                (kind, inv)
            }
            FieldModel::Example21 { cov } => (
                SimKind::Example21(StationarySampler::new(cov, n, dt)?),
                Vec::new(),
            ),
        };
        Ok(FieldSimulator {
            kind,
            grid: grid.clone(),
            inv_sigma,
            model_id: model.tag(),
        })
    }

    pub fn grid(&self) -> &SheppGrid {
        &self.grid
    }

    fn sample_paths(&self, rng: &mut ChaCha8Rng) -> (SimulatedPath, Option<SimulatedPath>) {
        match &self.kind {
            SimKind::Stationary(s) => (s.sample(rng), None),
            SimKind::Fbm(s) => (s.sample(rng), None),
            SimKind::MixedFbm(s) => (s.sample(rng), None),
            SimKind::Integrated(s) => (s.sample(rng), None),
            SimKind::Example21(s) => {
                let x = s.sample(rng);
                let y = s.sample(rng);
                (x, Some(y))
            }
        }
    }

    /// Max of one standardized field replication, without materializing it.
    pub fn sample_max(&self, rng: &mut ChaCha8Rng) -> f64 {
        let (x_path, y_path) = self.sample_paths(rng);
        let g = &self.grid;
        let mut best = f64::NEG_INFINITY;
        match &y_path {
            None => {
                for j in 0..g.n_tau() {
                    let is = self.inv_sigma[j];
                    for l in 0..g.n_s() {
                        let v = (x_path.values[g.path_index_shifted(j, l)]
                            - x_path.values[g.path_index_s(l)])
                            * is;
                        if v > best {
                            best = v;
                        }
                    }
                }
            }
            Some(y) => {
                let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
                for j in 0..g.n_tau() {
                    for l in 0..g.n_s() {
                        let v = (y.values[g.path_index_shifted(j, l)]
                            + x_path.values[g.path_index_s(l)])
                            * inv_sqrt2;
                        if v > best {
                            best = v;
                        }
                    }
                }
            }
        }
        best
    }

    /// Max over the sub-lattice taking every `tau_stride`-th row and
    /// `s_stride`-th column (used by nested-grid refinement studies; stride 1
    /// is the full grid).
    pub fn sample_max_strided(&self, rng: &mut ChaCha8Rng, strides: &[usize]) -> Vec<f64> {
        let (x_path, y_path) = self.sample_paths(rng);
        let g = &self.grid;
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        strides
            .iter()
            .map(|&stride| {
                debug_assert!(stride >= 1);
                debug_assert_eq!((g.n_tau() - 1) % stride, 0);
                debug_assert_eq!((g.n_s() - 1) % stride, 0);
                let mut best = f64::NEG_INFINITY;
                let mut j = 0;
                while j < g.n_tau() {
                    let mut l = 0;
                    while l < g.n_s() {
                        let v = match &y_path {
                            None => {
                                (x_path.values[g.path_index_shifted(j, l)]
                                    - x_path.values[g.path_index_s(l)])
                                    * self.inv_sigma[j]
                            }
                            Some(y) => {
                                (y.values[g.path_index_shifted(j, l)]
                                    + x_path.values[g.path_index_s(l)])
                                    * inv_sqrt2
                            }
                        };
                        if v > best {
                            best = v;
                        }
                        l += stride;
                    }
                    j += stride;
                }
                best
            })
            .collect()
    }

    /// One full field replication.
    pub fn sample_field(&self, rng: &mut ChaCha8Rng, seed: u64) -> Result<FieldSample> {
        let (x_path, y_path) = self.sample_paths(rng);
        match y_path {
            Some(y) => build_example21_field(
                &x_path,
                &y,
                &self.grid,
                |_| 1.0,
                seed,
                self.model_id.clone(),
            ),
            None => {
                let g = &self.grid;
                let mut values = Vec::with_capacity(g.points());
                for j in 0..g.n_tau() {
                    for l in 0..g.n_s() {
                        values.push(
                            (x_path.values[g.path_index_shifted(j, l)]
                                - x_path.values[g.path_index_s(l)])
                                * self.inv_sigma[j],
                        );
                    }
                }
                FieldSample::from_parts(g.clone(), values, seed, self.model_id.clone())
            }
        }
    }
}
