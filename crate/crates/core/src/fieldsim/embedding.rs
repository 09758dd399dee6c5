//! Exact sampling of stationary Gaussian sequences by circulant embedding
//! (Davies–Harte / Wood–Chan), with a dense-Cholesky fallback, and the path
//! samplers built on it: stationary processes, fractional Brownian motion,
//! mixed fBm and integrated processes.

use crate::error::{Error, Result};
use crate::models::{IncrementVariance, StationaryCovariance};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

/// Embedding eigenvalues below this are a failure; tiny negatives above it
/// are clamped to zero.
pub const EMBEDDING_EIG_TOL: f64 = -1e-9;

/// Diagonal jitter for the dense-Cholesky fallback.
pub const CHOLESKY_JITTER: f64 = 1e-12;

/// Largest sequence length the dense fallback will factor.
const MAX_DENSE_N: usize = 4096;

/// How a path was generated (recorded on every sample).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathMethod {
    /// FFT sampling from a nonnegative-definite circulant embedding.
    CirculantEmbedding { padded: bool },
    /// Dense Cholesky of the Toeplitz covariance (embedding fallback).
    DenseCholesky,
    /// Independent increments (Brownian fast path, H = 1/2 exactly).
    WhiteNoise,
    /// `B_1(t) = tZ` (H = 1 exactly).
    DegenerateLine,
}

/// A simulated path on the regular grid `0, dt, …, (n−1)dt`.
#[derive(Debug, Clone)]
pub struct SimulatedPath {
    pub dt: f64,
    pub values: Vec<f64>,
    pub method: PathMethod,
}

/// Sampler for a zero-mean stationary Gaussian sequence with covariance
/// `c_k` at lag `k`; one-time setup, then cheap repeated sampling.
enum SequenceSampler {
    Circulant {
        /// `√(λ_0/m)`, `√(λ_{m/2}/m)`, and `√(λ_k/(2m))` for 1 ≤ k < m/2.
        factor0: f64,
        factor_half: f64,
        factors: Vec<f64>,
        m: usize,
        n: usize,
        fft: Arc<dyn Fft<f64>>,
        padded: bool,
    },
    Dense {
        /// Lower-triangular factor, row-major.
        chol: nalgebra::DMatrix<f64>,
        n: usize,
    },
}

impl SequenceSampler {
    /// Build from the covariance sequence generator `cov(k)`; `n` output
    /// points. Tries the minimal embedding `m = 2(n−1)`, then a padded
    /// power-of-two embedding, then dense Cholesky.
    fn new<C: Fn(usize) -> Result<f64>>(cov: C, n: usize) -> Result<SequenceSampler> {
        if n < 2 {
            return Err(Error::validation("need at least 2 sequence points"));
        }
        let minimal = 2 * (n - 1);
        match Self::try_circulant(&cov, n, minimal, false) {
            Ok(s) => return Ok(s),
            Err(Error::EmbeddingFailure(_)) => {}
            Err(e) => return Err(e),
        }
        let padded = minimal.next_power_of_two() * 2;
        let pad_attempt = Self::try_circulant(&cov, n, padded, true);
        match pad_attempt {
            Ok(s) => return Ok(s),
            // padding needs covariance values beyond the minimal range; a
            // tabulated model may not reach, which also routes to the dense
            // fallback
            Err(Error::EmbeddingFailure(_)) | Err(Error::OutOfTableRange { .. }) => {}
            Err(e) => return Err(e),
        }
        Self::dense(&cov, n)
    }

    fn try_circulant<C: Fn(usize) -> Result<f64>>(
        cov: &C,
        n: usize,
        m: usize,
        padded: bool,
    ) -> Result<SequenceSampler> {
        let half = m / 2;
        let mut row: Vec<Complex<f64>> = Vec::with_capacity(m);
        for k in 0..=half {
            row.push(Complex::new(cov(k)?, 0.0));
        }
        for k in (1..half).rev() {
            row.push(row[k]);
        }
        debug_assert_eq!(row.len(), m);
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(m);
        let mut eig = row;
        fft.process(&mut eig);
        let mut min_eig = f64::INFINITY;
        for e in &eig {
            min_eig = min_eig.min(e.re);
        }
        if min_eig < EMBEDDING_EIG_TOL {
            return Err(Error::EmbeddingFailure(format!(
                "circulant embedding of size {m} has eigenvalue {min_eig:.3e}"
            )));
        }
        let mf = m as f64;
        let lam = |k: usize| eig[k].re.max(0.0);
        let factors: Vec<f64> = (0..half).map(|k| (lam(k) / (2.0 * mf)).sqrt()).collect();
        Ok(SequenceSampler::Circulant {
            factor0: (lam(0) / mf).sqrt(),
            factor_half: (lam(half) / mf).sqrt(),
            factors,
            m,
            n,
            fft,
            padded,
        })
    }

    fn dense<C: Fn(usize) -> Result<f64>>(cov: &C, n: usize) -> Result<SequenceSampler> {
        if n > MAX_DENSE_N {
            return Err(Error::EmbeddingFailure(format!(
                "embedding not nonnegative definite and n = {n} exceeds the \
                 dense fallback limit {MAX_DENSE_N}"
            )));
        }
        let mut c = vec![0.0; n];
        for (k, v) in c.iter_mut().enumerate() {
            *v = cov(k)?;
        }
        let mut mat = nalgebra::DMatrix::from_fn(n, n, |i, j| c[i.abs_diff(j)]);
        for i in 0..n {
            mat[(i, i)] += CHOLESKY_JITTER;
        }
        let chol = mat.cholesky().ok_or_else(|| {
            Error::EmbeddingFailure(format!(
                "dense fallback: covariance not positive definite even with \
                 jitter {CHOLESKY_JITTER:e}"
            ))
        })?;
        Ok(SequenceSampler::Dense {
            chol: chol.unpack(),
            n,
        })
    }

    fn method(&self) -> PathMethod {
        match self {
            SequenceSampler::Circulant { padded, .. } => {
                PathMethod::CirculantEmbedding { padded: *padded }
            }
            SequenceSampler::Dense { .. } => PathMethod::DenseCholesky,
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        match self {
            SequenceSampler::Circulant {
                factor0,
                factor_half,
                factors,
                m,
                n,
                fft,
                ..
            } => {
                let half = m / 2;
                let mut buf = vec![Complex::new(0.0, 0.0); *m];
                let g0: f64 = StandardNormal.sample(rng);
                let g1: f64 = StandardNormal.sample(rng);
                buf[0] = Complex::new(factor0 * g0, 0.0);
                buf[half] = Complex::new(factor_half * g1, 0.0);
                for k in 1..half {
                    let a: f64 = StandardNormal.sample(rng);
                    let b: f64 = StandardNormal.sample(rng);
                    let f = factors[k];
                    buf[k] = Complex::new(f * a, f * b);
                    buf[*m - k] = Complex::new(f * a, -f * b);
                }
                let mut scratch = vec![Complex::new(0.0, 0.0); fft.get_inplace_scratch_len()];
                fft.process_with_scratch(&mut buf, &mut scratch);
                buf[..*n].iter().map(|c| c.re).collect()
            }
            SequenceSampler::Dense { chol, n } => {
                let g: Vec<f64> = (0..*n).map(|_| StandardNormal.sample(rng)).collect();
                let mut out = vec![0.0; *n];
                for i in 0..*n {
                    let mut acc = 0.0;
                    for j in 0..=i {
                        acc += chol[(i, j)] * g[j];
                    }
                    out[i] = acc;
                }
                out
            }
        }
    }
}

/// Sampler for a unit-variance stationary process at spacing `dt`.
pub struct StationarySampler {
    inner: SequenceSampler,
    dt: f64,
}

impl StationarySampler {
    pub fn new(model: &StationaryCovariance, n: usize, dt: f64) -> Result<Self> {
        if !(dt > 0.0) {
            return Err(Error::validation("dt must be positive"));
        }
        model.validate()?;
        let m = model.clone();
        let inner = SequenceSampler::new(|k| m.correlation(k as f64 * dt), n)?;
        Ok(StationarySampler { inner, dt })
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> SimulatedPath {
        SimulatedPath {
            dt: self.dt,
            values: self.inner.sample(rng),
            method: self.inner.method(),
        }
    }
}

/// Sampler for fBm at spacing `dt`, pinned at `B(0) = 0`.
///
/// Accepts `H ∈ (0, 1]`: `H = 1/2` short-circuits to independent increments
/// and `H = 1` to the exact degenerate line `tZ` (needed by the Pickands
/// estimator at α = 2); other `H` use the increment-sequence embedding, which
/// is provably nonnegative definite.
pub struct FbmSampler {
    kind: FbmKind,
    dt: f64,
    n: usize,
}

enum FbmKind {
    WhiteNoise { step_sd: f64 },
    Line,
    Embedded { inner: SequenceSampler },
}

impl FbmSampler {
    pub fn new(hurst: f64, n: usize, dt: f64) -> Result<Self> {
        if !(hurst.is_finite() && hurst > 0.0 && hurst <= 1.0) {
            return Err(Error::validation(format!(
                "Hurst index {hurst} must lie in (0, 1]"
            )));
        }
        if !(dt > 0.0) {
            return Err(Error::validation("dt must be positive"));
        }
        if n < 2 {
            return Err(Error::validation("need at least 2 path points"));
        }
        let kind = if hurst == 0.5 {
            FbmKind::WhiteNoise { step_sd: dt.sqrt() }
        } else if hurst == 1.0 {
            FbmKind::Line
        } else {
            let scale = dt.powf(2.0 * hurst);
            let cov = move |k: usize| -> Result<f64> {
                let k = k as f64;
                Ok(scale
                    * 0.5
                    * ((k + 1.0).powf(2.0 * hurst) - 2.0 * k.powf(2.0 * hurst)
                        + (k - 1.0).abs().powf(2.0 * hurst)))
            };
            let inner = SequenceSampler::new(cov, n - 1)?;
            if matches!(inner, SequenceSampler::Dense { .. }) {
                // the fGn embedding is nonnegative definite for every H
                return Err(Error::EmbeddingFailure(format!(
                    "fGn embedding unexpectedly failed for H = {hurst}"
                )));
            }
            FbmKind::Embedded { inner }
        };
        Ok(FbmSampler { kind, dt, n })
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> SimulatedPath {
        let (values, method) = match &self.kind {
            FbmKind::WhiteNoise { step_sd } => {
                let mut values = Vec::with_capacity(self.n);
                values.push(0.0);
                let mut acc = 0.0;
                for _ in 1..self.n {
                    let g: f64 = StandardNormal.sample(rng);
                    acc += step_sd * g;
                    values.push(acc);
                }
                (values, PathMethod::WhiteNoise)
            }
            FbmKind::Line => {
                let z: f64 = StandardNormal.sample(rng);
                let values = (0..self.n).map(|k| k as f64 * self.dt * z).collect();
                (values, PathMethod::DegenerateLine)
            }
            FbmKind::Embedded { inner } => {
                let inc = inner.sample(rng);
                let mut values = Vec::with_capacity(self.n);
                values.push(0.0);
                let mut acc = 0.0;
                for v in inc {
                    acc += v;
                    values.push(acc);
                }
                (values, inner.method())
            }
        };
        SimulatedPath {
            dt: self.dt,
            values,
            method,
        }
    }
}

/// Sampler for `Σ λ_i B_{H_i}` with independent components.
///
/// Components are drawn in order from the one seeded stream, so a
/// single-component mixture reproduces the plain fBm sampler bit for bit.
pub struct MixedFbmSampler {
    components: Vec<(f64, FbmSampler)>,
    dt: f64,
    n: usize,
}

impl MixedFbmSampler {
    pub fn new(weights: &[f64], hursts: &[f64], n: usize, dt: f64) -> Result<Self> {
        IncrementVariance::mixed_fbm(weights.to_vec(), hursts.to_vec())?;
        let components = weights
            .iter()
            .zip(hursts)
            .map(|(&l, &h)| Ok((l, FbmSampler::new(h, n, dt)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(MixedFbmSampler { components, dt, n })
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> SimulatedPath {
        let mut values = vec![0.0; self.n];
        let mut method = PathMethod::WhiteNoise;
        for (i, (l, sampler)) in self.components.iter().enumerate() {
            let p = sampler.sample(rng);
            if i == 0 {
                method = p.method;
            }
            if *l == 1.0 {
                values = p.values;
            } else {
                for (v, x) in values.iter_mut().zip(&p.values) {
                    *v += l * x;
                }
            }
        }
        SimulatedPath {
            dt: self.dt,
            values,
            method,
        }
    }
}

/// Sampler for the integrated process `X(t) = ∫_0^t ζ(s) ds`, approximated by
/// the trapezoid rule on a sub-grid `sub` times finer than the output grid;
/// the discretization bias is O((dt/sub)²).
pub struct IntegratedSampler {
    inner: StationarySampler,
    sub: usize,
    n: usize,
    dt: f64,
}

impl IntegratedSampler {
    pub fn new(zeta: &StationaryCovariance, sub: u32, n: usize, dt: f64) -> Result<Self> {
        if sub < 4 {
            return Err(Error::validation("integrated sub-grid factor must be >= 4"));
        }
        let sub = sub as usize;
        let fine_n = (n - 1) * sub + 1;
        let inner = StationarySampler::new(zeta, fine_n, dt / sub as f64)?;
        Ok(IntegratedSampler { inner, sub, n, dt })
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> SimulatedPath {
        let fine = self.inner.sample(rng);
        let h = fine.dt;
        let mut values = Vec::with_capacity(self.n);
        values.push(0.0);
        let mut acc = 0.0;
        for (k, w) in fine.values.windows(2).enumerate() {
            acc += 0.5 * h * (w[0] + w[1]);
            if (k + 1) % self.sub == 0 {
                values.push(acc);
            }
        }
        debug_assert_eq!(values.len(), self.n);
        SimulatedPath {
            dt: self.dt,
            values,
            method: fine.method,
        }
    }
}

/// One stationary path of length `n` at spacing `dt` (unit variance,
/// zero mean), deterministic in `seed`.
pub fn simulate_stationary(
    model: &StationaryCovariance,
    n: usize,
    dt: f64,
    seed: u64,
) -> Result<SimulatedPath> {
    let sampler = StationarySampler::new(model, n, dt)?;
    Ok(sampler.sample(&mut crate::rng::single_rng(seed)))
}

/// One fBm path (`H ∈ (0, 1)`, `B(0) = 0`), deterministic in `seed`.
pub fn simulate_fbm(hurst: f64, n: usize, dt: f64, seed: u64) -> Result<SimulatedPath> {
    if !(hurst > 0.0 && hurst < 1.0) {
        return Err(Error::validation(format!(
            "Hurst index {hurst} must lie in (0, 1)"
        )));
    }
    let sampler = FbmSampler::new(hurst, n, dt)?;
    Ok(sampler.sample(&mut crate::rng::single_rng(seed)))
}

/// One mixed-fBm path, deterministic in `seed`.
pub fn simulate_mixed_fbm(
    weights: &[f64],
    hursts: &[f64],
    n: usize,
    dt: f64,
    seed: u64,
) -> Result<SimulatedPath> {
    let sampler = MixedFbmSampler::new(weights, hursts, n, dt)?;
    Ok(sampler.sample(&mut crate::rng::single_rng(seed)))
}

/// One integrated-process path, deterministic in `seed`.
pub fn simulate_integrated(
    zeta: &StationaryCovariance,
    sub: u32,
    n: usize,
    dt: f64,
    seed: u64,
) -> Result<SimulatedPath> {
    let sampler = IntegratedSampler::new(zeta, sub, n, dt)?;
    Ok(sampler.sample(&mut crate::rng::single_rng(seed)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::replication_rng;

    fn mean_and_se(xs: &[f64]) -> (f64, f64) {
        let n = xs.len() as f64;
        let m = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0);
        (m, (var / n).sqrt())
    }

    #[test]
    fn stationary_same_seed_same_path() {
        let m = StationaryCovariance::fractional_ou(1.0).unwrap();
        let p1 = simulate_stationary(&m, 64, 0.25, 9).unwrap();
        let p2 = simulate_stationary(&m, 64, 0.25, 9).unwrap();
        assert_eq!(p1.values, p2.values);
        assert!(matches!(p1.method, PathMethod::CirculantEmbedding { .. }));
    }

    #[test]
    fn stationary_unit_variance_and_lag_one_autocov() {
        let m = StationaryCovariance::fractional_ou(1.0).unwrap();
        let sampler = StationarySampler::new(&m, 32, 1.0).unwrap();
        let reps = 10_000;
        let mut v0 = Vec::with_capacity(reps);
        let mut v1 = Vec::with_capacity(reps);
        for k in 0..reps {
            let mut rng = replication_rng(4242, k as u64);
            let p = sampler.sample(&mut rng);
            v0.push(p.values[3] * p.values[3]);
            v1.push(p.values[3] * p.values[4]);
        }
        let (m0, s0) = mean_and_se(&v0);
        assert!((m0 - 1.0).abs() < 3.0 * s0, "variance {m0} ± {s0}");
        let (m1, s1) = mean_and_se(&v1);
        let want = (-1.0f64).exp();
        assert!((m1 - want).abs() < 3.0 * s1, "lag-1 {m1} ± {s1} vs {want}");
    }

    #[test]
    fn fbm_pinned_origin_and_variance_scaling() {
        let sampler = FbmSampler::new(0.7, 65, 0.125).unwrap();
        let reps = 8000;
        let mut at = vec![Vec::with_capacity(reps); 3];
        let idx = [4usize, 8, 16]; // t = 0.5, 1, 2
        for k in 0..reps {
            let mut rng = replication_rng(5, k as u64);
            let p = sampler.sample(&mut rng);
            assert_eq!(p.values[0], 0.0);
            for (slot, &i) in idx.iter().enumerate() {
                at[slot].push(p.values[i] * p.values[i]);
            }
        }
        for (slot, &i) in idx.iter().enumerate() {
            let t = i as f64 * 0.125;
            let want = t.powf(1.4);
            let (m, s) = mean_and_se(&at[slot]);
            assert!((m - want).abs() < 3.0 * s, "t={t}: {m} ± {s} vs {want}");
        }
    }

    #[test]
    fn brownian_disjoint_increments_uncorrelated() {
        let sampler = FbmSampler::new(0.5, 33, 0.25).unwrap();
        let reps = 8000;
        let mut prod = Vec::with_capacity(reps);
        for k in 0..reps {
            let mut rng = replication_rng(6, k as u64);
            let p = sampler.sample(&mut rng);
            let a = p.values[8] - p.values[0];
            let b = p.values[24] - p.values[16];
            prod.push(a * b);
        }
        let (m, s) = mean_and_se(&prod);
        assert!(m.abs() < 3.0 * s, "{m} ± {s}");
    }

    #[test]
    fn mixed_single_component_equals_plain_fbm() {
        let p1 = simulate_mixed_fbm(&[1.0], &[0.7], 33, 0.5, 77).unwrap();
        let p2 = {
            let sampler = FbmSampler::new(0.7, 33, 0.5).unwrap();
            sampler.sample(&mut crate::rng::single_rng(77))
        };
        assert_eq!(p1.values, p2.values);
    }

    #[test]
    fn mixed_variance_at_unit_time() {
        let sampler = MixedFbmSampler::new(&[0.6, 0.8], &[0.3, 0.7], 17, 0.125).unwrap();
        let reps = 8000;
        let mut v = Vec::with_capacity(reps);
        let mut v_half = Vec::with_capacity(reps);
        for k in 0..reps {
            let mut rng = replication_rng(8, k as u64);
            let p = sampler.sample(&mut rng);
            v.push(p.values[8] * p.values[8]);
            v_half.push(p.values[4] * p.values[4]);
        }
        let (m, s) = mean_and_se(&v);
        assert!((m - 1.0).abs() < 3.0 * s, "{m} ± {s}");
        let want = 0.36 * 0.5f64.powf(0.6) + 0.64 * 0.5f64.powf(1.4);
        let (mh, sh) = mean_and_se(&v_half);
        assert!((mh - want).abs() < 3.0 * sh, "{mh} ± {sh} vs {want}");
    }

    #[test]
    fn integrated_variance_matches_quadrature() {
        let zeta = StationaryCovariance::fractional_ou(1.0).unwrap();
        let var = IncrementVariance::integrated(zeta.clone()).unwrap();
        let want = var.variance(1.0).unwrap();
        let sampler = IntegratedSampler::new(&zeta, 8, 9, 0.125).unwrap();
        let reps = 8000;
        let mut v = Vec::with_capacity(reps);
        for k in 0..reps {
            let mut rng = replication_rng(9, k as u64);
            let p = sampler.sample(&mut rng);
            v.push(p.values[8] * p.values[8]);
        }
        let (m, s) = mean_and_se(&v);
        // 3·stderr plus the O((dt/sub)²) trapezoid bias allowance
        let bias = (0.125f64 / 8.0).powi(2);
        assert!((m - want).abs() < 3.0 * s + bias, "{m} ± {s} vs {want}");
    }

    #[test]
    fn integrated_same_seed_same_path() {
        let zeta = StationaryCovariance::generalized_cauchy(1.0, 1.0).unwrap();
        let p1 = simulate_integrated(&zeta, 8, 17, 0.25, 3).unwrap();
        let p2 = simulate_integrated(&zeta, 8, 17, 0.25, 3).unwrap();
        assert_eq!(p1.values, p2.values);
    }

    #[test]
    fn fbm_rejects_boundary_hurst() {
        assert!(simulate_fbm(1.0, 16, 0.5, 0).is_err());
        assert!(simulate_fbm(0.0, 16, 0.5, 0).is_err());
        // the sampler itself accepts the degenerate boundary
        assert!(FbmSampler::new(1.0, 16, 0.5).is_ok());
    }

    #[test]
    fn degenerate_line_is_linear() {
        let sampler = FbmSampler::new(1.0, 9, 0.5).unwrap();
        let p = sampler.sample(&mut crate::rng::single_rng(1));
        let z = p.values[1] / 0.5;
        for (k, v) in p.values.iter().enumerate() {
            assert!((v - k as f64 * 0.5 * z).abs() < 1e-12);
        }
        assert_eq!(p.method, PathMethod::DegenerateLine);
    }
}
