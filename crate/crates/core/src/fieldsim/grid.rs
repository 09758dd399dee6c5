//! Rectangular evaluation grids for the standardized field.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Hard cap on the underlying path grid size.
const MAX_PATH_POINTS: usize = 1 << 22;

/// Evaluation grid over `[a, b] × [0, horizon]`.
///
/// The τ-grid is anchored at `b` descending (`τ_j = b − j·dτ`, so row 0 is
/// the longest window) and the s-grid ascends from 0. Construction finds a
/// path spacing `h` that divides `ds`, `dτ` and `b`, so every field point
/// `s_l + τ_j` lands exactly on the simulated path grid; interpolation would
/// bias extremes downward untraceably, so incommensurate grids are rejected
/// instead.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SheppGrid {
    a: f64,
    b: f64,
    horizon: f64,
    n_tau: usize,
    n_s: usize,
    dtau: f64,
    ds: f64,
    path_dt: f64,
    s_stride: usize,
    tau_stride: usize,
    b_offset: usize,
}

fn divides(x: f64, h: f64) -> Option<usize> {
    let ratio = x / h;
    let k = ratio.round();
    if k >= 0.5 && (ratio - k).abs() <= 1e-9 * ratio.abs().max(1.0) {
        Some(k as usize)
    } else {
        None
    }
}

impl SheppGrid {
    pub fn new(a: f64, b: f64, horizon: f64, n_tau: usize, n_s: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && 0.0 < a && a < b) {
            return Err(Error::validation(format!(
                "window [{a}, {b}] must satisfy 0 < a < b"
            )));
        }
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(Error::validation(format!(
                "horizon {horizon} must be positive"
            )));
        }
        if n_tau < 2 || n_s < 2 {
            return Err(Error::validation("grid needs at least 2 points per axis"));
        }
        let dtau = (b - a) / (n_tau - 1) as f64;
        let ds = horizon / (n_s - 1) as f64;
        // largest h = dtau/j or ds/j dividing ds, dtau and b
        let mut found: Option<(f64, usize, usize, usize)> = None;
        'outer: for base in [dtau, ds] {
            for j in 1..=4096usize {
                let h = base / j as f64;
                if let (Some(ms), Some(mt), Some(mb)) =
                    (divides(ds, h), divides(dtau, h), divides(b, h))
                {
                    if found.map(|(fh, ..)| h > fh).unwrap_or(true) {
                        found = Some((h, ms, mt, mb));
                    }
                    continue 'outer;
                }
            }
        }
        let (path_dt, s_stride, tau_stride, b_offset) = found.ok_or_else(|| {
            Error::IncommensurateGrid(format!(
                "no common path spacing divides ds={ds}, dtau={dtau} and b={b} \
                 (denominators searched up to 4096)"
            ))
        })?;
        let grid = SheppGrid {
            a,
            b,
            horizon,
            n_tau,
            n_s,
            dtau,
            ds,
            path_dt,
            s_stride,
            tau_stride,
            b_offset,
        };
        if grid.path_len() > MAX_PATH_POINTS {
            return Err(Error::validation(format!(
                "grid requires {} path points (cap {MAX_PATH_POINTS})",
                grid.path_len()
            )));
        }
        Ok(grid)
    }

    /// Grid with spacing ≈ `q` on both axes (rounded up in point count so the
    /// realized spacings never exceed `q`).
    pub fn with_target_spacing(a: f64, b: f64, horizon: f64, q: f64) -> Result<Self> {
        if !(q > 0.0) {
            return Err(Error::validation("target spacing must be positive"));
        }
        let n_tau = ((b - a) / q).ceil() as usize + 1;
        let n_s = (horizon / q).ceil() as usize + 1;
        SheppGrid::new(a, b, horizon, n_tau.max(2), n_s.max(2))
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn horizon(&self) -> f64 {
        self.horizon
    }
    pub fn n_tau(&self) -> usize {
        self.n_tau
    }
    pub fn n_s(&self) -> usize {
        self.n_s
    }
    pub fn dtau(&self) -> f64 {
        self.dtau
    }
    pub fn ds(&self) -> f64 {
        self.ds
    }
    /// Spacing of the underlying simulation path grid.
    pub fn path_dt(&self) -> f64 {
        self.path_dt
    }
    pub fn points(&self) -> usize {
        self.n_tau * self.n_s
    }

    /// `τ_j = b − j·dτ` (descending; `τ_0 = b`, `τ_{n_tau−1} = a`).
    pub fn tau(&self, j: usize) -> f64 {
        debug_assert!(j < self.n_tau);
        self.b - j as f64 * self.dtau
    }

    /// `s_l = l·ds`.
    pub fn s(&self, l: usize) -> f64 {
        debug_assert!(l < self.n_s);
        l as f64 * self.ds
    }

    /// Number of path points needed to cover `[0, horizon + b]`.
    pub fn path_len(&self) -> usize {
        (self.n_s - 1) * self.s_stride + self.b_offset + 1
    }

    /// Path index of `s_l`.
    pub fn path_index_s(&self, l: usize) -> usize {
        l * self.s_stride
    }

    /// Path index of `s_l + τ_j`.
    pub fn path_index_shifted(&self, j: usize, l: usize) -> usize {
        l * self.s_stride + self.b_offset - j * self.tau_stride
    }
}
