//! Numerical integration: adaptive Gauss–Kronrod on finite intervals and
//! Gauss–Hermite rules for integrals against the normal weight.

use crate::error::{Error, Result};

// 15-point Kronrod abscissae (positive half), 7-point Gauss weights and
// 15-point Kronrod weights. Standard G7K15 constants.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// One G7K15 panel: returns (kronrod value, error estimate).
fn qk15<F: FnMut(f64) -> Result<f64>>(f: &mut F, a: f64, b: f64) -> Result<(f64, f64)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut res_g = fc * WG[3];
    let mut res_k = fc * WGK[7];
    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x)?;
        let f2 = f(center + x)?;
        let sum = f1 + f2;
        res_k += WGK[j] * sum;
        if j % 2 == 1 {
            // odd Kronrod indices are the embedded Gauss nodes
            res_g += WG[j / 2] * sum;
        }
    }
    Ok((res_k * half, ((res_k - res_g) * half).abs()))
}

const MAX_PANELS: usize = 4000;

/// Adaptive Gauss–Kronrod integration of `f` over `[a, b]` to relative
/// tolerance `rel_tol` (with a small absolute floor for integrals near zero).
///
/// Splits the worst panel until the summed error estimate meets tolerance.
/// The integrand may itself fail (e.g. a tabulated model out of range); the
/// first failure aborts the integration.
pub fn integrate<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::validation("integration bounds must be finite"));
    }
    if a == b {
        return Ok(0.0);
    }
    let (v, e) = qk15(&mut f, a, b)?;
    // (lo, hi, value, error) panels; split the max-error one each round
    let mut panels: Vec<(f64, f64, f64, f64)> = vec![(a, b, v, e)];
    let mut total_v = v;
    let mut total_e = e;
    loop {
        let tol = rel_tol * total_v.abs() + 1e-300;
        if total_e <= tol {
            return Ok(total_v);
        }
        if panels.len() >= MAX_PANELS {
            return Err(Error::QuadratureFailure(format!(
                "tolerance {rel_tol:.1e} unreached after {MAX_PANELS} panels \
                 (value {total_v:.6e}, error {total_e:.2e})"
            )));
        }
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("non-empty");
        let (lo, hi, v0, e0) = panels.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Err(Error::QuadratureFailure(format!(
                "interval [{lo}, {hi}] no longer splittable at error {e0:.2e}"
            )));
        }
        let (v1, e1) = qk15(&mut f, lo, mid)?;
        let (v2, e2) = qk15(&mut f, mid, hi)?;
        total_v += v1 + v2 - v0;
        total_e += e1 + e2 - e0;
        panels.push((lo, mid, v1, e1));
        panels.push((mid, hi, v2, e2));
    }
}

/// Gauss–Hermite rule of order `n` in the physicists' convention:
/// `∫ f(x) e^{−x²} dx ≈ Σ w_i f(x_i)`.
///
/// Nodes by Newton iteration on the orthonormal Hermite recurrence.
#[derive(Debug, Clone)]
pub struct GaussHermite {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussHermite {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 || n > 512 {
            return Err(Error::validation(format!(
                "Gauss-Hermite order {n} outside supported range 2..=512"
            )));
        }
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        let m = (n + 1) / 2;
        let mut z = 0.0_f64;
        for i in 0..m {
            // initial guesses for the i-th largest root
            z = match i {
                0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
                1 => z - 1.14 * nf.powf(0.426) / z,
                2 => 1.86 * z - 0.86 * nodes[0],
                3 => 1.91 * z - 0.91 * nodes[1],
                _ => 2.0 * z - nodes[i - 2],
            };
            let mut pp = 0.0;
            for _it in 0..100 {
                // orthonormal Hermite recurrence ~p_{j+1} = x√(2/(j+1)) ~p_j − √(j/(j+1)) ~p_{j-1}
                let mut p1 = std::f64::consts::PI.powf(-0.25);
                let mut p2 = 0.0;
                for j in 0..n {
                    let p3 = p2;
                    p2 = p1;
                    let jf = j as f64;
                    p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
                }
                pp = (2.0 * nf).sqrt() * p2;
                let dz = p1 / pp;
                z -= dz;
                if dz.abs() < 1e-15 {
                    break;
                }
            }
            nodes[i] = z;
            nodes[n - 1 - i] = -z;
            let w = 2.0 / (pp * pp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Ok(GaussHermite { nodes, weights })
    }

    /// `E[f(Z)]` for standard normal `Z`, via the change of variables `z = √2 x`.
    pub fn normal_expectation<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        let inv_sqrt_pi = 1.0 / std::f64::consts::PI.sqrt();
        let sqrt2 = std::f64::consts::SQRT_2;
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(sqrt2 * x);
        }
        acc * inv_sqrt_pi
    }
}
