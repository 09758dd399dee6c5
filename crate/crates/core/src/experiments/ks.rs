//! One-sample Kolmogorov–Smirnov distance against an analytic CDF.
//!
//! Distances only, no p-values: the studies report how far the empirical law
//! of the normalized maxima sits from the limit, not a hypothesis test.

/// Exact one-sample KS statistic `sup_x |F_n(x) − F(x)|` for a sample and a
/// CDF evaluator. Sorts a copy of the sample.
pub fn ks_distance<F: Fn(f64) -> f64>(sample: &[f64], cdf: F) -> f64 {
    let mut xs = sample.to_vec();
    xs.sort_by(f64::total_cmp);
    ks_distance_sorted(&xs, cdf)
}

/// [`ks_distance`] for an already-sorted sample.
pub fn ks_distance_sorted<F: Fn(f64) -> f64>(sorted: &[f64], cdf: F) -> f64 {
    let n = sorted.len() as f64;
    let mut d = 0.0_f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max((f - i as f64 / n).abs());
        d = d.max(((i + 1) as f64 / n - f).abs());
    }
    d
}
