//! Goodness-of-fit statistics used by the simulation verifications.

use crate::error::{Error, Result};

/// Standard Gumbel cdf `exp(-exp(-x))`.
pub fn gumbel_cdf(x: f64) -> f64 {
    (-(-x).exp()).exp()
}

/// One-sample Kolmogorov-Smirnov statistic against an analytic cdf.
pub fn ks_statistic<F: Fn(f64) -> f64>(sample: &[f64], cdf: F) -> Result<f64> {
    if sample.is_empty() {
        return Err(Error::Domain("KS statistic needs a nonempty sample".into()));
    }
    if sample.iter().any(|x| x.is_nan()) {
        return Err(Error::Domain("KS statistic: sample contains NaN".into()));
    }
    let mut xs = sample.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        d = d.max(((i + 1) as f64 / n - f).abs());
        d = d.max((i as f64 / n - f).abs());
    }
    Ok(d)
}

/// 95% critical value of the one-sample KS statistic, `1.36 / sqrt(n)`.
pub fn ks_critical_95(n: usize) -> f64 {
    1.36 / (n as f64).sqrt()
}

/// Energy distance between two bivariate samples:
/// `2 E|X - Y| - E|X - X'| - E|Y - Y'|` with Euclidean norms; nonnegative,
/// zero iff the distributions coincide.
pub fn energy_distance_2d(xs: &[[f64; 2]], ys: &[[f64; 2]]) -> Result<f64> {
    if xs.len() < 2 || ys.len() < 2 {
        return Err(Error::Domain("energy distance needs at least 2 points per sample".into()));
    }
    let dist = |a: &[f64; 2], b: &[f64; 2]| ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();
    let mut dxy = 0.0;
    for x in xs {
        for y in ys {
            dxy += dist(x, y);
        }
    }
    dxy /= (xs.len() * ys.len()) as f64;
    let mut dxx = 0.0;
    for (i, x) in xs.iter().enumerate() {
        for x2 in &xs[i + 1..] {
            dxx += dist(x, x2);
        }
    }
    dxx = 2.0 * dxx / ((xs.len() * xs.len()) as f64);
    let mut dyy = 0.0;
    for (i, y) in ys.iter().enumerate() {
        for y2 in &ys[i + 1..] {
            dyy += dist(y, y2);
        }
    }
    dyy = 2.0 * dyy / ((ys.len() * ys.len()) as f64);
    Ok(2.0 * dxy - dxx - dyy)
}
