//! Least-squares recovery of the log-tail exponent coefficient.

use crate::error::{Error, Result};
use crate::numeric::solve3;

/// Result of fitting `log_tail ~ -B u^{p_star} + beta log u + gamma`.
#[derive(Debug, Clone, Copy)]
pub struct SlopeFit {
    /// Recovered exponent coefficient (`-` the fitted leading coefficient).
    pub b_hat: f64,
    /// Coefficient of the `log u` correction (absorbs the polynomial
    /// prefactor); zero when fitted without the log term.
    pub log_coeff: f64,
    /// Fitted intercept.
    pub intercept: f64,
    /// Residual sum of squares.
    pub rss: f64,
}

/// Fit `log_tail ~ -B u^{p_star} + beta log u + gamma` and return `B`.
pub fn slope_fit(points: &[(f64, f64)], p_star: f64) -> Result<f64> {
    Ok(slope_fit_detailed(points, p_star, true)?.b_hat)
}

/// Detailed fit; `with_log_term = false` drops the `log u` column, which is
/// useful for showing that the residual is dominated by the log correction.
pub fn slope_fit_detailed(points: &[(f64, f64)], p_star: f64, with_log_term: bool) -> Result<SlopeFit> {
    if points.len() < 3 {
        return Err(Error::Domain(format!(
            "slope fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    if !(p_star > 0.0 && p_star.is_finite()) {
        return Err(Error::Domain(format!("p_star must be positive, got {p_star}")));
    }
    let mut us: Vec<f64> = points.iter().map(|&(u, _)| u).collect();
    us.sort_by(f64::total_cmp);
    if us.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Domain("duplicate u values make the design singular".into()));
    }
    if points.iter().any(|&(u, v)| !(u > 0.0) || !v.is_finite()) {
        return Err(Error::Domain("points must have positive u and finite log-tail".into()));
    }

    // normal equations over columns [u^{p*}, log u, 1]
    let mut ata = [[0.0f64; 3]; 3];
    let mut atb = [0.0f64; 3];
    for &(u, y) in points {
        let row = [u.powf(p_star), if with_log_term { u.ln() } else { 0.0 }, 1.0];
        for i in 0..3 {
            for j in 0..3 {
                ata[i][j] += row[i] * row[j];
            }
            atb[i] += row[i] * y;
        }
    }
    if !with_log_term {
        // keep the system non-singular with the middle column dropped
        ata[1][1] = 1.0;
        atb[1] = 0.0;
    }
    let coef = solve3(ata, atb)?;
    let mut rss = 0.0;
    for &(u, y) in points {
        let fit = coef[0] * u.powf(p_star)
            + if with_log_term { coef[1] * u.ln() } else { 0.0 }
            + coef[2];
        rss += (y - fit) * (y - fit);
    }
    Ok(SlopeFit { b_hat: -coef[0], log_coeff: coef[1], intercept: coef[2], rss })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noiseless_exact_recovery() {
        let pts: Vec<(f64, f64)> = [1e2, 1e3, 1e4]
            .iter()
            .map(|&u: &f64| (u, -2.0 * u.sqrt()))
            .collect();
        let b = slope_fit(&pts, 0.5).unwrap();
        assert!((b - 2.0).abs() < 1e-8, "{b}");
    }

    #[test]
    fn recovers_with_log_correction() {
        // log_tail = -1.5 u^{0.5} + 0.25 ln u + 0.7
        let pts: Vec<(f64, f64)> = [10.0, 100.0, 1000.0, 10000.0]
            .iter()
            .map(|&u: &f64| (u, -1.5 * u.sqrt() + 0.25 * u.ln() + 0.7))
            .collect();
        let fit = slope_fit_detailed(&pts, 0.5, true).unwrap();
        assert!((fit.b_hat - 1.5).abs() < 1e-9);
        assert!((fit.log_coeff - 0.25).abs() < 1e-9);
        assert!((fit.intercept - 0.7).abs() < 1e-7);
        assert!(fit.rss < 1e-16);
    }

    #[test]
    fn duplicate_u_rejected() {
        let pts = vec![(10.0, -1.0), (10.0, -1.1), (20.0, -2.0)];
        assert!(slope_fit(&pts, 0.5).is_err());
    }

    #[test]
    fn too_few_points_rejected() {
        let pts = vec![(10.0, -1.0), (20.0, -2.0)];
        assert!(slope_fit(&pts, 0.5).is_err());
    }
}
