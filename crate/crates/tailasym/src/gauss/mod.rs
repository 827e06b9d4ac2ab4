//! Exact simulation of stationary-increment Gaussian processes and of the
//! two limit objects they generate: suprema over random intervals and the
//! max-stable limit of triangular arrays.

pub mod brown_resnick;
pub mod fbm;
pub mod sup_interval;
pub mod triangular;

pub use brown_resnick::{BrownResnickDraw, BrownResnickSampler};
pub use fbm::{fbm_sample, FbmSampler};
pub use sup_interval::{sup_over_random_interval, SupDraw, SupIntervalSampler};
pub use triangular::TriangularMaxSampler;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Incremental-variance kernel `Gamma(t1, t2) = Var(Z(t1) - Z(t2))` of the
/// Gaussian fluctuations; a negative definite kernel.
#[derive(Clone)]
pub enum Variogram {
    /// `|t1 - t2|^{2H}`, the fractional Brownian kernel.
    FractionalBrownian { hurst: f64 },
    /// `coeff * |t1 - t2|^alpha` with `alpha` in (0, 2]; `coeff = 0` is the
    /// degenerate kernel (all fluctuations collapse).
    Power { coeff: f64, alpha: f64 },
    /// Arbitrary kernel; validity is only checked on the simulation grid.
    Custom(Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for Variogram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::FractionalBrownian { hurst } => {
                f.debug_struct("FractionalBrownian").field("hurst", hurst).finish()
            }
            Self::Power { coeff, alpha } => {
                f.debug_struct("Power").field("coeff", coeff).field("alpha", alpha).finish()
            }
            Self::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl Variogram {
    pub fn fractional_brownian(hurst: f64) -> Result<Self> {
        if !(hurst > 0.0 && hurst < 1.0) {
            return Err(Error::Domain(format!("Hurst index must lie in (0, 1), got {hurst}")));
        }
        Ok(Self::FractionalBrownian { hurst })
    }

    pub fn power(coeff: f64, alpha: f64) -> Result<Self> {
        if !(coeff >= 0.0 && coeff.is_finite()) {
            return Err(Error::Domain(format!("coefficient must be nonnegative, got {coeff}")));
        }
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(Error::Domain(format!("power must lie in (0, 2], got {alpha}")));
        }
        Ok(Self::Power { coeff, alpha })
    }

    pub fn eval(&self, t1: f64, t2: f64) -> f64 {
        match self {
            Self::FractionalBrownian { hurst } => (t1 - t2).abs().powf(2.0 * hurst),
            Self::Power { coeff, alpha } => coeff * (t1 - t2).abs().powf(*alpha),
            Self::Custom(f) => f(t1, t2),
        }
    }
}

/// Serialisable variogram description (the closed-form kinds only).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum VariogramSpec {
    Fbm { hurst: f64 },
    Power { coeff: f64, alpha: f64 },
}

impl TryFrom<&VariogramSpec> for Variogram {
    type Error = Error;

    fn try_from(spec: &VariogramSpec) -> Result<Self> {
        match *spec {
            VariogramSpec::Fbm { hurst } => Variogram::fractional_brownian(hurst),
            VariogramSpec::Power { coeff, alpha } => Variogram::power(coeff, alpha),
        }
    }
}

/// Variance function `sigma^2(t)` of a stationary-increment Gaussian
/// process, restricted to families that can be simulated exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VarianceFamily {
    /// `sigma^2(t) = t^{2H}`.
    Fbm { hurst: f64 },
    /// `sigma^2(t) = coeff^2 t^alpha` (a scaled fractional Brownian motion
    /// with `H = alpha/2`).
    PowerRv { alpha: f64, coeff: f64 },
}

/// `sigma^2(t)` together with the bound constant `K` of the hypothesis
/// `sigma^2(t) <= K t^alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarianceModel {
    pub family: VarianceFamily,
    pub bound_coeff: f64,
}

impl VarianceModel {
    pub fn fbm(hurst: f64) -> Result<Self> {
        if !(hurst > 0.0 && hurst < 1.0) {
            return Err(Error::Domain(format!("Hurst index must lie in (0, 1), got {hurst}")));
        }
        Ok(Self { family: VarianceFamily::Fbm { hurst }, bound_coeff: 1.0 })
    }

    pub fn power_rv(alpha: f64, coeff: f64, bound_coeff: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(Error::Domain(format!("alpha must lie in (0, 2], got {alpha}")));
        }
        if !(coeff > 0.0) || !(bound_coeff >= coeff * coeff) {
            return Err(Error::Domain(
                "need coeff > 0 and bound_coeff >= coeff^2 so the bound holds".into(),
            ));
        }
        Ok(Self { family: VarianceFamily::PowerRv { alpha, coeff }, bound_coeff })
    }

    pub fn variance(&self, t: f64) -> f64 {
        match self.family {
            VarianceFamily::Fbm { hurst } => t.abs().powf(2.0 * hurst),
            VarianceFamily::PowerRv { alpha, coeff } => coeff * coeff * t.abs().powf(alpha),
        }
    }

    pub fn sigma(&self, t: f64) -> f64 {
        self.variance(t).sqrt()
    }

    /// Regular-variation index of the variance.
    pub fn alpha(&self) -> f64 {
        match self.family {
            VarianceFamily::Fbm { hurst } => 2.0 * hurst,
            VarianceFamily::PowerRv { alpha, .. } => alpha,
        }
    }

    /// `C` in `sigma(t) ~ C t^{alpha/2}`.
    pub fn sigma_coeff(&self) -> f64 {
        match self.family {
            VarianceFamily::Fbm { .. } => 1.0,
            VarianceFamily::PowerRv { coeff, .. } => coeff,
        }
    }

    /// Numerical check of the supremum-reduction hypotheses on a grid over
    /// `(0, horizon]`: `sigma^2(0) = 0`, non-decreasing, convex (second
    /// differences >= -1e-9) with index in (1, 2], and `sigma^2 <= K t^alpha`.
    pub fn validate_sup_hypotheses(&self, horizon: f64) -> Result<()> {
        if !(self.alpha() > 1.0 && self.alpha() <= 2.0) {
            return Err(Error::Domain(format!(
                "variance index {} outside (1, 2]; the endpoint reduction does not apply",
                self.alpha()
            )));
        }
        if self.variance(0.0) != 0.0 {
            return Err(Error::Domain("sigma^2(0) must be 0".into()));
        }
        let n = 512;
        let step = horizon / n as f64;
        let mut prev = 0.0;
        let mut prev_diff = f64::NEG_INFINITY;
        for i in 1..=n {
            let t = step * i as f64;
            let v = self.variance(t);
            if v < prev {
                return Err(Error::Domain(format!("sigma^2 decreases near t = {t}")));
            }
            let diff = v - prev;
            if i > 1 && diff < prev_diff - 1e-9 {
                return Err(Error::Domain(format!("sigma^2 is not convex near t = {t}")));
            }
            if v > self.bound_coeff * t.powf(self.alpha()) * (1.0 + 1e-12) {
                return Err(Error::Domain(format!(
                    "sigma^2(t) exceeds K t^alpha at t = {t}"
                )));
            }
            prev = v;
            prev_diff = diff;
        }
        Ok(())
    }
}

/// Serialisable variance-model description.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum VarianceModelSpec {
    Fbm { hurst: f64 },
    PowerRv { alpha: f64, coeff: f64, bound_coeff: f64 },
}

impl TryFrom<&VarianceModelSpec> for VarianceModel {
    type Error = Error;

    fn try_from(spec: &VarianceModelSpec) -> Result<Self> {
        match *spec {
            VarianceModelSpec::Fbm { hurst } => VarianceModel::fbm(hurst),
            VarianceModelSpec::PowerRv { alpha, coeff, bound_coeff } => {
                VarianceModel::power_rv(alpha, coeff, bound_coeff)
            }
        }
    }
}

/// Cholesky factor of a positive semidefinite matrix, tolerating exact zero
/// pivots (anchored covariance rows). Returns `None` when a pivot is
/// negative beyond tolerance.
pub(crate) fn psd_cholesky(cov: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = cov.len();
    let max_diag = cov.iter().enumerate().map(|(i, r)| r[i].abs()).fold(0.0f64, f64::max);
    let tol = 1e-10 * max_diag.max(1.0);
    let mut l = vec![vec![0.0; n]; n];
    for j in 0..n {
        let mut d = cov[j][j];
        for k in 0..j {
            d -= l[j][k] * l[j][k];
        }
        if d < -tol {
            return None;
        }
        let dj = d.max(0.0).sqrt();
        l[j][j] = dj;
        for i in (j + 1)..n {
            if dj == 0.0 {
                l[i][j] = 0.0;
                continue;
            }
            let mut s = cov[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            l[i][j] = s / dj;
        }
    }
    Some(l)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variogram_invariants_on_grid() {
        let g = Variogram::fractional_brownian(0.7).unwrap();
        let grid = [0.0, 0.5, 1.0, 2.5];
        for &s in &grid {
            assert_eq!(g.eval(s, s), 0.0);
            for &t in &grid {
                assert_eq!(g.eval(s, t), g.eval(t, s));
                if s != t {
                    assert!(g.eval(s, t) > 0.0);
                }
            }
        }
    }

    #[test]
    fn psd_cholesky_reconstructs() {
        let cov = vec![
            vec![0.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.5],
            vec![0.0, 0.5, 2.0],
        ];
        let l = psd_cholesky(&cov).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut s = 0.0;
                for k in 0..3 {
                    s += l[i][k] * l[j][k];
                }
                assert!((s - cov[i][j]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn psd_cholesky_rejects_indefinite() {
        let bad = vec![vec![1.0, 2.0], vec![2.0, 1.0]];
        assert!(psd_cholesky(&bad).is_none());
    }

    #[test]
    fn variance_model_hypotheses() {
        assert!(VarianceModel::fbm(0.75).unwrap().validate_sup_hypotheses(10.0).is_ok());
        // Brownian motion has alpha = 1, outside (1, 2]
        assert!(VarianceModel::fbm(0.5).unwrap().validate_sup_hypotheses(10.0).is_err());
        // concave variance (H < 1/2) fails convexity before the index check
        assert!(VarianceModel::fbm(0.3).unwrap().validate_sup_hypotheses(10.0).is_err());
        let pr = VarianceModel::power_rv(1.5, 2.0, 4.0).unwrap();
        assert!(pr.validate_sup_hypotheses(5.0).is_ok());
        assert!((pr.variance(2.0) - 4.0 * 2.0f64.powf(1.5)).abs() < 1e-12);
    }

    #[test]
    fn specs_parse() {
        let v: VariogramSpec = serde_json::from_str(r#"{"kind":"power","coeff":2.0,"alpha":1.0}"#).unwrap();
        let g = Variogram::try_from(&v).unwrap();
        assert_eq!(g.eval(0.0, 1.0), 2.0);
        assert!(serde_json::from_str::<VariogramSpec>(r#"{"kind":"power","coeff":2.0}"#).is_err());
    }
}
