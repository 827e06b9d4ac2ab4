//! Regularly varying functions `u -> c * u^rho * l(u)` with an explicit index
//! and a restricted family of slowly varying parts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slowly varying correction factor. Restricted to families whose regular
/// variation is testable; a fully general correction is not representable.
#[derive(Debug, Clone, PartialEq)]
pub enum SlowlyVarying {
    /// No correction.
    Const,
    /// `(ln u)^beta` for `u >= e`, clamped to 1 below so the value stays
    /// positive on all of `(0, inf)`.
    LogPow { beta: f64 },
    /// Log-log-linear interpolation through `(u, value)` knots; both endpoint
    /// values must equal 1 (flat extension outside the knot range), which
    /// keeps the correction slowly varying. Knots must be strictly increasing
    /// in `u` with positive values.
    Tabulated { knots: Vec<(f64, f64)> },
}

/// A regularly varying function with index `index`, scale `scale > 0` and a
/// slowly varying part: `eval(u) = scale * u^index * l(u)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegVarFn {
    index: f64,
    scale: f64,
    slowly: SlowlyVarying,
}

impl RegVarFn {
    pub fn new(scale: f64, index: f64, slowly: SlowlyVarying) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::Domain(format!("scale must be positive and finite, got {scale}")));
        }
        if !index.is_finite() {
            return Err(Error::Domain(format!("index must be finite, got {index}")));
        }
        if let SlowlyVarying::LogPow { beta } = slowly {
            if !beta.is_finite() {
                return Err(Error::Domain(format!("log-power exponent must be finite, got {beta}")));
            }
        }
        if let SlowlyVarying::Tabulated { knots } = &slowly {
            if knots.len() < 2 {
                return Err(Error::Domain("tabulated correction needs at least two knots".into()));
            }
            for w in knots.windows(2) {
                if !(w[0].0 < w[1].0) {
                    return Err(Error::Domain("tabulated knots must be strictly increasing".into()));
                }
            }
            if knots.iter().any(|&(u, v)| !(u > 0.0 && v > 0.0)) {
                return Err(Error::Domain("tabulated knots must have positive u and value".into()));
            }
            let first = knots.first().unwrap().1;
            let last = knots.last().unwrap().1;
            if (first - 1.0).abs() > 1e-12 || (last - 1.0).abs() > 1e-12 {
                return Err(Error::Domain("tabulated endpoint values must be pinned to 1".into()));
            }
        }
        Ok(Self { index, scale, slowly })
    }

    /// The constant function `u -> c`.
    pub fn constant(c: f64) -> Result<Self> {
        Self::new(c, 0.0, SlowlyVarying::Const)
    }

    /// A pure power `u -> scale * u^index`.
    pub fn power(scale: f64, index: f64) -> Result<Self> {
        Self::new(scale, index, SlowlyVarying::Const)
    }

    pub fn index(&self) -> f64 {
        self.index
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn slowly_varying(&self) -> &SlowlyVarying {
        &self.slowly
    }

    fn log_slowly(&self, u: f64) -> f64 {
        match &self.slowly {
            SlowlyVarying::Const => 0.0,
            SlowlyVarying::LogPow { beta } => beta * u.ln().max(1.0).ln(),
            SlowlyVarying::Tabulated { knots } => {
                let lu = u.ln();
                let first = knots.first().unwrap();
                let last = knots.last().unwrap();
                if u <= first.0 || u >= last.0 {
                    return 0.0; // endpoints pinned to 1
                }
                let pos = knots.partition_point(|&(k, _)| k < u);
                let (u0, v0) = knots[pos - 1];
                let (u1, v1) = knots[pos];
                let t = (lu - u0.ln()) / (u1.ln() - u0.ln());
                (1.0 - t) * v0.ln() + t * v1.ln()
            }
        }
    }

    /// `d/du log l(u)` of the slowly varying part.
    fn slowly_log_derivative(&self, u: f64) -> f64 {
        match &self.slowly {
            SlowlyVarying::Const => 0.0,
            SlowlyVarying::LogPow { beta } => {
                let l = u.ln();
                if l > 1.0 {
                    beta / (u * l)
                } else {
                    0.0
                }
            }
            SlowlyVarying::Tabulated { .. } => {
                // centred difference of the interpolant (smooth enough here)
                let h = 1e-5 * u;
                (self.log_slowly(u + h) - self.log_slowly(u - h)) / (2.0 * h)
            }
        }
    }

    /// `log eval(u)`; requires `u > 0`.
    pub fn log_eval(&self, u: f64) -> f64 {
        debug_assert!(u > 0.0, "RegVarFn evaluated at u = {u}");
        self.scale.ln() + self.index * u.ln() + self.log_slowly(u)
    }

    /// `eval(u) = scale * u^index * l(u) > 0`.
    pub fn eval(&self, u: f64) -> f64 {
        self.log_eval(u).exp()
    }

    /// `d/du log eval(u)`.
    pub fn log_derivative(&self, u: f64) -> f64 {
        self.index / u + self.slowly_log_derivative(u)
    }
}

/// Serialisable description of a slowly varying part. Only the closed-form
/// kinds are exposed through JSON; tabulated corrections are programmatic.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SlowlyVaryingSpec {
    Const,
    LogPow { beta: f64 },
}

/// Serialisable description of a [`RegVarFn`]; field names are part of the
/// on-disk schema and parsing is strict.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RegVarFnSpec {
    pub index: f64,
    pub scale: f64,
    pub slowly_varying: SlowlyVaryingSpec,
}

impl TryFrom<&RegVarFnSpec> for RegVarFn {
    type Error = Error;

    fn try_from(spec: &RegVarFnSpec) -> Result<Self> {
        let slowly = match spec.slowly_varying {
            SlowlyVaryingSpec::Const => SlowlyVarying::Const,
            SlowlyVaryingSpec::LogPow { beta } => SlowlyVarying::LogPow { beta },
        };
        RegVarFn::new(spec.scale, spec.index, slowly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn builtins() -> Vec<RegVarFn> {
        vec![
            RegVarFn::constant(1.0).unwrap(),
            RegVarFn::power(0.4, -1.0).unwrap(),
            RegVarFn::power(2.5, 1.7).unwrap(),
            RegVarFn::new(1.0, -0.5, SlowlyVarying::LogPow { beta: 2.0 }).unwrap(),
            RegVarFn::new(3.0, 0.3, SlowlyVarying::LogPow { beta: -1.5 }).unwrap(),
        ]
    }

    #[test]
    fn positive_everywhere() {
        for f in builtins() {
            for &u in &[1e-8, 1e-2, 1.0, 10.0, 1e6] {
                assert!(f.eval(u) > 0.0, "{f:?} at {u}");
            }
        }
    }

    #[test]
    fn regular_variation_limit() {
        // eval(u x)/eval(u) -> x^rho at u in {1e3, 1e6, 1e9}: within 1% for
        // constant corrections (where the ratio is exact); log-power
        // corrections converge at the 1/log u rate, so they are checked
        // against that rate and for monotone improvement instead.
        for f in builtins() {
            for &x in &[0.5, 2.0, 7.0] {
                let mut prev_gap = f64::INFINITY;
                for &u in &[1e3, 1e6, 1e9] {
                    let ratio = (f.log_eval(u * x) - f.log_eval(u)).exp();
                    let target = x.powf(f.index());
                    let gap = (ratio / target - 1.0).abs();
                    match f.slowly_varying() {
                        SlowlyVarying::Const => {
                            assert!(gap < 0.01, "{f:?}: u={u} x={x} gap {gap}")
                        }
                        SlowlyVarying::LogPow { beta } => {
                            let rate = 2.0 * beta.abs() * x.ln().abs() / u.ln();
                            assert!(gap <= rate, "{f:?}: u={u} x={x} gap {gap} rate {rate}");
                            assert!(gap < prev_gap, "{f:?}: gap not improving at u={u}");
                        }
                        SlowlyVarying::Tabulated { .. } => {}
                    }
                    prev_gap = gap;
                }
            }
        }
    }

    #[test]
    fn tabulated_interpolates_and_pins_endpoints() {
        let f = RegVarFn::new(
            2.0,
            -1.0,
            SlowlyVarying::Tabulated { knots: vec![(1.0, 1.0), (10.0, 1.4), (100.0, 1.0)] },
        )
        .unwrap();
        assert!((f.eval(0.5) - 2.0 / 0.5).abs() < 1e-12);
        assert!((f.eval(1000.0) - 2.0 / 1000.0).abs() < 1e-12);
        assert!((f.eval(10.0) - 2.0 / 10.0 * 1.4).abs() < 1e-12);
        // interpolation is monotone between knots
        assert!(f.eval(3.0) * 3.0 / 2.0 > 1.0);
        assert!(f.eval(3.0) * 3.0 / 2.0 < 1.4);
    }

    #[test]
    fn rejects_bad_constructions() {
        assert!(RegVarFn::power(-1.0, 0.0).is_err());
        assert!(RegVarFn::new(
            1.0,
            0.0,
            SlowlyVarying::Tabulated { knots: vec![(1.0, 1.0), (10.0, 2.0)] }
        )
        .is_err());
        assert!(RegVarFn::new(
            1.0,
            0.0,
            SlowlyVarying::Tabulated { knots: vec![(10.0, 1.0), (1.0, 1.0)] }
        )
        .is_err());
    }

    #[test]
    fn spec_roundtrip_is_strict() {
        let json = r#"{"index": -1.0, "scale": 0.5, "slowly_varying": {"kind": "const"}}"#;
        let spec: RegVarFnSpec = serde_json::from_str(json).unwrap();
        let f = RegVarFn::try_from(&spec).unwrap();
        assert!((f.eval(2.0) - 0.25).abs() < 1e-15);
        let bad = r#"{"index": -1.0, "scale": 0.5, "slowly_varying": {"kind": "const"}, "extra": 1}"#;
        assert!(serde_json::from_str::<RegVarFnSpec>(bad).is_err());
    }

    #[test]
    fn log_derivative_matches_finite_difference() {
        for f in builtins() {
            for &u in &[0.7, 5.0, 400.0] {
                let h = 1e-6 * u;
                let fd = (f.log_eval(u + h) - f.log_eval(u - h)) / (2.0 * h);
                assert!(
                    (f.log_derivative(u) - fd).abs() < 1e-6 * (1.0 + fd.abs()),
                    "{f:?} at {u}"
                );
            }
        }
    }
}
