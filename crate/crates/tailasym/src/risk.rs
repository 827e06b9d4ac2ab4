//! One-dimensional risks represented by their upper tails in log-space.
//!
//! All tail arithmetic is carried in natural-log space: the deep-tail
//! evaluation points the asymptotics demand produce probabilities far below
//! `exp(-700)`, where raw probability space underflows.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::generalized_inverse;
use crate::regvar::{RegVarFn, RegVarFnSpec, SlowlyVarying};

/// Grid used to validate that a completed tail is non-increasing.
const MONOTONE_GRID: usize = 600;

/// A risk with tail `P(Y > u) = g(u) exp(-rate * u^power)`, completed below
/// its body cutoff so that it is a full distribution.
///
/// The completion takes `P(Y > u) = min(1, sup_{v >= u} g(v) exp(-rate v^power))`
/// and clamps at the cutoff `u0` where that envelope first drops below 1.
/// Any completion is tail-equivalent, and the asymptotics depend only on the
/// tail, so the choice is free; this one keeps the tail formula exact on
/// `(u0, inf)`. Prefactors with `g(0+) < 1` leave an atom at the origin.
#[derive(Debug, Clone)]
pub struct Weibullian {
    prefactor: RegVarFn,
    rate: f64,
    power: f64,
    /// Smallest u at which the completed tail drops strictly below 1 (or
    /// below the origin-atom plateau); the tail formula is exact above it.
    body_cutoff: f64,
    /// `log` of the completed tail on the plateau `(0, body_cutoff]`.
    plateau_log: f64,
}

impl Weibullian {
    /// Build and validate a Weibullian risk. Construction fails if the
    /// completed tail is not non-increasing (the raw prefactor may rise
    /// above the decay inside the body region).
    pub fn new(prefactor: RegVarFn, rate: f64, power: f64) -> Result<Self> {
        if !(rate > 0.0 && rate.is_finite()) {
            return Err(Error::Domain(format!("rate must be positive and finite, got {rate}")));
        }
        if !(power > 0.0 && power.is_finite()) {
            return Err(Error::Domain(format!("power must be positive and finite, got {power}")));
        }
        let raw = |u: f64| prefactor.log_eval(u) - rate * u.powf(power);

        // Locate where the raw log-tail crosses 0, by cases on the behaviour
        // of log g near the origin: rho < 0 diverges up, rho = 0 tends to
        // log(scale), rho > 0 dives to -inf (handled via the envelope peak).
        let rho = prefactor.index();
        let (body_cutoff, plateau_log) = if rho > 0.0 {
            // envelope peak of the raw tail
            let neg = |lu: f64| -raw(lu.exp());
            let (lpeak, _) = crate::numeric::golden_section_min(neg, -60.0, 60.0, 1e-12, 300);
            let peak = lpeak.exp();
            if raw(peak) > 0.0 {
                (cross_below_zero(&raw, peak)?, 0.0)
            } else {
                (peak, raw(peak).min(0.0))
            }
        } else if rho < 0.0 || prefactor.scale() > 1.0 {
            (cross_below_zero(&raw, 1e-12)?, 0.0)
        } else {
            // rho = 0, scale <= 1: the tail starts at scale and decreases
            (0.0, prefactor.scale().ln().min(0.0))
        };

        let model = Self { prefactor, rate, power, body_cutoff, plateau_log };
        model.validate_monotone()?;
        Ok(model)
    }

    fn validate_monotone(&self) -> Result<()> {
        let lo = (self.body_cutoff * 1.000_001).max(1e-9);
        let hi = (self.body_cutoff.max(1.0) * 1e6).max(1e3);
        let mut prev = f64::INFINITY;
        for i in 0..MONOTONE_GRID {
            let t = i as f64 / (MONOTONE_GRID - 1) as f64;
            let u = lo * (hi / lo).powf(t);
            let v = self.log_tail_inner(u);
            if v > prev + 1e-9 * (1.0 + prev.abs()) {
                return Err(Error::Domain(format!(
                    "completed tail is not non-increasing near u = {u}; \
                     the prefactor outgrows the exponential decay inside the body"
                )));
            }
            prev = v;
        }
        Ok(())
    }

    pub fn prefactor(&self) -> &RegVarFn {
        &self.prefactor
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn power(&self) -> f64 {
        self.power
    }

    /// Smallest u at which the tail formula `g(u) exp(-rate u^power)` is the
    /// completed tail; asymptotic operations refuse arguments whose internal
    /// evaluation points fall below this.
    pub fn body_cutoff(&self) -> f64 {
        self.body_cutoff
    }

    /// Mass of the origin atom left by prefactors with `g(0+) < 1`
    /// (zero for every bundled example family).
    pub fn origin_atom(&self) -> f64 {
        1.0 - self.plateau_log.exp()
    }

    fn log_tail_inner(&self, u: f64) -> f64 {
        if u <= self.body_cutoff {
            self.plateau_log
        } else {
            (self.prefactor.log_eval(u) - self.rate * u.powf(self.power)).min(self.plateau_log)
        }
    }

    /// `d/du (-log tail)` on the strict-decay region; zero below the cutoff.
    fn hazard(&self, u: f64) -> f64 {
        if u <= self.body_cutoff {
            0.0
        } else {
            self.rate * self.power * u.powf(self.power - 1.0) - self.prefactor.log_derivative(u)
        }
    }

    /// Reciprocal-hazard auxiliary scaling function
    /// `a(u) = u^{1-power} / (rate * power)`, the form for which the
    /// exponential limit `P(Y > u + a(u) t) / P(Y > u) -> exp(-t)` holds
    /// exactly; regularly varying with index `1 - power`, i.e. tau = power - 1.
    pub fn auxiliary_function(&self) -> GumbelAux {
        let f = RegVarFn::power(1.0 / (self.rate * self.power), 1.0 - self.power)
            .expect("positive scale");
        GumbelAux::new(f).expect("index 1 - power <= 1")
    }

    /// Alternative normalisation `a(u) = u^{1-power} / rate`, without the
    /// `1/power` hazard factor, as it appears in some published displays.
    /// Kept for cross-checking constants; only [`Self::auxiliary_function`]
    /// satisfies the exponential limit with unit rate.
    pub fn auxiliary_function_unnormalized(&self) -> GumbelAux {
        let f = RegVarFn::power(1.0 / self.rate, 1.0 - self.power).expect("positive scale");
        GumbelAux::new(f).expect("index 1 - power <= 1")
    }

    /// Closed-form quantile of the completed tail at level `log_v = log P`,
    /// available when the prefactor is a pure constant.
    fn quantile_from_log_tail_const(&self, log_v: f64) -> Option<f64> {
        if !matches!(self.prefactor.slowly_varying(), SlowlyVarying::Const)
            || self.prefactor.index() != 0.0
        {
            return None;
        }
        let log_c = self.prefactor.scale().ln();
        if log_v >= self.plateau_log {
            return Some(self.body_cutoff);
        }
        Some(((log_c - log_v) / self.rate).powf(1.0 / self.power))
    }
}

fn cross_below_zero<F: Fn(f64) -> f64>(raw: &F, start: f64) -> Result<f64> {
    let mut hi = start.max(1e-12);
    let mut guard = 0;
    while raw(hi) > 0.0 {
        hi *= 2.0;
        guard += 1;
        if guard > 2100 {
            return Err(Error::Domain("tail never drops below 1".into()));
        }
    }
    let mut lo = (hi / 2.0).min(start);
    if raw(lo) <= 0.0 {
        // already below 1 at the starting point
        return Ok(lo.min(start));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if raw(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-14 * (1.0 + mid.abs()) {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// A risk constrained only on the log-scale of its tail:
/// `log P(Y > u) / u^power -> -rate`. Carries the exact log-tail as a
/// function object, so any distribution in the class can be represented; an
/// exact log-density can be attached where one is known, which lets the
/// quadrature oracle use the fast density path.
#[derive(Clone)]
pub struct LogWeibullian {
    rate: f64,
    power: f64,
    log_tail: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    log_density: Option<Arc<dyn Fn(f64) -> f64 + Send + Sync>>,
}

impl fmt::Debug for LogWeibullian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LogWeibullian")
            .field("rate", &self.rate)
            .field("power", &self.power)
            .finish_non_exhaustive()
    }
}

impl LogWeibullian {
    pub fn new(
        rate: f64,
        power: f64,
        log_tail: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    ) -> Result<Self> {
        if !(rate > 0.0 && rate.is_finite()) || !(power > 0.0 && power.is_finite()) {
            return Err(Error::Domain(format!(
                "rate and power must be positive and finite, got ({rate}, {power})"
            )));
        }
        Ok(Self { rate, power, log_tail, log_density: None })
    }

    /// Attach an exact log-density on `(0, inf)`, consistent with the
    /// log-tail (`density = -d/du exp(log_tail)`).
    pub fn with_log_density(mut self, log_density: Arc<dyn Fn(f64) -> f64 + Send + Sync>) -> Self {
        self.log_density = Some(log_density);
        self
    }

    /// The canonical representative `log P(Y > u) = -rate * u^power`.
    pub fn canonical(rate: f64, power: f64) -> Result<Self> {
        Self::new(rate, power, Arc::new(move |u: f64| -rate * u.powf(power)))
    }

    /// The positive part of a standard normal: `log P = log Phibar(u)`,
    /// which is log-Weibullian with rate 1/2 and power 2.
    pub fn standard_normal_tail() -> Self {
        Self::new(0.5, 2.0, Arc::new(crate::numeric::special::log_normal_sf))
            .expect("valid parameters")
    }

    /// `|N(0, 1)|` exactly: tail `2 Phibar(u)`, density
    /// `sqrt(2/pi) exp(-u^2/2)`. The exact law, unlike the Weibullian model
    /// built from the asymptotic prefactor, which is only tail-equivalent.
    pub fn standard_halfnormal() -> Self {
        let log_two = std::f64::consts::LN_2;
        let half_log_2_over_pi = 0.5 * (2.0 / std::f64::consts::PI).ln();
        Self::new(
            0.5,
            2.0,
            Arc::new(move |u: f64| log_two + crate::numeric::special::log_normal_sf(u)),
        )
        .expect("valid parameters")
        .with_log_density(Arc::new(move |u: f64| half_log_2_over_pi - 0.5 * u * u))
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn power(&self) -> f64 {
        self.power
    }

    fn log_tail_inner(&self, u: f64) -> f64 {
        ((self.log_tail)(u)).min(0.0)
    }
}

/// A risk supported in `(0, 1]`; the scaling factor of a random contraction.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundedScaler {
    /// Degenerate mass at 1, the identity contraction.
    PointMassOne,
    /// Uniform on (0, 1].
    Uniform,
    /// Beta(a, b) on (0, 1).
    Beta { a: f64, b: f64 },
    /// Finitely many atoms `(value, mass)` with values in (0, 1], strictly
    /// increasing, masses summing to 1. An atom at 1 is optional.
    Discrete { points: Vec<(f64, f64)> },
}

impl BoundedScaler {
    pub fn beta(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::Domain(format!("beta parameters must be positive, got ({a}, {b})")));
        }
        Ok(Self::Beta { a, b })
    }

    pub fn discrete(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Domain("discrete scaler needs at least one atom".into()));
        }
        for w in points.windows(2) {
            if !(w[0].0 < w[1].0) {
                return Err(Error::Domain("atom positions must be strictly increasing".into()));
            }
        }
        if points.iter().any(|&(s, w)| !(s > 0.0 && s <= 1.0 && w > 0.0)) {
            return Err(Error::Domain("atoms must lie in (0, 1] with positive mass".into()));
        }
        let total: f64 = points.iter().map(|&(_, w)| w).sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("atom masses must sum to 1, got {total}")));
        }
        Ok(Self::Discrete { points })
    }

    /// Whether the scaler places positive mass exactly at 1. A point mass at
    /// 1 reduces the random contraction to the identity and serves as a
    /// regression anchor.
    pub fn atom_at_1(&self) -> bool {
        match self {
            Self::PointMassOne => true,
            Self::Uniform | Self::Beta { .. } => false,
            Self::Discrete { points } => points.last().is_some_and(|&(s, _)| s == 1.0),
        }
    }

    fn log_tail_inner(&self, u: f64) -> f64 {
        if u >= 1.0 {
            return f64::NEG_INFINITY;
        }
        match self {
            Self::PointMassOne => 0.0,
            Self::Uniform => (1.0 - u).ln(),
            Self::Beta { a, b } => statrs::function::beta::beta_reg(*b, *a, 1.0 - u).ln(),
            Self::Discrete { points } => {
                let mass: f64 = points.iter().filter(|&&(s, _)| s > u).map(|&(_, w)| w).sum();
                mass.ln()
            }
        }
    }

    fn quantile(&self, q: f64) -> f64 {
        match self {
            Self::PointMassOne => 1.0,
            Self::Uniform => q.max(f64::MIN_POSITIVE),
            Self::Beta { a, b } => {
                let cdf = |x: f64| statrs::function::beta::beta_reg(*a, *b, x.clamp(0.0, 1.0));
                generalized_inverse(cdf, q, (0.0, 1.0)).expect("quantile of a continuous cdf")
            }
            Self::Discrete { points } => {
                let mut acc = 0.0;
                for &(s, w) in points {
                    acc += w;
                    if acc >= q - 1e-15 {
                        return s;
                    }
                }
                points.last().unwrap().0
            }
        }
    }
}

/// Auxiliary scaling function of the exponential-limit property
/// (asymptotically the reciprocal hazard rate), regularly varying with index
/// `-tau`.
#[derive(Debug, Clone)]
pub struct GumbelAux {
    scale_fn: RegVarFn,
}

impl GumbelAux {
    /// Wrap a regularly varying scaling function. Indices with `tau < -1`
    /// (i.e. `index > 1`) are rejected.
    pub fn new(scale_fn: RegVarFn) -> Result<Self> {
        if scale_fn.index() > 1.0 {
            return Err(Error::Domain(format!(
                "auxiliary index {} corresponds to tau < -1, outside the admissible range",
                scale_fn.index()
            )));
        }
        Ok(Self { scale_fn })
    }

    pub fn eval(&self, u: f64) -> f64 {
        self.scale_fn.eval(u)
    }

    /// `tau = -index`; the admissible range is `tau >= -1`.
    pub fn tau(&self) -> f64 {
        -self.scale_fn.index()
    }

    /// The boundary case `tau = -1` is admissible but exercised by nothing
    /// in the verification corpus; treat results there as experimental.
    pub fn is_boundary_index(&self) -> bool {
        (self.tau() + 1.0).abs() < 1e-12
    }

    pub fn reg_var(&self) -> &RegVarFn {
        &self.scale_fn
    }
}

/// A one-dimensional risk described by its upper tail in log-space.
#[derive(Debug, Clone)]
pub enum TailModel {
    Weibullian(Weibullian),
    LogWeibullian(LogWeibullian),
    Bounded(BoundedScaler),
}

impl TailModel {
    pub fn weibullian(prefactor: RegVarFn, rate: f64, power: f64) -> Result<Self> {
        Ok(Self::Weibullian(Weibullian::new(prefactor, rate, power)?))
    }

    /// `P(Y > u) = exp(-rate * u^power)` exactly (unit prefactor).
    pub fn pure_weibullian(rate: f64, power: f64) -> Result<Self> {
        Self::weibullian(RegVarFn::constant(1.0)?, rate, power)
    }

    /// Exp(1): the unit-rate exponential, `P(Y > u) = exp(-u)`.
    pub fn exponential() -> Self {
        Self::pure_weibullian(1.0, 1.0).expect("valid parameters")
    }

    /// `log P(Y > u)` (natural log). `u` must be positive and finite; for
    /// bounded scalers values beyond the support give `-inf`.
    pub fn log_tail(&self, u: f64) -> Result<f64> {
        if !u.is_finite() || u <= 0.0 {
            return Err(Error::Domain(format!("log_tail requires finite u > 0, got {u}")));
        }
        Ok(match self {
            Self::Weibullian(w) => w.log_tail_inner(u),
            Self::LogWeibullian(lw) => lw.log_tail_inner(u),
            Self::Bounded(b) => b.log_tail_inner(u),
        })
    }

    /// Completed cumulative distribution function.
    pub fn cdf(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        1.0 - self.log_tail(u).expect("u > 0").exp()
    }

    /// Upper end of the support: 1 for bounded scalers, infinity otherwise.
    pub fn support_upper(&self) -> f64 {
        match self {
            Self::Bounded(_) => 1.0,
            _ => f64::INFINITY,
        }
    }

    /// Range on which the model has a continuous density, if any.
    pub fn density_range(&self) -> Option<(f64, f64)> {
        match self {
            Self::Weibullian(w) => Some((w.body_cutoff.max(0.0), f64::INFINITY)),
            Self::LogWeibullian(lw) => lw.log_density.as_ref().map(|_| (0.0, f64::INFINITY)),
            Self::Bounded(BoundedScaler::Uniform) => Some((0.0, 1.0)),
            Self::Bounded(BoundedScaler::Beta { .. }) => Some((0.0, 1.0)),
            Self::Bounded(_) => None,
        }
    }

    /// Positive atoms `(value, mass)` of the completed distribution.
    pub fn atoms(&self) -> Vec<(f64, f64)> {
        match self {
            Self::Bounded(BoundedScaler::PointMassOne) => vec![(1.0, 1.0)],
            Self::Bounded(BoundedScaler::Discrete { points }) => points.clone(),
            _ => Vec::new(),
        }
    }

    /// `log` density at `s`, where a density exists; `-inf` marks points of
    /// zero density inside the range.
    pub fn log_density(&self, s: f64) -> Option<f64> {
        match self {
            Self::Weibullian(w) => {
                let (lo, _) = self.density_range().unwrap();
                if s <= lo {
                    return Some(f64::NEG_INFINITY);
                }
                let hz = w.hazard(s);
                if hz <= 0.0 {
                    return Some(f64::NEG_INFINITY);
                }
                Some(w.log_tail_inner(s) + hz.ln())
            }
            Self::LogWeibullian(lw) => lw.log_density.as_ref().map(|f| f(s)),
            Self::Bounded(BoundedScaler::Uniform) => {
                Some(if (0.0..1.0).contains(&s) { 0.0 } else { f64::NEG_INFINITY })
            }
            Self::Bounded(BoundedScaler::Beta { a, b }) => {
                if !(0.0 < s && s < 1.0) {
                    return Some(f64::NEG_INFINITY);
                }
                Some(
                    (a - 1.0) * s.ln() + (b - 1.0) * (1.0 - s).ln()
                        - statrs::function::beta::ln_beta(*a, *b),
                )
            }
            Self::Bounded(_) => None,
        }
    }

    /// Quantile of the completed cdf (generalized inverse at level `q`).
    pub fn quantile(&self, q: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&q) {
            return Err(Error::Domain(format!("quantile level {q} outside [0, 1)")));
        }
        self.quantile_from_log_survival((1.0 - q).ln())
    }

    /// Quantile expressed through the log survival level: the point
    /// `inf { x : log P(Y > x) <= log_v }`. Passing the log survival level
    /// directly preserves resolution deep in the tail.
    pub fn quantile_from_log_survival(&self, log_v: f64) -> Result<f64> {
        match self {
            Self::Bounded(b) => Ok(b.quantile((-log_v.exp().clamp(0.0, 1.0)) + 1.0)),
            Self::Weibullian(w) => {
                if let Some(x) = w.quantile_from_log_tail_const(log_v) {
                    return Ok(x);
                }
                let h = |x: f64| -self.log_tail(x.max(1e-300)).unwrap_or(f64::NEG_INFINITY);
                generalized_inverse(h, -log_v, (0.0, f64::INFINITY))
            }
            Self::LogWeibullian(_) => {
                let h = |x: f64| -self.log_tail(x.max(1e-300)).unwrap_or(f64::NEG_INFINITY);
                generalized_inverse(h, -log_v, (0.0, f64::INFINITY))
            }
        }
    }

    /// One draw by inverse transform through the completed cdf.
    pub fn sample_one<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        // draw the survival level directly: V = P(Y > X) ~ U(0,1)
        let v: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
        match self {
            Self::Bounded(b) => b.quantile(1.0 - v),
            _ => self
                .quantile_from_log_survival(v.ln())
                .expect("inverse transform on a completed cdf"),
        }
    }

    /// `count` i.i.d. draws; deterministic given the rng state.
    pub fn sample<R: Rng + ?Sized>(&self, count: usize, rng: &mut R) -> Result<Vec<f64>> {
        if count == 0 {
            return Err(Error::Domain("sample count must be at least 1".into()));
        }
        Ok((0..count).map(|_| self.sample_one(rng)).collect())
    }

    pub fn as_weibullian(&self) -> Option<&Weibullian> {
        match self {
            Self::Weibullian(w) => Some(w),
            _ => None,
        }
    }

    pub fn as_bounded(&self) -> Option<&BoundedScaler> {
        match self {
            Self::Bounded(b) => Some(b),
            _ => None,
        }
    }
}

/// Reciprocal-hazard auxiliary function of a Weibullian model; errors on the
/// other variants.
pub fn auxiliary_function(model: &TailModel) -> Result<GumbelAux> {
    model
        .as_weibullian()
        .map(Weibullian::auxiliary_function)
        .ok_or_else(|| Error::Unsupported("auxiliary function needs a Weibullian model".into()))
}

// ---------------------------------------------------------------------------
// serialisable model descriptions (strict parsing; unknown fields rejected)
// ---------------------------------------------------------------------------

/// On-disk description of a [`TailModel`]. The log-Weibullian variant
/// deserialises to its canonical representative `log P(Y > u) = -rate u^power`;
/// richer log-tails are programmatic only.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "variant", rename_all = "lowercase", deny_unknown_fields)]
pub enum TailModelSpec {
    Weibullian { g: RegVarFnSpec, rate: f64, power: f64 },
    LogWeibullian { rate: f64, power: f64 },
    Bounded { family: BoundedFamilySpec },
    /// the exact |N(0,1)| law (log-Weibullian with exact tail and density)
    Halfnormal,
    /// the exact upper tail of N(0,1) (log-Weibullian, tail only)
    NormalTail,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum BoundedFamilySpec {
    PointMassOne,
    Uniform,
    Beta { a: f64, b: f64 },
    Discrete { points: Vec<(f64, f64)> },
}

impl TryFrom<&TailModelSpec> for TailModel {
    type Error = Error;

    fn try_from(spec: &TailModelSpec) -> Result<Self> {
        match spec {
            TailModelSpec::Weibullian { g, rate, power } => {
                TailModel::weibullian(RegVarFn::try_from(g)?, *rate, *power)
            }
            TailModelSpec::LogWeibullian { rate, power } => {
                Ok(TailModel::LogWeibullian(LogWeibullian::canonical(*rate, *power)?))
            }
            TailModelSpec::Bounded { family } => Ok(TailModel::Bounded(match family {
                BoundedFamilySpec::PointMassOne => BoundedScaler::PointMassOne,
                BoundedFamilySpec::Uniform => BoundedScaler::Uniform,
                BoundedFamilySpec::Beta { a, b } => BoundedScaler::beta(*a, *b)?,
                BoundedFamilySpec::Discrete { points } => BoundedScaler::discrete(points.clone())?,
            })),
            TailModelSpec::Halfnormal => {
                Ok(TailModel::LogWeibullian(LogWeibullian::standard_halfnormal()))
            }
            TailModelSpec::NormalTail => {
                Ok(TailModel::LogWeibullian(LogWeibullian::standard_normal_tail()))
            }
        }
    }
}
