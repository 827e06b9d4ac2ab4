//! Independent numerical ground truth for the asymptotic formulas: exact
//! product-tail quadrature, conditional Monte Carlo, tail-equivalence checks
//! and slope fitting of log-tails.

pub mod mc;
pub mod report;
pub mod slope;

use crate::asymptotics::product_constants;
use crate::error::{Error, Result};
use crate::numeric::quadrature::integrate_adaptive;
use crate::numeric::{golden_section_min, log_add_exp, log_sum_exp};
use crate::risk::{GumbelAux, TailModel};

pub use mc::{conditional_mc_tail, substream, McTailEstimate};
pub use report::{VerificationReport, VerificationRow};
pub use slope::{slope_fit, slope_fit_detailed, SlopeFit};

/// Tuning of the product-tail quadrature.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureConfig {
    /// Absolute tolerance on the peak-shifted, normalised integral.
    pub abs_tol: f64,
    /// Panel budget; exhaustion surfaces as an error, never as silent
    /// inaccuracy.
    pub max_panels: usize,
    /// The integration window is grown until the log-integrand at its ends
    /// sits this many nats below the peak.
    pub boundary_drop: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { abs_tol: 1e-8, max_panels: 200, boundary_drop: 40.0 }
    }
}

/// Outcome of one product-tail quadrature.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult {
    /// `log P(Y1 Y2 > u)` of the completed models.
    pub log_value: f64,
    /// Estimated absolute error of `log_value` (>= 0).
    pub abs_log_error_estimate: f64,
    /// Integrand evaluations: 61 per panel, plus one per atom. At least 15
    /// whenever a continuous component was integrated.
    pub node_count: usize,
    /// The location of the integrand peak in the scaling variable (or the
    /// dominant atom when the scaler is purely discrete).
    pub saddle_used: f64,
}

/// `log P(Y1 Y2 > u)` as the mixing integral
/// `log Int exp(log_tail1(u/s)) dF2(s)`, over the full support of `Y2`.
///
/// The integral is computed in the log of the scaling variable, centred at
/// the integrand peak (initialised at the closed-form saddle when both
/// factors are Weibullian, located by golden section otherwise), with
/// adaptive 61-point Gauss-Kronrod panels and log-sum-exp accumulation.
/// Atoms of `Y2` contribute exact terms. For bounded scalers the integral
/// runs over `(0, 1]` only.
pub fn product_tail_quadrature(
    u: f64,
    y1: &TailModel,
    y2: &TailModel,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    product_tail_quadrature_windowed(u, y1, y2, (0.0, f64::INFINITY), cfg)
}

/// Same as [`product_tail_quadrature`], restricted to scaler values inside
/// `window` (used for conditional tail-equivalence checks): computes
/// `log P(Y1 Y2 > u, Y2 in window)`.
pub fn product_tail_quadrature_windowed(
    u: f64,
    y1: &TailModel,
    y2: &TailModel,
    window: (f64, f64),
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    if !(u > 0.0 && u.is_finite()) {
        return Err(Error::Domain(format!("quadrature requires finite u > 0, got {u}")));
    }
    let (w_lo, w_hi) = window;
    if !(w_lo >= 0.0 && w_lo < w_hi) {
        return Err(Error::Domain(format!("bad scaler window ({w_lo}, {w_hi})")));
    }

    // Precondition for bounded scalers: at least part of the integrand must
    // exercise the true tail of Y1, not just its completed body.
    if let Some(w1) = y1.as_weibullian() {
        let s_max = y2.support_upper().min(w_hi);
        if s_max.is_finite() && u <= w1.body_cutoff() * s_max {
            return Err(Error::BelowCutoff { u, cutoff: w1.body_cutoff() * s_max });
        }
    }

    // Exact atom contributions.
    let mut parts: Vec<f64> = Vec::new();
    let mut node_count = 0usize;
    let mut best_atom = (f64::NEG_INFINITY, 0.0);
    for (s, mass) in y2.atoms() {
        if s > w_lo && s <= w_hi {
            let term = y1.log_tail(u / s)? + mass.ln();
            if term > best_atom.0 {
                best_atom = (term, s);
            }
            parts.push(term);
            node_count += 1;
        }
    }

    // Continuous contribution.
    let mut cont: Option<(f64, f64, f64)> = None; // (log integral, log error, peak s)
    if let Some((d_lo, d_hi)) = y2.density_range() {
        let s_lo = d_lo.max(w_lo);
        let s_hi = d_hi.min(w_hi).min(y2.support_upper());
        if s_lo < s_hi {
            let psi = |v: f64| {
                let s = v.exp();
                let lt = y1.log_tail(u / s).unwrap_or(f64::NEG_INFINITY);
                let ld = y2.log_density(s).expect("density available");
                lt + ld + v // + v is the Jacobian of s = e^v
            };
            let hint = saddle_hint(u, y1, y2).unwrap_or((s_lo.max(1e-12) * s_hi.min(1e12)).sqrt());
            let (v_peak, m) = locate_peak(&psi, s_lo, s_hi, hint)?;
            let (v_lo, v_hi) = expand_window(&psi, v_peak, m, s_lo, s_hi, cfg.boundary_drop);
            let g = |v: f64| (psi(v) - m).exp();
            // split panels at the peak so a sharp maximum never falls in a
            // node gap of the first panel
            let budget = cfg.max_panels / 2;
            let mut integral = 0.0;
            let mut abs_error = 0.0;
            let mut panels = 0usize;
            for (a, b) in [(v_lo, v_peak), (v_peak, v_hi)] {
                if a < b {
                    let r = integrate_adaptive(&g, a, b, 0.5 * cfg.abs_tol, budget)?;
                    integral += r.integral;
                    abs_error += r.abs_error;
                    panels += r.panels;
                }
            }
            if integral > 0.0 {
                let log_int = m + integral.ln();
                let log_err = abs_error / integral;
                node_count += 61 * panels;
                cont = Some((log_int, log_err, v_peak.exp()));
            }
        }
    } else if y2.atoms().is_empty() {
        // No density and no atoms: fall back to a Stieltjes midpoint rule
        // against the cdf of Y2 (log-Weibullian scalers carry only a
        // log-tail function object).
        let (log_int, log_err, peak, nodes) = stieltjes_log_integral(u, y1, y2, window, cfg)?;
        node_count += nodes;
        cont = Some((log_int, log_err, peak));
    }

    let (log_value, abs_log_error_estimate, saddle_used) = match cont {
        Some((log_int, log_err, peak)) => {
            let atoms_log = log_sum_exp(&parts);
            let total = log_add_exp(log_int, atoms_log);
            let share = if total.is_finite() { (log_int - total).exp() } else { 1.0 };
            (total, log_err * share, peak)
        }
        None => {
            if parts.is_empty() {
                return Err(Error::Numerical(format!(
                    "scaler has no mass inside the window ({w_lo}, {w_hi})"
                )));
            }
            (log_sum_exp(&parts), 0.0, best_atom.1)
        }
    };

    Ok(QuadratureResult { log_value, abs_log_error_estimate, node_count, saddle_used })
}

/// Closed-form initial guess for the integrand peak in the scaling variable:
/// the saddle `c_u` when both factors are Weibullian.
fn saddle_hint(u: f64, y1: &TailModel, y2: &TailModel) -> Option<f64> {
    let w1 = y1.as_weibullian();
    let p1 = match (w1, y1) {
        (Some(w), _) => (w.power(), w.rate()),
        (None, TailModel::LogWeibullian(lw)) => (lw.power(), lw.rate()),
        _ => return None,
    };
    let p2 = match y2 {
        TailModel::Weibullian(w) => (w.power(), w.rate()),
        TailModel::LogWeibullian(lw) => (lw.power(), lw.rate()),
        TailModel::Bounded(_) => return None,
    };
    let c = product_constants(p1.0, p1.1, p2.0, p2.1).ok()?;
    Some(c.c_u(u))
}

/// Locate the maximum of `psi(v)` for `v = log s`, `s` in `(s_lo, s_hi)`:
/// coarse scan, then golden section inside the best bracket. Boundary peaks
/// (bounded scalers pile mass towards s = 1) are handled by the clamp.
fn locate_peak<F: Fn(f64) -> f64>(psi: &F, s_lo: f64, s_hi: f64, hint: f64) -> Result<(f64, f64)> {
    let hint = hint.clamp(s_lo.max(1e-300), s_hi.min(1e300));
    let v_lo = (s_lo.max(hint * 1e-9)).max(1e-300).ln();
    let v_hi = (s_hi.min(hint * 1e9)).min(1e300).ln();
    if !(v_lo < v_hi) {
        return Err(Error::Numerical("degenerate scan interval for the peak".into()));
    }
    const SCAN: usize = 257;
    let mut best = (f64::NEG_INFINITY, v_lo);
    for i in 0..SCAN {
        let v = v_lo + (v_hi - v_lo) * i as f64 / (SCAN - 1) as f64;
        let p = psi(v);
        if p > best.0 {
            best = (p, v);
        }
    }
    if !best.0.is_finite() {
        return Err(Error::Numerical(format!(
            "failed to bracket the integrand peak on ({s_lo}, {s_hi}): \
             log-integrand is -inf on the whole scan grid"
        )));
    }
    let step = (v_hi - v_lo) / (SCAN - 1) as f64;
    let a = (best.1 - step).max(v_lo);
    let b = (best.1 + step).min(v_hi);
    let (v_peak, neg_max) = golden_section_min(|v| -psi(v), a, b, 1e-12, 300);
    Ok(if -neg_max >= best.0 { (v_peak, -neg_max) } else { (best.1, best.0) })
}

/// Grow the integration window from the peak until the log-integrand has
/// dropped `boundary_drop` nats on each side (or the domain edge is hit).
/// The crossing is then bisected so the window hugs the drop point; a loose
/// window would leave the peak in a node gap of the first panel.
fn expand_window<F: Fn(f64) -> f64>(
    psi: &F,
    v_peak: f64,
    peak_val: f64,
    s_lo: f64,
    s_hi: f64,
    boundary_drop: f64,
) -> (f64, f64) {
    let dom_lo = s_lo.max(1e-300).ln();
    let dom_hi = s_hi.min(1e300).ln();
    let target = peak_val - boundary_drop;
    let grow = |dir: f64| -> f64 {
        let mut d = 1e-9;
        let mut d_inside = 0.0; // largest offset still above the target
        loop {
            let v = v_peak + dir * d;
            let clamped = v <= dom_lo || v >= dom_hi;
            let v = v.clamp(dom_lo, dom_hi);
            if psi(v) <= target {
                // bisect between the last inside offset and this one
                let mut a = d_inside;
                let mut b = (v - v_peak) * dir;
                for _ in 0..40 {
                    let mid = 0.5 * (a + b);
                    if psi(v_peak + dir * mid) <= target {
                        b = mid;
                    } else {
                        a = mid;
                    }
                }
                return v_peak + dir * b;
            }
            if clamped {
                return v;
            }
            d_inside = d;
            d *= 2.0;
            if d > 1e4 {
                return v;
            }
        }
    };
    let lo = grow(-1.0);
    let hi = grow(1.0);
    (lo.min(v_peak), hi.max(v_peak))
}

/// Midpoint Stieltjes rule in `v = log s` against the cdf of `Y2`, for
/// scalers that expose a log-tail but no density. First order, with
/// refinement doubling until the change is within an order of magnitude of
/// the requested tolerance.
fn stieltjes_log_integral(
    u: f64,
    y1: &TailModel,
    y2: &TailModel,
    window: (f64, f64),
    cfg: &QuadratureConfig,
) -> Result<(f64, f64, f64, usize)> {
    // proxy integrand for locating the mass: log_tail1(u/s) + log_tail2(s)
    let proxy = |v: f64| {
        let s = v.exp();
        y1.log_tail(u / s).unwrap_or(f64::NEG_INFINITY)
            + y2.log_tail(s).unwrap_or(f64::NEG_INFINITY)
    };
    let s_lo = window.0.max(1e-300);
    let s_hi = window.1.min(1e300);
    let hint = saddle_hint(u, y1, y2).unwrap_or(u.sqrt());
    let (v_peak, m) = locate_peak(&proxy, s_lo, s_hi, hint)?;
    let (v_lo, v_hi) = expand_window(&proxy, v_peak, m, s_lo, s_hi, cfg.boundary_drop + 10.0);

    let log_tail2 = |v: f64| y2.log_tail(v.exp()).unwrap_or(f64::NEG_INFINITY);
    let mut prev = f64::NAN;
    let mut nodes = 0usize;
    let mut n = 1024usize;
    loop {
        let mut terms = Vec::with_capacity(n);
        for j in 0..n {
            let a = v_lo + (v_hi - v_lo) * j as f64 / n as f64;
            let b = v_lo + (v_hi - v_lo) * (j + 1) as f64 / n as f64;
            let lt_a = log_tail2(a);
            let lt_b = log_tail2(b);
            // log(F2bar(s_a) - F2bar(s_b)), guarded against equal tails
            if lt_b >= lt_a {
                continue;
            }
            let log_mass = lt_a + (-((lt_b - lt_a).exp())).ln_1p();
            let mid = 0.5 * (a + b);
            let val = y1.log_tail(u / mid.exp()).unwrap_or(f64::NEG_INFINITY);
            terms.push(val + log_mass);
        }
        nodes += n;
        let cur = log_sum_exp(&terms);
        if prev.is_finite() && (cur - prev).abs() < 10.0 * cfg.abs_tol {
            return Ok((cur, (cur - prev).abs(), v_peak.exp(), nodes));
        }
        if n >= 1 << 17 {
            return Err(Error::Numerical(format!(
                "Stieltjes refinement stalled at {n} panels (last change {:.3e})",
                (cur - prev).abs()
            )));
        }
        prev = cur;
        n *= 2;
    }
}

/// Ratio `P(Y1 Y2 > u + a(u) t) / P(Y1 Y2 > u)` computed by quadrature; for
/// a bounded second factor with right endpoint 1 this tends to `exp(-t)`
/// with `a` the auxiliary function of `Y1`.
pub fn gmda_ratio(
    y1: &TailModel,
    y2: &TailModel,
    u: f64,
    t: f64,
    aux: &GumbelAux,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("t must be nonnegative, got {t}")));
    }
    let base = product_tail_quadrature(u, y1, y2, cfg)?;
    let shifted = product_tail_quadrature(u + aux.eval(u) * t, y1, y2, cfg)?;
    Ok((shifted.log_value - base.log_value).exp())
}

/// `P(S Y > u, S > w) / P(S Y > u)` for a bounded scaler `S`; tends to 1 for
/// rapidly varying `Y` at any fixed `w` in (0, 1), because scaler values
/// below `w` would need `Y > u/w`, which is negligible relative to `Y > u`.
pub fn tail_equivalence_check(
    scaler: &TailModel,
    y: &TailModel,
    u: f64,
    w: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if !(0.0 < w && w < 1.0) {
        return Err(Error::Domain(format!("w must lie in (0, 1), got {w}")));
    }
    if scaler.support_upper() != 1.0 {
        return Err(Error::Unsupported("tail equivalence needs a bounded scaler".into()));
    }
    let full = product_tail_quadrature(u, y, scaler, cfg)?;
    let restricted = product_tail_quadrature_windowed(u, y, scaler, (w, f64::INFINITY), cfg)?;
    Ok((restricted.log_value - full.log_value).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::special::{log_bessel_k0_tail, log_normal_sf};
    use crate::regvar::RegVarFn;
    use crate::risk::{auxiliary_function, BoundedScaler, LogWeibullian};

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    /// tail-equivalent Weibullian completion of |N| (asymptotic prefactor)
    fn halfnormal_model() -> TailModel {
        let g = RegVarFn::power((2.0 / std::f64::consts::PI).sqrt(), -1.0).unwrap();
        TailModel::weibullian(g, 0.5, 2.0).unwrap()
    }

    /// |N(0,1)| exactly
    fn halfnormal_exact() -> TailModel {
        TailModel::LogWeibullian(LogWeibullian::standard_halfnormal())
    }

    fn rayleigh() -> TailModel {
        TailModel::pure_weibullian(0.5, 2.0).unwrap()
    }

    #[test]
    fn point_mass_scaler_is_exact() {
        let y1 = TailModel::exponential();
        let pm = TailModel::Bounded(BoundedScaler::PointMassOne);
        for u in [1.0, 5.0, 20.0] {
            let r = product_tail_quadrature(u, &y1, &pm, &cfg()).unwrap();
            assert!((r.log_value - y1.log_tail(u).unwrap()).abs() < 1e-10);
            assert_eq!(r.abs_log_error_estimate, 0.0);
        }
    }

    #[test]
    fn normal_product_matches_bessel_anchor() {
        // P(|N1 N2| > u) = (2/pi) Int_u^inf K0, with the exact |N| law
        let m = halfnormal_exact();
        for u in [10.0, 20.0, 30.0] {
            let r = product_tail_quadrature(u, &m, &m, &cfg()).unwrap();
            let exact = (2.0 / std::f64::consts::PI).ln() + log_bessel_k0_tail(u).unwrap();
            assert!(
                (r.log_value - exact).abs() < 0.005,
                "u={u}: {} vs {exact}",
                r.log_value
            );
            assert!(r.node_count >= 15);
        }
    }

    #[test]
    fn weibullian_completion_is_tail_equivalent_not_exact() {
        // the asymptotic-prefactor completion of |N| differs from the exact
        // law by O(1/u) at the saddle; the quadrature resolves the gap
        let approx = halfnormal_model();
        let exact = halfnormal_exact();
        let u = 30.0;
        let a = product_tail_quadrature(u, &approx, &approx, &cfg()).unwrap();
        let b = product_tail_quadrature(u, &exact, &exact, &cfg()).unwrap();
        let gap = a.log_value - b.log_value;
        assert!(gap > 0.02 && gap < 0.12, "{gap}");
    }

    #[test]
    fn exp_product_deep_tail() {
        // Exp x Exp at u = 1e4: exact log = -197.12317963120413
        let y = TailModel::exponential();
        let r = product_tail_quadrature(1e4, &y, &y, &cfg()).unwrap();
        assert!((r.log_value + 197.123_179_631_204_13).abs() < 1e-4, "{}", r.log_value);
    }

    #[test]
    fn rayleigh_times_normal_is_laplace() {
        // S Rayleigh, X standard normal: S*X is Laplace(1), so
        // log P(S X > u) = ln(1/2) - u exactly.
        let normal = TailModel::LogWeibullian(LogWeibullian::standard_normal_tail());
        let s = rayleigh();
        for u in [5.0, 20.0, 60.0] {
            let r = product_tail_quadrature(u, &normal, &s, &cfg()).unwrap();
            let exact = 0.5f64.ln() - u;
            assert!((r.log_value - exact).abs() < 1e-7, "u={u}: {} vs {exact}", r.log_value);
        }
    }

    #[test]
    fn quadrature_tolerance_halving_is_consistent() {
        let m = halfnormal_model();
        let y = TailModel::exponential();
        let cases: Vec<(f64, TailModel, TailModel)> = vec![
            (30.0, m.clone(), m.clone()),
            (20.0, halfnormal_exact(), halfnormal_exact()),
            (100.0, y.clone(), y.clone()),
            (25.0, y.clone(), rayleigh()),
            (50.0, rayleigh(), TailModel::Bounded(BoundedScaler::Uniform)),
        ];
        for (u, a, b) in cases {
            let loose = product_tail_quadrature(u, &a, &b, &cfg()).unwrap();
            let tight = product_tail_quadrature(
                u,
                &a,
                &b,
                &QuadratureConfig { abs_tol: 5e-9, ..cfg() },
            )
            .unwrap();
            assert!(
                (loose.log_value - tight.log_value).abs()
                    <= loose.abs_log_error_estimate.max(1e-12),
                "u={u}: {} vs {} (err {})",
                loose.log_value,
                tight.log_value,
                loose.abs_log_error_estimate
            );
        }
    }

    #[test]
    fn boundary_peak_bounded_scaler() {
        // uniform scaler: integrand peaks at the right endpoint s = 1
        let y1 = rayleigh();
        let s = TailModel::Bounded(BoundedScaler::Uniform);
        let u = 1000.0;
        let r = product_tail_quadrature(u, &y1, &s, &cfg()).unwrap();
        // Int_0^1 exp(-u^2/(2 s^2)) ds ~ e^{-u^2/2} / u^2
        let expect = -u * u / 2.0 - 2.0 * u.ln();
        assert!((r.log_value - expect).abs() < 1e-4, "{} vs {expect}", r.log_value);
    }

    #[test]
    fn gmda_ratio_point_mass_memoryless() {
        let y1 = TailModel::exponential();
        let pm = TailModel::Bounded(BoundedScaler::PointMassOne);
        let aux = auxiliary_function(&y1).unwrap();
        let r = gmda_ratio(&y1, &pm, 50.0, 1.0, &aux, &cfg()).unwrap();
        assert!((r - (-1.0f64).exp()).abs() < 1e-10);
        let r0 = gmda_ratio(&y1, &pm, 50.0, 0.0, &aux, &cfg()).unwrap();
        assert_eq!(r0, 1.0);
    }

    #[test]
    fn gmda_ratio_uniform_scaler() {
        let y1 = rayleigh();
        let s = TailModel::Bounded(BoundedScaler::Uniform);
        let aux = auxiliary_function(&y1).unwrap();
        let r = gmda_ratio(&y1, &s, 1000.0, 1.0, &aux, &cfg()).unwrap();
        assert!((r / (-1.0f64).exp() - 1.0).abs() < 0.02, "{r}");
    }

    #[test]
    fn tail_equivalence_examples() {
        let s = TailModel::Bounded(BoundedScaler::Uniform);
        let y = TailModel::exponential();
        let r = tail_equivalence_check(&s, &y, 200.0, 0.5, &cfg()).unwrap();
        assert!((r - 1.0).abs() < 1e-3, "{r}");

        // w -> 0+: restriction vacuous up to the support
        let r = tail_equivalence_check(&s, &y, 50.0, 1e-12, &cfg()).unwrap();
        assert_eq!(r, 1.0);

        // point mass at 1: exactly 1 for any w < 1
        let pm = TailModel::Bounded(BoundedScaler::PointMassOne);
        let r = tail_equivalence_check(&pm, &y, 10.0, 0.9, &cfg()).unwrap();
        assert_eq!(r, 1.0);
    }

    #[test]
    fn windowed_discrete_scaler() {
        let two = TailModel::Bounded(BoundedScaler::discrete(vec![(0.5, 0.5), (1.0, 0.5)]).unwrap());
        let y = TailModel::exponential();
        let u = 40.0;
        let full = product_tail_quadrature(u, &y, &two, &cfg()).unwrap();
        // exact: 0.5 e^{-80} + 0.5 e^{-40}
        let exact = log_sum_exp(&[0.5f64.ln() - 80.0, 0.5f64.ln() - 40.0]);
        assert!((full.log_value - exact).abs() < 1e-12);
        let hi_only = product_tail_quadrature_windowed(u, &y, &two, (0.7, f64::INFINITY), &cfg())
            .unwrap();
        assert!((hi_only.log_value - (0.5f64.ln() - 40.0)).abs() < 1e-12);
    }

    #[test]
    fn stieltjes_fallback_for_logweibullian_scaler() {
        // canonical log-Weibullian scaler has cdf only; compare against the
        // density path through an equivalent Weibullian model
        let y1 = TailModel::exponential();
        let lw = TailModel::LogWeibullian(LogWeibullian::canonical(1.0, 1.0).unwrap());
        let wb = TailModel::exponential();
        let u = 30.0;
        let a = product_tail_quadrature(u, &y1, &lw, &cfg()).unwrap();
        let b = product_tail_quadrature(u, &y1, &wb, &cfg()).unwrap();
        assert!((a.log_value - b.log_value).abs() < 1e-4, "{} vs {}", a.log_value, b.log_value);
    }

    #[test]
    fn below_cutoff_precondition() {
        // the completed halfnormal model has body cutoff ~ 0.647; with a
        // bounded scaler the whole integrand sits in the body for u below it
        let m = halfnormal_model();
        let s = TailModel::Bounded(BoundedScaler::Uniform);
        assert!(matches!(
            product_tail_quadrature(0.5, &m, &s, &cfg()),
            Err(Error::BelowCutoff { .. })
        ));
        assert!(product_tail_quadrature(0.7, &m, &s, &cfg()).is_ok());
    }

    #[test]
    fn mc_agrees_with_quadrature() {
        let y = TailModel::exponential();
        let est = conditional_mc_tail(25.0, &y, &y, 1_000_000, 987).unwrap();
        let q = product_tail_quadrature(25.0, &y, &y, &cfg()).unwrap();
        assert!(
            (est.log_estimate - q.log_value).abs() < 3.0 * est.se_of_log,
            "mc {} vs quad {} (se {})",
            est.log_estimate,
            q.log_value,
            est.se_of_log
        );
    }

    #[test]
    fn mc_and_quadrature_randomized_cases() {
        // 20 randomized moderate-tail cases, 3 reported standard errors
        use rand::Rng;
        let mut seed_rng = substream(314, 0);
        for k in 0..20 {
            let p1 = 0.5 + 1.5 * seed_rng.random::<f64>();
            let l1 = 0.3 + 2.0 * seed_rng.random::<f64>();
            let p2 = 0.5 + 1.5 * seed_rng.random::<f64>();
            let l2 = 0.3 + 2.0 * seed_rng.random::<f64>();
            let y1 = TailModel::pure_weibullian(l1, p1).unwrap();
            let y2 = TailModel::pure_weibullian(l2, p2).unwrap();
            let (b, ps) = crate::asymptotics::log_weibull_exponent(p1, l1, p2, l2).unwrap();
            // pick u so the product tail is around e^{-12}: moderate
            let u = (12.0 / b).powf(1.0 / ps);
            let q = product_tail_quadrature(u, &y1, &y2, &cfg()).unwrap();
            let est = conditional_mc_tail(u, &y1, &y2, 200_000, 1000 + k).unwrap();
            assert!(
                (est.log_estimate - q.log_value).abs() < 3.0 * est.se_of_log.max(1e-4),
                "case {k}: mc {} quad {} se {}",
                est.log_estimate,
                q.log_value,
                est.se_of_log
            );
        }
    }

    #[test]
    fn asymptotic_ratio_monotone_toward_one() {
        // exp(prediction - quadrature) approaches 1 monotonically in u
        let y = TailModel::exponential();
        let w = y.as_weibullian().unwrap();
        let grid = [10.0, 30.0, 100.0, 300.0, 1000.0];
        let mut prev_gap = f64::INFINITY;
        for &u in &grid {
            let pred = crate::asymptotics::product_tail_weibullian_log(u, w, w).unwrap();
            let q = product_tail_quadrature(u, &y, &y, &cfg()).unwrap();
            let gap = ((pred - q.log_value).exp() - 1.0).abs();
            assert!(
                gap < prev_gap + q.abs_log_error_estimate,
                "u={u}: gap {gap} prev {prev_gap}"
            );
            prev_gap = gap;
        }
        assert!(prev_gap < 0.01);
    }

    #[test]
    fn normal_tail_model_consistency() {
        // the log-Weibullian wrapper of Phibar matches log_normal_sf
        let n = TailModel::LogWeibullian(LogWeibullian::standard_normal_tail());
        for u in [0.5, 3.0, 30.0] {
            assert_eq!(n.log_tail(u).unwrap(), log_normal_sf(u));
        }
    }
}
