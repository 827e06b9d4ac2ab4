//! Closed-form tail asymptotics for products of Weibullian risks and for
//! suprema of stationary-increment Gaussian processes over random intervals.
//!
//! Every expansion returns a natural-log value; callers exponentiate only for
//! display. Each operation refuses arguments below its own validity cutoff
//! instead of extrapolating: the formulas are asymptotic, and silent misuse at
//! small `u` is the primary user hazard.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::golden_section_min;
use crate::regvar::RegVarFn;
use crate::risk::{TailModel, Weibullian};

fn check_positive(pairs: &[(&str, f64)]) -> Result<()> {
    for &(name, v) in pairs {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::Domain(format!("{name} must be positive and finite, got {v}")));
        }
    }
    Ok(())
}

/// The constant bundle governing the tail of a product of two Weibullian
/// risks with parameters `(power1, rate1)` and `(power2, rate2)`:
///
/// * `a`     - saddle scale, `[(p1 L1)/(p2 L2)]^{1/(p1+p2)}`
/// * `b`     - exponent coefficient, `L1 A^{-p1} + L2 A^{p2}`
/// * `p_star`- exponent power, `p1 p2 / (p1 + p2)`
/// * `d`     - Gaussian prefactor,
///   `sqrt(2 pi (p1 L1)^{p2/(p1+p2)} (p2 L2)^{p1/(p1+p2)} / (p1 + p2))`
///
/// The product tail then behaves like
/// `D u^{p*/2} g1(u/c_u) g2(c_u) exp(-B u^{p*})` with
/// `c_u = A u^{p1/(p1+p2)}`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ProductAsymptotics {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub p_star: f64,
    #[serde(rename = "D")]
    pub d: f64,
    #[serde(skip)]
    pub power1: f64,
    #[serde(skip)]
    pub rate1: f64,
    #[serde(skip)]
    pub power2: f64,
    #[serde(skip)]
    pub rate2: f64,
}

impl ProductAsymptotics {
    /// The scaling sequence `c_u = A u^{p1/(p1+p2)}`; the second factor's
    /// saddle value in the product decomposition.
    pub fn c_u(&self, u: f64) -> f64 {
        self.a * u.powf(self.power1 / (self.power1 + self.power2))
    }
}

/// Compute the full constant bundle for given factor parameters.
pub fn product_constants(p1: f64, l1: f64, p2: f64, l2: f64) -> Result<ProductAsymptotics> {
    check_positive(&[("p1", p1), ("L1", l1), ("p2", p2), ("L2", l2)])?;
    let ps = p1 + p2;
    let a = ((p1 * l1) / (p2 * l2)).powf(1.0 / ps);
    let b = l1 * a.powf(-p1) + l2 * a.powf(p2);
    let p_star = p1 * p2 / ps;
    let d = (2.0 * std::f64::consts::PI * (p1 * l1).powf(p2 / ps) * (p2 * l2).powf(p1 / ps) / ps)
        .sqrt();
    Ok(ProductAsymptotics { a, b, p_star, d, power1: p1, rate1: l1, power2: p2, rate2: l2 })
}

/// The pair `(B, p_star)` governing the log-scale limit
/// `log P(Y1 Y2 > u) / u^{p*} -> -B`.
pub fn log_weibull_exponent(p1: f64, l1: f64, p2: f64, l2: f64) -> Result<(f64, f64)> {
    let c = product_constants(p1, l1, p2, l2)?;
    Ok((c.b, c.p_star))
}

/// Exponent power of an n-fold product: `(sum_i 1/p_i)^{-1}`.
pub fn nfold_exponent(powers: &[f64]) -> Result<f64> {
    if powers.is_empty() {
        return Err(Error::Domain("nfold_exponent needs at least one factor".into()));
    }
    for &p in powers {
        check_positive(&[("power", p)])?;
    }
    Ok(1.0 / powers.iter().map(|p| 1.0 / p).sum::<f64>())
}

/// Minimiser and minimum of `f(x) = L1 x^{p1} + L2 (u/x)^{p2}` over `x > 0`:
/// `x_u = (p2 L2 / (p1 L1))^{1/(p1+p2)} u^{p2/(p1+p2)}` and
/// `f(x_u) = B u^{p1 p2/(p1+p2)}`.
///
/// A guarded derivative-free minimisation (golden section on `log x`)
/// double-checks the closed form; disagreement beyond `1e-8` relative is a
/// hard internal error, since the exponent algebra is the most error-prone
/// transcription in this domain.
pub fn saddle_point(u: f64, p1: f64, l1: f64, p2: f64, l2: f64) -> Result<(f64, f64)> {
    check_positive(&[("u", u), ("p1", p1), ("L1", l1), ("p2", p2), ("L2", l2)])?;
    let c = product_constants(p1, l1, p2, l2)?;
    let x_u = (p2 * l2 / (p1 * l1)).powf(1.0 / (p1 + p2)) * u.powf(p2 / (p1 + p2));
    let f_min = c.b * u.powf(c.p_star);

    let objective = |lx: f64| {
        let x = lx.exp();
        l1 * x.powf(p1) + l2 * (u / x).powf(p2)
    };
    let l0 = x_u.ln();
    let (lx_num, f_num) = golden_section_min(objective, l0 - 2.0, l0 + 2.0, 1e-13, 400);
    let x_num = lx_num.exp();
    if (x_num / x_u - 1.0).abs() > 1e-6 || (f_num / f_min - 1.0).abs() > 1e-8 {
        return Err(Error::Inconsistent(format!(
            "closed-form saddle ({x_u}, {f_min}) vs numerical ({x_num}, {f_num})"
        )));
    }
    Ok((x_u, f_min))
}

/// Log of the product-tail expansion for two factors with power prefactors
/// `P(Y_i > u) ~ C_i u^{alpha_i} exp(-L_i u^{p_i})`.
#[derive(Debug, Clone, Copy)]
pub struct PolyFactor {
    /// prefactor scale `C > 0`
    pub scale: f64,
    /// prefactor power `alpha` (any real)
    pub alpha: f64,
    /// decay rate `L > 0`
    pub rate: f64,
    /// decay power `p > 0`
    pub power: f64,
}

/// Log of the right side of the power-prefactor product expansion:
///
/// `log[(2 pi p2 L2/(p1+p2))^{1/2} C1 C2 A^{p2/2 + a2 - a1}
///  u^{(2 p2 a1 + 2 p1 a2 + p1 p2)/(2(p1+p2))}] - B u^{p1 p2/(p1+p2)}`.
///
/// Exchanging the two factors leaves the value unchanged: the map
/// `A -> 1/A` compensates the asymmetric-looking prefactor.
pub fn product_tail_polynomial_log(u: f64, f1: &PolyFactor, f2: &PolyFactor) -> Result<f64> {
    check_positive(&[
        ("u", u),
        ("C1", f1.scale),
        ("L1", f1.rate),
        ("p1", f1.power),
        ("C2", f2.scale),
        ("L2", f2.rate),
        ("p2", f2.power),
    ])?;
    if !f1.alpha.is_finite() || !f2.alpha.is_finite() {
        return Err(Error::Domain("alpha must be finite".into()));
    }
    let (p1, p2) = (f1.power, f2.power);
    let c = product_constants(p1, f1.rate, p2, f2.rate)?;
    let ps = p1 + p2;
    let u_exponent = (2.0 * p2 * f1.alpha + 2.0 * p1 * f2.alpha + p1 * p2) / (2.0 * ps);
    Ok(0.5 * (2.0 * std::f64::consts::PI * p2 * f2.rate / ps).ln()
        + f1.scale.ln()
        + f2.scale.ln()
        + (p2 / 2.0 + f2.alpha - f1.alpha) * c.a.ln()
        + u_exponent * u.ln()
        - c.b * u.powf(c.p_star))
}

/// Log of the product-tail expansion for two general Weibullian models:
/// `log[D u^{p*/2} g1(u/c_u) g2(c_u)] - B u^{p*}`.
///
/// The equivalent second form
/// `log D + (p*/2) log u + log_tail1(u/c_u) + log_tail2(c_u)` is evaluated as
/// well; the two are algebraically identical through the saddle identity
/// `L1 (u/c_u)^{p1} + L2 c_u^{p2} = B u^{p*}`, and disagreement beyond
/// `1e-10` is reported as an internal error.
///
/// Arguments for which `u/c_u` or `c_u` fall inside a factor's body region
/// are refused with the validity cutoff reported.
pub fn product_tail_weibullian_log(u: f64, w1: &Weibullian, w2: &Weibullian) -> Result<f64> {
    check_positive(&[("u", u)])?;
    let c = product_constants(w1.power(), w1.rate(), w2.power(), w2.rate())?;
    let cutoff = weibullian_validity_cutoff(&c, w1, w2);
    let c_u = c.c_u(u);
    if u / c_u <= w1.body_cutoff() || c_u <= w2.body_cutoff() {
        return Err(Error::BelowCutoff { u, cutoff });
    }

    let half_pstar_logu = 0.5 * c.p_star * u.ln();
    let first =
        c.d.ln() + half_pstar_logu + w1.prefactor().log_eval(u / c_u) + w2.prefactor().log_eval(c_u)
            - c.b * u.powf(c.p_star);

    let m1 = TailModel::Weibullian(w1.clone());
    let m2 = TailModel::Weibullian(w2.clone());
    let second = c.d.ln() + half_pstar_logu + m1.log_tail(u / c_u)? + m2.log_tail(c_u)?;

    if (first - second).abs() > 1e-10 * (1.0 + first.abs()) {
        return Err(Error::Inconsistent(format!(
            "product-tail forms disagree at u = {u}: {first} vs {second}"
        )));
    }
    Ok(first)
}

/// Smallest `u` for which [`product_tail_weibullian_log`] accepts the pair.
pub fn weibullian_validity_cutoff(
    c: &ProductAsymptotics,
    w1: &Weibullian,
    w2: &Weibullian,
) -> f64 {
    let ps = c.power1 + c.power2;
    let mut cutoff: f64 = 0.0;
    if w1.body_cutoff() > 0.0 {
        // u / c_u = u^{p2/ps} / A  > u0_1
        cutoff = cutoff.max((c.a * w1.body_cutoff()).powf(ps / c.power2));
    }
    if w2.body_cutoff() > 0.0 {
        // c_u = A u^{p1/ps} > u0_2
        cutoff = cutoff.max((w2.body_cutoff() / c.a).powf(ps / c.power1));
    }
    cutoff
}

/// Norming pair for maxima of a Weibullian risk: the `1 - 1/n` quantile of
/// the completed distribution together with the auxiliary-function value
/// there. Maxima of `n` i.i.d. copies, normalised by this pair, approach the
/// double-exponential law.
pub fn gumbel_norming(n: u64, model: &Weibullian) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::Domain(format!("norming needs n >= 2, got {n}")));
    }
    let tm = TailModel::Weibullian(model.clone());
    // survival level 1/n, solved in log space
    let b_n = tm.quantile_from_log_survival(-(n as f64).ln())?;
    let a_bn = model.auxiliary_function().eval(b_n);
    Ok((b_n, a_bn))
}

/// Norming pair for triangular arrays of scaled Gaussians.
///
/// `quantile` is `d_n`, the `1 - 1/n` quantile of the law of `S * X(1)` with
/// `X(1)` standard normal (computed through the oracle quadrature of the
/// product tail); `scale` is `c_n`, equal to `1/d_n` for bounded scalers and
/// `d_n (2+p)/(2 p log n)` for Weibullian ones. `quantile_asymptotic` is the
/// leading-order form of `d_n`: `sqrt(2 log n)` respectively
/// `((log n)/B)^{(2+p)/(2p)}` with `B` the product-exponent coefficient of
/// `(p, L)` against the normal factor `(2, 1/2)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TriangularNorming {
    pub quantile: f64,
    pub scale: f64,
    pub quantile_asymptotic: f64,
}

/// Compute the norming pair `(d_n, c_n)` for a scaler `S` that is either
/// bounded or Weibullian.
pub fn triangular_norming(n: u64, scaler: &TailModel) -> Result<TriangularNorming> {
    if n < 2 {
        return Err(Error::Domain(format!("triangular norming needs n >= 2, got {n}")));
    }
    let log_n = (n as f64).ln();
    let normal = TailModel::LogWeibullian(crate::risk::LogWeibullian::standard_normal_tail());
    let cfg = crate::oracle::QuadratureConfig::default();

    // d_n solves P(S X > d) = 1/n; the log product tail is non-increasing in d
    let target = -log_n;
    let h = |d: f64| {
        -crate::oracle::product_tail_quadrature(d.max(1e-12), &normal, scaler, &cfg)
            .map(|r| r.log_value)
            .unwrap_or(f64::NEG_INFINITY)
    };
    let quantile = crate::numeric::generalized_inverse(h, -target, (0.0, f64::INFINITY))?;

    let (scale, quantile_asymptotic) = match scaler {
        TailModel::Bounded(_) => (1.0 / quantile, (2.0 * log_n).sqrt()),
        TailModel::Weibullian(w) => {
            let (p, l) = (w.power(), w.rate());
            let b = product_constants(p, l, 2.0, 0.5)?.b;
            (
                quantile * (2.0 + p) / (2.0 * p * log_n),
                (log_n / b).powf((2.0 + p) / (2.0 * p)),
            )
        }
        TailModel::LogWeibullian(_) => {
            return Err(Error::Unsupported(
                "triangular norming needs a bounded or Weibullian scaler".into(),
            ))
        }
    };
    Ok(TriangularNorming { quantile, scale, quantile_asymptotic })
}

/// Constants of the supremum-over-random-interval reduction for a process
/// with `sigma(t) ~ C t^{alpha/2}` and an interval length with log-tail
/// `-L t^p`:
///
/// * `p_tilde = 2 p / alpha`, `l_tilde = L / C^p` (parameters of `sigma(T)`)
/// * `b_tilde = Lt (Lt pt)^{-pt/(pt+2)} + (1/2) (Lt pt)^{2/(pt+2)}`
///
/// `b_tilde` coincides with the product-exponent coefficient of
/// `sigma(T) * N`, i.e. `product_constants(p_tilde, l_tilde, 2, 1/2).b`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SupIntervalConstants {
    pub p_tilde: f64,
    #[serde(rename = "L_tilde")]
    pub l_tilde: f64,
    #[serde(rename = "B_tilde")]
    pub b_tilde: f64,
}

pub fn sup_interval_constants(p: f64, l: f64, alpha: f64, c: f64) -> Result<SupIntervalConstants> {
    check_positive(&[("p", p), ("L", l), ("C", c)])?;
    if !(alpha > 1.0 && alpha <= 2.0) {
        return Err(Error::Domain(format!("alpha must lie in (1, 2], got {alpha}")));
    }
    let p_tilde = 2.0 * p / alpha;
    let l_tilde = l / c.powf(p);
    let lp = l_tilde * p_tilde;
    let b_tilde = l_tilde * lp.powf(-p_tilde / (p_tilde + 2.0)) + 0.5 * lp.powf(2.0 / (p_tilde + 2.0));
    Ok(SupIntervalConstants { p_tilde, l_tilde, b_tilde })
}

/// Log-tail of the supremum over a random interval, in terms of the
/// `sigma(T)` parameters `(p_tilde, l_tilde, g_tilde)`:
///
/// `log[(pt+2)^{-1/2} g_tilde((Lt pt)^{-1/(pt+2)} u^{2/(pt+2)})]
///  - B_tilde u^{2 pt/(pt+2)}`.
pub fn sup_interval_tail_log(
    u: f64,
    p_tilde: f64,
    l_tilde: f64,
    g_tilde: &RegVarFn,
) -> Result<f64> {
    check_positive(&[("u", u), ("p_tilde", p_tilde), ("L_tilde", l_tilde)])?;
    let lp = l_tilde * p_tilde;
    let b_tilde =
        l_tilde * lp.powf(-p_tilde / (p_tilde + 2.0)) + 0.5 * lp.powf(2.0 / (p_tilde + 2.0));
    let arg = lp.powf(-1.0 / (p_tilde + 2.0)) * u.powf(2.0 / (p_tilde + 2.0));
    Ok(-0.5 * (p_tilde + 2.0).ln() + g_tilde.log_eval(arg)
        - b_tilde * u.powf(2.0 * p_tilde / (p_tilde + 2.0)))
}
