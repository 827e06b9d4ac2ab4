//! Shared numerical kernels: stable log-space reductions, derivative-free
//! one-dimensional optimisation, monotone bisection, and adaptive
//! Gauss-Kronrod quadrature.

pub(crate) mod gk61;
pub mod quadrature;
pub mod special;

use crate::error::{Error, Result};

/// `log(sum(exp(v)))` over a slice, stable for deeply negative entries.
/// Returns `-inf` when every entry is `-inf` or the slice is empty.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let m = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    let s: f64 = values.iter().map(|v| (v - m).exp()).sum();
    m + s.ln()
}

/// `log(exp(a) + exp(b))`.
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if !hi.is_finite() {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// Golden-section minimisation of a unimodal function on `[a, b]`.
///
/// Returns `(x_min, f(x_min))` after the bracket has shrunk below
/// `tol * (1 + |x|)` or `max_iter` shrink steps.
pub fn golden_section_min<F: Fn(f64) -> f64>(
    f: F,
    mut a: f64,
    mut b: f64,
    tol: f64,
    max_iter: usize,
) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..max_iter {
        if (b - a).abs() <= tol * (1.0 + c.abs().max(d.abs())) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Relative argument tolerance of the monotone bisection, per contract.
pub const INVERSE_REL_TOL: f64 = 1e-12;
/// Iteration cap of the monotone bisection.
pub const INVERSE_MAX_ITER: usize = 200;

/// Generalized inverse `inf { x : h(x) >= q }` of a non-decreasing function,
/// by expanding-bracket bisection inside `domain`.
///
/// Works for any monotone function object, including step functions; no
/// derivative is required. The result is accurate to a relative argument
/// tolerance of `1e-12` (200-iteration cap).
pub fn generalized_inverse<F: Fn(f64) -> f64>(h: F, q: f64, domain: (f64, f64)) -> Result<f64> {
    if !q.is_finite() {
        return Err(Error::Domain(format!("quantile level q = {q} must be finite")));
    }
    let (dom_lo, dom_hi) = domain;
    if !(dom_lo < dom_hi) {
        return Err(Error::Domain(format!("empty domain ({dom_lo}, {dom_hi})")));
    }

    // Seed the bracket with finite points inside the domain.
    let mut lo = if dom_lo.is_finite() {
        dom_lo
    } else if dom_hi.is_finite() {
        dom_hi - 1.0
    } else {
        -1.0
    };
    let mut hi = if dom_hi.is_finite() {
        dom_hi
    } else if dom_lo.is_finite() {
        dom_lo + 1.0
    } else {
        1.0
    };
    if lo >= hi {
        lo = hi - 1.0;
    }

    // Expand upward until h(hi) >= q.
    let mut expand = 1.0;
    while h(hi) < q {
        if dom_hi.is_finite() && hi >= dom_hi {
            return Err(Error::Domain(format!(
                "q = {q} exceeds the supremum of the function range"
            )));
        }
        hi = if dom_hi.is_finite() {
            dom_hi
        } else {
            let next = if hi < 1.0 { hi + expand } else { hi * 2.0 };
            expand *= 2.0;
            if next > 1e300 {
                return Err(Error::Domain(format!(
                    "q = {q} exceeds the supremum of the function range"
                )));
            }
            next
        };
    }

    // Expand downward until h(lo) < q; if the domain's lower end still
    // satisfies h >= q the infimum is attained there.
    expand = 1.0;
    while h(lo) >= q {
        if dom_lo.is_finite() && lo <= dom_lo {
            return Ok(dom_lo);
        }
        lo = if dom_lo.is_finite() {
            dom_lo.max(lo - expand)
        } else {
            let next = if lo > -1.0 { lo - expand } else { lo * 2.0 };
            if next < -1e300 {
                return Err(Error::Domain(format!(
                    "q = {q} is at or below the infimum of the function range"
                )));
            }
            next
        };
        expand *= 2.0;
    }

    // Invariant: h(lo) < q <= h(hi).
    for _ in 0..INVERSE_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if !(lo < mid && mid < hi) {
            break;
        }
        if h(mid) >= q {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= INVERSE_REL_TOL * (1.0 + mid.abs()) {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Solve a 3x3 linear system by Gaussian elimination with partial pivoting.
pub(crate) fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> Result<[f64; 3]> {
    for col in 0..3 {
        let piv = (col..3)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[piv][col].abs() < 1e-300 {
            return Err(Error::Numerical("rank-deficient design matrix".into()));
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in (col + 1)..3 {
            let f = a[row][col] / a[col][col];
            for k in col..3 {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let mut s = b[row];
        for k in (row + 1)..3 {
            s -= a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_sum_exp_deep_tail() {
        let v = [-800.0, -801.0, f64::NEG_INFINITY];
        let expect = -800.0 + (1.0 + (-1.0f64).exp()).ln();
        assert!((log_sum_exp(&v) - expect).abs() < 1e-12);
        assert_eq!(log_sum_exp(&[f64::NEG_INFINITY; 3]), f64::NEG_INFINITY);
    }

    #[test]
    fn golden_section_quadratic() {
        let (x, fx) = golden_section_min(|x| (x - 2.5) * (x - 2.5) + 1.0, 0.0, 10.0, 1e-12, 200);
        assert!((x - 2.5).abs() < 1e-6);
        assert!((fx - 1.0).abs() < 1e-12);
    }

    #[test]
    fn generalized_inverse_exp_quantile() {
        // Exp(1) cdf; q = 1 - 1/e gives exactly 1.
        let h = |x: f64| 1.0 - (-x).exp();
        let q = 1.0 - (-1.0f64).exp();
        let x = generalized_inverse(h, q, (0.0, f64::INFINITY)).unwrap();
        assert!((x - 1.0).abs() < 1e-10);
    }

    #[test]
    fn generalized_inverse_step_function() {
        let h = |x: f64| if x >= 3.0 { 1.0 } else { 0.0 };
        let x = generalized_inverse(h, 0.5, (f64::NEG_INFINITY, f64::INFINITY)).unwrap();
        assert!((x - 3.0).abs() < 1e-9);
    }

    #[test]
    fn generalized_inverse_weibull_tail() {
        // cdf of the tail exp(-u^2); q = 1 - 1e-4 solves exp(-u^2) = 1e-4.
        let h = |x: f64| 1.0 - (-x * x).exp();
        let x = generalized_inverse(h, 1.0 - 1e-4, (0.0, f64::INFINITY)).unwrap();
        assert!((x - 3.0348542587702927).abs() < 1e-9, "{x}");
    }

    #[test]
    fn generalized_inverse_never_overshoots() {
        // For continuous strictly increasing h, h^{<-}(h(x)) <= x (+1e-10).
        let cases: [(fn(f64) -> f64, f64); 3] = [
            (|x| 1.0 - (-x).exp(), 1.7),
            (|x| 1.0 - (-x * x).exp(), 2.3),
            (|x| x / (1.0 + x), 0.9),
        ];
        for (h, x) in cases {
            let inv = generalized_inverse(h, h(x), (0.0, f64::INFINITY)).unwrap();
            assert!(inv <= x + 1e-10, "{inv} > {x}");
            assert!(inv >= x - 1e-8 * (1.0 + x));
        }
    }

    #[test]
    fn generalized_inverse_out_of_range() {
        let h = |x: f64| 1.0 - (-x).exp();
        assert!(generalized_inverse(h, 1.5, (0.0, f64::INFINITY)).is_err());
    }

    #[test]
    fn generalized_inverse_infimum_at_domain_edge() {
        let h = |x: f64| 1.0 - (-x).exp();
        let x = generalized_inverse(h, 0.0, (0.0, f64::INFINITY)).unwrap();
        assert_eq!(x, 0.0);
    }

    #[test]
    fn solve3_exact() {
        let x = solve3([[2.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 4.0]], [3.0, 5.0, 5.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12);
        assert!((x[1] - 1.0).abs() < 1e-12);
        assert!((x[2] - 1.0).abs() < 1e-12);
    }
}
