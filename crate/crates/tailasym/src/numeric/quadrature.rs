//! Adaptive Gauss-Kronrod quadrature (61-point panels).

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::gk61::{WG30, WGK61, XGK61};
use crate::error::{Error, Result};

/// One evaluated panel.
#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    integral: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Error rescaling from QUADPACK: damps the raw |K - G| difference using the
/// integral of |f - mean| so that rough integrands do not report spuriously
/// tight errors.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

fn eval_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = WGK61[0] * fc;
    let mut gauss = 0.0;
    let mut res_abs = WGK61[0] * fc.abs();
    let mut vals = [0.0f64; 61];
    vals[0] = fc;
    for i in 1..31 {
        let dx = h * XGK61[i];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        vals[2 * i - 1] = f1;
        vals[2 * i] = f2;
        kron += WGK61[i] * (f1 + f2);
        res_abs += WGK61[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            gauss += WG30[(i - 1) / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kron;
    let mut res_asc = WGK61[0] * (fc - mean).abs();
    for i in 1..31 {
        res_asc += WGK61[i] * ((vals[2 * i - 1] - mean).abs() + (vals[2 * i] - mean).abs());
    }
    let err = rescale_error((kron - gauss) * h, res_abs * h.abs(), res_asc * h.abs());
    Panel { a, b, integral: kron * h, error: err }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct AdaptiveResult {
    pub integral: f64,
    pub abs_error: f64,
    pub panels: usize,
}

/// Integrate `f` over `[a, b]`, splitting the worst panel until the summed
/// error estimate drops below `abs_tol` or `max_panels` panels are in use.
///
/// Failing to reach the tolerance within the panel budget is an error, never
/// a silently inaccurate value.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_panels: usize,
) -> Result<AdaptiveResult> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::Domain(format!("bad integration interval [{a}, {b}]")));
    }
    let mut heap = BinaryHeap::new();
    heap.push(eval_panel(&f, a, b));
    let mut total_err: f64 = heap.peek().unwrap().error;
    while total_err > abs_tol && heap.len() < max_panels {
        let worst = heap.pop().unwrap();
        total_err -= worst.error;
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            // interval no longer splittable in f64; accept it
            heap.push(worst);
            break;
        }
        let left = eval_panel(&f, worst.a, mid);
        let right = eval_panel(&f, mid, worst.b);
        total_err += left.error + right.error;
        heap.push(left);
        heap.push(right);
    }
    let integral: f64 = heap.iter().map(|p| p.integral).sum();
    let abs_error: f64 = heap.iter().map(|p| p.error).sum();
    if abs_error > abs_tol.max(1e-6 * integral.abs()) && heap.len() >= max_panels {
        return Err(Error::Numerical(format!(
            "adaptive quadrature did not reach tolerance {abs_tol:.3e} within {max_panels} panels \
             (error estimate {abs_error:.3e})"
        )));
    }
    Ok(AdaptiveResult { integral, abs_error, panels: heap.len() })
}
