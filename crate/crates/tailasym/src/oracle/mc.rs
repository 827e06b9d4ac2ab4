//! Conditional Monte Carlo for product tails.
//!
//! The estimator averages `exp(log_tail1(u / S_j))` over draws `S_j` of the
//! second factor. Conditioning on the scaler makes it exactly unbiased for
//! `P(Y1 Y2 > u)` and usable arbitrarily deep in the tail: no rare event has
//! to be hit by sampling `Y1`, and the variance is finite whenever the
//! squared conditional tail is integrable, which holds for all Weibullian
//! pairs.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::log_sum_exp;
use crate::risk::TailModel;

/// Fixed chunk size: chunk boundaries depend on the draw index only, never on
/// the scheduler, so results are bit-identical for a fixed `(seed, m)`
/// regardless of worker count.
const CHUNK: usize = 4096;

pub use crate::parallel::substream;

/// Conditional Monte Carlo estimate of a log product tail.
#[derive(Debug, Clone, Copy)]
pub struct McTailEstimate {
    /// `log` of the sample mean of the conditional tails.
    pub log_estimate: f64,
    /// Delta-method standard error of `log_estimate`.
    pub se_of_log: f64,
    /// Every summand was `-inf`: `u` is too deep for the drawn scaler range.
    pub degenerate: bool,
}

/// Estimate `log P(Y1 Y2 > u)` from `m` scaler draws.
pub fn conditional_mc_tail(
    u: f64,
    y1: &TailModel,
    y2: &TailModel,
    m: usize,
    seed: u64,
) -> Result<McTailEstimate> {
    if !(u > 0.0 && u.is_finite()) {
        return Err(Error::Domain(format!("conditional MC requires finite u > 0, got {u}")));
    }
    if m < 100 {
        return Err(Error::Domain(format!("sample count must be at least 100, got {m}")));
    }

    let n_chunks = m.div_ceil(CHUNK);
    let chunks: Vec<(f64, f64)> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = substream(seed, c as u64);
            let count = CHUNK.min(m - c * CHUNK);
            let mut terms = Vec::with_capacity(count);
            for _ in 0..count {
                let s = y2.sample_one(&mut rng);
                let lt = if s > 0.0 && u / s > 0.0 && (u / s).is_finite() {
                    y1.log_tail(u / s).unwrap_or(f64::NEG_INFINITY)
                } else {
                    f64::NEG_INFINITY
                };
                terms.push(lt);
            }
            let l1 = log_sum_exp(&terms);
            for t in &mut terms {
                *t *= 2.0;
            }
            let l2 = log_sum_exp(&terms);
            (l1, l2)
        })
        .collect();

    // reduce in chunk order (fixed floating-point summation order)
    let l1: Vec<f64> = chunks.iter().map(|c| c.0).collect();
    let l2: Vec<f64> = chunks.iter().map(|c| c.1).collect();
    let log_m = (m as f64).ln();
    let log_estimate = log_sum_exp(&l1) - log_m;
    if log_estimate == f64::NEG_INFINITY {
        return Ok(McTailEstimate {
            log_estimate,
            se_of_log: f64::INFINITY,
            degenerate: true,
        });
    }
    let log_m2 = log_sum_exp(&l2) - log_m;
    // se(log p) ~ se(p)/p = sqrt((E[q^2]/p^2 - 1)/m)
    let d = (log_m2 - 2.0 * log_estimate).max(0.0);
    let se_of_log = (d.exp_m1().max(0.0) / m as f64).sqrt();
    Ok(McTailEstimate { log_estimate, se_of_log, degenerate: false })
}
