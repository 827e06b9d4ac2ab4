//! Suprema of stationary-increment Gaussian processes over random intervals.

use rand::Rng;

use super::{FbmSampler, VarianceFamily, VarianceModel};
use crate::error::{Error, Result};
use crate::risk::TailModel;

/// One supremum draw.
#[derive(Debug, Clone, Copy)]
pub struct SupDraw {
    /// The sampled interval length.
    pub horizon: f64,
    /// Discrete maximum of the path over `[0, horizon]`. The discrete
    /// maximum underestimates the continuous supremum; the bias is one-sided
    /// and shrinks with the step (quantify it with a refinement study, never
    /// hide it).
    pub sup: f64,
    /// Path value at the right endpoint.
    pub endpoint: f64,
    /// Horizon draws discarded against `max_horizon` before this one.
    pub rejections: u32,
}

/// Repeated-draw sampler: the covariance factorisation of the unit-grid
/// process is computed once; self-similarity rescales it to each sampled
/// horizon.
pub struct SupIntervalSampler {
    horizon_dist: TailModel,
    steps: usize,
    max_horizon: f64,
    fbm: FbmSampler,
    hurst: f64,
    sigma_coeff: f64,
}

impl SupIntervalSampler {
    /// `steps` is the number of grid intervals per unit horizon (the default
    /// study uses `2^10`); `max_horizon` bounds the accepted interval draws,
    /// with rejections counted per draw.
    pub fn new(
        variance: VarianceModel,
        horizon_dist: TailModel,
        steps: usize,
        max_horizon: f64,
    ) -> Result<Self> {
        if steps < 2 {
            return Err(Error::Domain(format!("need at least 2 grid steps, got {steps}")));
        }
        if !(max_horizon > 0.0) {
            return Err(Error::Domain("max horizon must be positive".into()));
        }
        let (hurst, sigma_coeff) = match variance.family {
            VarianceFamily::Fbm { hurst } => (hurst, 1.0),
            VarianceFamily::PowerRv { alpha, coeff } => {
                if alpha >= 2.0 {
                    return Err(Error::Unsupported(
                        "alpha = 2 is the degenerate linear process; use the fbm family with \
                         H < 1 for exact simulation"
                            .into(),
                    ));
                }
                (alpha / 2.0, coeff)
            }
        };
        let fbm = FbmSampler::new(hurst, steps)?;
        Ok(Self { horizon_dist, steps, max_horizon, fbm, hurst, sigma_coeff })
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Draw the interval length, simulate the path on `[0, horizon]` and
    /// return the discrete maximum together with the endpoint value.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<SupDraw> {
        let mut rejections = 0u32;
        let horizon = loop {
            let t = self.horizon_dist.sample_one(rng);
            if t > 0.0 && t <= self.max_horizon {
                break t;
            }
            rejections += 1;
            if rejections > 10_000 {
                return Err(Error::Numerical(format!(
                    "10000 consecutive horizon draws exceeded max_horizon = {}",
                    self.max_horizon
                )));
            }
        };
        // X(s * horizon) = sigma_coeff * horizon^H * Xunit(s) in distribution
        let scale = self.sigma_coeff * horizon.powf(self.hurst);
        let path = self.fbm.sample_path(1.0 / self.steps as f64, rng);
        let mut sup = f64::NEG_INFINITY;
        for &x in &path {
            if x > sup {
                sup = x;
            }
        }
        Ok(SupDraw {
            horizon,
            sup: sup * scale,
            endpoint: path[self.steps] * scale,
            rejections,
        })
    }
}

/// One draw of the supremum over a random interval, with the grid resolution
/// given as a relative step (`grid_step = 2^-10` means 1024 intervals).
pub fn sup_over_random_interval<R: Rng + ?Sized>(
    model: VarianceModel,
    horizon_dist: &TailModel,
    grid_step: f64,
    rng: &mut R,
) -> Result<SupDraw> {
    if !(grid_step > 0.0 && grid_step < 1.0) {
        return Err(Error::Domain(format!("grid step must lie in (0, 1), got {grid_step}")));
    }
    let steps = (1.0 / grid_step).round() as usize;
    let sampler = SupIntervalSampler::new(model, horizon_dist.clone(), steps, 1e9)?;
    sampler.draw(rng)
}
