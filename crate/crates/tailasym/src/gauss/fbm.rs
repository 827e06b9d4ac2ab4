//! Exact-in-distribution fractional Brownian motion via circulant embedding
//! of the increment covariance (Davies-Harte), with a Cholesky fallback for
//! small grids.

use std::sync::Arc;

use rand::Rng;
use rand_distr::StandardNormal;
use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use super::psd_cholesky;
use crate::error::{Error, Result};

/// Grid size up to which the Cholesky fallback is considered.
const CHOLESKY_LIMIT: usize = 1024;

/// Autocovariance of unit-spacing fractional Gaussian noise.
fn fgn_autocov(hurst: f64, k: usize) -> f64 {
    let k = k as f64;
    let h2 = 2.0 * hurst;
    0.5 * ((k + 1.0).powf(h2) - 2.0 * k.powf(h2) + (k - 1.0).abs().powf(h2))
}

enum Method {
    Circulant {
        // per-frequency noise scale sqrt(lambda_k / (2n)) (halved off the
        // real axis), plus the shared FFT plan
        scale: Vec<f64>,
        fft: Arc<dyn Fft<f64>>,
    },
    Cholesky {
        factor: Vec<Vec<f64>>,
    },
}

/// Sampler of fractional Brownian motion on a uniform grid of `n_steps`
/// increments; covariance factorisations are computed once and shared
/// read-only across draws.
pub struct FbmSampler {
    hurst: f64,
    n_steps: usize,
    method: Method,
}

impl FbmSampler {
    pub fn new(hurst: f64, n_steps: usize) -> Result<Self> {
        if !(hurst > 0.0 && hurst < 1.0) {
            return Err(Error::Domain(format!("Hurst index must lie in (0, 1), got {hurst}")));
        }
        if n_steps < 1 {
            return Err(Error::Domain("need at least one increment".into()));
        }

        // circulant first row: [gamma_0..gamma_n, gamma_{n-1}..gamma_1]
        let n = n_steps;
        let m = 2 * n;
        let mut row: Vec<Complex<f64>> = Vec::with_capacity(m);
        for k in 0..=n {
            row.push(Complex::new(fgn_autocov(hurst, k), 0.0));
        }
        for k in (1..n).rev() {
            row.push(Complex::new(fgn_autocov(hurst, k), 0.0));
        }
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(m);
        fft.process(&mut row);

        let max_ev = row.iter().map(|c| c.re).fold(0.0f64, f64::max);
        let min_ev = row.iter().map(|c| c.re).fold(f64::INFINITY, f64::min);
        if min_ev < -1e-8 * max_ev {
            // the fractional Gaussian noise embedding is nonnegative in
            // theory; a material violation means the grid is unusable
            if n_steps + 1 <= CHOLESKY_LIMIT {
                return Self::new_cholesky(hurst, n_steps);
            }
            return Err(Error::Numerical(format!(
                "circulant embedding produced eigenvalue {min_ev:.3e} (max {max_ev:.3e}); \
                 reduce the grid to at most {CHOLESKY_LIMIT} points for the Cholesky fallback"
            )));
        }
        let scale: Vec<f64> = row
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let lam = c.re.max(0.0);
                let base = lam / m as f64;
                if k == 0 || k == n {
                    base.sqrt()
                } else {
                    (base / 2.0).sqrt()
                }
            })
            .collect();
        Ok(Self { hurst, n_steps, method: Method::Circulant { scale, fft } })
    }

    /// Direct Cholesky of the increment covariance; exact for any grid that
    /// fits, O(n^2) per draw.
    pub fn new_cholesky(hurst: f64, n_steps: usize) -> Result<Self> {
        if !(hurst > 0.0 && hurst < 1.0) {
            return Err(Error::Domain(format!("Hurst index must lie in (0, 1), got {hurst}")));
        }
        if n_steps < 1 || n_steps + 1 > CHOLESKY_LIMIT {
            return Err(Error::Domain(format!(
                "Cholesky sampler supports 1..={} grid points, got {}",
                CHOLESKY_LIMIT,
                n_steps + 1
            )));
        }
        let cov: Vec<Vec<f64>> = (0..n_steps)
            .map(|i| (0..n_steps).map(|j| fgn_autocov(hurst, i.abs_diff(j))).collect())
            .collect();
        let factor = psd_cholesky(&cov)
            .ok_or_else(|| Error::Numerical("increment covariance is not PSD".into()))?;
        Ok(Self { hurst, n_steps, method: Method::Cholesky { factor } })
    }

    pub fn hurst(&self) -> f64 {
        self.hurst
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    /// One realisation of unit-spacing fractional Gaussian noise.
    pub fn sample_unit_fgn<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        match &self.method {
            Method::Circulant { scale, fft } => {
                let n = self.n_steps;
                let m = 2 * n;
                let mut a: Vec<Complex<f64>> = vec![Complex::new(0.0, 0.0); m];
                a[0] = Complex::new(scale[0] * rng.sample::<f64, _>(StandardNormal), 0.0);
                a[n] = Complex::new(scale[n] * rng.sample::<f64, _>(StandardNormal), 0.0);
                for k in 1..n {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    a[k] = Complex::new(scale[k] * re, scale[k] * im);
                    a[m - k] = a[k].conj();
                }
                fft.process(&mut a);
                a.truncate(n);
                a.iter().map(|c| c.re).collect()
            }
            Method::Cholesky { factor } => {
                let n = self.n_steps;
                let xi: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
                (0..n)
                    .map(|i| factor[i][..=i].iter().zip(&xi).map(|(l, x)| l * x).sum())
                    .collect()
            }
        }
    }

    /// One path on the uniform grid `0, spacing, ..., n_steps * spacing`,
    /// pinned at `X(0) = 0`. Self-similarity turns the unit-spacing noise
    /// into any spacing via the factor `spacing^H`.
    pub fn sample_path<R: Rng + ?Sized>(&self, spacing: f64, rng: &mut R) -> Vec<f64> {
        let scale = spacing.powf(self.hurst);
        let fgn = self.sample_unit_fgn(rng);
        let mut path = Vec::with_capacity(self.n_steps + 1);
        let mut acc = 0.0;
        path.push(0.0);
        for inc in fgn {
            acc += inc;
            path.push(acc * scale);
        }
        path
    }
}

/// Sample fractional Brownian motion on an explicit uniform grid starting at
/// 0. The grid must be `0 = t_0 < t_1 < ...` with equal spacing (relative
/// tolerance 1e-9); a power of two plus one points makes the embedded FFT
/// fastest but any length works.
pub fn fbm_sample<R: Rng + ?Sized>(hurst: f64, grid: &[f64], rng: &mut R) -> Result<Vec<f64>> {
    if grid.len() < 2 {
        return Err(Error::Domain("grid needs at least two points".into()));
    }
    if grid[0] != 0.0 {
        return Err(Error::Domain("grid must start at 0 (the process is pinned there)".into()));
    }
    let spacing = grid[1] - grid[0];
    if !(spacing > 0.0) {
        return Err(Error::Domain("grid must be strictly increasing".into()));
    }
    for w in grid.windows(2) {
        let d = w[1] - w[0];
        if (d - spacing).abs() > 1e-9 * spacing.max(1.0) {
            return Err(Error::Domain(format!(
                "grid spacing is not uniform: {d} vs {spacing}"
            )));
        }
    }
    let sampler = FbmSampler::new(hurst, grid.len() - 1)?;
    Ok(sampler.sample_path(spacing, rng))
}
