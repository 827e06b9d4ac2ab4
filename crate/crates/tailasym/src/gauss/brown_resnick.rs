//! Max-stable process sampling: the pointwise maximum over Poisson points
//! `Ups_1 > Ups_2 > ...` (intensity `e^{-x} dx`) of `Ups_i + Z_i(t) -
//! sigma^2(t)/2`, with `Z_i` centred Gaussian processes whose incremental
//! variance is a given variogram.

use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use super::{psd_cholesky, Variogram};
use crate::error::{Error, Result};

/// Hard cap on the Poisson expansion length.
const POINT_CAP: usize = 100_000;
/// Per-draw bound on the expected number of truncated contributions.
const TAIL_BOUND: f64 = 1e-9;

/// One finite-dimensional draw.
#[derive(Debug, Clone)]
pub struct BrownResnickDraw {
    /// Process values on the sampler grid.
    pub values: Vec<f64>,
    /// Poisson points actually spent.
    pub points_used: usize,
}

/// Finite-dimensional sampler on a fixed time grid.
///
/// The Gaussian increments are anchored at the first grid point `t0`:
/// `Z(t0) = 0` and `sigma^2(t) = Gamma(t0, t)`. The law of the maximum
/// depends on the variogram only up to this choice, because the compensator
/// `-sigma^2(t)/2` uses the matching variance.
pub struct BrownResnickSampler {
    grid: Vec<f64>,
    sigma2: Vec<f64>,
    sigma: Vec<f64>,
    chol: Vec<Vec<f64>>,
    min_points: usize,
}

impl BrownResnickSampler {
    pub fn new(variogram: &Variogram, grid: Vec<f64>, min_points: usize) -> Result<Self> {
        if grid.is_empty() {
            return Err(Error::Domain("time grid must be nonempty".into()));
        }
        if grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain("time grid must be strictly increasing".into()));
        }
        if min_points < 10 {
            return Err(Error::Domain(format!("need at least 10 points, got {min_points}")));
        }
        let t0 = grid[0];
        let sigma2: Vec<f64> = grid.iter().map(|&t| variogram.eval(t0, t)).collect();
        let d = grid.len();
        let mut cov = vec![vec![0.0; d]; d];
        for i in 0..d {
            for j in 0..d {
                let g = variogram.eval(grid[i], grid[j]);
                let g_ji = variogram.eval(grid[j], grid[i]);
                if (g - g_ji).abs() > 1e-12 * (1.0 + g.abs()) {
                    return Err(Error::Domain("variogram is not symmetric".into()));
                }
                cov[i][j] = 0.5 * (sigma2[i] + sigma2[j] - g);
            }
            if variogram.eval(grid[i], grid[i]).abs() > 1e-12 {
                return Err(Error::Domain("variogram must vanish on the diagonal".into()));
            }
        }
        let chol = psd_cholesky(&cov).ok_or_else(|| {
            Error::Domain("variogram-induced covariance is not positive semidefinite on this grid".into())
        })?;
        let sigma = sigma2.iter().map(|v| v.sqrt()).collect();
        Ok(Self { grid, sigma2, sigma, chol, min_points })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    /// Upper bound on the expected number of contributing points among those
    /// below `upsilon`, given current maxima: union bound over the grid with
    /// `Phibar(x) <= exp(-x^2/2)/2` (x >= 0) in place of the exact Gaussian
    /// tail, so the check costs one `exp` per grid point.
    fn truncation_bound(&self, maxima: &[f64], upsilon: f64) -> f64 {
        let mut total = 0.0;
        for (t, (&s2, &s)) in self.sigma2.iter().zip(&self.sigma).enumerate() {
            if s == 0.0 {
                continue; // anchored point: dominated by the first Poisson point
            }
            let m = maxima[t];
            let x = (m - 0.5 * s2 - upsilon) / s;
            if x < 0.0 {
                return f64::INFINITY; // cannot stop yet
            }
            total += 0.5 * (-m - 0.5 * x * x).exp();
        }
        total
    }

    /// One draw. The expansion stops once at least `min_points` Poisson
    /// points are spent and the expected truncated contribution drops below
    /// `1e-9`, with a hard cap of `1e5` points; requesting more points at a
    /// matched seed cannot change the sampled vector beyond that bound.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BrownResnickDraw {
        let d = self.grid.len();
        let mut maxima = vec![f64::NEG_INFINITY; d];
        let mut e_sum = 0.0f64;
        let mut used = 0usize;
        let mut z = vec![0.0f64; d];
        let mut xi = vec![0.0f64; d];
        loop {
            used += 1;
            let e: f64 = rng.sample(Exp1);
            e_sum += e;
            let upsilon = -e_sum.ln();
            for x in xi.iter_mut() {
                *x = rng.sample(StandardNormal);
            }
            for i in 0..d {
                let mut acc = 0.0;
                for k in 0..=i {
                    acc += self.chol[i][k] * xi[k];
                }
                z[i] = acc;
            }
            for i in 0..d {
                let cand = upsilon + z[i] - 0.5 * self.sigma2[i];
                if cand > maxima[i] {
                    maxima[i] = cand;
                }
            }
            if used >= self.min_points && self.truncation_bound(&maxima, upsilon) < TAIL_BOUND {
                break;
            }
            if used >= POINT_CAP {
                break;
            }
        }
        BrownResnickDraw { values: maxima, points_used: used }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::{gumbel_cdf, ks_critical_95, ks_statistic};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn sampler_unit() -> BrownResnickSampler {
        let vg = Variogram::power(1.0, 1.0).unwrap();
        BrownResnickSampler::new(&vg, vec![0.0, 1.0], 10).unwrap()
    }

    #[test]
    fn anchored_point_is_exactly_gumbel_largest_point() {
        // at t0 the process equals Ups_1 = -log E1, a standard Gumbel
        let s = sampler_unit();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let draws: Vec<f64> = (0..4000).map(|_| s.sample(&mut rng).values[0]).collect();
        let d = ks_statistic(&draws, gumbel_cdf).unwrap();
        assert!(d <= ks_critical_95(4000), "{d}");
    }

    #[test]
    fn marginal_is_standard_gumbel_off_anchor() {
        let s = sampler_unit();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let draws: Vec<f64> = (0..4000).map(|_| s.sample(&mut rng).values[1]).collect();
        let d = ks_statistic(&draws, gumbel_cdf).unwrap();
        assert!(d <= ks_critical_95(4000), "{d}");
    }

    #[test]
    fn degenerate_kernel_collapses_across_time() {
        let vg = Variogram::power(0.0, 1.0).unwrap();
        let s = BrownResnickSampler::new(&vg, vec![0.0, 0.5, 1.0], 10).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let draw = s.sample(&mut rng);
            assert!((draw.values[0] - draw.values[1]).abs() < 1e-14);
            assert!((draw.values[0] - draw.values[2]).abs() < 1e-14);
        }
    }

    #[test]
    fn truncation_is_sound_at_matched_seeds() {
        let vg = Variogram::power(1.0, 1.0).unwrap();
        let lean = BrownResnickSampler::new(&vg, vec![0.0, 1.0], 10).unwrap();
        let rich = BrownResnickSampler::new(&vg, vec![0.0, 1.0], 64).unwrap();
        for seed in 0..30 {
            let a = lean.sample(&mut ChaCha8Rng::seed_from_u64(seed));
            let b = rich.sample(&mut ChaCha8Rng::seed_from_u64(seed));
            assert!(b.points_used >= 64);
            for (x, y) in a.values.iter().zip(&b.values) {
                assert_eq!(x.to_bits(), y.to_bits(), "seed {seed}");
            }
        }
    }

    #[test]
    fn max_stability_smoke() {
        // max of two independent draws minus log 2 is again standard Gumbel
        let s = sampler_unit();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let draws: Vec<f64> = (0..5000)
            .map(|_| {
                let a = s.sample(&mut rng).values[1];
                let b = s.sample(&mut rng).values[1];
                a.max(b) - 2.0f64.ln()
            })
            .collect();
        let d = ks_statistic(&draws, gumbel_cdf).unwrap();
        assert!(d <= ks_critical_95(5000), "{d}");
    }

    #[test]
    fn non_psd_kernel_rejected() {
        // |h|^3 is not negative definite on three points
        let bad = Variogram::Custom(Arc::new(|s: f64, t: f64| (s - t).abs().powi(3)));
        assert!(BrownResnickSampler::new(&bad, vec![0.0, 1.0, 2.0], 10).is_err());
    }

    #[test]
    fn input_validation() {
        let vg = Variogram::power(1.0, 1.0).unwrap();
        assert!(BrownResnickSampler::new(&vg, vec![], 10).is_err());
        assert!(BrownResnickSampler::new(&vg, vec![0.0, 0.0], 10).is_err());
        assert!(BrownResnickSampler::new(&vg, vec![0.0, 1.0], 5).is_err());
    }

    #[test]
    fn expansion_length_is_moderate() {
        let s = sampler_unit();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let draw = s.sample(&mut rng);
        assert!(draw.points_used >= 10);
        assert!(draw.points_used < 50_000, "{}", draw.points_used);
    }
}
