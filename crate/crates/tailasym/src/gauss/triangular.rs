//! Triangular arrays of randomly scaled Gaussian processes: normalised
//! componentwise maxima that converge to the max-stable limit.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;
use rand_distr::StandardNormal;

use super::{psd_cholesky, Variogram};
use crate::asymptotics::{triangular_norming, TriangularNorming};
use crate::error::{Error, Result};
use crate::risk::TailModel;

/// Sampler of the normalised maximum `(max_{i<=n} S_i X_i(t) - d_n) / c_n`
/// over a finite time grid.
///
/// The pre-limit correlation family is `rho_n(t1, t2) = max(0, 1 - c_n
/// Gamma(t1, t2) / (2 d_n))`, the linear family matching the limit condition
/// `(2 d_n / c_n)(1 - rho_n) -> Gamma` exactly, floored at 0. If flooring
/// breaks positive semidefiniteness on larger grids the matrix is projected
/// (negative eigenvalues clipped, diagonal renormalised) and
/// [`Self::projected`] reports it.
pub struct TriangularMaxSampler {
    grid: Vec<f64>,
    n: usize,
    scaler: TailModel,
    norming: TriangularNorming,
    rho: Vec<Vec<f64>>,
    chol: Vec<Vec<f64>>,
    projected: bool,
}

impl TriangularMaxSampler {
    pub fn new(n: u64, grid: Vec<f64>, variogram: &Variogram, scaler: TailModel) -> Result<Self> {
        if grid.is_empty() {
            return Err(Error::Domain("time grid must be nonempty".into()));
        }
        if grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain("time grid must be strictly increasing".into()));
        }
        let norming = triangular_norming(n, &scaler)?;
        let (d_n, c_n) = (norming.quantile, norming.scale);
        let d = grid.len();
        let mut rho = vec![vec![0.0; d]; d];
        for i in 0..d {
            for j in 0..d {
                if i == j {
                    rho[i][j] = 1.0;
                    continue;
                }
                let g = variogram.eval(grid[i], grid[j]);
                if !(g > 0.0) {
                    return Err(Error::Domain(format!(
                        "variogram must be strictly positive off the diagonal, got {g} at \
                         ({}, {})",
                        grid[i], grid[j]
                    )));
                }
                rho[i][j] = (1.0 - c_n * g / (2.0 * d_n)).max(0.0);
            }
        }

        let (chol, projected) = match psd_cholesky(&rho) {
            Some(l) => (l, false),
            None => {
                let projected_rho = project_to_correlation(&rho)?;
                let l = psd_cholesky(&projected_rho).ok_or_else(|| {
                    Error::Numerical("correlation projection failed to produce a PSD matrix".into())
                })?;
                rho = projected_rho;
                (l, true)
            }
        };

        Ok(Self { grid, n: n as usize, scaler, norming, rho, chol, projected })
    }

    pub fn norming(&self) -> &TriangularNorming {
        self.norming_ref()
    }

    fn norming_ref(&self) -> &TriangularNorming {
        &self.norming
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn correlation(&self) -> &[Vec<f64>] {
        &self.rho
    }

    /// Whether the floored correlation matrix needed a PSD projection.
    pub fn projected(&self) -> bool {
        self.projected
    }

    /// One normalised maximum vector over the grid.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let d = self.grid.len();
        let mut maxima = vec![f64::NEG_INFINITY; d];
        let mut xi = vec![0.0f64; d];
        for _ in 0..self.n {
            let s = self.scaler.sample_one(rng);
            for x in xi.iter_mut() {
                *x = rng.sample(StandardNormal);
            }
            for i in 0..d {
                let mut acc = 0.0;
                for k in 0..=i {
                    acc += self.chol[i][k] * xi[k];
                }
                let v = s * acc;
                if v > maxima[i] {
                    maxima[i] = v;
                }
            }
        }
        let (d_n, c_n) = (self.norming.quantile, self.norming.scale);
        maxima.iter().map(|&m| (m - d_n) / c_n).collect()
    }
}

/// Clip negative eigenvalues at zero and renormalise the diagonal to 1.
fn project_to_correlation(m: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let d = m.len();
    let flat: Vec<f64> = m.iter().flat_map(|r| r.iter().copied()).collect();
    let eig = SymmetricEigen::new(DMatrix::from_row_slice(d, d, &flat));
    let clipped: Vec<f64> = eig.eigenvalues.iter().map(|&l| l.max(0.0)).collect();
    let mut out = vec![vec![0.0; d]; d];
    for i in 0..d {
        for j in 0..d {
            let mut s = 0.0;
            for k in 0..d {
                s += eig.eigenvectors[(i, k)] * clipped[k] * eig.eigenvectors[(j, k)];
            }
            out[i][j] = s;
        }
    }
    for i in 0..d {
        if out[i][i] <= 0.0 {
            return Err(Error::Numerical("projection produced a zero-variance component".into()));
        }
    }
    let scale: Vec<f64> = (0..d).map(|i| out[i][i].sqrt()).collect();
    for i in 0..d {
        for j in 0..d {
            out[i][j] /= scale[i] * scale[j];
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::risk::BoundedScaler;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn point_mass() -> TailModel {
        TailModel::Bounded(BoundedScaler::PointMassOne)
    }

    #[test]
    fn pair_correlation_satisfies_limit_family() {
        let vg = Variogram::power(2.0, 1.0).unwrap();
        let s = TriangularMaxSampler::new(1000, vec![0.0, 1.0], &vg, point_mass()).unwrap();
        let norm = s.norming();
        let rho = s.correlation()[0][1];
        // (2 d_n / c_n) (1 - rho_n) = Gamma exactly for the linear family
        let lhs = 2.0 * norm.quantile / norm.scale * (1.0 - rho);
        assert!((lhs - 2.0).abs() < 1e-9, "{lhs}");
        assert!(!s.projected());
    }

    #[test]
    fn affine_identity_for_n_two_single_point() {
        // with S = 1 and a single grid point the sampler is an affine map of
        // the maximum of n standard normals drawn in order
        let vg = Variogram::power(1.0, 1.0).unwrap();
        let s = TriangularMaxSampler::new(2, vec![0.0], &vg, point_mass()).unwrap();
        let out = s.sample(&mut ChaCha8Rng::seed_from_u64(123));
        let mut rng = ChaCha8Rng::seed_from_u64(123);
        let a: f64 = rng.sample(StandardNormal);
        let b: f64 = rng.sample(StandardNormal);
        let norm = s.norming();
        let expect = (a.max(b) - norm.quantile) / norm.scale;
        assert!((out[0] - expect).abs() < 1e-14);
    }

    #[test]
    fn rejects_n_below_two_and_zero_variograms() {
        let vg = Variogram::power(1.0, 1.0).unwrap();
        assert!(TriangularMaxSampler::new(1, vec![0.0], &vg, point_mass()).is_err());
        let zero = Variogram::power(0.0, 1.0).unwrap();
        assert!(TriangularMaxSampler::new(100, vec![0.0, 1.0], &zero, point_mass()).is_err());
    }

    #[test]
    fn normalized_maxima_center_near_gumbel_range() {
        let vg = Variogram::power(1.0, 1.0).unwrap();
        let s = TriangularMaxSampler::new(1000, vec![0.0], &vg, point_mass()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = 2000;
        let mean: f64 = (0..m).map(|_| s.sample(&mut rng)[0]).sum::<f64>() / m as f64;
        // Gumbel mean is gamma ~ 0.5772; allow a wide band (pre-limit bias)
        assert!((mean - 0.5772).abs() < 0.25, "{mean}");
    }

    #[test]
    fn projection_path_produces_correlation_matrix() {
        // force flooring on a wide grid with a strong kernel so the floored
        // matrix risks indefiniteness; the sampler must still construct
        let vg = Variogram::power(30.0, 1.9).unwrap();
        let grid: Vec<f64> = (0..12).map(|i| i as f64 * 0.5).collect();
        let s = TriangularMaxSampler::new(100, grid, &vg, point_mass()).unwrap();
        for i in 0..s.correlation().len() {
            assert!((s.correlation()[i][i] - 1.0).abs() < 1e-9);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let v = s.sample(&mut rng);
        assert!(v.iter().all(|x| x.is_finite()));
    }
}
