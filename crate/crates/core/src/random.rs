//! Seeded random instances for property checks and verification suites.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::matrix::{ComplexMatrix, GaussianMatrix};
use crate::svd::operator_norm;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries with independent standard normal real and imaginary parts.
pub fn complex_gaussian(rng: &mut TestRng, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Gaussian integers with both parts uniform in `[-bound, bound]`.
pub fn gaussian_int(rng: &mut TestRng, n: usize, bound: i64) -> GaussianMatrix {
    GaussianMatrix::from_fn(n, n, |_, _| {
        Complex::new(
            BigInt::from(rng.random_range(-bound..=bound)),
            BigInt::from(rng.random_range(-bound..=bound)),
        )
    })
}

/// Unitary matrix from Gram-Schmidt on a complex Gaussian matrix, with the
/// phases fixed so the distribution is Haar.
pub fn haar_unitary(rng: &mut TestRng, n: usize) -> ComplexMatrix {
    loop {
        let g = complex_gaussian(rng, n);
        let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| g.column(j)).collect();
        let mut ok = true;
        for j in 0..n {
            for p in 0..j {
                let proj: Complex64 = (0..n).map(|i| cols[p][i].conj() * cols[j][i]).sum();
                for i in 0..n {
                    let v = cols[p][i];
                    cols[j][i] -= proj * v;
                }
            }
            let norm = cols[j].iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
            if norm < 1e-12 {
                ok = false;
                break;
            }
            // R's diagonal becomes the positive real `norm`
            for v in cols[j].iter_mut() {
                *v /= norm;
            }
        }
        if ok {
            return ComplexMatrix::from_fn(n, n, |i, j| cols[j][i]);
        }
    }
}

/// A complex Gaussian matrix rescaled to operator norm 1.
pub fn unit_norm(rng: &mut TestRng, n: usize) -> Result<ComplexMatrix> {
    let g = complex_gaussian(rng, n);
    let s = operator_norm(&g)?;
    Ok(g.scale(&Complex64::new(1.0 / s, 0.0)))
}

/// Unit-norm direction: alternately a Haar unitary (an extreme point of the
/// unit ball) and a rescaled Gaussian matrix.
pub fn unit_direction(rng: &mut TestRng, n: usize, draw: usize) -> Result<ComplexMatrix> {
    if draw.is_multiple_of(2) {
        Ok(haar_unitary(rng, n))
    } else {
        unit_norm(rng, n)
    }
}
