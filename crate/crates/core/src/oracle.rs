//! Reference values computed without any of the derivative formulas.
//!
//! [`mixed_partial_interp`] samples `φ(A + t_1 X^1 + ... + t_k X^k)` on the
//! grid `{0, ..., d}^k`, where `d` bounds the degree of `φ` in each `t_i`,
//! and extracts the coefficient of `t_1 ⋯ t_k` by Lagrange interpolation one
//! variable at a time. With Gaussian-integer inputs every step is exact.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_traits::Zero;

use crate::charpoly::{g_r, CharPolyCoefficients};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, Matrix};
use crate::multiindex::factorial;
use crate::parallel;
use crate::permanent::per;
use crate::scalar::{sum_ordered, GaussianInt, Scalar};

pub const MAX_ORDER: usize = 8;
pub const MAX_MATRIX_ORDER: usize = 6;
pub const MAX_GRID_POINTS: u128 = 1 << 20;

/// The matrix function being differentiated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Functional {
    Permanent,
    /// `g_r`, the sum of the `r x r` principal minors.
    CharCoefficient(usize),
}

impl Functional {
    pub fn eval<T: Scalar>(self, m: &Matrix<T>) -> Result<T> {
        match self {
            Functional::Permanent => per(m),
            Functional::CharCoefficient(r) => g_r(m, r),
        }
    }

    /// Bound on the degree in each `t_i` of `φ(A + Σ t_i X^i)`.
    pub fn degree(self, n: usize) -> usize {
        match self {
            Functional::Permanent => n,
            Functional::CharCoefficient(r) => r,
        }
    }
}

/// Arithmetic used by the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarField {
    /// Gaussian integers, with rational weights cleared to integers.
    ExactRationalComplex,
    FloatingComplex,
}

impl ScalarField {
    pub fn name(self) -> &'static str {
        match self {
            ScalarField::ExactRationalComplex => "exact",
            ScalarField::FloatingComplex => "floating",
        }
    }
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScalarField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(ScalarField::ExactRationalComplex),
            "floating" => Ok(ScalarField::FloatingComplex),
            other => Err(Error::OutOfRange(format!("unknown mode {other:?}"))),
        }
    }
}

/// Scalars the interpolation can be carried out in.
pub trait Interpolable: Scalar {
    /// `Σ_j weights_j · values_j / scale`; for exact scalars the division
    /// must leave no remainder.
    fn weighted_sum(values: &[Self], weights: &[i64], scale: &BigInt) -> Result<Self>;
}

impl Interpolable for Complex64 {
    fn weighted_sum(values: &[Self], weights: &[i64], scale: &BigInt) -> Result<Self> {
        let s = num_traits::ToPrimitive::to_f64(scale).unwrap_or(f64::INFINITY);
        let total = sum_ordered(values.iter().zip(weights).map(|(v, &w)| v * w as f64));
        Ok(total / s)
    }
}

impl Interpolable for GaussianInt {
    fn weighted_sum(values: &[Self], weights: &[i64], scale: &BigInt) -> Result<Self> {
        let total = sum_ordered(
            values
                .iter()
                .zip(weights)
                .map(|(v, &w)| v * Complex::new(BigInt::from(w), BigInt::zero())),
        );
        if !(&total.re % scale).is_zero() || !(&total.im % scale).is_zero() {
            return Err(Error::NonInteger { row: 0, col: 0 });
        }
        Ok(Complex::new(total.re / scale, total.im / scale))
    }
}

/// `d!` times the coefficient of `t` in the Lagrange basis polynomial
/// `L_j(t) = Π_{m≠j} (t - m)/(j - m)` on the nodes `0..=d`.
pub fn lagrange_linear_weights(d: usize) -> Vec<i64> {
    (0..=d)
        .map(|j| {
            // coefficient of t in Π_{m≠j} (t - m)
            let others: Vec<i64> = (0..=d as i64).filter(|&m| m != j as i64).collect();
            let linear: i64 = (0..others.len())
                .map(|skip| {
                    others
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &m)| -m)
                        .product::<i64>()
                })
                .sum();
            // d! / Π_{m≠j} (j - m) = (-1)^{d-j} C(d, j)
            let binom = (factorial(d) / (factorial(j) * factorial(d - j))) as i64;
            let sign = if (d - j).is_multiple_of(2) { 1 } else { -1 };
            sign * binom * linear
        })
        .collect()
}

/// Coefficient of `t_1 ⋯ t_k` in `φ(A + t_1 X^1 + ... + t_k X^k)`, which is
/// `D^k φ(A)(X^1, ..., X^k)`.
pub fn mixed_partial_interp<T: Interpolable>(phi: Functional, a: &Matrix<T>, directions: &[Matrix<T>]) -> Result<T> {
    let n = crate::derivatives::validate(a, directions)?;
    let k = directions.len();
    if k > MAX_ORDER {
        return Err(Error::TooLarge {
            what: "interpolation order",
            order: k,
            limit: MAX_ORDER,
        });
    }
    if n > MAX_MATRIX_ORDER {
        return Err(Error::TooLarge {
            what: "interpolation matrix order",
            order: n,
            limit: MAX_MATRIX_ORDER,
        });
    }
    let d = phi.degree(n);
    let side = d + 1;
    let points = (side as u128).pow(k as u32);
    if points > MAX_GRID_POINTS {
        return Err(Error::GridOverflow {
            points,
            limit: MAX_GRID_POINTS,
        });
    }

    // grid point p has t_i = digit i of p in base `side`, t_1 most significant
    let mut values = parallel::try_map_range(0..points as usize, |p| {
        let mut m = a.clone();
        let mut rest = p;
        for i in (0..k).rev() {
            let t = rest % side;
            rest /= side;
            if t != 0 {
                m = m.add_scaled(&T::from_u64(t as u64), &directions[i])?;
            }
        }
        phi.eval(&m)
    })?;

    let weights = lagrange_linear_weights(d);
    let scale = BigInt::from(factorial(d));
    // contract the last axis until a single value remains
    for _ in 0..k {
        values = values
            .chunks(side)
            .map(|fibre| T::weighted_sum(fibre, &weights, &scale))
            .collect::<Result<Vec<_>>>()?;
    }
    Ok(values.pop().expect("grid is nonempty"))
}

/// `(φ(A + hX) - φ(A - hX)) / 2h`.
pub fn finite_diff(phi: Functional, a: &ComplexMatrix, x: &ComplexMatrix, h: f64) -> Result<Complex64> {
    crate::derivatives::validate(a, std::slice::from_ref(x))?;
    let step = Complex64::new(h, 0.0);
    let plus = phi.eval(&a.add_scaled(&step, x)?)?;
    let minus = phi.eval(&a.add_scaled(&-step, x)?)?;
    Ok((plus - minus) / (2.0 * h))
}

/// `M_1 = A`, `g_1 = tr A`, `M_{j+1} = A (g_j I - M_j)`,
/// `g_{j+1} = tr(M_{j+1}) / (j + 1)`.
pub fn faddeev_leverrier(a: &ComplexMatrix) -> Result<CharPolyCoefficients<Complex64>> {
    let n = a.order()?;
    let id = ComplexMatrix::identity(n);
    let mut g = Vec::with_capacity(n);
    let mut m = a.clone();
    for j in 1..=n {
        if j > 1 {
            let prev = g[j - 2];
            m = a.matmul(&id.scale(&prev).sub(&m)?)?;
        }
        g.push(m.trace() / j as f64);
    }
    Ok(CharPolyCoefficients { g })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::charpoly_all;
    use crate::derivatives::dper;
    use crate::matrix::GaussianMatrix;
    use crate::multiindex::binomial;
    use crate::random;
    use crate::tensor::tilde_antisym_block;

    #[test]
    fn weights_extract_linear_coefficient() {
        // p(t) = 3 + 5t - 2t^2 + t^3 sampled on 0..=3
        let w = lagrange_linear_weights(3);
        let p = |t: i64| 3 + 5 * t - 2 * t * t + t * t * t;
        let s: i64 = (0..=3).map(|t| w[t as usize] * p(t)).sum();
        assert_eq!(s, 5 * 6);
        assert_eq!(lagrange_linear_weights(1), vec![-1, 1]);
    }

    #[test]
    fn first_order_matches_dper() {
        let mut rng = random::rng(61);
        for n in 1..=5 {
            let a = random::gaussian_int(&mut rng, n, 3);
            let x = random::gaussian_int(&mut rng, n, 3);
            let v = mixed_partial_interp(Functional::Permanent, &a, std::slice::from_ref(&x)).unwrap();
            assert_eq!(v, dper(&a, &x).unwrap());
        }
    }

    #[test]
    fn top_order_is_n_factorial_per() {
        let mut rng = random::rng(62);
        let a = random::gaussian_int(&mut rng, 3, 3);
        let x = random::gaussian_int(&mut rng, 3, 3);
        let v = mixed_partial_interp(Functional::Permanent, &a, &vec![x.clone(); 3]).unwrap();
        assert_eq!(v, GaussianInt::from_i64(6) * per(&x).unwrap());
    }

    #[test]
    fn jacobi_for_full_coefficient() {
        let mut rng = random::rng(63);
        let a = random::gaussian_int(&mut rng, 4, 3);
        let x = random::gaussian_int(&mut rng, 4, 3);
        let adj = tilde_antisym_block(&a, 1).unwrap().entries;
        let v = mixed_partial_interp(Functional::CharCoefficient(4), &a, std::slice::from_ref(&x)).unwrap();
        assert_eq!(v, adj.matmul(&x).unwrap().trace());
    }

    #[test]
    fn floating_mode_agrees_with_exact() {
        let mut rng = random::rng(64);
        let a = random::gaussian_int(&mut rng, 4, 2);
        let dirs: Vec<GaussianMatrix> = (0..2).map(|_| random::gaussian_int(&mut rng, 4, 2)).collect();
        let exact = mixed_partial_interp(Functional::Permanent, &a, &dirs).unwrap().to_complex64();
        let fdirs: Vec<_> = dirs.iter().map(|d| d.to_complex()).collect();
        let float = mixed_partial_interp(Functional::Permanent, &a.to_complex(), &fdirs).unwrap();
        assert!((exact - float).norm() <= 1e-9 * exact.norm().max(1.0));
    }

    #[test]
    fn limits_are_enforced() {
        let a = GaussianMatrix::identity(6);
        let dirs = vec![GaussianMatrix::identity(6); 8];
        assert!(matches!(
            mixed_partial_interp(Functional::Permanent, &a, &dirs),
            Err(Error::GridOverflow { .. })
        ));
        let big = GaussianMatrix::identity(7);
        assert!(matches!(
            mixed_partial_interp(Functional::Permanent, &big, std::slice::from_ref(&big)),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn finite_difference_examples() {
        let a = ComplexMatrix::identity(3);
        assert_eq!(finite_diff(Functional::Permanent, &a, &ComplexMatrix::zeros(3, 3), 1e-3).unwrap(), Complex64::zero());
        // g_1 is linear, so any step is exact
        let mut rng = random::rng(65);
        let b = random::complex_gaussian(&mut rng, 3);
        let x = random::complex_gaussian(&mut rng, 3);
        let fd = finite_diff(Functional::CharCoefficient(1), &b, &x, 0.75).unwrap();
        assert!((fd - x.trace()).norm() < 1e-12);
    }

    #[test]
    fn faddeev_leverrier_examples() {
        let d = ComplexMatrix::from_real_rows(&[vec![1.0, 0.0, 0.0], vec![0.0, 2.0, 0.0], vec![0.0, 0.0, 3.0]]).unwrap();
        let g = faddeev_leverrier(&d).unwrap().g;
        for (got, want) in g.iter().zip([6.0, 11.0, 6.0]) {
            assert!((got - want).norm() < 1e-12);
        }
        let g = faddeev_leverrier(&ComplexMatrix::identity(5)).unwrap().g;
        for (r, got) in g.iter().enumerate() {
            assert!((got.re - binomial(5, r + 1) as f64).abs() < 1e-12);
        }
        let jordan = ComplexMatrix::from_fn(4, 4, |i, j| Complex64::new((j == i + 1) as u8 as f64, 0.0));
        assert!(faddeev_leverrier(&jordan).unwrap().g.iter().all(|v| v.norm() == 0.0));

        let mut rng = random::rng(66);
        let a = random::complex_gaussian(&mut rng, 6);
        let fl = faddeev_leverrier(&a).unwrap().g;
        let minors = charpoly_all(&a).unwrap().g;
        for (x, y) in fl.iter().zip(&minors) {
            assert!((x - y).norm() <= 1e-9 * x.norm().max(y.norm()).max(1.0));
        }
    }
}
