//! Scalar arithmetic shared by every formula.
//!
//! Two scalar types are supported: [`Complex64`] for floating computations
//! and [`GaussianInt`] (arbitrary-precision integer pairs) for exact ones.
//! Everything in the crate that only needs ring operations is generic over
//! [`Scalar`]; the few places that divide (normalised mixed tensor blocks)
//! require [`Field`].

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_traits::{One, ToPrimitive, Zero};

use crate::matrix::Matrix;

/// Complex number with arbitrary-precision integer parts.
pub type GaussianInt = Complex<BigInt>;

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    /// Arithmetic on this type introduces no rounding.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    /// Modulus as a double (approximate for big integers).
    fn magnitude(&self) -> f64;

    fn to_complex64(&self) -> Complex64;

    /// Determinant of a square matrix; the 0x0 determinant is 1.
    fn determinant(m: &Matrix<Self>) -> Self;

    fn from_u64(v: u64) -> Self {
        Self::from_i64(i64::try_from(v).expect("integer constant fits in i64"))
    }
}

/// Scalars that support division.
pub trait Field: Scalar + Div<Output = Self> {}

impl Field for Complex64 {}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn to_complex64(&self) -> Complex64 {
        *self
    }

    fn determinant(m: &Matrix<Self>) -> Self {
        lu_determinant(m)
    }
}

impl Scalar for GaussianInt {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Complex::new(BigInt::from(v), BigInt::zero())
    }

    fn magnitude(&self) -> f64 {
        self.to_complex64().norm()
    }

    fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn determinant(m: &Matrix<Self>) -> Self {
        bareiss_determinant(m)
    }
}

/// Sum in iteration order. All reductions go through here so that floating
/// results do not depend on how the terms were produced.
pub fn sum_ordered<T: Scalar, I: IntoIterator<Item = T>>(terms: I) -> T {
    terms.into_iter().fold(T::zero(), |acc, t| acc + t)
}

/// `|a - b| / max(1, |a|, |b|)`.
pub fn relative_deviation<T: Scalar>(a: &T, b: &T) -> f64 {
    if T::EXACT && a == b {
        return 0.0;
    }
    let diff = (a.clone() - b.clone()).magnitude();
    diff / 1f64.max(a.magnitude()).max(b.magnitude())
}

/// Equality for exact scalars, relative closeness for floating ones.
pub fn agrees<T: Scalar>(a: &T, b: &T, rel_tol: f64) -> bool {
    if T::EXACT {
        a == b
    } else {
        relative_deviation(a, b) <= rel_tol
    }
}

/// Partial-pivot LU elimination.
fn lu_determinant(m: &Matrix<Complex64>) -> Complex64 {
    let n = m.rows();
    debug_assert_eq!(n, m.cols());
    let mut a: Vec<Complex64> = m.as_slice().to_vec();
    let mut det = Complex64::one();
    for k in 0..n {
        let pivot_row = (k..n)
            .max_by(|&i, &j| a[i * n + k].norm().total_cmp(&a[j * n + k].norm()))
            .unwrap_or(k);
        let pivot = a[pivot_row * n + k];
        if pivot.is_zero() {
            return Complex64::zero();
        }
        if pivot_row != k {
            for c in 0..n {
                a.swap(k * n + c, pivot_row * n + c);
            }
            det = -det;
        }
        det *= pivot;
        for i in (k + 1)..n {
            let factor = a[i * n + k] / pivot;
            if factor.is_zero() {
                continue;
            }
            for c in (k + 1)..n {
                let upd = factor * a[k * n + c];
                a[i * n + c] -= upd;
            }
        }
    }
    det
}

/// Division in Z[i] that is known to be exact.
fn exact_div(num: &GaussianInt, den: &GaussianInt) -> GaussianInt {
    let norm = den.norm_sqr();
    let re = &num.re * &den.re + &num.im * &den.im;
    let im = &num.im * &den.re - &num.re * &den.im;
    debug_assert!((&re % &norm).is_zero() && (&im % &norm).is_zero());
    Complex::new(re / &norm, im / norm)
}

/// Fraction-free Bareiss elimination; every division is exact.
fn bareiss_determinant(m: &Matrix<GaussianInt>) -> GaussianInt {
    let n = m.rows();
    debug_assert_eq!(n, m.cols());
    if n == 0 {
        return GaussianInt::one();
    }
    let mut a: Vec<Vec<GaussianInt>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut negate = false;
    let mut prev = GaussianInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match ((k + 1)..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return GaussianInt::zero(),
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = exact_div(&num, &prev);
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}
