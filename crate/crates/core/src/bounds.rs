//! Derivative norms and perturbation bounds, all measured in the operator
//! norm `‖·‖ = s_1(·)`.

use num_complex::Complex64;

use crate::charpoly::{dk_gr_columns, g_r, gr_gradient};
use crate::derivatives::{dkper_columns, dper};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::multiindex::{binomial, enumerate_strict, factorial};
use crate::parallel;
use crate::permanent::{padj, per, submatrix};
use crate::svd::{operator_norm, svd};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Upper,
    Exact,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Upper => "upper",
            BoundKind::Exact => "exact",
        }
    }
}

/// Directions at which the bounded quantity was evaluated, and its modulus
/// there.
#[derive(Clone, Debug)]
pub struct BoundWitness {
    pub directions: Vec<ComplexMatrix>,
    pub attained: f64,
}

#[derive(Clone, Debug)]
pub struct BoundReport {
    pub value: f64,
    pub witness: Option<BoundWitness>,
    pub kind: BoundKind,
}

/// `p_k(values)` by the recurrence `e_j <- e_j + v · e_{j-1}`.
pub fn elementary_symmetric(k: usize, values: &[f64]) -> Result<f64> {
    if k > values.len() {
        return Err(Error::OutOfRange(format!(
            "p_{k} needs at least {k} arguments, got {}",
            values.len()
        )));
    }
    let mut e = vec![0.0; k + 1];
    e[0] = 1.0;
    for (seen, &v) in values.iter().enumerate() {
        for j in (1..=k.min(seen + 1)).rev() {
            e[j] += v * e[j - 1];
        }
    }
    Ok(e[k])
}

fn check_order(n: usize, k: usize, top: usize, what: &str) -> Result<()> {
    if k == 0 || k > top {
        return Err(Error::OutOfRange(format!("{what}={k} outside 1..={top} for order {n}")));
    }
    Ok(())
}

fn same_order(a: &ComplexMatrix, x: &ComplexMatrix) -> Result<usize> {
    let n = a.order()?;
    if x.rows() != n || x.cols() != n {
        return Err(Error::ShapeMismatch(format!(
            "perturbation is {}x{}, base point is {n}x{n}",
            x.rows(),
            x.cols()
        )));
    }
    Ok(n)
}

/// `k! C(n,k) ‖A‖^{n-k} ≥ ‖D^k per(A)‖`.
///
/// At `k = 1` the witness is the unit-norm direction dual to `padj(A)^T`,
/// which attains `‖padj(A)‖_1`.
pub fn dkper_norm_bound(a: &ComplexMatrix, k: usize) -> Result<BoundReport> {
    let n = a.order()?;
    check_order(n, k, n, "k")?;
    let norm = operator_norm(a)?;
    let value = (factorial(k) * binomial(n, k)) as f64 * norm.powi((n - k) as i32);
    let witness = if k == 1 {
        let x = svd(&padj(a)?.transpose())?.duality_witness().conj_transpose();
        let attained = dper(a, &x)?.norm();
        Some(BoundWitness {
            directions: vec![x],
            attained,
        })
    } else {
        None
    };
    Ok(BoundReport {
        value,
        witness,
        kind: BoundKind::Upper,
    })
}

/// `Σ_{k=1}^n C(n,k) ‖A‖^{n-k} ‖X‖^k ≥ |per(A + X) - per(A)|`.
pub fn per_perturb_bound(a: &ComplexMatrix, x: &ComplexMatrix) -> Result<BoundReport> {
    let n = same_order(a, x)?;
    let (na, nx) = (operator_norm(a)?, operator_norm(x)?);
    let value = (1..=n)
        .map(|k| binomial(n, k) as f64 * na.powi((n - k) as i32) * nx.powi(k as i32))
        .sum();
    let attained = (per(&a.add(x)?)? - per(a)?).norm();
    Ok(BoundReport {
        value,
        witness: Some(BoundWitness {
            directions: vec![x.clone()],
            attained,
        }),
        kind: BoundKind::Upper,
    })
}

/// Singular values of every principal restriction `A_I`, `I ∈ Q_{r,n}`.
fn restricted_spectra(a: &ComplexMatrix, r: usize) -> Result<Vec<Vec<f64>>> {
    let basis = enumerate_strict(r, a.rows());
    parallel::try_map_range(0..basis.len(), |i| {
        Ok(svd(&submatrix(a, &basis[i], &basis[i])?)?.values)
    })
}

/// `k! Σ_{I∈Q_{r,n}} p_{r-k}(s_1(A_I), ..., s_r(A_I))`.
///
/// The witness at `k = 1` is the unit-norm direction dual to the gradient of
/// `g_r`; for larger `k` that direction is repeated. The value dominates the
/// norm of `D^k g_r(A)` and coincides with it when `A` is diagonal with
/// nonnegative entries.
pub fn dk_gr_norm_exact(a: &ComplexMatrix, k: usize, r: usize) -> Result<BoundReport> {
    let n = a.order()?;
    check_order(n, r, n, "r")?;
    check_order(n, k, r, "k")?;
    let spectra = restricted_spectra(a, r)?;
    let sum: f64 = spectra
        .iter()
        .map(|s| elementary_symmetric(r - k, s))
        .sum::<Result<f64>>()?;
    let value = factorial(k) as f64 * sum;

    let w = svd(&gr_gradient(a, r)?)?.duality_witness().conj_transpose();
    let directions = vec![w; k];
    let attained = dk_gr_columns(a, &directions, r)?.norm();
    Ok(BoundReport {
        value,
        witness: Some(BoundWitness { directions, attained }),
        kind: BoundKind::Exact,
    })
}

/// `Σ_{I∈Q_{r,n}} Σ_{k=1}^r p_{r-k}(s(A_I)) ‖X‖^k ≥ |g_r(A + X) - g_r(A)|`.
pub fn gr_perturb_bound(a: &ComplexMatrix, x: &ComplexMatrix, r: usize) -> Result<BoundReport> {
    let n = same_order(a, x)?;
    check_order(n, r, n, "r")?;
    let nx = operator_norm(x)?;
    let mut value = 0.0;
    for s in restricted_spectra(a, r)? {
        for k in 1..=r {
            value += elementary_symmetric(r - k, &s)? * nx.powi(k as i32);
        }
    }
    Ok(BoundReport {
        value,
        witness: Some(gr_deviation(a, x, r)?),
        kind: BoundKind::Upper,
    })
}

/// `Σ_{k=1}^r C(n,r) C(r,k) ‖A‖^{r-k} ‖X‖^k`, which dominates
/// [`gr_perturb_bound`] because `p_{r-k}(s(A_I)) ≤ C(r,k) ‖A‖^{r-k}`.
pub fn gr_perturb_bound_weak(a: &ComplexMatrix, x: &ComplexMatrix, r: usize) -> Result<BoundReport> {
    let n = same_order(a, x)?;
    check_order(n, r, n, "r")?;
    let (na, nx) = (operator_norm(a)?, operator_norm(x)?);
    let c = binomial(n, r) as f64;
    let value = (1..=r)
        .map(|k| c * binomial(r, k) as f64 * na.powi((r - k) as i32) * nx.powi(k as i32))
        .sum();
    Ok(BoundReport {
        value,
        witness: Some(gr_deviation(a, x, r)?),
        kind: BoundKind::Upper,
    })
}

fn gr_deviation(a: &ComplexMatrix, x: &ComplexMatrix, r: usize) -> Result<BoundWitness> {
    let attained = (g_r(&a.add(x)?, r)? - g_r(a, r)?).norm();
    Ok(BoundWitness {
        directions: vec![x.clone()],
        attained,
    })
}

/// `|D^k per(A)(X^1, ..., X^k)|`, the quantity [`dkper_norm_bound`] bounds
/// when every direction has unit norm.
pub fn dkper_modulus(a: &ComplexMatrix, directions: &[ComplexMatrix]) -> Result<f64> {
    dkper_columns(a, directions).map(|v: Complex64| v.norm())
}
