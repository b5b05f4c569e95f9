//! Characteristic-polynomial coefficients and their derivatives.
//!
//! `det(xI - A) = x^n - g_1 x^{n-1} + ... + (-1)^n g_n`, where `g_r` is the
//! sum of the `r x r` principal minors. Since `g_r = Σ_I det ∘ h_I` with
//! `h_I(A) = A_I` linear, every derivative of `g_r` is a sum over
//! `I ∈ Q_{r,n}` of a derivative of `det` at the restriction `A_I`, taken
//! along the restricted directions. Index weights inside each restriction
//! refer to the relabelled rows and columns `1..r`.

use crate::derivatives::{validate, Formula};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::multiindex::{enumerate_strict, MultiIndex, PermutationSet};
use crate::parallel;
use crate::permanent::{column_replace, minor_complement, sigma_columns, submatrix, ReplacementSpec};
use crate::scalar::{sum_ordered, Scalar};
use crate::tensor::{mixed_antisym_sum, tilde_antisym_block};

/// `A_I = A[I|I]` together with the index set it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct PrincipalRestriction<T> {
    pub index: MultiIndex,
    pub value: Matrix<T>,
}

pub fn principal_restriction<T: Scalar>(a: &Matrix<T>, index: &MultiIndex) -> Result<PrincipalRestriction<T>> {
    Ok(PrincipalRestriction {
        index: index.clone(),
        value: submatrix(a, index, index)?,
    })
}

/// `g_1, ..., g_n`; `g[r - 1]` holds `g_r`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPolyCoefficients<T> {
    pub g: Vec<T>,
}

impl<T: Scalar> CharPolyCoefficients<T> {
    pub fn get(&self, r: usize) -> Option<&T> {
        r.checked_sub(1).and_then(|i| self.g.get(i))
    }

    /// Coefficients of `det(xI - A)` from `x^n` down to the constant term.
    pub fn monic_polynomial(&self) -> Vec<T> {
        let mut out = vec![T::one()];
        for (i, g) in self.g.iter().enumerate() {
            out.push(if i % 2 == 0 { -g.clone() } else { g.clone() });
        }
        out
    }
}

fn check_r(n: usize, r: usize) -> Result<()> {
    if r == 0 || r > n {
        return Err(Error::OutOfRange(format!("coefficient index r={r} outside 1..={n}")));
    }
    Ok(())
}

/// `Σ_{I∈Q_{r,n}} det A[I|I]`.
pub fn g_r<T: Scalar>(a: &Matrix<T>, r: usize) -> Result<T> {
    let n = a.order()?;
    check_r(n, r)?;
    let basis = enumerate_strict(r, n);
    let minors = parallel::try_map_range(0..basis.len(), |i| {
        Ok(T::determinant(&submatrix(a, &basis[i], &basis[i])?))
    })?;
    Ok(sum_ordered(minors))
}

pub fn charpoly_all<T: Scalar>(a: &Matrix<T>) -> Result<CharPolyCoefficients<T>> {
    let n = a.order()?;
    let g = (1..=n).map(|r| g_r(a, r)).collect::<Result<Vec<_>>>()?;
    Ok(CharPolyCoefficients { g })
}

/// `D^k det(B)(Y^1, ..., Y^k)` by the chosen determinant formula.
pub fn dk_det<T: Scalar>(b: &Matrix<T>, directions: &[Matrix<T>], formula: Formula) -> Result<T> {
    let m = validate(b, directions)?;
    let k = directions.len();
    if k > m {
        return Ok(T::zero());
    }
    match formula {
        Formula::Columns => {
            let cols = enumerate_strict(k, m);
            let perms = PermutationSet::new(k);
            let mut terms = Vec::with_capacity(perms.len() * cols.len());
            for sigma in perms.iter() {
                let permuted: Vec<&Matrix<T>> = (0..k).map(|p| &directions[sigma.apply(p)]).collect();
                for j in &cols {
                    let spec = ReplacementSpec::new(j.clone(), permuted.clone(), m)?;
                    terms.push(T::determinant(&column_replace(b, &spec)?));
                }
            }
            Ok(sum_ordered(terms))
        }
        Formula::Minors => {
            let basis = enumerate_strict(k, m);
            let dirs: Vec<&Matrix<T>> = directions.iter().collect();
            let mut terms = Vec::new();
            for sigma in PermutationSet::new(k).iter() {
                let ys = basis
                    .iter()
                    .map(|j| sigma_columns(&ReplacementSpec::new(j.clone(), dirs.clone(), m)?, sigma))
                    .collect::<Result<Vec<_>>>()?;
                for rows in &basis {
                    for (jj, cols) in basis.iter().enumerate() {
                        let comp = T::determinant(&minor_complement(b, rows, cols)?);
                        let y = T::determinant(&submatrix(&ys[jj], rows, cols)?);
                        let term = comp * y;
                        terms.push(if (rows.weight() + cols.weight()) % 2 == 1 { -term } else { term });
                    }
                }
            }
            Ok(sum_ordered(terms))
        }
        Formula::Tensor => tilde_antisym_block(b, k)?.trace_product(&mixed_antisym_sum(directions)?),
    }
}

/// `D^k g_r(A)(X^1, ..., X^k) = Σ_{I∈Q_{r,n}} D^k det(A_I)(X^1_I, ..., X^k_I)`.
pub fn dk_gr<T: Scalar>(a: &Matrix<T>, directions: &[Matrix<T>], r: usize, formula: Formula) -> Result<T> {
    let n = validate(a, directions)?;
    check_r(n, r)?;
    if directions.len() > r {
        return Ok(T::zero());
    }
    let basis = enumerate_strict(r, n);
    let terms = parallel::try_map_range(0..basis.len(), |i| {
        let index = &basis[i];
        let restricted = principal_restriction(a, index)?;
        let dirs = directions
            .iter()
            .map(|x| submatrix(x, index, index))
            .collect::<Result<Vec<_>>>()?;
        dk_det(&restricted.value, &dirs, formula)
    })?;
    Ok(sum_ordered(terms))
}

pub fn dk_gr_columns<T: Scalar>(a: &Matrix<T>, directions: &[Matrix<T>], r: usize) -> Result<T> {
    dk_gr(a, directions, r, Formula::Columns)
}

pub fn dk_gr_minors<T: Scalar>(a: &Matrix<T>, directions: &[Matrix<T>], r: usize) -> Result<T> {
    dk_gr(a, directions, r, Formula::Minors)
}

pub fn dk_gr_tensor<T: Scalar>(a: &Matrix<T>, directions: &[Matrix<T>], r: usize) -> Result<T> {
    dk_gr(a, directions, r, Formula::Tensor)
}

/// The matrix `G` with `D g_r(A)(X) = tr(G X)`: the adjugates of the
/// restrictions `A_I`, placed back at rows and columns `I`.
pub fn gr_gradient<T: Scalar>(a: &Matrix<T>, r: usize) -> Result<Matrix<T>> {
    let n = a.order()?;
    check_r(n, r)?;
    let basis = enumerate_strict(r, n);
    let adjugates = parallel::try_map_range(0..basis.len(), |i| {
        Ok(tilde_antisym_block(&submatrix(a, &basis[i], &basis[i])?, 1)?.entries)
    })?;
    let mut g: Matrix<T> = Matrix::zeros(n, n);
    for (index, adj) in basis.iter().zip(&adjugates) {
        let offs: Vec<usize> = index.offsets().collect();
        for (p, &row) in offs.iter().enumerate() {
            for (q, &col) in offs.iter().enumerate() {
                g[(row, col)] = g[(row, col)].clone() + adj[(p, q)].clone();
            }
        }
    }
    Ok(g)
}
