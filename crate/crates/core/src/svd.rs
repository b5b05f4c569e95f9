//! Complex singular value decomposition by one-sided Jacobi rotations, and
//! the operator and trace norms built on it.

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Column pairs whose normalised correlation `|b_p^H b_q| / (|b_p| |b_q|)`
/// is at or below this are treated as orthogonal.
pub const JACOBI_TOLERANCE: f64 = 1e-14;

pub const MAX_SWEEPS: usize = 60;

/// `A = U · diag(values) · V` with `values` descending.
///
/// For an `m x n` input with `m >= n`, `U` is `m x n` with orthonormal
/// columns and `V` is `n x n` unitary; for `m < n` the roles swap. Square
/// inputs get two unitary factors.
#[derive(Clone, Debug)]
pub struct SingularSpectrum {
    pub values: Vec<f64>,
    pub left: ComplexMatrix,
    pub right: ComplexMatrix,
}

impl SingularSpectrum {
    pub fn largest(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        let k = self.values.len();
        let scaled = ComplexMatrix::from_fn(self.left.rows(), k, |i, j| {
            self.left[(i, j)] * self.values[j]
        });
        scaled.matmul(&self.right).expect("factor shapes agree")
    }

    /// `U · V`. For square `A`, `X = (U V)^H` has unit operator norm and
    /// `tr(A X) = ‖A‖_1`.
    pub fn duality_witness(&self) -> ComplexMatrix {
        self.left.matmul(&self.right).expect("factor shapes agree")
    }
}

pub fn svd(a: &ComplexMatrix) -> Result<SingularSpectrum> {
    if a.rows() >= a.cols() {
        jacobi_tall(a)
    } else {
        // A^H = U' S V'  =>  A = V'^H S U'^H
        let t = jacobi_tall(&a.conj_transpose())?;
        Ok(SingularSpectrum {
            values: t.values,
            left: t.right.conj_transpose(),
            right: t.left.conj_transpose(),
        })
    }
}

fn jacobi_tall(a: &ComplexMatrix) -> Result<SingularSpectrum> {
    let (m, n) = (a.rows(), a.cols());
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| a.column(j)).collect();
    let mut w: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::zero() }).collect())
        .collect();

    let mut converged = n < 2;
    let mut residual = 0.0f64;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        residual = 0.0;
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = cols[p].iter().map(Complex64::norm_sqr).sum();
                let beta: f64 = cols[q].iter().map(Complex64::norm_sqr).sum();
                let gamma: Complex64 = cols[p].iter().zip(&cols[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                let scale = (alpha * beta).sqrt();
                if g == 0.0 || g <= JACOBI_TOLERANCE * scale {
                    continue;
                }
                residual = residual.max(g / scale);
                rotated = true;

                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut cols, p, q, c, s, phase);
                rotate(&mut w, p, q, c, s, phase);
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: MAX_SWEEPS,
            residual,
        });
    }

    let norms: Vec<f64> = cols
        .iter()
        .map(|c| c.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let values: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let top = values.first().copied().unwrap_or(0.0);

    // Columns of U; directions with negligible singular value are filled in
    // by Gram-Schmidt against the standard basis.
    let mut u_cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut pending = Vec::new();
    for (slot, &j) in order.iter().enumerate() {
        if values[slot] > 1e-13 * top && values[slot] > 0.0 {
            u_cols.push(cols[j].iter().map(|v| v / values[slot]).collect());
        } else {
            u_cols.push(vec![Complex64::zero(); m]);
            pending.push(slot);
        }
    }
    let mut basis = 0;
    for slot in pending {
        loop {
            let mut v = vec![Complex64::zero(); m];
            v[basis % m] = Complex64::new(1.0, 0.0);
            basis += 1;
            for (other, u) in u_cols.iter().enumerate() {
                if other == slot {
                    continue;
                }
                let proj: Complex64 = u.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= proj * ui;
                }
            }
            let norm = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
            if norm > 1e-8 {
                u_cols[slot] = v.into_iter().map(|x| x / norm).collect();
                break;
            }
            if basis > 2 * m + n {
                return Err(Error::NoConvergence {
                    sweeps: MAX_SWEEPS,
                    residual,
                });
            }
        }
    }

    let left = ComplexMatrix::from_fn(m, n, |i, j| u_cols[j][i]);
    // A W = U S  =>  V = W^H, rows permuted like the values
    let right = ComplexMatrix::from_fn(n, n, |i, j| w[order[i]][j].conj());
    Ok(SingularSpectrum { values, left, right })
}

/// Columns `p, q` <- `[c_p, c_q] · [[c, s], [-s·phase, c·phase]]`.
fn rotate(cols: &mut [Vec<Complex64>], p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    let (lo, hi) = cols.split_at_mut(q);
    let (bp, bq) = (&mut lo[p], &mut hi[0]);
    for (x, y) in bp.iter_mut().zip(bq.iter_mut()) {
        let yq = phase * *y;
        let new_p = *x * c - yq * s;
        let new_q = *x * s + yq * c;
        *x = new_p;
        *y = new_q;
    }
}

/// `‖A‖ = s_1(A)`.
pub fn operator_norm(a: &ComplexMatrix) -> Result<f64> {
    Ok(svd(a)?.largest())
}

/// `‖A‖_1 = Σ s_i(A)`.
pub fn trace_norm(a: &ComplexMatrix) -> Result<f64> {
    Ok(svd(a)?.values.iter().sum())
}
