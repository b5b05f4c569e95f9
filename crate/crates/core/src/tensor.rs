//! Symmetric and antisymmetric tensor-power matrices.
//!
//! Blocks are addressed by multi-indices in lexicographic order. Apart from
//! [`sym_power`], which spans the full weak-index basis `G_{k,n}`, every
//! block lives on the strict-index basis `Q_{k,n}`: the compressions of the
//! tensor operators onto the span of `{e_I : I ∈ Q_{k,n}}`, which is all the
//! derivative formulas ever contract against.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, Matrix};
use crate::multiindex::{enumerate_strict, enumerate_weak, factorial, MultiIndex, PermutationSet};
use crate::parallel;
use crate::permanent::{minor_complement, per, submatrix};
use crate::scalar::{sum_ordered, Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// `∨^k A` on `G_{k,n}`.
    SymFull,
    /// `P_k (∨^k A) P_k`.
    SymProjected,
    /// `∧^k A`.
    Antisym,
    /// Compressed block of the complementary-permanent operator.
    TildeSym,
    /// Compressed block of the signed complementary-minor operator.
    TildeAntisym,
    /// Compressed symmetrised product `X^1 ∨ ... ∨ X^k`.
    MixedSym,
    /// Compressed antisymmetrised product `X^1 ∧ ... ∧ X^k`.
    MixedAntisym,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TensorBlock<T> {
    pub row_basis: Vec<MultiIndex>,
    pub col_basis: Vec<MultiIndex>,
    pub entries: Matrix<T>,
    pub flavor: Flavor,
}

impl<T: Scalar> TensorBlock<T> {
    pub fn dim(&self) -> usize {
        self.row_basis.len()
    }

    /// `tr(self · other)`, summed in row-major order of `self`.
    pub fn trace_product(&self, other: &TensorBlock<T>) -> Result<T> {
        let (a, b) = (&self.entries, &other.entries);
        if a.cols() != b.rows() || a.rows() != b.cols() {
            return Err(Error::ShapeMismatch(format!(
                "trace of {}x{} times {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        let mut terms = Vec::with_capacity(a.rows() * a.cols());
        for p in 0..a.rows() {
            for q in 0..a.cols() {
                terms.push(a[(p, q)].clone() * b[(q, p)].clone());
            }
        }
        Ok(sum_ordered(terms))
    }
}

fn square_order<T: Scalar>(a: &Matrix<T>, k: usize, min_k: usize) -> Result<usize> {
    let n = a.order()?;
    if k < min_k || k > n {
        return Err(Error::OutOfRange(format!("tensor power k={k} for order {n}")));
    }
    Ok(n)
}

fn build_block<T: Scalar>(
    rows: Vec<MultiIndex>,
    cols: Vec<MultiIndex>,
    flavor: Flavor,
    entry: impl Fn(&MultiIndex, &MultiIndex) -> Result<T> + Sync + Send,
) -> Result<TensorBlock<T>> {
    let (nr, nc) = (rows.len(), cols.len());
    let entries = parallel::try_map_range(0..nr * nc, |idx| entry(&rows[idx / nc], &cols[idx % nc]))?;
    Ok(TensorBlock {
        entries: Matrix::from_vec(nr, nc, entries)?,
        row_basis: rows,
        col_basis: cols,
        flavor,
    })
}

/// `∨^k A` over the full basis `G_{k,n}`, entries
/// `(m(I) m(J))^{-1/2} per A[I|J]`.
pub fn sym_power(a: &ComplexMatrix, k: usize) -> Result<TensorBlock<Complex64>> {
    let n = a.order()?;
    if k == 0 {
        return Err(Error::OutOfRange("symmetric power of order 0".into()));
    }
    let basis = enumerate_weak(k, n);
    build_block(basis.clone(), basis, Flavor::SymFull, |i, j| {
        let scale = ((i.multiplicity() * j.multiplicity()) as f64).sqrt();
        Ok(per(&submatrix(a, i, j)?)? / scale)
    })
}

/// `P_k (∨^k A) P_k`: entries `per A[I|J]` for `I, J ∈ Q_{k,n}`.
pub fn sym_power_projected<T: Scalar>(a: &Matrix<T>, k: usize) -> Result<TensorBlock<T>> {
    let n = square_order(a, k, 1)?;
    let basis = enumerate_strict(k, n);
    build_block(basis.clone(), basis, Flavor::SymProjected, |i, j| per(&submatrix(a, i, j)?))
}

/// `∧^k A`: entries `det A[I|J]`.
pub fn antisym_power<T: Scalar>(a: &Matrix<T>, k: usize) -> Result<TensorBlock<T>> {
    let n = square_order(a, k, 1)?;
    let basis = enumerate_strict(k, n);
    build_block(basis.clone(), basis, Flavor::Antisym, |i, j| Ok(T::determinant(&submatrix(a, i, j)?)))
}

fn direction_order<T: Scalar>(directions: &[Matrix<T>]) -> Result<usize> {
    let first = directions
        .first()
        .ok_or_else(|| Error::OutOfRange("empty direction tuple".into()))?;
    let n = first.order()?;
    if let Some(bad) = directions.iter().find(|x| x.rows() != n || x.cols() != n) {
        return Err(Error::ShapeMismatch(format!(
            "direction is {}x{}, expected {n}x{n}",
            bad.rows(),
            bad.cols()
        )));
    }
    if directions.len() > n {
        return Err(Error::OutOfRange(format!(
            "{} directions for order {n}",
            directions.len()
        )));
    }
    Ok(n)
}

/// Un-normalised symmetrisation: the `(I, J)` entry is
/// `Σ_{σ∈S_k} f(M_σ)` where `M_σ[l][m] = X^{σ(m)}_{i_l, j_m}`.
fn mixed_sum<T: Scalar>(
    directions: &[Matrix<T>],
    flavor: Flavor,
    f: impl Fn(&Matrix<T>) -> Result<T> + Sync + Send,
) -> Result<TensorBlock<T>> {
    let n = direction_order(directions)?;
    let k = directions.len();
    let perms = PermutationSet::new(k);
    let basis = enumerate_strict(k, n);
    build_block(basis.clone(), basis, flavor, |i, j| {
        let rows: Vec<usize> = i.offsets().collect();
        let cols: Vec<usize> = j.offsets().collect();
        let terms = perms
            .iter()
            .map(|sigma| {
                let m = Matrix::from_fn(k, k, |l, c| directions[sigma.apply(c)][(rows[l], cols[c])].clone());
                f(&m)
            })
            .collect::<Result<Vec<T>>>()?;
        Ok(sum_ordered(terms))
    })
}

/// `k!` times the compressed block of `X^1 ∨ ... ∨ X^k`. Ring-only, so it
/// serves exact arithmetic; [`mixed_sym_projected`] is this divided by `k!`.
pub fn mixed_sym_sum<T: Scalar>(directions: &[Matrix<T>]) -> Result<TensorBlock<T>> {
    mixed_sum(directions, Flavor::MixedSym, per)
}

/// Compressed block of `X^1 ∨ ... ∨ X^k`: the `(I, J)` entry is
/// `(1/k!) Σ_σ per [X^{σ(m)}_{i_l, j_m}]_{l,m}`.
pub fn mixed_sym_projected<T: Field>(directions: &[Matrix<T>]) -> Result<TensorBlock<T>> {
    normalise(mixed_sym_sum(directions)?, directions.len())
}

/// `k!` times the block of `X^1 ∧ ... ∧ X^k`.
pub fn mixed_antisym_sum<T: Scalar>(directions: &[Matrix<T>]) -> Result<TensorBlock<T>> {
    mixed_sum(directions, Flavor::MixedAntisym, |m| Ok(T::determinant(m)))
}

/// Block of `X^1 ∧ ... ∧ X^k`: `(1/k!) Σ_σ det [X^{σ(m)}_{i_l, j_m}]_{l,m}`.
pub fn mixed_antisym_projected<T: Field>(directions: &[Matrix<T>]) -> Result<TensorBlock<T>> {
    normalise(mixed_antisym_sum(directions)?, directions.len())
}

fn normalise<T: Field>(mut block: TensorBlock<T>, k: usize) -> Result<TensorBlock<T>> {
    let denom = T::from_u64(factorial(k));
    block.entries = block.entries.map(|v| v.clone() / denom.clone());
    Ok(block)
}

/// Compressed block of the complementary-permanent operator: the `(J, I)`
/// entry is `per A(I|J)` for `I, J ∈ Q_{k,n}`. `k = 0` gives `[per A]`,
/// `k = n` gives `[1]`.
pub fn tilde_sym_block<T: Scalar>(a: &Matrix<T>, k: usize) -> Result<TensorBlock<T>> {
    let n = square_order(a, k, 0)?;
    let basis = enumerate_strict(k, n);
    build_block(basis.clone(), basis, Flavor::TildeSym, |j, i| per(&minor_complement(a, i, j)?))
}

/// Compressed block of the signed complementary-minor operator: the `(J, I)`
/// entry is `(-1)^{|I|+|J|} det A(I|J)`. At `k = 1` this is the adjugate.
pub fn tilde_antisym_block<T: Scalar>(a: &Matrix<T>, k: usize) -> Result<TensorBlock<T>> {
    let n = square_order(a, k, 0)?;
    let basis = enumerate_strict(k, n);
    build_block(basis.clone(), basis, Flavor::TildeAntisym, |j, i| {
        let d = T::determinant(&minor_complement(a, i, j)?);
        Ok(if (i.weight() + j.weight()) % 2 == 1 { -d } else { d })
    })
}
