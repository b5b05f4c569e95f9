//! Higher-order derivatives of the permanent.
//!
//! `D^k per(A)(X^1, ..., X^k)` is the coefficient of `t_1 ⋯ t_k` in
//! `per(A + t_1 X^1 + ... + t_k X^k)`. Three closed forms are provided:
//!
//! * [`Formula::Columns`]: `Σ_σ Σ_J per A(J; X^{σ(1)}, ..., X^{σ(k)})`
//! * [`Formula::Minors`]: `Σ_σ Σ_{I,J} per A(I|J) · per Y^σ_[J][I|J]`
//! * [`Formula::Tensor`]: `k! tr[P(∨̃^{n-k} A)P · P(X^1 ∨ ... ∨ X^k)P]`
//!
//! with `σ ∈ S_k` and `I, J ∈ Q_{k,n}`. Terms are summed with `σ` outermost,
//! then `I`, then `J`, all in lexicographic order. Orders `k > n` give zero.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::multiindex::{enumerate_strict, factorial, PermutationSet};
use crate::parallel;
use crate::permanent::{column_replace, minor_complement, padj, per, sigma_columns, submatrix, ReplacementSpec};
use crate::scalar::{agrees, sum_ordered, Scalar};
use crate::tensor::{mixed_sym_sum, sym_power_projected, tilde_sym_block};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Columns,
    Minors,
    Tensor,
}

impl Formula {
    pub const ALL: [Formula; 3] = [Formula::Columns, Formula::Minors, Formula::Tensor];

    pub fn name(self) -> &'static str {
        match self {
            Formula::Columns => "columns",
            Formula::Minors => "minors",
            Formula::Tensor => "tensor",
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "columns" => Ok(Formula::Columns),
            "minors" => Ok(Formula::Minors),
            "tensor" => Ok(Formula::Tensor),
            other => Err(Error::OutOfRange(format!("unknown formula {other:?}"))),
        }
    }
}

/// A base point, an ordered tuple of directions, and the formula to use.
#[derive(Clone, Debug)]
pub struct DerivativeRequest<'a, T> {
    pub a: &'a Matrix<T>,
    pub directions: &'a [Matrix<T>],
    pub formula: Formula,
    /// When every direction is the same matrix, sum over a single
    /// permutation and multiply by `k!`.
    pub collapse_repeated: bool,
}

impl<'a, T: Scalar> DerivativeRequest<'a, T> {
    pub fn new(a: &'a Matrix<T>, directions: &'a [Matrix<T>], formula: Formula) -> Result<Self> {
        validate(a, directions)?;
        Ok(DerivativeRequest {
            a,
            directions,
            formula,
            collapse_repeated: false,
        })
    }

    pub fn collapse_repeated(mut self, on: bool) -> Self {
        self.collapse_repeated = on;
        self
    }

    pub fn order(&self) -> usize {
        self.directions.len()
    }

    pub fn evaluate(&self) -> Result<T> {
        validate(self.a, self.directions)?;
        let repeated = self.collapse_repeated && all_equal(self.directions);
        match (self.formula, repeated) {
            (Formula::Columns, false) => dkper_columns(self.a, self.directions),
            (Formula::Minors, false) => dkper_minors(self.a, self.directions),
            (Formula::Tensor, false) => dkper_tensor(self.a, self.directions),
            (f, true) => dkper_repeated(self.a, &self.directions[0], self.directions.len(), f),
        }
    }
}

pub(crate) fn validate<T: Scalar>(a: &Matrix<T>, directions: &[Matrix<T>]) -> Result<usize> {
    let n = a.order()?;
    if directions.is_empty() {
        return Err(Error::OutOfRange("derivative order must be at least 1".into()));
    }
    if let Some(bad) = directions.iter().find(|x| x.rows() != n || x.cols() != n) {
        return Err(Error::ShapeMismatch(format!(
            "direction is {}x{}, base point is {n}x{n}",
            bad.rows(),
            bad.cols()
        )));
    }
    Ok(n)
}

fn all_equal<T: PartialEq>(items: &[T]) -> bool {
    items.windows(2).all(|w| w[0] == w[1])
}

/// `D^k per(A)` along `directions` with the chosen formula.
pub fn dkper<T: Scalar>(a: &Matrix<T>, directions: &[Matrix<T>], formula: Formula) -> Result<T> {
    DerivativeRequest::new(a, directions, formula)?.evaluate()
}

/// The three first-derivative expressions, in this order:
/// `tr(padj(A)^T X)`, `Σ_j per A(j; X)`, `Σ_{i,j} x_ij per A(i|j)`.
pub fn dper_forms<T: Scalar>(a: &Matrix<T>, x: &Matrix<T>) -> Result<[T; 3]> {
    let n = validate(a, std::slice::from_ref(x))?;
    let adj = padj(a)?;
    let trace_form = adj.transpose().matmul(x)?.trace();

    let singles = enumerate_strict(1, n);
    let column_form = sum_ordered(
        singles
            .iter()
            .map(|j| per(&column_replace(a, &ReplacementSpec::new(j.clone(), vec![x], n)?)?))
            .collect::<Result<Vec<T>>>()?,
    );

    let mut minor_terms = Vec::with_capacity(n * n);
    for i in &singles {
        for j in &singles {
            let (r, c) = (i.entries()[0] - 1, j.entries()[0] - 1);
            minor_terms.push(x[(r, c)].clone() * per(&minor_complement(a, i, j)?)?);
        }
    }
    Ok([trace_form, column_form, sum_ordered(minor_terms)])
}

/// `D per(A)(X) = tr(padj(A)^T X)`.
pub fn dper<T: Scalar>(a: &Matrix<T>, x: &Matrix<T>) -> Result<T> {
    let [trace_form, column_form, minor_form] = dper_forms(a, x)?;
    debug_assert!(
        agrees(&trace_form, &column_form, 1e-9) && agrees(&trace_form, &minor_form, 1e-9),
        "first-derivative forms disagree: {trace_form:?} {column_form:?} {minor_form:?}"
    );
    Ok(trace_form)
}

/// `Σ_{σ∈S_k} Σ_{J∈Q_{k,n}} per A(J; X^{σ(1)}, ..., X^{σ(k)})`.
pub fn dkper_columns<T: Scalar>(a: &Matrix<T>, directions: &[Matrix<T>]) -> Result<T> {
    let n = validate(a, directions)?;
    let k = directions.len();
    let perms = PermutationSet::new(k);
    let cols = enumerate_strict(k, n);
    if cols.is_empty() {
        return Ok(T::zero());
    }
    let nj = cols.len();
    let terms = parallel::try_map_range(0..perms.len() * nj, |idx| {
        let sigma = &perms.as_slice()[idx / nj];
        let permuted: Vec<&Matrix<T>> = (0..k).map(|p| &directions[sigma.apply(p)]).collect();
        let spec = ReplacementSpec::new(cols[idx % nj].clone(), permuted, n)?;
        per(&column_replace(a, &spec)?)
    })?;
    Ok(sum_ordered(terms))
}

/// `Σ_{σ∈S_k} Σ_{I,J∈Q_{k,n}} per A(I|J) · per Y^σ_[J][I|J]`.
pub fn dkper_minors<T: Scalar>(a: &Matrix<T>, directions: &[Matrix<T>]) -> Result<T> {
    let n = validate(a, directions)?;
    let k = directions.len();
    if k > n {
        return Ok(T::zero());
    }
    let basis = enumerate_strict(k, n);
    let q = basis.len();
    // complementary permanents per A(I|J), shared by every σ
    let comp = parallel::try_map_range(0..q * q, |idx| {
        per(&minor_complement(a, &basis[idx / q], &basis[idx % q])?)
    })?;
    let perms = PermutationSet::new(k);
    let dirs: Vec<&Matrix<T>> = directions.iter().collect();
    let per_sigma = parallel::try_map_range(0..perms.len(), |s| {
        let sigma = &perms.as_slice()[s];
        let mut terms = Vec::with_capacity(q * q);
        let ys = basis
            .iter()
            .map(|j| sigma_columns(&ReplacementSpec::new(j.clone(), dirs.clone(), n)?, sigma))
            .collect::<Result<Vec<_>>>()?;
        for (ii, i) in basis.iter().enumerate() {
            for (jj, j) in basis.iter().enumerate() {
                let y = per(&submatrix(&ys[jj], i, j)?)?;
                terms.push(comp[ii * q + jj].clone() * y);
            }
        }
        Ok(sum_ordered(terms))
    })?;
    Ok(sum_ordered(per_sigma))
}

/// `k! tr[tilde_sym_block(A, k) · mixed_sym_projected(X^1..X^k)]`, evaluated
/// as `tr[tilde · mixed_sym_sum]` so the `k!` cancels without division.
pub fn dkper_tensor<T: Scalar>(a: &Matrix<T>, directions: &[Matrix<T>]) -> Result<T> {
    let n = validate(a, directions)?;
    let k = directions.len();
    if k > n {
        return Ok(T::zero());
    }
    let tilde = tilde_sym_block(a, k)?;
    let mixed = mixed_sym_sum(directions)?;
    tilde.trace_product(&mixed)
}

/// `D^k per(A)(X, ..., X)` using the single-direction forms, which replace
/// the sum over `S_k` by a factor `k!`.
pub fn dkper_repeated<T: Scalar>(a: &Matrix<T>, x: &Matrix<T>, k: usize, formula: Formula) -> Result<T> {
    let n = validate(a, std::slice::from_ref(x))?;
    if k == 0 {
        return Err(Error::OutOfRange("derivative order must be at least 1".into()));
    }
    if k > n {
        return Ok(T::zero());
    }
    let kf = T::from_u64(factorial(k));
    let basis = enumerate_strict(k, n);
    let core = match formula {
        Formula::Columns => {
            let xs = vec![x; k];
            let terms = parallel::try_map_range(0..basis.len(), |j| {
                per(&column_replace(a, &ReplacementSpec::new(basis[j].clone(), xs.clone(), n)?)?)
            })?;
            sum_ordered(terms)
        }
        Formula::Minors => {
            let q = basis.len();
            let terms = parallel::try_map_range(0..q * q, |idx| {
                let (i, j) = (&basis[idx / q], &basis[idx % q]);
                Ok(per(&minor_complement(a, i, j)?)? * per(&submatrix(x, i, j)?)?)
            })?;
            sum_ordered(terms)
        }
        Formula::Tensor => tilde_sym_block(a, k)?.trace_product(&sym_power_projected(x, k)?)?,
    };
    Ok(kf * core)
}
