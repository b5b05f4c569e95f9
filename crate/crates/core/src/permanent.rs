//! Permanent evaluation, minors, Laplace expansion, the permanental adjoint,
//! and the column-replacement constructors used by the derivative formulas.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::multiindex::{enumerate_strict, next_permutation, MultiIndex, Permutation};
use crate::parallel;
use crate::scalar::{sum_ordered, Scalar};

/// Largest order accepted by [`per_naive`].
pub const NAIVE_MAX_ORDER: usize = 10;

/// [`per`] switches from the permutation sum to Ryser's formula at this order.
pub const RYSER_CROSSOVER: usize = 5;

/// Largest order accepted by [`per_ryser`].
pub const RYSER_MAX_ORDER: usize = 30;

/// Gray-code steps per independently seeded block in [`per_ryser`].
const RYSER_BLOCK: u64 = 1 << 12;

/// Sum over all `n!` permutations, in lexicographic order.
pub fn per_naive<T: Scalar>(a: &Matrix<T>) -> Result<T> {
    let n = a.order()?;
    if n > NAIVE_MAX_ORDER {
        return Err(Error::TooLarge {
            what: "naive permanent",
            order: n,
            limit: NAIVE_MAX_ORDER,
        });
    }
    let mut sigma: Vec<usize> = (0..n).collect();
    let mut total = T::zero();
    loop {
        let term = sigma
            .iter()
            .enumerate()
            .fold(T::one(), |acc, (i, &s)| acc * a[(i, s)].clone());
        total = total + term;
        if !next_permutation(&mut sigma) {
            break;
        }
    }
    Ok(total)
}

/// Permanent of a square matrix; the 0x0 permanent is 1.
pub fn per<T: Scalar>(a: &Matrix<T>) -> Result<T> {
    let n = a.order()?;
    if n < RYSER_CROSSOVER {
        per_naive(a)
    } else {
        per_ryser(a)
    }
}

/// Ryser's inclusion-exclusion formula,
/// `per A = (-1)^n Σ_S (-1)^|S| Π_i Σ_{j∈S} a_ij`,
/// walking the subsets in Gray-code order so each step adds or removes one
/// column from the running row sums.
///
/// The walk is cut into fixed-size blocks whose row sums are rebuilt from
/// scratch; block partial sums are reduced in block order, so the result
/// does not depend on whether the blocks ran in parallel.
pub fn per_ryser<T: Scalar>(a: &Matrix<T>) -> Result<T> {
    let n = a.order()?;
    if n == 0 {
        return Ok(T::one());
    }
    if n > RYSER_MAX_ORDER {
        return Err(Error::TooLarge {
            what: "Ryser permanent",
            order: n,
            limit: RYSER_MAX_ORDER,
        });
    }
    let total_steps = 1u64 << n;
    let blocks = total_steps.div_ceil(RYSER_BLOCK) as usize;
    let partials = parallel::map_range(0..blocks, |b| {
        let start = b as u64 * RYSER_BLOCK;
        let end = (start + RYSER_BLOCK).min(total_steps);
        ryser_block(a, n, start, end)
    });
    let sum = sum_ordered(partials);
    Ok(if n % 2 == 1 { -sum } else { sum })
}

fn ryser_block<T: Scalar>(a: &Matrix<T>, n: usize, start: u64, end: u64) -> T {
    let mut subset = start ^ (start >> 1);
    let mut row_sums: Vec<T> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| subset & (1 << j) != 0)
                .fold(T::zero(), |acc, j| acc + a[(i, j)].clone())
        })
        .collect();
    let mut acc = T::zero();
    for step in start..end {
        if step > start {
            let j = step.trailing_zeros() as usize;
            let adding = subset & (1 << j) == 0;
            subset ^= 1 << j;
            for (i, s) in row_sums.iter_mut().enumerate() {
                let v = a[(i, j)].clone();
                *s = if adding { s.clone() + v } else { s.clone() - v };
            }
        }
        if subset == 0 {
            continue;
        }
        let prod = row_sums.iter().fold(T::one(), |p, s| p * s.clone());
        acc = if subset.count_ones() % 2 == 1 { acc - prod } else { acc + prod };
    }
    acc
}

fn check_bounds(idx: &MultiIndex, limit: usize, what: &str) -> Result<()> {
    if idx.max_entry() > limit {
        return Err(Error::Bounds(format!("{what} index {idx} exceeds {limit}")));
    }
    Ok(())
}

/// `A[I|J]`: the `(r, s)` entry is `a_{i_r, j_s}`. Weak indices repeat rows
/// or columns.
pub fn submatrix<T: Scalar>(a: &Matrix<T>, rows: &MultiIndex, cols: &MultiIndex) -> Result<Matrix<T>> {
    check_bounds(rows, a.rows(), "row")?;
    check_bounds(cols, a.cols(), "column")?;
    let r: Vec<usize> = rows.offsets().collect();
    let c: Vec<usize> = cols.offsets().collect();
    Ok(Matrix::from_fn(r.len(), c.len(), |p, q| a[(r[p], c[q])].clone()))
}

/// `A(I|J)`: delete rows `I` and columns `J`.
pub fn minor_complement<T: Scalar>(
    a: &Matrix<T>,
    rows: &MultiIndex,
    cols: &MultiIndex,
) -> Result<Matrix<T>> {
    if rows.len() != cols.len() {
        return Err(Error::ShapeMismatch(format!(
            "row index {rows} and column index {cols} differ in length"
        )));
    }
    submatrix(a, &rows.complement(a.rows())?, &cols.complement(a.cols())?)
}

/// `Σ_{J∈Q_{k,n}} per A[I|J] · per A(I|J)` for the fixed rows `I`.
pub fn laplace_per<T: Scalar>(a: &Matrix<T>, rows: &MultiIndex) -> Result<T> {
    let n = a.order()?;
    if rows.kind() != crate::multiindex::IndexKind::Strict {
        return Err(Error::MultiIndex("Laplace expansion needs strict rows".into()));
    }
    check_bounds(rows, n, "row")?;
    let terms = enumerate_strict(rows.len(), n)
        .into_iter()
        .map(|cols| {
            Ok(per(&submatrix(a, rows, &cols)?)? * per(&minor_complement(a, rows, &cols)?)?)
        })
        .collect::<Result<Vec<T>>>()?;
    Ok(sum_ordered(terms))
}

/// Permanental adjoint: the `(i, j)` entry is `per A(i|j)`.
pub fn padj<T: Scalar>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let n = a.order()?;
    let singles = enumerate_strict(1, n);
    let entries = parallel::try_map_range(0..n * n, |idx| {
        per(&minor_complement(a, &singles[idx / n], &singles[idx % n])?)
    })?;
    Matrix::from_vec(n, n, entries)
}

/// The data of `A(J; X^1, ..., X^k)`: which columns to replace and the
/// matrices supplying them.
#[derive(Clone, Debug)]
pub struct ReplacementSpec<'a, T> {
    columns: MultiIndex,
    directions: Vec<&'a Matrix<T>>,
    order: usize,
}

impl<'a, T: Scalar> ReplacementSpec<'a, T> {
    pub fn new(columns: MultiIndex, directions: Vec<&'a Matrix<T>>, order: usize) -> Result<Self> {
        if columns.kind() != crate::multiindex::IndexKind::Strict {
            return Err(Error::MultiIndex("replaced columns must be strictly increasing".into()));
        }
        if columns.len() != directions.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} columns but {} direction matrices",
                columns.len(),
                directions.len()
            )));
        }
        check_bounds(&columns, order, "column")?;
        if let Some(bad) = directions.iter().find(|x| x.rows() != order || x.cols() != order) {
            return Err(Error::ShapeMismatch(format!(
                "direction is {}x{}, expected {order}x{order}",
                bad.rows(),
                bad.cols()
            )));
        }
        Ok(ReplacementSpec {
            columns,
            directions,
            order,
        })
    }

    pub fn columns(&self) -> &MultiIndex {
        &self.columns
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

/// `A(J; X^1..X^k)`: column `j_p` comes from `X^p`, all others from `A`.
pub fn column_replace<T: Scalar>(a: &Matrix<T>, spec: &ReplacementSpec<'_, T>) -> Result<Matrix<T>> {
    if a.rows() != spec.order || a.cols() != spec.order {
        return Err(Error::ShapeMismatch(format!(
            "matrix is {}x{}, replacement expects order {}",
            a.rows(),
            a.cols(),
            spec.order
        )));
    }
    let mut source: Vec<&Matrix<T>> = vec![a; spec.order];
    for (p, j) in spec.columns.offsets().enumerate() {
        source[j] = spec.directions[p];
    }
    Ok(Matrix::from_fn(spec.order, spec.order, |i, j| source[j][(i, j)].clone()))
}

/// `Y^σ_[J]`: column `j_p` comes from `X^{σ(p)}`, all other columns are zero.
pub fn sigma_columns<T: Scalar>(spec: &ReplacementSpec<'_, T>, sigma: &Permutation) -> Result<Matrix<T>> {
    if sigma.len() != spec.columns.len() {
        return Err(Error::ShapeMismatch(format!(
            "permutation of {} symbols for {} replaced columns",
            sigma.len(),
            spec.columns.len()
        )));
    }
    let n = spec.order;
    let mut y = Matrix::zeros(n, n);
    for (p, j) in spec.columns.offsets().enumerate() {
        let x = spec.directions[sigma.apply(p)];
        for i in 0..n {
            y[(i, j)] = x[(i, j)].clone();
        }
    }
    Ok(y)
}
