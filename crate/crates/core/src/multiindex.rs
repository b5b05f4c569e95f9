//! Multi-index sets, permutations, and the small combinatorial helpers every
//! sum in the crate ranges over.
//!
//! Indices are 1-based, as in the usual matrix notation `a_{ij}`; conversion
//! to 0-based offsets happens only when a matrix entry is read. Strictly
//! increasing tuples (`Q_{k,n}`) and non-decreasing tuples (`G_{k,n}`) are
//! always produced in lexicographic order, which is the canonical basis order
//! for the tensor blocks.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndexKind {
    /// Strictly increasing entries.
    Strict,
    /// Non-decreasing entries.
    Weak,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    entries: Vec<usize>,
    kind: IndexKind,
}

impl MultiIndex {
    pub fn strict(entries: Vec<usize>) -> Result<Self> {
        if entries.contains(&0) {
            return Err(Error::MultiIndex(format!("{entries:?} has a zero entry")));
        }
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::MultiIndex(format!("{entries:?} is not strictly increasing")));
        }
        Ok(MultiIndex {
            entries,
            kind: IndexKind::Strict,
        })
    }

    pub fn weak(entries: Vec<usize>) -> Result<Self> {
        if entries.contains(&0) {
            return Err(Error::MultiIndex(format!("{entries:?} has a zero entry")));
        }
        if entries.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::MultiIndex(format!("{entries:?} is decreasing somewhere")));
        }
        Ok(MultiIndex {
            entries,
            kind: IndexKind::Weak,
        })
    }

    /// `(1, 2, ..., n)`
    pub fn full(n: usize) -> Self {
        MultiIndex {
            entries: (1..=n).collect(),
            kind: IndexKind::Strict,
        }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn kind(&self) -> IndexKind {
        self.kind
    }

    /// Largest entry, or 0 for the empty index.
    pub fn max_entry(&self) -> usize {
        self.entries.last().copied().unwrap_or(0)
    }

    /// 0-based offsets for matrix access.
    pub fn offsets(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|&e| e - 1)
    }

    /// `m(I)`: product of the factorials of the entry multiplicities.
    pub fn multiplicity(&self) -> u64 {
        let mut m = 1u64;
        let mut run = 0u64;
        for (pos, e) in self.entries.iter().enumerate() {
            if pos > 0 && self.entries[pos - 1] == *e {
                run += 1;
            } else {
                run = 1;
            }
            m *= run;
        }
        m
    }

    /// The strictly increasing tuple `[1..n] \ I`.
    pub fn complement(&self, n: usize) -> Result<MultiIndex> {
        if self.kind != IndexKind::Strict {
            return Err(Error::MultiIndex("complement of a weak multi-index".into()));
        }
        if self.max_entry() > n {
            return Err(Error::Bounds(format!("{self} is not contained in [1..{n}]")));
        }
        let mut rest = Vec::with_capacity(n - self.len());
        let mut it = self.entries.iter().peekable();
        for v in 1..=n {
            if it.peek() == Some(&&v) {
                it.next();
            } else {
                rest.push(v);
            }
        }
        Ok(MultiIndex {
            entries: rest,
            kind: IndexKind::Strict,
        })
    }

    /// `|I|`: the sum of the entries.
    pub fn weight(&self) -> usize {
        self.entries.iter().sum()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// `Q_{k,n}` in lexicographic order. Empty when `k > n`; `[()]` when `k = 0`.
pub fn enumerate_strict(k: usize, n: usize) -> Vec<MultiIndex> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(binomial(n, k) as usize);
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(MultiIndex {
            entries: cur.clone(),
            kind: IndexKind::Strict,
        });
        // rightmost position that can still be incremented
        let Some(p) = (0..k).rev().find(|&p| cur[p] < n - (k - 1 - p)) else {
            break;
        };
        cur[p] += 1;
        for q in p + 1..k {
            cur[q] = cur[q - 1] + 1;
        }
    }
    out
}

/// `G_{k,n}` in lexicographic order.
pub fn enumerate_weak(k: usize, n: usize) -> Vec<MultiIndex> {
    if n == 0 {
        return if k == 0 {
            vec![MultiIndex {
                entries: Vec::new(),
                kind: IndexKind::Weak,
            }]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::with_capacity(binomial(n + k - 1, k) as usize);
    let mut cur = vec![1usize; k];
    loop {
        out.push(MultiIndex {
            entries: cur.clone(),
            kind: IndexKind::Weak,
        });
        let Some(p) = (0..k).rev().find(|&p| cur[p] < n) else {
            break;
        };
        cur[p] += 1;
        for q in p + 1..k {
            cur[q] = cur[p];
        }
    }
    out
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

pub fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// A permutation of `{0, .., k-1}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(k: usize) -> Self {
        Permutation((0..k).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &v in &images {
            if v >= k || std::mem::replace(&mut seen[v], true) {
                return Err(Error::OutOfRange(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Image of `p` (0-based).
    pub fn apply(&self, p: usize) -> usize {
        self.0[p]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }
}

/// `S_k` in lexicographic one-line order.
#[derive(Clone, Debug)]
pub struct PermutationSet {
    k: usize,
    elements: Vec<Permutation>,
}

impl PermutationSet {
    pub fn new(k: usize) -> Self {
        let mut elements = Vec::with_capacity(factorial(k) as usize);
        let mut cur: Vec<usize> = (0..k).collect();
        loop {
            elements.push(Permutation(cur.clone()));
            if !next_permutation(&mut cur) {
                break;
            }
        }
        PermutationSet { k, elements }
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Permutation> {
        self.elements.iter()
    }

    pub fn as_slice(&self) -> &[Permutation] {
        &self.elements
    }
}

/// Advances to the lexicographically next permutation; false after the last.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).expect("successor exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}
