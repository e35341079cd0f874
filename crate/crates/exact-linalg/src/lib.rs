//! Exact rational and integer linear algebra: sparse matrices over Q with
//! reduced row echelon form, kernels, linear solving, row-space sums, a
//! tracked echelon for incremental reduction, and integer Smith normal form.
//!
//! Everything here is exact; no floating point is used anywhere.

pub mod echelon;
pub mod snf;

use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

pub use echelon::Echelon;
pub use snf::smith_normal_form;

/// Arbitrary-precision integer.
pub type Int = BigInt;
/// Arbitrary-precision rational, always reduced, denominator positive.
pub type Rat = BigRational;

/// Sparse vector over Q: index -> nonzero coefficient.
pub type SparseVec = BTreeMap<usize, Rat>;

/// Builds a rational from machine integers.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Builds an integer-valued rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from(Int::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRatError(pub String);

impl fmt::Display for ParseRatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal: {}", self.0)
    }
}

impl std::error::Error for ParseRatError {}

/// Parses "p" or "p/q" with an optional leading minus sign; q must be nonzero.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let bad = || ParseRatError(s.to_string());
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: Int = num_str.trim().parse().map_err(|_| bad())?;
    let d: Int = den_str.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

/// Renders a rational as "p" or "p/q".
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Adds `coef * source` into `target`, dropping entries that become zero.
pub fn add_scaled(target: &mut SparseVec, source: &SparseVec, coef: &Rat) {
    if coef.is_zero() {
        return;
    }
    for (&i, v) in source {
        let entry = target.entry(i).or_insert_with(Rat::zero);
        *entry += v * coef;
        if entry.is_zero() {
            target.remove(&i);
        }
    }
}

/// Sparse matrix over Q, stored row-major; zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

/// Result of row reduction: the reduced matrix, its pivot columns in
/// increasing order, and the rank.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: QMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Rat>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = QMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_sparse_rows(rows: Vec<SparseVec>, cols: usize) -> Self {
        for row in &rows {
            if let Some((&last, _)) = row.last_key_value() {
                assert!(last < cols, "entry column {last} out of range {cols}");
            }
            debug_assert!(row.values().all(|v| !v.is_zero()));
        }
        QMatrix { rows: rows.len(), cols, data: rows }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.data[r].get(&c).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
    }

    pub fn push_row(&mut self, row: SparseVec) {
        if let Some((&last, _)) = row.last_key_value() {
            assert!(last < self.cols, "entry column {last} out of range");
        }
        self.data.push(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zero(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (&j, v) in row {
                t.data[j].insert(i, v.clone());
            }
        }
        t
    }

    /// Matrix product self * other.
    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = QMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = SparseVec::new();
            for (&k, v) in &self.data[i] {
                add_scaled(&mut acc, &other.data[k], v);
            }
            out.data[i] = acc;
        }
        out
    }

    /// Applies the matrix to a column vector: returns self * v.
    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        let mut out = vec![Rat::zero(); self.rows];
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = Rat::zero();
            for (&j, coef) in row {
                acc += coef * &v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Row vector times matrix: returns v * self, for sparse row vectors.
    pub fn vec_mul(&self, v: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (&i, coef) in v {
            assert!(i < self.rows, "dimension mismatch in vec_mul");
            add_scaled(&mut acc, &self.data[i], coef);
        }
        acc
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    /// Reduced row echelon form with deterministic pivoting: among candidate
    /// rows for a column, the one with the fewest stored entries wins, ties
    /// broken by smallest numerator magnitude of the candidate entry, then by
    /// row position. Pivot rows come first in the result, ordered by pivot
    /// column; zero rows follow.
    pub fn rref(&self) -> Rref {
        let mut work: Vec<SparseVec> = self.data.clone();
        let mut is_pivot_row = vec![false; work.len()];
        let mut pivot_rows: Vec<usize> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for col in 0..self.cols {
            let mut best: Option<usize> = None;
            for (i, row) in work.iter().enumerate() {
                if is_pivot_row[i] {
                    continue;
                }
                let entry = match row.get(&col) {
                    Some(v) => v,
                    None => continue,
                };
                match best {
                    None => best = Some(i),
                    Some(b) => {
                        let cur = (work[b].len(), work[b][&col].numer().abs());
                        let cand = (row.len(), entry.numer().abs());
                        if cand < cur {
                            best = Some(i);
                        }
                    }
                }
            }
            let Some(p) = best else { continue };
            let lead = work[p][&col].clone();
            let inv = lead.recip();
            let scaled: SparseVec =
                work[p].iter().map(|(&j, v)| (j, v * &inv)).collect();
            work[p] = scaled;
            let pivot_row = work[p].clone();
            for (i, row) in work.iter_mut().enumerate() {
                if i == p {
                    continue;
                }
                if let Some(c) = row.get(&col).cloned() {
                    add_scaled(row, &pivot_row, &(-c));
                }
            }
            is_pivot_row[p] = true;
            pivot_rows.push(p);
            pivots.push(col);
        }
        let mut data: Vec<SparseVec> = Vec::with_capacity(work.len());
        for &p in &pivot_rows {
            data.push(std::mem::take(&mut work[p]));
        }
        for (i, row) in work.into_iter().enumerate() {
            if !is_pivot_row[i] {
                debug_assert!(row.is_empty(), "non-pivot row must be zero");
                data.push(row);
            }
        }
        let rank = pivots.len();
        Rref { matrix: QMatrix { rows: self.rows, cols: self.cols, data }, pivots, rank }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Rows spanning the right null space {x : self * x = 0}. One row per
    /// free column, in increasing free-column order; the free coordinate is 1.
    pub fn kernel_basis(&self) -> QMatrix {
        let Rref { matrix, pivots, rank } = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut out_rows = Vec::new();
        for f in 0..self.cols {
            if pivot_set.contains(&f) {
                continue;
            }
            let mut v = SparseVec::new();
            v.insert(f, Rat::one());
            for (i, &p) in pivots.iter().enumerate().take(rank) {
                if let Some(c) = matrix.data[i].get(&f) {
                    v.insert(p, -c.clone());
                }
            }
            out_rows.push(v);
        }
        QMatrix::from_sparse_rows(out_rows, self.cols)
    }

    /// One solution x of self * x = b, free coordinates set to zero, or None
    /// if the system is inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows, "dimension mismatch in solve");
        let mut aug = QMatrix::zero(self.rows, self.cols + 1);
        for (i, row) in self.data.iter().enumerate() {
            aug.data[i] = row.clone();
            if !b[i].is_zero() {
                aug.data[i].insert(self.cols, b[i].clone());
            }
        }
        let Rref { matrix, pivots, rank } = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate().take(rank) {
            if let Some(v) = matrix.data[i].get(&self.cols) {
                x[p] = v.clone();
            }
        }
        Some(x)
    }

    /// Canonical basis matrix (reduced echelon, no zero rows) of the sum of
    /// the two row spaces. With `other` empty this canonicalizes one space.
    pub fn rowspace_sum(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.cols, "dimension mismatch in rowspace_sum");
        let mut stacked = self.data.clone();
        stacked.extend(other.data.iter().cloned());
        let st = QMatrix { rows: stacked.len(), cols: self.cols, data: stacked };
        let Rref { matrix, rank, .. } = st.rref();
        let data = matrix.data.into_iter().take(rank).collect::<Vec<_>>();
        QMatrix { rows: rank, cols: self.cols, data }
    }
}
