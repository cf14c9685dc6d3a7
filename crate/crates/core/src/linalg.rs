//! Dense exact linear algebra over any [`Field`].
//!
//! Row and column positions are 0-based everywhere except in
//! [`IndexTuple`], which carries the 1-based index tuples used to address
//! minors.

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::gf::Field;

/// An ordered tuple of 1-based indices.
///
/// Order matters: `concat` appends, and the sign of a minor follows the
/// order of its row and column tuples.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IndexTuple(Vec<usize>);

impl IndexTuple {
    pub fn new(indices: Vec<usize>) -> Self {
        IndexTuple(indices)
    }

    pub fn empty() -> Self {
        IndexTuple(Vec::new())
    }

    /// `(lo, lo+1, …, hi)`; empty when `lo > hi`.
    pub fn range(lo: usize, hi: usize) -> Self {
        IndexTuple((lo..=hi).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// Concatenation `self ∪ other`.
    pub fn concat(&self, other: &IndexTuple) -> IndexTuple {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        IndexTuple(v)
    }

    /// `self ∪ (i)`.
    pub fn with(&self, i: usize) -> IndexTuple {
        let mut v = self.0.clone();
        v.push(i);
        IndexTuple(v)
    }

    /// `self \ other`: the subtuple of entries not in `other`.
    pub fn without(&self, other: &IndexTuple) -> IndexTuple {
        IndexTuple(self.0.iter().copied().filter(|i| !other.contains(*i)).collect())
    }

    /// `self ∩ other`: the subtuple of entries also in `other`.
    pub fn intersect(&self, other: &IndexTuple) -> IndexTuple {
        IndexTuple(self.0.iter().copied().filter(|i| other.contains(*i)).collect())
    }

    pub fn is_disjoint(&self, other: &IndexTuple) -> bool {
        self.intersect(other).is_empty()
    }

    pub fn min(&self) -> Option<usize> {
        self.0.iter().copied().min()
    }

    fn zero_based(&self, bound: usize) -> Result<Vec<usize>> {
        self.0
            .iter()
            .map(|&i| {
                if i == 0 || i > bound {
                    Err(Error::IndexOutOfRange { index: i, bound })
                } else {
                    Ok(i - 1)
                }
            })
            .collect()
    }
}

impl From<Vec<usize>> for IndexTuple {
    fn from(v: Vec<usize>) -> Self {
        IndexTuple(v)
    }
}

/// A dense row-major matrix over `F`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Index<(usize, usize)> for Matrix<F> {
    type Output = F::Elem;

    fn index(&self, (i, j): (usize, usize)) -> &F::Elem {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

/// Output of [`Matrix::rref`]: `transform · input = reduced`.
#[derive(Debug, Clone)]
pub struct Rref<F: Field> {
    pub reduced: Matrix<F>,
    pub transform: Matrix<F>,
    pub rank: usize,
    /// 1-based pivot columns, ascending.
    pub pivots: IndexTuple,
}

impl<F: Field> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    pub fn diagonal(field: F, diag: &[F::Elem]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(field, n, n);
        for (i, d) in diag.iter().enumerate() {
            m.data[i * n + i] = d.clone();
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| i == j || self.field.is_zero(&self.data[i * self.cols + j]))
        })
    }

    /// Entrywise image in another field.
    pub fn map<G: Field>(&self, field: &G, f: impl Fn(&F::Elem) -> G::Elem) -> Matrix<G> {
        Matrix {
            field: field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.data[i * self.cols + j].clone());
            }
        }
        Matrix {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = &self.data[i * self.cols + t];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[t * other.cols + j];
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&F::Elem, &F::Elem) -> F::Elem) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| op(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| self.field.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| self.field.sub(a, b))
    }

    pub fn neg(&self) -> Self {
        self.map(&self.field, |a| self.field.neg(a))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.map(&self.field, |a| self.field.mul(c, a))
    }

    /// Vertical concatenation.
    pub fn stack(&self, below: &Self) -> Result<Self> {
        if self.cols != below.cols {
            return Err(Error::DimensionMismatch(format!(
                "stacking {} columns on {} columns",
                self.cols, below.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&below.data);
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows + below.rows,
            cols: self.cols,
            data,
        })
    }

    /// Horizontal concatenation `(self | right)`.
    pub fn hconcat(&self, right: &Self) -> Result<Self> {
        if self.rows != right.rows {
            return Err(Error::DimensionMismatch(format!(
                "joining {} rows with {} rows",
                self.rows, right.rows
            )));
        }
        let mut data = Vec::with_capacity(self.data.len() + right.data.len());
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(right.row(i));
        }
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols + right.cols,
            data,
        })
    }

    /// Submatrix on 0-based row and column positions, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.data[i * self.cols + j].clone());
            }
        }
        Matrix {
            field: self.field.clone(),
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    /// Columns `start..end` (0-based, end exclusive).
    pub fn column_block(&self, start: usize, end: usize) -> Self {
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (start..end).collect();
        self.select(&rows, &cols)
    }

    /// First `n` rows.
    pub fn top_rows(&self, n: usize) -> Self {
        let rows: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        self.select(&rows, &cols)
    }

    /// Appends zero rows up to `rows` rows.
    pub fn pad_rows(&self, rows: usize) -> Self {
        let mut m = self.clone();
        if rows > m.rows {
            m.data.resize(rows * m.cols, m.field.zero());
            m.rows = rows;
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `row[dst] -= c * row[src]`
    fn axpy_row(&mut self, dst: usize, src: usize, c: &F::Elem) {
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if self.field.is_zero(s) {
                continue;
            }
            let t = self.field.mul(c, s);
            let idx = dst * self.cols + j;
            self.data[idx] = self.field.sub(&self.data[idx], &t);
        }
    }

    fn scale_row(&mut self, r: usize, c: &F::Elem) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            if !self.field.is_zero(&self.data[idx]) {
                self.data[idx] = self.field.mul(c, &self.data[idx]);
            }
        }
    }

    /// Gauss-Jordan in place, mirroring row operations onto `shadow`.
    /// Returns 0-based pivot columns.
    fn gauss_jordan(&mut self, mut shadow: Option<&mut Self>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.field.is_zero(&self.data[i * self.cols + c]))
            else {
                continue;
            };
            self.swap_rows(r, p);
            if let Some(s) = shadow.as_deref_mut() {
                s.swap_rows(r, p);
            }
            let inv = self
                .field
                .inv(&self.data[r * self.cols + c])
                .expect("pivot is nonzero");
            self.scale_row(r, &inv);
            if let Some(s) = shadow.as_deref_mut() {
                s.scale_row(r, &inv);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * self.cols + c].clone();
                if self.field.is_zero(&factor) {
                    continue;
                }
                self.axpy_row(i, r, &factor);
                if let Some(s) = shadow.as_deref_mut() {
                    s.axpy_row(i, r, &factor);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form with the recorded transform.
    pub fn rref(&self) -> Rref<F> {
        let mut reduced = self.clone();
        let mut transform = Self::identity(self.field.clone(), self.rows);
        let pivots = reduced.gauss_jordan(Some(&mut transform));
        Rref {
            rank: pivots.len(),
            pivots: IndexTuple(pivots.into_iter().map(|c| c + 1).collect()),
            reduced,
            transform,
        }
    }

    /// Reduced row echelon form and 0-based pivot columns, without the
    /// transform.
    pub fn echelon(&self) -> (Self, Vec<usize>) {
        let mut reduced = self.clone();
        let pivots = reduced.gauss_jordan(None);
        (reduced, pivots)
    }

    pub fn rank(&self) -> usize {
        // forward elimination only
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.field.is_zero(&m.data[i * m.cols + c])) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.field.inv(&m.data[r * m.cols + c]).expect("pivot is nonzero");
            for i in r + 1..m.rows {
                let e = &m.data[i * m.cols + c];
                if m.field.is_zero(e) {
                    continue;
                }
                let factor = m.field.mul(e, &inv);
                m.axpy_row(i, r, &factor);
            }
            r += 1;
        }
        r
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let mut inv = Self::identity(self.field.clone(), self.rows);
        let pivots = m.gauss_jordan(Some(&mut inv));
        if pivots.len() < self.rows {
            return Err(Error::Singular);
        }
        Ok(inv)
    }

    pub fn det(&self) -> Result<F::Elem> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        Ok(det_in_place(self.clone()))
    }

    /// `[J;L]`: determinant of the submatrix on rows `J` and columns `L`
    /// (1-based, in tuple order). `[∅;∅] = 1`.
    pub fn minor(&self, rows: &IndexTuple, cols: &IndexTuple) -> Result<F::Elem> {
        if rows.len() != cols.len() {
            return Err(Error::TupleLength(rows.len(), cols.len()));
        }
        let r = rows.zero_based(self.rows)?;
        let c = cols.zero_based(self.cols)?;
        Ok(det_in_place(self.select(&r, &c)))
    }
}

fn det_in_place<F: Field>(mut m: Matrix<F>) -> F::Elem {
    let n = m.rows;
    let f = m.field.clone();
    let mut det = f.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !f.is_zero(&m.data[i * n + c])) else {
            return f.zero();
        };
        if p != c {
            m.swap_rows(c, p);
            det = f.neg(&det);
        }
        let pivot = m.data[c * n + c].clone();
        det = f.mul(&det, &pivot);
        let inv = f.inv(&pivot).expect("pivot is nonzero");
        for i in c + 1..n {
            let e = &m.data[i * n + c];
            if f.is_zero(e) {
                continue;
            }
            let factor = f.mul(e, &inv);
            m.axpy_row(i, c, &factor);
        }
    }
    det
}

/// All `t`-subsets of `1..=n` in lexicographic order.
pub fn combinations(n: usize, t: usize) -> Vec<IndexTuple> {
    fn rec(start: usize, n: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<IndexTuple>) {
        if cur.len() == t {
            out.push(IndexTuple(cur.clone()));
            return;
        }
        for i in start..=n {
            if n - i + 1 < t - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, t, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, t, &mut Vec::new(), &mut out);
    out
}

/// Non-diagonal rank by exhaustive enumeration: one less than the least `t`
/// such that every `t×t` minor with disjoint row and column tuples
/// vanishes. Exponential in the size of `m`.
pub fn ndrank_definitional<F: Field>(m: &Matrix<F>) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("ndrank of a non-square matrix".into()));
    }
    let k = m.rows();
    for t in 1..=k {
        let subsets = combinations(k, t);
        let any_nonzero = subsets.iter().any(|j| {
            subsets
                .iter()
                .filter(|l| j.is_disjoint(l))
                .any(|l| !m.field().is_zero(&m.minor(j, l).expect("indices in range")))
        });
        if !any_nonzero {
            return Ok(t - 1);
        }
    }
    Ok(k)
}

/// Modified Gaussian elimination: finds disjoint `J, L` with `[J;L] ≠ 0`
/// that cannot be extended by any `j ≠ l` outside `J ∪ L`.
///
/// Pivots are restricted to off-diagonal positions `(j, l)` with both
/// indices still free; the smallest free row with such a pivot is taken,
/// then its smallest column. After each pivot every free row is reduced
/// against it, so the free block always holds the Schur complement of
/// `[J;L]`, whose entry `(a, b)` is `[J∪(a); L∪(b)] / [J;L]`. The loop stops
/// once that block is diagonal.
pub fn modified_gaussian<F: Field>(m: &Matrix<F>) -> Result<(IndexTuple, IndexTuple)> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("modified elimination needs a square matrix".into()));
    }
    if m.is_diagonal() {
        return Err(Error::DiagonalMatrix);
    }
    let k = m.rows();
    let f = m.field().clone();
    let mut n = m.clone();
    let mut rows = IndexTuple::empty();
    let mut cols = IndexTuple::empty();
    let mut free = IndexTuple::range(1, k);
    loop {
        let pick = free.iter().find_map(|j| {
            free.iter()
                .find(|&l| l != j && !f.is_zero(&n[(j - 1, l - 1)]))
                .map(|l| (j, l))
        });
        let Some((j, l)) = pick else { break };
        rows = rows.with(j);
        cols = cols.with(l);
        free = free.without(&IndexTuple::new(vec![j, l]));
        let inv = f.inv(&n[(j - 1, l - 1)])?;
        for i in free.iter() {
            let e = &n[(i - 1, l - 1)];
            if f.is_zero(e) {
                continue;
            }
            let factor = f.mul(e, &inv);
            n.axpy_row(i - 1, j - 1, &factor);
        }
    }
    Ok((rows, cols))
}
