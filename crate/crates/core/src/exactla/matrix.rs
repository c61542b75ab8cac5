use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

/// Dense row-major matrix over a [`Field`].
///
/// Modules act on row vectors, so most of the crate multiplies `v * M`.
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
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from row vectors; `cols` is needed for the empty case.
    pub fn from_rows(field: &F, cols: usize, rows: &[Vec<F::Elem>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        Matrix { field: field.clone(), rows: rows.len(), cols, data }
    }

    pub fn from_i64(field: &F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<F::Elem>> =
            rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Self::from_rows(field, cols, &rows)
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
    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(&self.field, self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { field: self.field.clone(), rows: self.cols, cols: self.rows, data }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut data = vec![f.zero(); self.rows * other.cols];
        for i in 0..self.rows {
            let out = &mut data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for (j, o) in out.iter_mut().enumerate() {
                    let b = other.get(k, j);
                    if !f.is_zero(b) {
                        *o = f.add(o, &f.mul(a, b));
                    }
                }
            }
        }
        Ok(Matrix { field: f.clone(), rows: self.rows, cols: other.cols, data })
    }

    /// Panics on shape or field mismatch; use [`Matrix::try_mul`] for checked input.
    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("matrix product")
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&F::Elem, &F::Elem) -> F::Elem) -> Self {
        assert!(self.field == other.field, "field mismatch");
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| op(a, b)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.field.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.field.sub(a, b))
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, s)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// `c_0 M_0 + c_1 M_1 + ...`; all matrices must share a shape.
    pub fn linear_combination(field: &F, rows: usize, cols: usize, terms: &[(F::Elem, &Self)]) -> Self {
        let mut acc = Self::zeros(field, rows, cols);
        for (c, m) in terms {
            if field.is_zero(c) {
                continue;
            }
            for (a, b) in acc.data.iter_mut().zip(&m.data) {
                *a = field.add(a, &field.mul(c, b));
            }
        }
        acc
    }

    pub fn trace(&self) -> F::Elem {
        let f = &self.field;
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.rows);
        let f = &self.field;
        let mut out = vec![f.zero(); self.cols];
        for (k, a) in v.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(o, &f.mul(a, self.get(k, j)));
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of `{x : x M = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<F::Elem>> {
        self.transpose().kernel()
    }

    /// Canonical (reduced echelon) basis of the row space.
    pub fn row_space(&self) -> Self {
        let (r, pivots) = self.rref();
        let k = pivots.len();
        Matrix {
            field: self.field.clone(),
            rows: k,
            cols: self.cols,
            data: r.data[..k * self.cols].to_vec(),
        }
    }

    /// Basis of the column space, as column vectors taken from the pivot columns.
    pub fn column_space(&self) -> Vec<Vec<F::Elem>> {
        let (_, pivots) = self.rref();
        pivots.iter().map(|&c| (0..self.rows).map(|r| self.get(r, c).clone()).collect()).collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = Self::hstack(&[self, &Self::identity(&self.field, n)]);
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.submatrix(0..n, n..2 * n))
    }

    /// Any `x` with `M x = b`.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows);
        let f = &self.field;
        let col = Matrix { field: f.clone(), rows: self.rows, cols: 1, data: b.to_vec() };
        let aug = Self::hstack(&[self, &col]);
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Checked variant of [`Matrix::solve`] for right-hand sides given as matrices.
    pub fn try_solve(&self, b: &Self) -> Result<Option<Vec<F::Elem>>> {
        if self.field != b.field {
            return Err(Error::FieldMismatch);
        }
        if b.cols != 1 || b.rows != self.rows {
            return Err(Error::Shape("right-hand side must be a column of matching height".into()));
        }
        Ok(self.solve(&b.data))
    }

    /// Any `x` with `x M = b`.
    pub fn solve_left(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        self.transpose().solve(b)
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for r in rows.clone() {
            for c in cols.clone() {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { field: self.field.clone(), rows: rows.len(), cols: cols.len(), data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Matrix { field: self.field.clone(), rows: idx.len(), cols: self.cols, data }
    }

    pub fn hstack(parts: &[&Self]) -> Self {
        let field = parts[0].field.clone();
        let rows = parts[0].rows;
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for p in parts {
                assert_eq!(p.rows, rows, "hstack row mismatch");
                data.extend_from_slice(p.row(r));
            }
        }
        Matrix { field, rows, cols, data }
    }

    pub fn vstack(field: &F, cols: usize, parts: &[&Self]) -> Self {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&p.data);
            rows += p.rows;
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn block_diag(field: &F, blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    m.set(r0 + r, c0 + c, b.get(r, c).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Flattened row-major entries, as a vector of length `rows * cols`.
    pub fn flatten(&self) -> Vec<F::Elem> {
        self.data.clone()
    }

    pub fn unflatten(field: &F, rows: usize, cols: usize, v: &[F::Elem]) -> Self {
        Matrix { field: field.clone(), rows, cols, data: v.to_vec() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows)
                .map(|r| {
                    serde_json::Value::Array(self.row(r).iter().map(|x| self.field.to_json(x)).collect())
                })
                .collect(),
        )
    }

    pub fn from_json(field: &F, rows: usize, cols: usize, v: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("matrix: {m}"));
        let arr = v.as_array().ok_or_else(|| bad("expected an array of rows"))?;
        if arr.len() != rows {
            return Err(bad(&format!("expected {rows} rows, got {}", arr.len())));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for row in arr {
            let row = row.as_array().ok_or_else(|| bad("row is not an array"))?;
            if row.len() != cols {
                return Err(bad(&format!("expected {cols} columns, got {}", row.len())));
            }
            for x in row {
                data.push(field.from_json(x)?);
            }
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }
}

/// Row-space helpers. A subspace is stored as a matrix whose rows are its
/// reduced echelon basis; that form is canonical, so equality of subspaces is
/// equality of these matrices.
pub mod subspace {
    use super::*;

    pub fn span<F: Field>(field: &F, dim: usize, vectors: &[Vec<F::Elem>]) -> Matrix<F> {
        Matrix::from_rows(field, dim, vectors).row_space()
    }

    pub fn sum<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
        Matrix::vstack(a.field(), a.cols(), &[a, b]).row_space()
    }

    pub fn contains<F: Field>(basis: &Matrix<F>, v: &[F::Elem]) -> bool {
        coordinates(basis, v).is_some()
    }

    pub fn contains_all<F: Field>(basis: &Matrix<F>, other: &Matrix<F>) -> bool {
        sum(basis, other).rows() == basis.row_space().rows()
    }

    /// Coefficients of `v` in the rows of `basis` (rows must be independent).
    pub fn coordinates<F: Field>(basis: &Matrix<F>, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        basis.solve_left(v)
    }

    pub fn intersection<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
        let f = a.field();
        // x a = y b  <=>  (x, -y) [a; b] = 0
        let stacked = Matrix::vstack(f, a.cols(), &[a, b]);
        let rels = stacked.left_kernel();
        let vecs: Vec<Vec<F::Elem>> = rels.iter().map(|r| a.vec_mul(&r[..a.rows()])).collect();
        span(f, a.cols(), &vecs)
    }

    /// Rows completing the (echelon) `basis` to a basis of the ambient space:
    /// unit vectors at the non-pivot columns.
    pub fn complement<F: Field>(basis: &Matrix<F>) -> Matrix<F> {
        let f = basis.field();
        let (_, pivots) = basis.rref();
        let rows: Vec<Vec<F::Elem>> = (0..basis.cols())
            .filter(|c| !pivots.contains(c))
            .map(|c| {
                let mut v = vec![f.zero(); basis.cols()];
                v[c] = f.one();
                v
            })
            .collect();
        Matrix::from_rows(f, basis.cols(), &rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn f7() -> PrimeField {
        PrimeField::new(7).unwrap()
    }

    #[test]
    fn rref_and_kernel() {
        let f = f7();
        let m = Matrix::from_i64(&f, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|x| *x == 0));
    }

    #[test]
    fn inverse_round_trip() {
        let f = f7();
        let m = Matrix::from_i64(&f, &[&[1, 2], &[3, 4]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let sing = Matrix::from_i64(&f, &[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = f7();
        let m = Matrix::from_i64(&f, &[&[1, 1], &[2, 2]]);
        let x = m.solve(&[3, 6]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![3, 6]);
        assert!(m.solve(&[3, 5]).is_none());
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = Matrix::identity(&f7(), 2);
        let b = Matrix::identity(&PrimeField::new(5).unwrap(), 2);
        assert_eq!(a.try_mul(&b), Err(Error::FieldMismatch));
    }

    #[test]
    fn subspace_ops() {
        let f = f7();
        let a = subspace::span(&f, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let b = subspace::span(&f, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        let i = subspace::intersection(&a, &b);
        assert_eq!(i.rows(), 1);
        assert!(subspace::contains(&i, &[0, 3, 0]));
        assert_eq!(subspace::sum(&a, &b).rows(), 3);
        let c = subspace::complement(&a);
        assert_eq!(c.row_vecs(), vec![vec![0, 0, 1]]);
    }
}
