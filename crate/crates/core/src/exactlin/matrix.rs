use std::fmt;
use std::ops::{Index, IndexMut};

use super::field::Field;

/// Dense row-major matrix over a single field.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors; all rows must have length `cols`.
    pub fn from_rows(rows: &[Vec<F>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r.iter().cloned());
        }
        Matrix { rows: rows.len(), cols, data }
    }

    pub fn from_columns(columns: &[Vec<F>], rows: usize) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<F>> = rows.iter().map(|r| r.iter().map(|&v| F::from_i64(v)).collect()).collect();
        Self::from_rows(&rows, cols)
    }

    pub fn scalar(s: F) -> Self {
        Matrix { rows: 1, cols: 1, data: vec![s] }
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

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.clone() * s.clone()).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// Matrix product `self * other`, iterating over whichever factor has fewer nonzeros.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        let nnz = |m: &Self| m.data.iter().filter(|x| !x.is_zero()).count();
        if nnz(other) * self.rows < nnz(self) * other.cols {
            for k in 0..other.rows {
                for j in 0..other.cols {
                    let b = &other.data[k * other.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    for i in 0..self.rows {
                        let a = &self.data[i * self.cols + k];
                        if !a.is_zero() {
                            let idx = i * other.cols + j;
                            out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                        }
                    }
                }
            }
            return out;
        }
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k * other.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc + a.clone() * x.clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// Kronecker product; the left factor indexes the most significant digit.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a.clone() * other[(k, l)].clone();
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    /// Entrywise comparison using the field's zero test (tolerant for complex matrices).
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| (a.clone() - b.clone()).is_zero())
    }

    pub fn rank(&self) -> usize {
        Rref::of(self).pivots.len()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        Rref::of(self).kernel_basis()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| if j < n { self[(i, j)].clone() } else if j - n == i { F::one() } else { F::zero() });
        let r = Rref::of(&aug);
        if r.pivots.len() < n || r.pivots[n - 1] >= n {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r.matrix[(i, n + j)].clone()))
    }

    /// One solution of `self * x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let n = self.cols;
        let aug = Self::from_fn(self.rows, n + 1, |i, j| if j < n { self[(i, j)].clone() } else { b[i].clone() });
        let r = Rref::of(&aug);
        if r.pivots.last() == Some(&n) {
            return None;
        }
        let mut x = vec![F::zero(); n];
        for (k, &p) in r.pivots.iter().enumerate() {
            x[p] = r.matrix[(k, n)].clone();
        }
        Some(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

impl<F: Field> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F: Field> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Rref<F> {
    pub fn of(m: &Matrix<F>) -> Self {
        let mut basis = EchelonBasis::new(m.cols);
        for i in 0..m.rows {
            basis.insert(m.row(i).to_vec());
        }
        basis.into_rref()
    }

    /// Null-space basis; one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let cols = self.matrix.cols;
        let free: Vec<usize> = (0..cols).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); cols];
                v[f] = F::one();
                for (r, &p) in self.pivots.iter().enumerate() {
                    v[p] = -self.matrix[(r, f)].clone();
                }
                v
            })
            .collect()
    }
}

/// Incrementally maintained reduced echelon basis of a row space.
///
/// Rows are kept fully reduced against one another, so inserting a vector
/// costs one pass over the current pivots and touches only nonzero entries.
#[derive(Clone, Debug)]
pub struct EchelonBasis<F: Field> {
    cols: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(cols: usize) -> Self {
        EchelonBasis { cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis in place.
    pub fn reduce(&self, v: &mut [F]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.clone() - c.clone() * r.clone();
                }
            }
        }
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<F>) -> bool {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        // eliminate the new pivot from existing rows
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, n) in row.iter_mut().zip(&v) {
                if !n.is_zero() {
                    *x = x.clone() - c.clone() * n.clone();
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    pub fn into_rref(self) -> Rref<F> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let pivots: Vec<usize> = order.iter().map(|&i| self.pivots[i]).collect();
        let rows: Vec<Vec<F>> = order.into_iter().map(|i| self.rows[i].clone()).collect();
        Rref { matrix: Matrix::from_rows(&rows, self.cols), pivots }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{Fp, Q};

    #[test]
    fn product_and_kron_shapes() {
        let a: Matrix<Q> = Matrix::from_i64(&[&[1, 2], &[3, 4]]);
        let i: Matrix<Q> = Matrix::identity(2);
        assert_eq!(a.mul(&i), a);
        let k = a.kron(&i);
        assert_eq!((k.rows(), k.cols()), (4, 4));
        assert_eq!(k[(2, 0)], Q::from_i64(3));
        assert_eq!(k[(2, 1)], Q::from_i64(0));
    }

    #[test]
    fn solve_finds_a_solution_or_reports_inconsistency() {
        let a: Matrix<Q> = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        let b = vec![Q::from_i64(3), Q::from_i64(6)];
        let x = a.solve(&b).unwrap();
        assert_eq!(a.apply(&x), b);
        assert!(a.solve(&[Q::from_i64(1), Q::from_i64(1)]).is_none());
    }

    #[test]
    fn sparse_right_factor_product_agrees() {
        let a: Matrix<Q> = Matrix::from_i64(&[&[1, 2, 3], &[4, 5, 6]]);
        let p: Matrix<Q> = Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 0], &[1, 0, 0]]);
        assert_eq!(a.mul(&p), Matrix::from_i64(&[&[3, 1, 0], &[6, 4, 0]]));
    }

    #[test]
    fn inverse_over_q_and_fp() {
        let a: Matrix<Q> = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        assert!(a.mul(&a.inverse().unwrap()).is_identity());
        let s: Matrix<Fp<2>> = Matrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(s.inverse().is_none());
        let t: Matrix<Fp<3>> = Matrix::from_i64(&[&[1, 1], &[1, 2]]);
        assert!(t.mul(&t.inverse().unwrap()).is_identity());
    }

    #[test]
    fn echelon_basis_membership() {
        let mut b = EchelonBasis::<Q>::new(3);
        assert!(b.insert(vec![Q::from_i64(1), Q::from_i64(1), Q::from_i64(0)]));
        assert!(!b.insert(vec![Q::from_i64(2), Q::from_i64(2), Q::from_i64(0)]));
        assert!(b.contains(&[Q::from_i64(-3), Q::from_i64(-3), Q::from_i64(0)]));
        assert!(!b.contains(&[Q::from_i64(0), Q::from_i64(0), Q::from_i64(1)]));
    }
}
