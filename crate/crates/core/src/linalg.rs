//! Dense exact linear algebra over `Q(i)`.
//!
//! Everything is plain Gaussian elimination with first-nonzero pivoting; the
//! matrices in this crate are at most a few dozen rows wide.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::{format_scalar, GaussianRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![GaussianRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GaussianRational::one();
        }
        m
    }

    pub fn diagonal(values: &[GaussianRational]) -> Self {
        let mut m = Matrix::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| GaussianRational::from(v)).collect()).collect(),
        )
        .expect("ragged integer matrix")
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

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[GaussianRational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<GaussianRational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<GaussianRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, k: &GaussianRational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * k).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &Matrix,
        f: impl Fn(&GaussianRational, &GaussianRational) -> GaussianRational,
    ) -> Result<Matrix, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[GaussianRational]) -> Result<Vec<GaussianRational>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(GaussianRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Top-left `k x k` block.
    pub fn leading_block(&self, k: usize) -> Matrix {
        self.block(0, 0, k, k)
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut b = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                b[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        b
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn determinant(&self) -> Result<GaussianRational, LinalgError> {
        determinant(self)
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        inverse(self)
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = GaussianRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    /// Panics on shape mismatch.
    fn mul(self, rhs: &Matrix) -> Matrix {
        Matrix::mul(self, rhs).expect("matrix shape mismatch")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(format_scalar).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Result of reducing a matrix to reduced row echelon form.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: Matrix,
    /// Pivot column of each nonzero row, in row order.
    pub pivots: Vec<usize>,
    /// Product of the pivots before normalization, times the sign of the
    /// row permutation.
    pub det_factor: GaussianRational,
}

/// Reduced row echelon form by exact Gauss-Jordan elimination.
pub fn rref(m: &Matrix) -> Echelon {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut det = GaussianRational::one();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
            continue;
        };
        if p != row {
            for j in 0..a.cols {
                a.entries.swap(p * a.cols + j, row * a.cols + j);
            }
            det = -det;
        }
        let piv = a[(row, col)].clone();
        det = &det * &piv;
        let inv = piv.invert().expect("nonzero pivot");
        for j in col..a.cols {
            a[(row, j)] = &a[(row, j)] * &inv;
        }
        for r in 0..a.rows {
            if r == row || a[(r, col)].is_zero() {
                continue;
            }
            let f = a[(r, col)].clone();
            for j in col..a.cols {
                if !a[(row, j)].is_zero() {
                    let d = &f * &a[(row, j)];
                    a[(r, j)] -= &d;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    Echelon { reduced: a, pivots, det_factor: det }
}

pub fn determinant(m: &Matrix) -> Result<GaussianRational, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows, cols: m.cols });
    }
    let e = rref(m);
    if e.pivots.len() < m.rows {
        Ok(GaussianRational::zero())
    } else {
        Ok(e.det_factor)
    }
}

pub fn inverse(m: &Matrix) -> Result<Matrix, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    let mut aug = Matrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n + i)] = GaussianRational::one();
    }
    let e = rref(&aug);
    if e.pivots.len() < n || e.pivots[n - 1] >= n {
        return Err(LinalgError::Singular);
    }
    Ok(e.reduced.block(0, n, n, n))
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).pivots.len()
}

/// Some solution of `m x = b`, with free variables set to zero, or `None`
/// when the system is inconsistent.
pub fn solve(m: &Matrix, b: &[GaussianRational]) -> Result<Option<Vec<GaussianRational>>, LinalgError> {
    if b.len() != m.rows {
        return Err(LinalgError::DimensionMismatch("right-hand side length".into()));
    }
    let mut aug = Matrix::zeros(m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, m.cols)] = b[i].clone();
    }
    let e = rref(&aug);
    if e.pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![GaussianRational::zero(); m.cols];
    for (r, &c) in e.pivots.iter().enumerate() {
        x[c] = e.reduced[(r, m.cols)].clone();
    }
    Ok(Some(x))
}

/// A nonzero vector `v` with `m v = 0`, if one exists.
pub fn kernel_vector(m: &Matrix) -> Option<Vec<GaussianRational>> {
    let e = rref(m);
    let free = (0..m.cols).find(|c| !e.pivots.contains(c))?;
    let mut v = vec![GaussianRational::zero(); m.cols];
    v[free] = GaussianRational::one();
    for (r, &c) in e.pivots.iter().enumerate() {
        v[c] = -e.reduced[(r, free)].clone();
    }
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_scalar;
    use proptest::prelude::*;

    fn s(x: &str) -> GaussianRational {
        parse_scalar(x).unwrap()
    }

    fn m(rows: &[&[&str]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|x| s(x)).collect()).collect()).unwrap()
    }

    /// Cofactor expansion along the first row, kept independent of `rref`.
    fn cofactor_det(a: &Matrix) -> GaussianRational {
        let n = a.rows();
        if n == 1 {
            return a[(0, 0)].clone();
        }
        let mut acc = GaussianRational::zero();
        for j in 0..n {
            let minor = Matrix::from_rows(
                (1..n).map(|i| (0..n).filter(|&c| c != j).map(|c| a[(i, c)].clone()).collect()).collect(),
            )
            .unwrap();
            let term = &a[(0, j)] * &cofactor_det(&minor);
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&Matrix::identity(3)).unwrap(), s("1"));
        assert_eq!(determinant(&m(&[&["1", "-i"], &["i", "1"]])).unwrap(), s("0"));
        // I - C_3 for the n=4, s=3 example with a=1
        let i_minus_c = m(&[&["1", "0", "-1"], &["0", "1", "0"], &["1", "0", "1"]]);
        assert_eq!(cofactor_det(&i_minus_c), s("2"));
        assert_eq!(determinant(&i_minus_c).unwrap(), s("2"));
        assert!(matches!(determinant(&Matrix::zeros(2, 3)), Err(LinalgError::NotSquare { .. })));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse(&Matrix::identity(2)).unwrap(), Matrix::identity(2));
        let i_minus_c = m(&[&["1", "0", "-1"], &["0", "1", "0"], &["1", "0", "1"]]);
        let expected = m(&[&["1/2", "0", "1/2"], &["0", "1", "0"], &["-1/2", "0", "1/2"]]);
        assert_eq!(inverse(&i_minus_c).unwrap(), expected);
        let swap = m(&[&["0", "1"], &["1", "0"]]);
        assert_eq!(inverse(&swap).unwrap(), swap);
        assert_eq!(inverse(&m(&[&["1", "-i"], &["i", "1"]])), Err(LinalgError::Singular));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::zeros(4, 4)), 0);
        assert_eq!(rank(&Matrix::identity(4)), 4);
        let c = Matrix::from_i64(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
        assert_eq!(rank(&c), 2);
    }

    #[test]
    fn solve_and_kernel() {
        let a = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(solve(&a, &[s("1"), s("3")]).unwrap(), None);
        let x = solve(&a, &[s("1"), s("2")]).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), vec![s("1"), s("2")]);
        let k = kernel_vector(&a).unwrap();
        assert!(a.mul_vec(&k).unwrap().iter().all(Zero::is_zero));
        assert!(kernel_vector(&Matrix::identity(3)).is_none());
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec((-3i64..4, -2i64..3, 1i64..3), n * n).prop_map(move |v| {
            let rows = v
                .chunks(n)
                .map(|r| {
                    r.iter()
                        .map(|&(a, b, d)| GaussianRational::from_ratio(a, d) + GaussianRational::i() * GaussianRational::from(b))
                        .collect()
                })
                .collect();
            Matrix::from_rows(rows).unwrap()
        })
    }

    proptest! {
        #[test]
        fn det_is_multiplicative(a in arb_matrix(3), b in arb_matrix(3)) {
            let ab = &a * &b;
            prop_assert_eq!(determinant(&ab).unwrap(), determinant(&a).unwrap() * determinant(&b).unwrap());
            prop_assert_eq!(determinant(&a).unwrap(), cofactor_det(&a));
        }

        #[test]
        fn inverse_is_two_sided(a in arb_matrix(3)) {
            if let Ok(inv) = inverse(&a) {
                prop_assert!((&inv * &a).is_identity());
                prop_assert!((&a * &inv).is_identity());
            } else {
                prop_assert!(determinant(&a).unwrap().is_zero());
            }
        }

        #[test]
        fn rank_of_transpose(a in arb_matrix(4)) {
            prop_assert_eq!(rank(&a), rank(&a.transpose()));
        }
    }
}
