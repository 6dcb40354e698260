use std::fmt;

use num::{BigInt, One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rationals. `BigRational` keeps values reduced with positive
/// denominator, which is all the canonical form we need.
pub type Q = num::BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Dense row-major matrix over ℚ. Zero-sized shapes are allowed and behave
/// like the zero map between the corresponding spaces.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (r, c): (usize, usize)) -> &Q {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Q {
        &mut self.data[r * self.cols + c]
    }
}

/// Result of row reduction: the reduced matrix and its pivot columns.
pub struct Rref {
    pub m: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors, all of length `n`.
    pub fn from_cols(n: usize, cols: &[Vec<Q>]) -> Self {
        let mut m = Self::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), n);
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn col(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn col_vectors(&self) -> Vec<Vec<Q>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Q> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn entries(&self) -> &[Q] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::MalformedMap(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Panicking product for internal use where shapes are known to agree.
    pub fn dot(&self, other: &Matrix) -> Matrix {
        self.mul(other).expect("shape mismatch")
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.shape() != other.shape() {
            return Err(Error::MalformedMap(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn hstack(parts: &[&Matrix]) -> Result<Matrix> {
        let rows = match parts.first() {
            Some(p) => p.rows,
            None => return Ok(Self::zeros(0, 0)),
        };
        if parts.iter().any(|p| p.rows != rows) {
            return Err(Error::MalformedMap("hstack row mismatch".into()));
        }
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut off = 0;
        for p in parts {
            for i in 0..rows {
                for j in 0..p.cols {
                    out[(i, off + j)] = p[(i, j)].clone();
                }
            }
            off += p.cols;
        }
        Ok(out)
    }

    pub fn vstack(parts: &[&Matrix]) -> Result<Matrix> {
        let cols = match parts.first() {
            Some(p) => p.cols,
            None => return Ok(Self::zeros(0, 0)),
        };
        if parts.iter().any(|p| p.cols != cols) {
            return Err(Error::MalformedMap("vstack column mismatch".into()));
        }
        let mut data = Vec::new();
        for p in parts {
            data.extend(p.data.iter().cloned());
        }
        let rows = parts.iter().map(|p| p.rows).sum();
        Ok(Matrix { rows, cols, data })
    }

    pub fn block_diag(parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            for i in 0..p.rows {
                for j in 0..p.cols {
                    out[(r0 + i, c0 + j)] = p[(i, j)].clone();
                }
            }
            r0 += p.rows;
            c0 += p.cols;
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut out = Self::zeros(idx.len(), self.cols);
        for (k, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                out[(k, j)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut out = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                out[(i, k)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Gauss-Jordan elimination to reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(r, j)] * &f;
                    m[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the null space, as the columns of an `cols x k` matrix.
    pub fn kernel(&self) -> Matrix {
        let Rref { m, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out[(f, k)] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                out[(p, k)] = -m[(r, f)].clone();
            }
        }
        out
    }

    /// A basis of the column space chosen among the columns themselves.
    pub fn image(&self) -> Matrix {
        let piv = self.rref().pivots;
        self.select_cols(&piv)
    }

    /// Solves `self * X = b`; `None` when some column of `b` is not in the
    /// column space.
    pub fn solve(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows, "solve: row mismatch");
        let aug = Matrix::hstack(&[self, b]).ok()?;
        let Rref { m, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(self.cols, b.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(p, j)] = m[(r, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&Matrix::identity(self.rows))?;
        if self.rank() == self.rows {
            Some(x)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    /// Given a full-column-rank basis `self` of a subspace U ⊆ ℚⁿ, returns
    /// `(p, s)` with `p: ℚⁿ → ℚⁿ/U` (kernel exactly U) and a section `s`
    /// with `p·s = 1`. The complement is spanned by standard basis vectors
    /// chosen greedily, so the result is deterministic.
    pub fn quotient(&self) -> (Matrix, Matrix) {
        let n = self.rows;
        let u = self.image();
        let aug = Matrix::hstack(&[&u, &Matrix::identity(n)]).unwrap();
        let piv = aug.rref().pivots;
        let comp: Vec<usize> = piv.iter().filter(|&&p| p >= u.cols).map(|p| p - u.cols).collect();
        let s = Matrix::identity(n).select_cols(&comp);
        let full = Matrix::hstack(&[&u, &s]).unwrap();
        let inv = full.inverse().expect("basis extension is invertible");
        let idx: Vec<usize> = (u.cols..n).collect();
        (inv.select_rows(&idx), s)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|v| v.is_integer())
    }

    pub fn max_abs_num(&self) -> BigInt {
        self.data.iter().map(|v| v.numer().abs()).max().unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_reduced_rank_and_kernel() {
        let m = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.shape(), (2, 1));
        // (2, -1) up to scale
        assert_eq!(&k[(0, 0)] / &k[(1, 0)], q(-2));
        assert!(m.dot(&k).is_zero());
    }

    #[test]
    fn identity_and_zero() {
        let i = Matrix::identity(1);
        assert_eq!(i.rank(), 1);
        assert_eq!(i.kernel().cols(), 0);
        let z = Matrix::zeros(3, 3);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel().cols(), 3);
    }

    #[test]
    fn zero_sized_shapes() {
        let a = Matrix::zeros(0, 3);
        assert_eq!(a.kernel().cols(), 3);
        let b = Matrix::zeros(2, 0);
        assert_eq!(b.rank(), 0);
        assert_eq!(b.kernel().cols(), 0);
        assert_eq!(a.dot(&Matrix::zeros(3, 4)).shape(), (0, 4));
        assert_eq!(b.dot(&Matrix::zeros(0, 5)).shape(), (2, 5));
    }

    #[test]
    fn quotient_projection() {
        let u = Matrix::from_i64(&[&[1], &[1], &[0]]);
        let (p, s) = u.quotient();
        assert_eq!(p.shape(), (2, 3));
        assert!(p.dot(&u).is_zero());
        assert_eq!(p.dot(&s), Matrix::identity(2));
    }

    #[test]
    fn solve_and_inverse() {
        let a = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.dot(&inv), Matrix::identity(2));
        let b = Matrix::from_i64(&[&[3], &[2]]);
        assert_eq!(a.solve(&b).unwrap(), Matrix::from_i64(&[&[1], &[1]]));
        let sing = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_none());
        assert!(sing.solve(&Matrix::from_i64(&[&[1], &[0]])).is_none());
    }
}
