//! Dense matrices over exact rings, with rational elimination routines.

use std::fmt::Debug;
use std::ops::{Index, IndexMut, Neg};

use num_bigint::BigInt;
use num_traits::{Num, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{q, Rational};

/// Scalar types a [`Matrix`] can hold.
pub trait Scalar: Num + Neg<Output = Self> + Clone + Debug {}
impl<T: Num + Neg<Output = T> + Clone + Debug> Scalar for T {}

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type QMatrix = Matrix<Rational>;
pub type ZMatrix = Matrix<BigInt>;

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::input(format!(
                "matrix of shape {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::input("ragged matrix rows"));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[Vec<T>]) -> Self {
        Matrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        Matrix::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { T::zero() })
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

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(T::zero(), |acc, j| acc + self[(i, j)].clone() * v[j].clone())
            })
            .collect()
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

    pub fn scale(&self, s: &T) -> Self {
        self.map(|a| a.clone() * s.clone())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self[(i, i)].is_one() && (i + 1..self.cols).all(|j| self[(i, j)].is_zero())
            })
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..=i).all(|j| self[(i, j)] == -self[(j, i)].clone()))
    }

    /// Block-diagonal sum of square blocks.
    pub fn block_diagonal(blocks: &[Self]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zeros(n, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(off + i, off + j)] = b[(i, j)].clone();
                }
            }
            off += b.rows;
        }
        out
    }

    /// Smallest `k` with `self^k = 0`, if the matrix is nilpotent.
    pub fn nilpotency_index(&self) -> Option<u32> {
        assert!(self.is_square());
        let mut p = Matrix::identity(self.rows);
        for k in 0..=self.rows as u32 {
            if p.is_zero() {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }
}

impl ZMatrix {
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
            .expect("rectangular literal")
    }

    pub fn to_rational(&self) -> QMatrix {
        self.map(|a| Rational::from_integer(a.clone()))
    }

    /// Fraction-free determinant (Bareiss).
    pub fn det(&self) -> BigInt {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs().is_one()
    }

    /// Exact integer inverse when the determinant is a unit.
    pub fn inverse_unimodular(&self) -> Option<ZMatrix> {
        if !self.is_unimodular() {
            return None;
        }
        let inv = self.to_rational().inverse()?;
        Some(inv.map(|x| x.to_integer()))
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
}

impl QMatrix {
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
            .expect("rectangular literal")
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn to_integer(&self) -> Option<ZMatrix> {
        self.is_integral().then(|| self.map(|x| x.to_integer()))
    }

    /// Reduced row-echelon form together with the pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
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
            m.swap_rows(p, r);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let v = &m[(r, j)] * &f;
                        m[(i, j)] -= v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> Rational {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for i in c + 1..n {
                if !m[(i, c)].is_zero() {
                    let f = &m[(i, c)] / &piv;
                    for j in c..n {
                        let v = &m[(c, j)] * &f;
                        m[(i, j)] -= v;
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    /// One solution of `self * x = b`, if any.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Evaluates the bilinear form `u^T self v`.
    pub fn bilinear(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.rows {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.cols {
                if !v[j].is_zero() && !self[(i, j)].is_zero() {
                    acc += &u[i] * &self[(i, j)] * &v[j];
                }
            }
        }
        acc
    }

    /// `exp(t d) = sum_k t^k d^k / k!` for nilpotent `d`.
    pub fn nilpotent_exp(&self, t: &Rational) -> Result<QMatrix> {
        let k = self
            .nilpotency_index()
            .ok_or_else(|| Error::precondition("matrix is not nilpotent"))?;
        let n = self.rows;
        let mut term = Matrix::identity(n);
        let mut acc = Matrix::identity(n);
        for i in 1..k {
            term = term.mul(self).scale(&(t / q(i as i64)));
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// `log(g) = sum_k (-1)^{k+1} (g - I)^k / k` for unipotent `g`.
    pub fn unipotent_log(&self) -> Result<QMatrix> {
        let n = self.rows;
        let u = self.sub(&Matrix::identity(n));
        let k = u
            .nilpotency_index()
            .ok_or_else(|| Error::precondition("matrix is not unipotent"))?;
        let mut acc = Matrix::zeros(n, n);
        let mut power = Matrix::identity(n);
        for i in 1..k {
            power = power.mul(&u);
            let c = if i % 2 == 1 { q(1) } else { q(-1) } / q(i as i64);
            acc = acc.add(&power.scale(&c));
        }
        Ok(acc)
    }

    /// `g^t = exp(t log g)` for unipotent `g` and rational `t`.
    pub fn unipotent_power(&self, t: &Rational) -> Result<QMatrix> {
        self.unipotent_log()?.nilpotent_exp(t)
    }
}

pub fn rational_vec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x)).collect()
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    u.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

pub fn lin_comb(coeffs: &[Rational], vectors: &[Vec<Rational>], dim: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); dim];
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    #[test]
    fn integer_determinants() {
        let m = ZMatrix::from_i64(&[&[1, 5, 2], &[2, -1, -1], &[3, 2, 0]]);
        assert_eq!(m.det(), BigInt::from(1));
        let s = ZMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(s.det(), BigInt::from(-1));
        let z = ZMatrix::from_i64(&[&[0, 0, 1], &[0, 2, 0], &[3, 0, 0]]);
        assert_eq!(z.det(), BigInt::from(-6));
        let sing = ZMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(sing.det().is_zero());
    }

    #[test]
    fn rational_det_matches_integer_det() {
        let m = ZMatrix::from_i64(&[&[2, 7, 1, 0], &[0, 0, 3, 1], &[5, 1, 0, 2], &[1, 1, 1, 1]]);
        assert_eq!(m.to_rational().det(), Rational::from_integer(m.det()));
    }

    #[test]
    fn inverse_and_kernel() {
        let m = QMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let s = QMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = s.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(is_zero_vec(&s.mul_vec(v)));
        }
        assert!(s.transpose().mul(&s).inverse().is_none());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = QMatrix::from_i64(&[&[1, 1], &[1, -1]]);
        assert_eq!(m.solve(&rational_vec(&[3, 1])).unwrap(), rational_vec(&[2, 1]));
        let s = QMatrix::from_i64(&[&[1, 1], &[2, 2]]);
        assert!(s.solve(&rational_vec(&[1, 3])).is_none());
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let z = QMatrix::zeros(3, 3);
        assert!(z.nilpotent_exp(&q(5)).unwrap().is_identity());
    }

    #[test]
    fn exp_half_of_jordan_block() {
        let d = QMatrix::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        let e = d.nilpotent_exp(&qf(1, 2)).unwrap();
        // term-by-term: I + d/2 + d^2/8
        assert_eq!(e[(1, 0)], qf(1, 2));
        assert_eq!(e[(2, 1)], qf(1, 2));
        assert_eq!(e[(2, 0)], qf(1, 8));
        assert_eq!(e[(0, 0)], q(1));
    }

    #[test]
    fn exp_rejects_non_nilpotent() {
        let d = QMatrix::from_i64(&[&[1, 0], &[0, 0]]);
        assert!(matches!(d.nilpotent_exp(&q(1)), Err(Error::Precondition(_))));
    }

    #[test]
    fn log_inverts_exp() {
        let g = QMatrix::from_i64(&[&[1, 0, 0, 0], &[3, 1, 0, 0], &[-2, 5, 1, 0], &[7, 1, 4, 1]]);
        let l = g.unipotent_log().unwrap();
        assert_eq!(l.nilpotent_exp(&q(1)).unwrap(), g);
        assert_eq!(g.unipotent_power(&q(3)).unwrap(), g.pow(3));
        assert_eq!(g.unipotent_power(&q(-1)).unwrap(), g.inverse().unwrap());
    }
}
