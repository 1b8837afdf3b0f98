use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ExactError, Rational};

/// Dense matrix over Q, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Dense matrix over Z, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn scalar(n: usize, c: &Rational) -> Self {
        Self::identity(n).scale(c)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, ExactError> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(ExactError::RaggedRows);
        }
        Ok(Self {
            rows: n,
            cols: m,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Panics on ragged input; intended for literals.
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        IntMatrix::from_i64(rows).to_q()
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

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matrix shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> QMatrix {
        self.scale(&-Rational::one())
    }

    pub fn pow(&self, exponent: u32) -> QMatrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut result = QMatrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.denom().is_one())
    }

    pub fn to_int(&self) -> Option<IntMatrix> {
        if !self.is_integral() {
            return None;
        }
        Some(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.numer().clone()).collect(),
        })
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref_with_pivots(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &factor * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> QMatrix {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det *= &pivot;
            for i in c + 1..n {
                let factor = m.get(i, c) / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j) - &factor * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(QMatrix::zeros(0, 0));
        }
        let augmented = QMatrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let (reduced, pivots) = augmented.rref_with_pivots();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(QMatrix::from_fn(n, n, |i, j| reduced.get(i, n + j).clone()))
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (reduced, pivots) = self.rref_with_pivots();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// Solves `M x = b` for one solution when it exists.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(self.rows, b.len(), "matrix shape mismatch");
        let augmented = QMatrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (reduced, pivots) = augmented.rref_with_pivots();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = reduced.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn block_diag(blocks: &[QMatrix]) -> QMatrix {
        let rows = blocks.iter().map(QMatrix::rows).sum();
        let cols = blocks.iter().map(QMatrix::cols).sum();
        let mut out = QMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Panics on ragged input; intended for literals.
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == m), "ragged matrix literal");
        Self::from_fn(n, m, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, ExactError> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(ExactError::RaggedRows);
        }
        Ok(Self {
            rows: n,
            cols: m,
            data: rows.into_iter().flatten().collect(),
        })
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

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn to_q(&self) -> QMatrix {
        QMatrix::from_fn(self.rows, self.cols, |i, j| {
            Rational::from_integer(self.get(i, j).clone())
        })
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn pow(&self, exponent: u32) -> IntMatrix {
        assert!(self.is_square(), "power of a non-square matrix");
        (0..exponent).fold(IntMatrix::identity(self.rows), |acc, _| acc.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| *self.get(i, j) == -self.get(j, i).clone())
            })
    }

    /// Fraction-free Bareiss elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m.get(i, k).is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1)
    }

    /// Adjugate, so that `M * adj(M) = det(M) * I`.
    pub fn adjugate(&self) -> IntMatrix {
        let det = self.determinant();
        if !det.is_zero() {
            let inv = self.to_q().inverse().expect("nonzero determinant");
            return inv
                .scale(&Rational::from_integer(det))
                .to_int()
                .expect("adjugate is integral");
        }
        let n = self.rows;
        IntMatrix::from_fn(n, n, |i, j| {
            let minor = IntMatrix::from_fn(n - 1, n - 1, |r, c| {
                let rr = if r < j { r } else { r + 1 };
                let cc = if c < i { c } else { c + 1 };
                self.get(rr, cc).clone()
            });
            let d = minor.determinant();
            if (i + j) % 2 == 0 {
                d
            } else {
                -d
            }
        })
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(Signed::abs).max().unwrap_or_default()
    }

    pub fn block_diag(blocks: &[IntMatrix]) -> IntMatrix {
        let rows = blocks.iter().map(IntMatrix::rows).sum();
        let cols = blocks.iter().map(IntMatrix::cols).sum();
        let mut out = IntMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Columns `start..end` as a new matrix.
    pub fn column_slice(&self, start: usize, end: usize) -> IntMatrix {
        IntMatrix::from_fn(self.rows, end - start, |i, j| self.get(i, start + j).clone())
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += factor * row[source]`
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(source, j) * factor;
            self.data[target * self.cols + j] += v;
        }
    }

    /// `col[target] += factor * col[source]`
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, source) * factor;
            self.data[i * self.cols + target] += v;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn inverse_round_trip() {
        let m = QMatrix::from_i64(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMatrix::identity(3));
        assert_eq!(m.determinant(), int(18));
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = QMatrix::from_i64(&[vec![1, 2], vec![2, 4]]);
        assert!(m.inverse().is_none());
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn bareiss_agrees_with_rational_elimination() {
        let m = IntMatrix::from_i64(&[vec![0, 2, 1], vec![3, -1, 4], vec![5, 0, -2]]);
        assert_eq!(Rational::from_integer(m.determinant()), m.to_q().determinant());
    }

    #[test]
    fn adjugate_of_singular_matrix() {
        let m = IntMatrix::from_i64(&[vec![1, 2], vec![2, 4]]);
        let adj = m.adjugate();
        assert!(m.mul(&adj).is_zero());
        assert_eq!(adj, IntMatrix::from_i64(&[vec![4, -2], vec![-2, 1]]));
    }

    #[test]
    fn solve_finds_solution() {
        let m = QMatrix::from_i64(&[vec![1, 1], vec![1, -1]]);
        let x = m.solve(&[int(3), int(1)]).unwrap();
        assert_eq!(x, vec![int(2), int(1)]);
        let s = QMatrix::from_i64(&[vec![1, 1], vec![2, 2]]);
        assert!(s.solve(&[int(1), int(3)]).is_none());
        assert_eq!(rat(1, 2) * int(2), int(1));
    }
}
