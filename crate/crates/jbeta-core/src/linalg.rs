//! Dense matrices over the rationals.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};
use num_traits::{One, Zero};

use crate::arith::Rat;

pub type QVec = Vec<Rat>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Index<(usize, usize)> for Mat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: &[QVec]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned());
        }
        Mat { rows: r, cols: c, data }
    }

    pub fn from_cols(n: usize, cols: &[QVec]) -> Self {
        let mut m = Self::zeros(n, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), n);
            for i in 0..n {
                m[(i, j)] = col[i].clone();
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

    pub fn row(&self, i: usize) -> QVec {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> QVec {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<QVec> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Mat::zeros(self.rows, other.cols);
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
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> QVec {
        assert_eq!(self.cols, v.len());
        let mut out = vec![Rat::zero(); self.rows];
        for i in 0..self.rows {
            let mut s = Rat::zero();
            for j in 0..self.cols {
                if !v[j].is_zero() && !self[(i, j)].is_zero() {
                    s += &self[(i, j)] * &v[j];
                }
            }
            out[i] = s;
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Rat) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn from_entries(rows: usize, cols: usize, data: Vec<Rat>) -> Mat {
        assert_eq!(data.len(), rows * cols);
        Mat { rows, cols, data }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
            m.swap_rows(r, piv);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
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

    fn swap_rows(&mut self, a: usize, b: usize) {
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

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rat::one();
        }
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// Some solution of `self * x = b`, if the system is consistent.
    pub fn solve(&self, b: &[Rat]) -> Option<QVec> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, piv) = aug.rref();
        if piv.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (row, &c) in piv.iter().enumerate() {
            x[c] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<QVec> {
        let (r, piv) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let mut out = Vec::new();
        for &f in &free {
            let mut v = vec![Rat::zero(); self.cols];
            v[f] = Rat::one();
            for (row, &c) in piv.iter().enumerate() {
                v[c] = -r[(row, f)].clone();
            }
            out.push(v);
        }
        out
    }

    /// A maximal linearly independent subset of the columns, in order.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().1
    }
}

impl core::fmt::Display for Mat {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    let mut s = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

pub fn vadd(a: &[Rat], b: &[Rat]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[Rat], b: &[Rat]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vscale(a: &[Rat], s: &Rat) -> QVec {
    a.iter().map(|x| x * s).collect()
}

pub fn is_zero_vec(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn unit_vec(n: usize, i: usize) -> QVec {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

/// Basis of the intersection of two column spans.
pub fn span_intersection(n: usize, a: &[QVec], b: &[QVec]) -> Vec<QVec> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut cols: Vec<QVec> = a.to_vec();
    cols.extend(b.iter().map(|v| vscale(v, &-Rat::one())));
    let m = Mat::from_cols(n, &cols);
    let mut out: Vec<QVec> = Vec::new();
    for k in m.kernel() {
        let mut v = vec![Rat::zero(); n];
        for (j, col) in a.iter().enumerate() {
            if !k[j].is_zero() {
                v = vadd(&v, &vscale(col, &k[j]));
            }
        }
        out.push(v);
    }
    let piv = Mat::from_cols(n, &out).independent_columns();
    piv.into_iter().map(|j| out[j].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn inverse_roundtrip() {
        let m = Mat::from_rows(&[vec![int(2), int(1)], vec![int(7), int(4)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2));
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = Mat::from_rows(&[vec![int(1), int(2), int(3)]]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(is_zero_vec(&m.mul_vec(&v)));
        }
    }

    #[test]
    fn intersection_of_planes() {
        let a = vec![unit_vec(3, 0), unit_vec(3, 1)];
        let b = vec![unit_vec(3, 1), unit_vec(3, 2)];
        let c = span_intersection(3, &a, &b);
        assert_eq!(c.len(), 1);
        assert!(c[0][0].is_zero() && c[0][2].is_zero());
    }
}
