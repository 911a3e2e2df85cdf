use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use super::Elem;

/// Dense matrix over one layer `Q(√d)` (or `Q` when `d == 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EMat {
    pub rows: usize,
    pub cols: usize,
    pub d: i64,
    data: Vec<Elem>,
}

impl Index<(usize, usize)> for EMat {
    type Output = Elem;
    fn index(&self, (i, j): (usize, usize)) -> &Elem {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for EMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Elem {
        &mut self.data[i * self.cols + j]
    }
}

impl EMat {
    pub fn zeros(rows: usize, cols: usize, d: i64) -> EMat {
        EMat { rows, cols, d, data: vec![Elem::zero(); rows * cols] }
    }

    pub fn identity(n: usize, d: i64) -> EMat {
        let mut m = EMat::zeros(n, n, d);
        for i in 0..n {
            m[(i, i)] = Elem::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>, d: i64) -> EMat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.into_iter().map(|x| x.with_layer(d)));
        }
        EMat { rows: r, cols: c, d, data }
    }

    pub fn from_cols(cols: &[Vec<Elem>], d: i64) -> EMat {
        let n = cols.first().map_or(0, |c| c.len());
        let mut m = EMat::zeros(n, cols.len(), d);
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                m[(i, j)] = c[i].clone().with_layer(d);
            }
        }
        m
    }

    pub fn col(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> EMat {
        let mut t = EMat::zeros(self.cols, self.rows, self.d);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Entrywise Galois conjugation.
    pub fn conj(&self) -> EMat {
        EMat { rows: self.rows, cols: self.cols, d: self.d, data: self.data.iter().map(Elem::conj).collect() }
    }

    pub fn mul(&self, o: &EMat) -> EMat {
        assert_eq!(self.cols, o.rows);
        let mut out = EMat::zeros(self.rows, o.cols, self.d);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = &self[(i, k)] * &o[(k, j)];
                    out[(i, j)] = &out[(i, j)] + &v;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = Elem::zero().with_layer(self.d);
                for j in 0..self.cols {
                    s = &s + &(&self[(i, j)] * &v[j]);
                }
                s
            })
            .collect()
    }

    pub fn scale(&self, s: &Elem) -> EMat {
        EMat { rows: self.rows, cols: self.cols, d: self.d, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn sub(&self, o: &EMat) -> EMat {
        EMat {
            rows: self.rows,
            cols: self.cols,
            d: self.d,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Elem::is_zero)
    }

    pub fn inverse(&self) -> Option<EMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = EMat::identity(n, self.d);
        for c in 0..n {
            let piv = (c..n).find(|&i| !a[(i, c)].is_zero())?;
            a.swap_rows(c, piv);
            inv.swap_rows(c, piv);
            let s = a[(c, c)].inv();
            for j in 0..n {
                a[(c, j)] = &a[(c, j)] * &s;
                inv[(c, j)] = &inv[(c, j)] * &s;
            }
            for i in 0..n {
                if i == c || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in 0..n {
                    a[(i, j)] = &a[(i, j)] - &(&f * &a[(c, j)]);
                    inv[(i, j)] = &inv[(i, j)] - &(&f * &inv[(c, j)]);
                }
            }
        }
        Some(inv)
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
