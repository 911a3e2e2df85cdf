use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{EMat, Elem, QuadLayer};
use crate::arith::{int, Rat};
use crate::linalg::{vadd, vscale, Mat, QVec};

/// Coordinates of `F^n` as `Q^{n [F:Q]}`: `a + c√d` in slot `k` becomes the
/// pair `(a, c)` at positions `2k, 2k + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Realification {
    pub layer: QuadLayer,
    pub n: usize,
}

impl Realification {
    pub fn new(layer: QuadLayer, n: usize) -> Self {
        Realification { layer, n }
    }

    pub fn deg(&self) -> usize {
        self.layer.degree()
    }

    pub fn dim(&self) -> usize {
        self.n * self.deg()
    }

    pub fn realify(&self, x: &[Elem]) -> QVec {
        assert_eq!(x.len(), self.n);
        if self.deg() == 1 {
            return x.iter().map(|e| e.a.clone()).collect();
        }
        x.iter().flat_map(|e| [e.a.clone(), e.c.clone()]).collect()
    }

    pub fn unrealify(&self, x: &[Rat]) -> Vec<Elem> {
        assert_eq!(x.len(), self.dim());
        if self.deg() == 1 {
            return x.iter().map(|a| Elem::rational(a.clone())).collect();
        }
        x.chunks(2).map(|c| Elem::new(c[0].clone(), c[1].clone(), self.layer.d)).collect()
    }

    /// Multiplication by `√d` on the realified space.
    pub fn omega(&self) -> Option<Mat> {
        if self.deg() == 1 {
            return None;
        }
        Some(self.realify_mat(&EMat::identity(self.n, self.layer.d).scale(&Elem::sqrt_d(self.layer.d))))
    }

    /// The `Q`-matrix of an `F`-linear map.
    pub fn realify_mat(&self, m: &EMat) -> Mat {
        assert_eq!((m.rows, m.cols), (self.n, self.n));
        if self.deg() == 1 {
            let mut out = Mat::zeros(self.n, self.n);
            for i in 0..self.n {
                for j in 0..self.n {
                    out[(i, j)] = m[(i, j)].a.clone();
                }
            }
            return out;
        }
        let d = int(self.layer.d);
        let mut out = Mat::zeros(2 * self.n, 2 * self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let x = &m[(i, j)];
                out[(2 * i, 2 * j)] = x.a.clone();
                out[(2 * i, 2 * j + 1)] = &x.c * &d;
                out[(2 * i + 1, 2 * j)] = x.c.clone();
                out[(2 * i + 1, 2 * j + 1)] = x.a.clone();
            }
        }
        out
    }

    /// Inverse of [`Realification::realify_mat`] on `F`-linear matrices.
    pub fn unrealify_mat(&self, m: &Mat) -> EMat {
        let mut out = EMat::zeros(self.n, self.n, self.layer.d);
        let k = self.deg();
        for i in 0..self.n {
            for j in 0..self.n {
                let a = m[(k * i, k * j)].clone();
                let c = if k == 2 { m[(k * i + 1, k * j)].clone() } else { Rat::zero() };
                out[(i, j)] = Elem::new(a, c, self.layer.d);
            }
        }
        out
    }
}

/// `Σ x_k b_k` where `x_k` acts on `b_k` through `omega` as `a + c ω`.
pub fn realify_basis_vector(coords: &[Elem], basis: &[QVec], omega: Option<&Mat>) -> QVec {
    let n = basis.first().map_or(0, |b| b.len());
    let mut out = vec![Rat::zero(); n];
    for (x, b) in coords.iter().zip(basis) {
        if !x.a.is_zero() {
            out = vadd(&out, &vscale(b, &x.a));
        }
        if !x.c.is_zero() {
            let w = omega.expect("irrational coefficient needs ω").mul_vec(b);
            out = vadd(&out, &vscale(&w, &x.c));
        }
    }
    out
}
