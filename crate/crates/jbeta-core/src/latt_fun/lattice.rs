use alloc::vec::Vec;

use num_traits::Zero;

use crate::arith::{ppow, reduce_mod_pk, val, Rat};
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, span_intersection, vscale, vsub, Mat, QVec};

/// A finitely generated `Z_(p)`-submodule of `Q^n`, kept in Hermite normal
/// form: echelon rows with pivots `p^k` and reduced entries above them.
///
/// The rank may be smaller than `n`; equality of lattices is equality of the
/// stored rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DvrLattice {
    p: u64,
    dim: usize,
    rows: Vec<QVec>,
    pivots: Vec<(usize, i64)>,
}

impl DvrLattice {
    pub fn from_gens(p: u64, dim: usize, gens: &[QVec]) -> DvrLattice {
        let mut pool: Vec<QVec> = gens.iter().filter(|g| !is_zero_vec(g)).cloned().collect();
        for g in &pool {
            assert_eq!(g.len(), dim, "generator of the wrong length");
        }
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..dim {
            let best = pool
                .iter()
                .enumerate()
                .filter_map(|(i, g)| val(&g[col], p).map(|v| (v, i)))
                .min();
            let Some((k, idx)) = best else { continue };
            let mut row = pool.swap_remove(idx);
            let unit = ppow(p, k) / &row[col];
            row = vscale(&row, &unit);
            for g in pool.iter_mut() {
                if !g[col].is_zero() {
                    let f = &g[col] / ppow(p, k);
                    *g = vsub(g, &vscale(&row, &f));
                }
            }
            pool.retain(|g| !is_zero_vec(g));
            rows.push(row);
            pivots.push((col, k));
        }
        debug_assert!(pool.is_empty());
        for i in 0..rows.len() {
            let (col, k) = pivots[i];
            for h in 0..i {
                let x = rows[h][col].clone();
                if x.is_zero() {
                    continue;
                }
                let r = reduce_mod_pk(&x, p, k);
                if r != x {
                    let q = (&x - &r) / ppow(p, k);
                    let sub = vscale(&rows[i], &q);
                    rows[h] = vsub(&rows[h], &sub);
                }
            }
        }
        DvrLattice { p, dim, rows, pivots }
    }

    pub fn zero(p: u64, dim: usize) -> DvrLattice {
        DvrLattice { p, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[QVec] {
        &self.rows
    }

    /// Sum of pivot exponents; compares indices of lattices in one space.
    pub fn log_volume(&self) -> i64 {
        self.pivots.iter().map(|&(_, k)| k).sum()
    }

    /// Coordinates in the stored basis, if `x` lies in the rational span.
    pub fn coords(&self, x: &[Rat]) -> Option<Vec<Rat>> {
        let mut y = x.to_vec();
        let mut out = Vec::with_capacity(self.rows.len());
        for (row, &(col, k)) in self.rows.iter().zip(&self.pivots) {
            let c = &y[col] / ppow(self.p, k);
            if !c.is_zero() {
                y = vsub(&y, &vscale(row, &c));
            }
            out.push(c);
        }
        if is_zero_vec(&y) {
            Some(out)
        } else {
            None
        }
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        match self.coords(x) {
            Some(c) => c.iter().all(|a| val(a, self.p).map_or(true, |v| v >= 0)),
            None => false,
        }
    }

    /// Largest `m` with `x ∈ p^m L`; `None` for `x = 0`, and also when `x` is
    /// outside the span (reported separately by `coords`).
    pub fn depth(&self, x: &[Rat]) -> Option<i64> {
        let c = self.coords(x)?;
        c.iter().filter_map(|a| val(a, self.p)).min()
    }

    pub fn is_subset(&self, other: &DvrLattice) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn scale_p(&self, k: i64) -> DvrLattice {
        let s = ppow(self.p, k);
        DvrLattice {
            p: self.p,
            dim: self.dim,
            rows: self.rows.iter().map(|r| vscale(r, &s)).collect(),
            pivots: self.pivots.iter().map(|&(c, e)| (c, e + k)).collect(),
        }
    }

    pub fn map(&self, m: &Mat) -> DvrLattice {
        let gens: Vec<QVec> = self.rows.iter().map(|r| m.mul_vec(r)).collect();
        DvrLattice::from_gens(self.p, m.rows(), &gens)
    }

    pub fn sum(&self, other: &DvrLattice) -> DvrLattice {
        let mut g = self.rows.clone();
        g.extend(other.rows.iter().cloned());
        DvrLattice::from_gens(self.p, self.dim, &g)
    }

    /// `{t ∈ Q^r : A t ∈ Z_(p)^m}` for `A` of full column rank `r`.
    pub fn preimage(p: u64, a: &Mat) -> Result<DvrLattice> {
        let r = a.cols();
        let rows: Vec<QVec> = (0..a.rows()).map(|i| a.row(i)).collect();
        let span = DvrLattice::from_gens(p, r, &rows);
        if span.rank() < r {
            return Err(Error::RankDeficient);
        }
        let basis = Mat::from_rows(&span.rows);
        let inv = basis.inverse().ok_or(Error::RankDeficient)?;
        Ok(DvrLattice::from_gens(p, r, &inv.columns()))
    }

    /// Rebuilds a lattice from coordinates `t` on a basis `w` of a subspace.
    fn from_coords(p: u64, dim: usize, w: &[QVec], coords: &DvrLattice) -> DvrLattice {
        let gens: Vec<QVec> = coords
            .basis()
            .iter()
            .map(|t| {
                let mut v = alloc::vec![Rat::zero(); dim];
                for (tj, wj) in t.iter().zip(w) {
                    if !tj.is_zero() {
                        v = crate::linalg::vadd(&v, &vscale(wj, tj));
                    }
                }
                v
            })
            .collect();
        DvrLattice::from_gens(p, dim, &gens)
    }

    /// Coordinates of the vectors `w` in the stored basis, as a matrix with
    /// one column per vector.
    fn coord_matrix(&self, w: &[QVec]) -> Mat {
        let mut a = Mat::zeros(self.rank(), w.len());
        for (j, wj) in w.iter().enumerate() {
            let c = self.coords(wj).expect("vector in the span");
            for (i, ci) in c.into_iter().enumerate() {
                a[(i, j)] = ci;
            }
        }
        a
    }

    /// `L ∩ K` for a rational subspace `K` given by a spanning set.
    pub fn intersect_subspace(&self, k: &[QVec]) -> DvrLattice {
        let w = span_intersection(self.dim, &self.rows, k);
        if w.is_empty() {
            return DvrLattice::zero(self.p, self.dim);
        }
        let a = self.coord_matrix(&w);
        let t = DvrLattice::preimage(self.p, &a).expect("injective coordinates");
        DvrLattice::from_coords(self.p, self.dim, &w, &t)
    }

    pub fn intersect(&self, other: &DvrLattice) -> DvrLattice {
        let w = span_intersection(self.dim, &self.rows, &other.rows);
        if w.is_empty() {
            return DvrLattice::zero(self.p, self.dim);
        }
        let a = self.coord_matrix(&w);
        let b = other.coord_matrix(&w);
        let mut rows: Vec<QVec> = (0..a.rows()).map(|i| a.row(i)).collect();
        rows.extend((0..b.rows()).map(|i| b.row(i)));
        let t = DvrLattice::preimage(self.p, &Mat::from_rows(&rows)).expect("injective coordinates");
        DvrLattice::from_coords(self.p, self.dim, &w, &t)
    }

    /// `{x ∈ span(target) : pairing(x, y) ∈ Z_(p) for all y ∈ L}`, where the
    /// pairing is `x^T G y`.
    pub fn pairing_dual(&self, gram: &Mat, target: &[QVec]) -> Result<DvrLattice> {
        let mut a = Mat::zeros(self.rank(), target.len());
        for (i, y) in self.rows.iter().enumerate() {
            let gy = gram.mul_vec(y);
            for (j, t) in target.iter().enumerate() {
                a[(i, j)] = crate::linalg::dot(t, &gy);
            }
        }
        let t = DvrLattice::preimage(self.p, &a)?;
        Ok(DvrLattice::from_coords(self.p, self.dim, target, &t))
    }

    /// The standard `Z_(p)`-basis of `Z_(p)^n`.
    pub fn standard(p: u64, n: usize) -> DvrLattice {
        let gens: Vec<QVec> = (0..n).map(|i| crate::linalg::unit_vec(n, i)).collect();
        DvrLattice::from_gens(p, n, &gens)
    }

    /// Whether the rows span the same rational space as `other`.
    pub fn same_span(&self, other: &DvrLattice) -> bool {
        self.rank() == other.rank() && self.rows.iter().all(|r| other.coords(r).is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::linalg::unit_vec;
    use alloc::vec;

    fn v(xs: &[i64]) -> QVec {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn canonical_form_is_generator_independent() {
        let a = DvrLattice::from_gens(3, 2, &[v(&[1, 0]), v(&[0, 3])]);
        let b = DvrLattice::from_gens(3, 2, &[v(&[2, 3]), v(&[5, 9]), v(&[1, -3])]);
        assert_eq!(a, b);
        assert_eq!(a.log_volume(), 1);
    }

    #[test]
    fn membership() {
        let l = DvrLattice::from_gens(3, 2, &[v(&[1, 1]), v(&[0, 3])]);
        assert!(l.contains(&v(&[4, 1])));
        assert!(!l.contains(&v(&[1, 0])));
        assert!(l.contains(&[rat(1, 2), rat(1, 2)]));
    }

    #[test]
    fn intersection_and_preimage() {
        let a = DvrLattice::from_gens(3, 2, &[v(&[1, 0]), v(&[0, 3])]);
        let b = DvrLattice::from_gens(3, 2, &[v(&[3, 0]), v(&[0, 1])]);
        let c = a.intersect(&b);
        assert_eq!(c, DvrLattice::from_gens(3, 2, &[v(&[3, 0]), v(&[0, 3])]));
        let line = a.intersect_subspace(&[v(&[1, 1])]);
        assert_eq!(line, DvrLattice::from_gens(3, 2, &[v(&[3, 3])]));
    }

    #[test]
    fn pairing_dual_of_standard_symplectic() {
        let j = Mat::from_rows(&[v(&[0, 1]), v(&[-1, 0])]);
        let l = DvrLattice::from_gens(3, 2, &[v(&[1, 0]), v(&[0, 3])]);
        let target = vec![unit_vec(2, 0), unit_vec(2, 1)];
        let d = l.pairing_dual(&j, &target).unwrap();
        assert_eq!(d, DvrLattice::from_gens(3, 2, &[vec![rat(1, 3), int(0)], v(&[0, 1])]));
    }
}
