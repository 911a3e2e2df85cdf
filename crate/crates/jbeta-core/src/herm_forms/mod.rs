//! ε-hermitian forms, adjoints, dual lattices and Witt decompositions.
//!
//! Forms are sesquilinear in the first variable:
//! `h(x, y) = (x^σ)^T G y`, so `h(ax, y) = h(x, a^σ y)` with
//! `a^σ = G^{-1} (a^σ_F)^T G`.

mod isotropy;
mod witt;

pub use isotropy::{find_rational_isotropic, padic_isotropic};
pub use witt::{witt_decompose, WittDecomposition};

use alloc::format;
use alloc::vec::Vec;

use crate::arith::{int, Rat};
use crate::error::{Error, Result};
use crate::field_tower::{EMat, Elem, FieldTower, QuadLayer, Realification};
use crate::latt_fun::{DvrLattice, Layer};
use crate::linalg::{dot, unit_vec, Mat, QVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormCase {
    Orthogonal,
    Symplectic,
    Unitary,
}

impl FormCase {
    pub fn name(&self) -> &'static str {
        match self {
            FormCase::Orthogonal => "orthogonal",
            FormCase::Symplectic => "symplectic",
            FormCase::Unitary => "unitary",
        }
    }

    pub fn classify(sigma: bool, eps: i32) -> FormCase {
        match (sigma, eps) {
            (true, _) => FormCase::Unitary,
            (false, 1) => FormCase::Orthogonal,
            _ => FormCase::Symplectic,
        }
    }
}

/// An ε-hermitian form on an `L`-space with a chosen `L`-basis.
///
/// `basis` holds the realified basis vectors inside the ambient `Q^N`, and
/// `omega` the action of `√d` there, so results of computations in
/// `L`-coordinates can be carried back to the ambient space.
#[derive(Clone, Debug)]
pub struct EpsilonHermitianForm {
    pub layer: QuadLayer,
    pub eps: i32,
    pub gram: EMat,
    pub case: FormCase,
    pub basis: Vec<QVec>,
    pub omega: Option<Mat>,
}

pub type HermForm = EpsilonHermitianForm;

impl EpsilonHermitianForm {
    /// A form on `F^n` in its standard basis.
    pub fn ambient(tower: &FieldTower, eps: i32, gram: EMat) -> Result<Self> {
        let n = gram.rows;
        if gram.cols != n {
            return Err(Error::DimensionMismatch(format!("Gram matrix is {}x{}", gram.rows, gram.cols)));
        }
        let r = Realification::new(tower.f, n);
        let k = r.deg();
        let basis = (0..n).map(|i| unit_vec(r.dim(), k * i)).collect();
        Self::on_basis(tower.f, eps, gram, basis, r.omega())
    }

    pub fn on_basis(layer: QuadLayer, eps: i32, gram: EMat, basis: Vec<QVec>, omega: Option<Mat>) -> Result<Self> {
        if eps != 1 && eps != -1 {
            return Err(Error::NotEpsilonHermitian(format!("ε = {eps}")));
        }
        if gram.rows != gram.cols || gram.rows != basis.len() {
            return Err(Error::DimensionMismatch("Gram matrix and basis disagree".into()));
        }
        let gram = EMat::from_rows((0..gram.rows).map(|i| (0..gram.cols).map(|j| gram[(i, j)].clone()).collect()).collect(), layer.d);
        let sigma = !layer.is_base();
        let f = EpsilonHermitianForm { layer, eps, case: FormCase::classify(sigma, eps), gram, basis, omega };
        let lhs = f.gram.transpose();
        let rhs = f.sigma_mat(&f.gram).scale(&Elem::from_int(eps as i64));
        if lhs != rhs {
            return Err(Error::NotEpsilonHermitian("G^T != ε G^σ".into()));
        }
        if f.gram.inverse().is_none() {
            return Err(Error::DegenerateForm);
        }
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.gram.rows
    }

    pub fn sigma_nontrivial(&self) -> bool {
        !self.layer.is_base()
    }

    pub fn sigma(&self, x: &Elem) -> Elem {
        if self.sigma_nontrivial() {
            x.conj()
        } else {
            x.clone()
        }
    }

    fn sigma_mat(&self, m: &EMat) -> EMat {
        if self.sigma_nontrivial() {
            m.conj()
        } else {
            m.clone()
        }
    }

    /// `h(x, y)` on coordinate vectors.
    pub fn eval(&self, x: &[Elem], y: &[Elem]) -> Elem {
        let gy = self.gram.mul_vec(y);
        let mut s = Elem::zero().with_layer(self.layer.d);
        for (a, b) in x.iter().zip(&gy) {
            s = &s + &(&self.sigma(a) * b);
        }
        s
    }

    /// `G^{-1} (a^{σ})^T G`.
    pub fn adjoint(&self, a: &EMat) -> Result<EMat> {
        let n = self.dim();
        if a.rows != n || a.cols != n {
            return Err(Error::DimensionMismatch(format!("endomorphism is {}x{}, form has dimension {n}", a.rows, a.cols)));
        }
        let ginv = self.gram.inverse().ok_or(Error::DegenerateForm)?;
        Ok(ginv.mul(&self.sigma_mat(a).transpose()).mul(&self.gram))
    }

    pub fn scaled(&self, u: &Elem) -> Result<Self> {
        Self::on_basis(self.layer, self.eps, self.gram.scale(u), self.basis.clone(), self.omega.clone())
    }

    /// The layer as a lattice-function layer.
    pub fn lattice_layer(&self, name: &str) -> Layer {
        Layer::new(name, self.layer, self.omega.clone())
    }

    /// Carries `L`-coordinates to the ambient space.
    pub fn to_ambient(&self, x: &[Elem]) -> QVec {
        crate::field_tower::realify_basis_vector(x, &self.basis, self.omega.as_ref())
    }

    /// The `Q`-bilinear form `μ ∘ h`, with `μ(a + c√d) = a`, on the `Q`-basis
    /// `b_1, √d b_1, b_2, ...` of the `L`-span.
    pub fn q_gram(&self) -> Mat {
        let k = self.layer.degree();
        let n = self.dim();
        let w = self.layer.generator();
        let pw = |s: usize| if s == 0 { Elem::one() } else { w.clone() };
        let mut out = Mat::zeros(k * n, k * n);
        for i in 0..n {
            for j in 0..n {
                for s in 0..k {
                    for t in 0..k {
                        let v = &(&self.sigma(&pw(s)) * &self.gram[(i, j)]) * &pw(t);
                        out[(k * i + s, k * j + t)] = v.a;
                    }
                }
            }
        }
        out
    }

    /// The realified form on the ambient space, assuming the stored basis
    /// is the standard basis.
    pub fn realified(&self, name: &str) -> RealifiedForm {
        RealifiedForm::new(self.q_gram(), self.lattice_layer(name), self.eps)
    }
}

/// `μ ∘ h` on the ambient space `Q^N`, with the module layer it lives on.
#[derive(Clone, Debug)]
pub struct RealifiedForm {
    pub gram: Mat,
    gram_inv: Mat,
    pub layer: Layer,
    pub eps: i32,
}

impl RealifiedForm {
    pub fn new(gram: Mat, layer: Layer, eps: i32) -> RealifiedForm {
        let gram_inv = gram.inverse().expect("nondegenerate form");
        RealifiedForm { gram, gram_inv, layer, eps }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn bilinear(&self, x: &[Rat], y: &[Rat]) -> Rat {
        dot(x, &self.gram.mul_vec(y))
    }

    /// `h(x, y) ∈ L` from the realified data.
    pub fn value(&self, x: &[Rat], y: &[Rat]) -> Elem {
        value_on_layer(&self.gram, &self.layer, x, y)
    }

    /// `a^σ = B^{-1} a^T B`.
    pub fn adjoint(&self, a: &Mat) -> Mat {
        self.gram_inv.mul(&a.transpose()).mul(&self.gram)
    }

    pub fn scaled(&self, u: &Rat) -> RealifiedForm {
        RealifiedForm::new(self.gram.scale(u), self.layer.clone(), self.eps)
    }
}

/// `h(x, y) = B(x, y) + B(x, ω y)/d · √d`.
pub fn value_on_layer(gram: &Mat, layer: &Layer, x: &[Rat], y: &[Rat]) -> Elem {
    let a = dot(x, &gram.mul_vec(y));
    if layer.deg() == 1 {
        return Elem::rational(a);
    }
    let wy = layer.apply_omega(y);
    let c = dot(x, &gram.mul_vec(&wy)) / int(layer.field.d);
    Elem::new(a, c, layer.field.d)
}

/// `L^♯ = { x : h(x, L) ⊂ p_F }` for a full-rank `o_F`-lattice.
pub fn dual_lattice(l: &DvrLattice, form: &RealifiedForm) -> Result<DvrLattice> {
    let n = form.dim();
    if l.rank() != n {
        return Err(Error::RankDeficient);
    }
    let target: Vec<QVec> = (0..n).map(|i| unit_vec(n, i)).collect();
    Ok(l.pairing_dual(&form.gram, &target)?.scale_p(1))
}

/// Whether `x` is fixed, as a whole matrix, by `a ↦ -a^σ`.
pub fn is_skew(form: &RealifiedForm, a: &Mat) -> bool {
    a.add(&form.adjoint(a)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn e(rows: &[&[i64]]) -> EMat {
        EMat::from_rows(rows.iter().map(|r| r.iter().map(|&x| Elem::from_int(x)).collect()).collect(), 0)
    }

    fn sp2() -> HermForm {
        HermForm::ambient(&FieldTower::rational(3).unwrap(), -1, e(&[&[0, 1], &[-1, 0]])).unwrap()
    }

    #[test]
    fn adjoint_examples() {
        let h = sp2();
        assert_eq!(h.adjoint(&e(&[&[0, 1], &[3, 0]])).unwrap(), e(&[&[0, -1], &[-3, 0]]));
        assert_eq!(h.adjoint(&e(&[&[2, 0], &[0, 5]])).unwrap(), e(&[&[5, 0], &[0, 2]]));
        assert_eq!(h.adjoint(&EMat::identity(2, 0)).unwrap(), EMat::identity(2, 0));
    }

    #[test]
    fn adjoint_identity_on_basis() {
        let h = sp2();
        let a = e(&[&[1, 2], &[7, -4]]);
        let s = h.adjoint(&a).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let x: Vec<Elem> = (0..2).map(|k| Elem::from_int((k == i) as i64)).collect();
                let y: Vec<Elem> = (0..2).map(|k| Elem::from_int((k == j) as i64)).collect();
                assert_eq!(h.eval(&a.mul_vec(&x), &y), h.eval(&x, &s.mul_vec(&y)));
            }
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let t = FieldTower::rational(3).unwrap();
        assert!(matches!(HermForm::ambient(&t, 1, e(&[&[0, 1], &[-1, 0]])), Err(Error::NotEpsilonHermitian(_))));
        assert_eq!(HermForm::ambient(&t, 1, e(&[&[1, 1], &[1, 1]])).err(), Some(Error::DegenerateForm));
    }

    #[test]
    fn dual_lattice_examples() {
        let f = sp2().realified("F");
        let std = DvrLattice::standard(3, 2);
        assert_eq!(dual_lattice(&std, &f).unwrap(), std.scale_p(1));
        let l = DvrLattice::from_gens(3, 2, &[vec![int(1), int(0)], vec![int(0), int(3)]]);
        assert_eq!(dual_lattice(&l, &f).unwrap(), l);
        assert_eq!(dual_lattice(&l.scale_p(1), &f).unwrap(), l.scale_p(-1));
    }

    #[test]
    fn unitary_realification() {
        let t = FieldTower::quadratic(3, 2).unwrap();
        let h = HermForm::ambient(&t, 1, e(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(h.case, FormCase::Unitary);
        let r = h.realified("F");
        let x = vec![Elem::new(int(1), int(2), 2), Elem::new(int(-1), int(1), 2)];
        let y = vec![Elem::new(int(3), int(0), 2), Elem::new(int(1), int(-5), 2)];
        let re = Realification::new(t.f, 2);
        assert_eq!(r.value(&re.realify(&x), &re.realify(&y)), h.eval(&x, &y));
    }
}
