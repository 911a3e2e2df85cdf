//! Lattices over `Z_(p)`, lattice functions and their norms, duality,
//! barycenters and the apartment model.
//!
//! A lattice function lives in a realified ambient space `Q^N` and carries
//! the module structure of one layer `L` (the field `F`, or a block field
//! `E_i` acting on a subspace). It is given by an `L`-basis `b_k` and offsets
//! `λ_k`:
//!
//! `Λ(r) = ⊕_k { x b_k : x ∈ L, v(x) ≥ r + λ_k }`,
//!
//! so the attached norm satisfies `α(b_k) = -λ_k`.

mod apartment;
mod jumps;
mod lattice;
mod splitting;

pub use apartment::{apartment_point_to_function, ApartmentPoint};
pub use jumps::JumpFunction;
pub use lattice::DvrLattice;
pub use splitting::{barycenter, common_splitting_basis, CommonSplitting};

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::arith::{ceil, frac, int, reduce_mod, sorted_unique, Rat};
use crate::error::{Error, Result};
use crate::field_tower::{realify_basis_vector, Elem, QuadLayer};
use crate::linalg::{dot, Mat, QVec};

/// The field whose valuation ring acts on a lattice function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    pub name: String,
    pub field: QuadLayer,
    /// Action of `√d` on the ambient space; `None` for `Q`.
    pub omega: Option<Mat>,
}

impl Layer {
    pub fn new(name: &str, field: QuadLayer, omega: Option<Mat>) -> Layer {
        assert_eq!(field.is_base(), omega.is_none(), "ω must accompany a quadratic layer");
        Layer { name: name.into(), field, omega }
    }

    pub fn p(&self) -> u64 {
        self.field.p
    }

    pub fn deg(&self) -> usize {
        self.field.degree()
    }

    pub fn e(&self) -> i64 {
        self.field.e as i64
    }

    pub fn apply_omega(&self, v: &[Rat]) -> QVec {
        self.omega.as_ref().expect("quadratic layer").mul_vec(v)
    }

    /// `x · v` for `x ∈ L`.
    pub fn scalar(&self, x: &Elem, v: &[Rat]) -> QVec {
        realify_basis_vector(core::slice::from_ref(x), &[v.to_vec()], self.omega.as_ref())
    }

    /// `π_L^m · v`.
    pub fn pi_pow(&self, m: i64, v: &[Rat]) -> QVec {
        self.scalar(&self.field.pi_pow(m), v)
    }

    /// `Z_(p)`-generators of `o_L · v`.
    pub fn module_gens(&self, v: &[Rat]) -> Vec<QVec> {
        if self.deg() == 1 {
            vec![v.to_vec()]
        } else {
            vec![v.to_vec(), self.apply_omega(v)]
        }
    }

    /// The `Q`-basis `b_1, ω b_1, b_2, ω b_2, ...` of the `L`-span.
    pub fn q_basis(&self, basis: &[QVec]) -> Vec<QVec> {
        basis.iter().flat_map(|b| self.module_gens(b)).collect()
    }

    /// `L`-coordinates of `x` in `basis`, if `x` lies in the span.
    pub fn coords(&self, basis: &[QVec], x: &[Rat]) -> Option<Vec<Elem>> {
        let n = x.len();
        let q = self.q_basis(basis);
        let sol = Mat::from_cols(n, &q).solve(x)?;
        let k = self.deg();
        Some(
            sol.chunks(k)
                .map(|c| if k == 1 { Elem::rational(c[0].clone()) } else { Elem::new(c[0].clone(), c[1].clone(), self.field.d) })
                .collect(),
        )
    }
}

/// `Λ(r) = ⊕ p_L^{⌈e(r + λ_k)⌉} b_k`.
#[derive(Clone, Debug)]
pub struct LatticeFunction {
    pub basis: Vec<QVec>,
    pub offsets: Vec<Rat>,
    pub layer: Layer,
}

/// `α(x) = sup { r : x ∈ Λ(r) }`, read through a splitting basis.
#[derive(Clone, Debug)]
pub struct AdditiveNorm {
    pub function: LatticeFunction,
}

impl AdditiveNorm {
    pub fn value(&self, x: &[Rat]) -> Option<Rat> {
        self.function.norm(x)
    }
}

pub fn latt_to_norm(f: &LatticeFunction) -> AdditiveNorm {
    AdditiveNorm { function: f.clone() }
}

pub fn norm_to_latt(n: &AdditiveNorm) -> LatticeFunction {
    n.function.clone()
}

/// `ᾱ(x) = inf_y [v(h(x, y)) - α(y)]`, attained on a splitting basis.
pub fn dual_norm_value(n: &AdditiveNorm, form: &crate::herm_forms::RealifiedForm, x: &[Rat]) -> Option<Rat> {
    let f = &n.function;
    f.basis
        .iter()
        .zip(&f.offsets)
        .filter_map(|(b, l)| f.layer.field.val(&form.value(x, b)).map(|v| v + l))
        .min()
}

impl LatticeFunction {
    pub fn new(basis: Vec<QVec>, offsets: Vec<Rat>, layer: Layer) -> LatticeFunction {
        assert_eq!(basis.len(), offsets.len(), "one offset per basis vector");
        LatticeFunction { basis, offsets, layer }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.first().map_or_else(|| self.layer.omega.as_ref().map_or(0, Mat::rows), |b| b.len())
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn p(&self) -> u64 {
        self.layer.p()
    }

    fn exponent(&self, r: &Rat, k: usize) -> i64 {
        ceil(&(int(self.layer.e()) * (r + &self.offsets[k])))
    }

    pub fn gens_at(&self, r: &Rat) -> Vec<QVec> {
        let mut g = Vec::new();
        for k in 0..self.rank() {
            let v = self.layer.pi_pow(self.exponent(r, k), &self.basis[k]);
            g.extend(self.layer.module_gens(&v));
        }
        g
    }

    pub fn eval(&self, r: &Rat) -> DvrLattice {
        DvrLattice::from_gens(self.p(), self.ambient_dim(), &self.gens_at(r))
    }

    /// Points of `[0, 1)` where `Λ` may jump.
    pub fn jump_candidates(&self) -> Vec<Rat> {
        let e = self.layer.e();
        let mut c = Vec::new();
        for l in &self.offsets {
            for j in 0..e {
                c.push(frac(&(int(j) / int(e) - l)));
            }
        }
        if c.is_empty() {
            c.push(Rat::zero());
        }
        sorted_unique(c)
    }

    pub fn canonical(&self) -> JumpFunction {
        let cands = self.jump_candidates().into_iter().map(|r| {
            let l = self.eval(&r);
            (r, l)
        });
        JumpFunction::from_candidates(self.p(), self.ambient_dim(), cands.collect())
    }

    /// Equality as functions, independent of the splitting basis.
    pub fn same(&self, other: &LatticeFunction) -> bool {
        self.canonical() == other.canonical()
    }

    /// `Λ + s : r ↦ Λ(r + s)`.
    pub fn shift(&self, s: &Rat) -> LatticeFunction {
        let offsets = self.offsets.iter().map(|l| l + s).collect();
        LatticeFunction { offsets, ..self.clone() }
    }

    /// Same function with every offset moved into `[0, 1/e)`.
    pub fn reduced(&self) -> LatticeFunction {
        let e = self.layer.e();
        let step = Rat::one() / int(e);
        let mut basis = Vec::new();
        let mut offsets = Vec::new();
        for (b, l) in self.basis.iter().zip(&self.offsets) {
            let r = reduce_mod(l, &step);
            let m = ((l - &r) * int(e)).to_integer();
            let m: i64 = num_traits::ToPrimitive::to_i64(&m).expect("small exponent");
            basis.push(self.layer.pi_pow(m, b));
            offsets.push(r);
        }
        LatticeFunction { basis, offsets, layer: self.layer.clone() }
    }

    /// `L`-coordinates of `x` in the splitting basis.
    pub fn coords(&self, x: &[Rat]) -> Option<Vec<Elem>> {
        self.layer.coords(&self.basis, x)
    }

    /// `α(x)`; `None` for `x = 0`. Panics outside the span.
    pub fn norm(&self, x: &[Rat]) -> Option<Rat> {
        let c = self.coords(x).expect("vector in the span");
        c.iter()
            .zip(&self.offsets)
            .filter_map(|(xk, l)| self.layer.field.val(xk).map(|v| v - l))
            .min()
    }

    /// Dual function `Λ^♯(r) = [Λ((-r)+)]^♯` for the pairing `x^T G y`.
    ///
    /// `target` gives the space and layer carrying the dual (a block `V_{-i}`
    /// for the cross duals); by default the dual lives on the span of `Λ`.
    pub fn dual(&self, gram: &Mat, target: Option<(&[QVec], &Layer)>) -> Result<LatticeFunction> {
        let k = self.layer.deg();
        let q_self = self.layer.q_basis(&self.basis);
        let (tq, layer) = match target {
            Some((t, l)) => (l.q_basis(t), l.clone()),
            None => (q_self.clone(), self.layer.clone()),
        };
        let m = q_self.len();
        if tq.len() != m {
            return Err(Error::DimensionMismatch("dual target of the wrong dimension".into()));
        }
        let mut a = Mat::zeros(m, m);
        for (i, y) in q_self.iter().enumerate() {
            let gy = gram.mul_vec(y);
            for (j, t) in tq.iter().enumerate() {
                a[(i, j)] = dot(t, &gy);
            }
        }
        let inv = a.inverse().ok_or(Error::RankDeficient)?;
        let n = self.ambient_dim();
        let mut basis = Vec::new();
        for l in 0..self.rank() {
            let mut w = vec![Rat::zero(); n];
            for (j, t) in tq.iter().enumerate() {
                let c = &inv[(j, k * l)];
                if !c.is_zero() {
                    w = crate::linalg::vadd(&w, &crate::linalg::vscale(t, c));
                }
            }
            basis.push(w);
        }
        let offsets = self.offsets.iter().map(|l| -l.clone()).collect();
        Ok(LatticeFunction { basis, offsets, layer })
    }

    pub fn is_self_dual(&self, gram: &Mat) -> Result<bool> {
        Ok(self.dual(gram, None)?.same(self))
    }

    /// The same function viewed over the smaller layer `f` (`[L : f] ≤ 2`).
    pub fn restrict_scalars(&self, f: &Layer) -> LatticeFunction {
        if self.layer.deg() == f.deg() {
            return LatticeFunction { layer: f.clone(), ..self.clone() };
        }
        assert!(f.deg() == 1 && self.layer.deg() == 2, "restriction from a quadratic layer to Q");
        let drop = if self.layer.e() == 2 { Rat::one() / int(2) } else { Rat::zero() };
        let mut basis = Vec::new();
        let mut offsets = Vec::new();
        for (b, l) in self.basis.iter().zip(&self.offsets) {
            basis.push(b.clone());
            offsets.push(l.clone());
            basis.push(self.layer.apply_omega(b));
            offsets.push(l - &drop);
        }
        LatticeFunction { basis, offsets, layer: f.clone() }
    }

    /// `⊕ Λ_i` for functions over one layer on independent subspaces.
    pub fn direct_sum(parts: &[LatticeFunction]) -> LatticeFunction {
        let layer = parts[0].layer.clone();
        let mut basis = Vec::new();
        let mut offsets = Vec::new();
        for f in parts {
            assert_eq!(f.layer, layer, "direct sum over different layers");
            basis.extend(f.basis.iter().cloned());
            offsets.extend(f.offsets.iter().cloned());
        }
        LatticeFunction { basis, offsets, layer }
    }

    /// `g · Λ` for an `L`-linear `g`.
    pub fn transform(&self, g: &Mat) -> LatticeFunction {
        let basis = self.basis.iter().map(|b| g.mul_vec(b)).collect();
        LatticeFunction { basis, ..self.clone() }
    }

    /// The `Q`-span of the function, as a list of basis vectors.
    pub fn span(&self) -> Vec<QVec> {
        self.layer.q_basis(&self.basis)
    }
}
