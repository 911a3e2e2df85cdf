//! Square lattice functions `End(Λ)`, the adjoint action on them, recovery
//! of a self-dual function from its square, trace duality and Lie algebra
//! filtrations.
//!
//! Endomorphisms of the ambient `Q^N` are flattened row-major into `Q^{N²}`,
//! so lattices of endomorphisms are ordinary [`DvrLattice`]s and the square
//! of a lattice function is again a split lattice function, now over `Q`.

mod filtration;

pub use filtration::{shift_between, 
    gl_filtration, lie_filtration, lie_subspace, recover_self_dual, trace_dual, FiltrationProfile, FiltrationSpace,
};

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::arith::{int, Rat};
use crate::field_tower::QuadLayer;
use crate::herm_forms::RealifiedForm;
use crate::latt_fun::{DvrLattice, JumpFunction, Layer, LatticeFunction};
use crate::linalg::{vadd, vscale, Mat, QVec};

pub fn flatten(m: &Mat) -> QVec {
    m.entries().to_vec()
}

pub fn unflatten(n: usize, v: &[Rat]) -> Mat {
    Mat::from_entries(n, n, v.to_vec())
}

/// `Q` with the valuation at `p`, carrying no further module structure.
pub fn rational_layer(p: u64) -> Layer {
    Layer::new("Q", QuadLayer { p, d: 0, e: 1 }, None)
}

/// `r ↦ End(Λ)(r) = { a : a Λ(s) ⊂ Λ(s + r) for all s }`, stored as a split
/// lattice function on flattened endomorphisms.
#[derive(Clone, Debug)]
pub struct SquareLatticeFunction {
    pub n: usize,
    pub function: LatticeFunction,
}

impl SquareLatticeFunction {
    pub fn at(&self, r: &Rat) -> DvrLattice {
        self.function.eval(r)
    }

    pub fn canonical(&self) -> JumpFunction {
        self.function.canonical()
    }

    pub fn jump_candidates(&self) -> Vec<Rat> {
        self.function.jump_candidates()
    }

    /// Flattened `Q`-basis of the endomorphism space it lives on.
    pub fn space(&self) -> Vec<QVec> {
        self.function.basis.clone()
    }

    /// The image under a `Q`-linear injective map of endomorphisms.
    pub fn map(&self, f: impl Fn(&Mat) -> Mat) -> SquareLatticeFunction {
        let basis = self.function.basis.iter().map(|v| flatten(&f(&unflatten(self.n, v)))).collect();
        SquareLatticeFunction {
            n: self.n,
            function: LatticeFunction::new(basis, self.function.offsets.clone(), self.function.layer.clone()),
        }
    }

    /// `r ↦ End(Λ)(r)^σ`.
    pub fn sigma(&self, form: &RealifiedForm) -> SquareLatticeFunction {
        self.map(|a| form.adjoint(a))
    }

    pub fn direct_sum(parts: &[SquareLatticeFunction]) -> SquareLatticeFunction {
        let fs: Vec<LatticeFunction> = parts.iter().map(|s| s.function.clone()).collect();
        SquareLatticeFunction { n: parts[0].n, function: LatticeFunction::direct_sum(&fs) }
    }
}

/// Elementary maps `b_l ↦ ω^t b_k` of `End_L(W)`, zero on `complement`,
/// with the `L`-index `(k, l)` and the power `t`.
pub fn elementary_maps(layer: &Layer, basis: &[QVec], complement: &[QVec]) -> Vec<(usize, usize, usize, Mat)> {
    let k = layer.deg();
    let q = layer.q_basis(basis);
    let n = q.first().or(complement.first()).map_or(0, |v| v.len());
    let mut cols = q.clone();
    cols.extend(complement.iter().cloned());
    let pinv = Mat::from_cols(n, &cols).inverse().expect("basis and complement span the ambient space");
    let omega = |v: &QVec| layer.apply_omega(v);
    let mut out = Vec::new();
    for a in 0..basis.len() {
        for b in 0..basis.len() {
            for t in 0..k {
                let target = if t == 0 { basis[a].clone() } else { omega(&basis[a]) };
                let mut images = vec![vec![Rat::zero(); n]; cols.len()];
                images[k * b] = target.clone();
                if k == 2 {
                    images[k * b + 1] = omega(&target);
                }
                out.push((a, b, t, Mat::from_cols(n, &images).mul(&pinv)));
            }
        }
    }
    out
}

/// `End_{o_L}(Λ)` on the span of `Λ`, extended by zero on `complement`.
pub fn end_function(lam: &LatticeFunction, complement: &[QVec]) -> SquareLatticeFunction {
    let layer = &lam.layer;
    let drop = if layer.e() == 2 { int(1) / int(2) } else { Rat::zero() };
    let mut basis = Vec::new();
    let mut offsets = Vec::new();
    for (a, b, t, m) in elementary_maps(layer, &lam.basis, complement) {
        let c = &lam.offsets[a] - &lam.offsets[b];
        basis.push(flatten(&m));
        offsets.push(if t == 0 { c } else { c - &drop });
    }
    let n = lam.ambient_dim();
    SquareLatticeFunction { n, function: LatticeFunction::new(basis, offsets, rational_layer(lam.p())) }
}

/// `{ a ∈ span(space) : a L ⊂ M for every pair (L, M) }`, by exact linear
/// algebra on the coordinates of `a`.
pub fn stabilizing_lattice(p: u64, n: usize, space: &[Mat], pairs: &[(DvrLattice, DvrLattice)]) -> DvrLattice {
    let mut rows: Vec<QVec> = Vec::new();
    for (l, m) in pairs {
        for g in l.basis() {
            let imgs: Vec<Vec<Rat>> = space
                .iter()
                .map(|e| m.coords(&e.mul_vec(g)).expect("image inside the target span"))
                .collect();
            for i in 0..m.rank() {
                rows.push(imgs.iter().map(|c| c[i].clone()).collect());
            }
        }
    }
    let t = DvrLattice::preimage(p, &Mat::from_rows(&rows)).expect("maps are determined by their action");
    let gens: Vec<QVec> = t
        .basis()
        .iter()
        .map(|c| {
            let mut v = vec![Rat::zero(); n * n];
            for (cj, e) in c.iter().zip(space) {
                if !cj.is_zero() {
                    v = vadd(&v, &vscale(&flatten(e), cj));
                }
            }
            v
        })
        .collect();
    DvrLattice::from_gens(p, n * n, &gens)
}

/// `End(Λ)(r)` computed from containments at every jump of `Λ`: the
/// independent reference for [`end_function`].
pub fn end_by_containment(lam: &LatticeFunction, complement: &[QVec], r: &Rat) -> DvrLattice {
    let space: Vec<Mat> = elementary_maps(&lam.layer, &lam.basis, complement).into_iter().map(|e| e.3).collect();
    let pairs: Vec<(DvrLattice, DvrLattice)> = lam
        .jump_candidates()
        .iter()
        .map(|s| (lam.eval(s), lam.eval(&(s + r))))
        .collect();
    stabilizing_lattice(lam.p(), lam.ambient_dim(), &space, &pairs)
}
