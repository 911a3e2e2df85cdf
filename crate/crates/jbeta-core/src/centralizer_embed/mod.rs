//! Decomposition of a Lie algebra element `β`, the induced forms `h_i`, and
//! the embedding `j_β` of the building of the centralizer.
//!
//! `V = ⊕ V_i` with `V_i = 1_i V`, where `1_i` are the idempotents of
//! `F[β]`. A block is either fixed by the adjoint involution (the field
//! `E_i` then carries an involution and `V_i` an `ε`-hermitian form `h_i`
//! with `h = λ_i ∘ h_i`), or swapped with a partner `V_{-i}`.

mod apartment;
mod duals;
mod embed;
mod factor;
mod lie;

pub use apartment::{apartment_image, is_split_by, ApartmentImage};
pub use duals::{block_lattice, dual_under_h, dual_under_hi};
pub use embed::{
    barycenter_points, central_apartment_point, j_beta, j_tilde, jbeta_form_independence, sharp_cross, standard_point,
    transport_point, tuple_dual, BlockPoint, CentralApartment, CentralBuildingPoint, FormIndependence,
};
pub use factor::{factor_min_poly, minimal_polynomial};
pub use lie::{
    centralizer_subspace, h_profile, h_profile_from_tilde, h_tilde_function, lie_centralizer_subspace, centralizer_filtrations_agree,
};

use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::arith::{int, squarefree_part, Rat};
use crate::error::{Error, Result};
use crate::field_tower::{build_sigma_equivariant_form, make_quadratic_extension, EMat, Elem, FieldTower, Realification, SigmaLinearForm};
use crate::herm_forms::{HermForm, RealifiedForm};
use crate::latt_fun::Layer;
use crate::linalg::{Mat, QVec};
use crate::poly::{crt_idempotents, Poly};

/// How a block sits with respect to the involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockKind {
    /// `σ(1_i) = 1_i`; also used for every block when no form is present.
    Fixed,
    /// First member of a swapped pair.
    Plus,
    /// The partner `V_{-i}` of a `Plus` block.
    Minus,
}

impl BlockKind {
    pub fn name(&self) -> &'static str {
        match self {
            BlockKind::Fixed => "J_o",
            BlockKind::Plus => "J_+",
            BlockKind::Minus => "J_-",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Block {
    pub label: i32,
    pub kind: BlockKind,
    pub factor: Poly,
    /// `1_i` on the ambient `Q^N`.
    pub idempotent: Mat,
    /// `E_i`, acting on `V_i` through `omega`.
    pub layer: Layer,
    /// An `E_i`-basis of `V_i`.
    pub basis: Vec<QVec>,
    pub partner: Option<usize>,
    pub sigma_e: bool,
    pub lambda: Option<SigmaLinearForm>,
    pub form: Option<HermForm>,
}

impl Block {
    /// `Q`-basis of `V_i`.
    pub fn span(&self) -> Vec<QVec> {
        self.layer.q_basis(&self.basis)
    }

    pub fn e_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn hi(&self) -> Result<&HermForm> {
        self.form.as_ref().ok_or_else(|| Error::BlockMismatch(format!("block {} carries no induced form", self.label)))
    }
}

#[derive(Clone, Debug)]
pub struct BetaDecomposition {
    pub tower: FieldTower,
    pub form: Option<HermForm>,
    pub real: Option<RealifiedForm>,
    pub beta: EMat,
    /// `β` on the ambient `Q^N`.
    pub beta_q: Mat,
    pub min_poly: Poly,
    pub blocks: Vec<Block>,
}

impl BetaDecomposition {
    pub fn n(&self) -> usize {
        self.beta.rows
    }

    /// Dimension of the realified ambient space.
    pub fn dim(&self) -> usize {
        self.beta_q.rows()
    }

    pub fn p(&self) -> u64 {
        self.tower.p()
    }

    pub fn f_layer(&self) -> Layer {
        let r = Realification::new(self.tower.f, self.n());
        Layer::new("F", self.tower.f, r.omega())
    }

    pub fn realified(&self) -> Result<&RealifiedForm> {
        self.real.as_ref().ok_or_else(|| Error::BlockMismatch("no hermitian form attached".into()))
    }

    /// `Q`-basis of `⊕_{j ≠ i} V_j`.
    pub fn complement(&self, i: usize) -> Vec<QVec> {
        self.blocks.iter().enumerate().filter(|(j, _)| *j != i).flat_map(|(_, b)| b.span()).collect()
    }

    /// Blocks indexing a point of the centralizer building: `J_o ∪ J_+`.
    pub fn point_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&i| self.blocks[i].kind != BlockKind::Minus).collect()
    }

    pub fn has_pairs(&self) -> bool {
        self.blocks.iter().any(|b| b.kind == BlockKind::Plus)
    }
}

fn eval_at(f: &Poly, beta: &EMat) -> EMat {
    let n = beta.rows;
    let mut acc = EMat::zeros(n, n, beta.d);
    for c in f.coeffs.iter().rev() {
        acc = acc.mul(beta);
        let add = EMat::identity(n, beta.d).scale(c);
        acc = sub_neg(&acc, &add);
    }
    acc
}

fn sub_neg(a: &EMat, b: &EMat) -> EMat {
    a.sub(&b.scale(&Elem::from_int(-1)))
}

/// Greedy `E`-basis of the `Q`-span of `cols`.
fn e_basis(layer: &Layer, n: usize, cols: &[QVec]) -> Vec<QVec> {
    let mut chosen: Vec<QVec> = Vec::new();
    let mut rank = 0;
    for c in cols {
        let mut cand = chosen.clone();
        cand.push(c.clone());
        let r = Mat::from_cols(n, &layer.q_basis(&cand)).rank();
        if r == rank + layer.deg() {
            chosen = cand;
            rank = r;
        }
    }
    chosen
}

struct RawBlock {
    factor: Poly,
    idempotent: Mat,
    layer: Layer,
    basis: Vec<QVec>,
}

fn raw_blocks(tower: &FieldTower, beta: &EMat) -> Result<(Poly, Mat, Vec<RawBlock>)> {
    let n = beta.rows;
    if beta.cols != n {
        return Err(Error::DimensionMismatch(format!("β is {}x{}", beta.rows, beta.cols)));
    }
    let f = tower.f;
    let real = Realification::new(f, n);
    let beta_q = real.realify_mat(beta);
    let min_poly = minimal_polynomial(beta, &f);
    if !min_poly.is_squarefree() {
        return Err(Error::H1Violated);
    }
    let factors = factor_min_poly(&min_poly, &f)?;
    let idems = if factors.len() == 1 { alloc::vec![Poly::one(f.d)] } else { crt_idempotents(&factors) };
    let big_n = real.dim();
    let mut out = Vec::new();
    for (k, (g, e)) in factors.iter().zip(&idems).enumerate() {
        let one_i = real.realify_mat(&eval_at(e, beta));
        let name = format!("E_{}", k + 1);
        let layer = match g.degree() {
            Some(1) => Layer::new(&name, f, real.omega()),
            Some(2) => {
                let b = g.coeffs[1].a.clone();
                let c = g.coeffs[0].a.clone();
                let disc = &b * &b - int(4) * &c;
                let num: i64 = num_traits::ToPrimitive::to_i64(&(disc.numer() * disc.denom()))
                    .ok_or_else(|| Error::UnsupportedFactorDegree("discriminant too large".into()))?;
                let (core, sq) = squarefree_part(num);
                let s = Rat::new(sq.into(), disc.denom().clone());
                let e = make_quadratic_extension(&f, core)?;
                let two_beta_b = beta_q.scale(&int(2)).add(&Mat::identity(big_n).scale(&b));
                let omega = two_beta_b.scale(&(Rat::from(int(1)) / s)).mul(&one_i);
                Layer::new(&name, e, Some(omega))
            }
            _ => return Err(Error::UnsupportedFactorDegree("factor of degree above two".into())),
        };
        let basis = e_basis(&layer, big_n, &one_i.columns());
        out.push(RawBlock { factor: g.clone(), idempotent: one_i, layer, basis });
    }
    Ok((min_poly, beta_q, out))
}

/// `h_i` on an `E_i`-basis of a fixed block, from `h(v, w) = λ_i(h_i(v, w))`.
///
/// With `h_i(v, w) = A + C√D` and `λ_i(a + c√D) = κ_0 a + κ_1 c` the values
/// `h(v, w)` and `h(v, √D w)` determine `A` and `C`.
pub fn induce_form_hi(real: &RealifiedForm, layer: &Layer, basis: &[QVec], lambda: &SigmaLinearForm, eps: i32) -> Result<HermForm> {
    let m = basis.len();
    let mut rows = Vec::with_capacity(m);
    for v in basis {
        let mut row = Vec::with_capacity(m);
        for w in basis {
            let hvw = real.value(v, w);
            let z = if lambda.relative_degree() == 1 {
                &hvw * &lambda.coeffs[0].inv()
            } else {
                let k0 = lambda.coeffs[0].a.clone();
                let k1 = lambda.coeffs[1].a.clone();
                let dd = int(layer.field.d);
                let hw = real.value(v, &layer.apply_omega(w)).a;
                let det = &k0 * &k0 * &dd - &k1 * &k1;
                if det.is_zero() {
                    return Err(Error::DegenerateRestriction);
                }
                let a = (&k0 * &dd * &hvw.a - &k1 * &hw) / &det;
                let c = (&k0 * &hw - &k1 * &hvw.a) / &det;
                Elem::new(a, c, layer.field.d)
            };
            row.push(z);
        }
        rows.push(row);
    }
    let gram = EMat::from_rows(rows, layer.field.d);
    HermForm::on_basis(layer.field, eps, gram, basis.to_vec(), layer.omega.clone()).map_err(|e| match e {
        Error::DegenerateForm => Error::DegenerateRestriction,
        other => other,
    })
}

/// Blocks of `β` relative to the form `h`.
pub fn decompose_beta(form: &HermForm, beta: &EMat) -> Result<BetaDecomposition> {
    let tower = FieldTower { base: crate::field_tower::PrimeLocalModel::new(form.layer.p)?, f: form.layer };
    if beta.rows != form.dim() || beta.cols != form.dim() {
        return Err(Error::DimensionMismatch(format!("β is {}x{}, form has dimension {}", beta.rows, beta.cols, form.dim())));
    }
    let adj = form.adjoint(beta)?;
    let sum = beta.sub(&adj.scale(&Elem::from_int(-1)));
    if !sum.is_zero() {
        return Err(Error::NotInLieAlgebra);
    }
    let real = form.realified("F");
    let (min_poly, beta_q, raw) = raw_blocks(&tower, beta)?;
    let adjoints: Vec<Mat> = raw.iter().map(|b| real.adjoint(&b.idempotent)).collect();
    let find = |a: &Mat| raw.iter().position(|b| b.idempotent == *a);
    let mut kinds = alloc::vec![None; raw.len()];
    let mut labels = alloc::vec![0i32; raw.len()];
    let mut partners = alloc::vec![None; raw.len()];
    let mut next = 0;
    for i in 0..raw.len() {
        if kinds[i].is_some() {
            continue;
        }
        let j = find(&adjoints[i]).ok_or_else(|| Error::BlockMismatch("σ(1_i) is not an idempotent of F[β]".into()))?;
        if j == i {
            next += 1;
            kinds[i] = Some(BlockKind::Fixed);
            labels[i] = next;
        } else {
            next += 1;
            kinds[i] = Some(BlockKind::Plus);
            kinds[j] = Some(BlockKind::Minus);
            labels[i] = next;
            labels[j] = -next;
            partners[i] = Some(j);
            partners[j] = Some(i);
        }
    }
    let mut blocks = Vec::new();
    for (i, rb) in raw.into_iter().enumerate() {
        let kind = kinds[i].expect("classified");
        let sigma_e = if kind == BlockKind::Fixed {
            let e_is_f = rb.layer.field == tower.f;
            if e_is_f {
                tower.sigma_nontrivial()
            } else {
                let w = rb.layer.omega.as_ref().expect("quadratic layer");
                if real.adjoint(w) != w.scale(&int(-1)) {
                    return Err(Error::BlockMismatch("involution does not act on E_i as conjugation".into()));
                }
                true
            }
        } else {
            false
        };
        let (lambda, hi) = if kind == BlockKind::Fixed {
            let lam = build_sigma_equivariant_form(rb.layer.field, tower.f, sigma_e);
            let hi = induce_form_hi(&real, &rb.layer, &rb.basis, &lam, form.eps)?;
            (Some(lam), Some(hi))
        } else {
            (None, None)
        };
        blocks.push(Block {
            label: labels[i],
            kind,
            factor: rb.factor,
            idempotent: rb.idempotent,
            layer: rb.layer,
            basis: rb.basis,
            partner: partners[i],
            sigma_e,
            lambda,
            form: hi,
        });
    }
    Ok(BetaDecomposition { tower, form: Some(form.clone()), real: Some(real), beta: beta.clone(), beta_q, min_poly, blocks })
}

/// Blocks of `β` with no form attached, for the general linear case.
pub fn decompose_beta_gl(tower: &FieldTower, beta: &EMat) -> Result<BetaDecomposition> {
    let (min_poly, beta_q, raw) = raw_blocks(tower, beta)?;
    let blocks = raw
        .into_iter()
        .enumerate()
        .map(|(i, rb)| Block {
            label: i as i32 + 1,
            kind: BlockKind::Fixed,
            factor: rb.factor,
            idempotent: rb.idempotent,
            layer: rb.layer,
            basis: rb.basis,
            partner: None,
            sigma_e: false,
            lambda: None,
            form: None,
        })
        .collect();
    Ok(BetaDecomposition { tower: *tower, form: None, real: None, beta: beta.clone(), beta_q, min_poly, blocks })
}

