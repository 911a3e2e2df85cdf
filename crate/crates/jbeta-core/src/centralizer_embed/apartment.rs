use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use super::embed::{central_apartment_point, j_beta, CentralApartment};
use super::{BetaDecomposition, BlockKind};
use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::field_tower::{EMat, Elem};
use crate::herm_forms::RealifiedForm;
use crate::latt_fun::{Layer, LatticeFunction};
use crate::linalg::{vadd, QVec};

/// An `F`-Witt basis of `V` built block by block from an apartment of the
/// centralizer building.
#[derive(Clone, Debug)]
pub struct ApartmentImage {
    pub plus: Vec<QVec>,
    pub minus: Vec<QVec>,
    pub aniso: Vec<QVec>,
    /// Apartment points that were checked.
    pub samples: usize,
    /// Whether every sampled image was split by the basis.
    pub all_split: bool,
}

impl ApartmentImage {
    pub fn basis(&self) -> Vec<QVec> {
        self.plus.iter().chain(&self.minus).chain(&self.aniso).cloned().collect()
    }

    pub fn index(&self) -> usize {
        self.plus.len()
    }
}

/// Whether `f` is split by the `F`-basis `basis`.
pub fn is_split_by(f: &LatticeFunction, basis: &[QVec]) -> bool {
    let k = f.layer.deg();
    if basis.len() != f.rank() || crate::linalg::Mat::from_cols(f.ambient_dim(), &f.layer.q_basis(basis)).rank() != k * basis.len() {
        return false;
    }
    let offsets = basis.iter().map(|b| -f.norm(b).expect("nonzero basis vector")).collect();
    LatticeFunction::new(basis.to_vec(), offsets, f.layer.clone()).same(f)
}

/// `h`-dual vectors to `xs` inside the `F`-span of `ys`.
fn dual_in(real: &RealifiedForm, f: &Layer, xs: &[QVec], ys: &[QVec]) -> Result<Vec<QVec>> {
    let d = f.field.d;
    let m = EMat::from_rows(xs.iter().map(|x| ys.iter().map(|y| real.value(x, y)).collect()).collect(), d);
    let inv = m.inverse().ok_or_else(|| Error::BlockMismatch("dual lines do not pair".into()))?;
    let n = real.dim();
    Ok((0..xs.len())
        .map(|b| {
            ys.iter().enumerate().fold(alloc::vec![Rat::zero(); n], |acc, (c, y)| vadd(&acc, &f.scalar(&inv[(c, b)], y)))
        })
        .collect())
}

/// `F`-basis `{v, Ω v}` (or `{v}`) of the `E`-line through `v`.
fn f_basis_of_line(layer: &Layer, same_as_f: bool, v: &QVec) -> Vec<QVec> {
    if same_as_f {
        alloc::vec![v.clone()]
    } else {
        alloc::vec![v.clone(), layer.apply_omega(v)]
    }
}

/// The `F`-Witt basis attached to `apt`, together with a check that the
/// images of the apartment points `samples` are split by it.
pub fn apartment_image(decomp: &BetaDecomposition, apt: &CentralApartment, samples: &[(Vec<Vec<Rat>>, Vec<Rat>)]) -> Result<ApartmentImage> {
    let real = decomp.realified()?;
    let f = decomp.f_layer();
    let (mut plus, mut minus, mut aniso) = (Vec::new(), Vec::new(), Vec::new());
    for (k, i) in decomp.point_blocks().into_iter().enumerate() {
        let b = &decomp.blocks[i];
        let same = b.layer.field == decomp.tower.f;
        match b.kind {
            BlockKind::Plus => {
                let partner = &decomp.blocks[b.partner.expect("paired")];
                let xs: Vec<QVec> = b.basis.iter().flat_map(|v| f_basis_of_line(&b.layer, same, v)).collect();
                let ys: Vec<QVec> = partner.basis.iter().flat_map(|v| f_basis_of_line(&partner.layer, same, v)).collect();
                minus.extend(dual_in(real, &f, &xs, &ys)?);
                plus.extend(xs);
            }
            BlockKind::Fixed => {
                let w = apt.witt[k].as_ref().expect("fixed blocks carry a Witt decomposition");
                let hi = b.hi()?;
                for (e, e2) in w.plus.iter().zip(&w.minus) {
                    let xs = f_basis_of_line(&b.layer, same, &hi.to_ambient(e));
                    let ys = f_basis_of_line(&b.layer, same, &hi.to_ambient(e2));
                    minus.extend(dual_in(real, &f, &xs, &ys)?);
                    plus.extend(xs);
                }
                for a in &w.aniso {
                    let v = hi.to_ambient(a);
                    if same {
                        aniso.push(v);
                    } else if real.eps == -1 {
                        let wv = b.layer.apply_omega(&v);
                        let c = real.value(&v, &wv);
                        plus.push(v);
                        minus.push(f.scalar(&c.inv(), &wv));
                    } else {
                        aniso.push(b.layer.apply_omega(&v));
                        aniso.push(v);
                    }
                }
            }
            BlockKind::Minus => unreachable!("point blocks exclude J_-"),
        }
    }
    if aniso.len() > 2 {
        return Err(Error::AnisotropicTooLarge(aniso.len()));
    }
    let image = ApartmentImage { plus, minus, aniso, samples: samples.len(), all_split: true };
    let basis = image.basis();
    if basis.len() != decomp.n() {
        return Err(Error::BlockMismatch(format!("{} basis vectors for dimension {}", basis.len(), decomp.n())));
    }
    let mut all_split = true;
    for (coords, shifts) in samples {
        let x = central_apartment_point(decomp, apt, coords, shifts)?;
        all_split &= is_split_by(&j_beta(decomp, &x)?, &basis);
    }
    debug_assert!(witt_relations(real, &image), "constructed basis is not a Witt basis");
    Ok(ApartmentImage { all_split, ..image })
}

fn witt_relations(real: &RealifiedForm, a: &ApartmentImage) -> bool {
    let one = Elem::one();
    let r = a.index();
    (0..r).all(|i| {
        (0..r).all(|j| {
            let pm = real.value(&a.plus[i], &a.minus[j]);
            let ok = if i == j { pm.a == one.a && pm.c.is_zero() } else { pm.is_zero() };
            ok && real.value(&a.plus[i], &a.plus[j]).is_zero() && real.value(&a.minus[i], &a.minus[j]).is_zero()
        })
    })
}

