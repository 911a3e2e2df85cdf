use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{BetaDecomposition, BlockKind};
use crate::arith::{int, Rat};
use crate::endo_filt::{end_function, recover_self_dual};
use crate::error::{Error, Result};
use crate::field_tower::{one_half, Elem};
use crate::herm_forms::{witt_decompose, WittDecomposition};
use crate::latt_fun::{apartment_point_to_function, barycenter, ApartmentPoint, LatticeFunction};

/// The component of a point of the centralizer building on one block.
#[derive(Clone, Debug)]
pub struct BlockPoint {
    /// Index into [`BetaDecomposition::blocks`].
    pub block: usize,
    /// An `o_{E_i}`-lattice function on `V_i`.
    pub function: LatticeFunction,
    /// The translation `s_i` choosing `j_i`; zero on fixed blocks.
    pub shift: Rat,
}

/// `(Λ_i)` over `J_o ∪ J_+`, with the shifts of the `J_+` components.
#[derive(Clone, Debug)]
pub struct CentralBuildingPoint {
    pub parts: Vec<BlockPoint>,
}

impl CentralBuildingPoint {
    pub fn part(&self, block: usize) -> Option<&BlockPoint> {
        self.parts.iter().find(|p| p.block == block)
    }

    pub fn with_shifts(&self, f: impl Fn(&Rat) -> Rat) -> CentralBuildingPoint {
        let parts = self.parts.iter().map(|p| BlockPoint { shift: f(&p.shift), ..p.clone() }).collect();
        CentralBuildingPoint { parts }
    }
}

/// `Λ^{♯_i}` on `V_{-i}` for a function `Λ` on a paired block `V_i`.
pub fn sharp_cross(decomp: &BetaDecomposition, block: usize, lam: &LatticeFunction) -> Result<LatticeFunction> {
    let b = &decomp.blocks[block];
    let j = b.partner.ok_or_else(|| Error::BlockMismatch(format!("block {} has no partner", b.label)))?;
    let partner = &decomp.blocks[j];
    let real = decomp.realified()?;
    lam.dual(&real.gram, Some((&partner.basis, &partner.layer)))
}

fn check_point(decomp: &BetaDecomposition, x: &CentralBuildingPoint) -> Result<()> {
    let expected = decomp.point_blocks();
    let got: Vec<usize> = x.parts.iter().map(|p| p.block).collect();
    if got != expected {
        return Err(Error::BlockMismatch(format!("point has blocks {got:?}, decomposition expects {expected:?}")));
    }
    for p in &x.parts {
        let b = &decomp.blocks[p.block];
        if p.function.layer != b.layer {
            return Err(Error::BlockMismatch(format!("component {} is not over {}", b.label, b.layer.name)));
        }
        let q = crate::linalg::Mat::from_cols(decomp.dim(), &[b.span(), p.function.span()].concat());
        if p.function.span().len() != b.span().len() || q.rank() != b.span().len() {
            return Err(Error::BlockMismatch(format!("component {} does not span V_{}", b.label, b.label)));
        }
    }
    Ok(())
}

/// `j̃_β` on a completed tuple with one function per block, over `F`.
pub fn j_tilde(decomp: &BetaDecomposition, parts: &[LatticeFunction]) -> LatticeFunction {
    let f = decomp.f_layer();
    let fs: Vec<LatticeFunction> = parts.iter().map(|l| l.restrict_scalars(&f)).collect();
    LatticeFunction::direct_sum(&fs)
}

/// `j_β(x)`: shift the paired components, complete the tuple by the cross
/// duals, and sum everything as `o_F`-functions.
pub fn j_beta(decomp: &BetaDecomposition, x: &CentralBuildingPoint) -> Result<LatticeFunction> {
    check_point(decomp, x)?;
    let mut parts: Vec<Option<LatticeFunction>> = alloc::vec![None; decomp.blocks.len()];
    for p in &x.parts {
        let b = &decomp.blocks[p.block];
        match b.kind {
            BlockKind::Fixed => parts[p.block] = Some(p.function.clone()),
            BlockKind::Plus => {
                let moved = p.function.shift(&p.shift);
                let dual = sharp_cross(decomp, p.block, &moved)?;
                parts[b.partner.expect("paired")] = Some(dual);
                parts[p.block] = Some(moved);
            }
            BlockKind::Minus => unreachable!("checked by check_point"),
        }
    }
    let parts: Vec<LatticeFunction> = parts.into_iter().map(|p| p.expect("every block is covered")).collect();
    Ok(j_tilde(decomp, &parts))
}

/// `x^b`: the dual of a completed tuple, block by block.
pub fn tuple_dual(decomp: &BetaDecomposition, parts: &[LatticeFunction]) -> Result<Vec<LatticeFunction>> {
    let real = decomp.realified()?;
    decomp
        .blocks
        .iter()
        .enumerate()
        .map(|(i, b)| match b.partner {
            None => parts[i].dual(&real.gram, None),
            Some(j) => parts[j].dual(&real.gram, Some((&b.basis, &b.layer))),
        })
        .collect()
}

/// Apartments of every component: a Witt decomposition of `h_i` on fixed
/// blocks, the stored `E_i`-basis on paired ones.
#[derive(Clone, Debug)]
pub struct CentralApartment {
    pub witt: Vec<Option<WittDecomposition>>,
}

impl CentralApartment {
    pub fn new(decomp: &BetaDecomposition) -> Result<CentralApartment> {
        let witt = decomp
            .point_blocks()
            .into_iter()
            .map(|i| {
                let b = &decomp.blocks[i];
                match b.kind {
                    BlockKind::Fixed => witt_decompose(b.hi()?).map(Some),
                    _ => Ok(None),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CentralApartment { witt })
    }

    /// Number of coordinates of each component.
    pub fn ranks(&self, decomp: &BetaDecomposition) -> Vec<usize> {
        decomp
            .point_blocks()
            .into_iter()
            .zip(&self.witt)
            .map(|(i, w)| w.as_ref().map_or(decomp.blocks[i].e_dim(), |w| w.index()))
            .collect()
    }
}

/// The point of the apartment with the given coordinates and shifts.
pub fn central_apartment_point(
    decomp: &BetaDecomposition,
    apt: &CentralApartment,
    coords: &[Vec<Rat>],
    shifts: &[Rat],
) -> Result<CentralBuildingPoint> {
    let blocks = decomp.point_blocks();
    if coords.len() != blocks.len() || shifts.len() != blocks.len() {
        return Err(Error::BlockMismatch(format!("{} components expected", blocks.len())));
    }
    let mut parts = Vec::new();
    for (k, &i) in blocks.iter().enumerate() {
        let b = &decomp.blocks[i];
        let function = match &apt.witt[k] {
            Some(w) => {
                let hi = b.hi()?;
                let mut f = apartment_point_to_function(&ApartmentPoint { coords: coords[k].clone() }, w, hi)?;
                f.layer = b.layer.clone();
                f
            }
            None => {
                if coords[k].len() != b.e_dim() {
                    return Err(Error::BlockMismatch(format!("block {} needs {} coordinates", b.label, b.e_dim())));
                }
                LatticeFunction::new(b.basis.clone(), coords[k].clone(), b.layer.clone())
            }
        };
        let shift = if b.kind == BlockKind::Plus { shifts[k].clone() } else { Rat::zero() };
        parts.push(BlockPoint { block: i, function, shift });
    }
    Ok(CentralBuildingPoint { parts })
}

/// The point with all coordinates and shifts zero.
pub fn standard_point(decomp: &BetaDecomposition) -> Result<CentralBuildingPoint> {
    let apt = CentralApartment::new(decomp)?;
    let coords: Vec<Vec<Rat>> = apt.ranks(decomp).into_iter().map(|r| alloc::vec![Rat::zero(); r]).collect();
    let shifts = alloc::vec![Rat::zero(); coords.len()];
    central_apartment_point(decomp, &apt, &coords, &shifts)
}

/// `t x + (1 - t) y`, componentwise, with the shifts averaged the same way.
pub fn barycenter_points(x: &CentralBuildingPoint, y: &CentralBuildingPoint, t: &Rat) -> Result<CentralBuildingPoint> {
    if x.parts.len() != y.parts.len() {
        return Err(Error::BlockMismatch("points over different decompositions".into()));
    }
    let u = Rat::one() - t;
    let parts = x
        .parts
        .iter()
        .zip(&y.parts)
        .map(|(a, b)| {
            if a.block != b.block {
                return Err(Error::BlockMismatch("points over different decompositions".into()));
            }
            Ok(BlockPoint { block: a.block, function: barycenter(&a.function, &b.function, t)?, shift: t * &a.shift + &u * &b.shift })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CentralBuildingPoint { parts })
}

/// Outcome of rebuilding `j_β` for the form `u h`.
#[derive(Clone, Debug)]
pub struct FormIndependence {
    pub u: Rat,
    /// `-v(u)/2`, the translation relating self-dual functions of `h` and `u h`.
    pub shift: Rat,
    pub samples: usize,
    /// `j'_β(x') = j_β(x) - v(u)/2` at every sample.
    pub functions_agree: bool,
    /// The squares `End(j'_β(x'))` and `End(j_β(x))` agree at every sample.
    pub squares_agree: bool,
}

impl FormIndependence {
    pub fn holds(&self) -> bool {
        self.functions_agree && self.squares_agree
    }
}

/// The point `x'` of the building for `u h` with the same image in the
/// building of `σ`: fixed components are re-centered, shifts move by `-v(u)/2`.
pub fn transport_point(decomp: &BetaDecomposition, scaled: &BetaDecomposition, x: &CentralBuildingPoint, v_half: &Rat) -> Result<CentralBuildingPoint> {
    let real = scaled.realified()?;
    let mut parts = Vec::new();
    for p in &x.parts {
        let b = &decomp.blocks[p.block];
        let nb = &scaled.blocks[p.block];
        let function = LatticeFunction { layer: nb.layer.clone(), ..p.function.clone() };
        let (function, shift) = match b.kind {
            BlockKind::Fixed => (recover_self_dual(&function, real, &scaled.complement(p.block))?, p.shift.clone()),
            _ => (function, &p.shift - v_half),
        };
        parts.push(BlockPoint { block: p.block, function, shift });
    }
    Ok(CentralBuildingPoint { parts })
}

/// Rebuilds every block datum for `u h` and compares the two maps on `points`.
pub fn jbeta_form_independence(decomp: &BetaDecomposition, u: &Rat, points: &[CentralBuildingPoint]) -> Result<FormIndependence> {
    let form = decomp.form.as_ref().ok_or_else(|| Error::BlockMismatch("no hermitian form attached".into()))?;
    if u.is_zero() {
        return Err(Error::NotEpsilonHermitian("u = 0".into()));
    }
    let scaled_form = form.scaled(&Elem::rational(u.clone()).with_layer(form.layer.d))?;
    let scaled = super::decompose_beta(&scaled_form, &decomp.beta)?;
    if scaled.blocks.len() != decomp.blocks.len() || scaled.blocks.iter().zip(&decomp.blocks).any(|(a, b)| a.kind != b.kind) {
        return Err(Error::BlockMismatch("decomposition changed under scaling".into()));
    }
    let v = Rat::from(int(crate::arith::val(u, decomp.p()).expect("u is nonzero")));
    let v_half = &v * one_half();
    let shift = -v_half.clone();
    let mut functions_agree = true;
    let mut squares_agree = true;
    for x in points {
        let j = j_beta(decomp, x)?;
        let x2 = transport_point(decomp, &scaled, x, &v_half)?;
        let j2 = j_beta(&scaled, &x2)?;
        functions_agree &= j2.same(&j.shift(&shift));
        squares_agree &= end_function(&j2, &[]).canonical() == end_function(&j, &[]).canonical();
    }
    Ok(FormIndependence { u: u.clone(), shift, samples: points.len(), functions_agree, squares_agree })
}
