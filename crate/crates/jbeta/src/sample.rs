//! Seeded random inputs for the property checks.

use jbeta_core::arith::Rat;
use jbeta_core::centralizer_embed::{central_apartment_point, BetaDecomposition, BlockKind, CentralApartment, CentralBuildingPoint};
use jbeta_core::field_tower::{EMat, Elem, Realification};
use jbeta_core::herm_forms::{witt_decompose, HermForm};
use jbeta_core::latt_fun::{apartment_point_to_function, ApartmentPoint, LatticeFunction};
use jbeta_core::linalg::{vadd, vscale, Mat, QVec};
use jbeta_core::Result;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A rational with denominator at most `max_den` in `[-radius, radius]`.
pub fn rat(rng: &mut ChaCha8Rng, max_den: i64, radius: i64) -> Rat {
    let d = rng.gen_range(1..=max_den);
    Rat::new(rng.gen_range(-radius * d..=radius * d).into(), d.into())
}

/// A small element of `Q(√d)`.
pub fn elem(rng: &mut ChaCha8Rng, d: i64) -> Elem {
    let c = if d == 0 { 0 } else { rng.gen_range(-3..=3) };
    Elem::new(Rat::from_integer(rng.gen_range(-4..=4).into()), Rat::from_integer(c.into()), d)
}

/// A nonzero vector of `F^n`, realified.
pub fn vector(rng: &mut ChaCha8Rng, form: &HermForm) -> QVec {
    let real = Realification::new(form.layer, form.dim());
    loop {
        let v = real.realify(&(0..form.dim()).map(|_| elem(rng, form.layer.d)).collect::<Vec<_>>());
        if v.iter().any(|x| !num_traits::Zero::is_zero(x)) {
            return v;
        }
    }
}

/// A split `o_F`-function with a random basis and offsets of denominator
/// at most twelve.
pub fn function(rng: &mut ChaCha8Rng, form: &HermForm) -> LatticeFunction {
    let n = form.dim();
    let real = Realification::new(form.layer, n);
    let layer = form.lattice_layer("F");
    loop {
        let basis: Vec<QVec> = (0..n).map(|_| real.realify(&(0..n).map(|_| elem(rng, form.layer.d)).collect::<Vec<_>>())).collect();
        if Mat::from_cols(real.dim(), &layer.q_basis(&basis)).rank() == real.dim() {
            let offsets = (0..n).map(|_| rat(rng, 12, 2)).collect();
            return LatticeFunction::new(basis, offsets, layer);
        }
    }
}

/// A product of two reflections, or of two symplectic transvections.
pub fn isometry(rng: &mut ChaCha8Rng, form: &HermForm) -> Mat {
    let real = form.realified("F");
    let n = real.dim();
    let mut g = Mat::identity(n);
    for _ in 0..2 {
        let v = vector(rng, form);
        let q = real.value(&v, &v);
        let step = |x: &[Rat]| -> QVec {
            let hvx = real.value(&v, x);
            if form.eps == -1 && !form.sigma_nontrivial() {
                vadd(x, &vscale(&v, &hvx.a))
            } else if q.is_zero() {
                x.to_vec()
            } else {
                vadd(x, &real.layer.scalar(&(&(&hvx * &q.inv()) * &Elem::from_int(-2)), &v))
            }
        };
        let cols: Vec<QVec> = (0..n).map(|k| step(&g.col(k))).collect();
        g = Mat::from_cols(n, &cols);
    }
    g
}

/// A self-dual function: a random apartment point moved by a random isometry.
pub fn self_dual(rng: &mut ChaCha8Rng, form: &HermForm) -> Result<LatticeFunction> {
    let w = witt_decompose(form)?;
    let coords = (0..w.index()).map(|_| rat(rng, 12, 2)).collect();
    let f = apartment_point_to_function(&ApartmentPoint { coords }, &w, form)?;
    Ok(f.transform(&isometry(rng, form)))
}

/// Random coordinates and shifts for a point of the central apartment.
pub fn coords(rng: &mut ChaCha8Rng, decomp: &BetaDecomposition, apt: &CentralApartment) -> (Vec<Vec<Rat>>, Vec<Rat>) {
    let coords = apt.ranks(decomp).into_iter().map(|k| (0..k).map(|_| rat(rng, 12, 2)).collect()).collect();
    let shifts = decomp
        .point_blocks()
        .into_iter()
        .map(|i| if decomp.blocks[i].kind == BlockKind::Plus { rat(rng, 6, 1) } else { Rat::from_integer(0.into()) })
        .collect();
    (coords, shifts)
}

pub fn point(rng: &mut ChaCha8Rng, decomp: &BetaDecomposition, apt: &CentralApartment) -> Result<CentralBuildingPoint> {
    let (c, s) = coords(rng, decomp, apt);
    central_apartment_point(decomp, apt, &c, &s)
}

/// Generators of a random `o_{E_i}`-lattice of full rank in a block, in the
/// coordinates of its `E_i`-basis.
pub fn block_gens(rng: &mut ChaCha8Rng, m: usize, d: i64) -> Vec<Vec<Elem>> {
    loop {
        let g: Vec<Vec<Elem>> = (0..m).map(|_| (0..m).map(|_| elem(rng, d)).collect()).collect();
        if EMat::from_cols(&g, d).inverse().is_some() {
            return g;
        }
    }
}
