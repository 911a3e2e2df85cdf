use alloc::format;
use alloc::vec::Vec;

use super::LatticeFunction;
use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::field_tower::one_half;
use crate::herm_forms::{HermForm, WittDecomposition};

/// A point of the apartment attached to a Witt basis: one coordinate per
/// hyperbolic pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApartmentPoint {
    pub coords: Vec<Rat>,
}

/// The self-dual lattice function with offsets `a_i` on `e_i`, `-a_i` on
/// `e_{-i}`, and `-v(h(w, w))/2` on the orthogonal anisotropic basis.
pub fn apartment_point_to_function(point: &ApartmentPoint, witt: &WittDecomposition, form: &HermForm) -> Result<LatticeFunction> {
    if point.coords.len() != witt.index() {
        return Err(Error::DimensionMismatch(format!(
            "{} coordinates for Witt index {}",
            point.coords.len(),
            witt.index()
        )));
    }
    let mut basis = Vec::new();
    let mut offsets = Vec::new();
    for (e, a) in witt.plus.iter().zip(&point.coords) {
        basis.push(form.to_ambient(e));
        offsets.push(a.clone());
    }
    for (e, a) in witt.minus.iter().zip(&point.coords) {
        basis.push(form.to_ambient(e));
        offsets.push(-a.clone());
    }
    for (w, q) in witt.aniso.iter().zip(&witt.aniso_values) {
        basis.push(form.to_ambient(w));
        let v = form.layer.val(q).expect("anisotropic vector");
        offsets.push(-(v * one_half()));
    }
    Ok(LatticeFunction::new(basis, offsets, form.lattice_layer("F")))
}
