use alloc::format;
use alloc::vec::Vec;

use super::BetaDecomposition;
use crate::error::{Error, Result};
use crate::field_tower::{EMat, Elem};
use crate::latt_fun::DvrLattice;

fn fixed_block(decomp: &BetaDecomposition, block: usize) -> Result<&super::Block> {
    let b = decomp.blocks.get(block).ok_or_else(|| Error::BlockMismatch(format!("no block {block}")))?;
    if b.form.is_none() {
        return Err(Error::BlockMismatch(format!("block {} is not σ-stable", b.label)));
    }
    Ok(b)
}

/// The `o_{E_i}`-lattice spanned by vectors given in coordinates of the
/// block's `E_i`-basis.
pub fn block_lattice(decomp: &BetaDecomposition, block: usize, gens: &[Vec<Elem>]) -> Result<DvrLattice> {
    let b = fixed_block(decomp, block)?;
    let h = b.hi()?;
    let q: Vec<_> = gens.iter().flat_map(|g| b.layer.module_gens(&h.to_ambient(g))).collect();
    Ok(DvrLattice::from_gens(decomp.p(), decomp.dim(), &q))
}

/// `{x ∈ V_i : h(x, L) ⊂ p_F}`.
pub fn dual_under_h(decomp: &BetaDecomposition, block: usize, l: &DvrLattice) -> Result<DvrLattice> {
    let b = fixed_block(decomp, block)?;
    let real = decomp.realified()?;
    Ok(l.pairing_dual(&real.gram, &b.span())?.scale_p(1))
}

/// `{x ∈ V_i : h_i(x, L) ⊂ p_{E_i}}` for `L = ⊕ o_{E_i} g_k`, from the
/// matrix identity `X^{σT} H P = π_E`.
pub fn dual_under_hi(decomp: &BetaDecomposition, block: usize, gens: &[Vec<Elem>]) -> Result<DvrLattice> {
    let b = fixed_block(decomp, block)?;
    let h = b.hi()?;
    let d = h.layer.d;
    if gens.len() != h.dim() {
        return Err(Error::RankDeficient);
    }
    let p = EMat::from_cols(gens, d);
    let m = h.gram.mul(&p).inverse().ok_or(Error::RankDeficient)?;
    let m = if h.sigma_nontrivial() { m.conj() } else { m };
    let x = m.transpose().scale(&h.layer.uniformizer());
    let cols: Vec<Vec<Elem>> = (0..x.cols).map(|j| x.col(j)).collect();
    let q: Vec<_> = cols.iter().flat_map(|c| b.layer.module_gens(&h.to_ambient(c))).collect();
    Ok(DvrLattice::from_gens(decomp.p(), decomp.dim(), &q))
}
