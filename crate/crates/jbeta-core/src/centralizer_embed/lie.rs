use alloc::vec::Vec;

use super::embed::{j_beta, sharp_cross, CentralBuildingPoint};
use super::{BetaDecomposition, BlockKind};
use crate::endo_filt::{
    end_function, flatten, gl_filtration, lie_filtration, lie_subspace, FiltrationProfile, FiltrationSpace,
    SquareLatticeFunction,
};
use crate::error::Result;
use crate::latt_fun::LatticeFunction;
use crate::linalg::{Mat, QVec};

/// `h̃ = { a ∈ End_F(V) : a β = β a }`, flattened.
pub fn centralizer_subspace(decomp: &BetaDecomposition) -> Vec<QVec> {
    let n = decomp.dim();
    let mut commuting = alloc::vec![decomp.beta_q.clone()];
    if let Some(w) = decomp.f_layer().omega {
        commuting.push(w);
    }
    let cols: Vec<QVec> = (0..n * n)
        .map(|k| {
            let mut e = Mat::zeros(n, n);
            e[(k / n, k % n)] = crate::arith::int(1);
            commuting.iter().flat_map(|b| flatten(&e.mul(b).sub(&b.mul(&e)))).collect()
        })
        .collect();
    Mat::from_cols(cols[0].len(), &cols).kernel()
}

/// `h = h̃ ∩ g`.
pub fn lie_centralizer_subspace(decomp: &BetaDecomposition) -> Result<Vec<QVec>> {
    Ok(lie_subspace(decomp.realified()?, &centralizer_subspace(decomp)))
}

/// `r ↦ h_{x,r}`: `End(Λ_i) ∩ h_i` on fixed blocks and the image of
/// `End(Λ_i + s_i)` under `a ↦ a - a^σ` on paired ones.
pub fn h_profile(decomp: &BetaDecomposition, x: &CentralBuildingPoint) -> Result<FiltrationProfile> {
    let real = decomp.realified()?;
    let parts: Vec<SquareLatticeFunction> = x
        .parts
        .iter()
        .map(|p| {
            let comp = decomp.complement(p.block);
            match decomp.blocks[p.block].kind {
                BlockKind::Plus => end_function(&p.function.shift(&p.shift), &comp).map(|a| a.sub(&real.adjoint(a))),
                _ => end_function(&p.function, &comp),
            }
        })
        .collect();
    let sq = SquareLatticeFunction::direct_sum(&parts);
    let k = lie_subspace(real, &sq.space());
    Ok(FiltrationProfile::from_square(FiltrationSpace::H, &sq, Some(&k)))
}

fn completed(decomp: &BetaDecomposition, x: &CentralBuildingPoint) -> Result<Vec<(usize, LatticeFunction)>> {
    let mut out = Vec::new();
    for p in &x.parts {
        let b = &decomp.blocks[p.block];
        if b.kind == BlockKind::Plus {
            let moved = p.function.shift(&p.shift);
            out.push((b.partner.expect("paired"), sharp_cross(decomp, p.block, &moved)?));
            out.push((p.block, moved));
        } else {
            out.push((p.block, p.function.clone()));
        }
    }
    Ok(out)
}

/// `r ↦ h̃_{x,r} = ⊕_i End_{o_{E_i}}(Λ_i)(r)` over the completed tuple.
pub fn h_tilde_function(decomp: &BetaDecomposition, x: &CentralBuildingPoint) -> Result<SquareLatticeFunction> {
    let parts: Vec<SquareLatticeFunction> =
        completed(decomp, x)?.iter().map(|(i, f)| end_function(f, &decomp.complement(*i))).collect();
    Ok(SquareLatticeFunction::direct_sum(&parts))
}

/// `g_{j_β(x), r} ∩ h = h_{x,r}`, together with the analogue for `g̃` and `h̃`.
pub fn centralizer_filtrations_agree(decomp: &BetaDecomposition, x: &CentralBuildingPoint) -> Result<bool> {
    let real = decomp.realified()?;
    let j = j_beta(decomp, x)?;
    let h = lie_centralizer_subspace(decomp)?;
    let lhs = lie_filtration(&j, real).intersect(FiltrationSpace::H, &h);
    let rhs = h_profile(decomp, x)?;
    let ht = h_tilde_function(decomp, x)?;
    let lhs_t = gl_filtration(&j).intersect(FiltrationSpace::HTilde, &centralizer_subspace(decomp));
    let rhs_t = FiltrationProfile::from_square(FiltrationSpace::HTilde, &ht, None);
    Ok(lhs == rhs && lhs_t == rhs_t)
}

/// `h_{x,r}` read as `h̃_{x,r} ∩ g`, the reference for [`h_profile`].
pub fn h_profile_from_tilde(decomp: &BetaDecomposition, x: &CentralBuildingPoint) -> Result<FiltrationProfile> {
    let real = decomp.realified()?;
    let ht = h_tilde_function(decomp, x)?;
    let k = lie_subspace(real, &ht.space());
    Ok(FiltrationProfile::from_square(FiltrationSpace::H, &ht, Some(&k)))
}

