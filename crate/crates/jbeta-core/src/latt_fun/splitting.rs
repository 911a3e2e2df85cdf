use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::LatticeFunction;
use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::linalg::{Mat, QVec};

/// Two lattice functions written on one basis that splits both.
#[derive(Clone, Debug)]
pub struct CommonSplitting {
    pub basis: Vec<QVec>,
    pub lambda: LatticeFunction,
    pub mu: LatticeFunction,
}

/// A basis splitting both `Λ` and `M`.
///
/// Greedy: peel off a vector `x_0` on which `β - α` is minimal, exchange it
/// into a `β`-splitting basis, and recurse on the complementary span.
pub fn common_splitting_basis(lam: &LatticeFunction, mu: &LatticeFunction) -> Result<CommonSplitting> {
    if lam.layer != mu.layer {
        return Err(Error::DimensionMismatch("lattice functions over different layers".into()));
    }
    let n = lam.ambient_dim();
    let span = Mat::from_cols(n, &lam.span());
    let both = Mat::from_cols(n, &[lam.span(), mu.span()].concat());
    if span.rank() != both.rank() || span.rank() != Mat::from_cols(n, &mu.span()).rank() {
        return Err(Error::DimensionMismatch("lattice functions on different spaces".into()));
    }
    let layer = &lam.layer;
    let cands = lam.jump_candidates();
    let mut c: Vec<QVec> = mu.basis.clone();
    let mut out: Vec<QVec> = Vec::new();
    while !c.is_empty() {
        let h = layer.q_basis(&c);
        let mut best: Option<(Rat, QVec)> = None;
        for s in &cands {
            let l = lam.eval(s).intersect_subspace(&h);
            for g in l.basis() {
                let t = mu.norm(g).expect("nonzero generator") - s;
                if best.as_ref().map_or(true, |(b, _)| t < *b) {
                    best = Some((t, g.clone()));
                }
            }
        }
        let (_, x0) = best.ok_or_else(|| Error::DimensionMismatch(format!("empty lattice on a span of dimension {}", h.len())))?;
        let coords = layer.coords(&c, &x0).expect("x0 in the current span");
        let k0 = coords
            .iter()
            .enumerate()
            .filter_map(|(k, ck)| {
                let v = layer.field.val(ck)?;
                Some((v + mu.norm(&c[k]).expect("basis vector"), k))
            })
            .min_by(|a, b| a.0.cmp(&b.0))
            .map(|(_, k)| k)
            .expect("x0 is nonzero");
        c.remove(k0);
        out.push(x0);
    }
    let lo = out.iter().map(|x| -lam.norm(x).expect("basis vector")).collect();
    let mo = out.iter().map(|x| -mu.norm(x).expect("basis vector")).collect();
    Ok(CommonSplitting {
        lambda: LatticeFunction::new(out.clone(), lo, layer.clone()),
        mu: LatticeFunction::new(out.clone(), mo, layer.clone()),
        basis: out,
    })
}

/// `t Λ + (1 - t) M`, read on a common splitting basis.
pub fn barycenter(lam: &LatticeFunction, mu: &LatticeFunction, t: &Rat) -> Result<LatticeFunction> {
    if *t < Rat::zero() || *t > Rat::one() {
        return Err(Error::ParameterOutOfRange(format!("barycentric weight {t}")));
    }
    let s = common_splitting_basis(lam, mu)?;
    let u = Rat::one() - t;
    let offsets = s.lambda.offsets.iter().zip(&s.mu.offsets).map(|(a, b)| t * a + &u * b).collect();
    Ok(LatticeFunction::new(s.basis, offsets, lam.layer.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::field_tower::PrimeLocalModel;
    use crate::latt_fun::Layer;
    use crate::linalg::unit_vec;
    use alloc::vec;

    fn layer() -> Layer {
        Layer::new("F", PrimeLocalModel::new(3).unwrap().layer(), None)
    }

    #[test]
    fn splits_a_standard_and_a_skew_point() {
        let lam = LatticeFunction::new(vec![unit_vec(2, 0), unit_vec(2, 1)], vec![int(0), int(0)], layer());
        let mu = LatticeFunction::new(
            vec![vec![int(1), int(1)], vec![int(0), int(1)]],
            vec![rat(1, 3), rat(-1, 2)],
            layer(),
        );
        let s = common_splitting_basis(&lam, &mu).unwrap();
        assert!(s.lambda.same(&lam));
        assert!(s.mu.same(&mu));
        let b = barycenter(&lam, &mu, &int(1)).unwrap();
        assert!(b.same(&lam));
        let b = barycenter(&lam, &mu, &int(0)).unwrap();
        assert!(b.same(&mu));
        assert!(matches!(barycenter(&lam, &mu, &int(2)), Err(Error::ParameterOutOfRange(_))));
    }
}
