#![allow(dead_code)]

use jbeta_core::arith::{int, Rat};
use jbeta_core::centralizer_embed::{decompose_beta, BetaDecomposition};
use jbeta_core::field_tower::{EMat, Elem, FieldTower};
use jbeta_core::herm_forms::HermForm;

pub fn z(n: i64) -> Elem {
    Elem::from_int(n)
}

pub fn emat(rows: &[&[i64]], d: i64) -> EMat {
    EMat::from_rows(rows.iter().map(|r| r.iter().map(|&x| z(x).with_layer(d)).collect()).collect(), d)
}

pub fn block_diag(a: &[&[i64]], b: &[&[i64]]) -> Vec<Vec<i64>> {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![0; n + m]; n + m];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = a[i][j];
        }
    }
    for i in 0..m {
        for j in 0..m {
            out[n + i][n + j] = b[i][j];
        }
    }
    out
}

fn refs(v: &[Vec<i64>]) -> Vec<&[i64]> {
    v.iter().map(|r| r.as_slice()).collect()
}

pub struct Scenario {
    pub name: &'static str,
    pub decomp: BetaDecomposition,
}

fn build(tower: FieldTower, eps: i32, gram: &[&[i64]], beta: &[&[i64]]) -> BetaDecomposition {
    let d = tower.f.d;
    let form = HermForm::ambient(&tower, eps, emat(gram, d)).unwrap();
    decompose_beta(&form, &emat(beta, d)).unwrap()
}

pub const J: [&[i64]; 2] = [&[0, 1], &[-1, 0]];

pub fn sp2_ramified() -> BetaDecomposition {
    build(FieldTower::rational(3).unwrap(), -1, &J, &[&[0, 1], &[3, 0]])
}

pub fn sp2_split() -> BetaDecomposition {
    build(FieldTower::rational(3).unwrap(), -1, &J, &[&[1, 0], &[0, -1]])
}

pub fn u2_unramified() -> BetaDecomposition {
    build(FieldTower::quadratic(3, 2).unwrap(), 1, &[&[0, 1], &[1, 0]], &[&[1, 0], &[0, -1]])
}

pub fn o2_anisotropic() -> BetaDecomposition {
    build(FieldTower::rational(3).unwrap(), 1, &[&[1, 0], &[0, -3]], &[&[0, 3], &[1, 0]])
}

pub fn sp4_mixed() -> BetaDecomposition {
    let g = block_diag(&J, &J);
    let b = block_diag(&[&[1, 0], &[0, -1]], &[&[0, 1], &[3, 0]]);
    build(FieldTower::rational(3).unwrap(), -1, &refs(&g), &refs(&b))
}

/// `Sp_4` with `β = diag(A, -A^T)` for the companion matrix of
/// `x^2 - x - 1`, so the blocks are a swapped pair of unramified quadratic
/// fields.
pub fn sp4_paired_quadratic() -> BetaDecomposition {
    let g: Vec<Vec<i64>> = vec![vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![-1, 0, 0, 0], vec![0, -1, 0, 0]];
    let b: Vec<Vec<i64>> = vec![vec![0, 1, 0, 0], vec![1, 1, 0, 0], vec![0, 0, 0, -1], vec![0, 0, -1, -1]];
    build(FieldTower::rational(3).unwrap(), -1, &refs(&g), &refs(&b))
}

/// `Sp_4` with `β = diag(1, 1, -1, -1)`: centralizer `GL_2`.
pub fn sp4_gl2() -> BetaDecomposition {
    let g: Vec<Vec<i64>> = vec![vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![-1, 0, 0, 0], vec![0, -1, 0, 0]];
    let b: Vec<Vec<i64>> = vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, -1, 0], vec![0, 0, 0, -1]];
    build(FieldTower::rational(3).unwrap(), -1, &refs(&g), &refs(&b))
}

/// `Sp_4` with `h = J ⊕ -J` and `β = diag(B, B)`, `B^2 = 3`: one ramified
/// block whose induced form has Witt index one.
pub fn sp4_ramified_rank1() -> BetaDecomposition {
    let g = block_diag(&J, &[&[0, -1], &[1, 0]]);
    let b = block_diag(&[&[0, 1], &[3, 0]], &[&[0, 1], &[3, 0]]);
    build(FieldTower::rational(3).unwrap(), -1, &refs(&g), &refs(&b))
}

pub fn all() -> Vec<Scenario> {
    vec![
        Scenario { name: "sp2-ramified", decomp: sp2_ramified() },
        Scenario { name: "sp2-split-gl", decomp: sp2_split() },
        Scenario { name: "u2-unramified", decomp: u2_unramified() },
        Scenario { name: "o2-anisotropic", decomp: o2_anisotropic() },
        Scenario { name: "sp4-mixed", decomp: sp4_mixed() },
        Scenario { name: "sp4-paired-quadratic", decomp: sp4_paired_quadratic() },
        Scenario { name: "sp4-gl2", decomp: sp4_gl2() },
        Scenario { name: "sp4-ramified-rank1", decomp: sp4_ramified_rank1() },
    ]
}

pub fn r(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn i(n: i64) -> Rat {
    int(n)
}

pub fn forms() -> Vec<(&'static str, HermForm)> {
    let q = FieldTower::rational(3).unwrap();
    let f2 = FieldTower::quadratic(3, 2).unwrap();
    let j2 = block_diag(&J, &J);
    vec![
        ("sp2", HermForm::ambient(&q, -1, emat(&J, 0)).unwrap()),
        ("u2", HermForm::ambient(&f2, 1, emat(&[&[0, 1], &[1, 0]], 2)).unwrap()),
        ("o2", HermForm::ambient(&q, 1, emat(&[&[1, 0], &[0, -3]], 0)).unwrap()),
        ("sp4", HermForm::ambient(&q, -1, emat(&refs(&j2), 0)).unwrap()),
    ]
}

pub mod gen {
    use super::*;
    use jbeta_core::field_tower::Realification;
    use jbeta_core::latt_fun::LatticeFunction;
    use jbeta_core::linalg::Mat;
    use rand::Rng;
    use rand_chacha::ChaCha8Rng;

    pub fn rat(rng: &mut ChaCha8Rng, max_den: i64, radius: i64) -> Rat {
        let d = rng.gen_range(1..=max_den);
        r(rng.gen_range(-radius * d..=radius * d), d)
    }

    pub fn elem(rng: &mut ChaCha8Rng, d: i64) -> Elem {
        let c = if d == 0 { 0 } else { rng.gen_range(-3..=3) };
        Elem::new(i(rng.gen_range(-4..=4)), i(c), d)
    }

    /// A split `o_F`-function on the ambient space of `form`, with a random
    /// invertible basis and offsets of denominator at most twelve.
    pub fn function(rng: &mut ChaCha8Rng, form: &HermForm) -> LatticeFunction {
        let n = form.dim();
        let real = Realification::new(form.layer, n);
        let layer = form.lattice_layer("F");
        loop {
            let basis: Vec<Vec<Rat>> = (0..n).map(|_| real.realify(&(0..n).map(|_| elem(rng, form.layer.d)).collect::<Vec<_>>())).collect();
            if Mat::from_cols(real.dim(), &layer.q_basis(&basis)).rank() == real.dim() {
                let offsets = (0..n).map(|_| rat(rng, 12, 2)).collect();
                return LatticeFunction::new(basis, offsets, layer);
            }
        }
    }

    /// A vector of `F^n`, realified.
    pub fn vector(rng: &mut ChaCha8Rng, form: &HermForm) -> Vec<Rat> {
        let real = Realification::new(form.layer, form.dim());
        real.realify(&(0..form.dim()).map(|_| elem(rng, form.layer.d)).collect::<Vec<_>>())
    }
}
