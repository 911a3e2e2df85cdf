use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{end_function, flatten, unflatten, SquareLatticeFunction};
use crate::arith::{frac, int, sorted_unique, Rat};
use crate::error::{Error, Result};
use crate::herm_forms::RealifiedForm;
use crate::latt_fun::{DvrLattice, JumpFunction, LatticeFunction};
use crate::linalg::{vadd, vscale, Mat, QVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiltrationSpace {
    /// `End_F(V)`.
    GTilde,
    /// `{a : a + a^σ = 0}`.
    G,
    /// The centralizer of `β` in `End_F(V)`.
    HTilde,
    /// The centralizer of `β` in `g`.
    H,
}

impl FiltrationSpace {
    pub fn name(&self) -> &'static str {
        match self {
            FiltrationSpace::GTilde => "g~",
            FiltrationSpace::G => "g",
            FiltrationSpace::HTilde => "h~",
            FiltrationSpace::H => "h",
        }
    }
}

/// One period of a filtration by lattices of endomorphisms, through its
/// jumps; the period is always `1` since `v(p) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationProfile {
    pub space: FiltrationSpace,
    pub n: usize,
    pub function: JumpFunction,
}

impl FiltrationProfile {
    pub fn from_square(space: FiltrationSpace, sq: &SquareLatticeFunction, subspace: Option<&[QVec]>) -> FiltrationProfile {
        let cands = sq
            .jump_candidates()
            .into_iter()
            .map(|r| {
                let l = sq.at(&r);
                let l = match subspace {
                    Some(s) => l.intersect_subspace(s),
                    None => l,
                };
                (r, l)
            })
            .collect();
        FiltrationProfile { space, n: sq.n, function: JumpFunction::from_candidates(sq.function.p(), sq.n * sq.n, cands) }
    }

    pub fn at(&self, r: &Rat) -> DvrLattice {
        self.function.at(r)
    }

    pub fn jump_points(&self) -> Vec<Rat> {
        self.function.jump_points()
    }

    pub fn period(&self) -> Rat {
        Rat::one()
    }

    /// `r ↦ self(r) ∩ K`.
    pub fn intersect(&self, space: FiltrationSpace, k: &[QVec]) -> FiltrationProfile {
        let cands = self.function.jumps.iter().map(|(r, l)| (r.clone(), l.intersect_subspace(k))).collect();
        FiltrationProfile { space, n: self.n, function: JumpFunction::from_candidates(self.function.p, self.function.dim, cands) }
    }
}

/// `{a ∈ span : a + a^σ = 0}` for a spanning set of flattened endomorphisms.
pub fn lie_subspace(form: &RealifiedForm, span: &[QVec]) -> Vec<QVec> {
    let n = form.dim();
    let cols: Vec<QVec> = span
        .iter()
        .map(|v| {
            let a = unflatten(n, v);
            flatten(&a.add(&form.adjoint(&a)))
        })
        .collect();
    combine(span, &Mat::from_cols(n * n, &cols).kernel())
}

pub(crate) fn combine(span: &[QVec], coeffs: &[QVec]) -> Vec<QVec> {
    coeffs
        .iter()
        .map(|t| {
            let mut v = alloc::vec![Rat::zero(); span[0].len()];
            for (tj, s) in t.iter().zip(span) {
                if !tj.is_zero() {
                    v = vadd(&v, &vscale(s, tj));
                }
            }
            v
        })
        .collect()
}

/// `r ↦ g̃_{x,r}`.
pub fn gl_filtration(x: &LatticeFunction) -> FiltrationProfile {
    FiltrationProfile::from_square(FiltrationSpace::GTilde, &end_function(x, &[]), None)
}

/// `r ↦ g_{x,r} = g̃_{x,r} ∩ g`.
pub fn lie_filtration(x: &LatticeFunction, form: &RealifiedForm) -> FiltrationProfile {
    let sq = end_function(x, &[]);
    let g = lie_subspace(form, &sq.space());
    FiltrationProfile::from_square(FiltrationSpace::G, &sq, Some(&g))
}

/// `S^* = { a ∈ span(space) : Tr(a S) ⊂ p_F }`, the trace taken over `F`.
///
/// On realified matrices `Tr_F` is read through `Tr_Q / [F : Q]`, whose
/// `Q`-part has the same dual as `Tr_F` followed by the normalized `F → Q`.
pub fn trace_dual(s: &DvrLattice, space: &[QVec], deg: usize) -> Result<DvrLattice> {
    let n2 = s.ambient_dim();
    let n = (1..=n2).find(|k| k * k == n2).ok_or_else(|| Error::DimensionMismatch("not a square matrix space".into()))?;
    let w = Rat::one() / int(deg as i64);
    let mut gram = Mat::zeros(n2, n2);
    for i in 0..n {
        for j in 0..n {
            gram[(i * n + j, j * n + i)] = w.clone();
        }
    }
    if s.rank() != space.len() {
        return Err(Error::RankDeficient);
    }
    Ok(s.pairing_dual(&gram, space)?.scale_p(1))
}

/// The unique self-dual function with the same square as `seed`.
///
/// Reads the shift `c` with `seed^♯ = seed + c` off canonical forms and
/// returns `seed + c/2`. The seed may live on a nondegenerate subspace, its
/// endomorphisms extended by zero on the orthogonal `complement`.
pub fn recover_self_dual(seed: &LatticeFunction, form: &RealifiedForm, complement: &[QVec]) -> Result<LatticeFunction> {
    let sq = end_function(seed, complement);
    if sq.canonical() != sq.sigma(form).canonical() {
        return Err(Error::NotSigmaFixed);
    }
    let dual = seed.dual(&form.gram, None)?;
    let c = shift_between(seed, &dual).ok_or(Error::NotShiftRelated)?;
    Ok(seed.shift(&(c / int(2))))
}

/// `c` with `other = base + c`, if any.
pub fn shift_between(base: &LatticeFunction, other: &LatticeFunction) -> Option<Rat> {
    let target = other.canonical();
    let first = target.jump_points().first().cloned().unwrap_or_else(Rat::zero);
    let own = base.canonical().jump_points();
    let q_dim = base.span().len() as i64;
    let lv_target = other.eval(&Rat::zero()).log_volume();
    sorted_unique(own.iter().map(|s| frac(&(s - &first))).collect())
        .into_iter()
        .find_map(|f| {
            let moved = base.shift(&f);
            let diff = lv_target - moved.eval(&Rat::zero()).log_volume();
            if q_dim == 0 || diff % q_dim != 0 {
                return None;
            }
            let c = f + int(diff / q_dim);
            (base.shift(&c).canonical() == target).then_some(c)
        })
}
