//! The ground field `Q` with a `p`-adic valuation and its quadratic layers.

mod elem;
mod emat;
mod lambda;
mod space;

pub use elem::Elem;
pub use emat::EMat;
pub use lambda::{build_sigma_equivariant_form, SigmaLinearForm};
pub use space::{realify_basis_vector, Realification};

use alloc::format;

use num_traits::{One, Zero};

use crate::arith::{int, is_padic_square, is_prime, rat, rational_sqrt, squarefree_part, val, Rat};
use crate::error::{Error, Result};

/// The rationals with the valuation `v_p`, `p` odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeLocalModel {
    p: u64,
}

impl PrimeLocalModel {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p == 2 {
            return Err(Error::UnsupportedResidueChar);
        }
        Ok(PrimeLocalModel { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The base field itself as a layer of degree one.
    pub fn layer(&self) -> QuadLayer {
        QuadLayer { p: self.p, d: 0, e: 1 }
    }
}

/// `Q` (`d == 0`) or `Q(√d)` with `d` squarefree and not a square in `Q_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadLayer {
    pub p: u64,
    pub d: i64,
    pub e: u32,
}

impl QuadLayer {
    pub fn is_base(&self) -> bool {
        self.d == 0
    }

    /// Degree over `Q`.
    pub fn degree(&self) -> usize {
        if self.d == 0 {
            1
        } else {
            2
        }
    }

    pub fn ramification(&self) -> u32 {
        self.e
    }

    pub fn residue_field_size(&self) -> u64 {
        let f = self.degree() as u32 / self.e;
        self.p.pow(f)
    }

    /// `v(x)` normalized by `v(p) = 1`; `None` for zero.
    pub fn val(&self, x: &Elem) -> Option<Rat> {
        if x.is_zero() {
            return None;
        }
        let n = x.norm();
        if x.is_rational() {
            return val(&x.a, self.p).map(int);
        }
        val(&n, self.p).map(|k| rat(k, 2))
    }

    pub fn uniformizer(&self) -> Elem {
        if self.e == 2 {
            Elem::sqrt_d(self.d)
        } else {
            Elem::from_int(self.p as i64)
        }
    }

    pub fn generator(&self) -> Elem {
        if self.d == 0 {
            Elem::one()
        } else {
            Elem::sqrt_d(self.d)
        }
    }

    /// `π^m` for any integer `m`.
    pub fn pi_pow(&self, m: i64) -> Elem {
        let pi = self.uniformizer().with_layer(self.d);
        let base = if m >= 0 { pi } else { pi.inv() };
        let mut out = Elem::one();
        for _ in 0..m.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// Whether `x` lies in the valuation ring.
    pub fn is_integral(&self, x: &Elem) -> bool {
        self.val(x).map_or(true, |v| v >= Rat::zero())
    }

    pub fn is_unit(&self, x: &Elem) -> bool {
        self.val(x).map_or(false, |v| v.is_zero())
    }

    /// Square root inside the layer, if one exists.
    pub fn sqrt(&self, x: &Elem) -> Option<Elem> {
        if x.is_zero() {
            return Some(Elem::zero());
        }
        if self.d == 0 || x.is_rational() {
            if let Some(s) = rational_sqrt(&x.a) {
                return Some(Elem::rational(s).with_layer(self.d));
            }
            if self.d == 0 {
                return None;
            }
            let y = rational_sqrt(&(&x.a / int(self.d)))?;
            return Some(Elem::new(Rat::zero(), y, self.d));
        }
        let n = rational_sqrt(&x.norm())?;
        let two = int(2);
        for s in [n.clone(), -n] {
            let a2 = (&x.a + &s) / &two;
            if let Some(a) = rational_sqrt(&a2) {
                if a.is_zero() {
                    continue;
                }
                let c = &x.c / (&two * &a);
                let cand = Elem::new(a, c, self.d);
                if &cand * &cand == *x {
                    return Some(cand);
                }
            }
        }
        None
    }
}

/// `F_o ⊂ F` together with the involution `σ_F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldTower {
    pub base: PrimeLocalModel,
    pub f: QuadLayer,
}

impl FieldTower {
    pub fn rational(p: u64) -> Result<Self> {
        let base = PrimeLocalModel::new(p)?;
        Ok(FieldTower { base, f: base.layer() })
    }

    pub fn quadratic(p: u64, d: i64) -> Result<Self> {
        let base = PrimeLocalModel::new(p)?;
        let f = make_quadratic_extension(&base.layer(), d)?;
        Ok(FieldTower { base, f })
    }

    pub fn p(&self) -> u64 {
        self.base.p
    }

    pub fn sigma_nontrivial(&self) -> bool {
        !self.f.is_base()
    }

    /// `σ_F`.
    pub fn sigma(&self, x: &Elem) -> Elem {
        if self.sigma_nontrivial() {
            x.conj()
        } else {
            x.clone()
        }
    }
}

/// Adjoins `√d` to the base field.
pub fn make_quadratic_extension(base: &QuadLayer, d: i64) -> Result<QuadLayer> {
    if base.p == 2 {
        return Err(Error::UnsupportedResidueChar);
    }
    if !base.is_base() {
        return Err(Error::UnsupportedTower(format!(
            "quadratic extension of Q(√{}) requested",
            base.d
        )));
    }
    if d == 0 {
        return Err(Error::DegenerateExtension("d = 0".into()));
    }
    let (core, sq) = squarefree_part(d);
    if core == 1 {
        return Err(Error::DegenerateExtension(format!("{d} is a square")));
    }
    if sq != 1 {
        return Err(Error::ParameterOutOfRange(format!("{d} is not squarefree")));
    }
    if is_padic_square(&int(d), base.p) {
        return Err(Error::DegenerateExtension(format!(
            "{d} is a square in Q_{}, so x^2 - {d} splits there",
            base.p
        )));
    }
    let e = if d.rem_euclid(base.p as i64) == 0 { 2 } else { 1 };
    Ok(QuadLayer { p: base.p, d, e })
}

/// `v(x)` in the given layer; `None` is `∞`.
pub fn valuation(layer: &QuadLayer, x: &Elem) -> Option<Rat> {
    layer.val(x)
}

pub(crate) fn one_half() -> Rat {
    Rat::one() / int(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q3() -> QuadLayer {
        PrimeLocalModel::new(3).unwrap().layer()
    }

    #[test]
    fn unramified_and_ramified_layers() {
        let l = make_quadratic_extension(&q3(), 2).unwrap();
        assert_eq!(l.e, 1);
        assert_eq!(l.residue_field_size(), 9);
        assert_eq!(l.val(&Elem::sqrt_d(2)), Some(Rat::zero()));
        let r = make_quadratic_extension(&q3(), 3).unwrap();
        assert_eq!(r.e, 2);
        assert_eq!(r.val(&Elem::sqrt_d(3)), Some(rat(1, 2)));
        assert_eq!(r.residue_field_size(), 3);
    }

    #[test]
    fn degenerate_extensions() {
        assert!(matches!(make_quadratic_extension(&q3(), 4), Err(Error::DegenerateExtension(_))));
        assert!(matches!(make_quadratic_extension(&q3(), 7), Err(Error::DegenerateExtension(_))));
        assert_eq!(PrimeLocalModel::new(2), Err(Error::UnsupportedResidueChar));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(q3().val(&Elem::rational(rat(9, 2))), Some(int(2)));
        assert_eq!(q3().val(&Elem::zero()), None);
    }

    #[test]
    fn square_roots() {
        let l = make_quadratic_extension(&q3(), 2).unwrap();
        let x = Elem::new(int(3), int(2), 2);
        let sq = &x * &x;
        let s = l.sqrt(&sq).unwrap();
        assert_eq!(&s * &s, sq);
        assert!(l.sqrt(&Elem::sqrt_d(2)).is_none());
    }

    #[test]
    fn residue_field_irreducibility_oracle() {
        // x^2 - d has no root mod p exactly for the unramified layers.
        for d in [2i64, 5, 11, 14, -1, 3, -3, 6, 15] {
            let l = make_quadratic_extension(&q3(), d).unwrap();
            let roots = (0..3).filter(|x| (x * x - d).rem_euclid(3) == 0).count();
            assert_eq!(l.e == 1, roots == 0, "d = {d}");
        }
    }
}
