use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{one_half, Elem, QuadLayer};
use crate::arith::{int, ppow, val, Rat};

/// An `F`-linear form `λ : E → F` with `λ(x^σ) = λ(x)^{σ_F}`.
///
/// `E` is either `F` itself or a quadratic extension of `F = Q`. The form is
/// stored through its values on the `F`-basis `1` (resp. `1, √D`) of `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaLinearForm {
    pub source: QuadLayer,
    pub target: QuadLayer,
    /// Whether `σ_E` is nontrivial.
    pub sigma_e: bool,
    pub coeffs: Vec<Elem>,
}

impl SigmaLinearForm {
    /// `[E : F]`.
    pub fn relative_degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn apply(&self, x: &Elem) -> Elem {
        if self.relative_degree() == 1 {
            let v = &self.coeffs[0] * x;
            return v.with_layer(self.target.d);
        }
        let a = Elem::rational(x.a.clone());
        let c = Elem::rational(x.c.clone());
        (&(&a * &self.coeffs[0]) + &(&c * &self.coeffs[1])).with_layer(self.target.d)
    }

    pub fn sigma_source(&self, x: &Elem) -> Elem {
        if self.sigma_e {
            x.conj()
        } else {
            x.clone()
        }
    }

    pub fn sigma_target(&self, x: &Elem) -> Elem {
        if self.target.is_base() {
            x.clone()
        } else {
            x.conj()
        }
    }

    /// `[E : E^o]`.
    fn index_over_fixed(&self) -> i64 {
        if self.sigma_e {
            2
        } else {
            1
        }
    }

    /// The scalar `κ` with `λ^o(e) = κ e` on `E^o`.
    pub fn lambda_o_scalar(&self) -> Rat {
        let half_or_one = if self.index_over_fixed() == 2 { one_half() } else { int(1) };
        let l1 = self.apply(&Elem::rational(half_or_one).with_layer(self.source.d));
        if self.target.is_base() {
            l1.a
        } else {
            l1.trace()
        }
    }

    /// `k` with `𝓘 = p^k o_{E^o}`.
    pub fn normalization_exponent(&self) -> i64 {
        let v = val(&self.lambda_o_scalar(), self.source.p).expect("λ is nonzero");
        1 - v
    }

    pub fn is_normalized(&self) -> bool {
        self.normalization_exponent() == 1
    }

    pub fn is_equivariant(&self, samples: &[Elem]) -> bool {
        samples.iter().all(|x| self.apply(&self.sigma_source(x)) == self.sigma_target(&self.apply(x)))
    }

    /// `x ↦ λ(w x)`.
    pub fn twisted(&self, w: &Elem) -> SigmaLinearForm {
        let basis = self.e_basis();
        let coeffs = basis.iter().map(|b| self.apply(&(w * b))).collect();
        SigmaLinearForm { coeffs, ..self.clone() }
    }

    fn e_basis(&self) -> Vec<Elem> {
        if self.relative_degree() == 1 {
            vec![Elem::one()]
        } else {
            vec![Elem::one(), Elem::sqrt_d(self.source.d)]
        }
    }

    /// The unit `u ∈ o_{E^o}^×` with `self(e) = other(u e)`, if it exists.
    pub fn compare(&self, other: &SigmaLinearForm) -> Option<Elem> {
        let u = if self.relative_degree() == 1 {
            let t2 = &other.coeffs[0];
            if t2.is_zero() {
                return None;
            }
            let u = &self.coeffs[0] * &t2.inv();
            u.with_layer(self.source.d)
        } else {
            let c0 = &other.coeffs[0].a;
            let c1 = &other.coeffs[1].a;
            let dd = int(self.source.d);
            let det = &dd * c0 * c0 - c1 * c1;
            if det.is_zero() {
                return None;
            }
            let r0 = &self.coeffs[0].a;
            let r1 = &self.coeffs[1].a;
            let u0 = (&dd * c0 * r0 - c1 * r1) / &det;
            let u1 = (c0 * r1 - c1 * r0) / &det;
            Elem::new(u0, u1, self.source.d)
        };
        let agree = self.e_basis().iter().all(|b| self.apply(b) == other.apply(&(&u * b)));
        let fixed = self.sigma_source(&u) == u;
        if agree && fixed && self.source.is_unit(&u) {
            Some(u)
        } else {
            None
        }
    }
}

/// The trace construction, rescaled so that the normalization set is `p_{E^o}`.
pub fn build_sigma_equivariant_form(source: QuadLayer, target: QuadLayer, sigma_e: bool) -> SigmaLinearForm {
    let coeffs = if source.d == target.d {
        vec![Elem::one().with_layer(target.d)]
    } else {
        assert!(target.is_base(), "only E = F or F = Q are supported");
        // λ^o = identity/2 composed with Tr_{E/E^o}: the coefficient of 1.
        vec![Elem::one(), Elem::zero()]
    };
    let lam = SigmaLinearForm { source, target, sigma_e, coeffs };
    let k = lam.normalization_exponent();
    if k == 1 {
        return lam;
    }
    let t = Elem::rational(ppow(source.p, k - 1)).with_layer(source.d);
    lam.twisted(&t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_tower::{make_quadratic_extension, PrimeLocalModel};

    fn layers(d: i64) -> (QuadLayer, QuadLayer) {
        let q = PrimeLocalModel::new(3).unwrap().layer();
        (make_quadratic_extension(&q, d).unwrap(), q)
    }

    fn samples(d: i64) -> Vec<Elem> {
        (-2..3).flat_map(|a| (-2..3).map(move |c| Elem::new(int(a), int(c), d))).collect()
    }

    #[test]
    fn ramified_trace_form() {
        let (e, f) = layers(3);
        let lam = build_sigma_equivariant_form(e, f, true);
        assert_eq!(lam.apply(&Elem::new(int(5), int(7), 3)), Elem::from_int(5));
        assert!(lam.is_equivariant(&samples(3)));
        assert!(lam.is_normalized());
    }

    #[test]
    fn normalization_set_oracle() {
        // 𝓘 is checked on generators: p lies in it, 1 does not.
        for d in [2, 3, -1] {
            let (e, f) = layers(d);
            let lam = build_sigma_equivariant_form(e, f, true);
            let image_in_p = |x: Rat| {
                let y = lam.apply(&Elem::rational(x / int(2)).with_layer(d));
                val(&y.a, 3).map_or(true, |v| v >= 1)
            };
            assert!(image_in_p(int(3)));
            assert!(image_in_p(int(9)));
            assert!(!image_in_p(int(1)));
            assert!(!image_in_p(int(2)));
        }
    }

    #[test]
    fn comparison_unit_of_two_forms() {
        let (e, f) = layers(3);
        let lam = build_sigma_equivariant_form(e, f, true);
        let w = Elem::from_int(-5).with_layer(3);
        let other = lam.twisted(&w);
        let u = lam.compare(&other).unwrap();
        assert_eq!(u, w.inv());
        let bad = lam.twisted(&Elem::from_int(3));
        assert!(lam.compare(&bad).is_none());
    }

    #[test]
    fn rescaling_restores_normalization() {
        let (e, f) = layers(2);
        let skewed = build_sigma_equivariant_form(e, f, true).twisted(&Elem::from_int(9));
        assert_eq!(skewed.normalization_exponent(), -1);
        let fixed = skewed.twisted(&Elem::rational(ppow(3, -2)));
        assert!(fixed.is_normalized());
    }
}
