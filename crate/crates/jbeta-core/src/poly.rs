//! Polynomials over a layer `Q(√d)` and partial-fraction idempotents.

use alloc::vec;
use alloc::vec::Vec;

use crate::field_tower::Elem;

/// Coefficients from the constant term upwards; never has a zero leading
/// coefficient except for the zero polynomial, which is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub coeffs: Vec<Elem>,
    pub d: i64,
}

impl Poly {
    pub fn new(coeffs: Vec<Elem>, d: i64) -> Poly {
        let mut p = Poly { coeffs: coeffs.into_iter().map(|c| c.with_layer(d)).collect(), d };
        p.trim();
        p
    }

    pub fn zero(d: i64) -> Poly {
        Poly { coeffs: Vec::new(), d }
    }

    pub fn one(d: i64) -> Poly {
        Poly::new(vec![Elem::one()], d)
    }

    /// `x - a`.
    pub fn linear(a: &Elem, d: i64) -> Poly {
        Poly::new(vec![-a, Elem::one()], d)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Elem::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> &Elem {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn monic(&self) -> Poly {
        let inv = self.lead().inv();
        Poly::new(self.coeffs.iter().map(|c| c * &inv).collect(), self.d)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Elem::zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
            .collect();
        Poly::new(c, self.d)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&Elem::from_int(-1)))
    }

    pub fn scale(&self, s: &Elem) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect(), self.d)
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.d);
        }
        let mut c = vec![Elem::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Poly::new(c, self.d)
    }

    pub fn div_rem(&self, o: &Poly) -> (Poly, Poly) {
        assert!(!o.is_zero(), "division by the zero polynomial");
        let mut r = self.clone();
        let dq = o.coeffs.len();
        if r.coeffs.len() < dq {
            return (Poly::zero(self.d), r);
        }
        let inv = o.lead().inv();
        let mut q = vec![Elem::zero(); r.coeffs.len() - dq + 1];
        while !r.is_zero() && r.coeffs.len() >= dq {
            let shift = r.coeffs.len() - dq;
            let f = r.lead() * &inv;
            for (j, b) in o.coeffs.iter().enumerate() {
                r.coeffs[shift + j] = &r.coeffs[shift + j] - &(&f * b);
            }
            q[shift] = f;
            r.trim();
        }
        (Poly::new(q, self.d), r)
    }

    pub fn rem(&self, o: &Poly) -> Poly {
        self.div_rem(o).1
    }

    pub fn derivative(&self) -> Poly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a * &Elem::from_int(i as i64))
            .collect();
        Poly::new(c, self.d)
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        let mut acc = Elem::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `(g, s, t)` with `g = s a + t b` and `g` monic.
    pub fn ext_gcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let d = a.d;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(d), Poly::zero(d));
        let (mut t0, mut t1) = (Poly::zero(d), Poly::one(d));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lead().inv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        Poly::ext_gcd(a, b).0
    }

    pub fn is_squarefree(&self) -> bool {
        Poly::gcd(self, &self.derivative()).degree() == Some(0)
    }
}

/// Polynomials `e_i` with `e_i ≡ 1 mod f_i`, `e_i ≡ 0 mod f_j` (`j ≠ i`),
/// reduced modulo the product, for pairwise coprime factors.
pub fn crt_idempotents(factors: &[Poly]) -> Vec<Poly> {
    let d = factors[0].d;
    let f = factors.iter().fold(Poly::one(d), |acc, g| acc.mul(g));
    factors
        .iter()
        .map(|fi| {
            let (gi, r) = f.div_rem(fi);
            debug_assert!(r.is_zero());
            let (g, s, _) = Poly::ext_gcd(&gi, fi);
            assert_eq!(g.degree(), Some(0), "factors are not coprime");
            gi.mul(&s).rem(&f)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| Elem::from_int(x)).collect(), 0)
    }

    #[test]
    fn division() {
        let a = p(&[-1, 0, 0, 1]);
        let b = p(&[-1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn squarefree_test() {
        assert!(p(&[-3, 0, 1]).is_squarefree());
        assert!(!p(&[0, 0, 1]).is_squarefree());
    }

    #[test]
    fn idempotents_partition_unity() {
        let fs = [p(&[-1, 1]), p(&[1, 1]), p(&[-3, 0, 1])];
        let f = fs.iter().fold(Poly::one(0), |a, g| a.mul(g));
        let es = crt_idempotents(&fs);
        let sum = es.iter().fold(Poly::zero(0), |a, e| a.add(e));
        assert_eq!(sum.rem(&f), Poly::one(0));
        for (i, ei) in es.iter().enumerate() {
            for (j, fj) in fs.iter().enumerate() {
                let r = ei.rem(fj);
                if i == j {
                    assert_eq!(r, Poly::one(0));
                } else {
                    assert!(r.is_zero());
                }
            }
        }
    }

    #[test]
    fn eval_over_quadratic_layer() {
        let s = Elem::sqrt_d(2);
        let f = Poly::new(vec![Elem::from_int(-2), Elem::zero(), Elem::one()], 2);
        assert!(f.eval(&s).is_zero());
        assert_eq!(f.eval(&Elem::one()), Elem::rational(int(-1)));
    }
}
