use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::{fmt_rat, int, Rat};

/// An element `a + c√d` of `Q` or of a quadratic field `Q(√d)`.
///
/// `d == 0` marks a plain rational. Rationals combine with elements of any
/// layer; two irrational elements must share the same `d`.
#[derive(Clone, Debug)]
pub struct Elem {
    pub a: Rat,
    pub c: Rat,
    pub d: i64,
}

impl Elem {
    pub fn rational(a: Rat) -> Elem {
        Elem { a, c: Rat::zero(), d: 0 }
    }

    pub fn new(a: Rat, c: Rat, d: i64) -> Elem {
        if c.is_zero() {
            Elem { a, c, d }
        } else {
            assert!(d != 0, "irrational part without a quadratic layer");
            Elem { a, c, d }
        }
    }

    pub fn from_int(n: i64) -> Elem {
        Elem::rational(int(n))
    }

    pub fn zero() -> Elem {
        Elem::rational(Rat::zero())
    }

    pub fn one() -> Elem {
        Elem::rational(Rat::one())
    }

    /// `√d` in the layer `Q(√d)`.
    pub fn sqrt_d(d: i64) -> Elem {
        Elem { a: Rat::zero(), c: Rat::one(), d }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.c.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.c.is_zero()
    }

    /// Galois conjugate `a - c√d`.
    pub fn conj(&self) -> Elem {
        Elem { a: self.a.clone(), c: -self.c.clone(), d: self.d }
    }

    /// `a² - d c²`.
    pub fn norm(&self) -> Rat {
        if self.c.is_zero() {
            return &self.a * &self.a;
        }
        &self.a * &self.a - int(self.d) * &self.c * &self.c
    }

    pub fn trace(&self) -> Rat {
        int(2) * &self.a
    }

    pub fn inv(&self) -> Elem {
        assert!(!self.is_zero(), "inverse of zero");
        let n = self.norm();
        Elem { a: &self.a / &n, c: -(&self.c / &n), d: self.d }
    }

    pub fn scale(&self, s: &Rat) -> Elem {
        Elem { a: &self.a * s, c: &self.c * s, d: self.d }
    }

    pub fn with_layer(mut self, d: i64) -> Elem {
        if self.c.is_zero() || self.d == d {
            self.d = d;
            self
        } else {
            panic!("element of Q(√{}) moved to Q(√{})", self.d, d)
        }
    }

    fn join(a: i64, b: i64, ca: &Rat, cb: &Rat) -> i64 {
        match (a, b) {
            (0, x) | (x, 0) => x,
            (x, y) if x == y => x,
            (x, y) => {
                assert!(ca.is_zero() || cb.is_zero(), "mixed layers Q(√{x}) and Q(√{y})");
                if ca.is_zero() {
                    y
                } else {
                    x
                }
            }
        }
    }
}

impl PartialEq for Elem {
    fn eq(&self, o: &Elem) -> bool {
        self.a == o.a && self.c == o.c
    }
}

impl Eq for Elem {}

impl<'a> Add<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn add(self, o: &Elem) -> Elem {
        let d = Elem::join(self.d, o.d, &self.c, &o.c);
        Elem { a: &self.a + &o.a, c: &self.c + &o.c, d }
    }
}

impl<'a> Sub<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn sub(self, o: &Elem) -> Elem {
        let d = Elem::join(self.d, o.d, &self.c, &o.c);
        Elem { a: &self.a - &o.a, c: &self.c - &o.c, d }
    }
}

impl<'a> Mul<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn mul(self, o: &Elem) -> Elem {
        let d = Elem::join(self.d, o.d, &self.c, &o.c);
        let a = if self.c.is_zero() || o.c.is_zero() {
            &self.a * &o.a
        } else {
            &self.a * &o.a + int(d) * &self.c * &o.c
        };
        let c = &self.a * &o.c + &self.c * &o.a;
        Elem { a, c, d }
    }
}

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Elem { a: -self.a.clone(), c: -self.c.clone(), d: self.d }
    }
}

impl Add for Elem {
    type Output = Elem;
    fn add(self, o: Elem) -> Elem {
        &self + &o
    }
}

impl Sub for Elem {
    type Output = Elem;
    fn sub(self, o: Elem) -> Elem {
        &self - &o
    }
}

impl Mul for Elem {
    type Output = Elem;
    fn mul(self, o: Elem) -> Elem {
        &self * &o
    }
}

impl Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        -&self
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_zero() {
            write!(f, "{}", fmt_rat(&self.a))
        } else {
            write!(f, "{} + {}√{}", fmt_rat(&self.a), fmt_rat(&self.c), self.d)
        }
    }
}
