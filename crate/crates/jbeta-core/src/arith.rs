//! Rational numbers and their `p`-adic valuations.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// Exponent of `p` in a nonzero integer.
pub fn vp_int(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

/// `p`-adic valuation; `None` stands for the valuation of zero.
pub fn val(x: &Rat, p: u64) -> Option<i64> {
    if x.is_zero() {
        None
    } else {
        Some(vp_int(x.numer(), p) - vp_int(x.denom(), p))
    }
}

/// `p^k` for any integer `k`.
pub fn ppow(p: u64, k: i64) -> Rat {
    let base = BigInt::from(p);
    let m = num_traits::pow(base, k.unsigned_abs() as usize);
    if k >= 0 {
        Rat::from_integer(m)
    } else {
        Rat::new(BigInt::one(), m)
    }
}

pub fn ceil(x: &Rat) -> i64 {
    x.ceil().to_integer().to_i64().expect("exponent fits in i64")
}

pub fn floor(x: &Rat) -> i64 {
    x.floor().to_integer().to_i64().expect("exponent fits in i64")
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Rat) -> Rat {
    x - x.floor()
}

/// Reduces `x` into `[0, period)` modulo `period`.
pub fn reduce_mod(x: &Rat, period: &Rat) -> Rat {
    let q = (x / period).floor();
    x - q * period
}

/// Unit part `x / p^{v(x)}`.
pub fn unit_part(x: &Rat, p: u64) -> Rat {
    let v = val(x, p).expect("nonzero");
    x / ppow(p, v)
}

/// Canonical representative of `x` modulo `p^k Z_(p)`.
///
/// The representative is `m / p^s` with `0 <= m < p^{k+s}`, so two rationals
/// are congruent exactly when their representatives coincide.
pub fn reduce_mod_pk(x: &Rat, p: u64, k: i64) -> Rat {
    if x.is_zero() {
        return zero();
    }
    let v = val(x, p).unwrap();
    if v >= k {
        return zero();
    }
    let s = if v < 0 { -v } else { 0 };
    let y = x * ppow(p, s);
    let modulus = ppow(p, k + s).to_integer();
    let num = y.numer();
    let den = y.denom();
    let inv = mod_inverse(den, &modulus);
    let m = (num * inv).mod_floor(&modulus);
    Rat::new(m, ppow(p, s).to_integer())
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Legendre symbol `(a / p)` for an integer prime to `p`.
pub fn legendre(a: &BigInt, p: u64) -> i32 {
    let pb = BigInt::from(p);
    let a = a.mod_floor(&pb);
    if a.is_zero() {
        return 0;
    }
    let e = BigInt::from((p - 1) / 2);
    let r = a.modpow(&e, &pb);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// Legendre symbol of a `p`-adic unit given as a rational.
pub fn legendre_unit(x: &Rat, p: u64) -> i32 {
    let pb = BigInt::from(p);
    legendre(&(x.numer() * x.denom()).mod_floor(&pb), p)
}

/// Whether `x` is a square in `Q_p` (odd `p`).
pub fn is_padic_square(x: &Rat, p: u64) -> bool {
    match val(x, p) {
        None => true,
        Some(v) => v % 2 == 0 && legendre_unit(&unit_part(x, p), p) == 1,
    }
}

/// Exact square root in `Q`, if any.
pub fn rational_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

/// Squarefree part of a nonzero integer, with sign.
pub fn squarefree_part(n: i64) -> (i64, i64) {
    assert!(n != 0);
    let sign = n.signum();
    let mut m = n.abs();
    let mut sq = 1i64;
    let mut core = 1i64;
    let mut d = 2i64;
    while d * d <= m {
        while m % (d * d) == 0 {
            m /= d * d;
            sq *= d;
        }
        if m % d == 0 {
            m /= d;
            core *= d;
        }
        d += 1;
    }
    core *= m;
    (sign * core, sq)
}

/// Hilbert symbol `(a, b)_p` for odd `p` and nonzero rationals.
pub fn hilbert_symbol(a: &Rat, b: &Rat, p: u64) -> i32 {
    let alpha = val(a, p).expect("nonzero");
    let beta = val(b, p).expect("nonzero");
    let u = unit_part(a, p);
    let w = unit_part(b, p);
    let eps = if (p % 4) == 3 && (alpha * beta) % 2 != 0 { -1 } else { 1 };
    let lu = if beta % 2 != 0 { legendre_unit(&u, p) } else { 1 };
    let lw = if alpha % 2 != 0 { legendre_unit(&w, p) } else { 1 };
    eps * lu * lw
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

pub fn fmt_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        let mut s = x.numer().to_string();
        s.push('/');
        s.push_str(&x.denom().to_string());
        s
    }
}

/// Sorted, deduplicated copy.
pub fn sorted_unique(mut v: Vec<Rat>) -> Vec<Rat> {
    v.sort();
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(val(&rat(9, 2), 3), Some(2));
        assert_eq!(val(&rat(2, 27), 3), Some(-3));
        assert_eq!(val(&zero(), 3), None);
    }

    #[test]
    fn residues_are_canonical() {
        let a = reduce_mod_pk(&rat(1, 2), 3, 2);
        let b = reduce_mod_pk(&rat(5, 1), 3, 2);
        assert_eq!(a, b);
        assert_eq!(reduce_mod_pk(&rat(1, 3), 3, 1), rat(1, 3));
        assert_eq!(reduce_mod_pk(&rat(28, 3), 3, 1), rat(1, 3));
        assert_eq!(reduce_mod_pk(&int(9), 3, 2), zero());
    }

    #[test]
    fn hilbert_symbols() {
        assert_eq!(hilbert_symbol(&int(3), &int(-1), 3), -1);
        assert_eq!(hilbert_symbol(&int(2), &int(2), 3), 1);
        assert_eq!(hilbert_symbol(&int(3), &int(2), 3), -1);
        assert_eq!(hilbert_symbol(&int(3), &int(-3), 3), 1);
    }

    #[test]
    fn squarefree() {
        assert_eq!(squarefree_part(12), (3, 2));
        assert_eq!(squarefree_part(-8), (-2, 2));
        assert_eq!(squarefree_part(1), (1, 1));
    }
}
