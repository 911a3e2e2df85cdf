use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::field_tower::{EMat, Elem, QuadLayer};
use crate::linalg::{Mat, QVec};
use crate::poly::Poly;

fn realify_flat(m: &EMat, deg: usize) -> QVec {
    let mut v = Vec::with_capacity(deg * m.rows * m.cols);
    for i in 0..m.rows {
        for j in 0..m.cols {
            v.push(m[(i, j)].a.clone());
            if deg == 2 {
                v.push(m[(i, j)].c.clone());
            }
        }
    }
    v
}

/// Minimal polynomial over `F`, from the first linear dependency among the
/// powers of `β`.
pub fn minimal_polynomial(beta: &EMat, f: &QuadLayer) -> Poly {
    let n = beta.rows;
    let d = f.d;
    let deg = f.degree();
    let w = f.generator();
    let mut powers = vec![EMat::identity(n, d)];
    loop {
        let k = powers.len();
        let next = powers[k - 1].mul(beta);
        let mut cols = Vec::new();
        for p in &powers {
            cols.push(realify_flat(p, deg));
            if deg == 2 {
                cols.push(realify_flat(&p.scale(&w), deg));
            }
        }
        let a = Mat::from_cols(deg * n * n, &cols);
        if let Some(sol) = a.solve(&realify_flat(&next, deg)) {
            let mut coeffs: Vec<Elem> = (0..k)
                .map(|j| {
                    let c = if deg == 2 {
                        Elem::new(sol[2 * j].clone(), sol[2 * j + 1].clone(), d)
                    } else {
                        Elem::rational(sol[j].clone())
                    };
                    -c
                })
                .collect();
            coeffs.push(Elem::one());
            return Poly::new(coeffs, d);
        }
        powers.push(next);
    }
}

/// Monic irreducible factors over `F`, each of degree at most two.
pub fn factor_min_poly(f: &Poly, layer: &QuadLayer) -> Result<Vec<Poly>> {
    if layer.is_base() {
        factor_rational(f)
    } else {
        factor_over_quadratic(f, layer)
    }
}

fn int_coeffs(f: &Poly) -> (Vec<BigInt>, BigInt) {
    let f = f.monic();
    let l = f.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.a.denom()));
    let n = f.coeffs.len() - 1;
    let mut g = Vec::with_capacity(n + 1);
    let mut scale = BigInt::one();
    for j in (0..=n).rev() {
        let c = &f.coeffs[j].a * Rat::from_integer(scale.clone());
        g.push(c.to_integer());
        scale *= &l;
    }
    g.reverse();
    (g, l)
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let m = n.abs().to_u64().filter(|m| *m <= 1_000_000_000_000).ok_or_else(|| {
        Error::UnsupportedFactorDegree(format!("constant term {n} too large to factor"))
    })?;
    let mut out = Vec::new();
    let r = m.sqrt();
    for a in 1..=r {
        if m % a == 0 {
            out.push(a);
            if a != m / a {
                out.push(m / a);
            }
        }
    }
    out.sort_unstable();
    Ok(out.into_iter().flat_map(|a| [BigInt::from(a), -BigInt::from(a)]).collect())
}

fn eval_int(g: &[BigInt], x: &BigInt) -> BigInt {
    g.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn factor_rational(f: &Poly) -> Result<Vec<Poly>> {
    let mut rest = f.monic();
    let mut out = Vec::new();
    loop {
        if rest.degree() == Some(0) {
            break;
        }
        if rest.coeffs[0].is_zero() {
            let lin = Poly::linear(&Elem::zero(), 0);
            rest = rest.div_rem(&lin).0;
            out.push(lin);
            continue;
        }
        let (g, l) = int_coeffs(&rest);
        let root = divisors(&g[0])?.into_iter().find(|y| eval_int(&g, y).is_zero());
        match root {
            Some(y) => {
                let lin = Poly::linear(&Elem::rational(Rat::new(y, l)), 0);
                rest = rest.div_rem(&lin).0;
                out.push(lin);
            }
            None => break,
        }
    }
    match rest.degree() {
        Some(0) => {}
        Some(2) => out.push(rest),
        Some(4) => {
            let (a, b) = split_quartic(&rest)?;
            out.push(a);
            out.push(b);
        }
        Some(k) => return Err(Error::UnsupportedFactorDegree(format!("irreducible factor of degree {k} over Q"))),
        None => unreachable!("minimal polynomials are nonzero"),
    }
    out.sort_by_key(|p| p.degree());
    Ok(out)
}

/// `x^4 + ...` without rational roots as a product of two quadratics.
fn split_quartic(f: &Poly) -> Result<(Poly, Poly)> {
    let (g, l) = int_coeffs(f);
    let lr = Rat::from_integer(l);
    for b in divisors(&g[0])? {
        let d = &g[0] / &b;
        let s = &g[3];
        let prod = &g[2] - &b - &d;
        let disc = s * s - BigInt::from(4) * &prod;
        if disc.is_negative() {
            continue;
        }
        let r = disc.sqrt();
        if &r * &r != disc {
            continue;
        }
        for sign in [1, -1] {
            let a2 = s + &r * BigInt::from(sign);
            if a2.is_odd() {
                continue;
            }
            let a = &a2 / 2;
            let c = s - &a;
            if &a * &d + &b * &c == g[1] {
                let q = |lin: &BigInt, cst: &BigInt| {
                    let lin = Rat::from_integer(lin.clone()) / &lr;
                    let cst = Rat::from_integer(cst.clone()) / (&lr * &lr);
                    Poly::new(vec![Elem::rational(cst), Elem::rational(lin), Elem::one()], 0)
                };
                return Ok((q(&a, &b), q(&c, &d)));
            }
        }
    }
    Err(Error::UnsupportedFactorDegree("irreducible factor of degree 4 over Q".into()))
}

fn factor_over_quadratic(f: &Poly, layer: &QuadLayer) -> Result<Vec<Poly>> {
    let f = f.monic();
    match f.degree() {
        Some(1) => Ok(vec![f]),
        Some(2) => {
            let b = &f.coeffs[1];
            let c = &f.coeffs[0];
            let disc = &(b * b) - &(&Elem::from_int(4) * c);
            let s = layer.sqrt(&disc).ok_or_else(|| {
                Error::UnsupportedTower("a quadratic extension of a quadratic field would be needed".into())
            })?;
            let half = Elem::rational(Rat::one() / Rat::from_integer(2.into()));
            let r1 = &(&(-b) + &s) * &half;
            let r2 = &(&(-b) - &s) * &half;
            Ok(vec![Poly::linear(&r1, layer.d), Poly::linear(&r2, layer.d)])
        }
        Some(k) => Err(Error::UnsupportedFactorDegree(format!("minimal polynomial of degree {k} over a quadratic field"))),
        None => unreachable!("minimal polynomials are nonzero"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| Elem::from_int(x)).collect(), 0)
    }

    fn q() -> QuadLayer {
        QuadLayer { p: 3, d: 0, e: 1 }
    }

    #[test]
    fn factorizations_multiply_back() {
        for f in [p(&[-3, 0, 1]), p(&[3, 0, -4, 0, 1]), p(&[-6, 0, 1, 0, 1]), p(&[2, -3, 1]), p(&[0, -3, 0, 1])] {
            let fs = factor_min_poly(&f, &q()).unwrap();
            let prod = fs.iter().fold(Poly::one(0), |a, g| a.mul(g));
            assert_eq!(prod, f.monic());
            assert!(fs.iter().all(|g| g.degree().unwrap() <= 2));
        }
        assert!(matches!(factor_min_poly(&p(&[-2, 0, 0, 1]), &q()), Err(Error::UnsupportedFactorDegree(_))));
        assert!(matches!(factor_min_poly(&p(&[-2, 0, 0, 0, 1]), &q()), Err(Error::UnsupportedFactorDegree(_))));
    }

    #[test]
    fn minimal_polynomial_of_examples() {
        let b = EMat::from_rows(vec![vec![Elem::from_int(0), Elem::from_int(1)], vec![Elem::from_int(3), Elem::from_int(0)]], 0);
        assert_eq!(minimal_polynomial(&b, &q()), p(&[-3, 0, 1]));
        let b = EMat::from_rows(vec![vec![Elem::from_int(2), Elem::from_int(0)], vec![Elem::from_int(0), Elem::from_int(2)]], 0);
        assert_eq!(minimal_polynomial(&b, &q()), p(&[-2, 1]));
        let b = EMat::from_rows(vec![vec![Elem::from_int(0), Elem::from_int(1)], vec![Elem::from_int(0), Elem::from_int(0)]], 0);
        assert_eq!(minimal_polynomial(&b, &q()), Poly::new(vec![Elem::zero(), Elem::zero(), Elem::one()], 0));
    }
}
