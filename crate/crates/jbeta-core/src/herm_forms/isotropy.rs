use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{hilbert_symbol, is_padic_square, rational_sqrt, Rat};

/// Whether the diagonal form `Σ q_i x_i^2` is isotropic over `Q_p`.
pub fn padic_isotropic(q: &[Rat], p: u64) -> bool {
    let m = q.len();
    if m >= 5 {
        return true;
    }
    if m <= 1 {
        return false;
    }
    let disc = q.iter().fold(Rat::one(), |a, b| a * b);
    let mut hasse = 1;
    for i in 0..m {
        for j in i + 1..m {
            hasse *= hilbert_symbol(&q[i], &q[j], p);
        }
    }
    let neg = -Rat::one();
    match m {
        2 => is_padic_square(&-disc, p),
        3 => hilbert_symbol(&neg, &-disc, p) == hasse,
        _ => !is_padic_square(&disc, p) || hasse == hilbert_symbol(&neg, &neg, p),
    }
}

const BUDGET: u64 = 3_000_000;

/// A nonzero rational solution of `Σ q_i x_i^2 = 0`, searched exactly in
/// rank 2 and over a bounded integer box otherwise.
pub fn find_rational_isotropic(q: &[Rat]) -> Option<Vec<Rat>> {
    let m = q.len();
    match m {
        0 | 1 => None,
        2 => {
            let s = rational_sqrt(&(-&q[1] / &q[0]))?;
            Some(vec![s, Rat::one()])
        }
        _ => {
            let den = q.iter().fold(num_bigint::BigInt::one(), |a, x| a.lcm(x.denom()));
            let coef: Vec<i128> = q
                .iter()
                .map(|x| (x.numer() * (&den / x.denom())).to_i128().expect("small coefficients"))
                .collect();
            let mut b: i64 = 1;
            while ((2 * b + 3) as u64).pow(m as u32) <= BUDGET || b == 1 {
                if let Some(x) = shell(&coef, b) {
                    return Some(x.into_iter().map(|v| Rat::from_integer(v.into())).collect());
                }
                b += 1;
            }
            None
        }
    }
}

/// Searches vectors with `max |x_i| = b` and first nonzero entry positive.
fn shell(coef: &[i128], b: i64) -> Option<Vec<i64>> {
    let m = coef.len();
    let mut x = vec![-b; m];
    loop {
        let top = x.iter().map(|v| v.abs()).max().unwrap_or(0);
        let lead_pos = x.iter().find(|v| **v != 0).is_some_and(|v| *v > 0);
        if top == b && lead_pos {
            let s: i128 = x.iter().zip(coef).map(|(&v, c)| c * (v as i128) * (v as i128)).sum();
            if s.is_zero() {
                return Some(x);
            }
        }
        let mut i = m;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if x[i] < b {
                x[i] += 1;
                for v in x.iter_mut().skip(i + 1) {
                    *v = -b;
                }
                break;
            }
        }
    }
}
