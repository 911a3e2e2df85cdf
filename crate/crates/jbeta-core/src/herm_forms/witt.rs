use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{find_rational_isotropic, padic_isotropic, FormCase, HermForm};
use crate::arith::int;
use crate::error::{Error, Result};
use crate::field_tower::{one_half, Elem, Realification};
use crate::linalg::{Mat, QVec};

type Vector = Vec<Elem>;

/// A Witt basis `e_1..e_r, e_{-1}..e_{-r}` with `h(e_i, e_{-j}) = δ_ij`,
/// plus an orthogonal basis of the anisotropic kernel, all in the
/// coordinates of the form's basis.
#[derive(Clone, Debug)]
pub struct WittDecomposition {
    pub plus: Vec<Vector>,
    pub minus: Vec<Vector>,
    pub aniso: Vec<Vector>,
    /// `h(w, w)` for the anisotropic basis.
    pub aniso_values: Vec<Elem>,
}

impl WittDecomposition {
    pub fn index(&self) -> usize {
        self.plus.len()
    }

    /// The ordered basis `e_1..e_r, e_{-1}..e_{-r}, w_1..`.
    pub fn basis(&self) -> Vec<Vector> {
        self.plus.iter().chain(&self.minus).chain(&self.aniso).cloned().collect()
    }

    /// The same basis carried to the ambient space.
    pub fn ambient_basis(&self, form: &HermForm) -> Vec<QVec> {
        self.basis().iter().map(|v| form.to_ambient(v)).collect()
    }
}

const MAX_DIM: usize = 8;

pub fn witt_decompose(form: &HermForm) -> Result<WittDecomposition> {
    let m = form.dim();
    if m > MAX_DIM {
        return Err(Error::DimensionTooLarge(m));
    }
    let d = form.layer.d;
    let mut span: Vec<Vector> = (0..m).map(|i| (0..m).map(|k| Elem::from_int((i == k) as i64).with_layer(d)).collect()).collect();
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    let eps = Elem::from_int(form.eps as i64);
    while let Some(x) = isotropic_in(form, &span)? {
        let y = span
            .iter()
            .find(|y| !form.eval(&x, y).is_zero())
            .cloned()
            .ok_or(Error::DegenerateRestriction)?;
        let y = scale(&y, &form.eval(&x, &y).inv());
        let c = (&eps * &form.eval(&y, &y)).scale(&one_half());
        let y = sub(&y, &scale(&x, &c));
        debug_assert!(form.eval(&x, &y) == Elem::one() && form.eval(&y, &y).is_zero());
        let projected = span
            .iter()
            .map(|z| {
                let b = form.eval(&x, z);
                let a = &eps * &form.eval(&y, z);
                sub(&sub(z, &scale(&x, &a)), &scale(&y, &b))
            })
            .collect();
        span = independent(form, projected);
        plus.push(x);
        minus.push(y);
    }
    let aniso = orthogonal_basis(form, span)?;
    if aniso.len() > 2 {
        return Err(Error::AnisotropicTooLarge(aniso.len()));
    }
    let aniso_values = aniso.iter().map(|w| form.eval(w, w)).collect();
    Ok(WittDecomposition { plus, minus, aniso, aniso_values })
}

fn scale(v: &[Elem], c: &Elem) -> Vector {
    v.iter().map(|x| c * x).collect()
}

fn sub(v: &[Elem], w: &[Elem]) -> Vector {
    v.iter().zip(w).map(|(a, b)| a - b).collect()
}

fn add(v: &[Elem], w: &[Elem]) -> Vector {
    v.iter().zip(w).map(|(a, b)| a + b).collect()
}

/// A maximal `L`-independent subfamily.
fn independent(form: &HermForm, vs: Vec<Vector>) -> Vec<Vector> {
    let r = Realification::new(form.layer, form.dim());
    let w = form.layer.generator();
    let mut q: Vec<QVec> = Vec::new();
    let mut out = Vec::new();
    for v in vs {
        let mut cand = q.clone();
        cand.push(r.realify(&v));
        if form.sigma_nontrivial() {
            cand.push(r.realify(&scale(&v, &w)));
        }
        if Mat::from_cols(r.dim(), &cand).rank() == cand.len() {
            q = cand;
            out.push(v);
        }
    }
    out
}

fn anisotropic_vector(form: &HermForm, span: &[Vector]) -> Option<Vector> {
    if let Some(v) = span.iter().find(|v| !form.eval(v, v).is_zero()) {
        return Some(v.clone());
    }
    let w = form.layer.generator();
    for i in 0..span.len() {
        for j in i + 1..span.len() {
            for c in [Elem::one(), w.clone()] {
                let v = add(&span[i], &scale(&span[j], &c));
                if !form.eval(&v, &v).is_zero() {
                    return Some(v);
                }
            }
        }
    }
    None
}

fn orthogonal_basis(form: &HermForm, mut span: Vec<Vector>) -> Result<Vec<Vector>> {
    let mut out = Vec::new();
    while !span.is_empty() {
        let w = anisotropic_vector(form, &span).ok_or(Error::DegenerateRestriction)?;
        let a = form.eval(&w, &w).inv();
        let projected = span.iter().map(|z| sub(z, &scale(&w, &(&form.eval(&w, z) * &a)))).collect();
        span = independent(form, projected);
        out.push(w);
    }
    Ok(out)
}

/// A nonzero isotropic vector in the span, or `None` when the restricted
/// form is anisotropic over the completion.
fn isotropic_in(form: &HermForm, span: &[Vector]) -> Result<Option<Vector>> {
    if span.is_empty() {
        return Ok(None);
    }
    if form.case == FormCase::Symplectic {
        return Ok(Some(span[0].clone()));
    }
    let ws = orthogonal_basis(form, span.to_vec())?;
    let d = form.layer.d;
    let twist = if form.sigma_nontrivial() && form.eps == -1 { Elem::sqrt_d(d) } else { Elem::one() };
    let mut q = Vec::new();
    for w in &ws {
        let a = &form.eval(w, w) * &twist;
        debug_assert!(a.is_rational());
        q.push(a.a.clone());
        if form.sigma_nontrivial() {
            q.push(-(a.a * int(d)));
        }
    }
    if !padic_isotropic(&q, form.layer.p) {
        return Ok(None);
    }
    let x = find_rational_isotropic(&q).ok_or_else(|| {
        Error::IsotropySearchFailed(format!("diagonal form {:?}", q.iter().map(crate::arith::fmt_rat).collect::<Vec<_>>()))
    })?;
    let mut v = vec![Elem::zero().with_layer(d); form.dim()];
    for (i, w) in ws.iter().enumerate() {
        let c = if form.sigma_nontrivial() {
            Elem::new(x[2 * i].clone(), x[2 * i + 1].clone(), d)
        } else {
            Elem::rational(x[i].clone())
        };
        v = add(&v, &scale(w, &c));
    }
    debug_assert!(form.eval(&v, &v).is_zero());
    Ok(Some(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_tower::{EMat, FieldTower};

    fn form(t: &FieldTower, eps: i32, rows: &[&[Elem]]) -> HermForm {
        let g = EMat::from_rows(rows.iter().map(|r| r.to_vec()).collect(), t.f.d);
        HermForm::ambient(t, eps, g).unwrap()
    }

    fn z(n: i64) -> Elem {
        Elem::from_int(n)
    }

    fn check(h: &HermForm, w: &WittDecomposition) {
        let r = w.index();
        for i in 0..r {
            for j in 0..r {
                assert!(h.eval(&w.plus[i], &w.plus[j]).is_zero());
                assert!(h.eval(&w.minus[i], &w.minus[j]).is_zero());
                assert_eq!(h.eval(&w.plus[i], &w.minus[j]), z((i == j) as i64));
            }
        }
        for a in &w.aniso {
            for b in w.plus.iter().chain(&w.minus) {
                assert!(h.eval(a, b).is_zero());
            }
        }
        assert_eq!(2 * r + w.aniso.len(), h.dim());
    }

    #[test]
    fn symplectic_and_orthogonal() {
        let q = FieldTower::rational(3).unwrap();
        let h = form(&q, -1, &[&[z(0), z(1), z(0), z(0)], &[z(-1), z(0), z(0), z(0)], &[z(0), z(0), z(0), z(1)], &[z(0), z(0), z(-1), z(0)]]);
        let w = witt_decompose(&h).unwrap();
        check(&h, &w);
        assert_eq!(w.index(), 2);

        let h = form(&q, 1, &[&[z(1), z(0)], &[z(0), z(-3)]]);
        let w = witt_decompose(&h).unwrap();
        check(&h, &w);
        assert_eq!(w.index(), 0);

        let h = form(&q, 1, &[&[z(1), z(0), z(0)], &[z(0), z(1), z(0)], &[z(0), z(0), z(-2)]]);
        let w = witt_decompose(&h).unwrap();
        check(&h, &w);
        assert_eq!(w.index(), 1);
    }

    #[test]
    fn unitary_and_skew() {
        let t = FieldTower::quadratic(3, 2).unwrap();
        let h = form(&t, 1, &[&[z(0), z(1)], &[z(1), z(0)]]);
        let w = witt_decompose(&h).unwrap();
        check(&h, &w);
        assert_eq!(w.index(), 1);

        let t = FieldTower::quadratic(3, 3).unwrap();
        let s = Elem::sqrt_d(3);
        let h = form(&t, -1, &[&[s.clone(), z(0)], &[z(0), -&s]]);
        let w = witt_decompose(&h).unwrap();
        check(&h, &w);
        assert_eq!(w.index(), 1);

        let h = form(&t, -1, &[&[s.clone()]]);
        let w = witt_decompose(&h).unwrap();
        assert_eq!((w.index(), w.aniso.len()), (0, 1));
    }

    #[test]
    fn capability_errors() {
        let q = FieldTower::rational(3).unwrap();
        let h = form(&q, 1, &[&[z(1), z(0)], &[z(0), z(-7)]]);
        assert!(matches!(witt_decompose(&h), Err(Error::IsotropySearchFailed(_))));
        let rows: Vec<Vec<Elem>> = (0..9).map(|i| (0..9).map(|j| z((i == j) as i64)).collect()).collect();
        let h = HermForm::ambient(&q, 1, EMat::from_rows(rows, 0)).unwrap();
        assert_eq!(witt_decompose(&h).err(), Some(Error::DimensionTooLarge(9)));
    }
}
