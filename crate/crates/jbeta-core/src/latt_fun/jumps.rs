use alloc::vec::Vec;

use num_traits::One;

use super::DvrLattice;
use crate::arith::{floor, frac, int, Rat};

/// A left-continuous decreasing step function `r ↦ L(r)` with
/// `L(r + 1) = p L(r)`, stored through its jumps in `[0, 1)`.
///
/// Only genuine jumps are kept, so two functions are equal exactly when
/// their stored data coincide.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JumpFunction {
    pub p: u64,
    pub dim: usize,
    pub jumps: Vec<(Rat, DvrLattice)>,
}

impl JumpFunction {
    /// Builds the canonical form from the values at a set of points of
    /// `[0, 1)` containing every jump.
    pub fn from_candidates(p: u64, dim: usize, mut cands: Vec<(Rat, DvrLattice)>) -> JumpFunction {
        cands.sort_by(|a, b| a.0.cmp(&b.0));
        cands.dedup_by(|a, b| a.0 == b.0);
        let n = cands.len();
        let mut jumps = Vec::new();
        for i in 0..n {
            let next = if i + 1 < n { cands[i + 1].1.clone() } else { cands[0].1.scale_p(1) };
            if cands[i].1 != next {
                jumps.push(cands[i].clone());
            }
        }
        JumpFunction { p, dim, jumps }
    }

    pub fn jump_points(&self) -> Vec<Rat> {
        self.jumps.iter().map(|j| j.0.clone()).collect()
    }

    /// `L(r)`.
    pub fn at(&self, r: &Rat) -> DvrLattice {
        if self.jumps.is_empty() {
            return DvrLattice::zero(self.p, self.dim);
        }
        let n = floor(r);
        let f = frac(r);
        match self.jumps.iter().find(|(rj, _)| *rj >= f) {
            Some((_, l)) => l.scale_p(n),
            None => self.jumps[0].1.scale_p(n + 1),
        }
    }

    /// `L(r+)`, the value just to the right of `r`.
    pub fn right_limit(&self, r: &Rat) -> DvrLattice {
        if self.jumps.is_empty() {
            return DvrLattice::zero(self.p, self.dim);
        }
        let n = floor(r);
        let f = frac(r);
        match self.jumps.iter().find(|(rj, _)| *rj > f) {
            Some((_, l)) => l.scale_p(n),
            None => self.jumps[0].1.scale_p(n + 1),
        }
    }

    /// `sup { r : x ∈ L(r) }`; `None` for `x = 0` or `x` outside the span.
    pub fn norm(&self, x: &[Rat]) -> Option<Rat> {
        self.jumps
            .iter()
            .filter_map(|(r, l)| l.depth(x).map(|m| r + int(m)))
            .max()
    }

    /// `r ↦ L(r + s)`.
    pub fn shift(&self, s: &Rat) -> JumpFunction {
        let cands = self
            .jumps
            .iter()
            .map(|(r, l)| {
                let t = r - s;
                let n = floor(&t);
                (frac(&t), l.scale_p(-n))
            })
            .collect();
        JumpFunction::from_candidates(self.p, self.dim, cands)
    }

    /// Values at every jump together with the next one, used by tests that
    /// sweep one period.
    pub fn sample_points(&self) -> Vec<Rat> {
        let mut pts = self.jump_points();
        if let Some(first) = pts.first().cloned() {
            pts.push(first + Rat::one());
        }
        pts
    }

    pub fn is_decreasing(&self) -> bool {
        let n = self.jumps.len();
        (0..n).all(|i| {
            let next = if i + 1 < n { self.jumps[i + 1].1.clone() } else { self.jumps[0].1.scale_p(1) };
            next.is_subset(&self.jumps[i].1)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.jumps.is_empty()
    }
}
