//! Grid searches for the points whose filtrations are compatible with those
//! of a point of the centralizer building.
//!
//! They check uniqueness at resolution `1/N` only: every candidate has
//! coordinates in `(1/N)Z ∩ [-R, R]`.

use jbeta_core::arith::{sorted_unique, Rat};
use jbeta_core::centralizer_embed::{
    centralizer_subspace, h_profile, h_tilde_function, j_beta, j_tilde, lie_centralizer_subspace, BetaDecomposition,
    BlockKind, CentralBuildingPoint,
};
use jbeta_core::endo_filt::{end_function, gl_filtration, lie_filtration, unflatten, FiltrationProfile, FiltrationSpace};
use jbeta_core::herm_forms::{witt_decompose, HermForm};
use jbeta_core::latt_fun::{apartment_point_to_function, ApartmentPoint, LatticeFunction};
use jbeta_core::linalg::{unit_vec, Mat};
use num_traits::Zero;

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug)]
pub struct Candidate {
    pub coords: Vec<Rat>,
    pub function: LatticeFunction,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    /// Passing grid points in lexicographic order of coordinates.
    pub candidates: Vec<Candidate>,
    /// `j_β(x)`.
    pub target: LatticeFunction,
    pub target_on_grid: bool,
    pub examined: usize,
    pub warnings: Vec<String>,
}

impl SearchOutcome {
    /// Exactly one candidate, and it is the target.
    pub fn unique_target(&self, same: impl Fn(&LatticeFunction, &LatticeFunction) -> bool) -> bool {
        self.candidates.len() == 1 && same(&self.candidates[0].function, &self.target)
    }
}

/// `(1/N)Z ∩ [-R, R]`, increasing.
pub fn grid_values(n: u32, radius: &Rat) -> Vec<Rat> {
    let n = i64::from(n);
    let k = (radius * Rat::from_integer(n.into())).floor().to_integer();
    let k: i64 = num_traits::ToPrimitive::to_i64(&k).unwrap_or(0).max(0);
    (-k..=k).map(|m| Rat::new(m.into(), n.into())).collect()
}

fn cartesian(values: &[Rat], k: usize) -> Vec<Vec<Rat>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out.into_iter().flat_map(|c| values.iter().map(move |v| [c.clone(), vec![v.clone()]].concat())).collect();
    }
    out
}

fn classical_form(decomp: &BetaDecomposition) -> CliResult<&HermForm> {
    decomp.form.as_ref().ok_or_else(|| CliError::NotApplicable("the classical search needs a hermitian form".into()))
}

/// The self-dual points of the standard apartment with coordinates on the grid.
pub fn apartment_grid(decomp: &BetaDecomposition, n: u32, radius: &Rat) -> CliResult<Vec<Candidate>> {
    let form = classical_form(decomp)?;
    let witt = witt_decompose(form)?;
    cartesian(&grid_values(n, radius), witt.index())
        .into_iter()
        .map(|coords| {
            let function = apartment_point_to_function(&ApartmentPoint { coords: coords.clone() }, &witt, form)?;
            Ok(Candidate { coords, function })
        })
        .collect()
}

fn classical_search(
    decomp: &BetaDecomposition,
    x: &CentralBuildingPoint,
    n: u32,
    radius: &Rat,
    test: impl Fn(&LatticeFunction) -> CliResult<bool>,
) -> CliResult<SearchOutcome> {
    let target = j_beta(decomp, x)?;
    let grid = apartment_grid(decomp, n, radius)?;
    let target_on_grid = grid.iter().any(|c| c.function.same(&target));
    let mut out = SearchOutcome { candidates: Vec::new(), target, target_on_grid, examined: grid.len(), warnings: Vec::new() };
    for c in grid {
        if test(&c.function)? {
            out.candidates.push(c);
        }
    }
    if !out.target_on_grid {
        out.warnings.push(format!("GridTooCoarse: j_β(x) is not on the grid of step 1/{n} and radius {radius}"));
    }
    Ok(out)
}

/// Self-dual grid points `y` of the standard apartment with
/// `g_{y,r} ∩ h = h_{x,r}` for every `r`.
pub fn search_unique_compatible(decomp: &BetaDecomposition, x: &CentralBuildingPoint, n: u32, radius: &Rat) -> CliResult<SearchOutcome> {
    if decomp.has_pairs() {
        return Err(CliError::NotApplicable("the filtration test determines j_β only when no block is paired; see search_shift_family".into()));
    }
    compatible_points(decomp, x, n, radius)
}

fn compatible_points(decomp: &BetaDecomposition, x: &CentralBuildingPoint, n: u32, radius: &Rat) -> CliResult<SearchOutcome> {
    let real = decomp.realified()?;
    let h = lie_centralizer_subspace(decomp)?;
    let want = h_profile(decomp, x)?;
    classical_search(decomp, x, n, radius, |y| Ok(lie_filtration(y, real).intersect(FiltrationSpace::H, &h) == want))
}

/// With paired blocks the maps `j_β` form a family indexed by the shifts.
/// Returns the compatible grid points together with whether they are
/// exactly the grid points `j_β(x)` reaches as the shifts range over
/// `(1/N)Z ∩ [-2R - 2, 2R + 2]`.
pub fn search_shift_family(decomp: &BetaDecomposition, x: &CentralBuildingPoint, n: u32, radius: &Rat) -> CliResult<(SearchOutcome, bool)> {
    let out = compatible_points(decomp, x, n, radius)?;
    let paired: Vec<usize> = (0..x.parts.len()).filter(|&k| decomp.blocks[x.parts[k].block].kind == BlockKind::Plus).collect();
    let wide = Rat::from_integer(2.into()) * radius + Rat::from_integer(2.into());
    let grid: Vec<LatticeFunction> = apartment_grid(decomp, n, radius)?.into_iter().map(|c| c.function).collect();
    let mut reached = vec![false; grid.len()];
    for shifts in cartesian(&grid_values(n, &wide), paired.len()) {
        let mut y = x.clone();
        for (k, s) in paired.iter().zip(shifts) {
            y.parts[*k].shift = &x.parts[*k].shift + s;
        }
        let j = j_beta(decomp, &y)?;
        for (g, r) in grid.iter().zip(reached.iter_mut()) {
            *r |= g.same(&j);
        }
    }
    let family: Vec<&LatticeFunction> = grid.iter().zip(&reached).filter(|(_, r)| **r).map(|(g, _)| g).collect();
    let exact = !family.is_empty()
        && family.len() == out.candidates.len()
        && family.iter().zip(&out.candidates).all(|(f, c)| f.same(&c.function));
    Ok((out, exact))
}

/// Cayley transforms `(1 + tX)(1 - tX)^{-1}` of a basis of `h`, `t ∈ {1, 3}`.
pub fn centralizer_elements(decomp: &BetaDecomposition) -> CliResult<Vec<Mat>> {
    let n = decomp.dim();
    let one = Mat::identity(n);
    let mut out = Vec::new();
    for v in lie_centralizer_subspace(decomp)? {
        for t in [1, 3] {
            let a = unflatten(n, &v).scale(&Rat::from_integer(t.into()));
            if let Some(inv) = one.sub(&a).inverse() {
                out.push(one.add(&a).mul(&inv));
            }
        }
    }
    Ok(out)
}

/// The negative control: self-dual grid points fixed by sampled elements of
/// the centralizer, with no filtration condition.
pub fn search_negative_control(decomp: &BetaDecomposition, x: &CentralBuildingPoint, n: u32, radius: &Rat) -> CliResult<SearchOutcome> {
    let gs = centralizer_elements(decomp)?;
    classical_search(decomp, x, n, radius, |y| Ok(gs.iter().all(|g| y.transform(g).same(y))))
}

/// `g̃_{y,r} ∩ h̃ ⊃ h̃_{x,r}` at every jump of either side.
pub fn contains_profile(big: &FiltrationProfile, small: &FiltrationProfile) -> bool {
    let rs = sorted_unique([big.jump_points(), small.jump_points()].concat());
    rs.iter().all(|r| small.at(r).is_subset(&big.at(r)))
}

/// Translation classes of the standard apartment of `GL_n` with
/// `g̃_{y,r} ∩ h̃ ⊃ h̃_{x,r}`, each represented by offsets `(0, a_2, ..)`.
pub fn search_unique_gl(decomp: &BetaDecomposition, x: &CentralBuildingPoint, n: u32, radius: &Rat) -> CliResult<SearchOutcome> {
    if decomp.form.is_some() {
        return Err(CliError::NotApplicable("the containment search is for GL scenarios".into()));
    }
    let dim = decomp.dim();
    let f = decomp.f_layer();
    if f.deg() != 1 {
        return Err(CliError::NotApplicable("the containment search is implemented over Q".into()));
    }
    let parts: Vec<LatticeFunction> = x.parts.iter().map(|p| p.function.clone()).collect();
    let target = j_tilde(decomp, &parts);
    let want = FiltrationProfile::from_square(FiltrationSpace::HTilde, &h_tilde_function(decomp, x)?, None);
    let h = centralizer_subspace(decomp);
    let target_end = end_function(&target, &[]).canonical();
    let basis: Vec<_> = (0..dim).map(|k| unit_vec(dim, k)).collect();
    let mut out = SearchOutcome { candidates: Vec::new(), target, target_on_grid: false, examined: 0, warnings: Vec::new() };
    for rest in cartesian(&grid_values(n, radius), dim - 1) {
        let coords = [vec![Rat::zero()], rest].concat();
        let y = LatticeFunction::new(basis.clone(), coords.clone(), f.clone());
        out.examined += 1;
        out.target_on_grid |= end_function(&y, &[]).canonical() == target_end;
        if contains_profile(&gl_filtration(&y).intersect(FiltrationSpace::HTilde, &h), &want) {
            out.candidates.push(Candidate { coords, function: y });
        }
    }
    if !out.target_on_grid {
        out.warnings.push(format!("GridTooCoarse: the class of j̃_β(x) is not on the grid of step 1/{n} and radius {radius}"));
    }
    Ok(out)
}

/// Whether two `o_F`-functions define the same translation class.
pub fn same_class(a: &LatticeFunction, b: &LatticeFunction) -> bool {
    end_function(a, &[]).canonical() == end_function(b, &[]).canonical()
}

/// `y` lies in the closure of the facet of `x` exactly when the order
/// `End(x)(0)` stabilizes every lattice of `y`.
pub fn in_closed_facet(x: &LatticeFunction, y: &LatticeFunction) -> bool {
    let z = Rat::zero();
    end_function(x, &[]).at(&z).is_subset(&end_function(y, &[]).at(&z))
}
