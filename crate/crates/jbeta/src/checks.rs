//! The property suite run by `check`, one function per named check.

use jbeta_core::arith::{fmt_rat, Rat};
use jbeta_core::centralizer_embed::{
    apartment_image, barycenter_points, block_lattice, centralizer_filtrations_agree, centralizer_subspace, dual_under_h,
    dual_under_hi, h_tilde_function, j_beta, j_tilde, jbeta_form_independence, BlockKind, CentralApartment,
    CentralBuildingPoint,
};
use jbeta_core::endo_filt::{gl_filtration, recover_self_dual, FiltrationProfile, FiltrationSpace};
use jbeta_core::herm_forms::{HermForm, RealifiedForm};
use jbeta_core::latt_fun::{barycenter, common_splitting_basis, dual_norm_value, latt_to_norm, LatticeFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::CliResult;
use crate::format::{FunctionJson, LatticeJson, PointJson};
use crate::report::{Outcome, Verdict};
use crate::sample;
use crate::scenario::Scenario;
use crate::search::{contains_profile, same_class, search_shift_family, search_unique_compatible, search_unique_gl};

pub const CHECKS: [&str; 10] =
    ["duality", "dual-norm", "recover", "block-duals", "form-independence", "barycenter", "apartment", "filtration", "embed", "search"];

/// Sample sizes of the randomized checks.
#[derive(Clone, Copy, Debug)]
pub struct Counts {
    pub functions: usize,
    pub norms: usize,
    pub recoveries: usize,
    pub lattices: usize,
    pub scalings: usize,
    pub pairs: usize,
    pub apartment: usize,
    pub filtrations: usize,
}

impl Default for Counts {
    fn default() -> Self {
        Counts { functions: 200, norms: 100, recoveries: 200, lattices: 50, scalings: 20, pairs: 50, apartment: 20, filtrations: 10 }
    }
}

fn fwit(f: &LatticeFunction) -> Value {
    serde_json::to_value(FunctionJson::of(f)).expect("serializable")
}

fn pwit(sc: &Scenario, x: &CentralBuildingPoint) -> Value {
    serde_json::to_value(PointJson::of(&sc.decomp, x)).expect("serializable")
}

fn needs_form(sc: &Scenario) -> Option<(&HermForm, &RealifiedForm)> {
    Some((sc.form.as_ref()?, sc.decomp.realified().ok()?))
}

fn skip(why: &str) -> CliResult<Outcome> {
    Ok(Outcome::skip(why))
}

/// Runs one check; the seed is mixed with the check's name so checks are
/// independent of the order they run in.
pub fn run_check(name: &str, sc: &Scenario, seed: u64, counts: &Counts) -> CliResult<Outcome> {
    let salt = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3));
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt);
    let rng = &mut rng;
    match name {
        "duality" => duality(sc, rng, counts.functions),
        "dual-norm" => dual_norm(sc, rng, counts.norms),
        "recover" => recover(sc, rng, counts.recoveries),
        "block-duals" => block_duals(sc, rng, counts.lattices),
        "form-independence" => form_independence(sc, rng, counts.scalings),
        "barycenter" => barycenters(sc, rng, counts.pairs),
        "apartment" => apartment(sc, rng, counts.apartment),
        "filtration" => filtration(sc, rng, counts.filtrations),
        "embed" => embed(sc),
        "search" => search(sc),
        other => Err(crate::error::CliError::Parse(format!("unknown check {other:?}"))),
    }
}

fn duality(sc: &Scenario, rng: &mut ChaCha8Rng, count: usize) -> CliResult<Outcome> {
    let Some((form, real)) = needs_form(sc) else { return skip("no hermitian form") };
    for _ in 0..count {
        let f = sample::function(rng, form);
        if !f.dual(&real.gram, None)?.dual(&real.gram, None)?.same(&f) {
            return Ok(Outcome::fail(json!({ "function": fwit(&f) })));
        }
    }
    Ok(Outcome::pass())
}

fn dual_norm(sc: &Scenario, rng: &mut ChaCha8Rng, count: usize) -> CliResult<Outcome> {
    let Some((form, real)) = needs_form(sc) else { return skip("no hermitian form") };
    for k in 0..count {
        let f = if k % 2 == 0 { sample::function(rng, form) } else { sample::self_dual(rng, form)? };
        let a = latt_to_norm(&f);
        let dual = f.dual(&real.gram, None)?;
        let b = latt_to_norm(&dual);
        let mut xs = [dual.basis.clone(), f.basis.clone()].concat();
        xs.extend((0..3).map(|_| sample::vector(rng, form)));
        if let Some(x) = xs.iter().find(|x| dual_norm_value(&a, real, x) != b.value(x)) {
            return Ok(Outcome::fail(json!({ "function": fwit(&f), "vector": crate::format::rat_strs(x) })));
        }
        let split = common_splitting_basis(&f, &dual)?;
        let fixed = split.basis.iter().all(|v| dual_norm_value(&a, real, v) == a.value(v));
        if fixed != f.is_self_dual(&real.gram)? {
            return Ok(Outcome::fail(json!({ "function": fwit(&f), "fixed": fixed })));
        }
    }
    Ok(Outcome::pass())
}

fn recover(sc: &Scenario, rng: &mut ChaCha8Rng, count: usize) -> CliResult<Outcome> {
    let Some((form, real)) = needs_form(sc) else { return skip("no hermitian form") };
    let p = sc.decomp.p() as i64;
    let unit = Rat::from_integer(2.into());
    let pr = Rat::from_integer(p.into());
    let half = Rat::new((-1).into(), 2.into());
    for _ in 0..count {
        let f = sample::self_dual(rng, form)?;
        let moved = f.shift(&sample::rat(rng, 12, 1));
        let ok = recover_self_dual(&moved, real, &[])?.same(&f)
            && recover_self_dual(&f, &real.scaled(&pr), &[])?.same(&f.shift(&half))
            && recover_self_dual(&f, &real.scaled(&unit), &[])?.same(&f);
        if !ok {
            return Ok(Outcome::fail(json!({ "function": fwit(&f) })));
        }
    }
    Ok(Outcome::pass())
}

fn block_duals(sc: &Scenario, rng: &mut ChaCha8Rng, count: usize) -> CliResult<Outcome> {
    let d = &sc.decomp;
    let fixed: Vec<usize> = (0..d.blocks.len()).filter(|&k| d.blocks[k].kind == BlockKind::Fixed && d.blocks[k].form.is_some()).collect();
    if fixed.is_empty() {
        return skip("no σ-stable block");
    }
    for &k in &fixed {
        let b = &d.blocks[k];
        for _ in 0..count {
            let gens = sample::block_gens(rng, b.e_dim(), b.layer.field.d);
            let l = block_lattice(d, k, &gens)?;
            let (a, c) = (dual_under_h(d, k, &l)?, dual_under_hi(d, k, &gens)?);
            if a != c {
                return Ok(Outcome::fail(json!({ "block": b.label, "lattice": LatticeJson::of(&l), "h": LatticeJson::of(&a), "h_i": LatticeJson::of(&c) })));
            }
        }
    }
    Ok(Outcome::pass())
}

fn points(sc: &Scenario, rng: &mut ChaCha8Rng, count: usize) -> CliResult<Vec<CentralBuildingPoint>> {
    let apt = CentralApartment::new(&sc.decomp)?;
    let mut out = vec![sc.point.clone()];
    while out.len() < count {
        out.push(sample::point(rng, &sc.decomp, &apt)?);
    }
    Ok(out)
}

fn form_independence(sc: &Scenario, rng: &mut ChaCha8Rng, count: usize) -> CliResult<Outcome> {
    if sc.form.is_none() {
        return skip("no hermitian form");
    }
    let xs = points(sc, rng, count)?;
    let p = Rat::from_integer((sc.decomp.p() as i64).into());
    for u in [p.clone(), Rat::from_integer(1.into()) / &p, Rat::from_integer(2.into())] {
        let r = jbeta_form_independence(&sc.decomp, &u, &xs)?;
        if !r.holds() {
            return Ok(Outcome::fail(json!({ "u": fmt_rat(&u), "functions_agree": r.functions_agree, "squares_agree": r.squares_agree })));
        }
    }
    Ok(Outcome::pass())
}

fn barycenters(sc: &Scenario, rng: &mut ChaCha8Rng, count: usize) -> CliResult<Outcome> {
    if sc.form.is_none() {
        return skip("no hermitian form");
    }
    let apt = CentralApartment::new(&sc.decomp)?;
    let ts = [Rat::new(1.into(), 4.into()), Rat::new(1.into(), 2.into()), Rat::new(2.into(), 3.into())];
    for k in 0..count {
        let x = sample::point(rng, &sc.decomp, &apt)?;
        let y = sample::point(rng, &sc.decomp, &apt)?;
        let t = &ts[if k < ts.len() { k } else { rng.gen_range(0..ts.len()) }];
        let lhs = j_beta(&sc.decomp, &barycenter_points(&x, &y, t)?)?;
        let rhs = barycenter(&j_beta(&sc.decomp, &x)?, &j_beta(&sc.decomp, &y)?, t)?;
        if !lhs.same(&rhs) {
            return Ok(Outcome::fail(json!({ "x": pwit(sc, &x), "y": pwit(sc, &y), "t": fmt_rat(t) })));
        }
    }
    Ok(Outcome::pass())
}

fn apartment(sc: &Scenario, rng: &mut ChaCha8Rng, count: usize) -> CliResult<Outcome> {
    if sc.form.is_none() {
        return skip("no hermitian form");
    }
    let apt = CentralApartment::new(&sc.decomp)?;
    let samples: Vec<_> = (0..count).map(|_| sample::coords(rng, &sc.decomp, &apt)).collect();
    let img = apartment_image(&sc.decomp, &apt, &samples)?;
    if img.all_split && img.basis().len() == sc.decomp.n() {
        Ok(Outcome::pass())
    } else {
        let basis: Vec<_> = img.basis().iter().map(|b| crate::format::rat_strs(b)).collect();
        Ok(Outcome::fail(json!({ "basis": basis })))
    }
}

fn filtration(sc: &Scenario, rng: &mut ChaCha8Rng, count: usize) -> CliResult<Outcome> {
    if sc.is_gl() {
        let (target, want, got) = gl_profiles(sc)?;
        return Ok(if contains_profile(&got, &want) { Outcome::pass() } else { Outcome::fail(json!({ "function": fwit(&target) })) });
    }
    for x in points(sc, rng, count)? {
        if !centralizer_filtrations_agree(&sc.decomp, &x)? {
            return Ok(Outcome::fail(json!({ "point": pwit(sc, &x) })));
        }
    }
    Ok(Outcome::pass())
}

/// `j̃_β(x)`, `h̃_x` and `g̃_{j̃_β(x)} ∩ h̃` for a `GL` scenario.
pub fn gl_profiles(sc: &Scenario) -> CliResult<(LatticeFunction, FiltrationProfile, FiltrationProfile)> {
    let parts: Vec<LatticeFunction> = sc.point.parts.iter().map(|p| p.function.clone()).collect();
    let target = j_tilde(&sc.decomp, &parts);
    let want = FiltrationProfile::from_square(FiltrationSpace::HTilde, &h_tilde_function(&sc.decomp, &sc.point)?, None);
    let got = gl_filtration(&target).intersect(FiltrationSpace::HTilde, &centralizer_subspace(&sc.decomp));
    Ok((target, want, got))
}

/// `j_β` of the scenario point (`j̃_β` for `GL`).
pub fn image(sc: &Scenario) -> CliResult<LatticeFunction> {
    if sc.is_gl() {
        let parts: Vec<LatticeFunction> = sc.point.parts.iter().map(|p| p.function.clone()).collect();
        Ok(j_tilde(&sc.decomp, &parts))
    } else {
        Ok(j_beta(&sc.decomp, &sc.point)?)
    }
}

fn embed(sc: &Scenario) -> CliResult<Outcome> {
    let j = image(sc)?;
    if let Some(real) = sc.form.as_ref().and(sc.decomp.realified().ok()) {
        if !j.is_self_dual(&real.gram)? {
            return Ok(Outcome::fail(json!({ "not_self_dual": fwit(&j) })));
        }
    }
    match &sc.file.expected.embed {
        Some(e) => {
            let want = e.to_function(&[sc.decomp.f_layer()])?;
            Ok(if j.same(&want) { Outcome::pass() } else { Outcome::fail(json!({ "expected": e, "got": fwit(&j) })) })
        }
        None => Ok(Outcome::pass()),
    }
}

fn search(sc: &Scenario) -> CliResult<Outcome> {
    let (out, unique) = if sc.is_gl() {
        let out = search_unique_gl(&sc.decomp, &sc.point, sc.denominator, &sc.radius)?;
        let u = out.unique_target(same_class);
        (out, u)
    } else if sc.decomp.has_pairs() {
        search_shift_family(&sc.decomp, &sc.point, sc.denominator, &sc.radius)?
    } else {
        let out = search_unique_compatible(&sc.decomp, &sc.point, sc.denominator, &sc.radius)?;
        let u = out.unique_target(|a, b| a.same(b));
        (out, u)
    };
    let found: Vec<Vec<String>> = out.candidates.iter().map(|c| crate::format::rat_strs(&c.function.offsets)).collect();
    let matches = sc.file.expected.search.as_ref().map_or(true, |e| *e == found);
    let mut o = if unique && matches { Outcome::pass() } else { Outcome::fail(json!({ "candidates": found, "target": fwit(&out.target) })) };
    o.note = out.warnings.first().cloned();
    if o.verdict == Verdict::Pass {
        o.note.get_or_insert_with(|| format!("{} of {} grid points pass", out.candidates.len(), out.examined));
    }
    Ok(o)
}
