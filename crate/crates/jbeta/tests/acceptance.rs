//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use jbeta::checks::{image, run_check, Counts};
use jbeta::report::Verdict;
use jbeta::scenario::{catalog, Scenario};
use jbeta::search::{apartment_grid, in_closed_facet, same_class, search_negative_control, search_unique_compatible, search_unique_gl};
use jbeta::CliResult;
use jbeta_core::arith::{int, rat};
use jbeta_core::latt_fun::LatticeFunction;

const SEED: u64 = 20_261_014;

/// Runs `check` on every catalog scenario it applies to; fails on any
/// failure and also if it applied nowhere.
fn across(scenarios: &[Scenario], check: &str, counts: &Counts) -> CliResult<(bool, String)> {
    let mut ran = 0;
    for sc in scenarios {
        let o = run_check(check, sc, SEED, counts)?;
        match o.verdict {
            Verdict::Pass => ran += 1,
            Verdict::Skip => {}
            Verdict::Fail => return Ok((false, format!("{}: {}", sc.name(), o.witness.unwrap_or_default()))),
        }
    }
    Ok((ran > 0, format!("{ran} scenarios")))
}

fn scenario<'a>(all: &'a [Scenario], name: &str) -> &'a Scenario {
    all.iter().find(|s| s.name() == name).expect("catalog scenario")
}

fn criterion_9(all: &[Scenario]) -> CliResult<(bool, String)> {
    let sc = scenario(all, "sp2-ramified");
    let (n, r) = (8, rat(1, 2));
    let out = search_unique_compatible(&sc.decomp, &sc.point, n, &r)?;
    let f = sc.decomp.f_layer();
    let bary = LatticeFunction::new(vec![vec![int(1), int(0)], vec![int(0), int(1)]], vec![rat(-1, 4), rat(1, 4)], f);
    let unique = out.unique_target(|a, b| a.same(b)) && out.target.same(&bary);
    let control = search_negative_control(&sc.decomp, &sc.point, n, &r)?;
    let oracle: Vec<_> = apartment_grid(&sc.decomp, n, &r)?.into_iter().filter(|c| in_closed_facet(&out.target, &c.function)).collect();
    let closed = oracle.len() == 5
        && control.candidates.len() == oracle.len()
        && control.candidates.iter().zip(&oracle).all(|(a, b)| a.function.same(&b.function));
    Ok((unique && closed, format!("{} candidate(s); control {} points, closed chamber {} points", out.candidates.len(), control.candidates.len(), oracle.len())))
}

fn criterion_10(all: &[Scenario]) -> CliResult<(bool, String)> {
    let sc = scenario(all, "gl2-ramified");
    let out = search_unique_gl(&sc.decomp, &sc.point, 8, &sc.radius)?;
    let f = sc.decomp.f_layer();
    let chain = LatticeFunction::new(vec![vec![int(1), int(0)], vec![int(0), int(3)]], vec![int(0), rat(-1, 2)], f);
    let ok = out.unique_target(same_class) && image(sc)?.same(&chain) && out.candidates[0].coords == vec![int(0), rat(1, 2)];
    Ok((ok, format!("{} class(es) among {} grid points", out.candidates.len(), out.examined)))
}

fn main() -> ExitCode {
    let all = catalog().expect("catalog builds");
    let counts = Counts::default();
    let criteria: Vec<(&str, Box<dyn Fn() -> CliResult<(bool, String)>>)> = vec![
        ("duality is an involution", Box::new(|| across(&all, "duality", &counts))),
        ("dual norm and fixed points", Box::new(|| across(&all, "dual-norm", &counts))),
        ("recovery from the square and rescaling", Box::new(|| across(&all, "recover", &counts))),
        ("duals under h and h_i", Box::new(|| across(&all, "block-duals", &counts))),
        ("independence of the form", Box::new(|| across(&all, "form-independence", &counts))),
        ("affine on barycenters", Box::new(|| across(&all, "barycenter", &counts))),
        ("apartments map into apartments", Box::new(|| across(&all, "apartment", &counts))),
        ("centralizer filtrations", Box::new(|| across(&all, "filtration", &counts))),
        ("unique compatible point, sp2-ramified", Box::new(|| criterion_9(&all))),
        ("unique compatible class, gl2-ramified", Box::new(|| criterion_10(&all))),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = match run() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!ok);
        println!("criterion {:>2} {} {name}: {detail} [{} ms]", k + 1, if ok { "PASS" } else { "FAIL" }, start.elapsed().as_millis());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
