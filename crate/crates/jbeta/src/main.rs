use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use jbeta::checks::{gl_profiles, image, Counts};
use jbeta::format::{rat, rat_strs, FunctionJson, PointJson, ProfileJson};
use jbeta::report::run_scenario;
use jbeta::scenario::{Scenario, ScenarioFile, CATALOG};
use jbeta::search::{same_class, search_negative_control, search_shift_family, search_unique_compatible, search_unique_gl};
use jbeta::tree::export_rank1_tree;
use jbeta::{CliError, CliResult};
use jbeta_core::arith::fmt_rat;
use jbeta_core::centralizer_embed::{h_profile, lie_centralizer_subspace};
use jbeta_core::endo_filt::{lie_filtration, FiltrationSpace};
use serde_json::{json, Value};

/// `println!` that tolerates a closed stdout.
macro_rules! say {
    ($($t:tt)*) => {{
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "jbeta", version, about = "Lattice-function checks for the centralizer embedding")]
struct Cli {
    /// Override the prime of the scenario.
    #[arg(long, global = true)]
    prime: Option<u64>,
    /// Grid step 1/N for searches.
    #[arg(long, global = true)]
    grid_denominator: Option<u32>,
    /// Coordinate bound R for searches, as a rational.
    #[arg(long, global = true)]
    radius: Option<String>,
    /// Write the JSON result to this file.
    #[arg(long, global = true)]
    json: Option<String>,
    /// Seed of the randomized checks.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Blocks of β, their fields and induced forms.
    Decompose { scenario: String },
    /// j_β of the scenario point.
    Embed { scenario: String },
    /// g_{j_β(x)} ∩ h against h_x.
    Filtration { scenario: String },
    /// Run the scenario's checks, or every catalog scenario with `all`.
    Check {
        scenario: String,
        /// Restrict to these checks.
        #[arg(long = "only")]
        only: Vec<String>,
    },
    /// Grid search for points with the filtrations of j_β(x).
    SearchUnique {
        scenario: String,
        /// Also run the control without the filtration condition.
        #[arg(long)]
        control: bool,
    },
    /// DOT graph of the tree of lattice classes around the standard vertex.
    ExportTree {
        scenario: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
}

fn load(cli: &Cli, name: &str) -> CliResult<Scenario> {
    let mut file = ScenarioFile::load(name)?;
    if let Some(p) = cli.prime {
        file.prime = p;
    }
    if let Some(n) = cli.grid_denominator {
        file.grid.denominator = n;
    }
    if let Some(r) = &cli.radius {
        rat(r)?;
        file.grid.radius = r.clone();
    }
    file.build()
}

fn emit(cli: &Cli, value: &Value) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value)?;
    match &cli.json {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => say!("{text}"),
    }
    Ok(())
}

fn decompose(cli: &Cli, sc: &Scenario) -> CliResult<bool> {
    let blocks: Vec<Value> = sc
        .decomp
        .blocks
        .iter()
        .map(|b| {
            let coeffs: Vec<String> = b.factor.coeffs.iter().map(|c| c.to_string()).collect();
            let gram = b.form.as_ref().map(|h| (0..h.dim()).map(|i| (0..h.dim()).map(|j| h.gram[(i, j)].to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());
            say!("block {:>2} {:<4} factor [{}] over {} ({}-dimensional over E)", b.label, b.kind.name(), coeffs.join(", "), b.layer.name, b.e_dim());
            json!({
                "i": b.label,
                "kind": b.kind.name(),
                "factor": coeffs,
                "layer": b.layer.name,
                "ramification": b.layer.field.e,
                "basis": b.basis.iter().map(|v| rat_strs(v)).collect::<Vec<_>>(),
                "partner": b.partner.map(|k| sc.decomp.blocks[k].label),
                "h_i": gram,
            })
        })
        .collect();
    if cli.json.is_some() {
        emit(cli, &json!({ "scenario": sc.name(), "blocks": blocks }))?;
    }
    Ok(true)
}

fn embed(cli: &Cli, sc: &Scenario) -> CliResult<bool> {
    let j = image(sc)?;
    let ok = match &sc.file.expected.embed {
        Some(e) => j.same(&e.to_function(&[sc.decomp.f_layer()])?),
        None => true,
    };
    let value = json!({
        "scenario": sc.name(),
        "point": PointJson::of(&sc.decomp, &sc.point),
        "image": FunctionJson::of(&j),
        "verdict": if ok { "pass" } else { "fail" },
        "expected": sc.file.expected.embed,
    });
    let basis: Vec<String> = j.basis.iter().map(|b| format!("({})", rat_strs(b).join(", "))).collect();
    say!("j_β(x): offsets [{}] on [{}]", rat_strs(&j.offsets).join(", "), basis.join(", "));
    emit(cli, &value)?;
    Ok(ok)
}

fn filtration(cli: &Cli, sc: &Scenario) -> CliResult<bool> {
    let (lhs, rhs, ok) = if sc.is_gl() {
        let (_, want, got) = gl_profiles(sc)?;
        let ok = jbeta::search::contains_profile(&got, &want);
        (got, want, ok)
    } else {
        let j = image(sc)?;
        let lhs = lie_filtration(&j, sc.decomp.realified()?).intersect(FiltrationSpace::H, &lie_centralizer_subspace(&sc.decomp)?);
        let rhs = h_profile(&sc.decomp, &sc.point)?;
        let ok = lhs == rhs;
        (lhs, rhs, ok)
    };
    let samples: Vec<Value> = sc
        .file
        .r_samples
        .iter()
        .map(|s| {
            let r = rat(s)?;
            Ok(json!({ "r": fmt_rat(&r), "ambient_rank": lhs.at(&r).rank(), "centralizer_rank": rhs.at(&r).rank() }))
        })
        .collect::<CliResult<_>>()?;
    say!("jumps of the ambient profile: {:?}", lhs.jump_points().iter().map(fmt_rat).collect::<Vec<_>>());
    say!("jumps of the centralizer profile: {:?}", rhs.jump_points().iter().map(fmt_rat).collect::<Vec<_>>());
    say!("{}", if ok { "profiles agree" } else { "profiles differ" });
    emit(cli, &json!({ "scenario": sc.name(), "ambient": ProfileJson::of(&lhs), "centralizer": ProfileJson::of(&rhs), "samples": samples, "verdict": if ok { "pass" } else { "fail" } }))?;
    Ok(ok)
}

fn check(cli: &Cli, name: &str, only: &[String]) -> CliResult<bool> {
    let names: Vec<String> = if name == "all" { CATALOG.iter().map(|(n, _)| n.to_string()).collect() } else { vec![name.into()] };
    let mut reports = Vec::new();
    let mut ok = true;
    for n in &names {
        let sc = load(cli, n)?;
        let report = run_scenario(&sc, only, cli.seed, &Counts::default())?;
        for c in &report.checks {
            let note = c.note.as_deref().map(|s| format!(" ({s})")).unwrap_or_default();
            say!("{:<16} {:<18} {}{note}", report.scenario, c.name, c.verdict);
        }
        ok &= report.passed();
        reports.push(serde_json::to_value(&report)?);
    }
    if cli.json.is_some() {
        emit(cli, &Value::Array(reports))?;
    }
    Ok(ok)
}

fn search(cli: &Cli, sc: &Scenario, control: bool) -> CliResult<bool> {
    let (out, ok) = if sc.is_gl() {
        let out = search_unique_gl(&sc.decomp, &sc.point, sc.denominator, &sc.radius)?;
        let ok = out.unique_target(same_class);
        (out, ok)
    } else if sc.decomp.has_pairs() {
        say!("paired blocks: comparing with the images of x under every grid shift");
        search_shift_family(&sc.decomp, &sc.point, sc.denominator, &sc.radius)?
    } else {
        let out = search_unique_compatible(&sc.decomp, &sc.point, sc.denominator, &sc.radius)?;
        let ok = out.unique_target(|a, b| a.same(b));
        (out, ok)
    };
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    let found: Vec<Vec<String>> = out.candidates.iter().map(|c| rat_strs(&c.function.offsets)).collect();
    say!("{} of {} grid points pass: {:?}", found.len(), out.examined, found);
    let mut value = json!({
        "scenario": sc.name(),
        "denominator": sc.denominator,
        "radius": fmt_rat(&sc.radius),
        "examined": out.examined,
        "candidates": found,
        "target": FunctionJson::of(&out.target),
        "target_on_grid": out.target_on_grid,
        "warnings": out.warnings,
        "verdict": if ok { "pass" } else { "fail" },
    });
    if control {
        let c = search_negative_control(&sc.decomp, &sc.point, sc.denominator, &sc.radius)?;
        let found: Vec<Vec<String>> = c.candidates.iter().map(|c| rat_strs(&c.function.offsets)).collect();
        say!("control: {} of {} grid points pass: {:?}", found.len(), c.examined, found);
        value["control"] = json!(found);
    }
    emit(cli, &value)?;
    Ok(ok)
}

fn export_tree(cli: &Cli, sc: &Scenario, depth: usize) -> CliResult<bool> {
    let dot = export_rank1_tree(&sc.decomp, depth)?.to_dot();
    match &cli.json {
        Some(path) => std::fs::write(path, dot)?,
        None => say!("{}", dot.trim_end()),
    }
    Ok(true)
}

fn run(cli: &Cli) -> CliResult<bool> {
    match &cli.command {
        Command::Decompose { scenario } => decompose(cli, &load(cli, scenario)?),
        Command::Embed { scenario } => embed(cli, &load(cli, scenario)?),
        Command::Filtration { scenario } => filtration(cli, &load(cli, scenario)?),
        Command::Check { scenario, only } => check(cli, scenario, only),
        Command::SearchUnique { scenario, control } => search(cli, &load(cli, scenario)?, *control),
        Command::ExportTree { scenario, depth } => export_tree(cli, &load(cli, scenario)?, *depth),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Core(c) = &e {
                eprintln!("  ({c:?})");
            }
            ExitCode::from(2)
        }
    }
}
