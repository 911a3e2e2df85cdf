use std::path::PathBuf;
use std::process::{Command, Output};

fn jbeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jbeta")).args(args).output().expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("jbeta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn catalog_text(name: &str) -> String {
    std::fs::read_to_string(format!("{}/scenarios/{name}.json", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn json(path: &PathBuf) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn embed_of_the_ramified_example_exits_zero() {
    let out = tmp("embed.json");
    let o = jbeta(&["embed", "sp2-ramified", "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&out);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["image"]["layer"], "F");
    assert_eq!(v["point"]["blocks"][0]["kind"], "J_o");
}

#[test]
fn non_reduced_beta_is_a_capability_error() {
    let text = catalog_text("sp2-ramified").replace("[[0, 1], [3, 0]]", "[[0, 1], [0, 0]]");
    let path = tmp("nilpotent.json");
    std::fs::write(&path, text).unwrap();
    let o = jbeta(&["decompose", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("H1Violated"));
}

#[test]
fn tampered_expectation_fails_with_a_witness() {
    let text = catalog_text("sp2-ramified").replace(r#""offsets": ["-1/4", "1/4"]"#, r#""offsets": ["1/4", "-1/4"]"#);
    let path = tmp("tampered.json");
    std::fs::write(&path, text).unwrap();
    let out = tmp("tampered-report.json");
    let o = jbeta(&["check", path.to_str().unwrap(), "--only", "embed", "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&out);
    let c = &v[0]["checks"][0];
    assert_eq!(c["verdict"], "fail");
    assert_eq!(c["witness"]["got"]["offsets"].as_array().unwrap().len(), 2);
}

#[test]
fn parse_errors_exit_two() {
    let path = tmp("broken.json");
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(jbeta(&["embed", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(jbeta(&["embed", "no-such-scenario"]).status.code(), Some(2));
    assert_eq!(jbeta(&["embed", "sp2-ramified", "--prime", "2"]).status.code(), Some(2));
    assert_eq!(jbeta(&["search-unique", "sp2-ramified", "--radius", "x"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let strip = |mut v: serde_json::Value| {
        for r in v.as_array_mut().unwrap() {
            for c in r["checks"].as_array_mut().unwrap() {
                c["millis"] = 0.into();
            }
        }
        v
    };
    let (a, b) = (tmp("det-a.json"), tmp("det-b.json"));
    for p in [&a, &b] {
        let o = jbeta(&["check", "o2-anisotropic", "--seed", "7", "--only", "barycenter", "--only", "duality", "--json", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(strip(json(&a)), strip(json(&b)));
}

#[test]
fn search_prints_the_barycenter_and_the_control() {
    let out = tmp("search.json");
    let o = jbeta(&["search-unique", "sp2-ramified", "--control", "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["candidates"], serde_json::json!([["-1/4", "1/4"]]));
    assert_eq!(v["control"].as_array().unwrap().len(), 5);
    let o = jbeta(&["search-unique", "sp2-ramified", "--grid-denominator", "3", "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("GridTooCoarse"));
}

#[test]
fn tree_export() {
    let count = |depth: &str| {
        let o = jbeta(&["export-tree", "sp2-ramified", "--depth", depth]);
        assert_eq!(o.status.code(), Some(0));
        String::from_utf8_lossy(&o.stdout).lines().filter(|l| l.trim_start().starts_with('v') && !l.contains("--")).count()
    };
    assert_eq!(count("0"), 1);
    assert_eq!(count("1"), 5);
    assert_eq!(count("2"), 17);
    let o = jbeta(&["export-tree", "u2-unramified"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("UnsupportedDimension"));
}

#[test]
fn filtration_and_decompose_outputs() {
    let out = tmp("filtration.json");
    let o = jbeta(&["filtration", "sp4-mixed", "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["ambient"]["period"], "1");
    assert_eq!(v["ambient"], v["centralizer"]);
    let o = jbeta(&["decompose", "sp4-mixed", "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let kinds: Vec<String> = json(&out)["blocks"].as_array().unwrap().iter().map(|b| b["kind"].as_str().unwrap().to_string()).collect();
    assert_eq!(kinds, ["J_+", "J_-", "J_o"]);
}
