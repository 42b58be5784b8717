use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use cuntzkit::bundles::BundleClass;
use cuntzkit::complex::sphere;
use cuntzkit::cuntz::CuntzClass;
use cuntzkit::io::{to_json, CuntzDoc};

fn cuntzkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cuntzkit")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    static NEXT: AtomicUsize = AtomicUsize::new(0);
    let dir = std::env::temp_dir().join(format!(
        "cuntzkit-cli-{}-{}",
        std::process::id(),
        NEXT.fetch_add(1, Ordering::Relaxed)
    ));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// Rank-one classes on the 2-sphere with first Chern class 0 and 1.
fn sphere_pair() -> (PathBuf, PathBuf) {
    let x = Arc::new(sphere(2).unwrap());
    let all = x.all_cells();
    let paths: Vec<PathBuf> = [0, 1]
        .iter()
        .map(|&c| {
            let class = CuntzClass::from_bundle(&BundleClass::on(&x, &all, 1, vec![c]).unwrap()).unwrap();
            let p = scratch(&format!("line{c}.json"));
            std::fs::write(&p, to_json(&CuntzDoc::of(&class))).unwrap();
            p
        })
        .collect();
    (paths[0].clone(), paths[1].clone())
}

#[test]
fn build_sphere_text_and_json() {
    let o = cuntzkit(&["build", "--sphere", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Euler characteristic 2"));
    let o = cuntzkit(&["--format", "json", "build", "--sphere", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 2);
    assert_eq!(v["fVector"], serde_json::json!([4, 6, 4]));
}

#[test]
fn iso_on_sphere_line_bundles() {
    let (a, b) = sphere_pair();
    let o = cuntzkit(&["compare", "--iso", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no: stratum isomorphism criterion, stratum i=1 Chern mismatch"), "{}", stdout(&o));
    let o = cuntzkit(&["compare", "--iso", a.to_str().unwrap(), a.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("yes"));
    let o = cuntzkit(&["compare", "--cuntz", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert!(stdout(&o).contains("a <= b: no"));
}

#[test]
fn exit_codes() {
    let (a, b) = sphere_pair();
    assert_eq!(cuntzkit(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(cuntzkit(&["cohomology", "/nonexistent/complex.json"]).status.code(), Some(1));
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(cuntzkit(&["add", bad.to_str().unwrap(), a.to_str().unwrap()]).status.code(), Some(1));
    let o = cuntzkit(&["compare", "--stabilized", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    assert_eq!(cuntzkit(&["--help"]).status.code(), Some(0));
}

#[test]
fn telescope_report_is_deterministic() {
    let first = cuntzkit(&["telescope", "--stages", "3"]);
    let second = cuntzkit(&["telescope", "--stages", "3"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    assert!(text.contains(
        "Cuntz classes of line bundles: one; isomorphism classes: not classified by stagewise data (lim^1 != 0)"
    ));
}

#[test]
fn out_flag_writes_the_report() {
    let (a, _) = sphere_pair();
    let out = scratch("k0.txt");
    let o = cuntzkit(&["--out", out.to_str().unwrap(), "k0star", a.to_str().unwrap(), a.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let direct = cuntzkit(&["k0star", a.to_str().unwrap(), a.to_str().unwrap()]);
    assert_eq!(std::fs::read(&out).unwrap(), direct.stdout);
}

#[test]
fn clutch_example_runs() {
    let o = cuntzkit(&["examples", "--s4-clutch", "--labels", "-1..1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(!stdout(&o).is_empty());
}
