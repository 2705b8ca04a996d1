use std::fs;
use std::process::{Command, Output};

use pfh_cli::report::Report;
use pfh_core::f2homology::betti;
use pfh_core::{ChainComplexF2, GradeMode};
use proptest::prelude::*;

fn pfh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pfh")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Runs in-process and returns the exit code and the parsed report.
fn report_for(args: &[&str]) -> (i32, Report, String) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let mut argv = vec!["pfh", "--json", path.to_str().unwrap()];
    argv.extend_from_slice(args);
    let mut sink = Vec::new();
    let code = pfh_cli::run(argv, &mut sink);
    let text = fs::read_to_string(&path).unwrap_or_default();
    let report = Report::parse(&text).expect("report parses");
    (code, report, text)
}

/// The complex a report describes, rebuilt from its generator and edge lists.
fn rebuild(r: &Report) -> ChainComplexF2 {
    let labels = r.generators.iter().map(|g| g.text.clone()).collect();
    let grades = r.generators.iter().map(|g| g.grade).collect();
    let mode = if r.problem.starts_with("surface") { GradeMode::Parity } else { GradeMode::Integer };
    let edges: Vec<(usize, usize)> = r.differential.iter().map(|&[s, t]| (s, t)).collect();
    ChainComplexF2::from_edges(labels, grades, mode, &edges).unwrap()
}

fn recomputed_betti(r: &Report) -> Vec<(i64, usize)> {
    betti(&rebuild(r)).unwrap().into_iter().filter(|&(_, d)| d > 0).collect()
}

#[test]
fn cylinder_homology_of_three_two() {
    let o = pfh(&["cylinder", "--x1", "0+eps", "--x2", "3-eps", "--P", "3", "--Q", "2", "homology"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("betti: {0: 1, 1: 1}"), "{}", stdout(&o));
}

#[test]
fn empty_interval_is_a_usage_error() {
    let o = pfh(&["cylinder", "--x1", "0+eps", "--x2", "0+eps", "--P", "3", "--Q", "2", "homology"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("empty interval"), "{}", stderr(&o));
    let o = pfh(&["cylinder", "--x1", "zero", "--x2", "1", "--P", "3", "--Q", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(pfh(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn negative_bounds_parse() {
    let o = pfh(&["cylinder", "--x1", "-1-eps", "--x2", "1+eps", "--P", "0", "--Q", "3", "homology"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("betti: {0: 1, 1: 1}"));
}

#[test]
fn report_of_three_two() {
    let (code, r, text) = report_for(&["cylinder", "--x1", "0+eps", "--x2", "3-eps", "--P", "3", "--Q", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r.tool, "pfh");
    assert_eq!(r.generators.len(), 6);
    assert_eq!(r.differential.len(), 3);
    assert_eq!(recomputed_betti(&r), vec![(0, 1), (1, 1)]);
    assert_eq!(r.to_canonical_json().unwrap(), text);
    // Keys come out sorted.
    let keys: Vec<usize> = ["\"betti\"", "\"checks\"", "\"differential\"", "\"generators\"", "\"problem\"", "\"tool\"", "\"version\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]), "{text}");
}

#[test]
fn empty_complex_report() {
    let (code, r, text) = report_for(&["cylinder", "--x1", "0+eps", "--x2", "1-eps", "--P", "3", "--Q", "1"]);
    assert_eq!(code, 0);
    assert!(r.generators.is_empty() && r.betti.is_empty());
    assert!(text.contains("\"generators\": []") && text.contains("\"betti\": []"), "{text}");
}

#[test]
fn reports_are_byte_identical_across_runs_and_threads() {
    let args = ["cylinder", "--x1", "0+eps", "--x2", "1-eps", "--P", "2", "--Q", "5", "verify"];
    let (_, _, a) = report_for(&args);
    let (_, _, b) = report_for(&args);
    assert_eq!(a, b);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("one.json");
    let o = Command::new(env!("CARGO_BIN_EXE_pfh"))
        .env("PFH_THREADS", "1")
        .args(["--json", path.to_str().unwrap()])
        .args(args)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(path).unwrap(), a);
}

#[test]
fn torus_commands() {
    let (code, r, _) = report_for(&["torus", "--n", "1", "--d", "3", "--sector", "0", "homology"]);
    assert_eq!(code, 0);
    assert_eq!(recomputed_betti(&r), (0..6).map(|k| (k, 1)).collect::<Vec<_>>());
    let o = pfh(&["torus", "--n", "2", "--d", "3", "wrapping-check"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = pfh(&["torus", "--n", "2", "--d", "4", "pages"]);
    assert!(stdout(&o).contains("level 4: {6: 3, 7: 3}"), "{}", stdout(&o));
    assert_eq!(pfh(&["torus", "--n", "2", "--d", "1", "--sector", "2"]).status.code(), Some(2));
}

#[test]
fn surface_commands() {
    let (code, r, _) = report_for(&["surface", "nonseparating", "--g", "2", "--d", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r.generators.len(), 8);
    assert_eq!(recomputed_betti(&r), vec![(0, 1), (1, 3)]);
    let (code, r, _) = report_for(&["surface", "separating", "--g0", "0", "--g1", "0", "--d", "2", "--sector", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r.generators.len(), 11);
    assert_eq!(recomputed_betti(&r), vec![(0, 2), (1, 1)]);
    assert_eq!(pfh(&["surface", "nonseparating", "--g", "0", "--d", "1"]).status.code(), Some(2));
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.svg");
    let o = pfh(&["render", "--orbits", "e[1/2]", "--svg", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let svg = fs::read_to_string(&path).unwrap();
    assert!(svg.contains(r#"points="0,0 20,-40""#), "{svg}");
    let o = pfh(&["render", "--x1", "-2/9-eps", "--x2", "7/5+eps", "--P", "4", "--Q", "11", "--svg", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let svg = fs::read_to_string(&path).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 2);
    assert!(svg.contains("stroke-dasharray"));
    assert!(svg.trim_end().ends_with("</svg>"));
}

#[test]
fn verify_all_passes() {
    let o = pfh(&["verify", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("[PASS]")).count(), 12, "{out}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reports_round_trip(a in -3i64..3, w in 1i64..4, q in 1i64..5, dp in 0i64..6) {
        let (x1, x2) = (format!("{a}+eps"), format!("{}-eps", a + w));
        let p = (a * q + dp).to_string();
        let q = q.to_string();
        let (code, r, text) = report_for(&["cylinder", "--x1", &x1, "--x2", &x2, "--P", &p, "--Q", &q, "verify"]);
        prop_assert_eq!(code, 0);
        prop_assert_eq!(Report::parse(&r.to_canonical_json().unwrap()).unwrap(), r.clone());
        prop_assert_eq!(r.to_canonical_json().unwrap(), text);
        prop_assert!(r.differential.iter().all(|&[s, t]| s < r.generators.len() && t < r.generators.len()));
        let want: Vec<(i64, usize)> = r.betti.iter().map(|b| (b.grade, b.dim)).collect();
        prop_assert_eq!(recomputed_betti(&r), want);
    }
}
