//! The command-line surface against the bundled spec and fixture files.

use clap::Parser;

use vclab::cli::{run, Cli};
use vclab::report::Status;

fn manifest(rel: &str) -> String {
    format!("{}/{rel}", env!("CARGO_MANIFEST_DIR"))
}

fn run_args(args: &[&str]) -> vclab::report::RunReport {
    let mut full = vec!["vclab"];
    full.extend_from_slice(args);
    run(Cli::parse_from(full)).expect("command runs")
}

#[test]
fn retract_diagonal_is_absent() {
    let report = run_args(&[
        "retract",
        "--g",
        &manifest("specs/d3xd5.json"),
        "--h",
        "diagonal-d15",
    ]);
    assert_eq!(report.exit_code(), 0);
    let check = &report.checks[0];
    assert_eq!(check.status, Status::Absent);
}

#[test]
fn solve_bundled_equation_over_subgroup_is_absent() {
    let report = run_args(&[
        "solve",
        "--g",
        &manifest("specs/d3xd5.json"),
        "--eq",
        &manifest("fixtures/eq15.txt"),
        "--domain",
        "H",
        "--h",
        "diagonal-d15",
    ]);
    assert_eq!(report.exit_code(), 0);
    assert_eq!(report.checks[0].status, Status::Absent);
}

#[test]
fn solve_bundled_equation_over_group_is_solved() {
    let report = run_args(&[
        "solve",
        "--g",
        &manifest("specs/d3xd5.json"),
        "--eq",
        &manifest("fixtures/eq15.txt"),
        "--domain",
        "G",
        "--cap",
        "20000000",
    ]);
    assert_eq!(report.checks[0].status, Status::Pass, "{}", report.checks[0].details);
}

#[test]
fn centre_lab_with_code_file() {
    let report = run_args(&[
        "centre-lab",
        "--group",
        &manifest("specs/d4.json"),
        "--p",
        "2",
        "--t",
        "3",
        "--r-file",
        &manifest("fixtures/evenweight3.txt"),
        "--samples",
        "50",
    ]);
    assert_eq!(report.exit_code(), 0);
    let retraction = report.checks.iter().find(|c| c.name == "retraction").unwrap();
    assert_eq!(retraction.status, Status::Absent);
    let order = report.checks.iter().find(|c| c.name == "order").unwrap();
    assert!(order.details.contains("128"), "{}", order.details);
}

#[test]
fn dihedral_analyze_reports_equation() {
    let report = run_args(&[
        "dihedral-analyze",
        "--n",
        "15",
        "--overgroup-spec",
        &manifest("specs/d3xd5.json"),
        "--a",
        "a3*a5",
        "--b",
        "b3*b5",
    ]);
    assert_eq!(report.exit_code(), 0, "{}", report.render_text());
    let unsolvable = report.checks.iter().find(|c| c.name == "unsolvable-in-subgroup").unwrap();
    assert_eq!(unsolvable.status, Status::Absent);
    let retraction = report.checks.iter().find(|c| c.name == "retraction").unwrap();
    assert_eq!(retraction.status, Status::Absent);
}

#[test]
fn structure_with_module_fixture() {
    // locate the Klein four-subgroup by element orders, then hand its
    // indices to the selector
    let spec = vclab::spec::load_spec(std::path::Path::new(&manifest("specs/a4.json"))).unwrap();
    let a4 = spec.build(20_000).unwrap();
    let v4: Vec<String> = a4
        .elements()
        .filter(|&g| g == 0 || a4.element_order(g) == 2)
        .map(|g| g.to_string())
        .collect();
    let selector = format!("elements:{}", v4.join(","));
    let report = run_args(&[
        "structure",
        "--g",
        &manifest("specs/a4.json"),
        "--c",
        &selector,
        "--n",
        "whole",
        "--module",
        &manifest("fixtures/modules/z9_sign.json"),
    ]);
    assert_eq!(report.exit_code(), 0, "{}", report.render_text());
    for name in ["core-self-centralizing", "core-indecomposable", "core-coprime"] {
        let c = report.checks.iter().find(|c| c.name == name).unwrap();
        assert_eq!(c.status, Status::Pass, "{name}");
    }
}

#[test]
fn heisenberg_word_subcommand() {
    let report = run_args(&["heisenberg-word", "--word", "[t1,t2]", "--arity", "2", "--box", "5"]);
    assert_eq!(report.exit_code(), 0, "{}", report.render_text());
    let slice = report.checks.iter().find(|c| c.name == "centre-slice").unwrap();
    assert!(slice.details.contains("1Z"), "{}", slice.details);
}

#[test]
fn approx_lemma_subcommand_and_export() {
    let out = std::env::temp_dir().join("vclab_code_rows.txt");
    let report = run_args(&[
        "approx-lemma",
        "--p",
        "2",
        "--d",
        "1",
        "--k",
        "1",
        "--export-r",
        out.to_str().unwrap(),
    ]);
    assert_eq!(report.exit_code(), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 2); // dim R = 2 generator rows
    std::fs::remove_file(&out).ok();
}

#[test]
fn paper_examples_all_pass() {
    let report = run_args(&["paper-examples"]);
    assert_eq!(report.exit_code(), 0, "{}", report.render_text());
    assert!(report.checks.len() > 20);
    // json rendering satisfies the documented shape
    let json = report.render_json();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(v["checks"].as_array().unwrap().len() == report.checks.len());
}

#[test]
fn group_summary_runs() {
    let report = run_args(&["group", "--g", &manifest("specs/a5.json")]);
    assert_eq!(report.exit_code(), 0);
    assert!(report.checks.iter().any(|c| c.name == "monolith" && c.details.contains("60")));
}

#[test]
fn verbal_closure_subcommand() {
    let report = run_args(&[
        "verbal-closure",
        "--g",
        &manifest("specs/d4.json"),
        "--h",
        "whole",
        "--smax",
        "2",
    ]);
    assert_eq!(report.exit_code(), 0);
    assert!(report
        .checks
        .iter()
        .any(|c| c.name == "arity-2" && c.details.contains("CLOSED")));
}
