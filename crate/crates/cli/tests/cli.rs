use std::path::Path;
use std::process::{Command, Output};

use quadric_cli::plot::{self, PROJECTIONS};
use quadric_cli::suite::CHECKS;
use serde_json::Value;

fn quadric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadric")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn schema() -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn json_report(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--json", "-"]);
    let o = quadric(&full);
    let report: Value = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    let validator = jsonschema::validator_for(&schema()).unwrap();
    let errors: Vec<String> = validator.iter_errors(&report).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
    (code(&o), report)
}

fn statuses(report: &Value) -> Vec<(String, String)> {
    report["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["name"].as_str().unwrap().to_string(), r["status"].as_str().unwrap().to_string()))
        .collect()
}

#[test]
fn verify_paper_over_q_passes() {
    let (c, report) = json_report(&["verify-paper", "--field", "Q"]);
    assert_eq!(c, 0);
    assert_eq!(report["field"], "Q");
    assert_eq!(report["schema_version"], 1);
    let st = statuses(&report);
    let names: Vec<&str> = st.iter().map(|(n, _)| n.as_str()).collect();
    let declared: Vec<&str> = CHECKS.iter().map(|c| c.name).collect();
    assert_eq!(names, declared);
    assert!(st.iter().all(|(n, s)| s == "pass" || (s == "skipped" && n.starts_with("charp-"))), "{st:?}");
}

#[test]
fn verify_paper_over_f2_skips_char_zero_checks() {
    let (c, report) = json_report(&["verify-paper", "--field", "Fp:2"]);
    assert_eq!(c, 0);
    let st = statuses(&report);
    let skipped: Vec<&str> = st.iter().filter(|(_, s)| s == "skipped").map(|(n, _)| n.as_str()).collect();
    assert!(skipped.contains(&"nu-rigid-p12"));
    assert!(skipped.contains(&"shastri-sl2-determinant"));
    assert!(st.iter().any(|(n, s)| n == "charp-line" && s == "pass"));
    assert!(st.iter().all(|(_, s)| s == "pass" || s == "skipped"));
}

#[test]
fn filter_selects_by_glob() {
    let (c, report) = json_report(&["verify-paper", "--filter", "shastri*"]);
    assert_eq!(c, 0);
    let st = statuses(&report);
    assert_eq!(st.len(), 5);
    assert!(st.iter().all(|(n, _)| n.starts_with("shastri-")));
}

#[test]
fn records_reproduce_in_isolation() {
    let (_, full) = json_report(&["verify-paper", "--field", "Fp:3"]);
    for (name, status) in statuses(&full) {
        let (_, alone) = json_report(&["verify-paper", "--field", "Fp:3", "--filter", &name]);
        assert_eq!(statuses(&alone), vec![(name, status)]);
    }
}

#[test]
fn bad_field_and_filter_are_usage_errors() {
    assert_eq!(code(&quadric(&["verify-paper", "--field", "Fp:4"])), 5);
    assert_eq!(code(&quadric(&["verify-paper", "--field", "Q(t)"])), 5);
    assert_eq!(code(&quadric(&["verify-paper", "--filter", "[x"])), 5);
    assert_eq!(code(&quadric(&["no-such-command"])), 5);
}

#[test]
fn equiv_nu_examples() {
    let (c, report) = json_report(&["equiv", "nu", "--p", "t^3", "--q", "t^3"]);
    assert_eq!(c, 0);
    let rec = &report["records"][0];
    assert!(rec["detail"].as_str().unwrap().contains("(1, 0)"));
    assert_eq!(rec["data"]["extensions"].as_array().unwrap().len(), 2);
    let (c, _) = json_report(&["equiv", "nu", "--p", "t^3", "--q", "t^4"]);
    assert_eq!(c, 1);
    let (c, report) = json_report(&["equiv", "nu", "--p", "t^3", "--q", "t^3", "--field", "Fp:1000003"]);
    assert_eq!(c, 4);
    assert_eq!(report["records"][0]["status"], "inconclusive");
}

#[test]
fn equiv_pr_and_jac_examples() {
    let (c, report) = json_report(&["equiv", "pr", "--r", "1", "--s", "1+t"]);
    assert_eq!(c, 1);
    assert!(report["records"][0]["detail"].as_str().unwrap().starts_with("NotEquivalent"));
    assert_eq!(json_report(&["equiv", "pr", "--r", "t^2", "--s", "t^2"]).0, 0);

    let (c, report) = json_report(&["equiv", "jac", "--f", "2*s", "--g", "t"]);
    assert_eq!(c, 1);
    assert_eq!(report["records"][0]["detail"], "DoesNotExtend: J = 2");
    assert_eq!(json_report(&["equiv", "jac", "--f", "2*s", "--g", "t/2"]).0, 0);
    assert_eq!(json_report(&["equiv", "jac", "--f", "y", "--g", "x + y^3"]).0, 0);
    assert_eq!(json_report(&["equiv", "jac", "--f", "s^2", "--g", "t"]).0, 1);
}

#[test]
fn parse_errors_point_at_the_input() {
    let o = quadric(&["equiv", "nu", "--p", "t^3 + w", "--q", "t"]);
    assert_eq!(code(&o), 5);
    let err = stderr(&o);
    assert!(err.contains("position 6"), "{err}");
    assert!(err.contains("        ^"), "{err}");
}

#[test]
fn construct_examples() {
    let (c, report) = json_report(&["construct", "rho-lambda", "--lambda", "3"]);
    assert_eq!(c, 0);
    let data = &report["records"][0]["data"];
    assert_eq!(data["matrix"], serde_json::json!(["1", "t", "3*s", "3*s*t + 1"]));
    assert_eq!(data["residuals"][0]["residual"], "0");

    let (c, report) = json_report(&["construct", "shastri-sl2"]);
    assert_eq!(c, 0);
    let comps: Vec<&str> = report["records"][0]["data"]["components"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["image"].as_str().unwrap())
        .collect();
    assert_eq!(comps[0], "t^4 - 4*t^2 - 1");
    assert_eq!(comps[2], "t^3 - 3*t");

    let (c, report) = json_report(&["construct", "charp-line", "--p", "2", "--q", "3", "--a", "1", "--b", "1", "--field", "Fp:2"]);
    assert_eq!(c, 0);
    let comps: Vec<&str> = report["records"][0]["data"]["components"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["image"].as_str().unwrap())
        .collect();
    assert_eq!(comps, vec!["u^4", "u^6 + u"]);
}

#[test]
fn construct_constraint_violations_exit_5() {
    assert_eq!(code(&quadric(&["construct", "charp-line", "--p", "2", "--q", "4", "--a", "1", "--b", "1"])), 5);
    assert_eq!(code(&quadric(&["construct", "rho-lambda", "--lambda", "0"])), 5);
    assert_eq!(code(&quadric(&["construct", "shastri-sl2", "--field", "Fp:2"])), 5);
    assert_eq!(code(&quadric(&["construct", "no-such-family"])), 5);
    assert_eq!(code(&quadric(&["construct", "nu-p"])), 5);
}

#[test]
fn lift_prints_images_and_inverse() {
    let (c, report) = json_report(&["lift", "--f", "s", "--g", "t + s^2"]);
    assert_eq!(c, 0);
    let rec = &report["records"][0];
    assert_eq!(rec["data"]["lift"]["images"], serde_json::json!(["t", "x^3 + u", "x", "t*x^2 + y"]));
    assert_eq!(rec["data"]["lift"]["inverse"], serde_json::json!(["t", "-x^3 + u", "x", "-t*x^2 + y"]));
}

#[test]
fn json_report_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = quadric(&["verify-paper", "--filter", "surface-e-*", "--json", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["records"].as_array().unwrap().len(), 4);
    assert!(stdout(&o).contains("4 passed"));
    assert_eq!(code(&quadric(&["verify-paper", "--filter", "q2*", "--json", "/nonexistent/dir/r.json"])), 6);
}

#[test]
fn plots_are_byte_stable() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        assert_eq!(code(&quadric(&["plot-trefoil", "--out", d.path().to_str().unwrap()])), 0);
    }
    for p in &PROJECTIONS {
        let x = std::fs::read(a.path().join(p.file)).unwrap();
        let y = std::fs::read(b.path().join(p.file)).unwrap();
        assert!(!x.is_empty());
        assert_eq!(x, y, "{}", p.file);
    }
    // the t = 0 sample of the first projection is (0, -1)
    let first = std::fs::read_to_string(a.path().join(PROJECTIONS[0].file)).unwrap();
    assert_eq!(PROJECTIONS[0].points(plot::DEFAULT_SAMPLES)[300], (0.0, -1.0));
    let (px, py) = PROJECTIONS[0].to_pixels(plot::DEFAULT_SIZE, (0.0, -1.0));
    assert!(first.contains(&format!(" {px},{py} ")));
}

#[test]
fn two_sample_plots_are_valid() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&quadric(&["plot-trefoil", "--out", d.path().to_str().unwrap(), "--samples", "2"])), 0);
    for p in &PROJECTIONS {
        let svg = std::fs::read_to_string(d.path().join(p.file)).unwrap();
        assert!(svg.starts_with("<svg ") && svg.trim_end().ends_with("</svg>"));
        let points = svg.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
        assert_eq!(points.split(' ').count(), 2);
        assert_eq!(svg.matches("<g").count(), svg.matches("</g>").count());
    }
    assert_eq!(code(&quadric(&["plot-trefoil", "--samples", "1"])), 5);
}

#[test]
fn plot_io_errors_exit_6() {
    let d = tempfile::tempdir().unwrap();
    let file = d.path().join("occupied");
    std::fs::write(&file, "").unwrap();
    assert_eq!(code(&quadric(&["plot-trefoil", "--out", file.join("sub").to_str().unwrap()])), 6);
}
