use levelrank_cli::{run, Outcome};
use serde_json::Value;

fn levelrank(args: &[&str]) -> Outcome {
    run(std::iter::once("levelrank").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let out = levelrank(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn error_code(out: &Outcome) -> String {
    let v: Value = serde_json::from_str(out.stderr.trim()).unwrap();
    assert_eq!(out.stderr.trim().lines().count(), 1);
    v["error"]["code"].as_str().unwrap().to_string()
}

fn approx(v: &Value, re: f64, im: f64) -> bool {
    (v[0].as_f64().unwrap() - re).abs() < 1e-9 && (v[1].as_f64().unwrap() - im).abs() < 1e-9
}

#[test]
fn smatrix_reports_residuals() {
    let v = json(&["smatrix", "--n", "2", "--k", "2"]);
    assert_eq!(v["passes"], true);
    assert_eq!(v["labels"].as_array().unwrap().len(), 3);
    let s00 = v["s"][0][0][0].as_f64().unwrap();
    assert!((s00 - 0.5).abs() < 1e-11);
    let csv = levelrank(&["smatrix", "--n", "2", "--k", "1", "--csv"]).stdout;
    assert_eq!(csv.lines().next(), Some("a,b,s_re,s_im"));
    assert_eq!(csv.lines().count(), 5);
}

#[test]
fn fusion_lists_nonzero_channels() {
    let v = json(&["fusion", "--n", "2", "--k", "2"]);
    assert_eq!(v["fusion"].as_array().unwrap().len(), 10);
    assert_eq!(v["passes"], true);
}

#[test]
fn invariant_values() {
    let v = json(&["invariant", "--link", "unknot", "--k", "3", "--colors", "1"]);
    assert!(approx(&v["value"], (1.0 + 5f64.sqrt()) / 2.0, 0.0));
    let v = json(&["invariant", "--link", "whitehead", "--k", "4", "--colors", "1,1"]);
    assert!(approx(&v["value"], 0.0, -3f64.sqrt()));
    let v = json(&["invariant", "--link", "borromean", "--k", "3", "--colors", "1,1,1"]);
    assert!(approx(&v["value"], -0.763932022500, 0.0));
    let v = json(&["invariant", "--link", "hopf", "--n", "3", "--k", "2", "--colors", "1:1"]);
    assert_eq!(v["colors"], serde_json::json!([[1], [1]]));
}

#[test]
fn duality_report_verdicts() {
    let v = json(&["duality-report", "--link", "hopf", "--k", "4", "--colors", "1,1"]);
    assert_eq!(v["verdict"], "duality-holds");
    assert_eq!(v["structure"], "torus");
    let v = json(&["duality-report", "--link", "whitehead", "--k", "3", "--colors", "1,1"]);
    assert_eq!(v["structure"], "hyperbolic");
    assert!(v["residual"].as_f64().unwrap().is_finite());
}

#[test]
fn sixj_modes() {
    let v = json(&["sixj", "--k", "3", "--spins", "1,1,1,1,0,0"]);
    assert!((v["value"].as_f64().unwrap() + 0.61803398875).abs() < 1e-10);
    let v = json(&["sixj", "--k", "3", "--f-matrix", "1,1,1,1"]);
    assert_eq!(v["passes"], true);
    let v = json(&["sixj", "--k", "5", "--frame", "1,1,2,2,1,1"]);
    assert_eq!(v["passes"], true);
    let out = levelrank(&["sixj", "--k", "3", "--n", "3", "--spins", "1,1,1,1,0,0"]);
    assert_eq!(out.code, 2);
    assert_eq!(error_code(&out), "unsupported-theory");
}

#[test]
fn oracle_on_builtin_and_file() {
    let v = json(&["oracle", "--diagram", "hopf", "--k", "3"]);
    assert_eq!(v["components"], 2);
    let path = std::env::temp_dir().join(format!("levelrank-trefoil-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"crossings": [[1,5,2,4],[3,1,4,6],[5,3,6,2]], "components": 1}"#).unwrap();
    let w = json(&["oracle", "--pd", path.to_str().unwrap(), "--k", "3"]);
    let t = json(&["oracle", "--diagram", "trefoil", "--k", "3"]);
    assert_eq!(w["jones"], t["jones"]);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn oversize_diagram_is_rejected() {
    let path = std::env::temp_dir().join(format!("levelrank-big-{}.json", std::process::id()));
    let crossings: Vec<[u32; 4]> = (0..17).map(|i| [2 * i + 1, 2 * i + 2, 2 * i + 2, 2 * i + 1]).collect();
    std::fs::write(&path, serde_json::json!({ "crossings": crossings, "components": 17 }).to_string()).unwrap();
    let out = levelrank(&["oracle", "--pd", path.to_str().unwrap(), "--k", "3"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(out.code, 2);
    assert_eq!(error_code(&out), "oversize-diagram");
}

#[test]
fn coset_and_symmetry() {
    let v = json(&["coset", "--link", "hopf", "--k", "2", "--primaries", "2,1:2,2"]);
    assert_eq!(v["passes"], true);
    let v = json(&["symmetry", "--family", "hopf", "--colors", "2:1,1", "--n", "3", "--k", "3"]);
    assert_eq!(v["passes"], true);
    assert_eq!(v["reports"][0]["sign_exponent"], 4);
    let v = json(&["symmetry", "--family", "unknot", "--colors", "1", "--sweep", "n=2..3,k=2..3"]);
    assert_eq!(v["reports"].as_array().unwrap().len(), 4);
}

#[test]
fn sweep_csv_layout() {
    let out = levelrank(&["sweep", "--link", "hopf", "--n", "2..3", "--k", "2..3", "--csv"]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "n,k,colors,link,value_re,value_im,residual,verdict");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("2,2,1:1,hopf,"));
    assert!(lines[4].starts_with("3,3,"));
}

#[test]
fn sweep_records_point_errors() {
    let out = levelrank(&["sweep", "--link", "unknot", "--n", "2", "--k", "1..2", "--colors", "2", "--csv"]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert!(lines[1].ends_with(",,,,non-integrable-color"), "{}", lines[1]);
    assert!(lines[2].ends_with("duality-holds"));
}

#[test]
fn thread_cap_does_not_change_output() {
    let args = ["sweep", "--link", "633", "--n", "2..3", "--k", "2..4", "--csv"];
    let free = levelrank(&args);
    std::env::set_var(levelrank_cli::THREADS_ENV, "1");
    let capped = levelrank(&args);
    std::env::remove_var(levelrank_cli::THREADS_ENV);
    assert_eq!(free, capped);
}

#[test]
fn domain_errors_have_distinct_codes() {
    let cases: [(&[&str], &str); 5] = [
        (&["invariant", "--link", "nope", "--k", "3", "--colors", "1"], "unknown-link"),
        (&["invariant", "--link", "unknot", "--k", "2", "--colors", "3"], "non-integrable-color"),
        (&["invariant", "--link", "hopf", "--k", "2", "--colors", "1"], "invalid-argument"),
        (&["coset", "--link", "hopf", "--k", "2", "--primaries", "9,1:1,1"], "invalid-representation"),
        (&["smatrix", "--k", "2", "--bogus"], "invalid-argument"),
    ];
    for (args, code) in cases {
        let out = levelrank(args);
        assert_eq!(out.code, 2, "{args:?}");
        assert!(out.stdout.is_empty());
        assert_eq!(error_code(&out), code, "{args:?}");
    }
}

#[test]
fn help_exits_cleanly() {
    let out = levelrank(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("sweep"));
}

#[test]
fn conventions_document() {
    let v = json(&["conventions"]);
    assert!(v["bracket_variable"].as_str().unwrap().contains("A^4 = q"));
}
