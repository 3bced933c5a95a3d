//! End-to-end checks of the installed binary: subcommand wiring, exit
//! statuses, byte-for-byte determinism, and document round-trips.

use std::process::{Command, Output};

fn qtoric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtoric"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn qtoric_stdin(args: &[&str], stdin: &str) -> Output {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_qtoric"))
        .args(args)
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary finishes")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn example(name: &str) -> String {
    let out = qtoric(&["examples", name]);
    assert!(out.status.success(), "examples {name} failed");
    stdout(&out)
}

#[test]
fn examples_emit_valid_documents() {
    for name in ["blp-cxp1", "cp2", "c2", "conifold-resolution"] {
        let doc = example(name);
        let parsed = qtoric::cli::parse_fan_document(&doc).unwrap();
        assert_eq!(parsed.name.as_deref(), Some(name));
    }
    let out = qtoric(&["examples", "o(-k)-cpm", "--k", "2", "--m", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("o(-2)-cp2"));
    let out = qtoric(&["examples"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("blp-cxp1"));
}

#[test]
fn symplectic_pipeline_through_stdin() {
    let doc = example("blp-cxp1");
    let out = qtoric_stdin(&["symplectic", "--fan", "-", "--v", "1,1"], &doc);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("dim: 0"));
    assert!(text.contains("route_agreement: true"));
}

#[test]
fn quantum_golden_fragment() {
    let doc = example("cp2");
    let out = qtoric_stdin(&["quantum", "--fan", "-"], &doc);
    assert!(out.status.success());
    assert!(stdout(&out).contains("x1^3 - T^3"));
}

#[test]
fn rescale_golden() {
    let out = qtoric(&[
        "rescale",
        "--weights",
        "1,2;2,1;1,1",
        "--v",
        "1,1",
        "--vp",
        "1,0",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("k: 3/2"));
    assert!(text.contains("psi_exponents_v: [2,2,3]"));
}

#[test]
fn exit_statuses() {
    // input error
    let out = qtoric(&["quantum"]);
    assert_eq!(out.status.code(), Some(1));
    // domain error with a stable error name
    let doc = example("blp-cxp1");
    let out = qtoric_stdin(&["symplectic", "--fan", "-", "--v", "0,1"], &doc);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("NotContracting"));
    // malformed document
    let out = qtoric_stdin(&["validate", "--fan", "-"], "{\"rank\": 2");
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("SyntaxError"));
}

#[test]
fn byte_determinism() {
    let doc = example("conifold-resolution");
    let first = qtoric_stdin(&["equivariant", "--fan", "-", "--v", "1,1,2", "--json"], &doc);
    let second = qtoric_stdin(&["equivariant", "--fan", "-", "--v", "1,1,2", "--json"], &doc);
    assert!(first.status.success(), "stderr: {}", stderr(&first));
    assert_eq!(first.stdout, second.stdout);
    // example emission is also byte-stable
    assert_eq!(example("blp-cxp1"), example("blp-cxp1"));
}

#[test]
fn every_subcommand_answers_on_blp() {
    let doc = example("blp-cxp1");
    let cases: Vec<Vec<&str>> = vec![
        vec!["validate", "--fan", "-"],
        vec!["classify", "--fan", "-"],
        vec!["cohomology", "--fan", "-"],
        vec!["quantum", "--fan", "-"],
        vec!["symplectic", "--fan", "-", "--v", "1,1"],
        vec!["jacobian", "--fan", "-"],
        vec!["equivariant", "--fan", "-", "--v", "1,1"],
        vec!["fixed-loci", "--fan", "-", "--v", "1,0"],
        vec!["core", "--fan", "-"],
        vec!["morse-bott", "--fan", "-", "--v", "1,2"],
        vec!["rotation", "--fan", "-", "--v", "1,2"],
        vec!["a-function", "--fan", "-", "--vs", "1,0;0,1"],
        vec!["rescale", "--fan", "-", "--v", "1,1", "--vp", "2,1"],
        vec![
            "filtration", "--fan", "-", "--v", "1,1", "--vp", "1,2", "--p", "1", "--pp", "1",
        ],
        vec!["hilbert-basis", "--fan", "-", "--v", "1,1"],
        vec!["vertices", "--fan", "-"],
    ];
    for args in cases {
        let out = qtoric_stdin(&args, &doc);
        assert!(
            out.status.success(),
            "{args:?} failed: {}",
            stderr(&out)
        );
    }
}

#[test]
fn lambda_defaults_to_fano_normalization() {
    // Drop lambda from the Fano example: quantum still works with -1.
    let doc = example("blp-cxp1");
    let mut parsed: serde_json::Value = serde_json::from_str(&doc).unwrap();
    parsed.as_object_mut().unwrap().remove("lambda");
    let out = qtoric_stdin(&["quantum", "--fan", "-"], &parsed.to_string());
    assert!(out.status.success());
    assert!(stdout(&out).contains("FanoMonotone"));

    // The Calabi-Yau conifold cannot default: lambda is required.
    let doc = example("conifold-resolution");
    let mut parsed: serde_json::Value = serde_json::from_str(&doc).unwrap();
    parsed.as_object_mut().unwrap().remove("lambda");
    let out = qtoric_stdin(&["quantum", "--fan", "-"], &parsed.to_string());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("LambdaRequired"));
}

#[test]
fn report_json_round_trips() {
    let doc = example("blp-cxp1");
    let out = qtoric_stdin(&["filtration", "--fan", "-", "--v", "1,1", "--json"], &doc);
    assert!(out.status.success());
    let report: qtoric::cli::Report = serde_json::from_str(&stdout(&out)).unwrap();
    let rendered = serde_json::to_string_pretty(&report).unwrap();
    let report2: qtoric::cli::Report = serde_json::from_str(&rendered).unwrap();
    assert_eq!(report, report2);
    assert_eq!(report.results["chain_dims"], serde_json::json!([3, 1, 0]));
    assert_eq!(report.results["n_v"], serde_json::json!(2));
}
