use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_matroot");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("MATROOT_NODE_LIMIT")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn validate(schema_file: &str, doc: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs/schemas")
        .join(schema_file);
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema_file}: {errors:?}");
}

fn json_out(out: &Output, schema_file: &str) -> Value {
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    validate(schema_file, &doc);
    doc
}

const UNIPOTENT_F5: &str = r#"{"ring":{"Fp":5},"rows":[[1,1],[0,1]]}"#;
const WORKED: &str = r#"{"ring":"Z","rows":[[1,2,1],[0,1,2],[0,0,1]]}"#;

#[test]
fn root_finds_cube_root() {
    let out = run(&["root", "--prime", "5", "--n", "3", "--matrix", UNIPOTENT_F5]);
    assert_eq!(code(&out), 0);
    let doc = json_out(&out, "root_solution.schema.json");
    let roots = doc["solution"]["roots"].as_array().unwrap();
    assert!(roots
        .iter()
        .any(|r| r["matrix"] == serde_json::json!([[1, 2], [0, 1]]) && r["verified"] == true));
}

#[test]
fn root_higher_degree_and_no_root() {
    let out = run(&["root", "--prime", "5", "--n", "4", "--matrix", UNIPOTENT_F5]);
    json_out(&out, "root_solution.schema.json");
    assert!(matches!(code(&out), 0 | 3));
    // [[0,1],[1,0]]^2 = E, so its cube is itself; [[0,2],[0,0]] is nilpotent and not a cube of anything.
    let out = run(&[
        "root",
        "--prime",
        "5",
        "--n",
        "3",
        "--matrix",
        r#"{"ring":{"Fp":5},"rows":[[0,2],[0,0]]}"#,
    ]);
    assert_eq!(code(&out), 3);
    assert_eq!(
        json_out(&out, "root_solution.schema.json")["solution"]["kind"],
        "empty"
    );
}

#[test]
fn root_scalar_families() {
    for m in [
        r#"{"ring":{"Fp":5},"rows":[[0,0],[0,0]]}"#,
        r#"{"ring":{"Fp":5},"rows":[[1,0],[0,1]]}"#,
    ] {
        let out = run(&["root", "--prime", "5", "--n", "3", "--matrix", m]);
        assert_eq!(code(&out), 0);
        json_out(&out, "root_solution.schema.json");
    }
}

#[test]
fn root_input_errors() {
    let scalar = r#"{"ring":{"Fp":5},"rows":[[2,0],[0,2]]}"#;
    let out = run(&["root", "--prime", "5", "--n", "4", "--matrix", scalar]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("scalar matrix"));
    assert_eq!(
        code(&run(&[
            "root",
            "--prime",
            "5",
            "--n",
            "1",
            "--matrix",
            UNIPOTENT_F5
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "root",
            "--prime",
            "7",
            "--n",
            "3",
            "--matrix",
            UNIPOTENT_F5
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "root",
            "--prime",
            "5",
            "--n",
            "3",
            "--matrix",
            "{not json"
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "root",
            "--prime",
            "5",
            "--n",
            "3",
            "--matrix",
            "/nonexistent/m.json"
        ])),
        2
    );
    assert_eq!(code(&run(&["root", "--prime", "5", "--n", "3"])), 2);
}

#[test]
fn matrix_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.json");
    std::fs::write(&path, WORKED).unwrap();
    let out = run(&["sqrt-sl3z", "--matrix", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
}

#[test]
fn sqrt_sl3z_worked_example() {
    let out = run(&["sqrt-sl3z", "--matrix", WORKED]);
    assert_eq!(code(&out), 0);
    let doc = json_out(&out, "sqrt_output.schema.json");
    assert_eq!(
        doc["roots"],
        serde_json::json!([[[1, 1, 0], [0, 1, 1], [0, 0, 1]]])
    );
    let recon = doc["reconstructions"].as_array().unwrap();
    assert!(recon
        .iter()
        .any(|r| r["outcome"]["denominator_zero"] == true));
}

#[test]
fn sqrt_sl3z_identity_and_errors() {
    let e = r#"{"ring":"Z","rows":[[1,0,0],[0,1,0],[0,0,1]]}"#;
    let out = run(&["sqrt-sl3z", "--matrix", e]);
    assert_eq!(code(&out), 0);
    let doc = json_out(&out, "sqrt_output.schema.json");
    assert!(doc["roots"]
        .as_array()
        .unwrap()
        .contains(&serde_json::json!([[1, 0, 0], [0, 1, 0], [0, 0, 1]])));
    let neg = r#"{"ring":"Z","rows":[[-1,0,0],[0,1,0],[0,0,1]]}"#;
    assert_eq!(code(&run(&["sqrt-sl3z", "--matrix", neg])), 2);
    let quarter = r#"{"ring":"Z","rows":[[0,-1,0],[1,0,0],[0,0,1]]}"#;
    let out = run(&["sqrt-sl3z", "--matrix", quarter]);
    assert_eq!(code(&out), 3);
    json_out(&out, "sqrt_output.schema.json");
}

#[test]
fn sqrt_sl3fp_paths() {
    let worked5 = r#"{"ring":{"Fp":5},"rows":[[1,2,1],[0,1,2],[0,0,1]]}"#;
    let out = run(&["sqrt-sl3fp", "--matrix", worked5]);
    assert_eq!(code(&out), 0);
    json_out(&out, "sqrt_output.schema.json");
    let e2 = r#"{"ring":{"Fp":2},"rows":[[1,0,0],[0,1,0],[0,0,1]]}"#;
    let out = run(&["sqrt-sl3fp", "--matrix", e2]);
    assert_eq!(code(&out), 0);
    json_out(&out, "sqrt_output.schema.json");
    let out = run(&["sqrt-sl3fp", "--universal-f2"]);
    assert_eq!(code(&out), 0);
    let doc = json_out(&out, "universal_f2.schema.json");
    assert_eq!(doc["group_size"], 168);
    validate("verification_report.schema.json", &doc["report"]);
    assert_eq!(
        code(&run(&["sqrt-sl3fp", "--universal-f2", "--matrix", e2])),
        2
    );
    assert_eq!(code(&run(&["sqrt-sl3fp"])), 2);
}

#[test]
fn claims_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["claims", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    json_out(&out, "claims_output.schema.json");
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    validate("verification_report.schema.json", &report);
    assert_eq!(report["summary"]["unexpected_failures"], 0);
    let typos: Vec<&Value> = report["claims"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["expected"] == "typo_suspected" && c["verdict"] == "fails")
        .collect();
    assert!(!typos.is_empty());
    assert!(typos.iter().all(|c| !c["lhs_value"].is_null()));
}

#[test]
fn claims_edge_cases() {
    assert_eq!(code(&run(&["claims", "--out", "/nonexistent/x"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.json");
    let out = run(&[
        "claims",
        "--out",
        path.to_str().unwrap(),
        "--empty-registry",
    ]);
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    validate("verification_report.schema.json", &report);
    assert_eq!(report["summary"]["total"], 0);
}

#[test]
fn word_search_outputs() {
    let out = run(&[
        "word-search",
        "--target",
        "t12",
        "--generators",
        "i12,D1",
        "--max-len",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    let doc = json_out(&out, "word_search.schema.json");
    assert_eq!(doc["word"], "i12 D1");
    assert_eq!(doc["verified"], true);

    let target = r#"{"ring":"Z","rows":[[1,0,1],[0,1,0],[0,0,1]]}"#;
    let out = run(&[
        "word-search",
        "--target",
        target,
        "--generators",
        "t12,t23",
        "--max-len",
        "4",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json_out(&out, "word_search.schema.json")["length"], 4);

    let out = run(&[
        "word-search",
        "--target",
        "t13",
        "--generators",
        "t12",
        "--max-len",
        "3",
    ]);
    assert_eq!(code(&out), 3);
    json_out(&out, "word_search.schema.json");

    assert_eq!(
        code(&run(&[
            "word-search",
            "--target",
            "t13",
            "--generators",
            "t12",
            "--max-len",
            "9"
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "word-search",
            "--target",
            "X1",
            "--generators",
            "t12"
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "word-search",
            "--target",
            "t13",
            "--generators",
            "nope"
        ])),
        2
    );
}

#[test]
fn node_limit_override() {
    let out = Command::new(BIN)
        .args([
            "word-search",
            "--target",
            "t13",
            "--generators",
            "t12,t23,M6",
        ])
        .env("MATROOT_NODE_LIMIT", "5")
        .output()
        .unwrap();
    assert_eq!(code(&out), 4);
    let out = Command::new(BIN)
        .args(["word-search", "--target", "t13", "--generators", "t12"])
        .env("MATROOT_NODE_LIMIT", "many")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn oracle_sweeps() {
    for (p, n) in [("3", "3"), ("2", "5")] {
        let out = run(&["oracle-sweep", "--prime", p, "--n", n]);
        assert_eq!(code(&out), 0);
        let doc = json_out(&out, "oracle_sweep.schema.json");
        assert_eq!(doc["inclusion_violations"], 0);
    }
    let out = run(&[
        "oracle-sweep",
        "--prime",
        "3",
        "--n",
        "4",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 81 - 3);
    assert_eq!(
        code(&run(&["oracle-sweep", "--prime", "11", "--n", "3"])),
        2
    );
    assert_eq!(code(&run(&["oracle-sweep", "--prime", "7", "--n", "4"])), 2);
    assert_eq!(code(&run(&["oracle-sweep", "--prime", "3", "--n", "2"])), 2);
}

#[test]
fn member_checks() {
    let m6 = r#"{"ring":"Z","rows":[[0,1,0],[0,0,1],[-1,0,0]]}"#;
    let out = run(&["member", "--matrix", m6]);
    assert_eq!(code(&out), 0);
    let doc = json_out(&out, "member.schema.json");
    assert_eq!(doc["member"], true);
    assert_eq!(doc["det"], -1);
    let two = r#"{"ring":"Z","rows":[[2,0,0],[0,1,0],[0,0,1]]}"#;
    assert_eq!(
        json_out(&run(&["member", "--matrix", two]), "member.schema.json")["member"],
        false
    );
    assert_eq!(code(&run(&["member", "--matrix", UNIPOTENT_F5])), 2);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["oracle-sweep", "--prime", "3", "--n", "3"],
        vec!["sqrt-sl3z", "--matrix", WORKED],
        vec![
            "root",
            "--prime",
            "5",
            "--n",
            "3",
            "--matrix",
            r#"{"ring":{"Fp":5},"rows":[[1,0],[0,1]]}"#,
        ],
        vec!["sqrt-sl3fp", "--universal-f2"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let dir = tempfile::tempdir().unwrap();
    let (p1, p2) = (dir.path().join("a.json"), dir.path().join("b.json"));
    run(&["claims", "--out", p1.to_str().unwrap()]);
    run(&["claims", "--out", p2.to_str().unwrap()]);
    assert_eq!(std::fs::read(p1).unwrap(), std::fs::read(p2).unwrap());
}

#[test]
fn matrix_schema_accepts_library_json() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas/matrix.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    for text in [WORKED, UNIPOTENT_F5] {
        assert!(validator.is_valid(&serde_json::from_str::<Value>(text).unwrap()));
    }
    assert!(!validator.is_valid(&serde_json::json!({"ring": "Q", "rows": [[1]]})));
}
