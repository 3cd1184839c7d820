use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_fewnomial"));
    c.env_remove("FEWNOMIAL_PRECISION_CEILING");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}\n{}", String::from_utf8_lossy(&o.stdout), String::from_utf8_lossy(&o.stderr))
    })
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = root().join("schemas").join(format!("{name}.schema.json"));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&doc).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn assert_valid(name: &str, v: &Value) {
    let s = schema(name);
    if let Err(errors) = s.validate(v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{name} schema rejects output: {msgs:?}");
    };
}

#[test]
fn fixtures_match_their_expectations() {
    let fixtures = root().join("fixtures");
    let index: Value = serde_json::from_str(&std::fs::read_to_string(fixtures.join("index.json")).unwrap()).unwrap();
    let entries = index.as_array().unwrap();
    assert!(entries.len() >= 15);
    for e in entries {
        let name = e["name"].as_str().unwrap();
        let args: Vec<String> = e["args"]
            .as_array()
            .unwrap()
            .iter()
            .map(|a| a.as_str().unwrap().replace("{fixtures}", fixtures.to_str().unwrap()))
            .collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = run(&args);
        assert_eq!(code(&out) as i64, e["exit"].as_i64().unwrap(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        let json = stdout_json(&out);
        assert_valid(e["schema"].as_str().unwrap(), &json);
        for (ptr, want) in e["expect"].as_object().unwrap() {
            if ptr == "@golden" {
                let golden = std::fs::read(fixtures.join(want.as_str().unwrap())).unwrap();
                assert_eq!(out.stdout, golden, "{name}: output differs from the golden file");
                continue;
            }
            assert_eq!(json.pointer(ptr), Some(want), "{name}: {ptr}");
        }
    }
}

#[test]
fn spec_examples() {
    let out = run(&["lemma-tri", "--n", "5"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["facets"].as_array().unwrap().len(), 6);
    assert_eq!(v["mixed_volume"], "6");

    let out = run(&["verify-family", "--n", "4", "--field", "R", "--eps", "1/4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["certified"], 5);

    let input = r#"{"n":2,"supports":[[[0,0],[2,0],[1,1]],[[0,0],[2,0],[0,1]]],"liftings":[["1","0","0"],["0","1","0"]]}"#;
    let out = run(&["mixed-volume", "--input", input]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["mixed_volume"], "3");
}

#[test]
fn output_does_not_depend_on_jobs() {
    let one = run(&["verify-family", "--n", "2..7", "--jobs", "1"]);
    let four = run(&["verify-family", "--n", "2..7", "--jobs", "4"]);
    let again = run(&["verify-family", "--n", "2..7", "--jobs", "4"]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(four.stdout, again.stdout);
    let v = stdout_json(&one);
    assert_valid("verify-family", &v);
    let counts: Vec<i64> = v.as_array().unwrap().iter().map(|r| r["certified"].as_i64().unwrap()).collect();
    assert_eq!(counts, (3..=8).collect::<Vec<i64>>());

    let a = run(&["lemma-tri", "--n", "2..5", "--jobs", "3"]);
    let b = run(&["lemma-tri", "--n", "2..5"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    // input errors
    for args in [
        &["verify-family", "--n", "3", "--field", "Qp"][..],
        &["verify-family", "--n", "3", "--field", "C"],
        &["mixed-volume", "--input", "{not json"],
        &["mixed-volume", "--input", "/nonexistent/file.json"],
        &["no-such-command"],
        &["poonen-rk", "--p", "4", "--k", "2"],
    ] {
        assert_eq!(code(&run(args)), 3, "{args:?}");
    }
    // guardrails
    assert_eq!(code(&run(&["slp-roots", "--n", "20", "--k", "1", "--p", "2"])), 4);
    let out = bin()
        .env("FEWNOMIAL_PRECISION_CEILING", "32")
        .args(["verify-family", "--n", "3", "--field", "Qp", "--p", "2", "--precision", "64"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 4);
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_valid("error", &err);
    // undecided: the ceiling stops the precision doubling
    let out = bin()
        .env("FEWNOMIAL_PRECISION_CEILING", "4")
        .args(["verify-family", "--n", "6", "--field", "Qp", "--p", "2", "--precision", "4"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert_eq!(stdout_json(&out)["status"], "undecided");
    // refuted
    assert_eq!(code(&run(&["poonen-rk", "--p", "2", "--k", "2", "--variant", "printed"])), 1);
    // help is not an error
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn svg_output() {
    let dir = std::env::temp_dir().join(format!("fewnomial-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let fixtures = root().join("fixtures");
    let svg = dir.join("cells.svg");
    let json = dir.join("cells.json");
    let out = run(&[
        "mixed-cells",
        "--input",
        fixtures.join("planar-mixed-subdivision.json").to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
        "--out",
        json.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.contains("version=\"1.1\""));
    assert_eq!(text.matches("class=\"mixed-cell\"").count(), 3);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["mixed_cells"].as_array().unwrap().len(), 3);

    let out = run(&[
        "viro-svg",
        "--input",
        fixtures.join("viro-triangle-all-plus.json").to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("class=\"hull\"").count(), 1);
    assert!(!text.contains("class=\"viro\""));

    let out = run(&[
        "triangulate",
        "--input",
        fixtures.join("pentagon-lifted.json").to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);

    // three-dimensional input has no rendering
    let input = r#"{"n":3,"supports":[[[0,0,0],[1,0,0]],[[0,0,0],[0,1,0]],[[0,0,0],[0,0,1]]]}"#;
    let out = run(&["mixed-cells", "--input", input, "--svg", svg.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    // a command without a rendering
    let out = run(&["lemma-tri", "--n", "2", "--svg", svg.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn padic_count_phase_argument() {
    // 2x - 1 over Q_3: the root 1/2 has phase 2
    let sys = r#"{"field":{"field":"Qp","p":3,"precision":32},"n":1,"polys":[{"terms":[{"exp":[1],"coeff":"2"},{"exp":[0],"coeff":"-1"}]}]}"#;
    let v = stdout_json(&run(&["padic-count", "--input", sys]));
    assert_eq!(v["total"], 0);
    let v = stdout_json(&run(&["padic-count", "--input", sys, "--theta", "2"]));
    assert_eq!(v["total"], 1);
    assert_valid("padic-count", &v);
    // real systems are refused
    let real = r#"{"field":{"field":"R"},"n":1,"polys":[{"terms":[{"exp":[1],"coeff":"1"},{"exp":[0],"coeff":"-1"}]}]}"#;
    assert_eq!(code(&run(&["padic-count", "--input", real])), 3);
}

#[test]
fn generated_systems_round_trip() {
    for args in [
        &["gen-extremal", "--n", "3", "--field", "Qp", "--p", "5", "--eps", "5"][..],
        &["gen-extremal", "--n", "3", "--field", "Fpt", "--p", "3"],
        &["gen-extremal", "--n", "4", "--k", "3", "--field", "Qp", "--p", "2", "--eps", "2"],
    ] {
        let out = run(args);
        assert_eq!(code(&out), 0, "{args:?}");
        let v = stdout_json(&out);
        assert_valid("gen-extremal", &v);
        let text = String::from_utf8(out.stdout).unwrap();
        let counted = run(&["padic-count", "--input", &text]);
        assert!(matches!(code(&counted), 0 | 2), "{args:?}");
        assert_valid("padic-count", &stdout_json(&counted));
    }
}
