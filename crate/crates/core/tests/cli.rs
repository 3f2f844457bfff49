use std::path::Path;

use qtriang::cli::main_with_args;
use qtriang::interchange::parse;
use serde_json::Value;
use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> (i32, Value) {
    let out = dir.join("out.json");
    let mut argv = vec!["qtriang"];
    argv.extend_from_slice(args);
    argv.extend(["--out", out.to_str().unwrap()]);
    let code = main_with_args(argv);
    let text = std::fs::read_to_string(&out).unwrap_or_default();
    (code, parse(&text).unwrap_or(Value::Null))
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p.to_str().unwrap().to_owned()
}

/// The nontrivial triangular structure on Z2, read back from `classify`.
fn koszul(dir: &Path) -> Value {
    let (code, cat) = run(dir, &["classify", "--group", "Z2", "--triangular"]);
    assert_eq!(code, 0);
    assert_eq!(cat["distinct_rmatrices"], 2);
    assert!(cat["note"].as_str().unwrap().contains("completeness"));
    cat["entries"][1].clone()
}

#[test]
fn classify_finds_the_koszul_rmatrix() {
    let dir = TempDir::new().unwrap();
    let e = koszul(dir.path());
    assert_eq!(e["markov"], 1);
    assert_eq!(e["triangular"], true);
    let coeffs: Vec<String> = e["r"]["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["coeff"]["coeffs"].to_string())
        .collect();
    assert_eq!(coeffs, ["[[1,2]]", "[[1,2]]", "[[1,2]]", "[[-1,2]]"]);
}

#[test]
fn verify_accepts_the_unit_and_rejects_a_corruption() {
    let dir = TempDir::new().unwrap();
    let unit = serde_json::json!({
        "arity": 2, "group": "Z2",
        "terms": [{"coeff": {"coeffs": [[1, 1]], "order": 1}, "tuple": [0, 0]}]
    });
    let path = write(dir.path(), "unit.json", &unit);
    let (code, out) = run(dir.path(), &["verify", "--rmatrix", &path]);
    assert_eq!((code, &out["passed"]), (0, &Value::Bool(true)));

    let mut bad = koszul(dir.path())["r"].clone();
    bad["terms"][3]["coeff"]["coeffs"] = serde_json::json!([[1, 2]]);
    let path = write(dir.path(), "bad.json", &bad);
    let (code, out) = run(dir.path(), &["verify", "--rmatrix", &path]);
    assert_eq!(code, 1);
    assert_eq!(out["error"]["kind"], "check");
    let failed: Vec<&Value> = out["verification"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().any(|c| !c["witness"].is_null()));
}

#[test]
fn datum_commands_pass_on_koszul() {
    let dir = TempDir::new().unwrap();
    let datum = write(dir.path(), "d.json", &koszul(dir.path())["datum"]);
    let cases: [&[&str]; 5] = [
        &["markov", "--datum", &datum],
        &["koszul-twist", "--datum", &datum],
        &["lambda", "--datum", &datum, "--n", "3"],
        &["exterior", "--datum", &datum, "--n", "3"],
        &["adams", "--datum", &datum, "--n", "2", "--p", "2"],
    ];
    for args in cases {
        let (code, out) = run(dir.path(), args);
        assert_eq!(code, 0, "{args:?}: {out}");
    }
    let (_, out) = run(dir.path(), &["markov", "--datum", &datum]);
    assert_eq!(
        (&out["element"], &out["markov_equation"]),
        (&Value::from(1), &Value::Bool(true))
    );
}

#[test]
fn adams_on_a_supplied_character() {
    let dir = TempDir::new().unwrap();
    // sign character of Z2, twisted by u = 1 at k = 2: ψ(χ)(g) = χ(u³g²) = -1
    let chi = serde_json::json!({
        "group": "Z2", "classes": [0, 1],
        "values": [{"coeffs": [[1, 1]], "order": 1}, {"coeffs": [[-1, 1]], "order": 1}]
    });
    let path = write(dir.path(), "chi.json", &chi);
    let (code, out) = run(
        dir.path(),
        &["adams", "--group", "Z2", "--u", "1", "--n", "2", "--character", &path],
    );
    assert_eq!(code, 0);
    let vals = &out["results"][0]["adams"]["values"];
    assert_eq!(vals[0]["coeffs"].to_string(), "[[-1,1]]");
    assert_eq!(vals[1]["coeffs"].to_string(), "[[-1,1]]");
}

#[test]
fn bad_input_exits_with_parse_status() {
    let dir = TempDir::new().unwrap();
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{not json").unwrap();
    let (code, out) = run(dir.path(), &["verify", "--rmatrix", garbage.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(out["error"]["kind"], "parse");
    assert_eq!(run(dir.path(), &["classify", "--group", "NoSuchGroup"]).0, 2);
    assert_eq!(main_with_args(["qtriang", "frobnicate"]), 2);
}

#[test]
fn invariant_violations_exit_with_status_three() {
    let dir = TempDir::new().unwrap();
    // twisted Adams operations need a central involution; 1 has order 4 in Z4
    let (code, out) = run(dir.path(), &["adams", "--group", "Z4", "--u", "1"]);
    assert_eq!(code, 3, "{out}");
    assert_eq!(out["error"]["kind"], "invariant");
}
