use std::process::Command;

use proptest::prelude::*;
use serde_json::{json, Value};

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_henselian"))
        .arg("--json")
        .args(args)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let doc = stdout
        .lines()
        .next()
        .map(|l| serde_json::from_str(l).expect("stdout is JSON"))
        .unwrap_or(Value::Null);
    (out.status.code().unwrap(), doc)
}

fn ok(args: &[&str]) -> Value {
    let (code, doc) = run(args);
    assert_eq!(code, 0, "{:?} -> {}", args, doc);
    doc
}

#[test]
fn hensel_root_example() {
    let doc = ok(&["hensel", "root", "--ring", "PadicTrunc:7:3", "--poly", "[-7,1,1]"]);
    assert_eq!(doc["result"], json!({ "root": 301 }));
}

#[test]
fn ring_split_example() {
    let doc = ok(&["ring", "split", "--ring", "Zloc:5", "--elem", "[10,1]"]);
    assert_eq!(doc["result"], json!({ "branch": "radical" }));
}

#[test]
fn uda_rank_example() {
    let doc = ok(&["uda", "build", "--ring", "Q", "--poly", "[-1,0,0,1]"]);
    assert_eq!(doc["result"]["rank"], 6);
    assert_eq!(doc["result"]["basis"].as_array().unwrap().len(), 6);
}

#[test]
fn lift_fact_reports_route() {
    let doc = ok(&[
        "hensel", "lift-fact", "--ring", "PadicTrunc:7:3", "--poly", "[-2,0,1]", "--g0", "[-3,1]",
        "--h0", "[-4,1]",
    ]);
    assert_eq!(doc["route"], "uda");
    assert_eq!(doc["result"]["h"], json!([108, 1]));
    let doc = ok(&[
        "hensel", "lift-fact", "--ring", "PadicTrunc:7:3", "--poly", "[-2,0,1]", "--g0", "[-3,1]",
        "--h0", "[-4,1]", "--route", "quadratic",
    ]);
    assert_eq!(doc["route"], "quadratic");
    assert_eq!(doc["result"]["h"], json!([108, 1]));
}

#[test]
fn lifting_commands_always_report_checks() {
    let cases: &[&[&str]] = &[
        &["hensel", "root", "--ring", "PadicTrunc:7:3", "--poly", "[-7,1,1]"],
        &["hensel", "root", "--ring", "PadicTrunc:7:3", "--poly", "[-7,1,3]"],
        &["hensel", "root", "--ring", "PadicTrunc:7:3", "--poly", "[-2,0,1]", "--residue", "3"],
        &["hensel", "transform", "--ring", "PadicTrunc:7:3", "--poly", "[-7,1,3]"],
        &[
            "hensel", "lift-fact", "--ring", "PadicTrunc:7:3", "--poly", "[-2,1,7]", "--g0", "[-2,1]",
            "--h0", "[1,7]",
        ],
        &["hensel", "lift-idem", "--algebra", "PadicTrunc:7:3 / [-2,0,1]", "--elem", "[4,6]"],
        &["hensel", "lift-uda-idem", "--ring", "PadicTrunc:5:2", "--poly", "[2,-3,1]", "--elem", "[4,1]"],
        &["hensel", "lift-galois", "--ring", "PadicTrunc:5:2", "--poly", "[2,-3,1]", "--elem", "[4,1]"],
        &["hensel", "decompose", "--algebra", "PadicTrunc:5:3 / [-6,0,0,0,1]"],
        &["idem", "newton", "--ring", "Zmod:36", "--e", "9"],
    ];
    for args in cases {
        let doc = ok(args);
        assert!(!doc["checks"].as_array().unwrap().is_empty(), "{:?}", args);
    }
}

#[test]
fn criterion_nine_through_cli() {
    let doc = ok(&["hensel", "lift-idem", "--algebra", "PadicTrunc:7:3 / [-2,0,1]", "--elem", "[4,6]"]);
    assert_eq!(doc["result"]["idempotent"], json!([172, 27]));
}

#[test]
fn exit_codes() {
    let (code, doc) = run(&["hensel", "root", "--ring", "PadicTrunc:7:3", "--poly", "[1,1,1]"]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["code"], "PreconditionViolated");
    let (code, doc) = run(&["hensel", "root", "--ring", "PadicTrunc:7:3", "--poly", "[-7,1,7]", "--residue", "1"]);
    assert_eq!(code, 2, "{}", doc);
    assert_eq!(doc["error"]["code"], "NotARoot");
    let (code, _) = run(&["ring", "arith", "--ring", "Q", "--op", "neg", "--a", "-3"]);
    assert_eq!(code, 0);
    assert_eq!(run(&["nonsense"]).0, 64);
    assert_eq!(run(&["ring", "split", "--ring", "Zloc:6", "--elem", "1"]).0, 64);
    assert_eq!(run(&["ring", "split", "--ring", "Zloc:5", "--elem", "[1,"]).0, 64);
    assert_eq!(run(&["ring", "arith", "--ring", "Q", "--op", "add", "--a", "1"]).0, 64);
}

#[test]
fn tower_session_flow() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tower.json");
    let s = path.to_str().unwrap();
    ok(&["tower", "new", "--ring", "Zloc:5", "--session", s]);
    let doc = ok(&["tower", "adjoin-root", "--poly", "[-5,1,1]", "--session", s]);
    assert!(!doc["checks"].as_array().unwrap().is_empty());
    let root = doc["result"]["root"].to_string();
    let doc = ok(&["tower", "eval", "--elem", &root, "--precision", "3", "--session", s]);
    assert_eq!(doc["result"]["value"], 105);
    let doc = ok(&["tower", "eval", "--elem", &root, "--target", "PadicTrunc:5:6", "--session", s]);
    let v = doc["result"]["value"].as_u64().unwrap();
    assert_eq!((v * v + v) % 15625, 5);
    let doc = ok(&["tower", "eq", &root, r#"{"num":[0,1],"den":[1]}"#, "--session", s]);
    assert_eq!(doc["result"]["equal"], true);
    let doc = ok(&["tower", "split", "--elem", &root, "--session", s]);
    assert_eq!(doc["result"]["branch"], "radical");

    let doc = ok(&["tower", "adjoin-ext", "--poly", "[-2,0,1]", "--session", s]);
    assert_eq!(doc["result"]["residue_field"], "Fq:5:[2,0,1]");
    let u = doc["result"]["root"].to_string();
    let doc = ok(&["tower", "eval", "--elem", &u, "--precision", "4", "--session", s]);
    assert!(!doc["checks"].as_array().unwrap().is_empty());
    let doc = ok(&["tower", "show", "--session", s]);
    assert_eq!(doc["result"]["rank"], 4);
    assert_eq!(doc["result"]["depth"], 2);

    let (code, _) = run(&["tower", "show", "--session", dir.path().join("missing").to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn factor_is_reproducible_given_seed() {
    let args = ["poly", "factor", "--ring", "Fp:7", "--f", "[1,0,0,0,0,0,0,0,1]", "--seed", "11"];
    let a = ok(&args);
    assert_eq!(a, ok(&args));
    assert!(!a["result"]["factors"].as_array().unwrap().is_empty());
}

#[test]
fn algebra_decomposition() {
    let doc = ok(&["alg", "decompose", "--algebra", "Fp:5 / [-1,0,0,0,1]"]);
    assert_eq!(doc["result"]["ranks"], json!([1, 1, 1, 1]));
    let doc = ok(&["alg", "fact-to-idem", "--algebra", "Zloc:3 / [-1,0,1]", "--g", "[-1,1]", "--h", "[1,1]"]);
    let e = doc["result"]["idempotent"].to_string();
    let doc = ok(&["alg", "idem-to-fact", "--algebra", "Zloc:3 / [-1,0,1]", "--elem", &e]);
    assert_eq!(doc["result"]["g"], json!([-1, 1]));
    assert_eq!(doc["result"]["h"], json!([1, 1]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Printed elements re-parse to the same canonical value.
    #[test]
    fn printed_values_reparse(num in -500i64..500, den in 1i64..60) {
        prop_assume!(den % 5 != 0);
        let elem = format!("[{},{}]", num, den);
        let first = ok(&["ring", "arith", "--ring", "Zloc:5", "--op", "add", "--a", &elem, "--b", "0"]);
        let printed = first["result"]["value"].to_string();
        let again = ok(&["ring", "arith", "--ring", "Zloc:5", "--op", "add", "--a", &printed, "--b", "0"]);
        prop_assert_eq!(&first["result"], &again["result"]);
        let doc = ok(&["ring", "split", "--ring", "Zloc:5", "--elem", &printed]);
        if doc["result"]["branch"] == "unit" {
            let inv = doc["result"]["inverse"].to_string();
            let back = ok(&["ring", "split", "--ring", "Zloc:5", "--elem", &inv]);
            prop_assert_eq!(&back["result"]["inverse"], &first["result"]["value"]);
        }
    }

    #[test]
    fn padic_values_reparse(a in 0u64..343, b in 0u64..343) {
        let (a, b) = (a.to_string(), b.to_string());
        let doc = ok(&["ring", "arith", "--ring", "PadicTrunc:7:3", "--op", "mul", "--a", &a, "--b", &b]);
        let v = doc["result"]["value"].clone();
        let again = ok(&["ring", "arith", "--ring", "PadicTrunc:7:3", "--op", "add", "--a", &v.to_string(), "--b", "0"]);
        prop_assert_eq!(&again["result"]["value"], &v);
    }
}
