use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;
use ztile::cli::run;

fn json(args: &str) -> (i32, Value) {
    let argv = std::iter::once("ztile").chain(std::iter::once("--json")).chain(args.split_whitespace());
    let (code, out) = run(argv);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args}: {e}: {out}"));
    (code, v)
}

fn text(args: &str) -> (i32, String) {
    run(std::iter::once("ztile").chain(args.split_whitespace()))
}

fn bin(args: &[&str], stdin: &str) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ztile"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    let mut s = String::from_utf8(out.stdout).unwrap();
    s.push_str(&String::from_utf8(out.stderr).unwrap());
    (out.status.code().unwrap(), s)
}

#[test]
fn verify_cyclic() {
    let (code, v) = json("verify --modulus 4 --tile 0,1 --complement 0,2");
    assert_eq!((code, &v["status"], &v["payload"]["tiling"]), (0, &"ok".into(), &true.into()));

    let (code, v) = json("verify --modulus 4 --tile 0,1 --complement 0,1");
    assert_eq!(code, 1);
    assert_eq!(v["status"], "violation");
    assert_eq!(v["payload"]["tiling"], false);
    assert_eq!(v["payload"]["witness"]["residue"], 1);
    assert_eq!(v["payload"]["witness"]["count"], 2);
}

#[test]
fn verify_interval() {
    let (code, v) = json("verify --interval 6 --a 0,1 --b 0,2,4");
    assert_eq!((code, v["payload"]["tiling"].clone()), (0, true.into()));
    let (code, _) = json("verify --interval 6 --a 0,1 --b 0,2");
    assert_eq!(code, 1);
}

#[test]
fn period() {
    let (_, v) = json("period --modulus 4 --set 0,2");
    assert_eq!(v["payload"]["least_period"], 2);
    let (_, v) = json("period --modulus 4 --set 0,1");
    assert_eq!(v["payload"]["least_period"], 4);
    let (_, v) = json("period --modulus 1 --set 0");
    assert_eq!(v["payload"]["least_period"], 1);
}

#[test]
fn construct() {
    let (code, v) = json("construct --diameter 388");
    assert_eq!(code, 0);
    let p = &v["payload"];
    assert_eq!((p["mode"].as_str(), p["p"].as_u64(), p["q"].as_u64()), (Some("quadratic"), Some(7), Some(11)));
    assert_eq!(p["M"], 2310);
    assert_eq!(p["least_period"], 2310);
    assert_eq!(p["tile"].as_array().unwrap().len(), 15);
    let keys: Vec<&str> = p.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["D", "p", "q", "M", "tile", "complement", "least_period", "mode"]);

    let (_, v) = json("construct --diameter 10");
    assert_eq!(v["payload"]["mode"], "fallback");
    assert_eq!(v["payload"]["M"], 20);
    assert_eq!(v["payload"]["least_period"], 20);

    let (code, v) = json("construct --diameter 100 --force-quadratic");
    assert_eq!((code, v["status"].as_str()), (2, Some("error")));
}

#[test]
fn certify() {
    let (_, v) = json("certify --tile 0,3");
    let p = &v["payload"];
    assert_eq!(p["s_list"], serde_json::json!([2, 6]));
    assert_eq!((p["t_lcm"].as_u64(), p["t_prod"].as_u64(), p["phi_sum"].as_u64()), (Some(6), Some(12), Some(3)));
    let keys: Vec<&str> = p.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["tile", "s_list", "phi_sum", "t_lcm", "t_prod", "newman_cap"]);

    let (_, v) = json("certify --tile 0,3 --modulus 6");
    assert_eq!(v["payload"]["forced_period"], 6);

    let (_, v) = json("certify --tile 0");
    assert_eq!(v["payload"]["s_list"], serde_json::json!([]));
    assert_eq!(v["payload"]["t_lcm"], 1);

    let (_, v) = json("certify --tile 0,130");
    assert_eq!(v["payload"]["newman_cap"], "overflow");
}

#[test]
fn decompose() {
    let (_, v) = json("decompose --n 6 --a 0,1 --b 0,2,4");
    assert_eq!(v["payload"]["m"], 2);
    let (_, v) = json("decompose --n 6 --a 0,3 --b 0,1,2");
    assert_eq!(v["payload"]["m"], 3);
    assert_eq!(v["payload"]["scaled_side"], "B");
    let keys: Vec<&str> = v["payload"].as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["n", "m", "E", "D", "scaled_side"]);

    let (code, out) = text("decompose --n 1 --a 0 --b 0");
    assert_eq!(code, 2);
    assert!(out.contains("n>1 required"), "{out}");
    let (code, _) = json("decompose --n 6 --a 0,1 --b 0,2");
    assert_eq!(code, 1);
}

#[test]
fn search() {
    let (code, v) = json("search --max-diameter 2");
    assert_eq!(code, 0);
    let rows = v["payload"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1]["value"], 4);
    assert_eq!(rows[1]["tile"], serde_json::json!([0, 2]));
    assert_eq!(v["payload"]["source"], "exhaustive search");

    let (_, v) = json("search --max-diameter 4");
    let row = &v["payload"]["rows"][3];
    assert_eq!((row["value"].as_u64(), row["modulus"].as_u64()), (Some(8), Some(8)));
    assert_eq!(row["tile"], serde_json::json!([0, 4]));
    assert_eq!(row["complement"], serde_json::json!([0, 1, 2, 3]));

    let (code, out) = text("search --max-diameter 50");
    assert_eq!(code, 2);
    assert!(out.contains("guard"), "{out}");

    let (code, out) = text("search --max-diameter 3 --jsonl");
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().filter(|l| l.starts_with('{')).collect();
    assert_eq!(lines.len(), 3);
}

#[test]
fn cyclotomic_and_bounds() {
    let (_, v) = json("cyclotomic 12");
    assert_eq!(v["payload"]["coeffs"], serde_json::json!([1, 0, -1, 0, 1]));
    let (_, v) = json("bounds --diameter 3");
    assert_eq!((v["payload"]["lower"].as_u64(), v["payload"]["max_t_lcm"].as_u64()), (Some(6), Some(6)));
}

#[test]
fn outputs_roundtrip_through_verify() {
    let (_, v) = json("construct --diameter 388");
    let (code, out) = bin(&["--json", "verify", "--from-json", "-"], &v.to_string());
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("\"tiling\":true"), "{out}");

    let (_, v) = json("search --max-diameter 4");
    for row in v["payload"]["rows"].as_array().unwrap() {
        let payload = serde_json::json!({
            "modulus": row["modulus"],
            "tile": row["tile"],
            "complement": row["complement"],
        });
        let (code, out) = bin(&["verify", "--from-json", "-"], &payload.to_string());
        assert_eq!(code, 0, "{out}");
    }

    let (code, _) = bin(&["verify", "--from-json", "-"], r#"{"M": 4, "tile": [0, 1], "complement": [0, 1]}"#);
    assert_eq!(code, 1);
    let (code, _) = bin(&["verify", "--from-json", "-"], "not json");
    assert_eq!(code, 2);
}

#[test]
fn output_is_deterministic() {
    for args in ["search --max-diameter 4", "construct --diameter 572", "certify --tile 0,1,3,4", "bounds --diameter 5"] {
        let first = json(args);
        for _ in 0..3 {
            assert_eq!(json(args), first, "{args}");
        }
        assert_eq!(text(args), text(args));
    }
    let one = bin(&["--json", "search", "--max-diameter", "4", "--jobs", "1"], "");
    let many = bin(&["--json", "search", "--max-diameter", "4", "--jobs", "4"], "");
    assert_eq!(one, many);
}

#[test]
fn exit_codes_from_binary() {
    assert_eq!(bin(&["verify", "--modulus", "4", "--tile", "0,1", "--complement", "0,2"], "").0, 0);
    assert_eq!(bin(&["verify", "--modulus", "4", "--tile", "0,1", "--complement", "0,1"], "").0, 1);
    assert_eq!(bin(&["verify", "--modulus", "0", "--tile", "0", "--complement", "0"], "").0, 2);
    assert_eq!(bin(&["frobnicate"], "").0, 2);
    assert_eq!(bin(&["--help"], "").0, 0);
}
