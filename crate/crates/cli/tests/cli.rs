use std::process::{Command, Output};

use cone_green::algebra::Gq;
use serde_json::Value;

const CUBIC: &str = "d^3 + t^-1 * d^2";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cone-green"))
        .args(args)
        .env_remove("CONE_GREEN_MAX_DEPTH")
        .output()
        .expect("binary runs")
}

fn json(out: &[u8]) -> Value {
    serde_json::from_slice(out).expect("valid json")
}

fn gq(v: &Value) -> Gq {
    v.as_str().unwrap().parse().unwrap()
}

#[test]
fn cubic_green_formula() {
    let out = run(&["green", "--expr", CUBIC, "--delta", "-1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json(&out.stdout);
    assert_eq!(doc["schema"], "cone-green/1");
    assert_eq!(doc["command"], "green");
    assert_eq!(
        doc["result"]["text"],
        "[u,v]_A = −αδ\u{304} + β_0γ\u{304}_0 + β_0γ\u{304}_1 − β_1γ\u{304}_0"
    );
    assert_eq!(doc["result"]["report"]["verified"], true);
    assert_eq!(doc["result"]["report"]["tau"], serde_json::json!([1, 0]));
}

#[test]
fn second_order_inverse_table() {
    let (a, b) = (Gq::ratio(3, 2), Gq::complex(-2, 1, 1, 1));
    let out = run(&[
        "invert", "--expr", "d^2 + a*d + b", "--param", "a=3/2", "--param", "b=-2+i",
        "--terms", "5",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json(&out.stdout);
    let terms = doc["result"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 5);
    let mut pi = vec![Gq::one(), a.clone()];
    for j in 2..5 {
        let next = &(&a * &pi[j - 1]) - &(&b * &pi[j - 2]);
        pi.push(next);
    }
    let fact = |n: i64| (1..=n).fold(Gq::one(), |acc, k| &acc * &Gq::int(k));
    for (k, term) in terms.iter().enumerate() {
        let k = k as i64;
        let res = term["residues"].as_array().unwrap();
        assert_eq!(res.len() as i64, k + 2, "term {k}");
        for r in res {
            let l = gq(&r["point"]).to_i64().unwrap();
            assert!((-1..=k).contains(&l));
            let sign = if (k - l) % 2 == 0 { Gq::one() } else { Gq::int(-1) };
            let want = &(&sign * &pi[k as usize]) / &(&fact(k - l) * &fact(l + 1));
            assert_eq!(gq(&r["residue"][0][0]), want, "k={k} l={l}");
        }
    }
}

#[test]
fn constant_operator_has_one_symbol() {
    let out = run(&["symbols", "--expr", "5"]);
    assert!(out.status.success());
    let doc = json(&out.stdout);
    let terms = doc["result"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["symbol"]["text"], "5");
    assert_eq!(doc["result"]["mu"], 0);
}

#[test]
fn parse_error_exit_code() {
    let out = run(&["symbols", "--expr", "d +"]);
    assert_eq!(out.status.code(), Some(2));
    let err = json(&out.stderr);
    assert_eq!(err["error"]["kind"], "parse_error");
    assert_eq!(err["error"]["line"], 1);
    assert_eq!(err["error"]["column"], 3);
}

#[test]
fn error_codes() {
    let weight_line = run(&["green", "--expr", CUBIC, "--delta", "1/2"]);
    assert_eq!(weight_line.status.code(), Some(3));
    let unbound = run(&["symbols", "--expr", "d + a"]);
    assert_eq!(unbound.status.code(), Some(2));
    let usage = run(&["symbols"]);
    assert_eq!(usage.status.code(), Some(9));
    let depth = run(&["basis", "--expr", CUBIC, "--delta", "-1", "--depth", "100"]);
    assert_eq!(depth.status.code(), Some(9));
}

#[test]
fn verify_all_suites() {
    let out = run(&["verify", "--expr", CUBIC, "--delta", "-1", "--suite", "all"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json(&out.stdout);
    let names: Vec<&str> = doc["result"]["suites"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["suite"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["global", "green", "local"]);
    assert_eq!(doc["result"]["passed"], true);
}

#[test]
fn operator_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("cone-green-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = run(&["symbols", "--expr", CUBIC]);
    let doc = json(&out.stdout);
    let op = dir.join("op.json");
    std::fs::write(&op, doc["result"]["operator"].to_string()).unwrap();
    let target = dir.join("green.json");
    let again = run(&[
        "green", "--operator", op.to_str().unwrap(), "--delta", "-1", "--out",
        target.to_str().unwrap(),
    ]);
    assert!(again.status.success(), "{}", String::from_utf8_lossy(&again.stderr));
    let direct = run(&["green", "--expr", CUBIC, "--delta", "-1"]);
    assert_eq!(std::fs::read(&target).unwrap(), direct.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_byte_stable() {
    for args in [
        &["verify", "--expr", CUBIC, "--delta", "-1"][..],
        &["basis", "--expr", "d^2 + a*d + b", "--param", "a=3/2", "--param", "b=1", "--delta", "0"][..],
    ] {
        let first = run(args);
        let second = run(args);
        assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
        assert_eq!(first.stdout, second.stdout);
    }
}
