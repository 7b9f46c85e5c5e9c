//! End-to-end tests of the command-line interface: exit codes, output
//! determinism, and the JSON round-trip re-validation.

use std::path::Path;
use std::process::{Command, Output};

fn hmdist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hmdist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8")
}

#[test]
fn rao_prints_401() {
    let out = hmdist(&["rao", "--a", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("401"));
}

#[test]
fn classify_survivors_json() {
    let out = hmdist(&[
        "classify", "--side", "tangent", "--degree", "2", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["survivors"], serde_json::json!([10, 15]));
    // the rejected degZ=5 candidate carries its filter trail
    let rows = v["result"]["candidates"].as_array().unwrap();
    let five = rows
        .iter()
        .find(|r| r["deg_z"] == serde_json::json!(5))
        .unwrap();
    assert_eq!(
        five["failed_filters"],
        serde_json::json!(["schwarzenberger"])
    );
}

#[test]
fn json_output_is_deterministic() {
    let a = hmdist(&["tables", "hm-tensor", "--format", "json"]);
    let b = hmdist(&["tables", "hm-tensor", "--format", "json"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_table_round_trips_and_revalidates() {
    let out = hmdist(&["tables", "hm", "--format", "json", "--range", "-20..10"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "ok");
    let rows = v["result"]["rows"].as_array().unwrap();
    let chi: Vec<(i128, i128)> = v["result"]["chi_coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            (
                c["num"].as_str().unwrap().parse().unwrap(),
                c["den"].as_str().unwrap().parse().unwrap(),
            )
        })
        .collect();
    let chi_at = |k: i128| -> i128 {
        // exact rational evaluation with integer result
        let mut num = 0i128;
        let mut den = 1i128;
        for (_cn, cd) in &chi {
            den = den * cd / gcd(den, *cd);
        }
        for (i, (cn, cd)) in chi.iter().enumerate() {
            num += cn * (den / cd) * k.pow(i as u32);
        }
        assert_eq!(num % den, 0);
        num / den
    };
    let dual_twist = v["result"]["dual_twist"].as_i64().unwrap() as i128;
    let value = |k: i128, i: usize| -> i128 {
        rows.iter()
            .find(|r| r["k"].as_i64().unwrap() as i128 == k)
            .map(|r| r["h"][i].as_i64().unwrap() as i128)
            .expect("row in range")
    };
    for r in rows {
        let k = r["k"].as_i64().unwrap() as i128;
        let h: Vec<i128> = (0..5)
            .map(|i| r["h"][i].as_i64().unwrap() as i128)
            .collect();
        let alt = h[0] - h[1] + h[2] - h[3] + h[4];
        assert_eq!(alt, chi_at(k), "chi re-validated at k={k}");
        // Serre within the fetched window
        let dual_k = dual_twist - k;
        if (-20..=10).contains(&(dual_k as i64)) {
            for i in 0..5 {
                assert_eq!(h[i], value(dual_k, 4 - i), "Serre re-validated at k={k}");
            }
        }
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn verify_fixture_subcommand() {
    let out = hmdist(&["verify", "fixtures", "--only", "pencil-poisson"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("ok"));

    let out = hmdist(&["verify", "fixtures", "--only", "not-a-check"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    let out = hmdist(&["bott", "--n", "4", "--p", "9", "--k", "0"]);
    assert_eq!(out.status.code(), Some(2), "semantic error");
    let out = hmdist(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2), "clap usage error");
    let out = hmdist(&["tables", "hm", "--range", "5..1"]);
    assert_eq!(out.status.code(), Some(2), "empty range");
}

#[test]
fn chern_expression_files() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let out = hmdist(&["chern", dir.join("sample.chern").to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("hrr(E)"));
    assert!(!text.contains("MISMATCH"));

    let out = hmdist(&[
        "chern",
        dir.join("mismatch.chern").to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "mismatch");
    // both expected and computed values are reported
    let rec = &v["result"]["records"][0]["expect"];
    assert_eq!(rec["expected"], "3");
    assert_eq!(rec["computed"]["num"], "2");
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("hmdist-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bott.json");
    let out = hmdist(&[
        "bott",
        "--n",
        "4",
        "--p",
        "1",
        "--k",
        "2",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"]["h"], serde_json::json!([10, 0, 0, 0, 0]));
}

#[test]
fn data_dir_override_is_validated() {
    // a corrupted table file must be rejected by the loader
    let dir = std::env::temp_dir().join("hmdist-cli-bad-data");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = "table e\nn 4\ndual-twist -10\nchi 12 : 24 250 125 20 1\n\
tail high 0 from 1\ntail low 4 to -11\nrow 0 : 4 3 0 0 0\n";
    std::fs::write(dir.join("hm_e.tbl"), bad).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_hmdist"))
        .args(["tables", "hm"])
        .env("HMDIST_DATA_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("alternating sum") || err.contains("missing"),
        "{err}"
    );
}

#[test]
fn fixture_dir_override_works() {
    // copy one fixture to a directory and point the env var at it
    let dir = std::env::temp_dir().join("hmdist-cli-fixtures");
    std::fs::create_dir_all(&dir).unwrap();
    for (name, text) in hmdist_core::fixtures::FIXTURE_FILES {
        std::fs::write(dir.join(name), text).unwrap();
    }
    let out = Command::new(env!("CARGO_BIN_EXE_hmdist"))
        .args(["verify", "fixtures", "--only", "lorentz-bracket"])
        .env("HMDIST_FIXTURE_DIR", &dir)
        .output()
        .unwrap();
    assert!(out.status.success());
}
