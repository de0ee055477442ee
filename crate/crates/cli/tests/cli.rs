use std::process::{Command, Output};

use lsk_cli::linkfile::{LinkFile, Term1, Term2};
use lsk_cli::parse_halfint;
use lsk_core::cable::{cable_link, CableParams};
use lsk_core::catalog;
use lsk_core::HalfInt;
use proptest::prelude::*;

fn lsk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lsk"))
        .args(args)
        .env("LSK_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = lsk(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn temp_file(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("lsk-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn hfun_whitehead_table() {
    let out = stdout(&["hfun", "whitehead", "--window", "-2", "2"]);
    let rows: Vec<Vec<i64>> = out
        .lines()
        .filter(|l| l.contains('|'))
        .map(|l| {
            l.split('|')
                .nth(1)
                .unwrap()
                .split_whitespace()
                .map(|x| x.parse().unwrap())
                .collect()
        })
        .collect();
    assert_eq!(
        rows,
        vec![
            vec![2, 1, 0, 0, 0],
            vec![2, 1, 0, 0, 0],
            vec![2, 1, 1, 0, 0],
            vec![3, 2, 1, 1, 1],
            vec![4, 3, 2, 2, 2],
        ]
    );
}

#[test]
fn hfun_hopf_json() {
    let out = stdout(&["hfun", "hopf", "--window", "-3/2", "3/2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 16);
    // Hopf link: H(s) = max(0, -s1 + 1/2, -s2 + 1/2, -s1 - s2) on half-integers.
    for r in rows {
        let (s1, s2, h) = (
            r["s1"].as_i64().unwrap(),
            r["s2"].as_i64().unwrap(),
            r["h"].as_i64().unwrap(),
        );
        let want = [0, (1 - s1) / 2, (1 - s2) / 2, -(s1 + s2) / 2]
            .into_iter()
            .max()
            .unwrap();
        assert_eq!(h, want, "({s1}/2, {s2}/2)");
    }
}

#[test]
fn malformed_json_reports_position() {
    let path = temp_file("bad.json", "{\n  \"schema\": 1,\n  \"name\": \n}");
    let out = lsk(&["hfun", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4 column 1"), "{err}");
}

#[test]
fn validation_failure_names_the_property() {
    // Twice the Whitehead polynomial violates the growth property.
    let mut f = LinkFile::from_descriptor(&catalog::whitehead()).unwrap();
    for t in f.alexander2.as_mut().unwrap() {
        t.c *= 2;
    }
    let path = temp_file("double.json", &f.to_json());
    let out = lsk(&["classify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("Growth") || err.contains("growth"), "{err}");
}

#[test]
fn classify_examples() {
    assert!(stdout(&["classify", "whitehead"]).contains("type A, b=(0,0), maximal={(0,0)}"));
    assert!(stdout(&["classify", "hopf"]).contains("type B, b=(0,0), maximal=∅"));
    assert!(stdout(&["classify", "T(2,4)"]).contains("type B, b=(0,0)"));
}

#[test]
fn surgery_examples() {
    let out = stdout(&["surgery", "whitehead", "1", "1", "--both"]);
    assert!(out.contains(": LSPACE"), "{out}");
    assert!(out.contains("[1]"), "{out}");

    let out = stdout(&["surgery", "l7a3m", "1", "2", "--direct", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "NOT_LSPACE");
    assert!(v["hat_dims"]
        .as_array()
        .unwrap()
        .iter()
        .any(|d| d.as_u64().unwrap() >= 3));

    let out = stdout(&["surgery", "hopf", "0", "5", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["det"], -1);
    assert_eq!(v["status"], "LSPACE");

    let out = lsk(&["surgery", "hopf", "1", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a rational homology sphere"));

    let out = stdout(&["surgery", "whitehead", "-1", "7", "--mode", "theorems"]);
    assert!(out.contains("R2"), "{out}");
}

fn grid(out: &str) -> Vec<(i64, String)> {
    out.lines()
        .filter_map(|l| {
            let (label, cells) = l.trim_start().split_once(' ')?;
            Some((label.parse().ok()?, cells.to_string()))
        })
        .collect()
}

#[test]
fn region_examples() {
    let svg = std::env::temp_dir().join(format!("lsk-region-{}.svg", std::process::id()));
    let out = stdout(&[
        "region",
        "whitehead",
        "--box",
        "-3",
        "3",
        "-3",
        "3",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    for (d2, row) in grid(&out) {
        for (k, ch) in row.chars().enumerate() {
            let d1 = k as i64 - 3;
            let want = if d1 * d2 == 0 {
                '0'
            } else if d1 >= 1 && d2 >= 1 {
                'L'
            } else {
                'n'
            };
            assert_eq!(ch, want, "({d1}, {d2})");
        }
    }
    let pic = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(pic.matches("<rect").count(), 49);
    assert!(pic.contains("#4caf50") && pic.contains("#e53935"));

    let out = stdout(&["region", "l7a3m", "--box", "-3", "5", "-3", "5"]);
    for (d2, row) in grid(&out) {
        for (k, ch) in row.chars().enumerate() {
            let d1 = k as i64 - 3;
            if d1 * d2 != 0 {
                assert_eq!(ch == 'L', d1 >= 1 && d2 >= 3, "({d1}, {d2})");
            }
        }
    }

    let out = stdout(&["region", "T(2,4)", "--box", "-3", "3", "-3", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["verdicts"].as_array().unwrap().iter().any(|c| {
        c["d1"].as_i64().unwrap() * c["d2"].as_i64().unwrap() < 0 && c["status"] == "LSPACE"
    }));
}

#[test]
fn region_output_is_deterministic() {
    let a = stdout(&["region", "T(2,6)", "--box", "-4", "4", "-4", "4"]);
    let b = Command::new(env!("CARGO_BIN_EXE_lsk"))
        .args(["region", "T(2,6)", "--box", "-4", "4", "-4", "4"])
        .env("LSK_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a, String::from_utf8(b.stdout).unwrap());
}

#[test]
fn cable_examples() {
    let path = std::env::temp_dir().join(format!("lsk-cable-{}.json", std::process::id()));
    let out = stdout(&[
        "cable",
        "whitehead",
        "2",
        "7",
        "1",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.contains("formula 4, derived 4"), "{out}");
    let cabled = stdout(&["classify", path.to_str().unwrap()]);
    assert!(cabled.contains("b=(4,0)"), "{cabled}");

    let same = stdout(&["cable", "whitehead", "1", "5", "1"]);
    let f = LinkFile::parse(&same).unwrap();
    assert_eq!(
        f.alexander2,
        LinkFile::from_descriptor(&catalog::whitehead())
            .unwrap()
            .alexander2
    );

    let out = lsk(&["cable", "whitehead", "2", "4", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn catalog_round_trip() {
    let names = stdout(&["catalog"]);
    for name in names.lines() {
        let text = stdout(&["catalog", name]);
        let f = LinkFile::parse(&text).unwrap();
        assert_eq!(
            f.to_descriptor().unwrap(),
            catalog::catalog_get(name).unwrap()
        );
    }
    let cabled = cable_link(&catalog::l7a3m(), &CableParams::new(3, 11, 1).unwrap()).unwrap();
    let f = LinkFile::from_descriptor(&cabled).unwrap();
    assert_eq!(
        LinkFile::parse(&f.to_json())
            .unwrap()
            .to_descriptor()
            .unwrap(),
        cabled
    );
}

#[test]
fn schema_checks() {
    let mut f = LinkFile::from_descriptor(&catalog::whitehead()).unwrap();
    f.exponent_scale = 1;
    assert!(LinkFile::parse(&f.to_json()).is_err());
    let mut f = LinkFile::from_descriptor(&catalog::whitehead()).unwrap();
    f.component1 = vec![Term1 { e: 2, c: 1 }];
    assert!(f.to_descriptor().is_err());
    f.component1 = vec![Term1 { e: 0, c: 0 }];
    assert!(f.to_descriptor().is_err());
}

#[test]
fn halfint_arguments() {
    assert_eq!(parse_halfint("3").unwrap(), HalfInt::int(3));
    assert_eq!(parse_halfint("-3/2").unwrap(), HalfInt::from_doubled(-3));
    assert_eq!(parse_halfint("-0.5").unwrap(), HalfInt::from_doubled(-1));
    assert_eq!(parse_halfint("2.50").unwrap(), HalfInt::from_doubled(5));
    assert!(parse_halfint("0.25").is_err());
    assert!(parse_halfint("x").is_err());
}

fn symmetric1() -> impl Strategy<Value = Vec<Term1>> {
    prop::collection::btree_map(0i64..6, (1i64..5, any::<bool>()), 0..4).prop_map(|m| {
        let mut out = Vec::new();
        for (e, (c, neg)) in m {
            let c = if neg { -c } else { c };
            out.push(Term1 { e, c });
            if e != 0 {
                out.push(Term1 { e: -e, c });
            }
        }
        out
    })
}

fn symmetric2() -> impl Strategy<Value = Vec<Term2>> {
    prop::collection::btree_map((0i64..5, -4i64..5), 1i64..4, 0..4).prop_map(|m| {
        let mut seen = std::collections::BTreeMap::new();
        for ((a, b), c) in m {
            seen.insert((a, b), c);
            seen.insert((-a, -b), c);
        }
        seen.into_iter()
            .map(|((e1, e2), c)| Term2 { e1, e2, c })
            .collect()
    })
}

proptest! {
    /// parse(serialize(d)) = d for descriptors built from valid files.
    #[test]
    fn json_round_trip(name in "[a-z]{1,8}", linking in 0i64..4, a in symmetric2(), k1 in symmetric1(), k2 in symmetric1()) {
        let f = LinkFile {
            schema: 1,
            name,
            linking,
            exponent_scale: 2,
            alexander2: Some(a),
            component1: k1,
            component2: k2,
            h_table: None,
        };
        let d = f.to_descriptor().unwrap();
        let back = LinkFile::parse(&LinkFile::from_descriptor(&d).unwrap().to_json()).unwrap();
        prop_assert_eq!(back.to_descriptor().unwrap(), d);
    }
}
