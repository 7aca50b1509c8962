//! Process-level checks of the command surface: exit codes, output
//! determinism, and agreement between the two table encodings.

use std::collections::BTreeMap;
use std::process::Command;

fn rsos(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rsos"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

#[test]
fn weight_table_is_deterministic() {
    let (c1, out1) = rsos(&["weights", "--k", "3", "--mn", "1,1", "--order", "9"]);
    let (c2, out2) = rsos(&["weights", "--k", "3", "--mn", "1,1", "--order", "9"]);
    assert_eq!(c1, 0);
    assert_eq!(out1, out2, "table output must be byte-stable");
}

#[test]
fn unsupported_fusion_exits_two() {
    let (code, _) = rsos(&["weights", "--k", "3", "--mn", "2,2"]);
    assert_eq!(code, 2);
}

#[test]
fn json_and_tsv_agree() {
    let (c1, tsv) = rsos(&["weights", "--k", "3", "--mn", "2,1", "--order", "9"]);
    let (c2, json) = rsos(&[
        "weights", "--k", "3", "--mn", "2,1", "--order", "9", "--format", "json",
    ]);
    assert_eq!((c1, c2), (0, 0));
    // Coefficient multiset from the TSV body.
    let mut tsv_terms: BTreeMap<(String, String, i64, String), usize> = BTreeMap::new();
    for line in tsv.lines().skip(2) {
        let cols: Vec<&str> = line.split('\t').collect();
        assert_eq!(cols.len(), 4, "bad TSV row: {line}");
        *tsv_terms
            .entry((
                cols[0].to_string(),
                cols[1].to_string(),
                cols[2].parse().unwrap(),
                cols[3].to_string(),
            ))
            .or_default() += 1;
    }
    let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
    let mut json_terms: BTreeMap<(String, String, i64, String), usize> = BTreeMap::new();
    for row in parsed["rows"].as_array().unwrap() {
        let label = row["label"].as_str().unwrap().to_string();
        for t in row["terms"].as_array().unwrap() {
            *json_terms
                .entry((
                    label.clone(),
                    t["q"].as_str().unwrap().to_string(),
                    t["zeta"].as_i64().unwrap(),
                    t["value"].as_str().unwrap().to_string(),
                ))
                .or_default() += 1;
        }
    }
    assert_eq!(tsv_terms, json_terms);
}

#[test]
fn check_suite_passes() {
    let (code, out) = rsos(&["check", "inversion", "--labels", "2,1,0", "--order", "9"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("PASS"));
}

#[test]
fn scan_passes_in_regime_and_rejects_outside() {
    let (code, _) = rsos(&["scan", "--n", "1", "--q=-0.3", "--zeta", "2"]);
    assert_eq!(code, 0);
    let (code, _) = rsos(&["scan", "--n", "1", "--q=-0.9", "--zeta", "1.2"]);
    assert_ne!(code, 0);
}
