use std::process::{Command, Output};

use etcs_cli::{TableRow, TABLE_COLUMNS};

fn etcs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_etcs"))
        .args(args)
        .env_remove("ETCS_CATALOG")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key))
        .unwrap_or_else(|| panic!("no `{key}` line in\n{text}"))
        .trim()
}

fn csv_rows(text: &str) -> Vec<TableRow> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, TABLE_COLUMNS);
    reader.deserialize().collect::<Result<_, _>>().unwrap()
}

#[test]
fn enumerate_full_table_and_filter() {
    let out = etcs(&["enumerate"]);
    assert!(out.status.success());
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 255);
    assert!(rows.iter().enumerate().all(|(i, r)| r.row_id == i + 1));

    let out = etcs(&["enumerate", "--filter", "kplus=3,kminus=5"]);
    let ids: Vec<usize> = csv_rows(&stdout(&out)).iter().map(|r| r.row_id).collect();
    assert_eq!(ids, [228, 229, 230, 231]);
}

#[test]
fn json_and_csv_carry_the_same_rows() {
    let csv_out = etcs(&["enumerate", "--filter", "kplus=2"]);
    let json_out = etcs(&["enumerate", "--filter", "kplus=2", "--format", "json"]);
    assert!(json_out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&json_out.stdout).unwrap();
    assert!(value.is_array());
    let from_json: Vec<TableRow> = serde_json::from_value(value).unwrap();
    let from_csv = csv_rows(&stdout(&csv_out));
    assert!(!from_csv.is_empty());
    assert_eq!(from_json, from_csv);
    assert!(from_csv.iter().all(|r| r.cos2_theta.contains('/')));
}

#[test]
fn enumerate_writes_file_identically_for_any_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    assert!(
        etcs(&["enumerate", "--workers", "1", "--out", a.to_str().unwrap()])
            .status
            .success()
    );
    assert!(
        etcs(&["enumerate", "--workers", "6", "--out", b.to_str().unwrap()])
            .status
            .success()
    );
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert!(!a.is_empty());
    assert_eq!(a, b);
    assert_eq!(stdout(&etcs(&["enumerate"])).as_bytes(), a.as_slice());
}

#[test]
fn nu_reports() {
    let out = etcs(&["nu", "--row", "228", "--cross-check", "1e-6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(field(&text, "nu_bar"), "-11");
    assert_eq!(field(&text, "nu mod 48"), "13");
    assert!(field(&text, "delta").parse::<f64>().unwrap() < 1e-6);
    assert!(text.contains("PASS cross-check"));

    assert_eq!(
        field(&stdout(&etcs(&["nu", "--row", "1"])), "nu_bar"),
        "-39"
    );

    let out = etcs(&[
        "nu",
        "--gluing",
        "1,1,10,-5",
        "--kplus",
        "3",
        "--eps-plus",
        "1",
        "--dplus",
        "0",
        "--dminus",
        "-24/5",
        "--mrho",
        "-1",
    ]);
    assert!(out.status.success());
    assert_eq!(field(&stdout(&out), "nu_bar"), "-11");
}

#[test]
fn invalid_input_exit_codes() {
    let out = etcs(&[
        "nu",
        "--gluing",
        "2,1,10,-5",
        "--kplus",
        "3",
        "--eps-plus",
        "1",
        "--dplus",
        "0",
        "--dminus",
        "0",
        "--mrho",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("determinant"));

    assert_eq!(etcs(&["nu", "--row", "999"]).status.code(), Some(2));
    assert_eq!(
        etcs(&["cover", "--row", "250", "--ell", "5"]).status.code(),
        Some(2)
    );
    assert_eq!(
        etcs(&["--catalog", "/nonexistent/catalog.csv", "enumerate"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        etcs(&["enumerate", "--filter", "colour=3"]).status.code(),
        Some(1)
    );
    assert_eq!(etcs(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn catalog_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalog.csv");
    std::fs::write(&path, etcs_blocks::Catalog::builtin_source()).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_etcs"))
        .args(["nu", "--row", "228"])
        .env("ETCS_CATALOG", &path)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(field(&stdout(&out), "nu_bar"), "-11");

    std::fs::write(&path, "not a catalog\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_etcs"))
        .args(["enumerate"])
        .env("ETCS_CATALOG", &path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn cover_and_tdual() {
    let text = stdout(&etcs(&["cover", "--row", "250", "--ell", "21"]));
    assert_eq!(field(&text, "matches"), "row 174 (sides swapped)");
    let text = stdout(&etcs(&["tdual", "--row", "228"]));
    assert_eq!(field(&text, "matches"), "row 231");
    let text = stdout(&etcs(&["cover", "--row", "1", "--ell", "1"]));
    assert_eq!(field(&text, "matches"), "row 1");
}

#[test]
fn polygon_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("p.svg");
    let out = etcs(&["polygon", "--row", "228", "--svg", svg.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("PASS polygon identity"));
    let body = std::fs::read_to_string(svg).unwrap();
    assert!(body.starts_with("<svg") || body.starts_with("<?xml"));
}

#[test]
fn verify_suites_pass() {
    for suite in ["table3", "congruence", "polygon", "dedekind"] {
        let out = etcs(&["verify", suite]);
        let text = stdout(&out);
        assert_eq!(out.status.code(), Some(0), "{suite}:\n{text}");
        let last = text.lines().last().unwrap();
        assert!(
            last.starts_with("summary passed=") && last.ends_with("failed=0"),
            "{last}"
        );
        assert!(text
            .lines()
            .filter(|l| !l.starts_with("summary"))
            .all(|l| l.starts_with("PASS ")));
    }
}

#[test]
fn verify_rejects_bad_tolerance() {
    assert_eq!(
        etcs(&["verify", "table3", "--tol", "0"]).status.code(),
        Some(1)
    );
}
