use std::fs;
use std::process::Command;

use spingw::cli::run;
use spingw::sum_engine::Registry;

fn spingw(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("spingw").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn compute_examples() {
    assert_eq!(
        spingw(&["compute", "dim0", "--d", "2", "--h", "3", "--parity", "-"]).1,
        "-4\n"
    );
    assert_eq!(
        spingw(&["compute", "mp", "--d", "1", "--h", "7", "--parity", "+", "--k", "0"]).1,
        "1\n"
    );
    assert_eq!(
        spingw(&["compute", "reduce", "--h", "2", "--parity", "-"]).1,
        "-4 * GT_(2)^{loc,0,+}\n"
    );
    assert_eq!(
        spingw(&["compute", "gw0", "--d", "2", "--h", "2", "--parity", "odd"]).1,
        "-5/2\n"
    );
    assert_eq!(spingw(&["compute", "base-rel", "--k", "4"]).1, "-24\n");
    assert_eq!(spingw(&["compute", "base-abs", "--k", "5"]).1, "1/120\n");
    assert_eq!(
        spingw(&["compute", "f0", "--m1", "(1,1)", "--m2", "(1^2)"]).1,
        "2\n"
    );
    assert_eq!(
        spingw(&["compute", "descent", "--h", "1", "--parity", "+"]).1,
        "2 * GT_(2)^{loc,0,+}\n"
    );
}

#[test]
fn trace_is_printed_on_request() {
    let (code, out, _) = spingw(&["compute", "reduce", "--h", "3", "--parity", "+", "--trace"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "8 * GT_(2)^{loc,0,+}");
    assert_eq!(lines.len(), 1 + 3);

    let (_, json, _) = spingw(&[
        "--format", "json", "compute", "reduce", "--h", "1", "--parity", "-", "--trace",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["combo"]["GT|loc|h=0|p=+|d=2|m1=(2)|m2=-|ins=phi:"], "-2");
    assert!(v["trace"].as_array().is_some_and(|t| !t.is_empty()));
}

#[test]
fn input_errors_exit_two_naming_the_field() {
    let (code, _, err) = spingw(&["compute", "dim0", "--d", "2", "--h", "0", "--parity", "-"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error: --parity"), "{err}");
    assert_eq!(err.lines().count(), 1);

    let (code, _, err) = spingw(&["compute", "dim0", "--h", "1", "--parity", "+"]);
    assert_eq!(code, 2);
    assert!(err.contains("--d"), "{err}");

    let (code, _, err) = spingw(&["compute", "descent", "--h", "1", "--parity", "-"]);
    assert_eq!(code, 2);
    assert!(err.contains("--h"), "{err}");

    assert_eq!(spingw(&["frobnicate"]).0, 2);
    assert_eq!(
        spingw(&["compute", "mp", "--d", "1", "--h", "1", "--parity", "x"]).0,
        2
    );
    assert_eq!(spingw(&["verify", "--hmax", "0"]).0, 2);
}

#[test]
fn verify_reduction_counts() {
    let (code, out, _) = spingw(&["verify", "--suite", "reduction", "--hmax", "16"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("PASS, 34 identities\n"), "{out}");
}

#[test]
fn verify_trr_passes() {
    let (code, out, _) = spingw(&["verify", "--suite", "trr", "--dmax", "4", "--wmax", "5"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("PASS"));
}

#[test]
fn corrupted_registry_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("registry.json");
    fs::write(
        &path,
        r#"{
  "GT|loc|h=0|p=+|d=2|m1=(2)|m2=-|ins=phi:": "3",
  "GT|loc|h=2|p=-|d=2|m1=(2)|m2=-|ins=phi:": "-12",
  "GT|loc|h=3|p=+|d=1|m1=-|m2=-|ins=tau:": "1"
}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let (code, out, _) = spingw(&[
        "verify",
        "--suite",
        "closed",
        "--hmax",
        "3",
        "--registry",
        p,
    ]);
    assert_eq!(code, 0, "{out}");

    fs::write(&path, r#"{"GT|loc|h=3|p=+|d=2|m1=-|m2=-|ins=tau:": "5"}"#).unwrap();
    let (code, out, _) = spingw(&[
        "verify",
        "--suite",
        "all",
        "--hmax",
        "3",
        "--dmax",
        "2",
        "--wmax",
        "2",
        "--registry",
        p,
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL [closed] registry entry agrees with its closed form: GT|loc|h=3|p=+|d=2|m1=-|m2=-|ins=tau:"), "{out}");

    fs::write(
        &path,
        r#"{"GT|loc|h=0|p=+|d=2|m1=(2)|m2=-|ins=phi:": "3", "GT|loc|h=1|p=-|d=2|m1=(2)|m2=-|ins=phi:": "6"}"#,
    )
    .unwrap();
    let (code, out, _) = spingw(&[
        "verify",
        "--suite",
        "closed",
        "--hmax",
        "1",
        "--registry",
        p,
    ]);
    assert_eq!(code, 1);
    assert!(
        out.contains("GT|loc|h=1|p=-|d=2|m1=(2)|m2=-|ins=phi:"),
        "{out}"
    );
}

#[test]
fn bad_registry_file_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, r#"{"GT|loc|h=1|p=+|d=1|m1=-|m2=-|ins=tau:": 1}"#).unwrap();
    let (code, _, err) = spingw(&[
        "verify",
        "--suite",
        "closed",
        "--registry",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error: --registry"), "{err}");
}

#[test]
fn blowup_uses_registry_and_names_missing_keys() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("reg.json");
    let args = [
        "compute", "blowup", "--d", "1", "--h", "1", "--parity", "-", "--k", "1", "--n1", "1",
    ];
    let (code, _, err) = spingw(&args);
    assert_eq!(code, 2);
    assert!(
        err.contains("GT|loc|h=1|p=-|d=1|m1=(1)|m2=(1)|ins=phi:1"),
        "{err}"
    );

    fs::write(
        &path,
        r#"{"GT|loc|h=1|p=-|d=1|m1=(1)|m2=(1)|ins=phi:1": "3/7"}"#,
    )
    .unwrap();
    let mut with_reg = args.to_vec();
    with_reg.extend(["--registry", path.to_str().unwrap()]);
    assert_eq!(spingw(&with_reg).1, "3/7\n");
}

#[test]
fn table_csv_rows() {
    let (code, out, _) = spingw(&["table", "--format", "csv", "--hmax", "2"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "h,p,d,value");
    assert!(lines.contains(&"0,+,2,1/2"));
    assert!(lines.contains(&"1,-,1,-1"));
    // h ascending, even before odd, d ascending
    assert_eq!(&lines[1..5], ["0,+,1,1", "0,+,2,1/2", "1,+,1,1", "1,+,2,1"]);
    assert_eq!(lines.len(), 1 + 2 * 5);
}

#[test]
fn table_json_round_trips_through_registry() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.json");
    let (code, _, _) = spingw(&[
        "table",
        "--kind",
        "mp",
        "--k",
        "1,0",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let reg = Registry::load(&path).unwrap();
    assert_eq!(reg.len(), 2 * 33);
    let again = serde_json::to_string_pretty(&reg.to_json()).unwrap() + "\n";
    assert_eq!(again, fs::read_to_string(&path).unwrap());

    let (code, out, _) = spingw(&[
        "verify",
        "--suite",
        "closed",
        "--registry",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn unwritable_output_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("table.csv");
    let (code, _, err) = spingw(&["table", "--out", target.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error: --out"), "{err}");
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["table", "--format", "json"],
        vec![
            "verify", "--suite", "sums", "--hmax", "4", "--format", "json",
        ],
        vec![
            "compute", "reduce", "--h", "5", "--parity", "-", "--trace", "--format", "json",
        ],
    ] {
        assert_eq!(spingw(&args), spingw(&args));
    }
}

#[test]
fn binary_exit_codes_and_env_registry() {
    let bin = env!("CARGO_BIN_EXE_spingw");
    let ok = Command::new(bin)
        .args(["compute", "dim0", "--d", "1", "--h", "4", "--parity", "-"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "-1\n");

    let bad = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("reg.json");
    fs::write(&path, r#"{"GT|loc|h=1|p=+|d=2|m1=-|m2=-|ins=tau:": "7"}"#).unwrap();
    let failed = Command::new(bin)
        .args(["verify", "--suite", "closed", "--hmax", "1"])
        .env("SPINGW_REGISTRY", &path)
        .output()
        .unwrap();
    assert_eq!(failed.status.code(), Some(1));
}
