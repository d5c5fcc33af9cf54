//! Exercises the command-line surface through `cli::run_with`: exit codes,
//! output formats, file round-trips and reproducibility.

use std::fs;
use std::path::PathBuf;

use frameproof::cli;
use frameproof::verifier;
use frameproof::Code;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["frameproof"];
    argv.extend_from_slice(args);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn temp_path(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("frameproof-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json_fields(stdout: &str) -> serde_json::Value {
    serde_json::from_str(stdout).expect("stdout must be one JSON object")
}

#[test]
fn help_and_usage_errors() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
    assert!(out.contains("tables"));

    let (code, _, err) = run(&["verify"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());

    let (code, _, _) = run(&["tables", "--which", "3"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_exit_codes() {
    let good = temp_path("good.txt");
    fs::write(&good, "3 4 2\n1 0 0\n0 1 0\n0 0 1\n1 1 1\n").unwrap();
    let (code, out, _) = run(&["verify", good.to_str().unwrap(), "--w", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("frameproof: true"));

    let bad = temp_path("bad.txt");
    fs::write(&bad, "2 3 2\n0 0\n0 1\n1 0\n").unwrap();
    let (code, out, _) = run(&["verify", bad.to_str().unwrap(), "--w", "2"]);
    assert_eq!(code, 1);
    assert!(out.contains("witness_framed_index: 0"));
    assert!(out.contains("witness_coalition: 1 2"));

    let (code, _, err) = run(&["verify", "/no/such/file", "--w", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("error"));

    let malformed = temp_path("malformed.txt");
    fs::write(&malformed, "2 2\n0 0\n0 1\n").unwrap();
    let (code, _, err) = run(&["verify", malformed.to_str().unwrap(), "--w", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("header"));
}

#[test]
fn spot_check_carries_banner_in_every_format() {
    let good = temp_path("spot.txt");
    fs::write(&good, "3 4 2\n1 0 0\n0 1 0\n0 0 1\n1 1 1\n").unwrap();
    for format in ["text", "json", "csv"] {
        let (code, out, _) = run(&[
            "verify",
            good.to_str().unwrap(),
            "--w",
            "2",
            "--spot-check",
            "25",
            "--seed",
            "9",
            "--format",
            format,
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("NOT EXHAUSTIVE"), "{format}: {out}");
    }
}

#[test]
fn json_and_csv_values_are_identical() {
    let args = ["bounds", "--N", "20", "--q", "2", "--w", "2"];
    let (code, json_out, _) = {
        let mut a = args.to_vec();
        a.extend_from_slice(&["--format", "json"]);
        run(&a)
    };
    assert_eq!(code, 0);
    let (_, csv_out, _) = {
        let mut a = args.to_vec();
        a.extend_from_slice(&["--format", "csv"]);
        run(&a)
    };
    let json = json_fields(&json_out);
    let mut lines = csv_out.lines();
    let keys: Vec<&str> = lines.next().unwrap().split(',').collect();
    let values: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(keys.len(), values.len());
    for (key, value) in keys.iter().zip(&values) {
        assert_eq!(
            json[*key].as_str().unwrap(),
            *value,
            "field {key} differs between JSON and CSV"
        );
    }
    assert_eq!(json["new_lower"], "4.36415031620");
}

#[test]
fn bounds_flags_inapplicable_regimes() {
    let (code, out, _) = run(&["bounds", "--N", "4", "--q", "5", "--w", "3", "--format", "json"]);
    assert_eq!(code, 0);
    let json = json_fields(&out);
    assert_eq!(json["new_lower"], "inapplicable");
    assert_eq!(json["new_lower_reason"], "requires q <= w + 1");
    assert!(json["blackburn_note"]
        .as_str()
        .unwrap()
        .contains("leading term"));
}

#[test]
fn tables_reports_published_column_and_mismatches() {
    let (code, out, _) = run(&["tables", "--which", "2", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.contains("q,computed_min_w,published_min_w,match"));
    for published in ["2,", "3,", "4,", "5,", "40,", "41,"] {
        assert!(out.contains(published));
    }
    // the published column carries the reference values
    assert!(out.lines().any(|l| l.starts_with("40,") && l.contains(",49,")));
    // computed thresholds that disagree with the published value stay visible
    assert!(out.lines().any(|l| l.ends_with(",no") || l.ends_with(",yes")));

    let (code, out, _) = run(&["tables", "--which", "1", "--q-list", "2,3", "--w-max", "60"]);
    assert_eq!(code, 0);
    assert!(out.contains("25"));
    assert!(out.contains("33"));
}

#[test]
fn construct_affine_writes_verified_file() {
    let path = temp_path("affine3.txt");
    let (code, out, _) = run(&[
        "construct",
        "affine",
        "--order",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("n: 12"));
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# construction: affine-plane\n"));
    let parsed = Code::parse(&text).unwrap();
    assert_eq!(parsed.size(), 12);
    assert!(verifier::is_frameproof(&parsed, 2).is_frameproof());

    let (code, _, err) = run(&["construct", "affine", "--order", "4", "--out", "/tmp/x"]);
    assert_eq!(code, 2);
    assert!(err.contains("not prime"));
}

#[test]
fn construct_deletion_is_reproducible() {
    let a = temp_path("del_a.txt");
    let b = temp_path("del_b.txt");
    let base = [
        "construct", "deletion", "--q", "2", "--w", "2", "--N", "20", "--M", "4", "--seed", "7",
    ];
    let (code, out_a, _) = {
        let mut args = base.to_vec();
        args.extend_from_slice(&["--out", a.to_str().unwrap()]);
        run(&args)
    };
    assert_eq!(code, 0);
    let (_, out_b, _) = {
        let mut args = base.to_vec();
        args.extend_from_slice(&["--out", b.to_str().unwrap(), "--threads", "1"]);
        run(&args)
    };
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    // reports agree on everything except wall-clock fields
    let strip = |s: &str| {
        s.lines()
            .filter(|l| !l.contains("_ms") && !l.starts_with("file:"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&out_a), strip(&out_b));

    let text = fs::read_to_string(&a).unwrap();
    assert!(text.contains("# seed: 7"));
    assert!(text.contains("# generator: chacha12"));
    let parsed = Code::parse(&text).unwrap();
    assert!(parsed.size() >= 4);
    assert!(verifier::is_frameproof(&parsed, 2).is_frameproof());

    // over-budget target is rejected up front
    let (code, _, err) = run(&[
        "construct", "deletion", "--q", "2", "--w", "2", "--N", "6", "--M", "1", "--out", "/tmp/x",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("budget"));
}

#[test]
fn search_commands() {
    let witness = temp_path("witness.txt");
    let (code, out, _) = run(&[
        "search",
        "nw",
        "--w",
        "2",
        "--n-max",
        "4",
        "--out",
        witness.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("found_N: 3"));
    let parsed = Code::parse(&fs::read_to_string(&witness).unwrap()).unwrap();
    assert_eq!((parsed.length(), parsed.size()), (3, 4));
    assert!(verifier::is_frameproof(&parsed, 2).is_frameproof());

    let (code, out, _) = run(&["search", "nw", "--w", "3", "--n-max", "5"]);
    assert_eq!(code, 1);
    assert!(out.contains("none up to 5"));

    let (code, out, _) = run(&["search", "theorem8", "--w", "2", "--N", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("confirmed: true"));

    let (code, _, err) = run(&["search", "nw", "--w", "5", "--n-max", "30"]);
    assert_eq!(code, 2);
    assert!(err.contains("guard"));

    let (code, _, err) = run(&["search", "theorem8", "--w", "2", "--N", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("degenerate"));
}

#[test]
fn verify_json_output_round_trips() {
    let good = temp_path("roundtrip.txt");
    fs::write(&good, "2 2 3\n0 1\n2 0\n").unwrap();
    let (code, out, _) = run(&[
        "verify",
        good.to_str().unwrap(),
        "--w",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let json = json_fields(&out);
    assert_eq!(json["command"], "verify");
    assert_eq!(json["N"], "2");
    assert_eq!(json["n"], "2");
    assert_eq!(json["q"], "3");
    assert_eq!(json["frameproof"], "true");
}
