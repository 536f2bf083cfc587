use std::path::PathBuf;
use std::process::Command;

use grcone::document::{ConeReport, LambdaReport, WedgeReport};
use grcone::{parse_input, EffectivityCertificate, OracleReport};
use grcone_cli::{run_command, EXIT_INVALID, EXIT_OK, EXIT_VERIFY_FAILED};
use tempfile::TempDir;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    run_with_stdin(args, "")
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("grcone").chain(args.iter().copied());
    let code = run_command(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        let f = Files {
            dir: TempDir::new().unwrap(),
        };
        f.write(
            "split.json",
            r#"{"kind":"split","characteristic":2,"exponents":[3,1,0]}"#,
        );
        f.write(
            "strong.json",
            r#"{"kind":"strong_hn","characteristic":2,"delta":1,"blocks":[[2,3]]}"#,
        );
        f.write("char0.json", r#"{"kind":"char0_hn","blocks":[[2,3]]}"#);
        f.write(
            "cover.json",
            r#"{"kind":"cover","cover_degree":2,"l_degree":1,"exponents":[3,3]}"#,
        );
        f.write(
            "bad_cover.json",
            r#"{"kind":"cover","cover_degree":2,"l_degree":1,"exponents":[3,2]}"#,
        );
        f
    }

    fn write(&self, name: &str, text: &str) -> String {
        let p = self.path(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> String {
        let p: PathBuf = self.dir.path().join(name);
        p.to_string_lossy().into_owned()
    }
}

#[test]
fn lambda_of_split() {
    let f = Files::new();
    let r = run(&["lambda", "--input", &f.path("split.json"), "-r", "2"]);
    assert_eq!((r.code, r.out.as_str()), (EXIT_OK, "4\n"));
    let r = run(&[
        "--format",
        "json",
        "lambda",
        "--input",
        &f.path("strong.json"),
        "-r",
        "1",
    ]);
    let rep: LambdaReport = serde_json::from_str(&r.out).unwrap();
    assert_eq!(rep.lambda.to_string(), "3/4");
}

#[test]
fn cone_of_strong_data() {
    let f = Files::new();
    let r = run(&["cone", "--input", &f.path("strong.json"), "-r", "1"]);
    assert_eq!((r.code, r.out.as_str()), (EXIT_OK, "(0,1)\n(4,-3)\n"));
    let r = run(&[
        "cone",
        "--input",
        &f.path("char0.json"),
        "-r",
        "1",
        "--format",
        "json",
    ]);
    let rep: ConeReport = serde_json::from_str(&r.out).unwrap();
    assert_eq!(rep.rays[1].0, 2.into());
    assert_eq!(rep.rays[1].1, (-3).into());
}

#[test]
fn oracle_report() {
    let f = Files::new();
    let r = run(&["oracle", "--input", &f.path("split.json"), "-r", "2"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(
        r.out
            .lines()
            .any(|l| l.starts_with("verdict") && l.ends_with("true")),
        "{}",
        r.out
    );
    let r = run(&[
        "--format",
        "json",
        "oracle",
        "--input",
        &f.path("split.json"),
        "-r",
        "2",
    ]);
    let rep: OracleReport = serde_json::from_str(&r.out).unwrap();
    assert!(rep.verdict);
    assert_eq!(rep.h0_at_boundary, 1.into());
}

#[test]
fn certify_then_verify() {
    let f = Files::new();
    let r = run(&[
        "--format",
        "json",
        "certify",
        "--input",
        &f.path("strong.json"),
        "--cover",
        &f.path("cover.json"),
        "-r",
        "1",
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let cert: EffectivityCertificate = serde_json::from_str(&r.out).unwrap();
    assert_eq!(cert.tilde_l_degree, 3.into());
    let cert_path = f.write("cert.json", &r.out);

    let v = run(&[
        "verify",
        "--certificate",
        &cert_path,
        "--input",
        &f.path("strong.json"),
        "--cover",
        &f.path("cover.json"),
    ]);
    assert_eq!((v.code, v.out.as_str()), (EXIT_OK, "valid\n"));

    let tampered = f.write(
        "bad.json",
        &r.out
            .replace("\"tilde_l_degree\": 3", "\"tilde_l_degree\": 5"),
    );
    let v = run(&[
        "verify",
        "--certificate",
        &tampered,
        "--input",
        &f.path("strong.json"),
        "--cover",
        &f.path("cover.json"),
    ]);
    assert_eq!((v.code, v.out.as_str()), (EXIT_VERIFY_FAILED, "invalid\n"));

    let garbage = f.write("garbage.json", "{\"r\": 1}");
    let v = run(&[
        "verify",
        "--certificate",
        &garbage,
        "--input",
        &f.path("strong.json"),
        "--cover",
        &f.path("cover.json"),
    ]);
    assert_eq!(v.code, EXIT_INVALID);
}

#[test]
fn certify_cross_check_and_errors() {
    let f = Files::new();
    let r = run(&[
        "certify",
        "--input",
        &f.path("split.json"),
        "--cover",
        &f.path("split.json"),
        "-r",
        "1",
    ]);
    assert_eq!(r.code, EXIT_INVALID);
    assert!(r.err.contains("invalid kind"), "{}", r.err);

    let r = run(&[
        "certify",
        "--input",
        &f.path("strong.json"),
        "--cover",
        &f.path("bad_cover.json"),
        "-r",
        "1",
    ]);
    assert_eq!(r.code, EXIT_INVALID);
    assert!(r.err.contains("block 1"), "{}", r.err);

    let r = run(&[
        "certify",
        "--input",
        &f.path("char0.json"),
        "--cover",
        &f.path("cover.json"),
        "-r",
        "1",
    ]);
    assert_eq!(r.code, EXIT_INVALID);

    let r = run(&[
        "certify",
        "--input",
        &f.path("strong.json"),
        "--cover",
        &f.path("cover.json"),
        "-r",
        "1",
        "--cross-check",
    ]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("cross_check           true"), "{}", r.out);
}

#[test]
fn bundle_transformations_emit_documents() {
    let f = Files::new();
    let r = run(&[
        "--format",
        "json",
        "frobenius",
        "--input",
        &f.path("split.json"),
        "-j",
        "2",
    ]);
    let doc = parse_input(&r.out).unwrap();
    assert_eq!(
        doc,
        parse_input(r#"{"kind":"split","characteristic":2,"exponents":[12,4,0]}"#).unwrap()
    );

    let r = run(&[
        "--format",
        "json",
        "shift",
        "--input",
        &f.path("strong.json"),
        "-j",
        "1",
    ]);
    let doc = parse_input(&r.out).unwrap();
    assert_eq!(
        doc,
        parse_input(r#"{"kind":"strong_hn","characteristic":2,"delta":2,"blocks":[[2,6]]}"#)
            .unwrap()
    );

    let r = run(&["--format", "json", "dual", "--input", &f.path("split.json")]);
    assert_eq!(
        parse_input(&r.out).unwrap().to_value()["exponents"],
        serde_json::json!([-3, -1, 0])
    );

    let r = run(&[
        "--format",
        "json",
        "wedge",
        "--input",
        &f.path("split.json"),
        "-r",
        "2",
    ]);
    let rep: WedgeReport = serde_json::from_str(&r.out).unwrap();
    assert_eq!(rep.exponents, vec![4.into(), 3.into(), 1.into()]);

    let r = run(&["hn", "--input", &f.path("split.json")]);
    assert_eq!(r.out, "[(1,3),(1,1),(1,0)]\n");

    let r = run(&[
        "frobenius",
        "--input",
        &f.path("split.json").replace("split", "missing"),
        "-j",
        "1",
    ]);
    assert_eq!(r.code, EXIT_INVALID);

    let zero = f.write("zero.json", r#"{"kind":"split","exponents":[1,0]}"#);
    let r = run(&["frobenius", "--input", &zero, "-j", "1"]);
    assert_eq!(r.code, EXIT_INVALID);
    assert!(r.err.contains("characteristic"));
}

#[test]
fn stdin_and_validation_errors() {
    let r = run_with_stdin(
        &["lambda", "--input", "-", "-r", "1"],
        r#"{"kind":"char0_hn","blocks":[[1,1],[1,3]]}"#,
    );
    assert_eq!(r.code, EXIT_INVALID);
    assert!(
        r.err.contains("blocks[1]") && r.err.contains("strictly decreasing"),
        "{}",
        r.err
    );

    let r = run_with_stdin(
        &["lambda", "--input", "-", "-r", "2"],
        r#"{"kind":"split","exponents":[2,2,1]}"#,
    );
    assert_eq!((r.code, r.out.as_str()), (EXIT_OK, "4\n"));

    let r = run_with_stdin(
        &["cone", "--input", "-", "-r", "3"],
        r#"{"kind":"split","exponents":[2,2,1]}"#,
    );
    assert_eq!(r.code, EXIT_INVALID);

    let r = run_with_stdin(&["lambda", "--input", "-", "-r", "1"], "{ not json");
    assert_eq!(r.code, EXIT_INVALID);
    assert!(r.err.contains("line 1"), "{}", r.err);

    assert_eq!(run(&["nope"]).code, EXIT_INVALID);
    assert_eq!(run(&["--help"]).code, EXIT_OK);
}

#[test]
fn binary_exit_codes() {
    let f = Files::new();
    let bin = env!("CARGO_BIN_EXE_grcone");
    let ok = Command::new(bin)
        .args(["lambda", "--input", &f.path("split.json"), "-r", "2"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "4\n");
    let bad = Command::new(bin)
        .args(["lambda", "--input", &f.path("split.json"), "-r", "0"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
