use std::path::{Path, PathBuf};
use std::process::Command;

use fiberfull::cli::{main_with_args, parse_input, run_command, CliError, Command as Cmd, Flags, Format};
use fiberfull::AlgebraError;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> fiberfull::cli::Outcome {
    main_with_args(std::iter::once("fiberfull").chain(args.iter().copied()))
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).expect("valid JSON")
}

#[test]
fn cv_verify_on_the_conic() {
    let out = run(&["cv-verify", fixture("conic.ff").to_str().unwrap(), "--order", "lex"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v = json(&out.stdout);
    assert_eq!(v["result"]["squarefree"], true);
    assert_eq!(v["result"]["equal"], true);
    assert_eq!(v["result"]["field"], "Fp 32003");

    let out = run(&["cv-verify", fixture("conic.ff").to_str().unwrap(), "--field", "QQ"]);
    let v = json(&out.stdout);
    assert_eq!(v["result"]["field"], "QQ");
    assert_eq!(v["result"]["warnings"], Value::Array(vec![]));
}

#[test]
fn polynomial_ring_top_cohomology() {
    let out = run(&["localcohom", fixture("polynomial_ring.ff").to_str().unwrap(), "--i", "3", "--window", "-5:0"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v = json(&out.stdout);
    let dims = &v["result"]["table"]["dims"];
    let expected = [(-5, 6), (-4, 3), (-3, 1), (-2, 0), (-1, 0), (0, 0)];
    for (nu, d) in expected {
        assert_eq!(dims[nu.to_string()], d);
    }
}

#[test]
fn unknown_command_fails() {
    let out = run(&["frobnicate", fixture("conic.ff").to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert_eq!(json(&out.stderr)["error"], "unknown-command");
}

#[test]
fn errors_are_machine_readable() {
    let dir = std::env::temp_dir().join(format!("fiberfull-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.ff");
    std::fs::write(&bad, "ring S vars (x) weights (1) field QQ;\nideal I = (x + y);").unwrap();
    let out = run(&["gb", bad.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    let v = json(&out.stderr);
    assert_eq!(v["error"], "undeclared-variable");
    assert_eq!((v["line"].clone(), v["column"].clone()), (Value::from(2), Value::from(16)));

    for args in [
        vec!["hilbert", "missing.ff"],
        vec!["localcohom", fixture("polynomial_ring.ff").to_str().unwrap(), "--window", "-5:"],
        vec!["localcohom", fixture("polynomial_ring.ff").to_str().unwrap(), "--i", "7"],
        vec!["gb", fixture("conic.ff").to_str().unwrap(), "--field", "Fp:9"],
        vec!["gb", fixture("conic.ff").to_str().unwrap(), "--format", "csv"],
        vec!["fiberfull", fixture("conic.ff").to_str().unwrap()],
        vec!["gb"],
    ] {
        let out = run(&args);
        assert_eq!(out.code, 1, "{args:?}");
        assert!(json(&out.stderr)["error"].is_string(), "{args:?}");
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn theorem_violations_exit_with_two() {
    let e = CliError::Algebra(AlgebraError::TheoremViolation {
        instance: "{\"ideal\":[\"x\"]}".into(),
    });
    assert_eq!(e.exit_code(), 2);
    assert_eq!(e.to_json()["instance"]["ideal"][0], "x");
}

#[test]
fn fiberfull_and_locus() {
    let out = run(&["fiberfull", fixture("torsion.ff").to_str().unwrap(), "--at", "0"]);
    assert_eq!(json(&out.stdout)["result"]["overall"], false);
    let out = run(&["run", fixture("torsion.ff").to_str().unwrap()]);
    assert_eq!(json(&out.stdout)["result"]["overall"], true);
    let out = run(&["locus", fixture("torsion.ff").to_str().unwrap()]);
    assert_eq!(json(&out.stdout)["result"]["locus"], "t");
}

#[test]
fn compare_and_random_points() {
    let out = run(&["compare", fixture("conic_family.ff").to_str().unwrap()]);
    let v = json(&out.stdout);
    assert_eq!(v["result"]["identical"], true);
    assert_eq!(v["result"]["points"].as_array().unwrap().len(), 4);

    let spec = parse_input(&std::fs::read_to_string(fixture("conic_family.ff")).unwrap()).unwrap();
    let flags = |seed| Flags {
        at: Some(fiberfull::cli::PointSelection::Random(3)),
        index: Some(2),
        seed,
        ..Flags::default()
    };
    let a = run_command(&spec, Cmd::Compare, &flags(7)).unwrap();
    let b = run_command(&spec, Cmd::Compare, &flags(7)).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.json["result"]["identical"], true);
}

#[test]
fn csv_tables() {
    let spec = parse_input(&std::fs::read_to_string(fixture("twisted_cubic.ff")).unwrap()).unwrap();
    let csv = run_command(&spec, Cmd::Betti, &Flags::default()).unwrap().render(Format::Csv).unwrap();
    assert_eq!(csv, "i,j,beta\n0,0,1\n1,1,3\n2,1,2\n");
    let out = run(&["hilbert", fixture("weighted.ff").to_str().unwrap(), "--format", "csv", "--window", "0:4"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout, "nu,dim\n0,1\n1,1\n2,2\n3,2\n4,2\n");
}

#[test]
fn threads_do_not_change_reports() {
    let path = fixture("minors_2x3.ff");
    let one = run(&["cv-verify", path.to_str().unwrap(), "--threads", "1"]);
    let four = run(&["cv-verify", path.to_str().unwrap(), "--threads", "4"]);
    assert_eq!(one.code, 0, "{}", one.stderr);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn binary_is_deterministic() {
    let bin = env!("CARGO_BIN_EXE_fiberfull");
    let go = || {
        Command::new(bin)
            .args(["betti", fixture("twisted_cubic.ff").to_str().unwrap()])
            .env("FIBERFULL_SEED", "3")
            .output()
            .unwrap()
    };
    let (a, b) = (go(), go());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(std::str::from_utf8(&a.stdout).unwrap())["result"]["regularity"], 1);

    let bad = Command::new(bin).args(["frobnicate", "x.ff"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
