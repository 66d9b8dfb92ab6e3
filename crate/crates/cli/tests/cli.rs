use std::path::PathBuf;

use janetlike_cli::{exit, run};

fn problem(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("problems").join(name).display().to_string()
}

fn janetlike(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("janetlike").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn field<'a>(out: &'a str, key: &str) -> Option<&'a str> {
    out.lines().find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
}

#[test]
fn toric_basis_sizes() {
    let toric = problem("toric.toml");
    for (args, count) in [
        (vec!["basis", &toric, "--format", "structured"], "5"),
        (vec!["basis", &toric, "--division", "janet", "--format", "structured"], "11"),
        (vec!["basis", &toric, "--reduced", "--format", "structured"], "4"),
    ] {
        let (code, out, _) = janetlike(&args);
        assert_eq!(code, exit::OK);
        assert_eq!(field(&out, "count"), Some(count), "{args:?}\n{out}");
    }
    let (_, out, _) = janetlike(&["basis", &toric, "--reduced", "--format", "structured"]);
    assert_eq!(field(&out, "poly[3]"), Some("u[x,y+4,z,w] - u[x+1,y,z+1,w+2]"));
}

#[test]
fn criteria_do_not_change_output() {
    let toric = problem("toric.toml");
    let on = janetlike(&["basis", &toric, "--criteria", "on"]);
    let off = janetlike(&["basis", &toric, "--criteria", "off"]);
    assert_eq!(on.1, off.1);
}

#[test]
fn reduce_and_compcond() {
    let cross = problem("cross.toml");
    let (code, out, _) = janetlike(&["reduce", &cross, "--format", "structured"]);
    assert_eq!(code, exit::OK);
    assert_eq!(field(&out, "nf[0]"), Some("u[x,y]"));
    let (code, out, _) = janetlike(&["compcond", &cross, "--format", "structured"]);
    assert_eq!(code, exit::OK);
    assert_eq!(field(&out, "count"), Some("1"));
    assert_eq!(field(&out, "condition[0]"), Some("r1[x,y+1] - r1[x,y] - r2[x+1,y] + r2[x,y]"));
}

#[test]
fn quotient_by_relation() {
    let strip = problem("strip.toml");
    let (code, out, _) = janetlike(&["hilbert", &strip, "--format", "structured"]);
    assert_eq!(code, exit::OK);
    assert_eq!(field(&out, "series"), Some("1 + t + t^2"));
    let (_, out, _) = janetlike(&["residue-basis", &strip, "--format", "structured"]);
    assert_eq!(field(&out, "finite"), Some("true"));
    assert_eq!(field(&out, "count"), Some("3"));
}

#[test]
fn standard_basis_budget() {
    let nl = problem("nonlinear.toml");
    let (code, out, _) = janetlike(&["standard-basis", &nl, "--budget", "1", "--format", "structured"]);
    assert_eq!(code, exit::BUDGET);
    assert_eq!(field(&out, "status"), Some("budget-exhausted"));
    let (code, out, _) = janetlike(&["standard-basis", &nl, "--format", "structured"]);
    assert_eq!(code, exit::OK);
    assert_eq!(field(&out, "status"), Some("complete"));
}

#[test]
fn exit_codes() {
    assert_eq!(janetlike(&[]).0, exit::USAGE);
    assert_eq!(janetlike(&["basis"]).0, exit::USAGE);
    assert_eq!(janetlike(&["basis", "/nonexistent/problem.toml"]).0, exit::IO);
    assert_eq!(janetlike(&["standard-basis", &problem("nonlinear.toml"), "--budget", "0"]).0, exit::OPTIONS);

    let dir = std::env::temp_dir().join(format!("janetlike-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "indices = [\"x\"]\nfunctions = [\"u\"]\nequations = [\"u[x+1] - \"]\n").unwrap();
    let (code, _, err) = janetlike(&["basis", bad.to_str().unwrap()]);
    assert_eq!(code, exit::PARSE);
    assert!(err.contains("1:10"), "{err}");
    std::fs::write(&bad, "indices = [\"x\"]\nfunctions = [\"u\"]\nbogus = 1\n").unwrap();
    assert_eq!(janetlike(&["basis", bad.to_str().unwrap()]).0, exit::PARSE);
    std::fs::write(&bad, "indices = [\"x\"]\nfunctions = [\"u\"]\n[ranking]\norder = \"elimination\"\n").unwrap();
    assert_eq!(janetlike(&["basis", bad.to_str().unwrap()]).0, exit::OPTIONS);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn operator_conversions() {
    let toric = problem("toric.toml");
    let (code, out, _) = janetlike(&["shift2pol", &toric, "--function", "u", "--format", "structured"]);
    assert_eq!(code, exit::OK);
    assert_eq!(field(&out, "poly[0]"), Some("u[x+7,y,z,w] - u[x,y+2,z+1,w]"));
    let (code, out, _) = janetlike(&["pol2shift", &toric, "--format", "structured"]);
    assert_eq!(code, exit::OK);
    assert_eq!(field(&out, "op[0]"), Some("(Tx^7 - Ty^2*Tz)*u"));
}

#[test]
fn structured_output_is_deterministic() {
    for (cmd, file) in [("basis", "toric.toml"), ("reduce", "recurrence.toml"), ("residue-basis", "recurrence.toml")] {
        let a = janetlike(&[cmd, &problem(file), "--format", "structured"]);
        let b = janetlike(&[cmd, &problem(file), "--format", "structured"]);
        assert_eq!(a, b);
        assert_eq!(field(&a.1, "command"), Some(cmd));
    }
}
