use std::fs;
use std::process::{Command, Output};

fn cusplab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cusplab")).args(args).env("CUSPLAB_THREADS", "2").output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn trailer<'a>(csv: &'a str, key: &str) -> Option<&'a str> {
    csv.lines().find_map(|l| l.strip_prefix(&format!("# {key} = ")))
}

#[test]
fn provenance_header() {
    let csv = stdout(&cusplab(&["cf", "3/10", "--seed", "9"]));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "# cusplab cf");
    assert!(lines[1].starts_with("# config_sha256 = "));
    assert_eq!(lines[1].len(), "# config_sha256 = ".len() + 64);
    assert_eq!(lines[2], "# seed = 9");
    assert_eq!(lines[3], "n,a_n,p_n,q_n");
    assert_eq!(&lines[4..6], ["1,3,1,3", "2,3,3,10"]);
    assert_eq!(trailer(&csv, "expansion"), Some("0; 3,3"));
}

#[test]
fn floats_carry_seventeen_digits() {
    let csv = stdout(&cusplab(&["spectrum", "--delta", "0.8", "--grid", "5"]));
    let row = csv.lines().find(|l| l.starts_with("6.5")).unwrap();
    for field in row.split(',') {
        let mantissa = field.split('e').next().unwrap().replace(['.', '-'], "");
        assert_eq!(mantissa.len(), 17, "{field}");
    }
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# spectrum settings\ndelta = 0.6\ngrid = 3\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let from_file = stdout(&cusplab(&["spectrum", "--config", cfg]));
    assert_eq!(trailer(&from_file, "delta"), Some("5.9999999999999998e-1"));
    assert_eq!(from_file.lines().filter(|l| !l.starts_with('#')).count(), 4);
    let overridden = stdout(&cusplab(&["spectrum", "--config", cfg, "--delta", "0.7"]));
    assert_eq!(trailer(&overridden, "delta"), Some("6.9999999999999996e-1"));
    assert_ne!(from_file.lines().nth(1), overridden.lines().nth(1));
}

#[test]
fn out_directory_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = cusplab(&["spectrum", "--out", d, "--svg", "--grid", "11"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let csv = fs::read_to_string(dir.path().join("spectrum.csv")).unwrap();
    assert!(csv.starts_with("# cusplab spectrum"));
    let svg = fs::read_to_string(dir.path().join("spectrum.svg")).unwrap();
    assert!(svg.contains(r#"viewBox="0 0 800 600""#));
    assert_eq!(svg.matches("<polyline").count(), 2);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| cusplab(args).status.code().unwrap();
    assert_eq!(code(&["spectrum"]), 0);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["spectrum", "--delta", "1"]), 2);
    assert_eq!(code(&["spectrum", "--grid", "ten"]), 2);
    assert_eq!(code(&["cf", "0/0"]), 2);
    assert_eq!(code(&["dim-fn", "1"]), 2);
    assert_eq!(code(&["cf", "3/10", "--svg"]), 2);
    assert_eq!(code(&["spectrum", "--config", "/nonexistent/run.cfg"]), 2);
    assert_eq!(code(&["excursions", "3/10", "--horizon", "30"]), 3);
}

#[test]
fn unknown_config_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "colour = blue\n").unwrap();
    let out = cusplab(&["spectrum", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("colour"));
}

#[test]
fn excursion_summary() {
    let csv = stdout(&cusplab(&["excursions", "sqrt:2-1/1", "--horizon", "40"]));
    assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 41);
    assert!(csv.contains("\n1,2,3.4657359027997"));
    assert!(trailer(&csv, "kappa_star").is_some());
}
