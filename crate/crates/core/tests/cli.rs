use std::path::Path;
use std::process::{Command, Output};

fn stochop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stochop")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn spectrum_value(o: &Output) -> f64 {
    let text = stdout(o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,value"));
    lines.next().unwrap().split(',').nth(1).unwrap().parse().unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(code(&stochop(&["--help"])), 0);
    assert_eq!(code(&stochop(&["--version"])), 0);
    for sub in ["sample", "spectrum", "mc", "verify", "diagnose"] {
        assert_eq!(code(&stochop(&[sub, "--help"])), 0, "{sub}");
    }
    assert_eq!(code(&stochop(&[])), 2);
    assert_eq!(code(&stochop(&["frobnicate"])), 2);
    assert_eq!(code(&stochop(&["sample", "hermite", "--bogus"])), 2);
    assert_eq!(code(&stochop(&["sample", "hermite", "--beta", "-1"])), 2);
    assert_eq!(code(&stochop(&["verify", "everything"])), 2);
    assert_eq!(code(&stochop(&["spectrum", "hermite-soft", "--config", "/nonexistent/run.json"])), 1);
}

#[test]
fn sample_hermite_inf() {
    let o = stochop(&["sample", "hermite", "--n", "4", "--beta", "inf"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["model"], "hermite");
    let diag: Vec<f64> = serde_json::from_value(v["matrix"]["diag"].clone()).unwrap();
    let off: Vec<f64> = serde_json::from_value(v["matrix"]["offdiag"].clone()).unwrap();
    assert_eq!(diag, vec![0.0; 4]);
    for (o, k) in off.iter().zip([3.0, 2.0, 1.0]) {
        assert!((o - (k / 2.0f64).sqrt()).abs() < 1e-15);
    }
}

#[test]
fn sample_laguerre_small() {
    let o = stochop(&["sample", "laguerre-l", "--n", "1", "--beta", "inf", "--a", "2"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let main = v["matrix"]["main"][0].as_f64().unwrap();
    assert!((main - 3f64.sqrt()).abs() < 1e-15);
    assert_eq!(code(&stochop(&["sample", "laguerre-l", "--n", "1", "--beta", "inf", "--a", "-2"])), 2);
}

#[test]
fn sample_is_seeded() {
    let a = stochop(&["sample", "jacobi", "--n", "6", "--beta", "1.5", "--a", "0.5", "--seed", "9"]);
    let b = stochop(&["sample", "jacobi", "--n", "6", "--beta", "1.5", "--a", "0.5", "--seed", "9"]);
    let c = stochop(&["sample", "jacobi", "--n", "6", "--beta", "1.5", "--a", "0.5", "--seed", "10"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn spectrum_zero_temperature() {
    let o = stochop(&["spectrum", "hermite-soft", "--beta", "inf", "--n", "10000", "--k", "1"]);
    assert_eq!(code(&o), 0);
    assert!((spectrum_value(&o) - 2.338_107_410_459_767).abs() < 2.5e-2);
    let o = stochop(&["spectrum", "laguerre-hard", "--beta", "inf", "--a", "0", "--n", "2000"]);
    assert_eq!(code(&o), 0);
    assert!((spectrum_value(&o) - 2.404_825_557_695_773).abs() < 1e-2);
    let o = stochop(&["spectrum", "laguerre-hard", "--model", "laguerre-m", "--beta", "inf", "--a", "1", "--n", "2000"]);
    assert!((spectrum_value(&o) - 3.831_705_970_207_512).abs() < 1e-2);
    assert_eq!(code(&stochop(&["spectrum", "hermite-soft", "--n", "5", "--k", "6"])), 2);
    assert_eq!(code(&stochop(&["spectrum", "jacobi-hard", "--model", "hermite"])), 2);
}

#[test]
fn spectrum_from_sampled_file() {
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("l.json");
    let m = model.to_str().unwrap();
    assert_eq!(code(&stochop(&["sample", "laguerre-l", "--n", "50", "--seed", "3", "--out", m])), 0);
    let from_file = stochop(&["spectrum", "laguerre-hard", "--input", m, "--k", "3"]);
    let direct = stochop(&["spectrum", "laguerre-hard", "--n", "50", "--seed", "3", "--k", "3"]);
    assert_eq!(code(&from_file), 0);
    assert_eq!(from_file.stdout, direct.stdout);
    assert_eq!(stdout(&from_file).lines().count(), 4);
}

fn mc_files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn mc_counts_and_reruns() {
    let root = tempfile::tempdir().unwrap();
    let run = |name: &str, args: &[&str]| {
        let dir = root.path().join(name);
        let mut all = args.to_vec();
        all.extend(["--out", dir.to_str().unwrap()]);
        assert_eq!(code(&stochop(&all)), 0, "{args:?}");
        mc_files(&dir)
    };
    let airy = ["mc", "airy-rr", "--beta", "2", "--samples", "100", "--basis-size", "60", "--mesh", "0.1", "--right", "30"];
    let first = run("a1", &airy);
    assert_eq!(first.len(), 3);
    let raw = first.iter().find(|(n, _)| n.ends_with("_0.csv")).unwrap();
    assert_eq!(String::from_utf8_lossy(&raw.1).lines().count(), 101);
    assert_eq!(run("a2", &airy), first);

    let soft = ["mc", "soft-edge", "--model", "hermite", "--n", "2000", "--beta", "2", "--samples", "100", "--seed", "5"];
    let files = run("s1", &soft);
    let raw = files.iter().find(|(n, _)| n.ends_with("_5.csv")).unwrap();
    assert_eq!(String::from_utf8_lossy(&raw.1).lines().count(), 101);
    let mut more = soft.to_vec();
    more.extend(["--workers", "3"]);
    assert_eq!(run("s2", &more), files);
}

#[test]
fn config_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    let args = ["spectrum", "jacobi-hard", "--n", "40", "--a", "0.5", "--b", "1", "--k", "2", "--seed", "4"];
    let mut dump = args.to_vec();
    dump.push("--dump-config");
    let o = stochop(&dump);
    assert_eq!(code(&o), 0);
    std::fs::write(&cfg, &o.stdout).unwrap();
    let direct = stochop(&args);
    let via = stochop(&["spectrum", "jacobi-hard", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&via), 0);
    assert_eq!(direct.stdout, via.stdout);
    // a flag overrides the file
    let over = stochop(&["spectrum", "jacobi-hard", "--config", cfg.to_str().unwrap(), "--k", "1"]);
    assert_eq!(stdout(&over).lines().count(), 2);
    // a config for another command is a usage error
    assert_eq!(code(&stochop(&["mc", "airy-rr", "--config", cfg.to_str().unwrap()])), 2);
}

#[test]
fn verify_identities() {
    let o = stochop(&["verify", "identities"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("suite identities: PASS"));
}

#[test]
fn diagnose_profiles() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.csv");
    let o = stochop(&["diagnose", "hermite-soft", "--n", "3000", "--seed", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("index,log_vk,grad1_vk,grad2_vk,log_vl,"));
    assert_eq!(text.lines().count(), 3001);
    let o = stochop(&["diagnose", "jacobi-hard", "--n", "300", "--beta", "inf", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("beta = inf"));
    assert_eq!(code(&stochop(&["diagnose", "hermite-soft", "--n", "10", "--k", "11"])), 2);
    assert_eq!(code(&stochop(&["diagnose", "hermite-soft", "--n", "10", "--k", "1", "--l", "1"])), 2);
}
