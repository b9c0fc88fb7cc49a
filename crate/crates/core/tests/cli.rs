use std::process::{Command, Output};

fn regamma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regamma"))
        .args(args)
        .env_remove("REGAMMA_EPS_REL")
        .output()
        .expect("binary runs")
}

fn field(out: &Output, key: &str) -> String {
    let text = String::from_utf8_lossy(&out.stdout);
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
        .to_string()
}

fn value(out: &Output) -> f64 {
    field(out, "value").parse().unwrap()
}

#[test]
fn eval_examples() {
    let out = regamma(&["eval", "0.5", "--method", "real"]);
    assert_eq!(out.status.code(), Some(0));
    assert!((value(&out) - 0.564_189_583_5).abs() < 1e-10);
    assert_eq!(field(&out, "method"), "real_axis");
    assert_eq!(field(&out, "flag"), "ok");

    let out = regamma(&["eval", "3", "--fn", "recip-gamma"]);
    assert_eq!(value(&out), 0.5);
    assert_eq!(field(&out, "evaluations"), "0");

    let out = regamma(&["eval", "0.5", "--fn", "gamma-neg"]);
    assert!((value(&out) + 3.544_907_701_8).abs() < 1e-9);
}

#[test]
fn eval_every_method_and_function() {
    for m in ["real", "power", "log", "cs", "hankel"] {
        let out = regamma(&["eval", "2.5", "--method", m]);
        assert_eq!(out.status.code(), Some(0), "{m}");
        assert!((value(&out) - 0.752_252_778_063_675).abs() < 1e-9, "{m}");
        let out = regamma(&["eval", "1.5", "--fn", "gamma-neg", "--method", m]);
        assert!((value(&out) - 2.363_271_801_207_355).abs() < 1e-8, "{m}");
    }
    let out = regamma(&["eval", "-1.5", "--method", "hankel"]);
    assert!((value(&out) - 0.423_142_187_660_817_2).abs() < 1e-9);
    let out = regamma(&["eval", "2.5", "--fn", "gamma-ratio", "--b", "1.5"]);
    assert!((value(&out) - 1.5).abs() < 1e-7);
    let out = regamma(&["eval", "1.5", "--fn", "inv-laplace", "--t", "2"]);
    assert!((value(&out) - 2f64.powf(1.5)).abs() < 1e-8);
    let out = regamma(&["eval", "0.5", "--fn", "gamma"]);
    assert!((value(&out) - std::f64::consts::PI.sqrt()).abs() < 1e-9);
    let out = regamma(&["eval", "0.5", "--fn", "recip-gamma-neg"]);
    assert!((value(&out) + 0.282_094_791_773_878_1).abs() < 1e-9);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["eval", "abc"][..],
        &["eval", "2", "--fn", "gamma-neg"],
        &["eval", "2.5", "--fn", "gamma-ratio"],
        &["eval", "0.5", "--method", "simpson"],
        &["eval", "0.5", "--eps-rel", "-1"],
        &["frobnicate"],
    ] {
        let out = regamma(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(regamma(&["--help"]).status.code(), Some(0));
}

#[test]
fn unmet_tolerance_exits_two() {
    let out = regamma(&["eval", "0.5", "--eps-rel", "1e-15"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(field(&out, "flag"), "tolerance_not_met");
}

#[test]
fn environment_sets_default_tolerance() {
    let run = |env: &str, extra: &[&str]| {
        let mut args = vec!["eval", "0.5"];
        args.extend_from_slice(extra);
        Command::new(env!("CARGO_BIN_EXE_regamma"))
            .args(&args)
            .env("REGAMMA_EPS_REL", env)
            .output()
            .unwrap()
    };
    assert_eq!(run("1e-15", &[]).status.code(), Some(2));
    assert_eq!(run("1e-15", &["--eps-rel", "1e-8"]).status.code(), Some(0));
}

#[test]
fn sweep_is_reproducible_and_ordered() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = regamma(&[
            "sweep",
            "--min",
            "0.1",
            "--max",
            "3",
            "--step",
            "0.1",
            "--fn",
            "gamma",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let text = std::fs::read(&a).unwrap();
    assert_eq!(text, std::fs::read(&b).unwrap());
    let text = String::from_utf8(text).unwrap();
    assert!(!text.contains('\r'));
    let zs: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(zs.len(), 30);
    assert!(zs.windows(2).all(|w| w[0] < w[1]));
    let two = text
        .lines()
        .find(|l| l.starts_with("2.0000000000000000e0,"))
        .unwrap();
    assert_eq!(
        two,
        "2.0000000000000000e0,1.0000000000000000e0,0.0000000000000000e0,real_axis,ok"
    );
}

#[test]
fn sweep_errors() {
    let out = regamma(&[
        "sweep", "--min", "3", "--max", "1", "--step", "0.1", "--out", "x.csv",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = regamma(&[
        "sweep",
        "--preset",
        "fig1",
        "--out",
        "/nonexistent/dir/x.csv",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/dir/x.csv"));
    let out = regamma(&["sweep", "--out", "x.csv"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_passes() {
    let out = regamma(&["verify", "--hankel", "--near-integer"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text
        .lines()
        .any(|l| l.starts_with("check=contour_invariance")));
    assert!(text.lines().any(|l| l.contains("status=info")));
    assert!(!text.contains("status=fail"));
    assert!(text.trim_end().ends_with("failed=0"));
}

#[test]
fn bench_has_a_row_per_method() {
    let out = regamma(&[
        "bench",
        "--eps-rel",
        "1e-4",
        "1e-6",
        "--compare-oracle",
        "product",
        "--terms",
        "1e5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "eps_rel,method,mean_time_us,mean_evaluations,max_rel_err,oracle"
    );
    assert_eq!(lines.len(), 11);
    assert!(lines[1..].iter().all(|l| l.ends_with(",product")));
}
