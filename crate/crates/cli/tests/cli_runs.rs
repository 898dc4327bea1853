use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use superriccati_cli::config::Field;
use superriccati_cli::{
    execute_config, CliError, Context, Mode, ModeRegistry, Outcome, Overrides, RunConfig,
};

fn run_in(dir: &Path, config: &Value, extra: &[&str]) -> Output {
    std::fs::write(dir.join("run.json"), config.to_string()).unwrap();
    Command::new(env!("CARGO_BIN_EXE_superriccati"))
        .current_dir(dir)
        .args(["--config", "run.json"])
        .args(extra)
        .output()
        .unwrap()
}

fn report(dir: &Path, prefix: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join(format!("{prefix}.report.json"))).unwrap())
        .unwrap()
}

fn const_config(mode: &str) -> Value {
    json!({
        "mode": mode,
        "coeffs": { "preset": "const" },
        "initial": { "y": 0.0, "l": [1.0, 0.0] },
        "interval": [0.0, 2.0],
        "stepper": { "method": "rk4-fixed", "h": 1e-3 },
        "output": "out/run",
    })
}

fn check(report: &Value, name: &str) -> f64 {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))["value"]
        .as_f64()
        .unwrap()
}

#[test]
fn compare_passes_with_small_route_disagreement() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &const_config("compare"), &[]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let r = report(dir.path(), "out/run");
    assert!(check(&r, "route-agreement") < 1e-8);
    assert_eq!(r["status"], "pass");
    assert!(dir.path().join("out/run.csv").exists());
    assert!(dir.path().join("out/run.riccati-components.csv").exists());
}

#[test]
fn solve_components_body_is_tanh() {
    let dir = tempfile::tempdir().unwrap();
    let mut config = const_config("solve-components");
    config["initial"] = json!({ "y": 0.0 });
    let out = run_in(dir.path(), &config, &[]);
    assert_eq!(out.status.code(), Some(0));
    let mut reader = csv::Reader::from_path(dir.path().join("out/run.csv")).unwrap();
    assert_eq!(
        reader.headers().unwrap().iter().collect::<Vec<_>>(),
        ["t", "y", "re_l", "im_l", "g0", "g1"]
    );
    let mut rows = 0;
    for row in reader.records() {
        let row = row.unwrap();
        let t: f64 = row[0].parse().unwrap();
        let y: f64 = row[1].parse().unwrap();
        assert!((y - t.tanh()).abs() < 1e-6, "t={t}");
        rows += 1;
    }
    assert_eq!(rows, 2001);
}

#[test]
fn identical_configs_give_identical_bytes() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for dir in [&a, &b] {
        assert_eq!(
            run_in(dir.path(), &const_config("compare"), &["--quiet"])
                .status
                .code(),
            Some(0)
        );
    }
    for file in [
        "out/run.csv",
        "out/run.riccati-components.csv",
        "out/run.report.json",
    ] {
        let x = std::fs::read(a.path().join(file)).unwrap();
        let y = std::fs::read(b.path().join(file)).unwrap();
        assert_eq!(x, y, "{file}");
    }
}

#[test]
fn report_echoes_expanded_config() {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), &const_config("solve-super"), &["--quiet"]);
    let r = report(dir.path(), "out/run");
    assert_eq!(r["config"]["coeffs"], json!({ "a": "-1", "b": "0", "c": "1" }));
    assert_eq!(r["config"]["stepper"]["method"], "rk4-fixed");
    assert_eq!(r["config"]["tolerance"]["reality"], 1e-10);
    assert_eq!(
        r["generated"],
        concat!("superriccati-cli ", env!("CARGO_PKG_VERSION"))
    );
}

#[test]
fn unreadable_configs_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let missing = Command::new(env!("CARGO_BIN_EXE_superriccati"))
        .current_dir(dir.path())
        .args(["--config", "absent.json"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(3));
    std::fs::write(dir.path().join("bad.json"), "{ not json").unwrap();
    let bad = Command::new(env!("CARGO_BIN_EXE_superriccati"))
        .current_dir(dir.path())
        .args(["--config", "bad.json", "--out", "bad"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(3));
    assert_eq!(report(dir.path(), "bad")["exit_code"], 3);
}

#[test]
fn validation_failures_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        run_in(dir.path(), &const_config("integrate"), &[]).status.code(),
        Some(2)
    );

    let mut no_initial = const_config("solve-super");
    no_initial.as_object_mut().unwrap().remove("initial");
    assert_eq!(run_in(dir.path(), &no_initial, &[]).status.code(), Some(2));

    let mut b_nonzero = const_config("b0");
    b_nonzero["coeffs"] = json!({ "preset": "logistic" });
    b_nonzero["second"] = json!({ "y": 1.0 });
    assert_eq!(run_in(dir.path(), &b_nonzero, &[]).status.code(), Some(2));

    let mut strict = const_config("solve-components");
    strict["tolerance"] = json!({ "residual": 1e-20 });
    let out = run_in(dir.path(), &strict, &[]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(dir.path(), "out/run")["status"], "fail");
}

#[test]
fn pole_exits_one_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let mut config = const_config("solve-components");
    config["coeffs"] = json!({ "preset": "harmonic" });
    config["initial"] = json!({ "y": 0.0 });
    config["interval"] = json!([0.0, 3.0]);
    assert_eq!(run_in(dir.path(), &config, &["--quiet"]).status.code(), Some(1));
    let t = report(dir.path(), "out/run")["error"]["location"]
        .as_f64()
        .unwrap();
    assert!(t > 1.4 && t < std::f64::consts::FRAC_PI_2 + 0.1, "{t}");
}

#[test]
fn flags_override_mode_and_prefix() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &const_config("compare"),
        &["--mode", "solve-super", "--out", "other/x", "--quiet"],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(report(dir.path(), "other/x")["mode"], "solve-super");
    assert!(!dir.path().join("out").exists());
}

#[test]
fn derive_system_writes_the_audit() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &json!({ "mode": "derive-system", "output": "audit" }),
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("g1         DISCREPANCY"));
    let written = std::fs::read_to_string(dir.path().join("audit.audit.txt")).unwrap();
    let golden =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/typo-audit.txt")).unwrap();
    assert_eq!(written, golden);
    let r = report(dir.path(), "audit");
    let flagged: Vec<String> = r["details"]["systems"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|s| s["discrepancies"].as_array().unwrap().clone())
        .map(|d| d["component"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(flagged, ["g0", "g1", "psibar"]);
}

#[test]
fn constructions_pass_their_checks() {
    let dir = tempfile::tempdir().unwrap();
    let pair = json!({
        "coeffs": { "preset": "const" },
        "initial": { "y": 0.0, "l": [0.5, 0.2], "g0": 0.1, "g1": 0.1 },
        "second": { "y": 2.0, "l": [0.3, -0.1], "g0": 0.2, "g1": -0.4 },
        "interval": [0.0, 1.0],
        "output": "out/pair",
    });
    for mode in ["bernoulli", "b0", "linearize"] {
        let out = run_in(dir.path(), &pair, &["--mode", mode]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{mode}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
    }
    let mut linear = pair.clone();
    linear["initial"] = json!({ "y": 1.0, "l": [0.2, 0.1], "g0": 0.1, "g1": 0.3 });
    linear["second"] = json!({ "y": 0.0, "l": [0.1, 0.0], "g0": -0.2, "g1": 0.0 });
    let out = run_in(dir.path(), &linear, &["--mode", "delinearize"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let r = report(dir.path(), "out/pair");
    assert!(check(&r, "riccati-residual") < 1e-6);
    assert!(check(&r, "linear-residual") < 1e-6);
}

#[test]
fn residual_mode_detects_corruption() {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), &const_config("solve-components"), &["--quiet"]);
    let residual = json!({ "mode": "residual", "coeffs": { "preset": "const" }, "input": "out/run.csv", "output": "res" });
    assert_eq!(run_in(dir.path(), &residual, &[]).status.code(), Some(0));

    let text = std::fs::read_to_string(dir.path().join("out/run.csv")).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let mut fields: Vec<String> = lines[500].split(',').map(str::to_string).collect();
    fields[1] = (fields[1].parse::<f64>().unwrap() + 0.01).to_string();
    lines[500] = fields.join(",");
    std::fs::write(dir.path().join("out/run.csv"), lines.join("\n") + "\n").unwrap();
    assert_eq!(run_in(dir.path(), &residual, &[]).status.code(), Some(2));
    assert!(check(&report(dir.path(), "res"), "riccati-residual") > 1e-3);
}

struct Echo;

impl Mode for Echo {
    fn name(&self) -> &'static str {
        "echo"
    }

    fn summary(&self) -> &'static str {
        "returns no outputs"
    }

    fn requires(&self) -> &'static [Field] {
        &[Field::Interval]
    }

    fn run(&self, ctx: &Context) -> Result<Outcome, CliError> {
        let (t0, t1) = ctx.interval()?;
        Ok(Outcome {
            notes: vec![format!("span {}", t1 - t0)],
            ..Outcome::default()
        })
    }
}

#[test]
fn registry_accepts_new_modes() {
    let dir = tempfile::tempdir().unwrap();
    let mut registry = ModeRegistry::builtin();
    registry.register(Box::new(Echo));
    let config = RunConfig {
        mode: Some("echo".into()),
        interval: Some([0.0, 2.5]),
        output: Some(dir.path().join("echo").display().to_string()),
        ..RunConfig::default()
    };
    let run = execute_config(config, &Overrides::default(), &registry);
    assert_eq!(run.exit_code(), 0);
    assert_eq!(run.report.notes, ["span 2.5"]);
    let missing = execute_config(
        RunConfig {
            mode: Some("echo".into()),
            output: Some(dir.path().join("e2").display().to_string()),
            ..RunConfig::default()
        },
        &Overrides::default(),
        &registry,
    );
    assert_eq!(missing.exit_code(), 2);
}
