use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn eit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eit"))
        .args(args)
        .output()
        .unwrap()
}

fn eit_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_eit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines
        .next()
        .unwrap()
        .split(',')
        .map(str::to_owned)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect();
    (header, rows)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn sweep_is_byte_identical_across_runs_and_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for (i, jobs) in ["1", "4", "4", "0"].iter().enumerate() {
        let out = dir.path().join(format!("s{i}.csv"));
        let o = eit(&[
            "sweep",
            "--steps",
            "41",
            "--jobs",
            jobs,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        outputs.push(std::fs::read(out).unwrap());
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn header_and_metadata() {
    let o = eit(&["sweep", "--steps", "3"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("# tool = eit-cli\n# version = "));
    for key in [
        "alpha2 = 500",
        "gamma3 = 0.001",
        "tail_eps = 1e-12",
        "case = b",
        "g2 = ",
    ] {
        assert!(text.contains(&format!("# {key}")), "missing {key}");
    }
    let (header, rows) = csv_rows(&text);
    assert_eq!(header, eit_cli::SWEEP_COLUMNS);
    assert_eq!(rows.len(), 3);
    assert!(rows
        .iter()
        .all(|r| r.len() == header.len() && r.iter().all(|c| !c.is_empty())));
}

#[test]
fn perfect_transparency_point_flags_undefined_ratios() {
    let o = eit(&[
        "sweep",
        "--steps",
        "1",
        "--delta-min",
        "0",
        "--delta-max",
        "0",
        "--gamma3",
        "0",
    ]);
    assert!(o.status.success());
    let (_, rows) = csv_rows(&String::from_utf8(o.stdout).unwrap());
    assert_eq!(rows.len(), 1);
    let r = &rows[0];
    assert_eq!(r[1].parse::<f64>().unwrap(), 0.0);
    assert_eq!(r[2].parse::<f64>().unwrap(), 0.0);
    assert_eq!(r[5], "null");
    assert_eq!(r[6], "null");
}

#[test]
fn json_rows_share_keys() {
    let o = eit(&[
        "sweep", "--steps", "5", "--case", "c", "--beta2", "3", "--format", "json",
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["metadata"]["case"], "c");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for row in rows {
        let keys: Vec<&str> = row
            .as_object()
            .unwrap()
            .keys()
            .map(String::as_str)
            .collect();
        assert_eq!(keys, eit_cli::SWEEP_COLUMNS);
        assert!(row["vg_over_c_mean"].is_null());
        assert!(row["chi2_mean"].as_f64().unwrap() > 0.0);
    }
}

#[test]
fn validation_errors_exit_one() {
    let o = eit_stdin(&["sweep", "--config", "-"], "delta_steps = 0\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("delta_steps"));

    let o = eit_stdin(
        &["sweep", "--config", "-"],
        "colour = 1\n[params]\nmass = 2\n",
    );
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(
        err.contains("colour") && err.contains("params.mass"),
        "{err}"
    );

    let o = eit(&["sweep", "--tail-eps", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn singular_rows_exit_two_with_manifest() {
    // no coupling and no ground-state decay: the resonant sector denominator vanishes
    let cfg = "delta_min = -0.5\ndelta_max = 0.5\ndelta_steps = 3\n[params]\ng2 = 0\ngamma3 = 0\n";
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let o = eit_stdin(
        &["sweep", "--config", "-", "--out", out.to_str().unwrap()],
        cfg,
    );
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("row 1 (delta1 = 0)"), "{err}");
    assert!(!err.contains("row 0"));
    let (_, rows) = csv_rows(&std::fs::read_to_string(out).unwrap());
    assert_eq!(rows[1][1], "null");
    assert_ne!(rows[0][1], "null");
}

#[test]
fn configured_outputs_mask_quantities() {
    let dir = tempfile::tempdir().unwrap();
    let mean = dir.path().join("mean.csv").display().to_string();
    let vg = dir.path().join("vg.json").display().to_string();
    let cfg = format!(
        "delta_steps = 5\n[[outputs]]\nquantity = \"chi_mean\"\npath = \"{mean}\"\n\
         [[outputs]]\nquantity = \"vg\"\nformat = \"json\"\npath = \"{vg}\"\n"
    );
    let path = write(dir.path(), "run.toml", &cfg);
    let o = eit(&["sweep", "--config", &path]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());

    let (_, rows) = csv_rows(&std::fs::read_to_string(&mean).unwrap());
    assert!(rows
        .iter()
        .all(|r| r[1] != "null" && r[3] == "null" && r[7] == "null"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&vg).unwrap()).unwrap();
    assert_eq!(v["metadata"]["quantity"], "vg");
    for row in v["rows"].as_array().unwrap() {
        assert!(row["chi1_mean"].is_null());
        assert!(row["vg_over_c_mean"].as_f64().unwrap() != 0.0);
    }
}

#[test]
fn transient_starts_at_dark_state_and_relaxes() {
    let o = eit(&[
        "transient",
        "--n2",
        "20",
        "--n1",
        "2",
        "--t-max",
        "4000",
        "--t-steps",
        "5",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = csv_rows(&String::from_utf8(o.stdout).unwrap());
    assert_eq!(header[0], "t");
    assert_eq!(rows[0][0], "0");

    let cfg = eit_cli::RunConfig::default();
    let p = cfg.system_params();
    let r0 =
        eit_core::dynamics::dark_state_initial(&p, 2, 20, 0.1, eit_core::Order::Second).unwrap();
    let parse = |s: &str| s.parse::<f64>().unwrap();
    assert_eq!(parse(&rows[0][1]), r0.rho_ab.re);
    assert_eq!(parse(&rows[0][4]), r0.rho_cb.im);

    let dist: Vec<f64> = rows.iter().map(|r| parse(&r[7])).collect();
    assert!(dist.windows(2).all(|w| w[1] <= w[0]));
    assert!(*dist.last().unwrap() <= 1e-8, "{dist:?}");
}

#[test]
fn uncertainty_and_semiclassical_commands() {
    let o = eit(&[
        "uncertainty",
        "--steps",
        "3",
        "--alpha-phase",
        "1.0471975511965976",
    ]);
    assert!(o.status.success());
    let (header, rows) = csv_rows(&String::from_utf8(o.stdout).unwrap());
    assert_eq!(header[3], "satisfied");
    assert!(rows.iter().all(|r| r[3] == "true"));

    let o = eit(&[
        "semiclassical",
        "--steps",
        "5",
        "--beta2",
        "50",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["metadata"]["turning_point"].as_f64().unwrap() > 0.0);
    let rows = v["rows"].as_array().unwrap();
    let first = rows[0]["chi"].as_f64().unwrap();
    let last = rows[4]["chi"].as_f64().unwrap();
    assert_eq!(first, -last);
}
