use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use relaygame::informed::{grid_minimize, PolicySlice, ZKind};
use relaygame_cli::RunConfig;

const REFERENCE: &str = r#"
problem = "p1"
seed = 7

[network]
h_SD = 1
h_RD = 0.5
h_SE = "0.6666666666666666"
h_RE = "0.6666666666666666,0"
P_S = 10
P_R = 10
N0 = 1
"#;

const SWEEP_BASE: &str = r#"
problem = "p2-noise"
grid_resolution = 61
seed = 1

[network]
h_SD = 1
h_RD = "0.2,-0.2"
h_SE = "0.4,0.4"
h_RE = "0.25∠0"
P_S = 10
P_R = 10
N0 = 1
"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_relaygame"))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn report(out: &Output) -> toml::Table {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8_lossy(&out.stdout).parse().unwrap()
}

fn result_field<'a>(t: &'a toml::Table, key: &str) -> &'a toml::Value {
    &t["result"].as_table().unwrap()[key]
}

#[test]
fn solve_reference_instance() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "reference.toml", REFERENCE);
    let t = report(&run(&["solve", cfg.to_str().unwrap()]));
    let v = result_field(&t, "value").as_float().unwrap();
    assert!((v - 0.0923).abs() < 5e-4);
    assert_eq!(result_field(&t, "method").as_str(), Some("lp-discrete"));
    assert!(result_field(&t, "error_bound").as_float().unwrap() <= 0.007);
    assert_eq!(result_field(&t, "case").as_str(), Some("A"));
}

#[test]
fn unknown_codebook_is_pure_zero() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "nocb.toml", &REFERENCE.replace("\"p1\"", "\"p1-nocodebook\""));
    let t = report(&run(&["solve", cfg.to_str().unwrap()]));
    assert_eq!(result_field(&t, "value").as_float(), Some(0.0));
    assert_eq!(result_field(&t, "equilibrium").as_str(), Some("pure"));
    assert_eq!(result_field(&t, "method").as_str(), Some("unknown-codebook"));
}

#[test]
fn report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "reference.toml", REFERENCE);
    let rep = dir.path().join("report.toml");
    let out = run(&["solve", cfg.to_str().unwrap(), "--precise", "-o", rep.to_str().unwrap()]);
    assert!(out.status.success());
    let again = run(&["solve", rep.to_str().unwrap(), "--precise"]);
    assert!(again.status.success());
    assert_eq!(std::fs::read_to_string(&rep).unwrap(), String::from_utf8(again.stdout).unwrap());
}

#[test]
fn six_significant_digits_by_default() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "reference.toml", REFERENCE);
    let t = report(&run(&["solve", cfg.to_str().unwrap()]));
    assert_eq!(result_field(&t, "value").as_float(), Some(0.0923474));
    let t = report(&run(&["solve", cfg.to_str().unwrap(), "--precise"]));
    let v = result_field(&t, "value").as_float().unwrap();
    assert_ne!(v, 0.0923474);
    assert!((v - 0.0923474).abs() < 5e-8);
}

#[test]
fn informed_without_eavesdropper_relay_link_beats_pure_noise() {
    let dir = tempfile::tempdir().unwrap();
    let text = SWEEP_BASE.replace("\"0.25∠0\"", "0");
    let cfg = write(dir.path(), "p2.toml", &text);
    let t = report(&run(&["solve", cfg.to_str().unwrap(), "--precise"]));
    let v = result_field(&t, "value").as_float().unwrap();
    let net = RunConfig::from_toml(&text).unwrap().network;
    let slice = grid_minimize(&net, ZKind::GaussianNoise, 61, PolicySlice::RhoZero).unwrap().value;
    let full = grid_minimize(&net, ZKind::GaussianNoise, 61, PolicySlice::Full).unwrap().value;
    assert_eq!(v, full);
    // with h_RE = 0 the noise reaches only the destination, so the best
    // pure-noise policy spends full power on it
    let full_noise = (1.0f64 + 10.0 / (1.0 + 0.08 * 10.0)).log2() - (1.0f64 + 10.0 * 0.32).log2();
    assert!((slice - full_noise).abs() < 1e-12);
    // correlated jamming still attenuates the source at the destination
    assert!(v < slice - 0.2, "{v} {slice}");
    assert!((v - 0.4035).abs() < 2e-3, "{v}");
}

#[test]
fn errors_are_machine_readable() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.toml", &REFERENCE.replace("P_S = 10", "P_S = 0"));
    let out = run(&["solve", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error[invalid-config]"));
    let sweep = write(dir.path(), "s.toml", &format!("{REFERENCE}\n[sweep]\nparameter = \"h_QQ.real\"\nstart = 0\nstop = 1\nsteps = 3\n"));
    let out = run(&["sweep", sweep.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["sweep", bad.to_str().unwrap()]);
    assert!(!out.status.success());
}

#[test]
fn sweep_rows_ordered_and_phase_behavior() {
    let dir = tempfile::tempdir().unwrap();
    let text = format!("{SWEEP_BASE}\n[sweep]\nparameter = \"h_RE.phase\"\nstart = 0\nstop = 180\nsteps = 9\n");
    let cfg = write(dir.path(), "sweep.toml", &text);
    let out = bin().args(["sweep", cfg.to_str().unwrap(), "--precise"]).env(relaygame_cli::JOBS_ENV, "3").output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains('\r'));
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, relaygame_cli::sweep::HEADER);
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 9);
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let num = |r: &csv::StringRecord, name: &str| r[col(name)].parse::<f64>().unwrap();
    let mut last = (f64::INFINITY, f64::INFINITY);
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r[col("index")].parse::<usize>().unwrap(), i);
        assert_eq!(num(r, "p1"), num(&rows[0], "p1"));
        assert_eq!(num(r, "p1_nocodebook"), num(&rows[0], "p1_nocodebook"));
        // informed rates fall as the phase opens up towards pi
        if num(r, "x") < 180.0 {
            let cur = (num(r, "p2_noise"), num(r, "p2_codeword"));
            assert!(cur.0 <= last.0 + 1e-12 && cur.1 <= last.1 + 1e-12, "{i}: {cur:?} after {last:?}");
            last = cur;
        }
    }
    assert_eq!(last, (0.0, 0.0));
}

#[test]
fn dump_regions_writes_polylines() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "reference.toml", REFERENCE);
    let out = run(&["dump-regions", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("curve,index,xi,eta\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("destination,")).count(), 4);
    assert_eq!(text.lines().filter(|l| l.starts_with("reduced_rectangle,")).count(), 5);
}

#[test]
fn validate_subcommand_passes_at_k0_instance() {
    // gamma = (10, 2.5, 3, 4) with unit noise and powers
    let text = r#"
problem = "p1"
mc_blocks = 200000
seed = 3
[network]
h_SD = 1
h_RD = 0.5
h_SE = 0.5477225575051661
h_RE = 0.6324555320336759
P_S = 10
P_R = 10
N0 = 1
"#;
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "k0.toml", text);
    let t = report(&run(&["validate", cfg.to_str().unwrap(), "--probes", "300"]));
    assert_eq!(result_field(&t, "method").as_str(), Some("analytic-k0"));
    let v = t["validation"].as_table().unwrap();
    assert_eq!(v["passed"].as_bool(), Some(true));
    assert_eq!(v["blocks"].as_integer(), Some(200_000));
}

#[test]
fn shipped_configs_parse() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let p = entry.unwrap().path();
        if p.extension().is_some_and(|e| e == "toml") {
            RunConfig::from_path(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
            n += 1;
        }
    }
    assert!(n >= 4);
}
