//! End-to-end checks of the `matchmarket` binary: exit codes, CSV output,
//! config layering and reproducibility.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_matchmarket"))
}

fn tmpdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("matchmarket_cli_{name}"));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn list_names_every_experiment() {
    let out = bin().arg("list").output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    for id in [
        "fig1_delta_k",
        "fig2_multibuyer",
        "fig3_correlated",
        "fig4_vendor_proposes",
        "fig5_search",
        "claims_table",
    ] {
        assert!(text.contains(id), "missing {id} in:\n{text}");
    }
}

#[test]
fn run_writes_csv_and_is_reproducible() {
    let dir = tmpdir("repro");
    let a = dir.join("a.csv");
    let b = dir.join("b.csv");
    for path in [&a, &b] {
        let out = bin()
            .args([
                "run",
                "fig3_correlated",
                "--n",
                "200",
                "--realizations",
                "500",
                "--seed",
                "11",
                "--out",
            ])
            .arg(path)
            .output()
            .unwrap();
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let bytes_a = fs::read(&a).unwrap();
    let bytes_b = fs::read(&b).unwrap();
    assert_eq!(bytes_a, bytes_b);
    let text = String::from_utf8(bytes_a).unwrap();
    assert!(text.contains("# master_seed = 11"));
    assert!(text.contains("st,u_m_mc,u_m_se,u_m_implicit_root,u_m_closed_form"));
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn run_without_out_prints_csv() {
    let out = bin()
        .args([
            "run",
            "fig1_delta_k",
            "--n",
            "100",
            "--k",
            "1,2",
            "--realizations",
            "200",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("k,delta_mc"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 3);
}

#[test]
fn config_file_with_flag_overrides() {
    let dir = tmpdir("cfg");
    let cfg = dir.join("sweep.cfg");
    fs::write(
        &cfg,
        "experiment = fig4_vendor_proposes\nn = 5,50\nrealizations = 300\nseed = 4\n",
    )
    .unwrap();
    let out = bin()
        .args(["run", "fig4_vendor_proposes", "--config"])
        .arg(&cfg)
        .args(["--seed", "9"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("# master_seed = 9"),
        "flag should beat file:\n{text}"
    );
    assert!(text.contains("# n = 5,50"));

    // mismatched experiment name is a config error
    let out = bin()
        .args(["run", "fig1_delta_k", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn claims_subcommand_runs_small() {
    let out = bin()
        .args(["claims", "--realizations", "400", "--seed", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("delta_linear"));
    assert!(text.contains("u_m_approx_rel_error_n17_pct"));
}

#[test]
fn invalid_config_exits_one() {
    for args in [
        vec!["run", "no_such_experiment"],
        vec!["run", "fig1_delta_k", "--k", "2,1"],
        vec!["run", "fig5_search", "--gamma", "1.2"],
        vec!["run", "fig1_delta_k", "--realizations", "0"],
    ] {
        let out = bin().args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(1), "args {args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn io_failure_exits_two() {
    let out = bin()
        .args([
            "run",
            "fig1_delta_k",
            "--n",
            "50",
            "--k",
            "1",
            "--realizations",
            "100",
            "--out",
            "/proc/definitely/not/writable/out.csv",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
