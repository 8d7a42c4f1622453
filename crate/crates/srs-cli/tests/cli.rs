//! End-to-end tests of the `srs` binary: exit codes, config precedence,
//! output artifacts and byte-level determinism.

use std::process::{Command, Output};

fn srs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_srs"))
        .args(args)
        .output()
        .expect("spawn srs")
}

fn small_run_args<'a>(out: &'a str, t_max: &'a str, extra: &[&'a str]) -> Vec<&'a str> {
    let mut args = vec![
        "run",
        "--preset",
        "ackley-speed",
        "--width",
        "24",
        "--height",
        "24",
        "--t-max",
        t_max,
        "--seed",
        "5",
        "--out",
        out,
    ];
    args.extend_from_slice(extra);
    args
}

#[test]
fn config_errors_exit_2() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["run"],
        vec!["run", "--preset", "rastrigin"],
        vec!["run", "--preset", "ackley-speed", "--delta-e", "-0.1"],
        vec![
            "run",
            "--preset",
            "ackley-speed",
            "--initial-density",
            "1.5",
        ],
        vec![
            "sweep",
            "--preset",
            "ackley-speed",
            "--param",
            "bogus",
            "--values",
            "1",
        ],
        vec![
            "sweep", "--preset", "control", "--param", "v", "--values", "1",
        ],
        vec![
            "run",
            "--preset",
            "ackley-speed",
            "--survival-mode",
            "sometimes",
        ],
    ];
    for args in cases {
        let out = srs(&args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "args {args:?}: status {:?}, stderr: {}",
            out.status,
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn unknown_config_file_key_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("srs.conf");
    std::fs::write(&cfg, "preset = ackley-speed\nbogus_knob = 3\n").unwrap();
    let out = srs(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus_knob"));
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("srs.conf");
    std::fs::write(
        &cfg,
        "preset = ackley-jump\nuf = 25\nseed = 9\nwidth = 24\nheight = 24\nt_max = 8\n",
    )
    .unwrap();
    let out_dir = dir.path().join("out");
    let out = srs(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--uf",
        "10",
        "--out",
        out_dir.to_str().unwrap(),
        "--snapshots",
        "0",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let manifest = std::fs::read_to_string(out_dir.join("manifest.txt")).unwrap();
    assert!(
        manifest.contains("uf = 10"),
        "flag must beat file:\n{manifest}"
    );
    assert!(
        manifest.contains("seed = 9"),
        "file must beat defaults:\n{manifest}"
    );
    assert!(manifest.contains("preset = ackley-jump"));
}

#[test]
fn run_writes_expected_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let out = srs(&small_run_args(out_dir.to_str().unwrap(), "50", &[]));
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    assert!(out_dir.join("manifest.txt").is_file());
    assert!(out_dir.join("summary.csv").is_file());
    let run_csv = out_dir.join("run_ackley-speed_v2_r0.csv");
    let text = std::fs::read_to_string(&run_csv).unwrap();
    assert!(text.starts_with("t,population,mean_altitude,best_value,captured,epoch\n"));
    assert_eq!(text.lines().count(), 51);

    // single runs snapshot every 25 steps by default
    let snap = out_dir.join("ackley-speed_v2_r0").join("pheromone_t25.pgm");
    let pgm = std::fs::read_to_string(&snap).unwrap();
    assert!(pgm.starts_with("P2\n24 24\n255\n"));
    assert!(out_dir
        .join("ackley-speed_v2_r0")
        .join("pheromone_t50.pgm")
        .is_file());
}

#[test]
fn identical_invocations_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out_dir in [&a, &b] {
        let status = srs(&small_run_args(
            out_dir.to_str().unwrap(),
            "10",
            &["--repeats", "2"],
        ));
        assert_eq!(status.status.code(), Some(0));
    }
    for name in [
        "run_ackley-speed_v2_r0.csv",
        "run_ackley-speed_v2_r1.csv",
        "summary.csv",
    ] {
        let bytes_a = std::fs::read(a.join(name)).unwrap();
        let bytes_b = std::fs::read(b.join(name)).unwrap();
        assert_eq!(bytes_a, bytes_b, "{name} differs across invocations");
    }
}

#[test]
fn sweep_writes_one_csv_per_run_and_no_snapshots() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let out = srs(&[
        "sweep",
        "--preset",
        "ackley-speed",
        "--param",
        "v",
        "--values",
        "0,1",
        "--repeats",
        "2",
        "--width",
        "24",
        "--height",
        "24",
        "--t-max",
        "30",
        "--seed",
        "3",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    for name in [
        "run_ackley-speed_v0_r0.csv",
        "run_ackley-speed_v0_r1.csv",
        "run_ackley-speed_v1_r0.csv",
        "run_ackley-speed_v1_r1.csv",
    ] {
        assert!(out_dir.join(name).is_file(), "missing {name}");
    }
    let summary = std::fs::read_to_string(out_dir.join("summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 5);
    assert!(summary.contains("v=0") && summary.contains("v=1"));
    // sweeps do not snapshot unless asked
    assert!(!out_dir.join("ackley-speed_v0_r0").exists());
}

#[test]
fn manifest_reproduces_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first");
    let out = srs(&small_run_args(first.to_str().unwrap(), "10", &[]));
    assert_eq!(out.status.code(), Some(0));

    let second = dir.path().join("second");
    let manifest = first.join("manifest.txt");
    let out = srs(&[
        "run",
        "--config",
        manifest.to_str().unwrap(),
        "--out",
        second.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let a = std::fs::read(first.join("run_ackley-speed_v2_r0.csv")).unwrap();
    let b = std::fs::read(second.join("run_ackley-speed_v2_r0.csv")).unwrap();
    assert_eq!(a, b, "a rerun from the manifest must reproduce the run");
}

#[test]
fn unwritable_output_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("blocker");
    std::fs::write(&blocker, "not a directory").unwrap();
    let nested = blocker.join("out");
    let out = srs(&small_run_args(nested.to_str().unwrap(), "10", &[]));
    assert_eq!(
        out.status.code(),
        Some(1),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn help_and_version_work() {
    assert!(srs(&["--help"]).status.success());
    assert!(srs(&["--version"]).status.success());
    let out = srs(&["run", "--help"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("--preset") && text.contains("--seed"));
}
