//! End-to-end checks of the `wqed` binary: exit codes, stream discipline
//! (data on stdout, summaries and warnings on stderr), config precedence,
//! file outputs, and determinism of the verification runner.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn wqed() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_wqed"));
    cmd.env_remove("WQED_THREADS");
    cmd
}

fn run(args: &[&str]) -> Output {
    wqed().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wqed-cli-{}-{tag}", std::process::id()));
    fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

#[test]
fn help_exits_clean_and_bad_usage_does_not() {
    let help = run(&["--help"]);
    assert!(help.status.success());
    let text = stdout(&help);
    for sub in [
        "point",
        "sweep",
        "oracle-stationary",
        "oracle-wavepacket",
        "verify",
    ] {
        assert!(text.contains(sub), "--help misses {sub}");
    }

    let bogus = run(&["frobnicate"]);
    assert_eq!(bogus.status.code(), Some(1));

    let no_axis = run(&["sweep"]);
    assert_eq!(no_axis.status.code(), Some(1));

    let flat = run(&[
        "sweep",
        "--axis",
        "k",
        "--lo",
        "1.0",
        "--hi",
        "1.0",
        "--samples",
        "5",
    ]);
    assert_eq!(flat.status.code(), Some(1));
}

#[test]
fn band_edge_momentum_is_refused_with_an_explanation() {
    let out = run(&["point", "--preset", "fig2a", "--k", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("band edge"),
        "stderr: {}",
        stderr(&out)
    );
}

#[test]
fn point_reports_the_transparent_switch() {
    let out = run(&["point", "--preset", "fig2a", "--k", "2.0944"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("branch"), "missing branch line: {text}");
    assert!(
        text.contains("T = 9.9999999"),
        "not near-transparent: {text}"
    );
}

#[test]
fn emptied_control_mode_gives_an_exact_mirror() {
    // omega_2 equals the band energy at k = pi/2 for the default chain
    // (xi = 2), so the two-level branch reflects everything, exactly.
    let out = run(&[
        "point",
        "--n",
        "0",
        "--omega-2",
        "-2.4492935982947064e-16",
        "--k",
        "1.5707963267948966",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("R = 1.00000000000e0"), "not a mirror: {text}");
    assert!(text.contains("TwoLevelN0"), "wrong branch: {text}");
}

#[test]
fn sweep_streams_csv_to_stdout_and_summary_to_stderr() {
    let args = [
        "sweep",
        "--axis",
        "k",
        "--lo",
        "0.3",
        "--hi",
        "1.3",
        "--samples",
        "5",
    ];
    let out = run(&args);
    assert!(out.status.success());
    let data = stdout(&out);
    let lines: Vec<&str> = data.lines().collect();
    assert_eq!(
        lines[0],
        "axis_name,axis_value,re_r,im_r,re_t,im_t,R,T,branch"
    );
    assert_eq!(lines.len(), 6, "header plus five rows");
    assert!(stderr(&out).contains("sweep over k: 5 rows"));

    let mut checked = args.to_vec();
    checked.push("--oracle-check");
    let out = run(&checked);
    assert!(out.status.success());
    assert!(stdout(&out)
        .lines()
        .next()
        .unwrap()
        .ends_with("branch,dr_abs,dt_abs"));
}

#[test]
fn chart_output_needs_a_destination() {
    let out = run(&["sweep", "--preset", "fig2a", "--format", "svg"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stderr(&out).contains("--output"),
        "stderr: {}",
        stderr(&out)
    );
}

#[test]
fn both_formats_land_next_to_each_other() {
    let dir = scratch_dir("both");
    let base = dir.join("run");
    let out = run(&[
        "sweep",
        "--axis",
        "k",
        "--lo",
        "0.3",
        "--hi",
        "1.3",
        "--samples",
        "40",
        "--format",
        "both",
        "-o",
        base.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let csv = fs::read_to_string(base.with_extension("csv")).expect("csv written");
    assert!(csv.starts_with("axis_name,"));
    let svg = fs::read_to_string(base.with_extension("svg")).expect("svg written");
    assert!(svg.starts_with("<svg"));
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn config_file_is_overridden_by_flags_and_typos_are_fatal() {
    let dir = scratch_dir("config");
    let good = dir.join("model.json");
    fs::write(&good, r#"{ "xi": 3.0, "g_b": 0.5 }"#).unwrap();
    let out = run(&[
        "point",
        "--config",
        good.to_str().unwrap(),
        "--g-b",
        "0.75",
        "--k",
        "1.0",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("xi=3"), "config xi lost: {text}");
    assert!(text.contains("g_b=0.75"), "flag should beat config: {text}");

    let bad = dir.join("typo.json");
    fs::write(&bad, r#"{ "xj": 3.0 }"#).unwrap();
    let out = run(&["point", "--config", bad.to_str().unwrap(), "--k", "1.0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stderr(&out).contains("xj"),
        "stderr should name the key: {}",
        stderr(&out)
    );
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_runs_green_and_is_seed_deterministic() {
    let args = [
        "verify",
        "--seed",
        "11",
        "--unitarity-points",
        "3000",
        "--equivalence-points",
        "300",
        "--stationary-points",
        "10",
    ];
    let first = run(&args);
    assert!(first.status.success(), "stderr: {}", stderr(&first));
    let text = stdout(&first);
    assert!(text.contains("overall: PASS"), "report: {text}");
    let second = run(&args);
    assert!(second.status.success());
    assert_eq!(stdout(&first), stdout(&second), "same seed, same report");
}

#[test]
fn bad_thread_cap_warns_but_does_not_block() {
    let out = wqed()
        .env("WQED_THREADS", "banana")
        .args(["point", "--preset", "fig2a", "--k", "1.0"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    assert!(
        stderr(&out).contains("WQED_THREADS"),
        "stderr: {}",
        stderr(&out)
    );
}

#[test]
fn stationary_oracle_reports_agreement_and_sites() {
    let out = run(&[
        "oracle-stationary",
        "--preset",
        "fig2a",
        "--k",
        "1.2",
        "--sites",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("closed form"));
    assert!(text.contains("lattice fit"));
    assert!(text.contains("deviation"));
    assert!(text.contains("site,re_alpha,im_alpha,abs2"));
}

#[test]
fn wavepacket_oracle_writes_a_time_series() {
    let dir = scratch_dir("wavepacket");
    let path = dir.join("wp.csv");
    let out = run(&[
        "oracle-wavepacket",
        "--preset",
        "fig2a",
        "--k0",
        "1.5707963267948966",
        "--sigma",
        "8",
        "--half-length",
        "200",
        "--j0",
        "-100",
        "--record-stride",
        "200",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(
        stdout(&out).contains("measured"),
        "report: {}",
        stdout(&out)
    );
    let csv = fs::read_to_string(&path).expect("csv written");
    assert!(csv.starts_with("time,norm,P_left,P_right,P_scatterer,beta_abs2,zeta_abs2"));
    assert!(csv.lines().count() > 2);
    fs::remove_dir_all(&dir).ok();
}
