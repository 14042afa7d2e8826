use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use lgi_decay::csv::parse_numeric;
use lgi_decay::Complex64;
use tempfile::TempDir;

fn run(args: &[&str], out: &Path) -> Output {
    run_env(args, out, &[])
}

fn run_env(args: &[&str], out: &Path, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lgi-decay"));
    cmd.args(args).arg("--out").arg(out);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn table(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    parse_numeric(&fs::read_to_string(path).unwrap()).unwrap()
}

fn column(path: &Path, name: &str) -> Vec<f64> {
    let (header, rows) = table(path);
    let i = header.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[i]).collect()
}

/// `G(t)` for the Lorentzian kernel, written out independently of the library.
fn closed_form(gamma: f64, lambda: f64, delta: f64, t: f64) -> Complex64 {
    let a = Complex64::new(lambda, -delta);
    let d = (a * a - 2.0 * gamma * lambda).sqrt();
    let half = d * t / 2.0;
    (-a * t / 2.0).exp() * (half.cosh() + a / d * half.sinh())
}

/// `max_C4=<v> at tau=<t>; violation_intervals=[...]` -> `(v, t, last interval end)`.
fn summary(line: &str) -> (f64, f64, Option<f64>) {
    let v = line.split("max_C4=").nth(1).unwrap().split(' ').next().unwrap();
    let t = line.split("tau=").nth(1).unwrap().split(';').next().unwrap();
    let ivs = line.split("violation_intervals=").nth(1).unwrap().trim();
    let last = ivs
        .trim_end_matches(']')
        .rsplit(", ")
        .next()
        .and_then(|s| s.trim_end_matches(')').parse().ok());
    (v.parse().unwrap(), t.parse().unwrap(), last)
}

#[test]
fn amplitude_without_coupling_is_all_ones() {
    let dir = TempDir::new().unwrap();
    let o = run(&["amplitude", "--gamma", "0", "--t_max", "2"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let path = dir.path().join("amplitude.csv");
    let header = fs::read_to_string(&path).unwrap();
    assert!(header.starts_with("t,re_G,im_G,abs_G\n"));
    let abs = column(&path, "abs_G");
    assert_eq!(abs.len(), 2001);
    assert!(abs.iter().all(|&v| v == 1.0));
}

#[test]
fn amplitude_weak_coupling_matches_closed_form() {
    let dir = TempDir::new().unwrap();
    for method in ["analytic", "ode-reduction", "volterra-trapezoid"] {
        let o = run(
            &[
                "amplitude",
                "--gamma",
                "0.01",
                "--lambda",
                "5",
                "--t_max",
                "40",
                "--method",
                method,
            ],
            dir.path(),
        );
        assert!(o.status.success(), "{method}: {}", stderr(&o));
        let (_, rows) = table(&dir.path().join("amplitude.csv"));
        let mut worst: f64 = 0.0;
        for r in &rows {
            let g = closed_form(0.01, 5.0, 0.0, r[0]);
            worst = worst.max((Complex64::new(r[1], r[2]) - g).norm());
            assert!(r[3] <= 1.0 + 1e-12);
        }
        assert!(worst < 1e-6, "{method}: {worst}");
        // envelope decays: each window of length 10 peaks below the previous one
        let peaks: Vec<f64> = rows
            .chunks(10_000)
            .map(|c| c.iter().map(|r| r[3]).fold(0.0, f64::max))
            .collect();
        assert!(peaks.windows(2).all(|w| w[1] < w[0]), "{method}: {peaks:?}");
    }
}

#[test]
fn malformed_config_names_key() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "gamma = 0.1\nlambda = five\n").unwrap();
    let o = run(&["lgi", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("`lambda`"), "{}", stderr(&o));

    fs::write(&cfg, "gamma = 0.1\nwidth = 3\n").unwrap();
    let o = run(&["lgi", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("`width`"), "{}", stderr(&o));
    assert!(!dir.path().join("lgi_scan.csv").exists());
}

#[test]
fn config_file_and_overrides_layer() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# fig. 1 weakest coupling\ngamma=0.5\nlambda=5\n").unwrap();
    let o = run(
        &["lgi", "--config", cfg.to_str().unwrap(), "--gamma", "0"],
        dir.path(),
    );
    assert!(o.status.success());
    let (max, tau, _) = summary(&stdout(&o));
    assert!((max - 2.0 * 2f64.sqrt()).abs() < 1e-9, "{max}");
    assert!((tau - std::f64::consts::FRAC_PI_4).abs() < 1e-9, "{tau}");
}

#[test]
fn strong_coupling_violation_confined_to_short_intervals() {
    let dir = TempDir::new().unwrap();
    let o = run(
        &["lgi", "--gamma", "0.5", "--lambda", "5", "--delta", "0"],
        dir.path(),
    );
    assert!(o.status.success());
    let (max, _, last) = summary(&stdout(&o));
    assert!(max > 2.0 && max < 2.2, "{max}");
    assert!(last.unwrap() < 1.0);
}

#[test]
fn order_three_starts_at_one() {
    let dir = TempDir::new().unwrap();
    let o = run(
        &[
            "lgi",
            "--order",
            "3",
            "--tau_start",
            "0",
            "--tau_max",
            "2",
            "--tau_points",
            "21",
        ],
        dir.path(),
    );
    assert!(o.status.success());
    let path = dir.path().join("lgi_scan.csv");
    let (header, rows) = table(&path);
    assert_eq!(header, ["tau", "C21", "C32", "C31", "C3"]);
    assert_eq!(rows.len(), 21);
    assert!((rows[0][4] - 1.0).abs() < 1e-12);
    assert!(stdout(&o).starts_with("max_C3="));
}

#[test]
fn methods_agree_on_scan() {
    let dir = TempDir::new().unwrap();
    let mut curves = Vec::new();
    for method in ["analytic", "ode-reduction", "volterra-trapezoid"] {
        let o = run(
            &["lgi", "--gamma", "0.3", "--t1", "2", "--method", method],
            dir.path(),
        );
        assert!(o.status.success(), "{method}: {}", stderr(&o));
        curves.push(column(&dir.path().join("lgi_scan.csv"), "C4"));
    }
    for c in &curves[1..] {
        let err = c
            .iter()
            .zip(&curves[0])
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-5, "{err}");
    }
}

fn figure_maxima(id: &str, dir: &Path) -> Vec<(String, f64, Option<f64>)> {
    let o = run(&["figure", id], dir);
    assert!(o.status.success(), "{}", stderr(&o));
    let mut csvs: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.starts_with(id) && n.ends_with(".csv"))
        .collect();
    csvs.sort();
    assert_eq!(csvs.len(), 4, "{csvs:?}");
    let script = fs::read_to_string(dir.join(format!("{id}.gp"))).unwrap();
    assert!(script.contains("2 with lines"));
    stdout(&o)
        .lines()
        .map(|l| {
            let (label, rest) = l.split_once(": ").unwrap();
            let (max, _, last) = summary(rest);
            assert!(csvs.iter().any(|c| c.contains(label.split('=').nth(1).unwrap())));
            (label.to_owned(), max, last)
        })
        .collect()
}

#[test]
fn figure_one_violation_shrinks_with_coupling() {
    let dir = TempDir::new().unwrap();
    let curves = figure_maxima("fig1", dir.path());
    let labels: Vec<&str> = curves.iter().map(|c| c.0.as_str()).collect();
    assert_eq!(labels, ["gamma=0.01", "gamma=0.1", "gamma=0.3", "gamma=0.5"]);
    assert!(curves.windows(2).all(|w| w[1].1 < w[0].1), "{curves:?}");
    for name in ["fig1_gamma_0.01.csv", "fig1_gamma_0.5.csv"] {
        let (header, rows) = table(&dir.path().join(name));
        assert_eq!(header, ["tau", "C21", "C32", "C43", "C41", "C4"]);
        assert_eq!(rows.len(), 400);
    }
}

#[test]
fn figure_two_wider_bath_shortens_violation() {
    let dir = TempDir::new().unwrap();
    let curves = figure_maxima("fig2", dir.path());
    let ends: Vec<f64> = curves.iter().map(|c| c.2.unwrap()).collect();
    assert!(ends.windows(2).all(|w| w[1] < w[0]), "{ends:?}");
}

#[test]
fn figure_three_detuning_enhances_violation() {
    let dir = TempDir::new().unwrap();
    let curves = figure_maxima("fig3", dir.path());
    assert!(curves.windows(2).all(|w| w[1].1 > w[0].1), "{curves:?}");
}

#[test]
fn unknown_figure_fails() {
    let dir = TempDir::new().unwrap();
    let o = run(&["figure", "fig7"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("fig7"));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    assert!(
        run_env(&["figure", "fig2"], a.path(), &[("LGI_DECAY_THREADS", "1")])
            .status
            .success()
    );
    assert!(
        run_env(&["figure", "fig2"], b.path(), &[("LGI_DECAY_THREADS", "3")])
            .status
            .success()
    );
    for e in fs::read_dir(a.path()).unwrap() {
        let name = e.unwrap().file_name();
        assert_eq!(
            fs::read(a.path().join(&name)).unwrap(),
            fs::read(b.path().join(&name)).unwrap(),
            "{name:?}"
        );
    }
}

#[test]
fn bad_thread_cap_is_config_error() {
    let dir = TempDir::new().unwrap();
    let o = run_env(&["lgi"], dir.path(), &[("LGI_DECAY_THREADS", "zero")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("LGI_DECAY_THREADS"));
}

#[test]
fn unstable_step_is_numerical_failure() {
    let dir = TempDir::new().unwrap();
    let o = run(
        &["amplitude", "--method", "ode", "--lambda", "200", "--dt", "0.1"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn oracle_check_defaults_pass() {
    let dir = TempDir::new().unwrap();
    let o = run(&["oracle-check"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let path = dir.path().join("oracle_c1.csv");
    let (header, rows) = table(&path);
    assert_eq!(
        header,
        [
            "t",
            "re_c1_oracle",
            "im_c1_oracle",
            "re_c1_analytic",
            "im_c1_analytic",
            "abs_err"
        ]
    );
    assert_eq!(rows.len(), 5001);
    assert!(rows.iter().all(|r| r[5] <= 1e-3));

    let text = fs::read_to_string(dir.path().join("oracle_correlators.csv")).unwrap();
    let mut lines = text.lines();
    let width = lines.next().unwrap().split(',').count();
    assert_eq!(lines.clone().count(), 50);
    for l in lines {
        let fields: Vec<&str> = l.split(',').collect();
        assert_eq!(fields.len(), width);
        assert!(fields[1..].iter().all(|f| f.parse::<f64>().is_ok()));
    }
}

#[test]
fn oracle_check_coarse_bath_fails() {
    let dir = TempDir::new().unwrap();
    let o = run(&["oracle-check", "--n_modes", "10"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("exceeds tolerance"), "{}", stderr(&o));
    // the report is still written for inspection
    assert!(dir.path().join("oracle_c1.csv").exists());
}

#[test]
fn oracle_check_without_coupling_is_exact() {
    let dir = TempDir::new().unwrap();
    let o = run(
        &["oracle-check", "--gamma", "0", "--n_modes", "20", "--t_max", "1"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(column(&dir.path().join("oracle_c1.csv"), "abs_err")
        .iter()
        .all(|&e| e < 1e-14));
}

#[test]
fn every_numeric_csv_round_trips() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["amplitude", "--t_max", "1"][..],
        &["lgi"][..],
        &["figure", "fig3"][..],
        &[
            "oracle-check",
            "--n_modes",
            "100",
            "--t_max",
            "0.5",
            "--corr_points",
            "0",
            "--c1_tolerance",
            "1",
        ][..],
    ] {
        let o = run(args, dir.path());
        assert!(o.status.success(), "{args:?}: {}", stderr(&o));
    }
    let mut seen = 0;
    for e in fs::read_dir(dir.path()).unwrap() {
        let path = e.unwrap().path();
        if path.extension().is_some_and(|x| x == "csv") {
            let text = fs::read_to_string(&path).unwrap();
            let (header, rows) = parse_numeric(&text).unwrap_or_else(|e| panic!("{path:?}: {e}"));
            assert!(rows.iter().all(|r| r.len() == header.len()));
            seen += 1;
        }
    }
    assert_eq!(seen, 7);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    for dir in [a.path(), b.path()] {
        assert!(
            run(&["lgi", "--gamma", "0.1", "--delta", "5", "--method", "ode"], dir)
                .status
                .success()
        );
    }
    assert_eq!(
        fs::read(a.path().join("lgi_scan.csv")).unwrap(),
        fs::read(b.path().join("lgi_scan.csv")).unwrap()
    );
}
