use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use lgi_decay::amplitude::propagate;
use lgi_decay::csv::{fmt_sig, record};
use lgi_decay::oracle::{compare_c1, discretize, oracle_correlator_grid, write_c1_report, OperatorPair};
use lgi_decay::{propagator_analytic, LorentzianSpectrum, Method, ScanReport, SolverConfig, TwoTimeModel};
use rayon::prelude::*;

use crate::config::{ConfigError, RunConfig};
use crate::figure::FigurePreset;

/// Why a command stopped; maps onto the process exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad input, unreadable files or unwritable output. Exit code 1.
    Config(String),
    /// A solver or tolerance check failed. Exit code 2.
    Numerical(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Config(_) => 1,
            Failure::Numerical(_) => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Config(m) => write!(f, "error: {m}"),
            Failure::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<lgi_decay::Error> for Failure {
    fn from(e: lgi_decay::Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Config(e.to_string())
        }
    }
}

pub type Outcome = Result<(), Failure>;

/// Output files are assembled in memory and written together at the end.
#[derive(Default)]
struct Outputs {
    files: Vec<(String, Vec<u8>)>,
}

impl Outputs {
    fn add(&mut self, name: impl Into<String>, fill: impl FnOnce(&mut Vec<u8>) -> io::Result<()>) {
        let mut buf = Vec::new();
        fill(&mut buf).expect("writing to memory cannot fail");
        self.files.push((name.into(), buf));
    }

    fn flush(self, dir: &Path) -> Result<Vec<PathBuf>, Failure> {
        let io_err = |p: &Path, e: io::Error| Failure::Config(format!("cannot write {}: {e}", p.display()));
        fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
        let mut written = Vec::with_capacity(self.files.len());
        for (name, bytes) in self.files {
            let path = dir.join(name);
            fs::write(&path, bytes).map_err(|e| io_err(&path, e))?;
            written.push(path);
        }
        Ok(written)
    }
}

fn report_written(paths: &[PathBuf]) {
    for p in paths {
        eprintln!("wrote {}", p.display());
    }
}

pub fn amplitude(cfg: &RunConfig) -> Outcome {
    let traj = propagate(&cfg.spectrum, &cfg.solver)?;
    let mut out = Outputs::default();
    out.add("amplitude.csv", |b| traj.write_csv(b));
    report_written(&out.flush(&cfg.out)?);
    println!(
        "method={} samples={} max_abs_G={}",
        cfg.solver.method(),
        traj.len(),
        fmt_sig(traj.max_modulus())
    );
    Ok(())
}

/// Scans the configured tau grid for one spectrum.
///
/// Non-analytic methods tabulate `G` first, out to the latest measurement
/// time the grid can reach.
pub fn scan(cfg: &RunConfig, spectrum: &LorentzianSpectrum, t1: f64) -> Result<ScanReport, lgi_decay::Error> {
    let method = cfg.solver.method();
    if method == Method::Analytic {
        return TwoTimeModel::lorentzian(cfg.state, *spectrum).violation_scan(t1, &cfg.taus, cfg.order);
    }
    let tau_max = cfg.taus.iter().copied().fold(0.0, f64::max);
    let horizon = t1 + (cfg.order.measurements() - 1) as f64 * tau_max;
    let dt = cfg.solver.dt();
    let solver = SolverConfig::new(dt, horizon.max(dt), method)?;
    let traj = propagate(spectrum, &solver)?;
    TwoTimeModel::new(cfg.state, traj, spectrum.omega0()).violation_scan(t1, &cfg.taus, cfg.order)
}

pub fn lgi(cfg: &RunConfig) -> Outcome {
    let report = scan(cfg, &cfg.spectrum, cfg.t1)?;
    let mut out = Outputs::default();
    out.add("lgi_scan.csv", |b| report.write_csv(b));
    report_written(&out.flush(&cfg.out)?);
    println!("{}", report.summary_line());
    Ok(())
}

pub fn figure(cfg: &RunConfig, preset: &FigurePreset) -> Outcome {
    let omega0 = cfg.spectrum.omega0();
    let spectra = preset.spectra(omega0)?;
    let reports: Vec<ScanReport> = spectra
        .par_iter()
        .map(|s| scan(cfg, s, 0.0))
        .collect::<Result<_, _>>()?;

    let mut out = Outputs::default();
    let mut names = Vec::with_capacity(reports.len());
    for (value, report) in preset.values.iter().zip(&reports) {
        let name = preset.curve_file(*value);
        out.add(name.clone(), |b| report.write_csv(b));
        names.push(name);
    }
    let script = preset.plot_script(&names, cfg.order);
    out.add(format!("{}.gp", preset.id), |b| {
        b.extend_from_slice(script.as_bytes());
        Ok(())
    });
    report_written(&out.flush(&cfg.out)?);
    for (value, report) in preset.values.iter().zip(&reports) {
        println!("{}={}: {}", preset.param, fmt_sig(*value), report.summary_line());
    }
    Ok(())
}

pub fn oracle_check(cfg: &RunConfig) -> Outcome {
    let spec = &cfg.spectrum;
    let settings = &cfg.oracle;
    let bath = discretize(spec, settings.n_modes, settings.half_width)?;
    if bath.is_under_resolved() {
        eprintln!(
            "warning: half_width = {} is below 5*lambda = {}; the bath is under-resolved",
            settings.half_width,
            5.0 * spec.lambda()
        );
    }

    let rows = compare_c1(
        &bath,
        &cfg.state,
        |t| propagator_analytic(spec, t),
        cfg.solver.t_max(),
        settings.dt,
    )?;
    let c1_err = rows.iter().map(|r| r.abs_err()).fold(0.0, f64::max);

    let model = TwoTimeModel::lorentzian(cfg.state, *spec);
    let mut corr_csv = String::from("kind,t1,t2,re_oracle,im_oracle,re_analytic,im_analytic,abs_err\n");
    let mut corr_err: f64 = 0.0;
    if !settings.corr_times.is_empty() {
        for (kind, name) in [
            (OperatorPair::PlusMinus, "plus_minus"),
            (OperatorPair::MinusPlus, "minus_plus"),
        ] {
            for c in oracle_correlator_grid(&bath, &cfg.state, kind, &settings.corr_times, settings.dt)? {
                let analytic = match kind {
                    OperatorPair::PlusMinus => model.corr_plus_minus(c.t1, c.t2)?,
                    _ => model.corr_minus_plus(c.t1, c.t2)?,
                };
                let err = (c.value - analytic).norm();
                corr_err = corr_err.max(err);
                let nums = [c.t1, c.t2, c.value.re, c.value.im, analytic.re, analytic.im, err].map(fmt_sig);
                let _ = writeln!(corr_csv, "{name},{}", record(nums));
            }
        }
    }

    let mut out = Outputs::default();
    out.add("oracle_c1.csv", |b| write_c1_report(&rows, b));
    if !settings.corr_times.is_empty() {
        out.add("oracle_correlators.csv", |b| {
            b.extend_from_slice(corr_csv.as_bytes());
            Ok(())
        });
    }
    report_written(&out.flush(&cfg.out)?);

    println!(
        "n_modes={} half_width={} max_c1_error={} (tolerance {})",
        bath.len(),
        fmt_sig(settings.half_width),
        fmt_sig(c1_err),
        fmt_sig(settings.c1_tolerance)
    );
    if !settings.corr_times.is_empty() {
        println!(
            "max_correlator_error={} (tolerance {})",
            fmt_sig(corr_err),
            fmt_sig(settings.corr_tolerance)
        );
    }
    if !(c1_err <= settings.c1_tolerance) {
        return Err(Failure::Numerical(format!(
            "oracle c1 error {} exceeds tolerance {}; increase n_modes or half_width",
            fmt_sig(c1_err),
            fmt_sig(settings.c1_tolerance)
        )));
    }
    if !(corr_err <= settings.corr_tolerance) {
        return Err(Failure::Numerical(format!(
            "oracle correlator error {} exceeds tolerance {}; increase n_modes or half_width",
            fmt_sig(corr_err),
            fmt_sig(settings.corr_tolerance)
        )));
    }
    Ok(())
}
