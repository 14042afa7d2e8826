//! Flat `key=value` run configuration.
//!
//! Values come from three layers, later ones winning: built-in defaults, an
//! optional config file, and `--key value` overrides on the command line.
//! Every key is validated when the layers are merged, so a bad value is
//! reported against the key that carries it.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use lgi_decay::correlators::linspace;
use lgi_decay::{Complex64, LgiOrder, LorentzianSpectrum, Method, QubitState, SolverConfig};

/// Every recognised key with its default, in the order shown by `--help`.
pub const KEYS: &[(&str, &str, &str)] = &[
    ("gamma", "0.5", "coupling strength"),
    ("lambda", "5", "spectral width"),
    ("delta", "0", "detuning of the bath peak from the qubit"),
    ("omega0", "1", "qubit frequency"),
    ("c0", "0.7071067811865476,0", "initial ground amplitude `re,im`"),
    (
        "c1_0",
        "0.7071067811865476,0",
        "initial excited amplitude `re,im`",
    ),
    (
        "normalize",
        "false",
        "rescale (c0, c1_0) to unit norm instead of rejecting",
    ),
    ("t1", "0", "first measurement time"),
    ("order", "4", "LGI order, 3 or 4"),
    (
        "tau_start",
        "tau_max/tau_points",
        "first interval of the tau grid",
    ),
    ("tau_max", "2pi/omega0", "last interval of the tau grid"),
    ("tau_points", "400", "number of tau grid points"),
    ("dt", "0.001", "solver step"),
    ("t_max", "5", "trajectory horizon for amplitude and oracle-check"),
    (
        "method",
        "analytic",
        "analytic | ode-reduction | volterra-trapezoid",
    ),
    ("n_modes", "2000", "oracle bath size"),
    ("half_width", "20*lambda", "oracle frequency window half-width"),
    ("oracle_dt", "0.001", "oracle RK4 step"),
    ("c1_tolerance", "0.001", "oracle-check bound on |c1 error|"),
    (
        "corr_tolerance",
        "0.005",
        "oracle-check bound on correlator error",
    ),
    (
        "corr_points",
        "5",
        "oracle-check correlator grid size per axis (0 disables)",
    ),
    ("corr_t_max", "2", "oracle-check correlator grid end"),
    ("out", ".", "output directory"),
];

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub key: Option<String>,
    pub message: String,
}

impl ConfigError {
    fn at(key: &str, message: impl Into<String>) -> Self {
        Self {
            key: Some(key.to_owned()),
            message: message.into(),
        }
    }

    fn general(message: impl Into<String>) -> Self {
        Self {
            key: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.key {
            Some(key) => write!(f, "config key `{key}`: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

/// Oracle-check settings.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleSettings {
    pub n_modes: usize,
    pub half_width: f64,
    pub dt: f64,
    pub c1_tolerance: f64,
    pub corr_tolerance: f64,
    pub corr_times: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub spectrum: LorentzianSpectrum,
    pub state: QubitState,
    pub t1: f64,
    pub order: LgiOrder,
    pub taus: Vec<f64>,
    pub solver: SolverConfig,
    pub oracle: OracleSettings,
    pub out: PathBuf,
}

/// Raw layered values before validation.
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    values: BTreeMap<String, String>,
}

fn canonical(key: &str) -> Result<String, ConfigError> {
    let key = key.trim().replace('-', "_");
    if KEYS.iter().any(|(k, _, _)| *k == key) {
        Ok(key)
    } else {
        Err(ConfigError::at(&key, "unknown key"))
    }
}

impl RawConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let key = canonical(key)?;
        self.values.insert(key, value.trim().to_owned());
        Ok(())
    }

    /// Merges `key=value` lines; blank lines and `#` comments are skipped.
    pub fn merge_text(&mut self, text: &str, origin: &str) -> Result<(), ConfigError> {
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError::general(format!(
                    "{origin}:{}: expected `key=value`, got `{line}`",
                    n + 1
                )));
            };
            self.set(key, value).map_err(|e| ConfigError {
                message: format!("{} ({origin}:{})", e.message, n + 1),
                ..e
            })?;
        }
        Ok(())
    }

    pub fn merge_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::general(format!("cannot read {}: {e}", path.display())))?;
        self.merge_text(&text, &path.display().to_string())
    }

    /// Merges `--key value` or `--key=value` pairs.
    pub fn merge_args(&mut self, args: &[String]) -> Result<(), ConfigError> {
        let mut it = args.iter();
        while let Some(arg) = it.next() {
            let Some(flag) = arg.strip_prefix("--") else {
                return Err(ConfigError::general(format!(
                    "unexpected argument `{arg}`, overrides take the form --key value"
                )));
            };
            match flag.split_once('=') {
                Some((key, value)) => self.set(key, value)?,
                None => {
                    let key = canonical(flag)?;
                    let value = it.next().ok_or_else(|| ConfigError::at(&key, "missing value"))?;
                    self.set(&key, value)?;
                }
            }
        }
        Ok(())
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn number(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        self.get(key).map(|v| parse_f64(key, v)).transpose()
    }

    fn number_or(&self, key: &str, default: f64) -> Result<f64, ConfigError> {
        Ok(self.number(key)?.unwrap_or(default))
    }

    fn count_or(&self, key: &str, default: usize) -> Result<usize, ConfigError> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| ConfigError::at(key, format!("expected a nonnegative integer, got `{v}`"))),
        }
    }

    fn complex_or(&self, key: &str, default: Complex64) -> Result<Complex64, ConfigError> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => parse_complex(key, v),
        }
    }

    pub fn build(&self) -> Result<RunConfig, ConfigError> {
        let param = |key: &'static str| move |e: lgi_decay::Error| ConfigError::at(key, e.to_string());

        let gamma = self.number_or("gamma", 0.5)?;
        let lambda = self.number_or("lambda", 5.0)?;
        let delta = self.number_or("delta", 0.0)?;
        let omega0 = self.number_or("omega0", 1.0)?;
        let spectrum =
            LorentzianSpectrum::with_omega0(gamma, lambda, delta, omega0).map_err(|e| match &e {
                lgi_decay::Error::InvalidParameter { name, .. } => ConfigError::at(name, e.to_string()),
                _ => ConfigError::general(e.to_string()),
            })?;

        let half = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let c0 = self.complex_or("c0", half)?;
        let c1_0 = self.complex_or("c1_0", half)?;
        let state = if parse_bool("normalize", self.get("normalize").unwrap_or("false"))? {
            QubitState::normalized(c0, c1_0)
        } else {
            QubitState::new(c0, c1_0)
        }
        .map_err(|e| ConfigError::at("c0", format!("{e} (set normalize=true to rescale)")))?;

        let t1 = self.number_or("t1", 0.0)?;
        if !(t1.is_finite() && t1 >= 0.0) {
            return Err(ConfigError::at("t1", format!("must be >= 0, got {t1}")));
        }
        let order = match self.get("order").unwrap_or("4") {
            "3" => LgiOrder::Three,
            "4" => LgiOrder::Four,
            v => return Err(ConfigError::at("order", format!("expected 3 or 4, got `{v}`"))),
        };
        let taus = self.tau_grid(omega0)?;

        let dt = self.number_or("dt", SolverConfig::DEFAULT_DT)?;
        let t_max = self.number_or("t_max", 5.0)?;
        let method: Method = self
            .get("method")
            .unwrap_or("analytic")
            .parse()
            .map_err(param("method"))?;
        let solver = SolverConfig::new(dt, t_max, method).map_err(|e| match &e {
            lgi_decay::Error::InvalidParameter { name, .. } => ConfigError::at(name, e.to_string()),
            _ => ConfigError::general(e.to_string()),
        })?;

        let oracle = self.oracle_settings(lambda)?;
        let out = PathBuf::from(self.get("out").unwrap_or("."));

        Ok(RunConfig {
            spectrum,
            state,
            t1,
            order,
            taus,
            solver,
            oracle,
            out,
        })
    }

    fn tau_grid(&self, omega0: f64) -> Result<Vec<f64>, ConfigError> {
        let points = self.count_or("tau_points", 400)?;
        if points == 0 {
            return Err(ConfigError::at("tau_points", "must be >= 1"));
        }
        let tau_max = self.number("tau_max")?;
        let tau_start = self.number("tau_start")?;
        let tau_max = tau_max.unwrap_or(2.0 * std::f64::consts::PI / omega0);
        if !(tau_max.is_finite() && tau_max >= 0.0) {
            return Err(ConfigError::at("tau_max", format!("must be >= 0, got {tau_max}")));
        }
        let tau_start = tau_start.unwrap_or(tau_max / points as f64);
        if !(tau_start.is_finite() && tau_start >= 0.0) {
            return Err(ConfigError::at(
                "tau_start",
                format!("must be >= 0, got {tau_start}"),
            ));
        }
        if points > 1 && !(tau_start < tau_max) {
            return Err(ConfigError::at(
                "tau_start",
                format!("must be below tau_max = {tau_max}, got {tau_start}"),
            ));
        }
        Ok(linspace(tau_start, tau_max, points))
    }

    fn oracle_settings(&self, lambda: f64) -> Result<OracleSettings, ConfigError> {
        let n_modes = self.count_or("n_modes", 2000)?;
        if n_modes == 0 {
            return Err(ConfigError::at("n_modes", "must be >= 1"));
        }
        let half_width = self.number_or("half_width", 20.0 * lambda)?;
        positive("half_width", half_width)?;
        let dt = self.number_or("oracle_dt", 1e-3)?;
        positive("oracle_dt", dt)?;
        let c1_tolerance = self.number_or("c1_tolerance", 1e-3)?;
        positive("c1_tolerance", c1_tolerance)?;
        let corr_tolerance = self.number_or("corr_tolerance", 5e-3)?;
        positive("corr_tolerance", corr_tolerance)?;
        let corr_points = self.count_or("corr_points", 5)?;
        let corr_t_max = self.number_or("corr_t_max", 2.0)?;
        if !(corr_t_max.is_finite() && corr_t_max >= 0.0) {
            return Err(ConfigError::at(
                "corr_t_max",
                format!("must be >= 0, got {corr_t_max}"),
            ));
        }
        Ok(OracleSettings {
            n_modes,
            half_width,
            dt,
            c1_tolerance,
            corr_tolerance,
            corr_times: linspace(0.0, corr_t_max, corr_points),
        })
    }
}

fn positive(key: &str, v: f64) -> Result<(), ConfigError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(ConfigError::at(key, format!("must be > 0, got {v}")))
    }
}

fn parse_f64(key: &str, v: &str) -> Result<f64, ConfigError> {
    let x: f64 = v
        .parse()
        .map_err(|_| ConfigError::at(key, format!("expected a number, got `{v}`")))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(ConfigError::at(key, format!("must be finite, got `{v}`")))
    }
}

fn parse_complex(key: &str, v: &str) -> Result<Complex64, ConfigError> {
    match v.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(
            parse_f64(key, re.trim())?,
            parse_f64(key, im.trim())?,
        )),
        None => Ok(Complex64::new(parse_f64(key, v)?, 0.0)),
    }
}

fn parse_bool(key: &str, v: &str) -> Result<bool, ConfigError> {
    match v {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(ConfigError::at(key, format!("expected true or false, got `{v}`"))),
    }
}
