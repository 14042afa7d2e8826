//! Spectral densities of the bath and the memory kernel they induce.
//!
//! The memory kernel is the vacuum correlation function of the bath operator
//! coupled to the qubit,
//!
//! ```text
//! g(s) = ∫ dω J(ω) exp(i (ω0 − ω) s),
//! ```
//!
//! with the frequency integral taken over the whole real line. For the
//! Lorentzian density this gives the exponential `(γλ/2) exp((iΔ − λ) s)`.
//! Negative separations follow from `g(−s) = conj(g(s))`.

use std::f64::consts::PI;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Lorentzian spectral density centred at `omega0 - delta`.
///
/// `J(ω) = (1/2π) γ λ² / ((ω0 − ω − Δ)² + λ²)`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzianSpectrum {
    gamma: f64,
    lambda: f64,
    delta: f64,
    omega0: f64,
}

impl LorentzianSpectrum {
    /// Builds a spectrum in units where `omega0 = 1`.
    pub fn new(gamma: f64, lambda: f64, delta: f64) -> Result<Self> {
        Self::with_omega0(gamma, lambda, delta, 1.0)
    }

    pub fn with_omega0(gamma: f64, lambda: f64, delta: f64, omega0: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma >= 0.0) {
            return Err(Error::param(
                "gamma",
                format!("must be finite and >= 0, got {gamma}"),
            ));
        }
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::param(
                "lambda",
                format!("must be finite and > 0, got {lambda}"),
            ));
        }
        if !delta.is_finite() {
            return Err(Error::param("delta", format!("must be finite, got {delta}")));
        }
        if !(omega0.is_finite() && omega0 > 0.0) {
            return Err(Error::param(
                "omega0",
                format!("must be finite and > 0, got {omega0}"),
            ));
        }
        Ok(Self {
            gamma,
            lambda,
            delta,
            omega0,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    /// Frequency at which `J` peaks, `omega0 - delta`.
    pub fn peak_frequency(&self) -> f64 {
        self.omega0 - self.delta
    }

    /// `J(ω)`.
    pub fn density(&self, omega: f64) -> f64 {
        let x = self.omega0 - omega - self.delta;
        self.gamma * self.lambda * self.lambda / (2.0 * PI * (x * x + self.lambda * self.lambda))
    }

    /// `∫ J(ω) dω` over the real line, equal to `g(0) = γλ/2`.
    pub fn total_weight(&self) -> f64 {
        0.5 * self.gamma * self.lambda
    }

    /// Fraction of the total weight lying outside `peak ± half_width`.
    pub fn tail_fraction(&self, half_width: f64) -> f64 {
        1.0 - 2.0 / PI * (half_width / self.lambda).atan()
    }

    /// Memory kernel `g(s)` for `s >= 0`.
    pub fn memory_kernel(&self, s: f64) -> Result<Complex64> {
        if !(s >= 0.0) {
            return Err(Error::NegativeTime(s));
        }
        Ok(self.kernel_unchecked(s))
    }

    /// Kernel evaluation without the sign check, for solver inner loops.
    pub(crate) fn kernel_unchecked(&self, s: f64) -> Complex64 {
        Complex64::new(-self.lambda * s, self.delta * s).exp() * self.total_weight()
    }

    /// Samples the kernel on the given separations.
    pub fn kernel_samples(&self, separations: &[f64]) -> Result<Vec<KernelValue>> {
        separations
            .iter()
            .map(|&s| {
                Ok(KernelValue {
                    s,
                    value: self.memory_kernel(s)?,
                })
            })
            .collect()
    }
}

/// Free-function form of [`LorentzianSpectrum::density`].
pub fn lorentzian_density(spec: &LorentzianSpectrum, omega: f64) -> f64 {
    spec.density(omega)
}

/// Free-function form of [`LorentzianSpectrum::memory_kernel`].
pub fn memory_kernel(spec: &LorentzianSpectrum, s: f64) -> Result<Complex64> {
    spec.memory_kernel(s)
}

/// One sample of the memory kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub s: f64,
    pub value: Complex64,
}

/// A spectral density known only on a grid of frequencies.
///
/// The integration window is the span of the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedSpectrum {
    omega: Vec<f64>,
    density: Vec<f64>,
}

/// Raised when the tabulated density has not decayed at the window edges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowWarning {
    /// `max(J(ω_min), J(ω_max)) / max J`.
    pub edge_ratio: f64,
    pub tolerance: f64,
}

impl std::fmt::Display for WindowWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "integration window too narrow: edge density is {:.3e} of the peak (tolerance {:.1e})",
            self.edge_ratio, self.tolerance
        )
    }
}

impl TabulatedSpectrum {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::param("points", "need at least two samples"));
        }
        for (i, &(w, j)) in points.iter().enumerate() {
            if !w.is_finite() || !j.is_finite() {
                return Err(Error::Tabulation {
                    line: i + 1,
                    reason: "non-finite value".into(),
                });
            }
            if j < 0.0 {
                return Err(Error::Tabulation {
                    line: i + 1,
                    reason: format!("negative density {j}"),
                });
            }
            if i > 0 && w <= points[i - 1].0 {
                return Err(Error::Tabulation {
                    line: i + 1,
                    reason: "frequencies must be strictly increasing".into(),
                });
            }
        }
        let (omega, density) = points.into_iter().unzip();
        Ok(Self { omega, density })
    }

    /// Samples `f` on `n` equally spaced points of `[lo, hi]`.
    pub fn from_fn(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> Result<Self> {
        if n < 2 || !(hi > lo) {
            return Err(Error::param("grid", "need n >= 2 and hi > lo"));
        }
        let step = (hi - lo) / (n - 1) as f64;
        Self::new(
            (0..n)
                .map(|k| {
                    let w = lo + step * k as f64;
                    (w, f(w))
                })
                .collect(),
        )
    }

    /// Tabulates a Lorentzian on `peak ± half_width`.
    pub fn from_lorentzian(spec: &LorentzianSpectrum, half_width: f64, n: usize) -> Result<Self> {
        let c = spec.peak_frequency();
        Self::from_fn(|w| spec.density(w), c - half_width, c + half_width, n)
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    pub fn window(&self) -> (f64, f64) {
        (self.omega[0], self.omega[self.omega.len() - 1])
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.omega.iter().copied().zip(self.density.iter().copied())
    }

    /// Trapezoidal `∫ J(ω) dω` over the window.
    pub fn total_weight(&self) -> f64 {
        self.omega
            .windows(2)
            .zip(self.density.windows(2))
            .map(|(w, j)| 0.5 * (w[1] - w[0]) * (j[0] + j[1]))
            .sum()
    }

    pub fn window_warning(&self, tolerance: f64) -> Option<WindowWarning> {
        let peak = self.density.iter().copied().fold(0.0, f64::max);
        if peak == 0.0 {
            return None;
        }
        let edge = self.density[0].max(self.density[self.density.len() - 1]);
        let edge_ratio = edge / peak;
        (edge_ratio > tolerance).then_some(WindowWarning {
            edge_ratio,
            tolerance,
        })
    }

    /// Memory kernel by composite trapezoidal quadrature over the grid.
    pub fn memory_kernel_quadrature(&self, omega0: f64, s: f64) -> Result<Complex64> {
        if !(s >= 0.0) {
            return Err(Error::NegativeTime(s));
        }
        let term = |k: usize| Complex64::from_polar(self.density[k], (omega0 - self.omega[k]) * s);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut prev = term(0);
        for k in 1..self.omega.len() {
            let next = term(k);
            acc += (prev + next) * (0.5 * (self.omega[k] - self.omega[k - 1]));
            prev = next;
        }
        Ok(acc)
    }
}

impl FromStr for TabulatedSpectrum {
    type Err = Error;

    /// Two whitespace-separated columns `omega J`; `#` starts a comment line.
    fn from_str(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split_whitespace();
            let mut next = |what: &str| -> Result<f64> {
                let field = cols.next().ok_or_else(|| Error::Tabulation {
                    line: i + 1,
                    reason: format!("missing {what} column"),
                })?;
                field.parse().map_err(|_| Error::Tabulation {
                    line: i + 1,
                    reason: format!("cannot parse {what} value `{field}`"),
                })
            };
            let w = next("omega")?;
            let j = next("J")?;
            if cols.next().is_some() {
                return Err(Error::Tabulation {
                    line: i + 1,
                    reason: "expected exactly two columns".into(),
                });
            }
            points.push((w, j));
        }
        Self::new(points)
    }
}
