//! The excited-state propagator `G(t)`.
//!
//! `G` solves the integro-differential equation
//!
//! ```text
//! dG/dt = −∫₀ᵗ g(t − τ) G(τ) dτ,    G(0) = 1,
//! ```
//!
//! and the excited amplitude of the qubit is `c1(t) = c1(0) G(t)`. Three
//! independent routes are provided: the closed form for the Lorentzian
//! kernel, an ODE reduction that exploits the exponential kernel, and a
//! product-integration Volterra solver that accepts any kernel.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use num_complex::Complex64;

use crate::csv::{fmt_sig, record};
use crate::error::{Error, Result};
use crate::spectral::LorentzianSpectrum;

/// Anything that can report `G(t)` for `t >= 0`.
pub trait Propagator {
    fn propagator(&self, t: f64) -> Complex64;
}

impl<P: Propagator + ?Sized> Propagator for &P {
    fn propagator(&self, t: f64) -> Complex64 {
        (**self).propagator(t)
    }
}

impl Propagator for LorentzianSpectrum {
    fn propagator(&self, t: f64) -> Complex64 {
        propagator_analytic(self, t)
    }
}

/// Initial qubit amplitudes `c0 |0⟩ + c1(0) |1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    c0: Complex64,
    c1_0: Complex64,
}

impl QubitState {
    pub const NORM_TOLERANCE: f64 = 1e-12;

    pub fn new(c0: Complex64, c1_0: Complex64) -> Result<Self> {
        let norm = c0.norm_sqr() + c1_0.norm_sqr();
        if !((norm - 1.0).abs() <= Self::NORM_TOLERANCE) {
            return Err(Error::param(
                "state",
                format!("|c0|^2 + |c1(0)|^2 = {norm:.15}, expected 1"),
            ));
        }
        Ok(Self { c0, c1_0 })
    }

    /// Rescales `(c0, c1)` to unit norm.
    pub fn normalized(c0: Complex64, c1_0: Complex64) -> Result<Self> {
        let norm = (c0.norm_sqr() + c1_0.norm_sqr()).sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::param("state", "amplitudes must not all vanish"));
        }
        Self::new(c0 / norm, c1_0 / norm)
    }

    pub fn excited() -> Self {
        Self {
            c0: Complex64::new(0.0, 0.0),
            c1_0: Complex64::new(1.0, 0.0),
        }
    }

    pub fn c0(&self) -> Complex64 {
        self.c0
    }

    pub fn c1_0(&self) -> Complex64 {
        self.c1_0
    }

    pub fn ground_population(&self) -> f64 {
        self.c0.norm_sqr()
    }

    pub fn excited_population(&self) -> f64 {
        self.c1_0.norm_sqr()
    }
}

impl Default for QubitState {
    /// Equal-weight superposition, `c0 = c1(0) = 1/√2`.
    fn default() -> Self {
        let a = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self { c0: a, c1_0: a }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Analytic,
    OdeReduction,
    VolterraTrapezoid,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Analytic => "analytic",
            Method::OdeReduction => "ode-reduction",
            Method::VolterraTrapezoid => "volterra-trapezoid",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(Method::Analytic),
            "ode-reduction" | "ode" => Ok(Method::OdeReduction),
            "volterra-trapezoid" | "volterra" => Ok(Method::VolterraTrapezoid),
            other => Err(Error::param(
                "method",
                format!("unknown method `{other}` (analytic | ode-reduction | volterra-trapezoid)"),
            )),
        }
    }
}

/// Fixed-step grid and method used to tabulate `G`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    dt: f64,
    t_max: f64,
    method: Method,
}

impl SolverConfig {
    pub const DEFAULT_DT: f64 = 1e-3;

    pub fn new(dt: f64, t_max: f64, method: Method) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::param("dt", format!("must be > 0, got {dt}")));
        }
        if !(t_max.is_finite() && t_max >= 0.0) {
            return Err(Error::param("t_max", format!("must be >= 0, got {t_max}")));
        }
        if t_max > 0.0 && dt > t_max {
            return Err(Error::param("dt", format!("dt = {dt} exceeds t_max = {t_max}")));
        }
        Ok(Self { dt, t_max, method })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn with_method(self, method: Method) -> Self {
        Self { method, ..self }
    }

    /// Number of steps; the last grid point is the first `k·dt >= t_max`.
    pub fn steps(&self) -> usize {
        (self.t_max / self.dt - 1e-9).ceil().max(0.0) as usize
    }
}

/// `G` sampled on the uniform grid `t_k = k·dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeTrajectory {
    dt: f64,
    values: Vec<Complex64>,
}

impl AmplitudeTrajectory {
    pub fn new(dt: f64, values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::param("values", "trajectory must have at least one sample"));
        }
        if !(dt > 0.0) {
            return Err(Error::param("dt", format!("must be > 0, got {dt}")));
        }
        Ok(Self { dt, values })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn t_max(&self) -> f64 {
        self.dt * (self.values.len() - 1) as f64
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.values.len()).map(move |k| k as f64 * self.dt)
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        self.times().zip(self.values.iter().copied())
    }

    /// Largest `|G|` on the grid.
    pub fn max_modulus(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `max_k |G_k − other(t_k)|`.
    pub fn max_deviation(&self, other: impl Fn(f64) -> Complex64) -> f64 {
        self.samples()
            .map(|(t, v)| (v - other(t)).norm())
            .fold(0.0, f64::max)
    }

    /// Off-grid value by four-point cubic Lagrange interpolation.
    ///
    /// Queries past the last sample extrapolate from the final four points.
    pub fn at(&self, t: f64) -> Complex64 {
        let n = self.values.len();
        if n == 1 {
            return self.values[0];
        }
        let x = t / self.dt;
        if n < 4 {
            let i = (x.floor().max(0.0) as usize).min(n - 2);
            let f = x - i as f64;
            return self.values[i] * (1.0 - f) + self.values[i + 1] * f;
        }
        let i = x.floor().max(0.0) as usize;
        let start = i.saturating_sub(1).min(n - 4);
        let f = x - start as f64;
        let p = &self.values[start..start + 4];
        // nodes at 0, 1, 2, 3 relative to `start`
        let l0 = -(f - 1.0) * (f - 2.0) * (f - 3.0) / 6.0;
        let l1 = f * (f - 2.0) * (f - 3.0) / 2.0;
        let l2 = -f * (f - 1.0) * (f - 3.0) / 2.0;
        let l3 = f * (f - 1.0) * (f - 2.0) / 6.0;
        p[0] * l0 + p[1] * l1 + p[2] * l2 + p[3] * l3
    }

    /// Writes the CSV `t,re_G,im_G,abs_G`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "t,re_G,im_G,abs_G")?;
        for (t, g) in self.samples() {
            writeln!(
                out,
                "{}",
                record([fmt_sig(t), fmt_sig(g.re), fmt_sig(g.im), fmt_sig(g.norm())])
            )?;
        }
        Ok(())
    }
}

impl Propagator for AmplitudeTrajectory {
    fn propagator(&self, t: f64) -> Complex64 {
        self.at(t)
    }
}

/// `sinh(z)/z`, continuous through `z = 0`.
fn sinhc(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        let z2 = z * z;
        Complex64::new(1.0, 0.0) + z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sinh() / z
    }
}

/// Closed-form propagator for the Lorentzian kernel,
///
/// `G(t) = e^{−at/2} (cosh(dt/2) + (a/d) sinh(dt/2))`, `a = λ − iΔ`,
/// `d = √(a² − 2γλ)`.
///
/// The expression is even in `d`, so the branch of the square root does not
/// matter. Near `d = 0` it is evaluated as `cosh z + (at/2)·sinh(z)/z` with a
/// series for small `z`; for large `|z|` it is rewritten as two decaying
/// exponentials so that `cosh` never overflows. Intended for `t >= 0`.
pub fn propagator_analytic(spec: &LorentzianSpectrum, t: f64) -> Complex64 {
    let a = Complex64::new(spec.lambda(), -spec.delta());
    let d = (a * a - 2.0 * spec.gamma() * spec.lambda()).sqrt();
    let z = d * (0.5 * t);
    if z.norm() < 1.0 {
        let half = a * (0.5 * t);
        (-half).exp() * (z.cosh() + half * sinhc(z))
    } else {
        let r = a / d;
        let one = Complex64::new(1.0, 0.0);
        let slow = ((d - a) * (0.5 * t)).exp() * (one + r);
        let fast = ((-d - a) * (0.5 * t)).exp() * (one - r);
        0.5 * (slow + fast)
    }
}

fn grid_len(cfg: &SolverConfig) -> usize {
    cfg.steps() + 1
}

fn check_bounded(dt: f64, t: f64, g: Complex64) -> Result<()> {
    let modulus = g.norm();
    if !(modulus <= 1.0 + 1e-3) {
        return Err(Error::StepTooLarge { dt, t, modulus });
    }
    Ok(())
}

/// Samples the closed form on the solver grid.
pub fn propagator_sampled(spec: &LorentzianSpectrum, cfg: &SolverConfig) -> AmplitudeTrajectory {
    let values = (0..grid_len(cfg))
        .map(|k| propagator_analytic(spec, k as f64 * cfg.dt()))
        .collect();
    AmplitudeTrajectory { dt: cfg.dt(), values }
}

/// Integrates the local system equivalent to the exponential kernel,
///
/// `G' = −(γλ/2) y`, `y' = (iΔ − λ) y + G`, `G(0) = 1`, `y(0) = 0`,
///
/// with classical fourth-order Runge-Kutta.
pub fn propagator_ode(spec: &LorentzianSpectrum, cfg: &SolverConfig) -> Result<AmplitudeTrajectory> {
    let dt = cfg.dt();
    let n = grid_len(cfg);
    let rate = Complex64::new(-spec.lambda(), spec.delta());
    let weight = spec.total_weight();
    let rhs = |g: Complex64, y: Complex64| (-weight * y, rate * y + g);

    let mut values = Vec::with_capacity(n);
    let (mut g, mut y) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    values.push(g);
    for k in 1..n {
        let (g1, y1) = rhs(g, y);
        let (g2, y2) = rhs(g + g1 * (0.5 * dt), y + y1 * (0.5 * dt));
        let (g3, y3) = rhs(g + g2 * (0.5 * dt), y + y2 * (0.5 * dt));
        let (g4, y4) = rhs(g + g3 * dt, y + y3 * dt);
        g += (g1 + 2.0 * g2 + 2.0 * g3 + g4) * (dt / 6.0);
        y += (y1 + 2.0 * y2 + 2.0 * y3 + y4) * (dt / 6.0);
        check_bounded(dt, k as f64 * dt, g)?;
        values.push(g);
    }
    Ok(AmplitudeTrajectory { dt, values })
}

// Gauss-Legendre nodes/weights on [0, 1].
const GL_NODES: [f64; 4] = [
    0.069_431_844_202_973_71,
    0.330_009_478_207_571_87,
    0.669_990_521_792_428_1,
    0.930_568_155_797_026_3,
];
const GL_WEIGHTS: [f64; 4] = [
    0.173_927_422_568_726_93,
    0.326_072_577_431_273_07,
    0.326_072_577_431_273_07,
    0.173_927_422_568_726_93,
];

/// Solves `dG/dt = −∫₀ᵗ g(t−τ) G(τ) dτ`, `G(0) = 1`, for an arbitrary kernel.
///
/// The convolution uses product-integration weights: `G` is taken piecewise
/// linear between grid points and each kernel cell is integrated against the
/// two hat functions by Gauss-Legendre quadrature. The outer derivative is
/// stepped with the trapezoid rule; the equation is linear, so the implicit
/// step is solved in closed form. Global error is O(dt²).
pub fn propagator_volterra<K>(kernel: K, cfg: &SolverConfig) -> Result<AmplitudeTrajectory>
where
    K: Fn(f64) -> Complex64,
{
    let dt = cfg.dt();
    let n = grid_len(cfg);
    let zero = Complex64::new(0.0, 0.0);

    // far[m]: weight of the older end of lag cell [m dt, (m+1) dt],
    // near[m]: weight of the newer end
    let cells = n.saturating_sub(1);
    let mut far = vec![zero; cells];
    let mut near = vec![zero; cells];
    for m in 0..cells {
        for (u, w) in GL_NODES.iter().zip(GL_WEIGHTS) {
            let g = kernel((m as f64 + u) * dt) * (w * dt);
            far[m] += g * *u;
            near[m] += g * (1.0 - u);
        }
    }
    // lag weights for G_j, j >= 1: w[l] = far[l-1] + near[l], stored
    // reversed and split into re/im so the convolution is a contiguous dot
    // product
    let mut lag_re = vec![0.0; cells];
    let mut lag_im = vec![0.0; cells];
    for l in 0..cells {
        let w = if l == 0 { near[0] } else { far[l - 1] + near[l] };
        lag_re[cells - 1 - l] = w.re;
        lag_im[cells - 1 - l] = w.im;
    }

    let mut g_re = Vec::with_capacity(n);
    let mut g_im = Vec::with_capacity(n);
    g_re.push(1.0);
    g_im.push(0.0);
    let mut conv_prev = zero;
    for k in 1..n {
        // Σ_{j=1}^{k-1} w[k-j] G_j, with w[k-j] at reversed index cells-1-k+j
        let lo = cells - k;
        let hi = cells - 1;
        let history = cdot(&lag_re[lo..hi], &lag_im[lo..hi], &g_re[1..k], &g_im[1..k]);
        let known = far[k - 1] + history;
        let prev = Complex64::new(g_re[k - 1], g_im[k - 1]);
        let g_k = (prev - (conv_prev + known) * (0.5 * dt)) / (1.0 + near[0] * (0.5 * dt));
        check_bounded(dt, k as f64 * dt, g_k)?;
        conv_prev = known + near[0] * g_k;
        g_re.push(g_k.re);
        g_im.push(g_k.im);
    }
    let values = g_re
        .into_iter()
        .zip(g_im)
        .map(|(re, im)| Complex64::new(re, im))
        .collect();
    Ok(AmplitudeTrajectory { dt, values })
}

/// Complex dot product `Σ a_i b_i` over split re/im slices.
fn cdot(a_re: &[f64], a_im: &[f64], b_re: &[f64], b_im: &[f64]) -> Complex64 {
    const LANES: usize = 8;
    let n = a_re.len();
    let (mut re, mut im) = ([0.0; LANES], [0.0; LANES]);
    let split = n - n % LANES;
    for c in (0..split).step_by(LANES) {
        let (ar, ai) = (&a_re[c..c + LANES], &a_im[c..c + LANES]);
        let (br, bi) = (&b_re[c..c + LANES], &b_im[c..c + LANES]);
        for l in 0..LANES {
            re[l] += ar[l] * br[l] - ai[l] * bi[l];
            im[l] += ar[l] * bi[l] + ai[l] * br[l];
        }
    }
    let mut acc = Complex64::new(re.iter().sum(), im.iter().sum());
    for i in split..n {
        acc += Complex64::new(a_re[i], a_im[i]) * Complex64::new(b_re[i], b_im[i]);
    }
    acc
}

/// Tabulates `G` for the Lorentzian kernel with the configured method.
pub fn propagate(spec: &LorentzianSpectrum, cfg: &SolverConfig) -> Result<AmplitudeTrajectory> {
    match cfg.method() {
        Method::Analytic => Ok(propagator_sampled(spec, cfg)),
        Method::OdeReduction => propagator_ode(spec, cfg),
        Method::VolterraTrapezoid => propagator_volterra(|s| spec.kernel_unchecked(s), cfg),
    }
}
