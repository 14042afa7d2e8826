//! Brute-force reference: the qubit coupled to a finite set of bath modes.
//!
//! The Lorentzian density is sampled on a uniform frequency grid and the
//! single-excitation wavefunction
//!
//! ```text
//! c0 |0⟩|vac⟩ + c1(t) |1⟩|vac⟩ + Σ_k c_k(t) |0⟩|1_k⟩
//! ```
//!
//! is integrated in the interaction picture with RK4. Two-time correlators
//! are obtained by inserting σ± between evolution segments, without using
//! any of the closed forms in [`crate::amplitude`] or
//! [`crate::correlators`].
//!
//! σ+ acting on `|0⟩|1_k⟩` leaves the single-excitation sector; only the
//! ground-vacuum and single-excitation amplitudes are modelled, so such
//! components are dropped.

use std::io::{self, Write};

use num_complex::Complex64;

use crate::amplitude::QubitState;
use crate::correlators::TwoTimeCorrelator;
use crate::csv::{fmt_sig, record};
use crate::error::{Error, Result};
use crate::spectral::LorentzianSpectrum;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const MINUS_I: Complex64 = Complex64::new(0.0, -1.0);

/// Largest tolerated relative change of the norm during one evolution.
pub const NORM_DRIFT_LIMIT: f64 = 1e-6;

/// Discrete bath modes `ω_k` with couplings `g_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedBath {
    mode_freqs: Vec<f64>,
    couplings: Vec<Complex64>,
    omega0: f64,
    half_width: f64,
    spectral_width: f64,
}

impl DiscretizedBath {
    /// Builds a bath from explicit modes.
    pub fn from_modes(omega0: f64, mode_freqs: Vec<f64>, couplings: Vec<Complex64>) -> Result<Self> {
        if mode_freqs.is_empty() || mode_freqs.len() != couplings.len() {
            return Err(Error::param(
                "modes",
                "need N >= 1 frequencies and as many couplings",
            ));
        }
        let lo = mode_freqs.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = mode_freqs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok(Self {
            mode_freqs,
            couplings,
            omega0,
            half_width: 0.5 * (hi - lo),
            spectral_width: f64::NAN,
        })
    }

    pub fn len(&self) -> usize {
        self.mode_freqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mode_freqs.is_empty()
    }

    pub fn mode_freqs(&self) -> &[f64] {
        &self.mode_freqs
    }

    pub fn couplings(&self) -> &[Complex64] {
        &self.couplings
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    /// `Σ |g_k|²`, the discrete counterpart of `∫ J dω`.
    pub fn total_coupling(&self) -> f64 {
        self.couplings.iter().map(|g| g.norm_sqr()).sum()
    }

    /// `Σ |g_k|² e^{i(ω0 − ω_k) s}`.
    pub fn kernel(&self, s: f64) -> Complex64 {
        self.mode_freqs
            .iter()
            .zip(&self.couplings)
            .map(|(w, g)| Complex64::from_polar(g.norm_sqr(), (self.omega0 - w) * s))
            .sum()
    }

    /// True when the window is narrower than five spectral widths.
    pub fn is_under_resolved(&self) -> bool {
        self.half_width < 5.0 * self.spectral_width
    }
}

/// Samples `spec` on a uniform midpoint grid over `peak ± half_width`, with
/// `g_k = √(J(ω_k) δω)`.
pub fn discretize(spec: &LorentzianSpectrum, n_modes: usize, half_width: f64) -> Result<DiscretizedBath> {
    if n_modes == 0 {
        return Err(Error::param("n_modes", "must be >= 1"));
    }
    if !(half_width.is_finite() && half_width > 0.0) {
        return Err(Error::param(
            "half_width",
            format!("must be > 0, got {half_width}"),
        ));
    }
    let spacing = 2.0 * half_width / n_modes as f64;
    let lo = spec.peak_frequency() - half_width;
    let mode_freqs: Vec<f64> = (0..n_modes).map(|k| lo + (k as f64 + 0.5) * spacing).collect();
    let couplings = mode_freqs
        .iter()
        .map(|&w| Complex64::new((spec.density(w) * spacing).sqrt(), 0.0))
        .collect();
    Ok(DiscretizedBath {
        mode_freqs,
        couplings,
        omega0: spec.omega0(),
        half_width,
        spectral_width: spec.lambda(),
    })
}

/// Amplitudes in the ground-vacuum plus single-excitation space.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleExcitationState {
    pub c0: Complex64,
    pub c1: Complex64,
    pub modes: Vec<Complex64>,
}

impl SingleExcitationState {
    /// Qubit state with the bath in vacuum.
    pub fn from_qubit(state: &QubitState, n_modes: usize) -> Self {
        Self {
            c0: state.c0(),
            c1: state.c1_0(),
            modes: vec![ZERO; n_modes],
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c0.norm_sqr() + self.c1.norm_sqr() + self.modes.iter().map(|c| c.norm_sqr()).sum::<f64>()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.c0.conj() * other.c0
            + self.c1.conj() * other.c1
            + self
                .modes
                .iter()
                .zip(&other.modes)
                .map(|(a, b)| a.conj() * b)
                .sum::<Complex64>()
    }

    /// σ+ = |1⟩⟨0| on the qubit; `|0⟩|1_k⟩` components leave the modelled
    /// space and are dropped.
    pub fn raise(&self) -> Self {
        Self {
            c0: ZERO,
            c1: self.c0,
            modes: vec![ZERO; self.modes.len()],
        }
    }

    /// σ− = |0⟩⟨1| on the qubit.
    pub fn lower(&self) -> Self {
        Self {
            c0: self.c1,
            c1: ZERO,
            modes: vec![ZERO; self.modes.len()],
        }
    }
}

/// Fixed-step RK4 integrator for the interaction-picture equations
///
/// `dc1/dt = −i Σ g_k e^{i(ω0−ω_k)t} c_k`, `dc_k/dt = −i g_k* e^{−i(ω0−ω_k)t} c1`.
struct Stepper<'a> {
    bath: &'a DiscretizedBath,
    detuning: Vec<f64>,
    phase: Vec<Complex64>,
    half_turn: Vec<Complex64>,
    k: [Vec<Complex64>; 4],
    scratch: Vec<Complex64>,
    mid: Vec<Complex64>,
}

impl<'a> Stepper<'a> {
    fn new(bath: &'a DiscretizedBath) -> Self {
        let n = bath.len();
        let detuning = bath.mode_freqs.iter().map(|w| bath.omega0 - w).collect();
        Self {
            bath,
            detuning,
            phase: vec![ZERO; n],
            half_turn: vec![ZERO; n],
            k: std::array::from_fn(|_| vec![ZERO; n]),
            scratch: vec![ZERO; n],
            mid: vec![ZERO; n],
        }
    }

    fn set_phase(&mut self, t: f64, h: f64) {
        for ((p, r), th) in self.phase.iter_mut().zip(&mut self.half_turn).zip(&self.detuning) {
            *p = Complex64::from_polar(1.0, th * t);
            *r = Complex64::from_polar(1.0, th * 0.5 * h);
        }
    }

    /// Writes `dc_k/dt` into `out`, returns `dc1/dt`.
    fn rhs(
        g: &[Complex64],
        phase: &[Complex64],
        c1: Complex64,
        modes: &[Complex64],
        out: &mut [Complex64],
    ) -> Complex64 {
        let mut acc = ZERO;
        for (((gk, p), ck), o) in g.iter().zip(phase).zip(modes).zip(out.iter_mut()) {
            acc += gk * p * ck;
            *o = MINUS_I * gk.conj() * p.conj() * c1;
        }
        MINUS_I * acc
    }

    /// Integrates `psi` over `[t_from, t_to]`, reporting `(t, c1)` after
    /// every step.
    fn run(
        &mut self,
        psi: &mut SingleExcitationState,
        t_from: f64,
        t_to: f64,
        dt: f64,
        mut on_step: impl FnMut(f64, Complex64),
    ) -> Result<()> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::param("dt", format!("must be > 0, got {dt}")));
        }
        if !(t_to >= t_from) || !t_from.is_finite() || !t_to.is_finite() {
            return Err(Error::param(
                "t_to",
                format!("must satisfy t_to >= t_from, got {t_from} -> {t_to}"),
            ));
        }
        if psi.modes.len() != self.bath.len() {
            return Err(Error::param("state", "mode count differs from the bath"));
        }
        let span = t_to - t_from;
        if span == 0.0 {
            return Ok(());
        }
        let steps = (span / dt - 1e-9).ceil().max(1.0) as usize;
        let h = span / steps as f64;
        let norm0 = psi.norm_sqr();
        let g = &self.bath.couplings;

        for step in 0..steps {
            let t = t_from + step as f64 * h;
            // rotating the phases by repeated multiplication accumulates
            // rounding error; resynchronise periodically
            if step % 256 == 0 {
                self.set_phase(t, h);
            }
            let [k1, k2, k3, k4] = &mut self.k;

            let d1 = Self::rhs(g, &self.phase, psi.c1, &psi.modes, k1);

            for ((m, p), r) in self.mid.iter_mut().zip(&self.phase).zip(&self.half_turn) {
                *m = p * r;
            }
            for ((s, c), k) in self.scratch.iter_mut().zip(&psi.modes).zip(k1.iter()) {
                *s = c + k * (0.5 * h);
            }
            let d2 = Self::rhs(g, &self.mid, psi.c1 + d1 * (0.5 * h), &self.scratch, k2);

            for ((s, c), k) in self.scratch.iter_mut().zip(&psi.modes).zip(k2.iter()) {
                *s = c + k * (0.5 * h);
            }
            let d3 = Self::rhs(g, &self.mid, psi.c1 + d2 * (0.5 * h), &self.scratch, k3);

            for (p, r) in self.phase.iter_mut().zip(&self.half_turn) {
                *p *= r * r;
            }
            for ((s, c), k) in self.scratch.iter_mut().zip(&psi.modes).zip(k3.iter()) {
                *s = c + k * h;
            }
            let d4 = Self::rhs(g, &self.phase, psi.c1 + d3 * h, &self.scratch, k4);

            psi.c1 += (d1 + 2.0 * d2 + 2.0 * d3 + d4) * (h / 6.0);
            for (i, c) in psi.modes.iter_mut().enumerate() {
                *c += (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) * (h / 6.0);
            }

            let norm = psi.norm_sqr();
            let drift = (norm - norm0).abs() / norm0.max(f64::MIN_POSITIVE);
            if norm0 > 0.0 && !(drift <= NORM_DRIFT_LIMIT) {
                return Err(Error::NormDrift {
                    dt: h,
                    t: t + h,
                    drift,
                });
            }
            on_step(t + h, psi.c1);
        }
        Ok(())
    }
}

/// Evolves `psi` from `t_from` to `t_to` (interaction-picture times).
pub fn evolve(
    bath: &DiscretizedBath,
    psi: &SingleExcitationState,
    t_from: f64,
    t_to: f64,
    dt: f64,
) -> Result<SingleExcitationState> {
    let mut out = psi.clone();
    Stepper::new(bath).run(&mut out, t_from, t_to, dt, |_, _| {})?;
    Ok(out)
}

/// `c1(t)` on the grid `k·dt`, `k = 0..=round(t_max/dt)`.
pub fn c1_trajectory(
    bath: &DiscretizedBath,
    state: &QubitState,
    t_max: f64,
    dt: f64,
) -> Result<Vec<(f64, Complex64)>> {
    if !(t_max >= 0.0) {
        return Err(Error::NegativeTime(t_max));
    }
    if !(dt > 0.0) {
        return Err(Error::param("dt", format!("must be > 0, got {dt}")));
    }
    let steps = (t_max / dt - 1e-9).ceil().max(0.0) as usize;
    let psi0 = SingleExcitationState::from_qubit(state, bath.len());
    let mut out = Vec::with_capacity(steps + 1);
    out.push((0.0, psi0.c1));
    let mut psi = psi0;
    let mut k = 0usize;
    Stepper::new(bath).run(&mut psi, 0.0, steps as f64 * dt, dt, |_, c1| {
        k += 1;
        out.push((k as f64 * dt, c1));
    })?;
    Ok(out)
}

/// Which σ± pair `⟨A(t1) B(t2)⟩` to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorPair {
    /// `⟨σ+(t1) σ−(t2)⟩`
    PlusMinus,
    /// `⟨σ−(t1) σ+(t2)⟩`
    MinusPlus,
    /// `⟨σ+(t1) σ+(t2)⟩`
    PlusPlus,
    /// `⟨σ−(t1) σ−(t2)⟩`
    MinusMinus,
}

impl OperatorPair {
    pub fn label(self) -> &'static str {
        match self {
            OperatorPair::PlusMinus => "+-",
            OperatorPair::MinusPlus => "-+",
            OperatorPair::PlusPlus => "++",
            OperatorPair::MinusMinus => "--",
        }
    }

    /// `(is A raising, is B raising)`.
    fn raising(self) -> (bool, bool) {
        match self {
            OperatorPair::PlusMinus => (true, false),
            OperatorPair::MinusPlus => (false, true),
            OperatorPair::PlusPlus => (true, true),
            OperatorPair::MinusMinus => (false, false),
        }
    }

    /// Pair whose swapped-time correlator is the conjugate of this one.
    fn adjoint(self) -> Self {
        match self {
            OperatorPair::PlusPlus => OperatorPair::MinusMinus,
            OperatorPair::MinusMinus => OperatorPair::PlusPlus,
            other => other,
        }
    }
}

fn apply(raise: bool, psi: &SingleExcitationState) -> SingleExcitationState {
    if raise {
        psi.raise()
    } else {
        psi.lower()
    }
}

/// Heisenberg factor picked up by σ± when leaving the interaction picture.
fn frame_phase(raise: bool, omega0: f64, t: f64) -> Complex64 {
    Complex64::from_polar(1.0, if raise { omega0 * t } else { -omega0 * t })
}

/// `⟨Ψ̃(t1)| A Ũ(t1, t2) B |Ψ̃(t2)⟩` for `t1 >= t2`, given `Ψ̃(t2)` and `Ψ̃(t1)`.
fn insertion(
    bath: &DiscretizedBath,
    kind: OperatorPair,
    (t1, psi1): (f64, &SingleExcitationState),
    (t2, psi2): (f64, &SingleExcitationState),
    dt: f64,
) -> Result<Complex64> {
    let (a_raise, b_raise) = kind.raising();
    let kicked = evolve(bath, &apply(b_raise, psi2), t2, t1, dt)?;
    let value = psi1.inner(&apply(a_raise, &kicked));
    let omega0 = bath.omega0();
    Ok(value * frame_phase(a_raise, omega0, t1) * frame_phase(b_raise, omega0, t2))
}

/// Heisenberg-picture `⟨A(t1) B(t2)⟩` by explicit operator insertion.
///
/// For `t1 < t2` the value is the conjugate of the adjoint pair evaluated
/// with swapped times.
pub fn oracle_correlator(
    bath: &DiscretizedBath,
    state: &QubitState,
    kind: OperatorPair,
    t1: f64,
    t2: f64,
    dt: f64,
) -> Result<Complex64> {
    for t in [t1, t2] {
        if !(t >= 0.0) {
            return Err(Error::NegativeTime(t));
        }
    }
    if t1 < t2 {
        return Ok(oracle_correlator(bath, state, kind.adjoint(), t2, t1, dt)?.conj());
    }
    let psi0 = SingleExcitationState::from_qubit(state, bath.len());
    let psi2 = evolve(bath, &psi0, 0.0, t2, dt)?;
    let psi1 = evolve(bath, &psi2, t2, t1, dt)?;
    insertion(bath, kind, (t1, &psi1), (t2, &psi2), dt)
}

/// [`oracle_correlator`] on every ordered pair of `times`, row-major in
/// `(t1, t2)`. The unperturbed trajectory is computed once.
pub fn oracle_correlator_grid(
    bath: &DiscretizedBath,
    state: &QubitState,
    kind: OperatorPair,
    times: &[f64],
    dt: f64,
) -> Result<Vec<TwoTimeCorrelator>> {
    if times.iter().any(|t| !(*t >= 0.0)) {
        return Err(Error::InvalidTauGrid);
    }
    let mut sorted: Vec<f64> = times.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();

    let mut snapshots = Vec::with_capacity(sorted.len());
    let mut psi = SingleExcitationState::from_qubit(state, bath.len());
    let mut now = 0.0;
    for &t in &sorted {
        psi = evolve(bath, &psi, now, t, dt)?;
        now = t;
        snapshots.push(psi.clone());
    }
    let snapshot = |t: f64| {
        let i = sorted.partition_point(|&s| s < t);
        &snapshots[i]
    };

    let pairs: Vec<(f64, f64)> = times
        .iter()
        .flat_map(|&a| times.iter().map(move |&b| (a, b)))
        .collect();
    let eval = |&(t1, t2): &(f64, f64)| -> Result<TwoTimeCorrelator> {
        let value = if t1 >= t2 {
            insertion(bath, kind, (t1, snapshot(t1)), (t2, snapshot(t2)), dt)?
        } else {
            insertion(bath, kind.adjoint(), (t2, snapshot(t2)), (t1, snapshot(t1)), dt)?.conj()
        };
        Ok(TwoTimeCorrelator { t1, t2, value })
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        pairs.par_iter().map(eval).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        pairs.iter().map(eval).collect()
    }
}

/// One row of the `c1` comparison report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct C1Comparison {
    pub t: f64,
    pub oracle: Complex64,
    pub analytic: Complex64,
}

impl C1Comparison {
    pub fn abs_err(&self) -> f64 {
        (self.oracle - self.analytic).norm()
    }
}

/// Oracle `c1(t)` against a reference `c1(0)·G(t)` on the oracle grid.
pub fn compare_c1(
    bath: &DiscretizedBath,
    state: &QubitState,
    reference: impl Fn(f64) -> Complex64,
    t_max: f64,
    dt: f64,
) -> Result<Vec<C1Comparison>> {
    Ok(c1_trajectory(bath, state, t_max, dt)?
        .into_iter()
        .map(|(t, oracle)| C1Comparison {
            t,
            oracle,
            analytic: state.c1_0() * reference(t),
        })
        .collect())
}

/// Writes `t,re_c1_oracle,im_c1_oracle,re_c1_analytic,im_c1_analytic,abs_err`.
pub fn write_c1_report<W: Write>(rows: &[C1Comparison], mut out: W) -> io::Result<()> {
    writeln!(
        out,
        "t,re_c1_oracle,im_c1_oracle,re_c1_analytic,im_c1_analytic,abs_err"
    )?;
    for r in rows {
        writeln!(
            out,
            "{}",
            record(
                [
                    r.t,
                    r.oracle.re,
                    r.oracle.im,
                    r.analytic.re,
                    r.analytic.im,
                    r.abs_err()
                ]
                .map(fmt_sig)
            )
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amplitude::propagator_analytic;
    use crate::correlators::TwoTimeModel;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn spec(gamma: f64, lambda: f64, delta: f64) -> LorentzianSpectrum {
        LorentzianSpectrum::new(gamma, lambda, delta).unwrap()
    }

    #[test]
    fn discretization_geometry() {
        let s = spec(0.5, 5.0, 3.0);
        let one = discretize(&s, 1, 10.0).unwrap();
        assert_eq!(one.mode_freqs(), [s.peak_frequency()]);
        assert!((one.total_coupling() - s.density(s.peak_frequency()) * 20.0).abs() < 1e-15);

        let bath = discretize(&s, 2000, 20.0 * s.lambda()).unwrap();
        assert_eq!(bath.len(), 2000);
        assert!(bath.couplings().iter().all(|g| g.im == 0.0 && g.re >= 0.0));
        assert!(!bath.is_under_resolved());
        assert!(discretize(&s, 100, 4.0 * s.lambda()).unwrap().is_under_resolved());
        assert!(discretize(&s, 0, 1.0).is_err());
        assert!(discretize(&s, 10, 0.0).is_err());
    }

    #[test]
    fn total_coupling_approaches_gamma_lambda_over_two() {
        let s = spec(0.5, 5.0, 0.0);
        let mut last = f64::INFINITY;
        for (n, w) in [(500, 10.0), (1000, 20.0), (2000, 40.0), (4000, 80.0)] {
            let bath = discretize(&s, n, w * s.lambda()).unwrap();
            let gap = (bath.total_coupling() - s.total_weight()).abs();
            assert!(gap < last);
            assert!(gap <= s.tail_fraction(w * s.lambda()) * s.total_weight() + 1e-6);
            last = gap;
        }
    }

    #[test]
    fn discrete_kernel_tracks_analytic_kernel() {
        let s = spec(0.5, 5.0, 0.0);
        let hw = 20.0 * s.lambda();
        let bath = discretize(&s, 2000, hw).unwrap();
        // truncating the Lorentzian tails costs at most their weight
        let bound = s.tail_fraction(hw) * s.total_weight() + 1e-3 * s.total_weight();
        for k in 0..=100 {
            let t = 0.01 * k as f64;
            let err = (bath.kernel(t) - s.memory_kernel(t).unwrap()).norm();
            assert!(err <= bound, "s = {t}: {err}");
        }
    }

    #[test]
    fn zero_coupling_leaves_state_unchanged() {
        let bath = DiscretizedBath::from_modes(1.0, vec![0.5, 1.5], vec![ZERO, ZERO]).unwrap();
        let psi = SingleExcitationState::from_qubit(&QubitState::default(), 2);
        let out = evolve(&bath, &psi, 0.0, 3.0, 1e-2).unwrap();
        assert_eq!(out, psi);
        assert!(DiscretizedBath::from_modes(1.0, vec![0.5], vec![]).is_err());
    }

    #[test]
    fn single_mode_rabi_oscillation() {
        // resonant mode: c1 = cos(g t)
        let g = 0.7;
        let bath = DiscretizedBath::from_modes(1.0, vec![1.0], vec![Complex64::new(g, 0.0)]).unwrap();
        let traj = c1_trajectory(&bath, &QubitState::excited(), 5.0, 1e-3).unwrap();
        for (t, c1) in traj {
            assert!((c1 - Complex64::new((g * t).cos(), 0.0)).norm() < 1e-10, "{t}");
        }
    }

    #[test]
    fn oracle_follows_closed_form_and_conserves_norm() {
        let s = spec(0.5, 5.0, 0.0);
        let bath = discretize(&s, 2000, 20.0 * s.lambda()).unwrap();
        let state = QubitState::default();
        let rows = compare_c1(&bath, &state, |t| propagator_analytic(&s, t), 5.0, 1e-3).unwrap();
        let worst = rows.iter().map(C1Comparison::abs_err).fold(0.0, f64::max);
        assert!(worst <= 1e-3, "{worst}");

        let psi0 = SingleExcitationState::from_qubit(&state, bath.len());
        let psi = evolve(&bath, &psi0, 0.0, 1.0, 1e-3).unwrap();
        assert!((psi.norm_sqr() - 1.0).abs() < 1e-8);
        assert!((psi.c0 - psi0.c0).norm() < 1e-12);
    }

    #[test]
    fn weak_coupling_excited_state() {
        let s = spec(0.01, 5.0, 0.0);
        let bath = discretize(&s, 2000, 20.0 * s.lambda()).unwrap();
        let rows = compare_c1(
            &bath,
            &QubitState::excited(),
            |t| propagator_analytic(&s, t),
            5.0,
            1e-3,
        )
        .unwrap();
        assert!(rows.iter().all(|r| r.abs_err() <= 1e-3));
    }

    #[test]
    fn coarse_steps_trigger_norm_diagnostic() {
        let s = spec(0.5, 5.0, 0.0);
        let bath = discretize(&s, 200, 20.0 * s.lambda()).unwrap();
        let psi = SingleExcitationState::from_qubit(&QubitState::excited(), bath.len());
        let err = evolve(&bath, &psi, 0.0, 5.0, 0.5).unwrap_err();
        assert!(matches!(err, Error::NormDrift { .. }), "{err}");
        assert!(evolve(&bath, &psi, 1.0, 0.5, 1e-3).is_err());
    }

    #[test]
    fn equal_time_insertions() {
        let s = spec(0.1, 5.0, 0.0);
        let bath = discretize(&s, 200, 20.0 * s.lambda()).unwrap();
        let state = QubitState::default();
        let pm = oracle_correlator(&bath, &state, OperatorPair::PlusMinus, 0.0, 0.0, 1e-3).unwrap();
        let mp = oracle_correlator(&bath, &state, OperatorPair::MinusPlus, 0.0, 0.0, 1e-3).unwrap();
        assert!((pm - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        assert!((mp - Complex64::new(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn same_sign_pairs_vanish() {
        let s = spec(0.3, 5.0, 2.0);
        let bath = discretize(&s, 300, 20.0 * s.lambda()).unwrap();
        let state = QubitState::default();
        let times = [0.0, 0.7, 1.3];
        for kind in [OperatorPair::PlusPlus, OperatorPair::MinusMinus] {
            for c in oracle_correlator_grid(&bath, &state, kind, &times, 1e-3).unwrap() {
                assert!(c.value.norm() <= 1e-10, "{} {c:?}", kind.label());
            }
        }
    }

    #[test]
    fn oracle_correlators_match_closed_forms() {
        let s = spec(0.1, 5.0, 0.0);
        let bath = discretize(&s, 2000, 20.0 * s.lambda()).unwrap();
        let state = QubitState::default();
        let model = TwoTimeModel::lorentzian(state, s);
        let (t1, t2) = (1.5, 0.5);
        let pm = oracle_correlator(&bath, &state, OperatorPair::PlusMinus, t1, t2, 1e-3).unwrap();
        let mp = oracle_correlator(&bath, &state, OperatorPair::MinusPlus, t1, t2, 1e-3).unwrap();
        assert!((pm - model.corr_plus_minus(t1, t2).unwrap()).norm() <= 5e-3);
        assert!((mp - model.corr_minus_plus(t1, t2).unwrap()).norm() <= 5e-3);

        // grid and single evaluations agree, including the conjugated ordering
        let grid = oracle_correlator_grid(&bath, &state, OperatorPair::MinusPlus, &[t2, t1], 1e-3).unwrap();
        assert!((grid[2].value - mp).norm() < 1e-12);
        let reversed = oracle_correlator(&bath, &state, OperatorPair::MinusPlus, t2, t1, 1e-3).unwrap();
        assert!((grid[1].value - reversed).norm() < 1e-12);
        assert!((reversed - mp.conj()).norm() < 1e-12);
    }

    #[test]
    fn convergence_with_bath_size() {
        let s = spec(0.5, 5.0, 0.0);
        let state = QubitState::new(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)).unwrap();
        let mut last = f64::INFINITY;
        for (n, w) in [(125, 1.25), (250, 2.5), (500, 5.0), (1000, 10.0)] {
            let bath = discretize(&s, n, w * s.lambda()).unwrap();
            let rows = compare_c1(&bath, &state, |t| propagator_analytic(&s, t), 5.0, 1e-3).unwrap();
            let err = rows.iter().map(C1Comparison::abs_err).fold(0.0, f64::max);
            assert!(err < last, "N = {n}: {err} !< {last}");
            last = err;
        }
    }

    #[test]
    fn report_csv_schema() {
        let rows = [C1Comparison {
            t: 0.5,
            oracle: Complex64::new(FRAC_1_SQRT_2, 0.0),
            analytic: Complex64::new(FRAC_1_SQRT_2, 1e-4),
        }];
        let mut buf = Vec::new();
        write_c1_report(&rows, &mut buf).unwrap();
        let (h, r) = crate::csv::parse_numeric(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(h.len(), 6);
        assert!((r[0][5] - 1e-4).abs() < 1e-15);
    }
}
