//! Two-time correlators of the qubit and Leggett-Garg witnesses built from
//! them.
//!
//! With the environment initially in vacuum and `c1(t) = c1(0) G(t)`:
//!
//! ```text
//! ⟨σ+(t1) σ−(t2)⟩ = |c1(0)|² G(t2) G*(t1) e^{−iω0 (t2 − t1)}
//! ⟨σ−(t1) σ+(t2)⟩ = |c0|² G(t1 − t2) e^{ iω0 (t2 − t1)},   t1 >= t2
//! ```
//!
//! The opposite ordering of the second correlator follows from Hermitian
//! conjugation. The σx measurement correlator is the symmetrised
//! `C_ji = ⟨{σx(t_j), σx(t_i)}⟩ / 2`; `⟨σ±σ±⟩` vanish identically.

use std::fmt;
use std::io::{self, Write};

use num_complex::Complex64;

use crate::amplitude::{Propagator, QubitState};
use crate::csv::{fmt_sig, record};
use crate::error::{Error, Result};
use crate::spectral::LorentzianSpectrum;

/// A correlator value together with the times it was evaluated at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoTimeCorrelator {
    pub t1: f64,
    pub t2: f64,
    pub value: Complex64,
}

impl TwoTimeCorrelator {
    /// Same correlator with the time arguments exchanged.
    pub fn swapped(self) -> Self {
        Self {
            t1: self.t2,
            t2: self.t1,
            value: self.value.conj(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LgiOrder {
    Three,
    Four,
}

impl LgiOrder {
    /// Classical (macrorealist) upper bound of the witness.
    pub fn bound(self) -> f64 {
        match self {
            LgiOrder::Three => 1.0,
            LgiOrder::Four => 2.0,
        }
    }

    pub fn measurements(self) -> usize {
        match self {
            LgiOrder::Three => 3,
            LgiOrder::Four => 4,
        }
    }

    pub fn witness_name(self) -> &'static str {
        match self {
            LgiOrder::Three => "C3",
            LgiOrder::Four => "C4",
        }
    }

    /// Column names of the constituent correlators, in sum order.
    pub fn term_names(self) -> &'static [&'static str] {
        match self {
            LgiOrder::Three => &["C21", "C32", "C31"],
            LgiOrder::Four => &["C21", "C32", "C43", "C41"],
        }
    }
}

impl TryFrom<u32> for LgiOrder {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        match n {
            3 => Ok(LgiOrder::Three),
            4 => Ok(LgiOrder::Four),
            other => Err(Error::param("order", format!("must be 3 or 4, got {other}"))),
        }
    }
}

impl fmt::Display for LgiOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.measurements())
    }
}

/// Measurement times `t_k = t1 + (k − 1) τ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LgiSchedule {
    t1: f64,
    tau: f64,
    order: LgiOrder,
}

impl LgiSchedule {
    pub fn new(t1: f64, tau: f64, order: LgiOrder) -> Result<Self> {
        if !(t1.is_finite() && t1 >= 0.0) {
            return Err(Error::param("t1", format!("must be >= 0, got {t1}")));
        }
        // τ = 0 is the degenerate schedule where every C_ji is an equal-time value
        if !(tau.is_finite() && tau >= 0.0) {
            return Err(Error::param("tau", format!("must be >= 0, got {tau}")));
        }
        Ok(Self { t1, tau, order })
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn order(&self) -> LgiOrder {
        self.order
    }

    /// `t_k` for `k = 1..=order`, so `times()[0] == t1`.
    pub fn times(&self) -> Vec<f64> {
        (0..self.order.measurements())
            .map(|k| self.t1 + k as f64 * self.tau)
            .collect()
    }
}

/// Rounding allowance when comparing a witness with its bound; at `τ = 0`
/// the witness equals the bound up to a few ulps.
pub const VIOLATION_MARGIN: f64 = 1e-12;

/// A witness and the correlators it was summed from.
#[derive(Debug, Clone, PartialEq)]
pub struct LgiValue {
    pub order: LgiOrder,
    /// In the order of [`LgiOrder::term_names`].
    pub c_terms: Vec<f64>,
    pub witness: f64,
    pub bound: f64,
}

impl LgiValue {
    fn from_terms(order: LgiOrder, c_terms: Vec<f64>) -> Self {
        let (last, rest) = c_terms.split_last().expect("at least one term");
        let witness = rest.iter().sum::<f64>() - last;
        Self {
            order,
            c_terms,
            witness,
            bound: order.bound(),
        }
    }

    /// Witness above the bound by more than [`VIOLATION_MARGIN`].
    pub fn violates(&self) -> bool {
        self.witness > self.bound + VIOLATION_MARGIN
    }
}

/// Correlators of a qubit whose excited amplitude evolves with `propagator`.
#[derive(Debug, Clone)]
pub struct TwoTimeModel<P> {
    state: QubitState,
    propagator: P,
    omega0: f64,
}

impl TwoTimeModel<LorentzianSpectrum> {
    /// Model using the closed-form Lorentzian propagator.
    pub fn lorentzian(state: QubitState, spec: LorentzianSpectrum) -> Self {
        Self::new(state, spec, spec.omega0())
    }
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::NegativeTime(t))
    }
}

impl<P: Propagator> TwoTimeModel<P> {
    pub fn new(state: QubitState, propagator: P, omega0: f64) -> Self {
        Self {
            state,
            propagator,
            omega0,
        }
    }

    pub fn state(&self) -> &QubitState {
        &self.state
    }

    pub fn propagator(&self) -> &P {
        &self.propagator
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    fn phase(&self, angle: f64) -> Complex64 {
        Complex64::from_polar(1.0, self.omega0 * angle)
    }

    /// `c1(t) = c1(0) G(t)`.
    pub fn excited_amplitude(&self, t: f64) -> Complex64 {
        self.state.c1_0() * self.propagator.propagator(t)
    }

    /// `⟨σ+(t1) σ−(t2)⟩`.
    pub fn corr_plus_minus(&self, t1: f64, t2: f64) -> Result<Complex64> {
        check_time(t1)?;
        check_time(t2)?;
        let g1 = self.propagator.propagator(t1);
        let g2 = self.propagator.propagator(t2);
        Ok(self.state.excited_population() * g2 * g1.conj() * self.phase(-(t2 - t1)))
    }

    /// `⟨σ−(t1) σ+(t2)⟩`; for `t1 < t2` the conjugate of the swapped value.
    pub fn corr_minus_plus(&self, t1: f64, t2: f64) -> Result<Complex64> {
        check_time(t1)?;
        check_time(t2)?;
        if t1 >= t2 {
            let g = self.propagator.propagator(t1 - t2);
            Ok(self.state.ground_population() * g * self.phase(t2 - t1))
        } else {
            Ok(self.corr_minus_plus(t2, t1)?.conj())
        }
    }

    pub fn correlator_plus_minus(&self, t1: f64, t2: f64) -> Result<TwoTimeCorrelator> {
        Ok(TwoTimeCorrelator {
            t1,
            t2,
            value: self.corr_plus_minus(t1, t2)?,
        })
    }

    pub fn correlator_minus_plus(&self, t1: f64, t2: f64) -> Result<TwoTimeCorrelator> {
        Ok(TwoTimeCorrelator {
            t1,
            t2,
            value: self.corr_minus_plus(t1, t2)?,
        })
    }

    /// Symmetrised σx correlator `C_ji` for `t_i <= t_j`.
    pub fn c_ji(&self, t_i: f64, t_j: f64) -> Result<f64> {
        check_time(t_i)?;
        check_time(t_j)?;
        if t_i > t_j {
            return Err(Error::ReversedTimes { t_i, t_j });
        }
        let sep = t_j - t_i;
        let rotation = self.phase(-sep);
        let gi = self.propagator.propagator(t_i);
        let gj = self.propagator.propagator(t_j);
        let emission = self.state.excited_population() * gj * gi.conj();
        let absorption = self.state.ground_population() * self.propagator.propagator(sep);
        Ok(((emission + absorption) * rotation).re)
    }

    /// `⟨σx(a) σx(b) + σx(b) σx(a)⟩ / 2` summed from the four nonvanishing
    /// σ± correlators, without taking a real part.
    pub fn anticommutator(&self, a: f64, b: f64) -> Result<Complex64> {
        let sum = self.corr_plus_minus(a, b)?
            + self.corr_minus_plus(a, b)?
            + self.corr_plus_minus(b, a)?
            + self.corr_minus_plus(b, a)?;
        Ok(sum * 0.5)
    }

    pub fn lgi(&self, schedule: &LgiSchedule) -> Result<LgiValue> {
        let t = schedule.times();
        let c = |i: usize, j: usize| self.c_ji(t[i], t[j]);
        let terms = match schedule.order() {
            LgiOrder::Three => vec![c(0, 1)?, c(1, 2)?, c(0, 2)?],
            LgiOrder::Four => vec![c(0, 1)?, c(1, 2)?, c(2, 3)?, c(0, 3)?],
        };
        Ok(LgiValue::from_terms(schedule.order(), terms))
    }

    /// `C3 = C21 + C32 − C31`.
    pub fn lgi_c3(&self, t1: f64, tau: f64) -> Result<LgiValue> {
        self.lgi(&LgiSchedule::new(t1, tau, LgiOrder::Three)?)
    }

    /// `C4 = C21 + C32 + C43 − C41`.
    pub fn lgi_c4(&self, t1: f64, tau: f64) -> Result<LgiValue> {
        self.lgi(&LgiSchedule::new(t1, tau, LgiOrder::Four)?)
    }
}

impl<P: Propagator + Sync> TwoTimeModel<P> {
    /// Evaluates the witness on every `τ` of `taus` for a fixed `t1`.
    pub fn violation_scan(&self, t1: f64, taus: &[f64], order: LgiOrder) -> Result<ScanReport> {
        if taus.is_empty() || taus.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
            return Err(Error::InvalidTauGrid);
        }
        if taus.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidTauGrid);
        }
        let eval = |&tau: &f64| -> Result<ScanRow> {
            Ok(ScanRow {
                tau,
                value: self.lgi(&LgiSchedule::new(t1, tau, order)?)?,
            })
        };
        #[cfg(feature = "parallel")]
        let rows = {
            use rayon::prelude::*;
            taus.par_iter().map(eval).collect::<Result<Vec<_>>>()?
        };
        #[cfg(not(feature = "parallel"))]
        let rows = taus.iter().map(eval).collect::<Result<Vec<_>>>()?;
        Ok(ScanReport::from_rows(order, t1, rows))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub tau: f64,
    pub value: LgiValue,
}

/// Witness values over a grid of measurement intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub order: LgiOrder,
    pub t1: f64,
    pub rows: Vec<ScanRow>,
    pub max_witness: f64,
    pub argmax_tau: f64,
    /// Maximal runs of consecutive grid points with witness above the bound,
    /// as `(first τ, last τ)`.
    pub violation_intervals: Vec<(f64, f64)>,
}

impl ScanReport {
    fn from_rows(order: LgiOrder, t1: f64, rows: Vec<ScanRow>) -> Self {
        let (mut max_witness, mut argmax_tau) = (f64::NEG_INFINITY, f64::NAN);
        for r in &rows {
            if r.value.witness > max_witness {
                max_witness = r.value.witness;
                argmax_tau = r.tau;
            }
        }
        let mut violation_intervals = Vec::new();
        let mut open: Option<(f64, f64)> = None;
        for r in &rows {
            match (r.value.violates(), open.as_mut()) {
                (true, Some(run)) => run.1 = r.tau,
                (true, None) => open = Some((r.tau, r.tau)),
                (false, Some(_)) => violation_intervals.extend(open.take()),
                (false, None) => {}
            }
        }
        violation_intervals.extend(open);
        Self {
            order,
            t1,
            rows,
            max_witness,
            argmax_tau,
            violation_intervals,
        }
    }

    pub fn taus(&self) -> impl Iterator<Item = f64> + '_ {
        self.rows.iter().map(|r| r.tau)
    }

    pub fn witnesses(&self) -> impl Iterator<Item = f64> + '_ {
        self.rows.iter().map(|r| r.value.witness)
    }

    pub fn violates(&self) -> bool {
        !self.violation_intervals.is_empty()
    }

    /// Largest grid `τ` with witness above the bound.
    pub fn last_violation_tau(&self) -> Option<f64> {
        self.violation_intervals.last().map(|&(_, end)| end)
    }

    /// Largest `|C_ji|` over all rows.
    pub fn max_abs_term(&self) -> f64 {
        self.rows
            .iter()
            .flat_map(|r| r.value.c_terms.iter())
            .map(|c| c.abs())
            .fold(0.0, f64::max)
    }

    pub fn csv_header(&self) -> String {
        let mut cols = vec!["tau"];
        cols.extend_from_slice(self.order.term_names());
        cols.push(self.order.witness_name());
        record(cols)
    }

    /// Writes one row per `τ`: the constituent correlators and the witness.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{}", self.csv_header())?;
        for r in &self.rows {
            let fields = std::iter::once(r.tau)
                .chain(r.value.c_terms.iter().copied())
                .chain(std::iter::once(r.value.witness))
                .map(fmt_sig);
            writeln!(out, "{}", record(fields))?;
        }
        Ok(())
    }

    /// `max_C4=<v> at tau=<t>; violation_intervals=[(a, b), ...]`
    pub fn summary_line(&self) -> String {
        let intervals: Vec<String> = self
            .violation_intervals
            .iter()
            .map(|(a, b)| format!("({}, {})", fmt_sig(*a), fmt_sig(*b)))
            .collect();
        format!(
            "max_{}={} at tau={}; violation_intervals=[{}]",
            self.order.witness_name(),
            fmt_sig(self.max_witness),
            fmt_sig(self.argmax_tau),
            intervals.join(", ")
        )
    }
}

/// Inclusive uniform grid of `n` points on `[start, end]`.
pub fn linspace(start: f64, end: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (end - start) / (n - 1) as f64;
            (0..n).map(|k| start + step * k as f64).collect()
        }
    }
}

/// The default interval grid: 400 points on `(0, 2π/ω0]`.
pub fn default_tau_grid(omega0: f64) -> Vec<f64> {
    let end = 2.0 * std::f64::consts::PI / omega0;
    linspace(end / 400.0, end, 400)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amplitude::{propagator_analytic, AmplitudeTrajectory};
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn model(gamma: f64, lambda: f64, delta: f64) -> TwoTimeModel<LorentzianSpectrum> {
        TwoTimeModel::lorentzian(
            QubitState::default(),
            LorentzianSpectrum::new(gamma, lambda, delta).unwrap(),
        )
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn equal_time_values() {
        let m = model(0.3, 5.0, 2.0);
        let t = 1.7;
        let g = propagator_analytic(&LorentzianSpectrum::new(0.3, 5.0, 2.0).unwrap(), t);
        let pm = m.corr_plus_minus(t, t).unwrap();
        assert!((pm - c(0.5 * g.norm_sqr(), 0.0)).norm() < 1e-15);
        assert!((m.corr_minus_plus(t, t).unwrap() - c(0.5, 0.0)).norm() < 1e-15);
        assert!((m.c_ji(0.0, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((m.c_ji(t, t).unwrap() - 0.5 * (1.0 + g.norm_sqr())).abs() < 1e-15);
    }

    #[test]
    fn closed_system_correlators() {
        let m = model(0.0, 5.0, 0.0);
        let (t1, t2) = (0.4, 2.9);
        let pm = m.corr_plus_minus(t1, t2).unwrap();
        let mp = m.corr_minus_plus(t1, t2).unwrap();
        assert!((pm - c(0.5, 0.0) * Complex64::from_polar(1.0, -(t2 - t1))).norm() < 1e-12);
        assert!((mp - c(0.5, 0.0) * Complex64::from_polar(1.0, t2 - t1)).norm() < 1e-12);
        for k in 0..50 {
            let tau = 0.13 * k as f64;
            assert!((m.c_ji(1.0, 1.0 + tau).unwrap() - tau.cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn minus_plus_uses_separation_propagator() {
        let spec = LorentzianSpectrum::new(0.5, 5.0, 0.0).unwrap();
        let m = TwoTimeModel::lorentzian(QubitState::default(), spec);
        let (t1, t2) = (3.0, 2.0);
        let expected = 0.5 * propagator_analytic(&spec, 1.0) * Complex64::from_polar(1.0, t2 - t1);
        assert!((m.corr_minus_plus(t1, t2).unwrap() - expected).norm() < 1e-15);
        assert!((m.corr_minus_plus(t2, t1).unwrap() - expected.conj()).norm() < 1e-15);
        assert!(m.corr_plus_minus(50.0, 80.0).unwrap().norm() < 1e-5);
    }

    #[test]
    fn rejects_bad_times() {
        let m = model(0.1, 5.0, 0.0);
        assert!(matches!(m.c_ji(2.0, 1.0), Err(Error::ReversedTimes { .. })));
        assert!(matches!(
            m.corr_plus_minus(-1.0, 1.0),
            Err(Error::NegativeTime(_))
        ));
        assert!(LgiSchedule::new(-1.0, 0.1, LgiOrder::Four).is_err());
        assert!(LgiSchedule::new(0.0, f64::NAN, LgiOrder::Four).is_err());
        assert!(LgiOrder::try_from(5).is_err());
        assert!(m.violation_scan(0.0, &[], LgiOrder::Four).is_err());
        assert!(m.violation_scan(0.0, &[0.2, 0.1], LgiOrder::Four).is_err());
        assert!(m.violation_scan(0.0, &[-0.1, 0.1], LgiOrder::Four).is_err());
    }

    #[test]
    fn degenerate_schedule() {
        for (g, l, d) in [(0.0, 1.0, 0.0), (0.5, 5.0, 0.0), (0.2, 40.0, 50.0)] {
            let m = model(g, l, d);
            assert!((m.lgi_c3(0.0, 0.0).unwrap().witness - 1.0).abs() < 1e-15);
            assert!((m.lgi_c4(0.0, 0.0).unwrap().witness - 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn closed_system_witnesses() {
        let m = model(0.0, 5.0, 0.0);
        for k in 0..100 {
            let tau = 0.0631 * k as f64;
            let c3 = m.lgi_c3(0.0, tau).unwrap();
            let c4 = m.lgi_c4(0.0, tau).unwrap();
            assert!((c3.witness - (2.0 * tau.cos() - (2.0 * tau).cos())).abs() < 1e-12);
            assert!((c4.witness - (3.0 * tau.cos() - (3.0 * tau).cos())).abs() < 1e-12);
            assert_eq!(c3.bound, 1.0);
            assert_eq!(c4.bound, 2.0);
            assert_eq!(c4.c_terms.len(), 4);
        }
        let peak = m.lgi_c3(0.0, PI / 3.0).unwrap().witness;
        assert!((peak - 1.5).abs() < 1e-12);
    }

    #[test]
    fn scan_finds_tsirelson_point() {
        let m = model(0.0, 5.0, 0.0);
        let taus = linspace(0.0, PI, 4001);
        let scan = m.violation_scan(0.0, &taus, LgiOrder::Four).unwrap();
        assert!((scan.max_witness - 2.0 * 2f64.sqrt()).abs() < 1e-6);
        assert!((scan.argmax_tau - PI / 4.0).abs() < 1e-3);
        assert_eq!(scan.violation_intervals.len(), 1);
        // 3cos τ − cos 3τ = 6c − 4c³ > 2 for cos τ > (√3 − 1)/2
        let edge = ((3f64.sqrt() - 1.0) / 2.0).acos();
        let (a, b) = scan.violation_intervals[0];
        assert!(a > 0.0 && a < 1e-3 && (b - edge).abs() < 1e-3, "{a} {b}");
    }

    #[test]
    fn scan_csv_and_summary() {
        let m = model(0.0, 5.0, 0.0);
        let scan = m.violation_scan(0.0, &[0.0, 0.5, 2.0], LgiOrder::Three).unwrap();
        let mut buf = Vec::new();
        scan.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let (header, rows) = crate::csv::parse_numeric(&text).unwrap();
        assert_eq!(header, ["tau", "C21", "C32", "C31", "C3"]);
        assert!(rows[0]
            .iter()
            .zip([0.0, 1.0, 1.0, 1.0, 1.0])
            .all(|(a, b)| (a - b).abs() < 1e-11));
        assert!(scan.summary_line().starts_with("max_C3="));
        assert!(scan.summary_line().contains("violation_intervals=[(0.5, 0.5)]"));

        let scan4 = m.violation_scan(0.0, &[4.0], LgiOrder::Four).unwrap();
        assert_eq!(scan4.csv_header(), "tau,C21,C32,C43,C41,C4");
        assert!(scan4.summary_line().ends_with("violation_intervals=[]"));
    }

    #[test]
    fn interval_bookkeeping() {
        let rows = [1.0, 2.5, 2.6, 1.0, 2.1, 1.9, 2.2]
            .iter()
            .enumerate()
            .map(|(k, &w)| ScanRow {
                tau: k as f64,
                value: LgiValue {
                    order: LgiOrder::Four,
                    c_terms: vec![],
                    witness: w,
                    bound: 2.0,
                },
            })
            .collect();
        let scan = ScanReport::from_rows(LgiOrder::Four, 0.0, rows);
        assert_eq!(scan.violation_intervals, [(1.0, 2.0), (4.0, 4.0), (6.0, 6.0)]);
        assert_eq!(scan.last_violation_tau(), Some(6.0));
        assert_eq!(scan.argmax_tau, 2.0);
    }

    #[test]
    fn trajectory_backed_model_matches_analytic() {
        let spec = LorentzianSpectrum::new(0.1, 5.0, 10.0).unwrap();
        let traj = AmplitudeTrajectory::new(
            1e-3,
            (0..=20_000)
                .map(|k| propagator_analytic(&spec, k as f64 * 1e-3))
                .collect(),
        )
        .unwrap();
        let exact = TwoTimeModel::lorentzian(QubitState::default(), spec);
        let tabulated = TwoTimeModel::new(QubitState::default(), &traj, 1.0);
        for k in 0..60 {
            let tau = 0.1037 * k as f64;
            let a = exact.lgi_c4(0.3, tau).unwrap().witness;
            let b = tabulated.lgi_c4(0.3, tau).unwrap().witness;
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn default_grid() {
        let g = default_tau_grid(1.0);
        assert_eq!(g.len(), 400);
        assert!((g[0] - 2.0 * PI / 400.0).abs() < 1e-15);
        assert!((g[399] - 2.0 * PI).abs() < 1e-12);
    }

    fn any_state() -> impl Strategy<Value = QubitState> {
        (0.0f64..PI / 2.0, 0.0f64..2.0 * PI, 0.0f64..2.0 * PI).prop_map(|(theta, p0, p1)| {
            QubitState::new(
                Complex64::from_polar(theta.cos(), p0),
                Complex64::from_polar(theta.sin(), p1),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn anticommutator_is_real_and_matches(
            state in any_state(), gamma in 0.0f64..1.0, lambda in 0.5f64..40.0,
            delta in -50.0f64..50.0, t_i in 0.0f64..5.0, sep in 0.0f64..5.0,
        ) {
            let m = TwoTimeModel::lorentzian(state, LorentzianSpectrum::new(gamma, lambda, delta).unwrap());
            let t_j = t_i + sep;
            let full = m.anticommutator(t_i, t_j).unwrap();
            let cji = m.c_ji(t_i, t_j).unwrap();
            prop_assert!(full.im.abs() <= 1e-10);
            prop_assert!((full.re - cji).abs() <= 1e-10);
            prop_assert!(cji.abs() <= 1.0 + 1e-9);
            let swapped = m.anticommutator(t_j, t_i).unwrap();
            prop_assert!((swapped - full).norm() <= 1e-12);
        }

        #[test]
        fn swapping_conjugates(
            state in any_state(), gamma in 0.0f64..1.0, lambda in 0.5f64..40.0,
            delta in -50.0f64..50.0, t1 in 0.0f64..5.0, t2 in 0.0f64..5.0,
        ) {
            let m = TwoTimeModel::lorentzian(state, LorentzianSpectrum::new(gamma, lambda, delta).unwrap());
            let pm = m.correlator_plus_minus(t1, t2).unwrap();
            let mp = m.correlator_minus_plus(t1, t2).unwrap();
            prop_assert!((m.corr_plus_minus(t2, t1).unwrap() - pm.swapped().value).norm() <= 1e-14);
            prop_assert!((m.corr_minus_plus(t2, t1).unwrap() - mp.swapped().value).norm() <= 1e-14);
        }

        #[test]
        fn equal_times_anchor_at_origin(state in any_state(), gamma in 0.0f64..1.0, lambda in 0.5f64..40.0) {
            let m = TwoTimeModel::lorentzian(state, LorentzianSpectrum::new(gamma, lambda, 3.0).unwrap());
            prop_assert!((m.lgi_c4(0.0, 0.0).unwrap().witness - 2.0).abs() <= 1e-12);
            prop_assert!((m.lgi_c3(0.0, 0.0).unwrap().witness - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn default_state_is_equal_superposition() {
        let s = QubitState::default();
        assert_eq!(s.c0(), c(FRAC_1_SQRT_2, 0.0));
        assert_eq!(s.c1_0(), c(FRAC_1_SQRT_2, 0.0));
    }
}
