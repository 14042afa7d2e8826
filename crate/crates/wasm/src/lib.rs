//! Browser bindings for the interactive demo page in `www/`.
//!
//! Each exported function has a plain Rust twin returning
//! `lgi_decay::Result`, so the numerics can be tested natively.

use lgi_decay::correlators::default_tau_grid;
use lgi_decay::oracle::{compare_c1, discretize};
use lgi_decay::{propagator_analytic, LgiOrder, LorentzianSpectrum, QubitState, TwoTimeModel};
use wasm_bindgen::prelude::*;

/// A sampled curve `y(x)`.
#[wasm_bindgen]
pub struct Curve {
    x: Vec<f64>,
    y: Vec<f64>,
}

#[wasm_bindgen]
impl Curve {
    #[wasm_bindgen(getter)]
    pub fn x(&self) -> Vec<f64> {
        self.x.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn y(&self) -> Vec<f64> {
        self.y.clone()
    }
}

/// Witness over the default tau grid plus its summary.
#[wasm_bindgen]
pub struct LgiCurve {
    tau: Vec<f64>,
    witness: Vec<f64>,
    bound: f64,
    max: f64,
    argmax: f64,
    intervals: Vec<f64>,
}

#[wasm_bindgen]
impl LgiCurve {
    #[wasm_bindgen(getter)]
    pub fn tau(&self) -> Vec<f64> {
        self.tau.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn witness(&self) -> Vec<f64> {
        self.witness.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn bound(&self) -> f64 {
        self.bound
    }

    #[wasm_bindgen(getter)]
    pub fn max(&self) -> f64 {
        self.max
    }

    #[wasm_bindgen(getter)]
    pub fn argmax(&self) -> f64 {
        self.argmax
    }

    /// Violation intervals flattened as `[a0, b0, a1, b1, ...]`.
    #[wasm_bindgen(getter)]
    pub fn intervals(&self) -> Vec<f64> {
        self.intervals.clone()
    }
}

/// Oracle and analytic `|c1(t)|` side by side.
#[wasm_bindgen]
pub struct OracleComparison {
    t: Vec<f64>,
    analytic: Vec<f64>,
    oracle: Vec<f64>,
    max_error: f64,
}

#[wasm_bindgen]
impl OracleComparison {
    #[wasm_bindgen(getter)]
    pub fn t(&self) -> Vec<f64> {
        self.t.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn analytic(&self) -> Vec<f64> {
        self.analytic.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn oracle(&self) -> Vec<f64> {
        self.oracle.clone()
    }

    #[wasm_bindgen(getter, js_name = maxError)]
    pub fn max_error(&self) -> f64 {
        self.max_error
    }
}

pub fn amplitude_impl(
    gamma: f64,
    lambda: f64,
    delta: f64,
    t_max: f64,
    points: usize,
) -> lgi_decay::Result<Curve> {
    let spec = LorentzianSpectrum::new(gamma, lambda, delta)?;
    let x = lgi_decay::correlators::linspace(0.0, t_max.max(0.0), points.max(2));
    let y = x.iter().map(|&t| propagator_analytic(&spec, t).norm()).collect();
    Ok(Curve { x, y })
}

pub fn lgi_impl(gamma: f64, lambda: f64, delta: f64, t1: f64, order: u32) -> lgi_decay::Result<LgiCurve> {
    let spec = LorentzianSpectrum::new(gamma, lambda, delta)?;
    let order = LgiOrder::try_from(order)?;
    let model = TwoTimeModel::lorentzian(QubitState::default(), spec);
    let report = model.violation_scan(t1, &default_tau_grid(1.0), order)?;
    Ok(LgiCurve {
        tau: report.taus().collect(),
        witness: report.witnesses().collect(),
        bound: order.bound(),
        max: report.max_witness,
        argmax: report.argmax_tau,
        intervals: report
            .violation_intervals
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .collect(),
    })
}

pub fn oracle_impl(
    gamma: f64,
    lambda: f64,
    delta: f64,
    n_modes: usize,
    t_max: f64,
) -> lgi_decay::Result<OracleComparison> {
    let spec = LorentzianSpectrum::new(gamma, lambda, delta)?;
    let bath = discretize(&spec, n_modes, 20.0 * lambda)?;
    let state = QubitState::excited();
    // coarse enough to stay interactive; every 10th step is plotted
    let rows = compare_c1(&bath, &state, |t| propagator_analytic(&spec, t), t_max, 2e-3)?;
    let max_error = rows.iter().map(|r| r.abs_err()).fold(0.0, f64::max);
    let picked = rows.iter().step_by(10);
    Ok(OracleComparison {
        t: picked.clone().map(|r| r.t).collect(),
        analytic: picked.clone().map(|r| r.analytic.norm()).collect(),
        oracle: picked.map(|r| r.oracle.norm()).collect(),
        max_error,
    })
}

fn js(e: lgi_decay::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// `|G(t)|` on `points` samples of `[0, t_max]`.
#[wasm_bindgen]
pub fn amplitude(gamma: f64, lambda: f64, delta: f64, t_max: f64, points: usize) -> Result<Curve, JsError> {
    amplitude_impl(gamma, lambda, delta, t_max, points).map_err(js)
}

/// Witness `C3` or `C4` over `ω0 τ ∈ (0, 2π]` for the equal superposition.
#[wasm_bindgen]
pub fn lgi(gamma: f64, lambda: f64, delta: f64, t1: f64, order: u32) -> Result<LgiCurve, JsError> {
    lgi_impl(gamma, lambda, delta, t1, order).map_err(js)
}

/// Discretized-bath `c1(t)` against the closed form, qubit initially excited.
#[wasm_bindgen(js_name = oracleCheck)]
pub fn oracle_check(
    gamma: f64,
    lambda: f64,
    delta: f64,
    n_modes: usize,
    t_max: f64,
) -> Result<OracleComparison, JsError> {
    oracle_impl(gamma, lambda, delta, n_modes, t_max).map_err(js)
}
