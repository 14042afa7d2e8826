//! Exact two-time correlation functions and Leggett-Garg witnesses for a
//! qubit spontaneously decaying into a bosonic bath with a Lorentzian
//! spectral density.
//!
//! All frequencies are measured in units of the qubit transition frequency
//! `omega0` and all times in units of `1/omega0`.
//!
//! The crate is organised bottom-up:
//!
//! * [`spectral`]: spectral densities and the bath memory kernel.
//! * [`amplitude`]: the excited-state propagator `G(t)`, computed in closed
//!   form, by an ODE reduction of the exponential kernel, and by a generic
//!   Volterra product-integration solver.
//! * [`correlators`]: Heisenberg-picture two-time correlators, the
//!   symmetrised `C_ji` and the `C3`/`C4` witnesses.
//! * [`oracle`]: brute-force evolution of the qubit coupled to a finite set
//!   of bath modes, used to cross-check everything above.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod amplitude;
pub mod correlators;
pub mod csv;
mod error;
pub mod oracle;
pub mod spectral;

pub use amplitude::{
    propagator_analytic, propagator_ode, propagator_volterra, AmplitudeTrajectory, Method, Propagator,
    QubitState, SolverConfig,
};
pub use correlators::{LgiOrder, LgiSchedule, LgiValue, ScanReport, TwoTimeCorrelator, TwoTimeModel};
pub use error::{Error, Result};
pub use oracle::{DiscretizedBath, OperatorPair, SingleExcitationState};
pub use spectral::{KernelValue, LorentzianSpectrum, TabulatedSpectrum};

pub use num_complex::Complex64;
