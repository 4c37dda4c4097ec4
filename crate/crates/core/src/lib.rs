//! Exact time evolution of two harmonic modes coupled through angular
//! momentum: closed-form Bogoliubov propagator, dynamical stability
//! classification, squeezing and entanglement observables, asymptotic
//! approximations, and an independent numerical-integration oracle that
//! certifies the closed form.
//!
//! Everything is generic over the scalar type (`f32` or `f64`) through the
//! [`Real`] trait; the `*64` aliases at the crate root cover the common case.
//! Units fix `hbar = m = 1` and frequencies are angular (rad/time).

pub mod asymptotics;
mod error;
pub mod linalg;
pub mod model;
pub mod normal_modes;
pub mod observables;
pub mod oracle;
mod real;

pub mod propagator;

pub use error::{Error, Result};
pub use real::Real;

pub type ModelParams64 = model::ModelParams<f64>;
pub type Spectrum64 = model::Spectrum<f64>;
pub type Couplings64 = model::Couplings<f64>;
pub type Propagator64 = propagator::Propagator<f64>;
pub type MomentState64 = oracle::MomentState<f64>;
pub type ObservableSample64 = observables::ObservableSample<f64>;
pub type ApproxSample64 = asymptotics::ApproxSample<f64>;
pub type NormalModeDecomposition64 = normal_modes::NormalModeDecomposition<f64>;
