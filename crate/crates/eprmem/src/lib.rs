//! Simulation core for continuous-variable entanglement transfer between
//! EPR-correlated light and a pair of intracavity atomic ensembles, with
//! ground-state spin storage and matched-homodyne readout.
//!
//! The crate is organized around the stages of the protocol:
//!
//! - [`gaussian`]: covariance-matrix states, symplectic optics and
//!   entanglement metrics for the light;
//! - [`ensemble`]: physical rates of a cavity + Λ-atom ensemble and the
//!   derived transfer constants;
//! - [`mapping`]: the adiabatic (reduced) model of field → spin transfer,
//!   its spectral form and the pumping-rate optimizer;
//! - [`trajectories`]: stochastic (Euler–Maruyama) cross-check of the
//!   spin fluctuation dynamics;
//! - [`three_level`]: the linearized three-level cavity model solved for
//!   exact steady-state covariances, used as the referee for the reduced
//!   model;
//! - [`readout`]: storage decay and the simulated spectrum-analyzer
//!   measurement chain that recovers the stored inseparability;
//! - [`validate`]: the cross-module invariant suite behind the
//!   `validate` CLI command.
//!
//! All numerics are generic over the floating-point scalar (see
//! [`scalar::Real`]); `f64` aliases for the main types are exported below.

pub mod error;
pub mod gaussian;
pub mod integrate;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

/// Double-precision aliases for the main domain types.
pub type QuadratureState64 = gaussian::QuadratureState<f64>;
pub type SymplecticTransform64 = gaussian::SymplecticTransform<f64>;
