//! Gaussian states of field quadratures, symplectic optics, and
//! continuous-variable entanglement metrics.
//!
//! Conventions used throughout the crate:
//! - quadratures are `X = A + A†`, `Y = i(A† − A)`, so the vacuum variance
//!   is 1 per quadrature and the separable bound of the inseparability
//!   criterion is exactly 2;
//! - covariance matrices are stored in interleaved ordering
//!   `(X_1, Y_1, X_2, Y_2, ...)`.

mod metrics;
mod state;
mod transform;

pub use metrics::eof_symmetric;
pub use state::QuadratureState;
pub use transform::{readout_basis_rotation, SymplecticTransform};
