//! Numerical toolkit for Einstein-Podolsky-Rosen steering and measurement
//! incompatibility, built around the correspondence between bipartite states
//! with a full-rank marginal and quantum channels.
//!
//! The crate covers two regimes:
//!
//! * **Finite dimensions** — density matrices, POVMs and Kraus channels
//!   ([`finite`]), the state-channel duality, analytic joint-measurability
//!   criteria for qubit POVMs ([`jointmeas`]), and a self-contained conic
//!   solver for incompatibility / steering robustness ([`sdp`]). The noisy
//!   NOON-state pipeline lives in [`noon`], the Lorentzian-bath damping
//!   scenario in [`dynamics`].
//! * **Gaussian continuous variables** — everything is carried by parameter
//!   triples (covariance matrices, channel matrices, measurement matrices);
//!   see [`gaussian`] for the symplectic calculus, the Gaussian duality, the
//!   four-way steering test and local-hidden-state extraction.
//!
//! Dense matrix utilities shared by all of the above are in [`matcore`].

pub mod dynamics;
mod error;
pub mod finite;
pub mod gaussian;
pub mod jointmeas;
pub mod matcore;
pub mod noon;
pub mod sdp;

pub use error::{Error, Result};

/// Default tolerances used across the crate. Callers that need tighter
/// checks pass their own tolerances explicitly.
pub mod tol {
    /// Hermiticity check at construction time.
    pub const HERMITICITY: f64 = 1e-12;
    /// Absolute tolerance on the minimum eigenvalue for PSD checks.
    pub const PSD: f64 = 1e-9;
    /// Relative rank tolerance: eigenvalues below `RANK * max` count as zero.
    pub const RANK: f64 = 1e-10;
    /// Trace-normalisation tolerance for states and POVMs.
    pub const TRACE: f64 = 1e-9;
}
