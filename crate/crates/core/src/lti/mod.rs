//! Linear time-invariant system algebra and simulation.
//!
//! Transfer functions are ratios of [`Polynomial`]s in the Laplace variable
//! `s` (coefficients stored highest power first). Proper/biproper transfer
//! functions are realized in controllable canonical form and simulated with
//! a fixed-step RK4 integrator under a zero-order-hold input.

mod metrics;
mod poly;
mod sim;
mod ss;
mod tf;

pub use metrics::{step_metrics, StepMetrics};
pub use poly::Polynomial;
pub use sim::{simulate, steady_state, SimTrace};
pub use ss::StateSpace;
pub use tf::TransferFunction;

use thiserror::Error;

/// Errors raised by LTI algebra, realization and simulation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum LtiError {
    /// `deg num > deg den`: the transfer function has no state-space
    /// realization with scalar feedthrough.
    #[error("improper transfer function: numerator degree {num_deg} exceeds denominator degree {den_deg}")]
    ImproperTransferFunction { num_deg: usize, den_deg: usize },
    /// The closed-loop characteristic polynomial vanished identically.
    #[error("degenerate feedback loop: 1 + forward*sensor is identically zero")]
    DegenerateLoop,
    /// A state exceeded the divergence bound during simulation.
    #[error("numerical divergence at step {step}: state magnitude exceeded {bound:e}")]
    NumericalDivergence { step: usize, bound: f64 },
    /// The state matrix is singular; no unique equilibrium exists.
    #[error("singular equilibrium: state matrix is singular within conditioning tolerance")]
    SingularEquilibrium,
    /// The denominator is the zero polynomial.
    #[error("zero denominator polynomial")]
    ZeroDenominator,
}
