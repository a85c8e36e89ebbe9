//! Multi-objective tuning of integer-order PID and fractional-order PID
//! controllers for a linearized Automatic Voltage Regulator plant.
//!
//! The crate is organized in five layers:
//!
//! - [`lti`] — polynomial/transfer-function algebra, state-space realization
//!   and fixed-step closed-loop simulation,
//! - [`folib`] — fractional-order operators (Oustaloup band-limited rational
//!   approximation, Grünwald–Letnikov differ-integration) and the FOPID
//!   controller realization,
//! - [`avr`] — the AVR plant model and the two closed-loop simulation
//!   protocols (set-point tracking, load-disturbance rejection),
//! - [`objectives`] — the integral performance indices J1/J2/J3 and the
//!   per-case objective evaluator,
//! - [`moea`] — the chaotic-logistic-map random source and the NSGA-II
//!   optimizer.
//!
//! All numeric code is generic over the [`Real`] scalar trait; the `*64`
//! aliases below pin the common `f64` instantiations.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive};

pub mod avr;
pub mod folib;
pub mod lti;
pub mod moea;
pub mod objectives;

/// Scalar type used throughout the crate. In practice this is `f32` or `f64`.
pub trait Real:
    Float + FromPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    /// Lossy conversion from `f64`, used for constants.
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("constant representable in scalar type")
    }
}

impl<T> Real for T where
    T: Float + FromPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
}

pub type Poly64 = lti::Polynomial<f64>;
pub type Tf64 = lti::TransferFunction<f64>;
pub type StateSpace64 = lti::StateSpace<f64>;
pub type SimTrace64 = lti::SimTrace<f64>;
pub type ControllerGenes64 = folib::ControllerGenes<f64>;
pub type OustaloupConfig64 = folib::OustaloupConfig<f64>;
pub type AvrPlantParams64 = avr::AvrPlantParams<f64>;
pub type ChaoticRng64 = moea::ChaoticRng<f64>;
pub type NsgaConfig64 = moea::NsgaConfig<f64>;
