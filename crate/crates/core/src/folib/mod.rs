//! Fractional-order operators and the FOPID controller realization.
//!
//! The frequency-domain route (band-limited Oustaloup rational approximation
//! of `s^alpha`) is the implementation used inside the optimization loop.
//! The Grünwald–Letnikov differ-integrator is a time-domain cross-validation
//! oracle only.

mod fopid;
mod grunwald;
mod oustaloup;

pub use fopid::{fopid_tf, ControllerGenes};
pub use grunwald::gl_differint;
pub use oustaloup::{oustaloup_filter, OustaloupConfig};
