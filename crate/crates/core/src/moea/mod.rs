//! Chaotic-logistic-map random source and the NSGA-II multi-objective
//! optimizer.
//!
//! Every stochastic draw (population init, tournament indices, crossover
//! weights, mutation normals) consumes one global logistic stream in a fixed
//! serial order; fitness evaluation consumes no randomness, so it can run in
//! parallel without perturbing reproducibility.

mod chaos;
mod hypervolume;
mod nsga2;
mod operators;
mod sorting;

pub use chaos::ChaoticRng;
pub use hypervolume::hypervolume;
pub use nsga2::{nsga2_run, GenLogRow, Individual, NsgaConfig, ParetoFront};
pub use operators::{gaussian_mutate, intermediate_crossover, tournament_select};
pub use sorting::{crowding_distance, dominates, non_dominated_sort};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MoeaError {
    /// The logistic seed hits a fixed or periodic point and would collapse
    /// the stream to a constant.
    #[error("degenerate logistic-map state x = {x}")]
    DegenerateState { x: f64 },
    /// Objective vectors of different lengths were compared.
    #[error("objective arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
}
