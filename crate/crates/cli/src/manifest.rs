use serde::{Deserialize, Serialize};

use foavr::objectives::{CaseId, EvalSettings};
use foavr::{AvrPlantParams64, NsgaConfig64, OustaloupConfig64};

/// Full record of a run's configuration, written next to every output file.
/// An `optimize` run is reproducible from its manifest alone (wall-clock
/// aside) via `optimize --manifest`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub case: Option<CaseId>,
    /// "pid" or "fopid" for optimization runs.
    pub mode: Option<String>,
    pub nsga: Option<NsgaConfig64>,
    pub plant: AvrPlantParams64,
    pub oustaloup: OustaloupConfig64,
    pub eval: EvalSettings<f64>,
    pub seed_x0: Option<f64>,
    pub version: String,
    pub wall_clock_seconds: f64,
}
