//! Integral performance indices and the per-case objective evaluator.
//!
//! - `J1` (ITSE): integral of time-multiplied squared tracking error,
//! - `J2` (ISDCO): integral of the squared deviation of the controller
//!   output from its steady-state value,
//! - `J3`: ITSE of the load-disturbance error.
//!
//! Case I minimizes (J1, J2) over a 10 s horizon; Case II minimizes (J1, J3)
//! and Case III (J1, J3, J2), both over 20 s. All quadratures are
//! left-Riemann sums on the zero-order-hold simulation grid.

use serde::{Deserialize, Serialize};

use crate::avr::{
    simulate_disturbance, simulate_tracking, AvrPlantParams, DisturbanceInjection, ProtocolKind,
    SimProtocol,
};
use crate::folib::{ControllerGenes, OustaloupConfig};
use crate::lti::SimTrace;
use crate::Real;

/// Penalty assigned to every objective component of a divergent simulation;
/// dominated by every feasible solution.
pub const PENALTY: f64 = 1e9;

/// Optimization case selecting the objective set and simulation horizon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseId {
    I,
    II,
    III,
}

impl CaseId {
    pub fn num_objectives(&self) -> usize {
        match self {
            CaseId::I | CaseId::II => 2,
            CaseId::III => 3,
        }
    }

    /// 10 s for Case I; 20 s for Cases II and III (the load-disturbance
    /// response needs the longer window).
    pub fn horizon(&self) -> f64 {
        match self {
            CaseId::I => 10.0,
            CaseId::II | CaseId::III => 20.0,
        }
    }

    /// Objective column labels in table order.
    pub fn labels(&self) -> &'static [&'static str] {
        match self {
            CaseId::I => &["J1", "J2"],
            CaseId::II => &["J1", "J3"],
            CaseId::III => &["J1", "J3", "J2"],
        }
    }

    pub fn needs_disturbance(&self) -> bool {
        matches!(self, CaseId::II | CaseId::III)
    }
}

/// Case-ordered objective values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveVector<F: Real> {
    pub values: Vec<F>,
    pub case_id: CaseId,
}

/// How `J2` reads the control-signal deviation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ControlDeviationMode {
    /// Deviation of `u` from its steady-state value (default).
    Deviation,
    /// Sample-to-sample increment `u_k - u_{k-1}`.
    Increment,
}

/// Evaluation settings shared by every fitness call.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalSettings<F: Real> {
    pub dt: F,
    pub injection: DisturbanceInjection,
    pub j2_mode: ControlDeviationMode,
    /// Replaces the case's default horizon when set.
    pub horizon: Option<F>,
}

impl<F: Real> Default for EvalSettings<F> {
    fn default() -> Self {
        EvalSettings {
            dt: F::of(1e-3),
            injection: DisturbanceInjection::GeneratorInput,
            j2_mode: ControlDeviationMode::Deviation,
            horizon: None,
        }
    }
}

/// `J1 = sum t_k e_k^2 dt` over the tracking trace.
pub fn itse<F: Real>(trace: &SimTrace<F>) -> F {
    left_riemann(&trace.t, &trace.e, trace.dt)
}

/// `J3 = sum t_k e_ld,k^2 dt` over the disturbance trace.
pub fn itse_load<F: Real>(trace: &SimTrace<F>) -> F {
    left_riemann(&trace.t, &trace.e, trace.dt)
}

fn left_riemann<F: Real>(t: &[F], e: &[F], dt: F) -> F {
    let n = t.len();
    if n < 2 {
        return F::zero();
    }
    (0..n - 1).map(|k| t[k] * e[k] * e[k] * dt).sum()
}

/// `J2`: squared deviation of the control signal, either from its
/// steady-state value (mean of the final 5% of samples) or sample-to-sample.
pub fn isdco<F: Real>(trace: &SimTrace<F>, mode: ControlDeviationMode) -> F {
    let u = &trace.u;
    let n = u.len();
    if n < 2 {
        return F::zero();
    }
    match mode {
        ControlDeviationMode::Deviation => {
            let tail = (n / 20).max(1);
            let u_ss = u[n - tail..].iter().copied().sum::<F>() / F::of(tail as f64);
            (0..n - 1)
                .map(|k| (u[k] - u_ss) * (u[k] - u_ss) * trace.dt)
                .sum()
        }
        ControlDeviationMode::Increment => (1..n)
            .map(|k| (u[k] - u[k - 1]) * (u[k] - u[k - 1]) * trace.dt)
            .sum(),
    }
}

/// Runs the simulations a case requires and packages the case-ordered
/// objective vector. A divergent simulation maps every component to the
/// penalty value instead of surfacing an error.
pub fn evaluate<F: Real>(
    genes: &ControllerGenes<F>,
    case_id: CaseId,
    params: &AvrPlantParams<F>,
    cfg: &OustaloupConfig<F>,
    settings: &EvalSettings<F>,
) -> ObjectiveVector<F> {
    let penalty = ObjectiveVector {
        values: vec![F::of(PENALTY); case_id.num_objectives()],
        case_id,
    };

    let horizon = settings.horizon.unwrap_or_else(|| F::of(case_id.horizon()));
    let tracking_proto = SimProtocol::new(horizon, settings.dt, ProtocolKind::Tracking);
    let tracking = match simulate_tracking(genes, params, &tracking_proto, cfg) {
        Ok(t) if t.is_finite() => t,
        _ => return penalty,
    };
    let j1 = itse(&tracking);

    let j3 = if case_id.needs_disturbance() {
        let proto = SimProtocol::new(horizon, settings.dt, ProtocolKind::Disturbance);
        match simulate_disturbance(genes, params, &proto, cfg, settings.injection, F::one()) {
            Ok(t) if t.is_finite() => Some(itse_load(&t)),
            _ => return penalty,
        }
    } else {
        None
    };

    let values = match case_id {
        CaseId::I => vec![j1, isdco(&tracking, settings.j2_mode)],
        CaseId::II => vec![j1, j3.unwrap()],
        CaseId::III => vec![j1, j3.unwrap(), isdco(&tracking, settings.j2_mode)],
    };
    ObjectiveVector { values, case_id }
}
