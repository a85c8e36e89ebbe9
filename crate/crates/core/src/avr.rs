//! The linearized AVR plant and the two closed-loop simulation protocols.
//!
//! The loop follows the standard AVR topology: the controller acts on the
//! error `e = r - sensor(y)`, drives the amplifier-exciter-generator chain,
//! and the sensor closes the loop. Each input/output channel of interest is
//! assembled as a single rational transfer function over the closed-loop
//! characteristic polynomial and realized once, so the `y`, `u` and `e`
//! traces share one deterministic simulation path.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::folib::{fopid_tf, ControllerGenes, OustaloupConfig};
use crate::lti::{
    simulate, steady_state, LtiError, Polynomial, SimTrace, StateSpace, TransferFunction,
};
use crate::Real;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AvrError {
    #[error("invalid plant parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Lti(#[from] LtiError),
}

/// Gains and time constants of the four first-order AVR blocks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AvrPlantParams<F: Real> {
    #[serde(rename = "KA")]
    pub k_a: F,
    #[serde(rename = "tauA")]
    pub tau_a: F,
    #[serde(rename = "KE")]
    pub k_e: F,
    #[serde(rename = "tauE")]
    pub tau_e: F,
    #[serde(rename = "KG")]
    pub k_g: F,
    #[serde(rename = "tauG")]
    pub tau_g: F,
    #[serde(rename = "KS")]
    pub k_s: F,
    #[serde(rename = "tauS")]
    pub tau_s: F,
}

impl<F: Real> AvrPlantParams<F> {
    /// Nominal values: KA=10, tauA=0.1, KE=1, tauE=0.4, KG=1, tauG=1,
    /// KS=1, tauS=0.01.
    pub fn nominal() -> Self {
        AvrPlantParams {
            k_a: F::of(10.0),
            tau_a: F::of(0.1),
            k_e: F::one(),
            tau_e: F::of(0.4),
            k_g: F::one(),
            tau_g: F::one(),
            k_s: F::one(),
            tau_s: F::of(0.01),
        }
    }

    /// Rejects nonpositive time constants; out-of-range values only produce
    /// warnings (the published exciter range excludes its own nominal value,
    /// so ranges are advisory).
    pub fn validate(&self) -> Result<Vec<String>, AvrError> {
        for (name, tau) in [
            ("tauA", self.tau_a),
            ("tauE", self.tau_e),
            ("tauG", self.tau_g),
            ("tauS", self.tau_s),
        ] {
            if tau <= F::zero() {
                return Err(AvrError::InvalidParams(format!(
                    "{name} must be positive, got {tau}"
                )));
            }
        }
        let mut warnings = Vec::new();
        let mut check = |name: &str, v: F, lo: f64, hi: f64| {
            if v < F::of(lo) || v > F::of(hi) {
                warnings.push(format!("{name} = {v} outside usual range [{lo}, {hi}]"));
            }
        };
        check("KA", self.k_a, 10.0, 400.0);
        check("tauA", self.tau_a, 0.02, 0.1);
        check("KE", self.k_e, 10.0, 400.0);
        check("tauE", self.tau_e, 0.5, 1.0);
        check("KG", self.k_g, 0.7, 1.0);
        check("tauG", self.tau_g, 1.0, 2.0);
        check("tauS", self.tau_s, 0.001, 0.06);
        Ok(warnings)
    }
}

/// Which simulation protocol a trace belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProtocolKind {
    Tracking,
    Disturbance,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimProtocol<F: Real> {
    pub horizon: F,
    pub dt: F,
    pub kind: ProtocolKind,
}

impl<F: Real> SimProtocol<F> {
    pub fn new(horizon: F, dt: F, kind: ProtocolKind) -> Self {
        assert!(horizon > F::zero() && dt > F::zero());
        SimProtocol { horizon, dt, kind }
    }

    pub fn samples(&self) -> usize {
        (self.horizon / self.dt).round().to_usize().expect("horizon/dt fits usize") + 1
    }
}

/// Where the unit load disturbance enters the loop. The generator input is
/// the conventional load-disturbance model and the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DisturbanceInjection {
    GeneratorInput,
    GeneratorOutput,
}

/// Forward chain `KA KE KG / ((1+tauA s)(1+tauE s)(1+tauG s))` and sensor
/// `KS / (1+tauS s)`.
pub fn build_plant<F: Real>(
    params: &AvrPlantParams<F>,
) -> Result<(TransferFunction<F>, TransferFunction<F>), AvrError> {
    params.validate()?;
    let forward = TransferFunction::first_order_lag(params.k_a, params.tau_a)
        .series(&TransferFunction::first_order_lag(params.k_e, params.tau_e))
        .series(&TransferFunction::first_order_lag(params.k_g, params.tau_g));
    let sensor = TransferFunction::first_order_lag(params.k_s, params.tau_s);
    Ok((forward, sensor))
}

/// Closed-loop channels over the shared characteristic polynomial
/// `dc*dg*dh + nc*ng*nh`. Common factors between a channel's path and the
/// loop gain are eliminated structurally (no root finding) when the channels
/// are formed, keeping every realization at the characteristic degree.
#[derive(Debug, Clone)]
pub struct ClosedLoopChannels<F: Real> {
    pub ref_to_y: TransferFunction<F>,
    pub ref_to_u: TransferFunction<F>,
    pub ref_to_e: TransferFunction<F>,
    pub dist_to_y: TransferFunction<F>,
    pub dist_to_u: TransferFunction<F>,
}

pub fn assemble_channels<F: Real>(
    controller: &TransferFunction<F>,
    params: &AvrPlantParams<F>,
    injection: DisturbanceInjection,
) -> Result<ClosedLoopChannels<F>, AvrError> {
    params.validate()?;
    let nc = &controller.num;
    let dc = &controller.den;

    let d_amp = Polynomial::new(vec![params.tau_a, F::one()]);
    let d_exc = Polynomial::new(vec![params.tau_e, F::one()]);
    let d_gen = Polynomial::new(vec![params.tau_g, F::one()]);
    let d_sen = Polynomial::new(vec![params.tau_s, F::one()]);
    let n_gen = Polynomial::constant(params.k_g);
    let n_sen = Polynomial::constant(params.k_s);
    let n_fwd = Polynomial::constant(params.k_a * params.k_e * params.k_g);

    let d_rest = d_amp.mul(&d_exc); // forward denominator without the generator
    let d_fwd = d_rest.mul(&d_gen);

    let open_den = dc.mul(&d_fwd).mul(&d_sen);
    let char_poly = open_den.add(&nc.mul(&n_fwd).mul(&n_sen));
    if char_poly.is_zero() {
        return Err(AvrError::Lti(LtiError::DegenerateLoop));
    }

    let tf = |num: Polynomial<F>| TransferFunction {
        num,
        den: char_poly.clone(),
    };

    let ref_to_y = tf(nc.mul(&n_fwd).mul(&d_sen));
    let ref_to_u = tf(nc.mul(&d_fwd).mul(&d_sen));
    let ref_to_e = tf(open_den.clone());
    let (dist_to_y, dist_to_u) = match injection {
        DisturbanceInjection::GeneratorInput => (
            tf(n_gen.mul(dc).mul(&d_rest).mul(&d_sen)),
            tf(nc.mul(&n_sen).mul(&n_gen).mul(&d_rest).scale(-F::one())),
        ),
        DisturbanceInjection::GeneratorOutput => (
            tf(open_den),
            tf(nc.mul(&n_sen).mul(&d_fwd).scale(-F::one())),
        ),
    };

    Ok(ClosedLoopChannels {
        ref_to_y,
        ref_to_u,
        ref_to_e,
        dist_to_y,
        dist_to_u,
    })
}

/// Realizes a channel, tolerating the one-degree impropriety of the
/// reference-to-control channel in exact-PID mode.
///
/// An ideal derivative acting on the reference step makes that channel
/// improper by exactly one degree; its polynomial part `q1*s + q0` splits
/// into a feedthrough `q0` and a differentiator `q1*s` that has no
/// zero-order-hold representation on the sampled grid (it contributes only
/// an impulse at t=0) and is therefore omitted from the sampled trace.
fn realize_channel<F: Real>(g: &TransferFunction<F>) -> Result<StateSpace<F>, LtiError> {
    if g.is_proper() {
        return StateSpace::from_tf(g);
    }
    if g.num.degree() != g.den.degree() + 1 {
        return Err(LtiError::ImproperTransferFunction {
            num_deg: g.num.degree(),
            den_deg: g.den.degree(),
        });
    }
    let (quot, rem) = g.num.divmod(&g.den);
    let q0 = quot.eval(F::zero());
    let proper = TransferFunction {
        num: rem,
        den: g.den.clone(),
    };
    let mut ss = StateSpace::from_tf(&proper)?;
    ss.d = ss.d + q0;
    Ok(ss)
}

/// Unit reference step at t=0 from rest; records `r`, `y`, `u` and the
/// controller input `e = r - sensor(y)`.
pub fn simulate_tracking<F: Real>(
    genes: &ControllerGenes<F>,
    params: &AvrPlantParams<F>,
    proto: &SimProtocol<F>,
    cfg: &OustaloupConfig<F>,
) -> Result<SimTrace<F>, AvrError> {
    assert_eq!(proto.kind, ProtocolKind::Tracking);
    let controller = fopid_tf(genes, cfg);
    let channels = assemble_channels(&controller, params, DisturbanceInjection::GeneratorInput)?;

    let n = proto.samples();
    let step_input = vec![F::one(); n];

    let ss_y = realize_channel(&channels.ref_to_y).map_err(AvrError::Lti)?;
    let ss_u = realize_channel(&channels.ref_to_u).map_err(AvrError::Lti)?;
    let ss_e = realize_channel(&channels.ref_to_e).map_err(AvrError::Lti)?;

    let y = simulate(&ss_y, &step_input, proto.dt, &vec![F::zero(); ss_y.order()])?;
    let u = simulate(&ss_u, &step_input, proto.dt, &vec![F::zero(); ss_u.order()])?;
    let e = simulate(&ss_e, &step_input, proto.dt, &vec![F::zero(); ss_e.order()])?;

    Ok(SimTrace {
        dt: proto.dt,
        t: (0..n).map(|k| F::of(k as f64) * proto.dt).collect(),
        r: step_input,
        y,
        u,
        e,
    })
}

/// Load-disturbance protocol: the loop is initialized at the closed-loop
/// equilibrium for reference 1 (via [`steady_state`] on the assembled
/// reference channels), then a step disturbance of the given magnitude
/// enters at t=0. The `e` field records `e_ld(t) = 1 - y(t)`.
pub fn simulate_disturbance<F: Real>(
    genes: &ControllerGenes<F>,
    params: &AvrPlantParams<F>,
    proto: &SimProtocol<F>,
    cfg: &OustaloupConfig<F>,
    injection: DisturbanceInjection,
    magnitude: F,
) -> Result<SimTrace<F>, AvrError> {
    assert_eq!(proto.kind, ProtocolKind::Disturbance);
    let controller = fopid_tf(genes, cfg);
    let channels = assemble_channels(&controller, params, injection)?;

    let ss_ry = realize_channel(&channels.ref_to_y).map_err(AvrError::Lti)?;
    let ss_ru = realize_channel(&channels.ref_to_u).map_err(AvrError::Lti)?;
    // equilibrium for reference = 1; fails with SingularEquilibrium when the
    // controller has no integral action (characteristic polynomial root at 0)
    let x_y = steady_state(&ss_ry, F::one())?;
    let x_u = steady_state(&ss_ru, F::one())?;
    let y_eq = ss_ry.output(&x_y, F::one());
    let u_eq = ss_ru.output(&x_u, F::one());

    let n = proto.samples();
    let dist_input = vec![magnitude; n];
    let ss_dy = realize_channel(&channels.dist_to_y).map_err(AvrError::Lti)?;
    let ss_du = realize_channel(&channels.dist_to_u).map_err(AvrError::Lti)?;
    let yd = simulate(&ss_dy, &dist_input, proto.dt, &vec![F::zero(); ss_dy.order()])?;
    let ud = simulate(&ss_du, &dist_input, proto.dt, &vec![F::zero(); ss_du.order()])?;

    let y: Vec<F> = yd.iter().map(|&v| y_eq + v).collect();
    let u: Vec<F> = ud.iter().map(|&v| u_eq + v).collect();
    let e: Vec<F> = y.iter().map(|&v| F::one() - v).collect();

    Ok(SimTrace {
        dt: proto.dt,
        t: (0..n).map(|k| F::of(k as f64) * proto.dt).collect(),
        r: vec![F::one(); n],
        y,
        u,
        e,
    })
}
