use serde::{Deserialize, Serialize};

use super::oustaloup::oustaloup_ladder;
use super::OustaloupConfig;
use crate::lti::{Polynomial, TransferFunction};
use crate::Real;

/// Decision vector of the controller: `C(s) = Kp + Ki/s^lambda + Kd s^mu`.
///
/// `lambda = mu = 1` exactly selects PID mode, realized as the textbook
/// parallel PID rational function with no band-limited approximation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControllerGenes<F: Real> {
    pub kp: F,
    pub ki: F,
    pub kd: F,
    pub lambda: F,
    pub mu: F,
}

impl<F: Real> ControllerGenes<F> {
    pub fn new(kp: F, ki: F, kd: F, lambda: F, mu: F) -> Self {
        ControllerGenes { kp, ki, kd, lambda, mu }
    }

    /// PID genes with both orders pinned to 1.
    pub fn pid(kp: F, ki: F, kd: F) -> Self {
        ControllerGenes {
            kp,
            ki,
            kd,
            lambda: F::one(),
            mu: F::one(),
        }
    }

    pub fn is_pid(&self) -> bool {
        self.lambda == F::one() && self.mu == F::one()
    }

    /// Gain bounds [0, 100], order bounds [0, 2].
    pub fn in_bounds(&self) -> bool {
        let hundred = F::of(100.0);
        let two = F::of(2.0);
        self.kp >= F::zero()
            && self.kp <= hundred
            && self.ki >= F::zero()
            && self.ki <= hundred
            && self.kd >= F::zero()
            && self.kd <= hundred
            && self.lambda >= F::zero()
            && self.lambda <= two
            && self.mu >= F::zero()
            && self.mu <= two
    }
}

/// Realizes the controller as a rational transfer function.
///
/// PID mode returns the exact `(Kd s^2 + Kp s + Ki)/s`. FOPID mode returns
/// `Kp + Ki (1/s) approx(s^{1-lambda}) + Kd approx(s^mu)` combined over a
/// common denominator. The fractional integrator keeps an exact pole at the
/// origin (the direct Oustaloup fit of `s^{-lambda}` has finite DC gain,
/// which would destroy the zero steady-state error); `lambda = 0` degenerates
/// to a pure gain via the `s^0 = 1` identity. Both fractional blocks use the
/// biproper ladder directly (no integer-part extraction) so the controller
/// is biproper for every fractional gene vector.
pub fn fopid_tf<F: Real>(
    genes: &ControllerGenes<F>,
    cfg: &OustaloupConfig<F>,
) -> TransferFunction<F> {
    if genes.is_pid() {
        return TransferFunction {
            num: Polynomial::new(vec![genes.kd, genes.kp, genes.ki]),
            den: Polynomial::new(vec![F::one(), F::zero()]),
        };
    }

    let proportional = TransferFunction::constant(genes.kp);

    let integral = if genes.lambda == F::zero() {
        TransferFunction::constant(genes.ki)
    } else {
        let shaped = oustaloup_ladder(F::one() - genes.lambda, cfg);
        let integrator = TransferFunction {
            num: Polynomial::one(),
            den: Polynomial::new(vec![F::one(), F::zero()]),
        };
        integrator.series(&shaped).scale(genes.ki)
    };

    let derivative = oustaloup_ladder(genes.mu, cfg).scale(genes.kd);

    proportional.parallel(&integral).parallel(&derivative)
}
