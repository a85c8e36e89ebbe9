use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{LtiError, Polynomial};
use crate::Real;

/// Rational transfer function `num(s)/den(s)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransferFunction<F: Real> {
    pub num: Polynomial<F>,
    pub den: Polynomial<F>,
}

impl<F: Real> TransferFunction<F> {
    pub fn new(num: Polynomial<F>, den: Polynomial<F>) -> Result<Self, LtiError> {
        if den.is_zero() {
            return Err(LtiError::ZeroDenominator);
        }
        Ok(TransferFunction { num, den })
    }

    /// First-order lag `k / (1 + tau*s)`.
    pub fn first_order_lag(k: F, tau: F) -> Self {
        TransferFunction {
            num: Polynomial::constant(k),
            den: Polynomial::new(vec![tau, F::one()]),
        }
    }

    pub fn unity() -> Self {
        TransferFunction {
            num: Polynomial::one(),
            den: Polynomial::one(),
        }
    }

    pub fn constant(k: F) -> Self {
        TransferFunction {
            num: Polynomial::constant(k),
            den: Polynomial::one(),
        }
    }

    /// `deg num <= deg den`; realizable with scalar feedthrough.
    pub fn is_proper(&self) -> bool {
        self.num.is_zero() || self.num.degree() <= self.den.degree()
    }

    pub fn eval(&self, s: Complex<F>) -> Complex<F> {
        self.num.eval_complex(s) / self.den.eval_complex(s)
    }

    /// DC gain `num(0)/den(0)`.
    pub fn dc_gain(&self) -> F {
        self.num.eval(F::zero()) / self.den.eval(F::zero())
    }

    /// Series (cascade) connection. No pole-zero cancellation is performed;
    /// the AVR blocks share no roots and silent cancellation would mask
    /// realization bugs.
    pub fn series(&self, other: &Self) -> Self {
        TransferFunction {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    pub fn scale(&self, k: F) -> Self {
        TransferFunction {
            num: self.num.scale(k),
            den: self.den.clone(),
        }
    }

    /// Parallel connection `self + other` over the common denominator.
    pub fn parallel(&self, other: &Self) -> Self {
        TransferFunction {
            num: self
                .num
                .mul(&other.den)
                .add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    /// Negative feedback `self / (1 + self*sensor)` as a single rational
    /// function.
    pub fn feedback(&self, sensor: &Self) -> Result<Self, LtiError> {
        let num = self.num.mul(&sensor.den);
        let den = self
            .den
            .mul(&sensor.den)
            .add(&self.num.mul(&sensor.num));
        if den.is_zero() {
            return Err(LtiError::DegenerateLoop);
        }
        Ok(TransferFunction { num, den })
    }
}
