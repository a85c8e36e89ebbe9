use serde::{Deserialize, Serialize};

use super::MoeaError;
use crate::Real;

/// Logistic-map stream `x_{k+1} = a x_k (1 - x_k)` replacing the uniform
/// random number generator. At `a = 4` the iterates fill (0, 1) chaotically.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChaoticRng<F: Real> {
    a: F,
    x: F,
}

impl<F: Real> Default for ChaoticRng<F> {
    fn default() -> Self {
        ChaoticRng::new(F::of(4.0), F::of(0.2027)).expect("default seed is non-degenerate")
    }
}

impl<F: Real> ChaoticRng<F> {
    /// Seeds the stream. Initial values 0, 0.25, 0.5, 0.75 and 1 land on
    /// fixed or eventually-fixed points of the map and are rejected.
    pub fn new(a: F, x0: F) -> Result<Self, MoeaError> {
        let degenerate = [0.0, 0.25, 0.5, 0.75, 1.0];
        let inside = x0 > F::zero() && x0 < F::one();
        if !inside || degenerate.iter().any(|&d| x0 == F::of(d)) {
            return Err(MoeaError::DegenerateState {
                x: x0.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(ChaoticRng { a, x: x0 })
    }

    pub fn seed(a: f64, x0: f64) -> Result<Self, MoeaError> {
        ChaoticRng::new(F::of(a), F::of(x0))
    }

    pub fn state(&self) -> (F, F) {
        (self.a, self.x)
    }

    /// Next iterate in (0, 1). Rounding can push `a x (1-x)` onto 0 or 1;
    /// the iterate is clamped to [1e-12, 1 - 1e-12] to keep the stream alive.
    pub fn next_value(&mut self) -> F {
        let next = self.a * self.x * (F::one() - self.x);
        let lo = F::of(1e-12);
        let hi = F::one() - lo;
        self.x = next.max(lo).min(hi);
        self.x
    }

    /// Uniform index draw in `0..n`.
    pub fn next_index(&mut self, n: usize) -> usize {
        let v = self.next_value() * F::of(n as f64);
        let idx = v.floor().to_usize().unwrap_or(0);
        idx.min(n - 1)
    }

    /// Standard normal via the Box–Muller transform, consuming two draws.
    ///
    /// The logistic iterates follow the arcsine invariant density, not the
    /// uniform one, so each draw is first uniformized through the map's
    /// probability integral transform `u = (2/pi) asin(sqrt(x))`; Box–Muller
    /// on the raw iterates would inflate the variance by ~65%.
    pub fn next_standard_normal(&mut self) -> F {
        let half_pi = F::of(std::f64::consts::FRAC_PI_2);
        let uniform = |rng: &mut Self| rng.next_value().sqrt().asin() / half_pi;
        let u1 = uniform(self);
        let u2 = uniform(self);
        let two = F::of(2.0);
        let tau = F::of(std::f64::consts::TAU);
        (-two * u1.ln()).sqrt() * (tau * u2).cos()
    }
}
