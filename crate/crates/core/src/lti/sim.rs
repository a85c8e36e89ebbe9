use serde::{Deserialize, Serialize};

use super::{LtiError, StateSpace};
use crate::Real;

/// Divergence bound on state magnitudes; a trace that exceeds it is rejected
/// and the caller maps it to the penalty objective value.
pub const DIVERGENCE_BOUND: f64 = 1e12;

/// Uniformly sampled closed-loop trace: reference, output, control signal
/// and error, with `t[k] = k*dt`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimTrace<F: Real> {
    pub dt: F,
    pub t: Vec<F>,
    pub r: Vec<F>,
    pub y: Vec<F>,
    pub u: Vec<F>,
    pub e: Vec<F>,
}

impl<F: Real> SimTrace<F> {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.y.iter().chain(&self.u).chain(&self.e).all(|v| v.is_finite())
    }
}

/// Fixed-step RK4 integration with zero-order-hold input.
///
/// `output[k] = C x[k] + D input[k]`; the input is held constant across each
/// step. Returns one output sample per input sample.
pub fn simulate<F: Real>(
    ss: &StateSpace<F>,
    input: &[F],
    dt: F,
    x0: &[F],
) -> Result<Vec<F>, LtiError> {
    assert!(dt > F::zero(), "dt must be positive");
    assert_eq!(x0.len(), ss.order(), "initial state dimension mismatch");
    let n = ss.order();
    let bound = F::of(DIVERGENCE_BOUND);
    let half = F::of(0.5);
    let sixth = F::of(1.0 / 6.0);
    let two = F::of(2.0);

    let mut x = x0.to_vec();
    let mut out = Vec::with_capacity(input.len());
    let mut scratch = vec![F::zero(); n];

    for (step, &u) in input.iter().enumerate() {
        out.push(ss.output(&x, u));

        if step + 1 == input.len() {
            break;
        }

        // dx = A x + B u with u held over the step
        let deriv = |x: &[F], ss: &StateSpace<F>| -> Vec<F> {
            let mut dx = ss.matvec(x);
            for (di, &bi) in dx.iter_mut().zip(&ss.b) {
                *di = *di + bi * u;
            }
            dx
        };

        let k1 = deriv(&x, ss);
        for i in 0..n {
            scratch[i] = x[i] + half * dt * k1[i];
        }
        let k2 = deriv(&scratch, ss);
        for i in 0..n {
            scratch[i] = x[i] + half * dt * k2[i];
        }
        let k3 = deriv(&scratch, ss);
        for i in 0..n {
            scratch[i] = x[i] + dt * k3[i];
        }
        let k4 = deriv(&scratch, ss);
        for i in 0..n {
            x[i] = x[i] + sixth * dt * (k1[i] + two * k2[i] + two * k3[i] + k4[i]);
            if !(x[i].abs() <= bound) {
                return Err(LtiError::NumericalDivergence {
                    step,
                    bound: DIVERGENCE_BOUND,
                });
            }
        }
    }
    Ok(out)
}

/// Equilibrium state for a constant input: solves `A x = -B u`.
pub fn steady_state<F: Real>(ss: &StateSpace<F>, input: F) -> Result<Vec<F>, LtiError> {
    let n = ss.order();
    if n == 0 {
        return Ok(vec![]);
    }
    let mut m: Vec<Vec<F>> = ss.a.clone();
    let mut rhs: Vec<F> = ss.b.iter().map(|&bi| -bi * input).collect();

    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())
            .unwrap();
        // no magnitude threshold here: companion matrices of high-degree
        // characteristic polynomials have entries spanning many orders of
        // magnitude, so a small pivot is often legitimate. Near-singularity
        // is caught by the residual check below instead.
        if m[pivot][col] == F::zero() {
            return Err(LtiError::SingularEquilibrium);
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let p = m[col][col];
        for i in col + 1..n {
            let f = m[i][col] / p;
            for j in col..n {
                let v = m[col][j];
                m[i][j] = m[i][j] - f * v;
            }
            let r = rhs[col];
            rhs[i] = rhs[i] - f * r;
        }
    }
    let mut x = vec![F::zero(); n];
    for i in (0..n).rev() {
        let mut acc = rhs[i];
        for j in i + 1..n {
            acc = acc - m[i][j] * x[j];
        }
        x[i] = acc / m[i][i];
    }

    // verify A x = -B u in a relative sense; an ill-conditioned (near
    // singular) system surfaces here as a large residual
    let x_scale = x.iter().fold(F::zero(), |acc, &v| acc.max(v.abs()));
    let mut residual = F::zero();
    let mut row_scale = F::zero();
    for (i, row) in ss.a.iter().enumerate() {
        let ax: F = row.iter().zip(&x).map(|(&a, &v)| a * v).sum();
        let bu = ss.b[i] * input;
        residual = residual.max((ax + bu).abs());
        let norm: F = row.iter().map(|&a| a.abs()).sum();
        row_scale = row_scale.max(norm * x_scale + bu.abs());
    }
    if !residual.is_finite() || residual > F::of(1e-6) * row_scale.max(F::one()) {
        return Err(LtiError::SingularEquilibrium);
    }
    Ok(x)
}
