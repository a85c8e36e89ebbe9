use serde::{Deserialize, Serialize};

use super::SimTrace;
use crate::Real;

/// Time-domain step-response metrics.
///
/// `settling_time_2pct` is `None` when the output never stays inside the
/// ±2% band around its final value ("not settled").
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepMetrics<F: Real> {
    pub overshoot: F,
    pub settling_time_2pct: Option<F>,
    pub rise_time_10_90: Option<F>,
    pub peak_time: F,
    pub steady_state_value: F,
}

/// Computes step metrics from a trace.
///
/// The final value is the mean of the last 5% of samples rather than an
/// analytic DC gain, so the metrics stay meaningful for perturbed plants.
pub fn step_metrics<F: Real>(trace: &SimTrace<F>) -> StepMetrics<F> {
    assert!(!trace.is_empty(), "metrics require a nonempty trace");
    let y = &trace.y;
    let t = &trace.t;
    let n = y.len();

    let tail = (n / 20).max(1);
    let y_final = y[n - tail..].iter().copied().sum::<F>() / F::of(tail as f64);

    let (peak_idx, &y_max) = y
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap();
    let overshoot = if y_final.abs() > F::zero() {
        ((y_max - y_final) / y_final).max(F::zero())
    } else {
        F::zero()
    };

    // settling: one sample past the last exit of the +/-2% band
    let band = F::of(0.02) * y_final.abs();
    let last_exit = y.iter().rposition(|&v| (v - y_final).abs() > band);
    let settling_time_2pct = match last_exit {
        None => Some(F::zero()),
        Some(i) if i + 1 < n => Some(t[i + 1]),
        Some(_) => None, // still outside the band at the horizon
    };

    let lo = F::of(0.1) * y_final;
    let hi = F::of(0.9) * y_final;
    let i10 = y.iter().position(|&v| v >= lo);
    let i90 = y.iter().position(|&v| v >= hi);
    let rise_time_10_90 = match (i10, i90) {
        (Some(a), Some(b)) if b >= a => Some(t[b] - t[a]),
        _ => None,
    };

    StepMetrics {
        overshoot,
        settling_time_2pct,
        rise_time_10_90,
        peak_time: t[peak_idx],
        steady_state_value: y_final,
    }
}
