use crate::Real;

/// Grünwald–Letnikov fractional differ-integration of a sampled signal.
///
/// `out[k] = dt^{-alpha} * sum_{j=0..k} w_j f[k-j]` with the binomial weights
/// computed by the recursion `w_0 = 1`, `w_j = w_{j-1} (1 - (alpha+1)/j)`,
/// which avoids Gamma-function overflow for long horizons. The full history
/// is used (no short-memory truncation); this routine is a validation oracle,
/// not part of the optimization loop.
pub fn gl_differint<F: Real>(f: &[F], alpha: F, dt: F) -> Vec<F> {
    assert!(dt > F::zero(), "dt must be positive");
    let n = f.len();
    let mut weights = Vec::with_capacity(n);
    let mut w = F::one();
    weights.push(w);
    for j in 1..n {
        w = w * (F::one() - (alpha + F::one()) / F::of(j as f64));
        weights.push(w);
    }
    let scale = dt.powf(-alpha);
    (0..n)
        .map(|k| {
            let acc: F = (0..=k).map(|j| weights[j] * f[k - j]).sum();
            scale * acc
        })
        .collect()
}
