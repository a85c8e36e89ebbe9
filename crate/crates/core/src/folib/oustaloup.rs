use serde::{Deserialize, Serialize};

use crate::lti::{Polynomial, TransferFunction};
use crate::Real;

/// Band and half-order of the Oustaloup recursive approximation. The filter
/// order is `2N + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OustaloupConfig<F: Real> {
    pub n: u32,
    pub omega_b: F,
    pub omega_h: F,
}

impl<F: Real> Default for OustaloupConfig<F> {
    /// 5th-order filter fitted over [1e-2, 1e2] rad/s.
    fn default() -> Self {
        OustaloupConfig {
            n: 2,
            omega_b: F::of(1e-2),
            omega_h: F::of(1e2),
        }
    }
}

impl<F: Real> OustaloupConfig<F> {
    pub fn is_valid(&self) -> bool {
        self.n >= 1 && self.omega_b > F::zero() && self.omega_b < self.omega_h
    }
}

/// Band-limited rational approximation of `s^alpha`.
///
/// The order is split as `alpha = n + f` with integer `n` and `|f| <= 0.5`
/// (ties keep `n = trunc(alpha)`); the fractional part goes through the
/// recursive ladder and the integer part multiplies through as exact powers
/// of `s`. The ladder's phase error grows with `|f|` (about 5.8 degrees at
/// the band edges for `|f| = 1` at the default order), so extracting the
/// integer part keeps the in-band phase within 5 degrees of `alpha * 90`
/// for any `|alpha| <= 2`.
///
/// Note the result is improper (proper) by `n` degrees for positive
/// (negative) integer parts.
pub fn oustaloup_filter<F: Real>(alpha: F, cfg: &OustaloupConfig<F>) -> TransferFunction<F> {
    let mut n = alpha.trunc();
    let frac = alpha - n;
    if frac.abs() > F::of(0.5) {
        n = n + frac.signum();
    }
    let mut filter = oustaloup_ladder(alpha - n, cfg);
    let s = Polynomial::new(vec![F::one(), F::zero()]);
    let mut k = n.abs();
    while k > F::zero() {
        if n > F::zero() {
            filter.num = filter.num.mul(&s);
        } else {
            filter.den = filter.den.mul(&s);
        }
        k = k - F::one();
    }
    filter
}

/// The raw recursive ladder of Eq.-style pole/zero placement:
///
/// `s^alpha ~= K prod_{k=-N..N} (s + w'_k)/(s + w_k)` with
/// `w_k  = w_b (w_h/w_b)^{(k+N+(1+alpha)/2)/(2N+1)}`,
/// `w'_k = w_b (w_h/w_b)^{(k+N+(1-alpha)/2)/(2N+1)}` and `K = w_h^alpha`.
///
/// Always biproper of degree `2N + 1`; poles are real-negative. `alpha = 0`
/// collapses to unity since the pole and zero exponents coincide. Used
/// directly by the controller realization, which needs biproper fractional
/// blocks with no exact poles or zeros at the origin.
pub(crate) fn oustaloup_ladder<F: Real>(alpha: F, cfg: &OustaloupConfig<F>) -> TransferFunction<F> {
    assert!(cfg.is_valid(), "invalid Oustaloup configuration");
    if alpha == F::zero() {
        return TransferFunction::unity();
    }

    let order = F::of((2 * cfg.n + 1) as f64);
    let ratio = cfg.omega_h / cfg.omega_b;
    let half = F::of(0.5);

    let mut num = Polynomial::constant(cfg.omega_h.powf(alpha));
    let mut den = Polynomial::one();
    for k in -(cfg.n as i64)..=(cfg.n as i64) {
        let base = F::of(k as f64) + F::of(cfg.n as f64);
        let zero_exp = (base + half * (F::one() - alpha)) / order;
        let pole_exp = (base + half * (F::one() + alpha)) / order;
        let w_zero = cfg.omega_b * ratio.powf(zero_exp);
        let w_pole = cfg.omega_b * ratio.powf(pole_exp);
        num = num.mul(&Polynomial::linear(w_zero));
        den = den.mul(&Polynomial::linear(w_pole));
    }
    TransferFunction { num, den }
}
