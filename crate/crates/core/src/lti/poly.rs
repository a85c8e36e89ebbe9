use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::Real;

/// Real polynomial in one variable, coefficients stored highest power first.
///
/// The zero polynomial is represented as `[0]`. Leading zeros are stripped on
/// construction so `degree() == coeffs.len() - 1` always holds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial<F: Real> {
    coeffs: Vec<F>,
}

impl<F: Real> Polynomial<F> {
    /// Builds a polynomial from coefficients, highest power first.
    pub fn new(coeffs: Vec<F>) -> Self {
        let first_nonzero = coeffs.iter().position(|c| *c != F::zero());
        match first_nonzero {
            Some(i) => Polynomial {
                coeffs: coeffs[i..].to_vec(),
            },
            None => Polynomial {
                coeffs: vec![F::zero()],
            },
        }
    }

    pub fn zero() -> Self {
        Polynomial {
            coeffs: vec![F::zero()],
        }
    }

    pub fn one() -> Self {
        Polynomial {
            coeffs: vec![F::one()],
        }
    }

    /// The constant polynomial `c`.
    pub fn constant(c: F) -> Self {
        Polynomial::new(vec![c])
    }

    /// The monomial `s + a`.
    pub fn linear(a: F) -> Self {
        Polynomial {
            coeffs: vec![F::one(), a],
        }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == F::zero()
    }

    pub fn leading(&self) -> F {
        self.coeffs[0]
    }

    /// Horner evaluation at a real point.
    pub fn eval(&self, s: F) -> F {
        self.coeffs
            .iter()
            .fold(F::zero(), |acc, &c| acc * s + c)
    }

    /// Horner evaluation at a complex point.
    pub fn eval_complex(&self, s: Complex<F>) -> Complex<F> {
        self.coeffs
            .iter()
            .fold(Complex::new(F::zero(), F::zero()), |acc, &c| {
                acc * s + Complex::new(c, F::zero())
            })
    }

    pub fn scale(&self, k: F) -> Self {
        Polynomial::new(self.coeffs.iter().map(|&c| c * k).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![F::zero(); n];
        for (i, &c) in self.coeffs.iter().rev().enumerate() {
            out[n - 1 - i] = out[n - 1 - i] + c;
        }
        for (i, &c) in other.coeffs.iter().rev().enumerate() {
            out[n - 1 - i] = out[n - 1 - i] + c;
        }
        Polynomial::new(out)
    }

    /// Coefficient convolution; `deg(a*b) = deg(a) + deg(b)`.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Polynomial::new(out)
    }

    /// Euclidean division: returns `(quotient, remainder)` with
    /// `self = quotient*divisor + remainder` and `deg(rem) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.degree() < divisor.degree() || self.is_zero() {
            return (Polynomial::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dn = divisor.coeffs.len();
        let lead = divisor.coeffs[0];
        let qn = rem.len() - dn + 1;
        let mut quot = vec![F::zero(); qn];
        for i in 0..qn {
            let q = rem[i] / lead;
            quot[i] = q;
            for j in 0..dn {
                rem[i + j] = rem[i + j] - q * divisor.coeffs[j];
            }
        }
        (Polynomial::new(quot), Polynomial::new(rem[qn..].to_vec()))
    }
}
