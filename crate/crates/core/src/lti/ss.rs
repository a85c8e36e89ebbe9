use num_complex::Complex;

use super::{LtiError, TransferFunction};
use crate::Real;

/// State-space realization `dx = Ax + Bu`, `y = Cx + Du` with scalar input
/// and output. `n = 0` represents a pure gain.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSpace<F: Real> {
    pub a: Vec<Vec<F>>,
    pub b: Vec<F>,
    pub c: Vec<F>,
    pub d: F,
}

impl<F: Real> StateSpace<F> {
    pub fn order(&self) -> usize {
        self.a.len()
    }

    /// Controllable canonical realization of a proper or biproper transfer
    /// function.
    pub fn from_tf(g: &TransferFunction<F>) -> Result<Self, LtiError> {
        if !g.is_proper() {
            return Err(LtiError::ImproperTransferFunction {
                num_deg: g.num.degree(),
                den_deg: g.den.degree(),
            });
        }
        let lead = g.den.leading();
        // monic denominator: s^n + a_{n-1} s^{n-1} + ... + a_0
        let den: Vec<F> = g.den.coeffs().iter().map(|&c| c / lead).collect();
        let num: Vec<F> = g.num.coeffs().iter().map(|&c| c / lead).collect();
        let n = den.len() - 1;

        if n == 0 {
            return Ok(StateSpace {
                a: vec![],
                b: vec![],
                c: vec![],
                d: num[0],
            });
        }

        // split off the feedthrough when the function is biproper
        let (d, num_sp) = if num.len() == den.len() {
            let d = num[0];
            let rest: Vec<F> = num
                .iter()
                .zip(den.iter())
                .skip(1)
                .map(|(&b, &a)| b - d * a)
                .collect();
            (d, rest)
        } else {
            (F::zero(), num)
        };

        // pad numerator to length n, lowest power last
        let mut b_coef = vec![F::zero(); n];
        let offset = n - num_sp.len();
        b_coef[offset..].copy_from_slice(&num_sp);

        let mut a = vec![vec![F::zero(); n]; n];
        for (i, row) in a.iter_mut().enumerate().take(n - 1) {
            row[i + 1] = F::one();
        }
        for j in 0..n {
            // den = [1, a_{n-1}, ..., a_0]; last row holds -a_0 .. -a_{n-1}
            a[n - 1][j] = -den[n - j];
        }
        let mut b = vec![F::zero(); n];
        b[n - 1] = F::one();
        // C picks numerator coefficients in ascending power order
        let c: Vec<F> = (0..n).map(|j| b_coef[n - 1 - j]).collect();

        Ok(StateSpace { a, b, c, d })
    }

    pub fn matvec(&self, x: &[F]) -> Vec<F> {
        self.a
            .iter()
            .map(|row| row.iter().zip(x).map(|(&aij, &xj)| aij * xj).sum())
            .collect()
    }

    pub fn output(&self, x: &[F], u: F) -> F {
        let cx: F = self.c.iter().zip(x).map(|(&ci, &xi)| ci * xi).sum();
        cx + self.d * u
    }

    /// Frequency response `C (jwI - A)^{-1} B + D` via a complex linear solve.
    pub fn freq_response(&self, omega: F) -> Complex<F> {
        let n = self.order();
        let d = Complex::new(self.d, F::zero());
        if n == 0 {
            return d;
        }
        let jw = Complex::new(F::zero(), omega);
        // build (jwI - A) augmented with B, solve by Gaussian elimination
        let mut m: Vec<Vec<Complex<F>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let aij = Complex::new(self.a[i][j], F::zero());
                        if i == j {
                            jw - aij
                        } else {
                            -aij
                        }
                    })
                    .collect()
            })
            .collect();
        let mut rhs: Vec<Complex<F>> = self
            .b
            .iter()
            .map(|&bi| Complex::new(bi, F::zero()))
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| {
                    m[i][col]
                        .norm_sqr()
                        .partial_cmp(&m[j][col].norm_sqr())
                        .unwrap()
                })
                .unwrap();
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
        let mut x = vec![Complex::new(F::zero(), F::zero()); n];
        for i in (0..n).rev() {
            let mut acc = rhs[i];
            for j in i + 1..n {
                acc = acc - m[i][j] * x[j];
            }
            x[i] = acc / m[i][i];
        }
        let cx = self
            .c
            .iter()
            .zip(&x)
            .fold(Complex::new(F::zero(), F::zero()), |acc, (&ci, &xi)| {
                acc + xi * Complex::new(ci, F::zero())
            });
        cx + d
    }
}
