//! Truncated Taylor expansions of order at most three.
//!
//! A `Jet` carries the Taylor coefficients `f(z), f'(z), f''(z)/2!,
//! f'''(z)/3!` of a holomorphic function at a point. Products and quotients
//! combine by truncated convolution, which gives Leibniz and quotient rules
//! for free when composing rational factors, measure sums and fractional
//! linear transforms.

use num_complex::Complex64;

pub const MAX_ORDER: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    coeffs: [Complex64; MAX_ORDER + 1],
    len: usize,
}

impl Jet {
    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut coeffs = [Complex64::new(0.0, 0.0); MAX_ORDER + 1];
        coeffs[0] = c;
        Jet {
            coeffs,
            len: order + 1,
        }
    }

    /// The identity map `z` expanded at `z0`.
    pub fn variable(z0: Complex64, order: usize) -> Self {
        let mut jet = Jet::constant(z0, order);
        if order >= 1 {
            jet.coeffs[1] = Complex64::new(1.0, 0.0);
        }
        jet
    }

    /// Builds a jet directly from Taylor coefficients.
    pub fn from_taylor(coeffs: &[Complex64]) -> Self {
        assert!(!coeffs.is_empty() && coeffs.len() <= MAX_ORDER + 1);
        let mut buf = [Complex64::new(0.0, 0.0); MAX_ORDER + 1];
        buf[..coeffs.len()].copy_from_slice(coeffs);
        Jet {
            coeffs: buf,
            len: coeffs.len(),
        }
    }

    /// Builds a jet from derivative values `f, f', f'', f'''`.
    pub fn from_derivatives(derivs: &[Complex64]) -> Self {
        let mut jet = Jet::from_taylor(derivs);
        let mut fact = 1.0;
        for k in 0..jet.len {
            if k > 1 {
                fact *= k as f64;
            }
            jet.coeffs[k] /= fact;
        }
        jet
    }

    pub fn order(&self) -> usize {
        self.len - 1
    }

    pub fn value(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// The `k`-th derivative, `k! * c_k`.
    pub fn derivative(&self, k: usize) -> Complex64 {
        assert!(k < self.len);
        let mut fact = 1.0;
        for j in 2..=k {
            fact *= j as f64;
        }
        self.coeffs[k] * fact
    }

    /// All derivatives `f, f', ...` up to the jet order.
    pub fn derivatives(&self) -> Vec<Complex64> {
        (0..self.len).map(|k| self.derivative(k)).collect()
    }

    /// Conjugates every coefficient. Evaluating a symmetric function below
    /// the real axis reduces to this applied to the jet at the mirror point.
    pub fn conj(&self) -> Jet {
        let mut out = *self;
        for c in out.coeffs.iter_mut() {
            *c = c.conj();
        }
        out
    }

    pub fn neg(&self) -> Jet {
        let mut out = *self;
        for c in out.coeffs.iter_mut() {
            *c = -*c;
        }
        out
    }

    pub fn add(&self, rhs: &Jet) -> Jet {
        let mut out = *self;
        debug_assert_eq!(self.len, rhs.len);
        for k in 0..self.len {
            out.coeffs[k] += rhs.coeffs[k];
        }
        out
    }

    pub fn sub(&self, rhs: &Jet) -> Jet {
        self.add(&rhs.neg())
    }

    pub fn add_scalar(&self, c: Complex64) -> Jet {
        let mut out = *self;
        out.coeffs[0] += c;
        out
    }

    pub fn scale(&self, c: Complex64) -> Jet {
        let mut out = *self;
        for v in out.coeffs.iter_mut() {
            *v *= c;
        }
        out
    }

    pub fn mul(&self, rhs: &Jet) -> Jet {
        debug_assert_eq!(self.len, rhs.len);
        let mut out = Jet::constant(Complex64::new(0.0, 0.0), self.order());
        for k in 0..self.len {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..=k {
                acc += self.coeffs[j] * rhs.coeffs[k - j];
            }
            out.coeffs[k] = acc;
        }
        out
    }

    /// Truncated quotient; the denominator value must be nonzero.
    pub fn div(&self, rhs: &Jet) -> Jet {
        debug_assert_eq!(self.len, rhs.len);
        let mut out = Jet::constant(Complex64::new(0.0, 0.0), self.order());
        let d0 = rhs.coeffs[0];
        for k in 0..self.len {
            let mut acc = self.coeffs[k];
            for j in 0..k {
                acc -= out.coeffs[j] * rhs.coeffs[k - j];
            }
            out.coeffs[k] = acc / d0;
        }
        out
    }
}
