//! Building blocks of the spectral measure side of a Herglotz transform.
//!
//! Each term contributes a closed-form Herglotz summand: a point mass, a
//! point mass with the normalized kernel, an absolutely continuous piece on
//! a bounded interval, or one of the primitive functions `log z`, `z^rho`
//! and the constant-imaginary transform of the uniform density.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::quad;

/// Named nonnegative weight for an absolutely continuous density piece.
#[derive(Debug, Clone, PartialEq)]
pub enum Weight {
    Const(f64),
    /// Polynomial in `s` with the given coefficients, constant term first.
    Poly(Vec<f64>),
}

impl Weight {
    pub fn eval(&self, s: f64) -> f64 {
        match self {
            Weight::Const(c) => *c,
            Weight::Poly(coeffs) => {
                let mut acc = 0.0;
                for &c in coeffs.iter().rev() {
                    acc = acc * s + c;
                }
                acc
            }
        }
    }

    fn nonnegative_on(&self, lo: f64, hi: f64) -> bool {
        (0..=100).all(|k| {
            let s = lo + (hi - lo) * (k as f64) / 100.0;
            self.eval(s) >= -1e-12
        })
    }
}

/// One summand of the measure representation.
#[derive(Debug, Clone, PartialEq)]
pub enum MeasureTerm {
    /// `c / (t - z)`.
    PointMass { location: f64, weight: f64 },
    /// `c (1/(t - z) - t/(t^2 + 1))`; the normalized kernel keeps far-away
    /// masses summable.
    RationalTail { location: f64, weight: f64 },
    /// `int_lo^hi (1/(s - z) - s/(s^2 + 1)) w(s) ds`.
    Density { lo: f64, hi: f64, weight: Weight },
    /// `log z`, branch cut on `(-inf, 0]`, `Im log z` in `(0, pi)` upstairs.
    LogPrimitive,
    /// `z^rho` with `rho` in `(0, 1)`, positive on the positive axis.
    PowerPrimitive { exponent: f64 },
    /// `i c`, the transform of the uniform density `c/pi ds` over the whole
    /// line. Closed form for inputs given directly on the upper half plane.
    ConstantImag { weight: f64 },
}

impl MeasureTerm {
    pub fn validate(&self) -> Result<()> {
        let fail = |detail: String| Err(Error::InvalidInput { detail });
        match self {
            MeasureTerm::PointMass { weight, location } => {
                if !(*weight > 0.0) || !location.is_finite() {
                    return fail(format!("point mass needs weight > 0, got {weight}"));
                }
            }
            MeasureTerm::RationalTail { weight, location } => {
                if !(*weight > 0.0) || !location.is_finite() {
                    return fail(format!("rational tail needs weight > 0, got {weight}"));
                }
            }
            MeasureTerm::Density { lo, hi, weight } => {
                if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                    return fail(format!("density needs lo < hi, got [{lo}, {hi}]"));
                }
                if !weight.nonnegative_on(*lo, *hi) {
                    return fail("density weight is negative on its support".into());
                }
            }
            MeasureTerm::PowerPrimitive { exponent } => {
                if !(*exponent > 0.0 && *exponent < 1.0) {
                    return fail(format!("power exponent must lie in (0, 1), got {exponent}"));
                }
            }
            MeasureTerm::ConstantImag { weight } => {
                if !(*weight > 0.0) {
                    return fail(format!("constant term needs weight > 0, got {weight}"));
                }
            }
            MeasureTerm::LogPrimitive => {}
        }
        Ok(())
    }

    /// Closed support of the underlying measure, as an interval; degenerate
    /// intervals are single points.
    pub fn support(&self) -> (f64, f64) {
        match self {
            MeasureTerm::PointMass { location, .. } | MeasureTerm::RationalTail { location, .. } => {
                (*location, *location)
            }
            MeasureTerm::Density { lo, hi, .. } => (*lo, *hi),
            MeasureTerm::LogPrimitive | MeasureTerm::PowerPrimitive { .. } => {
                (f64::NEG_INFINITY, 0.0)
            }
            MeasureTerm::ConstantImag { .. } => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// Checks that a real evaluation point avoids this term's singular set.
    pub fn check_real_point(&self, x: f64) -> Result<()> {
        match self {
            MeasureTerm::PointMass { location, .. } | MeasureTerm::RationalTail { location, .. } => {
                if x == *location {
                    return Err(Error::EvaluationAtSingularity {
                        z: Complex64::new(x, 0.0),
                    });
                }
            }
            MeasureTerm::Density { lo, hi, .. } => {
                if x >= *lo && x <= *hi {
                    return Err(Error::EvaluationAtSingularity {
                        z: Complex64::new(x, 0.0),
                    });
                }
            }
            MeasureTerm::LogPrimitive | MeasureTerm::PowerPrimitive { .. } => {
                if x <= 0.0 {
                    return Err(Error::BranchCutViolation {
                        z: Complex64::new(x, 0.0),
                    });
                }
            }
            MeasureTerm::ConstantImag { .. } => {
                return Err(Error::EvaluationAtSingularity {
                    z: Complex64::new(x, 0.0),
                });
            }
        }
        Ok(())
    }

    /// Taylor jet of the term at `z`, which must lie in the closed upper half
    /// plane and, when real, off the singular set.
    pub fn jet_at(&self, z: Complex64, order: usize, quad_tol: f64) -> Result<Jet> {
        debug_assert!(z.im >= 0.0);
        if z.im == 0.0 {
            self.check_real_point(z.re)?;
        }
        let zero = Complex64::new(0.0, 0.0);
        let mut coeffs = [zero; 4];
        match self {
            MeasureTerm::PointMass { location, weight }
            | MeasureTerm::RationalTail { location, weight } => {
                let t = Complex64::new(*location, 0.0);
                // c/(t - z): Taylor coefficient k is c/(t - z)^{k+1}.
                let mut p = (t - z).finv();
                for c in coeffs.iter_mut().take(order + 1) {
                    *c = *weight * p;
                    p *= (t - z).finv();
                }
                if let MeasureTerm::RationalTail { location, weight } = self {
                    coeffs[0] -= weight * location / (location * location + 1.0);
                }
            }
            MeasureTerm::Density { lo, hi, weight } => {
                let f = |s: f64| {
                    let w = weight.eval(s);
                    let d = (Complex64::new(s, 0.0) - z).finv();
                    let mut v = [zero; quad::QUAD_COMPONENTS];
                    let mut p = d;
                    for item in v.iter_mut().take(order + 1) {
                        *item = w * p;
                        p *= d;
                    }
                    v[0] -= w * s / (s * s + 1.0);
                    v
                };
                let out = quad::integrate_vec(&f, *lo, *hi, order + 1, quad_tol)?;
                coeffs[..=order].copy_from_slice(&out[..=order]);
            }
            MeasureTerm::LogPrimitive => {
                coeffs[0] = z.ln();
                if order >= 1 {
                    coeffs[1] = z.finv();
                }
                if order >= 2 {
                    coeffs[2] = -0.5 * z.powi(-2);
                }
                if order >= 3 {
                    coeffs[3] = z.powi(-3) / 3.0;
                }
            }
            MeasureTerm::PowerPrimitive { exponent } => {
                let rho = *exponent;
                coeffs[0] = z.powf(rho);
                let mut fall = 1.0;
                for (k, c) in coeffs.iter_mut().enumerate().take(order + 1).skip(1) {
                    fall *= rho - (k as f64 - 1.0);
                    let mut fact = 1.0;
                    for j in 2..=k {
                        fact *= j as f64;
                    }
                    *c = fall / fact * z.powf(rho - k as f64);
                }
            }
            MeasureTerm::ConstantImag { weight } => {
                coeffs[0] = Complex64::new(0.0, *weight);
            }
        }
        Ok(Jet::from_taylor(&coeffs[..=order]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn point_mass_closed_form_at_i() {
        // 2/(1 - i) = 1 + i.
        let t = MeasureTerm::PointMass {
            location: 1.0,
            weight: 2.0,
        };
        let jet = t.jet_at(c(0.0, 1.0), 0, 1e-12).unwrap();
        assert_abs_diff_eq!(jet.value().re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(jet.value().im, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn point_mass_derivatives() {
        // 1/(0 - z) = -1/z at z = -1: value 1, deriv 1/z^2 = 1, f'' = 2/(-z)^3...
        let t = MeasureTerm::PointMass {
            location: 0.0,
            weight: 1.0,
        };
        let jet = t.jet_at(c(-1.0, 0.0), 3, 1e-12).unwrap();
        assert_abs_diff_eq!(jet.derivative(0).re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(jet.derivative(1).re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(jet.derivative(2).re, 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(jet.derivative(3).re, 6.0, epsilon = 1e-14);
    }

    #[test]
    fn density_matches_point_mass_limit() {
        // A narrow flat density behaves like a mass of the same total weight.
        let d = MeasureTerm::Density {
            lo: -1e-4,
            hi: 1e-4,
            weight: Weight::Const(0.5 / 1e-4),
        };
        let p = MeasureTerm::RationalTail {
            location: 0.0,
            weight: 0.1,
        };
        let z = c(0.3, 0.7);
        let dv = d.jet_at(z, 1, 1e-12).unwrap();
        let pv = p.jet_at(z, 1, 1e-12).unwrap().scale(c(10.0, 0.0));
        assert_abs_diff_eq!(dv.value().re, pv.value().re, epsilon = 1e-6);
        assert_abs_diff_eq!(dv.value().im, pv.value().im, epsilon = 1e-6);
        assert_abs_diff_eq!(dv.derivative(1).re, pv.derivative(1).re, epsilon = 1e-5);
    }

    #[test]
    fn herglotz_sign_of_primitives() {
        for term in [
            MeasureTerm::LogPrimitive,
            MeasureTerm::PowerPrimitive { exponent: 0.5 },
            MeasureTerm::ConstantImag { weight: 2.0 },
        ] {
            for &z in &[c(0.5, 0.8), c(-1.2, 0.4), c(3.0, 2.0)] {
                let v = term.jet_at(z, 0, 1e-12).unwrap().value();
                assert!(v.im >= 0.0, "Im {term:?} at {z} = {}", v.im);
            }
        }
    }

    #[test]
    fn power_derivative_closed_form() {
        let t = MeasureTerm::PowerPrimitive { exponent: 0.5 };
        let jet = t.jet_at(c(4.0, 0.0), 2, 1e-12).unwrap();
        assert_abs_diff_eq!(jet.derivative(0).re, 2.0, epsilon = 1e-13);
        assert_abs_diff_eq!(jet.derivative(1).re, 0.25, epsilon = 1e-13);
        assert_abs_diff_eq!(jet.derivative(2).re, -1.0 / 32.0, epsilon = 1e-13);
    }

    #[test]
    fn branch_cut_rejected() {
        let t = MeasureTerm::LogPrimitive;
        assert!(matches!(
            t.jet_at(c(-2.0, 0.0), 0, 1e-12),
            Err(Error::BranchCutViolation { .. })
        ));
        let ok = t.jet_at(c(2.0, 0.0), 0, 1e-12).unwrap();
        assert_abs_diff_eq!(ok.value().re, 2.0f64.ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(ok.value().im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn invalid_inputs_rejected() {
        assert!(MeasureTerm::PointMass {
            location: 0.0,
            weight: -1.0
        }
        .validate()
        .is_err());
        assert!(MeasureTerm::PowerPrimitive { exponent: 1.5 }.validate().is_err());
        assert!(MeasureTerm::Density {
            lo: 1.0,
            hi: 0.0,
            weight: Weight::Const(1.0)
        }
        .validate()
        .is_err());
        assert!(MeasureTerm::Density {
            lo: 0.0,
            hi: 1.0,
            weight: Weight::Poly(vec![0.5, -2.0])
        }
        .validate()
        .is_err());
    }
}
