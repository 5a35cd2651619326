//! The rational factor carrying the zero and pole of nonpositive type.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::extended::ExtendedPoint;
use crate::jet::Jet;

/// The three shapes of the canonical rational factor. `alpha` is the zero of
/// nonpositive type, `beta` the pole of nonpositive type; a missing
/// parameter sits at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FactorForm {
    /// `(z - alpha)(z - conj alpha) / ((z - beta)(z - conj beta))`.
    BothFinite { alpha: Complex64, beta: Complex64 },
    /// `1 / ((z - beta)(z - conj beta))`; the zero sits at infinity.
    ZeroAtInfinity { beta: Complex64 },
    /// `(z - alpha)(z - conj alpha)`; the pole sits at infinity.
    PoleAtInfinity { alpha: Complex64 },
}

impl FactorForm {
    pub fn validate(&self) -> Result<()> {
        let upper = |w: Complex64| w.im >= 0.0 && w.re.is_finite() && w.im.is_finite();
        match self {
            FactorForm::BothFinite { alpha, beta } => {
                if alpha == beta {
                    return Err(Error::DegenerateFactor);
                }
                if !upper(*alpha) || !upper(*beta) {
                    return Err(Error::InvalidInput {
                        detail: "factor parameters must lie in the closed upper half plane".into(),
                    });
                }
            }
            FactorForm::ZeroAtInfinity { beta } => {
                if !upper(*beta) {
                    return Err(Error::InvalidInput {
                        detail: "beta must lie in the closed upper half plane".into(),
                    });
                }
            }
            FactorForm::PoleAtInfinity { alpha } => {
                if !upper(*alpha) {
                    return Err(Error::InvalidInput {
                        detail: "alpha must lie in the closed upper half plane".into(),
                    });
                }
            }
        }
        Ok(())
    }

    /// The zero of nonpositive type of the factor.
    pub fn alpha(&self) -> ExtendedPoint {
        match self {
            FactorForm::BothFinite { alpha, .. } | FactorForm::PoleAtInfinity { alpha } => {
                ExtendedPoint::Finite(*alpha)
            }
            FactorForm::ZeroAtInfinity { .. } => ExtendedPoint::Infinity,
        }
    }

    /// The pole of nonpositive type of the factor.
    pub fn beta(&self) -> ExtendedPoint {
        match self {
            FactorForm::BothFinite { beta, .. } | FactorForm::ZeroAtInfinity { beta } => {
                ExtendedPoint::Finite(*beta)
            }
            FactorForm::PoleAtInfinity { .. } => ExtendedPoint::Infinity,
        }
    }

    pub fn real_alpha(&self) -> Option<f64> {
        self.alpha().finite().filter(|a| a.im == 0.0).map(|a| a.re)
    }

    pub fn real_beta(&self) -> Option<f64> {
        self.beta().finite().filter(|b| b.im == 0.0).map(|b| b.re)
    }

    /// Jet of the numerator `(z - alpha)(z - conj alpha)` (or 1).
    pub fn numerator_jet(&self, z: Complex64, order: usize) -> Jet {
        match self {
            FactorForm::BothFinite { alpha, .. } | FactorForm::PoleAtInfinity { alpha } => {
                quadratic_jet(*alpha, z, order)
            }
            FactorForm::ZeroAtInfinity { .. } => Jet::constant(Complex64::new(1.0, 0.0), order),
        }
    }

    /// Jet of the denominator `(z - beta)(z - conj beta)` (or 1).
    pub fn denominator_jet(&self, z: Complex64, order: usize) -> Jet {
        match self {
            FactorForm::BothFinite { beta, .. } | FactorForm::ZeroAtInfinity { beta } => {
                quadratic_jet(*beta, z, order)
            }
            FactorForm::PoleAtInfinity { .. } => Jet::constant(Complex64::new(1.0, 0.0), order),
        }
    }
}

/// `(z - w)(z - conj w) = z^2 - 2 Re(w) z + |w|^2`, a real quadratic.
fn quadratic_jet(w: Complex64, z: Complex64, order: usize) -> Jet {
    let v = Jet::variable(z, order);
    v.add_scalar(Complex64::new(-w.re, -w.im))
        .mul(&v.add_scalar(Complex64::new(-w.re, w.im)))
}
