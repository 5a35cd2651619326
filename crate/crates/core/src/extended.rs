//! Points of the extended real line and the extended upper half plane,
//! together with the chordal metric of the Riemann sphere.

use num_complex::Complex64;

/// A value in `[-inf, +inf]`: the two infinities plus finite reals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedReal {
    NegInfinity,
    Finite(f64),
    PosInfinity,
}

impl ExtendedReal {
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedReal::Finite(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedReal::Finite(_))
    }

    /// Total order with `-inf` first and `+inf` last.
    pub fn cmp_total(self, other: ExtendedReal) -> std::cmp::Ordering {
        self.as_f64().total_cmp(&other.as_f64())
    }

    fn as_f64(self) -> f64 {
        match self {
            ExtendedReal::NegInfinity => f64::NEG_INFINITY,
            ExtendedReal::Finite(x) => x,
            ExtendedReal::PosInfinity => f64::INFINITY,
        }
    }
}

impl std::fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtendedReal::NegInfinity => write!(f, "-inf"),
            ExtendedReal::Finite(x) => write!(f, "{x}"),
            ExtendedReal::PosInfinity => write!(f, "inf"),
        }
    }
}

/// A point of the closed extended upper half plane: either a finite complex
/// number with nonnegative imaginary part, or the point at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedPoint {
    Finite(Complex64),
    Infinity,
}

impl ExtendedPoint {
    pub fn real(x: f64) -> Self {
        ExtendedPoint::Finite(Complex64::new(x, 0.0))
    }

    pub fn finite(self) -> Option<Complex64> {
        match self {
            ExtendedPoint::Finite(z) => Some(z),
            ExtendedPoint::Infinity => None,
        }
    }

    pub fn is_infinity(self) -> bool {
        matches!(self, ExtendedPoint::Infinity)
    }

    /// True when the point lies on the extended real line within `tol`.
    pub fn is_real_within(self, tol: f64) -> bool {
        match self {
            ExtendedPoint::Finite(z) => z.im.abs() <= tol,
            ExtendedPoint::Infinity => true,
        }
    }
}

impl From<Complex64> for ExtendedPoint {
    fn from(z: Complex64) -> Self {
        ExtendedPoint::Finite(z)
    }
}

impl std::fmt::Display for ExtendedPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtendedPoint::Finite(z) => write!(f, "{z}"),
            ExtendedPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// Chordal distance on the Riemann sphere,
/// `d(z, w) = 2|z - w| / sqrt((1 + |z|^2)(1 + |w|^2))`, finite even when one
/// argument is the point at infinity.
pub fn chordal(p: ExtendedPoint, q: ExtendedPoint) -> f64 {
    match (p, q) {
        (ExtendedPoint::Infinity, ExtendedPoint::Infinity) => 0.0,
        (ExtendedPoint::Finite(z), ExtendedPoint::Infinity)
        | (ExtendedPoint::Infinity, ExtendedPoint::Finite(z)) => {
            2.0 / (1.0 + z.norm_sqr()).sqrt()
        }
        (ExtendedPoint::Finite(z), ExtendedPoint::Finite(w)) => {
            2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).sqrt()
        }
    }
}

/// Chordal distance between two extended reals, seen as points of the sphere
/// with both signed infinities identified.
pub fn chordal_real(a: ExtendedReal, b: ExtendedReal) -> f64 {
    let lift = |v: ExtendedReal| match v {
        ExtendedReal::Finite(x) => ExtendedPoint::real(x),
        _ => ExtendedPoint::Infinity,
    };
    chordal(lift(a), lift(b))
}

/// The family parameter, stored as the angle `theta` in `(-pi/2, pi/2]` with
/// `tau = tan(theta)`; `theta = pi/2` denotes `tau = inf`. The angle makes
/// the point at infinity an ordinary sample of a parameter sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauParameter {
    theta: f64,
}

/// A finite parameter value or the point at infinity of the parameter circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tau {
    Finite(f64),
    Infinity,
}

impl TauParameter {
    /// Builds the parameter from an angle in `(-pi/2, pi/2]`.
    pub fn from_theta(theta: f64) -> Self {
        assert!(
            theta > -std::f64::consts::FRAC_PI_2 && theta <= std::f64::consts::FRAC_PI_2,
            "theta out of range: {theta}"
        );
        TauParameter { theta }
    }

    pub fn from_tau(tau: f64) -> Self {
        TauParameter { theta: tau.atan() }
    }

    pub fn infinity() -> Self {
        TauParameter {
            theta: std::f64::consts::FRAC_PI_2,
        }
    }

    pub fn theta(self) -> f64 {
        self.theta
    }

    pub fn tau(self) -> Tau {
        if self.theta == std::f64::consts::FRAC_PI_2 {
            Tau::Infinity
        } else {
            Tau::Finite(self.theta.tan())
        }
    }

    pub fn is_infinite(self) -> bool {
        self.theta == std::f64::consts::FRAC_PI_2
    }

    /// Angular distance on the parameter circle (period `pi`).
    pub fn circle_distance(self, other: TauParameter) -> f64 {
        let d = (self.theta - other.theta).abs();
        d.min(std::f64::consts::PI - d)
    }
}

impl std::fmt::Display for Tau {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tau::Finite(t) => write!(f, "{t}"),
            Tau::Infinity => write!(f, "inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chordal_basicproperties() {
        let z = ExtendedPoint::real(3.0);
        assert_eq!(chordal(z, z), 0.0);
        assert_eq!(chordal(ExtendedPoint::Infinity, ExtendedPoint::Infinity), 0.0);
        // Large reciprocal points are chordally close to each other through inf.
        let a = ExtendedPoint::real(1e8);
        let b = ExtendedPoint::real(-1e8);
        assert!(chordal(a, b) < 1e-7);
        assert!(chordal(a, ExtendedPoint::Infinity) < 1e-7);
        // Symmetry.
        let w = ExtendedPoint::Finite(Complex64::new(0.3, 1.2));
        assert_eq!(chordal(z, w), chordal(w, z));
    }

    #[test]
    fn tau_round_trip() {
        let p = TauParameter::from_tau(2.5);
        match p.tau() {
            Tau::Finite(t) => assert!((t - 2.5).abs() < 1e-14),
            Tau::Infinity => panic!("finite expected"),
        }
        assert!(TauParameter::infinity().is_infinite());
    }

    #[test]
    fn tau_circle_wraps() {
        let near_pos = TauParameter::from_tau(1e9);
        let near_neg = TauParameter::from_tau(-1e9);
        assert!(near_pos.circle_distance(near_neg) < 1e-8);
    }
}
