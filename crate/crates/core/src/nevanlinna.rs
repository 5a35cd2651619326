//! Ordinary Nevanlinna functions through their integral representation data.
//!
//! A function of the class is stored as the affine part `a + b z` plus a
//! finite list of measure terms. Evaluation below the real axis goes through
//! the symmetry `M(conj z) = conj M(z)`, so the terms only ever see the
//! closed upper half plane.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::extended::ExtendedReal;
use crate::jet::Jet;
use crate::limits::{monotone_limit, ray_limit, RayOutcome};
use crate::measure::MeasureTerm;
use crate::quad;

/// Default absolute tolerance for density quadrature.
pub const QUAD_TOL: f64 = 1e-10;

/// Maximal open intervals on which the representing measure vanishes, kept
/// sorted and disjoint. Infinite endpoints are stored as IEEE infinities.
#[derive(Debug, Clone, PartialEq)]
pub struct GapList {
    gaps: Vec<(f64, f64)>,
}

impl GapList {
    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.gaps
    }

    pub fn contains(&self, x: f64) -> bool {
        self.gaps.iter().any(|&(lo, hi)| x > lo && x < hi)
    }

    pub fn gap_around(&self, x: f64) -> Option<(f64, f64)> {
        self.gaps.iter().copied().find(|&(lo, hi)| x > lo && x < hi)
    }

    /// True when `(x, x + delta)` (right) or `(x - delta, x)` (left) lies in
    /// a gap for some positive `delta`; `x` itself may be a support point.
    pub fn touches_from(&self, x: f64, from_right: bool) -> bool {
        self.gaps.iter().any(|&(lo, hi)| {
            if from_right {
                x >= lo && x < hi
            } else {
                x > lo && x <= hi
            }
        })
    }

    /// Finite gap endpoints, i.e. the boundary of the support.
    pub fn finite_endpoints(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for &(lo, hi) in &self.gaps {
            for v in [lo, hi] {
                if v.is_finite() && !out.iter().any(|&u: &f64| u == v) {
                    out.push(v);
                }
            }
        }
        out.sort_by(f64::total_cmp);
        out
    }
}

/// Complement of a finite union of closed intervals.
pub fn gaps_from_supports(mut supports: Vec<(f64, f64)>) -> GapList {
    supports.retain(|&(lo, hi)| lo <= hi);
    supports.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut merged: Vec<(f64, f64)> = Vec::new();
    for (lo, hi) in supports {
        match merged.last_mut() {
            Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
            _ => merged.push((lo, hi)),
        }
    }
    let mut gaps = Vec::new();
    let mut left = f64::NEG_INFINITY;
    for &(lo, hi) in &merged {
        if lo > left {
            gaps.push((left, lo));
        }
        left = left.max(hi);
    }
    if left < f64::INFINITY {
        gaps.push((left, f64::INFINITY));
    }
    GapList { gaps }
}

/// An ordinary Nevanlinna function `a + b z + sum of measure terms`.
#[derive(Debug, Clone, PartialEq)]
pub struct NevanlinnaFunction {
    a: f64,
    b: f64,
    terms: Vec<MeasureTerm>,
}

/// Approach side for boundary limits: `Left` is the limit `M(x-)`, `Right`
/// the limit `M(x+)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl NevanlinnaFunction {
    pub fn new(a: f64, b: f64, terms: Vec<MeasureTerm>) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || b < 0.0 {
            return Err(Error::InvalidInput {
                detail: format!("need finite a and b >= 0, got a={a}, b={b}"),
            });
        }
        for t in &terms {
            t.validate()?;
        }
        Ok(NevanlinnaFunction { a, b, terms })
    }

    pub fn constant(a: f64) -> Self {
        NevanlinnaFunction {
            a,
            b: 0.0,
            terms: Vec::new(),
        }
    }

    pub fn linear(a: f64, b: f64) -> Self {
        NevanlinnaFunction {
            a,
            b,
            terms: Vec::new(),
        }
    }

    pub fn point_mass(location: f64, weight: f64) -> Self {
        NevanlinnaFunction {
            a: 0.0,
            b: 0.0,
            terms: vec![MeasureTerm::PointMass { location, weight }],
        }
    }

    pub fn affine_part(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn terms(&self) -> &[MeasureTerm] {
        &self.terms
    }

    pub fn is_trivial(&self) -> bool {
        self.a == 0.0 && self.b == 0.0 && self.terms.is_empty()
    }

    /// Removes the pole part sitting exactly at `x` and returns the removed
    /// weight together with the regular remainder. Rational tails keep their
    /// normalization constant in the remainder's affine part.
    pub fn split_pole_at(&self, x: f64) -> (f64, NevanlinnaFunction) {
        let mut weight = 0.0;
        let mut a = self.a;
        let mut rest = Vec::new();
        for t in &self.terms {
            match t {
                MeasureTerm::PointMass { location, weight: w } if *location == x => weight += w,
                MeasureTerm::RationalTail { location, weight: w } if *location == x => {
                    weight += w;
                    a -= w * location / (location * location + 1.0);
                }
                other => rest.push(other.clone()),
            }
        }
        (
            weight,
            NevanlinnaFunction {
                a,
                b: self.b,
                terms: rest,
            },
        )
    }

    /// Taylor jet at `z`. Points below the axis reflect; real points must
    /// avoid the singular support.
    pub fn jet_at(&self, z: Complex64, order: usize) -> Result<Jet> {
        if z.im < 0.0 {
            return Ok(self.jet_at(z.conj(), order)?.conj());
        }
        let mut jet = Jet::variable(z, order)
            .scale(Complex64::new(self.b, 0.0))
            .add_scalar(Complex64::new(self.a, 0.0));
        for t in &self.terms {
            jet = jet.add(&t.jet_at(z, order, QUAD_TOL)?);
        }
        Ok(jet)
    }

    /// Value and derivatives `M(z), M'(z), ..., M^(order)(z)`.
    pub fn eval(&self, z: Complex64, order: usize) -> Result<Vec<Complex64>> {
        Ok(self.jet_at(z, order)?.derivatives())
    }

    /// Maximal open intervals free of point mass locations and density
    /// supports; the function is holomorphic across each of them.
    pub fn holomorphy_gaps(&self) -> GapList {
        gaps_from_supports(self.terms.iter().map(|t| t.support()).collect())
    }

    /// Boundary value `M(x-)` or `M(x+)` by monotone extrapolation along the
    /// real approach. `x` must bound (or lie inside) a gap on the approach
    /// side.
    pub fn boundary_limit(&self, x: f64, side: Side) -> Result<ExtendedReal> {
        let gaps = self.holomorphy_gaps();
        let width = gaps
            .intervals()
            .iter()
            .find_map(|&(lo, hi)| match side {
                Side::Right if x >= lo && x < hi => Some(hi - x),
                Side::Left if x > lo && x <= hi => Some(x - lo),
                _ => None,
            })
            .ok_or(Error::NotAGapEndpoint { x })?;
        let h0 = 0.5 * width.min(2.0);
        let f = |h: f64| {
            let xx = match side {
                Side::Right => x + h,
                Side::Left => x - h,
            };
            Ok(self.jet_at(Complex64::new(xx, 0.0), 0)?.value().re)
        };
        monotone_limit(f, h0, 44).ok_or(Error::LimitUnstable { x })
    }

    /// Exact point mass `sigma({c})` read off the representation.
    pub fn point_mass_at(&self, c: f64) -> f64 {
        self.terms
            .iter()
            .filter_map(|t| match t {
                MeasureTerm::PointMass { location, weight }
                | MeasureTerm::RationalTail { location, weight }
                    if *location == c =>
                {
                    Some(*weight)
                }
                _ => None,
            })
            .sum()
    }

    /// The same mass estimated as `lim (c - z) M(z)` along the vertical ray,
    /// for cross-checking the representation.
    pub fn point_mass_ray(&self, c: f64) -> Result<f64> {
        let f = |h: f64| {
            let z = Complex64::new(c, h);
            Ok(-Complex64::new(0.0, h) * self.jet_at(z, 0)?.value())
        };
        match ray_limit(f, 0.5, 44) {
            RayOutcome::Converged(v, _) => Ok(v.re),
            _ => Err(Error::LimitUnstable { x: c }),
        }
    }

    /// The linear coefficient `b` of the representation.
    pub fn linear_coefficient(&self) -> f64 {
        self.b
    }

    /// `lim M(iy)/(iy)` for `y` large, the function-theoretic recovery of
    /// `b`.
    pub fn linear_coefficient_ray(&self) -> Result<f64> {
        let f = |h: f64| {
            let y = 1.0 / h;
            let z = Complex64::new(0.0, y);
            Ok(self.jet_at(z, 0)?.value() / z)
        };
        match ray_limit(f, 1e-2, 40) {
            RayOutcome::Converged(v, _) => Ok(v.re),
            _ => Err(Error::LimitUnstable { x: 0.0 }),
        }
    }

    /// `sigma(t2) - sigma(t1)` by the smoothed-imaginary-part formula with
    /// Richardson extrapolation in the smoothing height. Masses at `t1` or
    /// `t2` count half in the limit.
    pub fn stieltjes_inversion(&self, t1: f64, t2: f64, tol: f64) -> Result<f64> {
        if t1 > t2 {
            return Err(Error::InvalidInput {
                detail: format!("need t1 <= t2, got [{t1}, {t2}]"),
            });
        }
        if t1 == t2 {
            return Ok(0.0);
        }
        let smoothed = |eps: f64| -> Result<f64> {
            let f = |x: f64| {
                self.jet_at(Complex64::new(x, eps), 0)
                    .map(|j| j.value().im)
                    .unwrap_or(f64::NAN)
            };
            Ok(quad::integrate(&f, t1, t2, tol * 0.05)? / std::f64::consts::PI)
        };

        let mut values = Vec::new();
        let mut eps = 0.25;
        let mut best: Option<(f64, f64)> = None;
        for _ in 0..26 {
            values.push(smoothed(eps)?);
            eps *= 0.5;
            if values.len() < 3 {
                continue;
            }
            // Richardson ladder in powers of eps.
            let mut row = values.clone();
            let mut fac = 2.0;
            while row.len() >= 2 {
                row = row.windows(2).map(|w| (fac * w[1] - w[0]) / (fac - 1.0)).collect();
                fac *= 2.0;
            }
            let estimate = row[0];
            if let Some((prev, _)) = best {
                let delta = (estimate - prev).abs();
                best = Some((estimate, delta));
                if delta <= tol {
                    return Ok(estimate);
                }
            } else {
                best = Some((estimate, f64::INFINITY));
            }
        }
        match best {
            Some((estimate, delta)) if delta <= tol * 10.0 => Ok(estimate),
            _ => Err(Error::QuadratureFailure {
                detail: format!("inversion on [{t1}, {t2}] did not stabilize"),
            }),
        }
    }
}
