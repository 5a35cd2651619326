//! Generalized Nevanlinna functions with one negative square, built as a
//! rational factor times an ordinary Nevanlinna function, and the fractional
//! linear family spanned by such a function.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::extended::{ExtendedPoint, Tau};
use crate::factor::FactorForm;
use crate::jet::Jet;
use crate::nevanlinna::{gaps_from_supports, GapList, NevanlinnaFunction};

/// Anything that produces Taylor jets of a symmetric holomorphic function.
/// Points below the axis are handled by each implementor through the
/// reflection rule.
pub trait ComplexMap {
    fn jet(&self, z: Complex64, order: usize) -> Result<Jet>;

    fn value(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.jet(z, 0)?.value())
    }
}

impl<T: ComplexMap + ?Sized> ComplexMap for &T {
    fn jet(&self, z: Complex64, order: usize) -> Result<Jet> {
        (**self).jet(z, order)
    }
}

/// A function with one negative square in factored form.
///
/// The measure part is stored twice: as given, and with any point mass at a
/// real factor zero `alpha` split off. The split form keeps evaluation
/// holomorphic at `alpha` when the numerator zeros cancel the mass pole,
/// which is exactly the situation of a real zero of negative slope.
#[derive(Debug, Clone, PartialEq)]
pub struct N1Function {
    factor: FactorForm,
    m: NevanlinnaFunction,
    mass_at_alpha: f64,
    m_reduced: NevanlinnaFunction,
    label: Option<String>,
}

/// Builds the composite function and records the factor data.
pub fn make_q(factor: FactorForm, m: NevanlinnaFunction) -> Result<N1Function> {
    factor.validate()?;
    if m.is_trivial() || sampled_zero(&m)? {
        return Err(Error::ZeroFunction);
    }
    let (mass_at_alpha, m_reduced) = match factor.real_alpha() {
        Some(a) => m.split_pole_at(a),
        None => (0.0, m.clone()),
    };
    Ok(N1Function {
        factor,
        m,
        mass_at_alpha,
        m_reduced,
        label: None,
    })
}

fn sampled_zero(m: &NevanlinnaFunction) -> Result<bool> {
    for k in 0..5 {
        let z = Complex64::new(0.3 * k as f64 - 0.5, 1.0 + 0.7 * k as f64);
        if m.jet_at(z, 0)?.value().norm() > 1e-14 {
            return Ok(false);
        }
    }
    Ok(true)
}

impl N1Function {
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn factor(&self) -> &FactorForm {
        &self.factor
    }

    pub fn measure_part(&self) -> &NevanlinnaFunction {
        &self.m
    }

    /// The zero of nonpositive type recorded by the factorization.
    pub fn alpha(&self) -> ExtendedPoint {
        self.factor.alpha()
    }

    /// The pole of nonpositive type recorded by the factorization.
    pub fn beta(&self) -> ExtendedPoint {
        self.factor.beta()
    }

    /// Taylor jet of `Q = R * M` at `z`; reflection below the axis.
    pub fn jet_at(&self, z: Complex64, order: usize) -> Result<Jet> {
        if z.im < 0.0 {
            return Ok(self.jet_at(z.conj(), order)?.conj());
        }
        if z.im == 0.0 {
            if let Some(b) = self.factor.real_beta() {
                if z.re == b {
                    return Err(Error::EvaluationAtSingularity { z });
                }
            }
        }
        let den = self.factor.denominator_jet(z, order);
        if den.value().norm() == 0.0 {
            return Err(Error::EvaluationAtSingularity { z });
        }
        let num = self.factor.numerator_jet(z, order);
        let mut total = num.mul(&self.m_reduced.jet_at(z, order)?);
        if self.mass_at_alpha > 0.0 {
            // (z-a)^2 * c/(a-z) collapses to -c (z-a).
            let a = self.factor.real_alpha().expect("mass only split at real alpha");
            let lin = Jet::variable(z, order)
                .add_scalar(Complex64::new(-a, 0.0))
                .scale(Complex64::new(-self.mass_at_alpha, 0.0));
            total = total.add(&lin);
        }
        Ok(total.div(&den))
    }

    /// Value and derivatives of `Q` up to `order`.
    pub fn eval(&self, z: Complex64, order: usize) -> Result<Vec<Complex64>> {
        Ok(self.jet_at(z, order)?.derivatives())
    }

    /// Open real intervals on which `Q` is holomorphic, together with the
    /// isolated real points worth testing individually (support boundary,
    /// real factor parameters).
    pub fn real_structure(&self) -> (GapList, Vec<f64>) {
        let mut supports: Vec<(f64, f64)> = self
            .m_reduced
            .terms()
            .iter()
            .map(|t| t.support())
            .collect();
        if let Some(b) = self.factor.real_beta() {
            supports.push((b, b));
        }
        let gaps = gaps_from_supports(supports);

        let mut specials = self.m.holomorphy_gaps().finite_endpoints();
        for p in [self.factor.real_alpha(), self.factor.real_beta()].into_iter().flatten() {
            if !specials.iter().any(|&s| s == p) {
                specials.push(p);
            }
        }
        specials.sort_by(f64::total_cmp);
        (gaps, specials)
    }

    /// The fractional linear family member `Q_tau`.
    pub fn transform(&self, tau: Tau) -> Moebius<&N1Function> {
        Moebius { inner: self, tau }
    }
}

impl ComplexMap for N1Function {
    fn jet(&self, z: Complex64, order: usize) -> Result<Jet> {
        self.jet_at(z, order)
    }
}

/// The transform `(T - tau) / (1 + tau T)`, or `-1/T` at `tau = inf`,
/// composed lazily over any jet-producing map. Composition keeps the exact
/// formula and avoids coefficient blow-up from symbolic expansion.
#[derive(Debug, Clone, Copy)]
pub struct Moebius<M> {
    inner: M,
    tau: Tau,
}

impl<M: ComplexMap> Moebius<M> {
    pub fn new(inner: M, tau: Tau) -> Self {
        Moebius { inner, tau }
    }

    pub fn tau(&self) -> Tau {
        self.tau
    }

    /// Applies a further transform on top of this member.
    pub fn then(self, rho: Tau) -> Moebius<Moebius<M>> {
        Moebius {
            inner: self,
            tau: rho,
        }
    }
}

impl<M: ComplexMap> ComplexMap for Moebius<M> {
    fn jet(&self, z: Complex64, order: usize) -> Result<Jet> {
        let q = self.inner.jet(z, order)?;
        if !q.value().re.is_finite() || !q.value().im.is_finite() {
            return Err(Error::PoleOfFamily { z });
        }
        match self.tau {
            Tau::Finite(t) => {
                let den = q.scale(Complex64::new(t, 0.0)).add_scalar(Complex64::new(1.0, 0.0));
                if den.value().norm() == 0.0 {
                    return Err(Error::PoleOfFamily { z });
                }
                Ok(q.add_scalar(Complex64::new(-t, 0.0)).div(&den))
            }
            Tau::Infinity => {
                if q.value().norm() == 0.0 {
                    return Err(Error::PoleOfFamily { z });
                }
                Ok(Jet::constant(Complex64::new(-1.0, 0.0), order).div(&q))
            }
        }
    }
}

/// Closed-form derivative of the family member,
/// `(1 + tau^2) Q'(z) / (1 + tau Q(z))^2` for finite `tau` and
/// `Q'(z)/Q(z)^2` at `tau = inf`.
pub fn family_derivative(q: &N1Function, tau: Tau, z: Complex64) -> Result<Complex64> {
    let jet = q.jet_at(z, 1)?;
    let qv = jet.value();
    let qd = jet.derivative(1);
    match tau {
        Tau::Finite(t) => {
            let den = Complex64::new(1.0, 0.0) + t * qv;
            if den.norm() == 0.0 {
                return Err(Error::PoleOfFamily { z });
            }
            Ok((1.0 + t * t) * qd / (den * den))
        }
        Tau::Infinity => {
            if qv.norm() == 0.0 {
                return Err(Error::PoleOfFamily { z });
            }
            Ok(qd / (qv * qv))
        }
    }
}

/// The Nevanlinna kernel `(Q(z) - conj Q(w)) / (z - conj w)` sampled on a
/// point set of the open upper half plane; Hermitian by the symmetry of `Q`.
pub fn kernel_matrix<M: ComplexMap>(map: &M, points: &[Complex64]) -> Result<Vec<Vec<Complex64>>> {
    let values: Vec<Complex64> = points
        .iter()
        .map(|&z| map.value(z))
        .collect::<Result<_>>()?;
    let n = points.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = (values[i] - values[j].conj()) / (points[i] - points[j].conj());
        }
    }
    Ok(out)
}

/// Number of negative eigenvalues of a Hermitian matrix, via the real
/// symmetric embedding `[[X, -Y], [Y, X]]` (eigenvalues doubled) and cyclic
/// Jacobi rotations.
pub fn negative_eigenvalue_count(matrix: &[Vec<Complex64>], tol: f64) -> usize {
    let n = matrix.len();
    let mut a = vec![vec![0.0f64; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            a[i][j] = matrix[i][j].re;
            a[i][n + j] = -matrix[i][j].im;
            a[n + i][j] = matrix[i][j].im;
            a[n + i][n + j] = matrix[i][j].re;
        }
    }
    let eigs = jacobi_eigenvalues(&mut a);
    let scale = eigs.iter().fold(1.0f64, |s, v| s.max(v.abs()));
    eigs.iter().filter(|&&v| v < -tol * scale).count() / 2
}

fn jacobi_eigenvalues(a: &mut [Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off.sqrt() < 1e-14 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

/// Samples Nevanlinna kernels on random 2- and 3-point sets and reports the
/// largest negative eigenvalue count seen together with whether some sample
/// realized exactly one.
pub fn sampled_negative_squares<M: ComplexMap>(
    map: &M,
    rng: &mut impl rand::Rng,
    samples: usize,
) -> Result<(usize, bool)> {
    let mut max_neg = 0;
    let mut any_one = false;
    for k in 0..samples {
        let size = if k % 2 == 0 { 3 } else { 2 };
        let mut pts = Vec::with_capacity(size);
        while pts.len() < size {
            let z = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(0.05..3.0));
            if pts.iter().all(|&w: &Complex64| (w - z).norm() > 1e-3) {
                pts.push(z);
            }
        }
        let kernel = match kernel_matrix(map, &pts) {
            Ok(m) => m,
            // Sampled point hit a pole or support: draw again.
            Err(_) => continue,
        };
        let neg = negative_eigenvalue_count(&kernel, 1e-10);
        max_neg = max_neg.max(neg);
        if neg == 1 {
            any_one = true;
        }
    }
    Ok((max_neg, any_one))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nevanlinna::NevanlinnaFunction;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn square() -> N1Function {
        // (z-0)^2 * 1 = z^2.
        make_q(
            FactorForm::PoleAtInfinity { alpha: c(0.0, 0.0) },
            NevanlinnaFunction::constant(1.0),
        )
        .unwrap()
    }

    fn cube() -> N1Function {
        make_q(
            FactorForm::PoleAtInfinity { alpha: c(0.0, 0.0) },
            NevanlinnaFunction::linear(0.0, 1.0),
        )
        .unwrap()
    }

    fn minus_z() -> N1Function {
        make_q(
            FactorForm::PoleAtInfinity { alpha: c(0.0, 0.0) },
            NevanlinnaFunction::point_mass(0.0, 1.0),
        )
        .unwrap()
    }

    #[test]
    fn factored_polynomials() {
        let out = square().eval(c(3.0, 0.0), 2).unwrap();
        assert_abs_diff_eq!(out[0].re, 9.0, epsilon = 1e-13);
        assert_abs_diff_eq!(out[1].re, 6.0, epsilon = 1e-13);
        assert_abs_diff_eq!(out[2].re, 2.0, epsilon = 1e-13);

        let out = cube().eval(c(2.0, 0.0), 3).unwrap();
        assert_abs_diff_eq!(out[0].re, 8.0, epsilon = 1e-13);
        assert_abs_diff_eq!(out[1].re, 12.0, epsilon = 1e-13);
        assert_abs_diff_eq!(out[2].re, 12.0, epsilon = 1e-13);
        assert_abs_diff_eq!(out[3].re, 6.0, epsilon = 1e-13);
    }

    #[test]
    fn mass_cancellation_gives_entire_function() {
        // z^2 * (-1/z) = -z, holomorphic at the mass location.
        let q = minus_z();
        let out = q.eval(c(0.0, 0.0), 1).unwrap();
        assert_abs_diff_eq!(out[0].re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(out[1].re, -1.0, epsilon = 1e-15);
        let out = q.eval(c(0.0, 1.0), 1).unwrap();
        assert_abs_diff_eq!(out[0].im, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(out[1].re, -1.0, epsilon = 1e-15);
    }

    #[test]
    fn reflection_of_q() {
        let q = make_q(
            FactorForm::BothFinite {
                alpha: c(0.0, 2.0),
                beta: c(0.0, 1.0),
            },
            NevanlinnaFunction::new(0.0, 0.0, vec![crate::measure::MeasureTerm::ConstantImag { weight: 1.0 }])
                .unwrap(),
        )
        .unwrap();
        let z = c(0.4, 0.8);
        let up = q.eval(z, 0).unwrap()[0];
        let down = q.eval(z.conj(), 0).unwrap()[0];
        assert_abs_diff_eq!(up.re, down.re, epsilon = 1e-14);
        assert_abs_diff_eq!(up.im, -down.im, epsilon = 1e-14);
    }

    #[test]
    fn transform_identities() {
        let q = square();
        // tau = 0 is the identity.
        let member = q.transform(Tau::Finite(0.0));
        assert_abs_diff_eq!(member.value(c(2.0, 0.0)).unwrap().re, 4.0, epsilon = 1e-14);
        // tau = inf is -1/Q.
        let member = q.transform(Tau::Infinity);
        assert_abs_diff_eq!(member.value(c(2.0, 0.0)).unwrap().re, -0.25, epsilon = 1e-14);
        // Hand-substituted value at tau = 1, z = 2: (4-1)/(1+4).
        let member = q.transform(Tau::Finite(1.0));
        assert_abs_diff_eq!(member.value(c(2.0, 0.0)).unwrap().re, 0.6, epsilon = 1e-14);
    }

    #[test]
    fn family_derivative_matches_jet() {
        let q = cube();
        let z = c(0.7, 0.4);
        for tau in [Tau::Finite(0.8), Tau::Finite(-2.0), Tau::Infinity] {
            let member = q.transform(tau);
            let jet_d = member.jet(z, 1).unwrap().derivative(1);
            let closed = family_derivative(&q, tau, z).unwrap();
            assert_abs_diff_eq!(jet_d.re, closed.re, epsilon = 1e-12);
            assert_abs_diff_eq!(jet_d.im, closed.im, epsilon = 1e-12);
        }
    }

    #[test]
    fn group_law_on_grid() {
        let q = square();
        let tau = 0.4;
        let rho = -1.3;
        let combined = (tau + rho) / (1.0 - rho * tau);
        for k in 0..12 {
            let z = c(-1.5 + 0.3 * k as f64, 0.6 + 0.1 * k as f64);
            let two_step = q
                .transform(Tau::Finite(tau))
                .then(Tau::Finite(rho))
                .value(z)
                .unwrap();
            let one_step = q.transform(Tau::Finite(combined)).value(z).unwrap();
            assert_abs_diff_eq!(two_step.re, one_step.re, epsilon = 1e-12);
            assert_abs_diff_eq!(two_step.im, one_step.im, epsilon = 1e-12);
        }
    }

    #[test]
    fn pole_of_family_detected() {
        let q = square();
        // 1 + tau Q(z) = 0 at z = i for tau = 1 since Q(i) = -1.
        let member = q.transform(Tau::Finite(1.0));
        assert!(matches!(
            member.jet(c(0.0, 1.0), 0),
            Err(Error::PoleOfFamily { .. })
        ));
    }

    #[test]
    fn zero_function_rejected() {
        let err = make_q(
            FactorForm::PoleAtInfinity { alpha: c(0.0, 0.0) },
            NevanlinnaFunction::constant(0.0),
        );
        assert!(matches!(err, Err(Error::ZeroFunction)));
    }

    #[test]
    fn kernel_signature_of_fixtures() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for q in [square(), cube(), minus_z()] {
            let (max_neg, any_one) = sampled_negative_squares(&q, &mut rng, 24).unwrap();
            assert_eq!(max_neg, 1, "{:?}", q.label());
            assert!(any_one);
        }
        // An ordinary Nevanlinna function has none.
        let n0 = make_q(
            FactorForm::BothFinite {
                alpha: c(0.0, 1.0),
                beta: c(0.0, 2.0),
            },
            NevanlinnaFunction::constant(1.0),
        )
        .unwrap();
        // (z^2+1)/(z^2+4): kernel may have up to one negative square by
        // construction of this test fixture; it is genuinely N1.
        let (max_neg, _) = sampled_negative_squares(&n0, &mut rng, 24).unwrap();
        assert!(max_neg <= 1);
    }

    #[test]
    fn transformed_kernels_stay_in_class() {
        let q = square();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for tau in [-3.0, -0.5, 0.0, 0.8, 5.0] {
            let member = q.transform(Tau::Finite(tau));
            let (max_neg, _) = sampled_negative_squares(&member, &mut rng, 16).unwrap();
            assert!(max_neg <= 1, "tau = {tau} gave {max_neg}");
        }
    }
}
