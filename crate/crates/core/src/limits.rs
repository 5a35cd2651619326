//! Limit estimation along geometric approach sequences.
//!
//! Nontangential limits are approximated along vertical rays `x0 + i h 2^-k`
//! (or real approaches `x0 +/- h 2^-k`), with Richardson extrapolation when
//! the sequence settles and monotonicity detection to assign signed
//! infinities when it does not.

use num_complex::Complex64;

use crate::error::Result;
use crate::extended::ExtendedReal;

/// Outcome of a ray limit estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RayOutcome {
    /// The sequence stabilized; carries the extrapolated value and an error
    /// estimate.
    Converged(Complex64, f64),
    /// Values grow without bound; carries the dominant real sign when the
    /// divergence is signed along the real axis (`+1`, `-1`) and `0` for a
    /// divergence with no usable real sign.
    Diverged(i32),
    /// Neither convergence nor clean divergence was observed.
    Unstable,
}

const HUGE: f64 = 1e13;

/// Estimates `lim f(h)` as `h -> 0` along `h_k = h0 * 2^-k`.
///
/// Evaluation errors at the large-`h` end are tolerated (the ray may start
/// outside the domain); errors after valid samples stop the scan.
pub fn ray_limit<F>(f: F, h0: f64, depth: usize) -> RayOutcome
where
    F: Fn(f64) -> Result<Complex64>,
{
    let mut values = Vec::with_capacity(depth + 1);
    let mut h = h0;
    for _ in 0..=depth {
        match f(h) {
            Ok(v) if v.re.is_finite() && v.im.is_finite() => values.push(v),
            _ => {
                if !values.is_empty() {
                    break;
                }
            }
        }
        h *= 0.5;
    }
    analyze_sequence(&values)
}

fn analyze_sequence(values: &[Complex64]) -> RayOutcome {
    if values.len() < 4 {
        return RayOutcome::Unstable;
    }

    // Divergence: the tail grows steadily.
    let n = values.len();
    let tail = &values[n.saturating_sub(5)..];
    let growing = tail.windows(2).all(|w| w[1].norm() > w[0].norm() * 1.2);
    if growing && tail.last().unwrap().norm() > HUGE.min(values[0].norm() * 1e6).max(1e6) {
        let last = tail.last().unwrap();
        let sign = if last.re.abs() > 10.0 * last.im.abs() {
            if last.re > 0.0 {
                1
            } else {
                -1
            }
        } else {
            0
        };
        return RayOutcome::Diverged(sign);
    }

    // Richardson table assuming an error expansion in powers of h (ratio 2
    // per level). Fractional-power errors are not annihilated exactly but
    // still contract, so the stabilization test below remains valid.
    let mut table: Vec<Vec<Complex64>> = vec![values.to_vec()];
    let levels = 6.min(values.len() - 1);
    for m in 1..=levels {
        let prev = &table[m - 1];
        let fac = (2.0f64).powi(m as i32);
        let row: Vec<Complex64> = prev
            .windows(2)
            .map(|w| (fac * w[1] - w[0]) / (fac - 1.0))
            .collect();
        table.push(row);
    }

    let scale = values.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let mut best: Option<(Complex64, f64)> = None;
    for row in table.iter().rev() {
        if row.len() < 2 {
            continue;
        }
        let a = row[row.len() - 2];
        let b = row[row.len() - 1];
        let err = (b - a).norm();
        match best {
            Some((_, e)) if e <= err => {}
            _ => best = Some((b, err)),
        }
    }
    match best {
        Some((v, err)) if err <= 1e-7 * scale.max(1.0) => RayOutcome::Converged(v, err),
        _ => {
            // Raw Cauchy fallback for slowly contracting sequences.
            let a = values[n - 2];
            let b = values[n - 1];
            if (b - a).norm() <= 1e-7 * scale.max(1.0) {
                RayOutcome::Converged(b, (b - a).norm())
            } else {
                RayOutcome::Unstable
            }
        }
    }
}

/// Limit of a real-valued monotone approach, classified as a finite value or
/// a signed infinity. Used for boundary values of Herglotz transforms at gap
/// endpoints, which are monotone along the approach by construction.
pub fn monotone_limit<F>(f: F, h0: f64, depth: usize) -> Option<ExtendedReal>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut values = Vec::with_capacity(depth + 1);
    let mut h = h0;
    for _ in 0..=depth {
        match f(h) {
            Ok(v) if v.is_finite() => values.push(v),
            _ => {
                if !values.is_empty() {
                    break;
                }
            }
        }
        h *= 0.5;
    }
    if values.len() < 4 {
        return None;
    }
    let n = values.len();
    let tail = &values[n - 4..];
    let diffs: Vec<f64> = tail.windows(2).map(|w| w[1] - w[0]).collect();

    let scale = values.iter().fold(1.0f64, |s, v| s.max(v.abs()));
    if diffs.iter().all(|d| d.abs() <= 1e-9 * scale) {
        return Some(ExtendedReal::Finite(values[n - 1]));
    }

    let increasing = diffs.iter().all(|d| *d > 0.0);
    let decreasing = diffs.iter().all(|d| *d < 0.0);
    let contracting = diffs.windows(2).all(|w| w[1].abs() <= 0.75 * w[0].abs() + 1e-14 * scale);
    if contracting {
        // Geometric tail: extrapolate by the remaining geometric sum.
        let r = (diffs[2] / diffs[1]).clamp(-0.75, 0.75);
        let rest = diffs[2] * r / (1.0 - r);
        return Some(ExtendedReal::Finite(values[n - 1] + rest));
    }
    if increasing && (values[n - 1] > HUGE || !contracting) {
        return Some(ExtendedReal::PosInfinity);
    }
    if decreasing && (values[n - 1] < -HUGE || !contracting) {
        return Some(ExtendedReal::NegInfinity);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn ok(v: f64) -> Result<Complex64> {
        Ok(Complex64::new(v, 0.0))
    }

    #[test]
    fn converges_polynomial() {
        // f(h) = 3 - 2h + h^2.
        let out = ray_limit(|h| ok(3.0 - 2.0 * h + h * h), 0.5, 30);
        match out {
            RayOutcome::Converged(v, _) => assert_abs_diff_eq!(v.re, 3.0, epsilon = 1e-10),
            other => panic!("expected convergence, got {other:?}"),
        }
    }

    #[test]
    fn converges_fractional_power() {
        // f(h) = h^{1.5} -> 0; not a polynomial in h.
        let out = ray_limit(|h| ok(h.powf(1.5)), 0.5, 40);
        match out {
            RayOutcome::Converged(v, _) => assert_abs_diff_eq!(v.re, 0.0, epsilon = 1e-8),
            other => panic!("expected convergence, got {other:?}"),
        }
    }

    #[test]
    fn diverges_signed() {
        let out = ray_limit(|h| ok(-1.0 / h), 0.5, 50);
        assert_eq!(out, RayOutcome::Diverged(-1));
        let out = ray_limit(|h| ok(1.0 / (h * h)), 0.5, 50);
        assert_eq!(out, RayOutcome::Diverged(1));
    }

    #[test]
    fn diverges_imaginary_without_sign() {
        let out = ray_limit(|h| Ok(Complex64::new(0.0, 1.0 / h)), 0.5, 50);
        assert_eq!(out, RayOutcome::Diverged(0));
    }

    #[test]
    fn monotone_log_divergence() {
        // log(h) -> -inf: constant negative differences, no contraction.
        let out = monotone_limit(|h| Ok(h.ln()), 0.5, 40);
        assert_eq!(out, Some(ExtendedReal::NegInfinity));
    }

    #[test]
    fn monotone_power_limit() {
        let out = monotone_limit(|h| Ok(h.powf(0.5)), 0.5, 40);
        match out {
            Some(ExtendedReal::Finite(v)) => assert_abs_diff_eq!(v, 0.0, epsilon = 1e-6),
            other => panic!("expected finite, got {other:?}"),
        }
    }

    #[test]
    fn monotone_pole_divergence() {
        let out = monotone_limit(|h| Ok(1.0 / h), 0.5, 40);
        assert_eq!(out, Some(ExtendedReal::PosInfinity));
    }
}
