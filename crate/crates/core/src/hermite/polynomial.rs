use super::{HermiteOrder, SignedLogValue};
use crate::error::{ensure_finite, Error, Result};

/// `(H_{n-1}(x), H_n(x))` from `H_{k+1} = 2x H_k - 2k H_{k-1}`, every step in
/// signed-log arithmetic. `H_{-1}` is taken as zero.
///
/// The `cancelled` flag on `H_n` is set when the last step cancelled, which
/// happens only when `x` sits on top of a zero of `H_n`.
pub fn hermite_pair_exact(n: HermiteOrder, x: f64) -> Result<(SignedLogValue, SignedLogValue)> {
    ensure_finite("x", x)?;
    let two_x = SignedLogValue::from_real(2.0 * x);
    let mut prev = SignedLogValue::ZERO;
    let mut cur = SignedLogValue::ONE;
    for k in 0..n {
        let two_k = SignedLogValue::from_real(2.0 * k as f64);
        let next = two_x * cur - two_k * prev;
        prev = cur;
        cur = next;
    }
    Ok((prev, cur))
}

/// `H_n(x)` without overflow, for any degree the recurrence can afford.
pub fn hermite_eval_exact(n: HermiteOrder, x: f64) -> Result<SignedLogValue> {
    hermite_pair_exact(n, x).map(|(_, h)| h)
}

/// `H_n'(x) = 2n H_{n-1}(x)`.
pub fn hermite_derivative_exact(n: HermiteOrder, x: f64) -> Result<SignedLogValue> {
    if n == 0 {
        ensure_finite("x", x)?;
        return Ok(SignedLogValue::ZERO);
    }
    let (h_prev, _) = hermite_pair_exact(n, x)?;
    Ok(SignedLogValue::from_real(2.0 * n as f64) * h_prev)
}

/// Plain double-precision recurrence; overflows for large `n`, fine for the
/// small degrees used in quadrature.
pub fn hermite_f64(n: HermiteOrder, x: f64) -> f64 {
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Composite Simpson approximation of `∫ e^{-x²} H_m(x) H_n(x) dx` over
/// `[-half_width, half_width]`.
pub fn orthogonality_integral(
    m: HermiteOrder,
    n: HermiteOrder,
    half_width: f64,
    panels: usize,
) -> Result<f64> {
    ensure_finite("half_width", half_width)?;
    if panels == 0 || panels % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "Simpson's rule needs an even, positive panel count, got {panels}"
        )));
    }
    if half_width <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "half_width must be positive, got {half_width}"
        )));
    }
    let h = 2.0 * half_width / panels as f64;
    let f = |x: f64| (-x * x).exp() * hermite_f64(m, x) * hermite_f64(n, x);
    let mut sum = f(-half_width) + f(half_width);
    for i in 1..panels {
        let x = -half_width + i as f64 * h;
        sum += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
    }
    Ok(sum * h / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn close(a: SignedLogValue, want: f64, rel: f64) -> bool {
        (a.to_real() - want).abs() <= rel * want.abs()
    }

    #[test]
    fn low_degrees() {
        assert_eq!(hermite_eval_exact(0, 123.4).unwrap(), SignedLogValue::ONE);
        assert!(close(hermite_eval_exact(1, 3.0).unwrap(), 6.0, 1e-15));
        // H_4 = 16x⁴ - 48x² + 12
        assert!(close(hermite_eval_exact(4, 1.0).unwrap(), -20.0, 1e-14));
        let h3 = hermite_eval_exact(3, 2.0).unwrap();
        let h3m = hermite_eval_exact(3, -2.0).unwrap();
        assert_eq!(h3m.sign, -h3.sign);
        assert_eq!(h3m.log_abs, h3.log_abs);
    }

    #[test]
    fn derivative() {
        assert!(hermite_derivative_exact(0, 1.0).unwrap().is_zero());
        assert!(close(hermite_derivative_exact(1, 7.0).unwrap(), 2.0, 1e-15));
        // H_3' = 24x² - 12
        assert!(close(hermite_derivative_exact(3, 0.5).unwrap(), -6.0, 1e-14));
    }

    #[test]
    fn differential_difference_identity_at_5_1p3() {
        let (n, x) = (5, 1.3);
        let lhs = hermite_eval_exact(n + 1, x).unwrap() + hermite_derivative_exact(n, x).unwrap();
        let rhs = SignedLogValue::from_real(2.0 * x) * hermite_eval_exact(n, x).unwrap();
        assert_eq!(lhs.sign, rhs.sign);
        assert!(lhs.rel_diff(rhs) < 1e-12);
    }

    #[test]
    fn large_degree_stays_finite() {
        let h = hermite_eval_exact(10_000, (2.0f64 * 10_000.0).sqrt()).unwrap();
        assert_eq!(h.sign, 1);
        assert!(h.log_abs.is_finite() && h.log_abs > 1e4);
        assert_eq!(h.to_real(), f64::INFINITY);
    }

    #[test]
    fn flags_cancellation_at_a_zero() {
        let h = hermite_eval_exact(2, std::f64::consts::FRAC_1_SQRT_2).unwrap();
        assert!((h.is_zero() && h.cancelled) || h.to_real().abs() < 1e-14);
    }

    #[test]
    fn non_finite_x_rejected() {
        assert!(hermite_eval_exact(3, f64::NAN).is_err());
        assert!(hermite_derivative_exact(0, f64::INFINITY).is_err());
    }

    #[test]
    fn orthogonality_examples() {
        let i00 = orthogonality_integral(0, 0, 10.0, 20_000).unwrap();
        assert!((i00 - PI.sqrt()).abs() < 1e-8);
        let i01 = orthogonality_integral(0, 1, 10.0, 20_000).unwrap();
        assert!(i01.abs() < 1e-10);
        let i44 = orthogonality_integral(4, 4, 10.0, 20_000).unwrap();
        let want = PI.sqrt() * 16.0 * 24.0;
        assert!((i44 - want).abs() < 1e-5 * want);
    }

    #[test]
    fn odd_panels_rejected() {
        assert!(matches!(
            orthogonality_integral(1, 1, 10.0, 2001),
            Err(Error::InvalidArgument(_))
        ));
    }
}
