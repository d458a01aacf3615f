//! Closed-form asymptotic approximations of `H_n(x)` for large `n`.
//!
//! The real line splits at the turning points `x = ±√(2n)`:
//!
//! * outside them `H_n ≈ exp(f + g)` with the eikonal phase `f` and the
//!   transport amplitude `g` ([`phi1`], and its mirror image [`phi2`]);
//! * in an `O(n^{-1/6})` band around each turning point the profile is an
//!   Airy function of the stretch variable `β = (x - √(2n)) n^{1/6}`
//!   ([`phi3`], [`phi4`]);
//! * between them `H_n` oscillates with the amplitude and phase of
//!   [`phi_oscillatory`], written in the angle `θ = arcsin(x/√(2n))`.
//!
//! Every approximation is assembled in log space and returned as a
//! [`SignedLogValue`]; the exponential prefactors never touch a double.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use crate::error::{ensure_finite, Error, Result};
use crate::hermite::SignedLogValue;
use crate::specfun::airy_ai_log;

/// Asymptotic regime of a point `(x, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    OuterRight,
    OuterLeft,
    TransitionRight,
    TransitionLeft,
    Oscillatory,
}

impl Region {
    pub fn as_str(self) -> &'static str {
        match self {
            Region::OuterRight => "outer_right",
            Region::OuterLeft => "outer_left",
            Region::TransitionRight => "transition_right",
            Region::TransitionLeft => "transition_left",
            Region::Oscillatory => "oscillatory",
        }
    }

    pub fn is_transition(self) -> bool {
        matches!(self, Region::TransitionRight | Region::TransitionLeft)
    }
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where the transition band stops, in units of `β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionConfig {
    pub beta_cut: f64,
}

impl Default for RegionConfig {
    fn default() -> Self {
        Self { beta_cut: 2.0 }
    }
}

impl RegionConfig {
    pub fn new(beta_cut: f64) -> Result<Self> {
        if beta_cut > 0.0 && beta_cut.is_finite() {
            Ok(Self { beta_cut })
        } else {
            Err(Error::InvalidArgument(format!(
                "beta_cut must be positive, got {beta_cut}"
            )))
        }
    }
}

/// One automatic evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: SignedLogValue,
    pub region: Region,
    /// Stretch coordinate measured from the nearer turning point,
    /// `(|x| - √(2n)) n^{1/6}`.
    pub beta: f64,
    /// `arcsin(x/√(2n))`, only in the oscillatory regime.
    pub theta: Option<f64>,
}

fn turning_point(n: f64) -> f64 {
    (2.0 * n).sqrt()
}

fn parity_sign(n: u32) -> i8 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

fn domain(op: &'static str, x: f64, n: f64, valid: &str) -> Error {
    Error::Domain {
        op,
        x,
        n,
        valid: valid.to_string(),
    }
}

/// `σ = √(x² - 2n)`, factored as `√((|x| - √(2n))(|x| + √(2n)))` so the
/// turning point does not cancel.
pub fn sigma(x: f64, n: f64) -> Result<f64> {
    ensure_finite("x", x)?;
    let t = turning_point(n);
    let a = x.abs();
    if a < t {
        return Err(domain("sigma", x, n, "x² >= 2n"));
    }
    Ok(((a - t) * (a + t)).sqrt())
}

fn check_outer_right(op: &'static str, x: f64, n: f64) -> Result<f64> {
    ensure_finite("x", x)?;
    if !(n >= 0.0) || !(x > 0.0) || x <= turning_point(n) {
        return Err(domain(op, x, n, "x > √(2n)"));
    }
    sigma(x, n)
}

/// Eikonal phase `f(x, n) = (x² - σx - n)/2 + n ln(x + σ)`; `n` is real here
/// so the PDE residuals can differentiate in it.
pub fn f_outer(x: f64, n: f64) -> Result<f64> {
    let s = check_outer_right("f_outer", x, n)?;
    Ok(0.5 * (x * (x - s) - n) + n * (x + s).ln())
}

/// Transport amplitude `g(x, n) = ½ ln(½ (x/σ + 1))`.
pub fn g_outer(x: f64, n: f64) -> Result<f64> {
    let s = check_outer_right("g_outer", x, n)?;
    if s == 0.0 {
        return Err(domain("g_outer", x, n, "x > √(2n)"));
    }
    Ok(0.5 * (0.5 * (x / s + 1.0)).ln())
}

/// Outer approximation right of the turning point, `exp(f + g)`.
pub fn phi1(x: f64, n: u32) -> Result<SignedLogValue> {
    let nf = n as f64;
    Ok(SignedLogValue::new(1, f_outer(x, nf)? + g_outer(x, nf)?))
}

/// Outer approximation left of the turning point.
pub fn phi2(x: f64, n: u32) -> Result<SignedLogValue> {
    ensure_finite("x", x)?;
    let nf = n as f64;
    if !(x < 0.0) || -x <= turning_point(nf) {
        return Err(domain("phi2", x, nf, "x < -√(2n)"));
    }
    let s = sigma(x, nf)?;
    let log = 0.5 * (x * (x + s) - nf) + nf * (s - x).ln() + 0.5 * (0.5 * (1.0 - x / s)).ln();
    Ok(SignedLogValue::new(parity_sign(n), log))
}

/// Stretch variable `β = (x - √(2n)) n^{1/6}`.
pub fn beta_of(x: f64, n: u32) -> f64 {
    let nf = n as f64;
    (x - turning_point(nf)) * nf.powf(1.0 / 6.0)
}

fn require_positive_order(op: &str, n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument(format!("{op} needs n >= 1")))
    } else {
        Ok(())
    }
}

/// `(n/2) ln(2n) - 3n/2 + ½ ln(2π) + (1/6) ln n`, the log of the transition
/// prefactor without the `±√(2n) x` term.
fn transition_log_prefactor(n: f64) -> f64 {
    0.5 * n * (2.0 * n).ln() - 1.5 * n + 0.5 * (2.0 * PI).ln() + n.ln() / 6.0
}

/// Airy-layer approximation at the right turning point.
pub fn phi3(x: f64, n: u32) -> Result<SignedLogValue> {
    ensure_finite("x", x)?;
    require_positive_order("phi3", n)?;
    let nf = n as f64;
    let (ai_sign, ai_log) = airy_ai_log(SQRT_2 * beta_of(x, n))?;
    let pre = SignedLogValue::new(1, transition_log_prefactor(nf) + turning_point(nf) * x);
    Ok(pre * SignedLogValue::new(ai_sign, ai_log))
}

/// Airy-layer approximation at the left turning point.
pub fn phi4(x: f64, n: u32) -> Result<SignedLogValue> {
    ensure_finite("x", x)?;
    require_positive_order("phi4", n)?;
    let nf = n as f64;
    let arg = -SQRT_2 * (x + turning_point(nf)) * nf.powf(1.0 / 6.0);
    let (ai_sign, ai_log) = airy_ai_log(arg)?;
    let pre = SignedLogValue::new(
        parity_sign(n),
        transition_log_prefactor(nf) - turning_point(nf) * x,
    );
    Ok(pre * SignedLogValue::new(ai_sign, ai_log))
}

/// Phase `n(½ sin 2θ + θ - π/2) + θ/2` of the oscillatory approximation.
pub fn oscillatory_phase(theta: f64, n: u32) -> f64 {
    let nf = n as f64;
    nf * (0.5 * (2.0 * theta).sin() + theta - FRAC_PI_2) + 0.5 * theta
}

/// Oscillatory approximation in the angle variable:
/// `√(2/cos θ) exp{(n/2)[ln 2n - cos 2θ]} cos(phase)`.
pub fn phi_oscillatory(theta: f64, n: u32) -> Result<SignedLogValue> {
    ensure_finite("theta", theta)?;
    require_positive_order("phi_oscillatory", n)?;
    if theta.abs() >= FRAC_PI_2 {
        return Err(Error::Domain {
            op: "phi_oscillatory",
            x: theta,
            n: n as f64,
            valid: "|θ| < π/2".into(),
        });
    }
    let nf = n as f64;
    let amp = 0.5 * (2.0 / theta.cos()).ln() + 0.5 * nf * ((2.0 * nf).ln() - (2.0 * theta).cos());
    let c = oscillatory_phase(theta, n).cos();
    Ok(SignedLogValue::new(1, amp) * SignedLogValue::from_real(c))
}

/// Oscillatory approximation at `x`, through `θ = arcsin(x/√(2n))`.
pub fn phi5(x: f64, n: u32) -> Result<SignedLogValue> {
    ensure_finite("x", x)?;
    let t = turning_point(n as f64);
    if n == 0 || x.abs() >= t {
        return Err(domain("phi5", x, n as f64, "|x| < √(2n)"));
    }
    phi_oscillatory((x / t).asin(), n)
}

/// Regime of `(x, n)`. A band edge counts as transition.
pub fn classify_region(x: f64, n: u32, cfg: &RegionConfig) -> Region {
    if x >= 0.0 && beta_of(x, n).abs() <= cfg.beta_cut {
        return Region::TransitionRight;
    }
    if x < 0.0 && beta_of(-x, n).abs() <= cfg.beta_cut {
        return Region::TransitionLeft;
    }
    let t = turning_point(n as f64);
    if x > t {
        Region::OuterRight
    } else if x < -t {
        Region::OuterLeft
    } else {
        Region::Oscillatory
    }
}

/// Whether `(x, n)` lies inside one of the two transition bands.
pub fn near_turning_point(x: f64, n: u32, cfg: &RegionConfig) -> bool {
    classify_region(x, n, cfg).is_transition()
}

/// Evaluates the approximation that belongs to the regime of `(x, n)`.
pub fn eval_auto(x: f64, n: u32, cfg: &RegionConfig) -> Result<EvalResult> {
    ensure_finite("x", x)?;
    require_positive_order("eval_auto", n)?;
    let region = classify_region(x, n, cfg);
    let value = match region {
        Region::OuterRight => phi1(x, n),
        Region::OuterLeft => phi2(x, n),
        Region::TransitionRight => phi3(x, n),
        Region::TransitionLeft => phi4(x, n),
        Region::Oscillatory => phi5(x, n),
    }
    .map_err(|e| Error::NumericalFailure(format!("classifier picked {region} but: {e}")))?;
    let theta = (region == Region::Oscillatory).then(|| (x / turning_point(n as f64)).asin());
    Ok(EvalResult {
        value,
        region,
        beta: beta_of(x.abs(), n),
        theta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite::hermite_eval_exact;

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(2.0, 0.0).unwrap(), 2.0);
        assert_eq!(sigma(2.0, 2.0).unwrap(), 0.0);
        assert!((sigma(3.0, 4.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(sigma(1.0, 2.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn f_and_g_examples() {
        for x in [1.0, 5.0, 10.0] {
            assert_eq!(f_outer(x, 0.0).unwrap(), 0.0);
            assert_eq!(g_outer(x, 0.0).unwrap(), 0.0);
        }
        let s2 = 2f64.sqrt();
        let f = f_outer(2.0, 1.0).unwrap();
        assert!((f - ((4.0 - 2.0 * s2 - 1.0) / 2.0 + (2.0 + s2).ln())).abs() < 1e-14);
        assert!((f - 1.31373).abs() < 1e-5);
        let g = g_outer(2.0, 1.0).unwrap();
        assert!((g - 0.5 * (0.5 * (s2 + 1.0)).ln()).abs() < 1e-15);
        assert!((g - 0.094113).abs() < 1e-6);
        // log singularity at the turning point
        let t = 2f64.sqrt();
        assert!(g_outer(t * (1.0 + 1e-15), 1.0).unwrap() > 8.0);
        assert!(f_outer(t, 1.0).is_err());
        assert!(g_outer(1.0, 1.0).is_err());
    }

    #[test]
    fn phi1_examples() {
        assert_eq!(phi1(3.0, 0).unwrap(), SignedLogValue::ONE);
        let p = phi1(2.0, 1).unwrap();
        assert_eq!(p.sign, 1);
        assert!((p.log_abs - 1.40785).abs() < 1e-5);
        assert!((p.to_real() - 4.087).abs() < 1e-3);
        assert!(hermite_eval_exact(1, 2.0).unwrap().rel_diff(p) < 0.03);
        assert!(phi1(1.0, 1).is_err());
        assert!(phi1(-3.0, 1).is_err());
    }

    #[test]
    fn phi2_examples() {
        assert_eq!(phi2(-3.0, 0).unwrap(), SignedLogValue::ONE);
        let p = phi2(-2.0, 1).unwrap();
        assert_eq!(p.sign, -1);
        assert!((p.log_abs - phi1(2.0, 1).unwrap().log_abs).abs() < 1e-13);
        assert_eq!(phi2(-3.0, 4).unwrap().sign, 1);
        assert!(phi2(2.0, 1).is_err());
    }

    #[test]
    fn beta_examples() {
        assert!(beta_of(40f64.sqrt(), 20).abs() < 1e-15);
        let x = 40f64.sqrt() + 20f64.powf(-1.0 / 6.0);
        assert!((beta_of(x, 20) - 1.0).abs() < 1e-14);
        assert!(beta_of(6.4, 20) > beta_of(6.3, 20));
    }

    #[test]
    fn phi3_sign_change_at_first_airy_zero() {
        let n = 20;
        let nf = n as f64;
        let beta_zero = -2.338_107_410_459_77 / SQRT_2;
        assert!((beta_zero + 1.65329).abs() < 1e-5);
        let x_at = |b: f64| (2.0 * nf).sqrt() + b * nf.powf(-1.0 / 6.0);
        assert_eq!(phi3(x_at(beta_zero + 1e-3), n).unwrap().sign, 1);
        assert_eq!(phi3(x_at(beta_zero - 1e-3), n).unwrap().sign, -1);
    }

    #[test]
    fn phi3_at_turning_point_of_h20() {
        let x = 40f64.sqrt();
        let exact = hermite_eval_exact(20, x).unwrap();
        let ratio = (phi3(x, 20).unwrap().log_abs - exact.log_abs).exp();
        // measured: 0.88155
        assert!((ratio - 1.0).abs() < 0.15, "ratio {ratio}");
    }

    #[test]
    fn phi4_mirrors_phi3() {
        let a = phi4(-40f64.sqrt(), 20).unwrap();
        let b = phi3(40f64.sqrt(), 20).unwrap();
        assert_eq!(a.sign, 1);
        assert!((a.log_abs - b.log_abs).abs() < 1e-12);
        let a = phi4(-8f64.sqrt(), 3).unwrap();
        let b = phi3(8f64.sqrt(), 3).unwrap();
        assert_eq!(a.sign, -b.sign);
        assert!((a.log_abs - b.log_abs).abs() < 1e-12);
        for x in [-7.0, -6.3, -5.0] {
            let a = phi4(x, 21).unwrap();
            let b = phi3(-x, 21).unwrap();
            assert_eq!(a.sign, -b.sign);
            assert!((a.log_abs - b.log_abs).abs() < 1e-12);
        }
    }

    #[test]
    fn oscillatory_at_theta_zero() {
        let p = phi_oscillatory(0.0, 20).unwrap();
        assert_eq!(p.sign, 1);
        let want = 0.5 * 2f64.ln() + 10.0 * (40f64.ln() - 1.0);
        assert!((p.log_abs - want).abs() < 1e-12);
        assert!((p.log_abs - 27.2354).abs() < 1e-4);
        // ln H_20(0) = ln(20!/10!)
        let exact = hermite_eval_exact(20, 0.0).unwrap();
        let ln_exact: f64 = (11..=20).map(|k| (k as f64).ln()).sum();
        assert!((exact.log_abs - ln_exact).abs() < 1e-12);
        let rel = p.rel_diff(exact);
        assert!((rel - 0.00417).abs() < 1e-4, "rel {rel}");
    }

    #[test]
    fn oscillatory_reflection() {
        for n in [3, 4] {
            for theta in [0.1, 0.7, 1.3] {
                let a = phi_oscillatory(theta, n).unwrap();
                let b = phi_oscillatory(-theta, n).unwrap();
                assert_eq!(b.sign, a.sign * parity_sign(n));
                assert!((a.log_abs - b.log_abs).abs() < 1e-12);
            }
        }
        assert!(phi_oscillatory(FRAC_PI_2, 4).is_err());
    }

    #[test]
    fn phi5_is_phi_oscillatory_in_x() {
        assert_eq!(phi5(0.0, 20).unwrap(), phi_oscillatory(0.0, 20).unwrap());
        let n = 30;
        let x = (60f64).sqrt() * 0.3f64.sin();
        let a = phi5(x, n).unwrap();
        let b = phi_oscillatory(0.3, n).unwrap();
        assert_eq!(a.sign, b.sign);
        assert!((a.log_abs - b.log_abs).abs() < 1e-12);
        assert!(phi5(8f64.sqrt(), 4).is_err());
    }

    #[test]
    fn phi5_tracks_h4_between_its_zeros() {
        // zeros of H_4 lie at ±0.5246 and ±1.6507
        let outer_zero = 1.650_680_123_885_785;
        let inner_zero = 0.524_647_623_275_290_3;
        let mut worst = 0.0f64;
        for i in 0..=400 {
            let x = -outer_zero + 2.0 * outer_zero * i as f64 / 400.0;
            if (x.abs() - inner_zero).abs() <= 0.1 || (x.abs() - outer_zero).abs() <= 0.1 {
                continue;
            }
            let r = phi5(x, 4).unwrap().rel_diff(hermite_eval_exact(4, x).unwrap());
            worst = worst.max(r);
        }
        // measured envelope: 0.0600
        assert!(worst < 0.10, "worst {worst}");
    }

    #[test]
    fn classification() {
        let cfg = RegionConfig::default();
        assert_eq!(classify_region(10.0, 4, &cfg), Region::OuterRight);
        assert_eq!(classify_region(-10.0, 4, &cfg), Region::OuterLeft);
        assert_eq!(classify_region(40f64.sqrt(), 20, &cfg), Region::TransitionRight);
        assert_eq!(classify_region(-40f64.sqrt(), 20, &cfg), Region::TransitionLeft);
        assert_eq!(classify_region(0.0, 20, &cfg), Region::Oscillatory);
        // band edge belongs to the transition regime
        let edge = 40f64.sqrt() + 2.0 * 20f64.powf(-1.0 / 6.0);
        assert!(near_turning_point(edge, 20, &cfg));
        assert!(RegionConfig::new(0.0).is_err());
    }

    #[test]
    fn auto_dispatch() {
        let cfg = RegionConfig::default();
        let r = eval_auto(10.0, 4, &cfg).unwrap();
        assert_eq!(r.region, Region::OuterRight);
        assert_eq!(r.value, phi1(10.0, 4).unwrap());
        assert!(r.theta.is_none());

        let r = eval_auto(0.0, 20, &cfg).unwrap();
        assert_eq!(r.region, Region::Oscillatory);
        assert_eq!(r.value, phi5(0.0, 20).unwrap());
        assert_eq!(r.theta, Some(0.0));

        let x = 40f64.sqrt() + 0.1;
        let r = eval_auto(x, 20, &cfg).unwrap();
        assert_eq!(r.region, Region::TransitionRight);
        assert!((r.beta - 0.1 * 20f64.powf(1.0 / 6.0)).abs() < 1e-12);
        assert!((r.beta - 0.165).abs() < 1e-3);
        assert_eq!(r.value, phi3(x, 20).unwrap());

        assert!(eval_auto(1.0, 0, &cfg).is_err());
    }
}
