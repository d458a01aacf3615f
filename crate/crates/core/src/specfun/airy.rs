//! Airy functions Ai(x) and Bi(x) for real x.
//!
//! Inside `|x| <= series_switch` both functions come from the Maclaurin
//! series, summed in double-double arithmetic so that the cancellation
//! between the two power series (exponentially large in `|x|^{3/2}`) does not
//! eat the result. Outside, the standard `u_k` asymptotic expansions are
//! used: exponential on the right, the `P`/`Q` oscillatory pair on the left.

use std::f64::consts::{FRAC_PI_4, PI};

use twofloat::TwoFloat;

use super::SpecFunConfig;
use crate::error::{ensure_finite, Result};

// 3^{-2/3}/Γ(2/3) and 3^{-1/3}/Γ(1/3) as (hi, lo) pairs, then the same
// constants scaled by √3 for Bi.
const AI_C1: (f64, f64) = (0.3550280538878172, 2.05233632436212e-17);
const AI_C2: (f64, f64) = (0.2588194037928068, -2.522243111610832e-17);
const BI_C1: (f64, f64) = (0.6149266274460007, 5.0899207794891416e-17);
const BI_C2: (f64, f64) = (0.4482883573538264, -2.5363237774417305e-17);

const MAX_SERIES_TERMS: usize = 400;

fn dd(c: (f64, f64)) -> TwoFloat {
    TwoFloat::new_add(c.0, c.1)
}

/// The two Maclaurin power series `f(x) = Σ 3^k (1/3)_k x^{3k}/(3k)!` and
/// `g(x) = Σ 3^k (2/3)_k x^{3k+1}/(3k+1)!`.
fn power_series(x: f64) -> (TwoFloat, TwoFloat) {
    let x3 = TwoFloat::new_mul(x, x) * x;
    let mut f = TwoFloat::from(1.0);
    let mut g = TwoFloat::from(x);
    let mut tf = f;
    let mut tg = g;
    for k in 1..MAX_SERIES_TERMS {
        let k3 = 3.0 * k as f64;
        tf = tf * x3 / ((k3 - 1.0) * k3);
        tg = tg * x3 / (k3 * (k3 + 1.0));
        f += tf;
        g += tg;
        let small_f = tf.hi().abs() <= 1e-34 * f.hi().abs();
        let small_g = tg.hi().abs() <= 1e-34 * g.hi().abs().max(f64::MIN_POSITIVE);
        if small_f && small_g {
            break;
        }
    }
    (f, g)
}

/// `(Ai(x), Bi(x))` from the Maclaurin series.
///
/// Accurate to double precision for `|x|` up to about 10; beyond that the
/// double-double cancellation margin runs out for Ai on the positive axis.
pub fn maclaurin(x: f64) -> (f64, f64) {
    let (f, g) = power_series(x);
    let ai = dd(AI_C1) * f - dd(AI_C2) * g;
    let bi = dd(BI_C1) * f + dd(BI_C2) * g;
    (ai.hi() + ai.lo(), bi.hi() + bi.lo())
}

/// Iterator over the asymptotic coefficients `u_0 = 1`,
/// `u_k = u_{k-1} (6k-5)(6k-3)(6k-1) / (216 k (2k-1))`.
fn u_coefficients() -> impl Iterator<Item = f64> {
    let mut k = 0u32;
    let mut u = 1.0f64;
    std::iter::from_fn(move || {
        if k > 0 {
            let kf = k as f64;
            u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / (216.0 * kf * (2.0 * kf - 1.0));
        }
        k += 1;
        Some(u)
    })
}

/// Sum `Σ s^k u_k / ζ^k` with optimal truncation: terms are added until
/// they stop shrinking, drop below double resolution, or `terms` is hit.
fn exp_series(zeta: f64, alternating: bool, terms: usize) -> f64 {
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    let mut zk = 1.0;
    for (k, u) in u_coefficients().take(terms).enumerate() {
        let t = u / zk;
        if t > prev {
            break;
        }
        let signed = if alternating && k % 2 == 1 { -t } else { t };
        sum += signed;
        if t < 1e-17 * sum.abs() {
            break;
        }
        prev = t;
        zk *= zeta;
    }
    sum
}

/// The oscillatory pair `P = Σ (-1)^k u_{2k} ζ^{-2k}`, `Q = Σ (-1)^k u_{2k+1} ζ^{-2k-1}`.
fn oscillatory_series(zeta: f64, terms: usize) -> (f64, f64) {
    let (mut p, mut q) = (0.0, 0.0);
    let mut prev = f64::INFINITY;
    let mut zk = 1.0;
    for (k, u) in u_coefficients().take(terms).enumerate() {
        let t = u / zk;
        if t > prev {
            break;
        }
        // k = 0,1,2,3,... maps to P+, Q+, P-, Q-, ...
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * t;
        } else {
            q += sign * t;
        }
        if t < 1e-17 {
            break;
        }
        prev = t;
        zk *= zeta;
    }
    (p, q)
}

/// `(Ai(x), Bi(x))` from the asymptotic expansions, using at most `terms`
/// coefficients. Only meaningful for `|x|` well away from zero.
pub fn asymptotic(x: f64, terms: usize) -> (f64, f64) {
    let t = x.abs();
    let zeta = 2.0 / 3.0 * t * t.sqrt();
    let amp = 1.0 / (PI.sqrt() * t.powf(0.25));
    if x > 0.0 {
        let ai = 0.5 * amp * (-zeta).exp() * exp_series(zeta, true, terms);
        let bi = amp * zeta.exp() * exp_series(zeta, false, terms);
        (ai, bi)
    } else {
        let (p, q) = oscillatory_series(zeta, terms);
        let (s, c) = (zeta + FRAC_PI_4).sin_cos();
        (amp * (s * p - c * q), amp * (c * p + s * q))
    }
}

fn ai_bi(x: f64, cfg: &SpecFunConfig) -> (f64, f64) {
    if x.abs() <= cfg.series_switch {
        maclaurin(x)
    } else {
        asymptotic(x, cfg.asym_terms)
    }
}

/// Ai(x) with explicit accuracy settings.
pub fn airy_ai_with(x: f64, cfg: &SpecFunConfig) -> Result<f64> {
    ensure_finite("x", x)?;
    cfg.validate()?;
    Ok(ai_bi(x, cfg).0)
}

/// Bi(x) with explicit accuracy settings.
pub fn airy_bi_with(x: f64, cfg: &SpecFunConfig) -> Result<f64> {
    ensure_finite("x", x)?;
    cfg.validate()?;
    Ok(ai_bi(x, cfg).1)
}

/// Airy function of the first kind, Ai(x).
pub fn airy_ai(x: f64) -> Result<f64> {
    airy_ai_with(x, &SpecFunConfig::default())
}

/// Airy function of the second kind, Bi(x).
pub fn airy_bi(x: f64) -> Result<f64> {
    airy_bi_with(x, &SpecFunConfig::default())
}

/// `(sign, ln|Ai(x)|)`. On the positive axis beyond the series switch the
/// logarithm is formed directly from the asymptotic expansion, so it stays
/// finite long after Ai itself underflows. A sign of 0 means Ai(x) = 0.
pub fn airy_ai_log(x: f64) -> Result<(i8, f64)> {
    ensure_finite("x", x)?;
    let cfg = SpecFunConfig::default();
    if x > cfg.series_switch {
        let zeta = 2.0 / 3.0 * x * x.sqrt();
        let s = exp_series(zeta, true, cfg.asym_terms);
        let ln = -zeta - (2.0 * PI.sqrt()).ln() - 0.25 * x.ln() + s.ln();
        return Ok((1, ln));
    }
    let ai = ai_bi(x, &cfg).0;
    if ai == 0.0 {
        Ok((0, f64::NEG_INFINITY))
    } else {
        Ok((if ai > 0.0 { 1 } else { -1 }, ai.abs().ln()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values from a 50-digit evaluation.
    const REFERENCE: &[(f64, f64, f64)] = &[
        (-20.0, -0.17640612707798469, -0.20013930932265135),
        (-9.5, 0.3191032477191282, 0.037785432489466502),
        (-9.0, -0.022133721547341404, 0.32494732345524492),
        (-5.0, 0.35076100902411432, -0.13836913490160058),
        (-1.0, 0.53556088329235212, 0.10399738949694461),
        (0.5, 0.23169360648083349, 0.85427704310315549),
        (5.0, 0.00010834442813607442, 657.79204417117118),
        (9.0, 2.4711684308724898e-9, 21472868.891435349),
        (9.5, 5.3302637046174916e-10, 96892265.580451093),
        (20.0, 1.6916728686705403e-27, 2.1037650496511038e+25),
    ];

    #[test]
    fn matches_reference_values() {
        for &(x, ai, bi) in REFERENCE {
            let a = airy_ai(x).unwrap();
            let b = airy_bi(x).unwrap();
            assert!((a - ai).abs() <= 1e-12_f64.max(1e-12 * ai.abs()), "Ai({x}) = {a}, want {ai}");
            assert!((b - bi).abs() <= 1e-12_f64.max(1e-12 * bi.abs()), "Bi({x}) = {b}, want {bi}");
        }
    }

    #[test]
    fn ai_decays_on_the_right() {
        let a = airy_ai(10.0).unwrap();
        assert!(a > 0.0 && a < 1e-9);
        assert!(airy_bi(5.0).unwrap() > airy_ai(5.0).unwrap());
    }

    #[test]
    fn non_finite_input_is_rejected() {
        assert!(airy_ai(f64::NAN).is_err());
        assert!(airy_bi(f64::INFINITY).is_err());
        assert!(airy_ai_log(f64::NEG_INFINITY).is_err());
    }

    #[test]
    fn log_form_agrees_and_survives_underflow() {
        for x in [-7.3, -1.0, 0.0, 2.0, 8.9, 9.1, 15.0, 40.0] {
            let (s, l) = airy_ai_log(x).unwrap();
            let a = airy_ai(x).unwrap();
            assert_eq!(s as f64, a.signum());
            assert!((l.exp() - a.abs()).abs() <= 1e-13 * a.abs());
        }
        let (s, l) = airy_ai_log(300.0).unwrap();
        assert_eq!(s, 1);
        assert!(airy_ai(300.0).unwrap() == 0.0);
        // -ζ dominates: ζ = 2/3 · 300^{3/2} ≈ 3464.1
        assert!((l + 3464.1016).abs() < 5.0);
    }

    #[test]
    fn switch_point_continuity() {
        let cfg = SpecFunConfig::default();
        for x in [cfg.series_switch, -cfg.series_switch] {
            let (sa, sb) = maclaurin(x);
            let (aa, ab) = asymptotic(x, cfg.asym_terms);
            assert!((sa - aa).abs() <= 1e-9, "Ai jump at {x}: {sa} vs {aa}");
            assert!((sb - ab).abs() <= 1e-9 * sb.abs().max(1.0), "Bi jump at {x}: {sb} vs {ab}");
        }
    }

    #[test]
    fn u_coefficients_start_correctly() {
        let u: Vec<f64> = u_coefficients().take(3).collect();
        assert_eq!(u[0], 1.0);
        assert!((u[1] - 5.0 / 72.0).abs() < 1e-16);
        assert!((u[2] - 385.0 / 10368.0).abs() < 1e-16);
    }
}
