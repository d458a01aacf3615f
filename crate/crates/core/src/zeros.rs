//! Asymptotic approximations of the zeros `ζ_1 > ζ_2 > … > ζ_n` of `H_n`.
//!
//! Every zero is written as `ζ_k = √(2n) sin τ_k` where `τ_k` solves the
//! phase condition `n(½ sin 2τ + τ - π/2) + τ/2 = (1 - 2k)π/2`. The routes
//! below differ only in how `τ_k` (or `ζ_k`) is obtained:
//!
//! * [`solve_tau`]: bracketing root finder on the phase condition;
//! * [`tau_kapteyn`]: the phase condition is Kepler's equation in disguise,
//!   solved by its Kapteyn series of Bessel functions;
//! * [`tau_series_edge`] / [`zero_series_edge`]: expansion in `n^{-1/3}` for
//!   the largest zeros, `k = O(1)`;
//! * [`tau_series_center`] / [`zero_series_center`]: expansion in `1/n` for
//!   the zeros near the origin.
//!
//! [`newton_polish`] refines any estimate against the exact recurrence, and
//! [`zeros_table`] lines all of them up against the Sturm oracle.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

use crate::error::{Error, Result};
use crate::hermite::{hermite_eval_exact, hermite_pair_exact, hermite_zeros_exact, SignedLogValue};
use crate::specfun::bessel_j;

const MAX_BISECTIONS: usize = 200;
const MAX_EDGE_TAU_TERMS: usize = 10;
const MAX_EDGE_ZERO_TERMS: usize = 9;
const MAX_CENTER_TAU_TERMS: usize = 6;
const MAX_CENTER_ZERO_TERMS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZeroMethod {
    TauBisect,
    Kapteyn,
    EdgeSeries,
    CenterSeries,
    NewtonPolished,
    ExactOracle,
}

impl ZeroMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            ZeroMethod::TauBisect => "tau",
            ZeroMethod::Kapteyn => "kapteyn",
            ZeroMethod::EdgeSeries => "edge",
            ZeroMethod::CenterSeries => "center",
            ZeroMethod::NewtonPolished => "polished",
            ZeroMethod::ExactOracle => "exact",
        }
    }
}

/// One approximation of `ζ_k`, `k` counted from the largest zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroEstimate {
    pub n: u32,
    pub k: u32,
    pub method: ZeroMethod,
    pub value: f64,
    pub exact_ref: Option<f64>,
}

/// A positive zero of `H_n` next to its approximations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRow {
    pub k: u32,
    pub exact: f64,
    pub tau_based: f64,
    pub center_series: Option<f64>,
    pub edge_series: Option<f64>,
}

/// Outcome of summing the Kapteyn series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KapteynResult {
    pub tau: f64,
    pub terms: usize,
    /// False when `max_terms` ran out before the stopping rule fired.
    pub converged: bool,
}

fn check_index(n: u32, k: u32) -> Result<()> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "zero index needs 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    Ok(())
}

fn check_terms(terms: usize, max: usize) -> Result<()> {
    if terms == 0 || terms > max {
        return Err(Error::InvalidArgument(format!(
            "terms must lie in 1..={max}, got {terms}"
        )));
    }
    Ok(())
}

/// `n(½ sin 2τ + τ - π/2) + τ/2`.
pub fn tau_phase(n: u32, tau: f64) -> f64 {
    let nf = n as f64;
    nf * (0.5 * (2.0 * tau).sin() + tau - FRAC_PI_2) + 0.5 * tau
}

/// `δ - ½ sin 2δ`, by its Taylor series when `δ` is small.
fn delta_minus_half_sin(delta: f64) -> f64 {
    let u = 2.0 * delta;
    if u.abs() > 0.5 {
        return delta - 0.5 * u.sin();
    }
    // ½ Σ_{m≥1} (-1)^{m+1} u^{2m+1}/(2m+1)!
    let u2 = u * u;
    let mut term = u * u2 / 6.0;
    let mut sum = 0.0f64;
    let mut m = 1.0;
    while term.abs() > 1e-18 * sum.abs().max(f64::MIN_POSITIVE) {
        sum += term;
        term *= -u2 / ((2.0 * m + 2.0) * (2.0 * m + 3.0));
        m += 1.0;
    }
    0.5 * sum
}

/// Phase condition minus its right-hand side, increasing in `τ`. Near
/// `τ = π/2` it is rewritten in `δ = π/2 - τ` so the large terms cancel
/// analytically.
fn tau_residual(n: u32, k: u32, tau: f64) -> f64 {
    let nf = n as f64;
    if tau > FRAC_PI_4 {
        let d = FRAC_PI_2 - tau;
        -nf * delta_minus_half_sin(d) - 0.5 * d + (k as f64 - 0.25) * PI
    } else {
        let m = n as f64 + 1.0 - 2.0 * k as f64;
        nf * (0.5 * (2.0 * tau).sin() + tau) + 0.5 * tau - m * FRAC_PI_2
    }
}

fn tau_residual_slope(n: u32, tau: f64) -> f64 {
    let c = tau.cos();
    2.0 * n as f64 * c * c + 0.5
}

/// `τ_k` by bisection to `abs_tol`, then Newton steps kept inside the bracket.
pub fn solve_tau(n: u32, k: u32, abs_tol: f64) -> Result<f64> {
    check_index(n, k)?;
    if !(abs_tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "abs_tol must be positive, got {abs_tol}"
        )));
    }
    let (mut lo, mut hi) = (-FRAC_PI_2, FRAC_PI_2);
    let mut steps = 0;
    while hi - lo > abs_tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if tau_residual(n, k, mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        steps += 1;
        if steps > MAX_BISECTIONS {
            return Err(Error::NumericalFailure(format!(
                "phase bisection for n = {n}, k = {k} did not reach {abs_tol:e}"
            )));
        }
    }
    let mut tau = 0.5 * (lo + hi);
    for _ in 0..6 {
        let step = tau_residual(n, k, tau) / tau_residual_slope(n, tau);
        let next = tau - step;
        if !(next >= lo && next <= hi) || next == tau {
            break;
        }
        tau = next;
    }
    Ok(tau)
}

fn estimate(n: u32, k: u32, method: ZeroMethod, value: f64) -> ZeroEstimate {
    ZeroEstimate {
        n,
        k,
        method,
        value,
        exact_ref: None,
    }
}

/// `ζ_k = √(2n) sin τ_k` with `τ_k` from [`solve_tau`] at 1e-14.
pub fn zero_from_tau(n: u32, k: u32) -> Result<ZeroEstimate> {
    let tau = solve_tau(n, k, 1e-14)?;
    Ok(estimate(n, k, ZeroMethod::TauBisect, (2.0 * n as f64).sqrt() * tau.sin()))
}

/// `sin(m π / d)` for integers, reducing the angle exactly first.
fn sin_rational_pi(m: u64, d: u64) -> f64 {
    let r = m % (2 * d);
    (r as f64 * PI / d as f64).sin()
}

/// `τ_k` from the Kapteyn series with `N = 2n + 1`,
/// `π/2 - (π/2)(4k-1)/N - Σ_j J_j((1 - 1/N) j) sin((4k-1) j π / N) / j`.
///
/// Summation stops once ten consecutive `|J_j|/j` fall below `term_tol`.
pub fn tau_kapteyn(n: u32, k: u32, term_tol: f64, max_terms: usize) -> Result<KapteynResult> {
    check_index(n, k)?;
    if !(term_tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "term_tol must be positive, got {term_tol}"
        )));
    }
    let big_n = 2 * n as u64 + 1;
    let nf = big_n as f64;
    let ecc = 1.0 - 1.0 / nf;
    let m = 4 * k as u64 - 1;
    let mut sum = 0.0;
    let mut quiet = 0;
    let mut terms = 0;
    let mut converged = false;
    for j in 1..=max_terms {
        let jf = j as f64;
        let jj = bessel_j(j as u32, ecc * jf)?;
        sum += jj / jf * sin_rational_pi(m * j as u64, big_n);
        terms = j;
        if jj.abs() / jf < term_tol {
            quiet += 1;
            if quiet >= 10 {
                converged = true;
                break;
            }
        } else {
            quiet = 0;
        }
    }
    let tau = FRAC_PI_2 - FRAC_PI_2 * m as f64 / nf - sum;
    Ok(KapteynResult {
        tau,
        terms,
        converged,
    })
}

/// `κ(k) = 3π(4k - 1)`.
pub fn kappa(k: u32) -> f64 {
    3.0 * PI * (4.0 * k as f64 - 1.0)
}

/// `a_1(κ) … a_10(κ)` of the edge expansion `τ = π/2 - Σ a_i n^{-i/3}`.
pub fn edge_coefficients(kappa: f64) -> [f64; 10] {
    let k = kappa;
    let k2 = k * k;
    let k4 = k2 * k2;
    let k6 = k4 * k2;
    let k8 = k4 * k4;
    let p = |e: f64| k.powf(e / 3.0);
    [
        0.5 * p(1.0),
        -0.5 * p(-1.0),
        k / 120.0,
        -p(-5.0) / 30.0 * (k2 - 5.0),
        p(-7.0) / 8400.0 * (3.0 * k4 + 350.0 * k2 + 1400.0),
        -43.0 / 16800.0 * k,
        p(-11.0) / 50400.0 * (k6 + 350.0 * k4 - 980.0 * k2 - 11200.0),
        -p(-13.0) / 63000.0 * (13.0 * k6 + 475.0 * k4 + 1400.0 * k2 + 17500.0),
        59.0 / 67200.0 * k + 43.0 / 34_496_000.0 * k * k2,
        -p(-17.0) / 1_397_088_000.0
            * (23817.0 * k8 + 2_608_760.0 * k6 - 4_592_280.0 * k4 - 51_744_000.0 * k2
                - 664_048_000.0),
    ]
}

/// `τ_k ≈ π/2 - Σ_{i=1}^{terms} a_i(κ) n^{-i/3}`.
pub fn tau_series_edge(n: u32, k: u32, terms: usize) -> Result<f64> {
    check_index(n, k)?;
    check_terms(terms, MAX_EDGE_TAU_TERMS)?;
    let a = edge_coefficients(kappa(k));
    let t = (n as f64).powf(-1.0 / 3.0);
    let mut sum = 0.0;
    let mut pow = 1.0;
    for &ai in &a[..terms] {
        pow *= t;
        sum += ai * pow;
    }
    Ok(FRAC_PI_2 - sum)
}

/// Terms of `ζ_k / √2` in powers of `n^{-1/3}`, paired with their exponents
/// in sixths: `n^{1/2} - κ^{2/3}/8 n^{-1/6} + …`.
fn edge_zero_terms(kappa: f64) -> [(f64, i32); 9] {
    let k = kappa;
    let k2 = k * k;
    let k4 = k2 * k2;
    let k6 = k4 * k2;
    let p = |e: f64| k.powf(e / 3.0);
    [
        (1.0, 3),
        (-p(2.0) / 8.0, -1),
        (0.25, -3),
        (-(k2 + 80.0) / (640.0 * p(2.0)), -5),
        ((k2 - 8.0) / (96.0 * p(4.0)), -7),
        (-(11.0 * k2 + 3920.0) / 179_200.0, -9),
        ((5.0 * k4 + 96.0 * k2 + 640.0) / (7680.0 * p(8.0)), -11),
        (
            -(823.0 * k6 + 647_200.0 * k4 - 2_464_000.0 * k2 - 25_088_000.0)
                / (258_048_000.0 * p(10.0)),
            -13,
        ),
        ((33.0 * k2 + 3064.0) / 716_800.0, -15),
    ]
}

/// `ζ_k` from the first `terms` terms of its large-`n` expansion, `k = O(1)`.
pub fn zero_series_edge(n: u32, k: u32, terms: usize) -> Result<ZeroEstimate> {
    check_index(n, k)?;
    check_terms(terms, MAX_EDGE_ZERO_TERMS)?;
    let nf = n as f64;
    let sum: f64 = edge_zero_terms(kappa(k))[..terms]
        .iter()
        .map(|&(c, e)| c * nf.powf(e as f64 / 6.0))
        .sum();
    Ok(estimate(n, k, ZeroMethod::EdgeSeries, SQRT_2 * sum))
}

/// `α = frac(n/2)`.
fn alpha(n: u32) -> f64 {
    if n % 2 == 0 {
        0.0
    } else {
        0.5
    }
}

/// `ξ(j) = (π/4)(2j + 2α - 1)`.
pub fn xi(n: u32, j: u32) -> f64 {
    FRAC_PI_4 * (2.0 * j as f64 + 2.0 * alpha(n) - 1.0)
}

/// Index `k = ⌊n/2⌋ + 1 - j` of the zero labelled `j` from the centre.
pub fn center_k(n: u32, j: u32) -> Result<u32> {
    let k = (n / 2 + 1) as i64 - j as i64;
    if k < 1 || k > n as i64 {
        return Err(Error::InvalidArgument(format!(
            "centre index j = {j} has no zero of H_{n}"
        )));
    }
    Ok(k as u32)
}

/// `b_1(ξ) … b_6(ξ)` of the centre expansion `τ = Σ b_i n^{-i}`.
pub fn center_coefficients(xi: f64) -> [f64; 6] {
    let x2 = xi * xi;
    let x4 = x2 * x2;
    [
        xi,
        -xi / 4.0,
        xi / 48.0 * (3.0 + 16.0 * x2),
        -xi / 192.0 * (3.0 + 64.0 * x2),
        xi / 3840.0 * (15.0 + 800.0 * x2 + 1024.0 * x4),
        -xi / 15360.0 * (15.0 + 1600.0 * x2 + 7424.0 * x4),
    ]
}

/// `τ ≈ Σ_{i=1}^{terms} b_i(ξ) n^{-i}` for the zero `k = ⌊n/2⌋ + 1 - j`.
pub fn tau_series_center(n: u32, j: u32, terms: usize) -> Result<f64> {
    center_k(n, j)?;
    check_terms(terms, MAX_CENTER_TAU_TERMS)?;
    let b = center_coefficients(xi(n, j));
    let inv = 1.0 / n as f64;
    let mut pow = 1.0;
    let mut sum = 0.0;
    for &bi in &b[..terms] {
        pow *= inv;
        sum += bi * pow;
    }
    Ok(sum)
}

/// `ζ_k ≈ √2 ξ (n^{-1/2} - n^{-3/2}/4 + (3 + 8ξ²) n^{-5/2}/48 - (3 + 40ξ²) n^{-7/2}/192)`.
pub fn zero_series_center(n: u32, j: u32, terms: usize) -> Result<ZeroEstimate> {
    let k = center_k(n, j)?;
    check_terms(terms, MAX_CENTER_ZERO_TERMS)?;
    let x = xi(n, j);
    let x2 = x * x;
    let coeffs = [1.0, -0.25, (3.0 + 8.0 * x2) / 48.0, -(3.0 + 40.0 * x2) / 192.0];
    let nf = n as f64;
    let sum: f64 = coeffs[..terms]
        .iter()
        .enumerate()
        .map(|(i, c)| c * nf.powf(-(2.0 * i as f64 + 1.0) / 2.0))
        .sum();
    Ok(estimate(n, k, ZeroMethod::CenterSeries, SQRT_2 * x * sum))
}

/// Largest `k` the edge expansion is offered for.
pub fn edge_gate(n: u32) -> u32 {
    (n / 3).max(1)
}

/// Largest `j` the centre expansion is offered for.
pub fn center_gate(n: u32) -> u32 {
    n / 3
}

/// Newton iteration `x ← x - H_n(x)/H_n'(x)` with both values in signed-log
/// form, so the ratio is formed without ever exponentiating `H_n`.
///
/// Converged once a step is below `abs_tol`, or once steps below
/// `√abs_tol` stop halving: that is the rounding floor of the recurrence,
/// which for large `n` can sit above `abs_tol`.
pub fn newton_polish(est: ZeroEstimate, max_iters: usize, abs_tol: f64) -> Result<ZeroEstimate> {
    let n = est.n;
    check_index(n, est.k)?;
    if !(abs_tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "abs_tol must be positive, got {abs_tol}"
        )));
    }
    let bound = (2.0 * n as f64 + 1.0).sqrt();
    let floor_tol = abs_tol.sqrt();
    let mut prev_step = f64::INFINITY;
    let mut x = est.value;
    for _ in 0..max_iters {
        if !(x.abs() <= bound) {
            break;
        }
        let (h_prev, h) = hermite_pair_exact(n, x)?;
        if h.is_zero() {
            return Ok(ZeroEstimate {
                method: ZeroMethod::NewtonPolished,
                value: x,
                ..est
            });
        }
        let dh = SignedLogValue::from_real(2.0 * n as f64) * h_prev;
        let step = h
            .div(dh)
            .ok_or_else(|| Error::NumericalFailure(format!("H_{n}' vanished at {x}")))?
            .to_real();
        let stalled = step.abs() <= floor_tol && step.abs() > 0.5 * prev_step;
        prev_step = step.abs();
        if stalled {
            // the previous iterate was already at the noise floor
            return Ok(ZeroEstimate {
                method: ZeroMethod::NewtonPolished,
                value: x,
                ..est
            });
        }
        x -= step;
        if step.abs() <= abs_tol {
            if x.abs() > bound {
                break;
            }
            return Ok(ZeroEstimate {
                method: ZeroMethod::NewtonPolished,
                value: x,
                ..est
            });
        }
    }
    if !(x.abs() <= bound) {
        return Err(Error::NumericalFailure(format!(
            "Newton iterate {x} left [-{bound}, {bound}] polishing zero {} of H_{n}",
            est.k
        )));
    }
    Err(Error::NumericalFailure(format!(
        "Newton did not reach {abs_tol:e} in {max_iters} steps for zero {} of H_{n}",
        est.k
    )))
}

/// `ζ_k` from the Sturm oracle, located to `abs_tol`.
pub fn zero_exact(n: u32, k: u32, abs_tol: f64) -> Result<ZeroEstimate> {
    check_index(n, k)?;
    let zs = hermite_zeros_exact(n, abs_tol)?;
    Ok(estimate(n, k, ZeroMethod::ExactOracle, zs[(n - k) as usize]))
}

/// The positive zeros of `H_n` in ascending order against the tau route
/// and, inside their gates, the centre and edge expansions.
pub fn zeros_table(n: u32) -> Result<Vec<ComparisonRow>> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "the comparison table needs an even n >= 2, got {n}"
        )));
    }
    let exact = hermite_zeros_exact(n, 1e-13)?;
    let mut rows = Vec::with_capacity(n as usize / 2);
    for k in (1..=n / 2).rev() {
        let j = n / 2 + 1 - k;
        let center_series = if j <= center_gate(n) {
            Some(zero_series_center(n, j, MAX_CENTER_ZERO_TERMS)?.value)
        } else {
            None
        };
        let edge_series = if k <= edge_gate(n) {
            Some(zero_series_edge(n, k, MAX_EDGE_ZERO_TERMS)?.value)
        } else {
            None
        };
        rows.push(ComparisonRow {
            k,
            exact: exact[(n - k) as usize],
            tau_based: zero_from_tau(n, k)?.value,
            center_series,
            edge_series,
        });
    }
    Ok(rows)
}

/// Whether `H_n` changes sign across `[a, b]`.
pub fn brackets_sign_change(n: u32, a: f64, b: f64) -> Result<bool> {
    let fa = hermite_eval_exact(n, a)?;
    let fb = hermite_eval_exact(n, b)?;
    Ok(fa.sign * fb.sign < 0)
}
