use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Relative size of `|a + b|` against `max(|a|, |b|)` below which an
/// opposite-sign sum is treated as total cancellation.
const CANCELLATION_REL: f64 = 1e-15;

/// A real number stored as a sign and the natural log of its magnitude.
///
/// `sign == 0` is exactly zero and `log_abs` is then ignored (kept at
/// `-inf`). `cancelled` records that the value came out of a near-exact
/// cancellation in [`SignedLogValue::add`] and carries no reliable digits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLogValue {
    pub sign: i8,
    pub log_abs: f64,
    pub cancelled: bool,
}

impl SignedLogValue {
    pub const ZERO: Self = Self {
        sign: 0,
        log_abs: f64::NEG_INFINITY,
        cancelled: false,
    };

    pub const ONE: Self = Self {
        sign: 1,
        log_abs: 0.0,
        cancelled: false,
    };

    /// Builds a value from its parts. A zero sign gives [`Self::ZERO`].
    pub fn new(sign: i8, log_abs: f64) -> Self {
        match sign.signum() {
            0 => Self::ZERO,
            s => Self {
                sign: s,
                log_abs,
                cancelled: false,
            },
        }
    }

    pub fn from_real(v: f64) -> Self {
        if v == 0.0 {
            Self::ZERO
        } else {
            Self::new(if v > 0.0 { 1 } else { -1 }, v.abs().ln())
        }
    }

    /// Converts back to a double; overflows to `±inf` or underflows to zero
    /// when `log_abs` is out of range.
    pub fn to_real(self) -> f64 {
        if self.sign == 0 {
            0.0
        } else {
            self.sign as f64 * self.log_abs.exp()
        }
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    pub fn abs(self) -> Self {
        Self {
            sign: self.sign.abs(),
            ..self
        }
    }

    pub fn mul(self, other: Self) -> Self {
        let cancelled = self.cancelled || other.cancelled;
        if self.sign == 0 || other.sign == 0 {
            return Self {
                cancelled,
                ..Self::ZERO
            };
        }
        Self {
            sign: self.sign * other.sign,
            log_abs: self.log_abs + other.log_abs,
            cancelled,
        }
    }

    /// Log-sum-exp with sign handling. Only the flag of this operation is
    /// reported, so callers see whether *this* sum lost its digits.
    pub fn add(self, other: Self) -> Self {
        if self.sign == 0 {
            return Self {
                cancelled: false,
                ..other
            };
        }
        if other.sign == 0 {
            return Self {
                cancelled: false,
                ..self
            };
        }
        let (big, small) = if self.log_abs >= other.log_abs {
            (self, other)
        } else {
            (other, self)
        };
        let d = small.log_abs - big.log_abs;
        if big.sign == small.sign {
            return Self::new(big.sign, big.log_abs + d.exp().ln_1p());
        }
        if d == 0.0 {
            return Self::ZERO;
        }
        let rest = -d.exp_m1();
        if rest < CANCELLATION_REL {
            return Self {
                cancelled: true,
                ..Self::ZERO
            };
        }
        Self::new(big.sign, big.log_abs + rest.ln())
    }

    /// `self / other`; dividing by zero is reported as `None`.
    pub fn div(self, other: Self) -> Option<Self> {
        if other.sign == 0 {
            return None;
        }
        Some(self.mul(Self {
            sign: other.sign,
            log_abs: -other.log_abs,
            cancelled: other.cancelled,
        }))
    }

    /// Relative difference `|self/other - 1|`, computed without leaving log
    /// space. Infinite when the signs differ.
    pub fn rel_diff(self, other: Self) -> f64 {
        match (self.sign, other.sign) {
            (0, 0) => 0.0,
            (a, b) if a != b => f64::INFINITY,
            _ => (self.log_abs - other.log_abs).exp_m1().abs(),
        }
    }
}

impl Default for SignedLogValue {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<f64> for SignedLogValue {
    fn from(v: f64) -> Self {
        Self::from_real(v)
    }
}

impl Neg for SignedLogValue {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            sign: -self.sign,
            ..self
        }
    }
}

impl Mul for SignedLogValue {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        SignedLogValue::mul(self, rhs)
    }
}

impl Add for SignedLogValue {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        SignedLogValue::add(self, rhs)
    }
}

impl Sub for SignedLogValue {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        SignedLogValue::add(self, -rhs)
    }
}

impl PartialOrd for SignedLogValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                0 => Some(Ordering::Equal),
                1 => self.log_abs.partial_cmp(&other.log_abs),
                _ => other.log_abs.partial_cmp(&self.log_abs),
            },
            o => Some(o),
        }
    }
}

impl fmt::Display for SignedLogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            s => write!(f, "{}exp({})", if s > 0 { "+" } else { "-" }, self.log_abs),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::LN_10;

    #[test]
    fn multiplication() {
        let a = SignedLogValue::new(-1, 3f64.ln());
        let b = SignedLogValue::new(1, 2f64.ln());
        let p = a * b;
        assert_eq!(p.sign, -1);
        assert!((p.log_abs - 6f64.ln()).abs() < 1e-15);
        assert!((SignedLogValue::ZERO * a).is_zero());
        assert!((a * SignedLogValue::ZERO).is_zero());
    }

    #[test]
    fn multiplication_does_not_overflow() {
        let big = SignedLogValue::from_real(1e200);
        let p = big * big;
        assert_eq!(p.sign, 1);
        assert!((p.log_abs - 400.0 * LN_10).abs() < 1e-12);
        assert_eq!(p.to_real(), f64::INFINITY);
    }

    #[test]
    fn addition() {
        let five = SignedLogValue::new(1, 5.0);
        let z = five + (-five);
        assert!(z.is_zero());
        assert!(!z.cancelled);

        let s = SignedLogValue::new(1, 3f64.ln()) + SignedLogValue::new(1, 0.0);
        assert_eq!(s.sign, 1);
        assert!((s.log_abs - 4f64.ln()).abs() < 1e-15);

        let d = SignedLogValue::new(1, 0.0) + SignedLogValue::new(-1, 2f64.ln());
        assert_eq!(d.sign, -1);
        assert!(d.log_abs.abs() < 1e-15);
    }

    #[test]
    fn near_cancellation_is_flagged() {
        let a = SignedLogValue::from_real(1.0);
        let b = SignedLogValue::from_real(-(1.0 + 2.0 * f64::EPSILON));
        let s = a + b;
        assert!(s.is_zero());
        assert!(s.cancelled);
        // clean sums clear the flag again
        assert!(!(s + a).cancelled);
    }

    #[test]
    fn ordering_follows_real_values() {
        let vals = [-1e300, -3.0, -1e-200, 0.0, 1e-200, 2.0, 1e250];
        for w in vals.windows(2) {
            assert!(SignedLogValue::from_real(w[0]) < SignedLogValue::from_real(w[1]));
        }
    }

    #[test]
    fn rel_diff_handles_signs() {
        let a = SignedLogValue::from_real(2.0);
        assert_eq!(a.rel_diff(-a), f64::INFINITY);
        assert!((SignedLogValue::from_real(2.02).rel_diff(a) - 0.01).abs() < 1e-14);
    }

    proptest! {
        #[test]
        fn real_round_trip(mant in 1.0f64..10.0, exp in -300i32..300, neg in any::<bool>()) {
            let v = if neg { -mant } else { mant } * 10f64.powi(exp);
            prop_assume!(v.is_finite() && v.abs() >= 1e-300 && v.abs() <= 1e300);
            let back = SignedLogValue::from_real(v).to_real();
            // exp(ln v) carries an error of about |ln v| ulps
            prop_assert!(((back - v) / v).abs() <= 2e-16 * (1.0 + v.abs().ln().abs()));
        }

        #[test]
        fn add_matches_doubles(a in -1e6f64..1e6, b in -1e6f64..1e6) {
            let s = (SignedLogValue::from_real(a) + SignedLogValue::from_real(b)).to_real();
            let exact = a + b;
            let scale = a.abs().max(b.abs());
            prop_assert!((s - exact).abs() <= 1e-13 * scale);
        }
    }
}
