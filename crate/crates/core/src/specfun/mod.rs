//! Double-precision Airy and integer-order Bessel functions.
//!
//! Only what the transition layer and the Kapteyn series need: real
//! arguments, no derivatives.

pub mod airy;
pub mod bessel;

pub use airy::{airy_ai, airy_ai_log, airy_ai_with, airy_bi, airy_bi_with};
pub use bessel::{bessel_j, bessel_j_with_offset, default_start_offset};

use crate::error::{Error, Result};

/// Accuracy knobs for the Airy evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecFunConfig {
    /// `|x|` at which the evaluators leave the Maclaurin series for the
    /// asymptotic expansions.
    pub series_switch: f64,
    /// Maximum number of `u_k` terms in the asymptotic expansions.
    pub asym_terms: usize,
    /// Absolute accuracy the evaluators aim for.
    pub target_abs_tol: f64,
}

impl Default for SpecFunConfig {
    fn default() -> Self {
        Self {
            series_switch: 9.0,
            asym_terms: 30,
            target_abs_tol: 1e-12,
        }
    }
}

impl SpecFunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.series_switch > 0.0 && self.series_switch.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "series_switch must be positive, got {}",
                self.series_switch
            )));
        }
        if self.asym_terms == 0 {
            return Err(Error::InvalidArgument("asym_terms must be at least 1".into()));
        }
        if !(self.target_abs_tol > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "target_abs_tol must be positive, got {}",
                self.target_abs_tol
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        SpecFunConfig::default().validate().unwrap();
    }

    #[test]
    fn rejects_bad_config() {
        let mut cfg = SpecFunConfig::default();
        cfg.asym_terms = 0;
        assert!(cfg.validate().is_err());
        let cfg = SpecFunConfig {
            series_switch: -1.0,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = SpecFunConfig {
            target_abs_tol: 0.0,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }
}
