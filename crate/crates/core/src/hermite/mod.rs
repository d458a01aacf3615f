//! Exact evaluation of Hermite polynomials and their zeros.

mod polynomial;
mod signed_log;
mod sturm;

pub use polynomial::{
    hermite_derivative_exact, hermite_eval_exact, hermite_f64, hermite_pair_exact,
    orthogonality_integral,
};
pub use signed_log::SignedLogValue;
pub use sturm::{hermite_zeros_exact, sturm_count};

/// Degree of a Hermite polynomial. Evaluation is exercised up to `10^6`,
/// exact zeros up to 2000.
pub type HermiteOrder = u32;
