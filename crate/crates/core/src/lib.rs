//! Ray-method asymptotics of the Hermite polynomials `H_n(x)`.
//!
//! * [`hermite`] is the exact, overflow-safe ground truth: signed-log
//!   arithmetic, the three-term recurrence and Sturm-bisection zeros.
//! * [`asymptotics`] holds the closed forms for the outer, transition and
//!   oscillatory regimes plus a regime classifier.
//! * [`zeros`] has the asymptotic routes to the zeros and the comparison
//!   table built from them.
//! * [`specfun`] supplies Ai, Bi and `J_n`.
//! * [`cli`] backs the `hermite-asym` binary.

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod hermite;
pub mod specfun;
pub mod zeros;

pub use error::{Error, Result};
pub use hermite::SignedLogValue;
