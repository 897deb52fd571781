//! Exact arithmetic for the asymptotic expansion of the factorial,
//!
//! ```text
//! n! ~ n^n e^{-n} sqrt(2 pi n) (a_0 + a_1/n + a_2/n^2 + ...)
//! ```
//!
//! The crate computes the coefficients a_k by six independent methods over
//! exact rationals and cross-checks them bit for bit:
//!
//! * a nonlinear recurrence for an auxiliary sequence b_m with
//!   a_k = (2k+1)!! b_{2k+1},
//! * an alternating sum over cycle counts d_3(p,q) (permutations whose
//!   cycles all have length at least 3),
//! * the same sum shape over block counts S_3(p,q) (set partitions whose
//!   blocks all have size at least 3),
//! * an explicit double sum over Stirling numbers of the second kind with
//!   half-integer binomial coefficients,
//! * the same double sum with the Stirling numbers expanded inline, so
//!   that only the four basic operations appear, and
//! * potential polynomials of e^x - 1 - x evaluated at half-integer
//!   exponents via Howard's identity.
//!
//! On top of the exact layer, [`eval`] evaluates the truncated series in
//! arbitrary-precision decimal arithmetic and compares it against exact
//! factorials, exposing the characteristic behaviour of a divergent
//! asymptotic series.

pub mod coeffs;
pub mod eval;
pub mod highprec;
pub mod kernels;
pub mod rational;
pub mod series;

pub use coeffs::{verify_all, CoeffReport, Formula};
pub use eval::{exact_factorial, optimal_truncation, stirling_approx, ApproxResult};
pub use highprec::HighPrecisionNumber;
pub use rational::Rational;
