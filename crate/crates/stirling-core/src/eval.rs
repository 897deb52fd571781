//! Numerical evaluation of the truncated asymptotic series against exact
//! factorials.
//!
//! The truncated sum itself is accumulated in exact rational arithmetic;
//! only the transcendental prefactor n^n e^{-n} sqrt(2 pi n) and the final
//! comparison against n! are carried out in high-precision decimals, with
//! ten guard digits beyond the requested output precision. That keeps the
//! reported relative errors honest: they measure the series truncation,
//! not artifacts of the evaluation.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::coeffs::coeff_recurrence;
use crate::highprec::HighPrecisionNumber;
use crate::rational::Rational;

/// n! as an exact integer.
pub fn exact_factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=n {
        acc *= j;
    }
    acc
}

/// Evaluation failures that the caller can act on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    /// A requested series term is so small relative to the accumulated sum
    /// that it cannot influence the rounded result: its entire contribution
    /// falls below one unit in the last significant digit. Asking for that
    /// term at this precision is a contradiction, so it is reported rather
    /// than silently absorbed.
    PrecisionTooLow { term_index: usize, precision: usize },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::PrecisionTooLow {
                term_index,
                precision,
            } => write!(
                f,
                "term {term_index} of the series is below the resolution of \
                 {precision} significant digits; raise the precision or \
                 request fewer terms"
            ),
        }
    }
}

impl std::error::Error for EvalError {}

/// One evaluation of the truncated series at a specific n.
#[derive(Debug, Clone)]
pub struct ApproxResult {
    pub n: u64,
    /// Number of series terms summed (coefficients 0 through terms_used-1).
    pub terms_used: usize,
    /// The approximation n^n e^{-n} sqrt(2 pi n) * (truncated sum).
    pub approx: HighPrecisionNumber,
    /// n!, exactly.
    pub exact: BigInt,
    /// |approx - n!| / n!.
    pub rel_error: HighPrecisionNumber,
    /// Absolute contribution of each term, prefactor included, so the
    /// decay (or eventual growth) of the series is visible directly.
    pub term_magnitudes: Vec<HighPrecisionNumber>,
}

/// A sweep over truncation lengths m = 1..=k_max at fixed n.
#[derive(Debug, Clone)]
pub struct TruncationScan {
    pub n: u64,
    /// The truncation length with the smallest relative error; ties go to
    /// the shortest.
    pub m_star: usize,
    pub best_error: HighPrecisionNumber,
    /// rel_errors[i] is the relative error using i+1 terms.
    pub rel_errors: Vec<HighPrecisionNumber>,
    /// Prefactor-scaled magnitude of each term, index matching rel_errors.
    pub term_magnitudes: Vec<HighPrecisionNumber>,
}

/// n^n e^{-n} sqrt(2 pi n) at `digits` significant digits.
fn prefactor(n: u64, digits: usize) -> HighPrecisionNumber {
    let n_to_n = HighPrecisionNumber::from_bigint(&BigInt::from(n).pow(n as u32), digits);
    let two_n = HighPrecisionNumber::from_bigint(&(BigInt::from(n) * 2), digits);
    let root = HighPrecisionNumber::pi(digits).mul(&two_n).sqrt();
    let e_to_n = HighPrecisionNumber::e(digits).powi(n);
    n_to_n.mul(&root).div(&e_to_n)
}

/// The exact rational series terms a_k / n^k for k = 0..terms.
fn series_terms(n: u64, terms: usize) -> Vec<Rational> {
    let n_rat = Rational::from_integer(BigInt::from(n));
    let mut power = Rational::one();
    let mut out = Vec::with_capacity(terms);
    for k in 0..terms {
        out.push(coeff_recurrence(k) / &power);
        power *= &n_rat;
    }
    out
}

/// Approximate n! with the first `terms` series terms at `precision`
/// significant digits.
///
/// Requires n >= 1, terms >= 1, and precision >= 10. Fails with
/// [`EvalError::PrecisionTooLow`] if some requested term is too small to
/// register at the requested precision; the smallness test is performed in
/// exact rational arithmetic, so it does not depend on the working
/// precision of the decimals.
pub fn stirling_approx(n: u64, terms: usize, precision: usize) -> Result<ApproxResult, EvalError> {
    assert!(n >= 1, "n must be at least 1");
    assert!(terms >= 1, "at least one series term is required");
    assert!(
        precision >= 10,
        "precision below 10 digits is not supported"
    );
    let working = precision + 10;

    let term_values = series_terms(n, terms);
    let mut sum = Rational::zero();
    for t in &term_values {
        sum += t;
    }
    let resolution = Rational::from_integer(BigInt::from(10).pow(precision as u32 + 1));
    for (k, t) in term_values.iter().enumerate().skip(1) {
        if !t.is_zero() && t.abs() * &resolution < sum.abs() {
            return Err(EvalError::PrecisionTooLow {
                term_index: k,
                precision,
            });
        }
    }

    let pref = prefactor(n, working);
    let approx = pref.mul(&HighPrecisionNumber::from_rational(&sum, working));
    let exact = exact_factorial(n);
    let exact_hp = HighPrecisionNumber::from_bigint(&exact, working);
    let rel_error = approx.sub(&exact_hp).abs().div(&exact_hp);
    let term_magnitudes = term_values
        .iter()
        .map(|t| {
            pref.mul(&HighPrecisionNumber::from_rational(&t.abs(), working))
                .round_to(precision)
        })
        .collect();

    Ok(ApproxResult {
        n,
        terms_used: terms,
        approx: approx.round_to(precision),
        exact,
        rel_error: rel_error.round_to(precision),
        term_magnitudes,
    })
}

/// Sweep truncation lengths 1..=k_max at fixed n and report which one
/// approximates n! best.
///
/// Requires n >= 1, k_max >= 2, and precision >= 10. The scan is total: a
/// term too small to matter simply stops improving the error instead of
/// failing, since seeing the plateau is the point of the sweep.
pub fn optimal_truncation(n: u64, k_max: usize, precision: usize) -> TruncationScan {
    assert!(n >= 1, "n must be at least 1");
    assert!(k_max >= 2, "a scan needs at least two truncation lengths");
    assert!(
        precision >= 10,
        "precision below 10 digits is not supported"
    );
    let working = precision + 10;

    let pref = prefactor(n, working);
    let exact_hp = HighPrecisionNumber::from_bigint(&exact_factorial(n), working);
    let n_rat = Rational::from_integer(BigInt::from(n));

    let mut sum = Rational::zero();
    let mut power = Rational::one();
    let mut rel_errors_full = Vec::with_capacity(k_max);
    let mut term_magnitudes = Vec::with_capacity(k_max);
    for k in 0..k_max {
        let term = coeff_recurrence(k) / &power;
        power *= &n_rat;
        sum += &term;
        term_magnitudes.push(
            pref.mul(&HighPrecisionNumber::from_rational(&term.abs(), working))
                .round_to(precision),
        );
        let approx = pref.mul(&HighPrecisionNumber::from_rational(&sum, working));
        rel_errors_full.push(approx.sub(&exact_hp).abs().div(&exact_hp));
    }

    let mut m_star = 1;
    let mut best = rel_errors_full[0].clone();
    for (i, r) in rel_errors_full.iter().enumerate().skip(1) {
        if *r < best {
            best = r.clone();
            m_star = i + 1;
        }
    }

    TruncationScan {
        n,
        m_star,
        best_error: best.round_to(precision),
        rel_errors: rel_errors_full
            .iter()
            .map(|r| r.round_to(precision))
            .collect(),
        term_magnitudes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn factorials_are_exact() {
        assert_eq!(exact_factorial(0), BigInt::one());
        assert_eq!(exact_factorial(1), BigInt::one());
        assert_eq!(exact_factorial(10), BigInt::from(3628800u64));
        assert_eq!(
            exact_factorial(20),
            "2432902008176640000".parse::<BigInt>().unwrap()
        );
    }

    #[test]
    fn leading_term_at_n_ten() {
        let r = stirling_approx(10, 1, 30).unwrap();
        assert_eq!(r.exact, BigInt::from(3628800u64));
        assert!(r
            .approx
            .to_decimal_string()
            .starts_with("3598695.61874103592"));
        assert_eq!(r.rel_error.to_scientific(6), "8.29596e-3");
        assert_eq!(r.term_magnitudes.len(), 1);
    }

    #[test]
    fn five_terms_at_n_ten() {
        let r = stirling_approx(10, 5, 30).unwrap();
        assert_eq!(r.rel_error.to_scientific(6), "7.78608e-9");
        let bound = HighPrecisionNumber::from_rational(&frac(1, 10_000_000), 10);
        assert!(r.rel_error < bound);
        assert!(r.term_magnitudes[0]
            .to_decimal_string()
            .starts_with("3598695.6"));
        assert!(r.term_magnitudes[4]
            .to_decimal_string()
            .starts_with("0.08258002"));
    }

    #[test]
    fn single_term_at_n_one_is_the_classic_underestimate() {
        let r = stirling_approx(1, 1, 30).unwrap();
        assert!(r
            .approx
            .to_decimal_string()
            .starts_with("0.92213700889578911"));
        assert_eq!(r.rel_error.to_scientific(6), "7.78630e-2");
    }

    #[test]
    fn errors_shrink_through_five_terms_at_n_ten() {
        let mut previous: Option<HighPrecisionNumber> = None;
        for m in 1..=5 {
            let r = stirling_approx(10, m, 30).unwrap();
            if let Some(p) = &previous {
                assert!(
                    r.rel_error < *p,
                    "error failed to shrink from {} to {} terms",
                    m - 1,
                    m
                );
            }
            previous = Some(r.rel_error);
        }
    }

    #[test]
    fn raising_precision_barely_moves_the_result() {
        let coarse = stirling_approx(10, 3, 15).unwrap();
        let fine = stirling_approx(10, 3, 30).unwrap();
        let diff = coarse.approx.sub(&fine.approx).abs().div(&fine.approx);
        let bound = HighPrecisionNumber::from_rational(&frac(1, 10_000_000_000), 10);
        assert!(diff < bound);
    }

    #[test]
    fn consecutive_truncations_differ_by_one_term() {
        let four = stirling_approx(10, 4, 30).unwrap();
        let five = stirling_approx(10, 5, 30).unwrap();
        let observed = five.approx.sub(&four.approx).abs();
        let expected = &five.term_magnitudes[4];
        let rel = observed.sub(expected).abs().div(expected);
        let bound = HighPrecisionNumber::from_rational(&frac(1, 1_000_000), 10);
        assert!(rel < bound);
    }

    #[test]
    fn scan_finds_the_turnover_at_n_one() {
        let scan = optimal_truncation(1, 20, 30);
        assert_eq!(scan.m_star, 6);
        assert_eq!(scan.best_error.to_scientific(6), "2.22460e-4");
        assert_eq!(scan.rel_errors.len(), 20);
        assert_eq!(scan.term_magnitudes.len(), 20);
    }

    #[test]
    fn scan_is_monotone_at_n_one_hundred() {
        let scan = optimal_truncation(100, 12, 30);
        assert_eq!(scan.m_star, 12);
        for pair in scan.rel_errors.windows(2) {
            assert!(pair[1] < pair[0]);
        }
    }

    #[test]
    fn scan_at_n_ten_reaches_deep_accuracy() {
        let scan = optimal_truncation(10, 12, 30);
        assert_eq!(scan.m_star, 12);
        let bound = HighPrecisionNumber::from_rational(&frac(1, 10_000_000_000), 10);
        assert!(scan.best_error < bound);
    }

    #[test]
    fn drowned_terms_are_rejected() {
        let err = stirling_approx(10, 20, 10).unwrap_err();
        assert_eq!(
            err,
            EvalError::PrecisionTooLow {
                term_index: 8,
                precision: 10
            }
        );
    }
}
