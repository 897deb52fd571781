//! Exact rational arithmetic used throughout the crate.
//!
//! The representation is `num_rational::BigRational`, which keeps every
//! value in canonical form after each operation: the denominator is always
//! positive, gcd(|numerator|, denominator) = 1, and zero is stored as 0/1.
//! Its `Display` renders `p/q` in lowest terms and omits the denominator
//! when it is 1, which is the exact textual form the command line emits.

use num_bigint::BigInt;

pub use num_rational::BigRational as Rational;

/// The integer n as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The fraction num/den, reduced to lowest terms.
///
/// Panics if `den` is zero.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Signed, Zero};

    #[test]
    fn display_omits_unit_denominator() {
        assert_eq!(int(7).to_string(), "7");
        assert_eq!(int(-3).to_string(), "-3");
        assert_eq!(int(0).to_string(), "0");
    }

    #[test]
    fn display_reduces_to_lowest_terms() {
        assert_eq!(frac(2, 24).to_string(), "1/12");
        assert_eq!(frac(-139, 51840).to_string(), "-139/51840");
        assert_eq!(frac(6, -4).to_string(), "-3/2");
        assert_eq!(frac(8, 4).to_string(), "2");
    }

    #[test]
    fn zero_is_canonical() {
        let z = frac(0, -17);
        assert!(z.is_zero());
        assert!(z.denom().is_one());
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn sign_lives_in_the_numerator() {
        let r = frac(3, -7);
        assert!(r.numer().is_negative());
        assert!(r.denom().is_positive());
    }
}
