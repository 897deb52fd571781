//! Arbitrary-precision decimal floating-point arithmetic with a fixed
//! number of significant digits.
//!
//! A value is mantissa * 10^exponent, the mantissa normalized to exactly
//! `digits` significant decimal digits (zero is the sole exception).
//! Every operation that cannot be exact rounds once, half to even, at the
//! configured digit count; there is no hidden extra precision and no
//! platform-dependent behaviour. Comparisons and equality are by value,
//! not by representation, so 1.0 at 20 digits equals 1.0 at 40.
//!
//! The constants pi and e are produced from scratch at any requested
//! precision: pi by Machin's arctangent identity evaluated in scaled
//! integers, e by the factorial series.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// A decimal floating-point number carrying `digits` significant digits.
#[derive(Clone, Debug)]
pub struct HighPrecisionNumber {
    mantissa: BigInt,
    exponent: i64,
    digits: usize,
}

fn ten_pow(k: usize) -> BigInt {
    BigInt::from(10).pow(k as u32)
}

fn digit_count(m: &BigInt) -> usize {
    m.magnitude().to_str_radix(10).len()
}

/// floor(n / d) corrected to round half to even; both arguments positive.
fn div_round_half_even(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_rem(d);
    let twice: BigInt = &r * 2;
    match twice.cmp(d) {
        Ordering::Less => q,
        Ordering::Greater => q + 1,
        Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1
            }
        }
    }
}

impl HighPrecisionNumber {
    /// Zero at the given precision.
    pub fn zero(digits: usize) -> Self {
        HighPrecisionNumber {
            mantissa: BigInt::zero(),
            exponent: 0,
            digits,
        }
    }

    /// One at the given precision.
    pub fn one(digits: usize) -> Self {
        Self::normalize(BigInt::one(), 0, digits)
    }

    /// mantissa * 10^exponent rounded half-even to `digits` significant
    /// digits, the single rounding site every operation funnels through.
    fn normalize(mantissa: BigInt, exponent: i64, digits: usize) -> Self {
        assert!(digits >= 1, "precision must be at least one digit");
        if mantissa.is_zero() {
            return Self::zero(digits);
        }
        let negative = mantissa.is_negative();
        let mut mag = mantissa.abs();
        let mut exp = exponent;
        let mut have = digit_count(&mag);
        if have > digits {
            let shift = have - digits;
            mag = div_round_half_even(&mag, &ten_pow(shift));
            exp += shift as i64;
            // Rounding 999..9 up gains a digit; shed it.
            if digit_count(&mag) > digits {
                mag /= 10;
                exp += 1;
            }
        } else if have < digits {
            let shift = digits - have;
            mag *= ten_pow(shift);
            exp -= shift as i64;
        }
        have = digit_count(&mag);
        debug_assert_eq!(have, digits);
        HighPrecisionNumber {
            mantissa: if negative { -mag } else { mag },
            exponent: exp,
            digits,
        }
    }

    /// The rational p/q rounded once, half to even, to `digits` digits.
    pub fn from_rational(value: &Rational, digits: usize) -> Self {
        assert!(digits >= 1);
        if value.is_zero() {
            return Self::zero(digits);
        }
        let negative = value.is_negative();
        let n = value.numer().abs();
        let d = value.denom().clone();
        // One exact rounding: pick the scale that lands the quotient on
        // `digits` digits, correcting the estimate if it is off by one.
        let mut scale = digits as i64 - (digit_count(&n) as i64 - digit_count(&d) as i64);
        loop {
            let q = if scale >= 0 {
                div_round_half_even(&(&n * ten_pow(scale as usize)), &d)
            } else {
                div_round_half_even(&n, &(&d * ten_pow(-scale as usize)))
            };
            let have = digit_count(&q);
            if have == digits {
                let mag = if negative { -q } else { q };
                return HighPrecisionNumber {
                    mantissa: mag,
                    exponent: -scale,
                    digits,
                };
            }
            // Cheap estimate missed (or rounding carried); adjust once
            // per loop; convergence is immediate in practice.
            scale += digits as i64 - have as i64;
        }
    }

    /// The integer rounded to `digits` digits.
    pub fn from_bigint(value: &BigInt, digits: usize) -> Self {
        Self::normalize(value.clone(), 0, digits)
    }

    /// The exact rational this value denotes.
    pub fn to_rational(&self) -> Rational {
        if self.exponent >= 0 {
            Rational::from_integer(&self.mantissa * ten_pow(self.exponent as usize))
        } else {
            Rational::new(self.mantissa.clone(), ten_pow(-self.exponent as usize))
        }
    }

    /// Working precision in significant decimal digits.
    pub fn precision(&self) -> usize {
        self.digits
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    /// The same value rounded to a different digit count.
    pub fn round_to(&self, digits: usize) -> Self {
        Self::normalize(self.mantissa.clone(), self.exponent, digits)
    }

    pub fn abs(&self) -> Self {
        HighPrecisionNumber {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
            digits: self.digits,
        }
    }

    pub fn neg(&self) -> Self {
        HighPrecisionNumber {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
            digits: self.digits,
        }
    }

    fn common_digits(&self, other: &Self) -> usize {
        self.digits.max(other.digits)
    }

    pub fn add(&self, other: &Self) -> Self {
        let digits = self.common_digits(other);
        if self.is_zero() {
            return other.round_to(digits);
        }
        if other.is_zero() {
            return self.round_to(digits);
        }
        // Exact alignment; the single rounding happens in normalize.
        let (lo, hi) = if self.exponent <= other.exponent {
            (self, other)
        } else {
            (other, self)
        };
        let shift = (hi.exponent - lo.exponent) as usize;
        let sum = &hi.mantissa * ten_pow(shift) + &lo.mantissa;
        Self::normalize(sum, lo.exponent, digits)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let digits = self.common_digits(other);
        Self::normalize(
            &self.mantissa * &other.mantissa,
            self.exponent + other.exponent,
            digits,
        )
    }

    /// Division, rounded half-even at the configured precision.
    ///
    /// Panics on a zero divisor.
    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero");
        let digits = self.common_digits(other);
        if self.is_zero() {
            return Self::zero(digits);
        }
        let negative = self.is_negative() != other.is_negative();
        let guard = digits + 3;
        let q = div_round_half_even(
            &(self.mantissa.abs() * ten_pow(guard)),
            &other.mantissa.abs(),
        );
        let exp = self.exponent - other.exponent - guard as i64;
        Self::normalize(if negative { -q } else { q }, exp, digits)
    }

    /// Square root, rounded half-even at the configured precision.
    ///
    /// Panics on negative input.
    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "square root of a negative value");
        if self.is_zero() {
            return self.clone();
        }
        // Shift to an even exponent, then grab 2*(digits+2) guard digits
        // so the integer square root carries enough correct digits.
        let guard = self.digits + 2;
        let mut mag = self.mantissa.clone();
        let mut exp = self.exponent;
        if exp.rem_euclid(2) == 1 {
            mag *= 10;
            exp -= 1;
        }
        let scaled = &mag * ten_pow(2 * guard);
        let root = scaled.sqrt();
        // Floor square root, bumped when the true root passes the halfway
        // mark: (s + 1/2)^2 <= M  <=>  s^2 + s < M (never an exact tie).
        let rounded = if &root * &root + &root < scaled {
            root + 1
        } else {
            root
        };
        Self::normalize(rounded, exp / 2 - guard as i64, self.digits)
    }

    /// Integer power by repeated squaring; each multiply rounds once.
    pub fn powi(&self, n: u64) -> Self {
        let mut result = Self::one(self.digits);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Value comparison, exact, independent of digit counts.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match (self.mantissa.sign(), other.mantissa.sign()) {
            (num_bigint::Sign::Minus, num_bigint::Sign::NoSign)
            | (num_bigint::Sign::Minus, num_bigint::Sign::Plus)
            | (num_bigint::Sign::NoSign, num_bigint::Sign::Plus) => return Ordering::Less,
            (num_bigint::Sign::Plus, num_bigint::Sign::NoSign)
            | (num_bigint::Sign::Plus, num_bigint::Sign::Minus)
            | (num_bigint::Sign::NoSign, num_bigint::Sign::Minus) => return Ordering::Greater,
            (num_bigint::Sign::NoSign, num_bigint::Sign::NoSign) => return Ordering::Equal,
            _ => {}
        }
        if self.exponent >= other.exponent {
            let shift = (self.exponent - other.exponent) as usize;
            (&self.mantissa * ten_pow(shift)).cmp(&other.mantissa)
        } else {
            let shift = (other.exponent - self.exponent) as usize;
            self.mantissa.cmp(&(&other.mantissa * ten_pow(shift)))
        }
    }

    /// pi at the given precision, via Machin's identity
    /// pi = 16 arctan(1/5) - 4 arctan(1/239) in scaled-integer arithmetic.
    pub fn pi(digits: usize) -> Self {
        let guard = digits + 10;
        let scale = ten_pow(guard);
        let value = arctan_inverse_scaled(5, &scale) * 16 - arctan_inverse_scaled(239, &scale) * 4;
        Self::normalize(value, -(guard as i64), digits)
    }

    /// e at the given precision, from the series sum 1/j!.
    pub fn e(digits: usize) -> Self {
        let guard = digits + 10;
        let mut term = ten_pow(guard);
        let mut sum = term.clone();
        let mut j = 1u64;
        while !term.is_zero() {
            term /= j;
            sum += &term;
            j += 1;
        }
        Self::normalize(sum, -(guard as i64), digits)
    }

    /// Fixed-width scientific notation with `sig` significant digits,
    /// e.g. `7.78608e-9`. No trailing-zero trimming: the width is the
    /// point.
    pub fn to_scientific(&self, sig: usize) -> String {
        assert!(sig >= 1);
        if self.is_zero() {
            return "0".to_string();
        }
        let rounded = self.round_to(sig);
        let s = rounded.mantissa.abs().to_str_radix(10);
        let e10 = rounded.exponent + sig as i64 - 1;
        let sign = if rounded.is_negative() { "-" } else { "" };
        if sig == 1 {
            format!("{sign}{s}e{e10}")
        } else {
            format!("{sign}{}.{}e{e10}", &s[..1], &s[1..])
        }
    }

    /// Human-oriented decimal form at the value's own precision:
    /// positional when the leading digit lies within a readable range,
    /// scientific otherwise, trailing zeros trimmed either way.
    pub fn to_decimal_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let s = self.mantissa.abs().to_str_radix(10);
        let e10 = self.exponent + self.digits as i64 - 1;
        let sign = if self.is_negative() { "-" } else { "" };
        if e10 >= -4 && e10 < self.digits as i64 {
            if e10 >= 0 {
                let split = (e10 + 1) as usize;
                let int_part = &s[..split];
                let frac = s[split..].trim_end_matches('0');
                if frac.is_empty() {
                    format!("{sign}{int_part}")
                } else {
                    format!("{sign}{int_part}.{frac}")
                }
            } else {
                let zeros = "0".repeat((-e10 - 1) as usize);
                let frac = s.trim_end_matches('0');
                format!("{sign}0.{zeros}{frac}")
            }
        } else {
            let frac = s[1..].trim_end_matches('0');
            if frac.is_empty() {
                format!("{sign}{}e{e10}", &s[..1])
            } else {
                format!("{sign}{}.{frac}e{e10}", &s[..1])
            }
        }
    }
}

/// round(scale * arctan(1/x)) up to a few units in the last place, by the
/// alternating series arctan(1/x) = sum_j (-1)^j / ((2j+1) x^(2j+1)) in
/// scaled integers.
fn arctan_inverse_scaled(x: u64, scale: &BigInt) -> BigInt {
    let xx = BigInt::from(x) * x;
    let mut power = scale / x;
    let mut sum = BigInt::zero();
    let mut j = 0u64;
    while !power.is_zero() {
        let term = &power / (2 * j + 1);
        if j.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power = &power / &xx;
        j += 1;
    }
    sum
}

impl PartialEq for HighPrecisionNumber {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl Eq for HighPrecisionNumber {}

impl PartialOrd for HighPrecisionNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HighPrecisionNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

impl fmt::Display for HighPrecisionNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

/// A rational rendered as a decimal with `sig` significant digits,
/// rounded half to even.
pub fn decimal_of_rational(value: &Rational, sig: usize) -> String {
    HighPrecisionNumber::from_rational(value, sig).to_decimal_string()
}
