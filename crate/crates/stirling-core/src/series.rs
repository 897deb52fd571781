//! Truncated exponential-generating-function arithmetic over exact
//! rationals, exponential Bell polynomials, and potential polynomials with
//! rational exponent.
//!
//! A series F(x) = sum_{j >= r} a_j x^j / j! is stored as its valuation r
//! (the index of the first nonzero coefficient) together with the
//! coefficient window a_r ..= a_T, where T is the truncation order. Every
//! operation that needs coefficients beyond the stored window reports an
//! error instead of silently zero-padding: the potential-polynomial
//! identity reads Bell values B_{n+ri,i}, which live well past index n,
//! and padding would corrupt them invisibly.
//!
//! All values are immutable and freely transferable between threads.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::kernels::{binomial, binomial_rational, factorial};
use crate::rational::Rational;

/// Errors from series construction and arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesError {
    /// The coefficient at the declared valuation is zero.
    LeadingCoefficientZero,
    /// A series must carry at least one coefficient.
    EmptyCoefficients,
    /// Potential polynomials are defined for series vanishing at 0.
    ZeroValuation,
    /// Binary operations require both operands truncated at the same order.
    TruncationMismatch { left: usize, right: usize },
    /// The operation needs a coefficient past the stored window.
    TruncationTooShort { needed: usize, available: usize },
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::LeadingCoefficientZero => {
                write!(f, "leading coefficient at the valuation must be nonzero")
            }
            SeriesError::EmptyCoefficients => {
                write!(f, "series must carry at least one coefficient")
            }
            SeriesError::ZeroValuation => {
                write!(f, "potential polynomials need a series with valuation >= 1")
            }
            SeriesError::TruncationMismatch { left, right } => write!(
                f,
                "truncation orders differ: left operand ends at {left}, right at {right}"
            ),
            SeriesError::TruncationTooShort { needed, available } => write!(
                f,
                "operation needs coefficients up to order {needed}, series ends at {available}"
            ),
        }
    }
}

impl std::error::Error for SeriesError {}

pub type SeriesResult<T> = Result<T, SeriesError>;

/// A truncated exponential generating function with exact rational
/// coefficients.
///
/// Invariants: the coefficient list is nonempty and its first entry (the
/// coefficient at the valuation) is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalPowerSeries {
    valuation: usize,
    coeffs: Vec<Rational>,
}

impl FormalPowerSeries {
    /// A series from its valuation and the EGF coefficients
    /// a_valuation ..= a_truncation.
    pub fn new(valuation: usize, coeffs: Vec<Rational>) -> SeriesResult<Self> {
        if coeffs.is_empty() {
            return Err(SeriesError::EmptyCoefficients);
        }
        if coeffs[0].is_zero() {
            return Err(SeriesError::LeadingCoefficientZero);
        }
        Ok(FormalPowerSeries { valuation, coeffs })
    }

    /// The constant series 1, truncated at `order`.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[0] = Rational::one();
        FormalPowerSeries {
            valuation: 0,
            coeffs,
        }
    }

    /// e^x - 1 - x truncated at `order`: valuation 2, every stored EGF
    /// coefficient equal to 1.
    ///
    /// Panics if `order` < 2, where the leading coefficient would not fit
    /// in the window.
    pub fn exp_minus_one_minus_x(order: usize) -> Self {
        assert!(order >= 2, "e^x - 1 - x starts at x^2; order must be >= 2");
        FormalPowerSeries {
            valuation: 2,
            coeffs: vec![Rational::one(); order - 1],
        }
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> usize {
        self.valuation
    }

    /// Highest index with a stored coefficient.
    pub fn truncation_order(&self) -> usize {
        self.valuation + self.coeffs.len() - 1
    }

    /// The EGF coefficient a_n: zero below the valuation.
    ///
    /// Panics if `n` exceeds the truncation order; callers validate their
    /// coefficient budget before reading.
    pub fn coeff(&self, n: usize) -> Rational {
        if n < self.valuation {
            return Rational::zero();
        }
        assert!(
            n <= self.truncation_order(),
            "coefficient {n} past truncation order {}",
            self.truncation_order()
        );
        self.coeffs[n - self.valuation].clone()
    }
}

/// The EGF product h = f*g via the binomial convolution
/// h_n = sum_m C(n,m) f_m g_{n-m}, truncated at the common order.
///
/// Both operands must be truncated at the same order; within that window
/// every returned coefficient is exact because each operand contributes
/// nothing below its valuation.
pub fn series_multiply(
    f: &FormalPowerSeries,
    g: &FormalPowerSeries,
) -> SeriesResult<FormalPowerSeries> {
    if f.truncation_order() != g.truncation_order() {
        return Err(SeriesError::TruncationMismatch {
            left: f.truncation_order(),
            right: g.truncation_order(),
        });
    }
    let order = f.truncation_order();
    let valuation = f.valuation + g.valuation;
    if valuation > order {
        return Err(SeriesError::TruncationTooShort {
            needed: valuation,
            available: order,
        });
    }
    let mut coeffs = vec![Rational::zero(); order - valuation + 1];
    for n in valuation..=order {
        let mut acc = Rational::zero();
        let hi = (n - g.valuation).min(f.truncation_order());
        for m in f.valuation..=hi {
            let fm = f.coeff(m);
            if fm.is_zero() {
                continue;
            }
            let gm = g.coeff(n - m);
            if gm.is_zero() {
                continue;
            }
            acc += Rational::from_integer(binomial(n, m)) * fm * gm;
        }
        coeffs[n - valuation] = acc;
    }
    FormalPowerSeries::new(valuation, coeffs)
}

/// The exponential Bell value B_{n,i} of the series, defined by
/// (F(x))^i = i! sum_n B_{n,i} x^n / n!.
///
/// Computed by repeated [`series_multiply`] followed by division by i!.
/// B_{n,i} vanishes whenever n < i * valuation, since (F)^i starts at
/// x^{i*valuation}.
pub fn bell_polynomial(f: &FormalPowerSeries, n: usize, i: usize) -> SeriesResult<Rational> {
    if n > f.truncation_order() {
        return Err(SeriesError::TruncationTooShort {
            needed: n,
            available: f.truncation_order(),
        });
    }
    if i == 0 {
        // (F)^0 = 1: only B_{0,0} survives.
        return Ok(if n == 0 {
            Rational::one()
        } else {
            Rational::zero()
        });
    }
    if n < i * f.valuation {
        return Ok(Rational::zero());
    }
    let mut power = f.clone();
    for _ in 1..i {
        power = series_multiply(&power, f)?;
    }
    Ok(power.coeff(n) / Rational::from_integer(factorial(i)))
}

/// The Bell value B_{n,i}(0, 1, 1, ...) of e^x - 1 - x, from the closed
/// form (n!/i!) sum_{j=0}^{i} C(i,j) (-1)^{i-j} j! S(n-i+j, j)/(n-i+j)!,
/// where terms with n-i+j < 0 are zero.
///
/// Independent of the series-product route in [`bell_polynomial`]; the two
/// must agree for the same (n, i).
pub fn bell_zero_ones(n: usize, i: usize) -> Rational {
    let mut sum = Rational::zero();
    for j in 0..=i {
        if n + j < i {
            continue;
        }
        let p = n + j - i;
        let term = Rational::new(
            binomial(i, j) * factorial(j) * crate::kernels::stirling2(p, j),
            factorial(p),
        );
        if (i - j).is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum * Rational::new(factorial(n), factorial(i))
}

/// A potential-polynomial evaluation: the EGF coefficient value
/// F_n^{(z)} of (a_r x^r / r! / F(x))^z at index n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PotentialValue {
    pub n: usize,
    pub z: Rational,
    pub value: Rational,
}

/// F_n^{(z)} through Howard's identity,
///
/// ```text
/// F_n^{(z)} = sum_{i=0}^{n} (-1)^i C(z+i-1, i) C(z+n, n-i)
///             (r!/a_r)^i (n! i! / (n+ri)!) B_{n+ri, i},
/// ```
///
/// which is valid for arbitrary rational exponent z. Requires valuation
/// r >= 1 and coefficients stored up to order n + r*n (the largest Bell
/// index the sum reads); a shorter window is an error, never zero-padded.
pub fn potential_polynomial_howard(
    f: &FormalPowerSeries,
    n: usize,
    z: &Rational,
) -> SeriesResult<Rational> {
    let r = f.valuation();
    if r == 0 {
        return Err(SeriesError::ZeroValuation);
    }
    let needed = n + r * n;
    if needed > f.truncation_order() {
        return Err(SeriesError::TruncationTooShort {
            needed,
            available: f.truncation_order(),
        });
    }
    let n_fact = Rational::from_integer(factorial(n));
    let scale = Rational::from_integer(factorial(r)) / f.coeff(r);
    let mut scale_power = Rational::one();
    let mut f_power: Option<FormalPowerSeries> = None;
    let mut sum = Rational::zero();
    for i in 0..=n {
        // B_{n+ri, i}, sharing the running power (F)^i across iterations.
        let bell = if i == 0 {
            if n == 0 {
                Rational::one()
            } else {
                Rational::zero()
            }
        } else {
            let power = match f_power.take() {
                None => f.clone(),
                Some(p) => series_multiply(&p, f)?,
            };
            let value = power.coeff(n + r * i) / Rational::from_integer(factorial(i));
            f_power = Some(power);
            value
        };
        if !bell.is_zero() {
            let zi = z + Rational::from_integer(BigInt::from(i as i64 - 1));
            let zn = z + Rational::from_integer(BigInt::from(n));
            let term = binomial_rational(&zi, i)
                * binomial_rational(&zn, n - i)
                * &scale_power
                * &n_fact
                * Rational::from_integer(factorial(i))
                / Rational::from_integer(factorial(n + r * i))
                * bell;
            if i % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        scale_power *= &scale;
    }
    Ok(sum)
}

/// F_n^{(z)} for nonnegative integer z straight from the definition:
/// divide out the leading monomial, invert the resulting unit series by a
/// triangular solve, raise to the z-th power by ordinary convolution, and
/// read off the coefficient.
///
/// Serves as an oracle for [`potential_polynomial_howard`] at integer
/// exponents; the two share no code path beyond the series type.
pub fn potential_polynomial_direct(
    f: &FormalPowerSeries,
    n: usize,
    z: usize,
) -> SeriesResult<Rational> {
    let r = f.valuation();
    let window = f.truncation_order() - r;
    if n > window {
        return Err(SeriesError::TruncationTooShort {
            needed: r + n,
            available: f.truncation_order(),
        });
    }
    // Ordinary coefficients of the unit series v with F = (a_r x^r/r!) v:
    // v_t = a_{r+t} r! / (a_r (r+t)!), so v_0 = 1.
    let lead = f.coeff(r);
    let r_fact = Rational::from_integer(factorial(r));
    let v: Vec<Rational> = (0..=window)
        .map(|t| f.coeff(r + t) * &r_fact / (&lead * Rational::from_integer(factorial(r + t))))
        .collect();
    // w = 1/v by the triangular solve w_t = -sum_{m=1}^{t} v_m w_{t-m}.
    let mut w = vec![Rational::zero(); window + 1];
    w[0] = Rational::one();
    for t in 1..=window {
        let mut acc = Rational::zero();
        for m in 1..=t {
            if !v[m].is_zero() {
                acc += &v[m] * &w[t - m];
            }
        }
        w[t] = -acc;
    }
    // u = w^z by repeated ordinary convolution; z = 0 gives the series 1.
    let mut u = vec![Rational::zero(); window + 1];
    u[0] = Rational::one();
    for _ in 0..z {
        let mut next = vec![Rational::zero(); window + 1];
        for (t, slot) in next.iter_mut().enumerate() {
            let mut acc = Rational::zero();
            for m in 0..=t {
                if !u[m].is_zero() && !w[t - m].is_zero() {
                    acc += &u[m] * &w[t - m];
                }
            }
            *slot = acc;
        }
        u = next;
    }
    Ok(&u[n] * Rational::from_integer(factorial(n)))
}

/// G_n^{(z)}: the potential polynomial of e^x - 1 - x, i.e. the EGF
/// coefficient of ((x^2/2) / (e^x - 1 - x))^z at index n.
///
/// Builds its own series with the full coefficient budget, so it cannot
/// fail.
pub fn g_potential(n: usize, z: &Rational) -> Rational {
    let order = (3 * n).max(2);
    let f = FormalPowerSeries::exp_minus_one_minus_x(order);
    potential_polynomial_howard(&f, n, z).expect("window sized to the full budget")
}

/// The potential values F_0^{(z)} ..= F_{n_max}^{(z)} of a series.
pub fn potential_table(
    f: &FormalPowerSeries,
    n_max: usize,
    z: &Rational,
) -> SeriesResult<Vec<PotentialValue>> {
    (0..=n_max)
        .map(|n| {
            Ok(PotentialValue {
                n,
                z: z.clone(),
                value: potential_polynomial_howard(f, n, z)?,
            })
        })
        .collect()
}
