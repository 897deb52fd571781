//! Six independent routes to the coefficients a_k of the asymptotic
//! expansion n! ~ n^n e^{-n} sqrt(2 pi n) sum_k a_k / n^k, and their exact
//! cross-verification.
//!
//! The routes deliberately share nothing with one another beyond the
//! public counting kernels:
//!
//! * `recurrence` iterates a quadratic recurrence for an auxiliary
//!   sequence b_m and uses no tables at all,
//! * `comtet` sums over the cycle counts d_3(p,q),
//! * `brassesco_mendez` sums over the block counts S_3(p,q),
//! * `theorem1` is a double sum over Stirling numbers of the second kind
//!   with half-integer binomials,
//! * `corollary` is the same double sum with the Stirling numbers
//!   expanded into their alternating inner sum, so only the four basic
//!   operations appear, and
//! * `potential` evaluates a potential polynomial of e^x - 1 - x at a
//!   half-integer exponent through series products.
//!
//! A bug in any single ingredient therefore surfaces as a disagreement
//! between otherwise unrelated computations, which is what
//! [`verify_all`] checks, exactly and bit for bit.

use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use crate::kernels::{
    binomial, binomial_rational, double_factorial, factorial, Kernels, StandardKernels,
};
use crate::rational::Rational;
use crate::series::g_potential;

/// The six coefficient formulas, named as the command line spells them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Recurrence,
    Comtet,
    BrassescoMendez,
    Theorem1,
    Corollary,
    Potential,
}

impl Formula {
    pub const ALL: [Formula; 6] = [
        Formula::Recurrence,
        Formula::Comtet,
        Formula::BrassescoMendez,
        Formula::Theorem1,
        Formula::Corollary,
        Formula::Potential,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Formula::Recurrence => "recurrence",
            Formula::Comtet => "comtet",
            Formula::BrassescoMendez => "brassesco_mendez",
            Formula::Theorem1 => "theorem1",
            Formula::Corollary => "corollary",
            Formula::Potential => "potential",
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

// The b_m sequence is shared by every recurrence evaluation; rows are only
// ever appended, so concurrent readers are consistent.
static B_SEQUENCE: Lazy<Mutex<Vec<Rational>>> =
    Lazy::new(|| Mutex::new(vec![Rational::one(), Rational::one()]));

/// b_0 ..= b_{up_to} of the auxiliary sequence defined by b_0 = b_1 = 1 and
/// b_m = (b_{m-1} - sum_{j=2}^{m-1} j b_j b_{m-j+1}) / (m+1),
/// where the sum is empty for m <= 2.
fn b_values(up_to: usize) -> Vec<Rational> {
    let mut table = B_SEQUENCE.lock().unwrap();
    while table.len() <= up_to {
        let m = table.len();
        let mut acc = table[m - 1].clone();
        for j in 2..m {
            acc -= Rational::from_integer(BigInt::from(j)) * &table[j] * &table[m - j + 1];
        }
        let next = acc / Rational::from_integer(BigInt::from(m as i64 + 1));
        table.push(next);
    }
    table[..=up_to].to_vec()
}

/// a_k from the recurrence route: a_k = (2k+1)!! b_{2k+1}.
pub fn coeff_recurrence(k: usize) -> Rational {
    let b = b_values(2 * k + 1);
    Rational::from_integer(double_factorial(2 * k + 1)) * &b[2 * k + 1]
}

/// a_k as the alternating sum over cycle counts,
/// sum_{j=0}^{2k} (-1)^j d_3(2k+2j, j) / (2^{k+j} (k+j)!).
pub fn coeff_comtet(k: usize) -> Rational {
    coeff_comtet_with(k, &StandardKernels)
}

/// [`coeff_comtet`] reading d_3 through the given kernel view.
pub fn coeff_comtet_with(k: usize, kernels: &dyn Kernels) -> Rational {
    alternating_kernel_sum(k, &|p, q| kernels.assoc_stirling1(p, q))
}

/// a_k as the alternating sum over block counts,
/// sum_{j=0}^{2k} (-1)^j S_3(2k+2j, j) / (2^{k+j} (k+j)!).
pub fn coeff_brassesco_mendez(k: usize) -> Rational {
    coeff_brassesco_mendez_with(k, &StandardKernels)
}

/// [`coeff_brassesco_mendez`] reading S_3 through the given kernel view.
pub fn coeff_brassesco_mendez_with(k: usize, kernels: &dyn Kernels) -> Rational {
    alternating_kernel_sum(k, &|p, q| kernels.assoc_stirling2(p, q))
}

/// The shared shape of the two alternating sums: only the counting kernel
/// differs between them.
fn alternating_kernel_sum(k: usize, table: &dyn Fn(usize, usize) -> BigInt) -> Rational {
    let mut sum = Rational::zero();
    for j in 0..=2 * k {
        let count = table(2 * k + 2 * j, j);
        if count.is_zero() {
            continue;
        }
        let den = BigInt::from(2).pow((k + j) as u32) * factorial(k + j);
        let term = Rational::new(count, den);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// a_k from the explicit double sum over Stirling numbers of the second
/// kind,
///
/// ```text
/// a_k = (2k)!/(2^k k!) sum_{i=0}^{2k} C(k+i-1/2, i) C(3k+1/2, 2k-i) 2^i
///       sum_{j=0}^{i} C(i,j) (-1)^j j! S(2k+i+j, j) / (2k+i+j)!
/// ```
pub fn coeff_theorem1(k: usize) -> Rational {
    coeff_theorem1_with(k, &StandardKernels)
}

/// [`coeff_theorem1`] reading S through the given kernel view.
pub fn coeff_theorem1_with(k: usize, kernels: &dyn Kernels) -> Rational {
    let mut sum = Rational::zero();
    for i in 0..=2 * k {
        let mut inner = Rational::zero();
        for j in 0..=i {
            let s = kernels.stirling2(2 * k + i + j, j);
            if s.is_zero() {
                continue;
            }
            let term = Rational::new(binomial(i, j) * factorial(j) * s, factorial(2 * k + i + j));
            if j % 2 == 0 {
                inner += term;
            } else {
                inner -= term;
            }
        }
        if inner.is_zero() {
            continue;
        }
        let first = binomial_rational(&half_integer(2 * (k + i) as i64 - 1), i);
        let second = binomial_rational(&half_integer(6 * k as i64 + 1), 2 * k - i);
        sum += first * second * Rational::from_integer(BigInt::from(2).pow(i as u32)) * inner;
    }
    sum * Rational::new(
        factorial(2 * k),
        BigInt::from(2).pow(k as u32) * factorial(k),
    )
}

/// a_k with the same outer structure as [`coeff_theorem1`] but with the
/// Stirling numbers expanded inline,
///
/// ```text
/// j! S(2k+i+j, j) = sum_{l=0}^{j} (-1)^l C(j,l) (j-l)^{2k+i+j},
/// ```
///
/// so that the whole computation uses nothing beyond addition,
/// subtraction, multiplication and division on exact integers and
/// rationals. No Stirling table is consulted.
pub fn coeff_corollary(k: usize) -> Rational {
    let mut sum = Rational::zero();
    for i in 0..=2 * k {
        let mut inner = Rational::zero();
        for j in 0..=i {
            let mut expanded = BigInt::zero();
            for l in 0..=j {
                let power = BigInt::from(j - l).pow((2 * k + i + j) as u32);
                if l % 2 == 0 {
                    expanded += binomial(j, l) * power;
                } else {
                    expanded -= binomial(j, l) * power;
                }
            }
            if expanded.is_zero() {
                continue;
            }
            let term = Rational::new(binomial(i, j) * expanded, factorial(2 * k + i + j));
            if j % 2 == 0 {
                inner += term;
            } else {
                inner -= term;
            }
        }
        if inner.is_zero() {
            continue;
        }
        let first = binomial_rational(&half_integer(2 * (k + i) as i64 - 1), i);
        let second = binomial_rational(&half_integer(6 * k as i64 + 1), 2 * k - i);
        sum += first * second * Rational::from_integer(BigInt::from(2).pow(i as u32)) * inner;
    }
    sum * Rational::new(
        factorial(2 * k),
        BigInt::from(2).pow(k as u32) * factorial(k),
    )
}

/// The rational odd/2.
fn half_integer(odd: i64) -> Rational {
    Rational::new(BigInt::from(odd), BigInt::from(2))
}

/// a_k through potential polynomials: a_k = G_{2k}^{(k+1/2)} / (2^k k!),
/// where G is the potential polynomial of e^x - 1 - x.
pub fn coeff_via_potential(k: usize) -> Rational {
    let z = half_integer(2 * k as i64 + 1);
    g_potential(2 * k, &z) / Rational::from_integer(BigInt::from(2).pow(k as u32) * factorial(k))
}

/// a_k by the chosen formula, reading any Stirling tables through the
/// given kernel view. Formulas that consult no table ignore the view.
pub fn coeff_by_formula_with(formula: Formula, k: usize, kernels: &dyn Kernels) -> Rational {
    match formula {
        Formula::Recurrence => coeff_recurrence(k),
        Formula::Comtet => coeff_comtet_with(k, kernels),
        Formula::BrassescoMendez => coeff_brassesco_mendez_with(k, kernels),
        Formula::Theorem1 => coeff_theorem1_with(k, kernels),
        Formula::Corollary => coeff_corollary(k),
        Formula::Potential => coeff_via_potential(k),
    }
}

/// a_k by the chosen formula with the production kernels.
pub fn coeff_by_formula(formula: Formula, k: usize) -> Rational {
    coeff_by_formula_with(formula, k, &StandardKernels)
}

/// The six values of a_k side by side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffReport {
    pub k: usize,
    /// Values in [`Formula::ALL`] order.
    pub values: Vec<(Formula, Rational)>,
    /// True iff all six values are identical rationals.
    pub agree: bool,
}

impl CoeffReport {
    /// The value computed by one formula.
    pub fn value(&self, formula: Formula) -> &Rational {
        &self
            .values
            .iter()
            .find(|(f, _)| *f == formula)
            .expect("report carries every formula")
            .1
    }

    /// Formulas whose value differs from the recurrence reference.
    ///
    /// Empty exactly when the report agrees: the recurrence route touches
    /// no shared table, which makes it the natural baseline to name
    /// deviations against.
    pub fn dissenters(&self) -> Vec<Formula> {
        let reference = self.value(Formula::Recurrence).clone();
        self.values
            .iter()
            .filter(|(_, v)| *v != reference)
            .map(|(f, _)| *f)
            .collect()
    }
}

/// Computes all six formulas for every k <= k_max and records agreement.
/// Disagreement is data, not an error.
pub fn verify_all(k_max: usize) -> Vec<CoeffReport> {
    verify_all_with(k_max, &StandardKernels)
}

/// [`verify_all`] with table reads routed through the given kernel view.
pub fn verify_all_with(k_max: usize, kernels: &dyn Kernels) -> Vec<CoeffReport> {
    (0..=k_max)
        .map(|k| {
            let values: Vec<(Formula, Rational)> = Formula::ALL
                .iter()
                .map(|&f| (f, coeff_by_formula_with(f, k, kernels)))
                .collect();
            let agree = values.windows(2).all(|w| w[0].1 == w[1].1);
            CoeffReport { k, values, agree }
        })
        .collect()
}
