//! Randomized invariants and algebraic identity grids for the core
//! arithmetic: rationals stay canonical under the four operations, series
//! multiplication commutes, and the two potential-polynomial evaluators
//! agree with each other and with the classical binomial identities.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use stirling_core::kernels::{binomial, factorial};
use stirling_core::rational::Rational;
use stirling_core::series::{
    bell_polynomial, bell_zero_ones, potential_polynomial_direct, potential_polynomial_howard,
    series_multiply, FormalPowerSeries,
};

fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn assert_canonical(r: &Rational) {
    assert!(r.denom().is_positive(), "denominator must be positive: {r}");
    assert!(
        r.numer().gcd(r.denom()).is_one(),
        "must be in lowest terms: {r}"
    );
    if r.numer().is_zero() {
        assert!(r.denom().is_one(), "zero must be 0/1: {r}");
    }
}

proptest! {
    #[test]
    fn rational_ops_stay_canonical(
        a in -1000i64..1000,
        b in 1i64..1000,
        c in -1000i64..1000,
        d in 1i64..1000,
        flip in proptest::bool::ANY,
    ) {
        let x = rational(a, if flip { -b } else { b });
        let y = rational(c, d);
        assert_canonical(&x);
        assert_canonical(&(&x + &y));
        assert_canonical(&(&x - &y));
        assert_canonical(&(&x * &y));
        if !y.is_zero() {
            assert_canonical(&(&x / &y));
        }
    }

    #[test]
    fn rational_field_identities(
        a in -300i64..300,
        b in 1i64..300,
        c in -300i64..300,
        d in 1i64..300,
    ) {
        let x = rational(a, b);
        let y = rational(c, d);
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&(&x * &y) + &(&x * &x), &x * &(&y + &x));
        if !y.is_zero() {
            prop_assert_eq!(&(&x / &y) * &y, x.clone());
        }
    }
}

/// A series with valuation 1..=3 filled with small rationals up to a fixed
/// truncation order, leading coefficient forced nonzero.
fn small_series(order: usize) -> impl Strategy<Value = FormalPowerSeries> {
    (1usize..=3).prop_flat_map(move |valuation| {
        let len = order - valuation + 1;
        proptest::collection::vec((-9i64..=9, 1i64..=9), len).prop_map(move |pairs| {
            let coeffs: Vec<Rational> = pairs
                .iter()
                .enumerate()
                .map(|(idx, &(n, d))| {
                    if idx == 0 && n == 0 {
                        rational(1, d)
                    } else {
                        rational(n, d)
                    }
                })
                .collect();
            FormalPowerSeries::new(valuation, coeffs).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_multiplication_commutes(
        f in small_series(10),
        g in small_series(10),
    ) {
        let fg = series_multiply(&f, &g);
        let gf = series_multiply(&g, &f);
        match (fg, gf) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(a.valuation(), b.valuation());
                prop_assert_eq!(a.truncation_order(), b.truncation_order());
                for n in a.valuation()..=a.truncation_order() {
                    prop_assert_eq!(a.coeff(n), b.coeff(n));
                }
            }
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "asymmetric outcome: {a:?} vs {b:?}"),
        }
    }

    #[test]
    fn product_matches_the_ordinary_cauchy_product(
        f in small_series(10),
        g in small_series(10),
    ) {
        // The binomial convolution c_n = sum C(n,m) f_m g_{n-m} is the
        // ordinary Cauchy product once every coefficient is scaled by
        // 1/n!; recomputing it that way exercises a different code path.
        prop_assume!(f.valuation() + g.valuation() <= 10);
        let product = series_multiply(&f, &g).unwrap();
        for n in product.valuation()..=product.truncation_order() {
            let mut cauchy = Rational::zero();
            for m in 0..=n {
                let a = f.coeff(m) / Rational::from_integer(factorial(m));
                let b = g.coeff(n - m) / Rational::from_integer(factorial(n - m));
                cauchy += a * b;
            }
            prop_assert_eq!(
                product.coeff(n),
                cauchy * Rational::from_integer(factorial(n)),
                "n={}",
                n
            );
        }
    }
}

#[test]
fn bell_values_match_the_closed_form_up_to_twenty() {
    let f = FormalPowerSeries::exp_minus_one_minus_x(20);
    for n in 0..=20usize {
        for i in 0..=n {
            assert_eq!(
                bell_polynomial(&f, n, i).unwrap(),
                bell_zero_ones(n, i),
                "n={n} i={i}"
            );
        }
    }
}

#[test]
fn potential_evaluators_agree_for_integer_exponents() {
    let f = FormalPowerSeries::exp_minus_one_minus_x(36);
    for z in 0..=5usize {
        let z_rat = Rational::from_integer(BigInt::from(z));
        for n in 0..=12usize {
            assert_eq!(
                potential_polynomial_howard(&f, n, &z_rat).unwrap(),
                potential_polynomial_direct(&f, n, z).unwrap(),
                "z={z} n={n}"
            );
        }
    }
}

#[test]
fn potential_exponents_add() {
    // g^{z1} g^{z2} = g^{z1+z2} turns into a binomial convolution of the
    // coefficient sequences; half-integer exponents included.
    let f = FormalPowerSeries::exp_minus_one_minus_x(30);
    let exponents = [
        Rational::new(BigInt::from(1), BigInt::from(2)),
        Rational::from_integer(BigInt::one()),
        Rational::new(BigInt::from(3), BigInt::from(2)),
        Rational::from_integer(BigInt::from(2)),
    ];
    // One evaluation per (exponent, n); the convolutions below only read.
    let mut wanted: Vec<Rational> = Vec::new();
    for z1 in &exponents {
        for z2 in &exponents {
            for z in [z1.clone(), z2.clone(), z1 + z2] {
                if !wanted.contains(&z) {
                    wanted.push(z);
                }
            }
        }
    }
    let mut table = std::collections::BTreeMap::new();
    for z in &wanted {
        let column: Vec<Rational> = (0..=10usize)
            .map(|n| potential_polynomial_howard(&f, n, z).unwrap())
            .collect();
        table.insert(z.clone(), column);
    }
    for z1 in &exponents {
        for z2 in &exponents {
            let z12 = z1 + z2;
            for n in 0..=10usize {
                let mut convolved = Rational::zero();
                for m in 0..=n {
                    convolved +=
                        Rational::from_integer(binomial(n, m)) * &table[z1][m] * &table[z2][n - m];
                }
                assert_eq!(convolved, table[&z12][n], "z1={z1} z2={z2} n={n}");
            }
        }
    }
}
