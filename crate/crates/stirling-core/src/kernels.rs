//! Exact combinatorial counting primitives: factorials, double factorials,
//! binomial coefficients with rational upper argument, Stirling numbers of
//! the second kind, and both 3-associated Stirling families.
//!
//! The triangle-backed families ([`stirling2`], [`assoc_stirling2`],
//! [`assoc_stirling1`]) are memoized in shared tables behind mutexes, so
//! concurrent callers are safe. Rows are append-only: once an entry has
//! been computed it never changes.
//!
//! Each counting family comes with an independent companion that counts by
//! direct enumeration ([`enumerate_partitions_min_block`],
//! [`enumerate_permutations_min_cycle`]) or by an unrelated formula
//! ([`stirling2_explicit`]). The enumerators are exponential and only
//! suitable for small inputs; tests use them as oracles for the production
//! recurrences.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use crate::rational::Rational;

/// n! as an exact integer.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=n {
        acc *= j;
    }
    acc
}

/// The double factorial m!! = m(m-2)(m-4)..., ending at 1 or 2; 0!! = 1.
pub fn double_factorial(m: usize) -> BigInt {
    let mut acc = BigInt::one();
    let mut j = m;
    while j > 1 {
        acc *= j;
        j -= 2;
    }
    acc
}

/// The binomial coefficient C(n, k) for integer arguments; 0 when k > n.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        // The running product of j+1 consecutive integers is divisible by
        // (j+1)!, so this division is exact at every step.
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// The generalized binomial coefficient C(alpha, m) for rational alpha:
/// the falling factorial alpha(alpha-1)...(alpha-m+1) divided by m!.
/// Returns 1 when m = 0.
pub fn binomial_rational(alpha: &Rational, m: usize) -> Rational {
    let mut acc = Rational::one();
    for j in 0..m {
        acc *= alpha - Rational::from_integer(BigInt::from(j));
    }
    acc / Rational::from_integer(factorial(m))
}

/// Which counting family a [`StirlingTriangle`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangleKind {
    /// S(p,q): partitions of a p-element set into q nonempty blocks.
    SecondKind,
    /// S_3(p,q): partitions of a p-element set into q blocks, each of
    /// size at least 3.
    Assoc3SecondKind,
    /// d_3(p,q): permutations of a p-element set with q cycles, each of
    /// length at least 3.
    Assoc3FirstKind,
}

/// Append-only triangular table for one Stirling-like family.
///
/// Row p holds the entries for q = 0..=p. Entries outside the triangle are
/// zero, and for the 3-associated kinds every entry with p < 3q is zero as
/// well (no such partition or permutation can exist). Rows are only ever
/// appended; an entry that has been handed out never changes.
#[derive(Debug)]
pub struct StirlingTriangle {
    kind: TriangleKind,
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTriangle {
    /// An empty table of the given kind, holding only the (0,0) = 1 seed.
    pub fn new(kind: TriangleKind) -> Self {
        StirlingTriangle {
            kind,
            rows: vec![vec![BigInt::one()]],
        }
    }

    pub fn kind(&self) -> TriangleKind {
        self.kind
    }

    /// Number of rows computed so far.
    pub fn rows_computed(&self) -> usize {
        self.rows.len()
    }

    /// The value at (p, q), computing and caching any missing rows.
    pub fn entry(&mut self, p: usize, q: usize) -> BigInt {
        if q > p {
            return BigInt::zero();
        }
        while self.rows.len() <= p {
            let next = self.rows.len();
            let row = (0..=next).map(|q| self.fresh_entry(next, q)).collect();
            self.rows.push(row);
        }
        self.rows[p][q].clone()
    }

    /// A stored value, or zero outside the triangle. Callers guarantee
    /// that row p, if inside the triangle, has already been computed.
    fn stored(&self, p: usize, q: usize) -> BigInt {
        if q > p {
            BigInt::zero()
        } else {
            self.rows[p][q].clone()
        }
    }

    /// Computes the entry (p, q) for p >= 1 from already-present rows.
    fn fresh_entry(&self, p: usize, q: usize) -> BigInt {
        match self.kind {
            // S(p,q) = q S(p-1,q) + S(p-1,q-1): the new element either
            // joins one of q existing blocks or opens a singleton.
            TriangleKind::SecondKind => {
                if q == 0 {
                    return BigInt::zero();
                }
                self.stored(p - 1, q) * q + self.stored(p - 1, q - 1)
            }
            // S_3(p,q) = q S_3(p-1,q) + C(p-1,2) S_3(p-3,q-1): the new
            // element joins an existing block (still of size >= 3 after
            // removal) or forms a fresh 3-block with two chosen partners.
            TriangleKind::Assoc3SecondKind => {
                if q == 0 {
                    return BigInt::zero();
                }
                let mut v = self.stored(p - 1, q) * q;
                if p >= 3 {
                    v += binomial(p - 1, 2) * self.stored(p - 3, q - 1);
                }
                v
            }
            // d_3(p,q) = (p-1) d_3(p-1,q) + (p-1)(p-2) d_3(p-3,q-1): the
            // new element is inserted after any of p-1 elements in a cycle
            // of length >= 4, or closes a fresh 3-cycle with an ordered
            // pair of partners.
            TriangleKind::Assoc3FirstKind => {
                let mut v = self.stored(p - 1, q) * (p - 1);
                if p >= 3 && q >= 1 {
                    v += self.stored(p - 3, q - 1) * ((p - 1) * (p - 2));
                }
                v
            }
        }
    }
}

static SECOND_KIND: Lazy<Mutex<StirlingTriangle>> =
    Lazy::new(|| Mutex::new(StirlingTriangle::new(TriangleKind::SecondKind)));
static ASSOC3_SECOND_KIND: Lazy<Mutex<StirlingTriangle>> =
    Lazy::new(|| Mutex::new(StirlingTriangle::new(TriangleKind::Assoc3SecondKind)));
static ASSOC3_FIRST_KIND: Lazy<Mutex<StirlingTriangle>> =
    Lazy::new(|| Mutex::new(StirlingTriangle::new(TriangleKind::Assoc3FirstKind)));

/// S(p,q), the Stirling number of the second kind, from the shared
/// memoized triangle.
pub fn stirling2(p: usize, q: usize) -> BigInt {
    SECOND_KIND.lock().unwrap().entry(p, q)
}

/// S_3(p,q): partitions of a p-element set into q blocks of size >= 3.
pub fn assoc_stirling2(p: usize, q: usize) -> BigInt {
    ASSOC3_SECOND_KIND.lock().unwrap().entry(p, q)
}

/// d_3(p,q): permutations of a p-element set with q cycles of length >= 3.
pub fn assoc_stirling1(p: usize, q: usize) -> BigInt {
    ASSOC3_FIRST_KIND.lock().unwrap().entry(p, q)
}

/// S(p,q) from the alternating explicit sum
/// (1/q!) sum_{l=0}^{q} (-1)^l C(q,l) (q-l)^p,
/// with the convention 0^0 = 1 so that S(0,0) = 1.
///
/// Shares nothing with the triangle recurrence behind [`stirling2`]; the
/// two must agree for all inputs.
pub fn stirling2_explicit(p: usize, q: usize) -> BigInt {
    let mut sum = BigInt::zero();
    for l in 0..=q {
        let term = binomial(q, l) * BigInt::from(q - l).pow(p as u32);
        if l % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let q_fact = factorial(q);
    debug_assert!((&sum % &q_fact).is_zero());
    sum / q_fact
}

/// Access to the three Stirling-family tables.
///
/// The coefficient formulas read their tables through this trait so that
/// tests can substitute a deliberately corrupted view and confirm that
/// cross-verification catches single-entry faults.
pub trait Kernels {
    fn stirling2(&self, p: usize, q: usize) -> BigInt;
    fn assoc_stirling2(&self, p: usize, q: usize) -> BigInt;
    fn assoc_stirling1(&self, p: usize, q: usize) -> BigInt;
}

/// The production view: straight delegation to the shared memo tables.
#[derive(Clone, Copy, Debug, Default)]
pub struct StandardKernels;

impl Kernels for StandardKernels {
    fn stirling2(&self, p: usize, q: usize) -> BigInt {
        stirling2(p, q)
    }

    fn assoc_stirling2(&self, p: usize, q: usize) -> BigInt {
        assoc_stirling2(p, q)
    }

    fn assoc_stirling1(&self, p: usize, q: usize) -> BigInt {
        assoc_stirling1(p, q)
    }
}

/// A view of the tables with a single entry offset by `delta`.
///
/// The shared tables themselves are never modified; only reads through
/// this view see the altered value. Used to demonstrate that corrupting
/// any one kernel entry makes cross-verification fail.
#[derive(Clone, Debug)]
pub struct CorruptKernels {
    pub table: TriangleKind,
    pub p: usize,
    pub q: usize,
    pub delta: BigInt,
}

impl CorruptKernels {
    fn patched(&self, table: TriangleKind, p: usize, q: usize, clean: BigInt) -> BigInt {
        if table == self.table && (p, q) == (self.p, self.q) {
            clean + &self.delta
        } else {
            clean
        }
    }
}

impl Kernels for CorruptKernels {
    fn stirling2(&self, p: usize, q: usize) -> BigInt {
        self.patched(TriangleKind::SecondKind, p, q, stirling2(p, q))
    }

    fn assoc_stirling2(&self, p: usize, q: usize) -> BigInt {
        self.patched(TriangleKind::Assoc3SecondKind, p, q, assoc_stirling2(p, q))
    }

    fn assoc_stirling1(&self, p: usize, q: usize) -> BigInt {
        self.patched(TriangleKind::Assoc3FirstKind, p, q, assoc_stirling1(p, q))
    }
}

/// Counts, for every q, the partitions of a p-element set into exactly q
/// blocks where each block has at least `min_block` elements, by
/// enumerating all set partitions and filtering.
///
/// Returned vector has length p+1, indexed by q. Exponential in p; this
/// is a test oracle, not a production path.
pub fn enumerate_partitions_min_block(p: usize, min_block: usize) -> Vec<BigInt> {
    let mut counts = vec![BigInt::zero(); p + 1];
    if p == 0 {
        counts[0] = BigInt::one();
        return counts;
    }
    // Restricted growth: element i joins an existing block or opens a new
    // one. Block sizes are all that matters for the filter.
    fn rec(remaining: usize, sizes: &mut Vec<usize>, min_block: usize, counts: &mut [BigInt]) {
        if remaining == 0 {
            if sizes.iter().all(|&s| s >= min_block) {
                counts[sizes.len()] += 1;
            }
            return;
        }
        for b in 0..sizes.len() {
            sizes[b] += 1;
            rec(remaining - 1, sizes, min_block, counts);
            sizes[b] -= 1;
        }
        sizes.push(1);
        rec(remaining - 1, sizes, min_block, counts);
        sizes.pop();
    }
    let mut sizes = vec![1];
    rec(p - 1, &mut sizes, min_block, &mut counts);
    counts
}

/// Counts, for every q, the permutations of a p-element set with exactly q
/// cycles where every cycle has length at least `min_cycle`, by iterating
/// over all p! permutations and decomposing each into cycles.
///
/// Returned vector has length p+1, indexed by q. Exponential in p; test
/// oracle only.
pub fn enumerate_permutations_min_cycle(p: usize, min_cycle: usize) -> Vec<BigInt> {
    let mut counts = vec![BigInt::zero(); p + 1];
    if p == 0 {
        counts[0] = BigInt::one();
        return counts;
    }
    let mut perm: Vec<usize> = (0..p).collect();
    // Heap's algorithm generates each permutation by one swap.
    fn heaps(k: usize, perm: &mut Vec<usize>, min_cycle: usize, counts: &mut [BigInt]) {
        if k == 1 {
            tally(perm, min_cycle, counts);
            return;
        }
        for i in 0..k {
            heaps(k - 1, perm, min_cycle, counts);
            if k.is_multiple_of(2) {
                perm.swap(i, k - 1);
            } else {
                perm.swap(0, k - 1);
            }
        }
    }
    fn tally(perm: &[usize], min_cycle: usize, counts: &mut [BigInt]) {
        let mut seen = vec![false; perm.len()];
        let mut cycles = 0;
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut at = start;
            while !seen[at] {
                seen[at] = true;
                at = perm[at];
                len += 1;
            }
            if len < min_cycle {
                return;
            }
            cycles += 1;
        }
        counts[cycles] += 1;
    }
    let n = perm.len();
    heaps(n, &mut perm, min_cycle, &mut counts);
    counts
}
