//! Binomials, k-subset encoding and the Steiner divisibility predicates.
//!
//! Elements are 1-based at the API boundary and 0-based inside masks:
//! element `e` of `{1,..,n}` is bit `e - 1`.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{domain, Error, Result};

/// Exact rational number in lowest terms.
pub type BigRat = BigRational;

/// Largest ground set a [`KSet`] mask can hold.
pub const MAX_N: usize = 64;

/// Exact binomial coefficient `C(n, r)`; zero when `r < 0` or `r > n`.
pub fn binom(n: u64, r: i64) -> BigInt {
    if r < 0 || r as u64 > n {
        return BigInt::zero();
    }
    let r = (r as u64).min(n - r as u64);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial with a signed upper argument, zero outside `0 <= r <= n`.
pub fn binom_i(n: i64, r: i64) -> BigInt {
    if n < 0 {
        return BigInt::zero();
    }
    binom(n as u64, r)
}

fn pascal() -> &'static [[u64; MAX_N + 1]; MAX_N + 1] {
    static TABLE: OnceLock<Box<[[u64; MAX_N + 1]; MAX_N + 1]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Box::new([[0u64; MAX_N + 1]; MAX_N + 1]);
        for n in 0..=MAX_N {
            t[n][0] = 1;
            for r in 1..=n {
                t[n][r] = t[n - 1][r - 1] + if r < n { t[n - 1][r] } else { 0 };
            }
        }
        t
    })
}

/// Machine-word binomial for `n <= 64`; zero out of range.
#[inline]
pub fn binom_u64(n: usize, r: usize) -> u64 {
    if r > n || n > MAX_N {
        return 0;
    }
    pascal()[n][r]
}

/// Problem dimensions of `J(n, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SchemeParams {
    pub n: usize,
    pub k: usize,
    pub v: u64,
}

impl SchemeParams {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return domain(format!("need 0 < k < n, got n={n}, k={k}"));
        }
        if n > MAX_N {
            return domain(format!("n={n} exceeds the supported maximum {MAX_N}"));
        }
        Ok(SchemeParams {
            n,
            k,
            v: binom_u64(n, k),
        })
    }
}

/// A k-subset of `{1,..,n}` stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KSet {
    n: u8,
    mask: u64,
}

impl KSet {
    /// Build from 1-based elements. Duplicates and out-of-range points are rejected.
    pub fn from_elements(n: usize, elems: &[usize]) -> Result<Self> {
        if n > MAX_N {
            return domain(format!("n={n} exceeds {MAX_N}"));
        }
        let mut mask = 0u64;
        for &e in elems {
            if e == 0 || e > n {
                return domain(format!("element {e} outside 1..={n}"));
            }
            let bit = 1u64 << (e - 1);
            if mask & bit != 0 {
                return domain(format!("duplicate element {e}"));
            }
            mask |= bit;
        }
        Ok(KSet { n: n as u8, mask })
    }

    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n > MAX_N || (n < 64 && mask >> n != 0) {
            return domain(format!("mask {mask:#x} has bits beyond n={n}"));
        }
        Ok(KSet { n: n as u8, mask })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.mask.count_ones() as usize
    }

    #[inline]
    pub fn mask(&self) -> u64 {
        self.mask
    }

    /// Sorted 1-based elements.
    pub fn elements(&self) -> Vec<usize> {
        mask_elements(self.mask)
    }

    pub fn contains(&self, e: usize) -> bool {
        e >= 1 && e <= self.n() && self.mask >> (e - 1) & 1 == 1
    }

    /// Colexicographic rank among all k-subsets of the ground set.
    pub fn rank(&self) -> u64 {
        rank_mask(self.mask)
    }

    pub fn unrank(r: u64, params: &SchemeParams) -> Result<Self> {
        if r >= params.v {
            return domain(format!(
                "rank {r} out of range for C({}, {}) = {}",
                params.n, params.k, params.v
            ));
        }
        Ok(KSet {
            n: params.n as u8,
            mask: unrank_mask(r, params.k),
        })
    }
}

impl fmt::Debug for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().into_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn mask_elements(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize + 1);
        mask &= mask - 1;
    }
    out
}

/// Colex rank of a mask: sum of `C(c_i, i + 1)` over its 0-based members `c_0 < c_1 < ..`.
#[inline]
pub fn rank_mask(mut mask: u64) -> u64 {
    let mut r = 0;
    let mut i = 1;
    while mask != 0 {
        let c = mask.trailing_zeros() as usize;
        r += binom_u64(c, i);
        mask &= mask - 1;
        i += 1;
    }
    r
}

/// Inverse of [`rank_mask`] for `k`-subsets. Caller guarantees `r < C(n, k)`.
pub fn unrank_mask(mut r: u64, k: usize) -> u64 {
    let mut mask = 0u64;
    for i in (1..=k).rev() {
        // largest c with C(c, i) <= r
        let mut c = i - 1;
        while binom_u64(c + 1, i) <= r {
            c += 1;
        }
        r -= binom_u64(c, i);
        mask |= 1 << c;
    }
    mask
}

/// Scheme class index `k - |a ∩ b|`; 0 exactly when `a == b`.
pub fn intersection_class(a: &KSet, b: &KSet) -> Result<usize> {
    if a.n != b.n {
        return domain(format!("ground sets differ: n={} vs n={}", a.n, b.n));
    }
    if a.k() != b.k() {
        return domain(format!("subset sizes differ: {} vs {}", a.k(), b.k()));
    }
    Ok(a.k() - (a.mask & b.mask).count_ones() as usize)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisibilityTerm {
    pub i: usize,
    #[serde(serialize_with = "crate::ser::int")]
    pub divisor: BigInt,
    #[serde(serialize_with = "crate::ser::int")]
    pub dividend: BigInt,
    #[serde(serialize_with = "crate::ser::int")]
    pub remainder: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    pub t: usize,
    pub k: usize,
    pub n: usize,
    pub holds: bool,
    pub terms: Vec<DivisibilityTerm>,
}

impl DivisibilityReport {
    pub fn first_failure(&self) -> Option<&DivisibilityTerm> {
        self.terms.iter().find(|t| !t.remainder.is_zero())
    }
}

/// Necessary conditions for `S(t, k, n)`: `C(k-i, t-i) | C(n-i, t-i)` for `0 <= i < t`.
pub fn divisibility_conditions(t: usize, k: usize, n: usize) -> Result<DivisibilityReport> {
    if !(0 < t && t < k && k < n) {
        return domain(format!("need 0 < t < k < n, got t={t}, k={k}, n={n}"));
    }
    let terms: Vec<_> = (0..t)
        .map(|i| {
            let divisor = binom((k - i) as u64, (t - i) as i64);
            let dividend = binom((n - i) as u64, (t - i) as i64);
            let remainder = dividend.mod_floor(&divisor);
            DivisibilityTerm {
                i,
                divisor,
                dividend,
                remainder,
            }
        })
        .collect();
    Ok(DivisibilityReport {
        t,
        k,
        n,
        holds: terms.iter().all(|t| t.remainder.is_zero()),
        terms,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct K4Residue {
    pub n: usize,
    /// Values of `t` in `{1,2,3}` whose divisibility conditions hold.
    pub passing_t: Vec<usize>,
    pub admissible: bool,
}

/// Which `S(t, 4, n)` pass the divisibility conditions.
pub fn k4_residue_class(n: usize) -> Result<K4Residue> {
    if n < 5 {
        return domain(format!("need n > 4, got {n}"));
    }
    let mut passing_t = Vec::new();
    for t in 1..=3 {
        if divisibility_conditions(t, 4, n)?.holds {
            passing_t.push(t);
        }
    }
    Ok(K4Residue {
        n,
        admissible: !passing_t.is_empty(),
        passing_t,
    })
}

/// Renders a rational as `"p/q"`, or `"p"` when integral.
pub fn rat_string(r: &BigRat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<BigRat> {
    let bad = || Error::Domain(format!("not a rational: {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRat::new(p, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binom_examples() {
        assert_eq!(binom(10, 4), BigInt::from(210));
        assert_eq!(binom(9, 0), BigInt::from(1));
        assert_eq!(binom(5, 7), BigInt::zero());
        assert_eq!(binom(5, -1), BigInt::zero());
        assert_eq!(binom(49, 4), BigInt::from(211876));
        assert_eq!(binom_u64(64, 32), 1832624140942590534);
    }

    #[test]
    fn rank_examples() {
        let p = SchemeParams::new(10, 4).unwrap();
        let first = KSet::from_elements(10, &[1, 2, 3, 4]).unwrap();
        let last = KSet::from_elements(10, &[7, 8, 9, 10]).unwrap();
        assert_eq!(first.rank(), 0);
        // C(6,1)+C(7,2)+C(8,3)+C(9,4)
        assert_eq!(last.rank(), 6 + 21 + 56 + 126);
        assert_eq!(last.rank(), 209);
        assert_eq!(KSet::unrank(0, &p).unwrap(), first);
        assert!(KSet::unrank(210, &p).is_err());
    }

    #[test]
    fn colex_rank_ignores_ground_set() {
        // sets avoiding point n keep their rank when n grows
        let a = KSet::from_elements(9, &[2, 5, 6, 9]).unwrap();
        let b = KSet::from_elements(20, &[2, 5, 6, 9]).unwrap();
        assert_eq!(a.rank(), b.rank());
    }

    #[test]
    fn intersection_class_examples() {
        let a = KSet::from_elements(10, &[1, 2, 3, 4]).unwrap();
        let b = KSet::from_elements(10, &[4, 5, 6, 7]).unwrap();
        assert_eq!(intersection_class(&a, &a).unwrap(), 0);
        assert_eq!(intersection_class(&a, &b).unwrap(), 3);
        let c = KSet::from_elements(7, &[1, 2, 3]).unwrap();
        let d = KSet::from_elements(7, &[4, 5, 6]).unwrap();
        assert_eq!(intersection_class(&c, &d).unwrap(), 3);
        assert!(intersection_class(&a, &c).is_err());
    }

    #[test]
    fn kset_rejects_bad_elements() {
        assert!(KSet::from_elements(5, &[0, 1]).is_err());
        assert!(KSet::from_elements(5, &[6]).is_err());
        assert!(KSet::from_elements(5, &[2, 2]).is_err());
        assert!(KSet::from_mask(5, 1 << 5).is_err());
    }

    #[test]
    fn divisibility_examples() {
        assert!(divisibility_conditions(2, 4, 13).unwrap().holds);
        let r = divisibility_conditions(3, 4, 9).unwrap();
        assert!(!r.holds);
        let f = r.first_failure().unwrap();
        assert_eq!(f.i, 1);
        assert_eq!(f.divisor, BigInt::from(3));
        assert_eq!(f.dividend, BigInt::from(28));
        assert!(divisibility_conditions(1, 4, 8).unwrap().holds);
        assert!(divisibility_conditions(4, 4, 8).is_err());
    }

    #[test]
    fn k4_residues() {
        // S(3,4,12) fails: C(11,2) = 55 is not a multiple of C(3,2) = 3
        let r = k4_residue_class(12).unwrap();
        assert_eq!(r.passing_t, vec![1]);
        assert!(r.admissible);
        assert_eq!(k4_residue_class(13).unwrap().passing_t, vec![2]);
        let r = k4_residue_class(15).unwrap();
        assert!(r.passing_t.is_empty() && !r.admissible);
        for n in 10..200 {
            let expected = [0, 1, 2, 4, 8, 10].contains(&(n % 12));
            assert_eq!(k4_residue_class(n).unwrap().admissible, expected, "n={n}");
        }
    }

    #[test]
    fn rat_strings() {
        let r = BigRat::new(BigInt::from(-6), BigInt::from(4));
        assert_eq!(rat_string(&r), "-3/2");
        assert_eq!(parse_rat("-3/2").unwrap(), r);
        assert_eq!(rat_string(&parse_rat("8").unwrap()), "8");
        assert!(parse_rat("1/0").is_err());
    }

    #[test]
    fn rank_unrank_exhaustive() {
        for n in 2..=14 {
            for k in 1..=5.min(n - 1) {
                let p = SchemeParams::new(n, k).unwrap();
                for r in 0..p.v {
                    let s = KSet::unrank(r, &p).unwrap();
                    assert_eq!(s.k(), k);
                    assert_eq!(s.rank(), r);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn pascal_rule(n in 1u64..80, r in 0i64..40) {
            prop_assert_eq!(binom(n, r), binom(n - 1, r) + binom(n - 1, r - 1));
        }

        #[test]
        fn clique_coclique_identity(n in 3u64..40, k in 2u64..12, t in 1u64..11) {
            prop_assume!(t < k && k < n);
            let lhs = binom(n - t, (k - t) as i64) * binom(n, t as i64);
            prop_assert_eq!(lhs, binom(n, k as i64) * binom(k, t as i64));
        }

        #[test]
        fn t1_divisibility_is_k_divides_n(k in 2usize..10, n in 3usize..80) {
            prop_assume!(k < n);
            prop_assert_eq!(divisibility_conditions(1, k, n).unwrap().holds, n % k == 0);
        }
    }
}
