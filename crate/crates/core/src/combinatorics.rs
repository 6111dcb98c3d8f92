//! Base sizes of `S_{n,r}` and `A_{n,r}`: the quantity `m_r(l, k)`, the
//! witness search, the lower bounds and the two closed forms.
//!
//! Every comparison that decides a result is carried out on exact integers or
//! [`ExactRational`]s; floating point never enters a decision path.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::action::{ActionSpec, Group};
use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// `C(a, b)`, zero when `b > a`.
pub fn binomial(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigUint::from(1u32);
    for i in 1..=b {
        acc *= a - b + i;
        acc /= i;
    }
    acc
}

/// `m_r(l, k) = (l r - sum_{i=1}^{k-1} i C(l, i)) / k`. May be negative.
pub fn m_value(l: u64, k: u64, r: u64) -> ExactRational {
    assert!(
        l >= 1 && k >= 1 && r >= 1,
        "m_value needs positive arguments"
    );
    let sums = PartialSums::new(l, k);
    ExactRational::new(sums.numerator(l, r), BigInt::from(k))
}

/// `sum_{i<k} C(l, i)` and `sum_{i<k} i C(l, i)`.
struct PartialSums {
    count: BigInt,
    weighted: BigInt,
}

impl PartialSums {
    fn new(l: u64, k: u64) -> Self {
        let mut count = BigInt::zero();
        let mut weighted = BigInt::zero();
        for i in 0..k {
            let c = BigInt::from(binomial(l, i));
            weighted += &c * i;
            count += c;
        }
        PartialSums { count, weighted }
    }

    fn numerator(&self, l: u64, r: u64) -> BigInt {
        BigInt::from(l) * r - &self.weighted
    }
}

/// A pair `(l, k)` satisfying the witness conditions for some `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub l: u64,
    pub k: u64,
    /// `m_r(l, k)`.
    pub m: ExactRational,
    /// `sum_{i<k} C(l, i) + floor(m)`: the number of edges of the assembled
    /// hypergraph before surplus size-`k` edges are deleted.
    pub edge_budget: BigUint,
}

impl Witness {
    /// Number of size-`k` edges used by the construction, `floor(m)`.
    pub fn top_edges(&self) -> u64 {
        self.m
            .floor()
            .to_u64()
            .expect("witness m is non-negative and bounded by C(l,k)")
    }
}

fn evaluate(l: u64, k: u64, n: u64, r: u64, sums: &PartialSums) -> Option<Witness> {
    if k > l + 1 {
        return None;
    }
    let m = ExactRational::new(sums.numerator(l, r), BigInt::from(k));
    if m.is_negative() || m.cmp_integer(&BigInt::from(binomial(l, k))) == Ordering::Greater {
        return None;
    }
    let total = &ExactRational::from_integer(sums.count.clone()) + &m;
    if total.cmp_integer(&BigInt::from(n)) == Ordering::Less {
        return None;
    }
    let edge_budget = (&sums.count + m.floor())
        .to_biguint()
        .expect("edge budget is non-negative");
    Some(Witness {
        l,
        k,
        m,
        edge_budget,
    })
}

/// Whether `(l, k)` certifies that `S_{n,r}` has a base of size `l`:
/// `k <= l + 1`, `0 <= m_r(l,k) <= C(l,k)` and
/// `sum_{i<k} C(l,i) + m_r(l,k) >= n`.
pub fn witness_valid(l: u64, k: u64, n: u64, r: u64) -> bool {
    if l == 0 || k == 0 || r == 0 {
        return false;
    }
    evaluate(l, k, n, r, &PartialSums::new(l, k)).is_some()
}

fn require_symmetric_domain(n: u64, r: u64) -> Result<()> {
    ActionSpec::new(Group::Symmetric, n, r, true).map(|_| ())
}

/// The least `l` admitting a valid witness, paired with the least valid `k`.
///
/// The search starts at [`lower_bound`] and increases `l`; for each `l`, `k`
/// runs upward from 1 and stops once the numerator of `m_r(l, k)` turns
/// negative, since it only decreases in `k`.
pub fn find_min_l(n: u64, r: u64) -> Result<Witness> {
    require_symmetric_domain(n, r)?;
    let mut l = lower_bound(n, r)?;
    loop {
        let mut sums = PartialSums {
            count: BigInt::zero(),
            weighted: BigInt::zero(),
        };
        let mut c = BigInt::from(1u32);
        for k in 1..=l + 1 {
            // fold in the i = k - 1 term
            let i = k - 1;
            if i > 0 {
                c = c * (l - i + 1) / i;
            }
            sums.weighted += &c * i;
            sums.count += &c;
            if sums.numerator(l, r).is_negative() {
                break;
            }
            if let Some(w) = evaluate(l, k, n, r, &sums) {
                return Ok(w);
            }
        }
        l += 1;
        if l > n {
            return Err(Error::Internal(format!(
                "no witness up to l = n for n = {n}, r = {r}"
            )));
        }
    }
}

/// `b(S_{n,r})` or `b(A_{n,r})` for the uniform or at-most action (both have
/// the same base size).
pub fn base_size(spec: &ActionSpec) -> Result<u64> {
    spec.check()?;
    let n = match spec.group {
        Group::Symmetric => spec.n,
        Group::Alternating => spec.n - 1,
    };
    Ok(find_min_l(n, spec.r)?.l)
}

/// `ceil(log2 n)` from the bit length of `n - 1`.
pub fn ceil_log2(n: u64) -> u64 {
    if n <= 1 {
        0
    } else {
        u64::from(64 - (n - 1).leading_zeros())
    }
}

/// `max(ceil((2n - 2) / (r + 1)), ceil(log2 n))`.
pub fn lower_bound(n: u64, r: u64) -> Result<u64> {
    require_symmetric_domain(n, r)?;
    Ok(counting_bound(n, r).max(ceil_log2(n)))
}

fn counting_bound(n: u64, r: u64) -> u64 {
    (2 * n - 2).div_ceil(r + 1)
}

/// `ceil((2n - 2) / (r + 1))`, valid as the base size when `2n >= r^2 + r`.
pub fn closed_form_large(n: u64, r: u64) -> Result<u64> {
    if r == 0 || n == 0 {
        return Err(Error::Domain("n and r must be positive".into()));
    }
    if in_large_range(n, r) {
        Ok(counting_bound(n, r))
    } else {
        Err(Error::Domain(format!(
            "closed form requires n >= (r^2 + r)/2, got n = {n}, r = {r}"
        )))
    }
}

pub fn in_large_range(n: u64, r: u64) -> bool {
    BigInt::from(2 * n) >= BigInt::from(r) * (r + 1)
}

/// Whether `n` lies in the middle range: `(r^2 + r)/2 > n` and
/// `n >= r^(3/2) + r/2 + 1`, or with `extended`,
/// `n >= sqrt(8r^3 + 25r^2 + 4r - 28)/6 + r/2 + 1`.
pub fn in_mid_range(n: u64, r: u64, extended: bool) -> bool {
    if r == 0 || in_large_range(n, r) {
        return false;
    }
    let n = BigInt::from(n);
    let r = BigInt::from(r);
    if extended {
        // 6n - 3r - 6 >= sqrt(8r^3 + 25r^2 + 4r - 28)
        let lhs: BigInt = &n * 6 - &r * 3 - 6;
        let radicand: BigInt = &r * &r * &r * 8 + &r * &r * 25 + &r * 4 - 28;
        !lhs.is_negative() && (radicand.is_negative() || &lhs * &lhs >= radicand)
    } else {
        // 2n - r - 2 >= 2 r^(3/2)
        let lhs: BigInt = &n * 2 - &r - 2;
        !lhs.is_negative() && &lhs * &lhs >= &r * &r * &r * 4
    }
}

/// `ceil(sqrt(3(2n + r - 5/4) + r^2) - r - 3/2)`, evaluated exactly.
///
/// With `X = 96n + 48r - 60 + 16r^2` the value is `ceil((sqrt(X) - 4r - 6)/4)`.
/// For `s = isqrt(X)`: if `X = s^2` this is `ceil((s - 4r - 6)/4)`; otherwise
/// `sqrt(X)` is irrational in `(s, s+1)` and the ceiling is the least `t` with
/// `4t + 4r + 6 >= s + 1`.
pub fn closed_form_mid(n: u64, r: u64, extended: bool) -> Result<u64> {
    if !in_mid_range(n, r, extended) {
        return Err(Error::Domain(format!(
            "n = {n} is outside the {}middle range for r = {r}",
            if extended { "extended " } else { "" }
        )));
    }
    Ok(mid_formula(n, r))
}

pub(crate) fn mid_formula(n: u64, r: u64) -> u64 {
    let n = BigInt::from(n);
    let r = BigInt::from(r);
    let x: BigInt = &n * 96 + &r * 48 - 60 + &r * &r * 16;
    let s: BigInt = Roots::sqrt(&x);
    let offset: BigInt = &r * 4 + 6;
    let top: BigInt = if &s * &s == x {
        s - offset
    } else {
        s + 1 - offset
    };
    Integer::div_ceil(&top, &BigInt::from(4))
        .to_u64()
        .expect("formula value is positive in range")
}

/// Which closed form, if any, covers `(n, r)` for the symmetric action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    Large,
    Mid,
    MidExtended,
}

impl ClosedForm {
    pub fn name(self) -> &'static str {
        match self {
            ClosedForm::Large => "large",
            ClosedForm::Mid => "mid",
            ClosedForm::MidExtended => "mid-extended",
        }
    }
}

/// The applicable closed form for `S_{n,r}` and its value.
pub fn closed_form(n: u64, r: u64) -> Option<(ClosedForm, u64)> {
    if r == 0 || n == 0 {
        return None;
    }
    if in_large_range(n, r) {
        Some((ClosedForm::Large, counting_bound(n, r)))
    } else if in_mid_range(n, r, false) {
        Some((ClosedForm::Mid, mid_formula(n, r)))
    } else if in_mid_range(n, r, true) {
        Some((ClosedForm::MidExtended, mid_formula(n, r)))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: scan every `l >= 1` and every `k <= l + 1` with
    /// plain u128 cross-multiplied inequalities.
    fn oracle_min_l(n: u64, r: u64) -> (u64, u64) {
        fn c(a: u128, b: u128) -> u128 {
            if b > a {
                return 0;
            }
            (0..b).fold(1u128, |acc, i| acc * (a - i) / (i + 1))
        }
        let (n, r) = (n as u128, r as u128);
        for l in 1u128.. {
            for k in 1..=l + 1 {
                let s0: u128 = (0..k).map(|i| c(l, i)).sum();
                let s1: u128 = (0..k).map(|i| i * c(l, i)).sum();
                let lr = l * r;
                if s1 > lr {
                    continue;
                }
                let num = lr - s1;
                if num <= k * c(l, k) && k * s0 + num >= k * n {
                    return (l as u64, k as u64);
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(2, 3), BigUint::zero());
        assert_eq!(binomial(9, 2), BigUint::from(36u32));
        assert_eq!(binomial(0, 0), BigUint::from(1u32));
        assert_eq!(
            binomial(100, 50).to_string(),
            "100891344545564193334812497256"
        );
    }

    #[test]
    fn m_value_examples() {
        assert_eq!(m_value(5, 3, 7), ExactRational::new(10, 3));
        assert_eq!(m_value(3, 3, 4), ExactRational::from_integer(1));
        for l in 1..6 {
            for r in 1..6 {
                assert_eq!(m_value(l, 1, r), ExactRational::from_integer(l * r));
            }
        }
        assert!(m_value(3, 4, 1).is_negative());
    }

    #[test]
    fn witness_examples() {
        assert!(witness_valid(5, 3, 18, 7));
        for k in 1..=5 {
            assert!(!witness_valid(4, k, 18, 7), "k = {k}");
        }
        assert!(witness_valid(3, 2, 5, 2));
        assert!(!witness_valid(3, 5, 5, 2));
    }

    #[test]
    fn find_min_l_examples() {
        let w = find_min_l(18, 7).unwrap();
        assert_eq!((w.l, w.k), (5, 3));
        assert_eq!(w.m, ExactRational::new(10, 3));
        assert_eq!(w.edge_budget, BigUint::from(19u32));
        assert_eq!(w.top_edges(), 3);
        let w = find_min_l(8, 4).unwrap();
        assert_eq!((w.l, w.k), (3, 3));
        let w = find_min_l(5, 2).unwrap();
        assert_eq!((w.l, w.k), (3, 2));
        assert!(matches!(find_min_l(5, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn find_min_l_matches_oracle() {
        for r in 1..=12 {
            for n in 2 * r..=2 * r + 60 {
                let w = find_min_l(n, r).unwrap();
                assert_eq!((w.l, w.k), oracle_min_l(n, r), "n = {n}, r = {r}");
            }
        }
    }

    #[test]
    fn base_size_examples() {
        let s = ActionSpec::symmetric(18, 7).unwrap();
        assert_eq!(base_size(&s).unwrap(), 5);
        assert_eq!(base_size(&s.at_most()).unwrap(), 5);
        assert_eq!(
            base_size(&ActionSpec::alternating(19, 7).unwrap()).unwrap(),
            5
        );
        assert_eq!(base_size(&ActionSpec::symmetric(8, 4).unwrap()).unwrap(), 3);
        let bad = ActionSpec {
            group: Group::Alternating,
            n: 14,
            r: 7,
            uniform: true,
        };
        assert!(base_size(&bad).is_err());
    }

    #[test]
    fn base_size_handles_large_parameters() {
        assert_eq!(find_min_l(1_000_000, 1).unwrap().l, 999_999);
        let w = find_min_l(1_000_000, 500_000).unwrap();
        assert_eq!(w.l, 20);
        assert!(witness_valid(w.l, w.k, 1_000_000, 500_000));
        let w = find_min_l(1_000_000, 1_000).unwrap();
        assert!(w.l >= lower_bound(1_000_000, 1_000).unwrap());
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(lower_bound(18, 7).unwrap(), 5);
        assert_eq!(lower_bound(8, 4).unwrap(), 3);
        for r in 1..100 {
            assert_eq!(lower_bound(2 * r, r).unwrap(), ceil_log2(2 * r));
        }
        assert!(lower_bound(7, 4).is_err());
    }

    #[test]
    fn ceil_log2_by_bit_length() {
        let expected = [
            (1, 0),
            (2, 1),
            (3, 2),
            (4, 2),
            (5, 3),
            (8, 3),
            (9, 4),
            (18, 5),
        ];
        for (n, e) in expected {
            assert_eq!(ceil_log2(n), e, "n = {n}");
        }
    }

    #[test]
    fn closed_form_large_examples() {
        assert_eq!(closed_form_large(28, 7).unwrap(), 7);
        assert_eq!(closed_form_large(49, 7).unwrap(), 12);
        assert_eq!(closed_form_large(3, 2).unwrap(), 2);
        assert!(closed_form_large(27, 7).is_err());
        assert_eq!(find_min_l(28, 7).unwrap().l, 7);
        assert_eq!(find_min_l(49, 7).unwrap().l, 12);
    }

    #[test]
    fn closed_form_mid_examples() {
        assert_eq!(closed_form_mid(40, 9, false).unwrap(), 9);
        assert_eq!(closed_form_mid(33, 9, false).unwrap(), 7);
        assert_eq!(closed_form_mid(44, 9, false).unwrap(), 9);
        assert!(closed_form_mid(32, 9, false).is_err());
        assert!(closed_form_mid(45, 9, false).is_err());
        let w = find_min_l(40, 9).unwrap();
        assert_eq!((w.l, w.k), (9, 2));
        assert!(witness_valid(9, 3, 40, 9));
        assert_eq!(find_min_l(33, 9).unwrap().l, 7);
        assert_eq!(find_min_l(44, 9).unwrap().l, 9);
    }

    #[test]
    fn mid_formula_perfect_square_boundary() {
        // Exact-square radicands take the other branch of the ceiling.
        let mut hits = 0;
        for r in 1u64..40 {
            for n in 1u64..400 {
                let x = 96 * n + 48 * r + 16 * r * r - 60;
                let s = (x as f64).sqrt().round() as u64;
                if s * s == x {
                    hits += 1;
                    // (s - 4r - 6) / 4 exactly
                    let num = s as i64 - 4 * r as i64 - 6;
                    let expected = num.div_euclid(4) + i64::from(num.rem_euclid(4) != 0);
                    assert_eq!(mid_formula(n, r) as i64, expected);
                }
            }
        }
        assert!(hits > 0);
    }

    #[test]
    fn witness_n_two_always_valid() {
        for r in 1..8 {
            for n in 2 * r..2 * r + 30 {
                assert!(witness_valid(n, 2, n, r), "n = {n}, r = {r}");
            }
        }
    }
}
