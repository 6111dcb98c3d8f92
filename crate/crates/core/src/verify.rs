//! Independent certification of bases: the neighbourhood-partition criterion,
//! stabiliser counting by enumerating permutations, and counting diagnostics.

use std::collections::{BTreeMap, HashSet};

use num_bigint::{BigInt, BigUint};

use crate::action::{ActionSpec, Group};
use crate::combinatorics::{binomial, m_value};
use crate::error::{Error, Result};
use crate::family::BaseFamily;
use crate::rational::ExactRational;

/// Points grouped by equal neighbourhood; blocks are sorted and ordered by
/// their least point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodPartition {
    pub blocks: Vec<Vec<u32>>,
}

impl NeighborhoodPartition {
    /// Order of the pointwise stabiliser of the family in `Sym(n)`: the
    /// product of the block factorials.
    pub fn stabilizer_order(&self) -> BigUint {
        self.blocks
            .iter()
            .map(|b| (1..=b.len() as u64).product::<BigUint>())
            .product()
    }

    /// Blocks with more than one point.
    pub fn nontrivial(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.blocks.iter().filter(|b| b.len() > 1)
    }
}

pub fn neighborhood_partition(family: &BaseFamily) -> NeighborhoodPartition {
    let mut groups: BTreeMap<Vec<usize>, Vec<u32>> = BTreeMap::new();
    for (i, nb) in family.neighborhoods().into_iter().enumerate() {
        groups.entry(nb).or_default().push(i as u32 + 1);
    }
    let mut blocks: Vec<Vec<u32>> = groups.into_values().collect();
    blocks.sort_by_key(|b| b[0]);
    NeighborhoodPartition { blocks }
}

/// Outcome of checking a family against an action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseReport {
    /// Index pairs of member sets that coincide.
    pub duplicate_sets: Vec<(usize, usize)>,
    pub partition: NeighborhoodPartition,
    pub is_base: bool,
}

impl BaseReport {
    pub fn offending_blocks(&self) -> Vec<&Vec<u32>> {
        self.partition.nontrivial().collect()
    }
}

fn check_sizes(family: &BaseFamily, spec: &ActionSpec) -> Result<()> {
    if u64::from(family.n()) != spec.n {
        return Err(Error::InvalidParameters(format!(
            "family is on 1..={} but the action has n = {}",
            family.n(),
            spec.n
        )));
    }
    for (index, set) in family.sets().iter().enumerate() {
        if !spec.admits_size(set.len()) {
            return Err(Error::SizeMode {
                index,
                size: set.len(),
                expected: if spec.uniform {
                    format!("exactly {}", spec.r)
                } else {
                    format!("at most {}", spec.r)
                },
            });
        }
    }
    Ok(())
}

/// Full report for [`is_base`]. Symmetric: sets distinct and every block a
/// singleton. Alternating: sets distinct and at most one block of size two,
/// the rest singletons (the stabiliser is then trivial or generated by a
/// single transposition, which is odd).
pub fn check_base(family: &BaseFamily, spec: &ActionSpec) -> Result<BaseReport> {
    spec.check()?;
    check_sizes(family, spec)?;
    let mut first_seen: std::collections::HashMap<&Vec<u32>, usize> = Default::default();
    let mut duplicate_sets = Vec::new();
    for (j, set) in family.sets().iter().enumerate() {
        if let Some(&i) = first_seen.get(set) {
            duplicate_sets.push((i, j));
        } else {
            first_seen.insert(set, j);
        }
    }
    let partition = neighborhood_partition(family);
    let separated = match spec.group {
        Group::Symmetric => partition.nontrivial().next().is_none(),
        Group::Alternating => {
            let big: Vec<_> = partition.nontrivial().collect();
            big.is_empty() || (big.len() == 1 && big[0].len() == 2)
        }
    };
    Ok(BaseReport {
        is_base: duplicate_sets.is_empty() && separated,
        duplicate_sets,
        partition,
    })
}

pub fn is_base(family: &BaseFamily, spec: &ActionSpec) -> Result<bool> {
    Ok(check_base(family, spec)?.is_base)
}

pub const ENUMERATION_LIMIT: u32 = 10;

/// Counts of permutations of `1..=n` mapping every member set onto itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerCount {
    pub order: BigUint,
    pub even: BigUint,
}

/// Enumerates all `n!` permutations (Heap's algorithm, which alternates
/// parity at every step) and counts those with `B^g = B` for every member `B`.
pub fn stabilizer_order_bruteforce(family: &BaseFamily) -> Result<StabilizerCount> {
    let n = family.n() as usize;
    if n > ENUMERATION_LIMIT as usize {
        return Err(Error::GuardExceeded(format!(
            "permutation enumeration limited to n <= {ENUMERATION_LIMIT}"
        )));
    }
    let masks: Vec<u16> = family
        .sets()
        .iter()
        .map(|s| s.iter().fold(0u16, |m, &x| m | 1 << (x - 1)))
        .collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let fixes = |perm: &[usize]| {
        masks.iter().all(|&m| {
            let mut image = 0u16;
            let mut rest = m;
            while rest != 0 {
                image |= 1 << perm[rest.trailing_zeros() as usize];
                rest &= rest - 1;
            }
            image == m
        })
    };

    let (mut order, mut even) = (0u64, 0u64);
    let mut is_even = true;
    let mut tally = |perm: &[usize], is_even: bool| {
        if fixes(perm) {
            order += 1;
            even += u64::from(is_even);
        }
    };
    tally(&perm, is_even);
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            is_even = !is_even;
            tally(&perm, is_even);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(StabilizerCount {
        order: order.into(),
        even: even.into(),
    })
}

/// `sum_x |N(x)| == |B| r` for a family of `r`-sets.
pub fn double_count_check(family: &BaseFamily, r: usize) -> Result<bool> {
    if let Some((index, set)) = family.sets().iter().enumerate().find(|(_, s)| s.len() != r) {
        return Err(Error::SizeMode {
            index,
            size: set.len(),
            expected: format!("exactly {r}"),
        });
    }
    let incidences: usize = family.degrees().iter().sum();
    Ok(incidences == family.len() * r)
}

/// Points split by degree: `below` has degree `< k`, `at_or_above` `>= k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdPartition {
    pub below: Vec<u32>,
    pub at_or_above: Vec<u32>,
}

pub fn degree_threshold_partition(family: &BaseFamily, k: usize) -> ThresholdPartition {
    let (mut below, mut at_or_above) = (Vec::new(), Vec::new());
    for (i, d) in family.degrees().into_iter().enumerate() {
        if d < k {
            below.push(i as u32 + 1);
        } else {
            at_or_above.push(i as u32 + 1);
        }
    }
    ThresholdPartition { below, at_or_above }
}

/// How a base of size `l` for sets of size at most `r` sits against the
/// counting argument at threshold `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingDiagnostic {
    pub partition: ThresholdPartition,
    pub m: ExactRational,
    /// `ceil(m_r(l, k))`, the estimate of how many points reach degree `k`.
    pub estimate: BigInt,
    /// Total degree over points of degree at least `k`.
    pub high_degree_sum: usize,
    /// `sum_{i<k} C(l, i) + m_r(l, k) >= n`, which every base must satisfy.
    pub covers_n: bool,
    /// For uniform families: `high_degree_sum >= k m_r(l, k)`. Always true
    /// otherwise.
    pub high_degree_bound: bool,
}

impl CountingDiagnostic {
    pub fn consistent(&self) -> bool {
        self.covers_n && self.high_degree_bound
    }
}

pub fn counting_diagnostic(family: &BaseFamily, k: usize, r: usize) -> Result<CountingDiagnostic> {
    if k == 0 || r == 0 || family.is_empty() {
        return Err(Error::InvalidParameters(
            "need k, r >= 1 and a non-empty family".into(),
        ));
    }
    let l = family.len() as u64;
    let m = m_value(l, k as u64, r as u64);
    let degrees = family.degrees();
    let partition = degree_threshold_partition(family, k);
    let high_degree_sum: usize = degrees.iter().filter(|&&d| d >= k).sum();
    let below_count: BigInt = (0..k as u64).map(|i| BigInt::from(binomial(l, i))).sum();
    let covers_n = (&ExactRational::from_integer(below_count) + &m)
        .cmp_integer(&BigInt::from(family.n()))
        .is_ge();
    let high_degree_bound = !family.is_uniform(r)
        || ExactRational::from_integer(high_degree_sum as u64)
            >= &ExactRational::from_integer(k as u64) * &m;
    Ok(CountingDiagnostic {
        estimate: m.ceil(),
        partition,
        m,
        high_degree_sum,
        covers_n,
        high_degree_bound,
    })
}

pub(crate) fn sets_distinct(sets: &[Vec<u32>]) -> bool {
    let mut seen = HashSet::with_capacity(sets.len());
    sets.iter().all(|s| seen.insert(s))
}
