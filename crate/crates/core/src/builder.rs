//! Construction of certified minimum bases.
//!
//! The pipeline for `S_{n,r}` is: find the witness `(l, k)`, assemble an
//! `(l, n, r)`-hypergraph, dualise it with points numbered in simplicial order
//! (a base for `S_{n,<=r}`), then pad every set to size `r`. The alternating
//! group reuses the symmetric construction on one fewer point.

use std::collections::HashMap;

use crate::action::{ActionSpec, Group};
use crate::combinatorics::{base_size, binomial, find_min_l, witness_valid, Witness};
use crate::error::{Error, Result};
use crate::family::BaseFamily;
use crate::hypergraph::Hypergraph;
use crate::realize::nearly_regular_uniform;
use crate::subsets::simplicial_prefix;
use crate::verify::{check_base, is_base, sets_distinct};

/// Largest ground set the construction accepts.
pub const CONSTRUCTION_N_LIMIT: u64 = 100_000;

/// Node budget for [`lift_to_uniform`].
pub const LIFT_NODE_BUDGET: u64 = 5_000_000;

fn simplicial_key(edge: &[u32]) -> (usize, &[u32]) {
    (edge.len(), edge)
}

/// An `(l, n, r)`-hypergraph from a valid witness.
///
/// All edges of size below `k` come first (empty edge, singletons, then by size
/// and lexicographically), followed by a nearly-regular `k`-uniform hypergraph
/// with `floor(m_r(l, k))` edges. Surplus edges are then removed from the end of
/// that list until exactly `n` remain; only edges of size at least two are ever
/// removed, so every vertex keeps its singleton and neighbourhoods stay distinct.
pub fn build_lnr_hypergraph(n: u64, r: u64, witness: &Witness) -> Result<Hypergraph> {
    let (l, k) = (witness.l, witness.k);
    if !witness_valid(l, k, n, r) {
        return Err(Error::InvalidParameters(format!(
            "(l, k) = ({l}, {k}) is not a witness for n = {n}, r = {r}"
        )));
    }
    if n > CONSTRUCTION_N_LIMIT {
        return Err(Error::GuardExceeded(format!(
            "construction limited to n <= {CONSTRUCTION_N_LIMIT}"
        )));
    }
    let l32 = u32::try_from(l).map_err(|_| Error::GuardExceeded("l too large".into()))?;
    let k32 = k as u32;

    let mut edges = simplicial_prefix(l32, k32);
    let top = witness.top_edges();
    let lower_degree: u64 = (1..k)
        .map(|i| binomial(l - 1, i - 1))
        .sum::<num_bigint::BigUint>()
        .try_into()
        .map_err(|_| Error::Internal("degree overflow".into()))?;
    if top > 0 {
        let upper = nearly_regular_uniform(l32, k32, top)?;
        let cap = r.checked_sub(lower_degree).ok_or_else(|| {
            Error::Internal(format!("edges below size {k} already exceed degree {r}"))
        })?;
        if upper.max_degree() as u64 > cap {
            return Err(Error::Internal(format!(
                "uniform layer has degree {} above {cap}",
                upper.max_degree()
            )));
        }
        edges.extend(upper.edges().iter().cloned());
    }

    let target = n as usize;
    if edges.len() < target {
        return Err(Error::Internal(format!(
            "assembled {} edges, need {target}",
            edges.len()
        )));
    }
    let mut hypergraph = Hypergraph::new(l32, edges.clone())?;
    while edges.len() > target {
        let last = edges.last().expect("non-empty");
        if last.len() < 2 {
            return Err(Error::Internal(
                "surplus removal reached singleton edges".into(),
            ));
        }
        edges.pop();
        hypergraph = Hypergraph::new(l32, edges.clone())?;
        if !hypergraph.is_irrepeating() {
            return Err(Error::Internal("edge removal broke irrepeatingness".into()));
        }
    }
    if !hypergraph.is_lnr(l32, target, r as usize) {
        return Err(Error::Internal(format!(
            "assembled hypergraph is not an ({l}, {n}, {r})-hypergraph"
        )));
    }
    Ok(hypergraph)
}

/// The family of dual edges, with dual vertices numbered `1..=|E(H)|` by the
/// simplicial order (size, then lexicographic) of the corresponding edges of
/// `H`. The `u`-th set lists the edges containing vertex `u`.
pub fn hypergraph_to_base(hypergraph: &Hypergraph) -> Result<BaseFamily> {
    if !hypergraph.is_irrepeating() {
        return Err(Error::NotIrrepeating);
    }
    let edges = hypergraph.edges();
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by(|&a, &b| simplicial_key(&edges[a]).cmp(&simplicial_key(&edges[b])));
    let mut label = vec![0u32; edges.len()];
    for (rank, &j) in order.iter().enumerate() {
        label[j] = rank as u32 + 1;
    }
    let dual = hypergraph.dual_unchecked();
    let sets = dual
        .edges()
        .iter()
        .map(|e| {
            let mut s: Vec<u32> = e.iter().map(|&j| label[j as usize - 1]).collect();
            s.sort_unstable();
            s
        })
        .collect();
    Ok(BaseFamily::from_parts_unchecked(edges.len() as u32, sets))
}

/// Pads every set of a base for `S_{n,<=r}` to exactly `r` points so that the
/// result is a base for `S_{n,r}` of the same size.
///
/// Depth-first over padding slots. Points added to one set are taken in
/// increasing label order, so each padding is visited once; candidates are
/// tried by (neighbourhood collisions after the move, label). A branch is cut
/// when the colliding points outnumber the slots left to separate them, or when
/// a completed set repeats another full set.
pub fn lift_to_uniform(family: &BaseFamily, n: u64, r: u64) -> Result<BaseFamily> {
    lift_with_budget(family, n, r, LIFT_NODE_BUDGET)
}

pub fn lift_with_budget(family: &BaseFamily, n: u64, r: u64, budget: u64) -> Result<BaseFamily> {
    let spec = ActionSpec::symmetric(n, r)?;
    if !is_base(family, &spec.at_most())? {
        return Err(Error::NotABase(format!(
            "input is not a base for {}",
            spec.at_most()
        )));
    }
    let r = r as usize;
    if family.is_uniform(r) {
        return Ok(family.clone());
    }

    let mut lift = Lift::new(family, r);
    match lift.search(0, budget) {
        Outcome::Found => {}
        Outcome::Exhausted => return Err(Error::LiftExhausted),
        Outcome::OverBudget => return Err(Error::LiftBudgetExceeded(budget)),
    }
    let mut sets = lift.sets;
    for s in &mut sets {
        s.sort_unstable();
    }
    let lifted = BaseFamily::new(family.n(), sets)?;
    if !is_base(&lifted, &spec)? {
        return Err(Error::Internal("lifted family failed verification".into()));
    }
    Ok(lifted)
}

enum Outcome {
    Found,
    Exhausted,
    OverBudget,
}

struct Lift {
    r: usize,
    sets: Vec<Vec<u32>>,
    member: Vec<Vec<bool>>,
    /// Neighbourhood of each point as a bitset over set indices.
    nb: Vec<Vec<u64>>,
    counts: HashMap<Vec<u64>, u32>,
    /// Number of points sharing a neighbourhood with an earlier point.
    excess: usize,
    /// (set index, is last slot of that set)
    slots: Vec<(usize, bool)>,
    nodes: u64,
}

impl Lift {
    fn new(family: &BaseFamily, r: usize) -> Self {
        let n = family.n() as usize;
        let words = family.len().div_ceil(64).max(1);
        let mut nb = vec![vec![0u64; words]; n];
        let mut member = vec![vec![false; n + 1]; family.len()];
        for (j, set) in family.sets().iter().enumerate() {
            for &x in set {
                nb[x as usize - 1][j / 64] |= 1 << (j % 64);
                member[j][x as usize] = true;
            }
        }
        let mut counts: HashMap<Vec<u64>, u32> = HashMap::new();
        for key in &nb {
            *counts.entry(key.clone()).or_default() += 1;
        }
        let excess = counts.values().map(|&c| c as usize - 1).sum();
        let mut slots = Vec::new();
        for (j, set) in family.sets().iter().enumerate() {
            let deficit = r - set.len();
            for p in 0..deficit {
                slots.push((j, p + 1 == deficit));
            }
        }
        Lift {
            r,
            sets: family.sets().to_vec(),
            member,
            nb,
            counts,
            excess,
            slots,
            nodes: 0,
        }
    }

    fn toggle(&mut self, x: usize, j: usize, add: bool) {
        let old = self.nb[x].clone();
        let c = self.counts.get_mut(&old).expect("tracked");
        *c -= 1;
        if *c == 0 {
            self.counts.remove(&old);
        } else {
            self.excess -= 1;
        }
        if add {
            self.nb[x][j / 64] |= 1 << (j % 64);
        } else {
            self.nb[x][j / 64] &= !(1 << (j % 64));
        }
        let c = self.counts.entry(self.nb[x].clone()).or_default();
        *c += 1;
        if *c > 1 {
            self.excess += 1;
        }
    }

    /// Collision excess if point `x` joined set `j`.
    fn excess_after(&self, x: usize, j: usize) -> usize {
        let old = &self.nb[x];
        let mut new = old.clone();
        new[j / 64] |= 1 << (j % 64);
        let leaving = usize::from(self.counts[old] > 1);
        let arriving = usize::from(self.counts.get(&new).copied().unwrap_or(0) >= 1);
        self.excess - leaving + arriving
    }

    fn search(&mut self, slot: usize, budget: u64) -> Outcome {
        self.nodes += 1;
        if self.nodes > budget {
            return Outcome::OverBudget;
        }
        let remaining = self.slots.len() - slot;
        if self.excess > remaining {
            return Outcome::Exhausted;
        }
        if remaining == 0 {
            return Outcome::Found;
        }
        let (j, closes) = self.slots[slot];
        let floor = if slot > 0 && self.slots[slot - 1].0 == j {
            *self.sets[j].last().expect("padded") as usize + 1
        } else {
            1
        };
        let n = self.nb.len();
        let mut candidates: Vec<(usize, usize)> = (floor..=n)
            .filter(|&x| !self.member[j][x])
            .map(|x| (self.excess_after(x - 1, j), x))
            .collect();
        candidates.sort_unstable();
        for (_, x) in candidates {
            self.sets[j].push(x as u32);
            self.member[j][x] = true;
            self.toggle(x - 1, j, true);
            let clash = closes && self.repeats_full_set(j);
            if !clash {
                match self.search(slot + 1, budget) {
                    Outcome::Exhausted => {}
                    other => return other,
                }
            }
            self.toggle(x - 1, j, false);
            self.member[j][x] = false;
            self.sets[j].pop();
        }
        Outcome::Exhausted
    }

    fn repeats_full_set(&self, j: usize) -> bool {
        let mut mine = self.sets[j].clone();
        mine.sort_unstable();
        self.sets.iter().enumerate().any(|(i, s)| {
            if i == j || s.len() != self.r {
                return false;
            }
            let mut other = s.clone();
            other.sort_unstable();
            other == mine
        })
    }
}

/// Every stage of a construction, for inspection and export.
#[derive(Debug, Clone)]
pub struct Construction {
    pub spec: ActionSpec,
    pub witness: Witness,
    /// The `(l, n', r)`-hypergraph, where `n' = n` for the symmetric group and
    /// `n - 1` for the alternating group.
    pub hypergraph: Hypergraph,
    /// Base for the at-most action before padding.
    pub at_most: BaseFamily,
    pub family: BaseFamily,
}

pub fn construct(spec: &ActionSpec) -> Result<Construction> {
    spec.check()?;
    if spec.n > CONSTRUCTION_N_LIMIT {
        return Err(Error::GuardExceeded(format!(
            "construction limited to n <= {CONSTRUCTION_N_LIMIT}"
        )));
    }
    let inner_n = match spec.group {
        Group::Symmetric => spec.n,
        Group::Alternating => spec.n - 1,
    };
    let witness = find_min_l(inner_n, spec.r)?;
    let hypergraph = build_lnr_hypergraph(inner_n, spec.r, &witness)?;
    let at_most = hypergraph_to_base(&hypergraph)?;
    let mut family = if spec.uniform {
        lift_to_uniform(&at_most, inner_n, spec.r)?
    } else {
        at_most.clone()
    };
    if spec.group == Group::Alternating {
        family = family.extend_ground_set(spec.n as u32)?;
    }

    let report = check_base(&family, spec)?;
    if !report.is_base || !sets_distinct(family.sets()) {
        return Err(Error::Internal(format!(
            "constructed family is not a base for {spec}"
        )));
    }
    if family.len() as u64 != base_size(spec)? {
        return Err(Error::Internal(
            "constructed family has the wrong size".into(),
        ));
    }
    Ok(Construction {
        spec: *spec,
        witness,
        hypergraph,
        at_most,
        family,
    })
}

/// A verified minimum base for `spec`.
pub fn construct_base(spec: &ActionSpec) -> Result<BaseFamily> {
    Ok(construct(spec)?.family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::double_count_check;

    const EXAMPLE: [&[u32]; 5] = [
        &[2, 7, 8, 9, 10, 17],
        &[3, 7, 11, 12, 13, 17],
        &[4, 8, 11, 14, 15, 18],
        &[5, 9, 12, 14, 16, 18],
        &[6, 10, 13, 15, 16, 17, 18],
    ];

    fn example_family() -> BaseFamily {
        BaseFamily::new(18, EXAMPLE.iter().map(|s| s.to_vec()).collect()).unwrap()
    }

    #[test]
    fn example_hypergraph() {
        let w = find_min_l(18, 7).unwrap();
        let h = build_lnr_hypergraph(18, 7, &w).unwrap();
        assert_eq!(h.edge_count(), 18);
        assert!(h.is_lnr(5, 18, 7));
        let triples: Vec<_> = h.edges().iter().filter(|e| e.len() == 3).collect();
        assert_eq!(triples, vec![&vec![3, 4, 5], &vec![1, 2, 5]]);
        assert_eq!(h.edges()[..16].iter().filter(|e| e.len() == 2).count(), 10);
    }

    #[test]
    fn example_family_reproduced() {
        let w = find_min_l(18, 7).unwrap();
        let h = build_lnr_hypergraph(18, 7, &w).unwrap();
        assert_eq!(hypergraph_to_base(&h).unwrap(), example_family());
    }

    #[test]
    fn k_equals_one() {
        let w = find_min_l(5, 1).unwrap();
        assert_eq!((w.l, w.k), (4, 1));
        let h = build_lnr_hypergraph(5, 1, &w).unwrap();
        let mut edges = h.edges().to_vec();
        edges.sort_by(|a, b| simplicial_key(a).cmp(&simplicial_key(b)));
        assert_eq!(edges, [vec![], vec![1], vec![2], vec![3], vec![4]]);
        assert_eq!(h.max_degree(), 1);
        let base = hypergraph_to_base(&h).unwrap();
        assert_eq!(base.sets(), &[vec![2], vec![3], vec![4], vec![5]]);
    }

    #[test]
    fn n_equals_two_r() {
        let w = find_min_l(8, 4).unwrap();
        let h = build_lnr_hypergraph(8, 4, &w).unwrap();
        assert_eq!(h.edge_count(), 8);
        assert!(h.is_lnr(3, 8, 4));
        assert_eq!(h.edges().last().unwrap(), &vec![1, 2, 3]);
        let base = hypergraph_to_base(&h).unwrap();
        let spec = ActionSpec::symmetric(8, 4).unwrap();
        assert!(is_base(&base, &spec.at_most()).unwrap());
        assert_eq!(base.len(), 3);
    }

    #[test]
    fn surplus_below_k_removed() {
        // witness (4, 3): 11 edges of size < 3 already exceed n = 10
        let w = find_min_l(10, 5).unwrap();
        assert_eq!((w.l, w.k), (4, 3));
        let h = build_lnr_hypergraph(10, 5, &w).unwrap();
        assert!(h.is_lnr(4, 10, 5));
        assert!(h.edges().iter().all(|e| e.len() <= 2));
    }

    #[test]
    fn rejects_invalid_witness() {
        let mut w = find_min_l(18, 7).unwrap();
        w.l = 4;
        assert!(matches!(
            build_lnr_hypergraph(18, 7, &w),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn small_dual_example() {
        let h = Hypergraph::new(2, vec![vec![], vec![1], vec![1, 2]]).unwrap();
        let b = hypergraph_to_base(&h).unwrap();
        assert_eq!(b.n(), 3);
        assert_eq!(b.sets(), &[vec![2, 3], vec![3]]);
        let bad = Hypergraph::new(2, vec![vec![1, 2]]).unwrap();
        assert_eq!(hypergraph_to_base(&bad), Err(Error::NotIrrepeating));
    }

    #[test]
    fn simplicial_relabelling_sorts_edges() {
        // edges listed out of order still get size-then-lex labels
        let h = Hypergraph::new(2, vec![vec![1, 2], vec![2], vec![], vec![1]]).unwrap();
        let b = hypergraph_to_base(&h).unwrap();
        assert_eq!(b.sets(), &[vec![2, 4], vec![3, 4]]);
    }

    #[test]
    fn lift_examples() {
        let spec = ActionSpec::symmetric(18, 7).unwrap();
        let lifted = lift_to_uniform(&example_family(), 18, 7).unwrap();
        assert_eq!(lifted.len(), 5);
        assert!(is_base(&lifted, &spec).unwrap());
        for (orig, new) in example_family().sets().iter().zip(lifted.sets()) {
            assert!(orig.iter().all(|x| new.contains(x)));
        }

        let singles = BaseFamily::new(5, vec![vec![1], vec![2], vec![3], vec![4]]).unwrap();
        assert_eq!(lift_to_uniform(&singles, 5, 1).unwrap(), singles);

        let not_base = BaseFamily::new(4, vec![vec![1, 2]]).unwrap();
        assert!(matches!(
            lift_to_uniform(&not_base, 4, 2),
            Err(Error::NotABase(_))
        ));
    }

    #[test]
    fn lift_budget_reported() {
        let at_most = example_family();
        assert_eq!(
            lift_with_budget(&at_most, 18, 7, 1).unwrap_err(),
            Error::LiftBudgetExceeded(1)
        );
    }

    #[test]
    fn construct_examples() {
        let spec = ActionSpec::symmetric(18, 7).unwrap();
        let c = construct(&spec).unwrap();
        assert_eq!(c.at_most, example_family());
        assert_eq!(c.family.len(), 5);
        assert!(double_count_check(&c.family, 7).unwrap());

        let a = ActionSpec::alternating(19, 7).unwrap();
        let fam = construct_base(&a).unwrap();
        assert_eq!(fam.len(), 5);
        assert_eq!(fam.n(), 19);
        assert!(fam.sets().iter().all(|s| !s.contains(&19)));
        assert!(is_base(&fam, &a).unwrap());

        let s51 = ActionSpec::symmetric(5, 1).unwrap();
        let fam = construct_base(&s51).unwrap();
        assert_eq!(fam.sets(), &[vec![2], vec![3], vec![4], vec![5]]);

        let at_most = construct_base(&spec.at_most()).unwrap();
        assert_eq!(at_most, example_family());
    }

    #[test]
    fn construct_is_deterministic() {
        let spec = ActionSpec::symmetric(40, 9).unwrap();
        assert_eq!(
            construct_base(&spec).unwrap(),
            construct_base(&spec).unwrap()
        );
    }
}
