//! Exhaustive minimum-base search for small actions, used as an oracle.

use crate::action::{ActionSpec, Group};
use crate::error::{Error, Result};
use crate::family::BaseFamily;

pub const SEARCH_N_LIMIT: u64 = 9;
pub const SEARCH_R_LIMIT: u64 = 4;

/// `b(G)` by exhaustive search over families of `r`-sets (or sets of size at
/// most `r`), independent of the witness formula.
pub fn brute_force_base_size(spec: &ActionSpec) -> Result<u64> {
    spec.check()?;
    Ok(exhaustive_min_base(spec.group, spec.n, spec.r, spec.uniform)?.len() as u64)
}

/// A smallest base found by depth-first search. Unlike
/// [`brute_force_base_size`] this does not require `n >= 2r`.
///
/// Since base-ness is invariant under relabelling points, one member can be
/// taken to be `{1, .., s}`; the remaining members are distinct candidates in
/// increasing lexicographic order. A prefix is abandoned when some block of
/// equal neighbourhoods is too large to be split by the sets still to come
/// (each set at most doubles the number of parts of a block).
pub fn exhaustive_min_base(group: Group, n: u64, r: u64, uniform: bool) -> Result<BaseFamily> {
    if n > SEARCH_N_LIMIT || r > SEARCH_R_LIMIT {
        return Err(Error::GuardExceeded(format!(
            "exhaustive search limited to n <= {SEARCH_N_LIMIT}, r <= {SEARCH_R_LIMIT}"
        )));
    }
    if n == 0 || r == 0 {
        return Err(Error::Domain("n and r must be positive".into()));
    }
    let n = n as usize;
    let r = r as usize;

    let mut candidates: Vec<Vec<usize>> = (0u32..1 << n)
        .filter(|m| {
            let size = m.count_ones() as usize;
            if uniform {
                size == r
            } else {
                size <= r
            }
        })
        .map(|m| (0..n).filter(|x| m >> x & 1 == 1).collect())
        .collect();
    candidates.sort();

    let first_sizes: Vec<usize> = if uniform {
        if r > n {
            vec![]
        } else {
            vec![r]
        }
    } else {
        (0..=r.min(n)).collect()
    };

    let mut search = Search {
        group,
        candidates: &candidates,
        chosen: Vec::new(),
        nb: vec![0; n],
    };
    if search.accepts() {
        return BaseFamily::new(n as u32, Vec::new());
    }
    for l in 1..=candidates.len() {
        for &s in &first_sizes {
            let first: Vec<usize> = (0..s).collect();
            let first_idx = candidates
                .binary_search(&first)
                .expect("initial segment is a candidate");
            search.push(first_idx);
            let found = search.extend(0, first_idx, l - 1);
            if found {
                let sets = search
                    .chosen
                    .iter()
                    .map(|&i| candidates[i].iter().map(|&x| x as u32 + 1).collect())
                    .collect();
                return BaseFamily::new(n as u32, sets);
            }
            search.pop();
        }
    }
    Err(Error::Domain(format!(
        "{group} of degree {n} has no base of {}{r}-sets",
        if uniform { "" } else { "at most " }
    )))
}

struct Search<'c> {
    group: Group,
    candidates: &'c [Vec<usize>],
    chosen: Vec<usize>,
    /// Bitmask of chosen member positions containing each point.
    nb: Vec<u64>,
}

impl Search<'_> {
    fn push(&mut self, idx: usize) {
        let bit = 1u64 << self.chosen.len();
        for &x in &self.candidates[idx] {
            self.nb[x] |= bit;
        }
        self.chosen.push(idx);
    }

    fn pop(&mut self) {
        let idx = self.chosen.pop().expect("non-empty");
        let bit = !(1u64 << self.chosen.len());
        for &x in &self.candidates[idx] {
            self.nb[x] &= bit;
        }
    }

    fn block_sizes(&self) -> Vec<usize> {
        let mut keys = self.nb.clone();
        keys.sort_unstable();
        let mut sizes = Vec::new();
        let mut i = 0;
        while i < keys.len() {
            let j = keys[i..]
                .iter()
                .position(|&k| k != keys[i])
                .map_or(keys.len(), |p| i + p);
            sizes.push(j - i);
            i = j;
        }
        sizes
    }

    /// Whether the current blocks can still be refined into an acceptable
    /// partition using `remaining` more sets.
    fn feasible(&self, remaining: usize) -> bool {
        let parts = if remaining >= 16 {
            usize::MAX
        } else {
            1usize << remaining
        };
        let sizes = self.block_sizes();
        match self.group {
            Group::Symmetric => sizes.iter().all(|&b| b <= parts),
            Group::Alternating => {
                let over: Vec<usize> = sizes.into_iter().filter(|&b| b > parts).collect();
                over.is_empty() || (over.len() == 1 && over[0] <= parts.saturating_add(1))
            }
        }
    }

    fn accepts(&self) -> bool {
        let sizes = self.block_sizes();
        match self.group {
            Group::Symmetric => sizes.iter().all(|&b| b == 1),
            Group::Alternating => {
                let big: Vec<usize> = sizes.into_iter().filter(|&b| b > 1).collect();
                big.is_empty() || big == [2]
            }
        }
    }

    fn extend(&mut self, start: usize, skip: usize, remaining: usize) -> bool {
        if remaining == 0 {
            return self.accepts();
        }
        if !self.feasible(remaining) {
            return false;
        }
        for idx in start..self.candidates.len() {
            if idx == skip {
                continue;
            }
            self.push(idx);
            if self.extend(idx + 1, skip, remaining - 1) {
                return true;
            }
            self.pop();
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::is_base;

    #[test]
    fn examples() {
        let s84 = ActionSpec::symmetric(8, 4).unwrap();
        assert_eq!(brute_force_base_size(&s84).unwrap(), 3);
        let s52 = ActionSpec::symmetric(5, 2).unwrap();
        assert_eq!(brute_force_base_size(&s52).unwrap(), 3);
        let a73 = ActionSpec::alternating(7, 3).unwrap();
        assert_eq!(
            brute_force_base_size(&a73).unwrap(),
            crate::find_min_l(6, 3).unwrap().l
        );
    }

    #[test]
    fn returned_family_is_a_base() {
        for (n, r) in [(5, 2), (6, 3), (7, 2)] {
            let spec = ActionSpec::symmetric(n, r).unwrap();
            let f = exhaustive_min_base(Group::Symmetric, n, r, true).unwrap();
            assert!(is_base(&f, &spec).unwrap());
            let f = exhaustive_min_base(Group::Symmetric, n, r, false).unwrap();
            assert!(is_base(&f, &spec.at_most()).unwrap());
        }
    }

    #[test]
    fn below_two_r() {
        // S_3 on 2-subsets is S_3 on points: base size 2
        let f = exhaustive_min_base(Group::Symmetric, 3, 2, true).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(crate::closed_form_large(3, 2).unwrap(), 2);
    }

    #[test]
    fn guards() {
        assert!(matches!(
            exhaustive_min_base(Group::Symmetric, 10, 2, true),
            Err(Error::GuardExceeded(_))
        ));
        assert!(matches!(
            exhaustive_min_base(Group::Symmetric, 9, 5, true),
            Err(Error::GuardExceeded(_))
        ));
        assert!(brute_force_base_size(&ActionSpec {
            group: Group::Symmetric,
            n: 5,
            r: 3,
            uniform: true
        })
        .is_err());
    }

    #[test]
    fn trivial_cases() {
        // S_1: the empty family already works
        assert_eq!(
            exhaustive_min_base(Group::Symmetric, 1, 1, true)
                .unwrap()
                .len(),
            0
        );
        // A_2 is trivial
        assert_eq!(
            exhaustive_min_base(Group::Alternating, 2, 1, true)
                .unwrap()
                .len(),
            0
        );
    }
}
