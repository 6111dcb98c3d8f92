use serde::{Deserialize, Serialize};

use crate::action::{ActionSpec, Group};
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

pub(crate) fn schema_version() -> u32 {
    SCHEMA_VERSION
}

/// An ordered collection of subsets of `1..=n`, each stored sorted.
///
/// Member sets are not required to be distinct here; [`crate::verify::is_base`]
/// reports duplicates as a failed base.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BaseFamily {
    n: u32,
    sets: Vec<Vec<u32>>,
}

impl BaseFamily {
    /// Sorts each set; rejects points outside `1..=n` and repeated points.
    pub fn new(n: u32, sets: Vec<Vec<u32>>) -> Result<Self> {
        let mut sets = sets;
        for set in &mut sets {
            set.sort_unstable();
            if let Some(&x) = set.iter().find(|&&x| x == 0 || x > n) {
                return Err(Error::InvalidParameters(format!(
                    "point {x} outside 1..={n}"
                )));
            }
            if set.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameters(format!(
                    "set {set:?} repeats a point"
                )));
            }
        }
        Ok(BaseFamily { n, sets })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn sets(&self) -> &[Vec<u32>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn max_set_size(&self) -> usize {
        self.sets.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_uniform(&self, r: usize) -> bool {
        self.sets.iter().all(|s| s.len() == r)
    }

    /// `N(x)` as sorted member-set indices (0-based), for every point `x`.
    pub fn neighborhoods(&self) -> Vec<Vec<usize>> {
        let mut nb = vec![Vec::new(); self.n as usize];
        for (j, set) in self.sets.iter().enumerate() {
            for &x in set {
                nb[x as usize - 1].push(j);
            }
        }
        nb
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n as usize];
        for set in &self.sets {
            for &x in set {
                deg[x as usize - 1] += 1;
            }
        }
        deg
    }

    /// The same sets viewed on a larger ground set `1..=n`.
    pub fn extend_ground_set(&self, n: u32) -> Result<Self> {
        if n < self.n {
            return Err(Error::InvalidParameters(format!(
                "cannot shrink ground set from {} to {n}",
                self.n
            )));
        }
        Ok(BaseFamily {
            n,
            sets: self.sets.clone(),
        })
    }

    pub(crate) fn from_parts_unchecked(n: u32, sets: Vec<Vec<u32>>) -> Self {
        BaseFamily { n, sets }
    }

    pub fn to_document(&self, spec: &ActionSpec) -> FamilyDocument {
        FamilyDocument {
            schema_version: SCHEMA_VERSION,
            n: u64::from(self.n),
            r: spec.r,
            group: spec.group,
            uniform: spec.uniform,
            sets: self.sets.clone(),
        }
    }
}

/// On-disk form:
/// `{"n": .., "r": .., "group": "S"|"A", "uniform": bool, "sets": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDocument {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub n: u64,
    pub r: u64,
    pub group: Group,
    pub uniform: bool,
    pub sets: Vec<Vec<u32>>,
}

impl FamilyDocument {
    pub fn family(&self) -> Result<BaseFamily> {
        let n = u32::try_from(self.n)
            .map_err(|_| Error::InvalidParameters(format!("n = {} too large", self.n)))?;
        BaseFamily::new(n, self.sets.clone())
    }

    pub fn spec(&self) -> Result<ActionSpec> {
        ActionSpec::new(self.group, self.n, self.r, self.uniform)
    }
}
