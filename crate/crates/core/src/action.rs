use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Group {
    #[serde(rename = "S")]
    Symmetric,
    #[serde(rename = "A")]
    Alternating,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::Symmetric => "S",
            Group::Alternating => "A",
        })
    }
}

/// Identifies an action: `group` of degree `n` acting on subsets of `1..=n`
/// of size exactly `r` (`uniform`) or at most `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ActionSpec {
    pub group: Group,
    pub n: u64,
    pub r: u64,
    pub uniform: bool,
}

impl ActionSpec {
    pub fn new(group: Group, n: u64, r: u64, uniform: bool) -> Result<Self> {
        let spec = ActionSpec {
            group,
            n,
            r,
            uniform,
        };
        spec.check()?;
        Ok(spec)
    }

    pub fn symmetric(n: u64, r: u64) -> Result<Self> {
        Self::new(Group::Symmetric, n, r, true)
    }

    pub fn alternating(n: u64, r: u64) -> Result<Self> {
        Self::new(Group::Alternating, n, r, true)
    }

    pub fn at_most(self) -> Self {
        ActionSpec {
            uniform: false,
            ..self
        }
    }

    /// Symmetric requires `n >= 2r`, alternating `n >= 2r + 1`; `r >= 1`.
    pub fn check(&self) -> Result<()> {
        if self.r == 0 {
            return Err(Error::Domain("r must be positive".into()));
        }
        let min_n = match self.group {
            Group::Symmetric => 2 * self.r,
            Group::Alternating => 2 * self.r + 1,
        };
        if self.n < min_n {
            return Err(Error::Domain(format!(
                "{}_{{{},{}}} requires n >= {}",
                self.group, self.n, self.r, min_n
            )));
        }
        Ok(())
    }

    /// Whether a member set of `size` elements belongs to the acted-on set.
    pub fn admits_size(&self, size: usize) -> bool {
        let size = size as u64;
        if self.uniform {
            size == self.r
        } else {
            size <= self.r
        }
    }
}

impl fmt::Display for ActionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.uniform { "" } else { "<=" };
        write!(f, "{}_{{{},{}{}}}", self.group, self.n, rel, self.r)
    }
}
