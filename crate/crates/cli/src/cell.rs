//! Evaluation of a single `(group, n, r)` cell, shared by `basesize` and `table`.

use serde::Serialize;
use subset_base::{base_size, closed_form, find_min_l, lower_bound, ActionSpec, Group, Result};

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub struct WitnessOut {
    pub l: u64,
    pub k: u64,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ClosedFormOut {
    pub form: &'static str,
    pub value: u64,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Cell {
    pub base_size: u64,
    pub witness: WitnessOut,
    pub lower_bound: u64,
    pub closed_form: Option<ClosedFormOut>,
}

/// Degree of the symmetric action whose witness governs `spec`.
pub fn symmetric_degree(spec: &ActionSpec) -> u64 {
    match spec.group {
        Group::Symmetric => spec.n,
        Group::Alternating => spec.n - 1,
    }
}

pub fn evaluate(spec: &ActionSpec) -> Result<Cell> {
    let b = base_size(spec)?;
    let n = symmetric_degree(spec);
    let w = find_min_l(n, spec.r)?;
    Ok(Cell {
        base_size: b,
        witness: WitnessOut { l: w.l, k: w.k },
        lower_bound: lower_bound(n, spec.r)?,
        closed_form: closed_form(n, spec.r).map(|(form, value)| ClosedFormOut {
            form: form.name(),
            value,
        }),
    })
}

impl Cell {
    pub fn closed_form_agrees(&self) -> Option<bool> {
        self.closed_form.as_ref().map(|c| c.value == self.base_size)
    }
}
