//! Seeded random `(l, n, r)`-hypergraphs for property suites.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

pub const RANDOM_VERTEX_LIMIT: u32 = 16;
const ATTEMPTS: u32 = 200;

/// A pseudo-random irrepeating hypergraph with `l` vertices, `n` edges and
/// maximum degree at most `r`, fully determined by `seed`.
///
/// Each attempt draws distinct edges one at a time, favouring small edges,
/// among subsets that keep every degree at most `r`; vertices left with equal
/// neighbourhoods are then separated by local edits (drop one of the pair from
/// an edge holding both, or add it to an edge holding neither). Fails with
/// [`Error::RetryBudgetExhausted`] when every attempt gets stuck, which signals
/// parameters too tight for sampling.
pub fn random_irrepeating(l: u32, n: usize, r: usize, seed: u64) -> Result<Hypergraph> {
    if l == 0 || l > RANDOM_VERTEX_LIMIT {
        return Err(Error::GuardExceeded(format!(
            "random generation supports 1..={RANDOM_VERTEX_LIMIT} vertices"
        )));
    }
    if (n as u64) > 1u64 << l {
        return Err(Error::InvalidParameters(format!(
            "{n} distinct edges do not fit on {l} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        if let Some(edges) = attempt(l, n, r, &mut rng) {
            let edges = edges.into_iter().map(|m| mask_to_edge(m, l)).collect();
            return Hypergraph::new(l, edges);
        }
    }
    Err(Error::RetryBudgetExhausted(ATTEMPTS))
}

fn mask_to_edge(mask: u32, l: u32) -> Vec<u32> {
    (0..l)
        .filter(|v| mask >> v & 1 == 1)
        .map(|v| v + 1)
        .collect()
}

fn attempt(l: u32, n: usize, r: usize, rng: &mut ChaCha8Rng) -> Option<Vec<u32>> {
    let mut degree = vec![0usize; l as usize];
    let mut used: HashSet<u32> = HashSet::new();
    let mut edges: Vec<u32> = Vec::with_capacity(n);

    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); l as usize + 1];
    for m in 0u32..1 << l {
        by_size[m.count_ones() as usize].push(m);
    }

    while edges.len() < n {
        let feasible: Vec<Vec<u32>> = by_size
            .iter()
            .map(|ms| {
                ms.iter()
                    .copied()
                    .filter(|m| !used.contains(m) && fits(*m, &degree, r))
                    .collect()
            })
            .collect();
        // size weight halves with each extra element
        let weights: Vec<f64> = feasible
            .iter()
            .enumerate()
            .map(|(s, ms)| {
                if ms.is_empty() {
                    0.0
                } else {
                    0.5f64.powi(s as i32)
                }
            })
            .collect();
        let total: f64 = weights.iter().sum();
        if total == 0.0 {
            return None;
        }
        let mut pick = rng.gen::<f64>() * total;
        let size = weights
            .iter()
            .position(|&w| {
                pick -= w;
                w > 0.0 && pick <= 0.0
            })
            .unwrap_or_else(|| weights.iter().rposition(|&w| w > 0.0).unwrap());
        let m = *feasible[size].choose(rng)?;
        add(m, &mut degree, &mut used, &mut edges);
    }

    for _ in 0..(8 * n + 64) {
        let Some((u, v)) = colliding_pair(&edges, l) else {
            return Some(edges);
        };
        // separate u and v by editing the membership of one of them
        let mover = if rng.gen_bool(0.5) { u } else { v };
        let bit = 1u32 << mover;
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.shuffle(rng);
        let edit = order.into_iter().find_map(|j| {
            let e = edges[j];
            let other = if mover == u { v } else { u };
            let both = e & bit != 0 && e >> other & 1 == 1;
            let neither = e & bit == 0 && e >> other & 1 == 0;
            let next = if both {
                e & !bit
            } else if neither && degree[mover as usize] < r {
                e | bit
            } else {
                return None;
            };
            (!used.contains(&next)).then_some((j, next))
        });
        let (j, next) = edit?;
        let old = edges[j];
        used.remove(&old);
        used.insert(next);
        edges[j] = next;
        if old & bit != 0 {
            degree[mover as usize] -= 1;
        } else {
            degree[mover as usize] += 1;
        }
    }
    None
}

fn fits(m: u32, degree: &[usize], r: usize) -> bool {
    let mut rest = m;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        if degree[v] >= r {
            return false;
        }
        rest &= rest - 1;
    }
    true
}

fn add(m: u32, degree: &mut [usize], used: &mut HashSet<u32>, edges: &mut Vec<u32>) {
    let mut rest = m;
    while rest != 0 {
        degree[rest.trailing_zeros() as usize] += 1;
        rest &= rest - 1;
    }
    used.insert(m);
    edges.push(m);
}

/// First pair of vertices (0-based) with equal neighbourhoods.
fn colliding_pair(edges: &[u32], l: u32) -> Option<(u32, u32)> {
    let mut seen: HashMap<Vec<u64>, u32> = HashMap::new();
    let words = edges.len().div_ceil(64).max(1);
    for v in 0..l {
        let mut key = vec![0u64; words];
        for (j, e) in edges.iter().enumerate() {
            if e >> v & 1 == 1 {
                key[j / 64] |= 1 << (j % 64);
            }
        }
        if let Some(&u) = seen.get(&key) {
            return Some((u, v));
        }
        seen.insert(key, v);
    }
    None
}
