//! Nearly-regular `k`-uniform hypergraphs with a prescribed number of edges.

use std::collections::HashSet;

use num_traits::ToPrimitive;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::subsets::combinations;

/// Largest number of candidate `k`-subsets the greedy phase will enumerate.
pub const CANDIDATE_LIMIT: u64 = 2_000_000;

/// A `k`-uniform hypergraph on `l` vertices with `s` distinct edges whose
/// degrees differ by at most one, so the maximum degree is `ceil(k s / l)`.
///
/// Edges are chosen greedily: among unused `k`-subsets that keep every degree
/// at most `ceil(k s / l)`, take one of minimum total degree, the
/// lexicographically greatest on ties. If the greedy phase leaves the degrees
/// unbalanced, switches `e -> e - u + v` (with `deg u >= deg v + 2` and the
/// target not yet an edge) restore balance; such a switch always exists because
/// `u` lies in more edges avoiding `v` than `v` lies in edges avoiding `u`.
pub fn nearly_regular_uniform(l: u32, k: u32, s: u64) -> Result<Hypergraph> {
    if l == 0 || k == 0 {
        return Err(Error::InvalidParameters("l and k must be positive".into()));
    }
    if k > l {
        return Err(Error::InvalidParameters(format!("k = {k} exceeds l = {l}")));
    }
    let total = binomial(u64::from(l), u64::from(k));
    if total < s.into() {
        return Err(Error::InvalidParameters(format!(
            "s = {s} exceeds C({l},{k}) = {total}"
        )));
    }
    if s == 0 {
        return Hypergraph::new(l, Vec::new());
    }
    if total.to_u64().is_none_or(|t| t > CANDIDATE_LIMIT) {
        return Err(Error::GuardExceeded(format!(
            "C({l},{k}) exceeds {CANDIDATE_LIMIT} candidate edges"
        )));
    }

    let cap = (u64::from(k) * s).div_ceil(u64::from(l)) as usize;
    let candidates = combinations(l, k);
    let mut used = vec![false; candidates.len()];
    let mut degree = vec![0usize; l as usize + 1];
    let mut edges: Vec<Vec<u32>> = Vec::with_capacity(s as usize);

    for _ in 0..s {
        let mut best: Option<(bool, usize, usize)> = None;
        for (idx, cand) in candidates.iter().enumerate() {
            if used[idx] {
                continue;
            }
            let within_cap = cand.iter().all(|&v| degree[v as usize] < cap);
            let weight: usize = cand.iter().map(|&v| degree[v as usize]).sum();
            // prefer within-cap, then lower weight, then later in lex order
            let better = match best {
                None => true,
                Some((cap_ok, w, _)) => {
                    (within_cap && !cap_ok) || (within_cap == cap_ok && weight <= w)
                }
            };
            if better {
                best = Some((within_cap, weight, idx));
            }
        }
        let (_, _, idx) = best.expect("s <= C(l,k) leaves an unused candidate");
        used[idx] = true;
        for &v in &candidates[idx] {
            degree[v as usize] += 1;
        }
        edges.push(candidates[idx].clone());
    }

    balance(&mut edges, &mut degree)?;
    Hypergraph::new(l, edges)
}

fn balance(edges: &mut [Vec<u32>], degree: &mut [usize]) -> Result<()> {
    let mut present: HashSet<Vec<u32>> = edges.iter().cloned().collect();
    loop {
        let vertices = 1..degree.len();
        let u = vertices
            .clone()
            .max_by_key(|&v| (degree[v], std::cmp::Reverse(v)))
            .expect("at least one vertex");
        let v = vertices
            .min_by_key(|&v| (degree[v], v))
            .expect("at least one vertex");
        if degree[u] <= degree[v] + 1 {
            return Ok(());
        }
        let (u32_, v32) = (u as u32, v as u32);
        let slot = edges.iter().enumerate().find_map(|(j, e)| {
            if e.binary_search(&u32_).is_err() || e.binary_search(&v32).is_ok() {
                return None;
            }
            let mut moved: Vec<u32> = e.iter().copied().filter(|&x| x != u32_).collect();
            let at = moved.binary_search(&v32).unwrap_err();
            moved.insert(at, v32);
            (!present.contains(&moved)).then_some((j, moved))
        });
        let Some((j, moved)) = slot else {
            return Err(Error::Internal(format!(
                "no balancing switch from vertex {u} to {v}"
            )));
        };
        present.remove(&edges[j]);
        present.insert(moved.clone());
        edges[j] = moved;
        degree[u] -= 1;
        degree[v] += 1;
    }
}
