//! Hypergraphs on labelled vertices `1..=l` with an ordered edge list.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertices are `1..=vertex_count`; each edge is a strictly increasing list of
/// labels. Edge order is significant and the empty edge is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "HypergraphDocument", into = "HypergraphDocument")]
pub struct Hypergraph {
    vertex_count: u32,
    edges: Vec<Vec<u32>>,
}

/// On-disk form: `{"vertices": l, "edges": [[...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HypergraphDocument {
    #[serde(default = "crate::family::schema_version")]
    pub schema_version: u32,
    pub vertices: u32,
    pub edges: Vec<Vec<u32>>,
}

impl TryFrom<HypergraphDocument> for Hypergraph {
    type Error = Error;
    fn try_from(doc: HypergraphDocument) -> Result<Self> {
        Hypergraph::new(doc.vertices, doc.edges)
    }
}

impl From<Hypergraph> for HypergraphDocument {
    fn from(h: Hypergraph) -> Self {
        HypergraphDocument {
            schema_version: crate::family::SCHEMA_VERSION,
            vertices: h.vertex_count,
            edges: h.edges,
        }
    }
}

/// For each vertex, the sorted indices (0-based) of the edges containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodIndex {
    per_vertex: Vec<Vec<usize>>,
}

impl NeighborhoodIndex {
    pub fn of(&self, v: u32) -> &[usize] {
        &self.per_vertex[v as usize - 1]
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &[usize])> {
        self.per_vertex
            .iter()
            .enumerate()
            .map(|(i, n)| (i as u32 + 1, n.as_slice()))
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.per_vertex.iter().map(Vec::len).collect()
    }
}

impl Hypergraph {
    /// Builds a hypergraph, rejecting labels outside `1..=vertex_count` and
    /// edges that are not strictly increasing.
    pub fn new(vertex_count: u32, edges: Vec<Vec<u32>>) -> Result<Self> {
        for edge in &edges {
            if let Some(&v) = edge.iter().find(|&&v| v == 0 || v > vertex_count) {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    count: vertex_count,
                });
            }
            if edge.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidParameters(format!(
                    "edge {edge:?} is not strictly increasing"
                )));
            }
        }
        Ok(Hypergraph {
            vertex_count,
            edges,
        })
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }

    pub fn neighborhood_index(&self) -> NeighborhoodIndex {
        let mut per_vertex = vec![Vec::new(); self.vertex_count as usize];
        for (j, edge) in self.edges.iter().enumerate() {
            for &v in edge {
                per_vertex[v as usize - 1].push(j);
            }
        }
        NeighborhoodIndex { per_vertex }
    }

    /// Indices (0-based) of the edges containing `v`.
    pub fn neighborhood(&self, v: u32) -> Result<Vec<usize>> {
        if v == 0 || v > self.vertex_count {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                count: self.vertex_count,
            });
        }
        Ok(self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.binary_search(&v).is_ok())
            .map(|(j, _)| j)
            .collect())
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count as usize];
        for edge in &self.edges {
            for &v in edge {
                deg[v as usize - 1] += 1;
            }
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn edges_distinct(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.edges.len());
        self.edges.iter().all(|e| seen.insert(e))
    }

    pub fn neighborhoods_distinct(&self) -> bool {
        let index = self.neighborhood_index();
        let mut seen = HashSet::with_capacity(self.vertex_count as usize);
        index.per_vertex.iter().all(|n| seen.insert(n))
    }

    /// All edges pairwise distinct and all vertex neighbourhoods pairwise
    /// distinct.
    pub fn is_irrepeating(&self) -> bool {
        self.edges_distinct() && self.neighborhoods_distinct()
    }

    /// Irrepeating with `l` vertices, `n` edges and maximum degree at most `r`.
    pub fn is_lnr(&self, l: u32, n: usize, r: usize) -> bool {
        self.vertex_count == l
            && self.edges.len() == n
            && self.max_degree() <= r
            && self.is_irrepeating()
    }

    /// The dual: vertex `i` stands for `edges[i - 1]`, and the `u`-th edge
    /// (in vertex order) collects the edges containing `u`.
    pub fn dual(&self) -> Result<Hypergraph> {
        if !self.is_irrepeating() {
            return Err(Error::NotIrrepeating);
        }
        Ok(self.dual_unchecked())
    }

    pub(crate) fn dual_unchecked(&self) -> Hypergraph {
        let edges = self
            .neighborhood_index()
            .per_vertex
            .into_iter()
            .map(|n| n.into_iter().map(|j| j as u32 + 1).collect())
            .collect();
        Hypergraph {
            vertex_count: self.edges.len() as u32,
            edges,
        }
    }

    /// Applies the vertex relabelling `v -> perm[v - 1]`.
    pub fn relabel(&self, perm: &[u32]) -> Result<Hypergraph> {
        if perm.len() != self.vertex_count as usize {
            return Err(Error::InvalidParameters(
                "permutation length mismatch".into(),
            ));
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p == 0
                || p as usize > perm.len()
                || std::mem::replace(&mut seen[p as usize - 1], true)
            {
                return Err(Error::InvalidParameters("not a permutation".into()));
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let mut img: Vec<u32> = e.iter().map(|&v| perm[v as usize - 1]).collect();
                img.sort_unstable();
                img
            })
            .collect();
        Ok(Hypergraph {
            vertex_count: self.vertex_count,
            edges,
        })
    }
}

/// Default vertex limit for [`are_isomorphic`].
pub const ISOMORPHISM_VERTEX_LIMIT: u32 = 12;

pub fn are_isomorphic(a: &Hypergraph, b: &Hypergraph) -> Result<bool> {
    are_isomorphic_with_limit(a, b, ISOMORPHISM_VERTEX_LIMIT)
}

/// Whether some vertex bijection maps the edge multiset of `a` onto that of
/// `b`. Backtracking over vertices, most constrained first, with candidates
/// restricted to vertices sharing the same degree and incident-edge-size
/// profile.
pub fn are_isomorphic_with_limit(a: &Hypergraph, b: &Hypergraph, limit: u32) -> Result<bool> {
    let limit = limit.min(64);
    if a.vertex_count > limit || b.vertex_count > limit {
        return Err(Error::GuardExceeded(format!(
            "isomorphism test limited to {limit} vertices"
        )));
    }
    if a.vertex_count != b.vertex_count || a.edges.len() != b.edges.len() {
        return Ok(false);
    }
    let sizes = |h: &Hypergraph| {
        let mut s: Vec<usize> = h.edges.iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    };
    if sizes(a) != sizes(b) {
        return Ok(false);
    }

    let profile = |h: &Hypergraph| -> Vec<Vec<usize>> {
        let mut p = vec![Vec::new(); h.vertex_count as usize];
        for e in &h.edges {
            for &v in e {
                p[v as usize - 1].push(e.len());
            }
        }
        for x in &mut p {
            x.sort_unstable();
        }
        p
    };
    let (pa, pb) = (profile(a), profile(b));
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return Ok(false);
    }

    let mask = |e: &[u32]| e.iter().fold(0u64, |m, &v| m | 1 << (v - 1));
    let masks_a: Vec<u64> = a.edges.iter().map(|e| mask(e)).collect();
    let mut target: HashMap<u64, usize> = HashMap::new();
    for e in &b.edges {
        *target.entry(mask(e)).or_default() += 1;
    }

    let l = a.vertex_count as usize;
    let mut order: Vec<usize> = (0..l).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(pa[v].len()));
    // Edges of `a` become checkable once their last vertex in `order` is placed.
    let mut position = vec![0; l];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); l];
    for (j, e) in a.edges.iter().enumerate() {
        if let Some(last) = e.iter().map(|&v| position[v as usize - 1]).max() {
            closing[last].push(j);
        }
    }

    struct Search<'s> {
        order: Vec<usize>,
        closing: Vec<Vec<usize>>,
        masks_a: Vec<u64>,
        target: HashMap<u64, usize>,
        pa: &'s [Vec<usize>],
        pb: &'s [Vec<usize>],
        image: Vec<usize>,
        used: u64,
    }

    impl Search<'_> {
        fn mapped(&self, m: u64) -> u64 {
            let mut out = 0;
            let mut rest = m;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                out |= 1 << self.image[v];
                rest &= rest - 1;
            }
            out
        }

        fn go(&mut self, depth: usize) -> bool {
            if depth == self.order.len() {
                let mut counts: HashMap<u64, usize> = HashMap::new();
                for &m in &self.masks_a {
                    *counts.entry(self.mapped(m)).or_default() += 1;
                }
                return counts == self.target;
            }
            let v = self.order[depth];
            for w in 0..self.pb.len() {
                if self.used >> w & 1 == 1 || self.pa[v] != self.pb[w] {
                    continue;
                }
                self.image[v] = w;
                self.used |= 1 << w;
                let ok = self.closing[depth]
                    .iter()
                    .all(|&j| self.target.contains_key(&self.mapped(self.masks_a[j])));
                if ok && self.go(depth + 1) {
                    return true;
                }
                self.used &= !(1 << w);
            }
            false
        }
    }

    let mut search = Search {
        order,
        closing,
        masks_a,
        target,
        pa: &pa,
        pb: &pb,
        image: vec![0; l],
        used: 0,
    };
    Ok(search.go(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(l: u32, edges: &[&[u32]]) -> Hypergraph {
        Hypergraph::new(l, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    #[test]
    fn neighborhood_examples() {
        let g = h(2, &[&[], &[1], &[1, 2]]);
        assert_eq!(g.neighborhood(1).unwrap(), vec![1, 2]);
        assert_eq!(g.neighborhood(2).unwrap(), vec![2]);
        assert!(h(3, &[&[1]]).neighborhood(3).unwrap().is_empty());
        assert!(matches!(
            g.neighborhood(3),
            Err(Error::VertexOutOfRange {
                vertex: 3,
                count: 2
            })
        ));
        let index = g.neighborhood_index();
        let total: usize = index.degrees().iter().sum();
        assert_eq!(total, g.edges().iter().map(Vec::len).sum::<usize>());
    }

    #[test]
    fn rejects_malformed_edges() {
        assert!(Hypergraph::new(2, vec![vec![2, 1]]).is_err());
        assert!(Hypergraph::new(2, vec![vec![1, 1]]).is_err());
        assert!(Hypergraph::new(2, vec![vec![3]]).is_err());
        assert!(Hypergraph::new(2, vec![vec![0]]).is_err());
    }

    #[test]
    fn irrepeating_examples() {
        assert!(h(2, &[&[1], &[2]]).is_irrepeating());
        assert!(!h(2, &[&[1, 2]]).is_irrepeating());
        assert!(!h(2, &[&[1], &[1]]).is_irrepeating());
    }

    #[test]
    fn dual_examples() {
        let g = h(2, &[&[], &[1], &[1, 2]]);
        assert_eq!(g.dual().unwrap(), h(3, &[&[2, 3], &[3]]));
        assert_eq!(h(1, &[&[1]]).dual().unwrap(), h(1, &[&[1]]));
        assert_eq!(h(2, &[&[1, 2]]).dual(), Err(Error::NotIrrepeating));
    }

    #[test]
    fn lnr_examples() {
        let k4 = h(4, &[&[1, 2], &[1, 3], &[1, 4], &[2, 3], &[2, 4], &[3, 4]]);
        assert!(k4.is_lnr(4, 6, 3));
        assert!(!k4.is_lnr(4, 6, 2));
        assert!(!k4.is_lnr(4, 5, 3));
    }

    #[test]
    fn isomorphism_examples() {
        let g = h(3, &[&[], &[1], &[1, 2], &[2, 3]]);
        assert!(are_isomorphic(&g, &g).unwrap());
        assert!(are_isomorphic(&h(2, &[&[1]]), &h(2, &[&[2]])).unwrap());
        assert!(!are_isomorphic(&h(3, &[&[1, 2]]), &h(3, &[&[1], &[2]])).unwrap());
        let relabelled = g.relabel(&[3, 1, 2]).unwrap();
        assert!(are_isomorphic(&g, &relabelled).unwrap());
        let path = h(4, &[&[1, 2], &[2, 3], &[3, 4]]);
        let star = h(4, &[&[1, 2], &[1, 3], &[1, 4]]);
        assert!(!are_isomorphic(&path, &star).unwrap());
        // 2-regular on six vertices: hexagon vs two triangles
        let hexagon = h(6, &[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 6], &[1, 6]]);
        let triangles = h(6, &[&[1, 2], &[2, 3], &[1, 3], &[4, 5], &[5, 6], &[4, 6]]);
        assert!(!are_isomorphic(&hexagon, &triangles).unwrap());
        let shifted = hexagon.relabel(&[4, 6, 1, 3, 2, 5]).unwrap();
        assert!(are_isomorphic(&hexagon, &shifted).unwrap());
        let big = h(13, &[]);
        assert!(matches!(
            are_isomorphic(&big, &big),
            Err(Error::GuardExceeded(_))
        ));
        assert!(are_isomorphic_with_limit(&big, &big, 20).unwrap());
    }

    #[test]
    fn isomorphism_respects_multiplicity() {
        let a = h(2, &[&[1], &[1], &[2]]);
        let b = h(2, &[&[1], &[2], &[2]]);
        let c = h(2, &[&[1], &[2], &[1, 2]]);
        assert!(are_isomorphic(&a, &b).unwrap());
        assert!(!are_isomorphic(&a, &c).unwrap());
    }

    #[test]
    fn json_shape() {
        let g = h(2, &[&[], &[1], &[1, 2]]);
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(
            text,
            r#"{"schema_version":1,"vertices":2,"edges":[[],[1],[1,2]]}"#
        );
        let back: Hypergraph =
            serde_json::from_str(r#"{"vertices":2,"edges":[[],[1],[1,2]]}"#).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Hypergraph>(r#"{"vertices":1,"edges":[[2]]}"#).is_err());
    }
}
