//! Core graph values: simple graphs on dense integer labels (adjacency
//! bitrows, order <= 64) and multigraphs with loops and parallel edges.

use thiserror::Error;

pub const MAX_ORDER: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    InvalidVertex { vertex: usize, order: usize },
    #[error("graph order {0} exceeds supported maximum {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("loop edge {{{0},{0}}} not allowed in a simple graph")]
    LoopEdge(usize),
    #[error("edge {{{0},{1}}} not present")]
    NoSuchEdge(usize, usize),
    #[error("vertices {0} and {1} must be distinct")]
    NotDistinct(usize, usize),
}

/// Loop-free, multiplicity-free undirected graph on vertices `0..order`.
///
/// Stored as one adjacency bitmask per vertex, so all neighborhood algebra
/// is word operations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<u64>,
}

impl std::fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SimpleGraph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_ORDER, "order {n} exceeds {MAX_ORDER}");
        SimpleGraph { n, adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Fallible construction for untrusted input (CLI, decoded files).
    pub fn try_from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n > MAX_ORDER {
            return Err(GraphError::OrderTooLarge(n));
        }
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex { vertex: v, order: self.n })
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "loop edge {{{u},{u}}}");
        assert!(u < self.n && v < self.n, "edge ({u},{v}) out of range");
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Neighborhood of `v` as a bitmask.
    pub fn nbr_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as (u, v) with u < v, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in BitIter(self.adj[u] & !mask_n(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Relabel by `perm`, where `perm[v]` is the new label of vertex `v`.
    pub fn relabel(&self, perm: &[usize]) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Induced subgraph on the vertices of `keep` (a bitmask); vertices are
    /// renumbered in increasing label order. Returns the subgraph and the
    /// original label of each new vertex.
    pub fn induced(&self, keep: u64) -> (SimpleGraph, Vec<usize>) {
        let labels: Vec<usize> = BitIter(keep & mask_n(self.n)).collect();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in labels.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = SimpleGraph::empty(labels.len());
        for (i, &v) in labels.iter().enumerate() {
            for w in BitIter(self.adj[v] & keep) {
                if pos[w] > i {
                    g.add_edge(i, pos[w]);
                }
            }
        }
        (g, labels)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0u64;
            for v in BitIter(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == mask_n(self.n)
    }

    /// True iff no edge's endpoints share a neighbor.
    pub fn is_triangle_free(&self) -> bool {
        for u in 0..self.n {
            for v in BitIter(self.adj[u] & !mask_n(u + 1)) {
                if self.adj[u] & self.adj[v] != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// All triangles as sorted vertex triples.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for (u, v) in self.edges() {
            for w in BitIter(self.adj[u] & self.adj[v]) {
                if w > v {
                    out.push([u, v, w]);
                }
            }
        }
        out
    }

    /// Per-vertex degrees, sorted descending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn to_multigraph(&self) -> Multigraph {
        let mut m = Multigraph::empty(self.n);
        for (u, v) in self.edges() {
            m.add_edge(u, v, 1);
        }
        m
    }
}

pub(crate) fn mask_n(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over the set bits of a u64.
#[derive(Clone, Copy)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

/// Undirected graph permitting loops and parallel edges. A loop at `v`
/// contributes 2 to `deg(v)`. Multiplicities are stored in a symmetric
/// matrix with loop counts on the diagonal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    mult: Vec<u16>, // n*n, row-major, symmetric
}

impl std::fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Multigraph(n={}, edges={:?})", self.n, self.edge_list())
    }
}

impl Multigraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_ORDER, "order {n} exceeds {MAX_ORDER}");
        Multigraph { n, mult: vec![0; n * n] }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u16 {
        self.mult[u * self.n + v]
    }

    pub fn add_edge(&mut self, u: usize, v: usize, k: u16) {
        assert!(u < self.n && v < self.n);
        self.mult[u * self.n + v] += k;
        if u != v {
            self.mult[v * self.n + u] += k;
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize, k: u16) {
        assert!(self.mult[u * self.n + v] >= k);
        self.mult[u * self.n + v] -= k;
        if u != v {
            self.mult[v * self.n + u] -= k;
        }
    }

    /// Degree of `v`; each loop counts 2.
    pub fn degree(&self, v: usize) -> usize {
        let row = &self.mult[v * self.n..(v + 1) * self.n];
        let mut d = 0usize;
        for (w, &m) in row.iter().enumerate() {
            d += if w == v { 2 * m as usize } else { m as usize };
        }
        d
    }

    pub fn edge_count(&self) -> usize {
        let mut e = 0usize;
        for u in 0..self.n {
            for v in u..self.n {
                e += self.mult[u * self.n + v] as usize;
            }
        }
        e
    }

    /// Distinct incidences (u, v, multiplicity) with u <= v.
    pub fn edge_list(&self) -> Vec<(usize, usize, u16)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u..self.n {
                let m = self.mult[u * self.n + v];
                if m > 0 {
                    out.push((u, v, m));
                }
            }
        }
        out
    }

    pub fn has_loop(&self) -> bool {
        (0..self.n).any(|v| self.mult[v * self.n + v] > 0)
    }

    pub fn has_parallel_pair(&self) -> bool {
        (0..self.n).any(|u| (u + 1..self.n).any(|v| self.mult[u * self.n + v] >= 2))
    }

    pub fn is_simple(&self) -> bool {
        !self.has_loop() && !self.has_parallel_pair()
    }

    /// Underlying simple graph: loops dropped, multiplicities collapsed.
    pub fn simplify(&self) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.mult[u * self.n + v] > 0 {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn to_simple(&self) -> Option<SimpleGraph> {
        if self.is_simple() {
            Some(self.simplify())
        } else {
            None
        }
    }

    /// Delete the vertices of `remove` (bitmask); survivors are renumbered in
    /// increasing label order. Returns the graph and the original label of
    /// each new vertex.
    pub fn delete_vertices(&self, remove: u64) -> (Multigraph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n).filter(|v| remove >> v & 1 == 0).collect();
        let mut g = Multigraph::empty(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i) {
                let m = self.mult[u * self.n + v];
                if m > 0 {
                    g.add_edge(i, j, m);
                }
            }
        }
        (g, keep)
    }

    pub fn is_connected(&self) -> bool {
        self.simplify().is_connected()
    }
}

/// The degree/neighborhood statistics of one vertex `a`, or of a vertex
/// pair `(a, b)`, that drive the vertex-pair reduction bookkeeping.
///
/// Convention: `a` (and `b`, when present) are excluded from every
/// degree-filtered set, so the sets always describe third vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodProfile {
    pub a: usize,
    pub b: Option<usize>,
    /// V(a): neighbors of a.
    pub v_a: Vec<usize>,
    /// V_n(a) for n = 3, 4, 5: neighbors of a with that degree.
    pub v3_a: Vec<usize>,
    pub v4_a: Vec<usize>,
    pub v5_a: Vec<usize>,
    /// V_n(a,b) = V_n(a) ∩ V_n(b); empty when b is absent.
    pub v3_ab: Vec<usize>,
    pub v4_ab: Vec<usize>,
    pub v5_ab: Vec<usize>,
    /// V_Y(a,b): degree-3 vertices (other than a, b) adjacent to some
    /// member of V_3(a,b); empty when b is absent.
    pub vy_ab: Vec<usize>,
    /// V̄(a): vertices at distance >= 2 from a.
    pub bar_v: Vec<usize>,
    /// Ē(a): extra edges, the edges induced on V̄(a).
    pub bar_e: Vec<(usize, usize)>,
}

pub(crate) fn deg_mask(g: &SimpleGraph, d: usize) -> u64 {
    let mut m = 0u64;
    for v in 0..g.order() {
        if g.degree(v) == d {
            m |= 1 << v;
        }
    }
    m
}

/// Neighborhood statistics per the vertex-pair reduction conventions.
pub fn neighborhood_profile(
    g: &SimpleGraph,
    a: usize,
    b: Option<usize>,
) -> Result<NeighborhoodProfile, GraphError> {
    g.check_vertex(a)?;
    if let Some(b) = b {
        g.check_vertex(b)?;
        if a == b {
            return Err(GraphError::NotDistinct(a, b));
        }
    }
    let excl: u64 = (1 << a) | b.map_or(0, |b| 1 << b);
    let vn = |v: usize, d: usize| g.nbr_mask(v) & deg_mask(g, d) & !excl;
    let set = |m: u64| BitIter(m).collect::<Vec<_>>();

    let (v3a, v4a, v5a) = (vn(a, 3), vn(a, 4), vn(a, 5));
    let (v3ab, v4ab, v5ab) = match b {
        Some(b) => (v3a & vn(b, 3), v4a & vn(b, 4), v5a & vn(b, 5)),
        None => (0, 0, 0),
    };
    let mut vy = 0u64;
    for d in BitIter(v3ab) {
        vy |= g.nbr_mask(d) & deg_mask(g, 3) & !excl;
    }
    let bar_mask = mask_n(g.order()) & !(g.nbr_mask(a) | (1 << a));
    let mut bar_e = Vec::new();
    for u in BitIter(bar_mask) {
        for v in BitIter(g.nbr_mask(u) & bar_mask) {
            if v > u {
                bar_e.push((u, v));
            }
        }
    }
    Ok(NeighborhoodProfile {
        a,
        b,
        v_a: set(g.nbr_mask(a)),
        v3_a: set(v3a),
        v4_a: set(v4a),
        v5_a: set(v5a),
        v3_ab: set(v3ab),
        v4_ab: set(v4ab),
        v5_ab: set(v5ab),
        vy_ab: set(vy),
        bar_v: set(bar_mask),
        bar_e,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn degree_sequence_examples() {
        assert_eq!(catalog::k7().degree_sequence(), vec![6; 7]);
        assert_eq!(catalog::k33().degree_sequence(), vec![3; 6]);
        assert_eq!(SimpleGraph::empty(1).degree_sequence(), vec![0]);
    }

    #[test]
    fn triangle_free_examples() {
        assert!(catalog::k33().is_triangle_free());
        assert!(!catalog::k3311().is_triangle_free());
        // Independent oracle: brute force over all vertex triples.
        let petersen = catalog::petersen();
        let n = petersen.order();
        let mut found = false;
        for u in 0..n {
            for v in u + 1..n {
                for w in v + 1..n {
                    if petersen.has_edge(u, v) && petersen.has_edge(v, w) && petersen.has_edge(u, w)
                    {
                        found = true;
                    }
                }
            }
        }
        assert!(!found);
        assert!(petersen.is_triangle_free());
    }

    #[test]
    fn profile_k33_same_part() {
        // Parts {0,1,2} and {3,4,5}; a=0, b=1 share the whole opposite part.
        let g = catalog::k33();
        let p = neighborhood_profile(&g, 0, Some(1)).unwrap();
        assert_eq!(p.v3_ab, vec![3, 4, 5]);
        assert_eq!(p.vy_ab, vec![2]);
    }

    #[test]
    fn profile_k33_adjacent_pair() {
        let g = catalog::k33();
        let p = neighborhood_profile(&g, 0, Some(3)).unwrap();
        assert!(p.v3_ab.is_empty());
    }

    #[test]
    fn profile_path_endpoint() {
        let g = SimpleGraph::from_edges(3, &[(0, 1), (1, 2)]);
        let p = neighborhood_profile(&g, 0, None).unwrap();
        assert_eq!(p.bar_v, vec![2]);
        assert!(p.bar_e.is_empty());
    }

    #[test]
    fn profile_set_algebra() {
        let g = catalog::petersen();
        for a in 0..g.order() {
            for b in 0..g.order() {
                if a == b {
                    continue;
                }
                let p = neighborhood_profile(&g, a, Some(b)).unwrap();
                let pa = neighborhood_profile(&g, a, None).unwrap();
                assert_eq!(p.v_a.len(), g.degree(a));
                for v in &p.bar_v {
                    assert!(!p.v_a.contains(v) && *v != a);
                }
                // V_n(a,b) = V_n(a) ∩ V_n(b) with the same exclusions.
                let pb: Vec<usize> = neighborhood_profile(&g, b, Some(a))
                    .unwrap()
                    .v3_a
                    .into_iter()
                    .filter(|v| p.v3_a.contains(v))
                    .collect();
                assert_eq!(p.v3_ab, pb);
                // Single-vertex profile agrees up to the b exclusion.
                for v in &p.v3_a {
                    assert!(pa.v3_a.contains(v));
                }
            }
        }
    }

    #[test]
    fn profile_invalid_vertex() {
        let g = catalog::k33();
        assert!(neighborhood_profile(&g, 9, None).is_err());
        assert!(neighborhood_profile(&g, 0, Some(0)).is_err());
    }

    #[test]
    fn induced_and_connectivity() {
        let g = catalog::k33();
        let (h, labels) = g.induced(0b001011);
        assert_eq!(labels, vec![0, 1, 3]);
        assert_eq!(h.edge_count(), 2);
        assert!(h.is_connected());
        let two_parts = SimpleGraph::from_edges(4, &[(0, 1), (2, 3)]);
        assert!(!two_parts.is_connected());
        assert!(SimpleGraph::empty(0).is_connected());
    }

    #[test]
    fn multigraph_degrees_count_loops_twice() {
        let mut m = Multigraph::empty(3);
        m.add_edge(0, 1, 2);
        m.add_edge(1, 1, 1);
        assert_eq!(m.degree(0), 2);
        assert_eq!(m.degree(1), 4);
        assert_eq!(m.edge_count(), 3);
        assert!(m.has_loop());
        assert!(m.has_parallel_pair());
        assert_eq!(m.simplify().edge_count(), 1);
    }
}
