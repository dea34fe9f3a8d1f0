//! Triangle-Y and Y-triangle exchange moves and the closure of a graph
//! under them (its cousin family).
//!
//! Convention: the Y-triangle move is legal only when the three neighbors
//! of the degree-3 vertex are pairwise non-adjacent, so both moves preserve
//! the edge count and simplicity.

use std::collections::HashMap;

use thiserror::Error;

use crate::canon::{canon_simple, CanonicalForm};
use crate::graph::SimpleGraph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("vertices {0:?} are not a triangle")]
    NotATriangle([usize; 3]),
    #[error("vertex {0} has degree {1}, expected 3")]
    NotDegreeThree(usize, usize),
    #[error("neighbors of vertex {0} are not pairwise non-adjacent")]
    NeighborsNotIndependent(usize),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}

/// Replace the edges of a triangle by a new degree-3 vertex joined to its
/// corners. Order +1, edge count unchanged.
pub fn triangle_y(g: &SimpleGraph, triangle: [usize; 3]) -> Result<SimpleGraph, MoveError> {
    let [a, b, c] = triangle;
    for v in triangle {
        g.check_vertex(v)?;
    }
    if !(g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c)) {
        return Err(MoveError::NotATriangle(triangle));
    }
    let n = g.order();
    let mut h = SimpleGraph::empty(n + 1);
    for (u, v) in g.edges() {
        h.add_edge(u, v);
    }
    h.remove_edge(a, b);
    h.remove_edge(a, c);
    h.remove_edge(b, c);
    for v in triangle {
        h.add_edge(n, v);
    }
    Ok(h)
}

/// Inverse move at a degree-3 vertex with independent neighbors: delete the
/// vertex and join its neighbors pairwise. Order -1, edge count unchanged.
pub fn y_triangle(g: &SimpleGraph, v: usize) -> Result<SimpleGraph, MoveError> {
    g.check_vertex(v)?;
    let d = g.degree(v);
    if d != 3 {
        return Err(MoveError::NotDegreeThree(v, d));
    }
    let nbrs: Vec<usize> = g.neighbors(v).collect();
    for i in 0..3 {
        for j in i + 1..3 {
            if g.has_edge(nbrs[i], nbrs[j]) {
                return Err(MoveError::NeighborsNotIndependent(v));
            }
        }
    }
    // Remove v; survivors keep their relative order.
    let keep = crate::graph::mask_n(g.order()) & !(1 << v);
    let (mut h, labels) = g.induced(keep);
    let pos = |x: usize| labels.iter().position(|&l| l == x).unwrap();
    for i in 0..3 {
        for j in i + 1..3 {
            h.add_edge(pos(nbrs[i]), pos(nbrs[j]));
        }
    }
    Ok(h)
}

/// All graphs reachable from a member by one legal move.
pub fn legal_moves(g: &SimpleGraph) -> Vec<SimpleGraph> {
    let mut out = Vec::new();
    for t in g.triangles() {
        out.push(triangle_y(g, t).expect("triangle listed by triangles()"));
    }
    for v in g.vertices() {
        if g.degree(v) == 3 {
            let nbrs: Vec<usize> = g.neighbors(v).collect();
            let independent = (0..3)
                .all(|i| (i + 1..3).all(|j| !g.has_edge(nbrs[i], nbrs[j])));
            if independent {
                out.push(y_triangle(g, v).expect("checked preconditions"));
            }
        }
    }
    out
}

/// A seed graph together with the closure of its cousins under both moves.
/// Members are stored as canonical representatives in canonical-form order;
/// `move_edges` joins member indices related by a single move.
#[derive(Debug, Clone)]
pub struct Family {
    pub seed: SimpleGraph,
    pub members: Vec<FamilyMember>,
    pub move_edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub form: CanonicalForm,
    pub graph: SimpleGraph,
}

impl Family {
    pub fn contains(&self, form: &CanonicalForm) -> bool {
        self.members.binary_search_by(|m| m.form.cmp(form)).is_ok()
    }

    pub fn member_forms(&self) -> impl Iterator<Item = &CanonicalForm> {
        self.members.iter().map(|m| &m.form)
    }
}

/// Breadth-first closure of `seed` under both moves, deduplicated by
/// canonical form. The result is independent of traversal order.
pub fn family_closure(seed: &SimpleGraph) -> Family {
    family_closure_ordered(seed, |_frontier| {})
}

/// Closure with a frontier-reordering hook; used to check order independence.
pub fn family_closure_ordered(
    seed: &SimpleGraph,
    reorder: impl Fn(&mut Vec<SimpleGraph>),
) -> Family {
    let seed_edges = seed.edge_count();
    let mut seen: HashMap<CanonicalForm, SimpleGraph> = HashMap::new();
    let mut adjacency: Vec<(CanonicalForm, CanonicalForm)> = Vec::new();

    let canon = |g: &SimpleGraph| {
        let out = canon_simple(g);
        (out.form, g.relabel(&out.perm))
    };
    let (seed_form, seed_rep) = canon(seed);
    seen.insert(seed_form.clone(), seed_rep.clone());
    let mut frontier = vec![seed_rep];
    while !frontier.is_empty() {
        let mut batch = std::mem::take(&mut frontier);
        reorder(&mut batch);
        for g in batch {
            let from_form = canon_simple(&g).form;
            for next in legal_moves(&g) {
                assert_eq!(next.edge_count(), seed_edges, "moves must preserve edge count");
                let (form, rep) = canon(&next);
                adjacency.push((from_form.clone(), form.clone()));
                if !seen.contains_key(&form) {
                    seen.insert(form.clone(), rep.clone());
                    frontier.push(rep);
                }
            }
        }
    }

    let mut members: Vec<FamilyMember> = seen
        .into_iter()
        .map(|(form, graph)| FamilyMember { form, graph })
        .collect();
    members.sort_by(|a, b| a.form.cmp(&b.form));
    let index: HashMap<&CanonicalForm, usize> =
        members.iter().enumerate().map(|(i, m)| (&m.form, i)).collect();
    let mut move_edges: Vec<(usize, usize)> = adjacency
        .iter()
        .map(|(f, t)| {
            let (a, b) = (index[f], index[t]);
            (a.min(b), a.max(b))
        })
        .filter(|(a, b)| a != b)
        .collect();
    move_edges.sort_unstable();
    move_edges.dedup();
    Family { seed: seed.clone(), members, move_edges }
}

/// Closure of the seed under triangle-Y moves only (no inverses). The
/// 21-edge intrinsically knotted set is this closure of K7.
pub fn expansion_closure(seed: &SimpleGraph) -> Vec<FamilyMember> {
    let canon = |g: &SimpleGraph| {
        let out = canon_simple(g);
        (out.form, g.relabel(&out.perm))
    };
    let mut seen: HashMap<CanonicalForm, SimpleGraph> = HashMap::new();
    let (seed_form, seed_rep) = canon(seed);
    seen.insert(seed_form, seed_rep.clone());
    let mut frontier = vec![seed_rep];
    while let Some(g) = frontier.pop() {
        for t in g.triangles() {
            let next = triangle_y(&g, t).expect("triangle listed by triangles()");
            let (form, rep) = canon(&next);
            if !seen.contains_key(&form) {
                seen.insert(form, rep.clone());
                frontier.push(rep);
            }
        }
    }
    let mut members: Vec<FamilyMember> =
        seen.into_iter().map(|(form, graph)| FamilyMember { form, graph }).collect();
    members.sort_by(|a, b| a.form.cmp(&b.form));
    members
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::catalog;

    fn k4() -> SimpleGraph {
        catalog::complete(4)
    }

    fn k23() -> SimpleGraph {
        SimpleGraph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
    }

    #[test]
    fn triangle_y_k4_gives_k23() {
        let g = triangle_y(&k4(), [0, 1, 2]).unwrap();
        assert!(are_isomorphic(&g, &k23()));
    }

    #[test]
    fn triangle_y_k7_gives_8_vertices_21_edges() {
        let g = triangle_y(&catalog::k7(), [0, 1, 2]).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.edge_count(), 21);
        assert_eq!(g.degree(7), 3);
    }

    #[test]
    fn triangle_y_rejects_non_triangle() {
        let c4 = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(triangle_y(&c4, [0, 1, 2]), Err(MoveError::NotATriangle([0, 1, 2])));
    }

    #[test]
    fn y_triangle_k23_gives_k4() {
        let g = y_triangle(&k23(), 0).unwrap();
        assert!(are_isomorphic(&g, &k4()));
    }

    #[test]
    fn moves_are_mutually_inverse() {
        let g = catalog::k3311();
        for t in g.triangles() {
            let h = triangle_y(&g, t).unwrap();
            let back = y_triangle(&h, g.order()).unwrap();
            assert!(are_isomorphic(&back, &g));
        }
    }

    #[test]
    fn y_triangle_rejects_triangle_neighbors() {
        assert_eq!(y_triangle(&k4(), 0), Err(MoveError::NeighborsNotIndependent(0)));
    }

    #[test]
    fn k4_family() {
        let fam = family_closure(&k4());
        assert_eq!(fam.members.len(), 2);
        assert!(fam.members.iter().any(|m| are_isomorphic(&m.graph, &k4())));
        assert!(fam.members.iter().any(|m| are_isomorphic(&m.graph, &k23())));
        assert_eq!(fam.move_edges, vec![(0, 1)]);
        // Seed is a member.
        let seed_form = canon_simple(&fam.seed).form;
        assert!(fam.contains(&seed_form));
    }

    #[test]
    fn closure_property_holds() {
        let fam = family_closure(&k4());
        for m in &fam.members {
            for next in legal_moves(&m.graph) {
                assert!(fam.contains(&canon_simple(&next).form));
            }
        }
    }
}
