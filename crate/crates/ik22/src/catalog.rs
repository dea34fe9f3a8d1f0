//! Named graphs used throughout the pipeline: classical seeds, the two
//! 22-edge families' seeds, and the five classified survivor graphs.

use crate::graph::SimpleGraph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown catalog graph {0:?}")]
pub struct UnknownName(pub String);

/// Complete graph on 7 vertices (21 edges).
pub fn k7() -> SimpleGraph {
    complete(7)
}

pub fn complete(n: usize) -> SimpleGraph {
    let mut g = SimpleGraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    g
}

/// Complete bipartite K_{3,3}: parts {0,1,2} and {3,4,5}.
pub fn k33() -> SimpleGraph {
    let mut g = SimpleGraph::empty(6);
    for u in 0..3 {
        for v in 3..6 {
            g.add_edge(u, v);
        }
    }
    g
}

/// Complete 4-partite K_{3,3,1,1}: parts {0,1,2}, {3,4,5}, {6}, {7};
/// 8 vertices, 22 edges.
pub fn k3311() -> SimpleGraph {
    let parts: [&[usize]; 4] = [&[0, 1, 2], &[3, 4, 5], &[6], &[7]];
    let mut g = SimpleGraph::empty(8);
    for i in 0..4 {
        for j in i + 1..4 {
            for &u in parts[i] {
                for &v in parts[j] {
                    g.add_edge(u, v);
                }
            }
        }
    }
    g
}

/// Petersen graph: outer 5-cycle 0..4, inner pentagram 5..9, spokes.
pub fn petersen() -> SimpleGraph {
    let mut g = SimpleGraph::empty(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
        g.add_edge(i, 5 + i);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_counts() {
        assert_eq!(k7().edge_count(), 21);
        assert_eq!(k3311().order(), 8);
        assert_eq!(k3311().edge_count(), 22);
        assert_eq!(k33().degree_sequence(), vec![3; 6]);
        assert_eq!(petersen().degree_sequence(), vec![3; 10]);
    }
}
