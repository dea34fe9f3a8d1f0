//! 2-apex certification, the reduced-graph planarity conditions, and
//! intrinsic-knotting certificates by known-minor containment.

use crate::canon::{canon_simple, CanonicalForm};
use crate::catalog;
use crate::graph::SimpleGraph;
use crate::minor::{contract_edge, has_named_minor, MinorWitness};
use crate::moves;
use crate::planar::is_planar;
use crate::reduce::{delete_pair, reduced_is_k33, ReductionReport};

/// Witness that a graph becomes planar after deleting one vertex pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ApexCertificate {
    pub pair: (usize, usize),
}

impl ApexCertificate {
    pub fn verify(&self, g: &SimpleGraph) -> bool {
        delete_pair(g, self.pair.0, self.pair.1).map(|d| is_planar(&d)).unwrap_or(false)
    }
}

/// Scan all unordered pairs in lexicographic order; certificate for the
/// first pair whose deletion is planar, None if no pair works.
pub fn is_2_apex(g: &SimpleGraph) -> Option<ApexCertificate> {
    for a in 0..g.order() {
        for b in a + 1..g.order() {
            let deleted = delete_pair(g, a, b).expect("valid pair");
            if is_planar(&deleted) {
                return Some(ApexCertificate { pair: (a, b) });
            }
        }
    }
    None
}

/// The three reduced-graph conditions, each of which certifies that the
/// two-vertex deletion leaves a planar graph (so the original graph is not
/// intrinsically knotted via this pair).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prop1Tag {
    /// At most 8 edges.
    C1,
    /// Nine edges and not homeomorphic to K_{3,3}.
    C2,
    /// Ten edges with a parallel pair and no K_{3,3} minor.
    C3,
}

pub fn prop1_evaluate(r: &ReductionReport) -> Option<Prop1Tag> {
    match r.actual_edges {
        0..=8 => Some(Prop1Tag::C1),
        9 if !reduced_is_k33(&r.reduced) => Some(Prop1Tag::C2),
        10 if r.reduced.has_parallel_pair()
            && crate::minor::has_minor(&r.reduced.simplify(), &catalog::k33()).is_none() =>
        {
            Some(Prop1Tag::C3)
        }
        _ => None,
    }
}

/// A known intrinsically knotted graph the certifier may embed as a minor.
#[derive(Debug, Clone)]
pub struct KnownIkEntry {
    pub name: String,
    pub graph: SimpleGraph,
    pub form: CanonicalForm,
}

#[derive(Debug, Clone)]
pub struct KnownIkSet {
    pub entries: Vec<KnownIkEntry>,
}

impl KnownIkSet {
    /// The certification basis: K7 with its triangle-Y closure (the 21-edge
    /// intrinsically knotted graphs) and the whole K_{3,3,1,1} family.
    pub fn standard() -> KnownIkSet {
        let mut entries = Vec::new();
        for (i, m) in moves::expansion_closure(&catalog::k7()).into_iter().enumerate() {
            entries.push(KnownIkEntry {
                name: format!("k7-triangle-y-closure/{i}"),
                graph: m.graph,
                form: m.form,
            });
        }
        for (i, m) in moves::family_closure(&catalog::k3311()).members.into_iter().enumerate() {
            entries.push(KnownIkEntry {
                name: format!("k3311-family/{i}"),
                graph: m.graph,
                form: m.form,
            });
        }
        KnownIkSet { entries }
    }

    pub fn lookup(&self, form: &CanonicalForm) -> Option<&KnownIkEntry> {
        self.entries.iter().find(|e| e.form == *form)
    }
}

/// Certify that `g` is intrinsically knotted by exhibiting a known
/// intrinsically knotted minor: first isomorphism, then single-edge
/// contractions, then a full minor search.
pub fn certify_ik(g: &SimpleGraph, known: &KnownIkSet) -> Option<MinorWitness> {
    let host_canon = canon_simple(g);
    if let Some(entry) = known.lookup(&host_canon.form) {
        let pat_canon = canon_simple(&entry.graph);
        // Map pattern vertex p to the host vertex with the same canonical
        // position.
        let mut host_of_pos = vec![0usize; g.order()];
        for v in 0..g.order() {
            host_of_pos[host_canon.perm[v]] = v;
        }
        let phi: Vec<usize> =
            (0..entry.graph.order()).map(|p| host_of_pos[pat_canon.perm[p]]).collect();
        let witness = MinorWitness {
            pattern_name: entry.name.clone(),
            branch_sets: phi.iter().map(|&h| vec![h]).collect(),
            edge_assignment: entry
                .graph
                .edges()
                .into_iter()
                .map(|(p, q)| ((p, q), (phi[p], phi[q])))
                .collect(),
        };
        debug_assert!(witness.verify(g, &entry.graph));
        return Some(witness);
    }

    for (u, v) in g.edges() {
        let contracted = contract_edge(g, (u, v)).expect("edge listed by edges()");
        let c_canon = canon_simple(&contracted);
        if let Some(entry) = known.lookup(&c_canon.form) {
            let pat_canon = canon_simple(&entry.graph);
            let mut contracted_of_pos = vec![0usize; contracted.order()];
            for w in 0..contracted.order() {
                contracted_of_pos[c_canon.perm[w]] = w;
            }
            // Contracted labels map back to host labels: the merged vertex
            // is min(u,v), labels above max(u,v) shift down by one.
            let (lo, hi) = (u.min(v), u.max(v));
            let back = |w: usize| if w < hi { w } else { w + 1 };
            let branch_of = |p: usize| -> Vec<usize> {
                let w = contracted_of_pos[pat_canon.perm[p]];
                let h = back(w);
                if h == lo {
                    vec![lo, hi]
                } else {
                    vec![h]
                }
            };
            let branch_sets: Vec<Vec<usize>> =
                (0..entry.graph.order()).map(branch_of).collect();
            let mask = |s: &[usize]| s.iter().fold(0u64, |a, &v| a | 1 << v);
            let edge_assignment = entry
                .graph
                .edges()
                .into_iter()
                .map(|(p, q)| {
                    let he = crate::minor::cross_edge(
                        g,
                        mask(&branch_sets[p]),
                        mask(&branch_sets[q]),
                    )
                    .expect("contraction image realizes every pattern edge");
                    ((p, q), he)
                })
                .collect();
            let witness = MinorWitness {
                pattern_name: entry.name.clone(),
                branch_sets,
                edge_assignment,
            };
            debug_assert!(witness.verify(g, &entry.graph));
            return Some(witness);
        }
    }

    for entry in &known.entries {
        if entry.graph.edge_count() > g.edge_count() || entry.graph.order() > g.order() {
            continue;
        }
        if let Some(w) = has_named_minor(g, &entry.graph, &entry.name) {
            return Some(w);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::reduce;

    #[test]
    fn apex_examples() {
        let cert = is_2_apex(&catalog::complete(6)).expect("K6 minus two vertices is K4");
        assert_eq!(cert.pair, (0, 1));
        assert!(cert.verify(&catalog::complete(6)));

        assert!(is_2_apex(&catalog::complete(7)).is_none());

        let cert = is_2_apex(&catalog::petersen()).expect("Petersen is 2-apex");
        assert!(cert.verify(&catalog::petersen()));
    }

    #[test]
    fn prop1_examples() {
        // K_{3,3} after deleting an adjacent pair reduces to nothing: C1.
        let r = reduce(&catalog::k33(), 0, 3).unwrap();
        assert_eq!(prop1_evaluate(&r), Some(Prop1Tag::C1));

        // A reduction equal to K_{3,3} itself yields no conclusion.
        let mut g = SimpleGraph::empty(8);
        for u in 0..3 {
            for v in 3..6 {
                g.add_edge(u, v);
            }
        }
        for u in 0..3 {
            g.add_edge(6, u);
        }
        for v in 3..6 {
            g.add_edge(7, v);
        }
        let r = reduce(&g, 6, 7).unwrap();
        assert_eq!(r.actual_edges, 9);
        assert_eq!(prop1_evaluate(&r), None);

        // K7 reduces to K5 on any pair: 10 edges, no parallel pair, no tag.
        let r = reduce(&catalog::k7(), 0, 1).unwrap();
        assert_eq!(r.actual_edges, 10);
        assert_eq!(prop1_evaluate(&r), None);
    }

    #[test]
    fn prop1_tag_implies_planar_deletion() {
        let graphs = [catalog::k33(), catalog::petersen(), catalog::k3311(), catalog::k7()];
        for g in &graphs {
            for a in 0..g.order() {
                for b in a + 1..g.order() {
                    let r = reduce(g, a, b).unwrap();
                    if prop1_evaluate(&r).is_some() {
                        assert!(is_planar(&delete_pair(g, a, b).unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn certify_k3311_by_isomorphism() {
        let known = KnownIkSet::standard();
        let w = certify_ik(&catalog::k3311(), &known).expect("member of its own family");
        assert!(w.pattern_name.starts_with("k3311-family/"));
        assert!(w.branch_sets.iter().all(|s| s.len() == 1));
    }

    #[test]
    fn k33_gets_no_certificate() {
        let known = KnownIkSet::standard();
        assert!(certify_ik(&catalog::k33(), &known).is_none());
    }
}
