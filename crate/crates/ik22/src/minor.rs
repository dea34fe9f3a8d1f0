//! Minor containment by branch-set backtracking, edge contraction, and
//! verified minor witnesses.

use crate::graph::{mask_n, BitIter, GraphError, SimpleGraph};

/// A verified embedding of a pattern as a minor of a host: one connected,
/// pairwise-disjoint branch set per pattern vertex and one host edge per
/// pattern edge.
#[derive(Debug, Clone)]
pub struct MinorWitness {
    pub pattern_name: String,
    /// branch_sets[p] lists the host vertices contracted to pattern vertex p.
    pub branch_sets: Vec<Vec<usize>>,
    /// (pattern edge, host edge) pairs.
    pub edge_assignment: Vec<((usize, usize), (usize, usize))>,
}

impl MinorWitness {
    pub fn verify(&self, host: &SimpleGraph, pattern: &SimpleGraph) -> bool {
        if self.branch_sets.len() != pattern.order() {
            return false;
        }
        let mut used = 0u64;
        let mut masks = Vec::with_capacity(self.branch_sets.len());
        for set in &self.branch_sets {
            if set.is_empty() || set.iter().any(|&v| v >= host.order()) {
                return false;
            }
            let mask = set.iter().fold(0u64, |acc, &v| acc | 1 << v);
            if mask & used != 0 {
                return false;
            }
            used |= mask;
            let (sub, _) = host.induced(mask);
            if !sub.is_connected() {
                return false;
            }
            masks.push(mask);
        }
        let mut required = pattern.edges();
        required.sort_unstable();
        let mut assigned: Vec<(usize, usize)> =
            self.edge_assignment.iter().map(|&(pe, _)| pe).collect();
        assigned.sort_unstable();
        if assigned != required {
            return false;
        }
        for &((p, q), (u, v)) in &self.edge_assignment {
            if !host.has_edge(u, v) {
                return false;
            }
            let ok_forward = masks[p] >> u & 1 == 1 && masks[q] >> v & 1 == 1;
            let ok_reverse = masks[p] >> v & 1 == 1 && masks[q] >> u & 1 == 1;
            if !ok_forward && !ok_reverse {
                return false;
            }
        }
        true
    }

    pub fn describe(&self) -> String {
        let mut out = format!("minor pattern: {}\n", self.pattern_name);
        for (p, set) in self.branch_sets.iter().enumerate() {
            out.push_str(&format!(
                "  branch {p}: {{{}}}\n",
                set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
            ));
        }
        for ((p, q), (u, v)) in &self.edge_assignment {
            out.push_str(&format!("  edge {p}-{q} via {u}-{v}\n"));
        }
        out
    }
}

/// Merge the endpoints of an edge; loops vanish and parallel edges collapse.
pub fn contract_edge(g: &SimpleGraph, e: (usize, usize)) -> Result<SimpleGraph, GraphError> {
    let (u, v) = e;
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if !g.has_edge(u, v) {
        return Err(GraphError::NoSuchEdge(u, v));
    }
    let (u, v) = (u.min(v), u.max(v));
    let n = g.order();
    let relabel = |w: usize| if w < v { w } else { w - 1 };
    let mut h = SimpleGraph::empty(n - 1);
    for (x, y) in g.edges() {
        if (x, y) == (u, v) {
            continue;
        }
        let x2 = if x == v { u } else { x };
        let y2 = if y == v { u } else { y };
        if x2 != y2 && !h.has_edge(relabel(x2), relabel(y2)) {
            h.add_edge(relabel(x2), relabel(y2));
        }
    }
    Ok(h)
}

/// Exhaustive branch-set search for `pattern` as a minor of `host`.
/// Returns a verified witness, or None when no embedding exists.
pub fn has_minor(host: &SimpleGraph, pattern: &SimpleGraph) -> Option<MinorWitness> {
    has_named_minor(host, pattern, "pattern")
}

pub fn has_named_minor(
    host: &SimpleGraph,
    pattern: &SimpleGraph,
    name: &str,
) -> Option<MinorWitness> {
    let k = pattern.order();
    if k == 0 {
        return Some(MinorWitness {
            pattern_name: name.to_string(),
            branch_sets: Vec::new(),
            edge_assignment: Vec::new(),
        });
    }
    if host.order() < k || host.edge_count() < pattern.edge_count() {
        return None;
    }
    // Place high-degree pattern vertices first.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&p| std::cmp::Reverse(pattern.degree(p)));
    // Interchangeable pattern vertices (equal neighborhoods) get their
    // branch sets in increasing minimum-vertex order.
    let mut twin_before = vec![usize::MAX; k];
    for i in 0..k {
        for j in (0..i).rev() {
            let (p, q) = (order[i], order[j]);
            if pattern.nbr_mask(p) == pattern.nbr_mask(q) && !pattern.has_edge(p, q) {
                twin_before[i] = j;
                break;
            }
        }
    }

    let mut search = MinorSearch {
        host,
        pattern,
        order: &order,
        twin_before: &twin_before,
        sets: vec![0u64; k],
        used: 0,
    };
    if search.place(0) {
        let sets = search.sets;
        let mut branch_sets = vec![Vec::new(); k];
        for (i, &p) in order.iter().enumerate() {
            branch_sets[p] = BitIter(sets[i]).collect();
        }
        let mut edge_assignment = Vec::new();
        for (p, q) in pattern.edges() {
            let (mp, mq) = (
                branch_sets[p].iter().fold(0u64, |a, &v| a | 1 << v),
                branch_sets[q].iter().fold(0u64, |a, &v| a | 1 << v),
            );
            let he = cross_edge(host, mp, mq).expect("search guaranteed the edge");
            edge_assignment.push(((p, q), he));
        }
        let witness = MinorWitness {
            pattern_name: name.to_string(),
            branch_sets,
            edge_assignment,
        };
        debug_assert!(witness.verify(host, pattern));
        Some(witness)
    } else {
        None
    }
}

pub(crate) fn cross_edge(host: &SimpleGraph, a: u64, b: u64) -> Option<(usize, usize)> {
    for u in BitIter(a) {
        let hits = host.nbr_mask(u) & b;
        if hits != 0 {
            return Some((u, hits.trailing_zeros() as usize));
        }
    }
    None
}

struct MinorSearch<'a> {
    host: &'a SimpleGraph,
    pattern: &'a SimpleGraph,
    order: &'a [usize],
    twin_before: &'a [usize],
    sets: Vec<u64>,
    used: u64,
}

impl MinorSearch<'_> {
    fn place(&mut self, i: usize) -> bool {
        let k = self.order.len();
        if i == k {
            return true;
        }
        let p = self.order[i];
        let available = mask_n(self.host.order()) & !self.used;
        let avail_count = available.count_ones() as usize;
        if avail_count < k - i {
            return false;
        }
        let slack = avail_count - (k - i);
        // Every branch set placed so far that still awaits a pattern edge to
        // p must be reachable from the new set.
        let mut required = 0u64;
        for j in 0..i {
            if self.pattern.has_edge(p, self.order[j]) {
                required |= 1 << j;
            }
        }
        let min_start = match self.twin_before[i] {
            usize::MAX => 0,
            j => self.sets[j].trailing_zeros() as usize + 1,
        };
        for seed in BitIter(available) {
            if seed < min_start {
                continue;
            }
            // Sets are enumerated by minimum vertex: ban smaller vertices.
            let scope = available & !mask_n(seed);
            if self.grow(i, 1 << seed, scope & !(1 << seed), required, slack) {
                return true;
            }
        }
        false
    }

    /// Expand the current candidate set, trying acceptance first and then
    /// every frontier extension (standard connected-subset enumeration:
    /// each rejected extension stays banned below).
    fn grow(&mut self, i: usize, set: u64, scope: u64, required: u64, slack: usize) -> bool {
        let satisfied = |set: u64| -> bool {
            BitIter(required).all(|j| {
                let target = self.sets[j];
                BitIter(set).any(|v| self.host.nbr_mask(v) & target != 0)
            })
        };
        if satisfied(set) {
            self.sets[i] = set;
            self.used |= set;
            if self.place(i + 1) {
                return true;
            }
            self.used &= !set;
            self.sets[i] = 0;
        }
        if set.count_ones() as usize > slack {
            return false;
        }
        let mut frontier: Vec<usize> = {
            let mut f = 0u64;
            for v in BitIter(set) {
                f |= self.host.nbr_mask(v);
            }
            BitIter(f & scope).collect()
        };
        let mut banned = 0u64;
        while let Some(c) = frontier.pop() {
            banned |= 1 << c;
            if self.grow(i, set | 1 << c, scope & !banned, required, slack) {
                return true;
            }
        }
        false
    }
}
