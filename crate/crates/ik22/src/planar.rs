//! Planarity testing by face embedding (Demoucron–Malgrange–Pertuiset),
//! run per biconnected component. Loops and edge multiplicities never
//! affect planarity and are dropped up front.

use crate::graph::{mask_n, BitIter, Multigraph, SimpleGraph};

pub fn is_planar(m: &Multigraph) -> bool {
    is_planar_simple(&m.simplify())
}

pub fn is_planar_simple(g: &SimpleGraph) -> bool {
    let n = g.order();
    if n >= 3 && g.edge_count() > 3 * n - 6 {
        return false;
    }
    for comp in components(g) {
        let (sub, _) = g.induced(comp);
        for bicomp in biconnected_components(&sub) {
            if !dmp_planar(&bicomp) {
                return false;
            }
        }
    }
    true
}

fn components(g: &SimpleGraph) -> Vec<u64> {
    let mut unseen = mask_n(g.order());
    let mut out = Vec::new();
    while unseen != 0 {
        let start = unseen.trailing_zeros() as usize;
        let mut comp = 1u64 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0u64;
            for v in BitIter(frontier) {
                next |= g.nbr_mask(v);
            }
            frontier = next & !comp;
            comp |= next;
        }
        out.push(comp);
        unseen &= !comp;
    }
    out
}

/// Biconnected components as edge-induced subgraphs (relabeled densely).
fn biconnected_components(g: &SimpleGraph) -> Vec<SimpleGraph> {
    struct Dfs<'a> {
        g: &'a SimpleGraph,
        disc: Vec<usize>,
        low: Vec<usize>,
        timer: usize,
        estack: Vec<(usize, usize)>,
        comps: Vec<Vec<(usize, usize)>>,
    }
    impl Dfs<'_> {
        fn visit(&mut self, v: usize, parent: usize) {
            self.disc[v] = self.timer;
            self.low[v] = self.timer;
            self.timer += 1;
            for w in self.g.neighbors(v) {
                if self.disc[w] == usize::MAX {
                    self.estack.push((v, w));
                    self.visit(w, v);
                    self.low[v] = self.low[v].min(self.low[w]);
                    if self.low[w] >= self.disc[v] {
                        let mut comp = Vec::new();
                        while let Some(e) = self.estack.pop() {
                            comp.push(e);
                            if e == (v, w) {
                                break;
                            }
                        }
                        self.comps.push(comp);
                    }
                } else if w != parent && self.disc[w] < self.disc[v] {
                    self.estack.push((v, w));
                    self.low[v] = self.low[v].min(self.disc[w]);
                }
            }
        }
    }
    let n = g.order();
    let mut dfs = Dfs {
        g,
        disc: vec![usize::MAX; n],
        low: vec![0; n],
        timer: 0,
        estack: Vec::new(),
        comps: Vec::new(),
    };
    for root in 0..n {
        if dfs.disc[root] == usize::MAX {
            dfs.visit(root, usize::MAX);
        }
    }
    dfs.comps
        .into_iter()
        .map(|edges| {
            let mut verts: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
            verts.sort_unstable();
            verts.dedup();
            let pos = |x: usize| verts.binary_search(&x).unwrap();
            let mut sub = SimpleGraph::empty(verts.len());
            for (u, v) in edges {
                sub.add_edge(pos(u), pos(v));
            }
            sub
        })
        .collect()
}

/// Demoucron face embedding on a biconnected graph.
fn dmp_planar(g: &SimpleGraph) -> bool {
    let n = g.order();
    let m = g.edge_count();
    if n < 5 || m < 9 {
        return true; // smaller than both Kuratowski graphs
    }
    if m > 3 * n - 6 {
        return false;
    }

    let cycle = find_cycle(g).expect("biconnected graph with m >= n has a cycle");
    let mut embedded_vertices = 0u64;
    for &v in &cycle {
        embedded_vertices |= 1 << v;
    }
    let mut embedded_edges = vec![0u64; n];
    for i in 0..cycle.len() {
        let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        embedded_edges[u] |= 1 << v;
        embedded_edges[v] |= 1 << u;
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle];
    let mut remaining = m - faces[0].len();

    while remaining > 0 {
        let fragments = find_fragments(g, embedded_vertices, &embedded_edges);
        debug_assert!(!fragments.is_empty());
        // Admissible faces per fragment; bail out on an unplaceable one.
        let mut chosen: Option<(usize, usize, usize)> = None; // (#adm, frag, face)
        for (fi, frag) in fragments.iter().enumerate() {
            let mut adm = Vec::new();
            for (i, f) in faces.iter().enumerate() {
                let fmask = f.iter().fold(0u64, |acc, &v| acc | 1 << v);
                if frag.attachments & !fmask == 0 {
                    adm.push(i);
                }
            }
            if adm.is_empty() {
                return false;
            }
            if chosen.is_none() || adm.len() < chosen.unwrap().0 {
                chosen = Some((adm.len(), fi, adm[0]));
            }
        }
        let (_, fi, face_idx) = chosen.unwrap();
        let frag = &fragments[fi];
        let path = fragment_path(g, frag);
        debug_assert!(path.len() >= 2);

        for w in path.windows(2) {
            embedded_edges[w[0]] |= 1 << w[1];
            embedded_edges[w[1]] |= 1 << w[0];
            remaining -= 1;
        }
        for &v in &path[1..path.len() - 1] {
            embedded_vertices |= 1 << v;
        }

        let face = faces.swap_remove(face_idx);
        let p1 = face.iter().position(|&v| v == path[0]).unwrap();
        let p2 = face.iter().position(|&v| v == *path.last().unwrap()).unwrap();
        let arc = |from: usize, to: usize| {
            let mut out = Vec::new();
            let mut i = from;
            loop {
                out.push(face[i]);
                if i == to {
                    break;
                }
                i = (i + 1) % face.len();
            }
            out
        };
        let interior = &path[1..path.len() - 1];
        let mut f1 = arc(p1, p2); // path[0] .. path[last] along the face
        f1.extend(interior.iter().rev());
        let mut f2 = arc(p2, p1); // path[last] .. path[0] the other way
        f2.extend(interior.iter());
        faces.push(f1);
        faces.push(f2);
    }
    true
}

struct Fragment {
    /// Embedded vertices touching the fragment.
    attachments: u64,
    /// Non-embedded vertices of the fragment (empty for a chord).
    inner: u64,
    /// For a chord: its two endpoints.
    chord: Option<(usize, usize)>,
}

fn find_fragments(g: &SimpleGraph, embedded_vertices: u64, embedded_edges: &[u64]) -> Vec<Fragment> {
    let mut frags = Vec::new();
    for (u, v) in g.edges() {
        if embedded_vertices >> u & 1 == 1
            && embedded_vertices >> v & 1 == 1
            && embedded_edges[u] >> v & 1 == 0
        {
            frags.push(Fragment {
                attachments: (1 << u) | (1 << v),
                inner: 0,
                chord: Some((u, v)),
            });
        }
    }
    let outside = mask_n(g.order()) & !embedded_vertices;
    let mut unseen = outside;
    while unseen != 0 {
        let start = unseen.trailing_zeros() as usize;
        let mut comp = 1u64 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0u64;
            for v in BitIter(frontier) {
                next |= g.nbr_mask(v) & outside;
            }
            frontier = next & !comp;
            comp |= next;
        }
        unseen &= !comp;
        let mut attachments = 0u64;
        for v in BitIter(comp) {
            attachments |= g.nbr_mask(v) & embedded_vertices;
        }
        frags.push(Fragment { attachments, inner: comp, chord: None });
    }
    frags
}

/// A path between two distinct attachments whose interior lies inside the
/// fragment.
fn fragment_path(g: &SimpleGraph, frag: &Fragment) -> Vec<usize> {
    if let Some((u, v)) = frag.chord {
        return vec![u, v];
    }
    let a1 = frag.attachments.trailing_zeros() as usize;
    let other_attachments = frag.attachments & !(1 << a1);
    // BFS through fragment vertices from a1 until another attachment appears.
    let mut parent = vec![usize::MAX; g.order()];
    let mut queue: Vec<usize> = BitIter(g.nbr_mask(a1) & frag.inner).collect();
    for &v in &queue {
        parent[v] = a1;
    }
    let mut qi = 0;
    while qi < queue.len() {
        let v = queue[qi];
        qi += 1;
        let exits = g.nbr_mask(v) & other_attachments;
        if exits != 0 {
            let a2 = exits.trailing_zeros() as usize;
            let mut path = vec![a2, v];
            let mut cur = v;
            while parent[cur] != a1 {
                cur = parent[cur];
                path.push(cur);
            }
            path.push(a1);
            path.reverse();
            return path;
        }
        for w in BitIter(g.nbr_mask(v) & frag.inner) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                queue.push(w);
            }
        }
    }
    unreachable!("fragment in a biconnected graph has at least two attachments");
}

fn find_cycle(g: &SimpleGraph) -> Option<Vec<usize>> {
    let n = g.order();
    let mut parent = vec![usize::MAX; n];
    let mut state = vec![0u8; n]; // 0 unseen, 1 active, 2 done
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, usize::MAX)];
        while let Some((v, p)) = stack.pop() {
            if state[v] == 1 {
                state[v] = 2;
                continue;
            }
            if state[v] == 2 {
                continue;
            }
            state[v] = 1;
            parent[v] = p;
            stack.push((v, p)); // revisit marker
            for w in g.neighbors(v) {
                if state[w] == 0 {
                    stack.push((w, v));
                } else if state[w] == 1 && w != p {
                    // Back edge v -> w closes a cycle.
                    let mut cycle = vec![v];
                    let mut cur = v;
                    while cur != w {
                        cur = parent[cur];
                        cycle.push(cur);
                    }
                    return Some(cycle);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn planar_s(g: &SimpleGraph) -> bool {
        is_planar_simple(g)
    }

    #[test]
    fn small_classics() {
        assert!(planar_s(&catalog::complete(4)));
        assert!(!planar_s(&catalog::complete(5)));
        assert!(!planar_s(&catalog::k33()));
        assert!(!planar_s(&catalog::petersen()));
        assert!(planar_s(&SimpleGraph::empty(0)));
        assert!(planar_s(&SimpleGraph::empty(5)));
    }

    #[test]
    fn doubled_k33_stays_nonplanar() {
        let mut m = catalog::k33().to_multigraph();
        for (u, v) in catalog::k33().edges() {
            m.add_edge(u, v, 1);
        }
        assert!(!is_planar(&m));
    }

    #[test]
    fn k5_minus_edge_planar() {
        let mut g = catalog::complete(5);
        g.remove_edge(0, 1);
        assert!(planar_s(&g));
    }

    #[test]
    fn k33_minus_edge_planar() {
        let mut g = catalog::k33();
        g.remove_edge(0, 3);
        assert!(planar_s(&g));
    }

    #[test]
    fn disconnected_and_cut_vertices() {
        // Two K4 blocks sharing a cut vertex, plus an isolated K5 elsewhere
        // makes it nonplanar; without the K5 it is planar.
        let mut g = SimpleGraph::empty(7);
        for u in 0..4 {
            for v in u + 1..4 {
                g.add_edge(u, v);
            }
        }
        for u in 3..7 {
            for v in u + 1..7 {
                g.add_edge(u, v);
            }
        }
        assert!(planar_s(&g));
        let mut with_k5 = SimpleGraph::empty(12);
        for (u, v) in g.edges() {
            with_k5.add_edge(u, v);
        }
        for u in 7..12 {
            for v in u + 1..12 {
                with_k5.add_edge(u, v);
            }
        }
        assert!(!planar_s(&with_k5));
    }

    #[test]
    fn subdivided_k5_nonplanar() {
        // Subdivide every edge of K5: 15 vertices, still nonplanar.
        let k5 = catalog::complete(5);
        let edges = k5.edges();
        let mut g = SimpleGraph::empty(5 + edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            g.add_edge(u, 5 + i);
            g.add_edge(v, 5 + i);
        }
        assert!(!planar_s(&g));
        assert!(g.is_triangle_free());
    }

    #[test]
    fn grid_planar() {
        let mut g = SimpleGraph::empty(16);
        for r in 0..4 {
            for c in 0..4 {
                let v = 4 * r + c;
                if c + 1 < 4 {
                    g.add_edge(v, v + 1);
                }
                if r + 1 < 4 {
                    g.add_edge(v, v + 4);
                }
            }
        }
        assert!(planar_s(&g));
        // Adding both diagonals of the whole grid keeps it planar-testable.
        g.add_edge(0, 15);
        assert!(planar_s(&g));
    }
}
