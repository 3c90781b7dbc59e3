//! Maximum matching in general graphs (Edmonds' blossom algorithm), fan
//! detection, and the matched/unmatched decomposition of a neighbourhood.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

const NONE: usize = usize::MAX;

/// A matching inside `G[s]`, in host vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub edges: Vec<(usize, usize)>,
    pub matched: VertexSet,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn verify(&self, g: &Graph, s: &VertexSet) -> Result<(), String> {
        let mut seen = VertexSet::new(g.order());
        for &(u, v) in &self.edges {
            if !g.has_edge(u, v) || !s.contains(u) || !s.contains(v) {
                return Err(format!("{u}-{v} is not an edge of G[S]"));
            }
            if !seen.insert(u) || !seen.insert(v) {
                return Err(format!("{u}-{v} shares an endpoint"));
            }
        }
        if seen != self.matched {
            return Err("matched set disagrees with edges".into());
        }
        Ok(())
    }
}

/// Tutte–Berge witness: removing `barrier` leaves `odd_components` odd
/// components, so no matching exceeds `(|S| + |barrier| - odd) / 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TutteBerge {
    pub barrier: VertexSet,
    pub odd_components: usize,
}

impl TutteBerge {
    /// Recounts the odd components and returns the implied upper bound.
    pub fn upper_bound(&self, g: &Graph, s: &VertexSet) -> Result<usize, String> {
        if !self.barrier.is_subset(s) {
            return Err("barrier leaves S".into());
        }
        let rest = s.difference(&self.barrier);
        let odd = g
            .components_within(&rest)
            .iter()
            .filter(|c| c.len() % 2 == 1)
            .count();
        if odd != self.odd_components {
            return Err(format!(
                "claimed {} odd components, found {odd}",
                self.odd_components
            ));
        }
        Ok((s.count() + self.barrier.count() - odd) / 2)
    }
}

/// Local adjacency-list view of `G[s]` plus the blossom search state.
struct Blossom<'a> {
    ids: Vec<usize>,
    adj: Vec<Vec<usize>>,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    even: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
    _g: &'a Graph,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a Graph, s: &VertexSet) -> Self {
        let ids = s.to_vec();
        let mut local = vec![NONE; g.order()];
        for (i, &v) in ids.iter().enumerate() {
            local[v] = i;
        }
        let adj: Vec<Vec<usize>> = ids
            .iter()
            .map(|&v| {
                g.neighbors(v)
                    .iter()
                    .filter(|&u| s.contains(u))
                    .map(|u| local[u])
                    .collect()
            })
            .collect();
        let k = ids.len();
        Blossom {
            ids,
            adj,
            mate: vec![NONE; k],
            parent: vec![NONE; k],
            base: (0..k).collect(),
            even: vec![false; k],
            in_blossom: vec![false; k],
            queue: VecDeque::new(),
            _g: g,
        }
    }

    fn greedy(&mut self) -> usize {
        let mut size = 0;
        for v in 0..self.ids.len() {
            if self.mate[v] != NONE {
                continue;
            }
            if let Some(&u) = self.adj[v].iter().find(|&&u| self.mate[u] == NONE) {
                self.mate[v] = u;
                self.mate[u] = v;
                size += 1;
            }
        }
        size
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.ids.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn reset(&mut self) {
        let k = self.ids.len();
        self.parent.iter_mut().for_each(|p| *p = NONE);
        self.even.iter_mut().for_each(|e| *e = false);
        for i in 0..k {
            self.base[i] = i;
        }
        self.queue.clear();
    }

    fn contract(&mut self, v: usize, to: usize) {
        let cur = self.lca(v, to);
        self.in_blossom.iter_mut().for_each(|b| *b = false);
        self.mark_path(v, cur, to);
        self.mark_path(to, cur, v);
        for i in 0..self.ids.len() {
            if self.in_blossom[self.base[i]] {
                self.base[i] = cur;
                if !self.even[i] {
                    self.even[i] = true;
                    self.queue.push_back(i);
                }
            }
        }
    }

    /// Alternating-tree search from an exposed `root`; returns the exposed
    /// endpoint of an augmenting path if one exists.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        self.reset();
        self.even[root] = true;
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for i in 0..self.adj[v].len() {
                let to = self.adj[v][i];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    self.contract(v, to);
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.even[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }

    fn run(&mut self, limit: usize) -> usize {
        let mut size = self.greedy();
        for root in 0..self.ids.len() {
            if size >= limit {
                break;
            }
            if self.mate[root] == NONE {
                if let Some(end) = self.find_path(root) {
                    self.augment(end);
                    size += 1;
                }
            }
        }
        size
    }

    /// Gallai–Edmonds labelling from all exposed vertices at once. With a
    /// maximum matching no two trees touch, so the odd (inner) vertices
    /// form a Tutte–Berge barrier.
    fn barrier(&mut self) -> Vec<usize> {
        self.reset();
        let k = self.ids.len();
        let mut root_of = vec![NONE; k];
        for v in 0..k {
            if self.mate[v] == NONE {
                self.even[v] = true;
                root_of[v] = v;
                self.queue.push_back(v);
            }
        }
        while let Some(v) = self.queue.pop_front() {
            for i in 0..self.adj[v].len() {
                let to = self.adj[v][i];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if self.even[to] {
                    assert_eq!(
                        root_of[v], root_of[to],
                        "augmenting path remains; matching not maximum"
                    );
                    let r = root_of[v];
                    self.contract(v, to);
                    for u in 0..k {
                        if self.even[u] && root_of[u] == NONE {
                            root_of[u] = r;
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    root_of[to] = root_of[v];
                    let next = self.mate[to];
                    assert_ne!(next, NONE, "augmenting path remains; matching not maximum");
                    root_of[next] = root_of[v];
                    self.even[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        (0..k)
            .filter(|&v| self.parent[v] != NONE && !self.even[v])
            .collect()
    }

    fn matching(&self, n: usize) -> Matching {
        let mut edges = Vec::new();
        let mut matched = VertexSet::new(n);
        for (i, &m) in self.mate.iter().enumerate() {
            if m != NONE && i < m {
                let (u, v) = (self.ids[i], self.ids[m]);
                edges.push((u.min(v), u.max(v)));
                matched.insert(u);
                matched.insert(v);
            }
        }
        edges.sort_unstable();
        Matching { edges, matched }
    }
}

/// Maximum matching of `G[s]` together with an optimality certificate.
pub fn max_matching_within(g: &Graph, s: &VertexSet) -> (Matching, TutteBerge) {
    let mut b = Blossom::new(g, s);
    b.run(usize::MAX);
    let m = b.matching(g.order());
    let barrier_local = b.barrier();
    let barrier = VertexSet::from_iter(g.order(), barrier_local.iter().map(|&i| b.ids[i]));
    let rest = s.difference(&barrier);
    let odd_components = g
        .components_within(&rest)
        .iter()
        .filter(|c| c.len() % 2 == 1)
        .count();
    (
        m,
        TutteBerge {
            barrier,
            odd_components,
        },
    )
}

pub fn max_matching(g: &Graph) -> (Matching, TutteBerge) {
    max_matching_within(g, &g.vertices())
}

/// A matching of `G[s]` that is maximum or has at least `limit` edges.
pub fn matching_up_to(g: &Graph, s: &VertexSet, limit: usize) -> Matching {
    let mut b = Blossom::new(g, s);
    b.run(limit);
    b.matching(g.order())
}

/// Centre plus `m` disjoint edges inside its neighbourhood.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanEmbedding {
    pub center: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl FanEmbedding {
    /// Pattern map for [`Graph::fan`]: apex `0`, pair `i` on `2i+1, 2i+2`.
    pub fn to_map(&self) -> Vec<usize> {
        let mut map = vec![self.center];
        for &(a, b) in &self.pairs {
            map.push(a);
            map.push(b);
        }
        map
    }
}

/// Lowest-id centre whose neighbourhood holds an `m`-matching.
pub fn find_fan(g: &Graph, m: usize) -> Option<FanEmbedding> {
    assert!(m >= 1, "fans need m ≥ 1");
    (0..g.order()).find_map(|c| fan_at(g, c, m))
}

pub fn fan_at(g: &Graph, center: usize, m: usize) -> Option<FanEmbedding> {
    let nb = g.neighbors(center);
    if nb.count() < 2 * m {
        return None;
    }
    let mt = matching_up_to(g, nb, m);
    (mt.size() >= m).then(|| FanEmbedding {
        center,
        pairs: mt.edges[..m].to_vec(),
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("neighbourhood of {center} holds a fan-sized matching")]
    FanPresent { center: usize, fan: FanEmbedding },
}

/// Decomposition of `N_S(v)` around a maximum matching `M`:
/// `U = N_S(v) ∖ V(M)` is independent; `X ⊆ U` has no neighbour in `X ∪ Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborhoodStructure {
    pub center: usize,
    pub restriction: VertexSet,
    pub degree: usize,
    /// `(x_i, y_i)`, pairs with `d_U(y_i) ≤ 1` first.
    pub pairs: Vec<(usize, usize)>,
    pub k: usize,
    pub u: VertexSet,
    pub x: VertexSet,
    pub y: VertexSet,
}

pub fn neighborhood_structure(
    g: &Graph,
    v: usize,
    s: &VertexSet,
    m: usize,
) -> Result<NeighborhoodStructure, StructureError> {
    let mut nb = g.neighbors_in(v, s);
    nb.remove(v);
    let degree = nb.count();
    let mt = matching_up_to(g, &nb, usize::MAX);
    if mt.size() >= m {
        return Err(StructureError::FanPresent {
            center: v,
            fan: FanEmbedding {
                center: v,
                pairs: mt.edges[..m].to_vec(),
            },
        });
    }
    let u = nb.difference(&mt.matched);
    let mut pairs: Vec<(usize, usize)> = mt
        .edges
        .iter()
        .map(|&(a, b)| {
            let (da, db) = (g.degree_within(a, &u), g.degree_within(b, &u));
            if (da, a) <= (db, b) {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    pairs.sort_by_key(|&(x, y)| (g.degree_within(y, &u) >= 2, x));
    let k = pairs
        .iter()
        .filter(|&&(_, y)| g.degree_within(y, &u) <= 1)
        .count();
    let mut core = mt.matched.clone();
    for &(_, y) in &pairs[k..] {
        core.remove(y);
    }
    let mut y = core.clone();
    for c in core.iter() {
        y.union_with(&g.neighbors_in(c, &u));
    }
    let x = u.difference(&y);
    Ok(NeighborhoodStructure {
        center: v,
        restriction: s.clone(),
        degree,
        pairs,
        k,
        u,
        x,
        y,
    })
}

impl NeighborhoodStructure {
    pub fn t(&self) -> usize {
        self.pairs.len()
    }

    /// Re-checks every structural predicate and the four size bounds.
    pub fn verify(&self, g: &Graph, m: usize) -> Result<(), String> {
        let mut nb = g.neighbors_in(self.center, &self.restriction);
        nb.remove(self.center);
        if nb.count() != self.degree {
            return Err("degree mismatch".into());
        }
        let mut vm = VertexSet::new(g.order());
        for &(a, b) in &self.pairs {
            if !g.has_edge(a, b)
                || !nb.contains(a)
                || !nb.contains(b)
                || !vm.insert(a)
                || !vm.insert(b)
            {
                return Err(format!(
                    "pair {a}-{b} is not a matching edge of the neighbourhood"
                ));
            }
        }
        if self.u != nb.difference(&vm) {
            return Err("U is not N_S(v) minus V(M)".into());
        }
        for a in self.u.iter() {
            if g.neighbors(a).intersects(&self.u) {
                return Err(format!("U not independent at {a}"));
            }
        }
        for (i, &(x, y)) in self.pairs.iter().enumerate() {
            let (dx, dy) = (g.degree_within(x, &self.u), g.degree_within(y, &self.u));
            if dx > dy {
                return Err(format!("pair {i} mislabelled"));
            }
            if (i < self.k) != (dy <= 1) {
                return Err(format!("pair {i} on the wrong side of k"));
            }
        }
        if self.x.intersects(&self.y) {
            return Err("X and Y overlap".into());
        }
        let xy = self.x.union(&self.y);
        for a in self.x.iter() {
            if g.neighbors(a).intersects(&xy) {
                return Err(format!("{a} in X has a neighbour in X ∪ Y"));
            }
        }
        let d = self.degree as i64;
        let m = m as i64;
        let checks = [
            (self.u.count() as i64 >= d - 2 * m + 2, "|U| ≥ d - 2m + 2"),
            (self.x.count() as i64 >= d - 3 * m + 3, "|X| ≥ d - 3m + 3"),
            ((self.y.count() as i64) <= 3 * m - 3, "|Y| ≤ 3m - 3"),
            (
                (self.x.count() + self.y.count()) as i64 > d - m,
                "|X| + |Y| ≥ d - m + 1",
            ),
        ];
        for (ok, what) in checks {
            if !ok {
                return Err(format!("bound violated: {what}"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_graph;

    fn certified_size(g: &Graph) -> usize {
        let (m, c) = max_matching(g);
        m.verify(g, &g.vertices()).unwrap();
        assert_eq!(c.upper_bound(g, &g.vertices()).unwrap(), m.size());
        m.size()
    }

    #[test]
    fn small_matchings() {
        assert_eq!(certified_size(&Graph::complete(4)), 2);
        assert_eq!(certified_size(&Graph::cycle(5)), 2);
        assert_eq!(certified_size(&Graph::new(3)), 0);
        let petersen = Graph::from_edges(
            10,
            [
                (0, 1),
                (0, 4),
                (0, 5),
                (1, 2),
                (1, 6),
                (2, 3),
                (2, 7),
                (3, 4),
                (3, 8),
                (4, 9),
                (5, 7),
                (5, 8),
                (6, 8),
                (6, 9),
                (7, 9),
            ],
        )
        .unwrap();
        assert_eq!(certified_size(&petersen), 5);
    }

    #[test]
    fn blossom_needed() {
        // Two triangles joined by a path; greedy from 0 can get stuck.
        let g = Graph::from_edges(
            8,
            [
                (0, 1),
                (1, 2),
                (2, 0),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 5),
            ],
        )
        .unwrap();
        assert_eq!(certified_size(&g), 4);
    }

    #[test]
    fn random_certificates() {
        for seed in 0..50 {
            certified_size(&random_graph(30, 0.08, seed));
        }
    }

    #[test]
    fn fan_examples() {
        assert!(find_fan(&Graph::complete(7), 3).is_some());
        assert!(find_fan(&Graph::complete_bipartite(4, 4), 1).is_none());
        let f = find_fan(&Graph::fan(3), 3).unwrap();
        assert_eq!(f.center, 0);
    }

    #[test]
    fn star_structure() {
        let mut g = Graph::new(7);
        for v in 1..7 {
            g.add_edge(0, v);
        }
        let ns = neighborhood_structure(&g, 0, &g.vertices(), 3).unwrap();
        assert_eq!((ns.t(), ns.k), (0, 0));
        assert_eq!(ns.x, ns.u);
        assert!(ns.y.is_empty());
        ns.verify(&g, 3).unwrap();
    }

    #[test]
    fn fan_apex_structure() {
        let g = Graph::fan(2);
        let ns = neighborhood_structure(&g, 0, &g.vertices(), 3).unwrap();
        assert_eq!(ns.t(), 2);
        assert!(ns.u.is_empty() && ns.x.is_empty());
        assert_eq!(ns.y.count(), 4);
        ns.verify(&g, 3).unwrap();
        assert!(matches!(
            neighborhood_structure(&g, 0, &g.vertices(), 2),
            Err(StructureError::FanPresent { .. })
        ));
    }
}
