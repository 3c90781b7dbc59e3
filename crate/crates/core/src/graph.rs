//! Dense bit-row graphs.
//!
//! Every vertex set the proof machinery manipulates (neighbourhoods, anchor
//! sets, removal sets) is a [`VertexSet`] over the same universe `0..order`,
//! so intersections and degree counts are word-wise `AND` + popcount.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

/// A subset of `0..len`, stored as a bit row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    len: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(len: usize) -> Self {
        VertexSet {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = VertexSet {
            len,
            words: vec![!0; words_for(len)],
        };
        s.trim();
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(len: usize, items: I) -> Self {
        let mut s = VertexSet::new(len);
        for v in items {
            s.insert(v);
        }
        s
    }

    fn trim(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Size of the universe, not the number of members.
    #[inline]
    pub fn universe(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.len, "vertex {v} outside universe {}", self.len);
        let (w, b) = (v / WORD, v % WORD);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !was
    }

    #[inline]
    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.len {
            return false;
        }
        let (w, b) = (v / WORD, v % WORD);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        was
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.len && self.words[v / WORD] >> (v % WORD) & 1 == 1
    }

    #[inline]
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// `|self ∩ other|` without allocating.
    #[inline]
    pub fn intersection_count(&self, other: &VertexSet) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn complement(&self) -> VertexSet {
        let mut s = VertexSet {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        s.trim();
        s
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| BitIter {
            word: w,
            base: i * WORD,
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// The `k` smallest members (all of them if fewer).
    pub fn lowest(&self, k: usize) -> VertexSet {
        VertexSet::from_iter(self.len, self.iter().take(k))
    }
}

struct BitIter {
    word: u64,
    base: usize,
}

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.word == 0 {
            return None;
        }
        let tz = self.word.trailing_zeros() as usize;
        self.word &= self.word - 1;
        Some(self.base + tz)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Undirected simple graph on `0..order` with one bit row per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    rows: Vec<VertexSet>,
}

impl Graph {
    /// Edgeless graph.
    pub fn new(order: usize) -> Self {
        Graph {
            rows: vec![VertexSet::new(order); order],
        }
    }

    pub fn complete(order: usize) -> Self {
        let mut g = Graph::new(order);
        for v in 0..order {
            g.rows[v] = VertexSet::full(order);
            g.rows[v].remove(v);
        }
        g
    }

    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(order);
        for (u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Complete bipartite graph with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(order: usize) -> Self {
        let mut g = Graph::new(order);
        if order >= 3 {
            for v in 0..order {
                g.add_edge(v, (v + 1) % order);
            }
        }
        g
    }

    pub fn path(order: usize) -> Self {
        let mut g = Graph::new(order);
        for v in 1..order {
            g.add_edge(v - 1, v);
        }
        g
    }

    /// The fan `F_m`: apex `0`, triangle `i` on `{0, 2i+1, 2i+2}`.
    pub fn fan(m: usize) -> Self {
        let mut g = Graph::new(2 * m + 1);
        for i in 0..m {
            g.add_edge(0, 2 * i + 1);
            g.add_edge(0, 2 * i + 2);
            g.add_edge(2 * i + 1, 2 * i + 2);
        }
        g
    }

    /// `m` disjoint edges.
    pub fn matching(m: usize) -> Self {
        let mut g = Graph::new(2 * m);
        for i in 0..m {
            g.add_edge(2 * i, 2 * i + 1);
        }
        g
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.add_edge(u, v);
        Ok(())
    }

    /// Panics on out-of-range or equal endpoints.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "self-loop at {u}");
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u].remove(v);
        self.rows[v].remove(u);
    }

    fn check(&self, v: usize) -> Result<(), GraphError> {
        if v < self.order() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            })
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    /// `d_S(v) = |N(v) ∩ S|`.
    pub fn degree_in(&self, v: usize, s: &VertexSet) -> Result<usize, GraphError> {
        self.check(v)?;
        Ok(self.degree_within(v, s))
    }

    /// Unchecked form of [`Graph::degree_in`] for hot loops.
    #[inline]
    pub fn degree_within(&self, v: usize, s: &VertexSet) -> usize {
        self.rows[v].intersection_count(s)
    }

    pub fn neighbors_in(&self, v: usize, s: &VertexSet) -> VertexSet {
        self.rows[v].intersection(s)
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(VertexSet::count).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |u| {
            self.rows[u]
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    /// Materialized complement; an involution.
    pub fn complement(&self) -> Graph {
        let n = self.order();
        let mut rows = Vec::with_capacity(n);
        for v in 0..n {
            let mut r = self.rows[v].complement();
            r.remove(v);
            rows.push(r);
        }
        Graph { rows }
    }

    /// Subgraph induced by `keep`, relabelled `0..|keep|` in increasing
    /// order; the second component maps new ids back to old ones.
    pub fn induced(&self, keep: &VertexSet) -> (Graph, Vec<usize>) {
        let ids = keep.to_vec();
        let mut h = Graph::new(ids.len());
        for (i, &u) in ids.iter().enumerate() {
            for (j, &v) in ids.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    h.add_edge(i, j);
                }
            }
        }
        (h, ids)
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components_within(&self, allowed: &VertexSet) -> Vec<Vec<usize>> {
        let mut seen = VertexSet::new(self.order());
        let mut out = Vec::new();
        for s in allowed.iter() {
            if seen.contains(s) {
                continue;
            }
            seen.insert(s);
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for v in self.rows[u].iter() {
                    if allowed.contains(v) && seen.insert(v) {
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.order() <= 1 || self.components_within(&self.vertices()).len() == 1
    }

    pub fn has_triangle(&self) -> bool {
        self.edges()
            .any(|(u, v)| self.rows[u].intersects(&self.rows[v]))
    }

    /// Relabel so that old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut h = Graph::new(self.order());
        for (u, v) in self.edges() {
            h.add_edge(perm[u], perm[v]);
        }
        h
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph({}; {:?})",
            self.order(),
            self.edges().collect::<Vec<_>>()
        )
    }
}

/// G(n, p) with a ChaCha8 stream; pairs `(i, j)`, `i < j`, drawn row by row.
pub fn random_graph(n: usize, edge_probability: f64, seed: u64) -> Graph {
    assert!(
        (0.0..=1.0).contains(&edge_probability),
        "edge probability {edge_probability} outside [0, 1]"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(edge_probability) {
                g.add_edge(i, j);
            }
        }
    }
    g
}
