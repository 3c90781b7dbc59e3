//! Trees and unicyclic graphs, plus the structural tree tools the
//! engines lean on: a large spread-out set of degree-2 vertices, a balanced
//! separator, and greedy embedding into high-minimum-degree hosts.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::oracle::Embedding;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("a tree needs at least one vertex")]
    Empty,
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("not unicyclic: {0}")]
    NotUnicyclic(String),
    #[error("the graph is a pure cycle")]
    PureCycle,
    #[error("designated edge {0}-{1} is not a valid cycle edge")]
    BadDesignatedEdge(usize, usize),
    #[error("Prüfer entry {value} at index {index} out of range for n = {n}")]
    PruferEntry {
        index: usize,
        value: usize,
        n: usize,
    },
    #[error("need at least {need} vertices, got {got}")]
    TooSmall { need: usize, got: usize },
    #[error("host minimum degree {got} below required {need}")]
    MinDegree { need: usize, got: usize },
}

/// A tree with eagerly cached bipartition and leaf set.
///
/// `A` is the larger colour class; on a tie it is the class of vertex 0.
#[derive(Clone, PartialEq, Eq)]
pub struct Tree {
    adj: Vec<Vec<usize>>,
    in_a: Vec<bool>,
    a: VertexSet,
    b: VertexSet,
    leaves: VertexSet,
}

impl std::fmt::Debug for Tree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Tree({}; {:?})",
            self.order(),
            self.edges().collect::<Vec<_>>()
        )
    }
}

impl Tree {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Tree, TreeError> {
        if n == 0 {
            return Err(TreeError::Empty);
        }
        if edges.len() != n - 1 {
            return Err(TreeError::NotATree(format!(
                "{} edges for {} vertices",
                edges.len(),
                n
            )));
        }
        let mut adj = vec![Vec::new(); n];
        let mut seen = VertexSet::new(n);
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(TreeError::VertexOutOfRange {
                        vertex: x,
                        order: n,
                    });
                }
            }
            if u == v {
                return Err(TreeError::NotATree(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for row in &mut adj {
            row.sort_unstable();
            if row.windows(2).any(|w| w[0] == w[1]) {
                return Err(TreeError::NotATree("repeated edge".into()));
            }
        }
        // n-1 distinct edges plus connectivity implies acyclic.
        let mut colour = vec![usize::MAX; n];
        colour[0] = 0;
        seen.insert(0);
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if seen.insert(v) {
                    colour[v] = 1 - colour[u];
                    queue.push_back(v);
                }
            }
        }
        if seen.count() != n {
            return Err(TreeError::NotATree("disconnected".into()));
        }
        let zeros = colour.iter().filter(|&&c| c == 0).count();
        let a_colour = if zeros * 2 >= n { 0 } else { 1 };
        let in_a: Vec<bool> = colour.iter().map(|&c| c == a_colour).collect();
        let a = VertexSet::from_iter(n, (0..n).filter(|&v| in_a[v]));
        let b = a.complement();
        let leaves = VertexSet::from_iter(n, (0..n).filter(|&v| adj[v].len() == 1));
        Ok(Tree {
            adj,
            in_a,
            a,
            b,
            leaves,
        })
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |u| {
            self.adj[u]
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v))
        })
    }

    pub fn leaves(&self) -> &VertexSet {
        &self.leaves
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.leaves.contains(v)
    }

    pub fn a_side(&self) -> &VertexSet {
        &self.a
    }

    pub fn b_side(&self) -> &VertexSet {
        &self.b
    }

    pub fn in_a(&self, v: usize) -> bool {
        self.in_a[v]
    }

    /// Number of leaves adjacent to `v`.
    pub fn leaf_degree(&self, v: usize) -> usize {
        self.adj[v]
            .iter()
            .filter(|&&u| self.leaves.contains(u))
            .count()
    }

    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::new(self.order());
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        g
    }

    /// Components of the forest induced on `allowed`, each sorted, ordered
    /// by smallest member.
    pub fn components_within(&self, allowed: &VertexSet) -> Vec<Vec<usize>> {
        let mut seen = VertexSet::new(self.order());
        let mut out = Vec::new();
        for s in allowed.iter() {
            if !seen.insert(s) {
                continue;
            }
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &v in &self.adj[u] {
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

    /// Components of `T - x`.
    pub fn components_without(&self, x: usize) -> Vec<Vec<usize>> {
        let mut allowed = VertexSet::full(self.order());
        allowed.remove(x);
        self.components_within(&allowed)
    }

    /// Vertices of `allowed` in BFS order from `root` (which must be in
    /// `allowed`), visiting neighbours in increasing id. Returns
    /// `(vertex, parent)` pairs; the root's parent is `None`.
    pub fn bfs_within(&self, root: usize, allowed: &VertexSet) -> Vec<(usize, Option<usize>)> {
        let mut seen = VertexSet::new(self.order());
        seen.insert(root);
        let mut out = vec![(root, None)];
        let mut i = 0;
        while i < out.len() {
            let u = out[i].0;
            i += 1;
            for &v in &self.adj[u] {
                if allowed.contains(v) && seen.insert(v) {
                    out.push((v, Some(u)));
                }
            }
        }
        out
    }

    /// Remove the lowest-id leaf `k` times, recomputing leaves of the
    /// shrinking tree each time. Returns the kept vertex set.
    pub fn peel_leaves(&self, k: usize) -> VertexSet {
        let n = self.order();
        assert!(k < n, "cannot peel {k} leaves from a tree of order {n}");
        let mut kept = VertexSet::full(n);
        let mut deg: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut heap: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&v| deg[v] <= 1).map(Reverse).collect();
        let mut removed = 0;
        while removed < k {
            let Reverse(v) = heap.pop().expect("a tree always has a leaf");
            if !kept.contains(v) || deg[v] > 1 {
                continue;
            }
            kept.remove(v);
            removed += 1;
            for &u in &self.adj[v] {
                if kept.contains(u) {
                    deg[u] -= 1;
                    if deg[u] == 1 {
                        heap.push(Reverse(u));
                    }
                }
            }
        }
        kept
    }
}

/// `(A, B)` with `|A| ≥ |B|`, ties giving `A` the class of vertex 0.
pub fn bipartition(t: &Tree) -> (VertexSet, VertexSet) {
    (t.a.clone(), t.b.clone())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Tree> for TreeJson {
    fn from(t: &Tree) -> Self {
        TreeJson {
            n: t.order(),
            edges: t.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<TreeJson> for Tree {
    type Error = TreeError;
    fn try_from(j: TreeJson) -> Result<Tree, TreeError> {
        let edges: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Tree::new(j.n, &edges)
    }
}

/// Output of the degree-2 set construction: `D` and the excluded set `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeTwoSet {
    pub d: VertexSet,
    pub excluded: VertexSet,
}

/// `⌈(n − 8|L| − 2|F| + 12) / 4⌉`, possibly non-positive.
pub fn degree_two_bound(n: usize, leaves: usize, f: usize) -> i64 {
    let num = n as i64 - 8 * leaves as i64 - 2 * f as i64 + 12;
    -((-num).div_euclid(4))
}

impl DegreeTwoSet {
    /// Re-checks every defining predicate directly against `t`.
    pub fn verify(&self, t: &Tree) -> Result<(), String> {
        for v in self.d.iter() {
            if !t.in_a(v) {
                return Err(format!("{v} is not on the A side"));
            }
            if self.excluded.contains(v) {
                return Err(format!("{v} is excluded"));
            }
            if t.degree(v) != 2 {
                return Err(format!("{v} has degree {}", t.degree(v)));
            }
            if t.neighbors(v).iter().any(|&u| t.is_leaf(u)) {
                return Err(format!("{v} is adjacent to a leaf"));
            }
        }
        let mut hit = VertexSet::new(t.order());
        for v in self.d.iter() {
            for &u in t.neighbors(v) {
                if !hit.insert(u) {
                    return Err(format!("{u} is a common neighbour of two members"));
                }
            }
        }
        // The counting argument needs at least two vertices.
        if t.order() >= 2 {
            let bound = degree_two_bound(t.order(), t.leaves().count(), self.excluded.count());
            if (self.d.count() as i64) < bound {
                return Err(format!("|D| = {} below bound {bound}", self.d.count()));
            }
        }
        Ok(())
    }
}

/// Degree-2 A-side vertices avoiding `f`, leaves and branch vertices, no two
/// sharing a neighbour.
///
/// The candidates `J` form a forest under "shares a neighbour"; each
/// component is 2-coloured by BFS and the larger class kept (ties to the
/// class holding the component's lowest id).
pub fn degree_two_set(t: &Tree, f: &VertexSet) -> DegreeTwoSet {
    let n = t.order();
    let branch = |v: usize| t.degree(v) >= 3;
    let j = VertexSet::from_iter(
        n,
        (0..n).filter(|&v| {
            t.in_a(v)
                && t.degree(v) == 2
                && !f.contains(v)
                && t.neighbors(v).iter().all(|&u| !branch(u) && !t.is_leaf(u))
        }),
    );
    // Each middle vertex has degree ≤ 2, so it joins at most one pair of J.
    let conflicts = |v: usize| -> Vec<usize> {
        t.neighbors(v)
            .iter()
            .flat_map(|&u| t.neighbors(u).iter().copied())
            .filter(|&w| w != v && j.contains(w))
            .collect()
    };
    let mut d = VertexSet::new(n);
    let mut side = vec![u8::MAX; n];
    for s in j.iter() {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            for w in conflicts(u) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[u];
                    comp.push(w);
                }
            }
        }
        let zeros = comp.iter().filter(|&&v| side[v] == 0).count();
        let keep = if zeros * 2 >= comp.len() { 0 } else { 1 };
        for &v in &comp {
            if side[v] == keep {
                d.insert(v);
            }
        }
    }
    DegreeTwoSet {
        d,
        excluded: f.clone(),
    }
}

/// A separator vertex and a split of the rest into two unions of components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatorResult {
    pub vertex: usize,
    pub k: VertexSet,
    pub h: VertexSet,
}

impl SeparatorResult {
    pub fn verify(&self, t: &Tree) -> Result<(), String> {
        let n = t.order();
        if self.k.intersects(&self.h)
            || self.k.contains(self.vertex)
            || self.h.contains(self.vertex)
        {
            return Err("parts overlap".into());
        }
        if self.k.count() + self.h.count() != n - 1 {
            return Err("parts do not cover T - v".into());
        }
        for (u, v) in t.edges() {
            if (self.k.contains(u) && self.h.contains(v))
                || (self.h.contains(u) && self.k.contains(v))
            {
                return Err(format!("edge {u}-{v} crosses the split"));
            }
        }
        for part in [&self.k, &self.h] {
            let s = part.count();
            if 3 * s < n - 1 || 3 * s > 2 * (n - 1) {
                return Err(format!(
                    "part size {s} outside [(n-1)/3, 2(n-1)/3] for n = {n}"
                ));
            }
        }
        Ok(())
    }
}

/// Balanced separator: walk from the lowest-id leaf toward the big side,
/// then pack components.
pub fn balanced_separator(t: &Tree) -> Result<SeparatorResult, TreeError> {
    let n = t.order();
    if n < 3 {
        return Err(TreeError::TooSmall { need: 3, got: n });
    }
    let to_set = |parts: &[&Vec<usize>]| {
        VertexSet::from_iter(n, parts.iter().flat_map(|c| c.iter().copied()))
    };
    let mut v = t
        .leaves()
        .first()
        .expect("trees on ≥ 2 vertices have leaves");
    loop {
        let comps = t.components_without(v);
        if let Some(c) = comps.iter().find(|c| 2 * c.len() == n) {
            let k = to_set(&[c]);
            let mut h = VertexSet::full(n).difference(&k);
            h.remove(v);
            return Ok(SeparatorResult { vertex: v, k, h });
        }
        if let Some(c) = comps.iter().find(|c| 2 * c.len() > n) {
            v = *t
                .neighbors(v)
                .iter()
                .find(|u| c.binary_search(u).is_ok())
                .unwrap();
            continue;
        }
        if comps.len() == 2 {
            return Ok(SeparatorResult {
                vertex: v,
                k: to_set(&[&comps[0]]),
                h: to_set(&[&comps[1]]),
            });
        }
        let mut sorted = comps;
        sorted.sort_by_key(|c| (c.len(), c[0]));
        let mut prefix = 0;
        let mut t_idx = 0;
        while t_idx < sorted.len() && 3 * (prefix + sorted[t_idx].len()) < n {
            prefix += sorted[t_idx].len();
            t_idx += 1;
        }
        let with_next = prefix + sorted[t_idx].len();
        let (k_parts, h_parts): (Vec<&Vec<usize>>, Vec<&Vec<usize>>) =
            if 3 * with_next <= 2 * (n - 1) {
                (
                    sorted[..=t_idx].iter().collect(),
                    sorted[t_idx + 1..].iter().collect(),
                )
            } else {
                (
                    vec![&sorted[t_idx]],
                    sorted
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != t_idx)
                        .map(|(_, c)| c)
                        .collect(),
                )
            };
        return Ok(SeparatorResult {
            vertex: v,
            k: to_set(&k_parts),
            h: to_set(&h_parts),
        });
    }
}

/// Greedily embeds the subtree of `t` induced by `keep` into `host`, BFS from
/// `root ↦ root_image`, each child taking the lowest-id unused host
/// neighbour of its parent's image (restricted to `pool`). Fills `map`
/// and `used`. On failure returns the pattern vertex that could not be
/// placed.
pub(crate) fn greedy_bfs_embed(
    t: &Tree,
    keep: &VertexSet,
    host: &Graph,
    pool: &VertexSet,
    root: usize,
    root_image: usize,
    map: &mut [usize],
    used: &mut VertexSet,
) -> Result<(), usize> {
    map[root] = root_image;
    used.insert(root_image);
    for (v, parent) in t.bfs_within(root, keep).into_iter().skip(1) {
        let p_img = map[parent.unwrap()];
        let mut free = host.neighbors(p_img).intersection(pool);
        free.difference_with(used);
        let Some(img) = free.first() else {
            return Err(v);
        };
        map[v] = img;
        used.insert(img);
    }
    Ok(())
}

/// Any tree embeds into a host of minimum degree `≥ |T| − 1` with `w1 ↦ w2`.
pub fn min_degree_embed(t: &Tree, h: &Graph, w1: usize, w2: usize) -> Result<Embedding, TreeError> {
    let n = t.order();
    if w1 >= n {
        return Err(TreeError::VertexOutOfRange {
            vertex: w1,
            order: n,
        });
    }
    if w2 >= h.order() {
        return Err(TreeError::VertexOutOfRange {
            vertex: w2,
            order: h.order(),
        });
    }
    let delta = h.min_degree();
    if delta + 1 < n {
        return Err(TreeError::MinDegree {
            need: n - 1,
            got: delta,
        });
    }
    let mut map = vec![usize::MAX; n];
    let mut used = VertexSet::new(h.order());
    greedy_bfs_embed(
        t,
        &VertexSet::full(n),
        h,
        &h.vertices(),
        w1,
        w2,
        &mut map,
        &mut used,
    )
    .expect("minimum degree guarantees a free neighbour");
    Ok(Embedding::new(map, false))
}

/// Decodes a Prüfer sequence into a tree on `len + 2` vertices.
pub fn prufer_decode(seq: &[usize]) -> Result<Tree, TreeError> {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for (index, &value) in seq.iter().enumerate() {
        if value >= n {
            return Err(TreeError::PruferEntry { index, value, n });
        }
        degree[value] += 1;
    }
    let mut heap: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let Reverse(leaf) = heap.pop().unwrap();
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            heap.push(Reverse(v));
        }
    }
    let Reverse(a) = heap.pop().unwrap();
    let Reverse(b) = heap.pop().unwrap();
    edges.push((a, b));
    Tree::new(n, &edges)
}

/// Inverse of [`prufer_decode`]; requires `n ≥ 2`.
pub fn prufer_encode(t: &Tree) -> Vec<usize> {
    let n = t.order();
    assert!(n >= 2, "Prüfer sequences need at least two vertices");
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut removed = VertexSet::new(n);
    let mut heap: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut seq = Vec::with_capacity(n - 2);
    while seq.len() < n - 2 {
        let Reverse(leaf) = heap.pop().unwrap();
        removed.insert(leaf);
        let p = *t
            .neighbors(leaf)
            .iter()
            .find(|&&u| !removed.contains(u))
            .unwrap();
        seq.push(p);
        degree[p] -= 1;
        if degree[p] == 1 {
            heap.push(Reverse(p));
        }
    }
    seq
}

/// Uniform labelled tree on `n` vertices.
pub fn random_tree(n: usize, seed: u64) -> Tree {
    assert!(n >= 1, "random_tree needs n ≥ 1");
    if n == 1 {
        return Tree::new(1, &[]).unwrap();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    prufer_decode(&seq).unwrap()
}

pub fn path_tree(n: usize) -> Tree {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Tree::new(n, &edges).unwrap()
}

/// Star with centre 0.
pub fn star_tree(n: usize) -> Tree {
    let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
    Tree::new(n, &edges).unwrap()
}

/// Path `0 - 1 - ... - (n-k-1)` with `k` extra leaves on its last vertex.
pub fn broom_tree(n: usize, k: usize) -> Tree {
    assert!(k + 2 <= n, "broom needs a handle");
    let handle = n - k;
    let mut edges: Vec<_> = (1..handle).map(|v| (v - 1, v)).collect();
    edges.extend((handle..n).map(|v| (handle - 1, v)));
    Tree::new(n, &edges).unwrap()
}

/// Spine of `spine` vertices, remaining vertices hung round-robin as legs.
pub fn caterpillar_tree(n: usize, spine: usize) -> Tree {
    assert!(spine >= 1 && spine <= n);
    let mut edges: Vec<_> = (1..spine).map(|v| (v - 1, v)).collect();
    edges.extend((spine..n).map(|v| ((v - spine) % spine, v)));
    Tree::new(n, &edges).unwrap()
}

/// A connected graph with exactly one cycle, and a designated cycle edge
/// `(t1, t2)` such that deleting it leaves a tree in which `t1` is not a leaf
/// (always satisfiable unless the graph is a pure cycle).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnicyclicGraph {
    graph: Graph,
    cycle: Vec<usize>,
    designated: Option<(usize, usize)>,
}

impl UnicyclicGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, TreeError> {
        let mut u = Self::unchecked(n, edges)?;
        if u.cycle.len() < n {
            u.designated = Some(u.default_designated());
        }
        Ok(u)
    }

    /// Uses a caller-provided designated edge after validating it.
    pub fn with_designated(
        n: usize,
        edges: &[(usize, usize)],
        t1: usize,
        t2: usize,
    ) -> Result<Self, TreeError> {
        let mut u = Self::unchecked(n, edges)?;
        if u.cycle.len() == n {
            return Err(TreeError::PureCycle);
        }
        let on_cycle = u
            .cycle_edges()
            .any(|(a, b)| (a, b) == (t1.min(t2), t1.max(t2)));
        if !on_cycle || u.graph.degree(t1) < 3 {
            return Err(TreeError::BadDesignatedEdge(t1, t2));
        }
        u.designated = Some((t1, t2));
        Ok(u)
    }

    fn unchecked(n: usize, edges: &[(usize, usize)]) -> Result<Self, TreeError> {
        if n < 3 {
            return Err(TreeError::TooSmall { need: 3, got: n });
        }
        if edges.len() != n {
            return Err(TreeError::NotUnicyclic(format!(
                "{} edges for {} vertices",
                edges.len(),
                n
            )));
        }
        let mut graph = Graph::new(n);
        for &(u, v) in edges {
            graph
                .try_add_edge(u, v)
                .map_err(|e| TreeError::NotUnicyclic(e.to_string()))?;
        }
        if graph.edge_count() != n {
            return Err(TreeError::NotUnicyclic("repeated edge".into()));
        }
        if !graph.is_connected() {
            return Err(TreeError::NotUnicyclic("disconnected".into()));
        }
        // Connected with n edges: the 2-core left after leaf stripping is the cycle.
        let mut deg: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
        let mut alive = VertexSet::full(n);
        let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
        while let Some(v) = stack.pop() {
            alive.remove(v);
            for u in graph.neighbors(v).iter() {
                if alive.contains(u) {
                    deg[u] -= 1;
                    if deg[u] == 1 {
                        stack.push(u);
                    }
                }
            }
        }
        let start = alive.first().unwrap();
        let mut cycle = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = graph
                .neighbors_in(cur, &alive)
                .iter()
                .find(|&x| x != prev && (x != start || cycle.len() > 2));
            match next {
                Some(x) if x == start => break,
                Some(x) => {
                    cycle.push(x);
                    prev = cur;
                    cur = x;
                }
                None => unreachable!("2-core of a unicyclic graph is a cycle"),
            }
        }
        Ok(UnicyclicGraph {
            graph,
            cycle,
            designated: None,
        })
    }

    /// Lowest-id cycle vertex of degree ≥ 3, paired with its lower-id cycle
    /// neighbour.
    fn default_designated(&self) -> (usize, usize) {
        let k = self.cycle.len();
        let t1 = *self
            .cycle
            .iter()
            .filter(|&&v| self.graph.degree(v) >= 3)
            .min()
            .unwrap();
        let i = self.cycle.iter().position(|&v| v == t1).unwrap();
        let a = self.cycle[(i + 1) % k];
        let b = self.cycle[(i + k - 1) % k];
        (t1, a.min(b))
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Cycle vertices in cyclic order, starting at the lowest id.
    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    pub fn is_pure_cycle(&self) -> bool {
        self.cycle.len() == self.order()
    }

    pub fn designated(&self) -> Option<(usize, usize)> {
        self.designated
    }

    fn cycle_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.cycle.len();
        (0..k).map(move |i| {
            let (a, b) = (self.cycle[i], self.cycle[(i + 1) % k]);
            (a.min(b), a.max(b))
        })
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.graph.edges().collect()
    }
}

/// `(t1, t2, T)` where `T = UC − t1t2` and `t1` is not a leaf of `T`.
pub fn unicyclic_normalize(u: &UnicyclicGraph) -> Result<(usize, usize, Tree), TreeError> {
    let (t1, t2) = u.designated.ok_or(TreeError::PureCycle)?;
    let edges: Vec<(usize, usize)> = u
        .graph
        .edges()
        .filter(|&(a, b)| (a, b) != (t1.min(t2), t1.max(t2)))
        .collect();
    let tree = Tree::new(u.order(), &edges)?;
    debug_assert!(!tree.is_leaf(t1));
    Ok((t1, t2, tree))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnicyclicJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t1: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t2: Option<usize>,
}

impl From<&UnicyclicGraph> for UnicyclicJson {
    fn from(u: &UnicyclicGraph) -> Self {
        UnicyclicJson {
            n: u.order(),
            edges: u.edges().into_iter().map(|(a, b)| [a, b]).collect(),
            t1: u.designated.map(|d| d.0),
            t2: u.designated.map(|d| d.1),
        }
    }
}

impl TryFrom<UnicyclicJson> for UnicyclicGraph {
    type Error = TreeError;
    fn try_from(j: UnicyclicJson) -> Result<Self, TreeError> {
        let edges: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        match (j.t1, j.t2) {
            (Some(t1), Some(t2)) => UnicyclicGraph::with_designated(j.n, &edges, t1, t2),
            (None, None) => UnicyclicGraph::new(j.n, &edges),
            _ => Err(TreeError::NotUnicyclic(
                "t1 and t2 must be given together".into(),
            )),
        }
    }
}

/// Random tree plus one random extra edge.
pub fn random_unicyclic(n: usize, seed: u64) -> UnicyclicGraph {
    assert!(n >= 3, "unicyclic graphs need n ≥ 3");
    let t = random_tree(n, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut edges: Vec<(usize, usize)> = t.edges().collect();
    loop {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && !t.has_edge(u, v) {
            edges.push((u, v));
            break;
        }
    }
    UnicyclicGraph::new(n, &edges).unwrap()
}

/// Cycle `0..k` with the other vertices attached as a random recursive tree.
pub fn unicyclic_with_cycle(n: usize, k: usize, seed: u64) -> UnicyclicGraph {
    assert!(k >= 3 && k <= n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = (0..k).map(|v| (v, (v + 1) % k)).collect();
    edges.extend((k..n).map(|v| (rng.gen_range(0..v), v)));
    UnicyclicGraph::new(n, &edges).unwrap()
}
