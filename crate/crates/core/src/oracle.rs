//! Ground truth: embedding verification, exhaustive subgraph search,
//! the extremal construction and tiny Ramsey numbers by enumeration.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

/// Injective map from pattern vertices to host vertices. When `complement`
/// is set, pattern edges must land on non-edges of the host.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub map: Vec<usize>,
    pub complement: bool,
}

impl Embedding {
    pub fn new(map: Vec<usize>, complement: bool) -> Self {
        Embedding { map, complement }
    }

    pub fn image(&self) -> impl Iterator<Item = usize> + '_ {
        self.map.iter().copied()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingViolation {
    #[error("map has {got} entries but pattern has {expected} vertices")]
    WrongLength { expected: usize, got: usize },
    #[error("pattern vertex {vertex} mapped to {image}, outside host of order {order}")]
    OutOfRange {
        vertex: usize,
        image: usize,
        order: usize,
    },
    #[error("pattern vertices {first} and {second} both mapped to host vertex {image}")]
    NotInjective {
        first: usize,
        second: usize,
        image: usize,
    },
    #[error("pattern edge {u}-{v} maps to {hu}-{hv}, which is not an edge of the {which}")]
    MissingEdge {
        u: usize,
        v: usize,
        hu: usize,
        hv: usize,
        which: &'static str,
    },
}

/// Accepts iff the map is injective and every pattern edge lands on an
/// edge of `host` (or of its complement). Reports the first violation.
pub fn check_embedding(
    pattern: &Graph,
    host: &Graph,
    e: &Embedding,
) -> Result<(), EmbeddingViolation> {
    if e.map.len() != pattern.order() {
        return Err(EmbeddingViolation::WrongLength {
            expected: pattern.order(),
            got: e.map.len(),
        });
    }
    let mut owner = vec![usize::MAX; host.order()];
    for (v, &img) in e.map.iter().enumerate() {
        if img >= host.order() {
            return Err(EmbeddingViolation::OutOfRange {
                vertex: v,
                image: img,
                order: host.order(),
            });
        }
        if owner[img] != usize::MAX {
            return Err(EmbeddingViolation::NotInjective {
                first: owner[img],
                second: v,
                image: img,
            });
        }
        owner[img] = v;
    }
    for (u, v) in pattern.edges() {
        let (hu, hv) = (e.map[u], e.map[v]);
        if host.has_edge(hu, hv) == e.complement {
            return Err(EmbeddingViolation::MissingEdge {
                u,
                v,
                hu,
                hv,
                which: if e.complement {
                    "host complement"
                } else {
                    "host"
                },
            });
        }
    }
    Ok(())
}

/// `K_{n-1,n-1}`: triangle-free, and its complement is two disjoint
/// `(n-1)`-cliques, so it holds no fan and its complement no connected
/// `n`-vertex graph.
pub fn extremal_graph(n: usize) -> Graph {
    assert!(n >= 2, "extremal construction needs n >= 2");
    Graph::complete_bipartite(n - 1, n - 1)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BruteError {
    #[error("no Ramsey order found up to {0}")]
    ExceedsLimit(usize),
    #[error("order {0} is too large for exhaustive enumeration (limit 10)")]
    TooLarge(usize),
}

/// Backtracking subgraph search (not necessarily induced). Exact.
///
/// Pattern vertices are placed in a connectivity-first order; candidates are
/// pruned by degree and by the sorted neighbour-degree profile.
pub fn brute_contains(host: &Graph, pattern: &Graph) -> Option<Embedding> {
    let p = pattern.order();
    let h = host.order();
    if p > h {
        return None;
    }
    if p == 0 {
        return Some(Embedding::new(Vec::new(), false));
    }
    if pattern.edge_count() > host.edge_count() {
        return None;
    }
    let order = search_order(pattern);
    let host_deg: Vec<usize> = (0..h).map(|v| host.degree(v)).collect();
    let profile = |g: &Graph, v: usize, deg: &dyn Fn(usize) -> usize| {
        let mut d: Vec<usize> = g.neighbors(v).iter().map(deg).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    };
    let host_profiles: Vec<Vec<usize>> =
        (0..h).map(|v| profile(host, v, &|u| host_deg[u])).collect();
    let candidates: Vec<Vec<usize>> = (0..p)
        .map(|pv| {
            let need = profile(pattern, pv, &|u| pattern.degree(u));
            (0..h)
                .filter(|&hv| {
                    let have = &host_profiles[hv];
                    have.len() >= need.len() && need.iter().zip(have).all(|(a, b)| a <= b)
                })
                .collect()
        })
        .collect();
    let mut map = vec![usize::MAX; p];
    let mut used = VertexSet::new(h);
    if extend(host, pattern, &order, 0, &candidates, &mut map, &mut used) {
        Some(Embedding::new(map, false))
    } else {
        None
    }
}

fn search_order(pattern: &Graph) -> Vec<usize> {
    let p = pattern.order();
    let mut placed = VertexSet::new(p);
    let mut order = Vec::with_capacity(p);
    while order.len() < p {
        // Most already-placed neighbours first, then highest degree.
        let next = (0..p)
            .filter(|&v| !placed.contains(v))
            .max_by_key(|&v| {
                (
                    pattern.degree_within(v, &placed),
                    pattern.degree(v),
                    std::cmp::Reverse(v),
                )
            })
            .unwrap();
        placed.insert(next);
        order.push(next);
    }
    order
}

fn extend(
    host: &Graph,
    pattern: &Graph,
    order: &[usize],
    depth: usize,
    candidates: &[Vec<usize>],
    map: &mut [usize],
    used: &mut VertexSet,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let pv = order[depth];
    'cand: for &hv in &candidates[pv] {
        if used.contains(hv) {
            continue;
        }
        for &prev in &order[..depth] {
            if pattern.has_edge(pv, prev) && !host.has_edge(hv, map[prev]) {
                continue 'cand;
            }
        }
        map[pv] = hv;
        used.insert(hv);
        if extend(host, pattern, order, depth + 1, candidates, map, used) {
            return true;
        }
        used.remove(hv);
        map[pv] = usize::MAX;
    }
    false
}

/// Canonical code of a graph on at most 11 vertices: the lexicographically
/// smallest upper-triangle bit string over all relabelings that respect the
/// iterated degree refinement.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.order();
    assert!(n <= 11, "canonical_code supports at most 11 vertices");
    let cells = refine(g);
    let mut best = u64::MAX;
    let mut perm = vec![0usize; n];
    permute_cells(g, &cells, 0, &mut Vec::new(), &mut perm, &mut best);
    best
}

fn refine(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut color = vec![0usize; n];
    loop {
        let mut sig: Vec<(usize, Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let mut s: Vec<usize> = g.neighbors(v).iter().map(|u| color[u]).collect();
                s.sort_unstable();
                (color[v], s, v)
            })
            .collect();
        sig.sort();
        let mut next = vec![0usize; n];
        let mut c = 0;
        for i in 0..n {
            if i > 0 && (sig[i].0 != sig[i - 1].0 || sig[i].1 != sig[i - 1].1) {
                c += 1;
            }
            next[sig[i].2] = c;
        }
        let before = color.iter().collect::<HashSet<_>>().len();
        let after = next.iter().collect::<HashSet<_>>().len();
        color = next;
        if after == before {
            break;
        }
    }
    let k = color.iter().max().map_or(0, |&c| c + 1);
    let mut cells = vec![Vec::new(); k];
    for v in 0..n {
        cells[color[v]].push(v);
    }
    cells
}

fn permute_cells(
    g: &Graph,
    cells: &[Vec<usize>],
    idx: usize,
    prefix: &mut Vec<usize>,
    perm: &mut [usize],
    best: &mut u64,
) {
    if idx == cells.len() {
        for (pos, &v) in prefix.iter().enumerate() {
            perm[v] = pos;
        }
        let code = encode_bits(g, perm);
        if code < *best {
            *best = code;
        }
        return;
    }
    let mut cell = cells[idx].clone();
    heap_permutations(&mut cell, &mut |p| {
        let len = prefix.len();
        prefix.extend_from_slice(p);
        permute_cells(g, cells, idx + 1, prefix, perm, best);
        prefix.truncate(len);
    });
}

fn heap_permutations(items: &mut [usize], f: &mut dyn FnMut(&[usize])) {
    fn rec(k: usize, items: &mut [usize], f: &mut dyn FnMut(&[usize])) {
        if k <= 1 {
            f(items);
            return;
        }
        for i in 0..k {
            rec(k - 1, items, f);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    let k = items.len();
    rec(k, items, f);
}

fn encode_bits(g: &Graph, perm: &[usize]) -> u64 {
    let n = g.order();
    let mut inv = vec![0usize; n];
    for (v, &p) in perm.iter().enumerate() {
        inv[p] = v;
    }
    let mut code = 0u64;
    for j in 1..n {
        for i in 0..j {
            code = (code << 1) | g.has_edge(inv[i], inv[j]) as u64;
        }
    }
    code
}

/// One representative of every isomorphism class of graphs on `n ≤ 10`
/// vertices, generated by vertex augmentation with canonical deduplication.
/// For `n ≤ 6` the full `2^(n choose 2)` bitmask sweep is used instead.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 10, "all_graphs supports at most 10 vertices");
    if n <= 6 {
        return all_graphs_bitmask(n);
    }
    let smaller = all_graphs(n - 1);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in &smaller {
        for mask in 0u32..(1 << (n - 1)) {
            let mut h = Graph::new(n);
            for (u, v) in g.edges() {
                h.add_edge(u, v);
            }
            for u in 0..n - 1 {
                if mask >> u & 1 == 1 {
                    h.add_edge(u, n - 1);
                }
            }
            if seen.insert(canonical_code(&h)) {
                out.push(h);
            }
        }
    }
    out
}

fn all_graphs_bitmask(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut g = Graph::new(n);
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                g.add_edge(i, j);
            }
        }
        if seen.insert(canonical_code(&g)) {
            out.push(g);
        }
    }
    out
}

/// Smallest `N` such that every graph on `N` vertices contains `h` or has
/// `k` in its complement.
pub fn brute_ramsey(h: &Graph, k: &Graph, n_max: usize) -> Result<usize, BruteError> {
    for n in 1..=n_max {
        if n > 10 {
            return Err(BruteError::TooLarge(n));
        }
        let every = all_graphs(n).iter().all(|g| {
            brute_contains(g, h).is_some() || brute_contains(&g.complement(), k).is_some()
        });
        if every {
            return Ok(n);
        }
    }
    Err(BruteError::ExceedsLimit(n_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_graph;

    #[test]
    fn identity_accepted_collapse_rejected() {
        let g = random_graph(8, 0.5, 1);
        assert_eq!(
            check_embedding(&g, &g, &Embedding::new((0..8).collect(), false)),
            Ok(())
        );
        let p = Graph::path(3);
        let bad = Embedding::new(vec![0, 1, 0], false);
        assert!(matches!(
            check_embedding(&p, &Graph::complete(3), &bad),
            Err(EmbeddingViolation::NotInjective {
                first: 0,
                second: 2,
                image: 0
            })
        ));
    }

    #[test]
    fn complement_flag_respected() {
        let p = Graph::path(2);
        let e = Graph::new(2);
        assert!(check_embedding(&p, &e, &Embedding::new(vec![0, 1], true)).is_ok());
        assert!(matches!(
            check_embedding(&p, &e, &Embedding::new(vec![0, 1], false)),
            Err(EmbeddingViolation::MissingEdge { .. })
        ));
    }

    #[test]
    fn extremal_small() {
        let g = extremal_graph(5);
        assert_eq!((g.order(), g.edge_count()), (8, 16));
        assert!(!g.has_triangle());
    }

    #[test]
    fn brute_contains_examples() {
        assert!(brute_contains(&Graph::complete(3), &Graph::path(3)).is_some());
        assert!(brute_contains(&Graph::complete_bipartite(4, 4), &Graph::fan(2)).is_none());
        let c5 = Graph::cycle(5);
        assert!(brute_contains(&c5, &Graph::path(5)).is_some());
        assert!(brute_contains(&c5, &Graph::complete(3)).is_none());
    }

    #[test]
    fn graph_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| all_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn tiny_ramsey() {
        assert_eq!(brute_ramsey(&Graph::path(2), &Graph::path(2), 6), Ok(2));
        assert_eq!(brute_ramsey(&Graph::path(3), &Graph::complete(3), 6), Ok(5));
        assert_eq!(brute_ramsey(&Graph::path(4), &Graph::matching(2), 6), Ok(5));
        assert_eq!(
            brute_ramsey(&Graph::complete(3), &Graph::complete(3), 4),
            Err(BruteError::ExceedsLimit(4))
        );
    }
}
