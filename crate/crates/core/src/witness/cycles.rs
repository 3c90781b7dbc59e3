//! Cycles of a prescribed length in `Ḡ`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{violation, EngineError};
use crate::graph::{Graph, VertexSet};
use crate::matching::neighborhood_structure;

/// Rotation–extension steps allowed before giving up.
pub const DEFAULT_SEARCH_BUDGET: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleMethod {
    /// `Δ(G) ≤ n − 2`: Hamiltonian cycle of `Ḡ − v` plus a chord pair at `v`.
    Dirac,
    /// `Δ(G) = n − 1` and the cycle fits in the `Ḡ`-clique `U_u`.
    Clique,
    /// Budgeted rotation–extension search.
    Search,
}

/// Host vertices of a `Ḡ`-cycle in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclePlan {
    pub cycle: Vec<usize>,
    pub method: CycleMethod,
}

/// Hamiltonian cycle of `h` when `δ(h) ≥ |h|/2` and `|h| ≥ 3`, by the
/// extend, close, reopen argument; `None` when the degree condition fails.
pub fn dirac_hamiltonian(h: &Graph) -> Option<Vec<usize>> {
    let n = h.order();
    if n < 3 || 2 * h.min_degree() < n {
        return None;
    }
    let mut path = vec![0];
    let mut on = VertexSet::from_iter(n, [0]);
    loop {
        loop {
            if let Some(v) = h.neighbors(*path.last().unwrap()).difference(&on).first() {
                path.push(v);
                on.insert(v);
            } else if let Some(v) = h.neighbors(path[0]).difference(&on).first() {
                path.insert(0, v);
                on.insert(v);
            } else {
                break;
            }
        }
        let l = path.len();
        let cycle: Vec<usize> = if h.has_edge(path[0], path[l - 1]) {
            path.clone()
        } else {
            let i = (0..l - 1)
                .find(|&i| h.has_edge(path[0], path[i + 1]) && h.has_edge(path[l - 1], path[i]))?;
            path[..=i]
                .iter()
                .chain(path[i + 1..].iter().rev())
                .copied()
                .collect()
        };
        if cycle.len() == n {
            return Some(cycle);
        }
        let (j, v) = cycle
            .iter()
            .enumerate()
            .find_map(|(j, &c)| h.neighbors(c).difference(&on).first().map(|v| (j, v)))?;
        path = std::iter::once(v)
            .chain(cycle[j..].iter().copied())
            .chain(cycle[..j].iter().copied())
            .collect();
        on.insert(v);
    }
}

/// A `k`-cycle in `Ḡ` for a fan-free host on `2n − 1` vertices.
pub fn cycle_witness(
    g: &Graph,
    k: usize,
    n: usize,
    m: usize,
    budget: u64,
) -> Result<CyclePlan, EngineError> {
    if k < 3 || k > g.order() {
        return Err(violation(
            "cycle-extend",
            format!("no cycle of length {k} on {} vertices", g.order()),
        ));
    }
    let gbar = g.complement();
    let delta = g.max_degree();
    if delta + 2 <= n && g.order() >= 4 {
        let v = 0;
        let mut rest = g.vertices();
        rest.remove(v);
        let (h, ids) = gbar.induced(&rest);
        if let Some(ham) = dirac_hamiltonian(&h) {
            let ham: Vec<usize> = ham.into_iter().map(|i| ids[i]).collect();
            let l = ham.len();
            if let Some(i) =
                (0..l).find(|&i| gbar.has_edge(v, ham[i]) && gbar.has_edge(v, ham[(i + k - 2) % l]))
            {
                let cycle = std::iter::once(v)
                    .chain((0..k - 1).map(|j| ham[(i + j) % l]))
                    .collect();
                return Ok(CyclePlan {
                    cycle,
                    method: CycleMethod::Dirac,
                });
            }
        }
        log::debug!("Dirac construction unavailable, falling back to search");
    } else if delta + 1 == n {
        let u = (0..g.order()).find(|&u| g.degree(u) == delta).unwrap();
        let ns = neighborhood_structure(g, u, &g.vertices(), m)
            .map_err(|_| violation("cycle-extend", format!("neighbourhood of {u} holds a fan")))?;
        if ns.u.count() >= k {
            return Ok(CyclePlan {
                cycle: ns.u.lowest(k).to_vec(),
                method: CycleMethod::Clique,
            });
        }
    }
    search_cycle(&gbar, k, budget).map(|cycle| CyclePlan {
        cycle,
        method: CycleMethod::Search,
    })
}

/// Rotation–extension: grow a path at its end, rotate on a chord when
/// stuck, and close as soon as the end sees the vertex `k − 1` back.
fn search_cycle(gbar: &Graph, k: usize, budget: u64) -> Result<Vec<usize>, EngineError> {
    let n = gbar.order();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&v| (std::cmp::Reverse(gbar.degree(v)), v));
    let mut steps = 0u64;
    let rotations_per_start = 20 * n as u64 + 100;
    loop {
        for &s in &starts {
            let mut path = vec![s];
            let mut pos = vec![usize::MAX; n];
            pos[s] = 0;
            let mut on = VertexSet::from_iter(n, [s]);
            let mut rotations = 0u64;
            loop {
                steps += 1;
                if steps > budget {
                    return Err(EngineError::SearchBudgetExhausted { budget });
                }
                let l = path.len();
                let end = path[l - 1];
                if l >= k && gbar.has_edge(end, path[l - k]) {
                    return Ok(path[l - k..].to_vec());
                }
                let ext: Vec<usize> = gbar.neighbors(end).difference(&on).iter().collect();
                if let Some(&v) = ext.choose(&mut rng) {
                    pos[v] = l;
                    path.push(v);
                    on.insert(v);
                    continue;
                }
                rotations += 1;
                let pivots: Vec<usize> = gbar
                    .neighbors(end)
                    .iter()
                    .map(|p| pos[p])
                    .filter(|&i| i + 2 < l)
                    .collect();
                if pivots.is_empty() || rotations > rotations_per_start {
                    break;
                }
                let i = pivots[rng.gen_range(0..pivots.len())];
                path[i + 1..].reverse();
                for (j, &v) in path.iter().enumerate().skip(i + 1) {
                    pos[v] = j;
                }
            }
        }
    }
}
