//! Separator of `T = UC − t1t2` that keeps track of the designated edge.

use crate::graph::VertexSet;
use crate::trees::{balanced_separator, Tree, TreeError};

/// `T − x = H ∪ J` with no `H`–`J` edge, `2m − 2 ≤ |H|, |J| ≤ n − 2m + 1`,
/// `d_H(x) ≤ 2m − 2`, and `t1, t2` placed so that one of four conditions
/// holds (see [`UCSplit::condition`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UCSplit {
    pub x: usize,
    pub h: VertexSet,
    pub j: VertexSet,
    /// Construction that produced the split.
    pub branch: &'static str,
}

impl UCSplit {
    /// First of: 1 `x ∈ {t1, t2}`; 2 `x` adjacent to neither; 3 both in
    /// `H`; 4 both in `J`. `None` when none holds.
    pub fn condition(&self, t: &Tree, t1: usize, t2: usize) -> Option<u8> {
        if self.x == t1 || self.x == t2 {
            Some(1)
        } else if !t.has_edge(self.x, t1) && !t.has_edge(self.x, t2) {
            Some(2)
        } else if self.h.contains(t1) && self.h.contains(t2) {
            Some(3)
        } else if self.j.contains(t1) && self.j.contains(t2) {
            Some(4)
        } else {
            None
        }
    }

    pub fn verify(&self, t: &Tree, t1: usize, t2: usize, m: usize) -> Result<(), String> {
        let n = t.order();
        let (lo, hi) = (2 * m - 2, (n + 1).saturating_sub(2 * m));
        if self.h.intersects(&self.j) || self.h.contains(self.x) || self.j.contains(self.x) {
            return Err("H, J and x overlap".into());
        }
        if self.h.count() + self.j.count() + 1 != n {
            return Err("H ∪ J ∪ {x} misses vertices".into());
        }
        for (a, b) in t.edges() {
            if (self.h.contains(a) && self.j.contains(b))
                || (self.h.contains(b) && self.j.contains(a))
            {
                return Err(format!("edge {a}-{b} crosses H and J"));
            }
        }
        for (name, s) in [("H", &self.h), ("J", &self.j)] {
            if s.count() < lo || s.count() > hi {
                return Err(format!("|{name}| = {} outside [{lo}, {hi}]", s.count()));
            }
        }
        let dh = t
            .neighbors(self.x)
            .iter()
            .filter(|&&v| self.h.contains(v))
            .count();
        if dh > lo {
            return Err(format!("d_H(x) = {dh} exceeds 2m − 2"));
        }
        self.condition(t, t1, t2)
            .map(|_| ())
            .ok_or_else(|| "t1, t2 are split next to x".into())
    }
}

fn set_of(n: usize, comps: &[Vec<usize>]) -> VertexSet {
    VertexSet::from_iter(n, comps.iter().flatten().copied())
}

fn by_size(mut comps: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    comps.sort_by_key(|c| (c.len(), c[0]));
    comps
}

/// Smallest components first until the union reaches `target`.
fn prefix_until(comps: &[Vec<usize>], target: usize, n: usize) -> VertexSet {
    let mut h = VertexSet::new(n);
    for c in comps {
        if h.count() >= target {
            break;
        }
        for &v in c {
            h.insert(v);
        }
    }
    h
}

fn split_at(x: usize, h: VertexSet, branch: &'static str) -> UCSplit {
    let mut j = h.complement();
    j.remove(x);
    UCSplit { x, h, j, branch }
}

/// Reroot at `r`: `H` is the smallest-first union of components of `T − r`
/// inside `inside`, reaching `2m − 2`.
fn reroot(t: &Tree, r: usize, inside: &VertexSet, m: usize, branch: &'static str) -> UCSplit {
    let comps: Vec<Vec<usize>> = t
        .components_without(r)
        .into_iter()
        .filter(|c| c.iter().all(|&v| inside.contains(v)))
        .collect();
    split_at(
        r,
        prefix_until(&by_size(comps), 2 * m - 2, t.order()),
        branch,
    )
}

/// Candidates in order: the separator prefix, the two `t`-components
/// together (padded with small components when short), then reroots at
/// `t1`, at the neighbour `y` of `x` towards the far `t`, and at that `t`.
/// The first candidate passing [`UCSplit::verify`] wins.
pub fn designated_split(
    t: &Tree,
    t1: usize,
    t2: usize,
    m: usize,
) -> Result<Option<UCSplit>, TreeError> {
    let n = t.order();
    let sep = balanced_separator(t)?;
    let x = sep.vertex;
    let p_comps = by_size(t.components_within(&sep.k));
    let q_comps = by_size(t.components_within(&sep.h));
    let all: Vec<Vec<usize>> = p_comps.iter().chain(q_comps.iter()).cloned().collect();

    let mut cands = vec![split_at(
        x,
        prefix_until(&p_comps, 2 * m - 2, n),
        "separator",
    )];
    let comp_of = |v: usize| all.iter().position(|c| c.contains(&v));
    if let (Some(ci), Some(cj)) = (comp_of(t1), comp_of(t2)) {
        if ci != cj {
            let pair = set_of(n, &[all[ci].clone(), all[cj].clone()]);
            cands.push(split_at(x, pair.clone(), "pair"));
            let mut padded = pair;
            for c in &by_size(all.clone()) {
                if padded.count() >= 2 * m - 2 {
                    break;
                }
                if c.iter().any(|&v| padded.contains(v)) {
                    continue;
                }
                for &v in c {
                    padded.insert(v);
                }
            }
            cands.push(split_at(x, padded, "pair-padded"));
            for (s, o, cs, co) in [(t1, t2, ci, cj), (t2, t1, cj, ci)] {
                if !t.has_edge(x, s) {
                    continue;
                }
                let cs_set = set_of(n, &[all[cs].clone()]);
                let co_set = set_of(n, &[all[co].clone()]);
                cands.push(reroot(t, s, &cs_set, m, "reroot-t"));
                let y = *t
                    .neighbors(x)
                    .iter()
                    .find(|&&v| co_set.contains(v))
                    .unwrap();
                if y == o {
                    cands.push(reroot(t, o, &co_set, m, "reroot-far-t"));
                    continue;
                }
                let comps_y = t.components_without(y);
                let k = comps_y.iter().find(|c| c.contains(&o)).unwrap();
                let mset = comps_y.iter().find(|c| c.contains(&x)).unwrap();
                let km = set_of(n, &[k.clone(), mset.clone()]);
                cands.push(split_at(y, km, "reroot-y-absorb"));
                cands.push(reroot(t, y, &co_set, m, "reroot-y"));
                let kset = set_of(n, std::slice::from_ref(k));
                cands.push(reroot(t, o, &kset, m, "reroot-far-t"));
            }
        }
    }
    for c in cands {
        match c.verify(t, t1, t2, m) {
            Ok(()) => {
                log::debug!("split at {} via {}", c.x, c.branch);
                return Ok(Some(c));
            }
            Err(e) => log::trace!("split candidate {} rejected: {e}", c.branch),
        }
    }
    Ok(None)
}
