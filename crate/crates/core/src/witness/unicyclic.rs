//! Unicyclic graph versus fan: a fan in `G` or `UC` in `Ḡ` for every host
//! on `2n − 1` vertices, `m ≥ 18`, `n ≥ m² − m + 1`. Works on the tree
//! `T = UC − t1t2` and keeps the images of `t1`, `t2` adjacent in `Ḡ`.

use super::anchors::{build_anchor_sets, AnchorSets};
use super::cycles::{cycle_witness, DEFAULT_SEARCH_BUDGET};
use super::place::{
    attach_leaves, capped_leaves, choose_pins, embed_forest_pinned, greedy_cross_matching,
    greedy_extend, split_embed, used_of, Side,
};
use super::split::{designated_split, UCSplit};
use super::{check_hypotheses, violation, EngineError, Trace, Witness, NONE};
use crate::graph::{Graph, VertexSet};
use crate::matching::{find_fan, FanEmbedding, StructureError};
use crate::oracle::{check_embedding, Embedding};
use crate::trees::{degree_two_set, unicyclic_normalize, Tree, UnicyclicGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnicyclicOptions {
    /// Step budget for the cycle search.
    pub search_budget: u64,
}

impl Default for UnicyclicOptions {
    fn default() -> Self {
        UnicyclicOptions {
            search_budget: DEFAULT_SEARCH_BUDGET,
        }
    }
}

pub fn find_witness_unicyclic(
    g: &Graph,
    uc: &UnicyclicGraph,
    m: usize,
) -> Result<Witness, EngineError> {
    find_witness_unicyclic_traced(g, uc, m, UnicyclicOptions::default()).map(|(w, _)| w)
}

/// Like [`find_witness_unicyclic`], also returning the steps taken.
pub fn find_witness_unicyclic_traced(
    g: &Graph,
    uc: &UnicyclicGraph,
    m: usize,
    opts: UnicyclicOptions,
) -> Result<(Witness, Trace), EngineError> {
    check_hypotheses(g.order(), uc.order(), m, 18)?;
    let mut trace = Vec::new();
    if let Some(f) = find_fan(g, m) {
        trace.push("fan");
        return Ok((Witness::Fan(f), trace));
    }
    if uc.is_pure_cycle() {
        let n = uc.order();
        let plan = cycle_witness(g, n, n, m, opts.search_budget)?;
        let c = uc.cycle();
        let mut map = vec![NONE; n];
        for (&p, &h) in c.iter().zip(&plan.cycle) {
            map[p] = h;
        }
        let e = Embedding::new(map, true);
        check_embedding(uc.graph(), g, &e).map_err(|err| violation("cycle", err.to_string()))?;
        trace.push("cycle");
        return Ok((
            Witness::Unicyclic {
                embedding: e,
                t1: c[0],
                t2: c[1],
            },
            trace,
        ));
    }
    let (t1, t2, t) = unicyclic_normalize(uc)?;
    let mut e = Engine {
        g,
        gbar: g.complement(),
        uc,
        t,
        t1,
        t2,
        n: uc.order(),
        m,
        trace,
        budget: opts.search_budget,
    };
    let w = e.run()?;
    Ok((w, e.trace))
}

/// `(a, y, b)` with `a, b ∈ k` distinct, `y ∈ h`, both `ya` and `yb` edges
/// of `gbar`; lowest `y` first.
pub fn common_neighbour_triple(
    gbar: &Graph,
    k: &VertexSet,
    h: &VertexSet,
) -> Option<(usize, usize, usize)> {
    h.iter().find_map(|y| {
        let mut near = gbar.neighbors(y).intersection(k);
        near.remove(y);
        let mut it = near.iter();
        match (it.next(), it.next()) {
            (Some(a), Some(b)) => Some((a, y, b)),
            _ => None,
        }
    })
}

fn fan_of(e: StructureError) -> Witness {
    let StructureError::FanPresent { fan, .. } = e;
    Witness::Fan(fan)
}

struct Engine<'a> {
    g: &'a Graph,
    gbar: Graph,
    uc: &'a UnicyclicGraph,
    t: Tree,
    t1: usize,
    t2: usize,
    n: usize,
    m: usize,
    trace: Trace,
    budget: u64,
}

impl Engine<'_> {
    fn done(&mut self, map: Vec<usize>, step: &'static str) -> Result<Witness, EngineError> {
        let e = Embedding::new(map, true);
        check_embedding(self.uc.graph(), self.g, &e)
            .map_err(|err| violation(step, err.to_string()))?;
        self.trace.push(step);
        log::info!("unicyclic graph embedded at step {step}");
        Ok(Witness::Unicyclic {
            embedding: e,
            t1: self.t1,
            t2: self.t2,
        })
    }

    fn ts(&self) -> VertexSet {
        VertexSet::from_iter(self.n, [self.t1, self.t2])
    }

    fn run(&mut self) -> Result<Witness, EngineError> {
        let (g, n, m) = (self.g, self.n, self.m);
        let v = match (0..g.order()).find(|&v| g.degree(v) >= n) {
            Some(v) => v,
            None => return self.cycle_first(),
        };
        let p1 = match build_anchor_sets(g, v, &g.vertices(), n, m) {
            Ok(a) => a,
            Err(e) => return Ok(fan_of(e)),
        };
        p1.verify(g, n, m)
            .map_err(|e| violation("second-anchor", e))?;
        self.trace.push("anchors-1");

        let xy1 = p1.xy();
        let u = match xy1.iter().find(|&u| g.degree_within(u, &p1.o) >= n) {
            Some(u) => u,
            None => return self.second_anchor_fallback(&p1),
        };
        let p2 = match build_anchor_sets(g, u, &p1.o, n, m) {
            Ok(a) => a,
            Err(e) => return Ok(fan_of(e)),
        };
        p2.verify(g, n, m)
            .map_err(|e| violation("second-anchor", e))?;
        self.trace.push("anchors-2");

        if let Some(x) = (0..n).find(|&x| self.t.leaf_degree(x) + 1 >= 2 * m) {
            return self.heavy_leaf(x, &p1, &p2);
        }
        if 9 * self.t.max_degree() >= 5 * n {
            return Err(violation(
                "heavy-leaf",
                format!("Δ(T) = {} with no heavy leaf vertex", self.t.max_degree()),
            ));
        }

        let outside = p1.u.union(&p2.u).complement();
        let crossing: Vec<(usize, usize)> =
            p1.u.iter()
                .flat_map(|a| {
                    self.gbar
                        .neighbors_in(a, &p2.u)
                        .iter()
                        .map(move |b| (a, b))
                        .collect::<Vec<_>>()
                })
                .collect();
        let disjoint = crossing.first().and_then(|&(a, b)| {
            crossing
                .iter()
                .find(|&&(c, d)| c != a && d != b)
                .map(|&e| ((a, b), e))
        });
        let (u1p, u2p) = if let Some((e1, e2)) = disjoint {
            let split = designated_split(&self.t, self.t1, self.t2, m)?.ok_or_else(|| {
                violation(
                    "designated-split",
                    "no separator respects the designated edge",
                )
            })?;
            if let Some(w) = self.cross_degree_step(&p1, &p2, &split, [e1, e2])? {
                return Ok(w);
            }
            if let Some(w) = self.balanced_centre_step(&p1, &p2, &split, e1, &outside)? {
                return Ok(w);
            }
            if let Some(w) = self.fan_step(&p1.u, &p2.u, &outside, true)? {
                return Ok(w);
            }
            (p1.u.clone(), p2.u.clone())
        } else {
            let (mut u1p, mut u2p) = (p1.u.clone(), p2.u.clone());
            if let Some(&(a, b)) = crossing.first() {
                if crossing.iter().all(|&(c, _)| c == a) {
                    u1p.remove(a);
                } else {
                    u2p.remove(b);
                }
            }
            self.trace.push("star-crossing");
            if let Some(w) = self.fan_step(&u1p, &u2p, &outside, false)? {
                return Ok(w);
            }
            (u1p, u2p)
        };
        self.final_case(&p1, &p2, &u1p, &u2p)
    }

    /// `Δ(G) ≤ n − 1`: a cycle of the right length in `Ḡ`, then greedy
    /// extension, which cannot get stuck below degree `n`.
    fn cycle_first(&mut self) -> Result<Witness, EngineError> {
        let (g, n, m) = (self.g, self.n, self.m);
        let k = self.uc.cycle().len();
        let plan = cycle_witness(g, k, n, m, self.budget)?;
        self.trace.push(match plan.method {
            super::CycleMethod::Dirac => "cycle-dirac",
            super::CycleMethod::Clique => "cycle-clique",
            super::CycleMethod::Search => "cycle-search",
        });
        let mut map = vec![NONE; n];
        for (&p, &h) in self.uc.cycle().iter().zip(&plan.cycle) {
            map[p] = h;
        }
        let mut used = used_of(&map, g.order());
        match greedy_extend(&self.t, &self.gbar, &mut map, &mut used, None) {
            Ok(()) => self.done(map, "cycle-extend"),
            Err(s) => Err(violation(
                "cycle-extend",
                format!(
                    "extension stuck at {} of degree {} < n",
                    s.host,
                    g.degree(s.host)
                ),
            )),
        }
    }

    /// No vertex of `X_1 ∪ Y_1` has `n` neighbours in `O_1`, so every one
    /// has `m − 1` non-neighbours there: embed `T` minus `m − 1` removable
    /// vertices into `X_1 ∪ Y_1` and hang the rest into `O_1`.
    fn second_anchor_fallback(&mut self, p1: &AnchorSets) -> Result<Witness, EngineError> {
        let (g, t, n, m) = (self.g, &self.t, self.n, self.m);
        let ts = self.ts();
        let leaves: Vec<usize> = t.leaves().iter().filter(|&l| l != self.t2).collect();
        if t.leaves().count() >= m {
            let l: Vec<usize> = leaves[..m - 1].to_vec();
            let lset = VertexSet::from_iter(n, l.iter().copied());
            let mut map = embed_forest_pinned(t, &lset, &[], &ts, &p1.x, &p1.y, m + 1)
                .map_err(|e| violation("second-anchor", e.to_string()))?;
            let mut used = used_of(&map, g.order());
            attach_leaves(t, &self.gbar, &l, &mut map, &mut used, &p1.o)
                .map_err(|l| violation("second-anchor", format!("no room in O for leaf {l}")))?;
            self.trace.push("second-anchor-leaves");
            return self.done(map, "second-anchor");
        }
        let k = m - 1 - leaves.len();
        let d: Vec<usize> = degree_two_set(t, &ts).d.iter().take(k).collect();
        if d.len() < k {
            return Err(violation(
                "second-anchor",
                format!("only {} degree-two vertices for {k} triples", d.len()),
            ));
        }
        let mut map = vec![NONE; n];
        let mut used = VertexSet::new(g.order());
        for &di in &d {
            let (a, y, b) = common_neighbour_triple(
                &self.gbar,
                &p1.x.difference(&used),
                &p1.o.difference(&used),
            )
            .ok_or_else(|| violation("triple", format!("no triple for {di}")))?;
            let nb = t.neighbors(di);
            map[di] = y;
            map[nb[0]] = a;
            map[nb[1]] = b;
            for h in [a, y, b] {
                used.insert(h);
            }
        }
        let lset = VertexSet::from_iter(n, leaves.iter().copied());
        let ycands: Vec<usize> = t
            .a_side()
            .iter()
            .filter(|&v| map[v] == NONE && !lset.contains(v) && !ts.contains(v))
            .collect();
        if ycands.len() < p1.y.count() {
            return Err(violation("second-anchor", "too few A-vertices for Y"));
        }
        for (&v, h) in ycands.iter().zip(p1.y.iter()) {
            map[v] = h;
            used.insert(h);
        }
        let mut xs = p1.x.difference(&used).to_vec().into_iter();
        for v in 0..n {
            if map[v] == NONE && !lset.contains(v) {
                let h = xs
                    .next()
                    .ok_or_else(|| violation("second-anchor", "X overflows"))?;
                map[v] = h;
                used.insert(h);
            }
        }
        attach_leaves(t, &self.gbar, &leaves, &mut map, &mut used, &p1.o)
            .map_err(|l| violation("second-anchor", format!("no room in O for leaf {l}")))?;
        self.trace.push("second-anchor-triples");
        self.done(map, "second-anchor")
    }

    /// `x` has at least `2m − 1` leaves; place `x` on a centre `w` of a
    /// `Ḡ`-star `S_n`.
    fn heavy_leaf(
        &mut self,
        x: usize,
        p1: &AnchorSets,
        p2: &AnchorSets,
    ) -> Result<Witness, EngineError> {
        let (g, n) = (self.g, self.n);
        let t = &self.t;
        let Some(w) = (0..g.order()).find(|&w| g.degree(w) < n) else {
            return Err(violation("heavy-leaf", "no vertex of degree below n"));
        };
        let leaves: Vec<usize> = t
            .neighbors(x)
            .iter()
            .copied()
            .filter(|&l| t.is_leaf(l) && l != self.t2)
            .collect();
        let none = VertexSet::new(n);
        let map = if let Some(own) = [&p1.u, &p2.u].into_iter().find(|u| u.contains(w)) {
            self.trace.push("heavy-leaf-inside");
            let out = n - own.count();
            if out > leaves.len() {
                return Err(violation(
                    "heavy-leaf",
                    format!("{out} leaves needed outside U"),
                ));
            }
            let out_part = VertexSet::from_iter(n, leaves[..out].iter().copied());
            let mut rest = out_part.complement();
            rest.remove(x);
            let sides = [
                Side {
                    part: out_part,
                    pool: own.complement(),
                },
                Side {
                    part: rest,
                    pool: own.clone(),
                },
            ];
            split_embed(t, &self.gbar, x, w, &sides, &[], &none)
                .map_err(|e| violation("heavy-leaf", e))?
        } else {
            self.trace.push("heavy-leaf-outside");
            let (ua, ub) = if self.gbar.degree_within(w, &p1.u) >= 4 {
                (&p1.u, &p2.u)
            } else {
                (&p2.u, &p1.u)
            };
            let mut comps: Vec<Vec<usize>> = t
                .components_without(x)
                .into_iter()
                .filter(|c| c.len() >= 2 || c.contains(&self.t2))
                .collect();
            comps.sort_by_key(|c| (!c.iter().any(|&v| v == self.t1 || v == self.t2), c[0]));
            let cut = (self.gbar.degree_within(w, ua).saturating_sub(2)).min(comps.len());
            let a = VertexSet::from_iter(n, comps[..cut].iter().flatten().copied());
            let b = VertexSet::from_iter(n, comps[cut..].iter().flatten().copied());
            let mut lone = a.union(&b).complement();
            lone.remove(x);
            let mut tied = VertexSet::new(n);
            if x == self.t1 || x == self.t2 {
                tied.insert(self.t1 + self.t2 - x);
            }
            let sides = [
                Side {
                    part: a,
                    pool: ua.clone(),
                },
                Side {
                    part: b,
                    pool: ub.clone(),
                },
                Side {
                    part: lone,
                    pool: g.vertices(),
                },
            ];
            split_embed(t, &self.gbar, x, w, &sides, &[], &tied)
                .map_err(|e| violation("heavy-leaf", e))?
        };
        self.done(map, "heavy-leaf")
    }

    /// Pins and ties for the designated edge: split `t`s go to the ends of
    /// the crossing edge `(h_end, j_end)`, a `t` opposite `x = t` must be a
    /// `Ḡ`-neighbour of the centre.
    fn designated_constraints(
        &self,
        split: &UCSplit,
        h_end: usize,
        j_end: usize,
    ) -> (Vec<(usize, usize)>, VertexSet) {
        let (t1, t2) = (self.t1, self.t2);
        let mut tied = VertexSet::new(self.n);
        let mut pins = Vec::new();
        if split.x == t1 || split.x == t2 {
            tied.insert(t1 + t2 - split.x);
        } else if split.h.contains(t1) != split.h.contains(t2) {
            let (th, tj) = if split.h.contains(t1) {
                (t1, t2)
            } else {
                (t2, t1)
            };
            pins.push((th, h_end));
            pins.push((tj, j_end));
        }
        (pins, tied)
    }

    /// Two disjoint crossing edges and some `w ∈ U_i` with `2m − 1`
    /// non-neighbours in `U_j`.
    fn cross_degree_step(
        &mut self,
        p1: &AnchorSets,
        p2: &AnchorSets,
        split: &UCSplit,
        edges: [(usize, usize); 2],
    ) -> Result<Option<Witness>, EngineError> {
        let m = self.m;
        for (own, other, flip) in [(&p1.u, &p2.u, false), (&p2.u, &p1.u, true)] {
            let Some(w) = own
                .iter()
                .find(|&w| self.gbar.degree_within(w, other) + 1 >= 2 * m)
            else {
                continue;
            };
            let oriented = edges.map(|(a, b)| if flip { (b, a) } else { (a, b) });
            let (y, z) = *oriented
                .iter()
                .find(|&&(y, _)| y != w)
                .expect("two disjoint edges");
            let (pins, tied) = self.designated_constraints(split, z, y);
            let sides = [
                Side {
                    part: split.h.clone(),
                    pool: other.clone(),
                },
                Side {
                    part: split.j.clone(),
                    pool: own.clone(),
                },
            ];
            let map = split_embed(&self.t, &self.gbar, split.x, w, &sides, &pins, &tied)
                .map_err(|e| violation("cross-degree", e))?;
            return self.done(map, "cross-degree").map(Some);
        }
        Ok(None)
    }

    /// A crossing edge exists and some `w ∈ W` has `1 + 5n/18`
    /// non-neighbours in both `U_1` and `U_2`.
    fn balanced_centre_step(
        &mut self,
        p1: &AnchorSets,
        p2: &AnchorSets,
        split: &UCSplit,
        edge: (usize, usize),
        outside: &VertexSet,
    ) -> Result<Option<Witness>, EngineError> {
        let n = self.n;
        let big = |w: usize, u: &VertexSet| 18 * self.gbar.degree_within(w, u) >= 18 + 5 * n;
        let Some(w) = outside.iter().find(|&w| big(w, &p1.u) && big(w, &p2.u)) else {
            return Ok(None);
        };
        let t = &self.t;
        let x = split.x;
        let (mut h, mut j) = (split.h.clone(), split.j.clone());
        let d2 = self.gbar.degree_within(w, &p2.u);
        let dj = t.neighbors(x).iter().filter(|&&v| j.contains(v)).count();
        if dj >= d2 {
            let mut comps: Vec<Vec<usize>> = t
                .components_within(&j)
                .into_iter()
                .filter(|c| !c.iter().any(|&v| v == self.t1 || v == self.t2))
                .collect();
            comps.sort_by_key(|c| (c.len(), c[0]));
            for c in comps.iter().take(dj - d2 + 1) {
                for &v in c {
                    j.remove(v);
                    h.insert(v);
                }
            }
        }
        let moved = UCSplit {
            x,
            h,
            j,
            branch: split.branch,
        };
        let (pins, tied) = self.designated_constraints(&moved, edge.0, edge.1);
        let sides = [
            Side {
                part: moved.h.clone(),
                pool: p1.u.clone(),
            },
            Side {
                part: moved.j.clone(),
                pool: p2.u.clone(),
            },
        ];
        let map = split_embed(t, &self.gbar, x, w, &sides, &pins, &tied)
            .map_err(|e| violation("balanced-centre", e))?;
        self.done(map, "balanced-centre").map(Some)
    }

    /// Some `w ∈ W` with `m` neighbours on both sides yields a fan: with two
    /// disjoint crossing edges the sparse side absorbs a matching, otherwise
    /// `U_1' × U_2'` is complete in `G`.
    fn fan_step(
        &mut self,
        u1: &VertexSet,
        u2: &VertexSet,
        outside: &VertexSet,
        disjoint: bool,
    ) -> Result<Option<Witness>, EngineError> {
        let (g, n, m) = (self.g, self.n, self.m);
        for w in outside.iter() {
            for (small, big) in [(u1, u2), (u2, u1)] {
                if disjoint && 18 * self.gbar.degree_within(w, small) >= 18 + 5 * n {
                    continue;
                }
                if g.degree_within(w, big) < m || g.degree_within(w, small) < m && !disjoint {
                    continue;
                }
                let xs = g.neighbors_in(w, big);
                let s = g.neighbors_in(w, small);
                let pairs = greedy_cross_matching(g, &xs, &s, m).ok_or_else(|| {
                    violation(
                        "cross-fan",
                        format!("neighbours of {w} do not match across"),
                    )
                })?;
                self.trace.push("cross-fan");
                return Ok(Some(Witness::Fan(FanEmbedding { center: w, pairs })));
            }
        }
        Ok(None)
    }

    fn final_case(
        &mut self,
        p1: &AnchorSets,
        p2: &AnchorSets,
        u1p: &VertexSet,
        u2p: &VertexSet,
    ) -> Result<Witness, EngineError> {
        let (g, n, m) = (self.g, self.n, self.m);
        let t = &self.t;
        let z = p1.xy().union(&p2.xy()).complement();
        let sparse_to = |u: &VertexSet| {
            VertexSet::from_iter(g.order(), z.iter().filter(|&v| g.degree_within(v, u) < m))
        };
        let (side, up, z1) = {
            let c1 = sparse_to(u1p);
            if c1.count() + 1 >= m {
                (p1, u1p, c1.lowest(m - 1))
            } else {
                let c2 = sparse_to(u2p);
                if c2.count() + 1 < m {
                    return Err(violation(
                        "cross-fan",
                        format!("|Z| = {} splits too evenly", z.count()),
                    ));
                }
                (p2, u2p, c2.lowest(m - 1))
            }
        };
        let ts = self.ts();
        let d: Vec<usize> = if t.leaves().count() >= 2 * m + 2 {
            self.trace.push("final-leaves");
            capped_leaves(t, &ts, m - 1, m - 4)
        } else {
            self.trace.push("final-degree-two");
            let mut d: Vec<usize> = degree_two_set(t, &ts).d.iter().take(m - 2).collect();
            d.extend(capped_leaves(t, &ts, m - 1 - d.len(), m - 6));
            d
        };
        if d.len() + 1 < m {
            return Err(violation(
                "final",
                format!("only {} removable vertices", d.len()),
            ));
        }
        let dset = VertexSet::from_iter(n, d.iter().copied());
        let mut dmap = vec![NONE; n];
        for (v, h) in dset.iter().zip(z1.iter()) {
            dmap[v] = h;
        }
        let pool = side.x.intersection(up);
        let pins =
            choose_pins(t, &self.gbar, &dset, &dmap, &pool).map_err(|e| violation("final", e))?;
        let mut map = embed_forest_pinned(t, &dset, &pins, &ts, &side.x, &side.y, m + 1)
            .map_err(|e| violation("final", e.to_string()))?;
        for v in dset.iter() {
            map[v] = dmap[v];
        }
        if !self.gbar.has_edge(map[self.t1], map[self.t2]) {
            return Err(violation(
                "final",
                "designated edge images are not adjacent",
            ));
        }
        self.done(map, "final")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_graph;
    use crate::trees::{random_unicyclic, unicyclic_with_cycle};

    fn check(g: &Graph, uc: &UnicyclicGraph, m: usize) -> (Witness, Trace) {
        let (w, trace) =
            find_witness_unicyclic_traced(g, uc, m, UnicyclicOptions::default()).unwrap();
        w.verify(g, uc.graph(), m).unwrap();
        if let Witness::Unicyclic { embedding, t1, t2 } = &w {
            assert!(!g.has_edge(embedding.map[*t1], embedding.map[*t2]));
        }
        (w, trace)
    }

    #[test]
    fn empty_host_uses_dirac_cycle() {
        let (w, trace) = check(&Graph::new(613), &random_unicyclic(307, 3), 18);
        assert_eq!(w.kind(), "unicyclic");
        assert_eq!(trace, vec!["cycle-dirac", "cycle-extend"]);
    }

    #[test]
    fn pure_cycle_in_bipartite_host() {
        let g = Graph::from_edges(613, Graph::complete_bipartite(306, 306).edges()).unwrap();
        let uc = UnicyclicGraph::new(307, &Graph::cycle(307).edges().collect::<Vec<_>>()).unwrap();
        let (w, trace) = check(&g, &uc, 18);
        assert_eq!(w.kind(), "unicyclic");
        assert_eq!(trace, vec!["cycle"]);
    }

    #[test]
    fn bipartite_host_uses_clique_cycle() {
        let g = Graph::from_edges(613, Graph::complete_bipartite(306, 306).edges()).unwrap();
        let (_, trace) = check(&g, &unicyclic_with_cycle(307, 40, 1), 18);
        assert_eq!(trace[0], "cycle-clique");
    }

    #[test]
    fn high_degree_host_reaches_anchor_sets() {
        let mut g = Graph::from_edges(613, Graph::complete_bipartite(306, 306).edges()).unwrap();
        for v in 0..306 {
            g.add_edge(v, 612);
        }
        let (w, trace) = check(&g, &unicyclic_with_cycle(307, 12, 5), 18);
        assert_eq!(w.kind(), "unicyclic");
        assert_eq!(trace[0], "anchors-1");
    }

    #[test]
    fn dense_host_has_fan() {
        let (w, _) = check(&random_graph(613, 0.5, 9), &random_unicyclic(307, 9), 18);
        assert_eq!(w.kind(), "fan");
    }

    const N: usize = 307;
    const M: usize = 18;

    fn engine<'a>(g: &'a Graph, uc: &'a UnicyclicGraph) -> Engine<'a> {
        let (t1, t2, t) = unicyclic_normalize(uc).unwrap();
        Engine {
            g,
            gbar: g.complement(),
            uc,
            t,
            t1,
            t2,
            n: N,
            m: M,
            trace: Vec::new(),
            budget: DEFAULT_SEARCH_BUDGET,
        }
    }

    /// `K_{306,306}` on `A = 0..306`, `B = 306..612` plus the isolated
    /// vertex 612, with anchor sets planted in `A` and `B`.
    fn planted() -> (Graph, AnchorSets, AnchorSets) {
        let g = Graph::from_edges(613, Graph::complete_bipartite(306, 306).edges()).unwrap();
        let side = |lo: usize| {
            let x = VertexSet::from_iter(613, lo..lo + N - M + 1);
            AnchorSets {
                source: 0,
                restriction: g.vertices(),
                case: crate::witness::AnchorCase::LargeX,
                o: x.complement(),
                u: x.clone(),
                y: VertexSet::new(613),
                x,
            }
        };
        let (p1, p2) = (side(0), side(306));
        p1.verify(&g, N, M).unwrap();
        p2.verify(&g, N, M).unwrap();
        (g, p1, p2)
    }

    fn outside(p1: &AnchorSets, p2: &AnchorSets) -> VertexSet {
        p1.u.union(&p2.u).complement()
    }

    fn patterns() -> Vec<UnicyclicGraph> {
        (0..8)
            .map(|s| random_unicyclic(N, s))
            .chain((0..4).map(|s| unicyclic_with_cycle(N, 3 + 20 * s as usize, s)))
            .collect()
    }

    fn accept(g: &Graph, uc: &UnicyclicGraph, w: &Witness) {
        w.verify(g, uc.graph(), M).unwrap();
    }

    /// Cycle `0..k`, `leaves` pendant vertices on 0, the rest a path hanging
    /// off vertex 1.
    fn lollipop(k: usize, leaves: usize) -> UnicyclicGraph {
        let mut edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        edges.extend((k..k + leaves).map(|l| (0, l)));
        let mut prev = 1;
        for v in k + leaves..N {
            edges.push((prev, v));
            prev = v;
        }
        UnicyclicGraph::new(N, &edges).unwrap()
    }

    #[test]
    fn planted_second_anchor_fallback() {
        let (g, p1, _) = planted();
        let mut branches = Vec::new();
        for uc in patterns()
            .iter()
            .chain([lollipop(40, 2), lollipop(3, 0)].iter())
        {
            let mut e = engine(&g, uc);
            let w = e.second_anchor_fallback(&p1).unwrap();
            accept(&g, uc, &w);
            branches.push(e.trace[0]);
        }
        assert!(
            branches.contains(&"second-anchor-leaves")
                && branches.contains(&"second-anchor-triples")
        );
    }

    #[test]
    fn planted_heavy_leaf() {
        let (g, p1, p2) = planted();
        let uc = lollipop(3, 40);
        let mut e = engine(&g, &uc);
        let x = (0..N).find(|&x| e.t.leaf_degree(x) + 1 >= 2 * M).unwrap();
        let w = e.heavy_leaf(x, &p1, &p2).unwrap();
        accept(&g, &uc, &w);
        assert_eq!(e.trace, vec!["heavy-leaf-inside", "heavy-leaf"]);
    }

    #[test]
    fn planted_cross_degree_step() {
        let (mut g, p1, p2) = planted();
        for b in 306..341 {
            g.remove_edge(0, b);
        }
        g.remove_edge(1, 341);
        for uc in patterns() {
            let mut e = engine(&g, &uc);
            let split = designated_split(&e.t, e.t1, e.t2, M).unwrap().unwrap();
            let w = e
                .cross_degree_step(&p1, &p2, &split, [(0, 306), (1, 341)])
                .unwrap()
                .unwrap();
            accept(&g, &uc, &w);
            assert_eq!(e.trace, vec!["cross-degree"]);
        }
    }

    #[test]
    fn planted_balanced_centre_step() {
        let (mut g, p1, p2) = planted();
        g.remove_edge(0, 306);
        g.remove_edge(1, 307);
        for uc in patterns() {
            let mut e = engine(&g, &uc);
            let split = designated_split(&e.t, e.t1, e.t2, M).unwrap().unwrap();
            assert!(e
                .cross_degree_step(&p1, &p2, &split, [(0, 306), (1, 307)])
                .unwrap()
                .is_none());
            let w = e
                .balanced_centre_step(&p1, &p2, &split, (0, 306), &outside(&p1, &p2))
                .unwrap()
                .unwrap();
            accept(&g, &uc, &w);
        }
    }

    #[test]
    fn planted_fan_step() {
        let (mut g, p1, p2) = planted();
        for v in (0..20).chain(306..612) {
            g.add_edge(v, 612);
        }
        let uc = random_unicyclic(N, 1);
        let mut e = engine(&g, &uc);
        let w = e
            .fan_step(&p1.u, &p2.u, &outside(&p1, &p2), true)
            .unwrap()
            .unwrap();
        assert!(matches!(w, Witness::Fan(ref f) if f.center == 612));
        accept(&g, &uc, &w);
    }

    #[test]
    fn planted_final_case() {
        let (g, p1, p2) = planted();
        let mut kinds = Vec::new();
        for uc in patterns().iter().chain([lollipop(40, 2)].iter()) {
            let mut e = engine(&g, uc);
            let w = e.final_case(&p1, &p2, &p1.u, &p2.u).unwrap();
            accept(&g, uc, &w);
            kinds.push(e.trace[0]);
        }
        assert!(kinds.contains(&"final-leaves") && kinds.contains(&"final-degree-two"));
    }

    #[test]
    fn triple_lookup() {
        let gbar = Graph::from_edges(6, [(0, 3), (1, 3), (2, 4)]).unwrap();
        let k = VertexSet::from_iter(6, [0, 1, 2]);
        let h = VertexSet::from_iter(6, [3, 4, 5]);
        assert_eq!(common_neighbour_triple(&gbar, &k, &h), Some((0, 3, 1)));
        assert_eq!(
            common_neighbour_triple(&gbar, &VertexSet::from_iter(6, [0, 2]), &h),
            None
        );
    }
}
