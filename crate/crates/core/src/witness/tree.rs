//! Tree versus fan: a fan in `G` or `T` in `Ḡ` for every host on `2n − 1`
//! vertices, `m ≥ 9`, `n ≥ m² − m + 1`.

use super::anchors::{build_anchor_sets, AnchorSets};
use super::place::{
    attach_leaves, capped_leaves, choose_pins, embed_forest_pinned, greedy_cross_matching,
    greedy_extend, split_embed, used_of, Side,
};
use super::{check_hypotheses, violation, EngineError, Trace, Witness, NONE};
use crate::graph::{Graph, VertexSet};
use crate::matching::{find_fan, neighborhood_structure, FanEmbedding, StructureError};
use crate::oracle::{check_embedding, Embedding};
use crate::trees::{balanced_separator, degree_two_set, greedy_bfs_embed, Tree};

pub fn find_witness_tree(g: &Graph, t: &Tree, m: usize) -> Result<Witness, EngineError> {
    find_witness_tree_traced(g, t, m).map(|(w, _)| w)
}

/// Like [`find_witness_tree`], also returning the steps taken.
pub fn find_witness_tree_traced(
    g: &Graph,
    t: &Tree,
    m: usize,
) -> Result<(Witness, Trace), EngineError> {
    check_hypotheses(g.order(), t.order(), m, 9)?;
    let mut e = Engine::new(g, t, m);
    let w = e.run()?;
    Ok((w, e.trace))
}

/// `T` has a vertex `x` with at least `m − 1` leaf neighbours and `G` has no
/// fan: either some `d(u) ≥ n + m − 1` and `T` fits in `Ḡ[N(u)]`, or `Ḡ`
/// has minimum degree `≥ n − m` and `T − L` embeds with `x` on a vertex of
/// `Ḡ`-degree `≥ n − 1`.
pub fn heavy_leaf_witness(g: &Graph, t: &Tree, m: usize, x: usize) -> Result<Witness, EngineError> {
    Engine::new(g, t, m).heavy_leaf(x)
}

struct Engine<'a> {
    g: &'a Graph,
    gbar: Graph,
    t: &'a Tree,
    pattern: Graph,
    n: usize,
    m: usize,
    trace: Trace,
}

fn fan_of(e: StructureError) -> Witness {
    let StructureError::FanPresent { fan, .. } = e;
    Witness::Fan(fan)
}

impl<'a> Engine<'a> {
    fn new(g: &'a Graph, t: &'a Tree, m: usize) -> Self {
        Engine {
            g,
            gbar: g.complement(),
            t,
            pattern: t.to_graph(),
            n: t.order(),
            m,
            trace: Vec::new(),
        }
    }

    fn done(&mut self, map: Vec<usize>, step: &'static str) -> Result<Witness, EngineError> {
        let e = Embedding::new(map, true);
        check_embedding(&self.pattern, self.g, &e)
            .map_err(|err| violation(step, err.to_string()))?;
        self.trace.push(step);
        log::info!("tree embedded at step {step}");
        Ok(Witness::Tree(e))
    }

    fn run(&mut self) -> Result<Witness, EngineError> {
        let (g, t, n, m) = (self.g, self.t, self.n, self.m);
        if let Some(f) = find_fan(g, m) {
            self.trace.push("fan");
            return Ok(Witness::Fan(f));
        }
        if let Some(x) = (0..n).find(|&v| t.leaf_degree(v) + 1 >= m) {
            return self.heavy_leaf(x);
        }
        if 20 * t.max_degree() >= 11 * n {
            return Err(violation(
                "heavy-leaf",
                format!("Δ(T) = {} with no heavy leaf vertex", t.max_degree()),
            ));
        }

        let mut map = vec![NONE; n];
        map[0] = 0;
        let mut used = VertexSet::from_iter(g.order(), [0]);
        let v = match greedy_extend(t, &self.gbar, &mut map, &mut used, None) {
            Ok(()) => return self.done(map, "greedy"),
            Err(s) => s.host,
        };
        if g.degree(v) < n {
            return Err(violation(
                "seeded-greedy",
                format!("greedy extension stuck at {v} of degree {}", g.degree(v)),
            ));
        }
        let p1 = match build_anchor_sets(g, v, &g.vertices(), n, m) {
            Ok(a) => a,
            Err(e) => return Ok(fan_of(e)),
        };
        p1.verify(g, n, m)
            .map_err(|e| violation("seeded-greedy", e))?;
        self.trace.push("anchors-1");

        let removed = t.peel_leaves(m - 1).complement();
        let mut map =
            embed_forest_pinned(t, &removed, &[], &VertexSet::new(n), &p1.x, &p1.y, m + 1)
                .map_err(|e| violation("forest-seed", e.to_string()))?;
        let mut used = used_of(&map, g.order());
        let u2 = match greedy_extend(t, &self.gbar, &mut map, &mut used, None) {
            Ok(()) => return self.done(map, "seeded-greedy"),
            Err(s) => s.host,
        };
        if g.degree_within(u2, &p1.o) < n {
            return Err(violation(
                "seeded-greedy",
                format!(
                    "stuck vertex {u2} has {} neighbours in O",
                    g.degree_within(u2, &p1.o)
                ),
            ));
        }
        let p2 = match build_anchor_sets(g, u2, &p1.o, n, m) {
            Ok(a) => a,
            Err(e) => return Ok(fan_of(e)),
        };
        p2.verify(g, n, m)
            .map_err(|e| violation("seeded-greedy", e))?;
        self.trace.push("anchors-2");

        if let Some(w) = self.cross_degree_step(&p1, &p2)? {
            return Ok(w);
        }
        let outside = p1.u.union(&p2.u).complement();
        if let Some(w) = self.balanced_centre_step(&p1, &p2, &outside)? {
            return Ok(w);
        }
        if let Some(w) = self.fan_step(&p1, &p2, &outside)? {
            return Ok(w);
        }
        self.final_case(&p1, &p2)
    }

    fn heavy_leaf(&mut self, x: usize) -> Result<Witness, EngineError> {
        let (g, t, n, m) = (self.g, self.t, self.n, self.m);
        if let Some(u) = (0..g.order()).find(|&u| g.degree(u) + 1 >= n + m) {
            self.trace.push("heavy-leaf-dense");
            let ns = match neighborhood_structure(g, u, &g.vertices(), m) {
                Ok(ns) => ns,
                Err(e) => return Ok(fan_of(e)),
            };
            let none = VertexSet::new(n);
            let map = embed_forest_pinned(t, &none, &[], &none, &ns.x, &ns.y, n)
                .map_err(|e| violation("heavy-leaf", e.to_string()))?;
            return self.done(map, "heavy-leaf");
        }
        self.trace.push("heavy-leaf-sparse");
        let Some(w) = (0..g.order()).find(|&w| g.degree(w) < n) else {
            return Err(violation("heavy-leaf", "no vertex of degree below n"));
        };
        let leaves: Vec<usize> = t
            .neighbors(x)
            .iter()
            .copied()
            .filter(|&l| t.is_leaf(l))
            .take(m - 1)
            .collect();
        let keep = VertexSet::from_iter(n, leaves.iter().copied()).complement();
        let mut map = vec![NONE; n];
        let mut used = VertexSet::new(g.order());
        let all = g.vertices();
        greedy_bfs_embed(t, &keep, &self.gbar, &all, x, w, &mut map, &mut used).map_err(|v| {
            violation(
                "heavy-leaf",
                format!("no room for {v} in the minimum-degree embedding"),
            )
        })?;
        attach_leaves(t, &self.gbar, &leaves, &mut map, &mut used, &all).map_err(|l| {
            violation(
                "heavy-leaf",
                format!("star centre {w} has no room for leaf {l}"),
            )
        })?;
        self.done(map, "heavy-leaf")
    }

    /// Some `w ∈ U_i` with at least `2m − 2` non-neighbours in `U_j`.
    fn cross_degree_step(
        &mut self,
        p1: &AnchorSets,
        p2: &AnchorSets,
    ) -> Result<Option<Witness>, EngineError> {
        let (t, m) = (self.t, self.m);
        for (own, other) in [(p1, p2), (p2, p1)] {
            let Some(w) = own
                .u
                .iter()
                .find(|&w| self.gbar.degree_within(w, &other.u) + 2 >= 2 * m)
            else {
                continue;
            };
            let sep = balanced_separator(t)?;
            let x = sep.vertex;
            let mut comps = t.components_within(&sep.k);
            comps.sort_by_key(|c| (c.len(), c[0]));
            let mut c = VertexSet::new(t.order());
            for comp in comps {
                if c.count() + 2 >= 2 * m {
                    break;
                }
                for v in comp {
                    c.insert(v);
                }
            }
            let mut rest = c.complement();
            rest.remove(x);
            let sides = [
                Side {
                    part: rest,
                    pool: own.u.clone(),
                },
                Side {
                    part: c,
                    pool: other.u.clone(),
                },
            ];
            let map = split_embed(t, &self.gbar, x, w, &sides, &[], &VertexSet::new(t.order()))
                .map_err(|e| violation("cross-degree", e))?;
            return self.done(map, "cross-degree").map(Some);
        }
        Ok(None)
    }

    /// Some `w ∈ W` with at least `11n/40` non-neighbours in each `U_i`.
    fn balanced_centre_step(
        &mut self,
        p1: &AnchorSets,
        p2: &AnchorSets,
        outside: &VertexSet,
    ) -> Result<Option<Witness>, EngineError> {
        let (t, n) = (self.t, self.n);
        let big = |w: usize, u: &VertexSet| 40 * self.gbar.degree_within(w, u) >= 11 * n;
        let Some(w) = outside.iter().find(|&w| big(w, &p1.u) && big(w, &p2.u)) else {
            return Ok(None);
        };
        let sep = balanced_separator(t)?;
        let x = sep.vertex;
        let (mut k, mut h) = (sep.k.clone(), sep.h.clone());
        let (d1, d2) = (
            self.gbar.degree_within(w, &p1.u),
            self.gbar.degree_within(w, &p2.u),
        );
        let components = |s: &VertexSet| {
            let mut c = t.components_within(s);
            c.sort_by_key(|c| (c.len(), c[0]));
            c
        };
        let (ck, ch) = (components(&k), components(&h));
        if ck.len() > d1 {
            for comp in &ck[..ck.len() - d1] {
                for &v in comp {
                    k.remove(v);
                    h.insert(v);
                }
            }
        } else if ch.len() > d2 {
            for comp in &ch[..ch.len() - d2] {
                for &v in comp {
                    h.remove(v);
                    k.insert(v);
                }
            }
        }
        let sides = [
            Side {
                part: k,
                pool: p1.u.clone(),
            },
            Side {
                part: h,
                pool: p2.u.clone(),
            },
        ];
        let map = split_embed(t, &self.gbar, x, w, &sides, &[], &VertexSet::new(t.order()))
            .map_err(|e| violation("balanced-centre", e))?;
        self.done(map, "balanced-centre").map(Some)
    }

    /// Some `w ∈ W`, few non-neighbours in `U_j`, at least `m` neighbours in
    /// `U_i`: the neighbours in `U_i` match into `N_{U_j}(w)`.
    fn fan_step(
        &mut self,
        p1: &AnchorSets,
        p2: &AnchorSets,
        outside: &VertexSet,
    ) -> Result<Option<Witness>, EngineError> {
        let (g, n, m) = (self.g, self.n, self.m);
        for w in outside.iter() {
            for (ui, uj) in [(&p1.u, &p2.u), (&p2.u, &p1.u)] {
                if 40 * self.gbar.degree_within(w, uj) >= 11 * n || g.degree_within(w, ui) < m {
                    continue;
                }
                let xs = g.neighbors_in(w, ui);
                let s = g.neighbors_in(w, uj);
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

    fn final_case(&mut self, p1: &AnchorSets, p2: &AnchorSets) -> Result<Witness, EngineError> {
        let (g, t, n, m) = (self.g, self.t, self.n, self.m);
        let z = p1.xy().union(&p2.xy()).complement();
        let sparse_to = |u: &VertexSet| {
            VertexSet::from_iter(g.order(), z.iter().filter(|&v| g.degree_within(v, u) < m))
        };
        let (side, z1) = {
            let c1 = sparse_to(&p1.u);
            if c1.count() + 1 >= m {
                (p1, c1.lowest(m - 1))
            } else {
                let c2 = sparse_to(&p2.u);
                if c2.count() + 1 < m {
                    return Err(violation(
                        "cross-fan",
                        format!("|Z| = {} splits too evenly", z.count()),
                    ));
                }
                (p2, c2.lowest(m - 1))
            }
        };
        let none = VertexSet::new(n);
        let d: Vec<usize> = if t.leaves().count() > m {
            self.trace.push("final-leaves");
            capped_leaves(t, &none, m - 1, m - 4)
        } else {
            self.trace.push("final-degree-two");
            let k = degree_two_set(t, &none).d;
            let mut d: Vec<usize> = k.iter().take(m - 1).collect();
            d.extend(capped_leaves(t, &none, m - 1 - d.len(), m - 6));
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
        let pins =
            choose_pins(t, &self.gbar, &dset, &dmap, &side.x).map_err(|e| violation("final", e))?;
        let mut map = embed_forest_pinned(t, &dset, &pins, &none, &side.x, &side.y, m + 1)
            .map_err(|e| violation("final", e.to_string()))?;
        for v in dset.iter() {
            map[v] = dmap[v];
        }
        self.done(map, "final")
    }
}
