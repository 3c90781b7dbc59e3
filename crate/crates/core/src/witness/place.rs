//! Placement primitives shared by both engines. All of them pick lowest ids
//! so that runs are deterministic.

use thiserror::Error;

use super::NONE;
use crate::graph::{Graph, VertexSet};
use crate::trees::Tree;

/// Greedy extension stopped: `vertex` has no free `Ḡ`-neighbour of
/// `host = map[parent]` in the pool.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stuck {
    pub vertex: usize,
    pub parent: usize,
    pub host: usize,
}

/// Extends a partial embedding of `t` in `gbar` one vertex at a time. Placed
/// vertices are expanded in increasing id, then in placement order; each new
/// vertex takes the lowest free `gbar`-neighbour of its parent's image.
/// The placed set must induce a connected subtree.
pub fn greedy_extend(
    t: &Tree,
    gbar: &Graph,
    map: &mut [usize],
    used: &mut VertexSet,
    pool: Option<&VertexSet>,
) -> Result<(), Stuck> {
    let mut queue: Vec<usize> = (0..t.order()).filter(|&v| map[v] != NONE).collect();
    let mut i = 0;
    while i < queue.len() {
        let p = queue[i];
        i += 1;
        for &c in t.neighbors(p) {
            if map[c] != NONE {
                continue;
            }
            let mut free = gbar.neighbors(map[p]).difference(used);
            if let Some(pool) = pool {
                free.intersect_with(pool);
            }
            let Some(h) = free.first() else {
                return Err(Stuck {
                    vertex: c,
                    parent: p,
                    host: map[p],
                });
            };
            map[c] = h;
            used.insert(h);
            queue.push(c);
        }
    }
    Ok(())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlacementError {
    #[error("{needed} constrained A-vertices exceed the budget {budget}")]
    Budget { needed: usize, budget: usize },
    #[error("{kept} vertices do not fit into {slots} slots")]
    Capacity { kept: usize, slots: usize },
    #[error("pin {vertex} ↦ {image} is outside the X pool or reused")]
    BadPin { vertex: usize, image: usize },
    #[error("only {have} free A-vertices for {need} Y slots")]
    NotEnoughY { need: usize, have: usize },
}

/// Places `T − removed` into `X ∪ Y`, where `X` is a `Ḡ`-clique that is
/// `Ḡ`-complete to `Y`: a set of A-vertices (independent in `T`) goes to
/// `Y`, everything else (pins included) to `X`. Vertices of `must_x` are
/// never sent to `Y`. Returns a full-length map with `NONE` on `removed`.
pub fn embed_forest_pinned(
    t: &Tree,
    removed: &VertexSet,
    pins: &[(usize, usize)],
    must_x: &VertexSet,
    x_pool: &VertexSet,
    y_pool: &VertexSet,
    budget: usize,
) -> Result<Vec<usize>, PlacementError> {
    let n = t.order();
    let kept: Vec<usize> = (0..n).filter(|&v| !removed.contains(v)).collect();
    let slots = x_pool.count() + y_pool.count();
    if kept.len() > slots {
        return Err(PlacementError::Capacity {
            kept: kept.len(),
            slots,
        });
    }
    let mut fixed = must_x.clone();
    for &(p, _) in pins {
        fixed.insert(p);
    }
    let needed = fixed.intersection_count(t.a_side()) + removed.intersection_count(t.a_side());
    if needed > budget {
        return Err(PlacementError::Budget { needed, budget });
    }
    let mut map = vec![NONE; n];
    let mut x_free = x_pool.clone();
    for &(p, h) in pins {
        if !x_free.remove(h) {
            return Err(PlacementError::BadPin {
                vertex: p,
                image: h,
            });
        }
        map[p] = h;
    }
    let need_y = kept.len().saturating_sub(x_pool.count());
    let y_cands: Vec<usize> = kept
        .iter()
        .copied()
        .filter(|&v| t.in_a(v) && !fixed.contains(v))
        .collect();
    if y_cands.len() < need_y {
        return Err(PlacementError::NotEnoughY {
            need: need_y,
            have: y_cands.len(),
        });
    }
    for (&p, h) in y_cands[..need_y].iter().zip(y_pool.iter()) {
        map[p] = h;
    }
    let mut xs = x_free.iter();
    for &p in &kept {
        if map[p] == NONE {
            map[p] = xs.next().expect("slot count checked above");
        }
    }
    Ok(map)
}

/// One side of a split embedding: pattern vertices `part` go into `pool`.
pub(crate) struct Side {
    pub part: VertexSet,
    pub pool: VertexSet,
}

/// `x ↦ w`, pins first, then per side: `x`'s neighbours and `tied` vertices
/// into `pool ∩ N̄(w)`, the rest into `pool`, lowest free ids in increasing
/// pattern id. Only capacity is checked; callers verify edges.
pub(crate) fn split_embed(
    t: &Tree,
    gbar: &Graph,
    x: usize,
    w: usize,
    sides: &[Side],
    pins: &[(usize, usize)],
    tied: &VertexSet,
) -> Result<Vec<usize>, String> {
    let mut map = vec![NONE; t.order()];
    let mut used = VertexSet::new(gbar.order());
    map[x] = w;
    used.insert(w);
    for &(p, h) in pins {
        if map[p] != NONE || !used.insert(h) {
            return Err(format!("pin {p} ↦ {h} collides"));
        }
        map[p] = h;
    }
    for (si, side) in sides.iter().enumerate() {
        let near = gbar.neighbors(w).intersection(&side.pool);
        for constrained in [true, false] {
            for p in side.part.iter() {
                if map[p] != NONE || (t.has_edge(x, p) || tied.contains(p)) != constrained {
                    continue;
                }
                let pool = if constrained { &near } else { &side.pool };
                let Some(h) = pool.difference(&used).first() else {
                    let what = if constrained {
                        "Ḡ-neighbours of the centre"
                    } else {
                        "vertices"
                    };
                    return Err(format!("side {si} ran out of {what} placing {p}"));
                };
                map[p] = h;
                used.insert(h);
            }
        }
    }
    if let Some(p) = map.iter().position(|&h| h == NONE) {
        return Err(format!("pattern vertex {p} lies in no side"));
    }
    Ok(map)
}

/// Up to `count` leaves outside `exclude`, lowest ids first, with at most
/// `cap` chosen leaves per parent.
pub(crate) fn capped_leaves(t: &Tree, exclude: &VertexSet, count: usize, cap: usize) -> Vec<usize> {
    let mut per_parent = vec![0usize; t.order()];
    let mut out = Vec::new();
    for l in t.leaves().iter() {
        if out.len() == count {
            break;
        }
        if exclude.contains(l) || t.degree(l) != 1 {
            continue;
        }
        let p = t.neighbors(l)[0];
        if per_parent[p] < cap {
            per_parent[p] += 1;
            out.push(l);
        }
    }
    out
}

/// For every pattern neighbour `y` of the placed set `D` (in increasing
/// id), the lowest unused `u ∈ pool` that is `Ḡ`-adjacent to the images of
/// all of `y`'s neighbours in `D`.
pub(crate) fn choose_pins(
    t: &Tree,
    gbar: &Graph,
    d: &VertexSet,
    map: &[usize],
    pool: &VertexSet,
) -> Result<Vec<(usize, usize)>, String> {
    let mut ys = VertexSet::new(t.order());
    for v in d.iter() {
        for &y in t.neighbors(v) {
            if !d.contains(y) {
                ys.insert(y);
            }
        }
    }
    let mut free = pool.clone();
    let mut pins = Vec::new();
    for y in ys.iter() {
        let mut cand = free.clone();
        for &v in t.neighbors(y) {
            if d.contains(v) {
                cand.intersect_with(gbar.neighbors(map[v]));
            }
        }
        let Some(u) = cand.first() else {
            return Err(format!(
                "no pin for {y}: its placed neighbours share no free Ḡ-neighbour"
            ));
        };
        free.remove(u);
        pins.push((y, u));
    }
    Ok(pins)
}

/// Greedy matching of `xs` (increasing) into `s` along `G`-edges, lowest
/// partner first; `Some` once `m` pairs exist.
pub(crate) fn greedy_cross_matching(
    g: &Graph,
    xs: &VertexSet,
    s: &VertexSet,
    m: usize,
) -> Option<Vec<(usize, usize)>> {
    let mut free = s.clone();
    let mut pairs = Vec::new();
    for x in xs.iter() {
        if pairs.len() == m {
            break;
        }
        if free.contains(x) {
            continue;
        }
        if let Some(y) = g.neighbors(x).intersection(&free).first() {
            free.remove(y);
            pairs.push((x, y));
        }
    }
    (pairs.len() == m).then_some(pairs)
}

/// Attaches each leaf in `leaves` (increasing) to the lowest free
/// `Ḡ`-neighbour of its parent's image inside `pool`.
pub(crate) fn attach_leaves(
    t: &Tree,
    gbar: &Graph,
    leaves: &[usize],
    map: &mut [usize],
    used: &mut VertexSet,
    pool: &VertexSet,
) -> Result<(), usize> {
    for &l in leaves {
        let p = t.neighbors(l)[0];
        let Some(h) = gbar
            .neighbors(map[p])
            .intersection(pool)
            .difference(used)
            .first()
        else {
            return Err(l);
        };
        map[l] = h;
        used.insert(h);
    }
    Ok(())
}

pub(crate) fn used_of(map: &[usize], order: usize) -> VertexSet {
    VertexSet::from_iter(order, map.iter().copied().filter(|&h| h != NONE))
}
