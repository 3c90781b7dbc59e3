//! Anchor sets `X ⊆ U ⊆ X ∪ Y` of size `n − m + 1` cut out of a
//! high-degree neighbourhood.

use crate::graph::{Graph, VertexSet};
use crate::matching::{neighborhood_structure, StructureError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnchorCase {
    /// `|X_v| ≥ n − m + 1`.
    LargeX,
    /// `|X_v| < n − m + 1 ≤ |U_v|`.
    LargeU,
    /// `|U_v| < n − m + 1`.
    SmallU,
}

/// `X` is a `Ḡ`-clique `Ḡ`-complete to `Y`; `U` is a `Ḡ`-clique;
/// `O = V ∖ (X ∪ Y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnchorSets {
    pub source: usize,
    pub restriction: VertexSet,
    pub case: AnchorCase,
    pub x: VertexSet,
    pub y: VertexSet,
    pub u: VertexSet,
    pub o: VertexSet,
}

impl AnchorSets {
    pub fn xy(&self) -> VertexSet {
        self.x.union(&self.y)
    }

    pub fn verify(&self, g: &Graph, n: usize, m: usize) -> Result<(), String> {
        let xy = self.xy();
        if xy.count() != n - m + 1 || self.x.intersects(&self.y) {
            return Err(format!(
                "|X ∪ Y| = {} with X ∩ Y non-empty: {}",
                xy.count(),
                self.x.intersects(&self.y)
            ));
        }
        if !self.x.is_subset(&self.u) || !self.u.is_subset(&xy) {
            return Err("X ⊆ U ⊆ X ∪ Y fails".into());
        }
        if self.u.count() + 2 * m < n + 2 || self.x.count() + 3 * m < n + 3 {
            return Err(format!(
                "|U| = {}, |X| = {} below n − 2m + 2, n − 3m + 3",
                self.u.count(),
                self.x.count()
            ));
        }
        for a in self.u.iter() {
            if g.neighbors(a).intersects(&self.u) {
                return Err(format!("U is not independent at {a}"));
            }
        }
        for a in self.x.iter() {
            if g.neighbors(a).intersects(&xy) {
                return Err(format!("{a} ∈ X has a neighbour in X ∪ Y"));
            }
        }
        if self.o != xy.complement() {
            return Err("O is not the complement of X ∪ Y".into());
        }
        Ok(())
    }
}

/// Requires `d_S(v) ≥ n`; fails only if `N_S(v)` holds an `m`-matching.
pub fn build_anchor_sets(
    g: &Graph,
    v: usize,
    s: &VertexSet,
    n: usize,
    m: usize,
) -> Result<AnchorSets, StructureError> {
    let ns = neighborhood_structure(g, v, s, m)?;
    assert!(
        ns.degree >= n,
        "anchor source {v} has only {} neighbours in S",
        ns.degree
    );
    let r = n - m + 1;
    let (case, x, u, y) = if ns.x.count() >= r {
        let x = ns.x.lowest(r);
        (AnchorCase::LargeX, x.clone(), x, VertexSet::new(g.order()))
    } else if ns.u.count() >= r {
        let extra = ns.u.difference(&ns.x).lowest(r - ns.x.count());
        let u = ns.x.union(&extra);
        (AnchorCase::LargeU, ns.x.clone(), u, extra)
    } else {
        let mut y = ns.u.difference(&ns.x);
        y.union_with(&ns.y.difference(&ns.u).lowest(r - ns.u.count()));
        (AnchorCase::SmallU, ns.x.clone(), ns.u.clone(), y)
    };
    let o = x.union(&y).complement();
    log::debug!(
        "anchors at {v}: {case:?}, |X| = {}, |Y| = {}, |U| = {}",
        x.count(),
        y.count(),
        u.count()
    );
    Ok(AnchorSets {
        source: v,
        restriction: s.clone(),
        case,
        x,
        y,
        u,
        o,
    })
}
