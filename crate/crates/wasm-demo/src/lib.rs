//! Three operations for the static page in `www/`, each returning JSON for
//! the canvas to draw.

use fanramsey::graph::VertexSet;
use fanramsey::instances::{HostFamily, TreeFamily};
use fanramsey::oracle::extremal_graph;
use fanramsey::trees::{balanced_separator, random_tree};
use fanramsey::witness::{find_witness_tree_traced, WitnessJson};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Runs the tree engine with `n = m² − m + 1` on a host from `host`
/// (`empty`, `complete`, `extremal+vertex`, `random`) and a tree from
/// `tree` (`path`, `broom`, `random`).
#[wasm_bindgen]
pub fn tree_witness(m: usize, host: &str, p: f64, tree: &str, seed: u64) -> Result<String, String> {
    if !(9..=12).contains(&m) {
        return Err(format!("m = {m}: the demo covers 9 ≤ m ≤ 12"));
    }
    let n = m * m - m + 1;
    let host_family = match host {
        "empty" => HostFamily::Empty,
        "complete" => HostFamily::Complete,
        "extremal+vertex" => HostFamily::ExtremalPlusVertex,
        "random" if (0.0..=1.0).contains(&p) => HostFamily::Random(p),
        _ => return Err(format!("unknown host {host:?} (p = {p})")),
    };
    let tree_family = match tree {
        "path" => TreeFamily::Path,
        "broom" => TreeFamily::Broom,
        "random" => TreeFamily::Random,
        _ => return Err(format!("unknown tree {tree:?}")),
    };
    let g = host_family.build(n, seed);
    let t = tree_family.build(n, m, seed);
    let (w, trace) = find_witness_tree_traced(&g, &t, m).map_err(|e| e.to_string())?;
    Ok(json!({
        "order": g.order(),
        "host_edges": g.edge_count(),
        "pattern": t.edges().map(|(a, b)| [a, b]).collect::<Vec<_>>(),
        "witness": WitnessJson::new(&w, n, m),
        "trace": trace,
    })
    .to_string())
}

/// Balanced separator of a random tree on `n ≥ 3` vertices.
#[wasm_bindgen]
pub fn separator(n: usize, seed: u64) -> Result<String, String> {
    if !(3..=400).contains(&n) {
        return Err(format!("n = {n}: the demo covers 3 ≤ n ≤ 400"));
    }
    let t = random_tree(n, seed);
    let s = balanced_separator(&t).map_err(|e| e.to_string())?;
    Ok(json!({
        "n": n,
        "edges": t.edges().map(|(a, b)| [a, b]).collect::<Vec<_>>(),
        "vertex": s.vertex,
        "k": s.k.to_vec(),
        "h": s.h.to_vec(),
        "bounds": [(n - 1).div_ceil(3), 2 * (n - 1) / 3],
    })
    .to_string())
}

/// `K_{n−1,n−1}`: fan-free, with a complement of two `(n − 1)`-cliques.
#[wasm_bindgen]
pub fn extremal(n: usize) -> Result<String, String> {
    if !(2..=40).contains(&n) {
        return Err(format!("n = {n}: the demo covers 2 ≤ n ≤ 40"));
    }
    let g = extremal_graph(n);
    let components: Vec<usize> = g
        .complement()
        .components_within(&VertexSet::full(g.order()))
        .iter()
        .map(Vec::len)
        .collect();
    Ok(json!({
        "n": n,
        "order": g.order(),
        "edges": g.edges().map(|(a, b)| [a, b]).collect::<Vec<_>>(),
        "has_triangle": g.has_triangle(),
        "complement_components": components,
    })
    .to_string())
}
