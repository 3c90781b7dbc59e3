//! Small graphs by name: `P4` path, `C5` cycle, `K3` clique, `S5` star on
//! five vertices, `F2` fan with two triangles, `3K2` matching of three edges.

use fanramsey::Graph;

pub struct Named {
    pub graph: Graph,
    /// `Some(k)` for `kK2`.
    pub matching_size: Option<usize>,
}

impl Named {
    pub fn is_tree(&self) -> bool {
        let g = &self.graph;
        g.order() >= 1 && g.edge_count() + 1 == g.order() && g.is_connected()
    }
}

pub fn parse(name: &str) -> Result<Named, String> {
    let bad = || format!("unrecognised graph name {name:?}");
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    if let Some(k) = name.strip_suffix("K2") {
        if !k.is_empty() {
            let k = num(k)?;
            if k == 0 {
                return Err(bad());
            }
            return Ok(Named {
                graph: Graph::matching(k),
                matching_size: Some(k),
            });
        }
    }
    let (head, rest) = name.split_at(name.char_indices().nth(1).map_or(name.len(), |(i, _)| i));
    let k = num(rest)?;
    let graph = match head {
        "P" if k >= 1 => Graph::path(k),
        "C" if k >= 3 => Graph::cycle(k),
        "K" if k >= 1 => Graph::complete(k),
        "S" if k >= 1 => Graph::from_edges(k, (1..k).map(|v| (0, v))).map_err(|e| e.to_string())?,
        "F" if k >= 1 => Graph::fan(k),
        _ => return Err(bad()),
    };
    // K2 is a one-edge matching too.
    let matching_size = (head == "K" && k == 2).then_some(1);
    Ok(Named {
        graph,
        matching_size,
    })
}
