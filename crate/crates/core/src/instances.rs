//! Seeded host and pattern families for batch runs and benchmarks.

use std::fmt;

use crate::graph::{random_graph, Graph};
use crate::oracle::extremal_graph;
use crate::trees::{
    broom_tree, path_tree, random_tree, random_unicyclic, unicyclic_with_cycle, Tree,
    UnicyclicGraph,
};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum HostFamily {
    Empty,
    Complete,
    /// `K_{n−1,n−1}` plus a vertex joined to one side.
    ExtremalPlusVertex,
    Random(f64),
}

impl HostFamily {
    /// Host on `2n − 1` vertices.
    pub fn build(self, n: usize, seed: u64) -> Graph {
        let order = 2 * n - 1;
        match self {
            HostFamily::Empty => Graph::new(order),
            HostFamily::Complete => Graph::complete(order),
            HostFamily::ExtremalPlusVertex => {
                let mut g = Graph::from_edges(order, extremal_graph(n).edges())
                    .expect("extremal graph fits");
                for v in 0..n - 1 {
                    g.add_edge(v, order - 1);
                }
                g
            }
            HostFamily::Random(p) => random_graph(order, p, seed),
        }
    }
}

impl fmt::Display for HostFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HostFamily::Empty => write!(f, "empty"),
            HostFamily::Complete => write!(f, "complete"),
            HostFamily::ExtremalPlusVertex => write!(f, "extremal+vertex"),
            HostFamily::Random(p) => write!(f, "random-{p}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeFamily {
    Path,
    /// Path whose end carries `m − 2` leaves, one short of the heavy-leaf
    /// threshold.
    Broom,
    Random,
}

impl TreeFamily {
    pub fn build(self, n: usize, m: usize, seed: u64) -> Tree {
        match self {
            TreeFamily::Path => path_tree(n),
            TreeFamily::Broom => broom_tree(n, m - 2),
            TreeFamily::Random => random_tree(n, seed),
        }
    }
}

impl fmt::Display for TreeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TreeFamily::Path => "path",
            TreeFamily::Broom => "broom",
            TreeFamily::Random => "random",
        };
        f.write_str(s)
    }
}

pub const TREE_HOSTS: [HostFamily; 6] = [
    HostFamily::Empty,
    HostFamily::Complete,
    HostFamily::ExtremalPlusVertex,
    HostFamily::Random(0.05),
    HostFamily::Random(0.5),
    HostFamily::Random(0.95),
];

pub const TREE_PATTERNS: [TreeFamily; 3] =
    [TreeFamily::Path, TreeFamily::Broom, TreeFamily::Random];

pub const UNICYCLIC_HOSTS: [HostFamily; 3] = [
    HostFamily::Random(0.1),
    HostFamily::Random(0.5),
    HostFamily::Random(0.9),
];

#[derive(Clone, Debug)]
pub struct TreeInstance {
    pub index: usize,
    pub host_family: HostFamily,
    pub tree_family: TreeFamily,
    pub seed: u64,
    pub host: Graph,
    pub tree: Tree,
}

/// Instance `index` of the tree suite: host and tree families cycle through
/// all 18 combinations; seeds derive from `seed` and `index`.
pub fn tree_instance(index: usize, n: usize, m: usize, seed: u64) -> TreeInstance {
    let host_family = TREE_HOSTS[index % TREE_HOSTS.len()];
    let tree_family = TREE_PATTERNS[(index / TREE_HOSTS.len()) % TREE_PATTERNS.len()];
    let s = instance_seed(seed, index);
    TreeInstance {
        index,
        host_family,
        tree_family,
        seed: s,
        host: host_family.build(n, s),
        tree: tree_family.build(n, m, s ^ 0x7ee),
    }
}

#[derive(Clone, Debug)]
pub struct UnicyclicInstance {
    pub index: usize,
    pub host_family: HostFamily,
    /// `"near-cycle"` or `"random"`.
    pub pattern_family: &'static str,
    pub seed: u64,
    pub host: Graph,
    pub pattern: UnicyclicGraph,
}

/// Instance `index` of the unicyclic suite; index 0 uses a cycle of length
/// `n − 1` with one pendant vertex.
pub fn unicyclic_instance(index: usize, n: usize, seed: u64) -> UnicyclicInstance {
    let host_family = UNICYCLIC_HOSTS[index % UNICYCLIC_HOSTS.len()];
    let s = instance_seed(seed, index);
    let (pattern_family, pattern) = if index == 0 {
        ("near-cycle", unicyclic_with_cycle(n, n - 1, s))
    } else {
        ("random", random_unicyclic(n, s))
    };
    UnicyclicInstance {
        index,
        host_family,
        pattern_family,
        seed: s,
        host: host_family.build(n, s),
        pattern,
    }
}

fn instance_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
        .wrapping_add(index as u64)
}
