//! Small named graphs used throughout the tests and by the CLI.

use crate::graph::Graph;

pub struct NamedGraph {
    pub name: &'static str,
    pub graph: Graph,
}

/// Vertices `v`, `w` joined by the edge `e`.
pub fn single_edge() -> Graph {
    Graph::new(["v", "w"], [("e".into(), "v".into(), "w".into())], false).unwrap()
}

/// Path on `v1..vn` with `e_i = v_i v_{i+1}`.
pub fn path(n: usize) -> Graph {
    assert!(n >= 2);
    let names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let edges = (1..n).map(|i| (format!("e{i}"), format!("v{i}"), format!("v{}", i + 1)));
    Graph::new(names, edges.collect::<Vec<_>>(), false).unwrap()
}

/// Cycle on `v1..vn` with `e_i = v_i v_{i+1}` and `e_n = v_n v_1`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let edges = (1..=n).map(|i| (format!("e{i}"), format!("v{i}"), format!("v{}", i % n + 1)));
    Graph::new(names, edges.collect::<Vec<_>>(), false).unwrap()
}

/// The star `K_{1,3}`: center `v0`, leaves `v1, v2, v3`, `e_i = v0 v_i`.
pub fn star_k13() -> Graph {
    let edges = (1..=3).map(|i| (format!("e{i}"), "v0".to_string(), format!("v{i}")));
    Graph::new(["v0", "v1", "v2", "v3"], edges.collect::<Vec<_>>(), false).unwrap()
}

/// Two parallel edges `e1`, `e2` between `v` and `w` (multigraph mode).
pub fn double_edge() -> Graph {
    let edges = [("e1".into(), "v".into(), "w".into()), ("e2".into(), "v".into(), "w".into())];
    Graph::new(["v", "w"], edges, true).unwrap()
}

pub const NAMES: [&str; 7] = ["single edge", "P3", "P4", "K13", "C3", "C4", "double edge"];

pub fn by_name(name: &str) -> Option<Graph> {
    let norm: String = name.chars().filter(|c| c.is_alphanumeric()).collect::<String>().to_lowercase();
    Some(match norm.as_str() {
        "singleedge" | "edge" | "p2" => single_edge(),
        "p3" | "path3" => path(3),
        "p4" | "path4" => path(4),
        "k13" | "star" => star_k13(),
        "c3" | "triangle" => cycle(3),
        "c4" | "square" => cycle(4),
        "doubleedge" => double_edge(),
        _ => return None,
    })
}

pub fn all() -> Vec<NamedGraph> {
    NAMES.iter().map(|&name| NamedGraph { name, graph: by_name(name).unwrap() }).collect()
}
