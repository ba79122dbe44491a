//! Finite graphs with labeled vertices and edges, and all tubing combinatorics.

mod io;
pub mod line_graph;
pub mod tubes;
pub mod tubings;

pub use io::GraphFile;
pub use line_graph::{ga_tubing_bijection_check, line_graph, BijectionReport};
pub use tubes::{are_compatible, enumerate_tubes, Tube, TubeCatalog, TubeId};
pub use tubings::{
    completions, enumerate_maximal_tubings, enumerate_tubings_with_singletons, enumerate_uc_almost_maximal,
    tubing_predecessors, tubing_successor, Budget, Tubing, UcTubing, DEFAULT_TUBING_BUDGET,
};

use std::collections::HashMap;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub label: String,
    pub ends: (usize, usize),
}

impl Edge {
    pub fn contains(&self, v: usize) -> bool {
        self.ends.0 == v || self.ends.1 == v
    }

    pub fn other(&self, v: usize) -> usize {
        if self.ends.0 == v {
            self.ends.1
        } else {
            self.ends.0
        }
    }
}

/// A finite graph. Self-loops are always rejected; parallel edges need the
/// multigraph flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    multigraph: bool,
    incidence: Vec<Vec<usize>>,
}

impl Graph {
    /// `edges` are `(label, endpoint, endpoint)` triples referring to vertex labels.
    pub fn new<V, E>(vertices: V, edges: E, multigraph: bool) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex label {v:?}")));
            }
        }
        let mut out = Vec::new();
        let mut labels = HashMap::new();
        let mut pairs = HashMap::new();
        for (label, a, b) in edges {
            let ia =
                *index.get(&a).ok_or_else(|| Error::InvalidGraph(format!("edge {label:?}: unknown vertex {a:?}")))?;
            let ib =
                *index.get(&b).ok_or_else(|| Error::InvalidGraph(format!("edge {label:?}: unknown vertex {b:?}")))?;
            if ia == ib {
                return Err(Error::InvalidGraph(format!("edge {label:?} is a self-loop at {a:?}")));
            }
            if labels.insert(label.clone(), out.len()).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate edge label {label:?}")));
            }
            let key = (ia.min(ib), ia.max(ib));
            if let Some(prev) = pairs.insert(key, label.clone()) {
                if !multigraph {
                    return Err(Error::InvalidGraph(format!(
                        "edges {prev:?} and {label:?} are parallel; enable multigraph mode to allow this"
                    )));
                }
            }
            out.push(Edge { label, ends: (ia, ib) });
        }
        let mut incidence = vec![Vec::new(); vertices.len()];
        for (k, e) in out.iter().enumerate() {
            incidence[e.ends.0].push(k);
            incidence[e.ends.1].push(k);
        }
        Ok(Self { vertices, edges: out, multigraph, incidence })
    }

    /// Convenience constructor from `(u, v)` pairs; edges are labeled `e1, e2, …`.
    pub fn from_pairs(vertices: &[&str], pairs: &[(&str, &str)], multigraph: bool) -> Result<Self> {
        let edges = pairs.iter().enumerate().map(|(i, (a, b))| (format!("e{}", i + 1), a.to_string(), b.to_string()));
        Self::new(vertices.iter().map(|s| s.to_string()), edges, multigraph)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `|V| + |E|`, the ambient dimension of every coordinate vector.
    pub fn ambient_dim(&self) -> usize {
        self.vertices.len() + self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, k: usize) -> &Edge {
        &self.edges[k]
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edge_label(&self, k: usize) -> &str {
        &self.edges[k].label
    }

    pub fn is_multigraph(&self) -> bool {
        self.multigraph
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn edge_index(&self, label: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.label == label)
    }

    /// Edges incident to `v`, in edge order.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    /// Coordinate index of `y_e`.
    pub fn edge_coord(&self, k: usize) -> usize {
        self.vertices.len() + k
    }

    /// Names of all coordinates: `x_v` for vertices, then `y_e` for edges.
    pub fn coordinate_names(&self) -> Vec<String> {
        self.vertices
            .iter()
            .map(|v| format!("x_{v}"))
            .chain(self.edges.iter().map(|e| format!("y_{}", e.label)))
            .collect()
    }

    pub fn require_no_isolated_vertices(&self) -> Result<()> {
        match self.incidence.iter().position(Vec::is_empty) {
            Some(v) => Err(Error::InvalidGraph(format!("vertex {:?} is isolated", self.vertices[v]))),
            None => Ok(()),
        }
    }

    /// A copy with one extra edge; endpoints not yet present become new vertices.
    pub fn with_edge(&self, label: &str, a: &str, b: &str) -> Result<Self> {
        let mut vertices = self.vertices.clone();
        for v in [a, b] {
            if !vertices.iter().any(|x| x == v) {
                vertices.push(v.to_string());
            }
        }
        let mut edges: Vec<(String, String, String)> = self
            .edges
            .iter()
            .map(|e| (e.label.clone(), self.vertices[e.ends.0].clone(), self.vertices[e.ends.1].clone()))
            .collect();
        edges.push((label.to_string(), a.to_string(), b.to_string()));
        Self::new(vertices, edges, self.multigraph)
    }

    /// An unused edge label of the form `e<k>`.
    pub fn fresh_edge_label(&self) -> String {
        (1..).map(|k| format!("e{k}")).find(|l| self.edge_index(l).is_none()).expect("unbounded search")
    }
}
