use std::collections::{HashMap, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;

use super::Graph;

/// Index of a tube in the canonical enumeration of its graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(transparent)]
pub struct TubeId(pub usize);

impl fmt::Display for TubeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.0)
    }
}

/// A connected, nonempty, not necessarily induced subgraph.
///
/// Non-singleton tubes are determined by their edge set; the vertex set is
/// the union of the edges' endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tube {
    vertices: FixedBitSet,
    edges: FixedBitSet,
}

impl Tube {
    pub fn singleton(g: &Graph, v: usize) -> Self {
        let mut vertices = FixedBitSet::with_capacity(g.vertex_count());
        vertices.insert(v);
        Self { vertices, edges: FixedBitSet::with_capacity(g.edge_count()) }
    }

    /// The tube spanned by a nonempty edge set; `None` if the edges are not connected.
    pub fn from_edges(g: &Graph, edges: &[usize]) -> Option<Self> {
        let (&first, _) = edges.split_first()?;
        let mut eset = FixedBitSet::with_capacity(g.edge_count());
        for &k in edges {
            eset.insert(k);
        }
        let mut vertices = FixedBitSet::with_capacity(g.vertex_count());
        let (a, b) = g.edge(first).ends;
        vertices.insert(a);
        vertices.insert(b);
        let mut reached = FixedBitSet::with_capacity(g.edge_count());
        reached.insert(first);
        loop {
            let mut grew = false;
            for k in eset.ones() {
                if reached.contains(k) {
                    continue;
                }
                let (a, b) = g.edge(k).ends;
                if vertices.contains(a) || vertices.contains(b) {
                    vertices.insert(a);
                    vertices.insert(b);
                    reached.insert(k);
                    grew = true;
                }
            }
            if !grew {
                break;
            }
        }
        (reached == eset).then_some(Self { vertices, edges: eset })
    }

    pub fn is_singleton(&self) -> bool {
        self.edges.is_clear()
    }

    pub fn vertex_set(&self) -> &FixedBitSet {
        &self.vertices
    }

    pub fn edge_set(&self) -> &FixedBitSet {
        &self.edges
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.vertices.ones().collect()
    }

    pub fn edges(&self) -> Vec<usize> {
        self.edges.ones().collect()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.contains(v)
    }

    pub fn contains_edge(&self, k: usize) -> bool {
        self.edges.contains(k)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.count_ones(..)
    }

    /// `self ⊆ other` as subgraphs.
    pub fn is_subtube_of(&self, other: &Tube) -> bool {
        self.edges.is_subset(&other.edges) && self.vertices.is_subset(&other.vertices)
    }

    pub fn is_disjoint_from(&self, other: &Tube) -> bool {
        self.vertices.is_disjoint(&other.vertices)
    }

    /// `{v}` for singletons, `{e1,e2}` (edge labels) otherwise.
    pub fn label(&self, g: &Graph) -> String {
        if self.is_singleton() {
            let v = self.vertices.ones().next().expect("singleton has a vertex");
            format!("{{{}}}", g.vertex_label(v))
        } else {
            let names: Vec<&str> = self.edges.ones().map(|k| g.edge_label(k)).collect();
            format!("{{{}}}", names.join(","))
        }
    }
}

/// Disjoint vertex sets, or nested (edge sets and vertex sets both nested).
pub fn are_compatible(t1: &Tube, t2: &Tube) -> bool {
    t1.is_disjoint_from(t2) || t1.is_subtube_of(t2) || t2.is_subtube_of(t1)
}

/// Every tube of `g` exactly once: singletons in vertex order, then
/// non-singletons ordered lexicographically by their sorted edge indices.
pub fn enumerate_tubes(g: &Graph) -> Vec<Tube> {
    let mut out: Vec<Tube> = (0..g.vertex_count()).map(|v| Tube::singleton(g, v)).collect();
    // Grow connected edge sets one incident edge at a time.
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut frontier: Vec<Vec<usize>> = (0..g.edge_count()).map(|k| vec![k]).collect();
    seen.extend(frontier.iter().cloned());
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for set in &frontier {
            let mut touched = vec![false; g.vertex_count()];
            for &k in set {
                let (a, b) = g.edge(k).ends;
                touched[a] = true;
                touched[b] = true;
            }
            for k in 0..g.edge_count() {
                if set.contains(&k) {
                    continue;
                }
                let (a, b) = g.edge(k).ends;
                if touched[a] || touched[b] {
                    let mut grown = set.clone();
                    grown.push(k);
                    grown.sort_unstable();
                    if seen.insert(grown.clone()) {
                        next.push(grown);
                    }
                }
            }
        }
        frontier = next;
    }
    let mut edge_sets: Vec<Vec<usize>> = seen.into_iter().collect();
    edge_sets.sort();
    out.extend(edge_sets.iter().map(|es| Tube::from_edges(g, es).expect("grown edge sets are connected")));
    out
}

/// The canonical tube enumeration of a graph with its compatibility relation.
#[derive(Clone, Debug)]
pub struct TubeCatalog {
    graph: Graph,
    tubes: Vec<Tube>,
    compatible: Vec<FixedBitSet>,
    by_edges: HashMap<Vec<usize>, TubeId>,
    roots: Vec<TubeId>,
}

impl TubeCatalog {
    pub fn new(g: &Graph) -> Self {
        let tubes = enumerate_tubes(g);
        let m = tubes.len();
        let mut compatible = vec![FixedBitSet::with_capacity(m); m];
        for i in 0..m {
            for j in 0..m {
                if are_compatible(&tubes[i], &tubes[j]) {
                    compatible[i].insert(j);
                }
            }
        }
        let by_edges =
            tubes.iter().enumerate().filter(|(_, t)| !t.is_singleton()).map(|(i, t)| (t.edges(), TubeId(i))).collect();
        let roots =
            (0..m).filter(|&i| !(0..m).any(|j| j != i && tubes[i].is_subtube_of(&tubes[j]))).map(TubeId).collect();
        Self { graph: g.clone(), tubes, compatible, by_edges, roots }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.tubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tubes.is_empty()
    }

    pub fn tube(&self, id: TubeId) -> &Tube {
        &self.tubes[id.0]
    }

    pub fn tubes(&self) -> &[Tube] {
        &self.tubes
    }

    pub fn ids(&self) -> impl Iterator<Item = TubeId> + '_ {
        (0..self.tubes.len()).map(TubeId)
    }

    pub fn singleton(&self, v: usize) -> TubeId {
        TubeId(v)
    }

    pub fn is_singleton(&self, id: TubeId) -> bool {
        id.0 < self.graph.vertex_count()
    }

    /// Tubes contained in no other tube: one per connected component, which
    /// is the whole graph `G` when the graph is connected.
    pub fn roots(&self) -> &[TubeId] {
        &self.roots
    }

    pub fn is_root(&self, id: TubeId) -> bool {
        self.roots.contains(&id)
    }

    pub fn compatible(&self, a: TubeId, b: TubeId) -> bool {
        self.compatible[a.0].contains(b.0)
    }

    pub fn compatible_set(&self, a: TubeId) -> &FixedBitSet {
        &self.compatible[a.0]
    }

    /// Non-singleton tube with exactly this (sorted) edge set.
    pub fn by_edges(&self, edges: &[usize]) -> Option<TubeId> {
        self.by_edges.get(edges).copied()
    }

    pub fn label(&self, id: TubeId) -> String {
        self.tubes[id.0].label(&self.graph)
    }

    pub fn is_subtube(&self, a: TubeId, b: TubeId) -> bool {
        self.tubes[a.0].is_subtube_of(&self.tubes[b.0])
    }

    pub fn is_strict_subtube(&self, a: TubeId, b: TubeId) -> bool {
        a != b && self.is_subtube(a, b)
    }
}
