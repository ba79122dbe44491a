//! The cosmological polytope `C_G` in coordinates and its dual `C°_G`.
//!
//! Coordinates are indexed by the vertices of the graph followed by its edges.
//! `C_G` lies in the hyperplane `H` of coordinate sum 1, and so does every
//! dual vertex `z_t`.

pub mod faces;

pub use faces::{
    face_lattice, face_oracle_agreement, facet_incidence, is_face_combinatorial, is_face_lp, vertex_figure_iso_check,
    vertex_figure_report, Face, FaceLattice, FaceOracle, FaceSet, OracleAgreement, VertexFigureReport,
    DEFAULT_LATTICE_BUDGET,
};

use num_traits::One;

use crate::error::{contract, Result};
use crate::exact::{int, Rational, RationalVector};
use crate::graph::{Graph, Tube, TubeCatalog, TubeId};

/// Names a vertex of `C_G`: `p_e`, or `p_{e,v}` for an endpoint `v` of `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexTag {
    Edge(usize),
    EdgeEnd(usize, usize),
}

impl VertexTag {
    pub fn edge(&self) -> usize {
        match *self {
            VertexTag::Edge(e) | VertexTag::EdgeEnd(e, _) => e,
        }
    }

    pub fn label(&self, g: &Graph) -> String {
        match *self {
            VertexTag::Edge(e) => format!("p_{{{}}}", g.edge_label(e)),
            VertexTag::EdgeEnd(e, v) => format!("p_{{{},{}}}", g.edge_label(e), g.vertex_label(v)),
        }
    }

    /// Position in the canonical vertex list: three slots per edge.
    pub fn index(&self, g: &Graph) -> usize {
        match *self {
            VertexTag::Edge(e) => 3 * e,
            VertexTag::EdgeEnd(e, v) if g.edge(e).ends.0 == v => 3 * e + 1,
            VertexTag::EdgeEnd(e, _) => 3 * e + 2,
        }
    }

    pub fn from_index(g: &Graph, i: usize) -> Self {
        let e = i / 3;
        let (a, b) = g.edge(e).ends;
        match i % 3 {
            0 => VertexTag::Edge(e),
            1 => VertexTag::EdgeEnd(e, a),
            _ => VertexTag::EdgeEnd(e, b),
        }
    }

    /// Coordinates: `x_v + x_w - y_e` for `p_e`, `x_v - x_w + y_e` for `p_{e,v}`.
    pub fn coordinates(&self, g: &Graph) -> RationalVector {
        let mut c = RationalVector::zeros(g.ambient_dim());
        let e = self.edge();
        let (a, b) = g.edge(e).ends;
        let y = g.edge_coord(e);
        match *self {
            VertexTag::Edge(_) => {
                c[a] = int(1);
                c[b] = int(1);
                c[y] = int(-1);
            }
            VertexTag::EdgeEnd(_, v) => {
                let w = g.edge(e).other(v);
                c[v] = int(1);
                c[w] = int(-1);
                c[y] = int(1);
            }
        }
        c
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosmoVertex {
    pub tag: VertexTag,
    pub coordinates: RationalVector,
}

/// `p_e, p_{e,v}, p_{e,w}` for each edge `e = {v, w}` in edge order.
pub fn polytope_vertices(g: &Graph) -> Result<Vec<CosmoVertex>> {
    g.require_no_isolated_vertices()?;
    Ok((0..3 * g.edge_count())
        .map(|i| {
            let tag = VertexTag::from_index(g, i);
            CosmoVertex { tag, coordinates: tag.coordinates(g) }
        })
        .collect())
}

/// `h_t = Σ_{v∈V(t)} x_v + Σ_{e∉E(t)} |e∩V(t)| y_e`.
pub fn facet_normal(g: &Graph, t: &Tube) -> RationalVector {
    let mut h = RationalVector::zeros(g.ambient_dim());
    for v in t.vertex_set().ones() {
        h[v] = Rational::one();
    }
    for (k, e) in g.edges().iter().enumerate() {
        if !t.contains_edge(k) {
            let meet = [e.ends.0, e.ends.1].iter().filter(|&&v| t.contains_vertex(v)).count();
            h[g.edge_coord(k)] = int(meet as i64);
        }
    }
    h
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualVertex {
    pub tube: TubeId,
    pub normal: RationalVector,
    /// `z_t = h_t / |h_t|_1`.
    pub vector: RationalVector,
}

/// One dual vertex per tube, in canonical tube order.
pub fn dual_vertices(cat: &TubeCatalog) -> Result<Vec<DualVertex>> {
    let g = cat.graph();
    g.require_no_isolated_vertices()?;
    let out: Vec<DualVertex> = cat
        .ids()
        .map(|id| {
            let normal = facet_normal(g, cat.tube(id));
            let norm = normal.coordinate_sum();
            let vector = normal.scaled(&(Rational::one() / norm));
            DualVertex { tube: id, normal, vector }
        })
        .collect();
    for (i, a) in out.iter().enumerate() {
        if let Some(b) = out[i + 1..].iter().find(|b| b.vector == a.vector) {
            return Err(contract(format!(
                "tubes {} and {} have the same dual vertex",
                cat.label(a.tube),
                cat.label(b.tube)
            )));
        }
    }
    Ok(out)
}

/// True iff every dual vertex is a vertex of the convex hull of all of them:
/// some functional vanishes on it and is positive on the others.
pub fn dual_vertices_in_convex_position(duals: &[DualVertex]) -> bool {
    (0..duals.len()).all(|i| {
        let others: Vec<RationalVector> =
            duals.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, d)| d.vector.clone()).collect();
        crate::exact::lp_strict_feasible(std::slice::from_ref(&duals[i].vector), &others)
    })
}

/// `⟨h_t, p⟩ = 0` decided combinatorially: `p_e` misses exactly the tubes
/// containing `e`, and `p_{e,v}` the tubes containing `v` but not `e`.
pub fn incident_by_rule(t: &Tube, tag: VertexTag) -> bool {
    match tag {
        VertexTag::Edge(e) => !t.contains_edge(e),
        VertexTag::EdgeEnd(e, v) => !(t.contains_vertex(v) && !t.contains_edge(e)),
    }
}
