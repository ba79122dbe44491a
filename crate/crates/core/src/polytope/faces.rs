//! Faces of `C_G`: the combinatorial characterization, an LP oracle, the
//! desk-scale face lattice and the vertex-figure comparison for `G ⊂ G + e`.

use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{incident_by_rule, VertexTag};
use crate::error::{contract, Error, Result};
use crate::exact::{affine_dimension, lp_strict_feasible, RationalVector};
use crate::graph::{Graph, TubeCatalog, TubeId};

/// A set of vertices of `C_G`, indexed as in [`VertexTag::index`].
pub type FaceSet = FixedBitSet;

/// Subsets scanned by [`face_lattice`] unless the caller raises the limit.
pub const DEFAULT_LATTICE_BUDGET: u64 = 4096;

/// One step of a directed cycle: edge `edge` traversed from `tail` to `head`.
#[derive(Clone, Copy, Debug)]
struct Arc {
    edge: usize,
    tail: usize,
    head: usize,
}

/// Face tests for one graph, with its directed simple cycles cached.
#[derive(Clone, Debug)]
pub struct FaceOracle {
    graph: Graph,
    points: Vec<RationalVector>,
    cycles: Vec<Vec<Arc>>,
}

impl FaceOracle {
    pub fn new(g: &Graph) -> Result<Self> {
        g.require_no_isolated_vertices()?;
        let points = (0..3 * g.edge_count()).map(|i| VertexTag::from_index(g, i).coordinates(g)).collect();
        Ok(Self { graph: g.clone(), points, cycles: directed_cycles(g) })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.points.len()
    }

    pub fn set_of(&self, tags: &[VertexTag]) -> FaceSet {
        let mut s = FaceSet::with_capacity(self.points.len());
        for t in tags {
            s.insert(t.index(&self.graph));
        }
        s
    }

    pub fn tags(&self, x: &FaceSet) -> Vec<VertexTag> {
        x.ones().map(|i| VertexTag::from_index(&self.graph, i)).collect()
    }

    fn has(&self, x: &FaceSet, tag: VertexTag) -> bool {
        x.contains(tag.index(&self.graph))
    }

    /// Both closure conditions of the face characterization.
    ///
    /// (1) If `p_e, p_{e,v} ∈ X` for some `e ∋ v`, then `p_{e'}, p_{e',v} ∈ X`
    /// for every `e' ∋ v`. (2) If `X` holds `p_{e_i,v_i}` along a directed
    /// cycle `e_i = v_i v_{i+1}`, it holds the reversed `p_{e_i,v_{i+1}}` too.
    pub fn is_face_combinatorial(&self, x: &FaceSet) -> bool {
        let g = &self.graph;
        for v in 0..g.vertex_count() {
            let pair = |e: usize| self.has(x, VertexTag::Edge(e)) && self.has(x, VertexTag::EdgeEnd(e, v));
            let inc = g.incident_edges(v);
            if inc.iter().any(|&e| pair(e)) && !inc.iter().all(|&e| pair(e)) {
                return false;
            }
        }
        self.cycles.iter().all(|cycle| {
            !cycle.iter().all(|a| self.has(x, VertexTag::EdgeEnd(a.edge, a.tail)))
                || cycle.iter().all(|a| self.has(x, VertexTag::EdgeEnd(a.edge, a.head)))
        })
    }

    /// A supporting functional vanishes on `X` and is positive on the other
    /// vertices. Since `C_G` misses the origin this decides faces of `C_G`.
    pub fn is_face_lp(&self, x: &FaceSet) -> bool {
        let (eq, strict): (Vec<_>, Vec<_>) = self.points.iter().enumerate().partition(|(i, _)| x.contains(*i));
        let eq: Vec<RationalVector> = eq.into_iter().map(|(_, p)| p.clone()).collect();
        let strict: Vec<RationalVector> = strict.into_iter().map(|(_, p)| p.clone()).collect();
        lp_strict_feasible(&eq, &strict)
    }

    /// Affine dimension of the span of `X`; -1 for the empty set.
    pub fn dimension(&self, x: &FaceSet) -> isize {
        let pts: Vec<&RationalVector> = x.ones().map(|i| &self.points[i]).collect();
        affine_dimension(&pts)
    }
}

fn directed_cycles(g: &Graph) -> Vec<Vec<Arc>> {
    // Each directed simple cycle is found once, starting at its smallest vertex.
    fn dfs(g: &Graph, start: usize, cur: usize, on_path: &mut [bool], path: &mut Vec<Arc>, out: &mut Vec<Vec<Arc>>) {
        for &k in g.incident_edges(cur) {
            if path.iter().any(|a| a.edge == k) {
                continue;
            }
            let next = g.edge(k).other(cur);
            path.push(Arc { edge: k, tail: cur, head: next });
            if next == start && path.len() >= 2 {
                out.push(path.clone());
            } else if next > start && !on_path[next] {
                on_path[next] = true;
                dfs(g, start, next, on_path, path, out);
                on_path[next] = false;
            }
            path.pop();
        }
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; g.vertex_count()];
    for s in 0..g.vertex_count() {
        on_path[s] = true;
        dfs(g, s, s, &mut on_path, &mut Vec::new(), &mut out);
        on_path[s] = false;
    }
    out
}

pub fn is_face_combinatorial(g: &Graph, x: &[VertexTag]) -> Result<bool> {
    let o = FaceOracle::new(g)?;
    Ok(o.is_face_combinatorial(&o.set_of(x)))
}

pub fn is_face_lp(g: &Graph, x: &[VertexTag]) -> Result<bool> {
    let o = FaceOracle::new(g)?;
    Ok(o.is_face_lp(&o.set_of(x)))
}

/// For each vertex `p` of `C_G`, the tubes `t` with `⟨h_t, p⟩ = 0`.
///
/// The inner products are checked against the combinatorial rule: `p_e`
/// misses the tubes containing `e`, `p_{e,v}` those containing `v` but not `e`.
pub fn facet_incidence(cat: &TubeCatalog) -> Result<BTreeMap<VertexTag, Vec<TubeId>>> {
    let g = cat.graph();
    let verts = super::polytope_vertices(g)?;
    let normals: Vec<RationalVector> = cat.tubes().iter().map(|t| super::facet_normal(g, t)).collect();
    let mut out = BTreeMap::new();
    for p in verts {
        let mut inc = Vec::new();
        for id in cat.ids() {
            let zero = num_traits::Zero::is_zero(&normals[id.0].dot(&p.coordinates));
            if zero != incident_by_rule(cat.tube(id), p.tag) {
                return Err(contract(format!(
                    "incidence of {} and tube {} disagrees with the facet rule",
                    p.tag.label(g),
                    cat.label(id)
                )));
            }
            if zero {
                inc.push(id);
            }
        }
        out.insert(p.tag, inc);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct OracleAgreement {
    pub subsets: u64,
    pub faces: usize,
    /// Vertex labels of the first subset on which the two tests disagree.
    pub mismatch: Option<Vec<String>>,
}

/// Runs both face tests on every subset of vertices of `C_G`.
pub fn face_oracle_agreement(g: &Graph, budget: u64) -> Result<OracleAgreement> {
    let o = FaceOracle::new(g)?;
    let n = o.vertex_count();
    if n >= 63 || (1u64 << n) > budget {
        return Err(Error::Budget { what: format!("face oracle scan of 2^{n} vertex subsets"), limit: budget });
    }
    let mut faces = 0;
    for mask in 0u64..(1 << n) {
        let mut x = FaceSet::with_capacity(n);
        for i in (0..n).filter(|i| mask >> i & 1 == 1) {
            x.insert(i);
        }
        let c = o.is_face_combinatorial(&x);
        if c != o.is_face_lp(&x) {
            let labels = o.tags(&x).iter().map(|t| t.label(g)).collect();
            return Ok(OracleAgreement { subsets: 1 << n, faces, mismatch: Some(labels) });
        }
        faces += c as usize;
    }
    Ok(OracleAgreement { subsets: 1 << n, faces, mismatch: None })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub vertices: FaceSet,
    pub dim: isize,
}

#[derive(Clone, Debug)]
pub struct FaceLattice {
    pub faces: Vec<Face>,
    index: HashMap<Vec<usize>, usize>,
}

impl FaceLattice {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, x: &FaceSet) -> bool {
        self.index.contains_key(&x.ones().collect::<Vec<_>>())
    }

    /// Face counts by dimension, starting with the empty face.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.faces.iter().map(|f| f.dim).max().unwrap_or(-1);
        let mut fv = vec![0; (top + 2) as usize];
        for f in &self.faces {
            fv[(f.dim + 1) as usize] += 1;
        }
        fv
    }
}

/// Every subset of vertices passing the combinatorial face test, with its
/// dimension, sorted by dimension and then by vertex indices.
pub fn face_lattice(g: &Graph, budget: u64) -> Result<FaceLattice> {
    let o = FaceOracle::new(g)?;
    let n = o.vertex_count();
    if n >= 63 || (1u64 << n) > budget {
        return Err(Error::Budget { what: format!("face lattice scan of 2^{n} vertex subsets"), limit: budget });
    }
    let mut faces = Vec::new();
    for mask in 0u64..(1 << n) {
        let mut x = FaceSet::with_capacity(n);
        for i in (0..n).filter(|i| mask >> i & 1 == 1) {
            x.insert(i);
        }
        if o.is_face_combinatorial(&x) {
            let dim = o.dimension(&x);
            faces.push(Face { vertices: x, dim });
        }
    }
    faces.sort_by_key(|f| (f.dim, f.vertices.ones().collect::<Vec<_>>()));
    let index = faces.iter().enumerate().map(|(i, f)| (f.vertices.ones().collect(), i)).collect();
    Ok(FaceLattice { faces, index })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VertexFigureReport {
    pub new_edge: String,
    /// f-vector of `C_G`, starting with the empty face.
    pub base_f_vector: Vec<usize>,
    /// Faces of `C_{G+e}` containing `p_e`, counted by dimension minus one
    /// (the dimension of the corresponding face of the vertex figure).
    pub interval_f_vector: Vec<usize>,
    /// The four-case map sends faces of `C_G` to faces containing `p_e`.
    pub map_lands_in_interval: bool,
    pub map_is_bijection: bool,
    pub order_preserving: bool,
    pub isomorphic: bool,
}

/// Compares the face lattice of `C_G` with the interval above `p_e` in
/// `C_{G+e}`, where `e` joins the vertices labeled `a` and `b` (new labels are
/// added as new vertices).
///
/// The comparison uses the map from the subgraph argument: a face `F` goes to
/// `F ∪ {p_e}`, together with `p_{e,v}` whenever `F` holds `p_f, p_{f,v}` for
/// some edge `f ∋ v` of `G`, and likewise for `w`.
pub fn vertex_figure_report(g: &Graph, a: &str, b: &str, budget: u64) -> Result<VertexFigureReport> {
    let label = g.fresh_edge_label();
    let big = g.with_edge(&label, a, b)?;
    let base = face_lattice(g, budget)?;
    let full = face_lattice(&big, budget)?;
    let e = g.edge_count();
    let (v, w) = big.edge(e).ends;
    let pe = VertexTag::Edge(e).index(&big);
    let n_big = 3 * big.edge_count();

    let interval: Vec<&Face> = full.faces.iter().filter(|f| f.vertices.contains(pe)).collect();
    let mut interval_f_vector = Vec::new();
    for f in &interval {
        let d = f.dim as usize;
        if interval_f_vector.len() <= d {
            interval_f_vector.resize(d + 1, 0);
        }
        interval_f_vector[d] += 1;
    }

    let has_pair = |f: &FaceSet, u: usize| -> bool {
        u < g.vertex_count()
            && g.incident_edges(u)
                .iter()
                .any(|&k| f.contains(VertexTag::Edge(k).index(g)) && f.contains(VertexTag::EdgeEnd(k, u).index(g)))
    };
    let image: Vec<FaceSet> = base
        .faces
        .iter()
        .map(|f| {
            let mut x = FaceSet::with_capacity(n_big);
            x.extend(f.vertices.ones());
            x.insert(pe);
            if has_pair(&f.vertices, v) {
                x.insert(VertexTag::EdgeEnd(e, v).index(&big));
            }
            if has_pair(&f.vertices, w) {
                x.insert(VertexTag::EdgeEnd(e, w).index(&big));
            }
            x
        })
        .collect();

    let lands = image.iter().all(|x| full.contains(x));
    let mut distinct: Vec<Vec<usize>> = image.iter().map(|x| x.ones().collect()).collect();
    distinct.sort();
    distinct.dedup();
    let bijection = lands && distinct.len() == image.len() && image.len() == interval.len();
    let order_preserving = (0..image.len()).all(|i| {
        (0..image.len())
            .all(|j| base.faces[i].vertices.is_subset(&base.faces[j].vertices) == image[i].is_subset(&image[j]))
    });
    Ok(VertexFigureReport {
        new_edge: format!("{label}={{{a},{b}}}"),
        base_f_vector: base.f_vector(),
        interval_f_vector,
        map_lands_in_interval: lands,
        map_is_bijection: bijection,
        order_preserving,
        isomorphic: bijection && order_preserving,
    })
}

pub fn vertex_figure_iso_check(g: &Graph, a: &str, b: &str, budget: u64) -> Result<bool> {
    Ok(vertex_figure_report(g, a, b, budget)?.isomorphic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;

    fn all_subsets(o: &FaceOracle) -> impl Iterator<Item = FaceSet> + '_ {
        let n = o.vertex_count();
        (0u64..1 << n).map(move |mask| {
            let mut x = FaceSet::with_capacity(n);
            x.extend((0..n).filter(|i| mask >> i & 1 == 1));
            x
        })
    }

    #[test]
    fn examples() {
        let p3 = library::path(3);
        let o = FaceOracle::new(&p3).unwrap();
        let x = o.set_of(&[VertexTag::Edge(0), VertexTag::EdgeEnd(0, 1)]);
        assert!(!o.is_face_combinatorial(&x));
        assert!(!o.is_face_lp(&x));
        for i in 0..6 {
            let single = o.set_of(&[VertexTag::from_index(&p3, i)]);
            assert!(o.is_face_combinatorial(&single) && o.is_face_lp(&single));
        }
        let mut all = FaceSet::with_capacity(6);
        all.insert_range(..);
        assert!(o.is_face_combinatorial(&all) && o.is_face_lp(&all));

        let e = library::single_edge();
        assert!(is_face_lp(&e, &[VertexTag::EdgeEnd(0, 0), VertexTag::EdgeEnd(0, 1)]).unwrap());
        assert!(is_face_lp(&e, &[VertexTag::Edge(0), VertexTag::EdgeEnd(0, 0)]).unwrap());
    }

    #[test]
    fn cycle_cache() {
        assert_eq!(directed_cycles(&library::path(3)).len(), 0);
        assert_eq!(directed_cycles(&library::cycle(3)).len(), 2);
        assert_eq!(directed_cycles(&library::double_edge()).len(), 2);
        // K4 has 7 undirected cycles: four triangles and three squares.
        let k4 = Graph::from_pairs(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")],
            false,
        )
        .unwrap();
        assert_eq!(directed_cycles(&k4).len(), 14);
    }

    #[test]
    fn oracles_agree_on_p3_and_double_edge() {
        for (g, faces) in [(library::path(3), 40), (library::double_edge(), 22), (library::single_edge(), 8)] {
            let o = FaceOracle::new(&g).unwrap();
            let mut count = 0;
            for x in all_subsets(&o) {
                let c = o.is_face_combinatorial(&x);
                assert_eq!(c, o.is_face_lp(&x), "{:?}", o.tags(&x));
                count += c as usize;
            }
            assert_eq!(count, faces);
        }
    }

    #[test]
    fn lattice_of_a_triangle() {
        let lat = face_lattice(&library::single_edge(), DEFAULT_LATTICE_BUDGET).unwrap();
        assert_eq!(lat.f_vector(), [1, 3, 3, 1]);
        assert!(face_lattice(&library::cycle(4), 100).is_err());
    }

    #[test]
    fn facet_incidence_examples() {
        let cat = TubeCatalog::new(&library::single_edge());
        let inc = facet_incidence(&cat).unwrap();
        assert_eq!(inc[&VertexTag::Edge(0)], [TubeId(0), TubeId(1)]);
        let cat = TubeCatalog::new(&library::star_k13());
        // Four of the eleven tubes contain e1: every edge set through e1 is connected.
        assert_eq!(facet_incidence(&cat).unwrap()[&VertexTag::Edge(0)].len(), 7);
        let cat = TubeCatalog::new(&library::path(3));
        let inc = facet_incidence(&cat).unwrap();
        assert_eq!(inc[&VertexTag::EdgeEnd(0, 0)].len(), 5);
    }

    #[test]
    fn vertex_figure_when_both_endpoints_exist() {
        // Closing P3 into a triangle, and doubling the single edge.
        let r = vertex_figure_report(&library::path(3), "v3", "v1", DEFAULT_LATTICE_BUDGET).unwrap();
        assert!(r.isomorphic, "{r:?}");
        let mut e = library::single_edge();
        e = Graph::new(e.vertices().to_vec(), [("e".into(), "v".into(), "w".into())], true).unwrap();
        let r = vertex_figure_report(&e, "v", "w", DEFAULT_LATTICE_BUDGET).unwrap();
        assert!(r.isomorphic, "{r:?}");
        assert_eq!(r.interval_f_vector, [1, 3, 3, 1]);
    }

    #[test]
    fn vertex_figure_gains_a_cone_point_with_a_new_vertex() {
        // A new endpoint turns the vertex figure into a pyramid over C_G.
        let r = vertex_figure_report(&library::single_edge(), "w", "u", DEFAULT_LATTICE_BUDGET).unwrap();
        assert_eq!(r.base_f_vector, [1, 3, 3, 1]);
        assert_eq!(r.interval_f_vector, [1, 4, 6, 4, 1]);
        assert!(!r.isomorphic);
        assert!(r.map_lands_in_interval && r.order_preserving && !r.map_is_bijection);
    }
}
