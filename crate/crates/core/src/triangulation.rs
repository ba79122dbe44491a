//! The two tubing triangulations of `C°_G`: one simplex per maximal tubing,
//! and one apex cone per uniquely completable almost-maximal tubing.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{contract, Result};
use crate::exact::{int, Rational, RationalMatrix, RationalVector};
use crate::graph::{
    enumerate_maximal_tubings, enumerate_uc_almost_maximal, Budget, Graph, TubeCatalog, TubeId, Tubing,
};
use crate::polytope::{facet_incidence, facet_normal, VertexTag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TriangulationKind {
    MaxTubing,
    BoundaryCone,
}

/// A tubing naming a simplex of `C°_G`, optionally coned from the apex `𝟙/n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplexCell {
    pub tubing: Tubing,
    pub has_apex: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// Columns `h_t`, and `𝟙` for the apex.
    RawNormals,
    /// Columns `z_t = h_t/|h_t|_1`, and `𝟙/n` for the apex.
    NormalizedVertices,
}

#[derive(Clone, Debug)]
pub struct Triangulation {
    pub kind: TriangulationKind,
    pub cells: Vec<SimplexCell>,
    catalog: TubeCatalog,
    normals: Vec<RationalVector>,
}

impl Triangulation {
    /// One cell per maximal tubing.
    pub fn max_tubing(cat: &TubeCatalog, budget: &mut Budget) -> Result<Self> {
        let cells = enumerate_maximal_tubings(cat, budget)?
            .into_iter()
            .map(|tubing| SimplexCell { tubing, has_apex: false })
            .collect();
        Self::checked(cat, TriangulationKind::MaxTubing, cells)
    }

    /// One apex cell per uniquely completable almost-maximal tubing.
    pub fn boundary(cat: &TubeCatalog, budget: &mut Budget) -> Result<Self> {
        let cells = enumerate_uc_almost_maximal(cat, budget)?
            .into_iter()
            .map(|u| SimplexCell { tubing: u.tubing, has_apex: true })
            .collect();
        Self::checked(cat, TriangulationKind::BoundaryCone, cells)
    }

    fn checked(cat: &TubeCatalog, kind: TriangulationKind, cells: Vec<SimplexCell>) -> Result<Self> {
        let g = cat.graph();
        g.require_no_isolated_vertices()?;
        let normals: Vec<RationalVector> = cat.tubes().iter().map(|t| facet_normal(g, t)).collect();
        // The apex 𝟙/n is interior: <h_t, 𝟙> = |h_t|_1 is positive for every tube.
        if let Some(t) = normals.iter().position(|h| !h.coordinate_sum().is_positive()) {
            return Err(contract(format!("apex is not interior: <h_t, 1> <= 0 for tube {}", cat.label(TubeId(t)))));
        }
        let tri = Self { kind, cells, catalog: cat.clone(), normals };
        for i in 0..tri.cells.len() {
            tri.cell_detvol(i, Normalization::RawNormals)?;
        }
        Ok(tri)
    }

    pub fn catalog(&self) -> &TubeCatalog {
        &self.catalog
    }

    pub fn graph(&self) -> &Graph {
        self.catalog.graph()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn normal(&self, t: TubeId) -> &RationalVector {
        &self.normals[t.0]
    }

    pub fn dual_vertex(&self, t: TubeId) -> RationalVector {
        let h = &self.normals[t.0];
        h.scaled(&(Rational::one() / h.coordinate_sum()))
    }

    fn columns(&self, cell: &SimplexCell, mode: Normalization) -> Vec<RationalVector> {
        let n = self.graph().ambient_dim();
        let mut cols: Vec<RationalVector> = cell
            .tubing
            .ids()
            .iter()
            .map(|&t| match mode {
                Normalization::RawNormals => self.normals[t.0].clone(),
                Normalization::NormalizedVertices => self.dual_vertex(t),
            })
            .collect();
        if cell.has_apex {
            let apex = RationalVector::ones(n);
            cols.push(match mode {
                Normalization::RawNormals => apex,
                Normalization::NormalizedVertices => apex.scaled(&Rational::new(BigInt::one(), BigInt::from(n))),
            });
        }
        cols
    }

    /// `|det|` of the cell's vertex matrix.
    ///
    /// Both normalizations are computed and checked against each other: they
    /// differ by `∏ |h_t|_1`, times `n` for the apex.
    pub fn cell_detvol(&self, idx: usize, mode: Normalization) -> Result<Rational> {
        let cell = &self.cells[idx];
        let n = self.graph().ambient_dim();
        let cols = self.columns(cell, Normalization::RawNormals);
        if cols.len() != n {
            return Err(contract(format!("cell {idx} has {} vertices in dimension {n}", cols.len())));
        }
        let raw = RationalMatrix::from_columns(&cols).det().abs();
        if raw.is_zero() {
            return Err(contract(format!(
                "cell {} is not a simplex: its vertex matrix is singular",
                cell.tubing.display(&self.catalog)
            )));
        }
        let normalized =
            RationalMatrix::from_columns(&self.columns(cell, Normalization::NormalizedVertices)).det().abs();
        let mut factor: Rational = cell.tubing.ids().iter().map(|&t| self.normals[t.0].coordinate_sum()).product();
        if cell.has_apex {
            factor *= int(n as i64);
        }
        if &normalized * &factor != raw {
            return Err(contract(format!("normalizations of cell {idx} disagree")));
        }
        Ok(match mode {
            Normalization::RawNormals => raw,
            Normalization::NormalizedVertices => normalized,
        })
    }

    pub fn total_detvol(&self, mode: Normalization) -> Result<Rational> {
        (0..self.cells.len()).try_fold(Rational::zero(), |acc, i| Ok(acc + self.cell_detvol(i, mode)?))
    }

    /// The raw-normal determinants of all cells, with a flag for whether all
    /// equal `2^|E|` (an observation, not a proven property).
    pub fn raw_determinant_census(&self) -> Result<(Vec<Rational>, bool)> {
        let dets: Vec<Rational> =
            (0..self.cells.len()).map(|i| self.cell_detvol(i, Normalization::RawNormals)).collect::<Result<_>>()?;
        let target = Rational::from_integer(BigInt::from(2).pow(self.graph().edge_count() as u32));
        let all = dets.iter().all(|d| *d == target);
        Ok((dets, all))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RidgeClass {
    /// In exactly two cells, and on no facet of `C°`.
    Shared,
    /// In one cell, with every vertex on the facet dual to this vertex of `C_G`.
    Boundary(String),
    Violation(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct RidgeEntry {
    pub tubes: Vec<TubeId>,
    pub has_apex: bool,
    pub cells: Vec<usize>,
    pub class: RidgeClass,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub ridges: Vec<RidgeEntry>,
    pub shared: usize,
    pub boundary: usize,
    pub violations: usize,
    pub passed: bool,
}

/// Checks that every ridge is either interior and shared by exactly two
/// cells, or lies on a facet of `C°` and belongs to exactly one cell.
///
/// A ridge containing the apex is never on a facet, since the apex is interior.
pub fn validate_ridges(tri: &Triangulation) -> Result<ValidationReport> {
    let cat = tri.catalog();
    let incidence = facet_incidence(cat)?;
    let g = cat.graph();
    let mut by_key: BTreeMap<(Vec<TubeId>, bool), Vec<usize>> = BTreeMap::new();
    for (i, cell) in tri.cells.iter().enumerate() {
        let ids = cell.tubing.ids();
        for drop in 0..ids.len() {
            let key: Vec<TubeId> = ids.iter().enumerate().filter(|&(j, _)| j != drop).map(|(_, &t)| t).collect();
            by_key.entry((key, cell.has_apex)).or_default().push(i);
        }
        if cell.has_apex {
            by_key.entry((ids.to_vec(), false)).or_default().push(i);
        }
    }
    let facet_of = |tubes: &[TubeId], apex: bool| -> Option<VertexTag> {
        if apex {
            return None;
        }
        incidence.iter().find(|(_, inc)| tubes.iter().all(|t| inc.contains(t))).map(|(&p, _)| p)
    };
    let mut ridges = Vec::new();
    for ((tubes, has_apex), cells) in by_key {
        let facet = facet_of(&tubes, has_apex);
        let class = match (cells.len(), facet) {
            (1, Some(p)) => RidgeClass::Boundary(p.label(g)),
            (2, None) => RidgeClass::Shared,
            (1, None) => RidgeClass::Violation("interior ridge in only one cell".into()),
            (2, Some(p)) => RidgeClass::Violation(format!("ridge on facet {} is shared by two cells", p.label(g))),
            (k, _) => RidgeClass::Violation(format!("ridge lies in {k} cells")),
        };
        ridges.push(RidgeEntry { tubes, has_apex, cells, class });
    }
    let count = |f: fn(&RidgeClass) -> bool| ridges.iter().filter(|r| f(&r.class)).count();
    let shared = count(|c| matches!(c, RidgeClass::Shared));
    let boundary = count(|c| matches!(c, RidgeClass::Boundary(_)));
    let violations = count(|c| matches!(c, RidgeClass::Violation(_)));
    Ok(ValidationReport { ridges, shared, boundary, violations, passed: violations == 0 })
}

/// `p_e - p_f` as a functional: `x_a + x_b - y_e - x_c - x_d + y_f`.
fn edge_difference(g: &Graph, e: usize, f: usize) -> RationalVector {
    let mut a = VertexTag::Edge(e).coordinates(g);
    let b = VertexTag::Edge(f).coordinates(g);
    a = a.sub(&b);
    a
}

/// The witness pair for intersecting, incompatible tubes `s` and `r`: the
/// least edge of `s` outside `r` touching `V(s) ∩ V(r)`, then likewise for `r`.
pub fn witness_edges(cat: &TubeCatalog, s: TubeId, r: TubeId) -> Option<(usize, usize)> {
    let (ts, tr) = (cat.tube(s), cat.tube(r));
    let mut meet = ts.vertex_set().clone();
    meet.intersect_with(tr.vertex_set());
    let g = cat.graph();
    let touches = |k: usize| {
        let (a, b) = g.edge(k).ends;
        meet.contains(a) || meet.contains(b)
    };
    let e = ts.edge_set().difference(tr.edge_set()).find(|&k| touches(k))?;
    let f = tr.edge_set().difference(ts.edge_set()).find(|&k| touches(k))?;
    Some((e, f))
}

/// `Σ a_sr` over pairs `s ∈ T_i \ T_j`, `r ∈ T_j \ T_i` that intersect
/// without being nested.
///
/// Checked: nonnegative on `z_t` for `t ∈ T_i`, nonpositive for `t ∈ T_j`,
/// and zero among these exactly on the common tubes.
pub fn separating_functional(cat: &TubeCatalog, ti: &Tubing, tj: &Tubing) -> Result<RationalVector> {
    if ti == tj {
        return Err(contract("separating functional needs two distinct tubings"));
    }
    for t in [ti, tj] {
        if !t.is_maximal(cat) {
            return Err(contract(format!("{} is not a maximal tubing", t.display(cat))));
        }
    }
    let g = cat.graph();
    let mut a = RationalVector::zeros(g.ambient_dim());
    for &s in ti.ids().iter().filter(|&&s| !tj.contains(s)) {
        for &r in tj.ids().iter().filter(|&&r| !ti.contains(r)) {
            if cat.compatible(s, r) {
                continue;
            }
            let (e, f) = witness_edges(cat, s, r)
                .ok_or_else(|| contract(format!("no witness edges for {} and {}", cat.label(s), cat.label(r))))?;
            a = a.add(&edge_difference(g, e, f));
        }
    }
    for (tubing, sign) in [(ti, 1), (tj, -1)] {
        for &t in tubing.ids() {
            let h = facet_normal(g, cat.tube(t));
            let value = a.dot(&h) * int(sign);
            let common = ti.contains(t) && tj.contains(t);
            if value.is_negative() || value.is_zero() != common {
                return Err(contract(format!(
                    "separating functional has the wrong sign on tube {} ({})",
                    cat.label(t),
                    a.dot(&h)
                )));
            }
        }
    }
    Ok(a)
}

/// Pairs of max-tubing cells sharing a ridge. Each pair is checked to differ
/// in exactly one tube on each side.
pub fn ridge_adjacency_graph(tri: &Triangulation) -> Result<Vec<(usize, usize)>> {
    let mut by_ridge: HashMap<Vec<TubeId>, Vec<usize>> = HashMap::new();
    for (i, cell) in tri.cells.iter().enumerate() {
        let ids = cell.tubing.ids();
        for drop in 0..ids.len() {
            let key: Vec<TubeId> = ids.iter().enumerate().filter(|&(j, _)| j != drop).map(|(_, &t)| t).collect();
            by_ridge.entry(key).or_default().push(i);
        }
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for cells in by_ridge.values() {
        for (x, &i) in cells.iter().enumerate() {
            for &j in &cells[x + 1..] {
                edges.push((i.min(j), i.max(j)));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    for &(i, j) in &edges {
        let (a, b) = (&tri.cells[i].tubing, &tri.cells[j].tubing);
        let diff =
            a.ids().iter().filter(|t| !b.contains(**t)).count() + b.ids().iter().filter(|t| !a.contains(**t)).count();
        if diff != 2 {
            return Err(contract(format!("adjacent cells {i} and {j} differ in {diff} tubes")));
        }
    }
    Ok(edges)
}
