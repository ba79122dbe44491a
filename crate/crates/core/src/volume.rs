//! Exact volume of the dual of a shifted cosmological polytope, computed
//! from facet incidence alone (no tubings).
//!
//! For an interior point `x` on `H`, the dual `(C_G − x)°` has one vertex
//! `u_t / ℓ_t(x)` per tube, with `u_t = n·z_t − 𝟙` and
//! `ℓ_t(x) = n·⟨h_t, x⟩ / |h_t|_1`. Vertices live in the sum-zero subspace,
//! which is identified with `Q^{n-1}` by dropping the last coordinate.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{contract, Error, Result};
use crate::exact::{affine_dimension, int, Rational, RationalMatrix, RationalVector};
use crate::graph::{TubeCatalog, TubeId};
use crate::polytope::{facet_normal, polytope_vertices, VertexTag};

/// Drops the last coordinate of a vector with coordinate sum zero.
pub fn project_to_chart(v: &RationalVector) -> Result<RationalVector> {
    let sum = v.coordinate_sum();
    if !sum.is_zero() {
        return Err(contract(format!("chart projection needs coordinate sum 0, got {sum}")));
    }
    let n = v.len();
    Ok(v.iter().take(n.saturating_sub(1)).cloned().collect())
}

/// Fails with `OffHyperplane` unless the coordinates of `x` sum to 1.
pub fn require_on_hyperplane(x: &RationalVector) -> Result<()> {
    let sum = x.coordinate_sum();
    if !sum.is_one() {
        return Err(Error::OffHyperplane { sum: sum.to_string() });
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct ShiftedDual {
    pub shift: RationalVector,
    /// `ℓ_t(x)` per tube, in tube order.
    pub scalars: Vec<Rational>,
    /// `u_t / ℓ_t(x)` per tube.
    pub vertices: Vec<RationalVector>,
    /// For each vertex of `C_G`, the tubes on the dual facet.
    pub incidence: Vec<(VertexTag, Vec<TubeId>)>,
}

impl ShiftedDual {
    pub fn new(cat: &TubeCatalog, x: &RationalVector) -> Result<Self> {
        let g = cat.graph();
        let n = g.ambient_dim();
        if x.len() != n {
            return Err(contract(format!("point has {} coordinates, expected {n}", x.len())));
        }
        require_on_hyperplane(x)?;
        let nn = int(n as i64);
        let ones = RationalVector::ones(n);
        let normals: Vec<RationalVector> = cat.tubes().iter().map(|t| facet_normal(g, t)).collect();
        let mut scalars = Vec::with_capacity(cat.len());
        let mut vertices = Vec::with_capacity(cat.len());
        for (id, h) in cat.ids().zip(&normals) {
            let norm = h.coordinate_sum();
            let l = &nn * h.dot(x) / &norm;
            if !l.is_positive() {
                return Err(Error::NotInterior { tube: cat.label(id), value: h.dot(x).to_string() });
            }
            let u = h.scaled(&(&nn / &norm)).sub(&ones);
            vertices.push(u.scaled(&(Rational::one() / &l)));
            scalars.push(l);
        }
        let incidence = polytope_vertices(g)?
            .into_iter()
            .map(|p| (p.tag, cat.ids().filter(|t| normals[t.0].dot(&p.coordinates).is_zero()).collect()))
            .collect();
        Ok(Self { shift: x.clone(), scalars, vertices, incidence })
    }

    pub fn dimension(&self) -> usize {
        self.shift.len() - 1
    }

    pub fn scalar_product(&self) -> Rational {
        self.scalars.iter().product()
    }

    pub fn incidence_sets(&self) -> Vec<Vec<TubeId>> {
        self.incidence.iter().map(|(_, s)| s.clone()).collect()
    }
}

struct Pulling<'a> {
    points: Vec<RationalVector>,
    facets: &'a [Vec<TubeId>],
    memo: HashMap<Vec<TubeId>, Vec<Vec<TubeId>>>,
}

impl Pulling<'_> {
    fn dim(&self, set: &[TubeId]) -> isize {
        let pts: Vec<&RationalVector> = set.iter().map(|t| &self.points[t.0]).collect();
        affine_dimension(&pts)
    }

    /// Simplices (as vertex lists) of a pulling triangulation of the face
    /// with vertex set `set` and dimension `d`.
    fn triangulate(&mut self, set: &[TubeId], d: isize) -> Result<Vec<Vec<TubeId>>> {
        if set.len() as isize == d + 1 {
            return Ok(vec![set.to_vec()]);
        }
        if let Some(t) = self.memo.get(set) {
            return Ok(t.clone());
        }
        let apex = set[0];
        let mut subfaces: Vec<Vec<TubeId>> = Vec::new();
        for facet in self.facets {
            let sub: Vec<TubeId> = set.iter().copied().filter(|t| facet.contains(t)).collect();
            if sub.len() < set.len() && !sub.contains(&apex) && !subfaces.contains(&sub) {
                subfaces.push(sub);
            }
        }
        let mut out = Vec::new();
        for sub in subfaces {
            let sd = self.dim(&sub);
            if sd == d - 1 {
                for mut simplex in self.triangulate(&sub, d - 1)? {
                    simplex.insert(0, apex);
                    out.push(simplex);
                }
            } else if sd >= d {
                return Err(contract(format!("facet intersection of dimension {sd} inside a face of dimension {d}")));
            }
        }
        if out.is_empty() {
            return Err(contract(format!("face of dimension {d} with {} vertices has no facets", set.len())));
        }
        self.memo.insert(set.to_vec(), out.clone());
        Ok(out)
    }
}

/// Volume of the shifted dual in chart coordinates.
///
/// A pulling triangulation is built recursively: the face is coned from its
/// first vertex over every facet not containing it, facets of a face being
/// its intersections with the facets of the polytope that drop the dimension
/// by exactly one. Each simplex contributes `|det(edge vectors)| / (n−1)!`.
pub fn oracle_volume(sd: &ShiftedDual) -> Result<Rational> {
    let d = sd.dimension();
    let points = sd.vertices.iter().map(project_to_chart).collect::<Result<Vec<_>>>()?;
    let facets = sd.incidence_sets();
    let all: Vec<TubeId> = (0..points.len()).map(TubeId).collect();
    let mut pulling = Pulling { points, facets: &facets, memo: HashMap::new() };
    let top = pulling.dim(&all);
    if top != d as isize {
        return Err(contract(format!("dual has dimension {top}, expected {d}")));
    }
    let simplices = pulling.triangulate(&all, top)?;
    let mut total = Rational::zero();
    for s in &simplices {
        let base = &pulling.points[s[0].0];
        let cols: Vec<RationalVector> = s[1..].iter().map(|t| pulling.points[t.0].sub(base)).collect();
        total += RationalMatrix::from_columns(&cols).det().abs();
    }
    let fact: BigInt = (1..=d as u64).map(BigInt::from).product();
    Ok(total / Rational::from_integer(fact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::graph::Budget;
    use crate::library;
    use crate::triangulation::{Normalization, Triangulation};

    fn centroid(n: usize) -> RationalVector {
        RationalVector::ones(n).scaled(&rat(1, n as i64))
    }

    #[test]
    fn chart_examples() {
        let v = RationalVector::from_integers([1, -1, 0]);
        assert_eq!(project_to_chart(&v).unwrap(), RationalVector::from_integers([1, -1]));
        assert_eq!(project_to_chart(&RationalVector::zeros(4)).unwrap(), RationalVector::zeros(3));
        assert!(project_to_chart(&RationalVector::from_integers([1, 0])).is_err());

        let cat = TubeCatalog::new(&library::single_edge());
        let sd = ShiftedDual::new(&cat, &centroid(3)).unwrap();
        assert_eq!(project_to_chart(&sd.vertices[0]).unwrap(), RationalVector::from(vec![rat(1, 2), int(-1)]));
    }

    #[test]
    fn scalars_on_the_single_edge() {
        let cat = TubeCatalog::new(&library::single_edge());
        let sd = ShiftedDual::new(&cat, &centroid(3)).unwrap();
        assert!(sd.scalars.iter().all(|l| l.is_one()));
        let x = RationalVector::from(vec![rat(1, 2), rat(1, 4), rat(1, 4)]);
        let sd = ShiftedDual::new(&cat, &x).unwrap();
        assert_eq!(sd.scalars, [rat(9, 8), rat(3, 4), rat(9, 8)]);
        for v in &sd.vertices {
            assert!(v.coordinate_sum().is_zero());
        }
    }

    #[test]
    fn rejects_bad_points() {
        let cat = TubeCatalog::new(&library::single_edge());
        let off = RationalVector::from(vec![rat(1, 2), rat(1, 2), rat(1, 2)]);
        assert!(matches!(ShiftedDual::new(&cat, &off), Err(Error::OffHyperplane { .. })));
        let boundary = RationalVector::from_integers([0, 1, 0]);
        assert!(matches!(ShiftedDual::new(&cat, &boundary), Err(Error::NotInterior { .. })));
    }

    #[test]
    fn triangle_area_at_the_centroid() {
        let cat = TubeCatalog::new(&library::single_edge());
        let sd = ShiftedDual::new(&cat, &centroid(3)).unwrap();
        assert_eq!(oracle_volume(&sd).unwrap(), rat(9, 8));
    }

    #[test]
    fn scaling_law_for_a_simplex_dual() {
        let cat = TubeCatalog::new(&library::single_edge());
        let base = oracle_volume(&ShiftedDual::new(&cat, &centroid(3)).unwrap()).unwrap();
        for x in
            [[rat(1, 2), rat(1, 4), rat(1, 4)], [rat(1, 5), rat(2, 5), rat(2, 5)], [rat(1, 3), rat(1, 2), rat(1, 6)]]
        {
            let sd = ShiftedDual::new(&cat, &RationalVector::from(x.to_vec())).unwrap();
            assert_eq!(oracle_volume(&sd).unwrap() * sd.scalar_product(), base);
        }
    }

    #[test]
    fn incidence_does_not_depend_on_the_shift() {
        let cat = TubeCatalog::new(&library::path(3));
        let a = ShiftedDual::new(&cat, &centroid(5)).unwrap();
        let x = RationalVector::from(vec![rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 8), rat(1, 8)]);
        let b = ShiftedDual::new(&cat, &x).unwrap();
        assert_eq!(a.incidence, b.incidence);
    }

    /// Oracle and triangulation agree up to the chart constant
    /// `(n−1)! / n^{n−1}`, which depends only on `n`.
    #[test]
    fn oracle_matches_triangulations() {
        for g in library::all() {
            let cat = TubeCatalog::new(&g.graph);
            let n = g.graph.ambient_dim();
            let oracle = oracle_volume(&ShiftedDual::new(&cat, &centroid(n)).unwrap()).unwrap();
            let tri = Triangulation::max_tubing(&cat, &mut Budget::default()).unwrap();
            let sum = tri.total_detvol(Normalization::NormalizedVertices).unwrap();
            let fact: i64 = (1..n as i64).product();
            let constant = Rational::new(fact.into(), BigInt::from(n).pow(n as u32 - 1));
            assert_eq!(sum, oracle * constant, "{}", g.name);
        }
    }

    #[test]
    fn volume_grows_toward_a_facet() {
        // Moving toward the facet of the singleton {v} (x_v + y_e → 0).
        let cat = TubeCatalog::new(&library::path(3));
        let mut last = Rational::zero();
        for k in [4i64, 8, 16] {
            let eps = rat(1, k);
            // x_v1 = eps/2, y_e1 = eps/2, the rest spread evenly.
            let rest = (Rational::one() - &eps) / int(3);
            let x = RationalVector::from(vec![&eps / int(2), rest.clone(), rest.clone(), &eps / int(2), rest]);
            let vol = oracle_volume(&ShiftedDual::new(&cat, &x).unwrap()).unwrap();
            assert!(vol > last);
            last = vol;
        }
    }
}
