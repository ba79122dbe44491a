//! The invariant suite behind `cosmoform verify`: every cross-module check
//! that is cheap enough at desk scale, run on one graph.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canonical::{
    check_equality_forms, interior_point, pole_structure_check, rep_a, rep_b, skewed_interior_point,
};
use crate::error::{Error, Result};
use crate::exact::{affine_dimension, Rational, RationalVector};
use crate::graph::{enumerate_maximal_tubings, ga_tubing_bijection_check, Budget, Graph, TubeCatalog};
use crate::polytope::{
    dual_vertices, dual_vertices_in_convex_position, face_oracle_agreement, facet_incidence, facet_normal,
    polytope_vertices,
};
use crate::triangulation::{separating_functional, validate_ridges, Normalization, Triangulation};
use crate::volume::{oracle_volume, ShiftedDual};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyResult {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub vertices: usize,
    pub edges: usize,
    pub tubes: usize,
    pub properties: Vec<PropertyResult>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn first_failure(&self) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.status == Status::Fail)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("graph: {} vertices, {} edges, {} tubes\n", self.vertices, self.edges, self.tubes);
        for p in &self.properties {
            let tag = match p.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            s.push_str(&format!("{tag} {}: {}\n", p.name, p.detail));
        }
        s.push_str(if self.passed { "all properties pass\n" } else { "verification failed\n" });
        s
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Enumeration budget for tubings.
    pub budget: u64,
    /// Vertex subsets the face-oracle comparison may scan.
    pub lattice_budget: u64,
    /// Random points per facet in the pole check.
    pub pole_samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            budget: crate::graph::DEFAULT_TUBING_BUDGET,
            lattice_budget: crate::polytope::DEFAULT_LATTICE_BUDGET,
            pole_samples: 3,
        }
    }
}

type Check = Result<(bool, String)>;

fn pass_if(ok: bool, detail: String) -> Check {
    Ok((ok, detail))
}

struct Suite {
    out: Vec<PropertyResult>,
}

impl Suite {
    fn run(&mut self, name: &'static str, check: impl FnOnce() -> Check) {
        let (status, detail) = match check() {
            Ok((true, d)) => (Status::Pass, d),
            Ok((false, d)) => (Status::Fail, d),
            Err(Error::Budget { what, limit }) => (Status::Skipped, format!("{what} needs more than {limit}")),
            Err(e) => (Status::Fail, e.to_string()),
        };
        self.out.push(PropertyResult { name, status, detail });
    }

    fn skip(&mut self, name: &'static str, why: impl Into<String>) {
        self.out.push(PropertyResult { name, status: Status::Skipped, detail: why.into() });
    }
}

/// A seeded interior point: a random positive combination of the vertices.
fn random_interior_point(g: &Graph, rng: &mut ChaCha8Rng) -> Result<RationalVector> {
    let verts = polytope_vertices(g)?;
    let mut x = RationalVector::zeros(g.ambient_dim());
    let mut total = 0i64;
    for p in &verts {
        let w: i64 = rng.gen_range(1..=5);
        x = x.add(&p.coordinates.scaled(&Rational::from_integer(w.into())));
        total += w;
    }
    Ok(x.scaled(&Rational::new(BigInt::one(), total.into())))
}

pub fn verify(g: &Graph, cfg: &VerifyConfig) -> Result<VerifyReport> {
    g.require_no_isolated_vertices()?;
    let cat = TubeCatalog::new(g);
    let n = g.ambient_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut s = Suite { out: Vec::new() };

    s.run("tubing cardinality", || {
        let tubings = enumerate_maximal_tubings(&cat, &mut Budget::new(cfg.budget))?;
        if let Some(t) = tubings.iter().find(|t| t.len() != n || !t.is_maximal(&cat)) {
            return pass_if(false, format!("{} has {} tubes, expected {n}", t.display(&cat), t.len()));
        }
        pass_if(true, format!("{} maximal tubings, each of size {n}", tubings.len()))
    });

    s.run("facet validity", || {
        facet_incidence(&cat)?;
        let verts = polytope_vertices(g)?;
        for (id, t) in cat.ids().zip(cat.tubes()) {
            let h = facet_normal(g, t);
            if let Some(p) = verts.iter().find(|p| h.dot(&p.coordinates).is_negative()) {
                return pass_if(false, format!("tube {} is negative on {}", cat.label(id), p.tag.label(g)));
            }
            let on: Vec<&RationalVector> =
                verts.iter().map(|p| &p.coordinates).filter(|p| h.dot(p).is_zero()).collect();
            let d = affine_dimension(&on);
            if d != n as isize - 2 {
                return pass_if(false, format!("tube {} supports a face of dimension {d}", cat.label(id)));
            }
        }
        let duals = dual_vertices(&cat)?;
        if !dual_vertices_in_convex_position(&duals) {
            return pass_if(false, "dual vertices are not in convex position".into());
        }
        pass_if(true, format!("{} facets, dual vertices in convex position", cat.len()))
    });

    s.run("face-oracle agreement", || {
        let r = face_oracle_agreement(g, cfg.lattice_budget)?;
        match r.mismatch {
            Some(tags) => pass_if(false, format!("oracles disagree on {{{}}}", tags.join(","))),
            None => pass_if(true, format!("{} subsets, {} faces", r.subsets, r.faces)),
        }
    });

    let mut tris: Vec<Triangulation> = Vec::new();
    for (name, boundary) in [("max-tubing triangulation", false), ("boundary triangulation", true)] {
        s.run(name, || {
            let mut budget = Budget::new(cfg.budget);
            let tri = if boundary {
                Triangulation::boundary(&cat, &mut budget)?
            } else {
                Triangulation::max_tubing(&cat, &mut budget)?
            };
            let report = validate_ridges(&tri)?;
            let cells = if boundary { "boundary cells" } else { "cells" };
            let detail = format!(
                "{} {cells}, {} shared and {} boundary ridges, {} violations",
                tri.len(),
                report.shared,
                report.boundary,
                report.violations
            );
            let ok = report.passed;
            let detail = match report
                .ridges
                .iter()
                .find(|r| matches!(r.class, crate::triangulation::RidgeClass::Violation(_)))
            {
                Some(r) => {
                    let labels: Vec<String> = r.tubes.iter().map(|&t| cat.label(t)).collect();
                    format!("{detail}; first: ridge [{}] in cells {:?}", labels.join(" "), r.cells)
                }
                None => detail,
            };
            tris.push(tri);
            pass_if(ok, detail)
        });
    }

    let x1 = interior_point(&cat)?;
    let x2 = skewed_interior_point(&cat)?;

    if tris.len() == 2 {
        s.run("volume additivity", || {
            let a = tris[0].total_detvol(Normalization::NormalizedVertices)?;
            let b = tris[1].total_detvol(Normalization::NormalizedVertices)?;
            let centroid = RationalVector::ones(n).scaled(&Rational::new(BigInt::one(), n.into()));
            let oracle = oracle_volume(&ShiftedDual::new(&cat, &centroid)?)?;
            let fact: BigInt = (1..n as u64).map(BigInt::from).product();
            let constant = Rational::new(fact, BigInt::from(n).pow(n as u32 - 1));
            let ok = a == b && a == &oracle * &constant;
            pass_if(ok, format!("both sums {a} and {b}, oracle {oracle} times {constant}"))
        });
    } else {
        s.skip("volume additivity", "needs both triangulations");
    }

    let forms =
        rep_a(&cat, &mut Budget::new(cfg.budget)).and_then(|a| Ok((a, rep_b(&cat, &mut Budget::new(cfg.budget))?)));
    match &forms {
        Ok((a, b)) => {
            s.run("rep equality", || {
                let r = check_equality_forms(a, b)?;
                pass_if(
                    r.equal,
                    format!(
                        "{} + {} terms, equal modulo H with {} eliminated ({})",
                        r.terms_a,
                        r.terms_b,
                        r.eliminated.as_deref().unwrap_or("nothing"),
                        r.arithmetic
                    ),
                )
            });
            s.run("oracle ratio", || {
                let fa = (a.evaluate(&x1)?, a.evaluate(&x2)?);
                let fb = (b.evaluate(&x1)?, b.evaluate(&x2)?);
                let v1 = oracle_volume(&ShiftedDual::new(&cat, &x1)?)?;
                let v2 = oracle_volume(&ShiftedDual::new(&cat, &x2)?)?;
                let ok = &fa.0 / &fa.1 == &v1 / &v2 && fa == fb && fa.0.is_positive() && fa.1.is_positive();
                pass_if(ok, format!("F(x1)/F(x2) = {}, vol ratio {}", &fa.0 / &fa.1, &v1 / &v2))
            });
            if cat.len() <= n + 2 {
                s.run("pole structure", || {
                    let report = pole_structure_check(a, cfg.seed, cfg.pole_samples)?;
                    match report.iter().find(|p| !p.is_genuine()) {
                        Some(p) => pass_if(false, format!("numerator vanishes on the facet of tube {}", p.tube)),
                        None => pass_if(true, format!("{} simple poles", report.len())),
                    }
                });
            } else {
                s.skip("pole structure", format!("{} tubes exceed n + 2 = {}", cat.len(), n + 2));
            }
        }
        Err(e) => {
            let why = e.to_string();
            for name in ["rep equality", "oracle ratio", "pole structure"] {
                s.out.push(PropertyResult { name, status: Status::Fail, detail: why.clone() });
            }
        }
    }

    if cat.len() == n {
        s.run("scaling law", || {
            let centroid = RationalVector::ones(n).scaled(&Rational::new(BigInt::one(), n.into()));
            let base = oracle_volume(&ShiftedDual::new(&cat, &centroid)?)?;
            for _ in 0..3 {
                let x = random_interior_point(g, &mut rng)?;
                let sd = ShiftedDual::new(&cat, &x)?;
                let v = oracle_volume(&sd)? * sd.scalar_product();
                if v != base {
                    return pass_if(
                        false,
                        format!("vol times the product of scalars is {v} at {:?}, expected {base}", x.to_strings()),
                    );
                }
            }
            pass_if(true, format!("vol times the product of scalars is {base} at 3 seeded points"))
        });
    } else {
        s.skip("scaling law", "the dual is not a simplex");
    }

    s.run("GA bijection", || {
        let r = ga_tubing_bijection_check(g, &mut Budget::new(cfg.budget))?;
        pass_if(
            r.bijection_holds,
            format!("{} tubings with singletons, {} GA-tubings of L(G)", r.tubings_with_singletons, r.ga_tubings),
        )
    });

    s.run("separating functionals", || {
        let tubings = enumerate_maximal_tubings(&cat, &mut Budget::new(cfg.budget))?;
        let mut budget = Budget::new(cfg.budget);
        let mut pairs = 0usize;
        for (i, ti) in tubings.iter().enumerate() {
            for (j, tj) in tubings.iter().enumerate() {
                if i != j {
                    budget.tick("separating functional pairs")?;
                    separating_functional(&cat, ti, tj)?;
                    pairs += 1;
                }
            }
        }
        pass_if(true, format!("sign contract holds on {pairs} ordered pairs"))
    });

    let passed = s.out.iter().all(|p| p.status != Status::Fail);
    Ok(VerifyReport { vertices: g.vertex_count(), edges: g.edge_count(), tubes: cat.len(), properties: s.out, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;

    #[test]
    fn single_edge_passes() {
        let r = verify(&library::single_edge(), &VerifyConfig::default()).unwrap();
        assert!(r.passed, "{}", r.to_text());
        assert!(r.properties.iter().all(|p| p.status == Status::Pass), "{}", r.to_text());
    }

    #[test]
    fn p3_reports_eight_boundary_cells() {
        let r = verify(&library::path(3), &VerifyConfig::default()).unwrap();
        assert!(r.passed, "{}", r.to_text());
        assert!(r.to_text().contains("8 boundary cells"));
    }

    #[test]
    fn library_graphs_pass() {
        for g in library::all() {
            let r = verify(&g.graph, &VerifyConfig::default()).unwrap();
            assert!(r.passed, "{}: {}", g.name, r.to_text());
        }
    }

    #[test]
    fn budgets_skip_instead_of_failing() {
        let cfg = VerifyConfig { lattice_budget: 16, ..VerifyConfig::default() };
        let r = verify(&library::star_k13(), &cfg).unwrap();
        assert!(r.passed, "{}", r.to_text());
        let face = r.properties.iter().find(|p| p.name == "face-oracle agreement").unwrap();
        assert_eq!(face.status, Status::Skipped);
    }

    #[test]
    fn reports_are_reproducible() {
        let a = verify(&library::cycle(3), &VerifyConfig::default()).unwrap().to_text();
        let b = verify(&library::cycle(3), &VerifyConfig::default()).unwrap().to_text();
        assert_eq!(a, b);
    }
}
