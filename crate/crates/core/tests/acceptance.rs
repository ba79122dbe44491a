//! Acceptance criteria 1 to 12. Runs without the test harness so every line
//! is printed; exits nonzero if any criterion fails.

use std::process::ExitCode;

use num_bigint::BigInt;
use num_traits::One;

use cosmoform::canonical::{
    check_equality_forms, check_equality_off_hyperplane, interior_point, rep_a, rep_b, skewed_interior_point,
};
use cosmoform::exact::{rat, Rational, RationalVector};
use cosmoform::graph::{
    enumerate_maximal_tubings, enumerate_uc_almost_maximal, ga_tubing_bijection_check, Budget, Graph, TubeCatalog,
};
use cosmoform::library;
use cosmoform::polytope::{dual_vertices, face_lattice, face_oracle_agreement, vertex_figure_report};
use cosmoform::triangulation::{separating_functional, validate_ridges, Normalization, Triangulation};
use cosmoform::volume::{oracle_volume, ShiftedDual};

/// Every criterion compares exact rationals or integers.
const TOLERANCE: &str = "exact";
/// Subsets scanned per graph in criterion 9.
const MAX_LP_CALLS: u64 = 4096;
/// Subsets scanned to build face lattices in criterion 10.
const LATTICE_BUDGET: u64 = 4096;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, pass: String, fail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(pass)
    } else {
        Err(fail())
    }
}

fn err(e: cosmoform::Error) -> String {
    e.to_string()
}

fn centroid(n: usize) -> RationalVector {
    RationalVector::ones(n).scaled(&Rational::new(BigInt::one(), n.into()))
}

/// The K_{1,3} dual vertices as printed, coordinates `(v0, v1, v2, v3, e1, e2, e3)`.
fn k13_table() -> Vec<RationalVector> {
    let halves = [[0, 1, 0, 0, 1, 0, 0], [0, 0, 1, 0, 0, 1, 0], [0, 0, 0, 1, 0, 0, 1]];
    let quarters = [
        [1, 0, 0, 0, 1, 1, 1],
        [1, 1, 0, 0, 0, 1, 1],
        [1, 0, 1, 0, 1, 0, 1],
        [1, 0, 0, 1, 1, 1, 0],
        [1, 1, 1, 0, 0, 0, 1],
        [1, 1, 0, 1, 0, 1, 0],
        [1, 0, 1, 1, 1, 0, 0],
        [1, 1, 1, 1, 0, 0, 0],
    ];
    let scaled = |row: &[i64; 7], d: i64| RationalVector::from_integers(*row).scaled(&rat(1, d));
    halves.iter().map(|r| scaled(r, 2)).chain(quarters.iter().map(|r| scaled(r, 4))).collect()
}

fn c1_k13_dual_vertices() -> Outcome {
    let g = library::star_k13();
    let cat = TubeCatalog::new(&g);
    let names: Vec<String> = g.coordinate_names();
    if names != ["x_v0", "x_v1", "x_v2", "x_v3", "y_e1", "y_e2", "y_e3"] {
        return Err(format!("unexpected coordinate order {names:?}"));
    }
    let mut got: Vec<Vec<String>> = dual_vertices(&cat).map_err(err)?.iter().map(|d| d.vector.to_strings()).collect();
    let mut want: Vec<Vec<String>> = k13_table().iter().map(|v| v.to_strings()).collect();
    got.sort();
    want.sort();
    ensure(got == want, format!("{} vectors match the printed table", got.len()), || {
        format!("emitted {got:?}, printed {want:?}")
    })
}

fn c2_p3_counts() -> Outcome {
    let cat = TubeCatalog::new(&library::path(3));
    let mut b = Budget::default();
    let tau = enumerate_maximal_tubings(&cat, &mut b).map_err(err)?.len();
    let uc = enumerate_uc_almost_maximal(&cat, &mut b).map_err(err)?.len();
    let cells = Triangulation::boundary(&cat, &mut b).map_err(err)?.len();
    ensure(tau == 2 && uc == 8 && cells == 8, format!("{tau} maximal tubings, {cells} boundary cells"), || {
        format!("{tau} maximal tubings, {uc} uc tubings, {cells} boundary cells; expected 2 and 8")
    })
}

fn c3_tubing_cardinality() -> Outcome {
    let mut total = 0;
    for g in library::all() {
        let cat = TubeCatalog::new(&g.graph);
        let n = g.graph.vertex_count() + g.graph.edge_count();
        for t in enumerate_maximal_tubings(&cat, &mut Budget::default()).map_err(err)? {
            if t.len() != n {
                return Err(format!("{}: {} has {} tubes, expected {n}", g.name, t.display(&cat), t.len()));
            }
            total += 1;
        }
    }
    Ok(format!("{total} maximal tubings over 7 graphs, all of size |V|+|E|"))
}

fn triangulations(g: &Graph) -> Result<[Triangulation; 2], String> {
    let cat = TubeCatalog::new(g);
    let mut b = Budget::default();
    Ok([Triangulation::max_tubing(&cat, &mut b).map_err(err)?, Triangulation::boundary(&cat, &mut b).map_err(err)?])
}

fn c4_ridges() -> Outcome {
    let mut ridges = 0;
    for g in library::all() {
        for tri in triangulations(&g.graph)? {
            let r = validate_ridges(&tri).map_err(err)?;
            if !r.passed {
                return Err(format!("{} ({:?}): {} violations", g.name, tri.kind, r.violations));
            }
            ridges += r.ridges.len();
        }
    }
    Ok(format!("{ridges} ridges checked on 14 triangulations, no violations"))
}

fn c5_rep_identity() -> Outcome {
    for g in library::all() {
        let cat = TubeCatalog::new(&g.graph);
        let mut b = Budget::default();
        let a = rep_a(&cat, &mut b).map_err(err)?;
        let bb = rep_b(&cat, &mut b).map_err(err)?;
        let r = check_equality_forms(&a, &bb).map_err(err)?;
        if !r.equal {
            return Err(format!("{}: reps differ modulo H", g.name));
        }
    }
    let cat = TubeCatalog::new(&library::single_edge());
    let mut b = Budget::default();
    let off = check_equality_off_hyperplane(&rep_a(&cat, &mut b).map_err(err)?, &rep_b(&cat, &mut b).map_err(err)?)
        .map_err(err)?;
    ensure(!off.equal, "equal modulo H on 7 graphs; off-H comparison fails on the single edge".into(), || {
        "off-H comparison unexpectedly succeeds on the single edge".into()
    })
}

fn c6_volume_additivity() -> Outcome {
    for g in library::all() {
        let n = g.graph.ambient_dim();
        let [max, bdry] = triangulations(&g.graph)?;
        let a = max.total_detvol(Normalization::NormalizedVertices).map_err(err)?;
        let b = bdry.total_detvol(Normalization::NormalizedVertices).map_err(err)?;
        let cat = TubeCatalog::new(&g.graph);
        let oracle = oracle_volume(&ShiftedDual::new(&cat, &centroid(n)).map_err(err)?).map_err(err)?;
        // Chart volume of the dual relative to the normalized simplex volumes.
        let fact: BigInt = (1..n as u64).map(BigInt::from).product();
        let constant = Rational::new(fact, BigInt::from(n).pow(n as u32 - 1));
        if a != b || a != &oracle * &constant {
            return Err(format!("{}: sums {a}, {b}; oracle {oracle}, constant {constant}", g.name));
        }
    }
    Ok("sums agree with each other and with the oracle times (n-1)!/n^(n-1) on 7 graphs".into())
}

fn c7_scaling_law() -> Outcome {
    let cat = TubeCatalog::new(&library::single_edge());
    let base = oracle_volume(&ShiftedDual::new(&cat, &centroid(3)).map_err(err)?).map_err(err)?;
    let points =
        [[rat(1, 2), rat(1, 4), rat(1, 4)], [rat(1, 5), rat(2, 5), rat(2, 5)], [rat(1, 3), rat(1, 2), rat(1, 6)]];
    for p in points {
        let x = RationalVector::from(p.to_vec());
        let sd = ShiftedDual::new(&cat, &x).map_err(err)?;
        let v = oracle_volume(&sd).map_err(err)? * sd.scalar_product();
        if v != base {
            return Err(format!("at {:?}: {v}, expected {base}", x.to_strings()));
        }
    }
    Ok(format!("vol times the product of scalars equals {base} at 3 points"))
}

fn c8_ratio() -> Outcome {
    for g in [library::single_edge(), library::path(3), library::star_k13()] {
        let cat = TubeCatalog::new(&g);
        let x1 = interior_point(&cat).map_err(err)?;
        let x2 = skewed_interior_point(&cat).map_err(err)?;
        let a = rep_a(&cat, &mut Budget::default()).map_err(err)?;
        let f = a.evaluate(&x1).map_err(err)? / a.evaluate(&x2).map_err(err)?;
        let v1 = oracle_volume(&ShiftedDual::new(&cat, &x1).map_err(err)?).map_err(err)?;
        let v2 = oracle_volume(&ShiftedDual::new(&cat, &x2).map_err(err)?).map_err(err)?;
        if f != &v1 / &v2 {
            return Err(format!("{} edges: F ratio {f}, volume ratio {}", g.edge_count(), v1 / v2));
        }
    }
    Ok("F_A ratio equals the oracle ratio on single edge, P3, K13".into())
}

fn c9_face_oracles() -> Outcome {
    let mut parts = Vec::new();
    for (name, g) in [
        ("single edge", library::single_edge()),
        ("P3", library::path(3)),
        ("C3", library::cycle(3)),
        ("double edge", library::double_edge()),
    ] {
        let r = face_oracle_agreement(&g, MAX_LP_CALLS).map_err(err)?;
        if let Some(m) = r.mismatch {
            return Err(format!("{name}: oracles disagree on {m:?}"));
        }
        parts.push(format!("{name} {}/{}", r.faces, r.subsets));
    }
    Ok(format!("agree on all subsets (faces/subsets: {})", parts.join(", ")))
}

fn c10_vertex_figure() -> Outcome {
    let base = face_lattice(&library::single_edge(), LATTICE_BUDGET).map_err(err)?;
    let r = vertex_figure_report(&library::single_edge(), "w", "u", LATTICE_BUDGET).map_err(err)?;
    let interval: usize = r.interval_f_vector.iter().sum();
    // An order isomorphism needs equal sizes; when sizes match the explicit map decides.
    let ok = base.len() == interval && r.isomorphic;
    ensure(ok, format!("lattice {:?} isomorphic to interval {:?}", r.base_f_vector, r.interval_f_vector), || {
        format!(
            "C(single edge) has {} faces, f-vector {:?}; the interval above p_e in C(P3) has {interval}, f-vector {:?}",
            base.len(),
            r.base_f_vector,
            r.interval_f_vector
        )
    })
}

fn c11_ga_bijection() -> Outcome {
    let mut parts = Vec::new();
    for (name, g) in [("single edge", library::single_edge()), ("P3", library::path(3)), ("K13", library::star_k13())] {
        let r = ga_tubing_bijection_check(&g, &mut Budget::default()).map_err(err)?;
        if !r.bijection_holds {
            return Err(format!("{name}: {} tubings vs {} GA-tubings", r.tubings_with_singletons, r.ga_tubings));
        }
        parts.push(format!("{name} {}", r.ga_tubings));
    }
    Ok(format!("bijection holds ({})", parts.join(", ")))
}

fn c12_separating() -> Outcome {
    let mut pairs = 0;
    for (name, g) in [("P3", library::path(3)), ("K13", library::star_k13()), ("C3", library::cycle(3))] {
        let cat = TubeCatalog::new(&g);
        let ts = enumerate_maximal_tubings(&cat, &mut Budget::default()).map_err(err)?;
        for (i, ti) in ts.iter().enumerate() {
            for (j, tj) in ts.iter().enumerate() {
                if i != j {
                    let a = separating_functional(&cat, ti, tj).map_err(|e| format!("{name}: {e}"))?;
                    if a.is_zero() {
                        return Err(format!("{name}: zero functional for tubings {i}, {j}"));
                    }
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("sign contract holds on {pairs} ordered pairs"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("K13 dual vertices", c1_k13_dual_vertices),
        ("P3 counts", c2_p3_counts),
        ("maximal tubing cardinality", c3_tubing_cardinality),
        ("ridge validation", c4_ridges),
        ("representation identity", c5_rep_identity),
        ("volume additivity", c6_volume_additivity),
        ("shifted-dual scaling law", c7_scaling_law),
        ("geometry ratio test", c8_ratio),
        ("face-oracle agreement", c9_face_oracles),
        ("vertex-figure theorem", c10_vertex_figure),
        ("GA-bijection", c11_ga_bijection),
        ("separating functional", c12_separating),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(d) => println!("criterion {:>2} PASS [{TOLERANCE}] {name}: {d}", i + 1),
            Err(d) => {
                println!("criterion {:>2} FAIL [{TOLERANCE}] {name}: {d}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: 12/12 pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {}/12 pass, failing {failed:?}", 12 - failed.len());
        ExitCode::FAILURE
    }
}
