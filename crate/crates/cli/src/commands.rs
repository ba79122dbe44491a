use std::fmt;

use serde_json::{json, Value};

use cosmoform::canonical::{check_equality_forms, rep_a, rep_b, CanonicalForm, EqualityReport};
use cosmoform::exact::{parse_rational_list, RationalVector};
use cosmoform::graph::{enumerate_maximal_tubings, enumerate_uc_almost_maximal, Budget, Graph, GraphFile, TubeCatalog};
use cosmoform::polytope::{dual_vertices, dual_vertices_in_convex_position};
use cosmoform::triangulation::{validate_ridges, Normalization, RidgeClass, Triangulation, TriangulationKind};
use cosmoform::verify::{Status, VerifyConfig};
use cosmoform::Error;

use crate::{Format, RepChoice};

#[derive(Debug)]
pub enum Failure {
    Lib(Error),
    Io(String),
    /// A check ran to completion and found a violation.
    Check(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(Error::Budget { .. }) => 2,
            Failure::Io(_) => 3,
            Failure::Lib(_) | Failure::Check(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Io(m) => write!(f, "I/O error: {m}"),
            Failure::Check(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// A command result in all three formats. A `failure` is reported after the
/// output has been written.
pub struct Output {
    json: Value,
    text: String,
    latex: String,
    pub failure: Option<Failure>,
}

impl Output {
    fn new(json: Value, text: String, latex: String) -> Self {
        Self { json, text, latex, failure: None }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&self.json).expect("JSON values serialize")),
            Format::Text => self.text.clone(),
            Format::Latex => self.latex.clone(),
        }
    }
}

fn latex_label(label: &str) -> String {
    label.replace('{', "\\{").replace('}', "\\}")
}

fn itemize<I: IntoIterator<Item = String>>(items: I) -> String {
    let mut s = String::from("\\begin{itemize}\n");
    for item in items {
        s.push_str(&format!("    \\item {item}\n"));
    }
    s.push_str("\\end{itemize}\n");
    s
}

pub fn tubes(g: &Graph) -> Result<Output, Failure> {
    let cat = TubeCatalog::new(g);
    let rows: Vec<Value> = cat
        .ids()
        .zip(cat.tubes())
        .map(|(id, t)| {
            json!({
                "id": id.to_string(),
                "label": cat.label(id),
                "vertices": t.vertices().iter().map(|&v| g.vertex_label(v)).collect::<Vec<_>>(),
                "edges": t.edges().iter().map(|&e| g.edge_label(e)).collect::<Vec<_>>(),
                "root": cat.is_root(id),
            })
        })
        .collect();
    let json = json!({ "graph": GraphFile::to_json(g), "count": cat.len(), "tubes": rows });
    let mut text = format!("{} tubes\n", cat.len());
    for id in cat.ids() {
        text.push_str(&format!("{id} {}\n", cat.label(id)));
    }
    let latex = itemize(cat.ids().map(|id| format!("$t_{{{}}} = {}$", id.0, latex_label(&cat.label(id)))));
    Ok(Output::new(json, text, latex))
}

pub fn tubings(g: &Graph, budget: u64) -> Result<Output, Failure> {
    g.require_no_isolated_vertices()?;
    let cat = TubeCatalog::new(g);
    let mut b = Budget::new(budget);
    let maximal = enumerate_maximal_tubings(&cat, &mut b)?;
    let uc = enumerate_uc_almost_maximal(&cat, &mut b)?;
    let json = json!({
        "maximal_count": maximal.len(),
        "maximal": maximal.iter().map(|t| t.labels(&cat)).collect::<Vec<_>>(),
        "uc_count": uc.len(),
        "uc_almost_maximal": uc.iter().map(|u| json!({
            "tubes": u.tubing.labels(&cat),
            "removed": cat.label(u.removed),
        })).collect::<Vec<_>>(),
    });
    let mut text = format!("{} maximal tubings\n", maximal.len());
    for t in &maximal {
        text.push_str(&format!("  {}\n", t.display(&cat)));
    }
    text.push_str(&format!("{} uniquely completable almost-maximal tubings\n", uc.len()));
    for u in &uc {
        text.push_str(&format!("  {} (removed {})\n", u.tubing.display(&cat), cat.label(u.removed)));
    }
    let set = |labels: Vec<String>| labels.iter().map(|l| latex_label(l)).collect::<Vec<_>>().join(", ");
    let latex = format!(
        "Maximal tubings:\n{}Uniquely completable almost-maximal tubings:\n{}",
        itemize(maximal.iter().map(|t| format!("$\\{{{}\\}}$", set(t.labels(&cat))))),
        itemize(uc.iter().map(|u| format!("$\\{{{}\\}}$", set(u.tubing.labels(&cat)))))
    );
    Ok(Output::new(json, text, latex))
}

pub fn dual(g: &Graph) -> Result<Output, Failure> {
    let cat = TubeCatalog::new(g);
    let duals = dual_vertices(&cat)?;
    let convex = dual_vertices_in_convex_position(&duals);
    let json = json!({
        "coordinates": g.coordinate_names(),
        "vertices": duals.iter().map(|d| json!({
            "tube": cat.label(d.tube),
            "normal": d.normal.to_strings(),
            "vector": d.vector.to_strings(),
        })).collect::<Vec<_>>(),
        "convex_position": convex,
    });
    let mut text = format!("coordinates ({})\n", g.coordinate_names().join(", "));
    for d in &duals {
        text.push_str(&format!("z_{} = ({})\n", cat.label(d.tube), d.vector.to_strings().join(", ")));
    }
    text.push_str(&format!("convex position: {convex}\n"));
    let latex = itemize(duals.iter().map(|d| {
        let h: Vec<String> = d.normal.to_strings();
        format!("$\\frac{{1}}{{{}}}({})$", d.normal.coordinate_sum(), h.join(","))
    }));
    let mut out = Output::new(json, text, latex);
    if !convex {
        out.failure = Some(Failure::Check("dual vertices are not in convex position".into()));
    }
    Ok(out)
}

pub fn triangulate(g: &Graph, boundary: bool, budget: u64) -> Result<Output, Failure> {
    let cat = TubeCatalog::new(g);
    let mut b = Budget::new(budget);
    let tri = if boundary { Triangulation::boundary(&cat, &mut b)? } else { Triangulation::max_tubing(&cat, &mut b)? };
    let report = validate_ridges(&tri)?;
    let mut cells = Vec::new();
    let mut text = format!(
        "{} triangulation, {} cells\n",
        if tri.kind == TriangulationKind::BoundaryCone { "boundary-cone" } else { "max-tubing" },
        tri.len()
    );
    let mut rows = Vec::new();
    for (i, cell) in tri.cells.iter().enumerate() {
        let raw = tri.cell_detvol(i, Normalization::RawNormals)?;
        let normalized = tri.cell_detvol(i, Normalization::NormalizedVertices)?;
        let mut labels = cell.tubing.labels(&cat);
        if cell.has_apex {
            labels.push("apex".into());
        }
        text.push_str(&format!("  cell {i}: {} raw {raw} normalized {normalized}\n", labels.join(" ")));
        rows.push(format!(
            "{} & {} & {} \\\\",
            i,
            labels.iter().map(|l| latex_label(l)).collect::<Vec<_>>().join(", "),
            raw
        ));
        cells.push(json!({
            "tubes": cell.tubing.labels(&cat),
            "apex": cell.has_apex,
            "raw_det": raw.to_string(),
            "normalized_det": normalized.to_string(),
        }));
    }
    let total = tri.total_detvol(Normalization::NormalizedVertices)?;
    text.push_str(&format!("total normalized volume {total}\n"));
    text.push_str(&format!(
        "ridges: {} shared, {} boundary, {} violations; {}\n",
        report.shared,
        report.boundary,
        report.violations,
        if report.passed { "valid" } else { "INVALID" }
    ));
    let json = json!({
        "kind": if boundary { "boundary_cone" } else { "max_tubing" },
        "cells": cells,
        "total_normalized": total.to_string(),
        "ridges": {
            "shared": report.shared,
            "boundary": report.boundary,
            "violations": report.violations,
            "passed": report.passed,
        },
    });
    let latex = format!(
        "\\begin{{tabular}}{{rlr}}\ncell & tubes & $|\\det|$ \\\\\n\\hline\n{}\n\\end{{tabular}}\n",
        rows.join("\n")
    );
    let mut out = Output::new(json, text, latex);
    if let Some(r) = report.ridges.iter().find(|r| matches!(r.class, RidgeClass::Violation(_))) {
        let labels: Vec<String> = r.tubes.iter().map(|&t| cat.label(t)).collect();
        let why = match &r.class {
            RidgeClass::Violation(m) => m.clone(),
            _ => unreachable!(),
        };
        out.failure = Some(Failure::Check(format!("ridge [{}] in cells {:?}: {why}", labels.join(" "), r.cells)));
    }
    Ok(out)
}

fn forms(g: &Graph, rep: RepChoice, budget: u64) -> Result<Vec<CanonicalForm>, Failure> {
    let cat = TubeCatalog::new(g);
    let mut b = Budget::new(budget);
    let mut out = Vec::new();
    if rep != RepChoice::B {
        out.push(rep_a(&cat, &mut b)?);
    }
    if rep != RepChoice::A {
        out.push(rep_b(&cat, &mut b)?);
    }
    Ok(out)
}

fn equality_text(r: &EqualityReport) -> String {
    format!(
        "equality: {}, {} + {} terms (eliminated {}, {} arithmetic)\n",
        r.equal,
        r.terms_a,
        r.terms_b,
        r.eliminated.as_deref().unwrap_or("none"),
        r.arithmetic
    )
}

pub fn canonical(g: &Graph, rep: RepChoice, check: bool, budget: u64) -> Result<Output, Failure> {
    g.require_no_isolated_vertices()?;
    let shown = forms(g, rep, budget)?;
    let report = if check {
        let both = if rep == RepChoice::Both { shown.clone() } else { forms(g, RepChoice::Both, budget)? };
        Some(check_equality_forms(&both[0], &both[1])?)
    } else {
        None
    };
    let mut text = String::new();
    let mut latex = String::new();
    for f in &shown {
        text.push_str(&format!("rep {} ({} terms):\n{}\n", f.rep.name(), f.terms.len(), f.to_text()));
        latex.push_str(&f.to_latex());
    }
    let mut json = json!({ "forms": shown.iter().map(CanonicalForm::to_json).collect::<Vec<_>>() });
    let mut out_failure = None;
    if let Some(r) = &report {
        text.push_str(&equality_text(r));
        latex.push_str(&format!("% {}", equality_text(r)));
        json["check"] = serde_json::to_value(r).expect("report serializes");
        if !r.equal {
            out_failure = Some(Failure::Check("the two representations differ modulo the hyperplane".into()));
        }
    }
    let mut out = Output::new(json, text, latex);
    out.failure = out_failure;
    Ok(out)
}

pub fn evaluate(g: &Graph, rep: RepChoice, at: &str, budget: u64) -> Result<Output, Failure> {
    g.require_no_isolated_vertices()?;
    let x: RationalVector = parse_rational_list(at)?;
    let shown = forms(g, rep, budget)?;
    let mut values = serde_json::Map::new();
    let mut text = String::new();
    let mut latex = String::new();
    for f in &shown {
        let v = f.evaluate(&x)?;
        values.insert(f.rep.name().to_string(), Value::String(v.to_string()));
        if shown.len() == 1 {
            text.push_str(&format!("{v}\n"));
        } else {
            text.push_str(&format!("{}: {v}\n", f.rep.name()));
        }
        latex.push_str(&format!(
            "\\Omega_{{{}}}({}) = {}\n",
            f.rep.name(),
            x.to_strings().join(", "),
            latex_rational(&v)
        ));
    }
    let json = json!({ "point": x.to_strings(), "values": values });
    Ok(Output::new(json, text, latex))
}

fn latex_rational(v: &cosmoform::exact::Rational) -> String {
    if v.is_integer() {
        v.to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", v.numer(), v.denom())
    }
}

pub fn verify(g: &Graph, seed: u64, budget: u64, face_budget: u64) -> Result<Output, Failure> {
    let cfg = VerifyConfig { seed, budget, lattice_budget: face_budget, ..VerifyConfig::default() };
    let report = cosmoform::verify::verify(g, &cfg)?;
    let json = serde_json::to_value(&report).expect("report serializes");
    let latex = itemize(report.properties.iter().map(|p| {
        let status = match p.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skipped",
        };
        format!("{} ({status}): {}", p.name, p.detail)
    }));
    let failure =
        report.first_failure().map(|p| Failure::Check(format!("verification failed: {}: {}", p.name, p.detail)));
    let mut out = Output::new(json, report.to_text(), latex);
    out.failure = failure;
    Ok(out)
}
