//! The canonical form of `C_G` as a sum over tubings, in two closed forms:
//!
//! * Rep A: `Σ_{T maximal} D_T / ∏_{t∈T} x_t` with `D_T = |det(h_t : t ∈ T)|`;
//! * Rep B: `Σ_{T uc almost-maximal} D'_T / ∏_{t∈T} x_t` with
//!   `D'_T = |det(𝟙, h_t : t ∈ T)|`,
//!
//! where `x_t = ⟨h_t, x⟩`. The two agree on the hyperplane `H`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{contract, Error, Result};
use crate::exact::{Coefficient, Polynomial, Rational, RationalVector};
use crate::graph::{Budget, Graph, TubeCatalog, TubeId};
use crate::polytope::{facet_normal, polytope_vertices};
use crate::triangulation::{Normalization, Triangulation};
use crate::volume::require_on_hyperplane;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rep {
    A,
    B,
}

impl Rep {
    pub fn name(&self) -> &'static str {
        match self {
            Rep::A => "A",
            Rep::B => "B",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    /// A positive integer determinant.
    pub numerator: BigInt,
    pub tubes: Vec<TubeId>,
}

#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub rep: Rep,
    pub terms: Vec<Term>,
    catalog: TubeCatalog,
    normals: Vec<RationalVector>,
}

fn from_triangulation(rep: Rep, tri: &Triangulation) -> Result<CanonicalForm> {
    let cat = tri.catalog().clone();
    let mut terms = Vec::with_capacity(tri.len());
    for (i, cell) in tri.cells.iter().enumerate() {
        let d = tri.cell_detvol(i, Normalization::RawNormals)?;
        if !d.is_integer() || !d.is_positive() {
            return Err(contract(format!("cell {i} has non-integral determinant {d}")));
        }
        terms.push(Term { numerator: d.to_integer(), tubes: cell.tubing.ids().to_vec() });
    }
    let normals = cat.tubes().iter().map(|t| facet_normal(cat.graph(), t)).collect();
    Ok(CanonicalForm { rep, terms, catalog: cat, normals })
}

/// One term per maximal tubing.
pub fn rep_a(cat: &TubeCatalog, budget: &mut Budget) -> Result<CanonicalForm> {
    from_triangulation(Rep::A, &Triangulation::max_tubing(cat, budget)?)
}

/// One term per uniquely completable almost-maximal tubing.
pub fn rep_b(cat: &TubeCatalog, budget: &mut Budget) -> Result<CanonicalForm> {
    from_triangulation(Rep::B, &Triangulation::boundary(cat, budget)?)
}

impl CanonicalForm {
    pub fn catalog(&self) -> &TubeCatalog {
        &self.catalog
    }

    pub fn graph(&self) -> &Graph {
        self.catalog.graph()
    }

    pub fn normal(&self, t: TubeId) -> &RationalVector {
        &self.normals[t.0]
    }

    /// Exact value at a point of `H` where no denominator vanishes.
    pub fn evaluate(&self, x: &RationalVector) -> Result<Rational> {
        let n = self.graph().ambient_dim();
        if x.len() != n {
            return Err(contract(format!("point has {} coordinates, expected {n}", x.len())));
        }
        require_on_hyperplane(x)?;
        let forms: Vec<Rational> = self.normals.iter().map(|h| h.dot(x)).collect();
        let mut total = Rational::zero();
        for term in &self.terms {
            let mut den = Rational::one();
            for &t in &term.tubes {
                if forms[t.0].is_zero() {
                    return Err(Error::Pole { tube: self.catalog.label(t) });
                }
                den *= &forms[t.0];
            }
            total += Rational::from_integer(term.numerator.clone()) / den;
        }
        Ok(total)
    }

    /// `Σ_T D_T ∏_{t∉T} x_t`: the form times `∏_{all tubes} x_t`.
    pub fn adjoint_numerator(&self) -> Polynomial {
        let forms: Vec<Polynomial> = self.normals.iter().map(Polynomial::from_linear_vector).collect();
        self.adjoint_with(&forms, |b| Rational::from_integer(b.clone()))
    }

    fn complement_terms<C: Coefficient>(&self, conv: &impl Fn(&BigInt) -> C) -> Vec<(C, Vec<usize>)> {
        self.terms
            .iter()
            .map(|term| {
                let rest = (0..self.catalog.len()).filter(|i| !term.tubes.contains(&TubeId(*i))).collect();
                (conv(&term.numerator), rest)
            })
            .collect()
    }

    fn adjoint_with<C: Coefficient>(&self, forms: &[Polynomial<C>], conv: impl Fn(&BigInt) -> C) -> Polynomial<C> {
        let nvars = self.graph().ambient_dim();
        Polynomial::sum_of_products(nvars, &self.complement_terms(&conv), forms)
    }

    /// log2 of an upper bound on every coefficient met while expanding the
    /// adjoint from `forms` with the given coefficient 1-norms.
    fn coefficient_bound_bits(&self, form_norms: &[f64]) -> f64 {
        let mut total = 0f64;
        for term in &self.terms {
            let mut bits = term.numerator.to_f64().unwrap_or(f64::INFINITY).log2();
            for (i, norm) in form_norms.iter().enumerate() {
                if !term.tubes.contains(&TubeId(i)) {
                    bits += norm.log2();
                }
            }
            total = log2_add(total, bits);
        }
        total
    }

    /// `sum_t D / (x_t1 ... x_tn)` with each `x_t` written as a linear form.
    pub fn to_text(&self) -> String {
        let names = self.graph().coordinate_names();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|term| {
                let den: Vec<String> =
                    term.tubes.iter().map(|&t| format!("({})", linear_form_text(&self.normals[t.0], &names))).collect();
                format!("{}/({})", term.numerator, den.join("*"))
            })
            .collect();
        parts.join("\n+ ")
    }

    /// An `align*` block: the form in the tube variables `x_t`, followed by
    /// the definition of every `x_t` that occurs.
    pub fn to_latex(&self) -> String {
        let g = self.graph();
        let tube_var = |t: TubeId| format!("x_{{{}}}", latex_tube(&self.catalog, t));
        let mut lines = Vec::new();
        for (k, term) in self.terms.iter().enumerate() {
            let den: Vec<String> = term.tubes.iter().map(|&t| tube_var(t)).collect();
            let lead =
                if k == 0 { format!("\\Omega_{{{}}}(x) &= ", self.rep.name()) } else { "&\\quad + ".to_string() };
            lines.push(format!("{lead}\\frac{{{}}}{{{}}}", term.numerator, den.join(" \\, ")));
        }
        let mut used: Vec<TubeId> = self.terms.iter().flat_map(|t| t.tubes.iter().copied()).collect();
        used.sort_unstable();
        used.dedup();
        let names: Vec<String> = (0..g.ambient_dim())
            .map(|i| {
                if i < g.vertex_count() {
                    format!("x_{{{}}}", g.vertex_label(i))
                } else {
                    format!("y_{{{}}}", g.edge_label(i - g.vertex_count()))
                }
            })
            .collect();
        let defs: Vec<String> = used
            .iter()
            .map(|&t| format!("{} &= {}", tube_var(t), linear_form_latex(&self.normals[t.0], &names)))
            .collect();
        format!(
            "\\begin{{align*}}\n{}\n\\end{{align*}}\n\\begin{{align*}}\n{}\n\\end{{align*}}\n",
            lines.join(" \\\\\n"),
            defs.join(" \\\\\n")
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rep": self.rep.name(),
            "terms": self.terms.iter().map(|t| serde_json::json!({
                "num": t.numerator.to_string(),
                "tubes": t.tubes.iter().map(|&id| self.catalog.label(id)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn log2_add(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return b;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (1.0 + (lo - hi).exp2()).log2()
}

fn latex_tube(cat: &TubeCatalog, t: TubeId) -> String {
    let g = cat.graph();
    let tube = cat.tube(t);
    if tube.is_singleton() {
        format!("\\{{{}\\}}", g.vertex_label(tube.vertices()[0]))
    } else {
        let e: Vec<&str> = tube.edges().iter().map(|&k| g.edge_label(k)).collect();
        format!("\\{{{}\\}}", e.join(","))
    }
}

fn linear_form_text(h: &RationalVector, names: &[String]) -> String {
    let parts: Vec<String> = h
        .iter()
        .zip(names)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, n)| if c.is_one() { n.clone() } else { format!("{c}*{n}") })
        .collect();
    parts.join(" + ")
}

fn linear_form_latex(h: &RationalVector, names: &[String]) -> String {
    let parts: Vec<String> = h
        .iter()
        .zip(names)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, n)| if c.is_one() { n.clone() } else { format!("{c}{n}") })
        .collect();
    parts.join(" + ")
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct EqualityReport {
    pub equal: bool,
    /// The variable replaced by `1 − Σ others`; `None` when comparing off `H`.
    pub eliminated: Option<String>,
    pub terms_a: usize,
    pub terms_b: usize,
    /// Monomials in the two reduced numerators.
    pub numerator_sizes: (usize, usize),
    /// `"i128"` when a coefficient bound allowed machine integers, else `"bigint"`.
    pub arithmetic: &'static str,
}

/// The affine form `⟨h, x⟩` with `x_k = 1 − Σ_{j≠k} x_j` substituted.
fn reduced_form(h: &RationalVector, k: usize) -> (Vec<BigInt>, BigInt) {
    let hk = h[k].to_integer();
    let coeffs =
        h.iter().enumerate().map(|(j, c)| if j == k { BigInt::zero() } else { c.to_integer() - &hk }).collect();
    (coeffs, hk)
}

fn compare<C: Coefficient>(
    a: &CanonicalForm,
    b: &CanonicalForm,
    forms: &[(Vec<BigInt>, BigInt)],
    conv: impl Fn(&BigInt) -> C + Copy,
) -> (bool, (usize, usize)) {
    let polys: Vec<Polynomial<C>> =
        forms.iter().map(|(c, k)| Polynomial::linear(&c.iter().map(conv).collect::<Vec<_>>(), conv(k))).collect();
    let pa = a.adjoint_with(&polys, conv);
    let pb = b.adjoint_with(&polys, conv);
    (pa == pb, (pa.len(), pb.len()))
}

fn compare_forms(a: &CanonicalForm, b: &CanonicalForm, eliminated: Option<usize>) -> Result<EqualityReport> {
    if a.graph() != b.graph() || a.rep != Rep::A || b.rep != Rep::B {
        return Err(contract("equality check needs rep A and rep B of the same graph"));
    }
    let forms: Vec<(Vec<BigInt>, BigInt)> = a
        .normals
        .iter()
        .map(|h| match eliminated {
            Some(k) => reduced_form(h, k),
            None => (h.iter().map(|c| c.to_integer()).collect(), BigInt::zero()),
        })
        .collect();
    let norms: Vec<f64> = forms
        .iter()
        .map(|(c, k)| c.iter().chain(std::iter::once(k)).map(|x| x.abs().to_f64().unwrap_or(f64::INFINITY)).sum())
        .collect();
    let bits = a.coefficient_bound_bits(&norms).max(b.coefficient_bound_bits(&norms));
    let (equal, sizes, arithmetic) = if bits < 120.0 {
        let to_i128 = |x: &BigInt| x.to_i128().expect("bounded by the coefficient estimate");
        let (eq, sizes) = compare::<i128>(a, b, &forms, to_i128);
        (eq, sizes, "i128")
    } else {
        let (eq, sizes) = compare::<BigInt>(a, b, &forms, |x: &BigInt| x.clone());
        (eq, sizes, "bigint")
    };
    Ok(EqualityReport {
        equal,
        eliminated: eliminated.map(|k| a.graph().coordinate_names()[k].clone()),
        terms_a: a.terms.len(),
        terms_b: b.terms.len(),
        numerator_sizes: sizes,
        arithmetic,
    })
}

/// Decides `F_A ≡ F_B` on `H`: both are multiplied by `∏_t x_t` and the
/// numerators compared after eliminating the last edge variable.
pub fn check_equality_forms(a: &CanonicalForm, b: &CanonicalForm) -> Result<EqualityReport> {
    let k = a.graph().ambient_dim() - 1;
    compare_forms(a, b, Some(k))
}

/// The same comparison without using `Σ x = 1`; expected to fail.
pub fn check_equality_off_hyperplane(a: &CanonicalForm, b: &CanonicalForm) -> Result<EqualityReport> {
    compare_forms(a, b, None)
}

pub fn check_equality(cat: &TubeCatalog, budget: &mut Budget) -> Result<EqualityReport> {
    let a = rep_a(cat, budget)?;
    let b = rep_b(cat, budget)?;
    check_equality_forms(&a, &b)
}

/// The barycenter of the vertices of `C_G`, checked to lie on `H` and
/// strictly inside every facet.
pub fn interior_point(cat: &TubeCatalog) -> Result<RationalVector> {
    let g = cat.graph();
    let verts = polytope_vertices(g)?;
    let mut x = RationalVector::zeros(g.ambient_dim());
    for p in &verts {
        x = x.add(&p.coordinates);
    }
    let x = x.scaled(&Rational::new(BigInt::one(), BigInt::from(verts.len())));
    require_on_hyperplane(&x)?;
    for (id, t) in cat.ids().zip(cat.tubes()) {
        let v = facet_normal(g, t).dot(&x);
        if !v.is_positive() {
            return Err(Error::NotInterior { tube: cat.label(id), value: v.to_string() });
        }
    }
    Ok(x)
}

/// A second interior point: the vertices of `C_G` averaged with weights
/// `1, 2, 3, …` in tag order.
pub fn skewed_interior_point(cat: &TubeCatalog) -> Result<RationalVector> {
    let g = cat.graph();
    let verts = polytope_vertices(g)?;
    let mut x = RationalVector::zeros(g.ambient_dim());
    let mut total = 0i64;
    for (i, p) in verts.iter().enumerate() {
        let w = i as i64 + 1;
        x = x.add(&p.coordinates.scaled(&Rational::from_integer(w.into())));
        total += w;
    }
    let x = x.scaled(&Rational::new(BigInt::one(), total.into()));
    for (id, t) in cat.ids().zip(cat.tubes()) {
        let v = facet_normal(g, t).dot(&x);
        if !v.is_positive() {
            return Err(Error::NotInterior { tube: cat.label(id), value: v.to_string() });
        }
    }
    Ok(x)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PoleSample {
    pub tube: String,
    pub samples: usize,
    /// Samples at which the cleared numerator is nonzero.
    pub nonzero: usize,
}

impl PoleSample {
    pub fn is_genuine(&self) -> bool {
        self.nonzero > 0
    }
}

/// Evaluates the numerator `Σ_T D_T ∏_{t∉T} x_t` at seeded random
/// rational points of `H ∩ {x_t = 0}`, for every tube `t`. A nonzero value
/// shows that `x_t` does not divide the numerator, so the pole is simple
/// and really present.
pub fn pole_structure_check(f: &CanonicalForm, seed: u64, samples: usize) -> Result<Vec<PoleSample>> {
    let n = f.graph().ambient_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(f.catalog.len());
    for t in f.catalog.ids() {
        let h = &f.normals[t.0];
        let (i, j) = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| h[i] != h[j])
            .ok_or_else(|| contract(format!("normal of tube {} is constant", f.catalog.label(t))))?;
        let mut nonzero = 0;
        for _ in 0..samples {
            let mut x = RationalVector::zeros(n);
            for k in (0..n).filter(|&k| k != i && k != j) {
                x[k] = Rational::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=4).into());
            }
            // x_i + x_j = 1 − Σ others and h_i x_i + h_j x_j = −Σ h_k x_k.
            let a = Rational::one() - x.coordinate_sum();
            let b = -h.dot(&x);
            let xi = (&b - &h[j] * &a) / (&h[i] - &h[j]);
            x[j] = &a - &xi;
            x[i] = xi;
            debug_assert!(h.dot(&x).is_zero() && x.coordinate_sum().is_one());
            let forms: Vec<Rational> = f.normals.iter().map(|g| g.dot(&x)).collect();
            let value: Rational = f
                .terms
                .iter()
                .filter(|term| term.tubes.contains(&t))
                .map(|term| {
                    let rest: Rational =
                        (0..forms.len()).filter(|s| !term.tubes.contains(&TubeId(*s))).map(|s| &forms[s]).product();
                    Rational::from_integer(term.numerator.clone()) * rest
                })
                .sum();
            nonzero += !value.is_zero() as usize;
        }
        out.push(PoleSample { tube: f.catalog.label(t), samples, nonzero });
    }
    Ok(out)
}
