//! Sparse multivariate polynomials.
//!
//! Terms are keyed by exponent vectors under graded-lexicographic order, which
//! fixes both printing and equality. The coefficient ring is generic so the
//! large numerator expansions can run over machine integers when their size
//! is known to fit; the public surface uses [`Rational`] coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Debug};
use std::ops::{AddAssign, Mul, Neg};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::rational::{Rational, RationalVector};

/// Coefficient ring requirements.
pub trait Coefficient:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
}

impl<T> Coefficient for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + for<'a> AddAssign<&'a T>
        + for<'a> Mul<&'a T, Output = T>
{
}

/// Exponent vector; ordered by total degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u16; 12]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(e: &[u16]) -> Self {
        Self(SmallVec::from_slice(e))
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn times_var(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.0[i] += 1;
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq)]
pub struct Polynomial<C = Rational> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, i), C::one());
        p
    }

    /// `constant + Σ coeffs[i]·x_i`
    pub fn linear(coeffs: &[C], constant: C) -> Self {
        let nvars = coeffs.len();
        let mut p = Self::constant(nvars, constant);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(nvars, i), c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Terms in decreasing graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        assert_eq!(m.0.len(), self.nvars, "monomial has wrong number of variables");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut acc: HashMap<Monomial, C> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                accumulate(&mut acc, m1.times(m2), c1.clone() * c2);
            }
        }
        Self::from_accumulator(self.nvars, acc)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(self.nvars, C::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Product with the affine form `constant + Σ coeffs[i]·x_i`.
    pub fn mul_linear(&self, coeffs: &[C], constant: &C) -> Self {
        assert_eq!(coeffs.len(), self.nvars);
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(self.terms.len() * 2);
        for (m, c) in &self.terms {
            if !constant.is_zero() {
                accumulate(&mut acc, m.clone(), c.clone() * constant);
            }
            for (i, a) in coeffs.iter().enumerate() {
                if !a.is_zero() {
                    accumulate(&mut acc, m.times_var(i), c.clone() * a);
                }
            }
        }
        Self::from_accumulator(self.nvars, acc)
    }

    fn from_accumulator(nvars: usize, acc: HashMap<Monomial, C>) -> Self {
        Self { nvars, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Substitutes `x_k = 1 - Σ_{j≠k} x_j` and expands.
    ///
    /// The variable count is unchanged; `x_k` simply no longer occurs.
    pub fn reduce_mod_hyperplane(&self, eliminated: usize) -> Self {
        assert!(eliminated < self.nvars, "eliminated variable out of range");
        let mut sub = vec![-C::one(); self.nvars];
        sub[eliminated] = C::zero();
        let max_power = self.terms.keys().map(|m| m.0[eliminated]).max().unwrap_or(0);
        let mut powers = vec![Self::constant(self.nvars, C::one())];
        for k in 1..=max_power as usize {
            powers.push(powers[k - 1].mul_linear(&sub, &C::one()));
        }
        let mut acc: HashMap<Monomial, C> = HashMap::new();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let k = std::mem::replace(&mut rest.0[eliminated], 0) as usize;
            for (pm, pc) in &powers[k].terms {
                accumulate(&mut acc, rest.times(pm), c.clone() * pc);
            }
        }
        Self::from_accumulator(self.nvars, acc)
    }

    /// `Σ_k coef_k · Π_{i ∈ factors_k} forms[i]` expanded.
    ///
    /// Uses a Horner-style recursion: the form shared by the most terms is
    /// factored out first, so common sub-products are expanded once.
    pub fn sum_of_products(nvars: usize, terms: &[(C, Vec<usize>)], forms: &[Polynomial<C>]) -> Self {
        let work: Vec<(C, Vec<usize>)> = terms.to_vec();
        horner(nvars, work, forms)
    }

    pub fn evaluate(&self, x: &[C]) -> C {
        assert_eq!(x.len(), self.nvars);
        let mut total = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(m.0.iter()) {
                for _ in 0..e {
                    t = t * xi;
                }
            }
            total += &t;
        }
        total
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

fn accumulate<C: Coefficient>(acc: &mut HashMap<Monomial, C>, m: Monomial, c: C) {
    match acc.entry(m) {
        std::collections::hash_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::hash_map::Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
        }
    }
}

fn horner<C: Coefficient>(nvars: usize, terms: Vec<(C, Vec<usize>)>, forms: &[Polynomial<C>]) -> Polynomial<C> {
    let mut constant = C::zero();
    let mut rest = Vec::with_capacity(terms.len());
    for (c, f) in terms {
        if f.is_empty() {
            constant += &c;
        } else {
            rest.push((c, f));
        }
    }
    let mut out = Polynomial::constant(nvars, constant);
    if rest.is_empty() {
        return out;
    }
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for (_, f) in &rest {
        for &i in f {
            *counts.entry(i).or_default() += 1;
        }
    }
    // Most frequent form; ties go to the smallest index for determinism.
    let (&pick, _) = counts.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0))).expect("nonempty");
    let (with, without): (Vec<_>, Vec<_>) = rest.into_iter().partition(|(_, f)| f.contains(&pick));
    let with: Vec<(C, Vec<usize>)> = with
        .into_iter()
        .map(|(c, mut f)| {
            let pos = f.iter().position(|&i| i == pick).expect("contains pick");
            f.remove(pos);
            (c, f)
        })
        .collect();
    let inner = horner(nvars, with, forms);
    out = out.add(&inner.mul(&forms[pick]));
    if !without.is_empty() {
        out = out.add(&horner(nvars, without, forms));
    }
    out
}

impl Polynomial<Rational> {
    pub fn from_linear_vector(coeffs: &RationalVector) -> Self {
        Self::linear(coeffs.as_slice(), Rational::zero())
    }

    pub fn eval_at(&self, x: &RationalVector) -> Rational {
        self.evaluate(x.as_slice())
    }
}

impl Polynomial<i128> {
    pub fn to_rational(&self) -> Polynomial<Rational> {
        self.map_coefficients(|&c| Rational::from_integer(BigInt::from(c)))
    }
}

impl Polynomial<BigInt> {
    pub fn to_rational(&self) -> Polynomial<Rational> {
        self.map_coefficients(|c| Rational::from_integer(c.clone()))
    }
}

impl<C: Coefficient + fmt::Display> Polynomial<C> {
    /// Renders with the given variable names, highest graded-lex term first.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let mono: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
                    .collect();
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(s) => (true, s.to_string()),
                None => (false, cs),
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&mag);
            } else {
                if mag != "1" {
                    out.push_str(&mag);
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl<C: Coefficient + fmt::Display> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.display_with(&names))
    }
}
