use std::fmt;

use fixedbitset::FixedBitSet;

use super::tubes::{TubeCatalog, TubeId};
use crate::error::{contract, Error, Result};

pub const DEFAULT_TUBING_BUDGET: u64 = 10_000_000;

/// Caps the number of objects an enumerator may produce.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Self { limit, used: 0 }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn tick(&mut self, what: &str) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::Budget { what: what.to_string(), limit: self.limit });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::new(DEFAULT_TUBING_BUDGET)
    }
}

/// A set of pairwise compatible tubes, stored as sorted tube ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tubing(Vec<TubeId>);

impl Tubing {
    pub fn new(mut ids: Vec<TubeId>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        Self(ids)
    }

    pub fn ids(&self) -> &[TubeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, id: TubeId) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    pub fn without(&self, id: TubeId) -> Self {
        Self(self.0.iter().copied().filter(|&t| t != id).collect())
    }

    pub fn with(&self, id: TubeId) -> Self {
        let mut ids = self.0.clone();
        ids.push(id);
        Self::new(ids)
    }

    pub fn is_subset_of(&self, other: &Tubing) -> bool {
        self.0.iter().all(|&t| other.contains(t))
    }

    pub fn is_pairwise_compatible(&self, cat: &TubeCatalog) -> bool {
        self.0.iter().enumerate().all(|(i, &a)| self.0[i + 1..].iter().all(|&b| cat.compatible(a, b)))
    }

    pub fn is_maximal(&self, cat: &TubeCatalog) -> bool {
        self.len() == cat.graph().ambient_dim() && self.is_pairwise_compatible(cat)
    }

    /// Tube labels in id order, e.g. `[{v}, {w}, {e}]`.
    pub fn labels(&self, cat: &TubeCatalog) -> Vec<String> {
        self.0.iter().map(|&t| cat.label(t)).collect()
    }

    pub fn display<'a>(&'a self, cat: &'a TubeCatalog) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Tubing, &'a TubeCatalog);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "[{}]", self.0.labels(self.1).join(", "))
            }
        }
        D(self, cat)
    }
}

impl FromIterator<TubeId> for Tubing {
    fn from_iter<I: IntoIterator<Item = TubeId>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

/// Tubes not contained in every tubing: everything but singletons and roots.
fn free_tubes(cat: &TubeCatalog) -> Vec<TubeId> {
    cat.ids().filter(|&t| !cat.is_singleton(t) && !cat.is_root(t)).collect()
}

fn forced_tubes(cat: &TubeCatalog) -> Vec<TubeId> {
    cat.ids().filter(|&t| cat.is_singleton(t) || cat.is_root(t)).collect()
}

/// All maximal tubings, in lexicographic order of their sorted tube ids.
///
/// Tubings are the cliques of the compatibility relation, so the maximal ones
/// are found by Bron–Kerbosch with pivoting over the tubes that are not
/// compatible with everything.
pub fn enumerate_maximal_tubings(cat: &TubeCatalog, budget: &mut Budget) -> Result<Vec<Tubing>> {
    cat.graph().require_no_isolated_vertices()?;
    let m = cat.len();
    let forced = forced_tubes(cat);
    let mut p = FixedBitSet::with_capacity(m);
    for t in free_tubes(cat) {
        p.insert(t.0);
    }
    let mut out = Vec::new();
    let mut r = Vec::new();
    bron_kerbosch(cat, &mut r, p, FixedBitSet::with_capacity(m), &mut |clique| {
        budget.tick("maximal tubings")?;
        out.push(Tubing::new(forced.iter().copied().chain(clique.iter().map(|&i| TubeId(i))).collect()));
        Ok(())
    })?;
    out.sort();
    let dim = cat.graph().ambient_dim();
    for t in &out {
        if t.len() != dim {
            return Err(contract(format!("maximal tubing {} has {} tubes, expected {dim}", t.display(cat), t.len())));
        }
    }
    Ok(out)
}

fn bron_kerbosch(
    cat: &TubeCatalog,
    r: &mut Vec<usize>,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    emit: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if p.is_clear() && x.is_clear() {
        return emit(r);
    }
    let pivot =
        p.ones().chain(x.ones()).max_by_key(|&u| p.intersection(cat.compatible_set(TubeId(u))).count()).unwrap();
    let pivot_nbrs = cat.compatible_set(TubeId(pivot));
    let candidates: Vec<usize> = p.ones().filter(|&v| v == pivot || !pivot_nbrs.contains(v)).collect();
    for v in candidates {
        let nbrs = cat.compatible_set(TubeId(v));
        let mut np = p.clone();
        np.intersect_with(nbrs);
        np.set(v, false);
        let mut nx = x.clone();
        nx.intersect_with(nbrs);
        nx.set(v, false);
        r.push(v);
        bron_kerbosch(cat, r, np, nx, emit)?;
        r.pop();
        p.set(v, false);
        x.insert(v);
    }
    Ok(())
}

/// Every tubing that contains all singletons (including the one with only
/// singletons), in lexicographic order.
pub fn enumerate_tubings_with_singletons(cat: &TubeCatalog, budget: &mut Budget) -> Result<Vec<Tubing>> {
    let singles: Vec<TubeId> = cat.ids().filter(|&t| cat.is_singleton(t)).collect();
    let pool: Vec<TubeId> = cat.ids().filter(|&t| !cat.is_singleton(t)).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(
        cat: &TubeCatalog,
        pool: &[TubeId],
        start: usize,
        chosen: &mut Vec<TubeId>,
        singles: &[TubeId],
        out: &mut Vec<Tubing>,
        budget: &mut Budget,
    ) -> Result<()> {
        budget.tick("tubings")?;
        out.push(Tubing::new(singles.iter().chain(chosen.iter()).copied().collect()));
        for i in start..pool.len() {
            let t = pool[i];
            if chosen.iter().all(|&c| cat.compatible(c, t)) {
                chosen.push(t);
                rec(cat, pool, i + 1, chosen, singles, out, budget)?;
                chosen.pop();
            }
        }
        Ok(())
    }
    rec(cat, &pool, 0, &mut chosen, &singles, &mut out, budget)?;
    out.sort();
    Ok(out)
}

/// An almost-maximal tubing with its unique completion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UcTubing {
    pub tubing: Tubing,
    pub parent: Tubing,
    /// The tube of `parent` missing from `tubing`.
    pub removed: TubeId,
}

/// Tubes outside `s` that are compatible with every member of `s`.
pub fn completions(cat: &TubeCatalog, s: &Tubing) -> Vec<TubeId> {
    cat.ids().filter(|&t| !s.contains(t) && s.ids().iter().all(|&u| cat.compatible(t, u))).collect()
}

/// Deletes a singleton or a root tube from every maximal tubing in turn.
///
/// Output follows the order of the maximal tubings, then the removed tube.
/// Each result is checked to lie in exactly one maximal tubing.
pub fn enumerate_uc_almost_maximal(cat: &TubeCatalog, budget: &mut Budget) -> Result<Vec<UcTubing>> {
    let maximal = enumerate_maximal_tubings(cat, budget)?;
    let mut out: Vec<UcTubing> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for parent in &maximal {
        for &t in parent.ids() {
            if !(cat.is_singleton(t) || cat.is_root(t)) {
                continue;
            }
            let tubing = parent.without(t);
            if !seen.insert(tubing.clone()) {
                continue;
            }
            budget.tick("uniquely completable tubings")?;
            // Any maximal superset adds exactly one tube compatible with all of `tubing`.
            let extra = completions(cat, &tubing);
            if extra != [t] {
                return Err(contract(format!(
                    "tubing {} lies in {} maximal tubings",
                    tubing.display(cat),
                    extra.len()
                )));
            }
            out.push(UcTubing { tubing, parent: parent.clone(), removed: t });
        }
    }
    Ok(out)
}

fn require_member(cat: &TubeCatalog, tubing: &Tubing, t: TubeId) -> Result<()> {
    if !tubing.is_maximal(cat) {
        return Err(contract(format!("{} is not a maximal tubing", tubing.display(cat))));
    }
    if !tubing.contains(t) {
        return Err(contract(format!("tube {} is not in {}", cat.label(t), tubing.display(cat))));
    }
    Ok(())
}

/// The inclusion-minimal member of the maximal tubing strictly containing `t`.
pub fn tubing_successor(cat: &TubeCatalog, tubing: &Tubing, t: TubeId) -> Result<TubeId> {
    require_member(cat, tubing, t)?;
    let supers: Vec<TubeId> = tubing.ids().iter().copied().filter(|&s| cat.is_strict_subtube(t, s)).collect();
    // Members containing t are nested with one another, so the minimum is the one with fewest edges.
    let best = supers
        .iter()
        .copied()
        .min_by_key(|&s| (cat.tube(s).edge_count(), cat.tube(s).vertex_count()))
        .ok_or_else(|| contract(format!("tube {} has no successor", cat.label(t))))?;
    if !supers.iter().all(|&s| cat.is_subtube(best, s)) {
        return Err(contract(format!("supertubes of {} are not a chain", cat.label(t))));
    }
    Ok(best)
}

/// The maximal members strictly inside `t` and the edge `t` introduces.
///
/// Checks that `t` is the union of its predecessors plus the introduced edge.
pub fn tubing_predecessors(cat: &TubeCatalog, tubing: &Tubing, t: TubeId) -> Result<(Vec<TubeId>, usize)> {
    require_member(cat, tubing, t)?;
    if cat.is_singleton(t) {
        return Err(contract(format!("singleton {} has no predecessors", cat.label(t))));
    }
    let inside: Vec<TubeId> = tubing.ids().iter().copied().filter(|&s| cat.is_strict_subtube(s, t)).collect();
    let preds: Vec<TubeId> =
        inside.iter().copied().filter(|&s| !inside.iter().any(|&u| cat.is_strict_subtube(s, u))).collect();
    let tube = cat.tube(t);
    let mut covered_edges = FixedBitSet::with_capacity(cat.graph().edge_count());
    let mut covered_vertices = FixedBitSet::with_capacity(cat.graph().vertex_count());
    for &p in &preds {
        covered_edges.union_with(cat.tube(p).edge_set());
        covered_vertices.union_with(cat.tube(p).vertex_set());
    }
    let new_edges: Vec<usize> = tube.edge_set().difference(&covered_edges).collect();
    let [introduced] = new_edges[..] else {
        return Err(contract(format!("tube {} introduces {} edges", cat.label(t), new_edges.len())));
    };
    if !(1..=2).contains(&preds.len()) || &covered_vertices != tube.vertex_set() {
        return Err(contract(format!("tube {} is not the union of its predecessors and one edge", cat.label(t))));
    }
    Ok((preds, introduced))
}
