use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::tubes::TubeCatalog;
use super::tubings::{enumerate_tubings_with_singletons, Budget};
use super::Graph;
use crate::error::Result;

/// One vertex per edge of `g` (same label), adjacent when the edges share an
/// endpoint. Always simple, even when `g` has parallel edges.
pub fn line_graph(g: &Graph) -> Graph {
    let mut edges = Vec::new();
    for i in 0..g.edge_count() {
        for j in i + 1..g.edge_count() {
            let (a, b) = g.edge(i).ends;
            if g.edge(j).contains(a) || g.edge(j).contains(b) {
                edges.push((format!("e{}", edges.len() + 1), g.edge_label(i).to_string(), g.edge_label(j).to_string()));
            }
        }
    }
    let vertices: Vec<String> = g.edges().iter().map(|e| e.label.clone()).collect();
    Graph::new(vertices, edges, false).expect("line graph of a valid graph is valid")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub tubings_with_singletons: usize,
    pub ga_tubings: usize,
    pub bijection_holds: bool,
}

/// Vertex sets of connected induced subgraphs of `l`.
fn ga_tubes(l: &Graph) -> Vec<Vec<usize>> {
    let adjacent = |a: usize, b: usize| l.incident_edges(a).iter().any(|&k| l.edge(k).contains(b));
    let mut seen: HashSet<Vec<usize>> = (0..l.vertex_count()).map(|v| vec![v]).collect();
    let mut frontier: Vec<Vec<usize>> = seen.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for set in &frontier {
            for v in 0..l.vertex_count() {
                if !set.contains(&v) && set.iter().any(|&u| adjacent(u, v)) {
                    let mut grown = set.clone();
                    grown.push(v);
                    grown.sort_unstable();
                    if seen.insert(grown.clone()) {
                        next.push(grown);
                    }
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
    out.sort();
    out
}

/// Nested, or disjoint with no edge of `l` between them.
fn ga_compatible(l: &Graph, a: &[usize], b: &[usize]) -> bool {
    let subset = |x: &[usize], y: &[usize]| x.iter().all(|v| y.contains(v));
    if subset(a, b) || subset(b, a) {
        return true;
    }
    a.iter().all(|&u| !b.contains(&u) && l.incident_edges(u).iter().all(|&k| !b.contains(&l.edge(k).other(u))))
}

fn ga_tubings(l: &Graph, budget: &mut Budget) -> Result<HashSet<BTreeSet<Vec<usize>>>> {
    let tubes = ga_tubes(l);
    let mut out = HashSet::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        l: &Graph,
        tubes: &[Vec<usize>],
        start: usize,
        chosen: &mut Vec<usize>,
        out: &mut HashSet<BTreeSet<Vec<usize>>>,
        budget: &mut Budget,
    ) -> Result<()> {
        budget.tick("GA-tubings")?;
        out.insert(chosen.iter().map(|&i| tubes[i].clone()).collect());
        for i in start..tubes.len() {
            if chosen.iter().all(|&c| ga_compatible(l, &tubes[c], &tubes[i])) {
                chosen.push(i);
                rec(l, tubes, i + 1, chosen, out, budget)?;
                chosen.pop();
            }
        }
        Ok(())
    }
    rec(l, &tubes, 0, &mut chosen, &mut out, budget)?;
    Ok(out)
}

/// Sends each tubing of `g` containing every singleton to the set of edge
/// sets of its non-singleton tubes, read as vertex sets of `L(g)`, and checks
/// that this is a bijection onto the GA-tubings of `L(g)`.
pub fn ga_tubing_bijection_check(g: &Graph, budget: &mut Budget) -> Result<BijectionReport> {
    let cat = TubeCatalog::new(g);
    let tubings = enumerate_tubings_with_singletons(&cat, budget)?;
    let l = line_graph(g);
    let targets = ga_tubings(&l, budget)?;
    let images: HashSet<BTreeSet<Vec<usize>>> = tubings
        .iter()
        .map(|t| t.ids().iter().filter(|&&s| !cat.is_singleton(s)).map(|&s| cat.tube(s).edges()).collect())
        .collect();
    let injective = images.len() == tubings.len();
    Ok(BijectionReport {
        tubings_with_singletons: tubings.len(),
        ga_tubings: targets.len(),
        bijection_holds: injective && images == targets,
    })
}
