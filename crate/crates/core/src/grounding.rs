//! Grounding sets (feedback vertex sets): verification, exact minimum search
//! and a greedy upper bound.
//!
//! Every cycle lies inside one strongly connected component of the kernel,
//! so the exact search solves each cyclic component on its own and combines
//! the per-component optima as a Cartesian product.
//!
//! Inside a component the search branches on a shortest remaining cycle
//! `c1, …, cm`: branch `i` deletes `ci` and forbids deleting `c1, …, c(i-1)`.
//! Branches therefore enumerate disjoint families of solutions, so iterating
//! the size limit upward from a lower bound lists every minimum set exactly
//! once. The lower bound is a greedy packing of vertex-disjoint cycles.

use serde::{Deserialize, Serialize};

use crate::error::{GraphError, GroundingError};
use crate::graph::{DirectedGraph, Label, VertexId};
use crate::kernel::grounding_kernel;
use crate::scc::{cyclic_vertices, scc_decompose};

/// True iff `G[V - u]` is acyclic.
pub fn is_grounding_set<L: Label>(
    g: &DirectedGraph<L>,
    u: &[VertexId],
) -> Result<bool, GraphError> {
    let mut alive = vec![true; g.vertex_count()];
    for v in u {
        if v.index() >= g.vertex_count() {
            return Err(GraphError::UnknownVertex(v.to_string()));
        }
        alive[v.index()] = false;
    }
    Ok(g.acyclic_within(&alive))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMethod {
    Exact,
    Heuristic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Maximum number of branch nodes before giving up.
    pub node_budget: u64,
    /// Maximum number of minimum sets to list.
    pub enumeration_cap: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            node_budget: 10_000_000,
            enumeration_cap: 10_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundingSearchResult {
    pub minimum_size: usize,
    /// Grounding sets, each ascending, listed in lexicographic order.
    pub sets: Vec<Vec<VertexId>>,
    /// More minimum sets exist than were listed.
    pub truncated: bool,
    pub nodes_explored: u64,
    pub method: SearchMethod,
    /// Size of a vertex-disjoint cycle packing of the kernel.
    pub lower_bound: usize,
}

/// Finds the minimum grounding-set size and lists every minimum set, up to
/// `limits.enumeration_cap` of them.
pub fn minimum_grounding_sets<L: Label>(
    g: &DirectedGraph<L>,
    limits: SearchLimits,
) -> Result<GroundingSearchResult, GroundingError> {
    let gk = grounding_kernel(g).gk;
    let (kernel, back) = g.induced_by(&gk);
    let partition = scc_decompose(&kernel);
    let lower_bound = cycle_packing(&kernel, &vec![true; kernel.vertex_count()]).len();

    let mut nodes = 0u64;
    let mut per_component: Vec<Vec<Vec<VertexId>>> = Vec::new();
    let mut truncated = false;
    let mut minimum_size = 0;
    for comp in partition.components() {
        if comp.len() == 1 && !kernel.has_arc(comp[0], comp[0]) {
            continue;
        }
        let (sub, sub_back) = kernel.induced_by(comp);
        let mut search = Search::new(&sub, limits, &mut nodes);
        let outcome = search.run();
        let (size, sets, cut) = match outcome {
            Some(found) => found,
            None => {
                let best = greedy_grounding_set(g);
                return Err(GroundingError::BudgetExceeded {
                    budget: limits.node_budget,
                    upper_bound: best.len(),
                    best: g.labels_of(&best).iter().map(ToString::to_string).collect(),
                });
            }
        };
        minimum_size += size;
        truncated |= cut;
        per_component.push(
            sets.into_iter()
                .map(|s| {
                    s.into_iter()
                        .map(|v| back[sub_back[v.index()].index()])
                        .collect()
                })
                .collect(),
        );
    }

    let (sets, product_cut) = cartesian(&per_component, limits.enumeration_cap);
    Ok(GroundingSearchResult {
        minimum_size,
        sets,
        truncated: truncated || product_cut,
        nodes_explored: nodes,
        method: SearchMethod::Exact,
        lower_bound,
    })
}

/// Unions one choice from every component's list, capped at `cap` results.
fn cartesian(parts: &[Vec<Vec<VertexId>>], cap: usize) -> (Vec<Vec<VertexId>>, bool) {
    let mut acc: Vec<Vec<VertexId>> = vec![Vec::new()];
    let mut cut = false;
    for options in parts {
        let mut next = Vec::new();
        'outer: for prefix in &acc {
            for choice in options {
                if next.len() == cap {
                    cut = true;
                    break 'outer;
                }
                let mut set = prefix.clone();
                set.extend_from_slice(choice);
                next.push(set);
            }
        }
        acc = next;
    }
    for set in &mut acc {
        set.sort_unstable();
    }
    acc.sort();
    (acc, cut)
}

/// Branch-and-bound over one strongly connected component.
struct Search<'a, L: Label> {
    g: &'a DirectedGraph<L>,
    limits: SearchLimits,
    nodes: &'a mut u64,
    alive: Vec<bool>,
    forbidden: Vec<bool>,
    deleted: Vec<VertexId>,
    found: Vec<Vec<VertexId>>,
    truncated: bool,
    out_of_budget: bool,
}

impl<'a, L: Label> Search<'a, L> {
    fn new(g: &'a DirectedGraph<L>, limits: SearchLimits, nodes: &'a mut u64) -> Self {
        let n = g.vertex_count();
        Search {
            g,
            limits,
            nodes,
            alive: vec![true; n],
            forbidden: vec![false; n],
            deleted: Vec::new(),
            found: Vec::new(),
            truncated: false,
            out_of_budget: false,
        }
    }

    /// `(minimum size, minimum sets, truncated)`, or `None` when the budget
    /// ran out.
    fn run(&mut self) -> Option<(usize, Vec<Vec<VertexId>>, bool)> {
        let mut limit = cycle_packing(self.g, &self.alive).len();
        loop {
            self.branch(limit);
            if self.out_of_budget {
                return None;
            }
            if !self.found.is_empty() {
                let mut sets = std::mem::take(&mut self.found);
                for s in &mut sets {
                    s.sort_unstable();
                }
                sets.sort();
                return Some((limit, sets, self.truncated));
            }
            limit += 1;
        }
    }

    fn branch(&mut self, limit: usize) {
        if self.out_of_budget || self.truncated {
            return;
        }
        *self.nodes += 1;
        if *self.nodes > self.limits.node_budget {
            self.out_of_budget = true;
            return;
        }
        if self.g.acyclic_within(&self.alive) {
            if self.found.len() == self.limits.enumeration_cap {
                self.truncated = true;
            } else {
                self.found.push(self.deleted.clone());
            }
            return;
        }
        if self.deleted.len() >= limit {
            return;
        }
        let packing = cycle_packing(self.g, &self.alive);
        if self.deleted.len() + packing.len() > limit {
            return;
        }
        let Some(cycle) = shortest_cycle(self.g, &self.alive) else {
            return;
        };
        let choices: Vec<VertexId> = cycle
            .into_iter()
            .filter(|v| !self.forbidden[v.index()])
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut newly_forbidden = Vec::new();
        for &v in &choices {
            self.alive[v.index()] = false;
            self.deleted.push(v);
            self.branch(limit);
            self.deleted.pop();
            self.alive[v.index()] = true;
            if self.out_of_budget || self.truncated {
                break;
            }
            self.forbidden[v.index()] = true;
            newly_forbidden.push(v);
        }
        for v in newly_forbidden {
            self.forbidden[v.index()] = false;
        }
    }
}

/// A shortest cycle of the masked graph; among equally short cycles, the one
/// found from the smallest start vertex.
fn shortest_cycle<L: Label>(g: &DirectedGraph<L>, alive: &[bool]) -> Option<Vec<VertexId>> {
    let mut best: Option<Vec<VertexId>> = None;
    for v in g.vertices() {
        if !alive[v.index()] {
            continue;
        }
        if let Some(c) = g.shortest_cycle_through(v, alive) {
            if best.as_ref().is_none_or(|b| c.len() < b.len()) {
                let done = c.len() <= 2;
                best = Some(c);
                if done {
                    break;
                }
            }
        }
    }
    best
}

/// Greedy packing of vertex-disjoint cycles: 2-cycles first, then for every
/// unused vertex in ascending order, a shortest cycle through it among unused
/// vertices. Its size bounds every grounding set from below.
pub fn cycle_packing<L: Label>(g: &DirectedGraph<L>, alive: &[bool]) -> Vec<Vec<VertexId>> {
    let mut free = alive.to_vec();
    let mut cycles = Vec::new();
    for v in g.vertices() {
        if free[v.index()] && g.has_arc(v, v) {
            free[v.index()] = false;
            cycles.push(vec![v]);
        }
    }
    for (u, v) in g.arcs() {
        if u < v && free[u.index()] && free[v.index()] && g.has_arc(v, u) {
            free[u.index()] = false;
            free[v.index()] = false;
            cycles.push(vec![u, v]);
        }
    }
    for v in g.vertices() {
        if !free[v.index()] {
            continue;
        }
        if let Some(c) = g.shortest_cycle_through(v, &free) {
            for w in &c {
                free[w.index()] = false;
            }
            cycles.push(c);
        }
    }
    cycles
}

/// Greedy grounding set: while a cycle remains, delete the cyclic kernel
/// vertex maximizing `in-degree × out-degree` (degrees counted among the
/// vertices still on cycles; ties go to the smallest vertex), then drop any
/// chosen vertex that turned out to be unnecessary.
pub fn greedy_grounding_set<L: Label>(g: &DirectedGraph<L>) -> Vec<VertexId> {
    let gk = grounding_kernel(g).gk;
    let (kernel, back) = g.induced_by(&gk);
    let n = kernel.vertex_count();
    let mut alive = vec![true; n];
    let mut chosen = Vec::new();
    loop {
        let cyclic = cyclic_vertices(&kernel, &alive);
        let mut best: Option<(usize, VertexId)> = None;
        for v in kernel.vertices().filter(|v| cyclic[v.index()]) {
            let din = kernel
                .predecessors(v)
                .iter()
                .filter(|p| cyclic[p.index()])
                .count();
            let dout = kernel
                .successors(v)
                .iter()
                .filter(|s| cyclic[s.index()])
                .count();
            let score = din * dout;
            if best.is_none_or(|(s, _)| score > s) {
                best = Some((score, v));
            }
        }
        let Some((_, v)) = best else { break };
        alive[v.index()] = false;
        chosen.push(v);
        // Vertices off every cycle never matter again.
        for (i, c) in cyclic.iter().enumerate() {
            if !c {
                alive[i] = false;
            }
        }
    }

    let mut alive = vec![true; n];
    for v in &chosen {
        alive[v.index()] = false;
    }
    let mut kept = Vec::new();
    for &v in chosen.iter().rev() {
        alive[v.index()] = true;
        if kernel.acyclic_within(&alive) {
            continue;
        }
        alive[v.index()] = false;
        kept.push(v);
    }
    let mut result: Vec<VertexId> = kept.into_iter().map(|v| back[v.index()]).collect();
    result.sort_unstable();
    result
}

/// Greedy set packaged as a search result, with the packing lower bound.
pub fn heuristic_grounding_set<L: Label>(g: &DirectedGraph<L>) -> GroundingSearchResult {
    let set = greedy_grounding_set(g);
    let gk = grounding_kernel(g).gk;
    let (kernel, _) = g.induced_by(&gk);
    let lower_bound = cycle_packing(&kernel, &vec![true; kernel.vertex_count()]).len();
    GroundingSearchResult {
        minimum_size: set.len(),
        sets: vec![set],
        truncated: false,
        nodes_explored: 0,
        method: SearchMethod::Heuristic,
        lower_bound,
    }
}
