//! Directed graph store with interned vertex labels.
//!
//! Vertices are kept in ascending label order, so a [`VertexId`] compares the
//! same way its label does. Every set-valued query returns ids in ascending
//! order, which makes reports deterministic without extra sorting.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Anything usable as a vertex label.
pub trait Label: Clone + Ord + Hash + fmt::Display {}

impl<T: Clone + Ord + Hash + fmt::Display> Label for T {}

/// Stable handle of a vertex inside one [`DirectedGraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(u32);

impl VertexId {
    pub(crate) fn new(index: usize) -> Self {
        VertexId(u32::try_from(index).expect("more than u32::MAX vertices"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A finite directed graph `G = (V, E)` with `E` a set (no parallel arcs).
///
/// The graph is immutable once built. Self-loops can be represented; they are
/// reported by [`DirectedGraph::self_loops`] and count as cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph<L: Label = String> {
    labels: Vec<L>,
    index: HashMap<L, VertexId>,
    succ: Vec<Vec<VertexId>>,
    pred: Vec<Vec<VertexId>>,
    arc_count: usize,
}

impl<L: Label> Default for DirectedGraph<L> {
    fn default() -> Self {
        DirectedGraph {
            labels: Vec::new(),
            index: HashMap::new(),
            succ: Vec::new(),
            pred: Vec::new(),
            arc_count: 0,
        }
    }
}

impl<L: Label> DirectedGraph<L> {
    /// Builds a graph from a vertex list and an arc list.
    ///
    /// Duplicate vertices and arcs collapse; arc endpoints missing from
    /// `vertices` are added.
    pub fn new<V, A>(vertices: V, arcs: A) -> Self
    where
        V: IntoIterator<Item = L>,
        A: IntoIterator<Item = (L, L)>,
    {
        let arcs: Vec<(L, L)> = arcs.into_iter().collect();
        let mut all: BTreeSet<L> = vertices.into_iter().collect();
        for (u, v) in &arcs {
            all.insert(u.clone());
            all.insert(v.clone());
        }
        let labels: Vec<L> = all.into_iter().collect();
        let index: HashMap<L, VertexId> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), VertexId::new(i)))
            .collect();
        let mut succ = vec![Vec::new(); labels.len()];
        for (u, v) in &arcs {
            succ[index[u].index()].push(index[v]);
        }
        Self::from_successors(labels, index, succ)
    }

    /// Builds from labels already in ascending order and raw successor lists.
    pub(crate) fn from_parts(labels: Vec<L>, succ: Vec<Vec<VertexId>>) -> Self {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), VertexId::new(i)))
            .collect();
        Self::from_successors(labels, index, succ)
    }

    fn from_successors(
        labels: Vec<L>,
        index: HashMap<L, VertexId>,
        mut succ: Vec<Vec<VertexId>>,
    ) -> Self {
        let mut pred = vec![Vec::new(); labels.len()];
        let mut arc_count = 0;
        for (u, out) in succ.iter_mut().enumerate() {
            out.sort_unstable();
            out.dedup();
            arc_count += out.len();
            for &v in out.iter() {
                pred[v.index()].push(VertexId::new(u));
            }
        }
        // `pred` lists are filled in ascending `u`, hence already sorted.
        DirectedGraph {
            labels,
            index,
            succ,
            pred,
            arc_count,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        (0..self.labels.len()).map(VertexId::new)
    }

    /// All arcs `(u, v)` in ascending `(u, v)` order.
    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(u, out)| out.iter().map(move |&v| (VertexId::new(u), v)))
    }

    pub fn label(&self, v: VertexId) -> &L {
        &self.labels[v.index()]
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn vertex<Q>(&self, label: &Q) -> Option<VertexId>
    where
        L: std::borrow::Borrow<Q>,
        Q: Hash + Eq + ?Sized,
    {
        self.index.get(label).copied()
    }

    /// Labels of the given vertices, in the order given.
    pub fn labels_of<'a, I>(&'a self, vertices: I) -> Vec<L>
    where
        I: IntoIterator<Item = &'a VertexId>,
    {
        vertices
            .into_iter()
            .map(|&v| self.label(v).clone())
            .collect()
    }

    /// `N⁺(v)`, ascending.
    pub fn successors(&self, v: VertexId) -> &[VertexId] {
        &self.succ[v.index()]
    }

    /// `N⁻(v)`, ascending.
    pub fn predecessors(&self, v: VertexId) -> &[VertexId] {
        &self.pred[v.index()]
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.pred[v.index()].len()
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.succ[v.index()].len()
    }

    pub fn has_arc(&self, u: VertexId, v: VertexId) -> bool {
        self.succ[u.index()].binary_search(&v).is_ok()
    }

    /// `|E| / |V|²`, diagonal included.
    pub fn density(&self) -> Result<f64, GraphError> {
        if self.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        let n = self.vertex_count() as f64;
        Ok(self.arc_count as f64 / (n * n))
    }

    /// Vertices of out-degree zero.
    pub fn sinks(&self) -> Vec<VertexId> {
        self.vertices()
            .filter(|&v| self.out_degree(v) == 0)
            .collect()
    }

    /// Vertices of in-degree zero.
    pub fn sources(&self) -> Vec<VertexId> {
        self.vertices()
            .filter(|&v| self.in_degree(v) == 0)
            .collect()
    }

    pub fn self_loops(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.has_arc(v, v)).collect()
    }

    /// Histogram `degree -> number of vertices` for in-degrees.
    pub fn in_degree_histogram(&self) -> BTreeMap<usize, usize> {
        histogram(self.vertices().map(|v| self.in_degree(v)))
    }

    /// Histogram `degree -> number of vertices` for out-degrees.
    pub fn out_degree_histogram(&self) -> BTreeMap<usize, usize> {
        histogram(self.vertices().map(|v| self.out_degree(v)))
    }

    /// True iff the graph has no directed cycle. A self-loop is a cycle.
    pub fn is_acyclic(&self) -> bool {
        self.acyclic_within(&vec![true; self.vertex_count()])
    }

    /// Acyclicity of the subgraph induced by the vertices flagged in `alive`.
    pub(crate) fn acyclic_within(&self, alive: &[bool]) -> bool {
        let mut indeg = vec![0usize; self.vertex_count()];
        let mut remaining = 0usize;
        for v in self.vertices() {
            if !alive[v.index()] {
                continue;
            }
            remaining += 1;
            indeg[v.index()] = self
                .predecessors(v)
                .iter()
                .filter(|p| alive[p.index()])
                .count();
        }
        let mut queue: Vec<VertexId> = self
            .vertices()
            .filter(|v| alive[v.index()] && indeg[v.index()] == 0)
            .collect();
        while let Some(u) = queue.pop() {
            remaining -= 1;
            for &w in self.successors(u) {
                if alive[w.index()] {
                    indeg[w.index()] -= 1;
                    if indeg[w.index()] == 0 {
                        queue.push(w);
                    }
                }
            }
        }
        remaining == 0
    }

    /// A witness cycle, if any: a shortest cycle of the smallest cyclic
    /// strongly connected component. The first vertex is repeated implicitly.
    pub fn find_cycle(&self) -> Option<Vec<VertexId>> {
        self.find_cycle_within(&vec![true; self.vertex_count()])
    }

    pub(crate) fn find_cycle_within(&self, alive: &[bool]) -> Option<Vec<VertexId>> {
        if let Some(v) = self
            .vertices()
            .find(|&v| alive[v.index()] && self.has_arc(v, v))
        {
            return Some(vec![v]);
        }
        let (sub, back) = self.induced_subgraph(alive);
        let partition = crate::scc::scc_decompose(&sub);
        let smallest = partition
            .components()
            .iter()
            .filter(|c| c.len() > 1)
            .min_by_key(|c| c.len())?;
        let mut in_comp = vec![false; sub.vertex_count()];
        for v in smallest {
            in_comp[v.index()] = true;
        }
        let mut best: Option<Vec<VertexId>> = None;
        for &start in smallest {
            if let Some(cycle) = sub.shortest_cycle_through(start, &in_comp) {
                if best.as_ref().is_none_or(|b| cycle.len() < b.len()) {
                    let short = cycle.len() == 2;
                    best = Some(cycle);
                    if short {
                        break;
                    }
                }
            }
        }
        best.map(|c| c.into_iter().map(|v| back[v.index()]).collect())
    }

    /// Breadth-first search for the shortest cycle through `start` using only
    /// vertices flagged in `alive`.
    pub(crate) fn shortest_cycle_through(
        &self,
        start: VertexId,
        alive: &[bool],
    ) -> Option<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut parent: Vec<Option<VertexId>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        seen[start.index()] = true;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &w in self.successors(u) {
                if !alive[w.index()] {
                    continue;
                }
                if w == start {
                    let mut path = vec![u];
                    let mut cur = u;
                    while let Some(p) = parent[cur.index()] {
                        path.push(p);
                        cur = p;
                    }
                    path.reverse();
                    return Some(path);
                }
                if !seen[w.index()] {
                    seen[w.index()] = true;
                    parent[w.index()] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// `G[V']` for the vertices flagged in `keep`.
    ///
    /// Returns the subgraph and, for each of its vertices, the id it had in
    /// `self`.
    pub fn induced_subgraph(&self, keep: &[bool]) -> (DirectedGraph<L>, Vec<VertexId>) {
        assert_eq!(keep.len(), self.vertex_count());
        let mut new_id = vec![None; self.vertex_count()];
        let mut back = Vec::new();
        for v in self.vertices() {
            if keep[v.index()] {
                new_id[v.index()] = Some(VertexId::new(back.len()));
                back.push(v);
            }
        }
        let labels = back.iter().map(|&v| self.label(v).clone()).collect();
        let succ = back
            .iter()
            .map(|&v| {
                self.successors(v)
                    .iter()
                    .filter_map(|w| new_id[w.index()])
                    .collect()
            })
            .collect();
        (DirectedGraph::from_parts(labels, succ), back)
    }

    /// Convenience wrapper around [`DirectedGraph::induced_subgraph`] taking a
    /// vertex list.
    pub fn induced_by(&self, vertices: &[VertexId]) -> (DirectedGraph<L>, Vec<VertexId>) {
        self.induced_subgraph(&self.mask(vertices))
    }

    /// Membership flags for a vertex list.
    pub fn mask(&self, vertices: &[VertexId]) -> Vec<bool> {
        let mut keep = vec![false; self.vertex_count()];
        for v in vertices {
            keep[v.index()] = true;
        }
        keep
    }
}

fn histogram(values: impl Iterator<Item = usize>) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for d in values {
        *h.entry(d).or_insert(0) += 1;
    }
    h
}
