//! Strongly connected components and the SCC-quotient graph.

use crate::error::GraphError;
use crate::graph::{DirectedGraph, Label, VertexId};

/// Partition of `V` into the equivalence classes of mutual reachability.
///
/// Components are indexed by their smallest vertex id; vertices inside a
/// component are ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccPartition {
    components: Vec<Vec<VertexId>>,
    component_of: Vec<usize>,
}

impl SccPartition {
    /// Builds a partition from arbitrary disjoint groups, normalizing the
    /// order. Fails unless the groups cover `0..vertex_count` exactly once.
    pub fn from_components(
        vertex_count: usize,
        mut components: Vec<Vec<VertexId>>,
    ) -> Result<Self, GraphError> {
        for c in &mut components {
            c.sort_unstable();
        }
        components.retain(|c| !c.is_empty());
        components.sort_unstable_by_key(|c| c[0]);
        let mut component_of = vec![usize::MAX; vertex_count];
        for (i, c) in components.iter().enumerate() {
            for &v in c {
                if v.index() >= vertex_count {
                    return Err(GraphError::InvalidPartition(format!(
                        "vertex {v} is outside the graph"
                    )));
                }
                if component_of[v.index()] != usize::MAX {
                    return Err(GraphError::InvalidPartition(format!(
                        "vertex {v} appears in two components"
                    )));
                }
                component_of[v.index()] = i;
            }
        }
        if let Some(v) = component_of.iter().position(|&c| c == usize::MAX) {
            return Err(GraphError::InvalidPartition(format!(
                "vertex {} is not covered",
                VertexId::new(v)
            )));
        }
        Ok(SccPartition {
            components,
            component_of,
        })
    }

    pub fn components(&self) -> &[Vec<VertexId>] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component_of(&self, v: VertexId) -> usize {
        self.component_of[v.index()]
    }

    pub fn component(&self, index: usize) -> &[VertexId] {
        &self.components[index]
    }

    pub fn largest_size(&self) -> usize {
        self.components.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Tarjan's algorithm with an explicit call stack.
pub fn scc_decompose<L: Label>(g: &DirectedGraph<L>) -> SccPartition {
    let components = tarjan(g, &vec![true; g.vertex_count()]);
    SccPartition::from_components(g.vertex_count(), components)
        .expect("tarjan output is a partition")
}

/// Vertices of the masked subgraph that lie on at least one cycle.
pub(crate) fn cyclic_vertices<L: Label>(g: &DirectedGraph<L>, alive: &[bool]) -> Vec<bool> {
    let mut cyclic = vec![false; g.vertex_count()];
    for comp in tarjan(g, alive) {
        if comp.len() > 1 || g.has_arc(comp[0], comp[0]) {
            for v in comp {
                cyclic[v.index()] = true;
            }
        }
    }
    cyclic
}

/// Strongly connected components of the subgraph induced by `alive`.
fn tarjan<L: Label>(g: &DirectedGraph<L>, alive: &[bool]) -> Vec<Vec<VertexId>> {
    const UNVISITED: u32 = u32::MAX;
    let n = g.vertex_count();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<VertexId> = Vec::new();
    // (vertex, position of the next successor to explore)
    let mut calls: Vec<(VertexId, usize)> = Vec::new();
    let mut next_index = 0u32;
    let mut components = Vec::new();

    for root in g.vertices() {
        if !alive[root.index()] || index[root.index()] != UNVISITED {
            continue;
        }
        calls.push((root, 0));
        index[root.index()] = next_index;
        low[root.index()] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root.index()] = true;

        while let Some(&mut (v, ref mut pos)) = calls.last_mut() {
            let succ = g.successors(v);
            if *pos < succ.len() {
                let w = succ[*pos];
                *pos += 1;
                if !alive[w.index()] {
                    continue;
                }
                if index[w.index()] == UNVISITED {
                    index[w.index()] = next_index;
                    low[w.index()] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w.index()] = true;
                    calls.push((w, 0));
                } else if on_stack[w.index()] {
                    low[v.index()] = low[v.index()].min(index[w.index()]);
                }
                continue;
            }
            calls.pop();
            if let Some(&(parent, _)) = calls.last() {
                low[parent.index()] = low[parent.index()].min(low[v.index()]);
            }
            if low[v.index()] == index[v.index()] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w.index()] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                components.push(comp);
            }
        }
    }
    components
}

/// The SCC-quotient graph `G′`: one vertex per component, labelled by the
/// component index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGraph {
    graph: DirectedGraph<usize>,
    partition: SccPartition,
}

impl QuotientGraph {
    pub fn graph(&self) -> &DirectedGraph<usize> {
        &self.graph
    }

    pub fn partition(&self) -> &SccPartition {
        &self.partition
    }

    /// Indices of the source components.
    pub fn source_components(&self) -> Vec<usize> {
        self.graph
            .sources()
            .into_iter()
            .map(|v| *self.graph.label(v))
            .collect()
    }

    /// Quotient vertex standing for component `index`.
    pub fn vertex_of_component(&self, index: usize) -> VertexId {
        VertexId::new(index)
    }
}

/// Contracts every component of `partition` to a single vertex.
///
/// `partition` must be the SCC partition of `g`; anything else is rejected.
pub fn quotient<L: Label>(
    g: &DirectedGraph<L>,
    partition: &SccPartition,
) -> Result<QuotientGraph, GraphError> {
    if partition.component_of.len() != g.vertex_count() {
        return Err(GraphError::InvalidPartition(format!(
            "partition covers {} vertices, graph has {}",
            partition.component_of.len(),
            g.vertex_count()
        )));
    }
    let actual = scc_decompose(g);
    if &actual != partition {
        return Err(GraphError::InvalidPartition(
            "groups are not the strongly connected components of the graph".into(),
        ));
    }
    Ok(quotient_unchecked(g, actual))
}

pub(crate) fn quotient_unchecked<L: Label>(
    g: &DirectedGraph<L>,
    partition: SccPartition,
) -> QuotientGraph {
    let k = partition.len();
    let mut succ = vec![Vec::new(); k];
    for (u, v) in g.arcs() {
        let (cu, cv) = (partition.component_of(u), partition.component_of(v));
        if cu != cv {
            succ[cu].push(VertexId::new(cv));
        }
    }
    let graph = DirectedGraph::from_parts((0..k).collect(), succ);
    debug_assert!(graph.is_acyclic());
    QuotientGraph { graph, partition }
}

/// `quotient(g, scc_decompose(g))`.
pub fn condense<L: Label>(g: &DirectedGraph<L>) -> QuotientGraph {
    quotient_unchecked(g, scc_decompose(g))
}
