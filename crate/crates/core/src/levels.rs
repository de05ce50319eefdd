//! Longest-path level assignment above a base set.

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::{DirectedGraph, Label, VertexId};

/// Which level function produced a [`HierarchyLevels`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HierarchyKind {
    /// Levels above an arbitrary base set.
    Base,
    /// Definitional distance from the grounding kernel.
    Gk,
    /// Definitional distance from the sources of the SCC-quotient graph.
    Scc,
    /// The SCC hierarchy of the kernel's induced subgraph.
    SccWithinGk,
}

impl HierarchyKind {
    pub fn name(self) -> &'static str {
        match self {
            HierarchyKind::Base => "base",
            HierarchyKind::Gk => "gk",
            HierarchyKind::Scc => "scc",
            HierarchyKind::SccWithinGk => "scc-within-gk",
        }
    }
}

/// Level of each vertex of the analyzed graph. Vertices outside the
/// hierarchy's domain have no level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HierarchyLevels {
    kind: HierarchyKind,
    levels: Vec<Option<u32>>,
}

impl HierarchyLevels {
    pub(crate) fn new(kind: HierarchyKind, levels: Vec<Option<u32>>) -> Self {
        HierarchyLevels { kind, levels }
    }

    pub(crate) fn with_kind(mut self, kind: HierarchyKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn kind(&self) -> HierarchyKind {
        self.kind
    }

    pub fn get(&self, v: VertexId) -> Option<u32> {
        self.levels.get(v.index()).copied().flatten()
    }

    /// Number of vertices of the analyzed graph (defined or not).
    pub fn vertex_count(&self) -> usize {
        self.levels.len()
    }

    /// `(vertex, level)` for every vertex with a level, ascending by vertex.
    pub fn iter(&self) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        self.levels
            .iter()
            .enumerate()
            .filter_map(|(i, l)| l.map(|l| (VertexId::new(i), l)))
    }

    pub fn max_level(&self) -> Option<u32> {
        self.levels.iter().flatten().copied().max()
    }

    pub fn at_level(&self, level: u32) -> Vec<VertexId> {
        self.iter()
            .filter(|&(_, l)| l == level)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn as_slice(&self) -> &[Option<u32>] {
        &self.levels
    }
}

/// Assigns level 0 to every vertex of `base` and `1 + max` of the
/// predecessors' levels to everything else, base predecessors counting as 0.
///
/// A non-base vertex without predecessors gets level 1. Every cycle of `g`
/// must lie inside `base`; otherwise an [`GraphError::UngroundedCycle`] with a
/// witness cycle is returned.
pub fn acyclic_levels<L: Label>(
    g: &DirectedGraph<L>,
    base: &[VertexId],
) -> Result<HierarchyLevels, GraphError> {
    let n = g.vertex_count();
    let in_base = g.mask(base);
    let mut levels: Vec<Option<u32>> = vec![None; n];
    for &b in base {
        levels[b.index()] = Some(0);
    }

    // Kahn over G[V - base]; `height[v]` is the max level of processed
    // non-base predecessors.
    let mut pending = vec![0usize; n];
    let mut height = vec![0u32; n];
    let mut ready = Vec::new();
    for v in g.vertices() {
        if in_base[v.index()] {
            continue;
        }
        pending[v.index()] = g
            .predecessors(v)
            .iter()
            .filter(|p| !in_base[p.index()])
            .count();
        if pending[v.index()] == 0 {
            ready.push(v);
        }
    }
    let mut done = 0usize;
    while let Some(v) = ready.pop() {
        let level = height[v.index()] + 1;
        levels[v.index()] = Some(level);
        done += 1;
        for &w in g.successors(v) {
            if in_base[w.index()] {
                continue;
            }
            height[w.index()] = height[w.index()].max(level);
            pending[w.index()] -= 1;
            if pending[w.index()] == 0 {
                ready.push(w);
            }
        }
    }

    let non_base = n - in_base.iter().filter(|&&b| b).count();
    if done < non_base {
        let stuck: Vec<bool> = (0..n).map(|i| !in_base[i] && levels[i].is_none()).collect();
        let cycle = g
            .find_cycle_within(&stuck)
            .expect("unprocessed vertices contain a cycle");
        return Err(GraphError::UngroundedCycle {
            cycle: cycle.iter().map(|&v| g.label(v).to_string()).collect(),
        });
    }
    Ok(HierarchyLevels::new(HierarchyKind::Base, levels))
}
