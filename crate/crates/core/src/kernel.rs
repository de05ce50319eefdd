//! Grounding kernel, kernel core and the definitional-distance hierarchies.

use crate::error::KernelError;
use crate::graph::{DirectedGraph, Label, VertexId};
use crate::levels::{acyclic_levels, HierarchyKind, HierarchyLevels};
use crate::scc::{condense, QuotientGraph};

/// `Out0(G) = G[V - Sinks(G)]`. Also returns the original id of every
/// surviving vertex.
pub fn out0<L: Label>(g: &DirectedGraph<L>) -> (DirectedGraph<L>, Vec<VertexId>) {
    let keep: Vec<bool> = g.vertices().map(|v| g.out_degree(v) > 0).collect();
    g.induced_subgraph(&keep)
}

/// Result of iterating [`out0`] to its fixpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundingKernel {
    /// Surviving vertices, ascending.
    pub gk: Vec<VertexId>,
    /// Sinks removed at each iteration, in removal order.
    pub strip_order: Vec<Vec<VertexId>>,
}

/// Removes all current sinks at once, repeatedly, until none are left.
pub fn grounding_kernel<L: Label>(g: &DirectedGraph<L>) -> GroundingKernel {
    let n = g.vertex_count();
    let mut out_left: Vec<usize> = g.vertices().map(|v| g.out_degree(v)).collect();
    let mut removed = vec![false; n];
    let mut wave: Vec<VertexId> = g.vertices().filter(|v| out_left[v.index()] == 0).collect();
    let mut strip_order = Vec::new();
    while !wave.is_empty() {
        for &v in &wave {
            removed[v.index()] = true;
        }
        let mut next = Vec::new();
        for &v in &wave {
            for &p in g.predecessors(v) {
                if removed[p.index()] {
                    continue;
                }
                out_left[p.index()] -= 1;
                if out_left[p.index()] == 0 {
                    next.push(p);
                }
            }
        }
        next.sort_unstable();
        strip_order.push(std::mem::replace(&mut wave, next));
    }
    let gk = g.vertices().filter(|v| !removed[v.index()]).collect();
    GroundingKernel { gk, strip_order }
}

/// The sources of the SCC-quotient graph and the vertices they contain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelCore {
    /// Union of all source components, ascending.
    pub kc: Vec<VertexId>,
    /// Indices of the source components in [`KernelCore::quotient`].
    pub source_components: Vec<usize>,
    pub quotient: QuotientGraph,
}

pub fn kernel_core<L: Label>(g: &DirectedGraph<L>) -> KernelCore {
    let quotient = condense(g);
    kernel_core_of(quotient)
}

fn kernel_core_of(quotient: QuotientGraph) -> KernelCore {
    let source_components = quotient.source_components();
    let mut kc: Vec<VertexId> = source_components
        .iter()
        .flat_map(|&c| quotient.partition().component(c).iter().copied())
        .collect();
    kc.sort_unstable();
    KernelCore {
        kc,
        source_components,
        quotient,
    }
}

/// Everything the kernel analysis produces for one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelDecomposition {
    pub gk: Vec<VertexId>,
    pub kc: Vec<VertexId>,
    pub strip_order: Vec<Vec<VertexId>>,
    pub source_components: Vec<usize>,
    pub quotient: QuotientGraph,
}

impl KernelDecomposition {
    pub fn compute<L: Label>(g: &DirectedGraph<L>) -> Self {
        let GroundingKernel { gk, strip_order } = grounding_kernel(g);
        let KernelCore {
            kc,
            source_components,
            quotient,
        } = kernel_core(g);
        KernelDecomposition {
            gk,
            kc,
            strip_order,
            source_components,
            quotient,
        }
    }
}

/// Level 0 on the kernel, `1 + max` over predecessors elsewhere.
pub fn gk_hierarchy<L: Label>(g: &DirectedGraph<L>) -> Result<HierarchyLevels, KernelError> {
    gk_hierarchy_from(g, &grounding_kernel(g).gk)
}

pub(crate) fn gk_hierarchy_from<L: Label>(
    g: &DirectedGraph<L>,
    gk: &[VertexId],
) -> Result<HierarchyLevels, KernelError> {
    Ok(acyclic_levels(g, gk)?.with_kind(HierarchyKind::Gk))
}

/// Level 0 on source components of the quotient, `1 + max` over
/// predecessor components elsewhere; every vertex inherits its component's
/// level.
pub fn scc_hierarchy<L: Label>(g: &DirectedGraph<L>) -> HierarchyLevels {
    scc_hierarchy_from(&condense(g))
}

pub(crate) fn scc_hierarchy_from(quotient: &QuotientGraph) -> HierarchyLevels {
    let dag = quotient.graph();
    let component_levels =
        acyclic_levels(dag, &dag.sources()).expect("a quotient graph is acyclic");
    let partition = quotient.partition();
    let n: usize = partition.components().iter().map(Vec::len).sum();
    let mut levels = vec![None; n];
    for (c, members) in partition.components().iter().enumerate() {
        let level = component_levels.get(quotient.vertex_of_component(c));
        for v in members {
            levels[v.index()] = level;
        }
    }
    HierarchyLevels::new(HierarchyKind::Scc, levels)
}

/// The SCC hierarchy of `G[GK]`, reported against the vertices of `g`.
/// Vertices outside the kernel have no level.
pub fn scc_hierarchy_within_gk<L: Label>(
    g: &DirectedGraph<L>,
) -> Result<HierarchyLevels, KernelError> {
    scc_hierarchy_within(g, &grounding_kernel(g).gk)
}

pub(crate) fn scc_hierarchy_within<L: Label>(
    g: &DirectedGraph<L>,
    gk: &[VertexId],
) -> Result<HierarchyLevels, KernelError> {
    if gk.is_empty() {
        return Err(KernelError::EmptyKernel);
    }
    let (sub, back) = g.induced_by(gk);
    let inner = scc_hierarchy(&sub);
    let mut levels = vec![None; g.vertex_count()];
    for (v, l) in inner.iter() {
        levels[back[v.index()].index()] = Some(l);
    }
    Ok(HierarchyLevels::new(HierarchyKind::SccWithinGk, levels))
}

/// Kernel decomposition plus all three hierarchies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelReport {
    pub decomposition: KernelDecomposition,
    pub gk_levels: HierarchyLevels,
    pub scc_levels: HierarchyLevels,
    /// `None` when the kernel is empty.
    pub scc_within_gk_levels: Option<HierarchyLevels>,
}

impl KernelReport {
    pub fn compute<L: Label>(g: &DirectedGraph<L>) -> Result<Self, KernelError> {
        let decomposition = KernelDecomposition::compute(g);
        let gk_levels = gk_hierarchy_from(g, &decomposition.gk)?;
        let scc_levels = scc_hierarchy_from(&decomposition.quotient);
        let scc_within_gk_levels = match scc_hierarchy_within(g, &decomposition.gk) {
            Ok(l) => Some(l),
            Err(KernelError::EmptyKernel) => None,
            Err(e) => return Err(e),
        };
        Ok(KernelReport {
            decomposition,
            gk_levels,
            scc_levels,
            scc_within_gk_levels,
        })
    }

    pub fn levels(&self, kind: HierarchyKind) -> Option<&HierarchyLevels> {
        match kind {
            HierarchyKind::Gk => Some(&self.gk_levels),
            HierarchyKind::Scc => Some(&self.scc_levels),
            HierarchyKind::SccWithinGk => self.scc_within_gk_levels.as_ref(),
            HierarchyKind::Base => None,
        }
    }
}
