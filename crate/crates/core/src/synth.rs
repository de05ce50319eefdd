//! Seeded generators of dictionary-like graphs for tests and benchmarks.
//!
//! All generated graphs are valid associated graphs: no self-loops and no
//! sources.

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::DirectedGraph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Zero-padded names so label order equals numeric order.
fn name(i: usize, width: usize) -> String {
    format!("w{i:0width$}")
}

/// A random loopless digraph on `n` vertices where every vertex has between
/// one and `max_in` predecessors chosen uniformly among the other vertices.
pub fn random_no_source(n: usize, max_in: usize, rng: &mut impl Rng) -> DirectedGraph {
    assert!(n >= 2 && max_in >= 1);
    let width = n.to_string().len();
    let mut arcs = Vec::new();
    for v in 0..n {
        let d = rng.gen_range(1..=max_in.min(n - 1));
        for p in sample(rng, n - 1, d) {
            let u = if p >= v { p + 1 } else { p };
            arcs.push((name(u, width), name(v, width)));
        }
    }
    DirectedGraph::new((0..n).map(|i| name(i, width)), arcs)
}

/// A small dictionary-like graph: a cyclic part of `core` vertices whose
/// definitions use only core words, and an acyclic periphery of `n - core`
/// vertices defined by earlier words.
pub fn dictionary_like(n: usize, core: usize, rng: &mut impl Rng) -> DirectedGraph {
    assert!(core >= 2 && core <= n);
    let width = n.to_string().len();
    let mut arcs = Vec::new();
    for v in 0..n {
        let pool = if v < core { core } else { v };
        let d = rng.gen_range(1..=3usize.min(pool - usize::from(v < core)));
        let mut picked = 0;
        while picked < d {
            let u = rng.gen_range(0..pool);
            if u == v {
                continue;
            }
            arcs.push((name(u, width), name(v, width)));
            picked += 1;
        }
    }
    DirectedGraph::new((0..n).map(|i| name(i, width)), arcs)
}

/// Shape of a dictionary-scale synthetic graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LexiconShape {
    pub vertices: usize,
    pub arcs: usize,
    /// Size of the strongly connected core that forms the single quotient
    /// source.
    pub core: usize,
    /// Vertices in small cycles hanging off the core; together with the core
    /// they make up the grounding kernel.
    pub outer: usize,
    pub core_in_degree: usize,
    pub outer_in_degree: usize,
}

impl LexiconShape {
    /// 24,000 vertices and 240,000 arcs with a kernel of about 9% of the
    /// vertices, most of it one strongly connected core.
    pub fn dictionary_scale() -> Self {
        LexiconShape {
            vertices: 24_000,
            arcs: 240_000,
            core: 1_800,
            outer: 360,
            core_in_degree: 10,
            outer_in_degree: 6,
        }
    }

    pub fn kernel_size(&self) -> usize {
        self.core + self.outer
    }
}

/// Probability that a random core chord is answered by the reverse arc.
const RECIPROCITY: f64 = 0.5;

/// Builds a graph of the given shape.
///
/// The core is a ring plus mutually defining pairs and random chords, many
/// of them reciprocated, as in dictionaries where near-synonyms and
/// antonyms define each other; outer vertices come in 2- and
/// 3-cycles that also take definitions from the core and earlier outer
/// cycles; the periphery is acyclic, every word defined by earlier words with
/// a bias toward low indices. Arc count is exact.
pub fn lexicon(shape: LexiconShape, seed: u64) -> DirectedGraph {
    let LexiconShape {
        vertices: n,
        arcs: m,
        core,
        outer,
        core_in_degree,
        outer_in_degree,
    } = shape;
    let kernel = core + outer;
    assert!(core > core_in_degree && kernel < n && outer != 1);
    let mut rng = rng(seed);
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];

    // Ring, then mutual pairs (2k, 2k+1), then random chords of which a
    // share is reciprocated.
    for (v, p) in preds.iter_mut().enumerate().take(core) {
        p.push((v + core - 1) % core);
    }
    for v in (0..core - 1).step_by(2) {
        if !preds[v].contains(&(v + 1)) {
            preds[v].push(v + 1);
        }
    }
    for v in 0..core {
        while preds[v].len() < core_in_degree {
            let u = rng.gen_range(0..core);
            if u == v || preds[v].contains(&u) {
                continue;
            }
            preds[v].push(u);
            if preds[u].len() < core_in_degree
                && !preds[u].contains(&v)
                && rng.gen_bool(RECIPROCITY)
            {
                preds[u].push(v);
            }
        }
    }

    let mut start = core;
    while start < kernel {
        let len = match kernel - start {
            3 => 3,
            left if left >= 5 => rng.gen_range(2..=3usize),
            _ => 2,
        };
        let cycle: Vec<usize> = (start..start + len).collect();
        for (i, &v) in cycle.iter().enumerate() {
            let prev = cycle[(i + len - 1) % len];
            if prev != v {
                preds[v].push(prev);
            }
            preds[v].push(rng.gen_range(0..core));
            while preds[v].len() < outer_in_degree {
                let u = rng.gen_range(0..start);
                if !preds[v].contains(&u) {
                    preds[v].push(u);
                }
            }
        }
        start += len;
    }

    let fixed: usize = preds.iter().map(Vec::len).sum();
    let periphery = n - kernel;
    assert!(m >= fixed + periphery, "arc budget too small for the shape");
    let remaining = m - fixed;
    let base = remaining / periphery;
    let mut degree: Vec<usize> = (0..periphery)
        .map(|_| {
            let spread = base.min(3);
            (base - spread + rng.gen_range(0..=2 * spread)).max(1)
        })
        .collect();
    let mut total: usize = degree.iter().sum();
    while total != remaining {
        let i = rng.gen_range(0..periphery);
        if total < remaining {
            degree[i] += 1;
            total += 1;
        } else if degree[i] > 1 {
            degree[i] -= 1;
            total -= 1;
        }
    }
    for (i, &d) in degree.iter().enumerate() {
        let v = kernel + i;
        while preds[v].len() < d.min(v) {
            let x: f64 = rng.gen();
            let u = ((x * x) * v as f64) as usize;
            if !preds[v].contains(&u) {
                preds[v].push(u);
            }
        }
    }

    // Shuffle names so that roles are not visible from label order.
    let width = n.to_string().len();
    let mut names: Vec<String> = (0..n).map(|i| name(i, width)).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        names.swap(i, j);
    }
    let arcs = preds.iter().enumerate().flat_map(|(v, ps)| {
        let names = &names;
        ps.iter()
            .map(move |&u| (names[u].clone(), names[v].clone()))
    });
    DirectedGraph::new(names.iter().cloned(), arcs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::grounding_kernel;
    use crate::scc::scc_decompose;

    #[test]
    fn small_generators_are_valid_dictionaries() {
        let mut r = rng(7);
        for _ in 0..50 {
            for g in [
                random_no_source(8, 3, &mut r),
                dictionary_like(20, 6, &mut r),
            ] {
                assert!(g.sources().is_empty());
                assert!(g.self_loops().is_empty());
            }
        }
    }

    #[test]
    fn lexicon_shape_is_respected() {
        let shape = LexiconShape {
            vertices: 3000,
            arcs: 30_000,
            core: 220,
            outer: 50,
            core_in_degree: 8,
            outer_in_degree: 5,
        };
        let g = lexicon(shape, 1);
        assert_eq!(g.vertex_count(), 3000);
        assert_eq!(g.arc_count(), 30_000);
        assert!(g.sources().is_empty());
        assert!(g.self_loops().is_empty());
        assert_eq!(grounding_kernel(&g).gk.len(), 270);
        assert_eq!(scc_decompose(&g).largest_size(), 220);
        assert_eq!(lexicon(shape, 1), g);
    }
}
