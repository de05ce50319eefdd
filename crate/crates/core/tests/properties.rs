//! Property tests checked against brute-force oracles on small graphs.

use std::collections::BTreeSet;

use proptest::prelude::*;

use lexkernel::dict::Dictionary;
use lexkernel::graph::{DirectedGraph, Label, VertexId};
use lexkernel::grounding::{
    greedy_grounding_set, is_grounding_set, minimum_grounding_sets, SearchLimits,
};
use lexkernel::ingest::{normalize, NormalizeOptions, RawDictionary, RawFormat};
use lexkernel::kernel::{grounding_kernel, kernel_core, scc_hierarchy};
use lexkernel::levels::acyclic_levels;
use lexkernel::scc::{condense, scc_decompose};
use lexkernel::synth;

fn name(i: usize) -> String {
    format!("v{i:02}")
}

fn build(n: usize, arcs: &[(usize, usize)]) -> DirectedGraph {
    DirectedGraph::new(
        (0..n).map(name),
        arcs.iter().map(|&(a, b)| (name(a), name(b))),
    )
}

fn graph_strategy(max_n: usize, loops: bool) -> impl Strategy<Value = DirectedGraph> {
    (2..=max_n)
        .prop_flat_map(move |n| (Just(n), prop::collection::vec((0..n, 0..n), 0..=3 * n)))
        .prop_map(move |(n, arcs)| {
            let arcs: Vec<_> = arcs.into_iter().filter(|(a, b)| loops || a != b).collect();
            build(n, &arcs)
        })
}

/// `reach[u][v]`: a path of length ≥ 1 leads from u to v.
#[allow(clippy::needless_range_loop)]
fn closure(g: &DirectedGraph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut r = vec![vec![false; n]; n];
    for (u, v) in g.arcs() {
        r[u.index()][v.index()] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

/// Acyclicity of the subgraph on `keep`, by repeatedly deleting vertices
/// with no remaining predecessor.
fn acyclic_on<L: Label>(g: &DirectedGraph<L>, keep: &[bool]) -> bool {
    let mut alive = keep.to_vec();
    loop {
        let removable: Vec<usize> = (0..alive.len())
            .filter(|&i| alive[i] && g.predecessors(vid(g, i)).iter().all(|p| !alive[p.index()]))
            .collect();
        if removable.is_empty() {
            return alive.iter().all(|a| !a);
        }
        for i in removable {
            alive[i] = false;
        }
    }
}

fn vid<L: Label>(g: &DirectedGraph<L>, i: usize) -> VertexId {
    g.vertices().nth(i).unwrap()
}

fn brute_force_mgs(g: &DirectedGraph) -> (usize, Vec<Vec<String>>) {
    let n = g.vertex_count();
    for k in 0..=n {
        let mut found = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let keep: Vec<bool> = (0..n).map(|i| mask & (1 << i) == 0).collect();
            if acyclic_on(g, &keep) {
                found.push(
                    (0..n)
                        .filter(|&i| !keep[i])
                        .map(|i| g.labels()[i].clone())
                        .collect::<Vec<_>>(),
                );
            }
        }
        if !found.is_empty() {
            found.sort();
            return (k, found);
        }
    }
    unreachable!("deleting every vertex always works")
}

/// Vertices that can reach a vertex lying on a cycle.
fn reaches_cycle(g: &DirectedGraph) -> BTreeSet<String> {
    let r = closure(g);
    let n = g.vertex_count();
    (0..n)
        .filter(|&u| (0..n).any(|c| r[c][c] && (u == c || r[u][c])))
        .map(|u| g.labels()[u].clone())
        .collect()
}

/// Out0 one sink at a time, always the smallest label first.
fn strip_one_by_one(g: &DirectedGraph) -> BTreeSet<String> {
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    while let Some(v) =
        (0..n).find(|&i| alive[i] && g.successors(vid(g, i)).iter().all(|s| !alive[s.index()]))
    {
        alive[v] = false;
    }
    (0..n)
        .filter(|&i| alive[i])
        .map(|i| g.labels()[i].clone())
        .collect()
}

fn labels(g: &DirectedGraph, vs: &[VertexId]) -> BTreeSet<String> {
    vs.iter().map(|&v| g.label(v).clone()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn scc_matches_mutual_reachability(g in graph_strategy(12, true)) {
        let p = scc_decompose(&g);
        let r = closure(&g);
        for u in g.vertices() {
            for v in g.vertices() {
                let same = p.component_of(u) == p.component_of(v);
                let mutual = u == v || (r[u.index()][v.index()] && r[v.index()][u.index()]);
                prop_assert_eq!(same, mutual);
            }
        }
    }

    #[test]
    fn quotient_is_acyclic(g in graph_strategy(12, true)) {
        let q = condense(&g);
        prop_assert!(q.graph().is_acyclic());
        prop_assert!(q.graph().self_loops().is_empty());
        prop_assert!(acyclic_on(q.graph(), &vec![true; q.graph().vertex_count()]));
    }

    #[test]
    fn sinks_and_sources(g in graph_strategy(10, true)) {
        for v in g.sinks() {
            prop_assert_eq!(g.out_degree(v), 0);
        }
        for v in g.sources() {
            prop_assert_eq!(g.in_degree(v), 0);
        }
        let sinks = g.vertices().filter(|&v| g.out_degree(v) == 0).count();
        prop_assert_eq!(sinks, g.sinks().len());
    }

    #[test]
    fn density_in_open_interval(g in graph_strategy(10, false)) {
        prop_assume!(g.arc_count() > 0);
        let d = g.density().unwrap();
        prop_assert!(d > 0.0 && d < 1.0);
        let n = g.vertex_count() as f64;
        prop_assert_eq!(d, g.arc_count() as f64 / (n * n));
    }

    #[test]
    fn levels_do_not_depend_on_vertex_order(
        n in 2usize..10,
        seed in any::<u64>(),
        perm_seed in any::<u64>(),
    ) {
        // A random DAG: arcs go from lower to higher index.
        use rand::{Rng, seq::SliceRandom};
        let mut rng = synth::rng(seed);
        let mut arcs = Vec::new();
        for v in 1..n {
            for u in 0..v {
                if rng.gen_bool(0.35) {
                    arcs.push((u, v));
                }
            }
        }
        let base: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();

        // Relabel through a random permutation so that vertex ids (which
        // follow label order) are processed in a different order.
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut synth::rng(perm_seed));
        let g1 = build(n, &arcs);
        let g2 = build(n, &arcs.iter().map(|&(a, b)| (perm[a], perm[b])).collect::<Vec<_>>());
        let b1: Vec<_> = base.iter().map(|&i| g1.vertex(&name(i)).unwrap()).collect();
        let b2: Vec<_> = base.iter().map(|&i| g2.vertex(&name(perm[i])).unwrap()).collect();
        let l1 = acyclic_levels(&g1, &b1).unwrap();
        let l2 = acyclic_levels(&g2, &b2).unwrap();

        // Fixed-point oracle of the level recurrence.
        let mut expect = vec![0u32; n];
        for _ in 0..n {
            for v in 0..n {
                if base.contains(&v) {
                    continue;
                }
                expect[v] = 1 + arcs
                    .iter()
                    .filter(|&&(_, b)| b == v)
                    .map(|&(a, _)| if base.contains(&a) { 0 } else { expect[a] })
                    .max()
                    .unwrap_or(0);
            }
        }
        for i in 0..n {
            prop_assert_eq!(l1.get(g1.vertex(&name(i)).unwrap()), Some(expect[i]));
            prop_assert_eq!(l2.get(g2.vertex(&name(perm[i])).unwrap()), Some(expect[i]));
        }
    }

    #[test]
    fn kernel_is_what_reaches_a_cycle(g in graph_strategy(12, true)) {
        let gk = grounding_kernel(&g);
        let gk_labels = labels(&g, &gk.gk);
        prop_assert_eq!(&gk_labels, &reaches_cycle(&g));
        prop_assert_eq!(&gk_labels, &strip_one_by_one(&g));
        // Waves partition the complement.
        let stripped: usize = gk.strip_order.iter().map(Vec::len).sum();
        prop_assert_eq!(stripped + gk.gk.len(), g.vertex_count());
        // Nothing outside the kernel points into it.
        let in_gk = g.mask(&gk.gk);
        for (u, v) in g.arcs() {
            prop_assert!(in_gk[u.index()] || !in_gk[v.index()]);
        }
    }

    #[test]
    fn exact_search_matches_brute_force(g in graph_strategy(9, true)) {
        let r = minimum_grounding_sets(&g, SearchLimits::default()).unwrap();
        let (size, sets) = brute_force_mgs(&g);
        prop_assert_eq!(r.minimum_size, size);
        prop_assert!(!r.truncated);
        let mut got: Vec<Vec<String>> = r.sets.iter().map(|s| g.labels_of(s)).collect();
        got.sort();
        prop_assert_eq!(got, sets);
        prop_assert!(r.lower_bound <= size);
    }

    #[test]
    fn minimum_sets_are_minimal_and_inside_the_kernel(g in graph_strategy(10, false)) {
        let r = minimum_grounding_sets(&g, SearchLimits::default()).unwrap();
        let gk = g.mask(&grounding_kernel(&g).gk);
        for set in &r.sets {
            prop_assert!(is_grounding_set(&g, set).unwrap());
            prop_assert!(set.iter().all(|v| gk[v.index()]));
            for i in 0..set.len() {
                let mut smaller = set.clone();
                smaller.remove(i);
                prop_assert!(!is_grounding_set(&g, &smaller).unwrap());
            }
        }
    }

    #[test]
    fn adding_an_arc_never_shrinks_the_minimum(
        g in graph_strategy(9, false),
        a in 0usize..9,
        b in 0usize..9,
    ) {
        let n = g.vertex_count();
        let (a, b) = (a % n, b % n);
        prop_assume!(a != b);
        let mut arcs: Vec<(String, String)> =
            g.arcs().map(|(u, v)| (g.label(u).clone(), g.label(v).clone())).collect();
        arcs.push((name(a), name(b)));
        let bigger = DirectedGraph::new(g.labels().iter().cloned(), arcs);
        let before = minimum_grounding_sets(&g, SearchLimits::default()).unwrap().minimum_size;
        let after = minimum_grounding_sets(&bigger, SearchLimits::default()).unwrap().minimum_size;
        prop_assert!(after >= before);
    }

    #[test]
    fn greedy_is_a_grounding_set_within_bounds(g in graph_strategy(10, true)) {
        let greedy = greedy_grounding_set(&g);
        prop_assert!(is_grounding_set(&g, &greedy).unwrap());
        let exact = minimum_grounding_sets(&g, SearchLimits::default()).unwrap();
        prop_assert!(greedy.len() >= exact.minimum_size);
    }

    #[test]
    fn kernel_core_inside_kernel(seed in any::<u64>(), n in 4usize..40) {
        let mut rng = synth::rng(seed);
        let g = synth::dictionary_like(n, (n / 3).max(2), &mut rng);
        let gk = labels(&g, &grounding_kernel(&g).gk);
        let kc = labels(&g, &kernel_core(&g).kc);
        prop_assert!(kc.is_subset(&gk));
        let scc = scc_hierarchy(&g);
        prop_assert_eq!(labels(&g, &scc.at_level(0)), kc);
    }

    #[test]
    fn dictionary_round_trips(seed in any::<u64>(), n in 2usize..30) {
        let mut rng = synth::rng(seed);
        let g = synth::random_no_source(n, 4, &mut rng);
        let d = Dictionary::from_associated_graph(&g).unwrap();
        prop_assert_eq!(d.associated_graph(), g.clone());
        prop_assert_eq!(Dictionary::from_text(&d.to_text()).unwrap(), d.clone());
        prop_assert_eq!(Dictionary::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn normalization_is_idempotent_without_stemming(
        records in prop::collection::vec(
            (0usize..12, prop::collection::vec(0usize..16, 1..5)),
            1..25,
        )
    ) {
        let vocab = |i: usize| format!("word{}", (b'a' + i as u8) as char);
        let tsv: String = records
            .iter()
            .map(|(h, toks)| {
                let text: Vec<String> = toks.iter().map(|&t| vocab(t)).collect();
                format!("{}\t{}\n", vocab(*h), text.join(" "))
            })
            .collect();
        let raw = RawDictionary::parse(&tsv, RawFormat::Tsv).unwrap();
        let opts = NormalizeOptions { stem: false, keep_all_senses: false };
        let Ok((d1, _)) = normalize(&raw, opts) else {
            return Ok(());
        };
        let again = RawDictionary::parse(&d1.to_text(), RawFormat::Tsv).unwrap();
        let (d2, report) = normalize(&again, opts).unwrap();
        prop_assert_eq!(d2, d1);
        prop_assert_eq!(report.loops_removed + report.non_closed_dropped, 0);
        prop_assert_eq!(report.empty_definitions_removed + report.senses_dropped, 0);
    }
}
