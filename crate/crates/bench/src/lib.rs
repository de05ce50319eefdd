//! Shared inputs for the criterion benchmarks in `benches/`.
//!
//! Run them with `cargo bench -p lexkernel-bench`.

use lexkernel::graph::DirectedGraph;
use lexkernel::synth::{self, LexiconShape};

pub const SEED: u64 = 2009;

/// The 24,000-vertex synthetic dictionary graph.
pub fn dictionary_scale() -> DirectedGraph {
    synth::lexicon(LexiconShape::dictionary_scale(), SEED)
}

/// A graph of the same shape scaled down by `factor`.
pub fn scaled(factor: usize) -> DirectedGraph {
    let full = LexiconShape::dictionary_scale();
    let shape = LexiconShape {
        vertices: full.vertices / factor,
        arcs: full.arcs / factor,
        core: full.core / factor,
        outer: full.outer / factor,
        ..full
    };
    synth::lexicon(shape, SEED)
}

/// Every word of the stemmer fixture, for stemming throughput.
pub fn porter_words() -> Vec<&'static str> {
    include_str!("../../core/tests/fixtures/porter_sample.tsv")
        .lines()
        .filter_map(|l| l.split_once('\t').map(|(w, _)| w))
        .collect()
}
