//! A fourteen-word toy dictionary used throughout the tests and examples.
//!
//! Its kernel is `{bad, dark, good, light, no, not}` and its kernel core is
//! `{no, not}`.

use crate::dict::Dictionary;
use crate::graph::DirectedGraph;

/// The toy dictionary in `word<TAB>definition` form, file order as written.
pub const TOY_TSV: &str = "\
apple\tred fruit
bad\tnot good
banana\tyellow fruit
color\tlight dark
dark\tnot light
edible\tgood
fruit\tedible
good\tnot bad
light\tnot dark
no\tnot
not\tno
red\tdark color
tomato\tred fruit
yellow\tlight color
";

pub fn dictionary() -> Dictionary {
    Dictionary::from_text(TOY_TSV).expect("toy dictionary is valid")
}

pub fn graph() -> DirectedGraph {
    dictionary().associated_graph()
}
