//! Dictionaries as sets of entries `(w, d_w)` and their associated graphs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{DictError, IngestError};
use crate::graph::DirectedGraph;

/// One definition: a word and the set of words defining it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Entry {
    definiendum: String,
    definientes: BTreeSet<String>,
}

impl Entry {
    /// Repeated definientes collapse.
    pub fn new<I, S>(definiendum: impl Into<String>, definientes: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Entry {
            definiendum: definiendum.into(),
            definientes: definientes.into_iter().map(Into::into).collect(),
        }
    }

    pub fn definiendum(&self) -> &str {
        &self.definiendum
    }

    pub fn definientes(&self) -> &BTreeSet<String> {
        &self.definientes
    }
}

/// A validated, closed dictionary with one entry per word.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Dictionary {
    entries: BTreeMap<String, Entry>,
}

#[derive(Serialize, Deserialize)]
struct JsonEntry {
    word: String,
    definition: Vec<String>,
}

impl Dictionary {
    /// Checks every dictionary rule and builds the dictionary.
    ///
    /// Per-entry rules are checked in input order; closure is checked last
    /// and reports every missing word.
    pub fn validate(entries: impl IntoIterator<Item = Entry>) -> Result<Self, DictError> {
        let mut map = BTreeMap::new();
        for entry in entries {
            if entry.definientes.is_empty() {
                return Err(DictError::EmptyDefinition {
                    word: entry.definiendum,
                });
            }
            if entry.definientes.contains(&entry.definiendum) {
                return Err(DictError::SelfDefinition {
                    word: entry.definiendum,
                });
            }
            if map.contains_key(&entry.definiendum) {
                return Err(DictError::DuplicateDefiniendum {
                    word: entry.definiendum,
                });
            }
            map.insert(entry.definiendum.clone(), entry);
        }
        let missing: BTreeSet<&String> = map
            .values()
            .flat_map(|e| e.definientes.iter())
            .filter(|w| !map.contains_key(*w))
            .collect();
        if !missing.is_empty() {
            return Err(DictError::NotClosed {
                missing: missing.into_iter().cloned().collect(),
            });
        }
        Ok(Dictionary { entries: map })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, word: &str) -> Option<&Entry> {
        self.entries.get(word)
    }

    /// Entries in word order.
    pub fn entries(&self) -> impl ExactSizeIterator<Item = &Entry> {
        self.entries.values()
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// The associated graph: `V = W`, and an arc `u -> v` whenever `u`
    /// occurs in the definition of `v`.
    pub fn associated_graph(&self) -> DirectedGraph {
        let arcs = self.entries.values().flat_map(|e| {
            e.definientes
                .iter()
                .map(move |d| (d.clone(), e.definiendum.clone()))
        });
        let g = DirectedGraph::new(self.entries.keys().cloned(), arcs);
        debug_assert!(g.self_loops().is_empty());
        debug_assert!(g.sources().is_empty());
        g
    }

    /// Rebuilds a dictionary from the in-neighbourhoods of a graph.
    pub fn from_associated_graph(g: &DirectedGraph) -> Result<Self, DictError> {
        Dictionary::validate(g.vertices().map(|v| {
            Entry::new(
                g.label(v).clone(),
                g.predecessors(v).iter().map(|&p| g.label(p).clone()),
            )
        }))
    }

    /// Canonical text form: one `word<TAB>definiens definiens …` line per
    /// entry, both levels sorted.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in self.entries.values() {
            let defs: Vec<&str> = e.definientes.iter().map(String::as_str).collect();
            let _ = writeln!(out, "{}\t{}", e.definiendum, defs.join(" "));
        }
        out
    }

    /// Parses the canonical text form. Lines starting with `#` and blank
    /// lines are skipped.
    pub fn from_text(text: &str) -> Result<Self, IngestError> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            let (word, defs) = line.split_once('\t').ok_or_else(|| IngestError::Parse {
                line: i + 1,
                message: "expected `word<TAB>definition`".into(),
            })?;
            if word.is_empty() {
                return Err(IngestError::Parse {
                    line: i + 1,
                    message: "empty headword".into(),
                });
            }
            entries.push(Entry::new(word, defs.split_whitespace()));
        }
        Ok(Dictionary::validate(entries)?)
    }

    /// Canonical JSON form: `[{"word": w, "definition": [..]}, ..]`.
    pub fn to_json(&self) -> String {
        let rows: Vec<JsonEntry> = self
            .entries
            .values()
            .map(|e| JsonEntry {
                word: e.definiendum.clone(),
                definition: e.definientes.iter().cloned().collect(),
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&rows).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, IngestError> {
        let rows: Vec<JsonEntry> = serde_json::from_str(text)?;
        Ok(Dictionary::validate(
            rows.into_iter().map(|r| Entry::new(r.word, r.definition)),
        )?)
    }
}
