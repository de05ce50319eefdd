//! Raw dictionary parsing and normalization into a valid [`Dictionary`].
//!
//! Normalization runs in a fixed order:
//!
//! 1. stem headwords and definition tokens,
//! 2. keep the first sense of every (stemmed) headword,
//! 3. drop self-references,
//! 4. drop entries whose definition became empty,
//! 5. drop definientes that have no entry,
//!
//! repeating 3–5 until nothing changes.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dict::{Dictionary, Entry};
use crate::error::IngestError;
use crate::porter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RawFormat {
    Tsv,
    Json,
}

/// One sense of one headword, as read from the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawRecord {
    pub headword: String,
    pub sense: u32,
    pub text: String,
    pub tokens: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawDictionary {
    pub records: Vec<RawRecord>,
}

/// Lowercases and splits on every non-alphabetic character.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphabetic())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
        .collect()
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonDefinition {
    Text(String),
    Tokens(Vec<String>),
}

#[derive(Deserialize)]
struct JsonRecord {
    #[serde(alias = "headword")]
    word: String,
    sense: Option<u32>,
    definition: JsonDefinition,
}

impl RawDictionary {
    /// Parses `headword<TAB>definition` or `headword<TAB>sense<TAB>definition`
    /// lines (TSV), or a JSON array of `{"word", "sense"?, "definition"}`
    /// objects where `definition` is a string or a list of words.
    ///
    /// Records without an explicit sense get the next free sense number of
    /// their headword.
    pub fn parse(text: &str, format: RawFormat) -> Result<Self, IngestError> {
        let mut builder = Builder::default();
        match format {
            RawFormat::Tsv => {
                for (i, line) in text.lines().enumerate() {
                    let line_no = i + 1;
                    let line = line.strip_suffix('\r').unwrap_or(line);
                    if line.starts_with('#') || line.trim().is_empty() {
                        continue;
                    }
                    let fields: Vec<&str> = line.split('\t').collect();
                    let (headword, sense, definition) = match fields.as_slice() {
                        [h, d] => (*h, None, *d),
                        [h, s, d] => {
                            let sense = parse_sense(s).ok_or_else(|| IngestError::Parse {
                                line: line_no,
                                message: format!("invalid sense index {s:?}"),
                            })?;
                            (*h, Some(sense), *d)
                        }
                        _ => {
                            return Err(IngestError::Parse {
                                line: line_no,
                                message: format!(
                                    "expected 2 or 3 tab-separated fields, found {}",
                                    fields.len()
                                ),
                            })
                        }
                    };
                    builder.push(line_no, headword, sense, definition.to_string(), None)?;
                }
            }
            RawFormat::Json => {
                let rows: Vec<JsonRecord> = serde_json::from_str(text)?;
                for (i, row) in rows.into_iter().enumerate() {
                    if row.sense == Some(0) {
                        return Err(IngestError::Parse {
                            line: i + 1,
                            message: "sense indices start at 1".into(),
                        });
                    }
                    let (text, tokens) = match row.definition {
                        JsonDefinition::Text(t) => (t, None),
                        JsonDefinition::Tokens(ws) => {
                            let tokens = ws.iter().flat_map(|w| tokenize(w)).collect();
                            (ws.join(" "), Some(tokens))
                        }
                    };
                    builder.push(i + 1, &row.word, row.sense, text, tokens)?;
                }
            }
        }
        Ok(RawDictionary {
            records: builder.records,
        })
    }

    /// Renders as three-column TSV.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let _ = writeln!(out, "{}\t{}\t{}", r.headword, r.sense, r.tokens.join(" "));
        }
        out
    }
}

fn parse_sense(s: &str) -> Option<u32> {
    s.trim().parse::<u32>().ok().filter(|&n| n >= 1)
}

#[derive(Default)]
struct Builder {
    records: Vec<RawRecord>,
    senses: HashMap<String, BTreeSet<u32>>,
}

impl Builder {
    fn push(
        &mut self,
        line: usize,
        headword: &str,
        sense: Option<u32>,
        text: String,
        tokens: Option<Vec<String>>,
    ) -> Result<(), IngestError> {
        let headword = headword.trim().to_lowercase();
        if headword.is_empty() {
            return Err(IngestError::Parse {
                line,
                message: "empty headword".into(),
            });
        }
        let used = self.senses.entry(headword.clone()).or_default();
        let sense = match sense {
            Some(s) => s,
            None => used.last().map_or(1, |m| m + 1),
        };
        if !used.insert(sense) {
            return Err(IngestError::DuplicateSense {
                line,
                headword,
                sense,
            });
        }
        let tokens = tokens.unwrap_or_else(|| tokenize(&text));
        self.records.push(RawRecord {
            headword,
            sense,
            text,
            tokens,
        });
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizeOptions {
    /// Apply the Porter stemmer to headwords and definition tokens.
    pub stem: bool,
    /// Merge every sense of a headword instead of keeping the first one.
    pub keep_all_senses: bool,
}

impl Default for NormalizeOptions {
    fn default() -> Self {
        NormalizeOptions {
            stem: true,
            keep_all_senses: false,
        }
    }
}

/// What normalization removed or merged.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationReport {
    /// Distinct headwords minus distinct stemmed headwords.
    pub stems_merged: usize,
    /// Records discarded by the first-sense rule.
    pub senses_dropped: usize,
    /// Self-references removed from definitions.
    pub loops_removed: usize,
    /// Entries dropped because their definition was (or became) empty.
    pub empty_definitions_removed: usize,
    /// Definientes dropped because they have no entry.
    pub non_closed_dropped: usize,
    /// Passes of the loop/empty/closure cycle that changed something.
    pub iterations: usize,
}

/// Turns raw records into a valid, closed dictionary.
pub fn normalize(
    raw: &RawDictionary,
    options: NormalizeOptions,
) -> Result<(Dictionary, NormalizationReport), IngestError> {
    let mut report = NormalizationReport::default();
    let stem = |w: &str| {
        if options.stem {
            porter::stem(w)
        } else {
            w.to_string()
        }
    };

    let original: BTreeSet<&str> = raw.records.iter().map(|r| r.headword.as_str()).collect();

    // headword -> (sense, file position, definition)
    let mut chosen: BTreeMap<String, (u32, usize, BTreeSet<String>)> = BTreeMap::new();
    for (pos, record) in raw.records.iter().enumerate() {
        let headword = stem(&record.headword);
        let tokens: BTreeSet<String> = record.tokens.iter().map(|t| stem(t)).collect();
        match chosen.get_mut(&headword) {
            None => {
                chosen.insert(headword, (record.sense, pos, tokens));
            }
            Some(slot) if options.keep_all_senses => {
                slot.2.extend(tokens);
            }
            Some(slot) => {
                report.senses_dropped += 1;
                if (record.sense, pos) < (slot.0, slot.1) {
                    *slot = (record.sense, pos, tokens);
                }
            }
        }
    }
    report.stems_merged = original.len() - chosen.len();

    let mut defs: BTreeMap<String, BTreeSet<String>> =
        chosen.into_iter().map(|(w, (_, _, d))| (w, d)).collect();

    loop {
        let mut changed = false;
        for (word, def) in defs.iter_mut() {
            if def.remove(word) {
                report.loops_removed += 1;
                changed = true;
            }
        }
        let before = defs.len();
        defs.retain(|_, def| !def.is_empty());
        let emptied = before - defs.len();
        report.empty_definitions_removed += emptied;
        changed |= emptied > 0;

        let known: BTreeSet<String> = defs.keys().cloned().collect();
        for def in defs.values_mut() {
            let before = def.len();
            def.retain(|w| known.contains(w));
            let dropped = before - def.len();
            report.non_closed_dropped += dropped;
            changed |= dropped > 0;
        }
        if !changed {
            break;
        }
        report.iterations += 1;
    }

    if defs.is_empty() {
        return Err(IngestError::EmptyResult);
    }
    let dictionary = Dictionary::validate(defs.into_iter().map(|(w, d)| Entry::new(w, d)))?;
    Ok((dictionary, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toy;

    const NO_STEM: NormalizeOptions = NormalizeOptions {
        stem: false,
        keep_all_senses: false,
    };

    #[test]
    fn two_column_line() {
        let raw = RawDictionary::parse("apple\tred fruit\n", RawFormat::Tsv).unwrap();
        assert_eq!(
            raw.records,
            vec![RawRecord {
                headword: "apple".into(),
                sense: 1,
                text: "red fruit".into(),
                tokens: vec!["red".into(), "fruit".into()],
            }]
        );
    }

    #[test]
    fn empty_definition_text_is_kept() {
        let raw = RawDictionary::parse("word\t\n", RawFormat::Tsv).unwrap();
        assert_eq!(raw.records.len(), 1);
        assert!(raw.records[0].tokens.is_empty());
    }

    #[test]
    fn tokenizer_splits_on_non_letters() {
        assert_eq!(tokenize("It's good!"), ["it", "s", "good"]);
        assert_eq!(tokenize("a well-known  X"), ["a", "well", "known", "x"]);
    }

    #[test]
    fn malformed_and_duplicate_lines() {
        let err = RawDictionary::parse("ok\tfine\nbroken line\n", RawFormat::Tsv).unwrap_err();
        assert!(matches!(err, IngestError::Parse { line: 2, .. }));
        let err = RawDictionary::parse("a\tx\tdef\n", RawFormat::Tsv).unwrap_err();
        assert!(matches!(err, IngestError::Parse { line: 1, .. }));
        let err = RawDictionary::parse("a\t1\tb\na\t1\tc\n", RawFormat::Tsv).unwrap_err();
        assert!(matches!(
            err,
            IngestError::DuplicateSense {
                line: 2,
                sense: 1,
                ..
            }
        ));
    }

    #[test]
    fn implicit_senses_count_up() {
        let raw = RawDictionary::parse("run\tmove fast\nrun\toperate\n", RawFormat::Tsv).unwrap();
        let senses: Vec<u32> = raw.records.iter().map(|r| r.sense).collect();
        assert_eq!(senses, [1, 2]);
    }

    #[test]
    fn json_input() {
        let text = r#"[{"word": "Apple", "definition": "red fruit"},
                       {"word": "red", "sense": 2, "definition": ["colour"]}]"#;
        let raw = RawDictionary::parse(text, RawFormat::Json).unwrap();
        assert_eq!(raw.records[0].headword, "apple");
        assert_eq!(raw.records[1].sense, 2);
        assert_eq!(raw.records[1].tokens, ["colour"]);
    }

    #[test]
    fn toy_normalizes_to_itself() {
        let raw = RawDictionary::parse(toy::TOY_TSV, RawFormat::Tsv).unwrap();
        let (d, report) = normalize(&raw, NO_STEM).unwrap();
        assert_eq!(d, toy::dictionary());
        assert_eq!(report, NormalizationReport::default());
    }

    #[test]
    fn toy_with_stemming_only_renames() {
        let raw = RawDictionary::parse(toy::TOY_TSV, RawFormat::Tsv).unwrap();
        let (d, report) = normalize(&raw, NormalizeOptions::default()).unwrap();
        assert_eq!(report, NormalizationReport::default());
        let words: Vec<&str> = d.words().collect();
        assert!(words.contains(&"appl") && words.contains(&"edibl"));
        let g = d.associated_graph();
        assert_eq!((g.vertex_count(), g.arc_count()), (14, 24));
    }

    #[test]
    fn first_sense_wins() {
        let raw = RawDictionary::parse(
            "run\t1\tmove fast\nrun\t2\toperate\nmove\tgo\nfast\tquick\ngo\tmove\nquick\tfast\noperate\trun\n",
            RawFormat::Tsv,
        )
        .unwrap();
        let (d, report) = normalize(&raw, NO_STEM).unwrap();
        let run = d.get("run").unwrap();
        assert_eq!(
            run.definientes().iter().collect::<Vec<_>>(),
            ["fast", "move"]
        );
        assert_eq!(report.senses_dropped, 1);
    }

    #[test]
    fn lower_sense_beats_file_order() {
        let raw = RawDictionary::parse("a\t2\tb\na\t1\tc\nb\ta\nc\ta\n", RawFormat::Tsv).unwrap();
        let (d, _) = normalize(&raw, NO_STEM).unwrap();
        assert!(d.get("a").unwrap().definientes().contains("c"));
    }

    #[test]
    fn keep_all_senses_merges() {
        let raw = RawDictionary::parse("a\t1\tb\na\t2\tc\nb\ta\nc\ta\n", RawFormat::Tsv).unwrap();
        let opts = NormalizeOptions {
            stem: false,
            keep_all_senses: true,
        };
        let (d, report) = normalize(&raw, opts).unwrap();
        assert_eq!(d.get("a").unwrap().definientes().len(), 2);
        assert_eq!(report.senses_dropped, 0);
    }

    #[test]
    fn loop_removal_empties_entry() {
        let raw = RawDictionary::parse(
            "recursion\tsee recursion\nsee\tlook\nlook\tsee\n",
            RawFormat::Tsv,
        )
        .unwrap();
        let (d, report) = normalize(&raw, NO_STEM).unwrap();
        // "see recursion" -> {see}: not empty, but "see" survives.
        assert!(d.get("recursion").is_some());
        assert_eq!(report.loops_removed, 1);

        let raw =
            RawDictionary::parse("recursion\trecursion\nx\ty\ny\tx\n", RawFormat::Tsv).unwrap();
        let (d, report) = normalize(&raw, NO_STEM).unwrap();
        assert!(d.get("recursion").is_none());
        assert_eq!(report.loops_removed, 1);
        assert_eq!(report.empty_definitions_removed, 1);
    }

    #[test]
    fn closure_cascades() {
        // c is only defined by an unknown word, so it disappears; then b's
        // definition {c} empties, and a loses b.
        let raw = RawDictionary::parse("a\tb x\nb\tc\nc\tzzz\nx\ta\n", RawFormat::Tsv).unwrap();
        let (d, report) = normalize(&raw, NO_STEM).unwrap();
        assert_eq!(d.words().collect::<Vec<_>>(), ["a", "x"]);
        assert_eq!(report.empty_definitions_removed, 2);
        assert_eq!(report.non_closed_dropped, 3);
        assert!(report.iterations >= 2);
    }

    #[test]
    fn everything_removed_is_an_error() {
        let raw = RawDictionary::parse("a\tb\n", RawFormat::Tsv).unwrap();
        assert!(matches!(
            normalize(&raw, NO_STEM),
            Err(IngestError::EmptyResult)
        ));
    }

    #[test]
    fn stemming_merges_headwords() {
        let raw = RawDictionary::parse(
            "running\t1\tfast motion\nrun\t1\tquick motion\nfast\tquick\nquick\tfast\nmotion\trun\n",
            RawFormat::Tsv,
        )
        .unwrap();
        let (d, report) = normalize(&raw, NormalizeOptions::default()).unwrap();
        assert_eq!(report.stems_merged, 1);
        assert_eq!(report.senses_dropped, 1);
        // Equal sense index: the earlier record ("running") wins.
        let run = d.get("run").unwrap();
        assert!(run.definientes().contains("fast"));
    }
}
