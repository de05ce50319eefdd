//! Graphviz DOT rendering and `source,target` adjacency CSV.
//!
//! All output is deterministic: vertices appear in label order and arcs in
//! (source, target) order.

use std::fmt::Write as _;
use std::io::{Read, Write};

use crate::error::IngestError;
use crate::graph::{DirectedGraph, Label, VertexId};
use crate::kernel::KernelDecomposition;
use crate::scc::{QuotientGraph, SccPartition};

const KEYWORDS: [&str; 6] = ["node", "edge", "graph", "digraph", "subgraph", "strict"];

/// A DOT identifier: bare when it is a plain identifier or numeral and not a
/// keyword, quoted otherwise.
pub fn dot_id(s: &str) -> String {
    let ident = s
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    let numeral = !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let keyword = KEYWORDS.iter().any(|k| k.eq_ignore_ascii_case(s));
    if (ident || numeral) && !keyword {
        s.to_string()
    } else {
        let mut out = String::with_capacity(s.len() + 2);
        out.push('"');
        for c in s.chars() {
            if c == '"' || c == '\\' {
                out.push('\\');
            }
            out.push(c);
        }
        out.push('"');
        out
    }
}

/// A named group of vertices drawn as a `cluster_*` subgraph; children nest
/// inside it.
struct Cluster {
    name: String,
    label: String,
    members: Vec<VertexId>,
    children: Vec<Cluster>,
}

fn write_cluster<L: Label>(out: &mut String, g: &DirectedGraph<L>, c: &Cluster, depth: usize) {
    let pad = "  ".repeat(depth);
    let _ = writeln!(
        out,
        "{pad}subgraph {} {{",
        dot_id(&format!("cluster_{}", c.name))
    );
    let _ = writeln!(out, "{pad}  label={};", dot_id(&c.label));
    for child in &c.children {
        write_cluster(out, g, child, depth + 1);
    }
    for &v in &c.members {
        let _ = writeln!(out, "{pad}  {};", dot_id(&g.label(v).to_string()));
    }
    let _ = writeln!(out, "{pad}}}");
}

fn render<L: Label>(g: &DirectedGraph<L>, clusters: &[Cluster]) -> String {
    let mut clustered = vec![false; g.vertex_count()];
    fn mark(c: &Cluster, clustered: &mut [bool]) {
        for v in &c.members {
            clustered[v.index()] = true;
        }
        for child in &c.children {
            mark(child, clustered);
        }
    }
    for c in clusters {
        mark(c, &mut clustered);
    }
    let mut out = String::from("digraph G {\n");
    for c in clusters {
        write_cluster(&mut out, g, c, 1);
    }
    for v in g.vertices().filter(|v| !clustered[v.index()]) {
        let _ = writeln!(out, "  {};", dot_id(&g.label(v).to_string()));
    }
    for (u, v) in g.arcs() {
        let _ = writeln!(
            out,
            "  {} -> {};",
            dot_id(&g.label(u).to_string()),
            dot_id(&g.label(v).to_string())
        );
    }
    out.push_str("}\n");
    out
}

/// Plain rendering: one vertex per line, then every arc.
pub fn to_dot<L: Label>(g: &DirectedGraph<L>) -> String {
    render(g, &[])
}

/// The grounding kernel as `cluster_gk`, with the kernel core nested inside
/// it as `cluster_kc`.
pub fn kernel_dot<L: Label>(g: &DirectedGraph<L>, d: &KernelDecomposition) -> String {
    if d.gk.is_empty() {
        return to_dot(g);
    }
    let in_kc = g.mask(&d.kc);
    let kc = Cluster {
        name: "kc".into(),
        label: "KC".into(),
        members: d.kc.clone(),
        children: Vec::new(),
    };
    let gk = Cluster {
        name: "gk".into(),
        label: "GK".into(),
        members: d.gk.iter().copied().filter(|v| !in_kc[v.index()]).collect(),
        children: if d.kc.is_empty() {
            Vec::new()
        } else {
            vec![kc]
        },
    };
    render(g, &[gk])
}

/// Every strongly connected component with more than one vertex as its own
/// cluster.
pub fn scc_dot<L: Label>(g: &DirectedGraph<L>, p: &SccPartition) -> String {
    let clusters: Vec<Cluster> = p
        .components()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .map(|(i, c)| Cluster {
            name: format!("scc{i}"),
            label: format!("SCC {i}"),
            members: c.clone(),
            children: Vec::new(),
        })
        .collect();
    render(g, &clusters)
}

/// The quotient graph with one node `c<i>` per component, labelled by the
/// member words of `g`.
pub fn quotient_dot<L: Label>(q: &QuotientGraph, g: &DirectedGraph<L>) -> String {
    let qg = q.graph();
    let mut out = String::from("digraph G {\n");
    for c in qg.vertices() {
        let members: Vec<String> = q
            .partition()
            .component(*qg.label(c))
            .iter()
            .map(|&v| g.label(v).to_string())
            .collect();
        let _ = writeln!(
            out,
            "  c{} [label={}];",
            qg.label(c),
            dot_id(&members.join(" "))
        );
    }
    for (u, v) in qg.arcs() {
        let _ = writeln!(out, "  c{} -> c{};", qg.label(u), qg.label(v));
    }
    out.push_str("}\n");
    out
}

/// Writes every arc as a `source,target` row under a header.
pub fn write_adjacency_csv<L: Label, W: Write>(g: &DirectedGraph<L>, w: W) -> csv::Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["source", "target"])?;
    for (u, v) in g.arcs() {
        wtr.write_record([g.label(u).to_string(), g.label(v).to_string()])?;
    }
    wtr.flush()?;
    Ok(())
}

/// Reads a `source,target` arc list. Vertices are the arc endpoints, so
/// isolated vertices cannot be represented.
pub fn read_adjacency_csv<R: Read>(r: R) -> Result<DirectedGraph, IngestError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(r);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_lowercase).collect();
    if header != ["source", "target"] {
        return Err(IngestError::Parse {
            line: 1,
            message: "expected header `source,target`".into(),
        });
    }
    let mut arcs = Vec::new();
    for row in rdr.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        if row.len() != 2 || row[0].is_empty() || row[1].is_empty() {
            return Err(IngestError::Parse {
                line,
                message: "expected two non-empty fields".into(),
            });
        }
        arcs.push((row[0].to_string(), row[1].to_string()));
    }
    Ok(DirectedGraph::new(std::iter::empty::<String>(), arcs))
}
