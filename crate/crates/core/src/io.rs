//! Plain-text interchange formats.
//!
//! * Edge lists: `p <vertices> <edges>` then `e <u> <v>` per edge, vertices
//!   `0..vertices`. Blank lines and `#` comments are ignored.
//! * Chimera graphs: an edge list headed by `# chimera <n> <m> <c>` over the
//!   full linear index space; removed qubits are listed in `# dead ...` lines.
//! * Virtual hardware: `# virtual <n> <m> <c>`, one `v <id> <L|R> : <qubits>`
//!   line per virtual vertex, then the virtual edge list.
//! * Bag maps: `bag <vertex> : <vertices>`; embeddings: `l <logical> : <qubits>`.
//! * Minor sequence archives: a directory of `minor_<i>.edges` files plus
//!   `bags.txt`, where `minor <i>` opens the bag block of each minor.
//! * Reports: one `key value` record per line.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::chimera::{ChimeraSpec, QubitCoord, VirtualHardware};
use crate::embedder::{ChainStats, Verdict};
use crate::error::{Error, Result};
use crate::faulty::{CriteriaReport, IncompleteBipartite};
use crate::graph::{is_bipartite, BipartiteLabeling, Graph, Side, VertexId};
use crate::minor::{BagMap, Embedding, Minor, MinorSequence};
use crate::msc::MscReport;

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Significant lines with their 1-based line numbers; comments are skipped.
fn records(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Comment bodies (text after `#`, trimmed).
fn comments(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| l.trim().strip_prefix('#').map(|c| (i + 1, c.trim())))
}

fn num(line: usize, tok: Option<&str>, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::parse(line, format!("bad {what} '{tok}'")))
}

/// Serializes `g`. Non-contiguous ids are compacted in ascending order.
pub fn write_edge_list(g: &Graph) -> String {
    let contiguous = g.vertices().enumerate().all(|(i, v)| i == v);
    let owned;
    let g = if contiguous {
        g
    } else {
        owned = g.compacted().0;
        &owned
    };
    let mut out = String::new();
    write_edges_body(&mut out, g.order(), g);
    out
}

fn write_edges_body(out: &mut String, vertices: usize, g: &Graph) {
    let _ = writeln!(out, "p {} {}", vertices, g.size());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
}

/// Parses an edge list. Every id in `0..vertices` is a vertex.
pub fn read_edge_list(text: &str) -> Result<Graph> {
    let mut g: Option<Graph> = None;
    let mut declared = 0;
    let mut last_line = 0;
    for (line, rec) in records(text) {
        last_line = line;
        let mut toks = rec.split_whitespace();
        match toks.next() {
            Some("p") => {
                if g.is_some() {
                    return Err(Error::parse(line, "duplicate 'p' header"));
                }
                let nv = num(line, toks.next(), "vertex count")?;
                declared = num(line, toks.next(), "edge count")?;
                g = Some(Graph::with_vertices(nv));
            }
            Some("e") => {
                let g = g
                    .as_mut()
                    .ok_or_else(|| Error::parse(line, "edge before 'p' header"))?;
                let u = num(line, toks.next(), "vertex")?;
                let v = num(line, toks.next(), "vertex")?;
                match g.add_edge(u, v) {
                    Ok(true) => {}
                    Ok(false) => return Err(Error::parse(line, format!("duplicate edge {u} {v}"))),
                    Err(e) => return Err(Error::parse(line, e.to_string())),
                }
            }
            // Other record kinds belong to richer documents built on edge lists.
            Some(_) | None => continue,
        }
        if toks.next().is_some() {
            return Err(Error::parse(line, "trailing tokens"));
        }
    }
    let g = g.ok_or_else(|| Error::parse(last_line.max(1), "missing 'p' header"))?;
    if g.size() != declared {
        return Err(Error::parse(
            last_line.max(1),
            format!("header declares {declared} edges, found {}", g.size()),
        ));
    }
    Ok(g)
}

/// Serializes a (possibly faulted) Chimera graph in linear-index order.
pub fn write_chimera(g: &Graph, spec: &ChimeraSpec) -> String {
    let mut out = format!("# chimera {} {} {}\n", spec.n, spec.m, spec.c);
    let dead = crate::chimera::dead_qubits(g, spec);
    if !dead.is_empty() {
        let _ = writeln!(out, "# dead {}", join(&dead));
    }
    let _ = writeln!(out, "p {} {}", spec.num_qubits(), g.size());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}

fn header_spec(text: &str, keyword: &str) -> Result<ChimeraSpec> {
    for (line, c) in comments(text) {
        let mut toks = c.split_whitespace();
        if toks.next() == Some(keyword) {
            let n = num(line, toks.next(), "n")?;
            let m = num(line, toks.next(), "m")?;
            let c = num(line, toks.next(), "c")?;
            return ChimeraSpec::new(n, m, c).map_err(|e| Error::parse(line, e.to_string()));
        }
    }
    Err(Error::parse(
        1,
        format!("missing '# {keyword} n m c' header"),
    ))
}

pub fn read_chimera(text: &str) -> Result<(ChimeraSpec, Graph)> {
    let spec = header_spec(text, "chimera")?;
    let mut g = read_edge_list(text)?;
    if g.order() != spec.num_qubits() {
        return Err(Error::parse(
            1,
            format!(
                "{spec} has {} qubits, file declares {}",
                spec.num_qubits(),
                g.order()
            ),
        ));
    }
    for (line, c) in comments(text) {
        if let Some(rest) = c.strip_prefix("dead") {
            for tok in rest.split_whitespace() {
                let q = num(line, Some(tok), "qubit")?;
                if g.degree(q) != 0 {
                    return Err(Error::parse(line, format!("dead qubit {q} has couplers")));
                }
                g.remove_vertex(q);
            }
        }
    }
    for (u, v) in g.edges() {
        let (a, b) = (spec.coord(u)?, spec.coord(v)?);
        if !spec.is_coupler(&a, &b) {
            return Err(Error::parse(
                1,
                format!("{u}-{v} is not a coupler of {spec}"),
            ));
        }
    }
    for v in g.vertices().collect::<Vec<_>>() {
        g.set_label(v, spec.coord(v)?.to_string());
    }
    Ok((spec, g))
}

pub fn write_virtual_hardware(vh: &VirtualHardware) -> String {
    let s = vh.spec;
    let mut out = format!("# virtual {} {} {}\n", s.n, s.m, s.c);
    for (&v, chain) in &vh.chains {
        let side = match vh.labeling.side_of(v) {
            Some(Side::Right) => 'R',
            _ => 'L',
        };
        let qubits = join(chain.iter().map(|q| s.linear(q)));
        let _ = writeln!(out, "v {v} {side} : {qubits}");
    }
    write_edges_body(&mut out, vh.graph.order(), &vh.graph);
    out
}

pub fn read_virtual_hardware(text: &str) -> Result<VirtualHardware> {
    let spec = header_spec(text, "virtual")?;
    let graph = read_edge_list(text)?;
    let mut chains = BTreeMap::new();
    let mut labeling = BipartiteLabeling::default();
    for (line, rec) in records(text) {
        let Some(rest) = rec.strip_prefix("v ") else {
            continue;
        };
        let (head, tail) = rest
            .split_once(':')
            .ok_or_else(|| Error::parse(line, "expected ':'"))?;
        let mut toks = head.split_whitespace();
        let v = num(line, toks.next(), "virtual vertex")?;
        match toks.next() {
            Some("L") => labeling.left.insert(v),
            Some("R") => labeling.right.insert(v),
            other => return Err(Error::parse(line, format!("bad side {other:?}"))),
        };
        let chain: Vec<QubitCoord> = tail
            .split_whitespace()
            .map(|t| {
                let q = num(line, Some(t), "qubit")?;
                spec.coord(q).map_err(|e| Error::parse(line, e.to_string()))
            })
            .collect::<Result<_>>()?;
        if chains.insert(v, chain).is_some() {
            return Err(Error::parse(line, format!("duplicate virtual vertex {v}")));
        }
    }
    labeling
        .validate(&graph)
        .map_err(|e| Error::parse(1, e.to_string()))?;
    Ok(VirtualHardware {
        spec,
        graph,
        labeling,
        chains,
    })
}

fn write_bags(out: &mut String, keyword: &str, bags: &BagMap) {
    for (v, bag) in bags.iter() {
        let _ = writeln!(out, "{keyword} {v} : {}", join(bag));
    }
}

fn parse_bag_line(line: usize, rest: &str) -> Result<(VertexId, BTreeSet<VertexId>)> {
    let (head, tail) = rest
        .split_once(':')
        .ok_or_else(|| Error::parse(line, "expected ':'"))?;
    let v = num(line, Some(head.trim()), "vertex")?;
    let bag = tail
        .split_whitespace()
        .map(|t| num(line, Some(t), "vertex"))
        .collect::<Result<_>>()?;
    Ok((v, bag))
}

fn read_bags(text: &str, keyword: &str) -> Result<BagMap> {
    let mut bags = BagMap::new();
    for (line, rec) in records(text) {
        let Some(rest) = rec.strip_prefix(keyword).and_then(|r| r.strip_prefix(' ')) else {
            return Err(Error::parse(line, format!("expected '{keyword}' record")));
        };
        let (v, bag) = parse_bag_line(line, rest)?;
        if bags.get(v).is_some() {
            return Err(Error::parse(line, format!("duplicate {keyword} {v}")));
        }
        bags.insert(v, bag);
    }
    Ok(bags)
}

pub fn write_bag_map(bags: &BagMap) -> String {
    let mut out = String::new();
    write_bags(&mut out, "bag", bags);
    out
}

pub fn read_bag_map(text: &str) -> Result<BagMap> {
    read_bags(text, "bag")
}

pub fn write_embedding(e: &Embedding) -> String {
    let mut out = String::new();
    write_bags(&mut out, "l", e);
    out
}

pub fn read_embedding(text: &str) -> Result<Embedding> {
    read_bags(text, "l")
}

/// Writes `minor_<i>.edges` and `bags.txt` into `dir` (created if needed).
/// Minor vertices are renumbered `0..order` in ascending id order; the bag
/// file uses the renumbered ids.
pub fn write_minor_sequence(seq: &MinorSequence, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut bags = String::new();
    for (i, minor) in seq.minors.iter().enumerate() {
        fs::write(
            dir.join(format!("minor_{i}.edges")),
            write_edge_list(&minor.graph),
        )?;
        let _ = writeln!(bags, "minor {i}");
        for (new, old) in minor.graph.vertices().enumerate() {
            let bag = minor.bags.get(old).cloned().unwrap_or_default();
            let _ = writeln!(bags, "bag {new} : {}", join(bag));
        }
    }
    fs::write(dir.join("bags.txt"), bags)?;
    Ok(())
}

pub fn read_minor_sequence(dir: &Path) -> Result<MinorSequence> {
    let text = fs::read_to_string(dir.join("bags.txt"))?;
    let mut blocks: Vec<BagMap> = Vec::new();
    for (line, rec) in records(&text) {
        let mut toks = rec.split_whitespace();
        match toks.next() {
            Some("minor") => {
                let i = num(line, toks.next(), "minor index")?;
                if i != blocks.len() {
                    return Err(Error::parse(
                        line,
                        format!("expected minor {}", blocks.len()),
                    ));
                }
                blocks.push(BagMap::new());
            }
            Some("bag") => {
                let block = blocks
                    .last_mut()
                    .ok_or_else(|| Error::parse(line, "bag before 'minor' header"))?;
                let (v, bag) = parse_bag_line(line, &rec[3..])?;
                block.insert(v, bag);
            }
            _ => return Err(Error::parse(line, "expected 'minor' or 'bag' record")),
        }
    }
    if blocks.is_empty() {
        return Err(Error::parse(1, "archive holds no minors"));
    }
    let mut minors = Vec::with_capacity(blocks.len());
    for (i, bags) in blocks.into_iter().enumerate() {
        let path = dir.join(format!("minor_{i}.edges"));
        let graph = read_edge_list(&fs::read_to_string(&path)?)?;
        if bags.len() != graph.order() {
            return Err(Error::parse(
                1,
                format!(
                    "minor {i}: {} bags for {} vertices",
                    bags.len(),
                    graph.order()
                ),
            ));
        }
        minors.push(Minor { graph, bags });
    }
    let source = minors[0].graph.clone();
    Ok(MinorSequence { source, minors })
}

/// Edge list with a `# bipartition <left vertices>` comment.
pub fn write_bipartite(b: &IncompleteBipartite) -> String {
    let mut out = format!("# bipartition {}\n", join(&b.labeling.left));
    out.push_str(&write_edge_list(&b.graph));
    out
}

/// Reads a bipartite graph, honouring a `# bipartition` comment when present
/// and falling back to the BFS two-colouring otherwise.
pub fn read_bipartite(text: &str) -> Result<IncompleteBipartite> {
    let graph = read_edge_list(text)?;
    for (line, c) in comments(text) {
        if let Some(rest) = c.strip_prefix("bipartition") {
            let left: BTreeSet<VertexId> = rest
                .split_whitespace()
                .map(|t| num(line, Some(t), "vertex"))
                .collect::<Result<_>>()?;
            let right = graph.vertices().filter(|v| !left.contains(v)).collect();
            return IncompleteBipartite::new(graph, BipartiteLabeling::new(left, right));
        }
    }
    let labeling = is_bipartite(&graph).ok_or(Error::NotBipartite)?;
    IncompleteBipartite::new(graph, labeling)
}

pub fn format_criteria_report(r: &CriteriaReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "partition_order {}", r.n);
    let _ = writeln!(out, "required_edges {}", r.required_edges);
    let _ = writeln!(out, "actual_edges {}", r.actual_edges);
    let _ = writeln!(out, "edge_count_ok {}", r.edge_count_ok);
    let _ = writeln!(out, "incomplete_vertices {}", r.incomplete_vertex_count);
    match &r.covering_matching {
        Some(m) => {
            let edges = m.edges.iter().map(|(u, v)| format!("{u}-{v}"));
            let _ = writeln!(out, "covering_matching {}", join(edges));
        }
        None => {
            let _ = writeln!(out, "covering_matching none");
        }
    }
    let _ = writeln!(out, "cover_ok {}", r.cover_ok);
    let _ = writeln!(out, "alt_missing_bound {}", r.alt_missing_bound);
    let _ = writeln!(out, "alt_size_bound {}", r.alt_size_bound);
    let reasons = r.reasons();
    let reason = if reasons.is_empty() {
        "none".to_string()
    } else {
        reasons.join(",")
    };
    let _ = writeln!(out, "verdict {} reason {reason}", r.verdict);
    out
}

pub fn format_msc_report(r: &MscReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "partitions {} {}", r.left, r.right);
    let _ = writeln!(out, "cardinality {}", r.cardinality);
    let _ = writeln!(out, "final_is_complete {}", r.final_is_complete);
    let _ = writeln!(
        out,
        "complement_isolated {}",
        join(&r.complement_isolated_counts)
    );
    let _ = writeln!(out, "clique_numbers {}", join(&r.clique_numbers));
    let tw = r.treewidths.iter().map(|t| match t {
        Some(t) => t.to_string(),
        None => "skipped".into(),
    });
    let _ = writeln!(out, "treewidths {}", join(tw));
    for f in &r.failures {
        let _ = writeln!(out, "failure {f}");
    }
    let _ = writeln!(out, "status {}", if r.passed() { "pass" } else { "fail" });
    out
}

pub fn format_chain_stats(s: &ChainStats) -> String {
    format!(
        "chains {s}\ntotal_qubits {}\nmax_chain {}\n",
        s.total_qubits, s.max_chain
    )
}

pub fn format_verdict(v: &Verdict) -> String {
    format!("{v}\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chimera::{apply_faults, build_chimera, virtualize, FaultSet};

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::complete_bipartite(3, 2);
        let text = write_edge_list(&g);
        assert!(text.starts_with("p 5 6\n"));
        assert_eq!(read_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_comments_and_blanks() {
        let text = "# triangle\n\np 3 3\ne 0 1\n  # inline\ne 1 2\ne 0 2\n";
        assert_eq!(read_edge_list(text).unwrap(), Graph::complete(3));
    }

    #[test]
    fn edge_list_errors() {
        assert!(read_edge_list("e 0 1\n").is_err());
        assert!(read_edge_list("p 2 1\ne 0 2\n").is_err());
        assert!(read_edge_list("p 2 1\ne 1 1\n").is_err());
        assert!(read_edge_list("p 2 2\ne 0 1\n").is_err());
        assert!(read_edge_list("p 2 2\ne 0 1\ne 1 0\n").is_err());
        assert!(read_edge_list("p 2 1\ne 0 x\n").is_err());
        assert!(read_edge_list("").is_err());
    }

    #[test]
    fn chimera_round_trip_with_faults() {
        let spec = ChimeraSpec::new(2, 2, 2).unwrap();
        let g = build_chimera(&spec);
        let f = FaultSet {
            dead_qubits: [QubitCoord::new(1, 0, Side::Right, 1)].into(),
            ..Default::default()
        };
        let h = apply_faults(&g, &spec, &f).unwrap();
        let text = write_chimera(&h, &spec);
        assert!(text.starts_with("# chimera 2 2 2\n# dead 11\np 16 "));
        let (s2, h2) = read_chimera(&text).unwrap();
        assert_eq!(s2, spec);
        assert_eq!(h2, h);
    }

    #[test]
    fn virtual_hardware_round_trip() {
        let spec = ChimeraSpec::new(2, 3, 2).unwrap();
        let vh = virtualize(&build_chimera(&spec), &spec);
        let text = write_virtual_hardware(&vh);
        assert!(text.contains("v 0 L : 0 12\n"));
        assert_eq!(read_virtual_hardware(&text).unwrap(), vh);
    }

    #[test]
    fn bags_round_trip() {
        let bags: BagMap = [(0, BTreeSet::from([1, 2])), (3, BTreeSet::from([7]))]
            .into_iter()
            .collect();
        assert_eq!(write_bag_map(&bags), "bag 0 : 1 2\nbag 3 : 7\n");
        assert_eq!(read_bag_map(&write_bag_map(&bags)).unwrap(), bags);
        assert_eq!(read_embedding(&write_embedding(&bags)).unwrap(), bags);
        assert!(read_bag_map("l 0 : 1\n").is_err());
    }

    #[test]
    fn bipartite_comment_is_honoured() {
        let b = crate::faulty::crown_graph(2).unwrap();
        let text = write_bipartite(&b);
        assert!(text.starts_with("# bipartition 0 1\n"));
        assert_eq!(read_bipartite(&text).unwrap(), b);
    }
}
