//! Clique embeddings into Chimera hardware and embedding verification.
//!
//! The clique embedding runs in two steps: contract the ideal Chimera graph to
//! its complete-bipartite virtual hardware, then contract a random matching of
//! the virtual hardware. A logical vertex maps to either one virtual chain or
//! the union of a contracted left/right pair of chains.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::chimera::{build_chimera, virtualize, ChimeraSpec, VirtualHardware};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::matching::{greedy_random_matching, MatchingTarget};
use crate::minor::{contract_matching, BagMap, Embedding};

/// Histogram of chain orders.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ChainStats {
    pub histogram: BTreeMap<usize, usize>,
    pub total_qubits: usize,
    pub max_chain: usize,
}

impl fmt::Display for ChainStats {
    /// `order:count` pairs, ascending by order, space separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (order, count) in &self.histogram {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{order}:{count}")?;
        }
        Ok(())
    }
}

pub fn chain_stats(e: &Embedding) -> ChainStats {
    let mut stats = ChainStats::default();
    for (_, bag) in e.iter() {
        *stats.histogram.entry(bag.len()).or_default() += 1;
        stats.total_qubits += bag.len();
        stats.max_chain = stats.max_chain.max(bag.len());
    }
    stats
}

/// Embeds `K_k` into the ideal `C(n, m, c)`.
///
/// Contracts `k - 2` random matching edges of the virtual hardware; the
/// merged vertices plus one untouched vertex from each side form a `K_k` in
/// the resulting minor. Logical vertex `i` gets the `i`-th bag of that clique
/// in ascending minor-vertex order.
pub fn embed_clique(spec: &ChimeraSpec, k: usize, seed: u64) -> Result<Embedding> {
    if k > spec.max_clique() {
        return Err(Error::CliqueBound {
            k,
            max: spec.max_clique(),
        });
    }
    let physical = build_chimera(spec);
    let vh = virtualize(&physical, spec);
    let virtual_bags = clique_in_virtual(&vh, k, seed)?;
    let mut out = BagMap::new();
    for (logical, (_, bag)) in virtual_bags.iter().enumerate() {
        let qubits = bag.iter().flat_map(|&v| vh.chain_indices(v)).collect();
        out.insert(logical, qubits);
    }
    Ok(out)
}

/// Bags of virtual vertices realizing `K_k` in the virtual hardware.
pub fn clique_in_virtual(vh: &VirtualHardware, k: usize, seed: u64) -> Result<BagMap> {
    if k == 0 {
        return Ok(BagMap::new());
    }
    let contractions = k.saturating_sub(2);
    let matching = greedy_random_matching(&vh.graph, seed, MatchingTarget::Size(contractions));
    if matching.len() < contractions {
        return Err(Error::CliqueBound {
            k,
            max: matching.len() + 2,
        });
    }
    let seq = contract_matching(&vh.graph, &matching)?;
    let last = seq.last();
    let merged: Vec<VertexId> = last
        .graph
        .vertices()
        .filter(|&v| last.bags.get(v).is_some_and(|b| b.len() == 2))
        .collect();
    let mut chosen: BTreeSet<VertexId> = merged.into_iter().collect();
    let untouched = |side: &BTreeSet<VertexId>| {
        last.graph.vertices().find(|&v| {
            last.bags
                .get(v)
                .is_some_and(|b| b.len() == 1 && b.is_subset(side))
        })
    };
    let left = untouched(&vh.labeling.left);
    let right = untouched(&vh.labeling.right);
    match (k, left, right) {
        (1, Some(l), _) => {
            chosen.insert(l);
        }
        (1, None, Some(r)) => {
            chosen.insert(r);
        }
        (_, Some(l), Some(r)) => {
            chosen.insert(l);
            chosen.insert(r);
        }
        _ => {
            return Err(Error::CliqueBound {
                k,
                max: vh.spec.max_clique(),
            })
        }
    }
    Ok(chosen
        .iter()
        .map(|&v| (v, last.bags.get(v).cloned().unwrap_or_default()))
        .collect())
}

/// Minimum chains for embedding `K_k` into hardware of per-qubit coupling
/// degree `d = c + 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChoiBound {
    /// `ceil((k - 3) / (d - 2))`, qubits per logical vertex.
    pub per_qubit: usize,
    /// `floor(k^2 / d)`, total qubits.
    pub total: usize,
}

pub fn choi_lower_bound(k: usize, c: usize) -> Result<ChoiBound> {
    if k < 4 || c == 0 {
        return Err(Error::InvalidArgument(format!(
            "bound needs k >= 4 and c >= 1 (got k={k}, c={c})"
        )));
    }
    let d = c + 2;
    Ok(ChoiBound {
        per_qubit: (k - 3).div_ceil(d - 2),
        total: k * k / d,
    })
}

/// The first condition an embedding violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A logical vertex has no bag.
    MissingBag { logical: VertexId },
    /// A bag is empty.
    EmptyBag { logical: VertexId },
    /// A bag contains a vertex absent from the target.
    UnknownVertex { logical: VertexId, vertex: VertexId },
    /// A bag for a vertex absent from the logical graph.
    ExtraBag { logical: VertexId },
    /// Two bags share a vertex.
    Overlap {
        first: VertexId,
        second: VertexId,
        vertex: VertexId,
    },
    /// A bag does not induce a connected subgraph.
    Disconnected { logical: VertexId },
    /// No target edge joins the bags of a logical edge.
    MissingEdge { u: VertexId, v: VertexId },
}

impl Violation {
    pub fn class(&self) -> ViolationClass {
        match self {
            Violation::MissingBag { .. } | Violation::ExtraBag { .. } => ViolationClass::Domain,
            Violation::EmptyBag { .. } => ViolationClass::Empty,
            Violation::UnknownVertex { .. } => ViolationClass::Domain,
            Violation::Overlap { .. } => ViolationClass::Overlap,
            Violation::Disconnected { .. } => ViolationClass::Disconnected,
            Violation::MissingEdge { .. } => ViolationClass::MissingEdge,
        }
    }
}

/// Coarse grouping of [`Violation`]s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationClass {
    Domain,
    Empty,
    Overlap,
    Disconnected,
    MissingEdge,
}

impl fmt::Display for ViolationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationClass::Domain => "domain",
            ViolationClass::Empty => "empty",
            ViolationClass::Overlap => "overlap",
            ViolationClass::Disconnected => "disconnected",
            ViolationClass::MissingEdge => "missing-edge",
        })
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ", self.class())?;
        match self {
            Violation::MissingBag { logical } => write!(f, "logical={logical} no bag"),
            Violation::EmptyBag { logical } => write!(f, "logical={logical}"),
            Violation::UnknownVertex { logical, vertex } => {
                write!(f, "logical={logical} vertex={vertex} not in target")
            }
            Violation::ExtraBag { logical } => write!(f, "logical={logical} not in logical graph"),
            Violation::Overlap {
                first,
                second,
                vertex,
            } => write!(f, "logical={first},{second} vertex={vertex}"),
            Violation::Disconnected { logical } => write!(f, "logical={logical}"),
            Violation::MissingEdge { u, v } => write!(f, "edge={u},{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Violation),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Valid => None,
            Verdict::Invalid(v) => Some(v),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Valid => f.write_str("verdict valid"),
            Verdict::Invalid(v) => write!(f, "verdict invalid {v}"),
        }
    }
}

/// Checks `e` is a minor embedding of `logical` into `target`.
///
/// Conditions are checked in this order, reporting the first failure: every
/// logical vertex has a bag and no bag is extraneous; bags are non-empty and
/// inside the target; bags are disjoint; each bag is connected; every logical
/// edge is realized by a target edge between the two bags.
pub fn verify_embedding(logical: &Graph, target: &Graph, e: &Embedding) -> Verdict {
    use Violation::*;
    for v in logical.vertices() {
        if e.get(v).is_none() {
            return Verdict::Invalid(MissingBag { logical: v });
        }
    }
    for (v, bag) in e.iter() {
        if !logical.contains_vertex(v) {
            return Verdict::Invalid(ExtraBag { logical: v });
        }
        if bag.is_empty() {
            return Verdict::Invalid(EmptyBag { logical: v });
        }
        if let Some(&q) = bag.iter().find(|q| !target.contains_vertex(**q)) {
            return Verdict::Invalid(UnknownVertex {
                logical: v,
                vertex: q,
            });
        }
    }
    let mut owner: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for (v, bag) in e.iter() {
        for &q in bag {
            if let Some(&first) = owner.get(&q) {
                return Verdict::Invalid(Overlap {
                    first,
                    second: v,
                    vertex: q,
                });
            }
            owner.insert(q, v);
        }
    }
    for (v, bag) in e.iter() {
        if !target.is_connected_subset(bag) {
            return Verdict::Invalid(Disconnected { logical: v });
        }
    }
    for (u, v) in logical.edges() {
        let bu = e.get(u).expect("checked above");
        let touches = bu
            .iter()
            .any(|&q| target.neighbors(q).any(|w| owner.get(&w) == Some(&v)));
        if !touches {
            return Verdict::Invalid(MissingEdge { u, v });
        }
    }
    Verdict::Valid
}
