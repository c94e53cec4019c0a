//! Edge contraction, vertex bags and contraction sequences.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph, VertexId};
use crate::matching::Matching;

/// Map from a vertex of a minor (or a logical vertex) to the set of host
/// vertices it stands for.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BagMap {
    bags: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

/// Logical vertex to physical vertex set.
pub type Embedding = BagMap;

/// Bag assignment certifying that one graph is a minor of another.
pub type MinorWitness = BagMap;

impl BagMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every vertex of `g` in its own singleton bag.
    pub fn identity(g: &Graph) -> Self {
        Self {
            bags: g.vertices().map(|v| (v, BTreeSet::from([v]))).collect(),
        }
    }

    pub fn insert(&mut self, v: VertexId, bag: BTreeSet<VertexId>) {
        self.bags.insert(v, bag);
    }

    pub fn get(&self, v: VertexId) -> Option<&BTreeSet<VertexId>> {
        self.bags.get(&v)
    }

    pub fn get_mut(&mut self, v: VertexId) -> Option<&mut BTreeSet<VertexId>> {
        self.bags.get_mut(&v)
    }

    pub fn remove(&mut self, v: VertexId) -> Option<BTreeSet<VertexId>> {
        self.bags.remove(&v)
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, &BTreeSet<VertexId>)> {
        self.bags.iter().map(|(&k, v)| (k, v))
    }

    pub fn keys(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.bags.keys().copied()
    }

    /// Total number of host vertices across all bags.
    pub fn total(&self) -> usize {
        self.bags.values().map(BTreeSet::len).sum()
    }

    /// Bags pairwise disjoint, each non-empty and connected in `host`.
    pub fn validate(&self, host: &Graph) -> Result<()> {
        let mut seen = BTreeSet::new();
        for (v, bag) in &self.bags {
            if !host.is_connected_subset(bag) {
                return Err(Error::InvalidArgument(format!(
                    "bag of {v} is empty or disconnected"
                )));
            }
            for &w in bag {
                if !seen.insert(w) {
                    return Err(Error::InvalidArgument(format!(
                        "host vertex {w} appears in more than one bag"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Composes `self` (bags over an intermediate graph) with `inner`
    /// (bags of the intermediate graph over the original).
    pub fn compose(&self, inner: &BagMap) -> BagMap {
        let bags = self
            .bags
            .iter()
            .map(|(&v, bag)| {
                let expanded = bag
                    .iter()
                    .flat_map(|w| inner.get(*w).into_iter().flatten().copied())
                    .collect();
                (v, expanded)
            })
            .collect();
        BagMap { bags }
    }

    /// Renumbers the keys `0..len` in ascending key order.
    pub fn compacted(&self) -> BagMap {
        BagMap {
            bags: self.bags.values().cloned().enumerate().collect(),
        }
    }
}

impl FromIterator<(VertexId, BTreeSet<VertexId>)> for BagMap {
    fn from_iter<I: IntoIterator<Item = (VertexId, BTreeSet<VertexId>)>>(iter: I) -> Self {
        BagMap {
            bags: iter.into_iter().collect(),
        }
    }
}

/// Contracts `e`, merging its endpoints into a vertex with a fresh id.
///
/// The returned bag map covers every vertex of the result: survivors map to
/// themselves and the merged vertex maps to both endpoints.
pub fn contract_edge(g: &Graph, e: Edge) -> Result<(Graph, BagMap)> {
    let (u, v) = edge(e.0, e.1);
    if !g.has_edge(u, v) {
        return Err(Error::EdgeNotPresent(u, v));
    }
    let merged = g.fresh_id();
    let mut out = g.clone();
    let nbrs: BTreeSet<VertexId> = g
        .neighbors(u)
        .chain(g.neighbors(v))
        .filter(|&w| w != u && w != v)
        .collect();
    out.remove_vertex(u);
    out.remove_vertex(v);
    out.add_vertex(merged);
    for w in nbrs {
        out.insert_edge_unchecked(merged, w);
    }
    let mut bags = BagMap::identity(&out);
    bags.insert(merged, BTreeSet::from([u, v]));
    Ok((out, bags))
}

/// One member of a contraction sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minor {
    pub graph: Graph,
    /// Bags over the source graph.
    pub bags: BagMap,
}

/// Ordered minors `M(0), M(1), ...` where `M(i)` is `M(i-1)` with the i-th
/// matching edge contracted. `M(0)` is the source itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorSequence {
    pub source: Graph,
    pub minors: Vec<Minor>,
}

impl MinorSequence {
    pub fn len(&self) -> usize {
        self.minors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.minors.is_empty()
    }

    pub fn last(&self) -> &Minor {
        self.minors
            .last()
            .expect("sequence always holds the source")
    }

    /// Checks the order recurrence and that every bag map is valid over the
    /// source.
    pub fn validate(&self) -> Result<()> {
        let n = self.source.order();
        for (i, m) in self.minors.iter().enumerate() {
            if m.graph.order() + i != n {
                return Err(Error::InvalidArgument(format!(
                    "minor {i} has order {}, expected {}",
                    m.graph.order(),
                    n.saturating_sub(i)
                )));
            }
            m.bags.validate(&self.source)?;
        }
        Ok(())
    }
}

/// Contracts the matching edges one at a time.
pub fn contract_matching(g: &Graph, m: &Matching) -> Result<MinorSequence> {
    m.validate(g)?;
    let mut current = Minor {
        graph: g.clone(),
        bags: BagMap::identity(g),
    };
    let mut minors = vec![current.clone()];
    for &e in &m.edges {
        // Matching edges are disjoint, so both endpoints still exist untouched.
        let (graph, step) = contract_edge(&current.graph, e)?;
        let bags = step.compose(&current.bags);
        current = Minor { graph, bags };
        minors.push(current.clone());
    }
    Ok(MinorSequence {
        source: g.clone(),
        minors,
    })
}
