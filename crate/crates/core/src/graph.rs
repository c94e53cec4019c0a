//! Simple undirected graphs.
//!
//! Vertices carry arbitrary `usize` ids (contraction hands out fresh ids, so
//! the id space is not necessarily contiguous). Adjacency is kept in ordered
//! sets so that iteration order, and everything derived from it, is
//! deterministic.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};

pub type VertexId = usize;

/// An unordered vertex pair, always stored with the smaller id first.
pub type Edge = (VertexId, VertexId);

/// Normalizes `(u, v)` so that the smaller id comes first.
#[inline]
pub fn edge(u: VertexId, v: VertexId) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    labels: BTreeMap<VertexId, String>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Edgeless graph on vertices `0..n`.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for v in 0..n {
            g.add_vertex(v);
        }
        g
    }

    /// Builds a graph on `0..n` from an edge list. Fails on self-loops or
    /// endpoints outside the range; duplicate edges are collapsed.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut g = Self::with_vertices(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::with_vertices(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_edge_unchecked(u, v);
            }
        }
        g
    }

    /// `K_{left,right}` with the left part on `0..left` and the right part on
    /// `left..left + right`.
    pub fn complete_bipartite(left: usize, right: usize) -> Self {
        let mut g = Self::with_vertices(left + right);
        for u in 0..left {
            for v in left..left + right {
                g.insert_edge_unchecked(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::with_vertices(n);
        for v in 1..n {
            g.insert_edge_unchecked(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n >= 3 {
            g.insert_edge_unchecked(0, n - 1);
        }
        g
    }

    /// Star with centre `0` and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let mut g = Self::with_vertices(leaves + 1);
        for v in 1..=leaves {
            g.insert_edge_unchecked(0, v);
        }
        g
    }

    pub fn add_vertex(&mut self, v: VertexId) -> bool {
        if self.adj.contains_key(&v) {
            return false;
        }
        self.adj.insert(v, BTreeSet::new());
        true
    }

    /// Adds an edge between two existing vertices. Returns `false` if the edge
    /// was already present.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<bool> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        for w in [u, v] {
            if !self.adj.contains_key(&w) {
                return Err(Error::UnknownVertex(w));
            }
        }
        Ok(self.insert_edge_unchecked(u, v))
    }

    pub(crate) fn insert_edge_unchecked(&mut self, u: VertexId, v: VertexId) -> bool {
        debug_assert_ne!(u, v);
        let fresh = self.adj.entry(u).or_default().insert(v);
        self.adj.entry(v).or_default().insert(u);
        fresh
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        let removed = self.adj.get_mut(&u).is_some_and(|n| n.remove(&v));
        if removed {
            self.adj.get_mut(&v).map(|n| n.remove(&u));
        }
        removed
    }

    /// Removes `v` and every incident edge. Returns `false` if absent.
    pub fn remove_vertex(&mut self, v: VertexId) -> bool {
        let Some(nbrs) = self.adj.remove(&v) else {
            return false;
        };
        for w in nbrs {
            if let Some(n) = self.adj.get_mut(&w) {
                n.remove(&v);
            }
        }
        self.labels.remove(&v);
        true
    }

    pub fn set_label(&mut self, v: VertexId, label: impl Into<String>) {
        self.labels.insert(v, label.into());
    }

    pub fn label(&self, v: VertexId) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|n| n.contains(&v))
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.get(&v).into_iter().flatten().copied()
    }

    pub fn neighbor_set(&self, v: VertexId) -> Option<&BTreeSet<VertexId>> {
        self.adj.get(&v)
    }

    /// Edges in ascending order, each as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, n)| n.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn max_vertex(&self) -> Option<VertexId> {
        self.adj.keys().next_back().copied()
    }

    /// An id not used by any vertex of this graph.
    pub fn fresh_id(&self) -> VertexId {
        self.max_vertex().map_or(0, |m| m + 1)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        self.adj.values().all(|nbrs| nbrs.len() + 1 == n)
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Subgraph induced by `keep`; vertices not in the graph are ignored.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Graph {
        let mut g = Graph::new();
        for &v in keep {
            if let Some(nbrs) = self.adj.get(&v) {
                g.adj.insert(
                    v,
                    nbrs.iter().copied().filter(|w| keep.contains(w)).collect(),
                );
                if let Some(l) = self.labels.get(&v) {
                    g.labels.insert(v, l.clone());
                }
            }
        }
        g
    }

    /// True if `set` is non-empty and induces a connected subgraph.
    pub fn is_connected_subset(&self, set: &BTreeSet<VertexId>) -> bool {
        let Some(&start) = set.iter().next() else {
            return false;
        };
        if !self.contains_vertex(start) {
            return false;
        }
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if set.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == set.len()
    }

    /// Connected components, each as an ordered vertex set, ordered by their
    /// smallest vertex.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.vertices() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = BTreeSet::from([start]);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbors(v) {
                    if seen.insert(w) {
                        comp.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Relabels vertices to `0..n` in ascending id order. Returns the new
    /// graph and the old ids indexed by new id.
    pub fn compacted(&self) -> (Graph, Vec<VertexId>) {
        let old: Vec<VertexId> = self.vertices().collect();
        let index: BTreeMap<VertexId, VertexId> =
            old.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = Graph::with_vertices(old.len());
        for (u, v) in self.edges() {
            g.insert_edge_unchecked(index[&u], index[&v]);
        }
        for (v, l) in &self.labels {
            g.labels.insert(index[v], l.clone());
        }
        (g, old)
    }

    /// Degree sequence sorted in descending order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.values().map(BTreeSet::len).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }
}

/// Same vertex set; an edge is present iff it is absent from `g`.
pub fn complement(g: &Graph) -> Graph {
    let mut out = Graph::new();
    let all: Vec<VertexId> = g.vertices().collect();
    for &v in &all {
        out.add_vertex(v);
    }
    for (i, &u) in all.iter().enumerate() {
        for &v in &all[i + 1..] {
            if !g.has_edge(u, v) {
                out.insert_edge_unchecked(u, v);
            }
        }
    }
    out.labels = g.labels.clone();
    out
}

pub fn isolated_vertices(g: &Graph) -> BTreeSet<VertexId> {
    g.vertices().filter(|&v| g.degree(v) == 0).collect()
}

/// A two-sided partition of a graph's vertex set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BipartiteLabeling {
    pub left: BTreeSet<VertexId>,
    pub right: BTreeSet<VertexId>,
}

impl BipartiteLabeling {
    pub fn new(left: BTreeSet<VertexId>, right: BTreeSet<VertexId>) -> Self {
        Self { left, right }
    }

    /// Checks the parts are disjoint, cover `g` exactly, and no edge stays
    /// within a part.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if let Some(v) = self.left.intersection(&self.right).next() {
            return Err(Error::InvalidLabeling(format!(
                "vertex {v} is on both sides"
            )));
        }
        if self.left.len() + self.right.len() != g.order() {
            return Err(Error::InvalidLabeling(format!(
                "parts hold {} vertices, graph has {}",
                self.left.len() + self.right.len(),
                g.order()
            )));
        }
        if let Some(v) = self
            .left
            .iter()
            .chain(&self.right)
            .find(|v| !g.contains_vertex(**v))
        {
            return Err(Error::InvalidLabeling(format!(
                "vertex {v} is not in the graph"
            )));
        }
        if let Some((u, v)) = g
            .edges()
            .find(|&(u, v)| self.left.contains(&u) == self.left.contains(&v))
        {
            return Err(Error::InvalidLabeling(format!(
                "edge ({u}, {v}) lies within one part"
            )));
        }
        Ok(())
    }

    pub fn side_of(&self, v: VertexId) -> Option<Side> {
        if self.left.contains(&v) {
            Some(Side::Left)
        } else if self.right.contains(&v) {
            Some(Side::Right)
        } else {
            None
        }
    }

    /// Order of the part opposite to `v`.
    pub fn opposite_order(&self, v: VertexId) -> usize {
        if self.left.contains(&v) {
            self.right.len()
        } else {
            self.left.len()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// BFS two-colouring. Each component is rooted at its smallest vertex, which
/// goes to the left part.
pub fn is_bipartite(g: &Graph) -> Option<BipartiteLabeling> {
    let mut colour: BTreeMap<VertexId, Side> = BTreeMap::new();
    for start in g.vertices() {
        if colour.contains_key(&start) {
            continue;
        }
        colour.insert(start, Side::Left);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let cv = colour[&v];
            for w in g.neighbors(v) {
                match colour.get(&w) {
                    Some(&cw) if cw == cv => return None,
                    Some(_) => {}
                    None => {
                        colour.insert(w, cv.other());
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    let mut lab = BipartiteLabeling::default();
    for (v, s) in colour {
        match s {
            Side::Left => lab.left.insert(v),
            Side::Right => lab.right.insert(v),
        };
    }
    Some(lab)
}
