//! Chimera hardware graphs and their complete-bipartite virtual hardware.
//!
//! A `C(n, m, c)` graph is an `n x m` grid of `K_{c,c}` unit cells. Left-side
//! qubits couple to the same-index left qubit of the cell below; right-side
//! qubits couple to the same-index right qubit of the cell to the right.
//! Physical vertex ids are the linear qubit indices of [`QubitCoord`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{BipartiteLabeling, Graph, Side, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChimeraSpec {
    pub n: usize,
    pub m: usize,
    pub c: usize,
}

impl ChimeraSpec {
    pub fn new(n: usize, m: usize, c: usize) -> Result<Self> {
        if n == 0 || m == 0 || c == 0 {
            return Err(Error::InvalidSpec(format!(
                "C({n},{m},{c}): all dimensions must be at least 1"
            )));
        }
        Ok(Self { n, m, c })
    }

    pub fn num_qubits(&self) -> usize {
        2 * self.n * self.m * self.c
    }

    /// `n m c^2 + c m (n-1) + c n (m-1)`.
    pub fn num_couplers(&self) -> usize {
        let ChimeraSpec { n, m, c } = *self;
        n * m * c * c + c * m * (n - 1) + c * n * (m - 1)
    }

    /// Largest clique reachable through the virtual hardware.
    pub fn max_clique(&self) -> usize {
        self.n.min(self.m) * self.c + 1
    }

    pub fn coord(&self, index: VertexId) -> Result<QubitCoord> {
        if index >= self.num_qubits() {
            return Err(Error::FaultOutOfRange(format!(
                "qubit index {index} outside 0..{}",
                self.num_qubits()
            )));
        }
        let c = self.c;
        let cell = index / (2 * c);
        let within = index % (2 * c);
        Ok(QubitCoord {
            row: cell / self.m,
            col: cell % self.m,
            side: if within < c { Side::Left } else { Side::Right },
            index: within % c,
        })
    }

    pub fn contains(&self, q: &QubitCoord) -> bool {
        q.row < self.n && q.col < self.m && q.index < self.c
    }

    /// `2c (m row + col) + side c + index`.
    pub fn linear(&self, q: &QubitCoord) -> VertexId {
        let side = match q.side {
            Side::Left => 0,
            Side::Right => 1,
        };
        2 * self.c * (self.m * q.row + q.col) + side * self.c + q.index
    }

    fn checked_linear(&self, q: &QubitCoord) -> Result<VertexId> {
        if !self.contains(q) {
            return Err(Error::FaultOutOfRange(format!("{q} is outside {self}")));
        }
        Ok(self.linear(q))
    }

    /// True if `a` and `b` are joined by a coupler in the ideal graph.
    pub fn is_coupler(&self, a: &QubitCoord, b: &QubitCoord) -> bool {
        if !self.contains(a) || !self.contains(b) {
            return false;
        }
        if a.row == b.row && a.col == b.col {
            return a.side != b.side;
        }
        if a.side != b.side || a.index != b.index {
            return false;
        }
        match a.side {
            Side::Left => a.col == b.col && a.row.abs_diff(b.row) == 1,
            Side::Right => a.row == b.row && a.col.abs_diff(b.col) == 1,
        }
    }
}

impl fmt::Display for ChimeraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({},{},{})", self.n, self.m, self.c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QubitCoord {
    pub row: usize,
    pub col: usize,
    pub side: Side,
    pub index: usize,
}

impl QubitCoord {
    pub fn new(row: usize, col: usize, side: Side, index: usize) -> Self {
        Self {
            row,
            col,
            side,
            index,
        }
    }
}

impl fmt::Display for QubitCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.side {
            Side::Left => 'L',
            Side::Right => 'R',
        };
        write!(f, "({},{},{},{})", self.row, self.col, s, self.index)
    }
}

/// Dead qubits and dead couplers.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FaultSet {
    pub dead_qubits: BTreeSet<QubitCoord>,
    pub dead_couplers: BTreeSet<(QubitCoord, QubitCoord)>,
}

impl FaultSet {
    pub fn is_empty(&self) -> bool {
        self.dead_qubits.is_empty() && self.dead_couplers.is_empty()
    }

    pub fn validate(&self, spec: &ChimeraSpec) -> Result<()> {
        for q in &self.dead_qubits {
            spec.checked_linear(q)?;
        }
        for (a, b) in &self.dead_couplers {
            spec.checked_linear(a)?;
            spec.checked_linear(b)?;
            if !spec.is_coupler(a, b) {
                return Err(Error::FaultOutOfRange(format!(
                    "{a}-{b} is not a coupler of {spec}"
                )));
            }
        }
        Ok(())
    }
}

/// The ideal `C(n, m, c)` graph, vertices labelled with their coordinates.
pub fn build_chimera(spec: &ChimeraSpec) -> Graph {
    let ChimeraSpec { n, m, c } = *spec;
    let mut g = Graph::with_vertices(spec.num_qubits());
    for row in 0..n {
        for col in 0..m {
            for i in 0..c {
                let l = QubitCoord::new(row, col, Side::Left, i);
                let r = QubitCoord::new(row, col, Side::Right, i);
                g.set_label(spec.linear(&l), l.to_string());
                g.set_label(spec.linear(&r), r.to_string());
                for j in 0..c {
                    let r = QubitCoord::new(row, col, Side::Right, j);
                    g.insert_edge_unchecked(spec.linear(&l), spec.linear(&r));
                }
                if row + 1 < n {
                    let below = QubitCoord::new(row + 1, col, Side::Left, i);
                    g.insert_edge_unchecked(spec.linear(&l), spec.linear(&below));
                }
                if col + 1 < m {
                    let next = QubitCoord::new(row, col + 1, Side::Right, i);
                    g.insert_edge_unchecked(spec.linear(&r), spec.linear(&next));
                }
            }
        }
    }
    g
}

/// Removes dead qubits (with incident couplers) and dead couplers.
pub fn apply_faults(g: &Graph, spec: &ChimeraSpec, faults: &FaultSet) -> Result<Graph> {
    faults.validate(spec)?;
    let mut out = g.clone();
    for q in &faults.dead_qubits {
        out.remove_vertex(spec.linear(q));
    }
    for (a, b) in &faults.dead_couplers {
        out.remove_edge(spec.linear(a), spec.linear(b));
    }
    Ok(out)
}

/// Qubits of `spec` that are missing from `g`.
pub fn dead_qubits(g: &Graph, spec: &ChimeraSpec) -> BTreeSet<VertexId> {
    (0..spec.num_qubits())
        .filter(|&q| !g.contains_vertex(q))
        .collect()
}

/// Complete-bipartite-style abstraction of a Chimera graph.
///
/// Virtual vertices `0..labeling.left.len()` are vertical (left-side) chain
/// segments; the rest are horizontal (right-side) segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualHardware {
    pub spec: ChimeraSpec,
    pub graph: Graph,
    pub labeling: BipartiteLabeling,
    pub chains: BTreeMap<VertexId, Vec<QubitCoord>>,
}

impl VirtualHardware {
    pub fn chain_indices(&self, v: VertexId) -> Vec<VertexId> {
        self.chains
            .get(&v)
            .map(|c| c.iter().map(|q| self.spec.linear(q)).collect())
            .unwrap_or_default()
    }

    /// Checks each chain is a connected path in `physical`, chains are
    /// disjoint, and together they cover every surviving qubit.
    pub fn validate(&self, physical: &Graph) -> Result<()> {
        self.labeling.validate(&self.graph)?;
        let mut seen = BTreeSet::new();
        for (&v, chain) in &self.chains {
            let idx: BTreeSet<VertexId> = chain.iter().map(|q| self.spec.linear(q)).collect();
            if idx.len() != chain.len() || !physical.is_connected_subset(&idx) {
                return Err(Error::InvalidArgument(format!(
                    "chain of virtual vertex {v} is not a connected path"
                )));
            }
            for q in idx {
                if !seen.insert(q) {
                    return Err(Error::InvalidArgument(format!(
                        "qubit {q} is in more than one chain"
                    )));
                }
            }
        }
        let all: BTreeSet<VertexId> = physical.vertices().collect();
        if seen != all {
            return Err(Error::InvalidArgument(
                "chains do not cover the surviving qubits".into(),
            ));
        }
        Ok(())
    }
}

/// Contracts every surviving chain segment of `g` into one virtual vertex.
///
/// A vertical chain is the run of left qubits with fixed `(col, index)`; a
/// horizontal chain the run of right qubits with fixed `(row, index)`. A chain
/// broken by a dead qubit or dead intercell coupler splits into maximal
/// connected segments, each its own virtual vertex. A left and a right segment
/// are adjacent iff some cell holds a live coupler between their members.
pub fn virtualize(g: &Graph, spec: &ChimeraSpec) -> VirtualHardware {
    let ChimeraSpec { n, m, c } = *spec;
    let mut chains: BTreeMap<VertexId, Vec<QubitCoord>> = BTreeMap::new();
    let mut owner: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut labeling = BipartiteLabeling::default();
    let mut next = 0;

    let mut push_segments = |line: Vec<QubitCoord>, side: Side| {
        let mut segment: Vec<QubitCoord> = Vec::new();
        let mut flush = |segment: &mut Vec<QubitCoord>| {
            if segment.is_empty() {
                return;
            }
            for q in segment.iter() {
                owner.insert(spec.linear(q), next);
            }
            match side {
                Side::Left => labeling.left.insert(next),
                Side::Right => labeling.right.insert(next),
            };
            chains.insert(next, std::mem::take(segment));
            next += 1;
        };
        for q in line {
            let idx = spec.linear(&q);
            if !g.contains_vertex(idx) {
                flush(&mut segment);
                continue;
            }
            if let Some(prev) = segment.last() {
                if !g.has_edge(spec.linear(prev), idx) {
                    flush(&mut segment);
                }
            }
            segment.push(q);
        }
        flush(&mut segment);
    };

    for col in 0..m {
        for i in 0..c {
            let line = (0..n)
                .map(|row| QubitCoord::new(row, col, Side::Left, i))
                .collect();
            push_segments(line, Side::Left);
        }
    }
    for row in 0..n {
        for i in 0..c {
            let line = (0..m)
                .map(|col| QubitCoord::new(row, col, Side::Right, i))
                .collect();
            push_segments(line, Side::Right);
        }
    }

    let mut graph = Graph::with_vertices(next);
    for row in 0..n {
        for col in 0..m {
            for a in 0..c {
                let l = spec.linear(&QubitCoord::new(row, col, Side::Left, a));
                for b in 0..c {
                    let r = spec.linear(&QubitCoord::new(row, col, Side::Right, b));
                    if g.has_edge(l, r) {
                        graph.insert_edge_unchecked(owner[&l], owner[&r]);
                    }
                }
            }
        }
    }

    VirtualHardware {
        spec: *spec,
        graph,
        labeling,
        chains,
    }
}
