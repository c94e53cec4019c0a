//! Exhaustive minor containment for small host graphs.
//!
//! `H` is a minor of `G` iff some family of `|V(H)|` disjoint connected
//! vertex sets of `G` (the bags; leftover vertices are deleted) has a quotient
//! graph containing `H` as a subgraph. The search enumerates every such family:
//! host vertices are visited in ascending id order and each is either left
//! unused, added to an open bag, or opens a new bag. Bags are thereby numbered
//! by their smallest vertex, so each family is generated exactly once.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::minor::{BagMap, MinorWitness};
use crate::msc::BitGraph;

/// Default cap on host order.
pub const DEFAULT_BUDGET: usize = 10;

/// Hard ceiling imposed by the bitset representation.
const MAX_HOST: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinorSearch {
    /// Bags of host vertices keyed by the pattern's vertex ids.
    Found(MinorWitness),
    NotMinor,
    BudgetExceeded {
        vertices: usize,
        budget: usize,
    },
}

impl MinorSearch {
    pub fn is_found(&self) -> bool {
        matches!(self, MinorSearch::Found(_))
    }

    pub fn witness(&self) -> Option<&MinorWitness> {
        match self {
            MinorSearch::Found(w) => Some(w),
            _ => None,
        }
    }
}

/// Decides whether `h` is a minor of `g`, with `|V(g)| <= budget`.
pub fn is_minor(h: &Graph, g: &Graph, budget: usize) -> MinorSearch {
    let budget = budget.min(MAX_HOST);
    if g.order() > budget {
        return MinorSearch::BudgetExceeded {
            vertices: g.order(),
            budget,
        };
    }
    let k = h.order();
    if k == 0 {
        return MinorSearch::Found(BagMap::new());
    }
    if k > g.order() || h.size() > g.size() {
        return MinorSearch::NotMinor;
    }
    let host = BitGraph::new(g);
    let pattern = BitGraph::new(h);
    let mut search = Search {
        host: &host,
        pattern: &pattern,
        pattern_edges: h.size(),
        k,
        assign: vec![None; host.len()],
        found: None,
    };
    search.descend(0, 0);
    match search.found {
        Some(w) => MinorSearch::Found(w),
        None => MinorSearch::NotMinor,
    }
}

struct Search<'a> {
    host: &'a BitGraph,
    pattern: &'a BitGraph,
    pattern_edges: usize,
    k: usize,
    assign: Vec<Option<usize>>,
    found: Option<MinorWitness>,
}

impl Search<'_> {
    fn descend(&mut self, i: usize, open: usize) {
        if self.found.is_some() {
            return;
        }
        let n = self.host.len();
        if open + (n - i) < self.k {
            return;
        }
        if i == n {
            self.check_leaf();
            return;
        }
        // Bias towards using vertices: try bags before leaving `i` out.
        let upper = if open < self.k { open + 1 } else { open };
        for b in 0..upper {
            self.assign[i] = Some(b);
            self.descend(i + 1, open.max(b + 1));
            if self.found.is_some() {
                return;
            }
        }
        self.assign[i] = None;
        self.descend(i + 1, open);
    }

    fn check_leaf(&mut self) {
        let k = self.k;
        let mut blocks = vec![0u64; k];
        for (v, a) in self.assign.iter().enumerate() {
            if let Some(b) = a {
                blocks[*b] |= 1 << v;
            }
        }
        if !blocks.iter().all(|&b| connected_mask(&self.host.adj, b)) {
            return;
        }
        let mut quotient = vec![0u64; k];
        for a in 0..k {
            let mut reach = 0u64;
            let mut it = blocks[a];
            while it != 0 {
                let v = it.trailing_zeros() as usize;
                it &= it - 1;
                reach |= self.host.adj[v];
            }
            for (b, &block) in blocks.iter().enumerate() {
                if a != b && reach & block != 0 {
                    quotient[a] |= 1 << b;
                }
            }
        }
        let q_edges: usize = quotient
            .iter()
            .map(|m| m.count_ones() as usize)
            .sum::<usize>()
            / 2;
        if q_edges < self.pattern_edges {
            return;
        }
        if let Some(map) = monomorphism(&self.pattern.adj, &quotient) {
            let mut witness = BagMap::new();
            for (p, &q) in map.iter().enumerate() {
                let bag = bits(blocks[q]).map(|v| self.host.ids[v]).collect();
                witness.insert(self.pattern.ids[p], bag);
            }
            self.found = Some(witness);
        }
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

fn connected_mask(adj: &[u64], set: u64) -> bool {
    if set == 0 {
        return false;
    }
    let start = set & set.wrapping_neg();
    let mut comp = start;
    let mut frontier = start;
    while frontier != 0 {
        let u = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[u] & set & !comp;
        comp |= fresh;
        frontier |= fresh;
    }
    comp == set
}

/// Injective map from pattern vertices to host vertices preserving every
/// pattern edge, by backtracking. Returns the host index for each pattern
/// index.
fn monomorphism(pattern: &[u64], host: &[u64]) -> Option<Vec<usize>> {
    let np = pattern.len();
    if np > host.len() {
        return None;
    }
    // Highest-degree pattern vertices first, each following a mapped neighbour
    // where possible.
    let mut order: Vec<usize> = Vec::with_capacity(np);
    let mut placed = 0u64;
    while order.len() < np {
        let next = (0..np)
            .filter(|&p| placed >> p & 1 == 0)
            .max_by_key(|&p| ((pattern[p] & placed).count_ones(), pattern[p].count_ones()))
            .expect("unplaced vertex remains");
        placed |= 1 << next;
        order.push(next);
    }
    let mut image = vec![usize::MAX; np];
    if place(pattern, host, &order, 0, &mut image, 0) {
        Some(image)
    } else {
        None
    }
}

fn place(
    pattern: &[u64],
    host: &[u64],
    order: &[usize],
    depth: usize,
    image: &mut [usize],
    used: u64,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let p = order[depth];
    let need = pattern[p].count_ones();
    for q in 0..host.len() {
        if used >> q & 1 == 1 || host[q].count_ones() < need {
            continue;
        }
        let ok = order[..depth]
            .iter()
            .filter(|&&r| pattern[p] >> r & 1 == 1)
            .all(|&r| host[q] >> image[r] & 1 == 1);
        if !ok {
            continue;
        }
        image[p] = q;
        if place(pattern, host, order, depth + 1, image, used | 1 << q) {
            return true;
        }
    }
    image[p] = usize::MAX;
    false
}

/// Finds an injective, edge-preserving map from `pattern` into `host` (a
/// subgraph isomorphism onto a not necessarily induced subgraph).
pub fn subgraph_embedding(pattern: &Graph, host: &Graph) -> Option<BTreeMap<VertexId, VertexId>> {
    if pattern.order() > host.order() || pattern.order() > MAX_HOST || host.order() > MAX_HOST {
        return None;
    }
    let p = BitGraph::new(pattern);
    let h = BitGraph::new(host);
    monomorphism(&p.adj, &h.adj).map(|img| {
        img.iter()
            .enumerate()
            .map(|(i, &q)| (p.ids[i], h.ids[q]))
            .collect()
    })
}

pub fn is_subgraph(pattern: &Graph, host: &Graph) -> bool {
    subgraph_embedding(pattern, host).is_some()
}

/// Largest `k` such that `K_k` is a minor of `g`, with a witness.
pub fn largest_clique_minor(g: &Graph, budget: usize) -> Result<(usize, MinorWitness)> {
    let budget = budget.min(MAX_HOST);
    if g.order() > budget {
        return Err(Error::BudgetExceeded {
            what: "clique minor search",
            vertices: g.order(),
            budget,
        });
    }
    let mut best = (0, BagMap::new());
    for k in 1..=g.order() {
        match is_minor(&Graph::complete(k), g, budget) {
            MinorSearch::Found(w) => best = (k, w),
            MinorSearch::NotMinor => break,
            MinorSearch::BudgetExceeded { vertices, budget } => {
                return Err(Error::BudgetExceeded {
                    what: "clique minor search",
                    vertices,
                    budget,
                })
            }
        }
    }
    Ok(best)
}

/// True if every pattern edge is realized between the corresponding bags
/// and the bags are disjoint and connected.
pub fn witness_is_valid(h: &Graph, g: &Graph, w: &MinorWitness) -> bool {
    if w.validate(g).is_err() || w.len() != h.order() {
        return false;
    }
    h.edges().all(|(a, b)| {
        let (Some(ba), Some(bb)) = (w.get(a), w.get(b)) else {
            return false;
        };
        ba.iter().any(|&x| g.neighbors(x).any(|y| bb.contains(&y)))
    })
}

/// Host vertices used by a witness.
pub fn witness_support(w: &MinorWitness) -> BTreeSet<VertexId> {
    w.iter().flat_map(|(_, b)| b.iter().copied()).collect()
}
