//! Minor set covers of complete bipartite graphs.
//!
//! For `K_{N,N}` the cover is the contraction sequence of an `(N-1)`-edge
//! matching: `N` minors whose orders drop by one per step and whose last
//! member is `K_{N+1}`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{complement, is_bipartite, isolated_vertices, Graph, VertexId};
use crate::matching::{greedy_random_matching, MatchingTarget};
pub use crate::minor::{contract_matching, Minor, MinorSequence};

/// Largest graph [`clique_number`] accepts.
pub const CLIQUE_BUDGET: usize = 32;

/// Largest graph [`treewidth_exact`] accepts.
pub const TREEWIDTH_BUDGET: usize = 14;

/// Builds `K_{left,right}` and contracts a random `(min - 1)`-edge matching.
pub fn msc_complete_bipartite(left: usize, right: usize, seed: u64) -> Result<MinorSequence> {
    if left == 0 || right == 0 {
        return Err(Error::InvalidArgument(format!(
            "K_{{{left},{right}}}: both partitions need at least one vertex"
        )));
    }
    let g = Graph::complete_bipartite(left, right);
    let target = left.min(right) - 1;
    let matching = greedy_random_matching(&g, seed, MatchingTarget::Size(target));
    contract_matching(&g, &matching)
}

/// Dense bitset view of a graph with at most 64 vertices.
pub(crate) struct BitGraph {
    pub ids: Vec<VertexId>,
    pub adj: Vec<u64>,
}

impl BitGraph {
    pub fn new(g: &Graph) -> Self {
        assert!(g.order() <= 64);
        let ids: Vec<VertexId> = g.vertices().collect();
        let index: BTreeMap<VertexId, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![0u64; ids.len()];
        for (u, v) in g.edges() {
            adj[index[&u]] |= 1 << index[&v];
            adj[index[&v]] |= 1 << index[&u];
        }
        Self { ids, adj }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }
}

/// Order of the largest complete subgraph, by Bron-Kerbosch with pivoting.
pub fn clique_number(g: &Graph) -> Result<usize> {
    if g.order() > CLIQUE_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "clique number",
            vertices: g.order(),
            budget: CLIQUE_BUDGET,
        });
    }
    let bg = BitGraph::new(g);
    let all = if bg.len() == 64 {
        u64::MAX
    } else {
        (1u64 << bg.len()) - 1
    };
    let mut best = 0;
    expand(&bg.adj, 0, all, 0, &mut best);
    Ok(best as usize)
}

fn expand(adj: &[u64], size: u32, mut cand: u64, mut excl: u64, best: &mut u32) {
    if cand == 0 {
        if excl == 0 {
            *best = (*best).max(size);
        }
        return;
    }
    if size + cand.count_ones() <= *best {
        return;
    }
    let pivot_pool = cand | excl;
    let pivot = (0..adj.len())
        .filter(|&u| pivot_pool >> u & 1 == 1)
        .max_by_key(|&u| (adj[u] & cand).count_ones())
        .expect("pool is non-empty");
    let mut branch = cand & !adj[pivot];
    while branch != 0 {
        let v = branch.trailing_zeros() as usize;
        branch &= branch - 1;
        expand(adj, size + 1, cand & adj[v], excl & adj[v], best);
        cand &= !(1 << v);
        excl |= 1 << v;
    }
}

/// Exact treewidth by dynamic programming over vertex subsets.
///
/// `TW(S) = min over v in S of max(TW(S - v), Q(S - v, v))` where `Q(S, v)`
/// counts vertices outside `S + v` reachable from `v` through `S`. The answer
/// is `TW(V)`.
pub fn treewidth_exact(g: &Graph) -> Result<usize> {
    let n = g.order();
    if n > TREEWIDTH_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "treewidth",
            vertices: n,
            budget: TREEWIDTH_BUDGET,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    let bg = BitGraph::new(g);
    let full: u32 = (1u32 << n) - 1;
    let mut tw = vec![u8::MAX; 1 << n];
    tw[0] = 0;
    // Subsets in increasing numeric order visit every S - v before S.
    for s in 1..=full {
        let mut best = u8::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let without = s & !(1 << v);
            let q = reach_outside(&bg.adj, without, v, full);
            let cand = tw[without as usize].max(q);
            best = best.min(cand);
        }
        tw[s as usize] = best;
    }
    Ok(tw[full as usize] as usize)
}

fn reach_outside(adj: &[u64], inside: u32, v: usize, full: u32) -> u8 {
    let inside = inside as u64;
    let mut comp: u64 = 1 << v;
    let mut frontier = comp;
    while frontier != 0 {
        let u = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[u] & inside & !comp;
        comp |= fresh;
        frontier |= fresh;
    }
    let mut boundary = 0u64;
    let mut it = comp;
    while it != 0 {
        let u = it.trailing_zeros() as usize;
        it &= it - 1;
        boundary |= adj[u];
    }
    let outside = full as u64 & !inside & !(1 << v);
    (boundary & outside).count_ones() as u8
}

/// Outcome of [`verify_msc`]. Failed checks are listed, never raised.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MscReport {
    pub left: usize,
    pub right: usize,
    pub cardinality: usize,
    pub final_is_complete: bool,
    pub complement_isolated_counts: Vec<usize>,
    pub clique_numbers: Vec<usize>,
    /// `None` where the minor exceeds [`TREEWIDTH_BUDGET`].
    pub treewidths: Vec<Option<usize>>,
    pub failures: Vec<String>,
}

impl MscReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Isolated vertices in the complement of the `i`-th minor of `K_{a,b}`.
///
/// Every merged vertex is universal. An uncontracted vertex is universal only
/// when it is the last one left on its side, which happens at the final step
/// of an equal-partition cover (`K_{N+1}` has `N + 1` isolated complement
/// vertices) or on the smaller side of an unequal one.
pub fn expected_isolated(a: usize, b: usize, i: usize) -> usize {
    i + usize::from(a.saturating_sub(i) == 1) + usize::from(b.saturating_sub(i) == 1)
}

/// Checks a contraction sequence built from a complete bipartite source.
///
/// For `K_{N,N'}` with `p = min(N, N')`: cardinality `p` (equal partitions
/// only), [`expected_isolated`] vertices in the complement of `M(i)`, clique numbers
/// `2, 3, ...`, a final minor containing `K_{p+1}` (and equal to it when
/// `N = N'`), and treewidth `p` throughout.
pub fn verify_msc(seq: &MinorSequence) -> MscReport {
    let mut failures = Vec::new();
    let (left, right) = match is_bipartite(&seq.source) {
        Some(lab) => {
            let (a, b) = (lab.left.len(), lab.right.len());
            if seq.source.size() != a * b {
                failures.push(format!("source is not complete bipartite ({a}x{b})"));
            }
            (a, b)
        }
        None => {
            failures.push("source is not bipartite".into());
            (0, 0)
        }
    };
    let p = left.min(right);
    if let Err(e) = seq.validate() {
        failures.push(format!("sequence: {e}"));
    }

    let cardinality = seq.len();
    if left == right && cardinality != p {
        failures.push(format!("cardinality {cardinality}, expected {p}"));
    }

    let mut complement_isolated_counts = Vec::with_capacity(cardinality);
    let mut clique_numbers = Vec::with_capacity(cardinality);
    let mut treewidths = Vec::with_capacity(cardinality);
    for (i, minor) in seq.minors.iter().enumerate() {
        let iso = isolated_vertices(&complement(&minor.graph)).len();
        let expected = expected_isolated(left, right, i);
        if iso != expected {
            failures.push(format!(
                "complement of minor {i} has {iso} isolated vertices, expected {expected}"
            ));
        }
        complement_isolated_counts.push(iso);

        match clique_number(&minor.graph) {
            Ok(w) => {
                if p >= 1 && w != 2 + i {
                    failures.push(format!(
                        "minor {i} has clique number {w}, expected {}",
                        2 + i
                    ));
                }
                clique_numbers.push(w);
            }
            Err(e) => {
                failures.push(format!("minor {i}: {e}"));
                clique_numbers.push(0);
            }
        }

        let tw = treewidth_exact(&minor.graph).ok();
        if let Some(t) = tw {
            if t != p {
                failures.push(format!("minor {i} has treewidth {t}, expected {p}"));
            }
        }
        treewidths.push(tw);
    }

    let last = &seq.last().graph;
    let final_is_complete = if left == right {
        last.is_complete() && last.order() == p + 1
    } else {
        clique_numbers.last() == Some(&(p + 1))
    };
    if !final_is_complete {
        failures.push(format!("final minor does not realize K_{}", p + 1));
    }

    MscReport {
        left,
        right,
        cardinality,
        final_is_complete,
        complement_isolated_counts,
        clique_numbers,
        treewidths,
        failures,
    }
}
