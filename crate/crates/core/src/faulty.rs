//! Incomplete bipartite graphs: necessary conditions for a `K_{N+1}` minor
//! and randomized attempts to realize one.
//!
//! In a bipartite graph with both parts of order `N`, any `K_{N+1}` minor model
//! uses every vertex: `N - 1` bags are matching edges and the two singleton
//! bags are complete vertices. Hence the two criteria checked here: enough
//! edges for the model, and a matching of at most `N - 1` edges covering every
//! incomplete vertex.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::embedder::verify_embedding;
use crate::error::{Error, Result};
use crate::graph::{complement, is_bipartite, BipartiteLabeling, Edge, Graph, VertexId};
use crate::matching::{greedy_from_candidates, Matching, MatchingTarget};
use crate::minor::{contract_edge, BagMap};

/// Default number of randomized trials per attempt.
pub const DEFAULT_ATTEMPTS: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncompleteBipartite {
    pub graph: Graph,
    pub labeling: BipartiteLabeling,
}

impl IncompleteBipartite {
    pub fn new(graph: Graph, labeling: BipartiteLabeling) -> Result<Self> {
        labeling.validate(&graph)?;
        Ok(Self { graph, labeling })
    }

    /// Uses the BFS two-colouring of `graph` as the labeling.
    pub fn from_graph(graph: Graph) -> Result<Self> {
        let labeling = is_bipartite(&graph).ok_or(Error::NotBipartite)?;
        Ok(Self { graph, labeling })
    }

    /// `K_{left,right}` minus `missing`.
    pub fn complete_minus(left: usize, right: usize, missing: &[Edge]) -> Result<Self> {
        let mut g = Graph::complete_bipartite(left, right);
        for &(u, v) in missing {
            if !g.remove_edge(u, v) {
                return Err(Error::EdgeNotPresent(u, v));
            }
        }
        let labeling = BipartiteLabeling::new((0..left).collect(), (left..left + right).collect());
        Self::new(g, labeling)
    }

    /// Common partition order, if both parts have the same order.
    pub fn balanced_order(&self) -> Result<usize> {
        let (l, r) = (self.labeling.left.len(), self.labeling.right.len());
        if l != r {
            return Err(Error::UnequalPartitions { left: l, right: r });
        }
        Ok(l)
    }
}

/// `K_{N,N}` minus the perfect matching `i -- N + i`.
pub fn crown_graph(n: usize) -> Result<IncompleteBipartite> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "crown graph needs N >= 2 (got {n})"
        )));
    }
    let missing: Vec<Edge> = (0..n).map(|i| (i, n + i)).collect();
    IncompleteBipartite::complete_minus(n, n, &missing)
}

/// Vertices not adjacent to the whole opposite part.
pub fn incomplete_vertices(b: &IncompleteBipartite) -> BTreeSet<VertexId> {
    b.graph
        .vertices()
        .filter(|&v| b.graph.degree(v) < b.labeling.opposite_order(v))
        .collect()
}

/// Edges a `K_{N+1}` minor model needs: `N(N+1)/2` between bags plus `N - 1`
/// inside the contracted bags.
pub fn min_edges_required(n: usize) -> usize {
    n * (n + 1) / 2 + n.saturating_sub(1)
}

/// Drops every edge incident to a degree-1 vertex. Vertices are kept; the
/// result is the candidate set for contraction, not a minor.
pub fn leaf_prune(g: &Graph) -> Graph {
    let mut out = g.clone();
    for (u, v) in g.edges() {
        if g.degree(u) == 1 || g.degree(v) == 1 {
            out.remove_edge(u, v);
        }
    }
    out
}

/// Exhaustive search for a matching of at most `budget` edges, drawn from the
/// leaf-pruned graph, that covers every incomplete vertex.
pub fn find_covering_matching(b: &IncompleteBipartite, budget: usize) -> Option<Matching> {
    let pruned = leaf_prune(&b.graph);
    let targets: Vec<VertexId> = incomplete_vertices(b).into_iter().collect();
    let target_set: BTreeSet<VertexId> = targets.iter().copied().collect();
    let mut used = BTreeSet::new();
    let mut chosen = Vec::new();
    let found = cover(
        &pruned,
        &targets,
        &target_set,
        &mut used,
        &mut chosen,
        budget,
    );
    found.then_some(Matching { edges: chosen })
}

fn cover(
    g: &Graph,
    targets: &[VertexId],
    target_set: &BTreeSet<VertexId>,
    used: &mut BTreeSet<VertexId>,
    chosen: &mut Vec<Edge>,
    budget: usize,
) -> bool {
    let uncovered: Vec<VertexId> = targets
        .iter()
        .copied()
        .filter(|v| !used.contains(v))
        .collect();
    let Some(&v) = uncovered.first() else {
        return true;
    };
    if chosen.len() + uncovered.len().div_ceil(2) > budget {
        return false;
    }
    // Partners that are themselves uncovered targets cover two at once.
    let mut partners: Vec<VertexId> = g.neighbors(v).filter(|w| !used.contains(w)).collect();
    partners.sort_by_key(|w| !target_set.contains(w));
    for w in partners {
        used.insert(v);
        used.insert(w);
        chosen.push(crate::graph::edge(v, w));
        if cover(g, targets, target_set, used, chosen, budget) {
            return true;
        }
        chosen.pop();
        used.remove(&v);
        used.remove(&w);
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliqueVerdict {
    NoCliquePossible,
    Inconclusive,
}

impl fmt::Display for CliqueVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CliqueVerdict::NoCliquePossible => "NoCliquePossible",
            CliqueVerdict::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriteriaReport {
    pub n: usize,
    pub required_edges: usize,
    pub actual_edges: usize,
    pub edge_count_ok: bool,
    pub incomplete_vertex_count: usize,
    pub covering_matching: Option<Matching>,
    pub cover_ok: bool,
    pub verdict: CliqueVerdict,
    /// `N(N+1)/2 + (N-1)` read as a bound on *missing* edges.
    pub alt_missing_bound: usize,
    /// `(N+1)^2 + (N-1)` read as a bound on retained edges.
    pub alt_size_bound: usize,
}

impl CriteriaReport {
    /// Names of the failed criteria, `edge-count` and/or `cover`.
    pub fn reasons(&self) -> Vec<&'static str> {
        let mut r = Vec::new();
        if !self.edge_count_ok {
            r.push("edge-count");
        }
        if !self.cover_ok {
            r.push("cover");
        }
        r
    }
}

/// Applies both necessary conditions for a `K_{N+1}` minor.
pub fn check_no_clique_criteria(b: &IncompleteBipartite) -> Result<CriteriaReport> {
    let n = b.balanced_order()?;
    let required_edges = min_edges_required(n);
    let actual_edges = b.graph.size();
    let edge_count_ok = actual_edges >= required_edges;
    let incomplete = incomplete_vertices(b);
    let covering_matching = find_covering_matching(b, n.saturating_sub(1));
    let cover_ok = covering_matching.is_some();
    let verdict = if edge_count_ok && cover_ok {
        CliqueVerdict::Inconclusive
    } else {
        CliqueVerdict::NoCliquePossible
    };
    Ok(CriteriaReport {
        n,
        required_edges,
        actual_edges,
        edge_count_ok,
        incomplete_vertex_count: incomplete.len(),
        covering_matching,
        cover_ok,
        verdict,
        alt_missing_bound: n * (n + 1) / 2 + n.saturating_sub(1),
        alt_size_bound: (n + 1) * (n + 1) + n.saturating_sub(1),
    })
}

/// How a trial chooses its `N - 1` contraction edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MatchingPolicy {
    /// While an incomplete vertex is uncovered, pick among the edges touching
    /// uncovered incomplete vertices; leaf edges are never candidates.
    #[default]
    CoverFirst,
    /// Plain greedy random matching over all edges.
    Unconstrained,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AttemptConfig {
    pub attempts: usize,
    pub seed: u64,
    pub policy: MatchingPolicy,
    /// Worker threads; `1` runs trials sequentially.
    pub jobs: usize,
}

impl Default for AttemptConfig {
    fn default() -> Self {
        Self {
            attempts: DEFAULT_ATTEMPTS,
            seed: 0,
            policy: MatchingPolicy::CoverFirst,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrialOutcome {
    /// Bags of `K_{N+1}`, keyed `0..=N`.
    Success(BagMap),
    /// Fewer than `N - 1` non-adjacent edges could be drawn.
    ShortMatching { found: usize },
    /// The complement of minor `step` held an isolated two-bag dimer.
    Dimer { step: usize },
    /// All contractions done but the final minor is not complete.
    NotComplete,
}

impl TrialOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, TrialOutcome::Success(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttemptOutcome {
    pub witness: Option<BagMap>,
    /// Trials up to and including the first success.
    pub trials: Vec<TrialOutcome>,
}

/// Cover-first attempt with default settings; see [`attempt_with`].
pub fn attempt_clique_embedding(
    b: &IncompleteBipartite,
    attempts: usize,
    seed: u64,
) -> Result<Option<BagMap>> {
    let cfg = AttemptConfig {
        attempts,
        seed,
        ..Default::default()
    };
    Ok(attempt_with(b, &cfg)?.witness)
}

/// Runs up to `cfg.attempts` independent trials, stopping at the first whose
/// `N - 1` contractions produce `K_{N+1}`. Trial `t` draws from stream `t` of
/// the seeded generator, so the outcome does not depend on `cfg.jobs`.
pub fn attempt_with(b: &IncompleteBipartite, cfg: &AttemptConfig) -> Result<AttemptOutcome> {
    let n = b.balanced_order()?;
    let run = |t: usize| run_trial(b, n, cfg.policy, cfg.seed, t);
    let trials: Vec<TrialOutcome> = if cfg.jobs <= 1 {
        let mut out = Vec::new();
        for t in 0..cfg.attempts {
            let o = run(t);
            let done = o.is_success();
            out.push(o);
            if done {
                break;
            }
        }
        out
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let mut all: Vec<TrialOutcome> =
            pool.install(|| (0..cfg.attempts).into_par_iter().map(run).collect());
        if let Some(first) = all.iter().position(TrialOutcome::is_success) {
            all.truncate(first + 1);
        }
        all
    };
    let witness = trials.iter().find_map(|t| match t {
        TrialOutcome::Success(w) => Some(w.clone()),
        _ => None,
    });
    Ok(AttemptOutcome { witness, trials })
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn run_trial(
    b: &IncompleteBipartite,
    n: usize,
    policy: MatchingPolicy,
    seed: u64,
    trial: usize,
) -> TrialOutcome {
    let mut rng = trial_rng(seed, trial);
    let want = n.saturating_sub(1);
    let matching = match policy {
        MatchingPolicy::CoverFirst => {
            let candidates: Vec<Edge> = leaf_prune(&b.graph).edges().collect();
            cover_first_matching(candidates, &incomplete_vertices(b), want, &mut rng)
        }
        MatchingPolicy::Unconstrained => {
            let candidates: Vec<Edge> = b.graph.edges().collect();
            greedy_from_candidates(candidates, &mut rng, MatchingTarget::Size(want))
        }
    };
    if matching.len() < want {
        return TrialOutcome::ShortMatching {
            found: matching.len(),
        };
    }

    let mut graph = b.graph.clone();
    let mut bags = BagMap::identity(&graph);
    for (i, &e) in matching.edges.iter().enumerate() {
        let (next, step) = contract_edge(&graph, e).expect("matching edges survive contraction");
        bags = step.compose(&bags);
        graph = next;
        if has_isolated_dimer(&graph, &bags) {
            return TrialOutcome::Dimer { step: i + 1 };
        }
    }
    if !(graph.is_complete() && graph.order() == n + 1) {
        return TrialOutcome::NotComplete;
    }
    let witness = bags.compacted();
    if !verify_embedding(&Graph::complete(n + 1), &b.graph, &witness).is_valid() {
        return TrialOutcome::NotComplete;
    }
    TrialOutcome::Success(witness)
}

fn cover_first_matching<R: Rng>(
    mut candidates: Vec<Edge>,
    incomplete: &BTreeSet<VertexId>,
    want: usize,
    rng: &mut R,
) -> Matching {
    let mut picked: Vec<Edge> = Vec::new();
    let mut covered: BTreeSet<VertexId> = BTreeSet::new();
    while picked.len() < want {
        let pending: Vec<Edge> = candidates
            .iter()
            .copied()
            .filter(|(u, v)| {
                (incomplete.contains(u) && !covered.contains(u))
                    || (incomplete.contains(v) && !covered.contains(v))
            })
            .collect();
        let uncovered_left = incomplete.iter().any(|v| !covered.contains(v));
        let pool = if uncovered_left {
            &pending
        } else {
            &candidates
        };
        if pool.is_empty() {
            break;
        }
        let (u, v) = pool[rng.gen_range(0..pool.len())];
        picked.push((u, v));
        covered.insert(u);
        covered.insert(v);
        candidates.retain(|&(a, c)| a != u && a != v && c != u && c != v);
    }
    Matching { edges: picked }
}

/// True if the complement of `minor` has a component that is a single edge
/// between two contracted (multi-vertex) bags.
pub fn has_isolated_dimer(minor: &Graph, bags: &BagMap) -> bool {
    let comp = complement(minor);
    comp.components()
        .iter()
        .any(|c| c.len() == 2 && c.iter().all(|&v| bags.get(v).is_some_and(|b| b.len() >= 2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn incomplete_counts() {
        let full = IncompleteBipartite::complete_minus(4, 4, &[]).unwrap();
        assert!(incomplete_vertices(&full).is_empty());
        let one = IncompleteBipartite::complete_minus(5, 5, &[(0, 5)]).unwrap();
        assert_eq!(incomplete_vertices(&one), BTreeSet::from([0, 5]));
        let crown = crown_graph(4).unwrap();
        assert_eq!(incomplete_vertices(&crown).len(), 8);
    }

    #[test]
    fn required_edges() {
        assert_eq!(min_edges_required(1), 1);
        assert_eq!(min_edges_required(2), 4);
        assert_eq!(min_edges_required(5), 19);
    }

    #[test]
    fn leaves() {
        assert_eq!(leaf_prune(&Graph::star(5)).size(), 0);
        assert_eq!(leaf_prune(&Graph::path(3)).size(), 0);
        let k = Graph::complete_bipartite(3, 3);
        assert_eq!(leaf_prune(&k), k);
        assert_eq!(leaf_prune(&Graph::path(5)).size(), 2);
    }

    #[test]
    fn crown_shapes() {
        let c3 = crown_graph(3).unwrap();
        assert_eq!((c3.graph.order(), c3.graph.size()), (6, 6));
        assert_eq!(c3.graph.components().len(), 1);
        assert!(c3.graph.vertices().all(|v| c3.graph.degree(v) == 2));
        let c2 = crown_graph(2).unwrap();
        assert_eq!(c2.graph.size(), 2);
        assert_eq!(c2.graph.components().len(), 2);
        assert!(crown_graph(1).is_err());
    }

    #[test]
    fn covering() {
        let one = IncompleteBipartite::complete_minus(5, 5, &[(0, 5)]).unwrap();
        let m = find_covering_matching(&one, 4).unwrap();
        assert_eq!(m.len(), 2);
        m.validate(&one.graph).unwrap();
        assert!(find_covering_matching(&crown_graph(4).unwrap(), 3).is_none());
        let full = IncompleteBipartite::complete_minus(3, 3, &[]).unwrap();
        assert_eq!(find_covering_matching(&full, 0), Some(Matching::default()));
    }

    #[test]
    fn criteria_examples() {
        let k22e = IncompleteBipartite::complete_minus(2, 2, &[(0, 2)]).unwrap();
        let r = check_no_clique_criteria(&k22e).unwrap();
        assert_eq!(r.verdict, CliqueVerdict::NoCliquePossible);
        assert!(!r.edge_count_ok);
        assert_eq!((r.actual_edges, r.required_edges), (3, 4));

        let r = check_no_clique_criteria(&crown_graph(5).unwrap()).unwrap();
        assert!(r.edge_count_ok);
        assert!(!r.cover_ok);
        assert_eq!(r.reasons(), vec!["cover"]);

        let k55e = IncompleteBipartite::complete_minus(5, 5, &[(0, 5)]).unwrap();
        let r = check_no_clique_criteria(&k55e).unwrap();
        assert_eq!(r.verdict, CliqueVerdict::Inconclusive);

        let unequal = IncompleteBipartite::complete_minus(2, 3, &[]).unwrap();
        assert!(matches!(
            check_no_clique_criteria(&unequal),
            Err(Error::UnequalPartitions { .. })
        ));
    }

    #[test]
    fn complete_graph_succeeds_first_trial() {
        let k33 = IncompleteBipartite::complete_minus(3, 3, &[]).unwrap();
        for seed in 0..10 {
            let out = attempt_with(
                &k33,
                &AttemptConfig {
                    seed,
                    policy: MatchingPolicy::Unconstrained,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(out.trials.len(), 1);
            assert!(out.witness.is_some());
        }
    }

    #[test]
    fn jobs_do_not_change_the_outcome() {
        let k55e = IncompleteBipartite::complete_minus(5, 5, &[(0, 5)]).unwrap();
        let mk = |jobs| AttemptConfig {
            attempts: 20,
            seed: 9,
            policy: MatchingPolicy::Unconstrained,
            jobs,
        };
        assert_eq!(
            attempt_with(&k55e, &mk(1)).unwrap(),
            attempt_with(&k55e, &mk(4)).unwrap()
        );
    }
}
