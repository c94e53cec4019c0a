//! Edge matchings and the seeded greedy matching used to drive contraction.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph, VertexId};

/// An ordered list of pairwise non-adjacent edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Matching {
    pub edges: Vec<Edge>,
}

impl Matching {
    pub fn new(edges: impl IntoIterator<Item = Edge>) -> Self {
        Self {
            edges: edges.into_iter().map(|(u, v)| edge(u, v)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Vertices covered by the matching.
    pub fn covered(&self) -> BTreeSet<VertexId> {
        self.edges.iter().flat_map(|&(u, v)| [u, v]).collect()
    }

    /// Every edge exists in `g` and no two edges share an endpoint.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut seen = BTreeSet::new();
        for &(u, v) in &self.edges {
            if !g.has_edge(u, v) {
                return Err(Error::InvalidMatching(format!(
                    "edge ({u}, {v}) is not in the graph"
                )));
            }
            for w in [u, v] {
                if !seen.insert(w) {
                    return Err(Error::InvalidMatching(format!(
                        "vertex {w} is covered twice"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// How many edges the greedy matcher should try to collect.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchingTarget {
    Size(usize),
    Unlimited,
}

/// Deterministic RNG for a seed; every randomized routine goes through this.
pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Greedy random matching.
///
/// Repeatedly picks an edge uniformly from the remaining candidates and drops
/// every candidate sharing an endpoint with it. Stops, in this order, when
/// `target` edges have been collected, when the remaining candidates are a
/// single edge (a `K_{1,1}`), or when no candidates remain.
pub fn greedy_random_matching(g: &Graph, seed: u64, target: MatchingTarget) -> Matching {
    let mut rng = rng_for(seed);
    greedy_from_candidates(g.edges().collect(), &mut rng, target)
}

pub(crate) fn greedy_from_candidates<R: Rng>(
    mut candidates: Vec<Edge>,
    rng: &mut R,
    target: MatchingTarget,
) -> Matching {
    let limit = match target {
        MatchingTarget::Size(n) => n,
        MatchingTarget::Unlimited => usize::MAX,
    };
    let mut picked = Vec::new();
    loop {
        if picked.len() >= limit || candidates.len() <= 1 {
            break;
        }
        let (u, v) = candidates[rng.gen_range(0..candidates.len())];
        picked.push((u, v));
        candidates.retain(|&(a, b)| a != u && a != v && b != u && b != v);
    }
    Matching { edges: picked }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn knn_unlimited_gives_n_minus_one() {
        for n in 1..=6 {
            let g = Graph::complete_bipartite(n, n);
            let m = greedy_random_matching(&g, 3, MatchingTarget::Unlimited);
            assert_eq!(m.len(), n - 1);
            m.validate(&g).unwrap();
        }
    }

    #[test]
    fn k11_gives_empty_matching() {
        let g = Graph::complete_bipartite(1, 1);
        assert!(greedy_random_matching(&g, 0, MatchingTarget::Unlimited).is_empty());
    }

    #[test]
    fn target_caps_the_size() {
        let g = Graph::complete_bipartite(6, 6);
        let m = greedy_random_matching(&g, 1, MatchingTarget::Size(2));
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn seed_is_deterministic() {
        let g = Graph::complete_bipartite(7, 5);
        let a = greedy_random_matching(&g, 42, MatchingTarget::Unlimited);
        let b = greedy_random_matching(&g, 42, MatchingTarget::Unlimited);
        assert_eq!(a, b);
    }

    #[test]
    fn validate_rejects_shared_vertex() {
        let g = Graph::complete_bipartite(3, 3);
        let m = Matching::new([(0, 3), (0, 4)]);
        assert!(m.validate(&g).is_err());
        let m = Matching::new([(0, 1)]);
        assert!(m.validate(&g).is_err());
    }
}
