use std::collections::BTreeSet;

use minorcover::embedder::verify_embedding;
use minorcover::graph::{complement, is_bipartite, Graph};
use minorcover::matching::{greedy_random_matching, MatchingTarget};
use minorcover::minor::{contract_edge, contract_matching};
use minorcover::msc::{clique_number, treewidth_exact};
use minorcover::oracle::{is_minor, witness_is_valid, MinorSearch};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let edges = pairs
                .iter()
                .zip(&keep)
                .filter(|(_, k)| **k)
                .map(|(e, _)| *e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn arb_bipartite(max_side: usize) -> impl Strategy<Value = Graph> {
    (1..=max_side, 1..=max_side).prop_flat_map(|(l, r)| {
        proptest::collection::vec(any::<bool>(), l * r).prop_map(move |keep| {
            let edges = (0..l)
                .flat_map(|a| (l..l + r).map(move |b| (a, b)))
                .zip(keep)
                .filter(|(_, k)| *k)
                .map(|(e, _)| e);
            Graph::from_edges(l + r, edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn complement_is_an_involution(g in arb_graph(9)) {
        let c = complement(&g);
        prop_assert_eq!(c.size() + g.size(), g.order() * (g.order().saturating_sub(1)) / 2);
        prop_assert!(complement(&c).edges().eq(g.edges()));
    }

    #[test]
    fn contraction_drops_one_vertex(g in arb_graph(9), pick in any::<prop::sample::Index>()) {
        let edges: Vec<_> = g.edges().collect();
        prop_assume!(!edges.is_empty());
        let (u, v) = edges[pick.index(edges.len())];
        let (h, bags) = contract_edge(&g, (u, v)).unwrap();
        prop_assert_eq!(h.order(), g.order() - 1);
        let common = g.neighbors(u).filter(|w| g.has_edge(v, *w)).count();
        prop_assert_eq!(h.size(), g.size() - 1 - common);
        bags.validate(&g).unwrap();
    }

    #[test]
    fn greedy_matchings_are_valid(g in arb_graph(10), seed in any::<u64>()) {
        let m = greedy_random_matching(&g, seed, MatchingTarget::Unlimited);
        m.validate(&g).unwrap();
        prop_assert_eq!(m.covered().len(), 2 * m.len());
        let again = greedy_random_matching(&g, seed, MatchingTarget::Unlimited);
        prop_assert_eq!(m, again);
    }

    #[test]
    fn contraction_sequences_are_consistent(g in arb_bipartite(5), seed in any::<u64>()) {
        let m = greedy_random_matching(&g, seed, MatchingTarget::Unlimited);
        let seq = contract_matching(&g, &m).unwrap();
        seq.validate().unwrap();
        prop_assert_eq!(seq.len(), m.len() + 1);
        for (i, minor) in seq.minors.iter().enumerate() {
            prop_assert_eq!(minor.graph.order(), g.order() - i);
            minor.bags.validate(&g).unwrap();
            // Each minor is certified by its own bags.
            let (compact, ids) = minor.graph.compacted();
            let w = ids.iter().enumerate()
                .map(|(new, old)| (new, minor.bags.get(*old).unwrap().clone()))
                .collect();
            prop_assert!(verify_embedding(&compact, &g, &w).is_valid());
        }
    }

    #[test]
    fn minors_never_raise_treewidth(g in arb_graph(8), seed in any::<u64>()) {
        let tw = treewidth_exact(&g).unwrap();
        prop_assert!(clique_number(&g).unwrap() <= tw + 1);
        let m = greedy_random_matching(&g, seed, MatchingTarget::Unlimited);
        for minor in contract_matching(&g, &m).unwrap().minors {
            prop_assert!(treewidth_exact(&minor.graph).unwrap() <= tw);
        }
    }

    #[test]
    fn oracle_witnesses_pass_the_verifier(g in arb_graph(7), k in 1usize..5) {
        let h = Graph::complete(k);
        match is_minor(&h, &g, 10) {
            MinorSearch::Found(w) => {
                prop_assert!(witness_is_valid(&h, &g, &w));
                prop_assert!(verify_embedding(&h, &g, &w).is_valid());
                // Treewidth bounds clique minors from above.
                prop_assert!(k <= treewidth_exact(&g).unwrap() + 1);
            }
            MinorSearch::NotMinor => prop_assert!(k > clique_number(&g).unwrap()),
            MinorSearch::BudgetExceeded { .. } => prop_assert!(false),
        }
    }

    #[test]
    fn bipartite_labelling_is_proper(g in arb_bipartite(5)) {
        let lab = is_bipartite(&g).unwrap();
        lab.validate(&g).unwrap();
        let all: BTreeSet<_> = lab.left.union(&lab.right).copied().collect();
        prop_assert_eq!(all.len(), g.order());
    }
}

#[test]
fn odd_cycles_are_not_bipartite() {
    assert!(is_bipartite(&Graph::complete(3)).is_none());
    assert!(is_bipartite(&Graph::cycle(7)).is_none());
    assert!(is_bipartite(&Graph::cycle(8)).is_some());
}

#[test]
fn crown_three_minors() {
    let c6 = minorcover::faulty::crown_graph(3).unwrap().graph;
    assert!(is_minor(&Graph::complete(3), &c6, 10).is_found());
    assert_eq!(
        is_minor(&Graph::complete(4), &c6, 10),
        MinorSearch::NotMinor
    );
}

/// Largest clique reachable by vertex deletions and edge contractions,
/// memoized on the compacted edge set.
fn hadwiger_brute(
    g: &Graph,
    memo: &mut std::collections::HashMap<Vec<(usize, usize)>, usize>,
) -> usize {
    let (g, _) = g.compacted();
    let key: Vec<_> = std::iter::once((g.order(), usize::MAX))
        .chain(g.edges())
        .collect();
    if let Some(&h) = memo.get(&key) {
        return h;
    }
    let mut best = if g.is_complete() { g.order() } else { 0 };
    for v in g.vertices() {
        let mut h = g.clone();
        h.remove_vertex(v);
        best = best.max(hadwiger_brute(&h, memo));
    }
    for e in g.edges() {
        let (h, _) = contract_edge(&g, e).unwrap();
        best = best.max(hadwiger_brute(&h, memo));
    }
    memo.insert(key, best);
    best
}

#[test]
fn oracle_matches_brute_force_hadwiger_number() {
    use minorcover::oracle::largest_clique_minor;
    let mut memo = std::collections::HashMap::new();
    for n in 1..=5 {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        for mask in 0..1u32 << pairs.len() {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| *e);
            let g = Graph::from_edges(n, edges).unwrap();
            assert_eq!(
                largest_clique_minor(&g, 10).unwrap().0,
                hadwiger_brute(&g, &mut memo),
                "{g:?}"
            );
        }
    }
    for g in [
        Graph::complete_bipartite(3, 3),
        Graph::cycle(7),
        minorcover::faulty::crown_graph(4).unwrap().graph,
        Graph::complete_bipartite(2, 5),
    ] {
        assert_eq!(
            largest_clique_minor(&g, 10).unwrap().0,
            hadwiger_brute(&g, &mut memo)
        );
    }
}
