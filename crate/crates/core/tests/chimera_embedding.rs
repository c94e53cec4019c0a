use std::collections::{BTreeMap, BTreeSet};

use minorcover::chimera::{
    apply_faults, build_chimera, virtualize, ChimeraSpec, FaultSet, QubitCoord,
};
use minorcover::embedder::{chain_stats, clique_in_virtual, embed_clique, verify_embedding};
use minorcover::graph::{Graph, Side};
use minorcover::oracle::{largest_clique_minor, witness_is_valid};
use minorcover::{BagMap, Error};

fn spec(n: usize, m: usize, c: usize) -> ChimeraSpec {
    ChimeraSpec::new(n, m, c).unwrap()
}

#[test]
fn coupler_count_matches_brute_enumeration() {
    for n in 1..=3 {
        for m in 1..=3 {
            for c in 1..=4 {
                let s = spec(n, m, c);
                let g = build_chimera(&s);
                let q = s.num_qubits();
                let brute = (0..q)
                    .flat_map(|a| (a + 1..q).map(move |b| (a, b)))
                    .filter(|&(a, b)| s.is_coupler(&s.coord(a).unwrap(), &s.coord(b).unwrap()))
                    .count();
                assert_eq!(g.size(), brute, "{s}");
                assert_eq!(g.size(), s.num_couplers(), "{s}");
            }
        }
    }
    assert_eq!(build_chimera(&spec(3, 3, 4)).size(), 192);
}

#[test]
fn maximal_clique_boundary() {
    for n in 1..=3 {
        for m in 1..=3 {
            for c in 1..=4 {
                let s = spec(n, m, c);
                let k = n.min(m) * c + 1;
                let target = build_chimera(&s);
                for seed in 0..3 {
                    let e = embed_clique(&s, k, seed).unwrap();
                    let v = verify_embedding(&Graph::complete(k), &target, &e);
                    assert!(v.is_valid(), "{s} k={k}: {v}");
                }
                assert!(matches!(
                    embed_clique(&s, k + 1, 0),
                    Err(Error::CliqueBound { .. })
                ));
            }
        }
    }
}

#[test]
fn oracle_agrees_on_tiny_hardware() {
    for c in 1..=4 {
        let g = build_chimera(&spec(1, 1, c));
        assert!(g.edges().eq(Graph::complete_bipartite(c, c).edges()));
        let (k, w) = largest_clique_minor(&g, 10).unwrap();
        assert_eq!(k, c + 1);
        assert!(witness_is_valid(&Graph::complete(k), &g, &w));
    }
    // C(2,2,1) is an 8-cycle.
    let ring = build_chimera(&spec(2, 2, 1));
    assert!(ring.vertices().all(|v| ring.degree(v) == 2));
    assert_eq!(ring.components().len(), 1);
    assert_eq!(largest_clique_minor(&ring, 10).unwrap().0, 3);
}

#[test]
fn chain_profiles() {
    for (n, c) in [(2, 2), (3, 2), (4, 3), (5, 2)] {
        let e = embed_clique(&spec(n, n, c), n * c + 1, 4).unwrap();
        let stats = chain_stats(&e);
        assert_eq!(
            stats.histogram,
            BTreeMap::from([(n, 2), (2 * n, n * c - 1)])
        );
    }
    let big = embed_clique(&spec(12, 12, 4), 49, 0).unwrap();
    let stats = chain_stats(&big);
    assert_eq!(stats.histogram, BTreeMap::from([(12, 2), (24, 47)]));
    assert_eq!(stats.total_qubits, 1152);

    let wide = embed_clique(&spec(2, 2, 20), 41, 0).unwrap();
    assert_eq!(chain_stats(&wide).max_chain, 4);
}

#[test]
fn singleton_embedding_stats() {
    let e: BagMap = (0..5).map(|v| (v, BTreeSet::from([v]))).collect();
    assert_eq!(chain_stats(&e).to_string(), "1:5");
}

#[test]
fn ideal_virtualization_is_complete_bipartite() {
    for n in 1..=4 {
        for m in 1..=4 {
            for c in 1..=4 {
                let s = spec(n, m, c);
                let g = build_chimera(&s);
                let vh = virtualize(&g, &s);
                vh.validate(&g).unwrap();
                assert_eq!(vh.labeling.left.len(), m * c, "{s}");
                assert_eq!(vh.labeling.right.len(), n * c, "{s}");
                assert_eq!(vh.graph.size(), n * m * c * c, "{s}");
                for (v, chain) in &vh.chains {
                    let want = if vh.labeling.left.contains(v) { n } else { m };
                    assert_eq!(chain.len(), want);
                }
            }
        }
    }
    let vh = virtualize(&build_chimera(&spec(12, 12, 4)), &spec(12, 12, 4));
    assert_eq!((vh.labeling.left.len(), vh.labeling.right.len()), (48, 48));
    assert!(vh.graph.size() == 48 * 48);
}

/// Checks that chains are disjoint connected paths of live qubits and that
/// every virtual edge is carried by a coupler.
fn assert_chain_map_sound(physical: &Graph, s: &ChimeraSpec) {
    let vh = virtualize(physical, s);
    let mut seen = BTreeSet::new();
    for v in vh.graph.vertices() {
        let chain: BTreeSet<usize> = vh.chain_indices(v).into_iter().collect();
        assert!(!chain.is_empty());
        assert!(chain.iter().all(|q| physical.contains_vertex(*q)));
        assert!(physical.is_connected_subset(&chain));
        assert!(chain.iter().all(|q| seen.insert(*q)));
    }
    for (a, b) in vh.graph.edges() {
        let ca = vh.chain_indices(a);
        let cb = vh.chain_indices(b);
        assert!(ca
            .iter()
            .any(|&x| cb.iter().any(|&y| physical.has_edge(x, y))));
    }
    // Every live qubit belongs to some chain.
    assert_eq!(seen.len(), physical.order());
}

#[test]
fn faulted_virtualization_is_sound_and_monotone() {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let s = spec(3, 3, 2);
    let ideal = build_chimera(&s);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let mut order: Vec<usize> = ideal.vertices().collect();
    order.shuffle(&mut rng);
    let mut faults = FaultSet::default();
    let mut prev_edges = virtualize(&ideal, &s).graph.size();
    for &q in order.iter().take(8) {
        faults.dead_qubits.insert(s.coord(q).unwrap());
        let g = apply_faults(&ideal, &s, &faults).unwrap();
        assert_chain_map_sound(&g, &s);
        let edges = virtualize(&g, &s).graph.size();
        assert!(edges <= prev_edges);
        prev_edges = edges;
    }
}

#[test]
fn dead_qubit_in_c222() {
    // Chains in C(2,2,2) have two qubits; killing one leaves a single-qubit
    // chain that keeps only that qubit's couplers.
    let s = spec(2, 2, 2);
    let ideal = build_chimera(&s);
    let dead = QubitCoord::new(0, 1, Side::Left, 0);
    let faults = FaultSet {
        dead_qubits: [dead].into(),
        ..Default::default()
    };
    let g = apply_faults(&ideal, &s, &faults).unwrap();
    assert_eq!(g.order(), 15);
    let vh = virtualize(&g, &s);
    let short: Vec<_> = vh.chains.iter().filter(|(_, c)| c.len() == 1).collect();
    assert_eq!(short.len(), 1);
    let (&v, chain) = short[0];
    assert_eq!(chain[0], QubitCoord::new(1, 1, Side::Left, 0));
    assert_eq!(vh.graph.order(), 8);
    // Brute force: two virtual vertices are adjacent iff some coupler joins
    // their chains.
    for a in vh.graph.vertices() {
        for b in vh.graph.vertices() {
            if a < b {
                let joined = vh
                    .chain_indices(a)
                    .iter()
                    .any(|&x| vh.chain_indices(b).iter().any(|&y| g.has_edge(x, y)));
                assert_eq!(vh.graph.has_edge(a, b), joined);
            }
        }
    }
    // The shortened chain lost the couplers of its dead row.
    assert_eq!(vh.graph.degree(v), 2);
    assert_eq!(vh.graph.size(), 16 - 2);
}

#[test]
fn clique_in_faulty_virtual_hardware_verifies() {
    let s = spec(3, 3, 4);
    let faults = FaultSet {
        dead_qubits: [QubitCoord::new(1, 1, Side::Right, 2)].into(),
        ..Default::default()
    };
    let g = apply_faults(&build_chimera(&s), &s, &faults).unwrap();
    let vh = virtualize(&g, &s);
    let mut found = 0;
    for seed in 0..5 {
        if let Ok(bags) = clique_in_virtual(&vh, 6, seed) {
            found += 1;
            let logical = Graph::complete(bags.len());
            let compact: BagMap = bags
                .iter()
                .enumerate()
                .map(|(i, (_, b))| (i, b.clone()))
                .collect();
            let v = verify_embedding(&logical, &vh.graph, &compact);
            assert!(v.is_valid(), "{v}");
        }
    }
    assert!(found > 0);
}
