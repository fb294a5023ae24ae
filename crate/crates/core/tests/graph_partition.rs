mod common;

use std::collections::BTreeSet;

use common::{qubit_circuit, weighted_graph};
use proptest::prelude::*;
use qudit_compress::partition::balanced_partition_count;
use qudit_compress::{
    build_interaction_graph, contract_graph, enumerate_balanced_partitions, min_cut_exact, min_cut_heuristic,
    Circuit64, Partition, WeightedGraph,
};

fn divisor_of(n: usize) -> impl Strategy<Value = usize> {
    let ds: Vec<usize> = (1..=n).filter(|k| n.is_multiple_of(*k)).collect();
    prop::sample::select(ds)
}

fn graph_and_k() -> impl Strategy<Value = (WeightedGraph, usize)> {
    (2usize..=8).prop_flat_map(|n| (weighted_graph(n), divisor_of(n)))
}

/// Cut weight computed straight from the edge list and a vertex labelling.
fn oracle_cut(g: &WeightedGraph, p: &Partition) -> u64 {
    let mut label = vec![usize::MAX; g.n_vertices()];
    for (i, grp) in p.groups().iter().enumerate() {
        for &v in grp {
            label[v] = i;
        }
    }
    g.edges().filter(|((u, v), _)| label[*u] != label[*v]).map(|(_, w)| w).sum()
}

/// All balanced partitions via `k^n` labellings, deduplicated up to group order.
fn brute_force_partitions(n: usize, k: usize) -> BTreeSet<Vec<Vec<usize>>> {
    let mut out = BTreeSet::new();
    for code in 0..k.pow(n as u32) {
        let mut blocks = vec![Vec::new(); k];
        let mut x = code;
        for v in 0..n {
            blocks[x % k].push(v);
            x /= k;
        }
        if blocks.iter().all(|b| b.len() == n / k) {
            blocks.sort();
            out.insert(blocks);
        }
    }
    out
}

#[test]
fn weight_conservation_exhaustive() {
    let mut rng_state = 0x2545_f491_4f6c_dd1du64;
    let mut next = || {
        rng_state ^= rng_state << 13;
        rng_state ^= rng_state >> 7;
        rng_state ^= rng_state << 17;
        rng_state
    };
    for n in 2..=8usize {
        for _ in 0..4 {
            let mut g = WeightedGraph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    let w = next() % 4;
                    if w > 0 {
                        g.add_weight(u, v, w).unwrap();
                    }
                }
            }
            for k in (1..=n).filter(|k| n % k == 0) {
                for p in enumerate_balanced_partitions(n, k).unwrap() {
                    let t = contract_graph(&g, &p).unwrap();
                    assert_eq!(t.dropped_weight + t.l1(), g.total_weight());
                    assert!(t.l0() <= t.l1());
                    assert_eq!(t.l1(), oracle_cut(&g, &p));
                }
            }
        }
    }
}

#[test]
fn enumeration_matches_closed_form_and_brute_force() {
    let fact = |m: usize| (1..=m as u128).product::<u128>();
    for n in 1..=9usize {
        for k in (1..=n).filter(|k| n % k == 0) {
            let listed = enumerate_balanced_partitions(n, k).unwrap();
            let closed = fact(n) / (fact(n / k).pow(k as u32) * fact(k));
            assert_eq!(listed.len() as u128, closed, "n={n} k={k}");
            assert_eq!(balanced_partition_count(n, k).unwrap(), Some(closed));
            let listed: BTreeSet<_> = listed.iter().map(|p| p.groups().to_vec()).collect();
            if k.pow(n as u32) <= 1_000_000 {
                assert_eq!(listed, brute_force_partitions(n, k), "n={n} k={k}");
            }
        }
    }
}

#[test]
fn enumeration_rejects_bad_sizes() {
    assert!(enumerate_balanced_partitions(5, 2).is_err());
    assert!(enumerate_balanced_partitions(4, 0).is_err());
    assert!(enumerate_balanced_partitions(40, 2).is_err());
}

#[test]
fn complete_graph_cuts_four() {
    let g = WeightedGraph::from_edges(4, (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v, 1)))).unwrap();
    for seed in 0..8 {
        assert_eq!(min_cut_heuristic(&g, 2, seed).unwrap().cut_weight, 4);
    }
    assert_eq!(min_cut_exact(&g, 2).unwrap().cut_weight, 4);
}

#[test]
fn empty_graph_cuts_nothing() {
    let g = WeightedGraph::new(6);
    for k in [1, 2, 3, 6] {
        assert_eq!(min_cut_exact(&g, k).unwrap().cut_weight, 0);
        assert_eq!(min_cut_heuristic(&g, k, 11).unwrap().cut_weight, 0);
    }
}

proptest! {
    #[test]
    fn exact_never_loses_to_heuristic((g, k) in graph_and_k(), seed in any::<u64>()) {
        let exact = min_cut_exact(&g, k).unwrap();
        let heur = min_cut_heuristic(&g, k, seed).unwrap();
        prop_assert!(exact.cut_weight <= heur.cut_weight);
        for r in [&exact, &heur] {
            prop_assert_eq!(r.cut_weight + r.internal_weight, g.total_weight());
            prop_assert_eq!(r.cut_weight, oracle_cut(&g, &r.partition));
        }
        let best = enumerate_balanced_partitions(g.n_vertices(), k).unwrap()
            .iter().map(|p| oracle_cut(&g, p)).min().unwrap();
        prop_assert_eq!(exact.cut_weight, best);
        prop_assert_eq!(min_cut_heuristic(&g, k, seed).unwrap(), heur);
    }

    #[test]
    fn graph_ignores_gate_order(
        (circuit, perm) in (2usize..7).prop_flat_map(|n| qubit_circuit(n, 25))
            .prop_flat_map(|c| { let len = c.gates().len(); (Just(c), Just((0..len).collect::<Vec<_>>()).prop_shuffle()) })
    ) {
        let shuffled: Vec<_> = perm.iter().map(|&i| circuit.gates()[i].clone()).collect();
        let other = Circuit64::from_parts(&circuit.dims(), shuffled).unwrap();
        let g = build_interaction_graph(&circuit);
        prop_assert_eq!(&g, &build_interaction_graph(&other));
        prop_assert_eq!(g.total_weight() as usize, circuit.stats().n_nonlocal);
    }

    #[test]
    fn trivial_partition_keeps_every_edge(g in (2usize..=8).prop_flat_map(weighted_graph)) {
        let n = g.n_vertices();
        let p = enumerate_balanced_partitions(n, n).unwrap().remove(0);
        let t = contract_graph(&g, &p).unwrap();
        prop_assert_eq!(t.dropped_weight, 0);
        prop_assert_eq!(&t.graph, &g);
        prop_assert_eq!(t.l0() == t.l1(), g.edges().all(|(_, w)| w == 1));
    }
}
