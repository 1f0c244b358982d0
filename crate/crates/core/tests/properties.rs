use std::collections::BTreeSet;

use miuz_core::attack::{run_attack, AttackRun, Strategy as Attack};
use miuz_core::graph::Graph;
use miuz_core::metrics::oracle::{betweenness_bruteforce, miuz_bruteforce};
use miuz_core::metrics::{
    betweenness_all, degree_all, harmonic_all, miuz_all, miuz_all_exact, miuz_single,
    MetricKind, MetricVector,
};
use miuz_core::AttackMode;
use num_rational::Ratio;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// G(n, p) plus a few nodes already disconnected, so metrics are also
/// exercised on partially attacked graphs.
fn random_graph(n: usize, p: f64, dead: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let mut g = Graph::from_edges(n, edges).unwrap();
    for _ in 0..dead.min(n) {
        let alive: Vec<_> = g.alive_nodes().collect();
        let victim = alive[rng.gen_range(0..alive.len())];
        g.disconnect_node(victim).unwrap();
    }
    g
}

fn graphs() -> impl Strategy<Value = Graph> {
    (1usize..=50, 0.0f64..0.3, 0usize..4, any::<u64>())
        .prop_map(|(n, p, dead, seed)| random_graph(n, p, dead, seed))
}

fn fresh_graphs() -> impl Strategy<Value = Graph> {
    (1usize..=40, 0.02f64..0.25, any::<u64>()).prop_map(|(n, p, seed)| random_graph(n, p, 0, seed))
}

fn alive_component_count(g: &Graph) -> usize {
    g.connected_components(true).count()
}

proptest! {
    #[test]
    fn miuz_routes_agree(g in graphs()) {
        let all = miuz_all_exact(&g);
        for node in 0..g.node_count() {
            if g.is_alive(node) {
                let single = miuz_single(&g, node).unwrap();
                prop_assert_eq!(all[node], Some(single));
                prop_assert_eq!(single, miuz_bruteforce(&g, node).unwrap());
            } else {
                prop_assert_eq!(all[node], None);
            }
        }
    }

    #[test]
    fn betweenness_matches_pair_counting(g in graphs()) {
        let fast = betweenness_all(&g);
        let slow = betweenness_bruteforce(&g);
        for node in 0..g.node_count() {
            match (fast.get(node), slow.get(node)) {
                (Some(a), Some(b)) => prop_assert!((a - b).abs() <= 1e-9, "{} vs {}", a, b),
                (a, b) => prop_assert_eq!(a, b),
            }
        }
    }

    #[test]
    fn articulation_points_match_brute_force(g in graphs()) {
        let before = alive_component_count(&g);
        let brute: BTreeSet<_> = g
            .alive_nodes()
            .filter(|&node| {
                let mut h = g.clone();
                h.disconnect_node(node).unwrap();
                let isolated = g.degree(node) == 0;
                // Removing a non-cut node loses one component only if it was isolated.
                let expected = if isolated { before - 1 } else { before };
                alive_component_count(&h) > expected
            })
            .collect();
        prop_assert_eq!(g.articulation_points(), brute);
    }

    #[test]
    fn miuz_positive_iff_articulation(g in graphs()) {
        let cuts = g.articulation_points();
        let all = miuz_all_exact(&g);
        for node in g.alive_nodes() {
            let positive = all[node].unwrap() > Ratio::from_integer(0);
            prop_assert_eq!(positive, cuts.contains(&node));
        }
    }

    #[test]
    fn miuz_range(g in graphs()) {
        let alive = g.alive_count() as u64;
        for node in g.alive_nodes() {
            let value = miuz_single(&g, node).unwrap();
            prop_assert!(value >= Ratio::from_integer(0));
            prop_assert!(value <= Ratio::from_integer(alive.saturating_sub(1)));
            let mut h = g.clone();
            h.disconnect_node(node).unwrap();
            // A degree-1 node only splits itself off, which scores 0 (K2 is the
            // smallest case), so the upper bound needs at least two neighbors.
            let all_singletons = g.degree(node) >= 2 && h.largest_component_size() <= 1;
            prop_assert_eq!(value == Ratio::from_integer(alive - 1) && alive > 1, all_singletons);
        }
    }

    #[test]
    fn harmonic_bounded_by_alive_count(g in graphs()) {
        let harmonic = harmonic_all(&g);
        let cap = g.alive_count().saturating_sub(1) as f64;
        for node in g.alive_nodes() {
            let h = harmonic.get(node).unwrap();
            prop_assert!(h >= 0.0 && h <= cap + 1e-12);
            let full = g.degree(node) == g.alive_count() - 1;
            prop_assert_eq!((h - cap).abs() < 1e-12, full);
        }
    }

    #[test]
    fn metrics_do_not_touch_the_graph(g in graphs()) {
        let before = g.clone();
        let _ = (miuz_all(&g), degree_all(&g), betweenness_all(&g), harmonic_all(&g));
        for node in g.alive_nodes() {
            let _ = miuz_single(&g, node);
        }
        prop_assert_eq!(g, before);
    }

    #[test]
    fn metric_scores_cover_alive_nodes(g in graphs()) {
        for v in [miuz_all(&g), degree_all(&g), betweenness_all(&g), harmonic_all(&g)] {
            for node in 0..g.node_count() {
                prop_assert_eq!(v.get(node).is_some(), g.is_alive(node));
                if let Some(score) = v.get(node) {
                    prop_assert!(score >= 0.0);
                }
            }
        }
    }

    #[test]
    fn bfs_respects_edges(g in graphs()) {
        for source in g.alive_nodes() {
            let dist = g.bfs_distances(source).unwrap();
            for (u, v) in g.edges() {
                match (dist[u], dist[v]) {
                    (Some(du), Some(dv)) => prop_assert!(dv <= du + 1 && du <= dv + 1),
                    (None, None) => {}
                    _ => prop_assert!(false, "edge ({}, {}) crosses reachability", u, v),
                }
            }
        }
    }

    #[test]
    fn disconnect_changes_components_predictably(g in graphs()) {
        let before = alive_component_count(&g);
        for node in g.alive_nodes() {
            let mut h = g.clone();
            h.disconnect_node(node).unwrap();
            let after = alive_component_count(&h);
            let pieces = after + 1 - before;
            if g.degree(node) == 0 {
                prop_assert_eq!(after, before - 1);
                prop_assert_eq!(h.edge_count(), g.edge_count());
            } else {
                prop_assert!(pieces >= 1);
                prop_assert!(h.edge_count() < g.edge_count());
            }
        }
    }

    #[test]
    fn partition_invariants(g in graphs()) {
        let parts = g.connected_components(true);
        prop_assert_eq!(parts.sizes().iter().sum::<usize>(), g.alive_count());
        prop_assert_eq!(parts.largest(), parts.sizes().first().copied().unwrap_or(0));
        prop_assert!(parts.sizes().windows(2).all(|w| w[0] >= w[1]));
        for (u, v) in g.edges() {
            prop_assert_eq!(parts.label(u), parts.label(v));
        }
    }

    #[test]
    fn attack_trace_invariants(g in fresh_graphs(), kind_index in 0usize..5, simultaneous in any::<bool>()) {
        let kind = MetricKind::ALL[kind_index];
        let mode = if simultaneous { AttackMode::Simultaneous } else { AttackMode::Sequential };
        let strategy = Attack::new(kind, mode).with_seed(17);
        let trace = run_attack(&g, strategy).unwrap();
        prop_assert_eq!(&trace, &run_attack(&g, strategy).unwrap());

        let n = g.node_count();
        prop_assert_eq!(trace.strikes.len(), n);
        let mut order = trace.order();
        order.sort_unstable();
        prop_assert_eq!(order, (0..n).collect::<Vec<_>>());
        prop_assert!(trace.strikes.windows(2).all(|w| w[1].lcc_after <= w[0].lcc_after));
        prop_assert!(trace.strikes.iter().all(|s| (0.0..=1.0).contains(&s.s)));
        prop_assert_eq!(trace.strikes.last().unwrap().s, 0.0);

        let r = trace.r_index().unwrap();
        prop_assert!((trace.r_a_index(n).unwrap() - r).abs() <= 1e-12);
        let mut prev = 0.0;
        for a in 1..=n {
            let weighted = a as f64 * trace.r_a_index(a).unwrap();
            prop_assert!(weighted + 1e-12 >= prev);
            prev = weighted;
        }
    }

    #[test]
    fn betweenness_ranking_is_scale_invariant(g in fresh_graphs()) {
        let trace = run_attack(&g, Attack::sequential(MetricKind::Betweenness)).unwrap();
        let mut h = g.clone();
        let mut order = Vec::new();
        while h.alive_count() > 0 {
            let alive = h.alive_count() as f64;
            let scale = if alive > 2.0 { 2.0 / ((alive - 1.0) * (alive - 2.0)) } else { 1.0 };
            let raw = betweenness_all(&h);
            let normalized = MetricVector::new(
                MetricKind::Betweenness,
                raw.scores().iter().map(|s| s.map(|v| v * scale)).collect(),
            );
            let node = normalized.argmax().unwrap();
            h.disconnect_node(node).unwrap();
            order.push(node);
        }
        prop_assert_eq!(trace.order(), order);
    }

    #[test]
    fn first_miuz_strike_hits_a_cut_vertex(g in fresh_graphs()) {
        let cuts = g.articulation_points();
        prop_assume!(!cuts.is_empty());
        let mut run = AttackRun::new(&g, Attack::sequential(MetricKind::Miuz)).unwrap();
        let first = run.next().unwrap();
        prop_assert!(cuts.contains(&first.node));
    }
}

#[test]
fn sequential_miuz_is_greedy_on_the_largest_component() {
    // Whenever a largest component has a cut vertex, a sequential Miuz
    // strike leaves the smallest possible largest component.
    for seed in 0..30 {
        let g = random_graph(30, 0.08, 0, seed);
        let mut run = AttackRun::new(&g, Attack::sequential(MetricKind::Miuz)).unwrap();
        loop {
            let current = run.graph().clone();
            let Some(strike) = run.next() else { break };
            let parts = current.connected_components(true);
            let cut_in_largest = current
                .articulation_points()
                .into_iter()
                .any(|c| parts.component_size(c) == parts.largest());
            if !cut_in_largest {
                continue;
            }
            let best = current
                .alive_nodes()
                .map(|node| {
                    let mut h = current.clone();
                    h.disconnect_node(node).unwrap();
                    h.largest_component_size()
                })
                .min()
                .unwrap();
            assert_eq!(strike.lcc_after, best, "seed {seed}, strike {}", strike.q);
        }
    }
}
