mod common;

use std::collections::BTreeSet;

use bergelab::experiment::{wilson, Z95};
use bergelab::hypergraph::combin::{binomial, colex_rank, colex_unrank};
use bergelab::hypergraph::fixture;
use bergelab::posa::{
    is_expander, is_weak_expander, replay, rotation_closure, ExpanderMode, ExpanderVerdict,
};
use bergelab::random::{gnrp_sample, kout_sample, process_sample, Replacement};
use bergelab::solvers::{find_hamiltonian_berge, find_weak_hamiltonian, longest_berge_path, SolveBudget, SolveStatus};
use bergelab::sparsifier::{choice_count, sparsify};
use bergelab::{verify_certificate, Hypergraph};
use common::*;
use proptest::prelude::*;

/// Small 3-graphs as (n, edge list) with edges drawn from all 3-subsets.
fn small_graph(max_n: usize, max_m: usize) -> impl Strategy<Value = Hypergraph> {
    (4..=max_n).prop_flat_map(move |n| {
        let all = r_subsets(n, 3);
        proptest::sample::subsequence(all.clone(), 0..=max_m.min(all.len()))
            .prop_map(move |edges| Hypergraph::new(n, 3, edges).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn colex_rank_round_trips(n in 3usize..30, r in 1usize..5, seed in any::<u64>()) {
        prop_assume!(r <= n);
        let rank = seed % binomial(n as u64, r as u64);
        let set = colex_unrank(rank, r);
        prop_assert_eq!(set.len(), r);
        prop_assert!(set.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(*set.last().unwrap() <= n);
        prop_assert_eq!(colex_rank(&set), rank);
    }

    #[test]
    fn fixture_round_trips(h in small_graph(9, 14)) {
        let back = fixture::parse(&fixture::to_string(&h)).unwrap();
        prop_assert_eq!(back.n(), h.n());
        let a: Vec<Vec<usize>> = h.edges().map(|(_, e)| e.to_vec()).collect();
        let b: Vec<Vec<usize>> = back.edges().map(|(_, e)| e.to_vec()).collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn shadow_pairs_are_covered_pairs(h in small_graph(9, 14)) {
        let s = h.shadow();
        for u in 1..=h.n() {
            for v in 1..=h.n() {
                let covered = u != v && h.edges().any(|(_, e)| e.contains(&u) && e.contains(&v));
                prop_assert_eq!(s.has_pair(u, v), covered);
            }
        }
    }

    #[test]
    fn found_certificates_verify(h in small_graph(11, 22)) {
        let budget = SolveBudget::default();
        for weak in [false, true] {
            let res = if weak {
                find_weak_hamiltonian(&h, &budget).unwrap()
            } else {
                find_hamiltonian_berge(&h, &budget).unwrap()
            };
            if res.status == SolveStatus::Found {
                let c = res.certificate.unwrap();
                prop_assert!(verify_certificate(&h, &c).is_hamiltonian());
                prop_assert_eq!(c.weak, weak);
            }
            let path = longest_berge_path(&h, &budget, weak).unwrap().certificate.unwrap();
            prop_assert!(verify_certificate(&h, &path).is_valid());
        }
    }

    #[test]
    fn weak_found_iff_ordinary_or_weaker(h in small_graph(8, 12)) {
        // an ordinary cycle is also a weak one
        let budget = SolveBudget::exact(20_000_000);
        let ordinary = find_hamiltonian_berge(&h, &budget).unwrap().status;
        let weak = find_weak_hamiltonian(&h, &budget).unwrap().status;
        if ordinary == SolveStatus::Found {
            prop_assert_eq!(weak, SolveStatus::Found);
        }
        if weak == SolveStatus::ProvedAbsent {
            prop_assert_eq!(ordinary, SolveStatus::ProvedAbsent);
        }
    }

    #[test]
    fn rotations_keep_vertex_set_and_left_end(h in small_graph(8, 12), cut in 0.0f64..1.0) {
        let longest = longest_berge_path(&h, &SolveBudget::exact(20_000_000), false)
            .unwrap()
            .certificate
            .unwrap();
        let len = 1 + (cut * longest.len() as f64) as usize;
        let len = len.min(longest.len());
        let base = bergelab::BergeCertificate::path(
            longest.vertices[..len].to_vec(),
            longest.edges[..len - 1].to_vec(),
            false,
        );
        let state = rotation_closure(&h, &base).unwrap();
        prop_assert!(state.right_endpoints.contains(base.vertices.last().unwrap()));
        let vertex_set: BTreeSet<usize> = base.vertices.iter().copied().collect();
        for (v, moves) in &state.derivations {
            let p = replay(&h, &base, moves).unwrap();
            prop_assert!(verify_certificate(&h, &p).is_valid());
            prop_assert!(!p.has_repeated_edge());
            prop_assert_eq!(p.vertices[0], base.vertices[0]);
            prop_assert_eq!(p.vertices.last(), Some(v));
            prop_assert_eq!(p.vertices.iter().copied().collect::<BTreeSet<_>>(), vertex_set.clone());
        }
        // a longest path cannot be extended
        if len == longest.len() {
            prop_assert!(state.extension.is_none());
        }
    }

    #[test]
    fn sparsified_graph_is_a_sub_hypergraph(n in 6usize..25, p in 0.02f64..0.3, eps in 0.1f64..1.5, seed in any::<u64>()) {
        let h = gnrp_sample(n, 3, p, seed).unwrap();
        let s = sparsify(&h, eps, seed).unwrap();
        let c = choice_count(n, eps);
        for (_, e) in s.gamma0.edges() {
            prop_assert!(h.find_edge(e).is_some());
        }
        prop_assert_eq!(s.gamma0.m(), s.kept.len());
        for v in h.vertices() {
            let deg = h.incident(v).len();
            if s.small_set.contains(&v) || deg <= c {
                prop_assert_eq!(s.choices[v].len(), deg);
            } else {
                prop_assert_eq!(s.choices[v].len(), c);
            }
            for id in &s.choices[v] {
                prop_assert!(h.edge_contains(*id, v));
                prop_assert!(s.kept.contains(id));
            }
        }
    }

    #[test]
    fn weak_expander_matches_all_y_search(h in small_graph(8, 16), k in 1usize..5, alpha in 0.5f64..2.5) {
        prop_assume!(k <= h.n());
        let report = is_weak_expander(&h, k, alpha).unwrap();
        let expected = weak_counterexample_exists(&h, k, alpha);
        prop_assert_eq!(report.verdict == ExpanderVerdict::Counterexample, expected);
    }

    #[test]
    fn expander_witnesses_verify(h in small_graph(8, 16), k in 1usize..5, alpha in 0.5f64..2.5) {
        prop_assume!(k <= h.n());
        let report = is_expander(&h, k, alpha, ExpanderMode::Exact).unwrap();
        prop_assert_eq!(
            report.verdict == ExpanderVerdict::Counterexample,
            expander_counterexample_exists(&h, k, alpha)
        );
        if let Some(w) = report.witness {
            prop_assert!(expander_violation(&h, &w.x, &w.y, k, alpha));
        }
    }

    #[test]
    fn wilson_interval_contains_estimate(total in 1u64..5000, share in 0.0f64..=1.0) {
        let successes = (share * total as f64).round() as u64;
        let i = wilson(successes, total, Z95);
        let p = successes as f64 / total as f64;
        prop_assert!(0.0 <= i.low && i.low <= p + 1e-12);
        prop_assert!(p <= i.high + 1e-12 && i.high <= 1.0);
    }

    #[test]
    fn samplers_replay_from_their_seed(n in 5usize..40, seed in any::<u64>()) {
        let a = gnrp_sample(n, 3, 0.05, seed).unwrap();
        let b = gnrp_sample(n, 3, 0.05, seed).unwrap();
        prop_assert_eq!(fixture::to_string(&a), fixture::to_string(&b));
        let ka = kout_sample(n, 3, 2, Replacement::With, seed).unwrap();
        let kb = kout_sample(n, 3, 2, Replacement::With, seed).unwrap();
        prop_assert_eq!(ka.sidecar(), kb.sidecar());
        prop_assert!(ka.distinct_edges() <= 2 * n);
        let ta = process_sample(n, 3, seed, None).unwrap();
        let tb = process_sample(n, 3, seed, None).unwrap();
        prop_assert_eq!(ta.len(), tb.len());
        prop_assert!((0..ta.len()).all(|i| ta.edge(i) == tb.edge(i)));
    }

    #[test]
    fn stopping_times_are_ordered(n in 5usize..40, seed in any::<u64>()) {
        let trace = process_sample(n, 3, seed, None).unwrap();
        let t1 = trace.stopping_time(1).unwrap();
        let t2 = trace.stopping_time(2).unwrap();
        prop_assert!(t1 <= t2);
        prop_assert!(trace.prefix(t1).unwrap().min_degree() >= 1);
        prop_assert_eq!(trace.prefix(t1 - 1).unwrap().min_degree(), 0);
        prop_assert!(trace.prefix(t2).unwrap().min_degree() >= 2);
        prop_assert!(trace.prefix(t2 - 1).unwrap().min_degree() < 2);
    }
}
