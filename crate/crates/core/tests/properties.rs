mod common;

use std::io::Cursor;

use proptest::prelude::*;

use common::{small_case, truth, DIRECT};
use tempmotif::gen::{generate, random_instance, GeneratorSpec, SmallSpec};
use tempmotif::graph::validate_path;
use tempmotif::oracle::{random_walk_search, OracleBudget};
use tempmotif::solvers::{Extraction, SolverConfig};
use tempmotif::{decide, find_optimum_timestamp, load_graph, solve, Decision, Task};

fn cfg(seed: u64) -> SolverConfig {
    SolverConfig::with_seed(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn loading_round_trips(seed in 0u64..1_000_000, directed: bool) {
        let (g, c) = random_instance(SmallSpec { n: 12, m: 20, t: 6, colors: 3, directed }, seed);
        let mut edges = Vec::new();
        g.write_edges(&mut edges).unwrap();
        let mut colors = Vec::new();
        c.write(&mut colors).unwrap();
        let loaded = load_graph(Cursor::new(&edges), Some(Cursor::new(&colors)), directed).unwrap();
        // isolated vertices vanish and ids are relabelled; compare via labels
        prop_assert_eq!(loaded.graph.m(), g.m());
        let mut original: Vec<(String, String, i64)> =
            g.edges().iter().map(|e| (e.u.to_string(), e.v.to_string(), e.ts as i64)).collect();
        let mut reloaded: Vec<(String, String, i64)> = loaded
            .graph
            .edges()
            .iter()
            .map(|e| (loaded.labels.label(e.u).to_string(), loaded.labels.label(e.v).to_string(), loaded.raw_timestamp(e.ts)))
            .collect();
        if !directed {
            for list in [&mut original, &mut reloaded] {
                for e in list.iter_mut() {
                    if e.0 > e.1 {
                        std::mem::swap(&mut e.0, &mut e.1);
                    }
                }
            }
        }
        original.sort();
        reloaded.sort();
        prop_assert_eq!(original, reloaded);
        for v in 0..loaded.graph.n() {
            let label: usize = loaded.labels.label(v).parse().unwrap();
            prop_assert_eq!(loaded.coloring.colors(v), c.colors(label));
        }
    }

    #[test]
    fn neighbor_lists_count_every_edge(seed in 0u64..1_000_000, directed: bool) {
        let (g, _) = random_instance(SmallSpec { n: 10, m: 25, t: 5, colors: 2, directed }, seed);
        let total: usize = (0..g.n()).flat_map(|u| (1..=g.t()).map(move |i| (u, i))).map(|(u, i)| g.neighbors_at(u, i).count()).sum();
        prop_assert_eq!(total, if directed { g.m() } else { 2 * g.m() });
    }

    #[test]
    fn full_restriction_is_identity(seed in 0u64..1_000_000) {
        let (g, _) = random_instance(SmallSpec { n: 10, m: 20, t: 5, colors: 2, directed: false }, seed);
        let r = g.restrict_to(&vec![true; g.n()], g.t());
        prop_assert_eq!((r.n(), r.t(), r.is_directed()), (g.n(), g.t(), g.is_directed()));
        prop_assert_eq!(r.edges(), g.edges());
        for u in 0..g.n() {
            prop_assert_eq!(r.outgoing(u), g.outgoing(u));
            prop_assert_eq!(r.incoming(u), g.incoming(u));
        }
    }

    #[test]
    fn generation_is_deterministic_and_in_range(seed: u64, half_d in 1usize..4, t in 1u32..20, q in 1u32..6) {
        let spec = GeneratorSpec::regular(40, 2 * half_d, t, q, seed);
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        prop_assert_eq!(&a.graph, &b.graph);
        prop_assert_eq!(&a.coloring, &b.coloring);
        if a.dropped_pairs == 0 {
            for u in 0..a.graph.n() {
                prop_assert_eq!(a.graph.project_static().outgoing(u).len(), 2 * half_d);
            }
        }
        prop_assert!(a.graph.edges().iter().all(|e| (1..=t).contains(&e.ts)));
        prop_assert!((0..a.coloring.n()).all(|v| a.coloring.colors(v).iter().all(|&c| (1..=q).contains(&c))));
    }

    #[test]
    fn random_walk_yes_carries_valid_witness(seed in 0u64..100_000, walk_seed: u64) {
        let case = small_case(tempmotif::Problem::PathMotif, seed);
        let budget = OracleBudget { max_walk_iterations: 2_000, ..OracleBudget::default() };
        let r = random_walk_search(&case.graph, &case.coloring, &case.query, budget, walk_seed);
        let again = random_walk_search(&case.graph, &case.coloring, &case.query, budget, walk_seed);
        prop_assert_eq!(r.decision, again.decision);
        prop_assert_eq!(&r.witness, &again.witness);
        prop_assert_ne!(r.decision, Decision::No);
        if r.decision == Decision::Yes {
            let w = r.witness.as_ref().unwrap();
            prop_assert!(validate_path(&case.graph, &case.coloring, w, &case.query).is_valid());
        }
    }

    #[test]
    fn decisions_match_exhaustive_search(seed in 0u64..1_000_000, which in 0usize..DIRECT.len()) {
        let case = small_case(DIRECT[which], seed);
        let r = decide(case.problem, &case.graph, &case.coloring, &case.query, &cfg(seed)).unwrap();
        prop_assert_eq!(r.decision, truth(&case));
    }

    #[test]
    fn decision_is_monotone_in_max_timestamp(seed in 0u64..1_000_000, which in 0usize..DIRECT.len()) {
        let case = small_case(DIRECT[which], seed);
        let opt = find_optimum_timestamp(case.problem, &case.graph, &case.coloring, &case.query, &cfg(seed)).unwrap();
        let mut seen_yes = false;
        for t in 1..=case.graph.t() {
            let cut = case.graph.restrict_to(&vec![true; case.graph.n()], t);
            let yes = decide(case.problem, &cut, &case.coloring, &case.query, &cfg(seed)).unwrap().decision.is_yes();
            prop_assert!(!seen_yes || yes, "YES at an earlier cut but NO at {}", t);
            if yes && !seen_yes {
                prop_assert_eq!(opt.optimum_ts, Some(t));
            }
            seen_yes |= yes;
        }
        prop_assert_eq!(seen_yes, opt.decision.is_yes());
    }

    #[test]
    fn optimum_witnesses_agree_across_extraction_modes(seed in 0u64..1_000_000, which in 0usize..DIRECT.len()) {
        let case = small_case(DIRECT[which], seed);
        let mut optima = Vec::new();
        for extraction in [Extraction::Localized, Extraction::SelfReducible] {
            let c = SolverConfig { extraction, ..cfg(seed) };
            let r = solve(case.problem, &case.graph, &case.coloring, &case.query, Task::Optimum, &c).unwrap();
            if let Some(w) = &r.witness {
                prop_assert!(validate_path(&case.graph, &case.coloring, w, &case.query).is_valid());
                prop_assert_eq!(w.max_timestamp(), r.optimum_ts);
            }
            optima.push(r.optimum_ts);
        }
        prop_assert_eq!(optima[0], optima[1]);
    }
}
