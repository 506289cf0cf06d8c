//! The algebraic solver next to exhaustive search and random walks.

use std::time::{Duration, Instant};

use tempmotif::gen::{generate, plant_matches, GeneratorSpec};
use tempmotif::oracle::{exhaustive_search, random_walk_search, OracleBudget};
use tempmotif::{decide, MotifQuery, Multiset, Problem, SolverConfig};

fn main() {
    let base = generate(&GeneratorSpec::powerlaw(2000, 10, 20, -1.0, 100, 8, 3)).unwrap();
    let query = MotifQuery::Multiset(Multiset::from_colors(&[1, 2, 3, 4, 5, 6]));
    let inst = plant_matches(&base.graph, &base.coloring, &query, 1, 100, 4).unwrap();

    let start = Instant::now();
    let r = decide(Problem::PathMotif, &inst.graph, &inst.coloring, &query, &SolverConfig::default()).unwrap();
    println!("sieve: {} in {:.3}s", r.decision, start.elapsed().as_secs_f64());

    let start = Instant::now();
    // a hub-heavy graph makes the search tree explode, so cap it
    let r = exhaustive_search(&inst.graph, &inst.coloring, &query, OracleBudget::with_wall_clock(Duration::from_secs(10)));
    println!("exhaustive: {} in {:.3}s ({} nodes)", r.decision, start.elapsed().as_secs_f64(), r.nodes_expanded);

    let budget = OracleBudget { max_walk_iterations: 200_000, ..OracleBudget::default() };
    let start = Instant::now();
    let r = random_walk_search(&inst.graph, &inst.coloring, &query, budget, 11);
    println!("random walks: {} in {:.3}s (first hit {:?})", r.decision, start.elapsed().as_secs_f64(), r.first_hit);
}
