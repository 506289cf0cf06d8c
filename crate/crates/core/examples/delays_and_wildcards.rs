//! Vertex delays and wildcard vertices.

use tempmotif::fixtures::{figure2, U5};
use tempmotif::solvers::solve_with_wildcards;
use tempmotif::{decide, find_optimum_timestamp, EdgeModel, MotifQuery, Multiset, Problem, SolverConfig, TemporalEdge, TemporalGraph, VertexColoring};

fn main() {
    let (g, coloring) = figure2();
    let query = MotifQuery::Multiset(Multiset::from_colors(&[1, 1, 2, 3]));

    // a delay of d at v means the next hop leaves at least d steps after arrival
    let mut delays = vec![0; g.n()];
    delays[U5] = 2;
    let mut delayed = g.clone();
    delayed.set_delays(delays).unwrap();
    for (name, graph, model) in [("instant", &g, EdgeModel::Instant), ("u5 waits two steps", &delayed, EdgeModel::DelayOnly)] {
        let mut cfg = SolverConfig::default();
        cfg.sieve.edge_model = model;
        let r = find_optimum_timestamp(Problem::PathMotif, graph, &coloring, &query, &cfg).unwrap();
        println!("{name}: {} optimum {:?}", r.decision, r.optimum_ts);
    }

    // red -> green -> blue, but the query skips green
    let chain = TemporalGraph::new(3, false, vec![TemporalEdge::new(0, 1, 1), TemporalEdge::new(1, 2, 2)]).unwrap();
    let colors = VertexColoring::new(vec![1, 2, 3]);
    let red_blue = MotifQuery::Multiset(Multiset::from_colors(&[1, 3]));
    let cfg = SolverConfig::default();
    let plain = decide(Problem::PathMotif, &chain, &colors, &red_blue, &cfg).unwrap();
    let loose = solve_with_wildcards(&chain, &colors, &red_blue, 3, &cfg).unwrap();
    println!("red-blue: {} exact, {} with {:?} wildcard vertex", plain.decision, loose.decision, loose.wildcards);
}
