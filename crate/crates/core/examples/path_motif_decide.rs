//! Decide, extract and optimize a path motif on the five-vertex example.

use tempmotif::fixtures::{figure2, RED, BLUE, GREEN};
use tempmotif::{decide, extract, find_optimum_timestamp, MotifQuery, Multiset, Problem, SolverConfig};

fn main() {
    let (g, coloring) = figure2();
    let query = MotifQuery::Multiset(Multiset::from_colors(&[RED, RED, GREEN, BLUE]));
    let cfg = SolverConfig::with_seed(1);

    let d = decide(Problem::PathMotif, &g, &coloring, &query, &cfg).unwrap();
    println!("decision: {} (flagged {:?}, bound {:.1e})", d.decision, d.flagged, d.fn_bound);

    let e = extract(Problem::PathMotif, &g, &coloring, &query, &cfg).unwrap();
    let w = e.witness.expect("a YES carries a witness");
    println!("witness vertices {:?} at timestamps {:?}", w.vertices, w.timestamps());

    let o = find_optimum_timestamp(Problem::PathMotif, &g, &coloring, &query, &cfg).unwrap();
    println!("earliest finishing match ends at t={:?} after {} sieve calls", o.optimum_ts, o.oracle_calls);
}
