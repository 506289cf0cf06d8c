//! Colorful paths with a fixed color set versus rainbow paths over any k colors.

use tempmotif::fixtures::figure2;
use tempmotif::solvers::decide_rainbow;
use tempmotif::{extract, MotifQuery, Multiset, Problem, SolverConfig};

fn main() {
    let (g, coloring) = figure2();
    let cfg = SolverConfig::default();

    for colors in [[1, 2, 3], [2, 3, 4], [1, 3, 4]] {
        let query = MotifQuery::Multiset(Multiset::from_colors(&colors));
        let r = extract(Problem::ColorfulPath, &g, &coloring, &query, &cfg).unwrap();
        let path = r.witness.map(|w| format!("{:?} @ {:?}", w.vertices, w.timestamps()));
        println!("colorful {colors:?}: {} {}", r.decision, path.unwrap_or_default());
    }

    for k in 2..=3 {
        let r = decide_rainbow(&g, &coloring, k, &cfg).unwrap();
        println!("rainbow k={k}: {} via colors {:?} ({} sieve calls)", r.decision, r.rainbow_subset, r.oracle_calls);
    }
}
