//! Shrinking a graph before the temporal sieve.

use tempmotif::gen::{plant_matches, random_instance, SmallSpec};
use tempmotif::solvers::{preprocess, Preprocess};
use tempmotif::{MotifQuery, Multiset, SieveConfig};

fn main() {
    let (g, coloring) = random_instance(SmallSpec { n: 400, m: 900, t: 30, colors: 30, directed: false }, 5);
    let query = MotifQuery::Multiset(Multiset::from_colors(&[1, 2, 3, 4]));
    let inst = plant_matches(&g, &coloring, &query, 1, 30, 6).unwrap();
    let cfg = SieveConfig::default();
    for level in [Preprocess::None, Preprocess::Colors, Preprocess::Static, Preprocess::Both] {
        let r = preprocess(&inst.graph, &inst.coloring, &query, level, &cfg).unwrap();
        println!(
            "{level:?}: {} -> {} vertices, {} edges, {} sieve calls",
            inst.graph.n(),
            r.graph.n(),
            r.graph.m(),
            r.oracle_calls
        );
    }
    println!("planted path {:?}", inst.witnesses[0].vertices);
}
