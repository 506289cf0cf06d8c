//! Random regular and power-law temporal graphs with planted matches.

use tempmotif::gen::{generate, plant_matches, GeneratorSpec};
use tempmotif::{validate_path, MotifQuery, Multiset};

fn main() {
    let regular = generate(&GeneratorSpec::regular(1000, 8, 50, 6, 1)).unwrap();
    println!("regular: n={} m={} max degree {}", regular.graph.n(), regular.graph.m(), regular.graph.max_degree());

    let skewed = generate(&GeneratorSpec::powerlaw(1000, 8, 20, -1.0, 50, 6, 1)).unwrap();
    println!(
        "power law: n={} m={} max degree {} dropped pairs {}",
        skewed.graph.n(),
        skewed.graph.m(),
        skewed.graph.max_degree(),
        skewed.dropped_pairs
    );

    let query = MotifQuery::Multiset(Multiset::from_colors(&[1, 2, 2, 5]));
    let planted = plant_matches(&regular.graph, &regular.coloring, &query, 3, 50, 9).unwrap();
    for w in &planted.witnesses {
        let ok = validate_path(&planted.graph, &planted.coloring, w, &query);
        println!("planted {:?} @ {:?}: {ok:?}", w.vertices, w.timestamps());
    }
}
