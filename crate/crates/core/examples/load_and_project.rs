//! Loading a labelled edge list and looking at its temporal structure.

use std::io::Cursor;

use tempmotif::load_graph;

fn main() {
    // raw timestamps are replaced by dense ranks
    let edges = "a b 100\nb c 7000\na c 100\nc d 250\n";
    let colors = "a 1\nb 2\nc 2\nd 3\n";
    let loaded = load_graph(Cursor::new(edges), Some(Cursor::new(colors)), false).expect("valid input");
    let g = &loaded.graph;
    println!("n={} m={} t={}", g.n(), g.m(), g.t());
    for ts in 1..=g.t() {
        println!("rank {ts} <- raw {}", loaded.raw_timestamp(ts));
    }
    for u in 0..g.n() {
        let hops: Vec<String> = g
            .outgoing(u)
            .iter()
            .map(|h| format!("{}@{}", loaded.labels.label(h.to), h.ts))
            .collect();
        println!("{} (colors {:?}): {}", loaded.labels.label(u), loaded.coloring.colors(u), hops.join(" "));
    }
    let stat = g.project_static();
    println!("static projection: {} vertices, {} edges", stat.n(), stat.edges().len());
}
