//! Edge-, vertex- and endpoint-constrained path queries.

use tempmotif::fixtures::{figure2, U1, U2, U4};
use tempmotif::solvers::{decide_sd_colorful, vc_colorful_dp};
use tempmotif::{decide, extract, MotifQuery, Multiset, Problem, SolverConfig};

fn main() {
    let (g, coloring) = figure2();
    let cfg = SolverConfig::default();

    // hop i must use timestamp times[i]
    let timed = MotifQuery::Timed(vec![1, 2, 3]);
    let r = extract(Problem::EcTempPath, &g, &coloring, &timed, &cfg).unwrap();
    println!("ec-temppath [1,2,3]: {} {:?}", r.decision, r.witness.map(|w| w.vertices));

    let timed_motif = MotifQuery::TimedMultiset { times: vec![1, 2], multiset: Multiset::from_colors(&[1, 1, 2]) };
    let r = decide(Problem::EcPathMotif, &g, &coloring, &timed_motif, &cfg).unwrap();
    println!("ec-pathmotif: {}", r.decision);

    // position i must carry color order[i]
    let order = vec![1, 2, 1, 3];
    let r = extract(Problem::VcPathMotif, &g, &coloring, &MotifQuery::Ordered(order.clone()), &cfg).unwrap();
    println!("vc-pathmotif {order:?}: {} {:?}", r.decision, r.witness.map(|w| w.vertices));
    let dp = vc_colorful_dp(&g, &coloring, &[1, 2, 3]).unwrap();
    println!("dp on [1,2,3]: {} optimum {:?}", dp.decision, dp.optimum_ts);

    // u4 ... u2 with one interior vertex of a fresh color
    for (s, d) in [(U4, U2), (U2, U1)] {
        let r = decide_sd_colorful(&g, &coloring, s, d, 2, &cfg).unwrap();
        println!("sd-colorfulpath {s}->{d}, 2 interior: {}", r.decision);
    }
}
