//! Instance builders shared by the integration and acceptance tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tempmotif::gen::{random_instance, SmallSpec};
use tempmotif::graph::Color;
use tempmotif::oracle::{exhaustive_search, OracleBudget};
use tempmotif::{Decision, MotifQuery, Multiset, Problem, TemporalGraph, VertexColoring};

/// Problems whose decision the exhaustive search answers directly.
pub const DIRECT: [Problem; 7] = [
    Problem::PathMotif,
    Problem::ColorfulPath,
    Problem::KTempPath,
    Problem::EcTempPath,
    Problem::EcPathMotif,
    Problem::VcPathMotif,
    Problem::VcColorfulPath,
];

#[derive(Clone, Debug)]
pub struct Case {
    pub problem: Problem,
    pub graph: TemporalGraph,
    pub coloring: VertexColoring,
    pub query: MotifQuery,
}

fn distinct_colors(rng: &mut ChaCha8Rng, q: Color, k: usize) -> Vec<Color> {
    let mut all: Vec<Color> = (1..=q).collect();
    all.shuffle(rng);
    all.truncate(k);
    all
}

/// A query of the right shape for `problem`, or `None` when `k` does not fit.
pub fn query_for(problem: Problem, rng: &mut ChaCha8Rng, k: usize, q: Color, t: u32) -> Option<MotifQuery> {
    let any_colors = |rng: &mut ChaCha8Rng| -> Vec<Color> { (0..k).map(|_| rng.gen_range(1..=q)).collect() };
    let times = |rng: &mut ChaCha8Rng| -> Option<Vec<u32>> {
        if k - 1 > t as usize {
            return None;
        }
        let mut all: Vec<u32> = (1..=t).collect();
        all.shuffle(rng);
        all.truncate(k - 1);
        all.sort_unstable();
        Some(all)
    };
    Some(match problem {
        Problem::KTempPath | Problem::RainbowPath => MotifQuery::Size(k),
        Problem::PathMotif => MotifQuery::Multiset(Multiset::from_colors(&any_colors(rng))),
        Problem::ColorfulPath if k <= q as usize => MotifQuery::Multiset(Multiset::from_colors(&distinct_colors(rng, q, k))),
        Problem::EcTempPath => MotifQuery::Timed(times(rng)?),
        Problem::EcPathMotif => {
            let multiset = Multiset::from_colors(&any_colors(rng));
            MotifQuery::TimedMultiset { times: times(rng)?, multiset }
        }
        Problem::VcPathMotif => MotifQuery::Ordered(any_colors(rng)),
        Problem::VcColorfulPath if k <= q as usize => MotifQuery::Ordered(distinct_colors(rng, q, k)),
        _ => return None,
    })
}

/// Random small case: `n <= 16`, average degree at most 4, `t <= 8`,
/// `k` in `2..=5`, `q <= 4`.
pub fn small_case(problem: Problem, seed: u64) -> Case {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xCA5E);
    loop {
        let n = rng.gen_range(4..=16);
        let d = rng.gen_range(1..=4);
        let t = rng.gen_range(2..=8);
        let q = rng.gen_range(1..=4);
        let k = rng.gen_range(2..=5);
        let Some(query) = query_for(problem, &mut rng, k, q, t) else { continue };
        let spec = SmallSpec { n, m: (n * d / 2).max(1), t, colors: q, directed: rng.gen_bool(0.3) };
        let (graph, coloring) = random_instance(spec, rng.gen());
        return Case { problem, graph, coloring, query };
    }
}

/// Ground truth from the unbounded exhaustive search.
pub fn truth(case: &Case) -> Decision {
    exhaustive_search(&case.graph, &case.coloring, &case.query, OracleBudget::unlimited()).decision
}

/// Figure-two edge and color files in a temporary directory.
pub fn figure_two_files() -> (tempfile::TempDir, std::path::PathBuf, std::path::PathBuf) {
    let dir = tempfile::tempdir().expect("temp dir");
    let edges = dir.path().join("fig2.edges");
    let colors = dir.path().join("fig2.colors");
    std::fs::write(&edges, tempmotif::fixtures::FIGURE2_EDGES).unwrap();
    std::fs::write(&colors, tempmotif::fixtures::FIGURE2_COLORS).unwrap();
    (dir, edges, colors)
}
