//! Synthetic temporal graphs: configuration-model regular and power-law
//! families, planted matches, and small uniform instances for testing.

use std::collections::HashMap;
use std::io::Write;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Color, TemporalEdge, TemporalGraph, TemporalPath, Timestamp, VertexColoring};
use crate::query::MotifQuery;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("infeasible degree sequence: {0}")]
    Infeasible(String),
    #[error("need {needed} disjoint vertices to plant, graph has {available}")]
    NotEnoughVertices { needed: usize, available: usize },
    #[error("cannot plant {k} vertices with strictly increasing timestamps in 1..={t}")]
    NotEnoughTimestamps { k: usize, t: Timestamp },
    #[error("cannot plant a {0} query")]
    UnsupportedQuery(&'static str),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Family {
    Regular { n: usize, d: usize },
    /// `w` support points, frequencies proportional to `d^alpha`, mean degree `mean`.
    PowerLaw { n: usize, mean: usize, w: usize, alpha: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    /// Timestamps are uniform in `1..=t`.
    pub t: Timestamp,
    /// Colors are uniform in `1..=colors`.
    pub colors: Color,
    pub seed: u64,
    pub directed: bool,
}

impl GeneratorSpec {
    pub fn regular(n: usize, d: usize, t: Timestamp, colors: Color, seed: u64) -> Self {
        GeneratorSpec { family: Family::Regular { n, d }, t, colors, seed, directed: false }
    }

    pub fn powerlaw(n: usize, mean: usize, w: usize, alpha: f64, t: Timestamp, colors: Color, seed: u64) -> Self {
        GeneratorSpec { family: Family::PowerLaw { n, mean, w, alpha }, t, colors, seed, directed: false }
    }
}

/// A generated instance plus bookkeeping.
#[derive(Clone, Debug)]
pub struct Generated {
    pub graph: TemporalGraph,
    pub coloring: VertexColoring,
    /// Stub pairings still colliding after the repair budget, dropped.
    pub dropped_pairs: usize,
}

/// Pairs degree stubs uniformly at random, then repairs self-loops and
/// repeated pairs by random double-edge swaps with a bounded retry count.
/// Pairs that still collide are dropped.
pub fn configuration_model(degrees: &[usize], rng: &mut ChaCha8Rng) -> (Vec<(usize, usize)>, usize) {
    let mut stubs: Vec<usize> = degrees.iter().enumerate().flat_map(|(v, &d)| std::iter::repeat_n(v, d)).collect();
    stubs.shuffle(rng);
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    let mut pairs: Vec<(usize, usize)> = stubs.chunks_exact(2).map(|c| (c[0], c[1])).collect();
    let mut count: HashMap<(usize, usize), usize> = HashMap::with_capacity(pairs.len());
    for &(a, b) in &pairs {
        *count.entry(key(a, b)).or_insert(0) += 1;
    }
    let is_bad = |p: (usize, usize), count: &HashMap<(usize, usize), usize>| p.0 == p.1 || count[&key(p.0, p.1)] > 1;
    let mut bad: Vec<usize> = (0..pairs.len()).filter(|&i| is_bad(pairs[i], &count)).collect();
    let budget = 100 * pairs.len().max(1) + 1000;
    let mut tries = 0;
    while let Some(&i) = bad.last() {
        if !is_bad(pairs[i], &count) {
            bad.pop();
            continue;
        }
        if tries >= budget || pairs.len() < 2 {
            break;
        }
        tries += 1;
        let j = rng.gen_range(0..pairs.len());
        if j == i {
            continue;
        }
        let ((a, b), (c, d)) = (pairs[i], pairs[j]);
        let (p, q) = if rng.gen::<bool>() { ((a, c), (b, d)) } else { ((a, d), (b, c)) };
        if p.0 == p.1 || q.0 == q.1 || key(p.0, p.1) == key(q.0, q.1) || count.contains_key(&key(p.0, p.1)) || count.contains_key(&key(q.0, q.1)) {
            continue;
        }
        for old in [(a, b), (c, d)] {
            let e = count.get_mut(&key(old.0, old.1)).unwrap();
            *e -= 1;
            if *e == 0 {
                count.remove(&key(old.0, old.1));
            }
        }
        count.insert(key(p.0, p.1), 1);
        count.insert(key(q.0, q.1), 1);
        pairs[i] = p;
        pairs[j] = q;
    }
    let mut seen = HashMap::new();
    let mut kept = Vec::with_capacity(pairs.len());
    let mut dropped = 0;
    for (a, b) in pairs {
        if a == b || seen.insert(key(a, b), ()).is_some() {
            dropped += 1;
        } else {
            kept.push((a, b));
        }
    }
    (kept, dropped)
}

fn finish(spec: &GeneratorSpec, n: usize, pairs: Vec<(usize, usize)>, dropped: usize, rng: &mut ChaCha8Rng) -> Generated {
    let edges: Vec<TemporalEdge> = pairs
        .into_iter()
        .map(|(a, b)| {
            let (u, v) = if spec.directed && rng.gen::<bool>() { (b, a) } else { (a, b) };
            TemporalEdge::new(u, v, rng.gen_range(1..=spec.t.max(1)))
        })
        .collect();
    let colors: Vec<Color> = (0..n).map(|_| rng.gen_range(1..=spec.colors.max(1))).collect();
    let graph = TemporalGraph::new(n, spec.directed, edges).expect("generated edges are in range");
    Generated { graph, coloring: VertexColoring::new(colors), dropped_pairs: dropped }
}

/// Random `d`-regular temporal graph.
pub fn gen_regular(spec: &GeneratorSpec) -> Result<Generated, GenError> {
    let Family::Regular { n, d } = spec.family else {
        return Err(GenError::Infeasible("not a regular spec".into()));
    };
    if d >= n || (n * d) % 2 == 1 || spec.t == 0 {
        return Err(GenError::Infeasible(format!("n = {n}, d = {d}, t = {}", spec.t)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (pairs, dropped) = configuration_model(&vec![d; n], &mut rng);
    Ok(finish(spec, n, pairs, dropped, &mut rng))
}

/// `w` geometrically spaced degrees from 1 to `dmax`, rounded, deduplicated.
pub fn geometric_support(dmax: f64, w: usize) -> Vec<usize> {
    if w <= 1 {
        return vec![dmax.round().max(1.0) as usize];
    }
    let mut s: Vec<usize> = (0..w).map(|i| dmax.powf(i as f64 / (w - 1) as f64).round().max(1.0) as usize).collect();
    s.dedup();
    s
}

/// Splits `n` over the support proportionally to `d^alpha`, largest remainder first.
fn apportion(support: &[usize], alpha: f64, n: usize) -> Vec<usize> {
    let weights: Vec<f64> = support.iter().map(|&d| (d as f64).powf(alpha)).collect();
    let total: f64 = weights.iter().sum();
    let exact: Vec<f64> = weights.iter().map(|w| n as f64 * w / total).collect();
    let mut counts: Vec<usize> = exact.iter().map(|e| e.floor() as usize).collect();
    let mut order: Vec<usize> = (0..support.len()).collect();
    order.sort_by(|&a, &b| (exact[b] - exact[b].floor()).partial_cmp(&(exact[a] - exact[a].floor())).unwrap().then(a.cmp(&b)));
    let short = n - counts.iter().sum::<usize>();
    for &i in order.iter().take(short) {
        counts[i] += 1;
    }
    counts
}

/// Degree sequence for the power-law family, before shuffling onto vertices:
/// `dmax` is searched so the mean is close to `mean`, then the largest degrees
/// absorb the remaining difference so the sum is `mean * n` up to parity.
pub fn powerlaw_degrees(n: usize, mean: usize, w: usize, alpha: f64) -> Result<Vec<usize>, GenError> {
    if n < 2 || mean == 0 || w == 0 || alpha >= 0.0 || mean >= n || w > n {
        return Err(GenError::Infeasible(format!("n = {n}, D = {mean}, w = {w}, alpha = {alpha}")));
    }
    let seq = |dmax: f64| -> Vec<usize> {
        let support = geometric_support(dmax, w);
        let counts = apportion(&support, alpha, n);
        support.iter().zip(&counts).flat_map(|(&d, &c)| std::iter::repeat_n(d.min(n - 1), c)).collect()
    };
    let target = mean * n;
    let (mut lo, mut hi) = (1.0f64, (n - 1) as f64);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if seq(mid).iter().sum::<usize>() < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut degrees = seq(hi);
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    let target = if target % 2 == 1 { target + 1 } else { target };
    let mut sum: usize = degrees.iter().sum();
    let len = degrees.len();
    let mut i = 0;
    let mut stalled = 0;
    while sum != target && stalled < len {
        let d = &mut degrees[i % len];
        if sum < target && *d < n - 1 {
            *d += 1;
            sum += 1;
            stalled = 0;
        } else if sum > target && *d > 1 {
            *d -= 1;
            sum -= 1;
            stalled = 0;
        } else {
            stalled += 1;
        }
        i += 1;
    }
    if sum != target {
        return Err(GenError::Infeasible(format!("cannot reach degree sum {target}")));
    }
    Ok(degrees)
}

/// Configuration-model graph whose degree frequencies follow `d^alpha`.
pub fn gen_powerlaw(spec: &GeneratorSpec) -> Result<Generated, GenError> {
    let Family::PowerLaw { n, mean, w, alpha } = spec.family else {
        return Err(GenError::Infeasible("not a power-law spec".into()));
    };
    if spec.t == 0 {
        return Err(GenError::Infeasible("t = 0".into()));
    }
    let mut degrees = powerlaw_degrees(n, mean, w, alpha)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    degrees.shuffle(&mut rng);
    let (pairs, dropped) = configuration_model(&degrees, &mut rng);
    Ok(finish(spec, n, pairs, dropped, &mut rng))
}

/// Dispatches on the family.
pub fn generate(spec: &GeneratorSpec) -> Result<Generated, GenError> {
    match spec.family {
        Family::Regular { .. } => gen_regular(spec),
        Family::PowerLaw { .. } => gen_powerlaw(spec),
    }
}

/// An instance with planted matches and the planted witnesses.
#[derive(Clone, Debug)]
pub struct Planted {
    pub graph: TemporalGraph,
    pub coloring: VertexColoring,
    pub witnesses: Vec<TemporalPath>,
}

/// Plants `count` vertex-disjoint temporal paths realizing `query`: picks
/// random vertex sequences, recolors them, and adds a chain of edges whose
/// timestamps are distinct uniform draws from `1..=t`, sorted.
pub fn plant_matches(
    g: &TemporalGraph,
    coloring: &VertexColoring,
    query: &MotifQuery,
    count: usize,
    t: Timestamp,
    seed: u64,
) -> Result<Planted, GenError> {
    let k = query.k();
    let needed = k * count;
    if needed > g.n() {
        return Err(GenError::NotEnoughVertices { needed, available: g.n() });
    }
    if (t as usize) < k.saturating_sub(1) {
        return Err(GenError::NotEnoughTimestamps { k, t });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0070_6C61_6E74_6564);
    let mut vertices: Vec<usize> = (0..g.n()).collect();
    vertices.shuffle(&mut rng);
    let mut coloring = coloring.clone();
    let mut edges = g.edges().to_vec();
    let mut witnesses = Vec::with_capacity(count);
    for chunk in vertices[..needed].chunks_exact(k) {
        let colors: Option<Vec<Color>> = match query {
            MotifQuery::Multiset(m) | MotifQuery::TimedMultiset { multiset: m, .. } => {
                let mut c = m.to_vec();
                c.shuffle(&mut rng);
                Some(c)
            }
            MotifQuery::Ordered(o) => Some(o.clone()),
            MotifQuery::Size(_) | MotifQuery::Timed(_) => None,
            MotifQuery::Endpoints { .. } => return Err(GenError::UnsupportedQuery("endpoints")),
        };
        if let Some(colors) = colors {
            for (&v, &c) in chunk.iter().zip(&colors) {
                coloring.set_color(v, c);
            }
        }
        let times: Vec<Timestamp> = match query.times() {
            Some(times) => times.to_vec(),
            None => {
                let mut ts = rand::seq::index::sample(&mut rng, t as usize, k - 1).into_iter().map(|i| i as Timestamp + 1).collect::<Vec<_>>();
                ts.sort_unstable();
                ts
            }
        };
        let hops: Vec<(usize, Timestamp)> = chunk[1..].iter().copied().zip(times.iter().copied()).collect();
        let path = TemporalPath::from_hops(chunk[0], &hops);
        edges.extend(path.edges.iter().copied());
        witnesses.push(path);
    }
    let graph = TemporalGraph::new(g.n(), g.is_directed(), edges).expect("planted edges are in range");
    Ok(Planted { graph, coloring, witnesses })
}

/// Writes one witness per line as `u1 u2 ts1 u2 u3 ts2 ...`.
pub fn write_witnesses<W: Write>(witnesses: &[TemporalPath], mut out: W) -> std::io::Result<()> {
    for p in witnesses {
        let parts: Vec<String> = p.edges.iter().map(|e| format!("{} {} {}", e.u, e.v, e.ts)).collect();
        writeln!(out, "{}", parts.join(" "))?;
    }
    Ok(())
}

/// Parameters of a small uniform random instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallSpec {
    pub n: usize,
    pub m: usize,
    pub t: Timestamp,
    pub colors: Color,
    pub directed: bool,
}

/// `m` uniform edges (self-loops resampled), uniform timestamps and colors.
pub fn random_instance(spec: SmallSpec, seed: u64) -> (TemporalGraph, VertexColoring) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(spec.m);
    if spec.n >= 2 {
        while edges.len() < spec.m {
            let u = rng.gen_range(0..spec.n);
            let v = rng.gen_range(0..spec.n);
            if u != v {
                edges.push(TemporalEdge::new(u, v, rng.gen_range(1..=spec.t.max(1))));
            }
        }
    }
    let colors = (0..spec.n).map(|_| rng.gen_range(1..=spec.colors.max(1))).collect();
    (TemporalGraph::new(spec.n, spec.directed, edges).expect("in range"), VertexColoring::new(colors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate_path;
    use crate::query::Multiset;

    fn degree_histogram(g: &TemporalGraph) -> HashMap<usize, usize> {
        let mut h = HashMap::new();
        for u in 0..g.n() {
            *h.entry(g.outgoing(u).len()).or_insert(0) += 1;
        }
        h
    }

    #[test]
    fn four_cycle() {
        for seed in 0..20 {
            let g = gen_regular(&GeneratorSpec::regular(4, 2, 5, 1, seed)).unwrap();
            assert_eq!(g.graph.m(), 4);
            assert_eq!(g.dropped_pairs, 0);
            assert_eq!(degree_histogram(&g.graph), HashMap::from([(2, 4)]));
        }
    }

    #[test]
    fn regular_scale_and_ranges() {
        let g = gen_regular(&GeneratorSpec::regular(1000, 20, 100, 30, 5)).unwrap();
        assert_eq!(g.graph.m(), 10_000);
        assert_eq!(degree_histogram(&g.graph), HashMap::from([(20, 1000)]));
        assert!(g.graph.edges().iter().all(|e| (1..=100).contains(&e.ts)));
        assert!((0..1000).all(|v| (1..=30).contains(&g.coloring.primary(v))));
    }

    #[test]
    fn regular_rejects_odd_stub_count() {
        assert!(gen_regular(&GeneratorSpec::regular(5, 3, 10, 1, 0)).is_err());
        assert!(gen_regular(&GeneratorSpec::regular(4, 4, 10, 1, 0)).is_err());
    }

    #[test]
    fn generation_is_deterministic() {
        let spec = GeneratorSpec::powerlaw(500, 6, 20, -1.0, 50, 5, 9);
        let (a, b) = (gen_powerlaw(&spec).unwrap(), gen_powerlaw(&spec).unwrap());
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.coloring, b.coloring);
    }

    #[test]
    fn powerlaw_degree_sum() {
        let d = powerlaw_degrees(1000, 20, 100, -0.5).unwrap();
        let sum: usize = d.iter().sum();
        assert!(sum.abs_diff(20_000) <= 1, "{sum}");
        let single = powerlaw_degrees(1000, 20, 1, -1.0).unwrap();
        assert!(single.iter().all(|&x| x.abs_diff(20) <= 1));
    }

    #[test]
    fn plant_on_empty_graph() {
        let g = TemporalGraph::new(3, false, Vec::new()).unwrap();
        let c = VertexColoring::uniform(3);
        let q = MotifQuery::Multiset(Multiset::from_colors(&[1, 2, 3]));
        let p = plant_matches(&g, &c, &q, 1, 10, 4).unwrap();
        assert_eq!(p.graph.m(), 2);
        assert!(validate_path(&p.graph, &p.coloring, &p.witnesses[0], &q).is_valid());
    }

    #[test]
    fn plant_needs_room() {
        let g = TemporalGraph::new(5, false, Vec::new()).unwrap();
        let c = VertexColoring::uniform(5);
        let q = MotifQuery::Size(3);
        assert!(matches!(plant_matches(&g, &c, &q, 2, 10, 0), Err(GenError::NotEnoughVertices { .. })));
        assert!(matches!(plant_matches(&g, &c, &q, 1, 1, 0), Err(GenError::NotEnoughTimestamps { .. })));
    }
}
