//! Non-algebraic baselines: exhaustive temporal DFS and random temporal walks.
//!
//! The exhaustive search is exact and doubles as ground truth for tests.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::graph::{TemporalGraph, TemporalPath, Timestamp, VertexColoring};
use crate::query::{EdgeModel, MotifQuery};
use crate::report::{Decision, SolveReport, Timings};

/// Limits for the baselines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_nodes: u64,
    pub max_walk_iterations: u64,
    pub wall_clock: Option<Duration>,
    /// Stop at the first match instead of searching for the earliest one.
    pub first_match: bool,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_nodes: u64::MAX, max_walk_iterations: 1_000_000, wall_clock: None, first_match: false }
    }
}

impl OracleBudget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn with_wall_clock(wall_clock: Duration) -> Self {
        OracleBudget { wall_clock: Some(wall_clock), ..Self::default() }
    }
}

/// Vertices whose colors meet the query support (all, for colorless queries).
pub fn color_filter(coloring: &VertexColoring, query: &MotifQuery) -> Vec<bool> {
    match query.support() {
        None => vec![true; coloring.n()],
        Some(support) => (0..coloring.n()).map(|v| coloring.colors(v).iter().any(|c| support.contains(c))).collect(),
    }
}

struct Search<'a> {
    g: &'a TemporalGraph,
    coloring: &'a VertexColoring,
    query: &'a MotifQuery,
    model: EdgeModel,
    usable: Vec<bool>,
    k: usize,
    budget: OracleBudget,
    started: Instant,
    nodes: AtomicU64,
    exhausted: AtomicBool,
    found: AtomicBool,
}

/// Best match found from one start: `(finish time, path)`.
type Best = Option<(u64, TemporalPath)>;

impl Search<'_> {
    fn over_budget(&self) -> bool {
        if self.exhausted.load(Ordering::Relaxed) || (self.budget.first_match && self.found.load(Ordering::Relaxed)) {
            return true;
        }
        let nodes = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let out = nodes > self.budget.max_nodes
            || (nodes.is_multiple_of(4096) && self.budget.wall_clock.is_some_and(|w| self.started.elapsed() > w));
        if out {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        out
    }

    fn search_from(&self, s: usize) -> Best {
        let mut best = None;
        let mut path = vec![s];
        let mut hops = Vec::new();
        if !self.over_budget() {
            self.extend(&mut path, &mut hops, self.model.gap(self.g, s), &mut best);
        }
        best
    }

    /// Depth-first over time-respecting extensions, children in ascending
    /// `(ts, neighbor)` order; every depth-`k` leaf is checked.
    fn extend(&self, path: &mut Vec<usize>, hops: &mut Vec<(usize, usize, Timestamp)>, ready: u64, best: &mut Best) {
        if path.len() == self.k {
            let ts: Vec<Timestamp> = hops.iter().map(|h| h.2).collect();
            if self.query.check(self.coloring, path, &ts).is_valid() {
                let finish = hops.last().map_or(0, |&(_, e, t)| self.model.finish(self.g, e, t));
                if best.as_ref().is_none_or(|(f, _)| finish < *f) {
                    let edges: Vec<(usize, Timestamp)> = path[1..].iter().zip(&ts).map(|(&v, &t)| (v, t)).collect();
                    *best = Some((finish, TemporalPath::from_hops(path[0], &edges)));
                    self.found.store(true, Ordering::Relaxed);
                }
            }
            return;
        }
        let u = *path.last().unwrap();
        let out = self.g.outgoing(u);
        let first = out.partition_point(|h| (h.ts as u64) < ready);
        for h in &out[first..] {
            if !self.usable[h.to] || path.contains(&h.to) {
                continue;
            }
            let arrival = self.model.arrival(self.g, h.edge, h.ts);
            if arrival > self.g.t() as u64 {
                continue;
            }
            if self.over_budget() {
                return;
            }
            path.push(h.to);
            hops.push((u, h.edge, h.ts));
            self.extend(path, hops, arrival + self.model.gap(self.g, h.to), best);
            path.pop();
            hops.pop();
        }
    }
}

/// Depth-`k` temporal DFS from every start vertex under the instant model.
pub fn exhaustive_search(g: &TemporalGraph, coloring: &VertexColoring, query: &MotifQuery, budget: OracleBudget) -> SolveReport {
    exhaustive_search_with(g, coloring, query, EdgeModel::Instant, budget)
}

/// [`exhaustive_search`] under an explicit transition/delay model. The
/// reported optimum is the earliest final arrival.
pub fn exhaustive_search_with(
    g: &TemporalGraph,
    coloring: &VertexColoring,
    query: &MotifQuery,
    model: EdgeModel,
    budget: OracleBudget,
) -> SolveReport {
    let started = Instant::now();
    let k = query.k();
    let search = Search {
        g,
        coloring,
        query,
        model,
        usable: color_filter(coloring, query),
        k,
        budget,
        started,
        nodes: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
        found: AtomicBool::new(false),
    };
    let starts: Vec<usize> = match query {
        MotifQuery::Endpoints { source, .. } => vec![*source],
        _ => (0..g.n()).filter(|&s| search.usable[s]).collect(),
    };
    let found: Vec<(u64, usize, TemporalPath)> = if k == 0 || k > g.n() {
        Vec::new()
    } else {
        starts
            .par_iter()
            .filter_map(|&s| search.search_from(s).map(|(f, p)| (f, s, p)))
            .collect()
    };
    let best = found.into_iter().min_by_key(|(f, s, _)| (*f, *s));
    let exhausted = search.exhausted.load(Ordering::Relaxed);
    let decision = match (&best, exhausted) {
        (Some(_), _) => Decision::Yes,
        (None, false) => Decision::No,
        (None, true) => Decision::Inconclusive,
    };
    let mut report = SolveReport::new(decision);
    report.nodes_expanded = search.nodes.load(Ordering::Relaxed);
    report.timings = Timings { extraction: started.elapsed().as_secs_f64(), ..Timings::default() };
    if let Some((finish, _, path)) = best {
        // a cut-short search may have missed a better match
        report.optimum_ts = (!exhausted && !budget.first_match).then_some(finish as Timestamp);
        report.witness = Some(path);
    }
    report
}

/// Upper bound on exhaustive-search nodes per start on an undirected graph
/// of maximum temporal degree `delta`: `1 + delta sum_{j<k-1} (delta-1)^j`.
pub fn exhaustive_node_bound(delta: u64, k: usize) -> u64 {
    let mut total = 1u64;
    let mut layer = delta;
    for _ in 0..k.saturating_sub(1) {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(delta.saturating_sub(1));
    }
    total
}

/// Monte-Carlo baseline: uniform start, then uniform among time-respecting
/// extensions, `k - 1` hops; a hit must be a path matching the query.
/// Finding nothing is reported as inconclusive.
pub fn random_walk_search(g: &TemporalGraph, coloring: &VertexColoring, query: &MotifQuery, budget: OracleBudget, seed: u64) -> SolveReport {
    let started = Instant::now();
    let k = query.k();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let starts: Vec<usize> = match query {
        MotifQuery::Endpoints { source, .. } => vec![*source],
        _ => (0..g.n()).collect(),
    };
    let mut best: Option<(Timestamp, TemporalPath)> = None;
    let mut first_hit = None;
    let mut iterations = 0;
    let mut path = Vec::with_capacity(k);
    let mut hops = Vec::with_capacity(k);
    while iterations < budget.max_walk_iterations && !starts.is_empty() && k >= 1 {
        if iterations % 4096 == 0 && budget.wall_clock.is_some_and(|w| started.elapsed() > w) {
            break;
        }
        iterations += 1;
        path.clear();
        hops.clear();
        path.push(*starts.choose(&mut rng).unwrap());
        let mut ready = 1;
        while path.len() < k {
            let u = *path.last().unwrap();
            let out = g.outgoing(u);
            let options = &out[out.partition_point(|h| h.ts < ready)..];
            if options.is_empty() {
                break;
            }
            let h = options[rng.gen_range(0..options.len())];
            path.push(h.to);
            hops.push((h.to, h.ts));
            ready = h.ts + 1;
        }
        if path.len() < k {
            continue;
        }
        let candidate = TemporalPath::from_hops(path[0], &hops);
        let distinct = {
            let mut s = path.clone();
            s.sort_unstable();
            s.windows(2).all(|w| w[0] != w[1])
        };
        if distinct && query.check(coloring, &path, &candidate.timestamps()).is_valid() {
            first_hit.get_or_insert(iterations);
            let finish = candidate.max_timestamp().unwrap_or(0);
            if best.as_ref().is_none_or(|(f, _)| finish < *f) {
                best = Some((finish, candidate));
            }
        }
    }
    let mut report = SolveReport::new(if best.is_some() { Decision::Yes } else { Decision::Inconclusive });
    report.nodes_expanded = iterations;
    report.first_hit = first_hit;
    report.timings = Timings { extraction: started.elapsed().as_secs_f64(), ..Timings::default() };
    if let Some((f, p)) = best {
        report.optimum_ts = Some(f);
        report.witness = Some(p);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::{validate_path, TemporalEdge};
    use crate::query::Multiset;

    fn motif(colors: &[u32]) -> MotifQuery {
        MotifQuery::Multiset(Multiset::from_colors(colors))
    }

    #[test]
    fn figure_two_exhaustive() {
        let (g, c) = fixtures::figure2();
        let r = exhaustive_search(&g, &c, &motif(&[1, 1, 2, 3]), OracleBudget::unlimited());
        assert_eq!(r.decision, Decision::Yes);
        assert_eq!(r.optimum_ts, Some(3));
        assert_eq!(r.witness, Some(fixtures::figure2_witness()));
    }

    #[test]
    fn single_edge_k2() {
        let g = TemporalGraph::new(2, false, vec![TemporalEdge::new(0, 1, 1)]).unwrap();
        let c = VertexColoring::new(vec![1, 2]);
        let r = exhaustive_search(&g, &c, &motif(&[1, 2]), OracleBudget::unlimited());
        assert_eq!(r.decision, Decision::Yes);
        assert!(r.nodes_expanded <= 4);
    }

    #[test]
    fn budget_exhaustion_is_inconclusive() {
        let (g, c) = fixtures::figure2();
        let budget = OracleBudget { max_nodes: 2, ..OracleBudget::default() };
        let r = exhaustive_search(&g, &c, &MotifQuery::Size(5), budget);
        assert_eq!(r.decision, Decision::Inconclusive);
    }

    #[test]
    fn random_walks_hit_figure_two() {
        let (g, c) = fixtures::figure2();
        let q = motif(&[1, 1, 2, 3]);
        let r = random_walk_search(&g, &c, &q, OracleBudget::default(), 11);
        assert_eq!(r.decision, Decision::Yes);
        assert!(validate_path(&g, &c, r.witness.as_ref().unwrap(), &q).is_valid());
        assert_eq!(r.optimum_ts, Some(3));
        assert!(r.first_hit.is_some());
    }

    #[test]
    fn random_walk_first_iteration_when_every_walk_matches() {
        let g = TemporalGraph::new(2, false, vec![TemporalEdge::new(0, 1, 1)]).unwrap();
        let c = VertexColoring::uniform(2);
        let r = random_walk_search(&g, &c, &MotifQuery::Size(2), OracleBudget::default(), 3);
        assert_eq!(r.first_hit, Some(1));
    }

    #[test]
    fn node_bound_closed_form() {
        assert_eq!(exhaustive_node_bound(3, 1), 1);
        assert_eq!(exhaustive_node_bound(3, 3), 1 + 3 + 6);
    }
}
