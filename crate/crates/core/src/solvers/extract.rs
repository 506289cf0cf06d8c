//! Witness extraction: reverse search from flagged vertices, or deletion
//! queries against the decision oracle.

use crate::graph::{TemporalGraph, TemporalPath, Timestamp};
use crate::query::{EdgeModel, MotifQuery, Problem};
use crate::report::SolveReport;
use crate::sieve::{SieveConfig, SieveError};

use super::{solve, Engine, Extraction, Plan, SolveError, SolverConfig, Task};

struct Walker<'a> {
    plan: &'a Plan,
    g: &'a TemporalGraph,
    model: EdgeModel,
    k: usize,
    times: Option<&'a [Timestamp]>,
}

impl Walker<'_> {
    fn new<'a>(plan: &'a Plan, g: &'a TemporalGraph, model: EdgeModel) -> Walker<'a> {
        let times = match &plan.engine {
            Engine::Timed(t) => Some(t.as_slice()),
            _ => None,
        };
        Walker { plan, g, model, k: plan.k(), times }
    }

    fn hop_ok(&self, position: usize, ts: Timestamp) -> bool {
        self.times.is_none_or(|t| t[position] == ts)
    }

    fn finish(&self, vertices: &[usize], hops: &[(usize, Timestamp)]) -> Option<TemporalPath> {
        let path = TemporalPath::from_hops(vertices[0], hops);
        let ok = self.plan.check.check(&self.plan.coloring, &path.vertices, &path.timestamps()).is_valid();
        ok.then_some(path)
    }

    /// Grows `rev` (path read from its end) backward. `limit` is the latest
    /// arrival the next hop into the head may have.
    fn backward(&self, rev: &mut Vec<usize>, rev_hops: &mut Vec<(usize, Timestamp, usize)>, limit: i64) -> Option<TemporalPath> {
        let head = *rev.last().unwrap();
        if rev.len() == self.k {
            let first_ts = rev_hops.last().map_or(u64::MAX, |h| h.1 as u64);
            if first_ts < self.model.gap(self.g, head) {
                return None;
            }
            let vertices: Vec<usize> = rev.iter().rev().copied().collect();
            let hops: Vec<(usize, Timestamp)> = rev_hops.iter().rev().map(|&(to, ts, _)| (to, ts)).collect();
            return self.finish(&vertices, &hops);
        }
        let position = self.k - 1 - rev.len();
        let inc = self.g.incoming(head);
        let mut hi = inc.len();
        // descending timestamps, ascending neighbor within one timestamp
        while hi > 0 {
            let ts = inc[hi - 1].ts;
            let lo = inc[..hi].partition_point(|h| h.ts < ts);
            for h in &inc[lo..hi] {
                if self.model.arrival(self.g, h.edge, h.ts) as i64 > limit || !self.hop_ok(position, h.ts) || rev.contains(&h.from) {
                    continue;
                }
                rev.push(h.from);
                if self.plan.check.prefix_feasible(&self.plan.coloring, rev, true) {
                    rev_hops.push((head, h.ts, h.edge));
                    let next_limit = h.ts as i64 - self.model.gap(self.g, h.from) as i64;
                    if let Some(p) = self.backward(rev, rev_hops, next_limit) {
                        return Some(p);
                    }
                    rev_hops.pop();
                }
                rev.pop();
            }
            hi = lo;
        }
        None
    }

    fn forward(&self, path: &mut Vec<usize>, hops: &mut Vec<(usize, Timestamp)>, ready: u64) -> Option<TemporalPath> {
        if path.len() == self.k {
            return self.finish(path, hops);
        }
        let u = *path.last().unwrap();
        let out = self.g.outgoing(u);
        for h in &out[out.partition_point(|h| (h.ts as u64) < ready)..] {
            let arrival = self.model.arrival(self.g, h.edge, h.ts);
            if arrival > self.g.t() as u64 || !self.hop_ok(path.len() - 1, h.ts) || path.contains(&h.to) {
                continue;
            }
            path.push(h.to);
            if self.plan.check.prefix_feasible(&self.plan.coloring, path, false) {
                hops.push((h.to, h.ts));
                if let Some(p) = self.forward(path, hops, arrival + self.model.gap(self.g, h.to)) {
                    return Some(p);
                }
                hops.pop();
            }
            path.pop();
        }
        None
    }
}

/// Reverse temporal search from each flagged vertex in turn, edges tried in
/// descending timestamp then ascending neighbor id.
pub(crate) fn localized(plan: &Plan, g: &TemporalGraph, flagged: &[usize], cfg: &SieveConfig) -> Option<TemporalPath> {
    let walker = Walker::new(plan, g, cfg.edge_model);
    flagged.iter().find_map(|&u| {
        let mut rev = vec![u];
        if !plan.check.prefix_feasible(&plan.coloring, &rev, true) {
            return None;
        }
        walker.backward(&mut rev, &mut Vec::new(), g.t() as i64)
    })
}

/// Phase 1 deletes vertex blocks of halving size while the oracle stays
/// YES; phase 2 searches forward inside the survivors. Returns the witness
/// and the number of oracle calls.
pub(crate) fn self_reducible(plan: &Plan, g: &TemporalGraph, max_ts: Timestamp, cfg: &SieveConfig) -> Result<(Option<TemporalPath>, u64), SieveError> {
    let n = g.n();
    let k = plan.k();
    let mut keep = vec![true; n];
    let mut calls = 0u64;
    let mut oracle = |keep: &[bool]| -> Result<bool, SieveError> {
        let probe_cfg = SieveConfig { seed: crate::gf::mix64(cfg.seed ^ (calls + 1)), ..cfg.clone() };
        calls += 1;
        let sub = g.restrict_to(keep, max_ts);
        let shades = match plan.shades(&probe_cfg) {
            Ok(s) => s,
            Err(SieveError::CertainNo(_)) => return Ok(false),
            Err(e) => return Err(e),
        };
        Ok(plan.probe(&sub, shades.as_ref(), max_ts, &probe_cfg)?.global_nonzero)
    };
    let mut alive: Vec<usize> = (0..n).collect();
    let mut block = (alive.len() / 2).max(1);
    while alive.len() > k {
        let mut survivors = Vec::with_capacity(alive.len());
        for chunk in alive.chunks(block) {
            for &v in chunk {
                keep[v] = false;
            }
            if oracle(&keep)? {
                continue;
            }
            for &v in chunk {
                keep[v] = true;
            }
            survivors.extend_from_slice(chunk);
        }
        alive = survivors;
        if block == 1 {
            break;
        }
        block /= 2;
    }
    let core = g.restrict_to(&keep, max_ts);
    let walker = Walker::new(plan, &core, cfg.edge_model);
    let found = alive.iter().find_map(|&s| {
        let mut path = vec![s];
        if !plan.check.prefix_feasible(&plan.coloring, &path, false) {
            return None;
        }
        walker.forward(&mut path, &mut Vec::new(), walker.model.gap(&core, s))
    });
    Ok((found, calls))
}

/// Oracle-call bound for phase 1: `n - k + 2 ceil(log2 n) k`.
pub fn self_reducible_call_bound(n: usize, k: usize) -> u64 {
    let log = usize::BITS - n.saturating_sub(1).leading_zeros();
    (n.saturating_sub(k) + 2 * log as usize * k) as u64
}

/// Decision plus a witness from the localized reverse search.
pub fn extract_localized(problem: Problem, g: &TemporalGraph, coloring: &crate::graph::VertexColoring, query: &MotifQuery, cfg: &SolverConfig) -> Result<SolveReport, SolveError> {
    let cfg = SolverConfig { extraction: Extraction::Localized, ..cfg.clone() };
    solve(problem, g, coloring, query, Task::Extract, &cfg)
}

/// Decision plus a witness from deletion queries.
pub fn extract_self_reducible(
    problem: Problem,
    g: &TemporalGraph,
    coloring: &crate::graph::VertexColoring,
    query: &MotifQuery,
    cfg: &SolverConfig,
) -> Result<SolveReport, SolveError> {
    let cfg = SolverConfig { extraction: Extraction::SelfReducible, ..cfg.clone() };
    solve(problem, g, coloring, query, Task::Extract, &cfg)
}
