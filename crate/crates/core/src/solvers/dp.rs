//! Exact dynamic program for vertex-ordered colorful paths.

use crate::graph::{Color, TemporalGraph, Timestamp, VertexColoring};
use crate::query::{MotifQuery, Problem, QueryError};
use crate::report::{Decision, SolveReport};
use crate::sieve::SieveOutcome;

use super::SolveError;

/// Earliest arrival per vertex over paths whose `l`-th vertex carries
/// `order[l]`. The indicator `I_{u,i}` ("a level-`l` path reaches `u`
/// before time `i`") is monotone in `i`, so only its threshold is stored.
/// Exact when every vertex has one color: distinct order colors then rule
/// out repeated vertices.
fn earliest_arrivals(g: &TemporalGraph, coloring: &VertexColoring, order: &[Color], max_ts: Timestamp) -> Vec<Option<Timestamp>> {
    let n = g.n();
    let Some(&first) = order.first() else { return vec![None; n] };
    let mut arrival: Vec<Option<Timestamp>> = (0..n).map(|v| coloring.has_color(v, first).then_some(0)).collect();
    for &c in &order[1..] {
        let mut next = vec![None; n];
        for v in 0..n {
            let Some(a) = arrival[v] else { continue };
            let out = g.outgoing(v);
            for h in &out[out.partition_point(|h| h.ts <= a)..] {
                if h.ts > max_ts {
                    break;
                }
                if coloring.has_color(h.to, c) && next[h.to].is_none_or(|b| h.ts < b) {
                    next[h.to] = Some(h.ts);
                }
            }
        }
        arrival = next;
    }
    arrival
}

pub(crate) fn outcome(g: &TemporalGraph, coloring: &VertexColoring, order: &[Color], max_ts: Timestamp) -> SieveOutcome {
    let arrival = earliest_arrivals(g, coloring, order, max_ts);
    let accumulators: Vec<u64> = arrival.iter().map(|a| a.is_some() as u64).collect();
    let flagged: Vec<usize> = (0..accumulators.len()).filter(|&u| accumulators[u] != 0).collect();
    let checksum = accumulators.iter().fold(crate::gf::mix64(accumulators.len() as u64), |h, &a| crate::gf::mix64(h ^ a));
    SieveOutcome {
        global_sum: accumulators.iter().fold(0, |s, &a| s ^ a),
        global_nonzero: !flagged.is_empty(),
        accumulators,
        flagged,
        fn_bound: 0.0,
        peak_words: 2 * g.n() as u64,
        checksum,
    }
}

/// Deterministic decision for a colorful vertex order; the optimum is the
/// earliest final arrival.
pub fn vc_colorful_dp(g: &TemporalGraph, coloring: &VertexColoring, order: &[Color]) -> Result<SolveReport, SolveError> {
    Problem::VcColorfulPath.accepts(&MotifQuery::Ordered(order.to_vec()))?;
    if let Some(v) = (0..coloring.n()).find(|&v| coloring.colors(v).len() > 1) {
        return Err(QueryError::Parse(format!("vertex {v} carries several colors; the ordered sieve handles that case")).into());
    }
    let arrival = earliest_arrivals(g, coloring, order, g.t());
    let mut report = SolveReport::new(Decision::No);
    report.problem = Some(Problem::VcColorfulPath);
    report.flagged = (0..g.n()).filter(|&u| arrival[u].is_some()).collect();
    report.decision = Decision::from_bool(!report.flagged.is_empty());
    report.optimum_ts = arrival.iter().flatten().copied().filter(|&a| a > 0).min();
    report.peak_words = 2 * g.n() as u64;
    Ok(report)
}
