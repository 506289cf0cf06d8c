//! Graph reduction ahead of the temporal sieve.

use crate::graph::{TemporalGraph, VertexColoring};
use crate::oracle::color_filter;
use crate::query::{MotifQuery, Problem};
use crate::sieve::{build_shades, eval_junction_sieve, CertainNo, SieveConfig, SieveError};

use super::{Plan, Preprocess, SolveError};

/// A reduced instance and the map from its vertex ids back to the input's.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub graph: TemporalGraph,
    pub coloring: VertexColoring,
    /// `map[new] = old`.
    pub map: Vec<usize>,
    /// Why nothing was left, if so.
    pub certain_no: Option<CertainNo>,
    pub oracle_calls: u64,
    pub fn_bound: f64,
}

pub(crate) struct Applied {
    pub graph: TemporalGraph,
    pub plan: Plan,
    pub map: Vec<usize>,
    pub oracle_calls: u64,
    pub fn_bound: f64,
}

/// Keeps `vertices` (ascending ids of the current graph), composing maps.
fn shrink(current: Applied, vertices: &[usize]) -> Result<Applied, CertainNo> {
    if vertices.len() == current.graph.n() {
        return Ok(current);
    }
    let mut old_to_new = vec![None; current.graph.n()];
    for (i, &v) in vertices.iter().enumerate() {
        old_to_new[v] = Some(i);
    }
    let plan = current.plan.relabel(current.plan.coloring.subset(vertices), &old_to_new).ok_or(CertainNo::EmptyGraph)?;
    let (graph, _) = current.graph.compact(vertices);
    Ok(Applied {
        graph,
        plan,
        map: vertices.iter().map(|&v| current.map[v]).collect(),
        oracle_calls: current.oracle_calls,
        fn_bound: current.fn_bound,
    })
}

/// Color filter then static junction sieve, as `level` says. The inner
/// `Err` is a certain NO found while reducing, with the sieve calls spent.
pub(crate) fn apply(g: &TemporalGraph, plan: &Plan, level: Preprocess, cfg: &SieveConfig) -> Result<Result<Applied, (CertainNo, u64)>, SolveError> {
    let mut current = Applied { graph: g.clone(), plan: plan.clone(), map: (0..g.n()).collect(), oracle_calls: 0, fn_bound: 0.0 };
    let k = plan.k();
    if level.colors() {
        let usable = color_filter(&current.plan.coloring, &current.plan.sieve_query);
        let keep: Vec<usize> = (0..g.n()).filter(|&v| usable[v]).collect();
        current = match shrink(current, &keep) {
            Ok(c) => c,
            Err(reason) => return Ok(Err((reason, 0))),
        };
        if current.graph.n() < k {
            return Ok(Err((CertainNo::TooFewVertices { k, n: current.graph.n() }, 0)));
        }
    }
    if level.static_sieve() && k > 1 {
        // independent randomness from the temporal run
        let static_cfg = SieveConfig { seed: cfg.seed ^ 0x5354_4154_4943_0001, ..cfg.clone() };
        let shades = match build_shades(&current.plan.sieve_query, &current.plan.coloring, &static_cfg) {
            Ok(s) => s,
            Err(SieveError::CertainNo(reason)) => return Ok(Err((reason, current.oracle_calls))),
            Err(e) => return Err(e.into()),
        };
        let out = eval_junction_sieve(&current.graph.project_static(), &current.plan.coloring, &shades, &static_cfg)?;
        current.oracle_calls += 1;
        current.fn_bound = (current.fn_bound + out.fn_bound).min(1.0);
        if out.flagged.is_empty() {
            return Ok(Err((CertainNo::EmptyGraph, current.oracle_calls)));
        }
        let calls = current.oracle_calls;
        current = match shrink(current, &out.flagged) {
            Ok(c) => c,
            Err(reason) => return Ok(Err((reason, calls))),
        };
    }
    Ok(Ok(current))
}

/// Problem a bare query most naturally belongs to.
fn problem_for(query: &MotifQuery) -> Problem {
    match query {
        MotifQuery::Size(_) => Problem::KTempPath,
        MotifQuery::Multiset(_) => Problem::PathMotif,
        MotifQuery::Ordered(_) => Problem::VcPathMotif,
        MotifQuery::Timed(_) => Problem::EcTempPath,
        MotifQuery::TimedMultiset { .. } => Problem::EcPathMotif,
        MotifQuery::Endpoints { .. } => Problem::SdColorfulPath,
    }
}

/// Reduces `g` for `query`. The color filter is exact; the static step can
/// lose a match only with the sieve's false-negative probability. A certain
/// NO yields an empty graph.
pub fn preprocess(
    g: &TemporalGraph,
    coloring: &VertexColoring,
    query: &MotifQuery,
    level: Preprocess,
    cfg: &SieveConfig,
) -> Result<Reduced, SolveError> {
    let plan = Plan::new(problem_for(query), coloring, query, cfg)?;
    Ok(match apply(g, &plan, level, cfg)? {
        Ok(a) => Reduced {
            coloring: coloring.subset(&a.map),
            graph: a.graph,
            map: a.map,
            certain_no: None,
            oracle_calls: a.oracle_calls,
            fn_bound: a.fn_bound,
        },
        Err((reason, oracle_calls)) => Reduced {
            graph: TemporalGraph::new(0, g.is_directed(), Vec::new()).expect("empty graph"),
            coloring: VertexColoring::new(Vec::new()),
            map: Vec::new(),
            certain_no: Some(reason),
            oracle_calls,
            fn_bound: 0.0,
        },
    })
}
