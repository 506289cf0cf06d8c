//! Problem-level frontends: each problem variant becomes one or more sieve
//! evaluations, plus optimum search, preprocessing and witness extraction.

mod dp;
mod extract;
mod preprocess;

use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Color, TemporalGraph, Timestamp, VertexColoring};
use crate::query::{MotifQuery, Multiset, Problem, QueryError};
use crate::report::{Decision, SolveReport};
use crate::sieve::{
    build_shades, eval_edge_constrained_sieve, ShadeAssignment, SieveConfig, SieveError, SieveOutcome, TemporalSieve,
};

pub use dp::vc_colorful_dp;
pub use extract::{extract_localized, extract_self_reducible, self_reducible_call_bound};
pub use preprocess::{preprocess, Reduced};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preprocess {
    None,
    /// Drop vertices whose colors miss the query support.
    Colors,
    /// Keep vertices flagged by the static junction sieve.
    Static,
    #[default]
    Both,
}

impl Preprocess {
    fn colors(self) -> bool {
        matches!(self, Preprocess::Colors | Preprocess::Both)
    }

    fn static_sieve(self) -> bool {
        matches!(self, Preprocess::Static | Preprocess::Both)
    }
}

impl FromStr for Preprocess {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(Preprocess::None),
            "colors" | "color-filter" => Ok(Preprocess::Colors),
            "static" | "static-sieve" => Ok(Preprocess::Static),
            "both" => Ok(Preprocess::Both),
            _ => Err(format!("unknown preprocess level `{s}` (none, colors, static, both)")),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Extraction {
    #[default]
    Localized,
    SelfReducible,
}

impl FromStr for Extraction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "localized" => Ok(Extraction::Localized),
            "self-reducible" | "selfreducible" => Ok(Extraction::SelfReducible),
            _ => Err(format!("unknown extraction `{s}` (localized, self-reducible)")),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub sieve: SieveConfig,
    pub preprocess: Preprocess,
    pub extraction: Extraction,
    /// Largest pattern size tried with wildcard vertices; multiset problems only.
    pub wildcards_max: Option<usize>,
}

impl SolverConfig {
    pub fn with_seed(seed: u64) -> Self {
        SolverConfig { sieve: SieveConfig::with_seed(seed), ..SolverConfig::default() }
    }
}

#[derive(Debug, PartialEq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Query(#[from] QueryError),
    #[error(transparent)]
    Sieve(SieveError),
    #[error("vertex {0} is out of range")]
    BadVertex(usize),
    #[error("coloring covers {coloring} vertices but the graph has {graph}")]
    SizeMismatch { coloring: usize, graph: usize },
    #[error("rainbow search needs k < q, got k = {k}, q = {q}")]
    RainbowSize { k: usize, q: Color },
    #[error("wildcard bound {k_max} is below the query size {k}")]
    WildcardBound { k: usize, k_max: usize },
    #[error("no witness found from any flagged vertex")]
    ExtractionFailed,
}

impl From<SieveError> for SolveError {
    fn from(e: SieveError) -> Self {
        SolveError::Sieve(e)
    }
}

/// What a solver run produces beyond the decision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    #[default]
    Decide,
    /// Decision plus a witness.
    Extract,
    /// Smallest admitting max-timestamp plus a witness within it.
    Optimum,
}

/// Which evaluation answers a probe.
#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Engine {
    Temporal,
    Timed(Vec<Timestamp>),
    Ordered(Vec<Color>),
    Anchored { source: usize, dest: usize },
    OrderedDp(Vec<Color>),
}

/// One problem instance in the form the engines consume. `coloring` and
/// `check` use the same vertex ids as the graph it is probed on.
#[derive(Clone, Debug)]
pub(crate) struct Plan {
    pub engine: Engine,
    pub coloring: VertexColoring,
    /// Query the shades are built from.
    pub sieve_query: MotifQuery,
    /// Query a witness must pass.
    pub check: MotifQuery,
}

impl Plan {
    fn new(problem: Problem, coloring: &VertexColoring, query: &MotifQuery, cfg: &SieveConfig) -> Result<Plan, SolveError> {
        problem.accepts(query)?;
        let simple = |engine| Plan { engine, coloring: coloring.clone(), sieve_query: query.clone(), check: query.clone() };
        Ok(match (problem, query) {
            (Problem::EcTempPath | Problem::EcPathMotif, q) => simple(Engine::Timed(q.times().unwrap_or_default().to_vec())),
            (Problem::VcPathMotif, MotifQuery::Ordered(o)) => simple(Engine::Ordered(o.clone())),
            (Problem::VcColorfulPath, MotifQuery::Ordered(o)) => {
                let single = (0..coloring.n()).all(|v| coloring.colors(v).len() == 1);
                if single && cfg.edge_model == crate::query::EdgeModel::Instant {
                    simple(Engine::OrderedDp(o.clone()))
                } else {
                    simple(Engine::Ordered(o.clone()))
                }
            }
            (Problem::SdColorfulPath, &MotifQuery::Endpoints { source, dest, k }) => {
                let n = coloring.n();
                if let Some(v) = [source, dest].into_iter().find(|&v| v >= n) {
                    return Err(SolveError::BadVertex(v));
                }
                let (cs, cd) = (k as Color + 1, k as Color + 2);
                let mut recolored = coloring.clone();
                recolored.set_color(source, cs);
                recolored.set_color(dest, cd);
                // other carriers of the endpoint colors must not stand in for s or d
                for v in 0..n {
                    if v != source && v != dest && (recolored.has_color(v, cs) || recolored.has_color(v, cd)) {
                        let keep: Vec<Color> = recolored.colors(v).iter().copied().filter(|&c| c != cs && c != cd).collect();
                        recolored.set_colors(v, keep);
                    }
                }
                let mut m = Multiset::from_colors(&(1..=k as Color).collect::<Vec<_>>());
                m.add(cs, 1);
                m.add(cd, 1);
                Plan {
                    engine: Engine::Anchored { source, dest },
                    coloring: recolored,
                    sieve_query: MotifQuery::Multiset(m),
                    check: query.clone(),
                }
            }
            _ => simple(Engine::Temporal),
        })
    }

    /// The plan on a relabelled vertex set; `None` when an anchor was dropped.
    fn relabel(&self, coloring: VertexColoring, old_to_new: &[Option<usize>]) -> Option<Plan> {
        let (engine, check) = match (&self.engine, &self.check) {
            (Engine::Anchored { source, dest }, MotifQuery::Endpoints { k, .. }) => {
                let (s, d) = (old_to_new[*source]?, old_to_new[*dest]?);
                (Engine::Anchored { source: s, dest: d }, MotifQuery::Endpoints { source: s, dest: d, k: *k })
            }
            (e, q) => (e.clone(), q.clone()),
        };
        Some(Plan { engine, coloring, sieve_query: self.sieve_query.clone(), check })
    }

    fn k(&self) -> usize {
        self.check.k()
    }

    fn shades(&self, cfg: &SieveConfig) -> Result<Option<ShadeAssignment>, SieveError> {
        if matches!(self.engine, Engine::OrderedDp(_)) {
            return Ok(None);
        }
        build_shades(&self.sieve_query, &self.coloring, cfg).map(Some)
    }

    /// One evaluation at `max_ts`. Certain-NO conditions give an all-zero outcome.
    fn probe(&self, g: &TemporalGraph, shades: Option<&ShadeAssignment>, max_ts: Timestamp, cfg: &SieveConfig) -> Result<SieveOutcome, SieveError> {
        let max_ts = max_ts.min(g.t());
        let result = match (&self.engine, shades) {
            (Engine::OrderedDp(order), _) => return Ok(dp::outcome(g, &self.coloring, order, max_ts)),
            (Engine::Temporal, Some(s)) => TemporalSieve::new(g, &self.coloring, s).max_ts(max_ts).run(cfg),
            (Engine::Ordered(order), Some(s)) => TemporalSieve::new(g, &self.coloring, s).max_ts(max_ts).ordered(order).run(cfg),
            (Engine::Anchored { source, dest }, Some(s)) => {
                TemporalSieve::new(g, &self.coloring, s).max_ts(max_ts).anchored(*source, *dest).run(cfg)
            }
            (Engine::Timed(times), Some(s)) => {
                if times.last().is_some_and(|&j| j > max_ts) {
                    return Ok(empty_outcome(g.n()));
                }
                eval_edge_constrained_sieve(g, &self.coloring, times, s, cfg)
            }
            (_, None) => unreachable!("sieve engines always carry shades"),
        };
        match result {
            Err(SieveError::CertainNo(_)) => Ok(empty_outcome(g.n())),
            other => other,
        }
    }
}

pub(crate) fn empty_outcome(n: usize) -> SieveOutcome {
    SieveOutcome {
        accumulators: vec![0; n],
        flagged: Vec::new(),
        global_sum: 0,
        global_nonzero: false,
        fn_bound: 0.0,
        peak_words: 0,
        checksum: 0,
    }
}

/// Running totals over the sieve calls of one run.
#[derive(Default)]
struct Tally {
    calls: u64,
    fn_bound: f64,
    peak: u64,
    checksum: u64,
    sieve_secs: f64,
}

impl Tally {
    fn probe(&mut self, plan: &Plan, g: &TemporalGraph, shades: Option<&ShadeAssignment>, max_ts: Timestamp, cfg: &SieveConfig) -> Result<SieveOutcome, SieveError> {
        let started = Instant::now();
        let out = plan.probe(g, shades, max_ts, cfg)?;
        self.sieve_secs += started.elapsed().as_secs_f64();
        self.calls += 1;
        self.fn_bound = (self.fn_bound + out.fn_bound).min(1.0);
        self.peak = self.peak.max(out.peak_words);
        self.checksum = crate::gf::mix64(self.checksum ^ out.checksum);
        Ok(out)
    }

    fn fill(&self, report: &mut SolveReport) {
        report.oracle_calls += self.calls;
        report.fn_bound = (report.fn_bound + self.fn_bound).min(1.0);
        report.peak_words = report.peak_words.max(self.peak);
        report.checksum = crate::gf::mix64(report.checksum ^ self.checksum);
        report.timings.sieve += self.sieve_secs;
    }
}

/// Smallest `t'` in `1..=t` with a YES probe, given that `t` itself is YES.
/// Uses at most `ceil(log2 t)` further probes, all sharing one set of shades.
fn binary_search_optimum(
    plan: &Plan,
    g: &TemporalGraph,
    shades: Option<&ShadeAssignment>,
    cfg: &SieveConfig,
    tally: &mut Tally,
    full: SieveOutcome,
) -> Result<(Timestamp, SieveOutcome), SieveError> {
    if let Engine::Timed(times) = &plan.engine {
        return Ok((times.last().copied().unwrap_or(0), full));
    }
    let (mut lo, mut hi, mut best) = (1, g.t().max(1), full);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        let out = tally.probe(plan, g, shades, mid, cfg)?;
        if out.global_nonzero {
            hi = mid;
            best = out;
        } else {
            lo = mid + 1;
        }
    }
    Ok((hi, best))
}

/// Solves `plan` on `g` with preprocessing, optimum search and extraction as
/// requested. Witnesses and flags are reported in the ids of `g`.
fn run_plan(plan: &Plan, g: &TemporalGraph, task: Task, cfg: &SolverConfig) -> Result<SolveReport, SolveError> {
    let started = Instant::now();
    let reduced = match preprocess::apply(g, plan, cfg.preprocess, &cfg.sieve)? {
        Ok(r) => r,
        Err((reason, calls)) => {
            let mut report = SolveReport::certain_no(reason);
            report.oracle_calls = calls;
            report.timings.preprocess = started.elapsed().as_secs_f64();
            report.reduced_n = Some(0);
            return Ok(report);
        }
    };
    let mut report = SolveReport::new(Decision::No);
    report.timings.preprocess = started.elapsed().as_secs_f64();
    report.reduced_n = Some(reduced.graph.n());
    report.oracle_calls = reduced.oracle_calls;
    report.fn_bound = reduced.fn_bound;
    let (rg, rplan) = (&reduced.graph, &reduced.plan);
    let shades = match rplan.shades(&cfg.sieve) {
        Ok(s) => s,
        Err(SieveError::CertainNo(reason)) => {
            report.certain_no = Some(reason);
            return Ok(report);
        }
        Err(e) => return Err(e.into()),
    };
    let mut tally = Tally::default();
    let full = tally.probe(rplan, rg, shades.as_ref(), rg.t(), &cfg.sieve)?;
    let mut outcome = full;
    let mut horizon = rg.t();
    if outcome.global_nonzero && task == Task::Optimum {
        let (t, out) = binary_search_optimum(rplan, rg, shades.as_ref(), &cfg.sieve, &mut tally, outcome)?;
        horizon = t;
        outcome = out;
        report.optimum_ts = Some(t);
    }
    report.decision = Decision::from_bool(outcome.global_nonzero);
    report.flagged = outcome.flagged.iter().map(|&v| reduced.map[v]).collect();
    tally.fill(&mut report);
    if report.decision.is_yes() && task != Task::Decide {
        let started = Instant::now();
        let scope = if horizon < rg.t() { rg.restrict_to(&vec![true; rg.n()], horizon) } else { rg.clone() };
        let found = match cfg.extraction {
            Extraction::Localized => extract::localized(rplan, &scope, &outcome.flagged, &cfg.sieve),
            Extraction::SelfReducible => {
                let (path, calls) = extract::self_reducible(rplan, &scope, horizon, &cfg.sieve)?;
                report.oracle_calls += calls;
                path
            }
        };
        report.timings.extraction = started.elapsed().as_secs_f64();
        let path = found.ok_or(SolveError::ExtractionFailed)?;
        report.witness = Some(path.relabel(&reduced.map));
    }
    Ok(report)
}

/// Runs `problem` on `query`, honoring the wildcard bound for multiset problems.
pub fn solve(problem: Problem, g: &TemporalGraph, coloring: &VertexColoring, query: &MotifQuery, task: Task, cfg: &SolverConfig) -> Result<SolveReport, SolveError> {
    let mut report = match (problem, query) {
        (Problem::RainbowPath, &MotifQuery::Size(k)) => rainbow(g, coloring, k, task, cfg)?,
        (Problem::PathMotif | Problem::ColorfulPath, MotifQuery::Multiset(_)) if cfg.wildcards_max.is_some_and(|m| m > query.k()) => {
            problem.accepts(query)?;
            wildcards(g, coloring, query, cfg.wildcards_max.unwrap_or(0), task, cfg)?
        }
        _ => {
            let plan = Plan::new(problem, coloring, query, &cfg.sieve)?;
            if let Some(v) = check_n(&plan, g) {
                return Err(v);
            }
            run_plan(&plan, g, task, cfg)?
        }
    };
    report.problem = Some(problem);
    Ok(report)
}

fn check_n(plan: &Plan, g: &TemporalGraph) -> Option<SolveError> {
    (plan.coloring.n() != g.n()).then(|| SolveError::SizeMismatch { coloring: plan.coloring.n(), graph: g.n() })
}

/// Decision only.
pub fn decide(problem: Problem, g: &TemporalGraph, coloring: &VertexColoring, query: &MotifQuery, cfg: &SolverConfig) -> Result<SolveReport, SolveError> {
    solve(problem, g, coloring, query, Task::Decide, cfg)
}

/// Decision plus a witness, extracted as `cfg.extraction` says.
pub fn extract(problem: Problem, g: &TemporalGraph, coloring: &VertexColoring, query: &MotifQuery, cfg: &SolverConfig) -> Result<SolveReport, SolveError> {
    solve(problem, g, coloring, query, Task::Extract, cfg)
}

/// Binary search for the smallest max-timestamp admitting a match; the
/// witness lies within it.
pub fn find_optimum_timestamp(
    problem: Problem,
    g: &TemporalGraph,
    coloring: &VertexColoring,
    query: &MotifQuery,
    cfg: &SolverConfig,
) -> Result<SolveReport, SolveError> {
    solve(problem, g, coloring, query, Task::Optimum, cfg)
}

/// Temporal path `s -> .. -> d` whose `k` interior vertices use colors `1..=k`
/// once each. Endpoints are pinned by an anchored sieve.
pub fn decide_sd_colorful(g: &TemporalGraph, coloring: &VertexColoring, s: usize, d: usize, k: usize, cfg: &SolverConfig) -> Result<SolveReport, SolveError> {
    decide(Problem::SdColorfulPath, g, coloring, &MotifQuery::Endpoints { source: s, dest: d, k }, cfg)
}

/// Lexicographic `k`-subsets of `1..=q`.
fn subsets(q: Color, k: usize) -> impl Iterator<Item = Vec<Color>> {
    let mut next: Option<Vec<Color>> = (k as Color <= q).then(|| (1..=k as Color).collect());
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut s = current.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if s[i] < q - (k - 1 - i) as Color {
                s[i] += 1;
                for j in i + 1..k {
                    s[j] = s[j - 1] + 1;
                }
                next = Some(s);
                break;
            }
        }
        Some(current)
    })
}

fn rainbow(g: &TemporalGraph, coloring: &VertexColoring, k: usize, task: Task, cfg: &SolverConfig) -> Result<SolveReport, SolveError> {
    let q = coloring.q();
    if k == 0 {
        return Err(QueryError::EmptyQuery.into());
    }
    if k as Color >= q {
        return Err(SolveError::RainbowSize { k, q });
    }
    // the color filter is what restricts each subset run to its colors
    let sub_cfg = SolverConfig {
        preprocess: if cfg.preprocess.static_sieve() { Preprocess::Both } else { Preprocess::Colors },
        ..cfg.clone()
    };
    let mut total = SolveReport::new(Decision::No);
    let mut best: Option<SolveReport> = None;
    for subset in subsets(q, k) {
        let query = MotifQuery::Multiset(Multiset::from_colors(&subset));
        let plan = Plan::new(Problem::ColorfulPath, coloring, &query, &cfg.sieve)?;
        let mut r = run_plan(&plan, g, task, &sub_cfg)?;
        total.oracle_calls += r.oracle_calls;
        total.fn_bound = (total.fn_bound + r.fn_bound).min(1.0);
        total.peak_words = total.peak_words.max(r.peak_words);
        total.checksum = crate::gf::mix64(total.checksum ^ r.checksum);
        total.timings.preprocess += r.timings.preprocess;
        total.timings.sieve += r.timings.sieve;
        total.timings.extraction += r.timings.extraction;
        if r.decision.is_yes() {
            r.rainbow_subset = Some(subset);
            let better = best.as_ref().is_none_or(|b| r.optimum_ts < b.optimum_ts);
            if better {
                best = Some(r);
            }
            // only the optimum needs every subset
            if task != Task::Optimum {
                break;
            }
        }
    }
    if let Some(b) = best {
        total.decision = Decision::Yes;
        total.optimum_ts = b.optimum_ts;
        total.witness = b.witness;
        total.flagged = b.flagged;
        total.rainbow_subset = b.rainbow_subset;
        total.reduced_n = b.reduced_n;
    }
    Ok(total)
}

/// Temporal path on `k` vertices with pairwise distinct colors, tried over
/// every `k`-subset of the `q` colors with early exit.
pub fn decide_rainbow(g: &TemporalGraph, coloring: &VertexColoring, k: usize, cfg: &SolverConfig) -> Result<SolveReport, SolveError> {
    decide(Problem::RainbowPath, g, coloring, &MotifQuery::Size(k), cfg)
}

fn wildcards(g: &TemporalGraph, coloring: &VertexColoring, query: &MotifQuery, k_max: usize, task: Task, cfg: &SolverConfig) -> Result<SolveReport, SolveError> {
    let MotifQuery::Multiset(base) = query else {
        return Err(QueryError::KindMismatch { problem: Problem::PathMotif, kind: query.kind() }.into());
    };
    let k = base.k();
    if k_max < k {
        return Err(SolveError::WildcardBound { k, k_max });
    }
    let wild = coloring.q() + 1;
    let extended = coloring.with_extra_color(wild);
    let inner = SolverConfig { wildcards_max: None, ..cfg.clone() };
    let mut total = SolveReport::new(Decision::No);
    for extra in 0..=k_max - k {
        let mut m = base.clone();
        m.add(wild, extra);
        let q = MotifQuery::Multiset(m);
        let c = if extra == 0 { coloring } else { &extended };
        let plan = Plan::new(Problem::PathMotif, c, &q, &cfg.sieve)?;
        let r = run_plan(&plan, g, task, &inner)?;
        total.oracle_calls += r.oracle_calls;
        total.fn_bound = (total.fn_bound + r.fn_bound).min(1.0);
        total.peak_words = total.peak_words.max(r.peak_words);
        total.checksum = crate::gf::mix64(total.checksum ^ r.checksum);
        total.timings.preprocess += r.timings.preprocess;
        total.timings.sieve += r.timings.sieve;
        total.timings.extraction += r.timings.extraction;
        if r.decision.is_yes() {
            total.decision = Decision::Yes;
            total.optimum_ts = r.optimum_ts;
            total.witness = r.witness;
            total.flagged = r.flagged;
            total.reduced_n = r.reduced_n;
            total.wildcards = Some(extra);
            return Ok(total);
        }
        total.certain_no = r.certain_no;
    }
    Ok(total)
}

/// Pattern sizes `k..=k_max`, adding one copy of a fresh color `q + 1`
/// (carried by every vertex) per step; the first YES wins.
pub fn solve_with_wildcards(
    g: &TemporalGraph,
    coloring: &VertexColoring,
    query: &MotifQuery,
    k_max: usize,
    cfg: &SolverConfig,
) -> Result<SolveReport, SolveError> {
    let mut r = wildcards(g, coloring, query, k_max, Task::Decide, cfg)?;
    r.problem = Some(Problem::PathMotif);
    Ok(r)
}

/// Witness check used by callers holding a report: the path passes
/// `validate_path` for the problem's query on the original coloring.
pub fn witness_query(problem: Problem, coloring: &VertexColoring, query: &MotifQuery, report: &SolveReport) -> (VertexColoring, MotifQuery) {
    match (problem, &report.rainbow_subset, report.wildcards) {
        (Problem::RainbowPath, Some(subset), _) => (coloring.clone(), MotifQuery::Multiset(Multiset::from_colors(subset))),
        (_, _, Some(extra)) if extra > 0 => {
            let wild = coloring.q() + 1;
            let MotifQuery::Multiset(m) = query else { return (coloring.clone(), query.clone()) };
            let mut m = m.clone();
            m.add(wild, extra);
            (coloring.with_extra_color(wild), MotifQuery::Multiset(m))
        }
        _ => (coloring.clone(), query.clone()),
    }
}
