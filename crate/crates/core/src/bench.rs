//! Scaling benchmarks over generated instances, emitted as CSV.
//!
//! Every point generates a graph, plants one match of a random color
//! multiset so the instance is YES, and times the solver (and optionally the
//! baselines) on it. Repeats run sequentially.

use std::io::Write;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::gen::{generate, plant_matches, GenError, GeneratorSpec};
use crate::graph::{Color, TemporalGraph, Timestamp, VertexColoring};
use crate::oracle::{exhaustive_search, random_walk_search, OracleBudget};
use crate::query::{MotifQuery, Multiset, Problem};
use crate::report::{Decision, SolveReport};
use crate::solvers::{solve, SolveError, SolverConfig, Task};

/// First line of every CSV the harness writes.
pub const CSV_VERSION: &str = "# tempmotif-bench v1";
pub const CSV_COLUMNS: &str = "suite,solver,family,n,m,t,k,d,alpha,repeat,decision_secs,extraction_secs,peak_words,peak_bytes,verdict";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Edge count grows at fixed degree.
    Edges,
    /// Query size grows on a fixed graph.
    K,
    Timestamps,
    /// Mean degree grows at fixed vertex count.
    Degree,
    /// Solver against exhaustive search and random walks.
    Baseline,
    /// Peak working memory against `4 n t W`.
    Memory,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Edges => "edges",
            Suite::K => "k",
            Suite::Timestamps => "timestamps",
            Suite::Degree => "degree",
            Suite::Baseline => "baseline",
            Suite::Memory => "memory",
        }
    }

    /// Values swept when none are given.
    pub fn default_sizes(self) -> Vec<u64> {
        match self {
            Suite::Edges => vec![1_000, 10_000, 100_000],
            Suite::K => (4..=10).collect(),
            Suite::Timestamps => vec![10, 100, 1_000],
            Suite::Degree => vec![5, 10, 20, 40],
            Suite::Baseline => vec![1_000, 10_000],
            Suite::Memory => vec![1_000, 10_000, 50_000],
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Suite::Edges, Suite::K, Suite::Timestamps, Suite::Degree, Suite::Baseline, Suite::Memory]
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}` (edges, k, timestamps, degree, baseline, memory)"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum GraphFamily {
    Regular,
    PowerLaw { alpha: f64, w: usize },
}

/// One benchmark instance shape.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchPoint {
    pub family: GraphFamily,
    pub n: usize,
    /// Degree (regular) or mean degree (power law).
    pub d: usize,
    pub t: Timestamp,
    pub k: usize,
    /// Colors are drawn from `1..=colors`.
    pub colors: Color,
    /// Query `{1..k}` instead of a random multiset.
    pub colorful: bool,
    /// Matches planted before timing.
    pub planted: usize,
}

impl BenchPoint {
    pub fn regular(n: usize, d: usize, t: Timestamp, k: usize) -> Self {
        BenchPoint { family: GraphFamily::Regular, n, d, t, k, colors: 8, colorful: false, planted: 1 }
    }

    pub fn powerlaw(n: usize, mean: usize, alpha: f64, t: Timestamp, k: usize) -> Self {
        BenchPoint { family: GraphFamily::PowerLaw { alpha, w: 20 }, n, d: mean, t, k, colors: 8, colorful: false, planted: 1 }
    }

    fn spec(&self, seed: u64) -> GeneratorSpec {
        match self.family {
            GraphFamily::Regular => GeneratorSpec::regular(self.n, self.d, self.t, self.colors, seed),
            GraphFamily::PowerLaw { alpha, w } => GeneratorSpec::powerlaw(self.n, self.d, w, alpha, self.t, self.colors, seed),
        }
    }

    fn family_name(&self) -> &'static str {
        match self.family {
            GraphFamily::Regular => "regular",
            GraphFamily::PowerLaw { .. } => "powerlaw",
        }
    }

    fn alpha(&self) -> Option<f64> {
        match self.family {
            GraphFamily::Regular => None,
            GraphFamily::PowerLaw { alpha, .. } => Some(alpha),
        }
    }
}

/// A generated YES instance.
#[derive(Clone, Debug)]
pub struct BenchInstance {
    pub graph: TemporalGraph,
    pub coloring: VertexColoring,
    pub query: MotifQuery,
}

/// Generates the graph for `point`, picks the query and plants matches.
pub fn build_instance(point: &BenchPoint, seed: u64) -> Result<BenchInstance, GenError> {
    let generated = generate(&point.spec(seed))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0071_7565_7279);
    let colors: Vec<Color> = match point.colorful {
        true => (1..=point.k as Color).collect(),
        false => (0..point.k).map(|_| rng.gen_range(1..=point.colors)).collect(),
    };
    let query = MotifQuery::Multiset(Multiset::from_colors(&colors));
    let planted = plant_matches(&generated.graph, &generated.coloring, &query, point.planted, point.t, seed)?;
    Ok(BenchInstance { graph: planted.graph, coloring: planted.coloring, query })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub suite: String,
    /// `algebraic`, `exhaustive` or `random-walk`.
    pub solver: String,
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub t: Timestamp,
    pub k: usize,
    pub d: usize,
    pub alpha: Option<f64>,
    /// Repeat index, or `max` / `min` on summary rows.
    pub repeat: String,
    pub decision_secs: f64,
    /// Wall time to a witness (decision included).
    pub extraction_secs: f64,
    pub peak_words: u64,
    pub peak_bytes: u64,
    /// YES, NO, timeout, or for the memory suite `within-bound` / `over-bound`.
    pub verdict: String,
}

impl BenchRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{:.6},{:.6},{},{},{}",
            self.suite,
            self.solver,
            self.family,
            self.n,
            self.m,
            self.t,
            self.k,
            self.d,
            self.alpha.map(|a| a.to_string()).unwrap_or_default(),
            self.repeat,
            self.decision_secs,
            self.extraction_secs,
            self.peak_words,
            self.peak_bytes,
            self.verdict
        )
    }
}

pub fn write_csv<W: Write>(rows: &[BenchRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{CSV_VERSION}")?;
    writeln!(out, "{CSV_COLUMNS}")?;
    for r in rows {
        writeln!(out, "{}", r.to_csv())?;
    }
    Ok(())
}

/// Knobs shared by every point of a run.
#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub solver: SolverConfig,
    pub repeats: usize,
    pub seed: u64,
    /// Wall-clock cap per baseline run.
    pub baseline_budget: Duration,
    /// Also run the baselines on every point.
    pub baselines: bool,
    /// Time optimum extraction (earliest-finishing match) on both sides.
    /// Always on for the baseline suite.
    pub optimum: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig { solver: SolverConfig::default(), repeats: 3, seed: 1, baseline_budget: Duration::from_secs(60), baselines: false, optimum: false }
    }
}

fn row(suite: Suite, solver: &str, point: &BenchPoint, inst: &BenchInstance, repeat: String) -> BenchRow {
    BenchRow {
        suite: suite.name().to_string(),
        solver: solver.to_string(),
        family: point.family_name().to_string(),
        n: inst.graph.n(),
        m: inst.graph.m(),
        t: point.t,
        k: point.k,
        d: point.d,
        alpha: point.alpha(),
        repeat,
        decision_secs: 0.0,
        extraction_secs: 0.0,
        peak_words: 0,
        peak_bytes: 0,
        verdict: String::new(),
    }
}

fn verdict(d: Decision) -> String {
    match d {
        Decision::Inconclusive => "timeout".to_string(),
        other => other.to_string(),
    }
}

/// Times the solver on `inst`: a decision run, then an `extraction` run
/// (`Extract` or `Optimum`).
pub fn time_algebraic(inst: &BenchInstance, cfg: &SolverConfig, extraction: Task) -> Result<(f64, f64, SolveReport), SolveError> {
    let started = Instant::now();
    solve(Problem::PathMotif, &inst.graph, &inst.coloring, &inst.query, Task::Decide, cfg)?;
    let decision = started.elapsed().as_secs_f64();
    let started = Instant::now();
    let report = solve(Problem::PathMotif, &inst.graph, &inst.coloring, &inst.query, extraction, cfg)?;
    Ok((decision, started.elapsed().as_secs_f64(), report))
}

/// Runs every repeat of one point, returning per-repeat rows followed by
/// summary rows: max over repeats for the solver, min for the baselines.
pub fn run_point(suite: Suite, point: &BenchPoint, cfg: &BenchConfig) -> Result<Vec<BenchRow>, BenchError> {
    let mut rows = Vec::new();
    let optimum = cfg.optimum || suite == Suite::Baseline;
    let task = if optimum { Task::Optimum } else { Task::Extract };
    for repeat in 0..cfg.repeats {
        let seed = cfg.seed.wrapping_add(repeat as u64);
        let inst = build_instance(point, seed)?;
        let solver = SolverConfig { sieve: crate::sieve::SieveConfig { seed, ..cfg.solver.sieve.clone() }, ..cfg.solver.clone() };
        let (decision, extraction, report) = time_algebraic(&inst, &solver, task)?;
        let mut r = row(suite, "algebraic", point, &inst, repeat.to_string());
        r.decision_secs = decision;
        r.extraction_secs = extraction;
        r.peak_words = report.peak_words;
        r.peak_bytes = report.peak_words * solver.sieve.width.bits() as u64 / 8;
        r.verdict = if suite == Suite::Memory {
            let bound = 4 * inst.graph.n() as u64 * point.t as u64 * solver.sieve.lanes as u64;
            if report.peak_words <= bound { "within-bound" } else { "over-bound" }.to_string()
        } else {
            verdict(report.decision)
        };
        rows.push(r);
        if cfg.baselines || suite == Suite::Baseline {
            let budget = OracleBudget { first_match: !optimum, ..OracleBudget::with_wall_clock(cfg.baseline_budget) };
            let started = Instant::now();
            let ex = exhaustive_search(&inst.graph, &inst.coloring, &inst.query, budget);
            let secs = started.elapsed().as_secs_f64();
            let mut r = row(suite, "exhaustive", point, &inst, repeat.to_string());
            // a capped optimum search has not finished even if it saw a match
            let capped = optimum && ex.decision == Decision::Yes && ex.optimum_ts.is_none();
            let v = if capped { verdict(Decision::Inconclusive) } else { verdict(ex.decision) };
            (r.decision_secs, r.extraction_secs, r.verdict) = (secs, secs, v);
            rows.push(r);
            let started = Instant::now();
            let rw = random_walk_search(&inst.graph, &inst.coloring, &inst.query, budget, seed);
            let secs = started.elapsed().as_secs_f64();
            let mut r = row(suite, "random-walk", point, &inst, repeat.to_string());
            (r.decision_secs, r.extraction_secs, r.verdict) = (secs, secs, verdict(rw.decision));
            rows.push(r);
        }
    }
    for solver in ["algebraic", "exhaustive", "random-walk"] {
        let mine: Vec<&BenchRow> = rows.iter().filter(|r| r.solver == solver).collect();
        let Some(first) = mine.first() else { continue };
        let algebraic = solver == "algebraic";
        let pick = |f: fn(&BenchRow) -> f64| {
            let it = mine.iter().map(|r| f(r));
            if algebraic { it.fold(f64::MIN, f64::max) } else { it.fold(f64::MAX, f64::min) }
        };
        let mut s = (*first).clone();
        s.repeat = if algebraic { "max" } else { "min" }.to_string();
        s.decision_secs = pick(|r| r.decision_secs);
        s.extraction_secs = pick(|r| r.extraction_secs);
        s.peak_words = mine.iter().map(|r| r.peak_words).max().unwrap_or(0);
        s.peak_bytes = mine.iter().map(|r| r.peak_bytes).max().unwrap_or(0);
        // a summary is only as good as its worst repeat
        s.verdict = mine.iter().map(|r| r.verdict.clone()).find(|v| v == "timeout" || v == "over-bound" || v == "NO").unwrap_or(s.verdict);
        rows.push(s);
    }
    Ok(rows)
}

/// Instance shape for `value` of the swept parameter.
pub fn point_for(suite: Suite, value: u64, base: &BenchPoint) -> BenchPoint {
    let v = value as usize;
    match suite {
        Suite::Edges | Suite::Memory => BenchPoint { n: (2 * v / base.d.max(1)).max(base.k), ..*base },
        Suite::K => BenchPoint { k: v, ..*base },
        Suite::Timestamps => BenchPoint { t: value as Timestamp, ..*base },
        Suite::Degree => BenchPoint { d: v, ..*base },
        // colors in 1..=k, query {1..k}, ten planted matches
        Suite::Baseline => BenchPoint {
            n: (2 * v / base.d.max(1)).max(base.k),
            family: match base.family {
                GraphFamily::Regular => GraphFamily::PowerLaw { alpha: -1.0, w: 100 },
                f => f,
            },
            colors: base.k as Color,
            colorful: true,
            planted: base.planted.max(10),
            ..*base
        },
    }
}

/// Default base shape: `d = 20`, `t = 100`, `k = 5`, `n = 1000`.
pub fn default_base() -> BenchPoint {
    BenchPoint::regular(1_000, 20, 100, 5)
}

pub fn run_suite(suite: Suite, sizes: &[u64], base: &BenchPoint, cfg: &BenchConfig) -> Result<Vec<BenchRow>, BenchError> {
    let mut rows = Vec::new();
    for &v in sizes {
        rows.extend(run_point(suite, &point_for(suite, v, base), cfg)?);
    }
    Ok(rows)
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Least-squares slope of `ys` against `xs`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let cov: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}
