//! Command-line surface behind the `tempmotif` binary.
//!
//! Exit status: 0 YES, 1 NO, 2 usage or input error, 3 budget or
//! extraction failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bench::{self, BenchConfig, BenchPoint, GraphFamily, Suite};
use crate::gen::{generate, plant_matches, write_witnesses, GeneratorSpec};
use crate::gf::FieldWidth;
use crate::graph::{load_delays, load_graph, validate_path_with, Color, LoadedGraph, TemporalEdge, TemporalPath};
use crate::query::{parse_list, EdgeModel, MotifQuery, Multiset, Problem};
use crate::report::{Decision, SolveReport};
use crate::sieve::{CertainNo, SieveConfig};
use crate::solvers::{solve, witness_query, Extraction, Preprocess, SolveError, SolverConfig, Task};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "tempmotif", version, about = "Color-constrained temporal path detection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a matching temporal path exists.
    Decide(RunArgs),
    /// Decide and extract a witness path.
    Extract(RunArgs),
    /// Find the smallest max-timestamp admitting a match, with a witness.
    Optimum(RunArgs),
    /// Generate a random temporal graph with colors and planted matches.
    Gen(GenArgs),
    /// Run a scaling suite and print CSV.
    Bench(BenchArgs),
    /// Check a witness against a graph and query.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Instant,
    Transition,
    Delay,
    TransitionDelay,
}

impl From<ModelArg> for EdgeModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Instant => EdgeModel::Instant,
            ModelArg::Transition => EdgeModel::TransitionOnly,
            ModelArg::Delay => EdgeModel::DelayOnly,
            ModelArg::TransitionDelay => EdgeModel::TransitionDelay,
        }
    }
}

/// Graph input and query flags.
#[derive(Args, Debug, Clone)]
struct InstanceArgs {
    #[arg(long, value_parser = parse_problem)]
    problem: Problem,
    /// Edge records `u v ts [transition]`.
    #[arg(long)]
    graph: PathBuf,
    /// Color records `u c`; missing vertices get color 1.
    #[arg(long)]
    colors: Option<PathBuf>,
    /// Treat edges as arcs `u -> v`.
    #[arg(long)]
    directed: bool,
    /// Color multiset, e.g. "1,1,2,3".
    #[arg(long)]
    motif: Option<String>,
    /// Color per position (vertex-ordered problems).
    #[arg(long)]
    order: Option<String>,
    /// Raw hop timestamps (edge-constrained problems).
    #[arg(long)]
    times: Option<String>,
    /// Path size, or interior size for sd-colorfulpath.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: Option<u64>,
    /// Source vertex label (sd-colorfulpath).
    #[arg(long)]
    source: Option<String>,
    /// Destination vertex label (sd-colorfulpath).
    #[arg(long)]
    dest: Option<String>,
    /// Per-vertex delays `u delay`.
    #[arg(long)]
    delays: Option<PathBuf>,
    /// Defaults to the richest model the inputs support.
    #[arg(long, value_enum)]
    edge_model: Option<ModelArg>,
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 64, value_parser = parse_bits)]
    field_bits: u32,
    /// Subsets evaluated together; a power of two.
    #[arg(long, default_value_t = 8)]
    lanes: usize,
    /// Worker count; 0 uses every core.
    #[arg(long, env = "TEMPMOTIF_THREADS", default_value_t = 0)]
    threads: usize,
    #[arg(long, default_value = "both", value_parser = parse_preprocess)]
    preprocess: Preprocess,
    #[arg(long, default_value = "localized", value_parser = parse_extraction)]
    extraction: Extraction,
    /// Largest pattern size tried with wildcard vertices.
    #[arg(long)]
    wildcards_max: Option<usize>,
    /// Refuse sieve runs needing more field words than this.
    #[arg(long)]
    memory_cap_words: Option<u64>,
    /// Decide from the summed accumulator instead of per-vertex flags.
    #[arg(long)]
    global_decision: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug, Clone)]
struct GenArgs {
    #[arg(long, value_enum, default_value_t = FamilyArg::Regular)]
    family: FamilyArg,
    #[arg(long)]
    n: usize,
    /// Degree (regular) or mean degree (power law).
    #[arg(long, visible_alias = "D")]
    d: usize,
    /// Support points of the power-law degree distribution.
    #[arg(long, default_value_t = 20)]
    w: usize,
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long)]
    t: u32,
    /// Colors are uniform in `1..=colors-range`.
    #[arg(long, default_value_t = 1)]
    colors_range: Color,
    #[arg(long, default_value_t = 0)]
    plant: usize,
    /// Color multiset of planted paths.
    #[arg(long)]
    plant_motif: Option<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    directed: bool,
    /// Writes PREFIX.edges, PREFIX.colors and PREFIX.planted.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Regular,
    Powerlaw,
}

#[derive(Args, Debug, Clone)]
struct BenchArgs {
    #[arg(long, value_parser = parse_suite)]
    suite: Suite,
    /// Swept values: edge counts, k, t or degree depending on the suite.
    #[arg(long)]
    sizes: Option<String>,
    #[arg(long, value_enum, default_value_t = FamilyArg::Regular)]
    family: FamilyArg,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 20)]
    d: usize,
    #[arg(long, default_value_t = 100)]
    t: u32,
    #[arg(long, default_value_t = 5)]
    k: usize,
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, default_value_t = 8)]
    colors_range: Color,
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Also time exhaustive search and random walks.
    #[arg(long)]
    baselines: bool,
    /// Time optimum extraction instead of any-witness extraction.
    #[arg(long)]
    optimum: bool,
    /// Wall-clock cap per baseline run, in seconds.
    #[arg(long, default_value_t = 60)]
    baseline_secs: u64,
    #[arg(long, default_value_t = 64, value_parser = parse_bits)]
    field_bits: u32,
    #[arg(long, default_value_t = 8)]
    lanes: usize,
    #[arg(long, env = "TEMPMOTIF_THREADS", default_value_t = 0)]
    threads: usize,
    #[arg(long, default_value = "both", value_parser = parse_preprocess)]
    preprocess: Preprocess,
}

#[derive(Args, Debug, Clone)]
struct VerifyArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// JSON run record from `extract`/`optimum`, or a bare `[[u, v, ts], ...]` array.
    #[arg(long)]
    witness: PathBuf,
}

fn parse_problem(s: &str) -> Result<Problem, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = Problem::ALL.iter().map(|p| p.name()).collect();
        format!("unknown problem `{s}` (one of {})", names.join(", "))
    })
}

fn parse_bits(s: &str) -> Result<u32, String> {
    let b: u32 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    FieldWidth::from_bits(b).map(|_| b).ok_or_else(|| format!("field width must be 8, 16, 32 or 64, got {b}"))
}

fn parse_preprocess(s: &str) -> Result<Preprocess, String> {
    s.parse()
}

fn parse_extraction(s: &str) -> Result<Extraction, String> {
    s.parse()
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

/// Failure carrying its exit status.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

fn open(path: &Path, flag: &str) -> Result<BufReader<File>, Failure> {
    File::open(path).map(BufReader::new).map_err(|e| usage(format!("{flag} {}: {e}", path.display())))
}

/// A loaded instance ready for the solvers.
struct Loaded {
    input: LoadedGraph,
    query: MotifQuery,
    model: EdgeModel,
    /// Set when a prescribed timestamp has no edge at all.
    absent: Option<i64>,
}

fn colors_flag(flag: &str, value: &Option<String>) -> Result<Vec<Color>, Failure> {
    let s = value.as_ref().ok_or_else(|| usage(format!("{flag} is required for this problem")))?;
    let list: Vec<Color> = parse_list(s).map_err(|e| usage(format!("{flag}: {e}")))?;
    if list.is_empty() {
        return Err(usage(format!("{flag} is empty")));
    }
    if list.contains(&0) {
        return Err(usage(format!("{flag}: colors start at 1")));
    }
    Ok(list)
}

fn load(args: &InstanceArgs) -> Result<Loaded, Failure> {
    let edges = open(&args.graph, "--graph")?;
    let colors = args.colors.as_ref().map(|p| open(p, "--colors")).transpose()?;
    let mut input = load_graph(edges, colors, args.directed).map_err(|e| usage(format!("--graph/--colors: {e}")))?;
    let mut model = EdgeModel::Instant;
    if input.graph.has_transitions() {
        model = EdgeModel::TransitionOnly;
    }
    if let Some(path) = &args.delays {
        let delays = load_delays(open(path, "--delays")?, &input.labels).map_err(|e| usage(format!("--delays: {e}")))?;
        input.graph.set_delays(delays).map_err(|e| usage(format!("--delays: {e}")))?;
        model = if model.uses_transition() { EdgeModel::TransitionDelay } else { EdgeModel::DelayOnly };
    }
    if let Some(m) = args.edge_model {
        model = m.into();
    }
    let k = |flag: &str| args.k.map(|k| k as usize).ok_or_else(|| usage(format!("{flag} is required for this problem")));
    let mut absent = None;
    let mut times = || -> Result<Vec<u32>, Failure> {
        let s = args.times.as_ref().ok_or_else(|| usage("--times is required for this problem"))?;
        let raw: Vec<i64> = parse_list(s).map_err(|e| usage(format!("--times: {e}")))?;
        if raw.windows(2).any(|w| w[0] >= w[1]) {
            return Err(usage("--times must be strictly increasing"));
        }
        Ok(raw
            .iter()
            .map(|&r| {
                input.normalize_timestamp(r).unwrap_or_else(|| {
                    absent.get_or_insert(r);
                    0
                })
            })
            .collect())
    };
    let query = match args.problem {
        Problem::KTempPath | Problem::RainbowPath => MotifQuery::Size(k("--k")?),
        Problem::PathMotif | Problem::ColorfulPath => MotifQuery::Multiset(Multiset::from_colors(&colors_flag("--motif", &args.motif)?)),
        Problem::EcTempPath => MotifQuery::Timed(times()?),
        Problem::EcPathMotif => {
            let t = times()?;
            MotifQuery::TimedMultiset { times: t, multiset: Multiset::from_colors(&colors_flag("--motif", &args.motif)?) }
        }
        Problem::VcPathMotif | Problem::VcColorfulPath => MotifQuery::Ordered(colors_flag("--order", &args.order)?),
        Problem::SdColorfulPath => {
            let label = |flag: &str, v: &Option<String>| -> Result<usize, Failure> {
                let l = v.as_ref().ok_or_else(|| usage(format!("{flag} is required for sd-colorfulpath")))?;
                input.labels.id(l).ok_or_else(|| usage(format!("{flag}: unknown vertex `{l}`")))
            };
            MotifQuery::Endpoints { source: label("--source", &args.source)?, dest: label("--dest", &args.dest)?, k: k("--k")? }
        }
    };
    if absent.is_none() {
        args.problem.accepts(&query).map_err(|e| usage(format!("query: {e}")))?;
    }
    Ok(Loaded { input, query, model, absent })
}

/// One run, as printed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: Vec<String>,
    pub problem: String,
    pub graph: GraphStats,
    pub config: RunConfig,
    pub decision: Decision,
    /// Raw timestamp.
    pub optimum_ts: Option<i64>,
    /// Hops `[u, v, ts]` with input labels and raw timestamps.
    pub witness: Option<Vec<(String, String, i64)>>,
    pub flagged: Vec<String>,
    pub timings: RunTimings,
    pub memory: Memory,
    pub fn_bound: f64,
    pub oracle_calls: u64,
    pub checksum: String,
    pub certain_no: Option<String>,
    pub rainbow_subset: Option<Vec<Color>>,
    pub wildcards: Option<usize>,
    pub reduced_n: Option<usize>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub t: u32,
    pub directed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub field_bits: u32,
    pub lanes: usize,
    pub threads: usize,
    pub preprocess: Preprocess,
    pub extraction: Extraction,
    pub edge_model: EdgeModel,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunTimings {
    pub preprocess: f64,
    pub sieve: f64,
    pub extraction: f64,
    pub total: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Memory {
    pub peak_words: u64,
    pub peak_bytes: u64,
}

fn record(command: &[String], args: &RunArgs, loaded: &Loaded, report: &SolveReport, total: f64) -> RunRecord {
    let input = &loaded.input;
    let label = |v: usize| input.labels.label(v).to_string();
    let g = &input.graph;
    RunRecord {
        command: command.to_vec(),
        problem: args.instance.problem.name().to_string(),
        graph: GraphStats { n: g.n(), m: g.m(), t: g.t(), directed: g.is_directed() },
        config: RunConfig {
            seed: args.seed,
            field_bits: args.field_bits,
            lanes: args.lanes,
            threads: args.threads,
            preprocess: args.preprocess,
            extraction: args.extraction,
            edge_model: loaded.model,
        },
        decision: report.decision,
        optimum_ts: report.optimum_ts.filter(|&t| (t as usize) < input.raw_timestamps.len()).map(|t| input.raw_timestamp(t)),
        witness: report
            .witness
            .as_ref()
            .map(|w| w.edges.iter().map(|e| (label(e.u), label(e.v), input.raw_timestamp(e.ts))).collect()),
        flagged: report.flagged.iter().map(|&v| label(v)).collect(),
        timings: RunTimings {
            preprocess: report.timings.preprocess,
            sieve: report.timings.sieve,
            extraction: report.timings.extraction,
            total,
        },
        memory: Memory { peak_words: report.peak_words, peak_bytes: report.peak_words * args.field_bits as u64 / 8 },
        fn_bound: report.fn_bound,
        oracle_calls: report.oracle_calls,
        checksum: format!("{:016x}", report.checksum),
        certain_no: report.certain_no.as_ref().map(|c| c.to_string()),
        rainbow_subset: report.rainbow_subset.clone(),
        wildcards: report.wildcards,
        reduced_n: report.reduced_n,
        error: None,
    }
}

fn print_record(rec: &RunRecord, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(rec).expect("records serialize")),
        Format::Text => {
            writeln!(out, "decision: {}", rec.decision)?;
            writeln!(out, "problem: {}", rec.problem)?;
            writeln!(out, "graph: n={} m={} t={}", rec.graph.n, rec.graph.m, rec.graph.t)?;
            if let Some(t) = rec.optimum_ts {
                writeln!(out, "optimum_ts: {t}")?;
            }
            if let Some(w) = &rec.witness {
                let hops: Vec<String> = w.iter().map(|(u, v, t)| format!("{u}->{v}@{t}")).collect();
                writeln!(out, "witness: {}", hops.join(" "))?;
            }
            if !rec.flagged.is_empty() {
                writeln!(out, "flagged: {}", rec.flagged.join(" "))?;
            }
            if let Some(c) = &rec.certain_no {
                writeln!(out, "certain_no: {c}")?;
            }
            if let Some(s) = &rec.rainbow_subset {
                writeln!(out, "rainbow_subset: {s:?}")?;
            }
            if let Some(w) = rec.wildcards {
                writeln!(out, "wildcards: {w}")?;
            }
            if let Some(e) = &rec.error {
                writeln!(out, "error: {e}")?;
            }
            writeln!(
                out,
                "timings: preprocess={:.6}s sieve={:.6}s extraction={:.6}s total={:.6}s",
                rec.timings.preprocess, rec.timings.sieve, rec.timings.extraction, rec.timings.total
            )?;
            writeln!(out, "memory: {} words ({} bytes)", rec.memory.peak_words, rec.memory.peak_bytes)?;
            writeln!(out, "oracle_calls: {} fn_bound: {:.3e} checksum: {}", rec.oracle_calls, rec.fn_bound, rec.checksum)
        }
    }
}

fn solver_config(args: &RunArgs, model: EdgeModel) -> SolverConfig {
    SolverConfig {
        sieve: SieveConfig {
            seed: args.seed,
            width: FieldWidth::from_bits(args.field_bits).expect("validated by the parser"),
            lanes: args.lanes,
            threads: args.threads,
            localize: !args.global_decision,
            edge_model: model,
            memory_cap_words: args.memory_cap_words,
        },
        preprocess: args.preprocess,
        extraction: args.extraction,
        wildcards_max: args.wildcards_max,
    }
}

fn cmd_run(command: &[String], args: &RunArgs, task: Task, out: &mut dyn Write) -> Result<i32, Failure> {
    let started = Instant::now();
    let loaded = load(&args.instance)?;
    if !args.lanes.is_power_of_two() {
        return Err(usage(format!("--lanes must be a power of two, got {}", args.lanes)));
    }
    let cfg = solver_config(args, loaded.model);
    let report = match loaded.absent {
        Some(_) => Ok(SolveReport::certain_no(CertainNo::AbsentTimestamp(0))),
        None => solve(args.instance.problem, &loaded.input.graph, &loaded.input.coloring, &loaded.query, task, &cfg),
    };
    let (report, error, code) = match report {
        Ok(r) => {
            let code = match r.decision {
                Decision::Yes => EXIT_YES,
                Decision::No => EXIT_NO,
                Decision::Inconclusive => EXIT_FAILURE,
            };
            (r, None, code)
        }
        Err(SolveError::ExtractionFailed) => {
            (SolveReport::new(Decision::Yes), Some(SolveError::ExtractionFailed.to_string()), EXIT_FAILURE)
        }
        Err(SolveError::Sieve(e @ crate::sieve::SieveError::MemoryCap { .. })) => {
            (SolveReport::new(Decision::Inconclusive), Some(format!("--memory-cap-words: {e}")), EXIT_FAILURE)
        }
        Err(e) => return Err(usage(e.to_string())),
    };
    let mut rec = record(command, args, &loaded, &report, started.elapsed().as_secs_f64());
    if let Some(raw) = loaded.absent {
        rec.certain_no = Some(format!("no edge carries timestamp {raw}"));
    }
    rec.error = error;
    print_record(&rec, args.format, out).map_err(|e| usage(e.to_string()))?;
    Ok(code)
}

fn write_file(path: &Path, f: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> Result<(), Failure> {
    let mut file = std::io::BufWriter::new(File::create(path).map_err(|e| usage(format!("--out {}: {e}", path.display())))?);
    f(&mut file).and_then(|_| file.flush()).map_err(|e| usage(format!("--out {}: {e}", path.display())))
}

fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut spec = match args.family {
        FamilyArg::Regular => GeneratorSpec::regular(args.n, args.d, args.t, args.colors_range, args.seed),
        FamilyArg::Powerlaw => GeneratorSpec::powerlaw(args.n, args.d, args.w, args.alpha, args.t, args.colors_range, args.seed),
    };
    spec.directed = args.directed;
    if args.t == 0 {
        return Err(usage("--t must be at least 1"));
    }
    if args.colors_range == 0 {
        return Err(usage("--colors-range must be at least 1"));
    }
    let generated = generate(&spec).map_err(|e| usage(format!("--family: {e}")))?;
    let (graph, coloring, witnesses) = if args.plant > 0 {
        let motif = colors_flag("--plant-motif", &args.plant_motif)?;
        let query = MotifQuery::Multiset(Multiset::from_colors(&motif));
        let p = plant_matches(&generated.graph, &generated.coloring, &query, args.plant, args.t, args.seed)
            .map_err(|e| usage(format!("--plant: {e}")))?;
        (p.graph, p.coloring, Some(p.witnesses))
    } else {
        (generated.graph, generated.coloring, None)
    };
    write_file(&with_ext(&args.out, "edges"), |w| graph.write_edges(w))?;
    write_file(&with_ext(&args.out, "colors"), |w| coloring.write(w))?;
    if let Some(ws) = &witnesses {
        write_file(&with_ext(&args.out, "planted"), |w| write_witnesses(ws, w))?;
    }
    writeln!(
        out,
        "wrote n={} m={} t={} dropped_pairs={} planted={}",
        graph.n(),
        graph.m(),
        graph.t(),
        generated.dropped_pairs,
        witnesses.map_or(0, |w| w.len())
    )
    .map_err(|e| usage(e.to_string()))?;
    Ok(EXIT_YES)
}

fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if !args.lanes.is_power_of_two() {
        return Err(usage(format!("--lanes must be a power of two, got {}", args.lanes)));
    }
    let sizes: Vec<u64> = match &args.sizes {
        Some(s) => parse_list(s).map_err(|e| usage(format!("--sizes: {e}")))?,
        None => args.suite.default_sizes(),
    };
    let family = match args.family {
        FamilyArg::Regular => GraphFamily::Regular,
        FamilyArg::Powerlaw => GraphFamily::PowerLaw { alpha: args.alpha, w: 20 },
    };
    let base = BenchPoint { family, n: args.n, d: args.d, t: args.t, k: args.k, colors: args.colors_range, colorful: false, planted: 1 };
    let cfg = BenchConfig {
        solver: SolverConfig {
            sieve: SieveConfig {
                seed: args.seed,
                width: FieldWidth::from_bits(args.field_bits).expect("validated by the parser"),
                lanes: args.lanes,
                threads: args.threads,
                ..SieveConfig::default()
            },
            preprocess: args.preprocess,
            ..SolverConfig::default()
        },
        repeats: args.repeats.max(1),
        seed: args.seed,
        baseline_budget: Duration::from_secs(args.baseline_secs),
        baselines: args.baselines,
        optimum: args.optimum,
    };
    let rows = bench::run_suite(args.suite, &sizes, &base, &cfg).map_err(|e| usage(format!("--suite {}: {e}", args.suite.name())))?;
    bench::write_csv(&rows, out).map_err(|e| usage(e.to_string()))?;
    let failed = rows.iter().any(|r| r.verdict == "timeout" && r.solver == "algebraic");
    Ok(if failed { EXIT_FAILURE } else { EXIT_YES })
}

/// Witness file contents: a run record or a bare hop list.
#[derive(Deserialize)]
#[serde(untagged)]
enum WitnessFile {
    Record(Box<RunRecord>),
    Hops(Vec<(String, String, i64)>),
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let loaded = load(&args.instance)?;
    let text = std::fs::read_to_string(&args.witness).map_err(|e| usage(format!("--witness {}: {e}", args.witness.display())))?;
    let parsed: WitnessFile = serde_json::from_str(&text).map_err(|e| usage(format!("--witness: {e}")))?;
    let (hops, subset, wildcards) = match parsed {
        WitnessFile::Record(r) => (r.witness.ok_or_else(|| usage("--witness: the record carries no witness"))?, r.rainbow_subset, r.wildcards),
        WitnessFile::Hops(h) => (h, None, None),
    };
    let input = &loaded.input;
    let id = |l: &str| input.labels.id(l).ok_or_else(|| usage(format!("--witness: unknown vertex `{l}`")));
    let mut edges = Vec::with_capacity(hops.len());
    for (i, (u, v, raw)) in hops.iter().enumerate() {
        let ts = input.normalize_timestamp(*raw).ok_or_else(|| usage(format!("--witness: hop {i} uses timestamp {raw}, which no edge carries")))?;
        edges.push(TemporalEdge::new(id(u)?, id(v)?, ts));
    }
    let path = match edges.first() {
        Some(first) => {
            let mut vertices = vec![first.u];
            vertices.extend(edges.iter().map(|e| e.v));
            TemporalPath { vertices, edges }
        }
        None => return Err(usage("--witness: empty path")),
    };
    let mut shell = SolveReport::new(Decision::Yes);
    shell.rainbow_subset = subset;
    shell.wildcards = wildcards;
    let (coloring, query) = witness_query(args.instance.problem, &input.coloring, &loaded.query, &shell);
    let verdict = validate_path_with(&input.graph, &coloring, &path, &query, loaded.model);
    writeln!(out, "{verdict:?}").map_err(|e| usage(e.to_string()))?;
    Ok(if verdict.is_valid() { EXIT_YES } else { EXIT_NO })
}

/// Parses `args` (program name first), runs the command and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let command: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
        }
    };
    let result = match &cli.command {
        Command::Decide(a) => cmd_run(&command, a, Task::Decide, out),
        Command::Extract(a) => cmd_run(&command, a, Task::Extract, out),
        Command::Optimum(a) => cmd_run(&command, a, Task::Optimum, out),
        Command::Gen(a) => cmd_gen(a, out),
        Command::Bench(a) => cmd_bench(a, out),
        Command::Verify(a) => cmd_verify(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
