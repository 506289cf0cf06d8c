//! Temporal graph data model, ingestion and normalization.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::query::{EdgeModel, MotifQuery};

/// Vertex colors are positive integers.
pub type Color = u32;
/// Normalized timestamps start at 1.
pub type Timestamp = u32;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: negative timestamp {value}")]
    NegativeTimestamp { line: usize, value: String },
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {index} has timestamp 0; timestamps start at 1")]
    ZeroTimestamp { index: usize },
    #[error("transition times must be >= 1 (edge {index})")]
    BadTransition { index: usize },
    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TemporalEdge {
    pub u: usize,
    pub v: usize,
    pub ts: Timestamp,
}

impl TemporalEdge {
    pub fn new(u: usize, v: usize, ts: Timestamp) -> Self {
        TemporalEdge { u, v, ts }
    }
}

/// One traversal direction of an edge: `from -> to` at `ts`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Hop {
    pub from: usize,
    pub to: usize,
    pub ts: Timestamp,
    pub edge: usize,
}

/// Compressed adjacency: `items[offsets[i]..offsets[i + 1]]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Csr {
    offsets: Vec<usize>,
    items: Vec<Hop>,
}

impl Csr {
    fn build(buckets: usize, mut hops: Vec<Hop>, key: impl Fn(&Hop) -> usize, order: impl Fn(&Hop) -> (usize, usize, usize)) -> Csr {
        hops.sort_by_key(|h| (key(h), order(h)));
        let mut offsets = vec![0usize; buckets + 1];
        for h in &hops {
            offsets[key(h) + 1] += 1;
        }
        for i in 0..buckets {
            offsets[i + 1] += offsets[i];
        }
        Csr { offsets, items: hops }
    }

    fn slice(&self, i: usize) -> &[Hop] {
        &self.items[self.offsets[i]..self.offsets[i + 1]]
    }
}

/// An immutable temporal graph `G = (V, E)` with per-timestamp adjacency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemporalGraph {
    n: usize,
    t: Timestamp,
    directed: bool,
    edges: Vec<TemporalEdge>,
    transition: Option<Vec<u32>>,
    delay: Option<Vec<u32>>,
    /// Hops grouped by timestamp, then by arrival vertex.
    by_time: Csr,
    /// Hops grouped by departure vertex, ordered by `(ts, to)`.
    outgoing: Csr,
    /// Hops grouped by arrival vertex, ordered by `(ts, from)`.
    incoming: Csr,
    self_loops_dropped: usize,
    duplicates_dropped: usize,
}

impl TemporalGraph {
    /// Builds a graph; self-loops and exact duplicates are dropped and counted.
    pub fn new(n: usize, directed: bool, edges: Vec<TemporalEdge>) -> Result<Self, GraphError> {
        Self::with_transitions(n, directed, edges, None)
    }

    /// Like [`TemporalGraph::new`] with a per-edge transition time.
    pub fn with_transitions(
        n: usize,
        directed: bool,
        edges: Vec<TemporalEdge>,
        transition: Option<Vec<u32>>,
    ) -> Result<Self, GraphError> {
        let mut seen = HashSet::with_capacity(edges.len());
        let mut kept = Vec::with_capacity(edges.len());
        let mut kept_eps = transition.as_ref().map(|_| Vec::with_capacity(edges.len()));
        let (mut loops, mut dups) = (0, 0);
        for (i, e) in edges.iter().enumerate() {
            for x in [e.u, e.v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if e.ts == 0 {
                return Err(GraphError::ZeroTimestamp { index: i });
            }
            if e.u == e.v {
                loops += 1;
                continue;
            }
            let key = if directed || e.u < e.v { (e.u, e.v, e.ts) } else { (e.v, e.u, e.ts) };
            if !seen.insert(key) {
                dups += 1;
                continue;
            }
            kept.push(*e);
            if let (Some(out), Some(eps)) = (kept_eps.as_mut(), transition.as_ref()) {
                let eps = eps.get(i).copied().unwrap_or(1);
                if eps == 0 {
                    return Err(GraphError::BadTransition { index: i });
                }
                out.push(eps);
            }
        }
        let t = kept.iter().map(|e| e.ts).max().unwrap_or(0);
        let mut g = TemporalGraph {
            n,
            t,
            directed,
            edges: kept,
            transition: kept_eps,
            delay: None,
            by_time: Csr::default(),
            outgoing: Csr::default(),
            incoming: Csr::default(),
            self_loops_dropped: loops,
            duplicates_dropped: dups,
        };
        g.index();
        Ok(g)
    }

    fn index(&mut self) {
        let mut hops = Vec::with_capacity(self.edges.len() * if self.directed { 1 } else { 2 });
        for (i, e) in self.edges.iter().enumerate() {
            hops.push(Hop { from: e.u, to: e.v, ts: e.ts, edge: i });
            if !self.directed {
                hops.push(Hop { from: e.v, to: e.u, ts: e.ts, edge: i });
            }
        }
        let t = self.t as usize;
        self.by_time = Csr::build(t + 1, hops.clone(), |h| h.ts as usize, |h| (h.to, h.from, h.edge));
        self.outgoing = Csr::build(self.n, hops.clone(), |h| h.from, |h| (h.ts as usize, h.to, h.edge));
        self.incoming = Csr::build(self.n, hops, |h| h.to, |h| (h.ts as usize, h.from, h.edge));
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Largest timestamp present (0 for an edgeless graph).
    pub fn t(&self) -> Timestamp {
        self.t
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    pub fn self_loops_dropped(&self) -> usize {
        self.self_loops_dropped
    }

    pub fn duplicates_dropped(&self) -> usize {
        self.duplicates_dropped
    }

    /// All hops at timestamp `ts`, grouped by arrival vertex.
    pub fn hops_at(&self, ts: Timestamp) -> &[Hop] {
        if ts == 0 || ts > self.t {
            return &[];
        }
        self.by_time.slice(ts as usize)
    }

    /// `N_ts(u)`: vertices with a hop into `u` at `ts`.
    pub fn neighbors_at(&self, u: usize, ts: Timestamp) -> impl Iterator<Item = usize> + '_ {
        let hops = self.hops_at(ts);
        let lo = hops.partition_point(|h| h.to < u);
        let hi = hops.partition_point(|h| h.to <= u);
        hops[lo..hi].iter().map(|h| h.from)
    }

    /// Hops leaving `u`, ascending by `(ts, to)`.
    pub fn outgoing(&self, u: usize) -> &[Hop] {
        self.outgoing.slice(u)
    }

    /// Hops entering `u`, ascending by `(ts, from)`.
    pub fn incoming(&self, u: usize) -> &[Hop] {
        self.incoming.slice(u)
    }

    /// Maximum number of hops at any vertex (the temporal degree).
    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|u| self.outgoing(u).len().max(self.incoming(u).len())).max().unwrap_or(0)
    }

    pub fn timestamps_present(&self) -> impl Iterator<Item = Timestamp> + '_ {
        (1..=self.t).filter(|&i| !self.hops_at(i).is_empty())
    }

    /// Transition time of edge `e` (1 when none were loaded).
    pub fn transition(&self, e: usize) -> u32 {
        self.transition.as_ref().map_or(1, |v| v[e])
    }

    pub fn has_transitions(&self) -> bool {
        self.transition.is_some()
    }

    /// Minimum dwell time at `v` (1 when none were set).
    pub fn delay(&self, v: usize) -> u32 {
        self.delay.as_ref().map_or(1, |d| d[v])
    }

    pub fn has_delays(&self) -> bool {
        self.delay.is_some()
    }

    pub fn set_delays(&mut self, delays: Vec<u32>) -> Result<(), GraphError> {
        if delays.len() != self.n {
            return Err(GraphError::VertexOutOfRange { vertex: delays.len(), n: self.n });
        }
        self.delay = Some(delays);
        Ok(())
    }

    pub fn set_transitions(&mut self, eps: Vec<u32>) -> Result<(), GraphError> {
        if let Some(i) = eps.iter().position(|&e| e == 0) {
            return Err(GraphError::BadTransition { index: i });
        }
        if eps.len() != self.m() {
            return Err(GraphError::BadTransition { index: eps.len() });
        }
        self.transition = Some(eps);
        Ok(())
    }

    /// Induced subgraph on `keep` with timestamps `<= max_ts`. Vertex ids are
    /// preserved; edge ids are renumbered in their original order.
    pub fn restrict_to(&self, keep: &[bool], max_ts: Timestamp) -> TemporalGraph {
        assert_eq!(keep.len(), self.n, "keep mask must cover every vertex");
        let mut edges = Vec::new();
        let mut eps = self.transition.as_ref().map(|_| Vec::new());
        for (i, e) in self.edges.iter().enumerate() {
            if e.ts <= max_ts && keep[e.u] && keep[e.v] {
                edges.push(*e);
                if let Some(out) = eps.as_mut() {
                    out.push(self.transition(i));
                }
            }
        }
        let mut g = TemporalGraph {
            n: self.n,
            t: max_ts.min(self.t),
            directed: self.directed,
            edges,
            transition: eps,
            delay: self.delay.clone(),
            by_time: Csr::default(),
            outgoing: Csr::default(),
            incoming: Csr::default(),
            self_loops_dropped: 0,
            duplicates_dropped: 0,
        };
        g.index();
        g
    }

    /// Induced subgraph on the listed vertices, relabelled densely in the
    /// given order. Returns the graph and the new-to-old vertex map.
    pub fn compact(&self, vertices: &[usize]) -> (TemporalGraph, Vec<usize>) {
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            new_id[v] = i;
        }
        let mut edges = Vec::new();
        let mut eps = self.transition.as_ref().map(|_| Vec::new());
        for (i, e) in self.edges.iter().enumerate() {
            let (a, b) = (new_id[e.u], new_id[e.v]);
            if a != usize::MAX && b != usize::MAX {
                edges.push(TemporalEdge::new(a, b, e.ts));
                if let Some(out) = eps.as_mut() {
                    out.push(self.transition(i));
                }
            }
        }
        let mut g = TemporalGraph {
            n: vertices.len(),
            t: self.t,
            directed: self.directed,
            edges,
            transition: eps,
            delay: self.delay.as_ref().map(|d| vertices.iter().map(|&v| d[v]).collect()),
            by_time: Csr::default(),
            outgoing: Csr::default(),
            incoming: Csr::default(),
            self_loops_dropped: 0,
            duplicates_dropped: 0,
        };
        g.index();
        (g, vertices.to_vec())
    }

    /// Timestamp-free projection with deduplicated vertex pairs.
    pub fn project_static(&self) -> StaticProjection {
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut edges = Vec::new();
        let mut back = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            let key = if self.directed || e.u < e.v { (e.u, e.v) } else { (e.v, e.u) };
            let id = *index.entry(key).or_insert_with(|| {
                edges.push(key);
                back.push(Vec::new());
                edges.len() - 1
            });
            back[id].push(i);
        }
        StaticProjection::new(self.n, self.directed, edges, back)
    }

    /// Writes `u v ts` lines using dense ids and normalized timestamps.
    pub fn write_edges<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (i, e) in self.edges.iter().enumerate() {
            if self.transition.is_some() {
                writeln!(out, "{} {} {} {}", e.u, e.v, e.ts, self.transition(i))?;
            } else {
                writeln!(out, "{} {} {}", e.u, e.v, e.ts)?;
            }
        }
        Ok(())
    }
}

/// The graph with timestamps discarded: each vertex pair appears at most once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaticProjection {
    n: usize,
    directed: bool,
    edges: Vec<(usize, usize)>,
    back_map: Vec<Vec<usize>>,
    incoming: Vec<Vec<(usize, usize)>>,
    outgoing: Vec<Vec<(usize, usize)>>,
}

impl StaticProjection {
    pub fn new(n: usize, directed: bool, edges: Vec<(usize, usize)>, back_map: Vec<Vec<usize>>) -> Self {
        let mut incoming = vec![Vec::new(); n];
        let mut outgoing = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            incoming[v].push((u, i));
            outgoing[u].push((v, i));
            if !directed {
                incoming[u].push((v, i));
                outgoing[v].push((u, i));
            }
        }
        StaticProjection { n, directed, edges, back_map, incoming, outgoing }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Temporal edge ids summarized by static edge `e`.
    pub fn temporal_edges(&self, e: usize) -> &[usize] {
        &self.back_map[e]
    }

    /// `(neighbor, static edge)` pairs with an edge into `u`.
    pub fn incoming(&self, u: usize) -> &[(usize, usize)] {
        &self.incoming[u]
    }

    /// `(neighbor, static edge)` pairs with an edge out of `u`.
    pub fn outgoing(&self, u: usize) -> &[(usize, usize)] {
        &self.outgoing[u]
    }
}

/// Vertex coloring; a vertex may carry several colors (wildcards).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexColoring {
    colors: Vec<Vec<Color>>,
    q: Color,
}

impl VertexColoring {
    pub fn new(colors: Vec<Color>) -> Self {
        let q = colors.iter().copied().max().unwrap_or(0);
        VertexColoring { colors: colors.into_iter().map(|c| vec![c]).collect(), q }
    }

    pub fn uniform(n: usize) -> Self {
        Self::new(vec![1; n])
    }

    pub fn from_sets(sets: Vec<Vec<Color>>) -> Self {
        let q = sets.iter().flatten().copied().max().unwrap_or(0);
        let colors = sets
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        VertexColoring { colors, q }
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    /// Largest color value in use.
    pub fn q(&self) -> Color {
        self.q
    }

    pub fn colors(&self, v: usize) -> &[Color] {
        &self.colors[v]
    }

    pub fn has_color(&self, v: usize, c: Color) -> bool {
        self.colors[v].contains(&c)
    }

    /// The first (primary) color of `v`.
    pub fn primary(&self, v: usize) -> Color {
        self.colors[v][0]
    }

    pub fn set_color(&mut self, v: usize, c: Color) {
        self.colors[v] = vec![c];
        self.q = self.q.max(c);
    }

    pub fn set_colors(&mut self, v: usize, mut colors: Vec<Color>) {
        colors.sort_unstable();
        colors.dedup();
        if let Some(&c) = colors.last() {
            self.q = self.q.max(c);
        }
        self.colors[v] = colors;
    }

    /// Adds `c` to every vertex's color set.
    pub fn with_extra_color(&self, c: Color) -> Self {
        let sets = self
            .colors
            .iter()
            .map(|s| {
                let mut s = s.clone();
                s.push(c);
                s
            })
            .collect();
        Self::from_sets(sets)
    }

    pub fn color_present(&self, c: Color) -> bool {
        self.colors.iter().any(|s| s.contains(&c))
    }

    /// Coloring of the listed vertices, in order.
    pub fn subset(&self, vertices: &[usize]) -> Self {
        VertexColoring {
            colors: vertices.iter().map(|&v| self.colors[v].clone()).collect(),
            q: self.q,
        }
    }

    pub fn write<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (v, s) in self.colors.iter().enumerate() {
            for c in s {
                writeln!(out, "{v} {c}")?;
            }
        }
        Ok(())
    }
}

/// Vertex sequence `v1..vk` plus the hop timestamps between them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TemporalPath {
    pub vertices: Vec<usize>,
    pub edges: Vec<TemporalEdge>,
}

impl TemporalPath {
    pub fn single(v: usize) -> Self {
        TemporalPath { vertices: vec![v], edges: Vec::new() }
    }

    pub fn from_hops(start: usize, hops: &[(usize, Timestamp)]) -> Self {
        let mut vertices = vec![start];
        let mut edges = Vec::new();
        for &(v, ts) in hops {
            edges.push(TemporalEdge::new(*vertices.last().unwrap(), v, ts));
            vertices.push(v);
        }
        TemporalPath { vertices, edges }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn timestamps(&self) -> Vec<Timestamp> {
        self.edges.iter().map(|e| e.ts).collect()
    }

    pub fn max_timestamp(&self) -> Option<Timestamp> {
        self.edges.iter().map(|e| e.ts).max()
    }

    /// Maps vertex ids through `map` (e.g. back from a compacted graph).
    pub fn relabel(&self, map: &[usize]) -> Self {
        TemporalPath {
            vertices: self.vertices.iter().map(|&v| map[v]).collect(),
            edges: self.edges.iter().map(|e| TemporalEdge::new(map[e.u], map[e.v], e.ts)).collect(),
        }
    }
}

/// Outcome of [`validate_path`]; names the first violated clause.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PathVerdict {
    Valid,
    Empty,
    /// `edges.len()` is not `vertices.len() - 1`, or an edge does not join
    /// consecutive vertices.
    Malformed,
    VertexOutOfRange(usize),
    RepeatedVertex(usize),
    EdgeMissing(usize),
    TimestampsNotIncreasing(usize),
    WrongLength { expected: usize, found: usize },
    ColorMismatch,
    TimesMismatch(usize),
    EndpointMismatch,
}

impl PathVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, PathVerdict::Valid)
    }
}

/// Checks a witness against the host graph, the coloring and the query.
pub fn validate_path(g: &TemporalGraph, coloring: &VertexColoring, p: &TemporalPath, query: &MotifQuery) -> PathVerdict {
    validate_path_with(g, coloring, p, query, EdgeModel::Instant)
}

/// [`validate_path`] under an explicit time-respecting rule.
pub fn validate_path_with(
    g: &TemporalGraph,
    coloring: &VertexColoring,
    p: &TemporalPath,
    query: &MotifQuery,
    model: EdgeModel,
) -> PathVerdict {
    if p.vertices.is_empty() {
        return PathVerdict::Empty;
    }
    if p.edges.len() + 1 != p.vertices.len() {
        return PathVerdict::Malformed;
    }
    let mut seen = HashSet::new();
    for &v in &p.vertices {
        if v >= g.n() {
            return PathVerdict::VertexOutOfRange(v);
        }
        if !seen.insert(v) {
            return PathVerdict::RepeatedVertex(v);
        }
    }
    let mut edge_ids = Vec::with_capacity(p.edges.len());
    for (i, e) in p.edges.iter().enumerate() {
        if e.u != p.vertices[i] || e.v != p.vertices[i + 1] {
            return PathVerdict::Malformed;
        }
        match g.outgoing(e.u).iter().find(|h| h.to == e.v && h.ts == e.ts) {
            Some(h) => edge_ids.push(h.edge),
            None => return PathVerdict::EdgeMissing(i),
        }
    }
    if let Some(i) = model.first_violation(g, &p.vertices, &p.edges, &edge_ids) {
        return PathVerdict::TimestampsNotIncreasing(i);
    }
    query.check(coloring, &p.vertices, &p.timestamps())
}

/// Result of parsing a graph file pair.
#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub graph: TemporalGraph,
    pub coloring: VertexColoring,
    pub labels: VertexLabels,
    /// Raw timestamp for each normalized id (index 0 unused).
    pub raw_timestamps: Vec<i64>,
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
}

impl LoadedGraph {
    /// Normalized id of a raw timestamp, if present.
    pub fn normalize_timestamp(&self, raw: i64) -> Option<Timestamp> {
        self.raw_timestamps[1..].binary_search(&raw).ok().map(|i| i as Timestamp + 1)
    }

    pub fn raw_timestamp(&self, ts: Timestamp) -> i64 {
        self.raw_timestamps[ts as usize]
    }
}

/// Stable mapping between input vertex labels and dense ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexLabels {
    names: Vec<String>,
    ids: HashMap<String, usize>,
}

impl VertexLabels {
    pub fn intern(&mut self, label: &str) -> usize {
        if let Some(&id) = self.ids.get(label) {
            return id;
        }
        let id = self.names.len();
        self.names.push(label.to_string());
        self.ids.insert(label.to_string(), id);
        id
    }

    pub fn id(&self, label: &str) -> Option<usize> {
        self.ids.get(label).copied()
    }

    pub fn label(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Identity labels `0..n`.
    pub fn identity(n: usize) -> Self {
        let mut l = VertexLabels::default();
        for i in 0..n {
            l.intern(&i.to_string());
        }
        l
    }
}

fn parse_timestamp(tok: &str, line: usize) -> Result<i64, GraphError> {
    let value = match tok.parse::<i64>() {
        Ok(v) => v,
        Err(_) => match tok.parse::<f64>() {
            Ok(f) if f.is_finite() => f.floor() as i64,
            _ => {
                return Err(GraphError::Malformed { line, message: format!("bad timestamp {tok:?}") });
            }
        },
    };
    if value < 0 {
        return Err(GraphError::NegativeTimestamp { line, value: tok.to_string() });
    }
    Ok(value)
}

fn records<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, Vec<String>), GraphError>> {
    reader.lines().enumerate().filter_map(|(i, line)| {
        let line = match line {
            Ok(l) => l,
            Err(e) => return Some(Err(e.into())),
        };
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            return None;
        }
        Some(Ok((i + 1, body.split_whitespace().map(str::to_string).collect())))
    })
}

/// Parses `u v ts [transition]` edge records and optional `u c` color
/// records. Vertex labels are interned densely in order of first appearance;
/// raw timestamps are replaced by their dense rank starting at 1. Vertices
/// missing from the color records get color 1.
pub fn load_graph<E: BufRead, C: BufRead>(edges: E, colors: Option<C>, directed: bool) -> Result<LoadedGraph, GraphError> {
    let mut labels = VertexLabels::default();
    let mut raw_edges = Vec::new();
    let mut raw_eps = Vec::new();
    let mut any_eps = false;
    for rec in records(edges) {
        let (line, toks) = rec?;
        if toks.len() < 3 || toks.len() > 4 {
            return Err(GraphError::Malformed { line, message: format!("expected `u v ts [transition]`, got {} fields", toks.len()) });
        }
        let u = labels.intern(&toks[0]);
        let v = labels.intern(&toks[1]);
        let ts = parse_timestamp(&toks[2], line)?;
        let eps = match toks.get(3) {
            Some(tok) => {
                any_eps = true;
                match tok.parse::<u32>() {
                    Ok(e) if e >= 1 => e,
                    _ => return Err(GraphError::Malformed { line, message: format!("bad transition time {tok:?}") }),
                }
            }
            None => 1,
        };
        raw_edges.push((u, v, ts));
        raw_eps.push(eps);
    }
    let mut color_sets: BTreeMap<usize, Vec<Color>> = BTreeMap::new();
    if let Some(colors) = colors {
        for rec in records(colors) {
            let (line, toks) = rec?;
            if toks.len() != 2 {
                return Err(GraphError::Malformed { line, message: format!("expected `u c`, got {} fields", toks.len()) });
            }
            let v = labels.intern(&toks[0]);
            let c = match toks[1].parse::<Color>() {
                Ok(c) if c >= 1 => c,
                _ => return Err(GraphError::Malformed { line, message: format!("bad color {:?}", toks[1]) }),
            };
            color_sets.entry(v).or_default().push(c);
        }
    }
    let mut raw_ts: Vec<i64> = raw_edges.iter().map(|e| e.2).collect();
    raw_ts.sort_unstable();
    raw_ts.dedup();
    let rank = |x: i64| raw_ts.binary_search(&x).unwrap() as Timestamp + 1;
    let n = labels.len();
    let edges: Vec<TemporalEdge> = raw_edges.iter().map(|&(u, v, ts)| TemporalEdge::new(u, v, rank(ts))).collect();
    let graph = TemporalGraph::with_transitions(n, directed, edges, any_eps.then_some(raw_eps))?;
    let sets = (0..n).map(|v| color_sets.remove(&v).unwrap_or_else(|| vec![1])).collect();
    let coloring = VertexColoring::from_sets(sets);
    let mut raw_timestamps = vec![0];
    raw_timestamps.extend(raw_ts);
    Ok(LoadedGraph {
        self_loops_dropped: graph.self_loops_dropped(),
        duplicates_dropped: graph.duplicates_dropped(),
        graph,
        coloring,
        labels,
        raw_timestamps,
    })
}

/// Parses `u delay` records into a per-vertex delay vector (default 1).
pub fn load_delays<R: BufRead>(reader: R, labels: &VertexLabels) -> Result<Vec<u32>, GraphError> {
    let mut delays = vec![1u32; labels.len()];
    for rec in records(reader) {
        let (line, toks) = rec?;
        if toks.len() != 2 {
            return Err(GraphError::Malformed { line, message: "expected `u delay`".into() });
        }
        let v = labels.id(&toks[0]).ok_or_else(|| GraphError::UnknownLabel(toks[0].clone()))?;
        delays[v] = toks[1]
            .parse()
            .map_err(|_| GraphError::Malformed { line, message: format!("bad delay {:?}", toks[1]) })?;
    }
    Ok(delays)
}
