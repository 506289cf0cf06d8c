use rayon::prelude::*;

use crate::gf::{BinaryField, Role, SeededStream};
use crate::graph::{Color, TemporalGraph, Timestamp, VertexColoring};
use crate::query::EdgeModel;

use super::{with_field, CertainNo, LaneBlock, SieveConfig, SieveError, SieveOutcome, ShadeAssignment};

/// One term of the neighbor sum: `y_{edge} * P_{src, l-1, src_row}` feeds
/// `P_{dst, l, dst_row}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Arc {
    dst: u32,
    src_row: u32,
    src: u32,
    edge: u32,
}

/// Arcs bucketed by destination row, each bucket sorted by destination.
struct Schedule {
    offsets: Vec<usize>,
    arcs: Vec<Arc>,
}

impl Schedule {
    /// Plain: row `i` reads row `i - 1`. Delay: reads row `i - delay(src)`.
    /// Transition: writes row `i + transition(e)`. Rows outside `0..=max_ts`
    /// contribute nothing.
    fn build(g: &TemporalGraph, max_ts: Timestamp, model: EdgeModel) -> Schedule {
        let mut keyed = Vec::new();
        for ts in 1..=max_ts {
            for h in g.hops_at(ts) {
                let dst_row = model.arrival(g, h.edge, ts);
                let src_row = ts as i64 - if model.uses_delay() { g.delay(h.from) as i64 } else { 1 };
                if dst_row > max_ts as u64 || src_row < 0 {
                    continue;
                }
                let arc = Arc { dst: h.to as u32, src_row: src_row as u32, src: h.from as u32, edge: h.edge as u32 };
                keyed.push((dst_row as u32, arc));
            }
        }
        keyed.sort_unstable();
        let mut offsets = vec![0usize; max_ts as usize + 2];
        for &(row, _) in &keyed {
            offsets[row as usize + 1] += 1;
        }
        for i in 0..=max_ts as usize {
            offsets[i + 1] += offsets[i];
        }
        Schedule { offsets, arcs: keyed.into_iter().map(|(_, a)| a).collect() }
    }

    fn row(&self, i: usize) -> &[Arc] {
        &self.arcs[self.offsets[i]..self.offsets[i + 1]]
    }
}

/// Working-set size of the temporal engine in field words: two layers of
/// `(T + 1) n W`, the lane block, the `z` table, the per-level `y` values and
/// the accumulators.
pub fn temporal_peak_words(n: usize, max_ts: Timestamp, k: usize, m: usize, lanes: usize) -> u64 {
    let (n, t, k, m, w) = (n as u64, max_ts as u64, k as u64, m as u64, lanes as u64);
    2 * (t + 1) * n * w + n * w + n * k + k.saturating_sub(1) * m + n
}

/// Evaluator for the temporal walk polynomial
/// `P_{u,1,i} = x_u`,
/// `P_{u,l,i} = x_u sum_{v in N_i(u)} y_{e,l-1} P_{v,l-1,i-1} + P_{u,l,i-1}`
/// with optional anchoring, per-position color constraints and delay models.
#[derive(Clone, Debug)]
pub struct TemporalSieve<'a> {
    g: &'a TemporalGraph,
    coloring: &'a VertexColoring,
    shades: &'a ShadeAssignment,
    max_ts: Timestamp,
    model: Option<EdgeModel>,
    source: Option<usize>,
    dest: Option<usize>,
    order: Option<&'a [Color]>,
}

impl<'a> TemporalSieve<'a> {
    pub fn new(g: &'a TemporalGraph, coloring: &'a VertexColoring, shades: &'a ShadeAssignment) -> Self {
        TemporalSieve { g, coloring, shades, max_ts: g.t(), model: None, source: None, dest: None, order: None }
    }

    /// Only edges with timestamp (arrival) at most `max_ts` count.
    pub fn max_ts(mut self, max_ts: Timestamp) -> Self {
        self.max_ts = max_ts;
        self
    }

    /// Overrides the configured edge model.
    pub fn model(mut self, model: EdgeModel) -> Self {
        self.model = Some(model);
        self
    }

    /// Walks start at `source` and are read out at `dest` only.
    pub fn anchored(mut self, source: usize, dest: usize) -> Self {
        self.source = Some(source);
        self.dest = Some(dest);
        self
    }

    /// Position `l` may only hold vertices carrying `order[l]`.
    pub fn ordered(mut self, order: &'a [Color]) -> Self {
        self.order = Some(order);
        self
    }

    pub fn peak_words(&self, config: &SieveConfig) -> u64 {
        let k = self.shades.k();
        let w = config.lane_width(k).unwrap_or(1);
        temporal_peak_words(self.g.n(), self.max_ts, k, self.g.m(), w)
    }

    pub fn run(&self, config: &SieveConfig) -> Result<SieveOutcome, SieveError> {
        let k = self.shades.k();
        let n = self.g.n();
        if k > n {
            return Err(SieveError::CertainNo(CertainNo::TooFewVertices { k, n }));
        }
        if self.max_ts > self.g.t() {
            return Err(SieveError::BadMaxTs { max_ts: self.max_ts, t: self.g.t() });
        }
        for v in self.source.iter().chain(self.dest.iter()) {
            if *v >= n {
                return Err(SieveError::BadVertex(*v));
            }
        }
        let lanes = config.lane_width(k)?;
        config.check_memory(temporal_peak_words(n, self.max_ts, k, self.g.m(), lanes))?;
        config.install(|| with_field!(config.width, F => self.evaluate::<F>(config, lanes)))
    }

    fn allowed(&self, level: usize, u: usize) -> bool {
        if level == 1 && self.source.is_some_and(|s| s != u) {
            return false;
        }
        self.order.is_none_or(|o| self.coloring.has_color(u, o[level - 1]))
    }

    fn evaluate<F: BinaryField>(&self, config: &SieveConfig, lanes: usize) -> SieveOutcome {
        let g = self.g;
        let (n, k, m) = (g.n(), self.shades.k(), g.m());
        let rows = self.max_ts as usize + 1;
        let model = self.model.unwrap_or(config.edge_model);
        let schedule = Schedule::build(g, self.max_ts, model);
        let stream = SeededStream::new(self.shades.seed());
        let y: Vec<F> = (0..m * k.saturating_sub(1))
            .into_par_iter()
            .map(|i| stream.nonzero(Role::Edge, (i % m.max(1)) as u64, (i / m.max(1) + 1) as u64))
            .collect();
        let masks: Vec<Vec<bool>> = (1..=k).map(|l| (0..n).map(|u| self.allowed(l, u)).collect()).collect();
        let z = self.shades.z_table::<F>(self.coloring);
        let row_len = n * lanes;
        let mut prev = vec![F::ZERO; rows * row_len];
        let mut cur = vec![F::ZERO; rows * row_len];
        let mut acc = vec![F::ZERO; n];

        for block in 0..LaneBlock::<F>::blocks(k, lanes) {
            let lb = LaneBlock::build(&z, k, lanes, block);
            let mut base = lb.x.clone();
            for (u, &ok) in masks[0].iter().enumerate() {
                if !ok {
                    base[u * lanes..(u + 1) * lanes].fill(F::ZERO);
                }
            }
            prev.par_chunks_mut(row_len).for_each(|row| row.copy_from_slice(&base));

            for level in 2..=k {
                let y_level = &y[(level - 2) * m..(level - 1) * m];
                let mask = &masks[level - 1];
                let prev_ref = &prev;
                let x = &lb.x;
                cur.par_chunks_mut(row_len).enumerate().for_each(|(i, row)| {
                    row.fill(F::ZERO);
                    let arcs = schedule.row(i);
                    let mut sum = vec![F::ZERO; lanes];
                    let mut start = 0;
                    while start < arcs.len() {
                        let dst = arcs[start].dst as usize;
                        let mut end = start;
                        while end < arcs.len() && arcs[end].dst as usize == dst {
                            end += 1;
                        }
                        if mask[dst] {
                            sum.fill(F::ZERO);
                            for a in &arcs[start..end] {
                                let yv = y_level[a.edge as usize];
                                let off = (a.src_row as usize * n + a.src as usize) * lanes;
                                for (s, &p) in sum.iter_mut().zip(&prev_ref[off..off + lanes]) {
                                    *s += yv * p;
                                }
                            }
                            let out = &mut row[dst * lanes..(dst + 1) * lanes];
                            let xd = &x[dst * lanes..(dst + 1) * lanes];
                            for ((o, &s), &xv) in out.iter_mut().zip(&sum).zip(xd) {
                                *o = s * xv;
                            }
                        }
                        start = end;
                    }
                });
                for i in 1..rows {
                    let (done, rest) = cur.split_at_mut(i * row_len);
                    let before = &done[(i - 1) * row_len..];
                    for (c, &b) in rest[..row_len].iter_mut().zip(before) {
                        *c += b;
                    }
                }
                std::mem::swap(&mut prev, &mut cur);
            }

            let last = &prev[(rows - 1) * row_len..];
            for (u, a) in acc.iter_mut().enumerate() {
                if self.dest.is_some_and(|d| d != u) {
                    continue;
                }
                for &p in &last[u * lanes..(u + 1) * lanes] {
                    *a += p;
                }
            }
        }
        SieveOutcome::from_accumulators(acc, k, config.localize, temporal_peak_words(n, self.max_ts, k, m, lanes))
    }
}

/// Temporal sieve under the configured edge model.
pub fn eval_temporal_sieve(
    g: &TemporalGraph,
    coloring: &VertexColoring,
    max_ts: Timestamp,
    shades: &ShadeAssignment,
    config: &SieveConfig,
) -> Result<SieveOutcome, SieveError> {
    TemporalSieve::new(g, coloring, shades).max_ts(max_ts).run(config)
}

/// Temporal sieve under an explicit transition/delay model.
pub fn eval_delay_sieve(
    g: &TemporalGraph,
    coloring: &VertexColoring,
    max_ts: Timestamp,
    shades: &ShadeAssignment,
    model: EdgeModel,
    config: &SieveConfig,
) -> Result<SieveOutcome, SieveError> {
    TemporalSieve::new(g, coloring, shades).max_ts(max_ts).model(model).run(config)
}

/// Plain multilinear sieve with position `l` restricted to color `order[l]`.
pub fn eval_vertex_ordered_sieve(
    g: &TemporalGraph,
    coloring: &VertexColoring,
    order: &[Color],
    max_ts: Timestamp,
    config: &SieveConfig,
) -> Result<SieveOutcome, SieveError> {
    if let Some(&c) = order.iter().find(|&&c| !coloring.color_present(c)) {
        return Err(SieveError::CertainNo(CertainNo::AbsentColor(c)));
    }
    let shades = ShadeAssignment::uniform(order.len(), config.seed);
    TemporalSieve::new(g, coloring, &shades).max_ts(max_ts).ordered(order).run(config)
}
