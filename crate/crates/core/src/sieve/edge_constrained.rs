use rayon::prelude::*;

use crate::gf::{BinaryField, Role, SeededStream};
use crate::graph::{TemporalGraph, Timestamp, VertexColoring};

use super::{with_field, CertainNo, LaneBlock, SieveConfig, SieveError, SieveOutcome, ShadeAssignment};

/// Edge-constrained polynomial `P_{u,1} = x_u`,
/// `P_{u,l} = x_u sum_{(u,v,j_{l-1})} y_{e,l-1} P_{v,l-1}`: step `l` only
/// touches edges at the prescribed timestamp `times[l - 2]`. Working state
/// is two `n W` buffers.
pub fn eval_edge_constrained_sieve(
    g: &TemporalGraph,
    coloring: &VertexColoring,
    times: &[Timestamp],
    shades: &ShadeAssignment,
    config: &SieveConfig,
) -> Result<SieveOutcome, SieveError> {
    let k = shades.k();
    if times.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SieveError::TimesNotIncreasing);
    }
    if times.len() + 1 != k {
        return Err(SieveError::BadK(k));
    }
    if k > g.n() {
        return Err(SieveError::CertainNo(CertainNo::TooFewVertices { k, n: g.n() }));
    }
    if let Some(&j) = times.iter().find(|&&j| g.hops_at(j).is_empty()) {
        return Err(SieveError::CertainNo(CertainNo::AbsentTimestamp(j)));
    }
    let lanes = config.lane_width(k)?;
    let (n, w) = (g.n() as u64, lanes as u64);
    let peak = 3 * n * w + n * k as u64 + n;
    config.check_memory(peak)?;
    config.install(|| {
        with_field!(config.width, F => {
            let acc = evaluate::<F>(g, coloring, times, shades, lanes);
            SieveOutcome::from_accumulators(acc, k, config.localize, peak)
        })
    })
}

fn evaluate<F: BinaryField>(g: &TemporalGraph, coloring: &VertexColoring, times: &[Timestamp], shades: &ShadeAssignment, lanes: usize) -> Vec<F> {
    let (n, k) = (g.n(), shades.k());
    let stream = SeededStream::new(shades.seed());
    let z = shades.z_table::<F>(coloring);
    let mut acc = vec![F::ZERO; n];
    let mut prev = vec![F::ZERO; n * lanes];
    let mut cur = vec![F::ZERO; n * lanes];
    for block in 0..LaneBlock::<F>::blocks(k, lanes) {
        let lb = LaneBlock::build(&z, k, lanes, block);
        prev.copy_from_slice(&lb.x);
        for level in 2..=k {
            let hops = g.hops_at(times[level - 2]);
            let prev_ref = &prev;
            cur.par_chunks_mut(lanes).enumerate().for_each(|(u, o)| {
                o.fill(F::ZERO);
                let lo = hops.partition_point(|h| h.to < u);
                let hi = hops.partition_point(|h| h.to <= u);
                if lo == hi {
                    return;
                }
                for h in &hops[lo..hi] {
                    let yv: F = stream.nonzero(Role::Edge, h.edge as u64, level as u64 - 1);
                    for (s, &p) in o.iter_mut().zip(&prev_ref[h.from * lanes..(h.from + 1) * lanes]) {
                        *s += yv * p;
                    }
                }
                for (s, &xv) in o.iter_mut().zip(lb.vertex(u)) {
                    *s *= xv;
                }
            });
            std::mem::swap(&mut prev, &mut cur);
        }
        for (u, a) in acc.iter_mut().enumerate() {
            for &p in &prev[u * lanes..(u + 1) * lanes] {
                *a += p;
            }
        }
    }
    acc
}
