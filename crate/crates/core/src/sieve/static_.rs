use rayon::prelude::*;

use crate::gf::{BinaryField, Role, SeededStream};
use crate::graph::{StaticProjection, VertexColoring};

use super::{with_field, CertainNo, LaneBlock, SieveConfig, SieveError, SieveOutcome, ShadeAssignment};

/// `out[u] = (x[u] if given) * sum_{(v, e) in adj(u)} y(e) * src[v]`, lane-wise.
pub(super) fn neighbor_step<'a, F: BinaryField>(
    out: &mut [F],
    src: &[F],
    lanes: usize,
    adjacency: impl Fn(usize) -> &'a [(usize, usize)] + Sync,
    y: impl Fn(usize) -> F + Sync,
    x: Option<&[F]>,
) {
    out.par_chunks_mut(lanes).enumerate().for_each(|(u, o)| {
        o.fill(F::ZERO);
        for &(v, e) in adjacency(u) {
            let yv = y(e);
            for (s, &p) in o.iter_mut().zip(&src[v * lanes..(v + 1) * lanes]) {
                *s += yv * p;
            }
        }
        if let Some(x) = x {
            for (s, &xv) in o.iter_mut().zip(&x[u * lanes..(u + 1) * lanes]) {
                *s *= xv;
            }
        }
    });
}

fn check(gs: &StaticProjection, k: usize, config: &SieveConfig) -> Result<usize, SieveError> {
    if k > gs.n() {
        return Err(SieveError::CertainNo(CertainNo::TooFewVertices { k, n: gs.n() }));
    }
    config.lane_width(k)
}

/// Static walk polynomial `P_{u,1} = x_u`,
/// `P_{u,l} = x_u sum_{v in N(u)} y_{uv,l-1} P_{v,l-1}`.
/// A flag at `u` certifies a properly colored `k`-vertex path ending at `u`.
pub fn eval_static_sieve(
    gs: &StaticProjection,
    coloring: &VertexColoring,
    shades: &ShadeAssignment,
    config: &SieveConfig,
) -> Result<SieveOutcome, SieveError> {
    let k = shades.k();
    let lanes = check(gs, k, config)?;
    let n = gs.n() as u64;
    let w = lanes as u64;
    let peak = 3 * n * w + n * k as u64 + n;
    config.check_memory(peak)?;
    config.install(|| {
        with_field!(config.width, F => {
            let acc = static_walks::<F>(gs, coloring, shades, lanes);
            SieveOutcome::from_accumulators(acc, k, config.localize, peak)
        })
    })
}

fn static_walks<F: BinaryField>(gs: &StaticProjection, coloring: &VertexColoring, shades: &ShadeAssignment, lanes: usize) -> Vec<F> {
    let (n, k) = (gs.n(), shades.k());
    let stream = SeededStream::new(shades.seed());
    let z = shades.z_table::<F>(coloring);
    let mut acc = vec![F::ZERO; n];
    let mut prev = vec![F::ZERO; n * lanes];
    let mut cur = vec![F::ZERO; n * lanes];
    for block in 0..LaneBlock::<F>::blocks(k, lanes) {
        let lb = LaneBlock::build(&z, k, lanes, block);
        prev.copy_from_slice(&lb.x);
        for level in 2..=k {
            neighbor_step(&mut cur, &prev, lanes, |u| gs.incoming(u), |e| stream.nonzero(Role::Edge, e as u64, level as u64 - 1), Some(&lb.x));
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

/// Junction polynomial `R_u = sum_{a+b=k+1} P_{u,a} P'_{u,b}`: `P` counts walks
/// ending at `u`, `P'` counts walks leaving `u` without the `x_u` factor over
/// an independent `y'` family. A flag at `u` certifies that `u` lies on some
/// properly colored `k`-vertex path.
pub fn eval_junction_sieve(
    gs: &StaticProjection,
    coloring: &VertexColoring,
    shades: &ShadeAssignment,
    config: &SieveConfig,
) -> Result<SieveOutcome, SieveError> {
    let k = shades.k();
    let lanes = check(gs, k, config)?;
    let (n, w) = (gs.n() as u64, lanes as u64);
    let peak = (k as u64 + 3) * n * w + n * k as u64 + n;
    config.check_memory(peak)?;
    config.install(|| {
        with_field!(config.width, F => {
            let acc = junction::<F>(gs, coloring, shades, lanes);
            SieveOutcome::from_accumulators(acc, k, config.localize, peak)
        })
    })
}

fn junction<F: BinaryField>(gs: &StaticProjection, coloring: &VertexColoring, shades: &ShadeAssignment, lanes: usize) -> Vec<F> {
    let (n, k) = (gs.n(), shades.k());
    let stream = SeededStream::new(shades.seed());
    let z = shades.z_table::<F>(coloring);
    let mut acc = vec![F::ZERO; n];
    let row = n * lanes;
    let mut p = vec![F::ZERO; k * row];
    let mut q = vec![F::ZERO; row];
    let mut p_alt = vec![F::ZERO; row];
    for block in 0..LaneBlock::<F>::blocks(k, lanes) {
        let lb = LaneBlock::build(&z, k, lanes, block);
        p[..row].copy_from_slice(&lb.x);
        for a in 2..=k {
            let (done, rest) = p.split_at_mut((a - 1) * row);
            let src = &done[(a - 2) * row..];
            neighbor_step(&mut rest[..row], src, lanes, |u| gs.incoming(u), |e| stream.nonzero(Role::Edge, e as u64, a as u64 - 1), Some(&lb.x));
        }
        // b = 1: P'_{u,1} = 1
        let mut r: Vec<F> = p[(k - 1) * row..].to_vec();
        q.copy_from_slice(&lb.x);
        for b in 2..=k {
            neighbor_step(&mut p_alt, &q, lanes, |u| gs.outgoing(u), |e| stream.nonzero(Role::EdgeAlt, e as u64, b as u64 - 1), None);
            let pa = &p[(k - b) * row..(k - b + 1) * row];
            for ((ri, &x), &y) in r.iter_mut().zip(pa).zip(&p_alt) {
                *ri += x * y;
            }
            for ((qi, &x), &y) in q.iter_mut().zip(&lb.x).zip(&p_alt) {
                *qi = x * y;
            }
        }
        for (u, a) in acc.iter_mut().enumerate() {
            for &v in &r[u * lanes..(u + 1) * lanes] {
                *a += v;
            }
        }
    }
    acc
}
