//! Lane-parallel evaluation of the walk-generating polynomials.
//!
//! Every engine evaluates one polynomial family at `z^A` for all `2^k`
//! label subsets `A`, `W` subsets at a time, and folds the results into one
//! accumulator per vertex. Over characteristic 2 the subset sum cancels every
//! monomial that is not multilinear in the vertex variables and properly
//! colored, so a nonzero accumulator certifies a match.

mod edge_constrained;
mod lanes;
mod shades;
mod static_;
mod temporal;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{mix64, BinaryField, FieldWidth};
use crate::graph::Color;
use crate::query::EdgeModel;

pub use edge_constrained::eval_edge_constrained_sieve;
pub use lanes::LaneBlock;
pub use shades::{build_shades, ShadeAssignment};
pub use static_::{eval_junction_sieve, eval_static_sieve};
pub use temporal::{eval_delay_sieve, eval_temporal_sieve, eval_vertex_ordered_sieve, TemporalSieve};

/// Largest supported query size.
pub const MAX_K: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertainNo {
    /// The query needs more vertices than the graph has.
    TooFewVertices { k: usize, n: usize },
    /// A query color occurs on no vertex.
    AbsentColor(Color),
    /// A prescribed timestamp carries no edge.
    AbsentTimestamp(u32),
    /// Nothing left after preprocessing.
    EmptyGraph,
}

impl std::fmt::Display for CertainNo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CertainNo::TooFewVertices { k, n } => write!(f, "k = {k} exceeds n = {n}"),
            CertainNo::AbsentColor(c) => write!(f, "color {c} does not occur in the graph"),
            CertainNo::AbsentTimestamp(t) => write!(f, "no edge carries timestamp {t}"),
            CertainNo::EmptyGraph => write!(f, "the reduced graph is empty"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SieveError {
    /// Not a failure: the instance has no match for a structural reason.
    #[error("certain NO: {0}")]
    CertainNo(CertainNo),
    #[error("working memory of {needed} words exceeds the cap of {cap}")]
    MemoryCap { needed: u64, cap: u64 },
    #[error("lane width must be a power of two, got {0}")]
    BadLaneWidth(usize),
    #[error("k = {0} outside the supported range 1..={MAX_K}")]
    BadK(usize),
    #[error("max-ts {max_ts} outside 1..={t}")]
    BadMaxTs { max_ts: u32, t: u32 },
    #[error("timestamps must be strictly increasing")]
    TimesNotIncreasing,
    #[error("vertex {0} out of range")]
    BadVertex(usize),
    #[error("failed to start worker pool: {0}")]
    Pool(String),
}

/// Parameters shared by every engine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SieveConfig {
    pub seed: u64,
    pub width: FieldWidth,
    /// Subsets per block; a power of two, clamped to `2^k`.
    pub lanes: usize,
    /// Worker count; 0 uses the ambient pool.
    pub threads: usize,
    /// Decide from per-vertex accumulators rather than their sum.
    pub localize: bool,
    pub edge_model: EdgeModel,
    /// Refuse evaluations whose working set exceeds this many words.
    pub memory_cap_words: Option<u64>,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            seed: 1,
            width: FieldWidth::B64,
            lanes: 8,
            threads: 0,
            localize: true,
            edge_model: EdgeModel::Instant,
            memory_cap_words: None,
        }
    }
}

impl SieveConfig {
    pub fn with_seed(seed: u64) -> Self {
        SieveConfig { seed, ..Default::default() }
    }

    pub(crate) fn lane_width(&self, k: usize) -> Result<usize, SieveError> {
        if self.lanes == 0 || !self.lanes.is_power_of_two() {
            return Err(SieveError::BadLaneWidth(self.lanes));
        }
        Ok(self.lanes.min(1 << k))
    }

    pub(crate) fn check_memory(&self, needed: u64) -> Result<(), SieveError> {
        match self.memory_cap_words {
            Some(cap) if needed > cap => Err(SieveError::MemoryCap { needed, cap }),
            _ => Ok(()),
        }
    }

    /// Runs `f` on a pool of `threads` workers (or the ambient pool).
    pub(crate) fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> Result<R, SieveError> {
        if self.threads == 0 {
            return Ok(f());
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map_err(|e| SieveError::Pool(e.to_string()))?;
        Ok(pool.install(f))
    }
}

/// Result of one sieve evaluation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SieveOutcome {
    /// Per-vertex sum over all subsets, as field words.
    pub accumulators: Vec<u64>,
    /// Vertices with a nonzero accumulator, ascending.
    pub flagged: Vec<usize>,
    /// Sum of all accumulators.
    pub global_sum: u64,
    /// The decision: `flagged` nonempty when localized, else `global_sum != 0`.
    pub global_nonzero: bool,
    /// Per-vertex false-negative bound `(2k - 1) / 2^b`.
    pub fn_bound: f64,
    /// Peak working memory in field words.
    pub peak_words: u64,
    pub checksum: u64,
}

impl SieveOutcome {
    pub(crate) fn from_accumulators<F: BinaryField>(acc: Vec<F>, k: usize, localize: bool, peak_words: u64) -> Self {
        let accumulators: Vec<u64> = acc.iter().map(|a| a.to_word()).collect();
        let flagged: Vec<usize> = (0..accumulators.len()).filter(|&u| accumulators[u] != 0).collect();
        let global_sum = accumulators.iter().fold(0, |s, &a| s ^ a);
        let checksum = accumulators.iter().fold(mix64(accumulators.len() as u64), |h, &a| mix64(h ^ a));
        SieveOutcome {
            global_nonzero: if localize { !flagged.is_empty() } else { global_sum != 0 },
            accumulators,
            flagged,
            global_sum,
            fn_bound: F::WIDTH.false_negative_bound(k),
            peak_words,
            checksum,
        }
    }

    pub fn is_flagged(&self, u: usize) -> bool {
        self.accumulators.get(u).is_some_and(|&a| a != 0)
    }
}

/// Calls a generic body with `$F` bound to the field type for `$width`.
macro_rules! with_field {
    ($width:expr, $F:ident => $body:expr) => {
        match $width {
            $crate::gf::FieldWidth::B8 => {
                type $F = $crate::gf::Gf8;
                $body
            }
            $crate::gf::FieldWidth::B16 => {
                type $F = $crate::gf::Gf16;
                $body
            }
            $crate::gf::FieldWidth::B32 => {
                type $F = $crate::gf::Gf32;
                $body
            }
            $crate::gf::FieldWidth::B64 => {
                type $F = $crate::gf::Gf64;
                $body
            }
        }
    };
}
pub(crate) use with_field;
