//! Result records shared by the solvers and the baselines.

use serde::{Deserialize, Serialize};

use crate::graph::{Color, TemporalPath, Timestamp};
use crate::query::Problem;
use crate::sieve::CertainNo;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Decision {
    Yes,
    No,
    /// Budget ran out (exhaustive search) or nothing was found (random walks).
    Inconclusive,
}

impl Decision {
    pub fn from_bool(yes: bool) -> Self {
        if yes {
            Decision::Yes
        } else {
            Decision::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Decision::Yes
    }
}

impl std::fmt::Display for Decision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Decision::Yes => "YES",
            Decision::No => "NO",
            Decision::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Wall-clock seconds per phase.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub preprocess: f64,
    pub sieve: f64,
    pub extraction: f64,
}

impl Timings {
    pub fn total(&self) -> f64 {
        self.preprocess + self.sieve + self.extraction
    }
}

/// Everything a solver or baseline run reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub problem: Option<Problem>,
    pub decision: Decision,
    /// Smallest max-timestamp admitting a match, when computed.
    pub optimum_ts: Option<Timestamp>,
    /// Vertex ids of the input graph.
    pub witness: Option<TemporalPath>,
    pub flagged: Vec<usize>,
    /// Combined false-negative bound over all sieve calls.
    pub fn_bound: f64,
    /// Number of sieve evaluations.
    pub oracle_calls: u64,
    /// Search-tree nodes (exhaustive search) or walks (random walks).
    pub nodes_expanded: u64,
    pub timings: Timings,
    pub peak_words: u64,
    /// Combined accumulator checksum over all sieve calls.
    pub checksum: u64,
    /// Why a NO was certain without sieving.
    pub certain_no: Option<CertainNo>,
    /// Color subset that produced the match (rainbow search).
    pub rainbow_subset: Option<Vec<Color>>,
    /// Wildcard vertices used by the match.
    pub wildcards: Option<usize>,
    /// Vertex count after preprocessing.
    pub reduced_n: Option<usize>,
    /// Iteration of the first hit (random walks).
    pub first_hit: Option<u64>,
}

impl SolveReport {
    pub fn new(decision: Decision) -> Self {
        SolveReport {
            problem: None,
            decision,
            optimum_ts: None,
            witness: None,
            flagged: Vec::new(),
            fn_bound: 0.0,
            oracle_calls: 0,
            nodes_expanded: 0,
            timings: Timings::default(),
            peak_words: 0,
            checksum: 0,
            certain_no: None,
            rainbow_subset: None,
            wildcards: None,
            reduced_n: None,
            first_hit: None,
        }
    }

    pub fn certain_no(reason: CertainNo) -> Self {
        SolveReport { certain_no: Some(reason), ..SolveReport::new(Decision::No) }
    }
}
