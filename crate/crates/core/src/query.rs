//! Motif queries, problem identifiers and time-respecting rules.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Color, PathVerdict, TemporalEdge, TemporalGraph, Timestamp, VertexColoring};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QueryError {
    #[error("query size k must be at least 1")]
    EmptyQuery,
    #[error("colors must be >= 1, got {0}")]
    ZeroColor(Color),
    #[error("timestamps must be strictly increasing")]
    TimesNotIncreasing,
    #[error("timestamp tuple has {found} entries; expected k - 1 = {expected}")]
    TimesLength { expected: usize, found: usize },
    #[error("ordered query repeats color {0}")]
    RepeatedColor(Color),
    #[error("source and destination must differ")]
    SameEndpoints,
    #[error("problem {problem} does not accept a {kind} query")]
    KindMismatch { problem: Problem, kind: &'static str },
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// A color multiset `M` kept as color -> multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Multiset {
    counts: BTreeMap<Color, usize>,
}

impl Multiset {
    pub fn from_colors(colors: &[Color]) -> Self {
        let mut counts = BTreeMap::new();
        for &c in colors {
            *counts.entry(c).or_insert(0) += 1;
        }
        Multiset { counts }
    }

    /// `{c^k}`.
    pub fn repeated(c: Color, k: usize) -> Self {
        let mut counts = BTreeMap::new();
        if k > 0 {
            counts.insert(c, k);
        }
        Multiset { counts }
    }

    pub fn k(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn multiplicity(&self, c: Color) -> usize {
        self.counts.get(&c).copied().unwrap_or(0)
    }

    /// Distinct colors in ascending order with their multiplicities.
    pub fn iter(&self) -> impl Iterator<Item = (Color, usize)> + '_ {
        self.counts.iter().map(|(&c, &m)| (c, m))
    }

    pub fn support(&self) -> Vec<Color> {
        self.counts.keys().copied().collect()
    }

    pub fn contains(&self, c: Color) -> bool {
        self.counts.contains_key(&c)
    }

    pub fn add(&mut self, c: Color, times: usize) {
        if times > 0 {
            *self.counts.entry(c).or_insert(0) += times;
        }
    }

    pub fn is_colorful(&self) -> bool {
        self.counts.values().all(|&m| m == 1)
    }

    /// Colors listed with repetition, ascending.
    pub fn to_vec(&self) -> Vec<Color> {
        self.iter().flat_map(|(c, m)| std::iter::repeat_n(c, m)).collect()
    }

    /// True when each vertex can be assigned one of its colors so that the
    /// assigned multiset equals `self`.
    pub fn matches(&self, sets: &[&[Color]]) -> bool {
        if sets.len() != self.k() {
            return false;
        }
        let mut remaining = self.counts.clone();
        assign(sets, &mut remaining)
    }
}

fn assign(sets: &[&[Color]], remaining: &mut BTreeMap<Color, usize>) -> bool {
    let Some((first, rest)) = sets.split_first() else {
        return true;
    };
    for &c in first.iter() {
        if let Some(m) = remaining.get_mut(&c) {
            if *m > 0 {
                *m -= 1;
                let ok = assign(rest, remaining);
                *remaining.get_mut(&c).unwrap() += 1;
                if ok {
                    return true;
                }
            }
        }
    }
    false
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.to_vec().iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Parses a comma-separated list such as `"1,1,2,3"`.
pub fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>, QueryError> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<T>().map_err(|_| QueryError::Parse(p.to_string())))
        .collect()
}

/// The pattern a temporal path must realize.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MotifQuery {
    /// Any `k` distinct vertices.
    Size(usize),
    /// Vertex colors equal a multiset.
    Multiset(Multiset),
    /// Vertex `i` has color `order[i]`.
    Ordered(Vec<Color>),
    /// Edge `i` has timestamp `times[i]`; colors unconstrained.
    Timed(Vec<Timestamp>),
    /// Edge timestamps fixed and vertex colors equal a multiset.
    TimedMultiset { times: Vec<Timestamp>, multiset: Multiset },
    /// Path `source -> .. -> dest` whose `k` interior vertices carry colors `1..=k` once each.
    Endpoints { source: usize, dest: usize, k: usize },
}

impl MotifQuery {
    /// Number of vertices on a matching path.
    pub fn k(&self) -> usize {
        match self {
            MotifQuery::Size(k) => *k,
            MotifQuery::Multiset(m) => m.k(),
            MotifQuery::Ordered(o) => o.len(),
            MotifQuery::Timed(t) => t.len() + 1,
            MotifQuery::TimedMultiset { multiset, .. } => multiset.k(),
            MotifQuery::Endpoints { k, .. } => k + 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            MotifQuery::Size(_) => "size-only",
            MotifQuery::Multiset(_) => "multiset",
            MotifQuery::Ordered(_) => "ordered-colors",
            MotifQuery::Timed(_) => "ordered-timestamps",
            MotifQuery::TimedMultiset { .. } => "ordered-timestamps+multiset",
            MotifQuery::Endpoints { .. } => "endpoints",
        }
    }

    pub fn times(&self) -> Option<&[Timestamp]> {
        match self {
            MotifQuery::Timed(t) | MotifQuery::TimedMultiset { times: t, .. } => Some(t),
            _ => None,
        }
    }

    /// Colors a vertex must carry to be usable; `None` means any.
    pub fn support(&self) -> Option<Vec<Color>> {
        match self {
            MotifQuery::Size(_) | MotifQuery::Timed(_) | MotifQuery::Endpoints { .. } => None,
            MotifQuery::Multiset(m) | MotifQuery::TimedMultiset { multiset: m, .. } => Some(m.support()),
            MotifQuery::Ordered(o) => {
                let mut s = o.clone();
                s.sort_unstable();
                s.dedup();
                Some(s)
            }
        }
    }

    pub fn validate(&self) -> Result<(), QueryError> {
        if self.k() == 0 {
            return Err(QueryError::EmptyQuery);
        }
        let colors: Vec<Color> = match self {
            MotifQuery::Multiset(m) | MotifQuery::TimedMultiset { multiset: m, .. } => m.support(),
            MotifQuery::Ordered(o) => o.clone(),
            _ => Vec::new(),
        };
        if colors.contains(&0) {
            return Err(QueryError::ZeroColor(0));
        }
        if let Some(times) = self.times() {
            if times.windows(2).any(|w| w[0] >= w[1]) {
                return Err(QueryError::TimesNotIncreasing);
            }
            if times.len() + 1 != self.k() {
                return Err(QueryError::TimesLength { expected: self.k().saturating_sub(1), found: times.len() });
            }
        }
        if let MotifQuery::Endpoints { source, dest, .. } = self {
            if source == dest {
                return Err(QueryError::SameEndpoints);
            }
        }
        Ok(())
    }

    /// Pattern check on a vertex sequence with its hop timestamps.
    pub fn check(&self, coloring: &VertexColoring, vertices: &[usize], timestamps: &[Timestamp]) -> PathVerdict {
        if vertices.len() != self.k() {
            return PathVerdict::WrongLength { expected: self.k(), found: vertices.len() };
        }
        if let Some(times) = self.times() {
            if let Some(i) = times.iter().zip(timestamps).position(|(a, b)| a != b) {
                return PathVerdict::TimesMismatch(i);
            }
        }
        let sets: Vec<&[Color]> = vertices.iter().map(|&v| coloring.colors(v)).collect();
        let ok = match self {
            MotifQuery::Size(_) | MotifQuery::Timed(_) => true,
            MotifQuery::Multiset(m) | MotifQuery::TimedMultiset { multiset: m, .. } => m.matches(&sets),
            MotifQuery::Ordered(o) => o.iter().zip(&sets).all(|(c, s)| s.contains(c)),
            MotifQuery::Endpoints { source, dest, k } => {
                if vertices[0] != *source || vertices[vertices.len() - 1] != *dest {
                    return PathVerdict::EndpointMismatch;
                }
                let interior = Multiset::from_colors(&(1..=*k as Color).collect::<Vec<_>>());
                interior.matches(&sets[1..sets.len() - 1])
            }
        };
        if ok {
            PathVerdict::Valid
        } else {
            PathVerdict::ColorMismatch
        }
    }

    /// Running prefix check used to prune searches: can `prefix` (in path
    /// order, or reversed when `reversed`) still extend to a match?
    pub fn prefix_feasible(&self, coloring: &VertexColoring, prefix: &[usize], reversed: bool) -> bool {
        let k = self.k();
        if prefix.len() > k {
            return false;
        }
        let pos = |i: usize| if reversed { k - 1 - i } else { i };
        match self {
            MotifQuery::Size(_) | MotifQuery::Timed(_) => true,
            MotifQuery::Multiset(m) | MotifQuery::TimedMultiset { multiset: m, .. } => {
                let sets: Vec<&[Color]> = prefix.iter().map(|&v| coloring.colors(v)).collect();
                let mut remaining = m.counts.clone();
                assign(&sets, &mut remaining)
            }
            MotifQuery::Ordered(o) => prefix.iter().enumerate().all(|(i, &v)| coloring.has_color(v, o[pos(i)])),
            MotifQuery::Endpoints { source, dest, k: inner } => {
                let mut interior = Vec::new();
                for (i, &v) in prefix.iter().enumerate() {
                    match pos(i) {
                        0 if v != *source => return false,
                        p if p == k - 1 && v != *dest => return false,
                        p if p != 0 && p != k - 1 => interior.push(coloring.colors(v)),
                        _ => {}
                    }
                }
                let mut remaining: BTreeMap<Color, usize> = (1..=*inner as Color).map(|c| (c, 1)).collect();
                assign(&interior, &mut remaining)
            }
        }
    }
}

impl fmt::Display for MotifQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MotifQuery::Size(k) => write!(f, "k={k}"),
            MotifQuery::Multiset(m) => write!(f, "{m}"),
            MotifQuery::Ordered(o) => write!(f, "{o:?}"),
            MotifQuery::Timed(t) => write!(f, "times={t:?}"),
            MotifQuery::TimedMultiset { times, multiset } => write!(f, "{multiset} times={times:?}"),
            MotifQuery::Endpoints { source, dest, k } => write!(f, "{source}->{dest} k={k}"),
        }
    }
}

/// The nine problem variants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Problem {
    KTempPath,
    PathMotif,
    ColorfulPath,
    SdColorfulPath,
    RainbowPath,
    EcTempPath,
    EcPathMotif,
    VcPathMotif,
    VcColorfulPath,
}

impl Problem {
    pub const ALL: [Problem; 9] = [
        Problem::KTempPath,
        Problem::PathMotif,
        Problem::ColorfulPath,
        Problem::SdColorfulPath,
        Problem::RainbowPath,
        Problem::EcTempPath,
        Problem::EcPathMotif,
        Problem::VcPathMotif,
        Problem::VcColorfulPath,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Problem::KTempPath => "k-temppath",
            Problem::PathMotif => "pathmotif",
            Problem::ColorfulPath => "colorfulpath",
            Problem::SdColorfulPath => "sd-colorfulpath",
            Problem::RainbowPath => "rainbowpath",
            Problem::EcTempPath => "ec-temppath",
            Problem::EcPathMotif => "ec-pathmotif",
            Problem::VcPathMotif => "vc-pathmotif",
            Problem::VcColorfulPath => "vc-colorfulpath",
        }
    }

    /// Checks that `query` has the shape this problem expects.
    pub fn accepts(self, query: &MotifQuery) -> Result<(), QueryError> {
        let ok = match (self, query) {
            (Problem::KTempPath | Problem::RainbowPath, MotifQuery::Size(_)) => true,
            (Problem::PathMotif, MotifQuery::Multiset(_)) => true,
            (Problem::ColorfulPath, MotifQuery::Multiset(m)) => m.is_colorful(),
            (Problem::SdColorfulPath, MotifQuery::Endpoints { .. }) => true,
            (Problem::EcTempPath, MotifQuery::Timed(_)) => true,
            (Problem::EcPathMotif, MotifQuery::TimedMultiset { .. }) => true,
            (Problem::VcPathMotif, MotifQuery::Ordered(_)) => true,
            (Problem::VcColorfulPath, MotifQuery::Ordered(o)) => {
                let mut s = o.clone();
                s.sort_unstable();
                if let Some(w) = s.windows(2).find(|w| w[0] == w[1]) {
                    return Err(QueryError::RepeatedColor(w[0]));
                }
                true
            }
            _ => false,
        };
        if ok {
            query.validate()
        } else {
            Err(QueryError::KindMismatch { problem: self, kind: query.kind() })
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = QueryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_ascii_lowercase();
        Problem::ALL
            .into_iter()
            .find(|p| p.name().replace('-', "") == key)
            .ok_or_else(|| QueryError::Parse(s.to_string()))
    }
}

/// How edge traversal advances time.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeModel {
    /// Arrival at the edge timestamp; the next hop needs a strictly larger one.
    #[default]
    Instant,
    /// Arrival at `ts + transition(e)`.
    TransitionOnly,
    /// The next hop from `v` departs no earlier than arrival `+ delay(v)`.
    DelayOnly,
    /// Both shifts.
    TransitionDelay,
}

impl EdgeModel {
    pub fn uses_transition(self) -> bool {
        matches!(self, EdgeModel::TransitionOnly | EdgeModel::TransitionDelay)
    }

    pub fn uses_delay(self) -> bool {
        matches!(self, EdgeModel::DelayOnly | EdgeModel::TransitionDelay)
    }

    /// Time at which a hop over edge `e` departing at `ts` arrives.
    pub fn arrival(self, g: &TemporalGraph, e: usize, ts: Timestamp) -> u64 {
        if self.uses_transition() {
            ts as u64 + g.transition(e) as u64
        } else {
            ts as u64
        }
    }

    /// Minimum gap between arriving at `v` and departing from it. The same
    /// gap applies before the first departure, counted from time 0.
    pub fn gap(self, g: &TemporalGraph, v: usize) -> u64 {
        if self.uses_delay() {
            g.delay(v) as u64
        } else {
            1
        }
    }

    /// Index of the first hop that violates the rule, if any.
    pub fn first_violation(self, g: &TemporalGraph, vertices: &[usize], edges: &[TemporalEdge], edge_ids: &[usize]) -> Option<usize> {
        let mut ready = self.gap(g, vertices[0]);
        for (i, (e, &id)) in edges.iter().zip(edge_ids).enumerate() {
            if (e.ts as u64) < ready {
                return Some(i);
            }
            ready = self.arrival(g, id, e.ts) + self.gap(g, e.v);
        }
        None
    }

    /// Time the walk finishes: arrival over its last hop.
    pub fn finish(self, g: &TemporalGraph, last_edge: usize, ts: Timestamp) -> u64 {
        self.arrival(g, last_edge, ts)
    }
}

impl FromStr for EdgeModel {
    type Err = QueryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "instant" => Ok(EdgeModel::Instant),
            "transition" | "transition-only" => Ok(EdgeModel::TransitionOnly),
            "delay" | "delay-only" => Ok(EdgeModel::DelayOnly),
            "transition-delay" | "transition+delay" | "both" => Ok(EdgeModel::TransitionDelay),
            _ => Err(QueryError::Parse(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_matching_with_color_sets() {
        let m = Multiset::from_colors(&[1, 1, 2]);
        assert_eq!(m.k(), 3);
        assert!(m.matches(&[&[1], &[2], &[1]]));
        assert!(!m.matches(&[&[1], &[2], &[2]]));
        // wildcard vertex {2, 5} may stand in for the 2
        assert!(m.matches(&[&[1], &[2, 5], &[1]]));
        assert!(!m.matches(&[&[1], &[1]]));
        // needs backtracking: the first vertex must not take color 1
        let n = Multiset::from_colors(&[1, 2]);
        assert!(n.matches(&[&[1, 2], &[1]]));
    }

    #[test]
    fn problem_names_round_trip() {
        for p in Problem::ALL {
            assert_eq!(p.name().parse::<Problem>().unwrap(), p);
        }
        assert_eq!("PathMotif".parse::<Problem>().unwrap(), Problem::PathMotif);
        assert_eq!("(s,d)-ColorfulPath".parse::<Problem>().unwrap(), Problem::SdColorfulPath);
    }

    #[test]
    fn query_shape_checks() {
        assert!(MotifQuery::Timed(vec![1, 1, 2]).validate().is_err());
        assert_eq!(
            Problem::VcColorfulPath.accepts(&MotifQuery::Ordered(vec![1, 2, 1])),
            Err(QueryError::RepeatedColor(1))
        );
        assert!(Problem::ColorfulPath.accepts(&MotifQuery::Multiset(Multiset::from_colors(&[1, 1]))).is_err());
        assert!(Problem::PathMotif.accepts(&MotifQuery::Size(3)).is_err());
        assert_eq!(MotifQuery::Endpoints { source: 0, dest: 1, k: 2 }.k(), 4);
    }

    #[test]
    fn prefix_feasibility() {
        let c = VertexColoring::new(vec![1, 2, 3, 1]);
        let q = MotifQuery::Ordered(vec![1, 2, 3]);
        assert!(q.prefix_feasible(&c, &[0, 1], false));
        assert!(!q.prefix_feasible(&c, &[1], false));
        assert!(q.prefix_feasible(&c, &[2, 1], true));
        let m = MotifQuery::Multiset(Multiset::from_colors(&[1, 2]));
        assert!(!m.prefix_feasible(&c, &[0, 3], false));
    }
}
