use std::collections::BTreeMap;
use std::ops::Range;

use crate::gf::{BinaryField, Role, SeededStream};
use crate::graph::{Color, VertexColoring};
use crate::query::{MotifQuery, Multiset};

use super::{CertainNo, SieveConfig, SieveError, MAX_K};

/// Shade sets `S_s` and the random `v`, `w` values of the constrained sieve.
///
/// Shade ids and label ids are both `0..k`. In uniform mode every vertex
/// owns all `k` shades, which reduces to the plain multilinear sieve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadeAssignment {
    k: usize,
    sets: BTreeMap<Color, Range<usize>>,
    uniform: bool,
    stream: SeededStream,
}

impl ShadeAssignment {
    /// Canonical allocation: colors ascending, each taking the next
    /// `mu(s)` shade ids.
    pub fn for_multiset(m: &Multiset, seed: u64) -> Self {
        let mut sets = BTreeMap::new();
        let mut next = 0;
        for (c, mu) in m.iter() {
            sets.insert(c, next..next + mu);
            next += mu;
        }
        ShadeAssignment { k: next, sets, uniform: false, stream: SeededStream::new(seed) }
    }

    /// Every vertex owns all `k` shades.
    pub fn uniform(k: usize, seed: u64) -> Self {
        ShadeAssignment { k, sets: BTreeMap::new(), uniform: true, stream: SeededStream::new(seed) }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform
    }

    pub fn seed(&self) -> u64 {
        self.stream.seed()
    }

    /// `S_c`, or `None` when `c` is not in the query.
    pub fn shade_set(&self, c: Color) -> Option<Range<usize>> {
        if self.uniform {
            return Some(0..self.k);
        }
        self.sets.get(&c).cloned()
    }

    /// Union of the shade sets of all of `v`'s colors.
    pub fn shades_of(&self, coloring: &VertexColoring, v: usize) -> Vec<usize> {
        if self.uniform {
            return (0..self.k).collect();
        }
        let mut out: Vec<usize> = coloring.colors(v).iter().filter_map(|&c| self.shade_set(c)).flatten().collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn v<F: BinaryField>(&self, vertex: usize, shade: usize) -> F {
        self.stream.nonzero(Role::Vertex, vertex as u64, shade as u64)
    }

    pub fn w<F: BinaryField>(&self, shade: usize, label: usize) -> F {
        self.stream.nonzero(Role::Label, shade as u64, label as u64)
    }

    /// `z_{u,j} = sum_{d in S(u)} v_{u,d} w_{d,j}`, laid out `[u * k + j]`.
    pub fn z_table<F: BinaryField>(&self, coloring: &VertexColoring) -> Vec<F> {
        let k = self.k;
        let w: Vec<F> = (0..k * k).map(|i| self.w(i / k, i % k)).collect();
        let mut z = vec![F::ZERO; coloring.n() * k];
        for u in 0..coloring.n() {
            for d in self.shades_of(coloring, u) {
                let v: F = self.v(u, d);
                for j in 0..k {
                    z[u * k + j] += v * w[d * k + j];
                }
            }
        }
        z
    }
}

/// Builds the shade assignment realizing `query` on `coloring`.
///
/// Multiset queries get one shade set per color; size-only, timestamp-only
/// and ordered queries use uniform shades.
pub fn build_shades(query: &MotifQuery, coloring: &VertexColoring, config: &SieveConfig) -> Result<ShadeAssignment, SieveError> {
    let k = query.k();
    if k == 0 || k > MAX_K {
        return Err(SieveError::BadK(k));
    }
    if k > coloring.n() {
        return Err(SieveError::CertainNo(CertainNo::TooFewVertices { k, n: coloring.n() }));
    }
    match query {
        MotifQuery::Multiset(m) | MotifQuery::TimedMultiset { multiset: m, .. } => {
            if let Some(c) = m.support().into_iter().find(|&c| !coloring.color_present(c)) {
                return Err(SieveError::CertainNo(CertainNo::AbsentColor(c)));
            }
            Ok(ShadeAssignment::for_multiset(m, config.seed))
        }
        MotifQuery::Ordered(order) => {
            if let Some(&c) = order.iter().find(|&&c| !coloring.color_present(c)) {
                return Err(SieveError::CertainNo(CertainNo::AbsentColor(c)));
            }
            Ok(ShadeAssignment::uniform(k, config.seed))
        }
        MotifQuery::Size(_) | MotifQuery::Timed(_) | MotifQuery::Endpoints { .. } => Ok(ShadeAssignment::uniform(k, config.seed)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Gf64;

    #[test]
    fn canonical_allocation() {
        let s = ShadeAssignment::for_multiset(&Multiset::from_colors(&[1, 1, 2]), 7);
        assert_eq!(s.shade_set(1), Some(0..2));
        assert_eq!(s.shade_set(2), Some(2..3));
        assert_eq!(s.shade_set(3), None);
        let colorful = ShadeAssignment::for_multiset(&Multiset::from_colors(&[4, 2, 9, 1]), 7);
        assert!([1, 2, 4, 9].iter().all(|&c| colorful.shade_set(c).unwrap().len() == 1));
        let single = ShadeAssignment::for_multiset(&Multiset::repeated(1, 5), 7);
        assert_eq!(single.shade_set(1), Some(0..5));
    }

    #[test]
    fn sets_partition_the_shades() {
        let m = Multiset::from_colors(&[3, 1, 3, 2, 3, 1]);
        let s = ShadeAssignment::for_multiset(&m, 1);
        let mut all: Vec<usize> = m.support().iter().flat_map(|&c| s.shade_set(c).unwrap()).collect();
        all.sort_unstable();
        assert_eq!(all, (0..6).collect::<Vec<_>>());
        for (c, mu) in m.iter() {
            assert_eq!(s.shade_set(c).unwrap().len(), mu);
        }
    }

    #[test]
    fn absent_colors_and_oversized_queries_are_certain_no() {
        let c = VertexColoring::new(vec![1, 1, 2]);
        let cfg = SieveConfig::default();
        let q = MotifQuery::Multiset(Multiset::from_colors(&[1, 3]));
        assert_eq!(build_shades(&q, &c, &cfg), Err(SieveError::CertainNo(CertainNo::AbsentColor(3))));
        assert_eq!(
            build_shades(&MotifQuery::Size(4), &c, &cfg),
            Err(SieveError::CertainNo(CertainNo::TooFewVertices { k: 4, n: 3 }))
        );
    }

    #[test]
    fn vertices_outside_the_support_get_zero_z() {
        let c = VertexColoring::new(vec![1, 5, 2]);
        let s = ShadeAssignment::for_multiset(&Multiset::from_colors(&[1, 2]), 3);
        let z = s.z_table::<Gf64>(&c);
        assert!(z[2..4].iter().all(|x| x.0 == 0));
        assert!(z[0..2].iter().all(|x| x.0 != 0));
        assert_eq!(z, s.z_table::<Gf64>(&c));
    }
}
