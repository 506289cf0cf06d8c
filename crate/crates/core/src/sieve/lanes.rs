use crate::gf::BinaryField;

/// `W` consecutive label subsets evaluated together.
///
/// Subset `A` is encoded by the integer whose bit `j` marks label `j`; block
/// `b` holds subsets `b * W .. (b + 1) * W`. `x` is laid out `[u * W + lane]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaneBlock<F> {
    pub width: usize,
    pub first_subset: usize,
    pub x: Vec<F>,
}

impl<F: BinaryField> LaneBlock<F> {
    /// `z_u^A = sum_{j in A} z_{u,j}` for every vertex and lane.
    pub fn build(z: &[F], k: usize, width: usize, block: usize) -> Self {
        debug_assert!(width.is_power_of_two() && width <= 1 << k);
        let n = if k == 0 { 0 } else { z.len() / k };
        let first_subset = block * width;
        let low_bits = width.trailing_zeros() as usize;
        let mut x = vec![F::ZERO; n * width];
        for u in 0..n {
            let zu = &z[u * k..(u + 1) * k];
            let mut high = F::ZERO;
            for (j, &zj) in zu.iter().enumerate().skip(low_bits) {
                if first_subset >> j & 1 == 1 {
                    high += zj;
                }
            }
            let lanes = &mut x[u * width..(u + 1) * width];
            lanes[0] = high;
            for lane in 1..width {
                let low = lane.trailing_zeros() as usize;
                lanes[lane] = lanes[lane & (lane - 1)] + zu[low];
            }
        }
        LaneBlock { width, first_subset, x }
    }

    pub fn blocks(k: usize, width: usize) -> usize {
        (1usize << k) / width
    }

    #[inline]
    pub fn vertex(&self, u: usize) -> &[F] {
        &self.x[u * self.width..(u + 1) * self.width]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Gf64;

    #[test]
    fn lanes_match_direct_subset_sums() {
        let k = 4;
        let z: Vec<Gf64> = (0..3 * k as u64).map(|i| Gf64(0x1234_5678 ^ (i * 0x9E37_79B9))).collect();
        for width in [1, 2, 4, 8, 16] {
            for block in 0..LaneBlock::<Gf64>::blocks(k, width) {
                let lb = LaneBlock::build(&z, k, width, block);
                for u in 0..3 {
                    for lane in 0..width {
                        let a = block * width + lane;
                        let direct = (0..k).filter(|j| a >> j & 1 == 1).fold(Gf64(0), |s, j| s + z[u * k + j]);
                        assert_eq!(lb.vertex(u)[lane], direct, "u={u} A={a:b} W={width}");
                    }
                }
            }
        }
    }

    #[test]
    fn empty_subset_lane_is_zero() {
        let z = vec![Gf64(5), Gf64(9)];
        assert_eq!(LaneBlock::build(&z, 2, 4, 0).vertex(0)[0], Gf64(0));
    }
}
