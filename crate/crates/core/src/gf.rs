//! Binary finite fields `GF(2^b)` for `b ∈ {8, 16, 32, 64}`.
//!
//! Elements are bit-vectors read as polynomials over `GF(2)`. Addition is XOR;
//! multiplication is a carry-less product reduced by a fixed low-weight
//! irreducible polynomial:
//!
//! | b  | modulus                         |
//! |----|---------------------------------|
//! | 8  | `x^8 + x^4 + x^3 + x + 1`       |
//! | 16 | `x^16 + x^5 + x^3 + x + 1`      |
//! | 32 | `x^32 + x^7 + x^3 + x^2 + 1`    |
//! | 64 | `x^64 + x^4 + x^3 + x + 1`      |
//!
//! On x86-64 builds with `pclmulqdq` enabled the carry-less product uses the
//! CLMUL instruction; everywhere else a 4-bit windowed software routine is used.
//! Both give bit-identical results.

#![allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign};

use serde::{Deserialize, Serialize};

/// Width of the field in bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum FieldWidth {
    B8,
    B16,
    B32,
    #[default]
    B64,
}

impl FieldWidth {
    pub fn bits(self) -> u32 {
        match self {
            FieldWidth::B8 => 8,
            FieldWidth::B16 => 16,
            FieldWidth::B32 => 32,
            FieldWidth::B64 => 64,
        }
    }

    pub fn from_bits(bits: u32) -> Option<Self> {
        match bits {
            8 => Some(FieldWidth::B8),
            16 => Some(FieldWidth::B16),
            32 => Some(FieldWidth::B32),
            64 => Some(FieldWidth::B64),
            _ => None,
        }
    }

    /// Low part of the modulus (the modulus minus `x^b`).
    pub fn reduction_tail(self) -> u64 {
        match self {
            FieldWidth::B8 => Gf8::TAIL,
            FieldWidth::B16 => Gf16::TAIL,
            FieldWidth::B32 => Gf32::TAIL,
            FieldWidth::B64 => Gf64::TAIL,
        }
    }

    /// Per-evaluation false-negative bound `(2k - 1) / 2^b`.
    pub fn false_negative_bound(self, k: usize) -> f64 {
        (2.0 * k as f64 - 1.0).max(0.0) / 2f64.powi(self.bits() as i32)
    }
}

impl fmt::Display for FieldWidth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{})", self.bits())
    }
}

/// Arithmetic interface shared by the four field widths.
pub trait BinaryField:
    Copy
    + Default
    + PartialEq
    + Eq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + AddAssign
    + Mul<Output = Self>
    + MulAssign
{
    const BITS: u32;
    const WIDTH: FieldWidth;
    const ZERO: Self;
    const ONE: Self;

    /// Keeps the low `BITS` bits of `word`.
    fn from_word(word: u64) -> Self;
    fn to_word(self) -> u64;

    #[inline]
    fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    fn square(self) -> Self {
        self * self
    }

    /// Multiplicative inverse by Fermat (`a^(2^b - 2)`); `None` for zero.
    fn inverse(self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // a^(2^b - 2) = prod_{i=1}^{b-1} a^(2^i)
        let mut acc = Self::ONE;
        let mut pow = self;
        for _ in 1..Self::BITS {
            pow = pow.square();
            acc *= pow;
        }
        Some(acc)
    }
}

/// Carry-less 64x64 -> 128 bit product, returned as `(lo, hi)`.
#[inline(always)]
pub fn clmul64(a: u64, b: u64) -> (u64, u64) {
    #[cfg(all(target_arch = "x86_64", target_feature = "pclmulqdq", target_feature = "sse2"))]
    {
        clmul64_hw(a, b)
    }
    #[cfg(not(all(target_arch = "x86_64", target_feature = "pclmulqdq", target_feature = "sse2")))]
    {
        clmul64_soft(a, b)
    }
}

#[cfg(all(target_arch = "x86_64", target_feature = "pclmulqdq", target_feature = "sse2"))]
#[inline(always)]
fn clmul64_hw(a: u64, b: u64) -> (u64, u64) {
    use std::arch::x86_64::{_mm_clmulepi64_si128, _mm_cvtsi128_si64, _mm_cvtsi64_si128, _mm_unpackhi_epi64};
    // SAFETY: guarded by the compile-time target features above.
    unsafe {
        let x = _mm_cvtsi64_si128(a as i64);
        let y = _mm_cvtsi64_si128(b as i64);
        let p = _mm_clmulepi64_si128(x, y, 0x00);
        let lo = _mm_cvtsi128_si64(p) as u64;
        let hi = _mm_cvtsi128_si64(_mm_unpackhi_epi64(p, p)) as u64;
        (lo, hi)
    }
}

/// Portable carry-less product using a 16-entry window table of `a`.
#[inline]
pub fn clmul64_soft(a: u64, b: u64) -> (u64, u64) {
    let a = a as u128;
    let mut table = [0u128; 16];
    for i in 1..16usize {
        let mut v = 0u128;
        for bit in 0..4 {
            if i >> bit & 1 == 1 {
                v ^= a << bit;
            }
        }
        table[i] = v;
    }
    let mut acc = 0u128;
    for nib in (0..16).rev() {
        acc <<= 4;
        acc ^= table[((b >> (nib * 4)) & 0xF) as usize];
    }
    (acc as u64, (acc >> 64) as u64)
}

/// Reduces a product of two `bits`-wide operands (held in one word, so
/// `bits <= 32`) modulo `x^bits + tail`.
#[inline(always)]
fn reduce_narrow(mut p: u64, bits: u32, tail: u64) -> u64 {
    let mask = (1u64 << bits) - 1;
    loop {
        let hi = p >> bits;
        if hi == 0 {
            return p;
        }
        p = (p & mask) ^ clmul64(hi, tail).0;
    }
}

macro_rules! narrow_field {
    ($name:ident, $repr:ty, $bits:expr, $width:expr, $tail:expr, $doc:expr) => {
        #[doc = $doc]
        #[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
        pub struct $name(pub $repr);

        impl $name {
            pub const TAIL: u64 = $tail;
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}({:#x})", stringify!($name), self.0)
            }
        }

        impl Add for $name {
            type Output = Self;
            #[inline(always)]
            fn add(self, rhs: Self) -> Self {
                $name(self.0 ^ rhs.0)
            }
        }

        impl AddAssign for $name {
            #[inline(always)]
            fn add_assign(&mut self, rhs: Self) {
                self.0 ^= rhs.0;
            }
        }

        impl Mul for $name {
            type Output = Self;
            #[inline(always)]
            fn mul(self, rhs: Self) -> Self {
                let p = clmul64(self.0 as u64, rhs.0 as u64).0;
                $name(reduce_narrow(p, $bits, $tail) as $repr)
            }
        }

        impl MulAssign for $name {
            #[inline(always)]
            fn mul_assign(&mut self, rhs: Self) {
                *self = *self * rhs;
            }
        }

        impl BinaryField for $name {
            const BITS: u32 = $bits;
            const WIDTH: FieldWidth = $width;
            const ZERO: Self = $name(0);
            const ONE: Self = $name(1);

            #[inline(always)]
            fn from_word(word: u64) -> Self {
                $name(word as $repr)
            }

            #[inline(always)]
            fn to_word(self) -> u64 {
                self.0 as u64
            }
        }
    };
}

narrow_field!(Gf8, u8, 8, FieldWidth::B8, 0x1B, "Element of `GF(2^8)` modulo `x^8 + x^4 + x^3 + x + 1`.");
narrow_field!(Gf16, u16, 16, FieldWidth::B16, 0x2B, "Element of `GF(2^16)` modulo `x^16 + x^5 + x^3 + x + 1`.");
narrow_field!(Gf32, u32, 32, FieldWidth::B32, 0x8D, "Element of `GF(2^32)` modulo `x^32 + x^7 + x^3 + x^2 + 1`.");

/// Element of `GF(2^64)` modulo `x^64 + x^4 + x^3 + x + 1`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Gf64(pub u64);

/// The production field element.
pub type FieldElement = Gf64;

impl Gf64 {
    pub const TAIL: u64 = 0x1B;

    /// Folds a 128-bit carry-less product back into 64 bits.
    #[inline(always)]
    pub fn reduce(lo: u64, hi: u64) -> u64 {
        // hi * (x^4 + x^3 + x + 1), then the at most 4 bits that spill over.
        let spill = (hi >> 60) ^ (hi >> 61) ^ (hi >> 63);
        let folded = hi ^ (hi << 1) ^ (hi << 3) ^ (hi << 4);
        lo ^ folded ^ spill ^ (spill << 1) ^ (spill << 3) ^ (spill << 4)
    }
}

impl fmt::Debug for Gf64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf64({:#x})", self.0)
    }
}

impl Add for Gf64 {
    type Output = Self;
    #[inline(always)]
    fn add(self, rhs: Self) -> Self {
        Gf64(self.0 ^ rhs.0)
    }
}

impl AddAssign for Gf64 {
    #[inline(always)]
    fn add_assign(&mut self, rhs: Self) {
        self.0 ^= rhs.0;
    }
}

impl Mul for Gf64 {
    type Output = Self;
    #[inline(always)]
    fn mul(self, rhs: Self) -> Self {
        let (lo, hi) = clmul64(self.0, rhs.0);
        Gf64(Gf64::reduce(lo, hi))
    }
}

impl MulAssign for Gf64 {
    #[inline(always)]
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl BinaryField for Gf64 {
    const BITS: u32 = 64;
    const WIDTH: FieldWidth = FieldWidth::B64;
    const ZERO: Self = Gf64(0);
    const ONE: Self = Gf64(1);

    #[inline(always)]
    fn from_word(word: u64) -> Self {
        Gf64(word)
    }

    #[inline(always)]
    fn to_word(self) -> u64 {
        self.0
    }
}

pub fn add<F: BinaryField>(a: F, b: F) -> F {
    a + b
}

pub fn mul<F: BinaryField>(a: F, b: F) -> F {
    a * b
}

/// Multiplies two words as elements of the field of the given width.
pub fn mul_words(width: FieldWidth, a: u64, b: u64) -> u64 {
    match width {
        FieldWidth::B8 => (Gf8::from_word(a) * Gf8::from_word(b)).to_word(),
        FieldWidth::B16 => (Gf16::from_word(a) * Gf16::from_word(b)).to_word(),
        FieldWidth::B32 => (Gf32::from_word(a) * Gf32::from_word(b)).to_word(),
        FieldWidth::B64 => (Gf64::from_word(a) * Gf64::from_word(b)).to_word(),
    }
}

/// Tags separating the independent random variable families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u64)]
pub enum Role {
    /// Shade-to-vertex values `v_{u,d}`.
    Vertex = 0x7631,
    /// Label-to-shade values `w_{d,j}`.
    Label = 0x7732,
    /// Edge-position values `y_{e,l}`.
    Edge = 0x7933,
    /// Second edge family used by the junction sieve.
    EdgeAlt = 0x7934,
    /// Plain positional draws.
    Position = 0x7035,
}

/// Counter-based pseudorandom source: every draw is a pure function of
/// `(seed, role, index)`, so values can be recomputed anywhere without state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeededStream {
    seed: u64,
}

#[inline(always)]
pub(crate) fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl SeededStream {
    pub fn new(seed: u64) -> Self {
        SeededStream { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Raw 64-bit word at `(role, a, b)`.
    #[inline(always)]
    pub fn word(&self, role: Role, a: u64, b: u64) -> u64 {
        let h = mix64(self.seed ^ 0x5EED_0000_0000_0000);
        let h = mix64(h ^ role as u64);
        let h = mix64(h ^ a);
        mix64(h ^ b.rotate_left(32))
    }

    /// Uniform nonzero field element at `(role, a, b)`.
    #[inline(always)]
    pub fn nonzero<F: BinaryField>(&self, role: Role, a: u64, b: u64) -> F {
        let mut w = self.word(role, a, b);
        loop {
            let x = F::from_word(w);
            if !x.is_zero() {
                return x;
            }
            w = mix64(w);
        }
    }

    /// The nonzero element at a plain draw position.
    pub fn random_nonzero<F: BinaryField>(&self, position: u64) -> F {
        self.nonzero(Role::Position, position, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Bit-serial shift-and-XOR reference multiplication.
    fn oracle_mul(a: u64, b: u64, bits: u32, tail: u64) -> u64 {
        let mask = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
        let mut acc = 0u64;
        let mut x = a & mask;
        for i in 0..bits {
            if b >> i & 1 == 1 {
                acc ^= x;
            }
            let carry = x >> (bits - 1) & 1;
            x = (x << 1) & mask;
            if carry == 1 {
                x ^= tail;
            }
        }
        acc
    }

    #[test]
    fn add_is_xor() {
        assert_eq!(Gf64(0x0F) + Gf64(0x05), Gf64(0x0A));
        let a = Gf64(0xDEAD_BEEF);
        assert_eq!(a + a, Gf64::ZERO);
        assert_eq!(a + Gf64::ZERO, a);
    }

    #[test]
    fn small_products() {
        assert_eq!(Gf64(2) * Gf64(2), Gf64(4));
        let a = Gf64(0x1234_5678_9ABC_DEF0);
        assert_eq!(a * Gf64::ONE, a);
        assert_eq!(Gf64(1 << 63) * Gf64(2), Gf64(0x1B));
        assert_eq!(oracle_mul(1 << 63, 2, 64, 0x1B), 0x1B);
    }

    #[test]
    fn gf8_exhaustive_against_oracle() {
        for a in 0..=255u64 {
            for b in 0..=255u64 {
                let got = (Gf8::from_word(a) * Gf8::from_word(b)).to_word();
                assert_eq!(got, oracle_mul(a, b, 8, 0x1B), "{a} * {b}");
                assert_eq!(got == 0, a == 0 || b == 0);
            }
        }
    }

    #[test]
    fn gf8_every_nonzero_has_inverse() {
        for a in 1..=255u8 {
            let inv = Gf8(a).inverse().unwrap();
            assert_eq!(Gf8(a) * inv, Gf8::ONE);
        }
        assert!(Gf8(0).inverse().is_none());
    }

    #[test]
    fn soft_and_dispatch_clmul_agree() {
        let s = SeededStream::new(1);
        for i in 0..10_000 {
            let a = s.word(Role::Position, i, 1);
            let b = s.word(Role::Position, i, 2);
            assert_eq!(clmul64(a, b), clmul64_soft(a, b));
        }
    }

    fn poly_deg(p: u128) -> i32 {
        127 - p.leading_zeros() as i32
    }

    fn poly_gcd(mut a: u128, mut b: u128) -> u128 {
        while b != 0 {
            while a != 0 && poly_deg(a) >= poly_deg(b) {
                a ^= b << (poly_deg(a) - poly_deg(b));
            }
            std::mem::swap(&mut a, &mut b);
        }
        a
    }

    /// Rabin's test for degree 2^j moduli: x^(2^b) = x and
    /// gcd(x^(2^(b/2)) - x, m) = 1.
    fn check_irreducible<F: BinaryField>() {
        let x = F::from_word(2);
        let mut p = x;
        let mut half = F::ZERO;
        for i in 1..=F::BITS {
            p = p.square();
            if i == F::BITS / 2 {
                half = p;
            }
        }
        assert_eq!(p, x, "x^(2^b) != x for {:?}", F::WIDTH);
        let modulus = (1u128 << F::BITS) | F::WIDTH.reduction_tail() as u128;
        let diff = (half + x).to_word() as u128;
        assert_eq!(poly_gcd(modulus, diff), 1, "{:?} modulus has a factor", F::WIDTH);
    }

    #[test]
    fn moduli_are_irreducible() {
        check_irreducible::<Gf8>();
        check_irreducible::<Gf16>();
        check_irreducible::<Gf32>();
        check_irreducible::<Gf64>();
    }

    #[test]
    fn random_triples_satisfy_field_laws() {
        let s = SeededStream::new(99);
        for i in 0..100_000u64 {
            let a = Gf64(s.word(Role::Position, i, 0));
            let b = Gf64(s.word(Role::Position, i, 1));
            let c = Gf64(s.word(Role::Position, i, 2));
            assert_eq!(a * (b * c), (a * b) * c);
            assert_eq!(a * (b + c), a * b + a * c);
            if !a.is_zero() && !b.is_zero() {
                assert!(!(a * b).is_zero());
            }
        }
    }

    #[test]
    fn stream_is_position_deterministic() {
        let s = SeededStream::new(7);
        let a: Gf64 = s.random_nonzero(12);
        let b: Gf64 = SeededStream::new(7).random_nonzero(12);
        assert_eq!(a, b);
        let c: Gf64 = s.random_nonzero(13);
        assert_ne!(a, c);
        let d: Gf64 = SeededStream::new(8).random_nonzero(12);
        assert_ne!(a, d);
    }

    #[test]
    fn low_bytes_pass_chi_square() {
        let s = SeededStream::new(2024);
        let mut counts = [0u64; 256];
        let draws = 1_000_000u64;
        for i in 0..draws {
            let x: Gf64 = s.random_nonzero(i);
            counts[(x.0 & 0xFF) as usize] += 1;
        }
        let expected = draws as f64 / 256.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        // chi-square critical value, 255 degrees of freedom, alpha = 0.01
        assert!(chi2 < 310.46, "chi2 = {chi2}");
    }

    #[test]
    fn gf8_stream_covers_all_nonzero_values() {
        let s = SeededStream::new(5);
        let mut seen = [false; 256];
        for i in 0..100_000 {
            let x: Gf8 = s.random_nonzero(i);
            seen[x.0 as usize] = true;
        }
        assert!(!seen[0]);
        assert_eq!(seen.iter().filter(|&&b| b).count(), 255);
    }

    proptest! {
        #[test]
        fn wide_fields_match_oracle(a: u64, b: u64) {
            prop_assert_eq!((Gf64(a) * Gf64(b)).0, oracle_mul(a, b, 64, 0x1B));
            let (a32, b32) = (a & 0xFFFF_FFFF, b & 0xFFFF_FFFF);
            prop_assert_eq!(mul_words(FieldWidth::B32, a32, b32), oracle_mul(a32, b32, 32, 0x8D));
            let (a16, b16) = (a & 0xFFFF, b & 0xFFFF);
            prop_assert_eq!(mul_words(FieldWidth::B16, a16, b16), oracle_mul(a16, b16, 16, 0x2B));
        }

        #[test]
        fn multiplication_commutes(a: u64, b: u64) {
            prop_assert_eq!(Gf64(a) * Gf64(b), Gf64(b) * Gf64(a));
        }
    }
}
