//! Arithmetic in GF(2^b) and the counter-based random stream.

use tempmotif::gf::{BinaryField, Gf16, Gf64, Gf8, Role, SeededStream};
use tempmotif::FieldWidth;

fn main() {
    let a = Gf8::from_word(0x53);
    let b = Gf8::from_word(0xca);
    println!("GF(2^8): {a:?} * {b:?} = {:?}", a * b);
    println!("GF(2^8): {a:?} + {a:?} = {:?}", a + a);

    let x = Gf64::from_word(0xdead_beef_0123_4567);
    let inv = x.inverse().expect("nonzero");
    assert_eq!(x * inv, Gf64::ONE);
    println!("GF(2^64): x * x^-1 = {:?}", x * inv);

    // draws depend only on (seed, role, index)
    let stream = SeededStream::new(7);
    let v: Gf16 = stream.nonzero(Role::Vertex, 3, 1);
    let again: Gf16 = SeededStream::new(7).nonzero(Role::Vertex, 3, 1);
    assert_eq!(v, again);
    println!("vertex value (seed 7, u=3, shade 1): {v:?}");

    for width in [FieldWidth::B8, FieldWidth::B16, FieldWidth::B32, FieldWidth::B64] {
        println!("{width}: false-negative bound at k=10 is {:.3e}", width.false_negative_bound(10));
    }
}
