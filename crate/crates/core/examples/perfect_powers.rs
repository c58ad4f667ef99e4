//! Detecting q-th powers exactly, including elements far beyond f64 range.

use catalan_core::criteria::qth_roots;
use catalan_core::{is_perfect_qth_power, FieldSpec, QuadInt};
use num_bigint::BigInt;

fn main() -> catalan_core::Result<()> {
    let f = FieldSpec::new(-43)?;
    let r = QuadInt::new(f, BigInt::from(10).pow(40) + 3, BigInt::from(-7).pow(33));
    for q in [3u32, 5, 7] {
        let z = r.pow(q);
        let root = is_perfect_qth_power(&z, q).expect("constructed as a power");
        println!("q = {q}: z has {} digits in its norm, root recovered: {}", z.norm().to_string().len(), root == r);
        let off = &z + &QuadInt::one(f);
        println!("        z + 1 is also a perfect power: {}", is_perfect_qth_power(&off, q).is_some());
    }

    // In Q(sqrt(-3)) cube roots come in threes, one per cube root of unity.
    let g = FieldSpec::new(-3)?;
    let z = QuadInt::new(g, 2, 1).pow(3);
    println!("\ncube roots of {z} in Q(sqrt(-3)):");
    for root in qth_roots(&z, 3) {
        println!("  {root}");
    }
    Ok(())
}
