//! How small rational primes factor in each field, with the HNF of every prime ideal.

use catalan_core::ideal::primes_above;
use catalan_core::{principal_ideal, split_type, FieldSpec, QuadInt};

fn main() -> catalan_core::Result<()> {
    let primes = [2u64, 3, 5, 7, 11, 13];
    print!("{:>6}", "d");
    for p in primes {
        print!("{p:>10}");
    }
    println!();
    for f in FieldSpec::all() {
        print!("{:>6}", f.d());
        for p in primes {
            print!("{:>10}", split_type(f, p)?.kind());
        }
        println!();
    }

    // The factorisation of 3 is what the gcd and denominator arguments lean on.
    println!("\nprimes above 3:");
    for f in FieldSpec::all() {
        let ps = primes_above(f, 3)?;
        let shown: Vec<String> = ps.iter().map(|p| format!("{p} (norm {})", p.norm())).collect();
        println!("  d = {:>4}: {}", f.d(), shown.join(", "));
    }

    let f = FieldSpec::new(-11)?;
    let ps = primes_above(f, 3)?;
    let product = ps[0].product(&ps[1])?;
    println!("\nin d = -11 the two primes multiply back to {product}");
    assert_eq!(product, principal_ideal(&QuadInt::from_int(f, 3))?);
    Ok(())
}
