//! gcd((x^p +- 1)/(x +- 1), x +- 1) is the unit ideal or divides p.
//!
//! Also finds small x for which the gcd is a proper divisor of p, which is
//! only possible when p is not inert.

use catalan_core::criteria::{lemma4_sweep, remark1_witness};
use catalan_core::search::random_elements;
use catalan_core::{lemma4_gcd, split_type, FieldSpec, GcdSign, QuadInt};

fn main() -> catalan_core::Result<()> {
    let f = FieldSpec::new(-1)?;
    let x = QuadInt::new(f, 2, 1);
    for p in [3u64, 5, 7] {
        for sign in [GcdSign::Minus, GcdSign::Plus] {
            let g = lemma4_gcd(&x, p, sign)?;
            println!("x = {x}, p = {p}, sign {sign}: gcd = {g} (norm {})", g.norm());
        }
    }

    println!();
    for f in FieldSpec::all() {
        let triples: Vec<_> = random_elements(f, 2000, 1_000_000, 7)
            .into_iter()
            .enumerate()
            .map(|(i, x)| {
                let p = [3u64, 5, 7, 11, 13][i % 5];
                let sign = if i % 2 == 0 { GcdSign::Minus } else { GcdSign::Plus };
                (x, p, sign)
            })
            .collect();
        let s = lemma4_sweep(&triples)?;
        println!("d = {:>4}: {} checked, {} degenerate, {} failures", f.d(), s.checked, s.degenerate, s.failures.len());
    }

    println!("\nproper divisors of p in Q(i):");
    for p in [5u64, 13] {
        let kind = split_type(f, p)?.kind();
        match remark1_witness(f, p, 200)? {
            Some(w) => println!("  p = {p} ({kind}): x = {}, gcd = {} of norm {}", w.x, w.gcd, w.gcd.norm()),
            None => println!("  p = {p} ({kind}): none up to norm 200"),
        }
    }
    Ok(())
}
