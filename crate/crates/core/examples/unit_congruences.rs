//! Units congruent to 1 modulo a prime above an odd prime p.
//!
//! Only Q(sqrt(-3)) has one: w^2 - 1 is an associate of sqrt(-3), so the
//! cube roots of unity are congruent to 1 modulo the prime above 3.

use catalan_core::{lemma2_verify, FieldSpec};

fn main() -> catalan_core::Result<()> {
    let p_max = 97;
    for f in FieldSpec::all() {
        let r = lemma2_verify(f, p_max)?;
        print!("d = {:>4}: {:>3} pairs checked, ", f.d(), r.checked);
        if r.holds() {
            println!("no unit other than 1 is congruent to 1");
        } else {
            println!("{} witness(es)", r.witnesses.len());
            for w in &r.witnesses {
                println!("    {} = 1 mod {} above {}", w.unit, w.prime, w.p);
            }
        }
    }
    Ok(())
}
