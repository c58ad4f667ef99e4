//! Certified bounds on the tail of the binomial series (1 + z)^a.
//!
//! For each sample the chain |E1| <= E2 <= majorant is decided with interval
//! arithmetic, doubling the precision when the enclosures overlap.

use catalan_core::analytic::tails::{random_grid, ratio, sweep, tail_bounds_auto};
use catalan_core::analytic::DEFAULT_PRECISION;

fn main() -> catalan_core::Result<()> {
    let a = ratio(7, 3);
    for (re, im, m) in [(ratio(1, 2), ratio(0, 1), 3), (ratio(-3, 5), ratio(2, 5), 5), (ratio(0, 1), ratio(9, 10), 12)] {
        let (tb, bits) = tail_bounds_auto(&a, &re, &im, m, DEFAULT_PRECISION)?;
        println!("a = {a}, z = {re} + {im}i, m = {m}  ({bits} bits)");
        println!("  |E1| <= {}", tb.e1_bound.hi());
        println!("  E2    = {}", tb.e2_value);
        println!("  bound = {}", tb.lemma6_bound);
        println!("  chain certified: {}", tb.chain_certified());
    }

    let samples = random_grid(200, 42);
    let s = sweep(&samples, DEFAULT_PRECISION)?;
    println!(
        "\nseeded grid: {}/{} certified, {} inconclusive, {} refuted, at most {} doublings",
        s.certified,
        s.points,
        s.inconclusive.len(),
        s.refuted.len(),
        s.max_doublings
    );
    Ok(())
}
