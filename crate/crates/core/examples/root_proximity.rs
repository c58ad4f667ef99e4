//! Distance from b^q to the nearest p-th root of (b^p - 1)^q + 1.
//!
//! The distance is certified to lie in (0, 1/2] and to be attained by a
//! single root, which is what rules out small solutions for a given b.

use catalan_core::analytic::root_gap::theorem1_sweep;
use catalan_core::analytic::{analytic_upper_bound, theorem1_epsilon_auto, DEFAULT_PRECISION};
use catalan_core::{FieldSpec, QuadInt};

fn main() -> catalan_core::Result<()> {
    let f = FieldSpec::new(-1)?;
    let b = QuadInt::new(f, 2, 0);
    let gap = theorem1_epsilon_auto(&b, 5, 3, DEFAULT_PRECISION)?;
    println!("b = {b}, (p, q) = (5, 3): |eps| in {}", gap.eps_abs);
    println!("  unique root within 1/2: {}, holds: {}", gap.unique_root, gap.holds());
    let ub = analytic_upper_bound(&b.norm(), 5, 3, DEFAULT_PRECISION)?;
    println!("  analytic upper bound:  {}", ub.hi());

    for (p, q) in [(5u32, 3u32), (7, 3), (7, 5)] {
        for d in [-1i64, -3, -7] {
            let f = FieldSpec::new(d)?;
            let s = theorem1_sweep(f, p, q, 60, DEFAULT_PRECISION)?;
            println!(
                "d = {d:>3} ({p},{q}): {}/{} bases certified, max |eps| ~ {:.6}, up to {} bits",
                s.certified, s.checked, s.max_eps, s.max_bits
            );
        }
    }
    Ok(())
}
