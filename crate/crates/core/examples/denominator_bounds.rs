//! Denominator bounds for the binomial expansion used against large solutions.
//!
//! Scans every prime pair p > q >= 3 for the sign of the exponent in the
//! generic bound and shows the refined bounds for the pairs it leaves open.

use catalan_core::analytic::denominator::{
    approx, cassels_lower_bound, q3p5_expression, theorem3_bound, theorem3_exponent_scan, SPECIAL_PAIRS,
};
use catalan_core::analytic::DEFAULT_PRECISION;

fn main() -> catalan_core::Result<()> {
    let prec = DEFAULT_PRECISION;
    let scan = theorem3_exponent_scan(97, 97, prec)?;
    println!("pairs with p, q <= 97: {}", scan.pairs_checked);
    println!("non-negative exponent with q > 5: {}", scan.violations_q_gt5.len());
    println!("pairs needing the refined bound: {:?}", scan.exceptional);
    println!("refined bound not below 1: {:?}", scan.refined_not_below_one);

    println!();
    for (p, q) in SPECIAL_PAIRS {
        let x = cassels_lower_bound(p, q, prec)?;
        let b = theorem3_bound(p, q, &x, prec)?;
        println!(
            "({p},{q}): t = {}, exponent = {}, |x| >= {:.3}, bound ~ {:.6}, below 1: {}",
            b.t,
            b.exponent,
            approx(&x),
            approx(&b.final_bound),
            b.below_one()
        );
    }
    println!("\nq = 3, p = 5 closed expression ~ {:.6}", approx(&q3p5_expression(prec)?));
    Ok(())
}
