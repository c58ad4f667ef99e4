//! Exhaustive search for x^p - y^q = 1 by increasing norm of x.
//!
//! Q(sqrt(-3)) has the unit solutions x = w, y = -w for (7, 5), which the
//! report flags as inconsistent with the divisibility conditions that hold
//! for every solution with non-unit x.

use catalan_core::search::{search_catalan_with, SearchOptions};
use catalan_core::{search_catalan, search_equal_exponent, FieldSpec};

fn main() -> catalan_core::Result<()> {
    let n_max = 2000;
    for d in [-1i64, -3, -7, -11] {
        let f = FieldSpec::new(d)?;
        for (p, q) in [(5u64, 3u64), (7, 3), (7, 5)] {
            let r = search_catalan(f, p, q, n_max)?;
            println!(
                "d = {d:>3} ({p},{q}): {} scanned, {} solutions, {} near misses",
                r.candidates_scanned,
                r.solutions.len(),
                r.near_misses.len()
            );
            for s in &r.solutions {
                let consistent = s.cassels.as_ref().map_or(true, |c| c.consistent());
                println!("    x = {}, y = {}, consistent: {consistent}", s.x, s.y);
            }
        }
    }

    let f = FieldSpec::new(-3)?;
    let r = search_equal_exponent(f, 5, n_max)?;
    println!("\nx^5 - y^5 = 1 in d = -3: {} solutions", r.solutions.len());

    // A checkpointed run can be interrupted and resumed with the same result.
    let dir = std::env::temp_dir().join(format!("catalan-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let opts = SearchOptions { shards: 8, checkpoint: Some(dir.join("scan.txt")) };
    let first = search_catalan_with(f, 5, 3, 500, &opts)?;
    let again = search_catalan_with(f, 5, 3, 1000, &opts)?;
    println!("checkpoint: first pass {} scanned, resume skipped {}", first.candidates_scanned, again.resumed);
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
