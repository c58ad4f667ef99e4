//! Exact arithmetic in the ring of integers of each class-number-one field.

use catalan_core::{field_spec, units, FieldSpec, QuadInt};

fn main() -> catalan_core::Result<()> {
    for f in FieldSpec::all() {
        let (c0, c1) = f.omega_relation();
        println!("d = {:>4}  disc = {:>4}  w^2 = {c0} + {c1} w  units = {}", f.d(), f.disc(), f.unit_count());
    }

    let f = field_spec(-7)?;
    let x = QuadInt::new(f, 3, 2);
    let y = QuadInt::new(f, -1, 5);
    println!("\nx = {x}, y = {y}");
    println!("x * y     = {}", &x * &y);
    println!("N(x y)    = {} = N(x) N(y) = {} * {}", (&x * &y).norm(), x.norm(), y.norm());
    println!("x^7       = {}", x.pow(7));
    println!("tr(x)     = {}", x.trace());
    println!("x * conj  = {}", &x * &x.conj());

    let prod = &x * &y;
    match x.divides(&prod)? {
        Some(k) => println!("x | x y with quotient {k}"),
        None => unreachable!(),
    }
    println!("x | y ? {}", x.divides(&y)?.is_some());

    // Parsing round-trips the display form.
    let parsed: QuadInt = x.to_string().parse()?;
    assert_eq!(parsed, x);

    let g = field_spec(-3)?;
    println!("\nunits of Q(sqrt(-3)):");
    for u in units(g).iter() {
        println!("  {u}  (u^6 = {})", u.pow(6));
    }
    Ok(())
}
