//! Generating pairs of sl2(F_3) and their automorphism orbits.

use lieimage::genset::{is_one_and_a_half_generated, same_tuple_orbit, subalgebra_closure, tuple_orbit_census};
use lieimage::gf::Field;
use lieimage::sl2::Sl2Element;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let field = Field::with_order(3)?;
    let (h, e, f) = (Sl2Element::h(field), Sl2Element::e(field), Sl2Element::f(field));
    println!("dim <e, f> = {}", subalgebra_closure(&[e, f]));
    println!("dim <h, e+f> = {}", subalgebra_closure(&[h, e + f]));
    println!("dim <h, e> = {}", subalgebra_closure(&[h, e]));
    println!("(e,f) ~ (h,e+f): {}", same_tuple_orbit(&[e, f], &[h, e + f]));

    let report = tuple_orbit_census(field, 2)?;
    println!(
        "{} generating pairs, |Aut| = {}, {} orbits, free: {}",
        report.generating_tuples, report.aut_order, report.orbit_count, report.free
    );
    print!("{}", report.representatives_csv()?);

    for q in [3, 5, 7] {
        let r = is_one_and_a_half_generated(Field::with_order(q)?)?;
        println!("q={q}: one-and-a-half generated: {}", r.holds);
    }
    Ok(())
}
