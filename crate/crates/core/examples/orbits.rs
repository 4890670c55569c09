//! Automorphism orbits of sl2(F_q): labels, representatives and sizes.

use lieimage::census::orbit_census;
use lieimage::gf::Field;
use lieimage::sl2::{all_labels, classify, Sl2Element};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(7);
    let field = Field::with_order(q)?;
    let mut total = 0;
    for label in all_labels(field) {
        let rep = label.representative(field);
        assert_eq!(classify(&rep), label);
        total += label.orbit_size(q);
        println!("{label:<24} rep {rep:<12} size {}", label.orbit_size(q));
    }
    assert_eq!(total, q.pow(3));
    let report = orbit_census(field);
    println!("orbit counts {:?} (enumerated {:?})", report.formula, report.oracle);
    let x = Sl2Element::from_ints(field, 1, 2, 3);
    println!("{x} has det {} and lies in {}", x.det(), classify(&x));
    Ok(())
}
