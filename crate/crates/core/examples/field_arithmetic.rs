//! Arithmetic in GF(9) and GF(7): inverses, powers and the quadratic character.

use lieimage::gf::Field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f9 = Field::new(3, 2, Some(&[1, 0, 1]))?;
    println!("GF(9) with modulus x^2 + 1");
    let i = f9.parse_element("(0,1)")?;
    println!("i = {i}, i^2 = {}, i^-1 = {}", i * i, i.inv()?);
    for x in f9.elements().filter(|x| !x.is_zero()) {
        println!("  {x:>7}  eta = {:>2}", x.quadratic_character());
    }

    let f7 = Field::with_order(7)?;
    let squares: Vec<_> = f7.elements().filter(|x| !x.is_zero() && x.is_square()).collect();
    println!("nonzero squares mod 7: {squares:?}");
    println!("-1 is a square mod 7: {}", f7.minus_one_is_square());
    println!("3^100 mod 7 = {}", f7.from_int(3).pow(100));
    Ok(())
}
