//! Parsing, rendering and evaluating Lie words.

use lieimage::gf::Field;
use lieimage::lieword::{parse, w_n, WnParams};
use lieimage::sl2::Sl2Element;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w = parse("[ad(x1, 3, x2) - ad(x1,1,x2), [x1, x2]]")?;
    println!("canonical: {w}");
    println!("arity {}, size {}", w.arity(), w.size());

    let field = Field::with_order(5)?;
    let (h, e) = (Sl2Element::h(field), Sl2Element::e(field));
    println!("w(h, e) = {}", w.evaluate(&[h, e])?);

    let wn = w_n(&WnParams { i: 4, j: 2, pairs: vec![(2, 1)] })?;
    println!("w_1 with i=4, j=2, pairs (2,1): {wn}");

    match parse("[x1, x2") {
        Ok(_) => unreachable!(),
        Err(e) => println!("error: {e}"),
    }
    Ok(())
}
