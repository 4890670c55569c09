//! Closed-form counts next to brute-force enumeration.

use lieimage::census::{n_s, s_alpha_table};
use lieimage::gf::Field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>4}  {:>16}  {:>5}  N_S agree", "q", "s_0..s_4", "sum");
    for q in [3u64, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29] {
        let field = Field::with_order(q)?;
        let s = s_alpha_table(field);
        let ns_ok = field
            .elements()
            .filter(|a| !a.is_zero())
            .all(|a| n_s(a).map(|r| r.agree).unwrap_or(false));
        println!("{q:>4}  {:>16}  {:>5}  {ns_ok}", format!("{:?}", s.oracle), s.weighted_sum);
    }
    Ok(())
}
