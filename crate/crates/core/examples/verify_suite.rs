//! Runs every verification suite over a list of fields and prints a summary.

use lieimage::census::{verify, CensusError, VERIFY_IDS};
use lieimage::gf::Field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let qs: Vec<u64> = match std::env::args().nth(1) {
        Some(list) => list.split(',').map(str::parse).collect::<Result<_, _>>()?,
        None => vec![3, 5, 7, 11],
    };
    for q in qs {
        let field = Field::with_order(q)?;
        for id in VERIFY_IDS {
            match verify(id, field, None) {
                Ok(r) => {
                    println!("{} {id} q={q}", if r.pass { "PASS" } else { "FAIL" });
                    for c in r.failed_cases() {
                        println!("     {}: {}", c.case, c.notes.join("; "));
                    }
                }
                Err(CensusError::InapplicableAtQ { .. }) => {}
                Err(e) => println!("ERR  {id} q={q}: {e}"),
            }
        }
    }
    Ok(())
}
