//! Words that miss semisimple orbits of both types.

use lieimage::census::missed_values_count;
use lieimage::engine::image_reduced;
use lieimage::gf::Field;
use lieimage::lieword::{search_params, Goal, SearchBudget};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for q in [7u64, 11, 19, 23, 29] {
        let field = Field::with_order(q)?;
        let params = search_params(Goal::MissedOrbits, q, SearchBudget::for_q(q))?;
        let img = image_reduced(&params.build()?, field)?;
        let missed: Vec<_> = img.missing().into_iter().filter(|l| l.is_semisimple()).collect();
        println!("q={q:<3} {params}");
        println!("       image {}", img.counts());
        println!("       missed {} semisimple orbits: {:?}", missed.len(), missed);
    }
    let f29 = Field::with_order(29)?;
    println!("x^2(1-4x)^2 y^7 misses {} values of F_29", missed_values_count(f29, 7));
    Ok(())
}
