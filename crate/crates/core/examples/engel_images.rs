//! Images of differences of Engel words ad^i - ad^j.

use lieimage::engine::image_reduced;
use lieimage::gf::Field;
use lieimage::lieword::{engel_commutator, engel_diff};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for q in [3u64, 5, 7, 9] {
        let field = Field::with_order(q)?;
        println!("q = {q}");
        for (i, j) in [(2, 2 * q), (1, 2 * q - 1), (q + 1, 2 * q)] {
            let img = image_reduced(&engel_diff(i, j)?, field)?;
            println!("  ad^{i} - ad^{j}: {} ({} elements)", img.counts(), img.element_count());
        }
        for (i, j) in [(2, 1), (3, 1), (4, 1)] {
            let img = image_reduced(&engel_commutator(i, j)?, field)?;
            println!("  [ad^{i}, ad^{j}]: {}", img.counts());
        }
    }
    Ok(())
}
