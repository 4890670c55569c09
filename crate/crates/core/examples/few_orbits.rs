//! Words whose image meets few semisimple orbits, and isolating one orbit by
//! scaling.

use lieimage::engine::image_reduced;
use lieimage::gf::Field;
use lieimage::lieword::{search_params, Goal, LieWord, SearchBudget};
use lieimage::sl2::{all_labels, OrbitLabel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = 11;
    let field = Field::with_order(q)?;
    let gamma = 5;
    for c in [2, q - 1] {
        let p = search_params(Goal::OddGamma { gamma, c }, q, SearchBudget::for_q(q))?;
        let img = image_reduced(&p.build()?, field)?;
        println!("gamma={gamma} c={c}: {p}");
        println!("  {}", img.counts());
    }

    // Scaling the c = q-1 word by 2λ, λ² the target determinant.
    let base = search_params(Goal::OddGamma { gamma, c: q - 1 }, q, SearchBudget::for_q(q))?.build()?;
    for label in all_labels(field).into_iter().filter(|l| matches!(l, OrbitLabel::Anisotropic(_))) {
        let d = label.det().unwrap();
        let lambda = field.elements().find(|x| *x * *x == d && !x.is_square()).unwrap();
        let scale = (field.from_int(2) * lambda).code() as i64;
        let img = image_reduced(&LieWord::scalar(scale, base.clone()), field)?;
        let hit: Vec<_> = img.labels.iter().filter(|l| l.is_semisimple()).collect();
        println!("target {label}: scale {scale} gives {hit:?}");
    }
    Ok(())
}
