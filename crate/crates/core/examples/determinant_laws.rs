//! Closed-form determinant laws against full evaluation.

use lieimage::engine::{closed_form_spectrum, det_spectrum, Strategy};
use lieimage::gf::Field;
use lieimage::lieword::FamilyParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let families = [
        ("wn", "i=4,j=2,pairs=2:1"),
        ("wn", "i=5,j=1,pairs=2:3"),
        ("wmn", "alphas=3,3,betas=1,1,pairs=1:4"),
        ("w0mn", "alphas=3,3,4,betas=1,1,2,pairs=1:2,alpha0=3,beta0=1,pair0=1:2"),
    ];
    for q in [5u64, 7, 9] {
        let field = Field::with_order(q)?;
        for (name, params) in families {
            let p = FamilyParams::parse(name, params)?;
            let evaluated = det_spectrum(&p.build()?, field, Strategy::Reduced)?;
            let law = closed_form_spectrum(&p, field)?;
            let agree = evaluated.values() == law;
            println!("q={q} {name} {p}: {} det values, law agrees: {agree}", law.len());
        }
    }
    Ok(())
}
