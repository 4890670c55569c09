//! Primes in arithmetic progressions where a word hits a prescribed number of
//! semisimple orbits.

use lieimage::census::{find_dirichlet_prime, verify, DirichletPart, DIRICHLET_CEILING};
use lieimage::gf::Field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let runs = [(DirichletPart::Mixed, 2, 2), (DirichletPart::Mixed, 4, 2), (DirichletPart::Anisotropic, 1, 4), (DirichletPart::Anisotropic, 2, 4)];
    for (part, t, id) in runs {
        let Some(found) = find_dirichlet_prime(part, t, DIRICHLET_CEILING) else {
            println!("{part:?} t={t}: no prime below {DIRICHLET_CEILING}");
            continue;
        };
        let field = Field::with_order(found.p)?;
        let params = format!("part={id},gamma={}", found.gamma);
        let report = verify("dirichlet-counts", field, Some(&params))?;
        println!("{part:?} t={t}: p={} gamma={} pass={}", found.p, found.gamma, report.pass);
        for c in &report.cases {
            if let Some(img) = &c.computed {
                println!("  {}: {}", c.case, img.counts());
            }
        }
    }
    Ok(())
}
