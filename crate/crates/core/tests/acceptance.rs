//! Acceptance checks. Each test prints one PASS/FAIL line to stderr (outside
//! the harness capture) before asserting.

use std::collections::BTreeSet;
use std::io::Write;
use std::time::Instant;

use lieimage::census::{find_dirichlet_prime, missed_values_count, n_s, s_alpha_table, DirichletPart, DIRICHLET_CEILING};
use lieimage::engine::{closed_form_spectrum, det_spectrum, image_bruteforce, image_reduced, ImageDescriptor, Strategy};
use lieimage::genset::{is_one_and_a_half_generated, same_tuple_orbit, tuple_orbit_census};
use lieimage::gf::{Field, FieldElement};
use lieimage::lieword::{engel_commutator, engel_diff, parse, search_params, FamilyParams, Goal, LieWord, SearchBudget};
use lieimage::sl2::{ad_pow, ad_pow_iterated, all_labels, OrbitLabel, Sl2Element};

const QS: [u64; 6] = [3, 5, 7, 9, 11, 13];

fn fq(q: u64) -> Field {
    Field::with_order(q).unwrap()
}

fn verdict(n: u32, name: &str, failures: &[String]) {
    let ok = failures.is_empty();
    let detail = if ok { String::new() } else { format!(": {}", failures.join("; ")) };
    let line = format!("criterion {n:>2} {} {name}{detail}", if ok { "PASS" } else { "FAIL" });
    let _ = writeln!(std::io::stderr(), "{line}");
    assert!(ok, "{line}");
}

fn labels(items: impl IntoIterator<Item = OrbitLabel>) -> BTreeSet<OrbitLabel> {
    items.into_iter().collect()
}

fn semisimple_missing(img: &ImageDescriptor) -> Vec<OrbitLabel> {
    img.missing().into_iter().filter(|l| l.is_semisimple()).collect()
}

fn is_split(l: &OrbitLabel) -> bool {
    matches!(l, OrbitLabel::Split(_))
}

fn is_aniso(l: &OrbitLabel) -> bool {
    matches!(l, OrbitLabel::Anisotropic(_))
}

#[test]
fn c01_nilpotent_image() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for q in QS {
        let f = fq(q);
        let img = image_reduced(&engel_diff(2, 2 * q).unwrap(), f).unwrap();
        if img.labels != labels([OrbitLabel::Zero, OrbitLabel::Nilpotent]) {
            bad.push(format!("q={q}: {}", img.counts()));
        }
        if img.element_count() != q * q {
            bad.push(format!("q={q}: {} elements", img.element_count()));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 5.0 {
        bad.push(format!("took {secs:.1} s"));
    }
    verdict(1, "nilpotent image of ad^2 - ad^2q", &bad);
}

#[test]
fn c02_split_plus_nilpotent() {
    let mut bad = Vec::new();
    for q in QS {
        let f = fq(q);
        let img = image_reduced(&engel_diff(1, 2 * q - 1).unwrap(), f).unwrap();
        let want = labels(all_labels(f).into_iter().filter(|l| !is_aniso(l)));
        if img.labels != want || img.counts().split as u64 != (q - 1) / 2 {
            bad.push(format!("q={q}: {}", img.counts()));
        }
    }
    verdict(2, "split and nilpotent image of ad - ad^(2q-1)", &bad);
}

#[test]
fn c03_all_semisimple() {
    let mut bad = Vec::new();
    for q in QS {
        let f = fq(q);
        let img = image_reduced(&engel_diff(q + 1, 2 * q).unwrap(), f).unwrap();
        let all_ss = all_labels(f).into_iter().filter(|l| l.is_semisimple()).all(|l| img.contains(&l));
        if !all_ss || img.contains(&OrbitLabel::Nilpotent) || img.counts().semisimple() as u64 != q - 1 {
            bad.push(format!("q={q}: {}", img.counts()));
        }
    }
    verdict(3, "all-semisimple image of ad^(q+1) - ad^2q", &bad);
}

#[test]
fn c04_engel_commutator_trichotomy() {
    let mut bad = Vec::new();
    for q in [3u64, 5, 7] {
        let f = fq(q);
        let all = labels(all_labels(f));
        for i in 2..=6u64 {
            for j in 1..i {
                let want = if (i + j) % 2 == 0 {
                    labels([OrbitLabel::Zero])
                } else if i + j == 3 {
                    all.clone()
                } else {
                    labels(all.iter().copied().filter(|l| *l != OrbitLabel::Nilpotent))
                };
                let img = image_reduced(&engel_commutator(i, j).unwrap(), f).unwrap();
                if img.labels != want {
                    bad.push(format!("q={q} i={i} j={j}: {}", img.counts()));
                }
            }
        }
    }
    verdict(4, "commutators of Engel words", &bad);
}

#[test]
fn c05_wn_determinant_law() {
    let sets = ["i=4,j=2,pairs=2:1", "i=3,j=1,pairs=1:2,2:3", "i=6,j=2,pairs=4:1,1:2", "i=5,j=1,pairs=2:3"];
    let mut bad = Vec::new();
    for q in [3u64, 5, 7] {
        let f = fq(q);
        for s in sets {
            let p = FamilyParams::parse("wn", s).unwrap();
            let w = p.build().unwrap();
            let evaluated = det_spectrum(&w, f, Strategy::Reduced).unwrap().values();
            let law = closed_form_spectrum(&p, f).unwrap();
            if evaluated != law {
                bad.push(format!("q={q} {s}: evaluated {evaluated:?}, law {law:?}"));
            }
            if image_reduced(&w, f).unwrap().contains(&OrbitLabel::Nilpotent) {
                bad.push(format!("q={q} {s}: nilpotent in image"));
            }
        }
    }
    verdict(5, "w_n determinant law", &bad);
}

fn missed_orbit_image(q: u64) -> ImageDescriptor {
    let p = search_params(Goal::MissedOrbits, q, SearchBudget::for_q(q)).unwrap();
    image_reduced(&p.build().unwrap(), fq(q)).unwrap()
}

#[test]
fn c06_missed_orbit_counts() {
    let mut bad = Vec::new();
    for (q, want) in [(11u64, 2usize), (7, 2), (23, 6)] {
        let start = Instant::now();
        let img = missed_orbit_image(q);
        let secs = start.elapsed().as_secs_f64();
        let missed = semisimple_missing(&img);
        let split = missed.iter().filter(|l| is_split(l)).count();
        if missed.len() != want || split * 2 != want || img.contains(&OrbitLabel::Nilpotent) {
            bad.push(format!("q={q}: missed {missed:?}"));
        }
        if q == 23 && secs >= 30.0 {
            bad.push(format!("q=23 took {secs:.1} s"));
        }
    }
    verdict(6, "missed semisimple orbits for q = 3 mod 4", &bad);
}

#[test]
fn c07_q29_example() {
    let mut bad = Vec::new();
    let f = fq(29);
    // Independent count of the value set of x²(1−4x)²y⁷.
    let mut values = BTreeSet::new();
    for x in f.elements() {
        let t = x * (f.one() - f.from_int(4) * x);
        for y in f.elements() {
            values.insert(t * t * y.pow(7));
        }
    }
    if 29 - values.len() != 4 || missed_values_count(f, 7) != 4 {
        bad.push(format!("missed values {} / {}", 29 - values.len(), missed_values_count(f, 7)));
    }
    let missed = semisimple_missing(&missed_orbit_image(29));
    if missed.len() != 4 {
        bad.push(format!("word misses {missed:?}"));
    }
    verdict(7, "q = 29: four missed values and orbits", &bad);
}

fn odd_prime_powers(max: u64) -> Vec<u64> {
    (3..=max).step_by(2).filter(|&q| Field::with_order(q).is_ok()).collect()
}

#[test]
fn c08_counting_lemmas() {
    let mut bad = Vec::new();
    for q in odd_prime_powers(101) {
        let f = fq(q);
        for a in f.elements().filter(|a| !a.is_zero()) {
            let r = n_s(a).unwrap();
            if !r.agree {
                bad.push(format!("q={q} N_S({a}): {:?} vs {:?}", r.formula, r.oracle));
            }
        }
        let s = s_alpha_table(f);
        if !s.agree || s.weighted_sum != q as i64 {
            bad.push(format!("q={q} s_alpha {:?} vs {:?}", s.formula, s.oracle));
        }
    }
    verdict(8, "N_S and s_alpha counts for odd q <= 101", &bad);
}

fn odd_gamma_image(q: u64, gamma: u64, c: u64) -> Result<(LieWord, ImageDescriptor), String> {
    let p = search_params(Goal::OddGamma { gamma, c }, q, SearchBudget::for_q(q)).map_err(|e| e.to_string())?;
    let w = p.build().unwrap();
    let img = image_reduced(&w, fq(q)).unwrap();
    Ok((w, img))
}

fn nonsquare_root(d: FieldElement) -> FieldElement {
    d.field().elements().find(|x| *x * *x == d && !x.is_square()).unwrap()
}

#[test]
fn c09_odd_gamma_orbits() {
    let mut bad = Vec::new();
    match odd_gamma_image(7, 3, 2) {
        Ok((_, img)) => {
            let k = img.counts();
            if (k.split, k.anisotropic, k.nilpotent) != (1, 1, 0) {
                bad.push(format!("q=7 c=2: {k}"));
            }
        }
        Err(e) => bad.push(format!("q=7 c=2: {e}")),
    }
    match odd_gamma_image(7, 3, 6) {
        Ok((_, img)) => {
            let k = img.counts();
            if (k.split, k.anisotropic, k.nilpotent) != (0, 1, 0) {
                bad.push(format!("q=7 c=6: {k}"));
            }
        }
        Err(e) => bad.push(format!("q=7 c=6: {e}")),
    }
    // Scaled word 2^{−(γ−3)/2}·λ·w with λ² the target determinant.
    for q in [7u64, 11] {
        let f = fq(q);
        let gamma = (q - 1) / 2;
        let (base, _) = odd_gamma_image(q, gamma, q - 1).unwrap();
        for target in all_labels(f).into_iter().filter(is_aniso) {
            let lambda = nonsquare_root(target.det().unwrap());
            let scale = f.from_int(2).inv().unwrap().pow((gamma - 3) / 2) * lambda;
            let img = image_reduced(&LieWord::scalar(scale.code() as i64, base.clone()), f).unwrap();
            if img.labels != labels([OrbitLabel::Zero, target]) {
                let got: Vec<String> = img.labels.iter().filter(|l| l.is_semisimple()).map(|l| l.to_string()).collect();
                bad.push(format!("q={q} target {target}: got {}", got.join(", ")));
            }
        }
    }
    verdict(9, "odd gamma orbit counts and single anisotropic orbit", &bad);
}

#[test]
fn c10_even_gamma_split_orbits() {
    let mut bad = Vec::new();
    let mut found = None;
    'outer: for q in [3u64, 5, 7, 9, 11, 13, 17, 19] {
        for gamma in (2..q).step_by(2).filter(|g| (q - 1) % g == 0) {
            if let Ok(p) = search_params(Goal::EvenGamma { gamma }, q, SearchBudget::for_q(q)) {
                found = Some((q, gamma, p));
                break 'outer;
            }
        }
    }
    match found {
        None => bad.push("search found no satisfiable (q, gamma) with gamma even for q <= 19".into()),
        Some((q, gamma, p)) => {
            let f = fq(q);
            let w = p.build().unwrap();
            let img = image_reduced(&w, f).unwrap();
            let k = img.counts();
            if k.split as u64 != (q - 1) / gamma || k.anisotropic + k.nilpotent != 0 {
                bad.push(format!("q={q} gamma={gamma}: {k}"));
            }
            for target in all_labels(f).into_iter().filter(is_split) {
                let lambda = f.elements().find(|x| *x * *x == -target.det().unwrap()).unwrap();
                let scaled = LieWord::scalar((f.from_int(2) * lambda).code() as i64, w.clone());
                if image_reduced(&scaled, f).unwrap().labels != labels([OrbitLabel::Zero, target]) {
                    bad.push(format!("q={q}: scaling misses {target}"));
                }
            }
        }
    }
    verdict(10, "even gamma split-only orbits", &bad);
}

#[test]
fn c11_q3_two_orbits() {
    let mut bad = Vec::new();
    let f = fq(3);
    let want = labels(all_labels(f).into_iter().filter(|l| *l != OrbitLabel::Nilpotent));
    let mut checked = 0;
    for i in 4..=10u64 {
        for j in 3..i {
            if (i - j) % 4 != 2 {
                continue;
            }
            checked += 1;
            let img = image_reduced(&engel_diff(i, j).unwrap(), f).unwrap();
            if img.labels != want {
                bad.push(format!("i={i} j={j}: {}", img.counts()));
            }
        }
    }
    if checked == 0 {
        bad.push("no pairs checked".into());
    }
    verdict(11, "q = 3 two-orbit words", &bad);
}

#[test]
fn c12_dirichlet_counts() {
    let mut bad = Vec::new();
    for t in [2u64, 4] {
        let Some(d) = find_dirichlet_prime(DirichletPart::Mixed, t, DIRICHLET_CEILING) else {
            bad.push(format!("part 2 t={t}: no prime"));
            continue;
        };
        match odd_gamma_image(d.p, d.gamma, 2) {
            Ok((_, img)) => {
                let k = img.counts();
                if (k.split as u64, k.anisotropic as u64, k.nilpotent) != (t / 2, t / 2, 0) {
                    bad.push(format!("part 2 t={t} p={}: {k}", d.p));
                }
            }
            Err(e) => bad.push(format!("part 2 t={t} p={}: {e}", d.p)),
        }
    }
    for t in [1u64, 2] {
        match find_dirichlet_prime(DirichletPart::Split, t, DIRICHLET_CEILING) {
            None => bad.push(format!("part 3 t={t}: no prime")),
            Some(d) => match search_params(Goal::EvenGamma { gamma: d.gamma }, d.p, SearchBudget::for_q(d.p)) {
                Ok(p) => {
                    let k = image_reduced(&p.build().unwrap(), fq(d.p)).unwrap().counts();
                    if (k.split as u64, k.anisotropic, k.nilpotent) != (t, 0, 0) {
                        bad.push(format!("part 3 t={t} p={}: {k}", d.p));
                    }
                }
                Err(e) => bad.push(format!("part 3 t={t} p={} gamma={}: {e}", d.p, d.gamma)),
            },
        }
        let Some(d) = find_dirichlet_prime(DirichletPart::Anisotropic, t, DIRICHLET_CEILING) else {
            bad.push(format!("part 4 t={t}: no prime"));
            continue;
        };
        match odd_gamma_image(d.p, d.gamma, d.p - 1) {
            Ok((_, img)) => {
                let k = img.counts();
                if (k.split, k.anisotropic as u64, k.nilpotent) != (0, t, 0) {
                    bad.push(format!("part 4 t={t} p={}: {k}", d.p));
                }
            }
            Err(e) => bad.push(format!("part 4 t={t} p={}: {e}", d.p)),
        }
    }
    verdict(12, "orbit counts along prime progressions", &bad);
}

const CORPUS: [&str; 12] = [
    "[x1, x2]",
    "ad(x1, 2, x2)",
    "ad(x1, 3, x2) - ad(x1, 1, x2)",
    "ad(x1, 2, x2) - ad(x1, 6, x2)",
    "[ad(x1, 2, x2), ad(x1, 1, x2)]",
    "[ad(x1, 4, x2) - ad(x1, 2, x2), [ad(x1, 2, x2), ad(x1, 1, x2)]]",
    "[x1, [x1, x2]] + [x2, [x2, x1]]",
    "2*x1 + [x1, x2]",
    "ad(x2, 3, x1) + ad(x1, 3, x2)",
    "[[x1, x2], ad(x1, 2, x2)]",
    "ad(x1 + x2, 2, x1 - x2)",
    "x1 - 3*[x2, [x1, x2]]",
];

#[test]
fn c13_strategy_equivalence() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for q in [3u64, 5] {
        let f = fq(q);
        for text in CORPUS {
            let w = parse(text).unwrap();
            let brute = image_bruteforce(&w, f).unwrap();
            let reduced = image_reduced(&w, f).unwrap();
            if brute != reduced {
                bad.push(format!("q={q} {text}"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 60.0 {
        bad.push(format!("took {secs:.1} s"));
    }
    verdict(13, "brute force and reduced images agree", &bad);
}

#[test]
fn c14_ad_pow_fast_path() {
    let mut bad = 0u64;
    let f = fq(5);
    for a in Sl2Element::all(f) {
        for x in Sl2Element::all(f) {
            for n in 1..=10 {
                if ad_pow(&a, n, &x).unwrap() != ad_pow_iterated(&a, n, &x) {
                    bad += 1;
                }
            }
        }
    }
    let failures = if bad == 0 { vec![] } else { vec![format!("{bad} mismatches")] };
    verdict(14, "closed-form ad powers over sl2(F_5)", &failures);
}

#[test]
fn c15_generation() {
    let mut bad = Vec::new();
    for q in [3u64, 5, 7] {
        if !is_one_and_a_half_generated(fq(q)).unwrap().holds {
            bad.push(format!("q={q} not one-and-a-half generated"));
        }
    }
    let f = fq(3);
    let r = tuple_orbit_census(f, 2).unwrap();
    if r.aut_order != 24 || r.generating_tuples % 24 != 0 || !r.free {
        bad.push(format!("q=3: {} generating, |Aut| {}, free {}", r.generating_tuples, r.aut_order, r.free));
    }
    let (h, e, ff) = (Sl2Element::h(f), Sl2Element::e(f), Sl2Element::f(f));
    if same_tuple_orbit(&[e, ff], &[h, e + ff]) {
        bad.push("(e,f) and (h,e+f) share an orbit".into());
    }
    verdict(15, "generation of sl2(q)", &bad);
}
