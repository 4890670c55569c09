//! Orbit and value counts with brute-force oracles, and the verification
//! suites that compare computed images with the ones predicted in closed form.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::engine::{self, EngineError, ImageDescriptor, KindCounts, Strategy};
use crate::gf::{is_prime, Field, FieldElement, GfError};
use crate::lieword::{
    engel_commutator, engel_diff, search_params, FamilyParams, Goal, LieWord, SearchBudget, WordError,
};
use crate::sl2::{self, OrbitLabel, Sl2Element};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("N_S(a) needs a nonzero argument")]
    ZeroArgument,
    #[error("{id} does not apply at q = {q}: {reason}")]
    InapplicableAtQ { id: String, q: u64, reason: String },
    #[error("unknown verification id {0:?}")]
    UnknownId(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// A closed-form count next to its oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountingReport {
    pub q: u64,
    pub formula: Vec<i64>,
    pub oracle: Vec<i64>,
    pub agree: bool,
}

impl CountingReport {
    fn new(q: u64, formula: Vec<i64>, oracle: Vec<i64>) -> Self {
        let agree = formula == oracle;
        CountingReport { q, formula, oracle, agree }
    }
}

fn eta(x: FieldElement) -> i64 {
    x.quadratic_character() as i64
}

/// Number of zero, nilpotent, split and anisotropic orbits.
pub fn orbit_census(field: Field) -> CountingReport {
    let q = field.q() as i64;
    let formula = vec![1, 1, (q - 1) / 2, (q - 1) / 2];
    let labels: BTreeSet<OrbitLabel> = Sl2Element::all(field).map(|x| sl2::classify(&x)).collect();
    let k = KindCounts::of(&labels);
    let oracle = vec![k.zero as i64, k.nilpotent as i64, k.split as i64, k.anisotropic as i64];
    CountingReport::new(field.q(), formula, oracle)
}

/// `N_S(a)`, the number of ordered pairs of squares (zero included) summing
/// to `a`: `(q − η(−1) + 2η(a) + 2)/4`.
pub fn n_s(a: FieldElement) -> Result<CountingReport, CensusError> {
    if a.is_zero() {
        return Err(CensusError::ZeroArgument);
    }
    let field = a.field();
    let q = field.q() as i64;
    let formula = (q - eta(field.from_int(-1)) + 2 * eta(a) + 2) / 4;
    let squares: Vec<FieldElement> = field.elements().filter(|x| x.quadratic_character() >= 0).collect();
    let set: BTreeSet<FieldElement> = squares.iter().copied().collect();
    let oracle = squares.iter().filter(|&&u| set.contains(&(a - u))).count() as i64;
    Ok(CountingReport::new(field.q(), vec![formula], vec![oracle]))
}

/// `x²(1 − 4x)²`.
pub fn quartic(x: FieldElement) -> FieldElement {
    let t = x * (x.field().one() - x.field().from_int(4) * x);
    t * t
}

/// Fiber census of `x²(1−4x)²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SAlphaReport {
    pub q: u64,
    /// `s₀…s₄` from the closed forms.
    pub formula: [i64; 5],
    /// `s₀…s₄` by enumeration; `s₀` counts the squares that are not values.
    pub oracle: [i64; 5],
    /// Largest fiber size seen.
    pub max_fiber: usize,
    /// `s₁ + 2s₂ + 3s₃ + 4s₄`.
    pub weighted_sum: i64,
    pub agree: bool,
}

pub fn s_alpha_table(field: Field) -> SAlphaReport {
    let q = field.q() as i64;
    let e2 = eta(field.from_int(2));
    let em1 = eta(field.from_int(-1));
    let formula = [
        (q + 2 * e2 - em1 - 2) / 8,
        (1 - e2) / 2,
        (q + 2 + em1) / 4,
        (1 + e2) / 2,
        (q - em1 - 2 * e2 - 6) / 8,
    ];
    let mut fiber = vec![0usize; field.q() as usize];
    for x in field.elements() {
        fiber[quartic(x).code() as usize] += 1;
    }
    let max_fiber = fiber.iter().copied().max().unwrap_or(0);
    let mut oracle = [0i64; 5];
    for v in field.elements() {
        let k = fiber[v.code() as usize];
        if k == 0 && !v.is_square() {
            continue;
        }
        if k < 5 {
            oracle[k] += 1;
        }
    }
    let weighted_sum = (1..5).map(|a| a as i64 * oracle[a]).sum();
    let agree = formula == oracle && max_fiber <= 4 && weighted_sum == q;
    SAlphaReport { q: field.q(), formula, oracle, max_fiber, weighted_sum, agree }
}

/// Value set of `x²(1−4x)²·y^d`.
pub fn quartic_values(field: Field, d: u64) -> BTreeSet<FieldElement> {
    let powers: BTreeSet<FieldElement> = field.elements().map(|y| y.pow(d)).collect();
    let mut out = BTreeSet::new();
    for x in field.elements() {
        let fx = quartic(x);
        for &p in &powers {
            out.insert(fx * p);
        }
    }
    out
}

/// `|F_q \ {x²(1−4x)²·y^d}|`.
pub fn missed_values_count(field: Field, d: u64) -> u64 {
    field.q() - quartic_values(field, d).len() as u64
}

/// Identifiers accepted by [`verify`].
pub const VERIFY_IDS: &[&str] = &[
    "nilpotent-image",
    "split-plus-nilpotent",
    "all-semisimple",
    "engel-commutator-trichotomy",
    "wn-determinant",
    "missed-orbits",
    "odd-divisor-missed",
    "wmn-determinant",
    "odd-gamma-orbits",
    "q3mod4-two-orbits",
    "single-aniso-orbit",
    "even-gamma-split-orbits",
    "single-split-orbit",
    "dirichlet-counts",
];

/// One word checked inside a report.
#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub word: Option<String>,
    pub params: Option<FamilyParams>,
    pub expected: Option<ImageDescriptor>,
    pub computed: Option<ImageDescriptor>,
    pub pass: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub q: u64,
    pub cases: Vec<CaseReport>,
    pub pass: bool,
    pub wall_ms: f64,
}

impl VerificationReport {
    pub fn failed_cases(&self) -> impl Iterator<Item = &CaseReport> {
        self.cases.iter().filter(|c| !c.pass)
    }
}

/// Runs the verification suite `id` at `field`. `params` is a `key=value`
/// list; see the README for the keys each id understands.
pub fn verify(id: &str, field: Field, params: Option<&str>) -> Result<VerificationReport, CensusError> {
    let start = Instant::now();
    let kv = Params::parse(params.unwrap_or(""))?;
    let q = field.q();
    let ctx = Ctx { id, field, q, kv: &kv };
    let cases = match id {
        "nilpotent-image" => vec![ctx.engel_case(2, 2 * q, |l| !l.is_semisimple())?],
        "split-plus-nilpotent" => vec![ctx.engel_case(1, 2 * q - 1, |l| {
            !matches!(l, OrbitLabel::Anisotropic(_))
        })?],
        "all-semisimple" => vec![ctx.engel_case(q + 1, 2 * q, |l| *l != OrbitLabel::Nilpotent)?],
        "engel-commutator-trichotomy" => ctx.trichotomy()?,
        "wn-determinant" => ctx.determinant_laws("wn")?,
        "wmn-determinant" => ctx.determinant_laws("wmn")?,
        "missed-orbits" => vec![ctx.missed_orbits()?],
        "odd-divisor-missed" => vec![ctx.odd_divisor_missed()?],
        "odd-gamma-orbits" => ctx.odd_gamma()?,
        "q3mod4-two-orbits" => ctx.two_orbits()?,
        "single-aniso-orbit" => ctx.single_aniso()?,
        "even-gamma-split-orbits" => ctx.even_gamma()?,
        "single-split-orbit" => ctx.single_split()?,
        "dirichlet-counts" => ctx.dirichlet()?,
        other => return Err(CensusError::UnknownId(other.to_string())),
    };
    if !cases.is_empty() && cases.iter().all(|c| c.word.is_none()) {
        return Err(WordError::NoWitnessInBudget(SearchBudget::for_q(q).max_exponent).into());
    }
    let pass = !cases.is_empty() && cases.iter().all(|c| c.pass);
    Ok(VerificationReport {
        id: id.to_string(),
        q,
        cases,
        pass,
        wall_ms: start.elapsed().as_secs_f64() * 1000.0,
    })
}

struct Params(Vec<(String, String)>);

impl Params {
    fn parse(text: &str) -> Result<Params, CensusError> {
        let mut out: Vec<(String, String)> = Vec::new();
        for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tok.split_once('=') {
                Some((k, v)) => out.push((k.trim().to_string(), v.trim().to_string())),
                None => match out.last_mut() {
                    Some((_, v)) => {
                        v.push(',');
                        v.push_str(tok);
                    }
                    None => return Err(CensusError::BadParams(format!("{tok:?} has no key"))),
                },
            }
        }
        Ok(Params(out))
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.0.iter().rev().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn int(&self, key: &str) -> Result<Option<u64>, CensusError> {
        self.get(key)
            .map(|v| v.parse().map_err(|_| CensusError::BadParams(format!("{key}={v} is not an integer"))))
            .transpose()
    }

    fn ints(&self, key: &str) -> Result<Option<Vec<u64>>, CensusError> {
        self.get(key)
            .map(|v| {
                v.split(',')
                    .map(|x| x.trim().parse().map_err(|_| CensusError::BadParams(format!("{key}={v}"))))
                    .collect()
            })
            .transpose()
    }

    /// Everything except the listed keys, re-joined for a family parser.
    fn without(&self, keys: &[&str]) -> String {
        self.0
            .iter()
            .filter(|(k, _)| !keys.contains(&k.as_str()))
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(",")
    }
}

struct Ctx<'a> {
    id: &'a str,
    field: Field,
    q: u64,
    kv: &'a Params,
}

fn labels_of_dets(dets: impl IntoIterator<Item = FieldElement>) -> BTreeSet<OrbitLabel> {
    let mut out: BTreeSet<OrbitLabel> = dets.into_iter().filter_map(OrbitLabel::semisimple).collect();
    out.insert(OrbitLabel::Zero);
    out
}

fn divisors(k: u64) -> Vec<u64> {
    (1..=k).filter(|d| k % d == 0).collect()
}

impl Ctx<'_> {
    fn inapplicable(&self, reason: impl Into<String>) -> CensusError {
        CensusError::InapplicableAtQ { id: self.id.to_string(), q: self.q, reason: reason.into() }
    }

    fn descriptor(&self, word: &LieWord, labels: BTreeSet<OrbitLabel>) -> ImageDescriptor {
        ImageDescriptor::new(self.field, word.to_string(), Strategy::ClosedForm, labels)
    }

    fn compare(
        &self,
        case: String,
        word: &LieWord,
        params: Option<FamilyParams>,
        expected: BTreeSet<OrbitLabel>,
    ) -> Result<CaseReport, CensusError> {
        let computed = engine::image_reduced(word, self.field)?;
        let expected = self.descriptor(word, expected);
        let pass = computed == expected;
        let mut notes = Vec::new();
        if !pass {
            let extra: Vec<String> =
                computed.labels.difference(&expected.labels).map(|l| l.to_string()).collect();
            let absent: Vec<String> =
                expected.labels.difference(&computed.labels).map(|l| l.to_string()).collect();
            notes.push(format!("unexpected: [{}]; absent: [{}]", extra.join(", "), absent.join(", ")));
        }
        Ok(CaseReport {
            case,
            word: Some(word.to_string()),
            params,
            expected: Some(expected),
            computed: Some(computed),
            pass,
            notes,
        })
    }

    fn no_witness(&self, case: String, goal: Goal) -> CaseReport {
        CaseReport {
            case,
            word: None,
            params: None,
            expected: None,
            computed: None,
            pass: false,
            notes: vec![format!(
                "no parameters satisfy {goal:?} within exponents ≤ {}",
                SearchBudget::for_q(self.q).max_exponent
            )],
        }
    }

    fn search(&self, goal: Goal) -> Option<FamilyParams> {
        search_params(goal, self.q, SearchBudget::for_q(self.q)).ok()
    }

    fn engel_case(
        &self,
        i: u64,
        j: u64,
        keep: fn(&OrbitLabel) -> bool,
    ) -> Result<CaseReport, CensusError> {
        let w = engel_diff(i, j)?;
        let expected = sl2::all_labels(self.field).into_iter().filter(keep).collect();
        let mut case = self.compare(format!("i={i},j={j}"), &w, Some(FamilyParams::EngelDiff { i, j }), expected)?;
        if let Some(c) = &case.computed {
            case.notes.push(format!("element count {}", c.element_count()));
        }
        Ok(case)
    }

    fn trichotomy(&self) -> Result<Vec<CaseReport>, CensusError> {
        let imax = self.kv.int("imax")?.unwrap_or(6);
        let all = sl2::all_labels(self.field);
        let mut out = Vec::new();
        for i in 2..=imax {
            for j in 1..i {
                let expected: BTreeSet<OrbitLabel> = if (i + j) % 2 == 0 {
                    [OrbitLabel::Zero].into_iter().collect()
                } else if i + j == 3 {
                    all.iter().copied().collect()
                } else {
                    all.iter().copied().filter(|l| *l != OrbitLabel::Nilpotent).collect()
                };
                let w = engel_commutator(i, j)?;
                out.push(self.compare(
                    format!("i={i},j={j}"),
                    &w,
                    Some(FamilyParams::EngelCommutator { i, j }),
                    expected,
                )?);
            }
        }
        Ok(out)
    }

    fn determinant_laws(&self, family: &str) -> Result<Vec<CaseReport>, CensusError> {
        let defaults: &[(&str, &str)] = if family == "wn" {
            &[
                ("wn", "i=4,j=2,pairs=2:1"),
                ("wn", "i=3,j=1,pairs=1:2,2:3"),
                ("wn", "i=6,j=2,pairs=4:1,1:2"),
                ("wn", "i=5,j=1,pairs=2:3"),
            ]
        } else {
            &[
                ("wmn", "alphas=3,3,betas=1,1,pairs=1:4"),
                ("wmn", "alphas=4,3,5,betas=2,1,3,pairs=1:2,1:2"),
                ("wmn", "alphas=3,3,4,betas=1,1,2,pairs=2:3"),
                ("w0mn", "alphas=3,3,4,betas=1,1,2,pairs=1:2,alpha0=3,beta0=1,pair0=1:2"),
            ]
        };
        let given = self.kv.without(&[]);
        let sets: Vec<FamilyParams> = if given.is_empty() {
            defaults.iter().map(|(f, p)| FamilyParams::parse(f, p)).collect::<Result<_, _>>()?
        } else {
            let fam = if family == "wmn" && self.kv.get("alpha0").is_some() { "w0mn" } else { family };
            vec![FamilyParams::parse(fam, &given)?]
        };
        let mut out = Vec::new();
        for p in sets {
            let w = p.build()?;
            let law = engine::closed_form_spectrum(&p, self.field)?;
            let expected = labels_of_dets(law.iter().copied());
            let mut case = self.compare(p.to_string(), &w, Some(p.clone()), expected)?;
            let spectrum = engine::det_spectrum(&w, self.field, Strategy::Reduced)?.values();
            if spectrum != law {
                case.pass = false;
                case.notes.push(format!(
                    "determinant values differ: evaluated {} values, closed form {}",
                    spectrum.len(),
                    law.len()
                ));
            }
            if case.computed.as_ref().is_some_and(|c| c.contains(&OrbitLabel::Nilpotent)) {
                case.pass = false;
                case.notes.push("nilpotent orbit in the image".into());
            }
            out.push(case);
        }
        Ok(out)
    }

    fn missed_case(&self, expected_missed: Option<u64>) -> Result<CaseReport, CensusError> {
        let Some(p) = self.search(Goal::MissedOrbits) else {
            return Ok(self.no_witness("missed orbits".into(), Goal::MissedOrbits));
        };
        let FamilyParams::Wn(wp) = &p else { unreachable!("missed-orbit search yields w_n") };
        let w = p.build()?;
        let f = self.field;
        let (n, sigma) = (wp.n(), wp.sigma());
        let eps_negative = (n + wp.j % 2) % 2 == 1;
        let coeff = f.from_int(4).pow(wp.j - 1 + sigma);
        let coeff = if eps_negative { -coeff } else { coeff };
        let values = quartic_values(f, 2 * n + 1);
        let expected = labels_of_dets(values.iter().map(|&v| coeff * v));
        let mut case = self.compare(format!("n={n},j={},i={}", wp.j, wp.i), &w, Some(p.clone()), expected)?;
        if let Some(c) = &case.computed {
            let missing: Vec<OrbitLabel> = c.missing().into_iter().filter(|l| l.is_semisimple()).collect();
            let k = KindCounts::of(&missing);
            case.notes.push(format!("missed semisimple orbits: {} ({} split, {} anisotropic)", missing.len(), k.split, k.anisotropic));
            let want = expected_missed.unwrap_or_else(|| missed_values_count(f, 2 * n + 1));
            if missing.len() as u64 != want {
                case.pass = false;
                case.notes.push(format!("expected {want} missed semisimple orbits"));
            }
            if expected_missed.is_some() && k.split != k.anisotropic {
                case.pass = false;
                case.notes.push("missed orbits are not evenly split".into());
            }
            if c.contains(&OrbitLabel::Nilpotent) {
                case.pass = false;
            }
        }
        Ok(case)
    }

    fn missed_orbits(&self) -> Result<CaseReport, CensusError> {
        let q = self.q;
        if q % 4 != 3 || q < 7 {
            return Err(self.inapplicable("needs q ≡ 3 mod 4 with q ≥ 7 (q ≡ 3 or 7 mod 8)"));
        }
        let want = if q % 8 == 3 { (q - 3) / 4 } else { (q + 1) / 4 };
        self.missed_case(Some(want))
    }

    fn odd_divisor_missed(&self) -> Result<CaseReport, CensusError> {
        let d = crate::lieword::largest_odd_divisor(self.q - 1);
        if d < 3 {
            return Err(self.inapplicable("q − 1 has no odd divisor above 1"));
        }
        self.missed_case(None)
    }

    /// Odd divisors `γ > 1` of `q − 1`, or the one given as `gamma=`.
    fn odd_gammas(&self) -> Result<Vec<u64>, CensusError> {
        let all: Vec<u64> = divisors(self.q - 1).into_iter().filter(|g| g % 2 == 1 && *g > 1).collect();
        match self.kv.int("gamma")? {
            Some(g) if all.contains(&g) => Ok(vec![g]),
            Some(g) => Err(self.inapplicable(format!("γ = {g} is not an odd divisor > 1 of q − 1"))),
            None if all.is_empty() => Err(self.inapplicable("q − 1 has no odd divisor above 1")),
            None => Ok(all),
        }
    }

    /// `{−4^{γ−1} a^γ}` over `a ≠ 0` (`all_a`) or over nonsquares `a`.
    fn gamma_dets(&self, gamma: u64, all_a: bool) -> BTreeSet<FieldElement> {
        let f = self.field;
        let c = -f.from_int(4).pow(gamma - 1);
        f.elements()
            .filter(|a| !a.is_zero() && (all_a || !a.is_square()))
            .map(|a| c * a.pow(gamma))
            .collect()
    }

    fn odd_gamma_case(&self, gamma: u64, c: u64, counts: (usize, usize)) -> Result<CaseReport, CensusError> {
        let goal = Goal::OddGamma { gamma, c };
        let case = format!("gamma={gamma},c={c}");
        let Some(p) = self.search(goal) else { return Ok(self.no_witness(case, goal)) };
        let w = p.build()?;
        let expected = labels_of_dets(self.gamma_dets(gamma, c == 2));
        let mut report = self.compare(case, &w, Some(p), expected)?;
        if let Some(img) = &report.computed {
            let k = img.counts();
            if (k.split, k.anisotropic) != counts || k.nilpotent != 0 {
                report.pass = false;
                report.notes.push(format!("expected {} split and {} anisotropic, got {k}", counts.0, counts.1));
            }
        }
        Ok(report)
    }

    fn odd_gamma(&self) -> Result<Vec<CaseReport>, CensusError> {
        let q = self.q;
        let cs = match self.kv.int("c")? {
            Some(c) if c == 2 || c == q - 1 => vec![c],
            Some(c) => return Err(CensusError::BadParams(format!("c must be 2 or q − 1, got {c}"))),
            None => vec![2, q - 1],
        };
        let mut out = Vec::new();
        for g in self.odd_gammas()? {
            for &c in &cs {
                let orbits = ((q - 1) / g) as usize;
                let counts = if c == 2 { (orbits / 2, orbits / 2) } else { (0, orbits / 2) };
                out.push(self.odd_gamma_case(g, c, counts)?);
            }
        }
        Ok(out)
    }

    fn two_orbits(&self) -> Result<Vec<CaseReport>, CensusError> {
        let q = self.q;
        if q % 4 != 3 {
            return Err(self.inapplicable("needs q ≡ 3 mod 4"));
        }
        if q > 3 {
            return Ok(vec![self.odd_gamma_case((q - 1) / 2, 2, (1, 1))?]);
        }
        let max = self.kv.int("max")?.unwrap_or(10);
        let pairs: Vec<(u64, u64)> = match (self.kv.int("i")?, self.kv.int("j")?) {
            (Some(i), Some(j)) => vec![(i, j)],
            _ => (4..=max).flat_map(|i| (3..i).map(move |j| (i, j))).filter(|(i, j)| (i - j) % 4 == 2).collect(),
        };
        let all: BTreeSet<OrbitLabel> =
            sl2::all_labels(self.field).into_iter().filter(|l| *l != OrbitLabel::Nilpotent).collect();
        let mut out = Vec::new();
        for (i, j) in pairs {
            let w = engel_diff(i, j)?;
            out.push(self.compare(format!("i={i},j={j}"), &w, Some(FamilyParams::EngelDiff { i, j }), all.clone())?);
        }
        Ok(out)
    }

    fn require_prime(&self) -> Result<(), CensusError> {
        if is_prime(self.q) {
            Ok(())
        } else {
            Err(self.inapplicable("integer scalars reach only the prime field, so the scaled words need q prime"))
        }
    }

    fn scaled_case(&self, base: &LieWord, params: &FamilyParams, scale: FieldElement, target: OrbitLabel, case: String) -> Result<CaseReport, CensusError> {
        let w = LieWord::scalar(scale.code() as i64, base.clone());
        let expected = [OrbitLabel::Zero, target].into_iter().collect();
        let mut report = self.compare(case, &w, Some(params.clone()), expected)?;
        report.notes.push(format!("scale {scale}"));
        Ok(report)
    }

    fn single_aniso(&self) -> Result<Vec<CaseReport>, CensusError> {
        let q = self.q;
        if q % 4 != 3 || q < 7 {
            return Err(self.inapplicable("needs q ≡ 3 mod 4 and γ = (q − 1)/2 > 1"));
        }
        self.require_prime()?;
        let gamma = (q - 1) / 2;
        let goal = Goal::OddGamma { gamma, c: q - 1 };
        let Some(p) = self.search(goal) else { return Ok(vec![self.no_witness(format!("gamma={gamma}"), goal)]) };
        let base = p.build()?;
        let f = self.field;
        let two = f.from_int(2);
        let default_scale = match self.kv.get("scale") {
            None | Some("pow2-lambda") => true,
            Some("two-lambda") => false,
            Some(other) => return Err(CensusError::BadParams(format!("scale must be pow2-lambda or two-lambda, got {other}"))),
        };
        let mut out = Vec::new();
        for label in sl2::all_labels(f).into_iter().filter(|l| matches!(l, OrbitLabel::Anisotropic(_))) {
            let d = label.det().expect("semisimple");
            let lambda = f.elements().find(|x| *x * *x == d && !x.is_square()).expect("q ≡ 3 mod 4");
            let scale = if default_scale {
                two.inv()?.pow((gamma - 3) / 2) * lambda
            } else {
                two * lambda
            };
            out.push(self.scaled_case(&base, &p, scale, label, format!("target det={d}"))?);
        }
        Ok(out)
    }

    fn even_gammas(&self) -> Result<Vec<u64>, CensusError> {
        let all: Vec<u64> = divisors(self.q - 1).into_iter().filter(|g| g % 2 == 0).collect();
        match self.kv.int("gamma")? {
            Some(g) if all.contains(&g) => Ok(vec![g]),
            Some(g) => Err(self.inapplicable(format!("γ = {g} is not an even divisor of q − 1"))),
            None => Ok(all),
        }
    }

    fn even_gamma_case(&self, gamma: u64) -> Result<CaseReport, CensusError> {
        let goal = Goal::EvenGamma { gamma };
        let case = format!("gamma={gamma}");
        let Some(p) = self.search(goal) else { return Ok(self.no_witness(case, goal)) };
        let w = p.build()?;
        let expected = labels_of_dets(self.gamma_dets(gamma, true));
        let mut report = self.compare(case, &w, Some(p), expected)?;
        if let Some(img) = &report.computed {
            let k = img.counts();
            if k.split as u64 != (self.q - 1) / gamma || k.anisotropic + k.nilpotent != 0 {
                report.pass = false;
            }
        }
        Ok(report)
    }

    fn even_gamma(&self) -> Result<Vec<CaseReport>, CensusError> {
        self.even_gammas()?.into_iter().map(|g| self.even_gamma_case(g)).collect()
    }

    fn single_split(&self) -> Result<Vec<CaseReport>, CensusError> {
        self.require_prime()?;
        let q = self.q;
        let goal = Goal::EvenGamma { gamma: q - 1 };
        let Some(p) = self.search(goal) else { return Ok(vec![self.no_witness(format!("gamma={}", q - 1), goal)]) };
        let base = p.build()?;
        let f = self.field;
        let mut out = Vec::new();
        for label in sl2::all_labels(f).into_iter().filter(|l| matches!(l, OrbitLabel::Split(_))) {
            let d = label.det().expect("semisimple");
            let lambda = f.elements().find(|x| *x * *x == -d).expect("split det is minus a square");
            out.push(self.scaled_case(&base, &p, f.from_int(2) * lambda, label, format!("target det={d}"))?);
        }
        Ok(out)
    }

    fn dirichlet(&self) -> Result<Vec<CaseReport>, CensusError> {
        self.require_prime()?;
        let q = self.q;
        let parts = match self.kv.ints("part")? {
            Some(p) => p,
            None => vec![2, 3, 4],
        };
        let gamma = self.kv.int("gamma")?;
        let keep = |g: u64| gamma.is_none_or(|x| x == g);
        let mut out = Vec::new();
        for part in parts {
            match part {
                2 | 4 => {
                    for g in divisors(q - 1).into_iter().filter(|g| g % 2 == 1 && *g > 1 && keep(*g)) {
                        let t = (q - 1) / g;
                        let mut case = if part == 2 {
                            self.odd_gamma_case(g, 2, ((t / 2) as usize, (t / 2) as usize))?
                        } else {
                            self.odd_gamma_case(g, q - 1, (0, (t / 2) as usize))?
                        };
                        let t = if part == 2 { t } else { t / 2 };
                        case.case = format!("part={part},t={t},{}", case.case);
                        out.push(case);
                    }
                }
                3 => {
                    for g in divisors(q - 1).into_iter().filter(|g| g % 2 == 0 && keep(*g)) {
                        let mut case = self.even_gamma_case(g)?;
                        case.case = format!("part=3,t={},{}", (q - 1) / g, case.case);
                        out.push(case);
                    }
                }
                other => return Err(CensusError::BadParams(format!("part must be 2, 3 or 4, got {other}"))),
            }
        }
        if out.is_empty() {
            return Err(self.inapplicable("no divisor of q − 1 fits any of the progressions"));
        }
        Ok(out)
    }
}

/// Which arithmetic progression a prime is drawn from, and the orbit counts it yields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DirichletPart {
    /// `p = (2ℓ+1)t + 1`, `t` even: `t/2` split and `t/2` anisotropic orbits.
    Mixed,
    /// `p = 2ℓt + 1`: `t` split orbits.
    Split,
    /// `p = 2(2ℓ+1)t + 1`: `t` anisotropic orbits.
    Anisotropic,
}

/// A prime from the progression of `part`, with its `γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DirichletPrime {
    pub p: u64,
    pub ell: u64,
    pub gamma: u64,
}

/// Scans `ℓ = 1, 2, …` for the first prime `p ≤ ceiling` of the progression.
pub fn find_dirichlet_prime(part: DirichletPart, t: u64, ceiling: u64) -> Option<DirichletPrime> {
    if t == 0 || (part == DirichletPart::Mixed && t % 2 == 1) {
        return None;
    }
    for ell in 1.. {
        let (p, gamma) = match part {
            DirichletPart::Mixed => ((2 * ell + 1) * t + 1, 2 * ell + 1),
            DirichletPart::Split => (2 * ell * t + 1, 2 * ell),
            DirichletPart::Anisotropic => (2 * (2 * ell + 1) * t + 1, 2 * ell + 1),
        };
        if p > ceiling {
            return None;
        }
        if is_prime(p) {
            return Some(DirichletPrime { p, ell, gamma });
        }
    }
    None
}

/// Default ceiling of the prime scan.
pub const DIRICHLET_CEILING: u64 = 10_000;
