//! Exact images of two-or-more-variable words, by exhaustive evaluation or by
//! restricting the pivot variable to orbit representatives.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{Field, FieldElement, GfError};
use crate::lieword::{FamilyParams, LieWord, WmnParams, WnParams, WordError};
use crate::sl2::{self, OrbitKind, OrbitLabel, Sl2Element};

/// Default cap on the number of word evaluations.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Environment variable that overrides [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "LIEIMAGE_BUDGET";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("{needed} evaluations exceed the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("the reduced strategy needs a two-variable word, got arity {0}")]
    ArityUnsupported(usize),
    #[error("pivot x{0} is not a variable of a two-variable word")]
    BadPivot(usize),
    #[error("closed form is only known for the w_n, w_mn and w0_mn families")]
    NoClosedForm,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("malformed descriptor: {0}")]
    Descriptor(String),
}

/// The budget from `LIEIMAGE_BUDGET`, or [`DEFAULT_BUDGET`].
pub fn default_budget() -> u64 {
    std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Strategy {
    #[serde(rename = "brute")]
    BruteForce,
    #[serde(rename = "reduced")]
    Reduced,
    #[serde(rename = "closed")]
    ClosedForm,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::BruteForce => "brute",
            Strategy::Reduced => "reduced",
            Strategy::ClosedForm => "closed",
        }
    }

    pub fn parse(s: &str) -> Option<Strategy> {
        match s {
            "brute" | "bruteforce" | "brute-force" => Some(Strategy::BruteForce),
            "reduced" => Some(Strategy::Reduced),
            "closed" | "closed-form" => Some(Strategy::ClosedForm),
            _ => None,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The image of a word as a set of orbit labels.
#[derive(Clone, Debug)]
pub struct ImageDescriptor {
    pub field: Field,
    pub word: String,
    pub strategy: Strategy,
    pub labels: BTreeSet<OrbitLabel>,
}

/// Descriptors compare by field and label set only.
impl PartialEq for ImageDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.labels == other.labels
    }
}

impl Eq for ImageDescriptor {}

#[derive(Serialize, Deserialize)]
struct DescriptorJson {
    q: u64,
    word: String,
    strategy: Strategy,
    labels: Vec<LabelJson>,
}

#[derive(Serialize, Deserialize)]
struct LabelJson {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    det: Option<String>,
}

/// Number of labels of each kind.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct KindCounts {
    pub zero: usize,
    pub nilpotent: usize,
    pub split: usize,
    pub anisotropic: usize,
}

impl KindCounts {
    pub fn of<'a>(labels: impl IntoIterator<Item = &'a OrbitLabel>) -> KindCounts {
        let mut k = KindCounts::default();
        for l in labels {
            match l.kind() {
                OrbitKind::Zero => k.zero += 1,
                OrbitKind::Nilpotent => k.nilpotent += 1,
                OrbitKind::SplitSemisimple => k.split += 1,
                OrbitKind::AnisotropicSemisimple => k.anisotropic += 1,
            }
        }
        k
    }

    pub fn semisimple(&self) -> usize {
        self.split + self.anisotropic
    }
}

impl fmt::Display for KindCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "zero {}, nilpotent {}, split {}, anisotropic {}",
            self.zero, self.nilpotent, self.split, self.anisotropic
        )
    }
}

impl ImageDescriptor {
    pub fn new(field: Field, word: impl Into<String>, strategy: Strategy, labels: BTreeSet<OrbitLabel>) -> Self {
        ImageDescriptor { field, word: word.into(), strategy, labels }
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn counts(&self) -> KindCounts {
        KindCounts::of(&self.labels)
    }

    pub fn contains(&self, label: &OrbitLabel) -> bool {
        self.labels.contains(label)
    }

    /// Number of elements of `sl2(F_q)` in the image.
    pub fn element_count(&self) -> u64 {
        let q = self.q();
        self.labels.iter().map(|l| l.orbit_size(q)).sum()
    }

    /// Labels of `sl2(F_q)` that are not in the image.
    pub fn missing(&self) -> Vec<OrbitLabel> {
        sl2::all_labels(self.field).into_iter().filter(|l| !self.labels.contains(l)).collect()
    }

    /// Image of `c·w` given the image of `w`: semisimple determinants are
    /// multiplied by `c²`.
    pub fn scaled(&self, c: FieldElement) -> ImageDescriptor {
        let labels = self.labels.iter().filter_map(|l| scale_label(l, c)).collect();
        ImageDescriptor { labels, ..self.clone() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.json_form()).expect("descriptor serializes")
    }

    fn json_form(&self) -> DescriptorJson {
        DescriptorJson {
            q: self.q(),
            word: self.word.clone(),
            strategy: self.strategy,
            labels: self
                .labels
                .iter()
                .map(|l| LabelJson { kind: l.kind().as_str().to_string(), det: l.det().map(|d| d.to_string()) })
                .collect(),
        }
    }

    /// Reads a descriptor written by [`ImageDescriptor::to_json`]; labels are
    /// interpreted in the default field of order `q`.
    pub fn from_json(text: &str) -> Result<ImageDescriptor, EngineError> {
        let raw: DescriptorJson = serde_json::from_str(text).map_err(|e| EngineError::Descriptor(e.to_string()))?;
        let field = Field::with_order(raw.q)?;
        let mut labels = BTreeSet::new();
        for l in raw.labels {
            let label = OrbitLabel::from_parts(field, &l.kind, l.det.as_deref())
                .map_err(|e| EngineError::Descriptor(e.to_string()))?;
            labels.insert(label);
        }
        Ok(ImageDescriptor { field, word: raw.word, strategy: raw.strategy, labels })
    }
}

impl Serialize for ImageDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.json_form().serialize(s)
    }
}

fn scale_label(l: &OrbitLabel, c: FieldElement) -> Option<OrbitLabel> {
    if c.is_zero() {
        return Some(OrbitLabel::Zero);
    }
    match l {
        OrbitLabel::Zero | OrbitLabel::Nilpotent => Some(*l),
        OrbitLabel::Split(d) | OrbitLabel::Anisotropic(d) => OrbitLabel::semisimple(c * c * *d),
    }
}

/// Dense index of a label: zero, nilpotent, then `2 + code(det)`.
fn label_slot(x: &Sl2Element) -> usize {
    if x.is_zero() {
        return 0;
    }
    let d = x.det();
    if d.is_zero() {
        1
    } else {
        2 + d.code() as usize
    }
}

fn slots_to_labels(field: Field, seen: &[bool]) -> BTreeSet<OrbitLabel> {
    let mut out = BTreeSet::new();
    for (k, _) in seen.iter().enumerate().filter(|(_, s)| **s) {
        out.insert(match k {
            0 => OrbitLabel::Zero,
            1 => OrbitLabel::Nilpotent,
            _ => OrbitLabel::semisimple(field.element(k as u64 - 2)).expect("nonzero det"),
        });
    }
    out
}

fn check_budget(needed: u128, budget: u64) -> Result<(), EngineError> {
    if needed > budget as u128 {
        Err(EngineError::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// Assignments in the grid evaluated by `strategy`.
struct Grid {
    field: Field,
    arity: usize,
    /// Values of the pivot; `None` means all of `sl2(F_q)`.
    pivot: Option<(usize, Vec<Sl2Element>)>,
}

impl Grid {
    fn new(w: &LieWord, field: Field, strategy: Strategy, pivot: usize, budget: u64) -> Result<Grid, EngineError> {
        let arity = w.arity();
        let q3 = (field.q() as u128).pow(3);
        match strategy {
            Strategy::BruteForce => {
                check_budget(q3.pow(arity as u32), budget)?;
                Ok(Grid { field, arity, pivot: None })
            }
            Strategy::Reduced => {
                if arity != 2 {
                    return Err(EngineError::ArityUnsupported(arity));
                }
                if pivot != 1 && pivot != 2 {
                    return Err(EngineError::BadPivot(pivot));
                }
                let reps = sl2::orbit_representatives(field);
                check_budget(reps.len() as u128 * q3, budget)?;
                Ok(Grid { field, arity, pivot: Some((pivot, reps)) })
            }
            Strategy::ClosedForm => Err(EngineError::NoClosedForm),
        }
    }

    fn len(&self) -> u64 {
        let q3 = self.field.q().pow(3);
        match &self.pivot {
            None => q3.pow(self.arity as u32),
            Some((_, reps)) => reps.len() as u64 * q3,
        }
    }

    /// The `k`-th assignment, written into `out`.
    fn assignment(&self, mut k: u64, out: &mut [Sl2Element]) {
        let q3 = self.field.q().pow(3);
        match &self.pivot {
            None => {
                for slot in out.iter_mut() {
                    *slot = Sl2Element::from_index(self.field, k % q3);
                    k /= q3;
                }
            }
            Some((p, reps)) => {
                let other = if *p == 1 { 1 } else { 0 };
                out[other] = Sl2Element::from_index(self.field, k % q3);
                out[p - 1] = reps[(k / q3) as usize];
            }
        }
    }

    /// Folds `visit` over every output of `w`, in parallel.
    fn sweep<T, F, R>(&self, w: &LieWord, init: fn(&Grid) -> T, visit: F, merge: R) -> T
    where
        T: Send,
        F: Fn(&mut T, &Sl2Element) + Sync,
        R: Fn(T, T) -> T + Sync + Send,
    {
        let chunk = self.field.q().pow(3);
        let chunks = self.len().div_ceil(chunk);
        let slots = self.arity.max(1);
        (0..chunks)
            .into_par_iter()
            .fold(
                || init(self),
                |mut acc, c| {
                    let mut asg = vec![Sl2Element::zero(self.field); slots];
                    for k in c * chunk..((c + 1) * chunk).min(self.len()) {
                        self.assignment(k, &mut asg);
                        let y = w.eval_unchecked(self.field, &asg);
                        visit(&mut acc, &y);
                    }
                    acc
                },
            )
            .reduce(|| init(self), merge)
    }
}

fn labels_by(w: &LieWord, field: Field, strategy: Strategy, pivot: usize, budget: u64) -> Result<ImageDescriptor, EngineError> {
    let grid = Grid::new(w, field, strategy, pivot, budget)?;
    let seen = grid.sweep(
        w,
        |g| vec![false; g.field.q() as usize + 2],
        |acc, y| acc[label_slot(y)] = true,
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x |= y;
            }
            a
        },
    );
    Ok(ImageDescriptor::new(field, w.to_string(), strategy, slots_to_labels(field, &seen)))
}

/// Image by evaluating `w` on every tuple of `sl2(F_q)`.
pub fn image_bruteforce(w: &LieWord, field: Field) -> Result<ImageDescriptor, EngineError> {
    image_bruteforce_with_budget(w, field, default_budget())
}

pub fn image_bruteforce_with_budget(w: &LieWord, field: Field, budget: u64) -> Result<ImageDescriptor, EngineError> {
    labels_by(w, field, Strategy::BruteForce, 1, budget)
}

/// Image of a two-variable word with `x1` restricted to orbit representatives.
pub fn image_reduced(w: &LieWord, field: Field) -> Result<ImageDescriptor, EngineError> {
    image_reduced_with(w, field, 1, default_budget())
}

pub fn image_reduced_with(w: &LieWord, field: Field, pivot: usize, budget: u64) -> Result<ImageDescriptor, EngineError> {
    labels_by(w, field, Strategy::Reduced, pivot, budget)
}

/// Dispatches on `strategy`. The closed form needs a family, see
/// [`closed_form_image`].
pub fn image(w: &LieWord, field: Field, strategy: Strategy) -> Result<ImageDescriptor, EngineError> {
    match strategy {
        Strategy::BruteForce => image_bruteforce(w, field),
        Strategy::Reduced => image_reduced(w, field),
        Strategy::ClosedForm => Err(EngineError::NoClosedForm),
    }
}

/// Determinant values and how often each occurs on the evaluated grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetSpectrum {
    pub field: Field,
    pub counts: BTreeMap<FieldElement, u64>,
}

impl DetSpectrum {
    pub fn values(&self) -> BTreeSet<FieldElement> {
        self.counts.keys().copied().collect()
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `det,count` rows.
    pub fn to_csv(&self) -> Result<String, EngineError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| EngineError::Descriptor(e.to_string());
        w.write_record(["det", "count"]).map_err(io)?;
        for (d, c) in &self.counts {
            w.write_record([d.to_string(), c.to_string()]).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| EngineError::Descriptor(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Exact determinant multiset of `w` over the grid of `strategy`.
pub fn det_spectrum(w: &LieWord, field: Field, strategy: Strategy) -> Result<DetSpectrum, EngineError> {
    det_spectrum_with(w, field, strategy, default_budget())
}

pub fn det_spectrum_with(w: &LieWord, field: Field, strategy: Strategy, budget: u64) -> Result<DetSpectrum, EngineError> {
    let grid = Grid::new(w, field, strategy, 1, budget)?;
    let raw = grid.sweep(
        w,
        |g| vec![0u64; g.field.q() as usize],
        |acc, y| acc[y.det().code() as usize] += 1,
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    );
    let counts = raw
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c > 0)
        .map(|(k, c)| (field.element(k as u64), c))
        .collect();
    Ok(DetSpectrum { field, counts })
}

/// Value set of the closed-form determinant law of a family, `a, b` over `F_q`.
pub fn closed_form_spectrum(family: &FamilyParams, field: Field) -> Result<BTreeSet<FieldElement>, EngineError> {
    let law = DetLaw::of(family)?;
    let mut out = BTreeSet::new();
    for a in field.elements() {
        let ca = law.a_part(a);
        for b in field.elements() {
            out.insert(ca * b.pow(law.b_exp));
        }
    }
    Ok(out)
}

/// Image predicted by the closed-form law: zero plus one semisimple label
/// per nonzero determinant value. These families have no nilpotents.
pub fn closed_form_image(family: &FamilyParams, field: Field) -> Result<ImageDescriptor, EngineError> {
    let values = closed_form_spectrum(family, field)?;
    let mut labels: BTreeSet<OrbitLabel> = values.into_iter().filter_map(OrbitLabel::semisimple).collect();
    labels.insert(OrbitLabel::Zero);
    Ok(ImageDescriptor::new(field, family.build()?.to_string(), Strategy::ClosedForm, labels))
}

/// `sign · 4^four_exp · a^a_exp · Π (2^{d} a^{d/2} − 1)² · b^b_exp`.
struct DetLaw {
    negative: bool,
    four_exp: u64,
    a_exp: u64,
    diffs: Vec<u64>,
    b_exp: u64,
}

impl DetLaw {
    fn of(family: &FamilyParams) -> Result<DetLaw, EngineError> {
        match family {
            FamilyParams::Wn(p) => Ok(Self::wn(p)?),
            FamilyParams::Wmn(p) if p.m() == 1 => Ok(Self::wn(&p.inner())?),
            FamilyParams::Wmn(p) => Ok(Self::wmn(p)?),
            FamilyParams::W0mn(p) => Ok(Self::w0mn(p)?),
            _ => Err(EngineError::NoClosedForm),
        }
    }

    fn wn(p: &WnParams) -> Result<DetLaw, WordError> {
        crate::lieword::w_n(p)?;
        let (n, sigma) = (p.n(), p.sigma());
        // ε = (−1)^n for i, j even and (−1)^{n+1} for i, j odd.
        let odd = p.j % 2 == 1;
        Ok(DetLaw {
            negative: (n + odd as u64) % 2 == 1,
            four_exp: p.j - 1 + sigma,
            a_exp: p.j + sigma - 2 * n - 1,
            diffs: vec![p.i - p.j],
            b_exp: 2 * n + 1,
        })
    }

    fn wmn(p: &WmnParams) -> Result<DetLaw, WordError> {
        crate::lieword::w_mn(p)?;
        let (m, n) = (p.m() as u64, p.n());
        let s = p.beta_sum() + p.sigma();
        let negative = match p.beta_pattern() {
            Some(crate::lieword::BetaPattern::Case1) => m % 2 == 0,
            _ => true,
        };
        Ok(DetLaw {
            negative,
            four_exp: s - 1,
            a_exp: s - 2 * n - m,
            diffs: p.alphas.iter().zip(&p.betas).map(|(a, b)| a - b).collect(),
            b_exp: 2 * n + m,
        })
    }

    fn w0mn(p: &WmnParams) -> Result<DetLaw, WordError> {
        crate::lieword::w0_mn(p)?;
        let z = p.zero.expect("validated");
        let (m, n) = (p.m() as u64, p.n());
        let s = p.zero_sum();
        let mut diffs = vec![z.alpha0 - z.beta0];
        diffs.extend(p.alphas.iter().zip(&p.betas).map(|(a, b)| a - b));
        Ok(DetLaw { negative: true, four_exp: s - 1, a_exp: s - 2 * n - m - 3, diffs, b_exp: 2 * n + m + 3 })
    }

    fn a_part(&self, a: FieldElement) -> FieldElement {
        let field = a.field();
        let two = field.from_int(2);
        let mut v = field.from_int(4).pow(self.four_exp) * a.pow(self.a_exp);
        for d in &self.diffs {
            let t = two.pow(*d) * a.pow(d / 2) - field.one();
            v = v * t * t;
        }
        if self.negative {
            -v
        } else {
            v
        }
    }
}
