//! Generation of `sl2(F_q)`: subalgebra closure, one-and-a-half generation
//! and automorphism orbits of generating tuples.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::gf::{Field, FieldElement};
use crate::sl2::{bracket, conjugate_with_inverse, Mat2, Sl2Element};

/// Largest `q` the exhaustive sweeps accept.
pub const MAX_SWEEP_Q: u64 = 13;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GensetError {
    #[error("sweep needs {needed} steps, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("tuple length must be at least 1")]
    EmptyTuple,
}

/// Row-reduced basis of a subspace of `F_q^3`.
#[derive(Clone, Debug)]
struct Span {
    rows: Vec<([FieldElement; 3], usize)>,
}

impl Span {
    fn new() -> Self {
        Span { rows: Vec::new() }
    }

    /// Adds `x` and reports whether the dimension grew.
    fn insert(&mut self, x: &Sl2Element) -> bool {
        let mut v = [x.a, x.b, x.c];
        for (row, pivot) in &self.rows {
            let k = v[*pivot];
            if !k.is_zero() {
                for t in 0..3 {
                    v[t] = v[t] - k * row[t];
                }
            }
        }
        let Some(pivot) = (0..3).find(|&t| !v[t].is_zero()) else { return false };
        let inv = v[pivot].inv().expect("nonzero");
        let v = v.map(|x| x * inv);
        for (row, _) in &mut self.rows {
            let k = row[pivot];
            if !k.is_zero() {
                for t in 0..3 {
                    row[t] = row[t] - k * v[t];
                }
            }
        }
        self.rows.push((v, pivot));
        true
    }

    fn basis(&self) -> Vec<Sl2Element> {
        self.rows.iter().map(|(r, _)| Sl2Element { a: r[0], b: r[1], c: r[2] }).collect()
    }
}

/// Dimension of the subalgebra generated by `generators`.
pub fn subalgebra_closure(generators: &[Sl2Element]) -> usize {
    let mut span = Span::new();
    for g in generators {
        span.insert(g);
    }
    loop {
        let basis = span.basis();
        let mut grew = false;
        for (i, x) in basis.iter().enumerate() {
            for y in &basis[i + 1..] {
                grew |= span.insert(&bracket(x, y));
            }
        }
        if !grew {
            return span.rows.len();
        }
    }
}

/// `{a, b}` generates iff `a`, `b`, `[a, b]` are independent: a dependent
/// bracket leaves `span{a, b}` closed.
pub fn generates_pair(a: &Sl2Element, b: &Sl2Element) -> bool {
    let c = bracket(a, b);
    let det = a.a * (b.b * c.c - b.c * c.b) - a.b * (b.a * c.c - b.c * c.a) + a.c * (b.a * c.b - b.b * c.a);
    !det.is_zero()
}

fn generates(tuple: &[Sl2Element]) -> bool {
    match tuple {
        [a, b] => generates_pair(a, b),
        _ => subalgebra_closure(tuple) == 3,
    }
}

fn check_sweep(field: Field, needed: u128) -> Result<(), GensetError> {
    let q = field.q() as u128;
    let budget = (MAX_SWEEP_Q as u128).pow(6);
    if q > MAX_SWEEP_Q as u128 || needed > budget {
        return Err(GensetError::BudgetExceeded { needed, budget });
    }
    Ok(())
}

/// Result of the one-and-a-half generation test.
#[derive(Clone, Debug, Serialize)]
pub struct OneAndAHalf {
    pub q: u64,
    pub holds: bool,
    /// First partner `b` of each nonzero `a`, in enumeration order.
    pub witnesses: Vec<(String, Option<String>)>,
}

/// Every `b` with `{a, b}` generating.
pub fn generating_partners(a: &Sl2Element) -> Vec<Sl2Element> {
    Sl2Element::all(a.field()).filter(|b| generates_pair(a, b)).collect()
}

pub fn is_one_and_a_half_generated(field: Field) -> Result<OneAndAHalf, GensetError> {
    let n = field.q().pow(3);
    check_sweep(field, (n as u128) * (n as u128))?;
    let witnesses: Vec<(Sl2Element, Option<Sl2Element>)> = (1..n)
        .into_par_iter()
        .map(|i| {
            let a = Sl2Element::from_index(field, i);
            (a, Sl2Element::all(field).find(|b| generates_pair(&a, b)))
        })
        .collect();
    let holds = witnesses.iter().all(|(_, b)| b.is_some());
    Ok(OneAndAHalf {
        q: field.q(),
        holds,
        witnesses: witnesses.into_iter().map(|(a, b)| (a.to_string(), b.map(|b| b.to_string()))).collect(),
    })
}

/// `k(sl2(F_q))`: 2 when one-and-a-half generated, otherwise 3.
pub fn generation_degree(field: Field) -> Result<u32, GensetError> {
    Ok(if is_one_and_a_half_generated(field)?.holds { 2 } else { 3 })
}

/// One matrix per class of `PGL2(F_q)`: invertible, first nonzero entry 1.
pub fn aut_elements(field: Field) -> Vec<Mat2> {
    let q = field.q();
    let mut out = Vec::with_capacity((q * (q * q - 1)) as usize);
    for code in 0..q.pow(4) {
        let e = |k: u32| field.element(code / q.pow(3 - k) % q);
        let m = Mat2([[e(0), e(1)], [e(2), e(3)]]);
        let first = m.0.iter().flatten().find(|x| !x.is_zero());
        if first == Some(&field.one()) && !m.det().is_zero() {
            out.push(m);
        }
    }
    out
}

/// A conjugation map with its inverse precomputed.
#[derive(Clone, Copy, Debug)]
pub struct Automorphism {
    g: Mat2,
    g_inv: Mat2,
}

impl Automorphism {
    pub fn new(g: Mat2) -> Self {
        let g_inv = g.inverse().expect("aut_elements are invertible");
        Automorphism { g, g_inv }
    }

    pub fn matrix(&self) -> Mat2 {
        self.g
    }

    pub fn apply(&self, x: &Sl2Element) -> Sl2Element {
        conjugate_with_inverse(&self.g, &self.g_inv, x)
    }
}

pub fn automorphisms(field: Field) -> Vec<Automorphism> {
    aut_elements(field).into_iter().map(Automorphism::new).collect()
}

/// Whether some automorphism maps `s` onto `t` entrywise.
pub fn same_tuple_orbit(s: &[Sl2Element], t: &[Sl2Element]) -> bool {
    let Some(first) = s.first() else { return t.is_empty() };
    s.len() == t.len()
        && automorphisms(first.field())
            .iter()
            .any(|phi| s.iter().zip(t).all(|(x, y)| phi.apply(x) == *y))
}

/// Counts of generating `k`-tuples and their automorphism orbits.
#[derive(Clone, Debug, Serialize)]
pub struct GenerationReport {
    pub q: u64,
    pub k: usize,
    pub total_tuples: u64,
    pub generating_tuples: u64,
    pub aut_order: u64,
    pub orbit_count: u64,
    /// Every orbit has exactly `aut_order` tuples.
    pub free: bool,
    /// Smallest tuple of each orbit.
    #[serde(skip)]
    pub representatives: Vec<Vec<Sl2Element>>,
}

impl GenerationReport {
    /// One row per orbit: index, then the tuple entries as `a,b,c`.
    pub fn representatives_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["orbit".to_string()];
        header.extend((1..=self.k).map(|i| format!("x{i}")));
        w.write_record(&header)?;
        for (i, t) in self.representatives.iter().enumerate() {
            let mut row = vec![i.to_string()];
            row.extend(t.iter().map(|x| x.to_string()));
            w.write_record(&row)?;
        }
        Ok(String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8"))
    }
}

fn element_index(x: &Sl2Element) -> u64 {
    let q = x.field().q();
    (x.a.code() * q + x.b.code()) * q + x.c.code()
}

fn tuple_index(t: &[Sl2Element]) -> u64 {
    let n = t[0].field().q().pow(3);
    t.iter().fold(0, |acc, x| acc * n + element_index(x))
}

fn tuple_from_index(field: Field, k: usize, mut idx: u64) -> Vec<Sl2Element> {
    let n = field.q().pow(3);
    let mut out = vec![Sl2Element::zero(field); k];
    for slot in out.iter_mut().rev() {
        *slot = Sl2Element::from_index(field, idx % n);
        idx /= n;
    }
    out
}

pub fn tuple_orbit_census(field: Field, k: usize) -> Result<GenerationReport, GensetError> {
    if k == 0 {
        return Err(GensetError::EmptyTuple);
    }
    let q = field.q();
    let auts = automorphisms(field);
    let aut_order = auts.len() as u64;
    let total = (q as u128).pow(3 * k as u32);
    check_sweep(field, total * aut_order as u128)?;
    let total = total as u64;
    let generating: Vec<bool> = (0..total)
        .into_par_iter()
        .map(|i| generates(&tuple_from_index(field, k, i)))
        .collect();
    let mut seen = vec![false; total as usize];
    let (mut orbit_count, mut free, mut representatives) = (0, true, Vec::new());
    for i in 0..total {
        if !generating[i as usize] || seen[i as usize] {
            continue;
        }
        let t = tuple_from_index(field, k, i);
        let mut size = 0;
        for phi in &auts {
            let image: Vec<Sl2Element> = t.iter().map(|x| phi.apply(x)).collect();
            let j = tuple_index(&image) as usize;
            if !seen[j] {
                seen[j] = true;
                size += 1;
            }
        }
        free &= size == aut_order;
        orbit_count += 1;
        representatives.push(t);
    }
    let generating_tuples = generating.iter().filter(|g| **g).count() as u64;
    Ok(GenerationReport {
        q,
        k,
        total_tuples: total,
        generating_tuples,
        aut_order,
        orbit_count,
        free: free && orbit_count * aut_order == generating_tuples,
        representatives,
    })
}
