use serde::Serialize;

use super::families::{FamilyParams, WmnParams, WnParams, ZeroBlock};
use super::WordError;

/// What the parameters are searched for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "goal", rename_all = "kebab-case")]
pub enum Goal {
    /// `w_n` with `n = (d−1)/2` for the largest odd divisor `d` of `q−1`,
    /// `n + j` odd, `i = j + 2` and `j − 2n − 1 + σ ≡ 2 (mod q−1)`.
    MissedOrbits,
    /// `w_{m,n}` with `α_s − β_s = c`, `2m ≡ 2n + m ≡ 0` and
    /// `Σβ_s + σ ≡ γ (mod q−1)`, `γ` an odd divisor of `q−1`.
    OddGamma { gamma: u64, c: u64 },
    /// `w⁰_{m,n}` with `α_s − β_s = 2`, `2m + 2 ≡ 2n + m + 3 ≡ 0` and
    /// `Σ_{s≥0} β_s + σ₀ ≡ γ (mod q−1)`, `γ` an even divisor of `q−1`.
    EvenGamma { gamma: u64 },
}

/// Largest exponent the search may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    pub max_exponent: u64,
}

impl SearchBudget {
    pub fn for_q(q: u64) -> SearchBudget {
        SearchBudget { max_exponent: 4 * (q - 1) }
    }
}

/// Deterministic smallest-first search for parameters meeting `goal` at `q`.
pub fn search_params(goal: Goal, q: u64, budget: SearchBudget) -> Result<FamilyParams, WordError> {
    if q < 3 || q % 2 == 0 {
        return Err(WordError::InvalidExponent(format!("q must be odd and at least 3, got {q}")));
    }
    let found = match goal {
        Goal::MissedOrbits => missed_orbits(q, budget).map(FamilyParams::Wn),
        Goal::OddGamma { gamma, c } => odd_gamma(q, gamma, c, budget).map(FamilyParams::Wmn),
        Goal::EvenGamma { gamma } => even_gamma(q, gamma, budget).map(FamilyParams::W0mn),
    };
    found.ok_or(WordError::NoWitnessInBudget(budget.max_exponent))
}

pub(crate) fn largest_odd_divisor(mut k: u64) -> u64 {
    while k > 0 && k % 2 == 0 {
        k /= 2;
    }
    k
}

/// Smallest `t ≥ lower` with `t ≡ target (mod modulus)`.
fn lift(target: u64, modulus: u64, lower: u64) -> u64 {
    let r = target % modulus;
    if lower <= r {
        return r;
    }
    let k = (lower - r).div_ceil(modulus);
    r + k * modulus
}

/// Adds `extra` (even) in steps of two across the slots, each capped at `cap`.
fn spread(slots: &mut [&mut u64], mut extra: u64, cap: u64) -> bool {
    for slot in slots.iter_mut() {
        if extra == 0 {
            break;
        }
        let room = cap.saturating_sub(**slot) / 2 * 2;
        let add = room.min(extra);
        **slot += add;
        extra -= add;
    }
    extra == 0
}

fn missed_orbits(q: u64, budget: SearchBudget) -> Option<WnParams> {
    let modulus = q - 1;
    let d = largest_odd_divisor(modulus);
    if d < 3 {
        return None;
    }
    let n = (d - 1) / 2;
    let cap = budget.max_exponent;
    for j in 1..=cap.saturating_sub(2) {
        if (n + j) % 2 == 0 {
            continue;
        }
        let i = j + 2;
        // j − 2n − 1 + σ ≡ 2, so σ ≡ 2n + 3 − j.
        let target = (2 * n + 3 + modulus * (j / modulus + 1) - j) % modulus;
        let mut sigma = lift(target, modulus, 3 * n);
        if sigma % 2 != n % 2 {
            sigma += modulus;
            if sigma % 2 != n % 2 {
                continue;
            }
        }
        let mut pairs = vec![(1u64, 2u64); n as usize];
        let mut slots: Vec<&mut u64> = pairs.iter_mut().map(|p| &mut p.1).collect();
        if !spread(&mut slots, sigma - 3 * n, cap) {
            continue;
        }
        let p = WnParams { i, j, pairs };
        if p.violations().is_empty() {
            return Some(p);
        }
    }
    None
}

fn odd_gamma(q: u64, gamma: u64, c: u64, budget: SearchBudget) -> Option<WmnParams> {
    let modulus = q - 1;
    if gamma <= 1 || gamma % 2 == 0 || modulus % gamma != 0 || (c != 2 && c != modulus) {
        return None;
    }
    let cap = budget.max_exponent;
    for m in (2..=cap).filter(|m| (2 * m) % modulus == 0) {
        for n in (1..=cap).filter(|n| (2 * n + m) % modulus == 0) {
            if let Some(p) = odd_gamma_at(q, gamma, c, m, n, cap) {
                return Some(p);
            }
        }
    }
    None
}

fn odd_gamma_at(q: u64, gamma: u64, c: u64, m: u64, n: u64, cap: u64) -> Option<WmnParams> {
    let modulus = q - 1;
    let mut betas = vec![1u64; m as usize];
    betas[1] = if n % 2 == 1 { 1 } else { 2 };
    if m % 2 == 1 {
        betas[m as usize - 1] = 2;
    }
    let mut pairs = vec![(1u64, 2u64); n as usize];
    let sum = betas.iter().sum::<u64>() + 3 * n;
    let target = lift(gamma, modulus, sum.max(2 * n + m + 2));
    if (target - sum) % 2 != 0 {
        return None;
    }
    let beta_cap = cap.checked_sub(c)?;
    let extra = target - sum;
    let first_add = (beta_cap.saturating_sub(betas[0]) / 2 * 2).min(extra);
    betas[0] += first_add;
    let mut slots: Vec<&mut u64> = pairs.iter_mut().map(|p| &mut p.1).collect();
    if !spread(&mut slots, extra - first_add, cap) {
        return None;
    }
    let alphas = betas.iter().map(|b| b + c).collect();
    let p = WmnParams { alphas, betas, pairs, zero: None };
    (p.violations().is_empty() && (p.beta_sum() + p.sigma()) % modulus == gamma % modulus).then_some(p)
}

fn even_gamma(q: u64, gamma: u64, budget: SearchBudget) -> Option<WmnParams> {
    let modulus = q - 1;
    if gamma == 0 || gamma % 2 == 1 || modulus % gamma != 0 {
        return None;
    }
    let cap = budget.max_exponent;
    for m in (2..=cap).filter(|m| (2 * m + 2) % modulus == 0) {
        for n in (1..=cap).filter(|n| (2 * n + m + 3) % modulus == 0) {
            if let Some(p) = even_gamma_at(q, gamma, m, n, cap) {
                return Some(p);
            }
        }
    }
    None
}

/// Tries every parity-admissible base choice for `(m, n)`; each is then
/// raised in steps of two towards the target residue.
fn even_gamma_at(q: u64, gamma: u64, m: u64, n: u64, cap: u64) -> Option<WmnParams> {
    let modulus = q - 1;
    for beta0 in [1u64, 2] {
        for (i0, j0) in [(1u64, 2u64), (1, 1)] {
            for b2 in [1u64, 2] {
                for last in [2u64, 1] {
                    let mut betas = vec![1u64; m as usize];
                    betas[1] = b2;
                    betas[m as usize - 1] = last;
                    let mut pairs = vec![(1u64, 2u64); n as usize];
                    let zero = ZeroBlock { alpha0: beta0 + 2, beta0, i0, j0 };
                    let base = WmnParams {
                        alphas: betas.iter().map(|b| b + 2).collect(),
                        betas: betas.clone(),
                        pairs: pairs.clone(),
                        zero: Some(zero),
                    };
                    if !base.zero_violations().iter().all(|v| v.starts_with('Σ')) {
                        continue;
                    }
                    let sum = base.zero_sum();
                    let target = lift(gamma, modulus, sum.max(2 * n + m + 5));
                    if (target - sum) % 2 != 0 {
                        continue;
                    }
                    let extra = target - sum;
                    let first_add = ((cap - 2).saturating_sub(betas[0]) / 2 * 2).min(extra);
                    betas[0] += first_add;
                    let mut slots: Vec<&mut u64> = pairs.iter_mut().map(|p| &mut p.1).collect();
                    if !spread(&mut slots, extra - first_add, cap) {
                        continue;
                    }
                    let p = WmnParams { alphas: betas.iter().map(|b| b + 2).collect(), betas, pairs, zero: Some(zero) };
                    if p.zero_violations().is_empty() && p.zero_sum() % modulus == gamma % modulus {
                        return Some(p);
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn search(goal: Goal, q: u64) -> Result<FamilyParams, WordError> {
        search_params(goal, q, SearchBudget::for_q(q))
    }

    #[test]
    fn missed_orbits_q7() {
        let FamilyParams::Wn(p) = search(Goal::MissedOrbits, 7).unwrap() else { panic!() };
        assert_eq!(p, WnParams { i: 4, j: 2, pairs: vec![(1, 2)] });
    }

    #[test]
    fn missed_orbits_congruence_holds() {
        for q in [7u64, 11, 19, 23, 27, 29, 31, 43, 47] {
            let FamilyParams::Wn(p) = search(Goal::MissedOrbits, q).unwrap() else { panic!() };
            let n = (largest_odd_divisor(q - 1) - 1) / 2;
            assert_eq!(p.n(), n, "q={q}");
            assert_eq!(p.i, p.j + 2);
            assert_eq!((p.j + p.sigma()) % (q - 1), (2 + 2 * n + 1) % (q - 1), "q={q}");
            assert!(p.violations().is_empty());
        }
        let FamilyParams::Wn(p) = search(Goal::MissedOrbits, 29).unwrap() else { panic!() };
        assert_eq!((p.n(), p.j, p.i, p.sigma()), (3, 2, 4, 35));
    }

    #[test]
    fn missed_orbits_needs_an_odd_divisor() {
        for q in [3u64, 5, 9, 17] {
            assert_eq!(search(Goal::MissedOrbits, q).unwrap_err(), WordError::NoWitnessInBudget(4 * (q - 1)));
        }
    }

    #[test]
    fn odd_gamma_q7() {
        for c in [2u64, 6] {
            let FamilyParams::Wmn(p) = search(Goal::OddGamma { gamma: 3, c }, 7).unwrap() else { panic!() };
            let (m, n) = (p.m() as u64, p.n());
            assert_eq!((2 * m) % 6, 0);
            assert_eq!((2 * n + m) % 6, 0);
            assert_eq!((p.beta_sum() + p.sigma()) % 6, 3);
            assert!(p.alphas.iter().zip(&p.betas).all(|(a, b)| a - b == c));
            assert!(p.violations().is_empty());
        }
    }

    #[test]
    fn odd_gamma_rejects_bad_goals() {
        assert!(search(Goal::OddGamma { gamma: 5, c: 2 }, 7).is_err());
        assert!(search(Goal::OddGamma { gamma: 3, c: 4 }, 7).is_err());
        assert!(search(Goal::OddGamma { gamma: 2, c: 2 }, 7).is_err());
    }

    #[test]
    fn searches_are_deterministic() {
        let a = search(Goal::OddGamma { gamma: 5, c: 2 }, 11).unwrap();
        let b = search(Goal::OddGamma { gamma: 5, c: 2 }, 11).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift(7, 28, 9), 35);
        assert_eq!(lift(3, 6, 3), 3);
        assert_eq!(lift(3, 6, 0), 3);
        assert_eq!(lift(0, 6, 1), 6);
    }
}
