use std::fmt;

use serde::Serialize;

use super::{LieWord, WordError};

fn adx(n: u64) -> LieWord {
    LieWord::ad_pow(LieWord::var(1), n, LieWord::var(2))
}

/// `ad(x1, i, x2) - ad(x1, j, x2)`.
pub fn engel_diff(i: u64, j: u64) -> Result<LieWord, WordError> {
    check_engel_pair(i, j)?;
    Ok(LieWord::difference(adx(i), adx(j)))
}

/// `[ad(x1, i, x2), ad(x1, j, x2)]`.
pub fn engel_commutator(i: u64, j: u64) -> Result<LieWord, WordError> {
    check_engel_pair(i, j)?;
    Ok(LieWord::bracket(adx(i), adx(j)))
}

fn check_engel_pair(i: u64, j: u64) -> Result<(), WordError> {
    if i == 0 || j == 0 {
        return Err(WordError::InvalidExponent(format!("exponents must be at least 1, got ({i}, {j})")));
    }
    if i == j {
        return Err(WordError::InvalidExponent(format!("exponents must differ, got ({i}, {j})")));
    }
    Ok(())
}

/// Parameters of `w_n = [...[[D(i,j), C(i1,j1)], C(i2,j2)], ..., C(in,jn)]` where
/// `D` is the Engel difference and `C` the Engel commutator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WnParams {
    pub i: u64,
    pub j: u64,
    pub pairs: Vec<(u64, u64)>,
}

impl WnParams {
    pub fn n(&self) -> u64 {
        self.pairs.len() as u64
    }

    pub fn sigma(&self) -> u64 {
        self.pairs.iter().map(|(a, b)| a + b).sum()
    }

    /// Every violated hypothesis, by name.
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.j < 1 {
            v.push("j ≥ 1".to_string());
        }
        if self.i <= self.j {
            v.push("i > j".to_string());
        }
        if self.i.abs_diff(self.j) % 2 != 0 {
            v.push("i−j even".to_string());
        }
        pair_violations(&self.pairs, 1, &mut v);
        if self.sigma() < 3 * self.n() {
            v.push("σ ≥ 3n".to_string());
        }
        v
    }
}

fn pair_violations(pairs: &[(u64, u64)], first: usize, v: &mut Vec<String>) {
    if pairs.is_empty() {
        v.push("n ≥ 1".to_string());
    }
    for (k, (a, b)) in pairs.iter().enumerate() {
        let r = k + first;
        if *a == 0 || *b == 0 {
            v.push(format!("i_{r}, j_{r} ≥ 1"));
        }
        if (a + b) % 2 == 0 {
            v.push(format!("i_{r} + j_{r} odd"));
        }
    }
}

/// The extra block `(α₀, β₀, i₀, j₀)` of the `w⁰_{m,n}` variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ZeroBlock {
    pub alpha0: u64,
    pub beta0: u64,
    pub i0: u64,
    pub j0: u64,
}

/// Parameters of `w_{m,n}` and `w⁰_{m,n}`. `alphas[0], betas[0]` play the
/// role of `i, j` in the innermost `w_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WmnParams {
    pub alphas: Vec<u64>,
    pub betas: Vec<u64>,
    pub pairs: Vec<(u64, u64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero: Option<ZeroBlock>,
}

/// Which parity pattern of `β₃, …, β_m` holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BetaPattern {
    /// `β₃…β_{2m₁}` even and the rest odd.
    Case1,
    /// `β₃…β_{m−1}` odd, `m` odd, `β_m` even.
    Case2,
}

impl WmnParams {
    pub fn m(&self) -> usize {
        self.alphas.len()
    }

    pub fn n(&self) -> u64 {
        self.pairs.len() as u64
    }

    pub fn sigma(&self) -> u64 {
        self.pairs.iter().map(|(a, b)| a + b).sum()
    }

    pub fn beta_sum(&self) -> u64 {
        self.betas.iter().sum()
    }

    /// `w_{1,n}` as `w_n` parameters.
    pub fn inner(&self) -> WnParams {
        WnParams {
            i: self.alphas.first().copied().unwrap_or(0),
            j: self.betas.first().copied().unwrap_or(0),
            pairs: self.pairs.clone(),
        }
    }

    pub fn beta_pattern(&self) -> Option<BetaPattern> {
        let m = self.betas.len();
        if m < 2 {
            return None;
        }
        let tail = &self.betas[2..];
        let even = |b: &u64| b % 2 == 0;
        if m % 2 == 1 && m >= 3 && even(&tail[tail.len() - 1]) && tail[..tail.len() - 1].iter().all(|b| !even(b)) {
            return Some(BetaPattern::Case2);
        }
        for m1 in 1..=m / 2 {
            let cut = 2 * m1 - 2;
            if tail[..cut].iter().all(even) && tail[cut..].iter().all(|b| !even(b)) {
                return Some(BetaPattern::Case1);
            }
        }
        None
    }

    fn shape_violations(&self, v: &mut Vec<String>) {
        if self.alphas.len() != self.betas.len() {
            v.push("|alphas| = |betas|".to_string());
        }
        if self.alphas.is_empty() {
            v.push("m ≥ 1".to_string());
        }
        for (k, (a, b)) in self.alphas.iter().zip(&self.betas).enumerate() {
            let s = k + 1;
            if *b == 0 {
                v.push(format!("β_{s} ≥ 1"));
            }
            if a <= b || (a - b) % 2 != 0 {
                v.push(format!("α_{s} − β_{s} positive and even"));
            }
        }
        pair_violations(&self.pairs, 1, v);
    }

    /// Every violated hypothesis of `w_{m,n}`, by name.
    pub fn violations(&self) -> Vec<String> {
        if self.alphas.len() == 1 && self.betas.len() == 1 {
            return self.inner().violations();
        }
        let mut v = Vec::new();
        self.shape_violations(&mut v);
        if !v.is_empty() {
            return v;
        }
        let (m, n) = (self.m() as u64, self.n());
        if (self.betas[0] + self.betas[1] + n) % 2 == 0 {
            v.push("β₁ + β₂ + n odd".to_string());
        }
        if self.beta_sum() + self.sigma() <= 2 * n + m + 1 {
            v.push("Σβ_s + σ − 2n − m − 1 > 0".to_string());
        }
        if self.beta_pattern().is_none() {
            v.push("β parity pattern (case 1 or case 2)".to_string());
        }
        v
    }

    /// Every violated hypothesis of `w⁰_{m,n}`, by name.
    pub fn zero_violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        self.shape_violations(&mut v);
        if self.m() < 2 {
            v.push("m ≥ 2".to_string());
        }
        let Some(z) = self.zero else {
            v.push("zero block (α₀, β₀, i₀, j₀) present".to_string());
            return v;
        };
        if !v.is_empty() {
            return v;
        }
        let (m, n) = (self.m() as u64, self.n());
        if (self.betas[0] + self.betas[1] + n) % 2 == 0 {
            v.push("β₁ + β₂ + n odd".to_string());
        }
        if z.i0 == 0 || z.j0 == 0 || z.beta0 == 0 {
            v.push("α₀, β₀, i₀, j₀ ≥ 1".to_string());
        }
        if (z.i0 + z.j0) % 2 == 0 {
            v.push("i₀ + j₀ odd".to_string());
        }
        if z.beta0 % 2 == 0 {
            v.push("β₀ odd".to_string());
        }
        if n % 2 == 0 {
            v.push("n odd".to_string());
        }
        if z.alpha0 <= z.beta0 || (z.alpha0 - z.beta0) % 2 != 0 {
            v.push("α₀ − β₀ positive and even".to_string());
        }
        if self.zero_sum() <= 2 * n + m + 4 {
            v.push("Σ_{s≥0} β_s + σ₀ − 2n − m > 4".to_string());
        }
        if self.beta_pattern() != Some(BetaPattern::Case2) {
            v.push("β parity pattern case 2 (β₃…β_{m−1} odd, m odd, β_m even)".to_string());
        }
        v
    }

    /// `Σ_{s=0}^m β_s + Σ_{r=0}^n (i_r + j_r)`; zero when there is no zero block.
    pub fn zero_sum(&self) -> u64 {
        match self.zero {
            Some(z) => z.beta0 + z.i0 + z.j0 + self.beta_sum() + self.sigma(),
            None => 0,
        }
    }
}

fn raise(v: Vec<String>) -> Result<(), WordError> {
    if v.is_empty() {
        Ok(())
    } else {
        Err(WordError::HypothesisViolation(v))
    }
}

fn diff_unchecked(i: u64, j: u64) -> LieWord {
    LieWord::difference(adx(i), adx(j))
}

fn comm_unchecked(i: u64, j: u64) -> LieWord {
    LieWord::bracket(adx(i), adx(j))
}

fn wn_unchecked(i: u64, j: u64, pairs: &[(u64, u64)]) -> LieWord {
    pairs
        .iter()
        .fold(diff_unchecked(i, j), |acc, &(a, b)| LieWord::bracket(acc, comm_unchecked(a, b)))
}

fn wmn_unchecked(p: &WmnParams) -> LieWord {
    let base = wn_unchecked(p.alphas[0], p.betas[0], &p.pairs);
    p.alphas[1..]
        .iter()
        .zip(&p.betas[1..])
        .fold(base, |acc, (&a, &b)| LieWord::bracket(acc, diff_unchecked(a, b)))
}

pub fn w_n(p: &WnParams) -> Result<LieWord, WordError> {
    raise(p.violations())?;
    Ok(wn_unchecked(p.i, p.j, &p.pairs))
}

pub fn w_mn(p: &WmnParams) -> Result<LieWord, WordError> {
    raise(p.violations())?;
    Ok(wmn_unchecked(p))
}

pub fn w0_mn(p: &WmnParams) -> Result<LieWord, WordError> {
    raise(p.zero_violations())?;
    let z = p.zero.expect("validated");
    let head = LieWord::bracket(diff_unchecked(z.alpha0, z.beta0), comm_unchecked(z.i0, z.j0));
    Ok(LieWord::bracket(head, wmn_unchecked(p)))
}

/// A named family together with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilyParams {
    EngelDiff { i: u64, j: u64 },
    EngelCommutator { i: u64, j: u64 },
    Wn(WnParams),
    Wmn(WmnParams),
    W0mn(WmnParams),
}

impl FamilyParams {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyParams::EngelDiff { .. } => "engel-diff",
            FamilyParams::EngelCommutator { .. } => "engel-commutator",
            FamilyParams::Wn(_) => "wn",
            FamilyParams::Wmn(_) => "wmn",
            FamilyParams::W0mn(_) => "w0mn",
        }
    }

    pub fn build(&self) -> Result<LieWord, WordError> {
        match self {
            FamilyParams::EngelDiff { i, j } => engel_diff(*i, *j),
            FamilyParams::EngelCommutator { i, j } => engel_commutator(*i, *j),
            FamilyParams::Wn(p) => w_n(p),
            FamilyParams::Wmn(p) => w_mn(p),
            FamilyParams::W0mn(p) => w0_mn(p),
        }
    }

    /// Parses a family name and a `key=value` list such as
    /// `i=4,j=2,pairs=2:1,1:2`. A comma-separated token without `=`
    /// continues the previous key's list.
    pub fn parse(family: &str, params: &str) -> Result<FamilyParams, WordError> {
        let kv = KeyValues::parse(params)?;
        let fam = match family {
            "engel-diff" | "diff" => FamilyParams::EngelDiff { i: kv.int("i")?, j: kv.int("j")? },
            "engel-commutator" | "comm" => FamilyParams::EngelCommutator { i: kv.int("i")?, j: kv.int("j")? },
            "wn" => FamilyParams::Wn(WnParams { i: kv.int("i")?, j: kv.int("j")?, pairs: kv.pairs("pairs")? }),
            "wmn" | "w0mn" => {
                let mut p = WmnParams {
                    alphas: kv.ints("alphas")?,
                    betas: kv.ints("betas")?,
                    pairs: kv.pairs("pairs")?,
                    zero: None,
                };
                if family == "w0mn" {
                    let (i0, j0) = match kv.pairs("pair0")?.as_slice() {
                        [pair] => *pair,
                        _ => (kv.int("i0")?, kv.int("j0")?),
                    };
                    p.zero = Some(ZeroBlock { alpha0: kv.int("alpha0")?, beta0: kv.int("beta0")?, i0, j0 });
                    FamilyParams::W0mn(p)
                } else {
                    FamilyParams::Wmn(p)
                }
            }
            other => return Err(WordError::InvalidExponent(format!("unknown family {other:?}"))),
        };
        Ok(fam)
    }
}

fn join<T: fmt::Display>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn join_pairs(ps: &[(u64, u64)]) -> String {
    join(ps.iter().map(|(a, b)| format!("{a}:{b}")))
}

/// Renders the `key=value` list accepted by [`FamilyParams::parse`].
impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyParams::EngelDiff { i, j } | FamilyParams::EngelCommutator { i, j } => write!(f, "i={i},j={j}"),
            FamilyParams::Wn(p) => write!(f, "i={},j={},pairs={}", p.i, p.j, join_pairs(&p.pairs)),
            FamilyParams::Wmn(p) | FamilyParams::W0mn(p) => {
                write!(f, "alphas={},betas={},pairs={}", join(&p.alphas), join(&p.betas), join_pairs(&p.pairs))?;
                if let Some(z) = p.zero {
                    write!(f, ",alpha0={},beta0={},pair0={}:{}", z.alpha0, z.beta0, z.i0, z.j0)?;
                }
                Ok(())
            }
        }
    }
}

struct KeyValues(Vec<(String, Vec<String>)>);

impl KeyValues {
    fn parse(text: &str) -> Result<KeyValues, WordError> {
        let mut out: Vec<(String, Vec<String>)> = Vec::new();
        for token in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match token.split_once('=') {
                Some((k, v)) => out.push((k.trim().to_string(), vec![v.trim().to_string()])),
                None => match out.last_mut() {
                    Some((_, vals)) => vals.push(token.to_string()),
                    None => return Err(WordError::InvalidExponent(format!("value {token:?} has no key"))),
                },
            }
        }
        Ok(KeyValues(out))
    }

    fn get(&self, key: &str) -> Option<&[String]> {
        self.0.iter().rev().find(|(k, _)| k == key).map(|(_, v)| v.as_slice())
    }

    fn required(&self, key: &str) -> Result<&[String], WordError> {
        self.get(key).ok_or_else(|| WordError::InvalidExponent(format!("missing parameter {key}")))
    }

    fn int(&self, key: &str) -> Result<u64, WordError> {
        match self.required(key)? {
            [v] => parse_u64(key, v),
            _ => Err(WordError::InvalidExponent(format!("{key} takes a single integer"))),
        }
    }

    fn ints(&self, key: &str) -> Result<Vec<u64>, WordError> {
        self.required(key)?.iter().map(|v| parse_u64(key, v)).collect()
    }

    fn pairs(&self, key: &str) -> Result<Vec<(u64, u64)>, WordError> {
        let Some(vals) = self.get(key) else { return Ok(Vec::new()) };
        vals.iter()
            .map(|v| {
                let (a, b) = v
                    .split_once(':')
                    .ok_or_else(|| WordError::InvalidExponent(format!("{key}: expected i:j, got {v:?}")))?;
                Ok((parse_u64(key, a)?, parse_u64(key, b)?))
            })
            .collect()
    }
}

fn parse_u64(key: &str, v: &str) -> Result<u64, WordError> {
    v.trim().parse().map_err(|_| WordError::InvalidExponent(format!("{key}: {v:?} is not a non-negative integer")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn engel_words() {
        assert_eq!(engel_diff(2, 6).unwrap().to_string(), "ad(x1, 2, x2) - ad(x1, 6, x2)");
        assert_eq!(engel_commutator(1, 2).unwrap().to_string(), "[ad(x1, 1, x2), ad(x1, 2, x2)]");
        assert!(engel_diff(3, 3).is_err());
        assert!(engel_commutator(0, 3).is_err());
    }

    #[test]
    fn wn_example() {
        let p = WnParams { i: 4, j: 2, pairs: vec![(2, 1)] };
        assert_eq!(
            w_n(&p).unwrap().to_string(),
            "[ad(x1, 4, x2) - ad(x1, 2, x2), [ad(x1, 2, x2), ad(x1, 1, x2)]]"
        );
        let bad = WnParams { i: 5, j: 2, pairs: vec![(2, 1)] };
        match w_n(&bad).unwrap_err() {
            WordError::HypothesisViolation(v) => assert_eq!(v, vec!["i−j even".to_string()]),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn all_violations_are_listed() {
        let bad = WnParams { i: 1, j: 2, pairs: vec![(1, 1), (0, 3)] };
        let v = bad.violations();
        assert!(v.contains(&"i > j".to_string()));
        assert!(v.contains(&"i−j even".to_string()));
        assert!(v.contains(&"i_1 + j_1 odd".to_string()));
        assert!(v.contains(&"i_2, j_2 ≥ 1".to_string()));
        assert!(v.contains(&"σ ≥ 3n".to_string()));
    }

    #[test]
    fn wmn_with_m_one_is_wn() {
        let p = WmnParams { alphas: vec![4], betas: vec![2], pairs: vec![(2, 1)], zero: None };
        assert_eq!(w_mn(&p).unwrap(), w_n(&p.inner()).unwrap());
    }

    #[test]
    fn wmn_nesting() {
        let p = WmnParams { alphas: vec![3, 3], betas: vec![1, 1], pairs: vec![(1, 4)], zero: None };
        assert_eq!(
            w_mn(&p).unwrap().to_string(),
            "[[ad(x1, 3, x2) - ad(x1, 1, x2), [ad(x1, 1, x2), ad(x1, 4, x2)]], ad(x1, 3, x2) - ad(x1, 1, x2)]"
        );
    }

    #[test]
    fn beta_patterns() {
        let mk = |betas: Vec<u64>| WmnParams {
            alphas: betas.iter().map(|b| b + 2).collect(),
            betas,
            pairs: vec![(1, 2)],
            zero: None,
        };
        assert_eq!(mk(vec![1, 1]).beta_pattern(), Some(BetaPattern::Case1));
        assert_eq!(mk(vec![1, 1, 3, 5]).beta_pattern(), Some(BetaPattern::Case1));
        assert_eq!(mk(vec![1, 1, 2, 2, 3]).beta_pattern(), Some(BetaPattern::Case1));
        assert_eq!(mk(vec![1, 1, 1, 1, 2]).beta_pattern(), Some(BetaPattern::Case2));
        assert_eq!(mk(vec![1, 1, 2]).beta_pattern(), Some(BetaPattern::Case2));
        assert_eq!(mk(vec![1, 1, 3, 2]).beta_pattern(), None);
        assert_eq!(mk(vec![1, 1, 2, 2]).beta_pattern(), Some(BetaPattern::Case1));
    }

    #[test]
    fn w0_requires_its_block() {
        let mut p = WmnParams { alphas: vec![3, 3, 4], betas: vec![1, 1, 2], pairs: vec![(1, 2)], zero: None };
        assert!(w0_mn(&p).is_err());
        p.zero = Some(ZeroBlock { alpha0: 3, beta0: 1, i0: 1, j0: 2 });
        let w = w0_mn(&p).unwrap();
        assert!(w.to_string().starts_with("[[ad(x1, 3, x2) - ad(x1, 1, x2), [ad(x1, 1, x2), ad(x1, 2, x2)]], [["));
        p.zero = Some(ZeroBlock { alpha0: 4, beta0: 2, i0: 1, j0: 1 });
        let v = p.zero_violations();
        assert!(v.contains(&"β₀ odd".to_string()));
        assert!(v.contains(&"i₀ + j₀ odd".to_string()));
    }

    #[test]
    fn key_value_round_trip() {
        let cases = [
            ("wn", "i=4,j=2,pairs=2:1,1:2"),
            ("engel-diff", "i=2,j=6"),
            ("wmn", "alphas=3,3,betas=1,1,pairs=1:2"),
            ("w0mn", "alphas=3,3,4,betas=1,1,2,pairs=1:2,alpha0=3,beta0=1,pair0=1:2"),
        ];
        for (fam, text) in cases {
            let p = FamilyParams::parse(fam, text).unwrap();
            assert_eq!(p.to_string(), text);
            assert_eq!(FamilyParams::parse(p.name(), &p.to_string()).unwrap(), p);
        }
        assert!(FamilyParams::parse("wn", "i=4,pairs=2:1").is_err());
        assert!(FamilyParams::parse("wn", "1,i=4").is_err());
        assert!(FamilyParams::parse("nope", "i=1").is_err());
    }
}
