//! Finite fields `F_q`, `q = p^r`, `p` odd.
//!
//! A [`Field`] is an interned, immutable descriptor: constructing the same
//! `(p, r, modulus)` twice yields the same handle, so field identity is a
//! pointer comparison and [`FieldElement`] stays `Copy`.
//!
//! Prime fields use plain residue arithmetic. Extension fields use the
//! polynomial basis over `F_p` for addition and a discrete-log table for
//! multiplication.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use thiserror::Error;

/// Extension fields are tabulated, so their order is capped.
pub const MAX_EXTENSION_ORDER: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("extension degree must be at least 1")]
    InvalidDegree,
    #[error("modulus must be monic of degree {expected}")]
    BadModulus { expected: u32 },
    #[error("modulus {0} is reducible over the prime field")]
    ReducibleModulus(String),
    #[error("field of order {0} is too large")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields ({0} and {1})")]
    FieldMismatch(u64, u64),
    #[error("cannot parse field element from {0:?}")]
    Parse(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
}

pub(crate) struct FieldInner {
    p: u32,
    r: u32,
    q: u32,
    /// Monic modulus, little-endian, `r + 1` coefficients.
    modulus: Vec<u32>,
    /// Discrete log tables; empty for prime fields.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Handle to an interned finite field.
#[derive(Clone, Copy)]
pub struct Field(&'static FieldInner);

type RegistryKey = (u32, u32, Vec<u32>);

fn registry() -> &'static Mutex<HashMap<RegistryKey, &'static FieldInner>> {
    static REGISTRY: OnceLock<Mutex<HashMap<RegistryKey, &'static FieldInner>>> = OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits `q` as `p^r` with `p` prime.
pub fn prime_power(q: u64) -> Result<(u64, u32), GfError> {
    if q < 2 {
        return Err(GfError::NotPrimePower(q));
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut rest = q;
    let mut r = 0;
    while rest % p == 0 {
        rest /= p;
        r += 1;
    }
    if rest != 1 {
        return Err(GfError::NotPrimePower(q));
    }
    Ok((p, r))
}

impl Field {
    /// Builds `F_{p^r}`. Without a modulus, the smallest monic irreducible
    /// of degree `r` is chosen, ordering candidates by the integer
    /// `c_0 + c_1 p + ... + c_{r-1} p^{r-1}`.
    pub fn new(p: u64, r: u32, modulus: Option<&[u64]>) -> Result<Field, GfError> {
        if p == 2 {
            return Err(GfError::EvenCharacteristic);
        }
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if r == 0 {
            return Err(GfError::InvalidDegree);
        }
        let q = (p as u128).pow(r);
        if r > 1 && q > MAX_EXTENSION_ORDER as u128 || q > u32::MAX as u128 / 2 {
            return Err(GfError::FieldTooLarge(q.min(u64::MAX as u128) as u64));
        }
        let p32 = p as u32;
        let modulus: Vec<u32> = match modulus {
            Some(m) => {
                if m.len() != r as usize + 1 || m[r as usize] % p != 1 {
                    return Err(GfError::BadModulus { expected: r });
                }
                let m: Vec<u32> = m.iter().map(|&c| (c % p) as u32).collect();
                if !poly::is_irreducible(&m, p32) {
                    return Err(GfError::ReducibleModulus(poly::render(&m)));
                }
                m
            }
            None if r == 1 => vec![0, 1],
            None => poly::smallest_irreducible(p32, r as usize),
        };
        if r == 1 && modulus != [0, 1] {
            // Any monic linear polynomial gives the same prime field.
            return Field::new(p, 1, None);
        }
        Ok(Field::intern(p32, r, modulus))
    }

    /// Builds the field of order `q` with the default modulus.
    pub fn with_order(q: u64) -> Result<Field, GfError> {
        if q % 2 == 0 && q > 0 {
            let (p, _) = prime_power(q)?;
            if p == 2 {
                return Err(GfError::EvenCharacteristic);
            }
        }
        let (p, r) = prime_power(q)?;
        Field::new(p, r, None)
    }

    fn intern(p: u32, r: u32, modulus: Vec<u32>) -> Field {
        let key = (p, r, modulus.clone());
        let mut reg = registry().lock().unwrap_or_else(|e| e.into_inner());
        if let Some(inner) = reg.get(&key) {
            return Field(inner);
        }
        let q = p.pow(r);
        let (exp, log) = if r == 1 {
            (Vec::new(), Vec::new())
        } else {
            poly::log_tables(p, &modulus)
        };
        let inner: &'static FieldInner = Box::leak(Box::new(FieldInner {
            p,
            r,
            q,
            modulus,
            exp,
            log,
        }));
        reg.insert(key, inner);
        Field(inner)
    }

    pub fn p(self) -> u64 {
        self.0.p as u64
    }

    pub fn r(self) -> u32 {
        self.0.r
    }

    pub fn q(self) -> u64 {
        self.0.q as u64
    }

    /// Modulus coefficients, little-endian.
    pub fn modulus(self) -> Vec<u64> {
        self.0.modulus.iter().map(|&c| c as u64).collect()
    }

    pub fn is_prime_field(self) -> bool {
        self.0.r == 1
    }

    pub fn zero(self) -> FieldElement {
        FieldElement { field: self, code: 0 }
    }

    pub fn one(self) -> FieldElement {
        FieldElement { field: self, code: 1 }
    }

    /// Reduces an integer into the prime subfield.
    pub fn from_int(self, n: i64) -> FieldElement {
        let p = self.0.p as i64;
        FieldElement {
            field: self,
            code: n.rem_euclid(p) as u32,
        }
    }

    /// Element from its polynomial-basis coefficients (little-endian).
    pub fn from_coeffs(self, coeffs: &[u64]) -> Result<FieldElement, GfError> {
        if coeffs.len() > self.0.r as usize {
            return Err(GfError::Parse(format!("{coeffs:?}")));
        }
        let p = self.0.p as u64;
        let mut code = 0u64;
        for &c in coeffs.iter().rev() {
            code = code * p + c % p;
        }
        Ok(FieldElement {
            field: self,
            code: code as u32,
        })
    }

    /// The element with enumeration index `code` (`0 <= code < q`).
    pub fn element(self, code: u64) -> FieldElement {
        assert!(code < self.q(), "element index {code} out of range for F_{}", self.q());
        FieldElement {
            field: self,
            code: code as u32,
        }
    }

    /// All `q` elements in coefficient order; `0` first, then `1`.
    pub fn elements(self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.0.q).map(move |code| FieldElement { field: self, code })
    }

    pub fn all_elements(self) -> Vec<FieldElement> {
        self.elements().collect()
    }

    /// `eta(-1) = 1` exactly when `q = 1 mod 4`.
    pub fn minus_one_is_square(self) -> bool {
        self.0.q % 4 == 1
    }

    /// Parses the textual form produced by `Display`: a decimal residue for
    /// prime fields, `(c0,c1,...)` for extension fields. Integers are also
    /// accepted for extension fields and land in the prime subfield.
    pub fn parse_element(self, text: &str) -> Result<FieldElement, GfError> {
        let t = text.trim();
        let err = || GfError::Parse(text.to_string());
        if let Some(inner) = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
            let coeffs = inner
                .split(',')
                .map(|c| c.trim().parse::<u64>().map_err(|_| err()))
                .collect::<Result<Vec<_>, _>>()?;
            if coeffs.iter().any(|&c| c >= self.p()) {
                return Err(err());
            }
            return self.from_coeffs(&coeffs);
        }
        let n: i64 = t.parse().map_err(|_| err())?;
        Ok(self.from_int(n))
    }

    fn check(self, other: Field) -> Result<(), GfError> {
        if self == other {
            Ok(())
        } else {
            Err(GfError::FieldMismatch(self.q(), other.q()))
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.r == 1 {
            write!(f, "F_{}", self.0.q)
        } else {
            write!(f, "F_{} = F_{}[t]/({})", self.0.q, self.0.p, poly::render(&self.0.modulus))
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// An element of some [`Field`]. Elements of different fields never mix:
/// the operator impls panic on mismatch, the `checked_*` methods return
/// [`GfError::FieldMismatch`].
#[derive(Clone, Copy)]
pub struct FieldElement {
    field: Field,
    code: u32,
}

impl FieldElement {
    pub fn field(self) -> Field {
        self.field
    }

    /// Enumeration index in `0..q`.
    pub fn code(self) -> u64 {
        self.code as u64
    }

    pub fn is_zero(self) -> bool {
        self.code == 0
    }

    /// Polynomial-basis coefficients, little-endian, length `r`.
    pub fn coeffs(self) -> Vec<u64> {
        let p = self.field.0.p;
        let mut c = self.code;
        (0..self.field.0.r)
            .map(|_| {
                let d = c % p;
                c /= p;
                d as u64
            })
            .collect()
    }

    #[inline]
    fn same(self, rhs: FieldElement) {
        assert!(
            self.field == rhs.field,
            "field mismatch: F_{} vs F_{}",
            self.field.q(),
            rhs.field.q()
        );
    }

    #[inline]
    fn raw_add(self, rhs: FieldElement) -> u32 {
        let f = self.field.0;
        if f.r == 1 {
            let s = self.code + rhs.code;
            if s >= f.p {
                s - f.p
            } else {
                s
            }
        } else {
            digitwise(f, self.code, rhs.code, |x, y| (x + y) % f.p)
        }
    }

    #[inline]
    fn raw_neg(self) -> u32 {
        let f = self.field.0;
        if self.code == 0 {
            0
        } else if f.r == 1 {
            f.p - self.code
        } else {
            digitwise(f, self.code, 0, |x, _| (f.p - x) % f.p)
        }
    }

    #[inline]
    fn raw_mul(self, rhs: FieldElement) -> u32 {
        let f = self.field.0;
        if self.code == 0 || rhs.code == 0 {
            return 0;
        }
        if f.r == 1 {
            ((self.code as u64 * rhs.code as u64) % f.p as u64) as u32
        } else {
            let n = f.q - 1;
            let e = f.log[self.code as usize] + f.log[rhs.code as usize];
            f.exp[(if e >= n { e - n } else { e }) as usize]
        }
    }

    pub fn checked_add(self, rhs: FieldElement) -> Result<FieldElement, GfError> {
        self.field.check(rhs.field)?;
        Ok(self + rhs)
    }

    pub fn checked_sub(self, rhs: FieldElement) -> Result<FieldElement, GfError> {
        self.field.check(rhs.field)?;
        Ok(self - rhs)
    }

    pub fn checked_mul(self, rhs: FieldElement) -> Result<FieldElement, GfError> {
        self.field.check(rhs.field)?;
        Ok(self * rhs)
    }

    pub fn checked_div(self, rhs: FieldElement) -> Result<FieldElement, GfError> {
        self.field.check(rhs.field)?;
        Ok(self * rhs.inv()?)
    }

    pub fn inv(self) -> Result<FieldElement, GfError> {
        if self.code == 0 {
            return Err(GfError::DivisionByZero);
        }
        let f = self.field.0;
        let code = if f.r == 1 {
            // a^(p-2)
            return Ok(self.pow(f.p as u64 - 2));
        } else {
            let n = f.q - 1;
            let l = f.log[self.code as usize];
            f.exp[((n - l) % n) as usize]
        };
        Ok(FieldElement {
            field: self.field,
            code,
        })
    }

    /// Square-and-multiply; `0^0 = 1`.
    pub fn pow(self, mut e: u64) -> FieldElement {
        let mut base = self;
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Power with a possibly negative exponent; `0^e` for `e < 0` is an error.
    pub fn powi(self, e: i64) -> Result<FieldElement, GfError> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Quadratic character via Euler's criterion: `a^((q-1)/2)`.
    pub fn quadratic_character(self) -> i8 {
        if self.code == 0 {
            return 0;
        }
        let t = self.pow((self.field.q() - 1) / 2);
        if t.code == 1 {
            1
        } else {
            debug_assert_eq!(t, -self.field.one());
            -1
        }
    }

    pub fn is_square(self) -> bool {
        self.quadratic_character() >= 0
    }
}

fn digitwise(f: &FieldInner, a: u32, b: u32, op: impl Fn(u32, u32) -> u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut place = 1;
    for _ in 0..f.r {
        out += op(a % f.p, b % f.p) * place;
        a /= f.p;
        b /= f.p;
        place *= f.p;
    }
    out
}

impl Add for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn add(self, rhs: FieldElement) -> FieldElement {
        self.same(rhs);
        FieldElement {
            field: self.field,
            code: self.raw_add(rhs),
        }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self + (-rhs)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field,
            code: self.raw_neg(),
        }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.same(rhs);
        FieldElement {
            field: self.field,
            code: self.raw_mul(rhs),
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.code == other.code
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.0.q.hash(state);
        self.code.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.field.0.q, self.code).cmp(&(other.field.0.q, other.code))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.0.r == 1 {
            write!(f, "{}", self.code)
        } else {
            let parts: Vec<String> = self.coeffs().iter().map(u64::to_string).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Dense polynomials over `F_p`, little-endian, used only to set up
/// extension fields.
mod poly {
    pub(super) fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub(super) fn render(m: &[u32]) -> String {
        let mut terms = Vec::new();
        for (i, &c) in m.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}t"),
                _ => format!("{coef}t^{i}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let mut acc = 1u64;
        let mut b = a as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    /// Remainder of `a` modulo a nonzero `m`.
    pub(super) fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let m = trim(m.to_vec());
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p) as u64;
        while r.len() > dm && !r.is_empty() {
            let shift = r.len() - 1 - dm;
            let factor = (*r.last().unwrap() as u64 * lead_inv) % p as u64;
            for (i, &c) in m.iter().enumerate() {
                let sub = (factor * c as u64) % p as u64;
                let slot = &mut r[shift + i];
                *slot = ((*slot as u64 + p as u64 - sub) % p as u64) as u32;
            }
            r = trim(r);
        }
        r
    }

    fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        rem(&out.into_iter().map(|c| c as u32).collect::<Vec<_>>(), m, p)
    }

    fn from_code(mut code: u32, len: usize, p: u32) -> Vec<u32> {
        let mut v = Vec::with_capacity(len);
        for _ in 0..len {
            v.push(code % p);
            code /= p;
        }
        trim(v)
    }

    fn to_code(v: &[u32], p: u32) -> u32 {
        v.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    /// No monic factor of degree `1..=deg/2`; exhaustive.
    pub(super) fn is_irreducible(m: &[u32], p: u32) -> bool {
        let m = trim(m.to_vec());
        let deg = m.len() - 1;
        if deg == 0 {
            return false;
        }
        for d in 1..=deg / 2 {
            let count = p.pow(d as u32);
            for low in 0..count {
                let mut cand = from_code(low, d, p);
                cand.resize(d, 0);
                cand.push(1);
                if rem(&m, &cand, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    pub(super) fn smallest_irreducible(p: u32, r: usize) -> Vec<u32> {
        let count = p.pow(r as u32);
        for low in 0..count {
            let mut cand = from_code(low, r, p);
            cand.resize(r, 0);
            cand.push(1);
            if is_irreducible(&cand, p) {
                return cand;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// `(exp, log)` for the smallest generator of the multiplicative group.
    pub(super) fn log_tables(p: u32, m: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let r = m.len() - 1;
        let q = p.pow(r as u32);
        let n = q - 1;
        for g in 2..q {
            let gp = from_code(g, r, p);
            let mut exp = Vec::with_capacity(n as usize);
            let mut cur = vec![1u32];
            let mut ok = true;
            for k in 0..n {
                let code = to_code(&cur, p);
                if k > 0 && code == 1 {
                    ok = false;
                    break;
                }
                exp.push(code);
                cur = mul_mod(&cur, &gp, m, p);
            }
            if ok && to_code(&cur, p) == 1 {
                let mut log = vec![0u32; q as usize];
                for (k, &c) in exp.iter().enumerate() {
                    log[c as usize] = k as u32;
                }
                return (exp, log);
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn prime_field_basics() {
        let f3 = Field::new(3, 1, None).unwrap();
        assert_eq!(f3.q(), 3);
        let elems: Vec<String> = f3.elements().map(|e| e.to_string()).collect();
        assert_eq!(elems, ["0", "1", "2"]);
        assert_eq!(f(7).from_int(3).inv().unwrap(), f(7).from_int(5));
        assert_eq!(f(7).zero().pow(0), f(7).one());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(2, 1, None).unwrap_err(), GfError::EvenCharacteristic);
        assert_eq!(Field::new(9, 1, None).unwrap_err(), GfError::NotPrime(9));
        assert!(matches!(
            Field::new(3, 2, Some(&[0, 0, 1])).unwrap_err(),
            GfError::ReducibleModulus(_)
        ));
        assert!(matches!(
            Field::new(3, 2, Some(&[1, 1])).unwrap_err(),
            GfError::BadModulus { .. }
        ));
        assert_eq!(Field::with_order(4).unwrap_err(), GfError::EvenCharacteristic);
        assert_eq!(Field::with_order(12).unwrap_err(), GfError::NotPrimePower(12));
    }

    #[test]
    fn f9_uses_t_squared_plus_one() {
        // Monic quadratics over F_3 in order: t^2, t^2+1, ...; t^2 = t*t is
        // reducible and t^2+1 has no root in {0,1,2}.
        let f9 = Field::new(3, 2, None).unwrap();
        assert_eq!(f9.modulus(), vec![1, 0, 1]);
        assert_eq!(f9.all_elements().len(), 9);
        assert!(f9.all_elements()[0].is_zero());
        let t = f9.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(t * t, -f9.one());
        assert_eq!(t.to_string(), "(0,1)");
        assert_eq!(f9.parse_element("(0,1)").unwrap(), t);
    }

    #[test]
    fn interning_gives_identical_handles() {
        assert_eq!(Field::new(5, 1, None).unwrap(), f(5));
        assert_ne!(f(5), f(7));
        assert_eq!(Field::new(5, 1, Some(&[3, 1])).unwrap(), f(5));
    }

    #[test]
    fn mismatched_fields_are_errors() {
        let a = f(5).one();
        let b = f(7).one();
        assert_eq!(a.checked_add(b).unwrap_err(), GfError::FieldMismatch(5, 7));
        assert!(a.checked_mul(b).is_err());
        assert_eq!(f(5).zero().inv().unwrap_err(), GfError::DivisionByZero);
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn operator_mismatch_panics() {
        let _ = f(5).one() + f(7).one();
    }

    #[test]
    fn quadratic_character_examples() {
        let f7 = f(7);
        assert_eq!(f7.from_int(4).quadratic_character(), 1);
        assert_eq!(f7.from_int(2).quadratic_character(), 1);
        let squares: Vec<u64> = f7.elements().map(|x| (x * x).code()).collect();
        assert!(squares.contains(&2));
        assert_eq!(f7.from_int(3).quadratic_character(), -1);
        assert_eq!(f7.zero().quadratic_character(), 0);
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27] {
            let fq = f(q);
            let expected = if q % 4 == 1 { 1 } else { -1 };
            assert_eq!(fq.from_int(-1).quadratic_character(), expected, "q={q}");
        }
    }

    fn odd_prime_powers(limit: u64) -> Vec<u64> {
        (3..=limit)
            .filter(|&q| matches!(prime_power(q), Ok((p, _)) if p != 2))
            .collect()
    }

    #[test]
    fn fermat_and_square_count_exhaustive() {
        for q in odd_prime_powers(121) {
            let fq = f(q);
            let mut squares = 0;
            for a in fq.elements().skip(1) {
                assert_eq!(a.pow(q - 1), fq.one(), "q={q} a={a}");
                if a.quadratic_character() == 1 {
                    squares += 1;
                }
            }
            assert_eq!(squares, (q - 1) / 2, "q={q}");
        }
    }

    #[test]
    fn character_is_multiplicative() {
        for q in [9u64, 25, 27, 31] {
            let fq = f(q);
            for a in fq.elements().skip(1) {
                for b in fq.elements().skip(1) {
                    assert_eq!(
                        (a * b).quadratic_character(),
                        a.quadratic_character() * b.quadratic_character()
                    );
                }
            }
        }
    }

    #[test]
    fn extension_field_axioms() {
        for q in [9u64, 25, 27, 49] {
            let fq = f(q);
            for a in fq.elements() {
                assert_eq!(a + (-a), fq.zero());
                if !a.is_zero() {
                    assert_eq!(a * a.inv().unwrap(), fq.one());
                }
                for b in fq.elements().step_by(3) {
                    assert_eq!(a * b, b * a);
                    assert_eq!((a + b) - b, a);
                    let c = fq.element((a.code() * 7 + b.code()) % q);
                    assert_eq!(a * (b + c), a * b + a * c);
                }
            }
        }
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(27).unwrap(), (3, 3));
        assert_eq!(prime_power(29).unwrap(), (29, 1));
        assert!(prime_power(1).is_err());
    }
}
