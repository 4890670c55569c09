//! The Lie algebra `sl2(F_q)`.
//!
//! Elements are stored by their coordinates in the basis `{h, e, f}`, i.e.
//! `a*h + b*e + c*f` is the matrix `[[a, b], [c, -a]]`. Automorphisms are
//! conjugations by `GL2(F_q)`; nonzero orbits are determined by the
//! determinant, with `det = 0` the nilpotent orbit.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::gf::{Field, FieldElement, GfError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Sl2Error {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("ad exponent must be at least 1, got {0}")]
    InvalidExponent(u64),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("cannot parse sl2 element from {0:?}")]
    Parse(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sl2Element {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
}

impl Sl2Element {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement) -> Self {
        assert!(a.field() == b.field() && b.field() == c.field(), "field mismatch");
        Sl2Element { a, b, c }
    }

    pub fn try_new(a: FieldElement, b: FieldElement, c: FieldElement) -> Result<Self, Sl2Error> {
        a.checked_add(b)?;
        b.checked_add(c)?;
        Ok(Sl2Element { a, b, c })
    }

    pub fn zero(field: Field) -> Self {
        let z = field.zero();
        Sl2Element { a: z, b: z, c: z }
    }

    pub fn h(field: Field) -> Self {
        Sl2Element { a: field.one(), b: field.zero(), c: field.zero() }
    }

    pub fn e(field: Field) -> Self {
        Sl2Element { a: field.zero(), b: field.one(), c: field.zero() }
    }

    pub fn f(field: Field) -> Self {
        Sl2Element { a: field.zero(), b: field.zero(), c: field.one() }
    }

    pub fn from_ints(field: Field, a: i64, b: i64, c: i64) -> Self {
        Sl2Element { a: field.from_int(a), b: field.from_int(b), c: field.from_int(c) }
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    /// `-a^2 - bc`.
    pub fn det(&self) -> FieldElement {
        -(self.a * self.a) - self.b * self.c
    }

    pub fn scale(&self, s: FieldElement) -> Self {
        Sl2Element { a: s * self.a, b: s * self.b, c: s * self.c }
    }

    pub fn to_matrix(&self) -> Mat2 {
        Mat2([[self.a, self.b], [self.c, -self.a]])
    }

    /// Inverse of [`to_matrix`](Self::to_matrix); `None` unless the trace is zero.
    pub fn from_matrix(m: &Mat2) -> Option<Self> {
        let [[x, y], [z, w]] = m.0;
        (x + w).is_zero().then_some(Sl2Element { a: x, b: y, c: z })
    }

    /// Every element of `sl2(F_q)`, `q^3` in total.
    pub fn all(field: Field) -> impl Iterator<Item = Sl2Element> + Clone {
        let q = field.q();
        (0..q * q * q).map(move |i| Sl2Element::from_index(field, i))
    }

    /// Element number `i` of [`all`](Self::all).
    pub fn from_index(field: Field, i: u64) -> Sl2Element {
        let q = field.q();
        Sl2Element {
            a: field.element(i / (q * q)),
            b: field.element((i / q) % q),
            c: field.element(i % q),
        }
    }

    /// Parses `"a,b,c"`, the coordinates of `a*h + b*e + c*f`.
    pub fn parse(field: Field, text: &str) -> Result<Self, Sl2Error> {
        let parts = split_top_level(text);
        if parts.len() != 3 {
            return Err(Sl2Error::Parse(text.to_string()));
        }
        let coords = parts
            .iter()
            .map(|s| field.parse_element(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Sl2Element { a: coords[0], b: coords[1], c: coords[2] })
    }
}

/// Splits on commas that are not inside parentheses.
fn split_top_level(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(text[start..].trim());
    parts
}

impl fmt::Display for Sl2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.c)
    }
}

impl fmt::Debug for Sl2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})h + ({})e + ({})f", self.a, self.b, self.c)
    }
}

impl std::ops::Add for Sl2Element {
    type Output = Sl2Element;
    fn add(self, rhs: Self) -> Self {
        Sl2Element { a: self.a + rhs.a, b: self.b + rhs.b, c: self.c + rhs.c }
    }
}

impl std::ops::Sub for Sl2Element {
    type Output = Sl2Element;
    fn sub(self, rhs: Self) -> Self {
        Sl2Element { a: self.a - rhs.a, b: self.b - rhs.b, c: self.c - rhs.c }
    }
}

impl std::ops::Neg for Sl2Element {
    type Output = Sl2Element;
    fn neg(self) -> Self {
        Sl2Element { a: -self.a, b: -self.b, c: -self.c }
    }
}

/// A 2x2 matrix over `F_q`, row-major.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Mat2(pub [[FieldElement; 2]; 2]);

impl Mat2 {
    pub fn identity(field: Field) -> Self {
        let (o, z) = (field.one(), field.zero());
        Mat2([[o, z], [z, o]])
    }

    pub fn from_ints(field: Field, m: [[i64; 2]; 2]) -> Self {
        Mat2(m.map(|row| row.map(|x| field.from_int(x))))
    }

    pub fn det(&self) -> FieldElement {
        let [[x, y], [z, w]] = self.0;
        x * w - y * z
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let [[a, b], [c, d]] = self.0;
        let [[e, f], [g, h]] = rhs.0;
        Mat2([[a * e + b * g, a * f + b * h], [c * e + d * g, c * f + d * h]])
    }

    pub fn sub(&self, rhs: &Mat2) -> Mat2 {
        let [[a, b], [c, d]] = self.0;
        let [[e, f], [g, h]] = rhs.0;
        Mat2([[a - e, b - f], [c - g, d - h]])
    }

    pub fn inverse(&self) -> Result<Mat2, Sl2Error> {
        let det = self.det();
        let inv = det.inv().map_err(|_| Sl2Error::SingularMatrix)?;
        let [[x, y], [z, w]] = self.0;
        Ok(Mat2([[w * inv, -y * inv], [-z * inv, x * inv]]))
    }
}

/// `[X, Y] = XY - YX` in coordinates:
/// `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
#[inline]
pub fn bracket(x: &Sl2Element, y: &Sl2Element) -> Sl2Element {
    let two = x.field().from_int(2);
    Sl2Element {
        a: x.b * y.c - x.c * y.b,
        b: two * (x.a * y.b - y.a * x.b),
        c: two * (y.a * x.c - x.a * y.c),
    }
}

pub fn try_bracket(x: &Sl2Element, y: &Sl2Element) -> Result<Sl2Element, Sl2Error> {
    x.a.checked_add(y.a)?;
    Ok(bracket(x, y))
}

/// Associative product `xy` of two elements whose product is known to be
/// trace-free (for example `A * ad_A(X)`).
#[inline]
fn traceless_product(x: &Sl2Element, y: &Sl2Element) -> Sl2Element {
    // [[xa, xb], [xc, -xa]] * [[ya, yb], [yc, -ya]]
    let out = Sl2Element {
        a: x.a * y.a + x.b * y.c,
        b: x.a * y.b - x.b * y.a,
        c: x.c * y.a - x.a * y.c,
    };
    debug_assert!((x.a * y.a + x.b * y.c + x.c * y.b + x.a * y.a).is_zero());
    out
}

/// `A^n` as `scalar * I` (`uses_a == false`) or `scalar * A`, using
/// `A^2 = -det(A) I`.
pub fn matrix_pow_repr(a: &Sl2Element, n: u64) -> (FieldElement, bool) {
    let sq = -a.det();
    if n % 2 == 0 {
        (sq.pow(n / 2), false)
    } else {
        (sq.pow((n - 1) / 2), true)
    }
}

/// `ad_A^n(X)` through `2^(n-1) A^(n-1) ad_A(X)`.
pub fn ad_pow(a: &Sl2Element, n: u64, x: &Sl2Element) -> Result<Sl2Element, Sl2Error> {
    if n == 0 {
        return Err(Sl2Error::InvalidExponent(n));
    }
    Ok(ad_pow_unchecked(a, n, x))
}

#[inline]
pub(crate) fn ad_pow_unchecked(a: &Sl2Element, n: u64, x: &Sl2Element) -> Sl2Element {
    let field = a.field();
    let ad = bracket(a, x);
    let (s, uses_a) = matrix_pow_repr(a, n - 1);
    let factor = field.from_int(2).pow(n - 1) * s;
    let base = if uses_a { traceless_product(a, &ad) } else { ad };
    base.scale(factor)
}

/// `[A, [A, ... [A, X]]]` by repeated brackets. Kept as a reference for the
/// closed form in [`ad_pow`].
pub fn ad_pow_iterated(a: &Sl2Element, n: u64, x: &Sl2Element) -> Sl2Element {
    (0..n).fold(*x, |acc, _| bracket(a, &acc))
}

/// `g X g^-1`.
pub fn conjugate(g: &Mat2, x: &Sl2Element) -> Result<Sl2Element, Sl2Error> {
    let inv = g.inverse()?;
    Ok(conjugate_with_inverse(g, &inv, x))
}

pub(crate) fn conjugate_with_inverse(g: &Mat2, g_inv: &Mat2, x: &Sl2Element) -> Sl2Element {
    let m = g.mul(&x.to_matrix()).mul(g_inv);
    Sl2Element::from_matrix(&m).expect("conjugation preserves the trace")
}

/// The four orbit types of `GL2(F_q)` acting on `sl2(F_q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitKind {
    Zero,
    Nilpotent,
    SplitSemisimple,
    AnisotropicSemisimple,
}

impl OrbitKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OrbitKind::Zero => "zero",
            OrbitKind::Nilpotent => "nilpotent",
            OrbitKind::SplitSemisimple => "split",
            OrbitKind::AnisotropicSemisimple => "anisotropic",
        }
    }

    pub fn parse(s: &str) -> Option<OrbitKind> {
        Some(match s {
            "zero" => OrbitKind::Zero,
            "nilpotent" => OrbitKind::Nilpotent,
            "split" => OrbitKind::SplitSemisimple,
            "anisotropic" => OrbitKind::AnisotropicSemisimple,
            _ => return None,
        })
    }
}

/// Canonical name of one automorphism orbit. Semisimple orbits are keyed
/// by their determinant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitLabel {
    Zero,
    Nilpotent,
    Split(FieldElement),
    Anisotropic(FieldElement),
}

impl OrbitLabel {
    /// Label of the semisimple orbit with determinant `det`; `None` for
    /// `det = 0`, which does not determine an orbit on its own.
    pub fn semisimple(det: FieldElement) -> Option<OrbitLabel> {
        match (-det).quadratic_character() {
            0 => None,
            1 => Some(OrbitLabel::Split(det)),
            _ => Some(OrbitLabel::Anisotropic(det)),
        }
    }

    pub fn kind(&self) -> OrbitKind {
        match self {
            OrbitLabel::Zero => OrbitKind::Zero,
            OrbitLabel::Nilpotent => OrbitKind::Nilpotent,
            OrbitLabel::Split(_) => OrbitKind::SplitSemisimple,
            OrbitLabel::Anisotropic(_) => OrbitKind::AnisotropicSemisimple,
        }
    }

    pub fn det(&self) -> Option<FieldElement> {
        match self {
            OrbitLabel::Split(d) | OrbitLabel::Anisotropic(d) => Some(*d),
            _ => None,
        }
    }

    pub fn is_semisimple(&self) -> bool {
        self.det().is_some()
    }

    /// Number of elements of `sl2(F_q)` in the orbit: the equation
    /// `a^2 + bc = k` has `q^2 + eta(k) q` solutions for `k != 0`.
    pub fn orbit_size(&self, q: u64) -> u64 {
        match self {
            OrbitLabel::Zero => 1,
            OrbitLabel::Nilpotent => q * q - 1,
            OrbitLabel::Split(_) => q * q + q,
            OrbitLabel::Anisotropic(_) => q * q - q,
        }
    }

    /// A representative: `0`, `e`, or `e + a f` with `a = -det`.
    pub fn representative(&self, field: Field) -> Sl2Element {
        match self {
            OrbitLabel::Zero => Sl2Element::zero(field),
            OrbitLabel::Nilpotent => Sl2Element::e(field),
            OrbitLabel::Split(d) | OrbitLabel::Anisotropic(d) => {
                Sl2Element { a: field.zero(), b: field.one(), c: -*d }
            }
        }
    }

    /// Reconstructs a label from its JSON fields.
    pub fn from_parts(field: Field, kind: &str, det: Option<&str>) -> Result<Self, Sl2Error> {
        let bad = || Sl2Error::Parse(format!("{kind} {det:?}"));
        let kind = OrbitKind::parse(kind).ok_or_else(bad)?;
        let label = match (kind, det) {
            (OrbitKind::Zero, None) => OrbitLabel::Zero,
            (OrbitKind::Nilpotent, None) => OrbitLabel::Nilpotent,
            (OrbitKind::SplitSemisimple | OrbitKind::AnisotropicSemisimple, Some(d)) => {
                let d = field.parse_element(d)?;
                let label = OrbitLabel::semisimple(d).ok_or_else(bad)?;
                if label.kind() != kind {
                    return Err(bad());
                }
                label
            }
            _ => return Err(bad()),
        };
        Ok(label)
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitLabel::Zero => write!(f, "zero"),
            OrbitLabel::Nilpotent => write!(f, "nilpotent"),
            OrbitLabel::Split(d) => write!(f, "split(det={d})"),
            OrbitLabel::Anisotropic(d) => write!(f, "anisotropic(det={d})"),
        }
    }
}

impl Serialize for OrbitLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("OrbitLabel", 2)?;
        s.serialize_field("kind", self.kind().as_str())?;
        match self.det() {
            Some(d) => s.serialize_field("det", &d.to_string())?,
            None => s.skip_field("det")?,
        }
        s.end()
    }
}

pub fn classify(x: &Sl2Element) -> OrbitLabel {
    if x.is_zero() {
        return OrbitLabel::Zero;
    }
    let det = x.det();
    OrbitLabel::semisimple(det).unwrap_or(OrbitLabel::Nilpotent)
}

/// `{0} ∪ {e + a f : a ∈ F_q}`, one element per orbit.
pub fn orbit_representatives(field: Field) -> Vec<Sl2Element> {
    let mut reps = vec![Sl2Element::zero(field)];
    reps.extend(field.elements().map(|a| Sl2Element { a: field.zero(), b: field.one(), c: a }));
    reps
}

/// Every orbit label of `sl2(F_q)`: zero, nilpotent, then one semisimple
/// label per nonzero determinant.
pub fn all_labels(field: Field) -> Vec<OrbitLabel> {
    let mut out = vec![OrbitLabel::Zero, OrbitLabel::Nilpotent];
    out.extend(field.elements().skip(1).filter_map(OrbitLabel::semisimple));
    out
}
