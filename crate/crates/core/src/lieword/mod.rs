//! Lie words: syntax trees, a small text language, and evaluation on
//! `sl2(F_q)`.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr := ['-'] term (('+' | '-') term)*
//! term := [integer '*'] atom
//! atom := var | '[' expr ',' expr ']' | 'ad' '(' expr ',' integer ',' expr ')' | '(' expr ')'
//! var  := 'x' integer
//! ```
//!
//! `ad(a, n, x)` is the Engel word `[a, [a, ... [a, x]]]` with `n` brackets.

mod families;
mod parser;
mod search;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::gf::{Field, GfError};
use crate::sl2::{self, Sl2Element};

pub use families::{
    engel_commutator, engel_diff, w0_mn, w_mn, w_n, BetaPattern, FamilyParams, WmnParams, WnParams, ZeroBlock,
};
pub use parser::parse;
pub use search::{search_params, Goal, SearchBudget};
pub(crate) use search::largest_odd_divisor;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("syntax error at byte {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("ad exponent must be at least 1, got {0}")]
    Arity(i64),
    #[error("variable x{0} has no value")]
    MissingVariable(usize),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("invalid exponent: {0}")]
    InvalidExponent(String),
    #[error("hypotheses violated: {}", .0.join("; "))]
    HypothesisViolation(Vec<String>),
    #[error("no parameters found within budget {0}")]
    NoWitnessInBudget(u64),
}

/// A Lie polynomial in variables `x1, x2, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LieWord {
    Var(usize),
    Bracket(Box<LieWord>, Box<LieWord>),
    Sum(Vec<LieWord>),
    Scalar(i64, Box<LieWord>),
    AdPow(Box<LieWord>, u64, Box<LieWord>),
}

impl LieWord {
    pub fn var(i: usize) -> LieWord {
        assert!(i >= 1, "variables are numbered from 1");
        LieWord::Var(i)
    }

    pub fn bracket(l: LieWord, r: LieWord) -> LieWord {
        LieWord::Bracket(Box::new(l), Box::new(r))
    }

    pub fn scalar(c: i64, body: LieWord) -> LieWord {
        LieWord::Scalar(c, Box::new(body))
    }

    pub fn ad_pow(base: LieWord, n: u64, arg: LieWord) -> LieWord {
        assert!(n >= 1, "ad exponent must be at least 1");
        LieWord::AdPow(Box::new(base), n, Box::new(arg))
    }

    /// `l - r` as `Sum([l, Scalar(-1, r)])`.
    pub fn difference(l: LieWord, r: LieWord) -> LieWord {
        LieWord::Sum(vec![l, LieWord::scalar(-1, r)])
    }

    /// Largest variable index; `0` for a word without variables.
    pub fn arity(&self) -> usize {
        match self {
            LieWord::Var(i) => *i,
            LieWord::Bracket(l, r) => l.arity().max(r.arity()),
            LieWord::Sum(ts) => ts.iter().map(LieWord::arity).max().unwrap_or(0),
            LieWord::Scalar(_, b) => b.arity(),
            LieWord::AdPow(b, _, x) => b.arity().max(x.arity()),
        }
    }

    /// Number of syntax-tree nodes.
    pub fn size(&self) -> usize {
        1 + match self {
            LieWord::Var(_) => 0,
            LieWord::Bracket(l, r) | LieWord::AdPow(l, _, r) => l.size() + r.size(),
            LieWord::Sum(ts) => ts.iter().map(LieWord::size).sum(),
            LieWord::Scalar(_, b) => b.size(),
        }
    }

    /// Rewrites every `AdPow` as nested brackets.
    pub fn normalize_brackets(&self) -> LieWord {
        match self {
            LieWord::Var(i) => LieWord::Var(*i),
            LieWord::Bracket(l, r) => LieWord::bracket(l.normalize_brackets(), r.normalize_brackets()),
            LieWord::Sum(ts) => LieWord::Sum(ts.iter().map(LieWord::normalize_brackets).collect()),
            LieWord::Scalar(c, b) => LieWord::scalar(*c, b.normalize_brackets()),
            LieWord::AdPow(b, n, x) => {
                let base = b.normalize_brackets();
                (0..*n).fold(x.normalize_brackets(), |acc, _| LieWord::bracket(base.clone(), acc))
            }
        }
    }

    /// Evaluates with `assignment[i - 1]` as the value of `xi`.
    pub fn evaluate(&self, assignment: &[Sl2Element]) -> Result<Sl2Element, WordError> {
        let arity = self.arity();
        if assignment.len() < arity {
            return Err(WordError::MissingVariable(assignment.len() + 1));
        }
        if let Some(first) = assignment.first() {
            let field = first.field();
            for x in &assignment[..arity] {
                if x.field() != field {
                    return Err(GfError::FieldMismatch(field.q(), x.field().q()).into());
                }
            }
        }
        let field = match assignment.first() {
            Some(x) => x.field(),
            None => return Err(WordError::MissingVariable(1)),
        };
        Ok(self.eval_unchecked(field, assignment))
    }

    /// Evaluates a word given as a map from variable index to value.
    pub fn evaluate_map(&self, assignment: &BTreeMap<usize, Sl2Element>) -> Result<Sl2Element, WordError> {
        let arity = self.arity();
        let mut values = Vec::with_capacity(arity);
        for i in 1..=arity {
            values.push(*assignment.get(&i).ok_or(WordError::MissingVariable(i))?);
        }
        if values.is_empty() {
            return match assignment.values().next() {
                Some(x) => Ok(self.eval_unchecked(x.field(), &[])),
                None => Err(WordError::MissingVariable(1)),
            };
        }
        self.evaluate(&values)
    }

    /// Hot-path evaluation; the caller guarantees arity and a common field.
    pub(crate) fn eval_unchecked(&self, field: Field, assignment: &[Sl2Element]) -> Sl2Element {
        match self {
            LieWord::Var(i) => assignment[i - 1],
            LieWord::Bracket(l, r) => {
                sl2::bracket(&l.eval_unchecked(field, assignment), &r.eval_unchecked(field, assignment))
            }
            LieWord::Sum(ts) => ts
                .iter()
                .map(|t| t.eval_unchecked(field, assignment))
                .fold(Sl2Element::zero(field), |acc, x| acc + x),
            LieWord::Scalar(c, b) => b.eval_unchecked(field, assignment).scale(field.from_int(*c)),
            LieWord::AdPow(b, n, x) => sl2::ad_pow_unchecked(
                &b.eval_unchecked(field, assignment),
                *n,
                &x.eval_unchecked(field, assignment),
            ),
        }
    }

    fn fmt_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieWord::Sum(_) | LieWord::Scalar(..) => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }

    /// A term inside a sum or at top level; `negate` renders `-t`.
    fn fmt_term(&self, f: &mut fmt::Formatter<'_>, leading: bool) -> fmt::Result {
        match self {
            LieWord::Scalar(c, body) if *c < 0 => {
                f.write_str(if leading { "-" } else { " - " })?;
                if *c != -1 {
                    write!(f, "{}*", c.unsigned_abs())?;
                }
                body.fmt_atom(f)
            }
            LieWord::Scalar(c, body) => {
                if !leading {
                    f.write_str(" + ")?;
                }
                write!(f, "{c}*")?;
                body.fmt_atom(f)
            }
            LieWord::Sum(_) => {
                if !leading {
                    f.write_str(" + ")?;
                }
                self.fmt_atom(f)
            }
            _ => {
                if !leading {
                    f.write_str(" + ")?;
                }
                write!(f, "{self}")
            }
        }
    }
}

impl fmt::Display for LieWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieWord::Var(i) => write!(f, "x{i}"),
            LieWord::Bracket(l, r) => write!(f, "[{l}, {r}]"),
            LieWord::AdPow(b, n, x) => write!(f, "ad({b}, {n}, {x})"),
            LieWord::Scalar(..) => self.fmt_term(f, true),
            LieWord::Sum(ts) => {
                for (k, t) in ts.iter().enumerate() {
                    t.fmt_term(f, k == 0)?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2::Sl2Element;

    fn f(q: u64) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let fld = f(7);
        let (e, ff, h) = (Sl2Element::e(fld), Sl2Element::f(fld), Sl2Element::h(fld));
        let w = parse("[x1,x2]").unwrap();
        assert_eq!(w.evaluate(&[e, ff]).unwrap(), h);
        let w = parse("ad(x1,2,x2)").unwrap();
        assert_eq!(w.evaluate(&[e, ff]).unwrap(), e.scale(fld.from_int(-2)));
        let z = Sl2Element::zero(fld);
        for text in ["[x1,x2]", "ad(x1,3,x2) - 2*x1", "[[x1,x3],x2] + x3"] {
            let w = parse(text).unwrap();
            assert!(w.evaluate(&[z, z, z]).unwrap().is_zero());
        }
    }

    #[test]
    fn evaluate_errors() {
        let fld = f(5);
        let w = parse("[x1,x3]").unwrap();
        let e = Sl2Element::e(fld);
        assert_eq!(w.evaluate(&[e, e]).unwrap_err(), WordError::MissingVariable(3));
        let mut m = BTreeMap::new();
        m.insert(1, e);
        m.insert(2, e);
        assert_eq!(w.evaluate_map(&m).unwrap_err(), WordError::MissingVariable(3));
        m.insert(3, Sl2Element::e(f(7)));
        assert!(matches!(w.evaluate_map(&m).unwrap_err(), WordError::Field(_)));
    }

    #[test]
    fn normalization_agrees_on_all_of_sl2_f3() {
        let fld = f(3);
        let words = [
            "ad(x1,2,x2) - ad(x1,6,x2)",
            "[ad(x1,3,x2), ad(x1,2,x2)]",
            "ad(x1 + x2, 4, [x1, x2])",
            "2*ad(x2,1,x1) + ad(x1,5,x2)",
        ];
        for text in words {
            let w = parse(text).unwrap();
            let n = w.normalize_brackets();
            assert!(!n.to_string().contains("ad("));
            for x in Sl2Element::all(fld) {
                for y in Sl2Element::all(fld) {
                    assert_eq!(w.evaluate(&[x, y]).unwrap(), n.evaluate(&[x, y]).unwrap());
                }
            }
        }
    }

    #[test]
    fn arity_and_size() {
        assert_eq!(parse("[x1, x4]").unwrap().arity(), 4);
        assert_eq!(parse("ad(x2, 3, x1)").unwrap().arity(), 2);
        assert_eq!(parse("x1").unwrap().size(), 1);
    }

    #[test]
    fn rendering() {
        let w = LieWord::difference(
            LieWord::ad_pow(LieWord::var(1), 2, LieWord::var(2)),
            LieWord::ad_pow(LieWord::var(1), 6, LieWord::var(2)),
        );
        assert_eq!(w.to_string(), "ad(x1, 2, x2) - ad(x1, 6, x2)");
        let w = LieWord::scalar(-3, LieWord::Sum(vec![LieWord::var(1), LieWord::var(2)]));
        assert_eq!(w.to_string(), "-3*(x1 + x2)");
        let w = LieWord::scalar(2, LieWord::scalar(-1, LieWord::var(1)));
        assert_eq!(w.to_string(), "2*(-x1)");
    }
}
