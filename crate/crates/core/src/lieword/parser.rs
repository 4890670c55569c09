use super::{LieWord, WordError};

/// Parses the word language described in the module docs.
pub fn parse(text: &str) -> Result<LieWord, WordError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let w = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("end of input"));
    }
    Ok(w)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, expected: &str) -> WordError {
        WordError::Syntax { position: self.pos, expected: expected.to_string() }
    }

    fn expect(&mut self, ch: u8) -> Result<(), WordError> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("\"{}\"", ch as char)))
        }
    }

    fn integer(&mut self) -> Result<u64, WordError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("digits are ascii")
            .parse()
            .map_err(|_| WordError::Syntax { position: start, expected: "integer that fits in 64 bits".into() })
    }

    fn expr(&mut self) -> Result<LieWord, WordError> {
        let mut terms = Vec::new();
        let first = if self.peek() == Some(b'-') {
            self.pos += 1;
            negate(self.term()?)
        } else {
            plain(self.term()?)
        };
        terms.push(first);
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    terms.push(plain(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    terms.push(negate(t));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { LieWord::Sum(terms) })
    }

    /// `[integer '*'] atom`, returned as body and explicit scalar so that
    /// `-k*atom` folds into a single scalar node.
    fn term(&mut self) -> Result<(LieWord, Option<i64>), WordError> {
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let start = self.pos;
            let c = self.integer()?;
            let c = i64::try_from(c)
                .map_err(|_| WordError::Syntax { position: start, expected: "smaller scalar".into() })?;
            self.expect(b'*')?;
            let body = self.atom()?;
            Ok((body, Some(c)))
        } else {
            Ok((self.atom()?, None))
        }
    }

    fn atom(&mut self) -> Result<LieWord, WordError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                let i = self.integer()?;
                if i == 0 {
                    return Err(WordError::Syntax { position: start, expected: "variable index >= 1".into() });
                }
                Ok(LieWord::Var(i as usize))
            }
            Some(b'[') => {
                self.pos += 1;
                let l = self.expr()?;
                self.expect(b',')?;
                let r = self.expr()?;
                self.expect(b']')?;
                Ok(LieWord::bracket(l, r))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'a') if self.src[self.pos..].starts_with(b"ad") => {
                self.pos += 2;
                self.expect(b'(')?;
                let base = self.expr()?;
                self.expect(b',')?;
                self.skip_ws();
                let n = self.integer()?;
                if n == 0 {
                    return Err(WordError::Arity(0));
                }
                self.expect(b',')?;
                let arg = self.expr()?;
                self.expect(b')')?;
                Ok(LieWord::ad_pow(base, n, arg))
            }
            _ => Err(self.error("variable, \"[\", \"(\" or \"ad(\"")),
        }
    }
}

fn negate((body, scalar): (LieWord, Option<i64>)) -> LieWord {
    LieWord::scalar(-scalar.unwrap_or(1), body)
}

fn plain((body, scalar): (LieWord, Option<i64>)) -> LieWord {
    match scalar {
        Some(c) => LieWord::scalar(c, body),
        None => body,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_forms() {
        assert_eq!(parse("[x1,x2]").unwrap(), LieWord::bracket(LieWord::var(1), LieWord::var(2)));
        assert_eq!(
            parse("ad(x1,2,x2) - ad(x1,6,x2)").unwrap(),
            LieWord::Sum(vec![
                LieWord::ad_pow(LieWord::var(1), 2, LieWord::var(2)),
                LieWord::scalar(-1, LieWord::ad_pow(LieWord::var(1), 6, LieWord::var(2))),
            ])
        );
        assert_eq!(parse("-x1").unwrap(), LieWord::scalar(-1, LieWord::var(1)));
        assert_eq!(parse(" - 3 * x2 ").unwrap(), LieWord::scalar(-3, LieWord::var(2)));
        assert_eq!(parse("(x1)").unwrap(), LieWord::var(1));
    }

    #[test]
    fn syntax_errors() {
        assert_eq!(
            parse("[x1, x2").unwrap_err(),
            WordError::Syntax { position: 7, expected: "\"]\"".into() }
        );
        assert_eq!(parse("ad(x1,0,x2)").unwrap_err(), WordError::Arity(0));
        assert!(matches!(parse("x0").unwrap_err(), WordError::Syntax { .. }));
        assert!(matches!(parse("x1 x2").unwrap_err(), WordError::Syntax { .. }));
        assert!(matches!(parse("").unwrap_err(), WordError::Syntax { position: 0, .. }));
        assert!(matches!(parse("3 x1").unwrap_err(), WordError::Syntax { .. }));
        assert!(matches!(parse("x1 - -x2").unwrap_err(), WordError::Syntax { .. }));
    }

    /// Canonical strings: `render(parse(s)) == s`.
    const CORPUS: &[&str] = &[
        "x1",
        "x12",
        "-x1",
        "-2*x1",
        "3*x2",
        "0*x1",
        "1*x1",
        "[x1, x2]",
        "[x2, x1]",
        "[x1, x1]",
        "[[x1, x2], x3]",
        "[x1, [x2, x3]]",
        "[-x1, x2]",
        "[x1 + x2, x1 - x2]",
        "[2*x1, -3*x2]",
        "ad(x1, 1, x2)",
        "ad(x1, 2, x2)",
        "ad(x1, 10, x2)",
        "ad(x1, 2, x2) - ad(x1, 6, x2)",
        "ad(x1, 1, x2) - ad(x1, 5, x2)",
        "ad(x1, 4, x2) - ad(x1, 6, x2)",
        "[ad(x1, 1, x2), ad(x1, 2, x2)]",
        "[ad(x1, 4, x2), ad(x1, 3, x2)]",
        "[ad(x1, 4, x2) - ad(x1, 2, x2), [ad(x1, 2, x2), ad(x1, 1, x2)]]",
        "[[ad(x1, 3, x2) - ad(x1, 1, x2), [ad(x1, 1, x2), ad(x1, 2, x2)]], [ad(x1, 1, x2), ad(x1, 4, x2)]]",
        "ad(x1 + x2, 3, x1)",
        "ad([x1, x2], 2, x3)",
        "ad(-x1, 2, x2)",
        "ad(x1, 3, ad(x2, 2, x1))",
        "x1 + x2",
        "x1 - x2",
        "x1 + x2 + x3",
        "x1 - x2 - x3",
        "-x1 + x2",
        "-x1 - x2",
        "x1 + 2*x2",
        "x1 - 2*x2",
        "-5*x1 + 7*x2",
        "(x1 + x2) + x3",
        "x1 + (x2 + x3)",
        "x1 - (x2 + x3)",
        "2*(x1 + x2)",
        "-2*(x1 - x2)",
        "-(x1 + x2)",
        "2*(-x1)",
        "-(3*x1)",
        "3*[x1, x2]",
        "-[x1, x2]",
        "4*ad(x1, 2, x2) - 4*ad(x1, 6, x2)",
        "[x1, x2] + [x2, x3] + [x3, x1]",
        "ad(x1, 2, x2) + 0*[x1, x2]",
    ];

    #[test]
    fn corpus_round_trips() {
        assert!(CORPUS.len() >= 50);
        for s in CORPUS {
            let w = parse(s).unwrap_or_else(|e| panic!("{s}: {e}"));
            assert_eq!(&w.to_string(), s);
            assert_eq!(parse(&w.to_string()).unwrap(), w);
        }
    }

    fn arb_word() -> impl Strategy<Value = LieWord> {
        let leaf = (1usize..5).prop_map(LieWord::Var);
        leaf.prop_recursive(4, 32, 3, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(l, r)| LieWord::bracket(l, r)),
                prop::collection::vec(inner.clone(), 2..4).prop_map(LieWord::Sum),
                (-5i64..6, inner.clone()).prop_map(|(c, b)| LieWord::scalar(c, b)),
                (inner.clone(), 1u64..9, inner).prop_map(|(b, n, x)| LieWord::ad_pow(b, n, x)),
            ]
        })
    }

    proptest! {
        #[test]
        fn parse_inverts_render(w in arb_word()) {
            let text = w.to_string();
            prop_assert_eq!(parse(&text).unwrap(), w);
        }
    }
}
