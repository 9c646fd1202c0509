//! Text forms of polynomials and elements.
//!
//! Output is always the bracketed form, e.g. `f([1,0];[0,0];0)`. Input also
//! accepts polynomials written over `x`, such as `x - 2x^2 + x^3`, and
//! tolerates ASCII whitespace between tokens.

use crate::element::{Branch, Element};
use crate::error::{AlgebraError, ParseError, Result};
use crate::poly::{AlgebraConfig, Int, TruncPoly};

/// Parses a polynomial in either `[k1,...,k_{n-1}]` or `x`-monomial form.
pub fn parse_poly(cfg: AlgebraConfig, src: &str) -> Result<TruncPoly> {
    let mut cur = Cursor::new(src);
    let poly = cur.poly(cfg)?;
    cur.finish()?;
    Ok(poly)
}

/// Parses `("f" | "g") "(" poly ";" poly ";" int ")"`.
pub fn parse_element(cfg: AlgebraConfig, src: &str) -> Result<Element> {
    let mut cur = Cursor::new(src);
    let e = cur.element(cfg)?;
    cur.finish()?;
    Ok(e)
}

pub fn parse_int(src: &str) -> Result<Int> {
    let mut cur = Cursor::new(src);
    let k = cur.int()?;
    cur.finish()?;
    Ok(k)
}

#[derive(Clone)]
pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> AlgebraError {
        ParseError::new(self.pos, message).into()
    }

    pub(crate) fn error_at(&self, pos: usize, message: impl Into<String>) -> AlgebraError {
        ParseError::new(pos, message).into()
    }

    /// Lookahead without consuming.
    pub(crate) fn starts_with(&mut self, token: &str) -> bool {
        self.skip_ws();
        self.rest().starts_with(token)
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub(crate) fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start_matches(|c: char| c.is_ascii_whitespace());
        self.pos = self.src.len() - trimmed.len();
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub(crate) fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected {token:?}")))
        }
    }

    pub(crate) fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return None;
        }
        let s = &self.rest()[..len];
        self.pos += len;
        Some(s)
    }

    /// Optional sign followed by decimal digits.
    pub(crate) fn int(&mut self) -> Result<Int> {
        let negative = if self.eat("-") {
            true
        } else {
            self.eat("+");
            false
        };
        let digits = self.digits().ok_or_else(|| self.error("expected an integer"))?;
        let k: Int = digits.parse().map_err(|_| self.error("malformed integer"))?;
        Ok(if negative { -k } else { k })
    }

    pub(crate) fn unsigned(&mut self) -> Result<u64> {
        let digits = self.digits().ok_or_else(|| self.error("expected a non-negative integer"))?;
        digits.parse().map_err(|_| self.error("integer out of range"))
    }

    pub(crate) fn poly(&mut self, cfg: AlgebraConfig) -> Result<TruncPoly> {
        let start = self.pos;
        let coeffs = if self.peek() == Some('[') {
            self.bracket_list()?
        } else {
            self.monomial_sum(cfg)?
        };
        TruncPoly::new(cfg, coeffs).map_err(|e| ParseError::new(start, e.to_string()).into())
    }

    fn bracket_list(&mut self) -> Result<Vec<Int>> {
        self.expect("[")?;
        let mut coeffs = vec![self.int()?];
        while self.eat(",") {
            coeffs.push(self.int()?);
        }
        self.expect("]")?;
        Ok(coeffs)
    }

    // term := [int] ["*"] "x" ["^" degree] | int   (a bare int must be 0)
    fn monomial_sum(&mut self, cfg: AlgebraConfig) -> Result<Vec<Int>> {
        let mut coeffs = vec![Int::ZERO; cfg.width()];
        let mut first = true;
        loop {
            let negative = if self.eat("-") {
                true
            } else if first {
                self.eat("+");
                false
            } else if self.eat("+") {
                false
            } else {
                break;
            };
            first = false;
            let term_start = self.pos;
            let coeff = match self.digits() {
                Some(d) => d.parse::<Int>().map_err(|_| self.error("malformed integer"))?,
                None => Int::ONE,
            };
            let has_digits = self.pos > term_start;
            let degree = if self.eat("*") {
                self.expect("x")?;
                Some(self.degree()?)
            } else if self.eat("x") {
                Some(self.degree()?)
            } else {
                None
            };
            match degree {
                Some(d) => {
                    if d == 0 || d > cfg.width() {
                        return Err(self.error(format!("degree {d} outside 1..={}", cfg.width())));
                    }
                    let k = if negative { -coeff } else { coeff };
                    coeffs[d - 1] += k;
                }
                None if has_digits && coeff.is_zero() => {}
                None if has_digits => return Err(self.error("constant terms are not allowed")),
                None => return Err(self.error("expected a monomial")),
            }
        }
        if first {
            return Err(self.error("expected a polynomial"));
        }
        Ok(coeffs)
    }

    fn degree(&mut self) -> Result<usize> {
        if self.eat("^") {
            let d = self.unsigned()?;
            usize::try_from(d).map_err(|_| self.error("degree out of range"))
        } else {
            Ok(1)
        }
    }

    pub(crate) fn element(&mut self, cfg: AlgebraConfig) -> Result<Element> {
        let start = self.pos;
        let branch = if self.eat("f") {
            Branch::F
        } else if self.eat("g") {
            Branch::G
        } else {
            return Err(self.error("expected 'f' or 'g'"));
        };
        self.expect("(")?;
        let p = self.poly(cfg)?;
        self.expect(";")?;
        let q = self.poly(cfg)?;
        self.expect(";")?;
        let m = self.int()?;
        self.expect(")")?;
        Element::make(cfg, branch, p, q, m).map_err(|e| ParseError::new(start, e.to_string()).into())
    }
}
