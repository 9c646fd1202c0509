//! Ad-hoc expressions over elements.
//!
//! ```text
//! expr    := term (op term)*          all ops at one level must agree
//! op      := "(+)" | "(.)"
//! term    := primary ("'" | "^" k)*
//! primary := element | "0" | "1" | "(" expr ")"
//! ```
//!
//! Chains are evaluated left to right. Mixing `(+)` and `(.)` without
//! parentheses is rejected. An undefined `⊕` makes the whole result undefined.

use crate::element::Element;
use crate::error::Result;
use crate::poly::AlgebraConfig;
use crate::text::Cursor;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Op {
    Oplus,
    Seq,
}

impl Op {
    fn token(self) -> &'static str {
        match self {
            Op::Oplus => "(+)",
            Op::Seq => "(.)",
        }
    }
}

/// Evaluates `src`; `Ok(None)` means the value is undefined.
pub fn eval(cfg: AlgebraConfig, src: &str) -> Result<Option<Element>> {
    let mut cur = Cursor::new(src);
    let value = expr(cfg, &mut cur)?;
    cur.finish()?;
    Ok(value)
}

fn next_op(cur: &mut Cursor<'_>) -> Option<Op> {
    [Op::Oplus, Op::Seq].into_iter().find(|op| cur.eat(op.token()))
}

fn expr(cfg: AlgebraConfig, cur: &mut Cursor<'_>) -> Result<Option<Element>> {
    let mut acc = term(cfg, cur)?;
    let mut chain: Option<Op> = None;
    loop {
        cur.skip_ws();
        let at = cur.pos();
        let Some(op) = next_op(cur) else {
            return Ok(acc);
        };
        if chain.is_some_and(|c| c != op) {
            return Err(cur.error_at(at, "mixing (+) and (.) needs parentheses"));
        }
        chain = Some(op);
        let rhs = term(cfg, cur)?;
        acc = match (acc, rhs, op) {
            (Some(a), Some(b), Op::Oplus) => a.oplus(&b)?.into_option(),
            (Some(a), Some(b), Op::Seq) => Some(a.seq(&b)?),
            _ => None,
        };
    }
}

fn term(cfg: AlgebraConfig, cur: &mut Cursor<'_>) -> Result<Option<Element>> {
    let mut value = primary(cfg, cur)?;
    loop {
        if cur.eat("'") {
            value = value.map(|e| e.orthosupplement());
        } else if cur.eat("^") {
            cur.skip_ws();
            let at = cur.pos();
            let k = cur.unsigned()?;
            if k == 0 {
                return Err(cur.error_at(at, "exponent must be at least 1"));
            }
            value = match value {
                Some(e) => Some(e.power(k)?),
                None => None,
            };
        } else {
            return Ok(value);
        }
    }
}

fn primary(cfg: AlgebraConfig, cur: &mut Cursor<'_>) -> Result<Option<Element>> {
    match cur.peek() {
        Some('(') if !cur.starts_with("(+)") && !cur.starts_with("(.)") => {
            cur.expect("(")?;
            let inner = expr(cfg, cur)?;
            cur.expect(")")?;
            Ok(inner)
        }
        Some('0') => {
            cur.expect("0")?;
            Ok(Some(Element::zero(cfg)))
        }
        Some('1') => {
            cur.expect("1")?;
            Ok(Some(Element::one(cfg)))
        }
        Some('f' | 'g') => cur.element(cfg).map(Some),
        _ => Err(cur.error("expected an element, 0, 1 or '('")),
    }
}
