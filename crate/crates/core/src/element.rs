//! Elements of the algebra `E₀`: two disjoint branches `f(p, q, m)` and
//! `g(p, q, m)` over pairs of `I₀` polynomials and an integer, with the partial
//! sum `⊕`, the sequential product `∘`, the orthosupplement and the induced
//! order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::poly::{product_split, AlgebraConfig, Int, TruncPoly};
use crate::window::{self, SampleWindow};

/// Which injection an element comes from: `f` (the lower half) or `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Branch {
    F,
    G,
}

impl Branch {
    pub fn flip(self) -> Branch {
        match self {
            Branch::F => Branch::G,
            Branch::G => Branch::F,
        }
    }

    pub fn tag(self) -> char {
        match self {
            Branch::F => 'f',
            Branch::G => 'g',
        }
    }
}

/// A member of `E₀`. Equality is structural on `(branch, p, q, m)`; the derived
/// ordering is the canonical one (branch, then `p`, then `q`, then `m`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    branch: Branch,
    p: TruncPoly,
    q: TruncPoly,
    m: Int,
}

/// Result of `⊕`: either a sum or the semantic answer "not defined".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OplusOutcome {
    Defined(Element),
    Undefined,
}

impl OplusOutcome {
    pub fn is_defined(&self) -> bool {
        matches!(self, OplusOutcome::Defined(_))
    }

    pub fn defined(&self) -> Option<&Element> {
        match self {
            OplusOutcome::Defined(e) => Some(e),
            OplusOutcome::Undefined => None,
        }
    }

    pub fn into_option(self) -> Option<Element> {
        match self {
            OplusOutcome::Defined(e) => Some(e),
            OplusOutcome::Undefined => None,
        }
    }
}

fn in_i0_with_order(diff_p: Option<TruncPoly>, diff_q: Option<TruncPoly>, m_ok: impl Fn() -> bool)
    -> Option<(TruncPoly, TruncPoly)> {
    let (dp, dq) = (diff_p?, diff_q?);
    if dp.is_zero() && dq.is_zero() && !m_ok() {
        return None;
    }
    Some((dp, dq))
}

impl Element {
    /// Builds a validated element; rejects `p = q = 0` with `m < 0`.
    pub fn make(cfg: AlgebraConfig, branch: Branch, p: TruncPoly, q: TruncPoly, m: Int) -> Result<Element> {
        cfg.ensure_same(&p.config())?;
        cfg.ensure_same(&q.config())?;
        let e = Element { branch, p, q, m };
        if e.p.is_zero() && e.q.is_zero() && e.m < Int::ZERO {
            return Err(AlgebraError::Membership {
                element: e.to_string(),
            });
        }
        Ok(e)
    }

    /// Convenience constructor from small coefficient lists.
    pub fn from_i64s(cfg: AlgebraConfig, branch: Branch, p: &[i64], q: &[i64], m: i64) -> Result<Element> {
        Element::make(
            cfg,
            branch,
            TruncPoly::from_i64s(cfg, p)?,
            TruncPoly::from_i64s(cfg, q)?,
            Int::from(m),
        )
    }

    /// `0 = f(0, 0, 0)`.
    pub fn zero(cfg: AlgebraConfig) -> Element {
        Element {
            branch: Branch::F,
            p: TruncPoly::zero(cfg),
            q: TruncPoly::zero(cfg),
            m: Int::ZERO,
        }
    }

    /// `1 = g(0, 0, 0)`.
    pub fn one(cfg: AlgebraConfig) -> Element {
        Element {
            branch: Branch::G,
            ..Element::zero(cfg)
        }
    }

    pub fn config(&self) -> AlgebraConfig {
        self.p.config()
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn p(&self) -> &TruncPoly {
        &self.p
    }

    pub fn q(&self) -> &TruncPoly {
        &self.q
    }

    pub fn m(&self) -> &Int {
        &self.m
    }

    pub fn is_zero(&self) -> bool {
        *self == Element::zero(self.config())
    }

    pub fn is_one(&self) -> bool {
        *self == Element::one(self.config())
    }

    fn ensure_same(&self, other: &Element) -> Result<()> {
        self.config().ensure_same(&other.config())
    }

    /// Partial sum. `f ⊕ f` always exists; `f ⊕ g` exists when `g` sits above
    /// `f` componentwise; `g ⊕ g` never exists.
    pub fn oplus(&self, other: &Element) -> Result<OplusOutcome> {
        self.ensure_same(other)?;
        match (self.branch, other.branch) {
            (Branch::F, Branch::F) => {
                let sum = Element::make(
                    self.config(),
                    Branch::F,
                    self.p.add(&other.p)?,
                    self.q.add(&other.q)?,
                    &self.m + &other.m,
                )?;
                Ok(OplusOutcome::Defined(sum))
            }
            (Branch::F, Branch::G) => f_plus_g(self, other),
            (Branch::G, Branch::F) => f_plus_g(other, self),
            (Branch::G, Branch::G) => Ok(OplusOutcome::Undefined),
        }
    }

    /// `a'`: the same triple on the other branch.
    pub fn orthosupplement(&self) -> Element {
        Element {
            branch: self.branch.flip(),
            ..self.clone()
        }
    }

    /// Sequential product. Total and commutative.
    pub fn seq(&self, other: &Element) -> Result<Element> {
        self.ensure_same(other)?;
        let cfg = self.config();
        let (fp, gp) = product_split(&self.p, &other.p)?;
        let (fq, gq) = product_split(&self.q, &other.q)?;
        match (self.branch, other.branch) {
            (Branch::F, Branch::F) => Element::make(cfg, Branch::F, fp, fq, gp + gq),
            (Branch::F, Branch::G) => f_seq_g(self, fp, fq, gp, gq),
            (Branch::G, Branch::F) => f_seq_g(other, fp, fq, gp, gq),
            (Branch::G, Branch::G) => {
                let p = self.p.sub_in_i0(&fp, "g∘g")?.add(&other.p)?;
                let q = self.q.sub_in_i0(&fq, "g∘g")?.add(&other.q)?;
                Element::make(cfg, Branch::G, p, q, &self.m + &other.m - gp - gq)
            }
        }
    }

    /// `self ≤ other`, in closed form.
    ///
    /// Equivalent to the existence of `c` with `self ⊕ c = other`; the
    /// equivalence is checked against a brute-force witness search in the
    /// axiom harness.
    pub fn le(&self, other: &Element) -> Result<bool> {
        self.ensure_same(other)?;
        Ok(match (self.branch, other.branch) {
            (Branch::F, Branch::F) => componentwise_below(self, other)?,
            (Branch::F, Branch::G) => true,
            (Branch::G, Branch::F) => false,
            (Branch::G, Branch::G) => componentwise_below(other, self)?,
        })
    }

    /// The unique `c` with `a ⊕ c = self`, where `a ≤ self`.
    pub fn ominus(&self, a: &Element) -> Result<Element> {
        self.ensure_same(a)?;
        if !a.le(self)? {
            return Err(AlgebraError::NotBelow {
                a: a.to_string(),
                b: self.to_string(),
            });
        }
        let cfg = self.config();
        match (a.branch, self.branch) {
            (Branch::F, Branch::F) => Element::make(
                cfg,
                Branch::F,
                self.p.sub_in_i0(&a.p, "ominus")?,
                self.q.sub_in_i0(&a.q, "ominus")?,
                &self.m - &a.m,
            ),
            (Branch::F, Branch::G) => Element::make(
                cfg,
                Branch::G,
                self.p.add(&a.p)?,
                self.q.add(&a.q)?,
                &self.m + &a.m,
            ),
            (Branch::G, Branch::G) => Element::make(
                cfg,
                Branch::F,
                a.p.sub_in_i0(&self.p, "ominus")?,
                a.q.sub_in_i0(&self.q, "ominus")?,
                &a.m - &self.m,
            ),
            (Branch::G, Branch::F) => unreachable!("le rules out g <= f"),
        }
    }

    /// `self ∘ self ∘ ... ∘ self` with `k >= 1` factors.
    pub fn power(&self, k: u64) -> Result<Element> {
        if k == 0 {
            return Err(AlgebraError::Exponent { min: 1, got: 0 });
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = self.seq(&acc)?;
        }
        Ok(acc)
    }
}

// a = f(p1, q1, m1), b = g(p2, q2, m2)
fn f_plus_g(a: &Element, b: &Element) -> Result<OplusOutcome> {
    let diff = in_i0_with_order(b.p.sub_checked(&a.p)?, b.q.sub_checked(&a.q)?, || b.m >= a.m);
    match diff {
        None => Ok(OplusOutcome::Undefined),
        Some((dp, dq)) => Ok(OplusOutcome::Defined(Element::make(
            a.config(),
            Branch::G,
            dp,
            dq,
            &b.m - &a.m,
        )?)),
    }
}

fn f_seq_g(f: &Element, fp: TruncPoly, fq: TruncPoly, gp: Int, gq: Int) -> Result<Element> {
    Element::make(
        f.config(),
        Branch::F,
        f.p.sub_in_i0(&fp, "f∘g")?,
        f.q.sub_in_i0(&fq, "f∘g")?,
        &f.m - gp - gq,
    )
}

// lower.p <= upper.p and lower.q <= upper.q in I0, with m deciding ties
fn componentwise_below(lower: &Element, upper: &Element) -> Result<bool> {
    Ok(in_i0_with_order(
        upper.p.sub_checked(&lower.p)?,
        upper.q.sub_checked(&lower.q)?,
        || upper.m >= lower.m,
    )
    .is_some())
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({};{};{})", self.branch.tag(), self.p, self.q, self.m)
    }
}

/// All window elements `e` with `e^k = c`, in canonical order.
///
/// Powers never change branch, so only the branch of `c` is searched.
pub fn enumerate_roots(c: &Element, k: u64, w: &SampleWindow) -> Result<Vec<Element>> {
    if k < 2 {
        return Err(AlgebraError::Exponent { min: 2, got: k });
    }
    w.validate()?;
    let cfg = c.config();
    window::ensure_within_cap(cfg, w, window::DEFAULT_MAX_ELEMENTS)?;
    let polys = window::polys(cfg, w.coeff_bound);
    let mut roots = Vec::new();
    for p in &polys {
        for q in &polys {
            for m in window::m_range(p, q, w.m_bound) {
                let e = Element {
                    branch: c.branch,
                    p: p.clone(),
                    q: q.clone(),
                    m: Int::from(m),
                };
                if e.power(k)? == *c {
                    roots.push(e);
                }
            }
        }
    }
    Ok(roots)
}
