//! Root certificates: for a given `n`, the elements `a = f(x, 0, 0)` and
//! `b = f(0, x, 0)` are distinct `n`-th roots of `c = f(0, 0, 1)` that are not
//! `k`-th roots of it for any `k < n`.

use serde::Serialize;

use crate::element::{Branch, Element};
use crate::error::Result;
use crate::poly::{AlgebraConfig, Int, TruncPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

/// One checked relation between two elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub claim: String,
    pub left: String,
    pub right: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootCertificate {
    pub n: usize,
    pub version: String,
    pub a: String,
    pub b: String,
    pub c: String,
    pub relations: Vec<Relation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window_roots: Option<Vec<String>>,
    pub verdict: Verdict,
}

impl RootCertificate {
    pub fn failures(&self) -> impl Iterator<Item = &Relation> {
        self.relations.iter().filter(|r| !r.verdict.is_pass())
    }
}

pub fn library_version() -> String {
    concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION")).to_string()
}

struct Recorder {
    relations: Vec<Relation>,
}

impl Recorder {
    fn record(&mut self, claim: String, left: &Element, right: &Element, holds: bool) {
        self.relations.push(Relation {
            claim,
            left: left.to_string(),
            right: right.to_string(),
            verdict: Verdict::from_bool(holds),
        });
    }
}

/// Recomputes every power from scratch and records each relation.
pub fn certify(cfg: AlgebraConfig) -> Result<RootCertificate> {
    let n = cfg.n();
    let x = TruncPoly::monomial(cfg, 1)?;
    let zero_poly = TruncPoly::zero(cfg);
    let a = Element::make(cfg, Branch::F, x.clone(), zero_poly.clone(), Int::ZERO)?;
    let b = Element::make(cfg, Branch::F, zero_poly.clone(), x, Int::ZERO)?;
    let c = Element::make(cfg, Branch::F, zero_poly.clone(), zero_poly, Int::ONE)?;
    let zero = Element::zero(cfg);

    // powers[k - 1] = a^k for k = 1..=n+1
    let powers = |e: &Element| -> Result<Vec<Element>> {
        let mut out = vec![e.clone()];
        for _ in 1..=n {
            let next = e.seq(out.last().expect("non-empty"))?;
            out.push(next);
        }
        Ok(out)
    };
    let pa = powers(&a)?;
    let pb = powers(&b)?;

    let mut rec = Recorder { relations: Vec::new() };
    rec.record("a != b".into(), &a, &b, a != b);
    for k in 1..n {
        let (ak, bk) = (&pa[k - 1], &pb[k - 1]);
        rec.record(format!("a^{k} != b^{k}"), ak, bk, ak != bk);
        rec.record(format!("a^{k} != c"), ak, &c, *ak != c);
        rec.record(format!("b^{k} != c"), bk, &c, *bk != c);
    }
    rec.record(format!("a^{n} = c"), &pa[n - 1], &c, pa[n - 1] == c);
    rec.record(format!("b^{n} = c"), &pb[n - 1], &c, pb[n - 1] == c);
    rec.record("c != 0".into(), &c, &zero, c != zero);
    rec.record(format!("a^{} = 0", n + 1), &pa[n], &zero, pa[n] == zero);
    rec.record(format!("b^{} = 0", n + 1), &pb[n], &zero, pb[n] == zero);
    for (name, chain) in [("a", &pa), ("b", &pb)] {
        for k in 1..=n {
            let (upper, lower) = (&chain[k - 1], &chain[k]);
            let strict = lower.le(upper)? && lower != upper;
            rec.record(format!("{name}^{} < {name}^{k}", k + 1), lower, upper, strict);
        }
    }

    let verdict = Verdict::from_bool(rec.relations.iter().all(|r| r.verdict.is_pass()));
    Ok(RootCertificate {
        n,
        version: library_version(),
        a: a.to_string(),
        b: b.to_string(),
        c: c.to_string(),
        relations: rec.relations,
        window_roots: None,
        verdict,
    })
}
