//! A generic interface over (sequential) effect algebras so the axiom harness
//! can run unchanged on `E₀`, on a known-good reference instance, and on
//! deliberately broken variants of `E₀`.

use std::fmt;
use std::str::FromStr;

use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;
use rand::{Rng, RngCore};

use crate::element::{Branch, Element};
use crate::error::{AlgebraError, ParseError, Result};
use crate::poly::{map_f, map_g, AlgebraConfig, Int, TruncPoly};
use crate::text;
use crate::window::{self, SampleWindow};

/// A carrier with `0`, `1`, partial `⊕`, total `∘` and orthosupplement.
///
/// Implementations must be pure. `le` is optional; when absent, order facts
/// are derived from `⊕` by searching [`witness_window`](Self::witness_window).
pub trait SeaInstance {
    type Elem: Clone + Eq + fmt::Debug;

    /// Short human-readable name, used in reports.
    fn descriptor(&self) -> String;

    /// The polynomial config, for instances built on `E₀`.
    fn algebra_config(&self) -> Option<AlgebraConfig> {
        None
    }

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn oplus(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Option<Self::Elem>>;
    fn seq(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn orthosupplement(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn le(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<Result<bool>> {
        None
    }

    fn render(&self, a: &Self::Elem) -> String;
    fn parse(&self, src: &str) -> Result<Self::Elem>;

    /// Number of elements [`window`](Self::window) would return, `None` if unbounded.
    fn window_size(&self, w: &SampleWindow) -> Option<u128>;
    /// Every element of the window exactly once, in canonical order.
    fn window(&self, w: &SampleWindow) -> Vec<Self::Elem>;
    fn sample(&self, w: &SampleWindow, rng: &mut dyn RngCore) -> Self::Elem;

    /// A finite set guaranteed to contain any `c` with `a ⊕ c = b`.
    fn witness_window(&self, a: &Self::Elem, b: &Self::Elem) -> Vec<Self::Elem>;
    fn witness_window_size(&self, a: &Self::Elem, b: &Self::Elem) -> Option<u128>;

    /// Elements close to `a`, used to probe uniqueness in sampled mode.
    fn neighbors(&self, _a: &Self::Elem) -> Vec<Self::Elem> {
        Vec::new()
    }
}

/// `E₀` for a fixed `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct E0Instance {
    cfg: AlgebraConfig,
}

impl E0Instance {
    pub fn new(cfg: AlgebraConfig) -> Self {
        E0Instance { cfg }
    }

    pub fn config(&self) -> AlgebraConfig {
        self.cfg
    }

    fn witness_bounds(a: &Element, b: &Element) -> SampleWindow {
        let coeff = a.p().max_abs().max(a.q().max_abs()) + b.p().max_abs().max(b.q().max_abs());
        let m = abs(a.m()) + abs(b.m());
        SampleWindow::exhaustive(to_i64_saturating(&coeff), to_i64_saturating(&m))
    }
}

fn abs(k: &Int) -> Int {
    if k < &Int::ZERO {
        -k
    } else {
        k.clone()
    }
}

fn to_i64_saturating(k: &Int) -> i64 {
    i64::try_from(k).unwrap_or(i64::MAX)
}

impl SeaInstance for E0Instance {
    type Elem = Element;

    fn descriptor(&self) -> String {
        format!("E0(n={})", self.cfg.n())
    }

    fn algebra_config(&self) -> Option<AlgebraConfig> {
        Some(self.cfg)
    }

    fn zero(&self) -> Element {
        Element::zero(self.cfg)
    }

    fn one(&self) -> Element {
        Element::one(self.cfg)
    }

    fn oplus(&self, a: &Element, b: &Element) -> Result<Option<Element>> {
        Ok(a.oplus(b)?.into_option())
    }

    fn seq(&self, a: &Element, b: &Element) -> Result<Element> {
        a.seq(b)
    }

    fn orthosupplement(&self, a: &Element) -> Result<Element> {
        Ok(a.orthosupplement())
    }

    fn le(&self, a: &Element, b: &Element) -> Option<Result<bool>> {
        Some(a.le(b))
    }

    fn render(&self, a: &Element) -> String {
        a.to_string()
    }

    fn parse(&self, src: &str) -> Result<Element> {
        text::parse_element(self.cfg, src)
    }

    fn window_size(&self, w: &SampleWindow) -> Option<u128> {
        window::element_count(self.cfg, w)
    }

    fn window(&self, w: &SampleWindow) -> Vec<Element> {
        window::elements(self.cfg, w)
    }

    fn sample(&self, w: &SampleWindow, rng: &mut dyn RngCore) -> Element {
        window::sample_element(self.cfg, w, rng)
    }

    // Any witness has coefficients bounded by the sum of the operands'
    // coefficient magnitudes and |m| <= |m_a| + |m_b|.
    fn witness_window(&self, a: &Element, b: &Element) -> Vec<Element> {
        window::elements(self.cfg, &Self::witness_bounds(a, b))
    }

    fn witness_window_size(&self, a: &Element, b: &Element) -> Option<u128> {
        window::element_count(self.cfg, &Self::witness_bounds(a, b))
    }

    fn neighbors(&self, a: &Element) -> Vec<Element> {
        let mut out = vec![a.orthosupplement()];
        for delta in [-1i64, 1] {
            let m = a.m() + Int::from(delta);
            if let Ok(e) = Element::make(self.cfg, a.branch(), a.p().clone(), a.q().clone(), m) {
                out.push(e);
            }
            for slot in 0..2 * self.cfg.width() {
                let (mut p, mut q) = (a.p().coeffs().to_vec(), a.q().coeffs().to_vec());
                let w = self.cfg.width();
                if slot < w {
                    p[slot] += Int::from(delta);
                } else {
                    q[slot - w] += Int::from(delta);
                }
                let (Ok(p), Ok(q)) = (TruncPoly::new(self.cfg, p), TruncPoly::new(self.cfg, q)) else {
                    continue;
                };
                if let Ok(e) = Element::make(self.cfg, a.branch(), p, q, a.m().clone()) {
                    out.push(e);
                }
            }
        }
        out
    }
}

/// The unit interval with `a ⊕ b = a + b` (when `<= 1`), `a ∘ b = ab` and
/// `a' = 1 - a`, over exact rationals. Its windows are Farey sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FuzzyInterval {
    max_denominator: u64,
}

impl FuzzyInterval {
    pub fn new(max_denominator: u64) -> Self {
        FuzzyInterval {
            max_denominator: max_denominator.max(1),
        }
    }

    fn fraction(num: u64, den: u64) -> RBig {
        RBig::from_parts(IBig::from(num), UBig::from(den))
    }

    fn denominator(a: &RBig) -> u64 {
        u64::try_from(a.denominator()).unwrap_or(u64::MAX)
    }
}

impl Default for FuzzyInterval {
    fn default() -> Self {
        FuzzyInterval::new(8)
    }
}

impl SeaInstance for FuzzyInterval {
    type Elem = RBig;

    fn descriptor(&self) -> String {
        format!("fuzzy[0,1](max_den={})", self.max_denominator)
    }

    fn zero(&self) -> RBig {
        RBig::ZERO
    }

    fn one(&self) -> RBig {
        RBig::ONE
    }

    fn oplus(&self, a: &RBig, b: &RBig) -> Result<Option<RBig>> {
        let sum = a + b;
        Ok((sum <= RBig::ONE).then_some(sum))
    }

    fn seq(&self, a: &RBig, b: &RBig) -> Result<RBig> {
        Ok(a * b)
    }

    fn orthosupplement(&self, a: &RBig) -> Result<RBig> {
        Ok(RBig::ONE - a)
    }

    fn le(&self, a: &RBig, b: &RBig) -> Option<Result<bool>> {
        Some(Ok(a <= b))
    }

    fn render(&self, a: &RBig) -> String {
        if a.denominator() == &UBig::ONE {
            a.numerator().to_string()
        } else {
            format!("{}/{}", a.numerator(), a.denominator())
        }
    }

    fn parse(&self, src: &str) -> Result<RBig> {
        let bad = || AlgebraError::from(ParseError::new(0, format!("expected a fraction in [0,1], got {src:?}")));
        let (num, den) = match src.trim().split_once('/') {
            Some((num, den)) => (num.trim(), den.trim()),
            None => (src.trim(), "1"),
        };
        let num: IBig = num.parse().map_err(|_| bad())?;
        let den: UBig = den.parse().map_err(|_| bad())?;
        if den == UBig::ZERO {
            return Err(bad());
        }
        let value = RBig::from_parts(num, den);
        if value < RBig::ZERO || value > RBig::ONE {
            return Err(bad());
        }
        Ok(value)
    }

    fn window_size(&self, w: &SampleWindow) -> Option<u128> {
        Some(self.window(w).len() as u128)
    }

    /// All reduced fractions with denominator `<= max_denominator`, ascending.
    fn window(&self, _w: &SampleWindow) -> Vec<RBig> {
        let mut out: Vec<RBig> = (1..=self.max_denominator)
            .flat_map(|d| (0..=d).map(move |k| Self::fraction(k, d)))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    fn sample(&self, _w: &SampleWindow, rng: &mut dyn RngCore) -> RBig {
        let d = rng.random_range(1..=self.max_denominator);
        let k = rng.random_range(0..=d);
        Self::fraction(k, d)
    }

    fn witness_window(&self, a: &RBig, b: &RBig) -> Vec<RBig> {
        let den = Self::denominator(a).saturating_mul(Self::denominator(b));
        (0..=den).map(|k| Self::fraction(k, den)).collect()
    }

    fn witness_window_size(&self, a: &RBig, b: &RBig) -> Option<u128> {
        let den = Self::denominator(a).checked_mul(Self::denominator(b))?;
        Some(den as u128 + 1)
    }

    fn neighbors(&self, a: &RBig) -> Vec<RBig> {
        let step = Self::fraction(1, Self::denominator(a).saturating_mul(2));
        let comp = RBig::ONE - a;
        [&comp + &step, &comp - &step]
            .into_iter()
            .filter(|x| x >= &RBig::ZERO && x <= &RBig::ONE)
            .chain(std::iter::once(comp))
            .collect()
    }
}

/// Built-in corruptions of `E₀`, each of which breaks at least one axiom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mutation {
    /// `f ∘ g` forgets the `G` terms in its `m` slot.
    DropGTerm,
    /// `g ∘ f` (g on the left) takes the `g` operand as the base of the mixed rule.
    SwapFArgsOneSide,
    /// `f ⊕ f` adds one to the `m` slot.
    OffByOneM,
}

impl Mutation {
    pub const ALL: [Mutation; 3] = [Mutation::DropGTerm, Mutation::SwapFArgsOneSide, Mutation::OffByOneM];

    pub fn tag(self) -> &'static str {
        match self {
            Mutation::DropGTerm => "drop-G-term",
            Mutation::SwapFArgsOneSide => "swap-F-args-one-side",
            Mutation::OffByOneM => "off-by-one-m",
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Mutation {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        Mutation::ALL
            .into_iter()
            .find(|m| m.tag() == s)
            .ok_or_else(|| AlgebraError::UnknownMutation(s.to_string()))
    }
}

/// `E₀` with one [`Mutation`] applied. Supplies no closed-form `le`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MutantE0 {
    base: E0Instance,
    mutation: Mutation,
}

impl MutantE0 {
    pub fn new(base: E0Instance, mutation: Mutation) -> Self {
        MutantE0 { base, mutation }
    }

    pub fn from_tag(base: E0Instance, tag: &str) -> Result<Self> {
        Ok(MutantE0::new(base, tag.parse()?))
    }

    pub fn mutation(&self) -> Mutation {
        self.mutation
    }

    // the mixed product rule with an explicit base element
    fn mixed_product(&self, base: &Element, other: &Element, keep_g: bool) -> Result<Element> {
        let cfg = self.base.cfg;
        let p = base
            .p()
            .sub_checked(&map_f(base.p(), other.p())?)?
            .ok_or_else(|| AlgebraError::Closure("mutant mixed rule left I0".into()))?;
        let q = base
            .q()
            .sub_checked(&map_f(base.q(), other.q())?)?
            .ok_or_else(|| AlgebraError::Closure("mutant mixed rule left I0".into()))?;
        let mut m = base.m().clone();
        if keep_g {
            m -= map_g(base.p(), other.p())? + map_g(base.q(), other.q())?;
        }
        Element::make(cfg, Branch::F, p, q, m)
    }
}

impl SeaInstance for MutantE0 {
    type Elem = Element;

    fn descriptor(&self) -> String {
        format!("{}+mutant({})", self.base.descriptor(), self.mutation)
    }

    fn algebra_config(&self) -> Option<AlgebraConfig> {
        Some(self.base.cfg)
    }

    fn zero(&self) -> Element {
        self.base.zero()
    }

    fn one(&self) -> Element {
        self.base.one()
    }

    fn oplus(&self, a: &Element, b: &Element) -> Result<Option<Element>> {
        let sum = self.base.oplus(a, b)?;
        match (self.mutation, a.branch(), b.branch(), sum) {
            (Mutation::OffByOneM, Branch::F, Branch::F, Some(s)) => {
                let m = s.m() + Int::ONE;
                Ok(Some(Element::make(self.base.cfg, Branch::F, s.p().clone(), s.q().clone(), m)?))
            }
            (_, _, _, sum) => Ok(sum),
        }
    }

    fn seq(&self, a: &Element, b: &Element) -> Result<Element> {
        match (self.mutation, a.branch(), b.branch()) {
            (Mutation::DropGTerm, Branch::F, Branch::G) => self.mixed_product(a, b, false),
            (Mutation::DropGTerm, Branch::G, Branch::F) => self.mixed_product(b, a, false),
            (Mutation::SwapFArgsOneSide, Branch::G, Branch::F) => self.mixed_product(a, b, true),
            _ => self.base.seq(a, b),
        }
    }

    fn orthosupplement(&self, a: &Element) -> Result<Element> {
        self.base.orthosupplement(a)
    }

    fn render(&self, a: &Element) -> String {
        self.base.render(a)
    }

    fn parse(&self, src: &str) -> Result<Element> {
        self.base.parse(src)
    }

    fn window_size(&self, w: &SampleWindow) -> Option<u128> {
        self.base.window_size(w)
    }

    fn window(&self, w: &SampleWindow) -> Vec<Element> {
        self.base.window(w)
    }

    fn sample(&self, w: &SampleWindow, rng: &mut dyn RngCore) -> Element {
        self.base.sample(w, rng)
    }

    fn witness_window(&self, a: &Element, b: &Element) -> Vec<Element> {
        self.base.witness_window(a, b)
    }

    fn witness_window_size(&self, a: &Element, b: &Element) -> Option<u128> {
        self.base.witness_window_size(a, b)
    }

    fn neighbors(&self, a: &Element) -> Vec<Element> {
        self.base.neighbors(a)
    }
}
