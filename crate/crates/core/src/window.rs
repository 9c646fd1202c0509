//! Bounded windows over the infinite algebra: exhaustive enumeration in
//! canonical order, cardinality counting, and seeded sampling.

use rand::{Rng, RngCore};
use serde::Serialize;

use crate::element::{Branch, Element};
use crate::error::{AlgebraError, Result};
use crate::poly::{AlgebraConfig, Int, TruncPoly};

pub const DEFAULT_MAX_ELEMENTS: u128 = 1_000_000;
pub const DEFAULT_MAX_TUPLES: u128 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum WindowMode {
    Exhaustive,
    Sampled { trials: u64, seed: u64 },
}

/// Coefficient bound `W`, bound `M` on `|m|`, and how to visit the window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SampleWindow {
    #[serde(rename = "W")]
    pub coeff_bound: i64,
    #[serde(rename = "M")]
    pub m_bound: i64,
    #[serde(flatten)]
    pub mode: WindowMode,
}

impl SampleWindow {
    pub fn exhaustive(coeff_bound: i64, m_bound: i64) -> Self {
        SampleWindow {
            coeff_bound,
            m_bound,
            mode: WindowMode::Exhaustive,
        }
    }

    pub fn sampled(coeff_bound: i64, m_bound: i64, trials: u64, seed: u64) -> Self {
        SampleWindow {
            coeff_bound,
            m_bound,
            mode: WindowMode::Sampled { trials, seed },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.coeff_bound < 0 || self.m_bound < 0 {
            return Err(AlgebraError::DegenerateWindow {
                coeff_bound: self.coeff_bound,
                m_bound: self.m_bound,
            });
        }
        Ok(())
    }

    pub fn is_exhaustive(&self) -> bool {
        matches!(self.mode, WindowMode::Exhaustive)
    }
}

/// Every `I₀` polynomial with all `|k_i| <= bound`, in lexicographic order.
pub fn polys(cfg: AlgebraConfig, bound: i64) -> Vec<TruncPoly> {
    let width = cfg.width();
    let mut out = Vec::new();
    let mut digits = vec![-bound; width];
    loop {
        let coeffs: Vec<Int> = digits.iter().map(|&k| Int::from(k)).collect();
        if let Ok(p) = TruncPoly::new(cfg, coeffs) {
            out.push(p);
        }
        // odometer, last digit fastest
        let mut i = width;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if digits[i] < bound {
                digits[i] += 1;
                break;
            }
            digits[i] = -bound;
        }
    }
}

/// Legal values of `m` for a given `(p, q)` within `|m| <= bound`.
pub fn m_range(p: &TruncPoly, q: &TruncPoly, bound: i64) -> std::ops::RangeInclusive<i64> {
    if p.is_zero() && q.is_zero() {
        0..=bound
    } else {
        -bound..=bound
    }
}

/// Number of `I₀` polynomials in the window; `None` on overflow.
///
/// Nonzero coefficient vectors split evenly by the sign of their first
/// nonzero entry, so the count is `((2W+1)^(n-1) + 1) / 2`.
pub fn poly_count(cfg: AlgebraConfig, bound: i64) -> Option<u128> {
    let side = u128::try_from(bound).ok()?.checked_mul(2)?.checked_add(1)?;
    let exp = u32::try_from(cfg.width()).ok()?;
    Some(side.checked_pow(exp)?.div_ceil(2))
}

/// Number of elements of both branches in the window; `None` on overflow.
pub fn element_count(cfg: AlgebraConfig, w: &SampleWindow) -> Option<u128> {
    let polys = poly_count(cfg, w.coeff_bound)?;
    let m = u128::try_from(w.m_bound).ok()?;
    let nonzero_pairs = polys.checked_mul(polys)?.checked_sub(1)?;
    let per_branch = nonzero_pairs.checked_mul(2 * m + 1)?.checked_add(m + 1)?;
    per_branch.checked_mul(2)
}

/// Refuses windows whose cardinality exceeds `cap` (or overflows).
pub fn ensure_within_cap(cfg: AlgebraConfig, w: &SampleWindow, cap: u128) -> Result<u128> {
    w.validate()?;
    match element_count(cfg, w) {
        Some(size) if size <= cap => Ok(size),
        Some(size) => Err(AlgebraError::WindowTooLarge {
            size: size.to_string(),
            cap,
        }),
        None => Err(AlgebraError::WindowTooLarge {
            size: "more than 2^128".into(),
            cap,
        }),
    }
}

/// Every element of the window, both branches, canonical order.
pub fn elements(cfg: AlgebraConfig, w: &SampleWindow) -> Vec<Element> {
    let polys = polys(cfg, w.coeff_bound);
    let mut out = Vec::new();
    for branch in [Branch::F, Branch::G] {
        for p in &polys {
            for q in &polys {
                for m in m_range(p, q, w.m_bound) {
                    let e = Element::make(cfg, branch, p.clone(), q.clone(), Int::from(m))
                        .expect("window elements satisfy membership");
                    out.push(e);
                }
            }
        }
    }
    out
}

/// Uniform coefficients on `[-W, W]`, negated as a whole when the first
/// nonzero one comes out negative.
pub fn sample_poly(cfg: AlgebraConfig, bound: i64, rng: &mut dyn RngCore) -> TruncPoly {
    let mut coeffs: Vec<i64> = (0..cfg.width()).map(|_| rng.random_range(-bound..=bound)).collect();
    if coeffs.iter().find(|&&k| k != 0).is_some_and(|&k| k < 0) {
        coeffs.iter_mut().for_each(|k| *k = -*k);
    }
    TruncPoly::from_i64s(cfg, &coeffs).expect("repaired sample satisfies the sign rule")
}

/// Uniform branch, sampled polynomials, then `m` uniform on its legal range.
pub fn sample_element(cfg: AlgebraConfig, w: &SampleWindow, rng: &mut dyn RngCore) -> Element {
    let branch = if rng.random_bool(0.5) { Branch::F } else { Branch::G };
    let p = sample_poly(cfg, w.coeff_bound, rng);
    let q = sample_poly(cfg, w.coeff_bound, rng);
    let m = rng.random_range(m_range(&p, &q, w.m_bound));
    Element::make(cfg, branch, p, q, Int::from(m)).expect("sampled element satisfies membership")
}
