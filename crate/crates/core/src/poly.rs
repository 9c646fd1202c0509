//! Truncated integer polynomials `p(x) = k_1 x + ... + k_{n-1} x^{n-1}` whose
//! first nonzero coefficient is positive, together with the truncated product
//! maps `F`, `G` and their three-factor versions.

use std::fmt;

use dashu_int::IBig;
use serde::Serialize;

use crate::error::{AlgebraError, Result};

/// Exact integer used for every coefficient and for the `m` slot of elements.
pub type Int = IBig;

/// The truncation parameter `n > 1` fixing one instance of the construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AlgebraConfig {
    n: usize,
}

impl AlgebraConfig {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(AlgebraError::InvalidN(n));
        }
        Ok(AlgebraConfig { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored coefficients, one per degree `1..=n-1`.
    pub fn width(&self) -> usize {
        self.n - 1
    }

    pub(crate) fn ensure_same(&self, other: &AlgebraConfig) -> Result<()> {
        if self.n != other.n {
            return Err(AlgebraError::ConfigMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }
}

/// Returns true when all coefficients are zero or the first nonzero one is positive.
pub fn satisfies_sign_rule(coeffs: &[Int]) -> bool {
    match coeffs.iter().find(|k| !k.is_zero()) {
        None => true,
        Some(k) => k > &IBig::ZERO,
    }
}

/// A member of `I₀` for a fixed [`AlgebraConfig`].
///
/// `coeffs[i - 1]` holds the coefficient of `x^i`. There is no constant slot.
/// Ordering is lexicographic on the coefficient list, which is the canonical
/// order used by enumeration output.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruncPoly {
    cfg: AlgebraConfig,
    coeffs: Vec<Int>,
}

impl TruncPoly {
    pub fn new(cfg: AlgebraConfig, coeffs: Vec<Int>) -> Result<Self> {
        if coeffs.len() != cfg.width() {
            return Err(AlgebraError::WrongLength {
                expected: cfg.width(),
                got: coeffs.len(),
            });
        }
        if !satisfies_sign_rule(&coeffs) {
            return Err(AlgebraError::SignRule {
                coeffs: format_coeffs(&coeffs),
            });
        }
        Ok(TruncPoly { cfg, coeffs })
    }

    pub fn from_i64s(cfg: AlgebraConfig, coeffs: &[i64]) -> Result<Self> {
        Self::new(cfg, coeffs.iter().map(|&k| Int::from(k)).collect())
    }

    pub fn zero(cfg: AlgebraConfig) -> Self {
        TruncPoly {
            cfg,
            coeffs: vec![Int::ZERO; cfg.width()],
        }
    }

    /// The monomial `x^degree`, `1 <= degree <= n-1`.
    pub fn monomial(cfg: AlgebraConfig, degree: usize) -> Result<Self> {
        if degree == 0 || degree > cfg.width() {
            return Err(AlgebraError::DegreeOutOfRange {
                degree,
                max: cfg.width(),
            });
        }
        let mut coeffs = vec![Int::ZERO; cfg.width()];
        coeffs[degree - 1] = Int::ONE;
        Ok(TruncPoly { cfg, coeffs })
    }

    pub fn config(&self) -> AlgebraConfig {
        self.cfg
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    /// Coefficient of `x^degree`; zero outside `1..=n-1`.
    pub fn coeff(&self, degree: usize) -> Int {
        if degree == 0 || degree > self.coeffs.len() {
            Int::ZERO
        } else {
            self.coeffs[degree - 1].clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|k| k.is_zero())
    }

    /// Degree of the lowest nonzero term, if any.
    pub fn lowest_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|k| !k.is_zero()).map(|i| i + 1)
    }

    /// Largest absolute coefficient value.
    pub fn max_abs(&self) -> Int {
        self.coeffs
            .iter()
            .map(|k| if k < &IBig::ZERO { -k } else { k.clone() })
            .max()
            .unwrap_or(Int::ZERO)
    }

    pub fn add(&self, other: &TruncPoly) -> Result<TruncPoly> {
        self.cfg.ensure_same(&other.cfg)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        TruncPoly::new(self.cfg, coeffs)
    }

    /// `self - other` when the difference lies in `I₀`, `None` otherwise.
    ///
    /// `None` is a semantic outcome (it decides whether `⊕` is defined), not
    /// a failure; mismatched configs are still an error.
    pub fn sub_checked(&self, other: &TruncPoly) -> Result<Option<TruncPoly>> {
        self.cfg.ensure_same(&other.cfg)?;
        let coeffs: Vec<Int> = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        if satisfies_sign_rule(&coeffs) {
            Ok(Some(TruncPoly {
                cfg: self.cfg,
                coeffs,
            }))
        } else {
            Ok(None)
        }
    }

    /// Like [`sub_checked`](Self::sub_checked) for differences that must land
    /// in `I₀` by construction; a miss is reported as a closure failure.
    pub(crate) fn sub_in_i0(&self, other: &TruncPoly, context: &str) -> Result<TruncPoly> {
        self.sub_checked(other)?.ok_or_else(|| {
            AlgebraError::Closure(format!("{context}: {self} - {other} left I0"))
        })
    }
}

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_coeffs(&self.coeffs))
    }
}

pub(crate) fn format_coeffs(coeffs: &[Int]) -> String {
    let mut out = String::from("[");
    for (i, k) in coeffs.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&k.to_string());
    }
    out.push(']');
    out
}

/// Truncated part and degree-`n` coefficient of `p1 * p2` in one pass.
pub(crate) fn product_split(p1: &TruncPoly, p2: &TruncPoly) -> Result<(TruncPoly, Int)> {
    p1.cfg.ensure_same(&p2.cfg)?;
    let n = p1.cfg.n;
    let mut low = vec![Int::ZERO; n - 1];
    let mut top = Int::ZERO;
    for (i, a) in p1.coeffs.iter().enumerate().map(|(i, a)| (i + 1, a)) {
        if a.is_zero() {
            continue;
        }
        // i + j <= n only needs j <= n - i
        for j in 1..=(n - i).min(n - 1) {
            let b = &p2.coeffs[j - 1];
            if b.is_zero() {
                continue;
            }
            if i + j < n {
                low[i + j - 1] += a * b;
            } else {
                top += a * b;
            }
        }
    }
    let low = TruncPoly::new(p1.cfg, low)
        .map_err(|e| AlgebraError::Closure(format!("F({p1}, {p2}) left I0: {e}")))?;
    Ok((low, top))
}

/// `F(p1, p2)`: the product keeping only total degrees `<= n-1`.
pub fn map_f(p1: &TruncPoly, p2: &TruncPoly) -> Result<TruncPoly> {
    product_split(p1, p2).map(|(low, _)| low)
}

/// `G(p1, p2)`: the coefficient of `x^n` in the product.
pub fn map_g(p1: &TruncPoly, p2: &TruncPoly) -> Result<Int> {
    product_split(p1, p2).map(|(_, top)| top)
}

fn ensure_same3(p1: &TruncPoly, p2: &TruncPoly, p3: &TruncPoly) -> Result<()> {
    p1.cfg.ensure_same(&p2.cfg)?;
    p1.cfg.ensure_same(&p3.cfg)
}

/// Three-factor truncated product, summed directly over `i + j + m <= n-1`.
pub fn map_f3(p1: &TruncPoly, p2: &TruncPoly, p3: &TruncPoly) -> Result<TruncPoly> {
    ensure_same3(p1, p2, p3)?;
    let n = p1.cfg.n;
    let mut low = vec![Int::ZERO; n - 1];
    for i in 1..n {
        for j in 1..n {
            for m in 1..n {
                let d = i + j + m;
                if d < n {
                    low[d - 1] += &p1.coeffs[i - 1] * &p2.coeffs[j - 1] * &p3.coeffs[m - 1];
                }
            }
        }
    }
    TruncPoly::new(p1.cfg, low).map_err(|e| AlgebraError::Closure(format!("F3 left I0: {e}")))
}

/// Three-factor degree-`n` coefficient, summed directly over `i + j + m = n`.
pub fn map_g3(p1: &TruncPoly, p2: &TruncPoly, p3: &TruncPoly) -> Result<Int> {
    ensure_same3(p1, p2, p3)?;
    let n = p1.cfg.n;
    let mut top = Int::ZERO;
    for i in 1..n {
        for j in 1..n {
            if i + j >= n {
                continue;
            }
            let m = n - i - j;
            top += &p1.coeffs[i - 1] * &p2.coeffs[j - 1] * &p3.coeffs[m - 1];
        }
    }
    Ok(top)
}

/// Untruncated product of two or three polynomials, coefficients for degrees
/// `0..=3(n-1)`. Used only to cross-check the truncated maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullProduct {
    cfg: AlgebraConfig,
    coeffs: Vec<Int>,
}

impl FullProduct {
    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    /// Coefficients of degrees `1..=n-1`, the part `F`/`F3` must reproduce.
    pub fn truncated(&self) -> Vec<Int> {
        self.coeffs[1..self.cfg.n].to_vec()
    }

    /// Coefficient of `x^n`, the value `G`/`G3` must reproduce.
    pub fn degree_n(&self) -> Int {
        self.coeffs[self.cfg.n].clone()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|k| k.is_zero())
    }
}

/// Multiplies the factors as ordinary polynomials over the integers.
///
/// Accepts two or three factors; any other count is a length error.
pub fn oracle_full_product(factors: &[&TruncPoly]) -> Result<FullProduct> {
    if !(2..=3).contains(&factors.len()) {
        return Err(AlgebraError::WrongLength {
            expected: 3,
            got: factors.len(),
        });
    }
    let cfg = factors[0].cfg;
    for f in &factors[1..] {
        cfg.ensure_same(&f.cfg)?;
    }
    let max_degree = 3 * (cfg.n - 1);
    // dense over degrees 0..=max_degree, starting from the constant 1
    let mut acc = vec![Int::ZERO; max_degree + 1];
    acc[0] = Int::ONE;
    for factor in factors {
        let mut dense = vec![Int::ZERO; cfg.n];
        dense[1..].clone_from_slice(&factor.coeffs);
        let mut next = vec![Int::ZERO; max_degree + 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in dense.iter().enumerate() {
                if i + j <= max_degree {
                    next[i + j] += a * b;
                }
            }
        }
        acc = next;
    }
    Ok(FullProduct { cfg, coeffs: acc })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize) -> AlgebraConfig {
        AlgebraConfig::new(n).unwrap()
    }

    fn poly(n: usize, k: &[i64]) -> TruncPoly {
        TruncPoly::from_i64s(cfg(n), k).unwrap()
    }

    #[test]
    fn config_rejects_small_n() {
        assert_eq!(AlgebraConfig::new(1), Err(AlgebraError::InvalidN(1)));
        assert_eq!(AlgebraConfig::new(0), Err(AlgebraError::InvalidN(0)));
        assert_eq!(cfg(2).width(), 1);
    }

    #[test]
    fn zero_poly() {
        let z = TruncPoly::zero(cfg(3));
        assert_eq!(z.coeffs(), &[Int::ZERO, Int::ZERO]);
        assert!(z.is_zero());
        let p = poly(3, &[1, -2]);
        assert_eq!(z.add(&p).unwrap(), p);
    }

    #[test]
    fn monomials() {
        assert_eq!(TruncPoly::monomial(cfg(4), 2).unwrap(), poly(4, &[0, 1, 0]));
        assert_eq!(TruncPoly::monomial(cfg(2), 1).unwrap(), poly(2, &[1]));
        assert_eq!(
            TruncPoly::monomial(cfg(4), 4),
            Err(AlgebraError::DegreeOutOfRange { degree: 4, max: 3 })
        );
        assert!(TruncPoly::monomial(cfg(4), 0).is_err());
    }

    #[test]
    fn sign_rule_is_enforced() {
        assert!(TruncPoly::from_i64s(cfg(3), &[-1, 5]).is_err());
        assert!(TruncPoly::from_i64s(cfg(3), &[0, -1]).is_err());
        assert!(TruncPoly::from_i64s(cfg(3), &[0, 1]).is_ok());
        assert!(TruncPoly::from_i64s(cfg(3), &[1]).is_err());
    }

    #[test]
    fn addition() {
        assert_eq!(poly(2, &[1]).add(&poly(2, &[1])).unwrap(), poly(2, &[2]));
        assert_eq!(
            poly(3, &[1, 1]).add(&poly(3, &[1, 0])).unwrap(),
            poly(3, &[2, 1])
        );
        assert!(matches!(
            poly(3, &[1, 1]).add(&poly(2, &[1])),
            Err(AlgebraError::ConfigMismatch { left: 3, right: 2 })
        ));
    }

    #[test]
    fn checked_subtraction() {
        // x - x^2 = [1,-1], leading +1
        assert_eq!(
            poly(3, &[1, 0]).sub_checked(&poly(3, &[0, 1])).unwrap(),
            Some(poly(3, &[1, -1]))
        );
        // x^2 - x = [-1,1], leading -1
        assert_eq!(poly(3, &[0, 1]).sub_checked(&poly(3, &[1, 0])).unwrap(), None);
        let p = poly(3, &[2, -7]);
        assert_eq!(p.sub_checked(&p).unwrap(), Some(TruncPoly::zero(cfg(3))));
    }

    #[test]
    fn f_and_g_on_monomials() {
        for n in 2..=6 {
            let c = cfg(n);
            let p1 = TruncPoly::monomial(c, 1).unwrap();
            for j in 1..n {
                let pj = TruncPoly::monomial(c, j).unwrap();
                let (f, g) = product_split(&p1, &pj).unwrap();
                if j < n - 1 {
                    assert_eq!(f, TruncPoly::monomial(c, j + 1).unwrap());
                    assert_eq!(g, Int::ZERO);
                } else {
                    assert!(f.is_zero());
                    assert_eq!(g, Int::ONE);
                }
            }
        }
    }

    #[test]
    fn f_discards_high_degrees() {
        // n=4: (x + x^3) * x^2 = x^3 + x^5
        let f = map_f(&poly(4, &[1, 0, 1]), &poly(4, &[0, 1, 0])).unwrap();
        assert_eq!(f, poly(4, &[0, 0, 1]));
        // n=4: x^2 * x^2 = x^4
        assert!(map_f(&poly(4, &[0, 1, 0]), &poly(4, &[0, 1, 0])).unwrap().is_zero());
        assert_eq!(map_g(&poly(4, &[0, 1, 0]), &poly(4, &[0, 1, 0])).unwrap(), Int::ONE);
    }

    #[test]
    fn zero_annihilates() {
        let z = TruncPoly::zero(cfg(4));
        let p = poly(4, &[2, -1, 3]);
        assert!(map_f(&z, &p).unwrap().is_zero());
        assert_eq!(map_g(&z, &p).unwrap(), Int::ZERO);
        assert!(map_f3(&z, &p, &p).unwrap().is_zero());
        assert_eq!(map_g3(&z, &p, &p).unwrap(), Int::ZERO);
    }

    #[test]
    fn triple_maps() {
        let x5 = poly(5, &[1, 0, 0, 0]);
        assert_eq!(map_f3(&x5, &x5, &x5).unwrap(), poly(5, &[0, 0, 1, 0]));
        assert_eq!(map_g3(&x5, &x5, &x5).unwrap(), Int::ZERO);
        let x3 = poly(3, &[1, 0]);
        assert!(map_f3(&x3, &x3, &x3).unwrap().is_zero());
        assert_eq!(map_g3(&x3, &x3, &x3).unwrap(), Int::ONE);
    }

    #[test]
    fn oracle_examples() {
        let x2 = poly(2, &[1]);
        let full = oracle_full_product(&[&x2, &x2]).unwrap();
        assert_eq!(full.truncated(), vec![Int::ZERO]);
        assert_eq!(full.degree_n(), Int::ONE);

        // n=3: (x + x^2) x = x^2 + x^3
        let full = oracle_full_product(&[&poly(3, &[1, 1]), &poly(3, &[1, 0])]).unwrap();
        assert_eq!(full.truncated(), vec![Int::ZERO, Int::ONE]);
        assert_eq!(full.degree_n(), Int::ONE);

        let z = TruncPoly::zero(cfg(3));
        assert!(oracle_full_product(&[&z, &poly(3, &[1, 1])]).unwrap().is_zero());
        assert!(oracle_full_product(&[&z]).is_err());
    }

    #[test]
    fn large_coefficients_do_not_wrap() {
        let big = Int::from(i64::MAX);
        let p = TruncPoly::new(cfg(2), vec![big.clone()]).unwrap();
        let g = map_g(&p, &p).unwrap();
        assert_eq!(g, &big * &big);
        assert!(g > Int::from(i64::MAX));
    }
}
