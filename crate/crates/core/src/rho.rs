//! Exact rational surrogates of the rotation parameter.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr;

/// Default number of decimal places for irrational expressions.
pub const DEFAULT_PRECISION: u32 = 15;
/// Smallest accepted precision.
pub const MIN_PRECISION: u32 = 12;
/// Largest accepted precision; keeps homogeneous coordinates inside `i128`.
pub const MAX_PRECISION: u32 = 30;
/// Default index window.
pub const DEFAULT_WINDOW: u64 = 100_000;

/// Which side of 1/2 the parameter lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// ρ > 1/2
    High,
    /// ρ < 1/2
    Low,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::High => "high",
            Regime::Low => "low",
        })
    }
}

/// Why certification failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// dist(mρ, ℤ) ≤ m·ε
    NearInteger,
    /// |α_m − ρ| ≤ (m+1)·ε
    NearRho,
    /// a classification boundary lies within ε of the surrogate
    RegimeBoundary,
}

/// Outcome of [`RhoParam::certify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certification {
    pub window: u64,
    pub passed: bool,
    /// First failing index (0 for a boundary violation).
    pub first_violation: Option<u64>,
    pub kind: Option<ViolationKind>,
}

/// A rational surrogate `p/q` of ρ together with an uncertainty radius and
/// the window of indices on which its predicates are trusted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoParam {
    num: BigInt,
    den: BigInt,
    uncertainty: BigRational,
    max_safe_index: u64,
    certified: bool,
    small: Option<(i128, i128)>,
}

impl RhoParam {
    /// Builds `num/den ± uncertainty` with the default window
    /// `min(10^5, den − 1)` and certifies it.
    pub fn new(num: BigInt, den: BigInt, uncertainty: BigRational) -> Result<Self> {
        let value = validate(&num, &den)?;
        let window = default_window(value.denom());
        Self::assemble(value, uncertainty, window)
    }

    /// Like [`RhoParam::new`] with an explicit window.
    pub fn with_window(num: BigInt, den: BigInt, uncertainty: BigRational, window: u64) -> Result<Self> {
        let value = validate(&num, &den)?;
        Self::assemble(value, uncertainty, window)
    }

    /// Exact rational `p/q` with zero uncertainty.
    pub fn from_ratio(p: i64, q: i64) -> Result<Self> {
        Self::new(p.into(), q.into(), BigRational::zero())
    }

    /// Parses an expression such as `0.93+pi*1e-5`.
    ///
    /// Irrational expressions are truncated to `precision` decimal places
    /// with an uncertainty of one unit in the last place; rational ones are
    /// kept exact with zero uncertainty.
    pub fn parse(src: &str, precision: u32) -> Result<Self> {
        Self::parse_inner(src, precision, None)
    }

    /// Parses and certifies on an explicit window.
    pub fn parse_with_window(src: &str, precision: u32, window: u64) -> Result<Self> {
        Self::parse_inner(src, precision, Some(window))
    }

    fn parse_inner(src: &str, precision: u32, window: Option<u64>) -> Result<Self> {
        if !(MIN_PRECISION..=MAX_PRECISION).contains(&precision) {
            return Err(Error::Invalid(format!(
                "precision must lie in [{MIN_PRECISION}, {MAX_PRECISION}], got {precision}"
            )));
        }
        let lin = expr::parse_linear(src)?;
        let (value, uncertainty) = if lin.is_rational() {
            (lin.rational.clone(), BigRational::zero())
        } else {
            let scale = BigInt::from(10u32).pow(precision);
            let t = lin.floor_scaled(precision)?;
            (BigRational::new(t, scale.clone()), BigRational::new(BigInt::one(), scale))
        };
        let value = validate(value.numer(), value.denom())?;
        let window = window.unwrap_or_else(|| default_window(value.denom()));
        Self::assemble(value, uncertainty, window)
    }

    fn assemble(value: BigRational, uncertainty: BigRational, window: u64) -> Result<Self> {
        if uncertainty.is_negative() {
            return Err(Error::Invalid("negative uncertainty".into()));
        }
        let (num, den) = (value.numer().clone(), value.denom().clone());
        if window == 0 {
            return Err(Error::Invalid("window must be positive".into()));
        }
        if BigInt::from(window) >= den {
            return Err(Error::WindowTooLarge { window, denominator: den.to_string() });
        }
        let small = match (num.to_i128(), den.to_i128()) {
            (Some(p), Some(q)) => Some((p, q)),
            _ => None,
        };
        let mut out = RhoParam { num, den, uncertainty, max_safe_index: window, certified: false, small };
        out.certified = out.certify(window)?.passed;
        Ok(out)
    }

    /// Returns a copy re-certified on window `m`.
    pub fn rewindow(&self, m: u64) -> Result<Self> {
        Self::assemble(self.value(), self.uncertainty.clone(), m)
    }

    /// Checks that every integer-part predicate with index `≤ m` is the same
    /// for all reals within the uncertainty of the surrogate.
    pub fn certify(&self, m: u64) -> Result<Certification> {
        if BigInt::from(m) >= self.den {
            return Err(Error::WindowTooLarge { window: m, denominator: self.den.to_string() });
        }
        let fail = |at: u64, kind| Certification { window: m, passed: false, first_violation: Some(at), kind: Some(kind) };
        if self.uncertainty.is_zero() {
            return Ok(Certification { window: m, passed: true, first_violation: None, kind: None });
        }
        let v = self.value();
        let sig = signature(&v);
        let lo = &v - &self.uncertainty;
        let hi = &v + &self.uncertainty;
        let zero = BigRational::zero();
        let one = BigRational::one();
        if lo <= zero || hi >= one || signature(&lo) != sig || signature(&hi) != sig {
            return Ok(fail(0, ViolationKind::RegimeBoundary));
        }
        let eps = self.uncertainty.to_f64().unwrap_or(f64::INFINITY);
        let (p, q) = (&self.num, &self.den);
        // r = m·p mod q, advanced incrementally
        match self.small {
            Some((pi, qi)) => {
                let qf = qi as f64;
                let mut r: i128 = 0;
                for k in 1..=m {
                    r += pi;
                    if r >= qi {
                        r -= qi;
                    }
                    let d1 = r.min(qi - r);
                    let d2 = (qi - r - pi).abs();
                    if !gt_scaled(d1 as f64 / qf, k as f64 * eps, || {
                        BigRational::new(d1.into(), qi.into()) > &self.uncertainty * BigRational::from_integer(k.into())
                    }) {
                        return Ok(fail(k, ViolationKind::NearInteger));
                    }
                    if !gt_scaled(d2 as f64 / qf, (k + 1) as f64 * eps, || {
                        BigRational::new(d2.into(), qi.into())
                            > &self.uncertainty * BigRational::from_integer((k + 1).into())
                    }) {
                        return Ok(fail(k, ViolationKind::NearRho));
                    }
                }
            }
            None => {
                let mut r = BigInt::zero();
                for k in 1..=m {
                    r += p;
                    if &r >= q {
                        r -= q;
                    }
                    let qr = q - &r;
                    let d1 = if r < qr { r.clone() } else { qr.clone() };
                    let d2 = (qr - p).abs();
                    if BigRational::new(d1, q.clone()) <= &self.uncertainty * BigRational::from_integer(k.into()) {
                        return Ok(fail(k, ViolationKind::NearInteger));
                    }
                    if BigRational::new(d2, q.clone()) <= &self.uncertainty * BigRational::from_integer((k + 1).into()) {
                        return Ok(fail(k, ViolationKind::NearRho));
                    }
                }
            }
        }
        Ok(Certification { window: m, passed: true, first_violation: None, kind: None })
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn value(&self) -> BigRational {
        BigRational::new(self.num.clone(), self.den.clone())
    }

    pub fn uncertainty(&self) -> &BigRational {
        &self.uncertainty
    }

    pub fn max_safe_index(&self) -> u64 {
        self.max_safe_index
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// Errors unless the surrogate passed certification on its window.
    pub fn require_certified(&self) -> Result<()> {
        if self.certified {
            Ok(())
        } else {
            let c = self.certify(self.max_safe_index)?;
            Err(Error::Uncertified(c.first_violation.unwrap_or(0)))
        }
    }

    /// `(p, q)` when both fit in `i128`.
    pub fn small(&self) -> Option<(i128, i128)> {
        self.small
    }

    pub fn to_f64(&self) -> f64 {
        match self.small {
            Some((p, q)) => p as f64 / q as f64,
            None => self.value().to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn regime(&self) -> Regime {
        if BigInt::from(2) * &self.num > self.den {
            Regime::High
        } else {
            Regime::Low
        }
    }

    /// ⌊1/ρ⌋
    pub fn floor_inv(&self) -> u64 {
        (&self.den / &self.num).to_u64().expect("floor(1/rho) fits u64")
    }

    /// ⌊1/(1−ρ)⌋
    pub fn floor_inv_complement(&self) -> u64 {
        (&self.den / (&self.den - &self.num)).to_u64().expect("floor(1/(1-rho)) fits u64")
    }

    /// Exact comparison of ρ with `a/b`, `b > 0`.
    pub fn cmp_ratio(&self, a: i128, b: i128) -> Ordering {
        if let Some((p, q)) = self.small {
            if let (Some(l), Some(r)) = (p.checked_mul(b), a.checked_mul(q)) {
                return l.cmp(&r);
            }
        }
        (&self.num * BigInt::from(b)).cmp(&(BigInt::from(a) * &self.den))
    }

    /// The surrogate for 1 − ρ with the same uncertainty and window.
    pub fn mirror(&self) -> Result<Self> {
        let v = BigRational::one() - self.value();
        Self::assemble(v, self.uncertainty.clone(), self.max_safe_index)
    }

    pub fn check_index(&self, m: u64) -> Result<()> {
        if m > self.max_safe_index {
            Err(Error::Window { index: m, max: self.max_safe_index })
        } else {
            Ok(())
        }
    }

    /// ⌈mρ⌉
    pub fn ceil_mul(&self, m: u64) -> Result<u64> {
        self.check_index(m)?;
        Ok(self.ceil_mul_unchecked(m))
    }

    /// ⌈mρ⌉ without the window check.
    pub fn ceil_mul_unchecked(&self, m: u64) -> u64 {
        if let Some((p, q)) = self.small {
            if let Some(mp) = (m as i128).checked_mul(p) {
                return ((mp + q - 1) / q) as u64;
            }
        }
        let mp = BigInt::from(m) * &self.num;
        (mp + &self.den - 1u32).div_floor(&self.den).to_u64().expect("ceil fits u64")
    }

    /// `α_m·q = ⌈mρ⌉·q − m·p`, as an integer.
    pub fn alpha_scaled(&self, m: u64) -> BigInt {
        if let Some(v) = self.alpha_scaled_small(m) {
            return v.into();
        }
        BigInt::from(self.ceil_mul_unchecked(m)) * &self.den - BigInt::from(m) * &self.num
    }

    /// `α_m·q` in `i128` when it fits.
    pub fn alpha_scaled_small(&self, m: u64) -> Option<i128> {
        let (p, q) = self.small?;
        let mp = (m as i128).checked_mul(p)?;
        let c = (mp + q - 1) / q;
        Some(c.checked_mul(q)? - mp)
    }

    /// α_m = ⌈mρ⌉ − mρ
    pub fn alpha(&self, m: u64) -> Result<BigRational> {
        self.check_index(m)?;
        Ok(BigRational::new(self.alpha_scaled(m), self.den.clone()))
    }

    /// Whether α_m < ρ.
    pub fn member(&self, m: u64) -> Result<bool> {
        self.check_index(m)?;
        Ok(self.member_unchecked(m))
    }

    /// Whether α_m < ρ, without the window check.
    pub fn member_unchecked(&self, m: u64) -> bool {
        if m == 0 {
            return false;
        }
        if let (Some(a), Some((p, _))) = (self.alpha_scaled_small(m), self.small) {
            return a < p;
        }
        self.alpha_scaled(m) < self.num
    }
}

impl fmt::Display for RhoParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn validate(num: &BigInt, den: &BigInt) -> Result<BigRational> {
    if den.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    let v = BigRational::new(num.clone(), den.clone());
    if !v.is_positive() || v >= BigRational::one() {
        return Err(Error::OutOfRange(v.to_string()));
    }
    if let Some(b) = excluded_boundary(v.numer(), v.denom()) {
        return Err(Error::Boundary { value: v.to_string(), boundary: b });
    }
    Ok(v)
}

/// Names the excluded boundary equal to `p/q` (reduced), if any.
fn excluded_boundary(p: &BigInt, q: &BigInt) -> Option<String> {
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    let name = if p.is_one() {
        format!("1/{q}")
    } else if (q - p).is_one() {
        format!("1-1/{q}")
    } else if p == &three && (q % &three) == two {
        format!("3/(3*{}+2)", q / &three)
    } else if p == &two && q.is_odd() {
        format!("2/(2*{}+1)", q / &two)
    } else {
        return None;
    };
    Some(name)
}

fn default_window(den: &BigInt) -> u64 {
    match (den - 1u32).to_u64() {
        Some(d) => d.min(DEFAULT_WINDOW),
        None => DEFAULT_WINDOW,
    }
}

/// `a > b` with a floating filter; `exact` decides close calls.
fn gt_scaled(a: f64, b: f64, exact: impl FnOnce() -> bool) -> bool {
    let tol = 1e-9 * a.abs().max(b.abs());
    if a > b + tol {
        true
    } else if a < b - tol {
        false
    } else {
        exact()
    }
}

/// Everything the classification depends on besides the index predicates.
#[derive(Debug, PartialEq, Eq)]
struct Signature {
    t: BigInt,
    f: Option<BigInt>,
    sides: [Ordering; 5],
}

fn signature(v: &BigRational) -> Signature {
    let one = BigRational::one();
    let t = (v.recip()).floor().to_integer();
    let f = if v < &one { Some((one.clone() - v).recip().floor().to_integer()) } else { None };
    let r = |a: i64, b: BigInt| BigRational::new(a.into(), b);
    let tt = t.clone();
    Signature {
        sides: [
            v.cmp(&r(1, 2.into())),
            v.cmp(&r(3, 5.into())),
            v.cmp(&r(2, 3.into())),
            v.cmp(&r(3, BigInt::from(3) * &tt + 2)),
            v.cmp(&r(2, BigInt::from(2) * &tt + 1)),
        ],
        t,
        f,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn seven_tenths() {
        let r = RhoParam::from_ratio(7, 10).unwrap();
        assert_eq!(r.alpha(3).unwrap(), q(9, 10));
        assert_eq!(r.alpha(1).unwrap(), q(3, 10));
        let s = r.mirror().unwrap();
        assert_eq!(s.value(), q(3, 10));
        assert_eq!(s.alpha(3).unwrap(), q(1, 10));
        assert_eq!(r.max_safe_index(), 9);
        assert!(r.alpha(10).is_err());
        assert_eq!(r.ceil_mul(0).unwrap(), 0);
    }

    #[test]
    fn parse_examples() {
        let r = RhoParam::parse("0.93+pi*1e-5", 12).unwrap();
        assert_eq!(r.value(), q(930031415926, 1_000_000_000_000));
        assert_eq!(r.uncertainty(), &q(1, 1_000_000_000_000));
        assert_eq!(r.regime(), Regime::High);
        assert_eq!(r.ceil_mul(14).unwrap(), 14);
        let r = RhoParam::parse("0.31+pi*1e-5", 12).unwrap();
        assert_eq!(r.value(), q(310031415926, 1_000_000_000_000));
        assert_eq!(r.regime(), Regime::Low);
        assert_eq!(r.ceil_mul(10).unwrap(), 4);
    }

    #[test]
    fn boundaries_rejected() {
        for s in ["1/2", "0.5", "2/3", "3/5", "0.75", "1/7", "3/8", "2/5", "6/7", "3/11", "2/9"] {
            assert!(matches!(RhoParam::parse(s, 15), Err(Error::Boundary { .. })), "{s}");
        }
        assert!(matches!(RhoParam::parse("1.2", 15), Err(Error::OutOfRange(_))));
        assert!(matches!(RhoParam::parse("0", 15), Err(Error::OutOfRange(_))));
        assert!(RhoParam::parse("0.5+", 15).is_err());
        assert!(RhoParam::parse("0.3", 11).is_err());
    }

    #[test]
    fn window_bounded_by_denominator() {
        assert!(matches!(
            RhoParam::parse_with_window("0.7", 15, 10),
            Err(Error::WindowTooLarge { .. })
        ));
        let r = RhoParam::parse_with_window("0.93+pi*1e-5", 15, 100_000).unwrap();
        assert!(r.is_certified());
    }

    #[test]
    fn certification_failure() {
        let r = RhoParam::with_window(93.into(), 100.into(), q(1, 100), 99).unwrap();
        let c = r.certify(99).unwrap();
        assert!(!c.passed);
        assert!(c.first_violation.unwrap() <= 100);
        assert!(!r.is_certified());
        assert!(matches!(r.require_certified(), Err(Error::Uncertified(_))));
    }

    #[test]
    fn zero_uncertainty_passes() {
        let r = RhoParam::from_ratio(7, 10).unwrap();
        assert!(r.certify(9).unwrap().passed);
    }

    #[test]
    fn membership_examples() {
        let r = RhoParam::parse("0.93+pi*1e-5", 15).unwrap();
        assert!(!r.member(14).unwrap());
        assert!(r.member(13).unwrap());
        assert!(r.member(1).unwrap());
        let s = RhoParam::parse("0.31+pi*1e-5", 15).unwrap();
        assert!(!s.member(1).unwrap());
    }

    #[test]
    fn floors() {
        let r = RhoParam::parse("0.93+pi*1e-5", 15).unwrap();
        assert_eq!(r.floor_inv_complement(), 14);
        assert_eq!(r.floor_inv(), 1);
        let s = RhoParam::parse("0.31+pi*1e-5", 15).unwrap();
        assert_eq!(s.floor_inv(), 3);
    }
}
