//! The best diagonal point `D = (d, d)` and whether it is extreme.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::LatticePoint;
use crate::index_sets::{m_seq, n_high, n_prime, scan_oracle};
use crate::rho::{Regime, RhoParam};

/// Whether `D` is an extreme point of the hull.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Classification {
    Extreme,
    NotExtreme,
}

/// The classification interval containing ρ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IntervalTag {
    /// (1/2, 3/5)
    HighLow,
    /// (3/5, 2/3)
    HighMid,
    /// (2/3, 1)
    HighTop,
    /// (1/(t+1), 3/(3t+2))
    F(u64),
    /// (3/(3t+2), 2/(2t+1))
    G(u64),
    /// (2/(2t+1), 1/t)
    NotE(u64),
}

impl fmt::Display for IntervalTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntervalTag::HighLow => f.write_str("(1/2,3/5)"),
            IntervalTag::HighMid => f.write_str("(3/5,2/3)"),
            IntervalTag::HighTop => f.write_str("(2/3,1)"),
            IntervalTag::F(t) => write!(f, "F_{t}"),
            IntervalTag::G(t) => write!(f, "G_{t}"),
            IntervalTag::NotE(t) => write!(f, "notE_{t}"),
        }
    }
}

impl Serialize for IntervalTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl IntervalTag {
    /// Whether the closed-form classification predicts an extreme `D`.
    pub fn predicts_extreme(&self) -> bool {
        !matches!(self, IntervalTag::HighMid | IntervalTag::G(_))
    }
}

/// Result of checking `x + y ≤ 2d` over a truncated family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Domination {
    pub bound: u64,
    /// Indices `n` with `⌈nρ⌉ − 2dn = d`; pairs from this set are exactly
    /// the family points on `x + y = 2d`.
    pub equality_indices: Vec<u64>,
    /// Every family point satisfies `x + y ≤ 2d`.
    pub dominated: bool,
    /// `dominated` and the equality set is the predicted one.
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct DiagonalReport {
    pub d: BigRational,
    pub realizing_index: u64,
    pub regime: Regime,
    /// ⌊1/ρ⌋
    pub t: u64,
    /// `M_1` in the low regime.
    pub m1: Option<u64>,
    pub classification: Option<Classification>,
    /// Smaller-x endpoint first.
    pub edge_endpoints: Option<(LatticePoint, LatticePoint)>,
    /// `k_ρ` (high regime, ρ < 2/3) or `j_{ρ,t}` (low regime, ρ ∈ E).
    pub threshold: Option<u64>,
    pub interval_tag: IntervalTag,
    pub domination: Option<Domination>,
}

/// Exact interval membership.
pub fn classify_intervals(rho: &RhoParam) -> IntervalTag {
    match rho.regime() {
        Regime::High => {
            if rho.cmp_ratio(3, 5) == Ordering::Less {
                IntervalTag::HighLow
            } else if rho.cmp_ratio(2, 3) == Ordering::Less {
                IntervalTag::HighMid
            } else {
                IntervalTag::HighTop
            }
        }
        Regime::Low => {
            let t = rho.floor_inv();
            let ti = t as i128;
            if rho.cmp_ratio(3, 3 * ti + 2) == Ordering::Less {
                IntervalTag::F(t)
            } else if rho.cmp_ratio(2, 2 * ti + 1) == Ordering::Less {
                IntervalTag::G(t)
            } else {
                IntervalTag::NotE(t)
            }
        }
    }
}

/// `d` and the index realizing it, from the closed forms.
pub fn best_diagonal(rho: &RhoParam) -> Result<DiagonalReport> {
    rho.require_certified()?;
    let t = rho.floor_inv();
    let (d, realizing, m1) = match rho.regime() {
        Regime::High => {
            let f = rho.floor_inv_complement();
            (ratio(f - 1, 2 * f - 1), f - 1, None)
        }
        Regime::Low => {
            let m1 = m_seq(rho, 1);
            (ratio(m1, 2 * m1 * t + 1), m1 * t, Some(m1))
        }
    };
    rho.check_index(realizing)?;
    let tag = classify_intervals(rho);
    let threshold = match tag {
        IntervalTag::HighLow | IntervalTag::HighMid => Some(k_rho(rho)?),
        IntervalTag::F(_) | IntervalTag::G(_) => Some(j_rho_t(rho)?),
        _ => None,
    };
    Ok(DiagonalReport {
        d,
        realizing_index: realizing,
        regime: rho.regime(),
        t,
        m1,
        classification: None,
        edge_endpoints: None,
        threshold,
        interval_tag: tag,
        domination: None,
    })
}

fn ratio(a: u64, b: u64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn require_high_below_two_thirds(rho: &RhoParam) -> Result<()> {
    if rho.regime() != Regime::High || rho.cmp_ratio(2, 3) != Ordering::Less {
        return Err(Error::Regime(format!("rho = {rho} is not in (1/2, 2/3)")));
    }
    Ok(())
}

/// `k_ρ = ⌊(2ρ−1)/(2−3ρ)⌋` for ρ ∈ (1/2, 2/3).
pub fn k_rho(rho: &RhoParam) -> Result<u64> {
    require_high_below_two_thirds(rho)?;
    let (p, q) = (rho.numer(), rho.denom());
    let two = BigInt::from(2);
    let v = (&two * p - q) / (&two * q - BigInt::from(3) * p);
    Ok(v.to_u64().expect("k_rho fits u64"))
}

/// `u_k = 3k + 1 − N_k` for ρ ∈ (1/2, 2/3).
pub fn u_seq(rho: &RhoParam, k: u64) -> Result<i64> {
    require_high_below_two_thirds(rho)?;
    let nk = n_high(rho, k);
    rho.check_index(nk)?;
    Ok((3 * k + 1) as i64 - nk as i64)
}

fn require_e(rho: &RhoParam) -> Result<u64> {
    if rho.regime() != Regime::Low {
        return Err(Error::Regime(format!("rho = {rho} is not in the low regime")));
    }
    let m1 = m_seq(rho, 1);
    if m1 != 1 {
        return Err(Error::Regime(format!("rho = {rho} is not in E (M_1 = {m1})")));
    }
    Ok(m1)
}

/// `v_j = j·M_1 + j − 1 − M_j` for ρ ∈ E.
pub fn v_seq(rho: &RhoParam, j: u64) -> Result<i64> {
    let m1 = require_e(rho)?;
    if j == 0 {
        return Err(Error::Invalid("j must be positive".into()));
    }
    Ok((j * m1 + j - 1) as i64 - m_seq(rho, j) as i64)
}

/// `j_{ρ,t} = ⌊(1−tρ)/(2−(1+2t)ρ)⌋` for ρ ∈ E.
pub fn j_rho_t(rho: &RhoParam) -> Result<u64> {
    require_e(rho)?;
    let t = BigInt::from(rho.floor_inv());
    let (p, q) = (rho.numer(), rho.denom());
    let v = (q - &t * p) / (BigInt::from(2) * q - (BigInt::from(1) + BigInt::from(2) * &t) * p);
    Ok(v.to_u64().expect("j fits u64"))
}

/// Default truncation for the domination check.
pub fn default_domination_bound(realizing_index: u64) -> u64 {
    5000.max(3 * realizing_index)
}

/// Full report with the classification and a domination check at the
/// default truncation (capped by the window).
pub fn extremality(rho: &RhoParam) -> Result<DiagonalReport> {
    let base = best_diagonal(rho)?;
    let bound = default_domination_bound(base.realizing_index).min(rho.max_safe_index());
    extremality_with_bound(rho, bound)
}

/// Full report with the domination check at `bound`.
pub fn extremality_with_bound(rho: &RhoParam, bound: u64) -> Result<DiagonalReport> {
    let mut rep = best_diagonal(rho)?;
    let extreme = rep.interval_tag.predicts_extreme();
    let expected: Vec<u64> = if extreme {
        vec![rep.realizing_index]
    } else {
        let k = rep.threshold.expect("threshold is set off the extreme intervals");
        match rho.regime() {
            Regime::High => (0..=k).map(|i| n_high(rho, i)).collect(),
            Regime::Low => (1..=k).map(|j| n_prime(rho, m_seq(rho, j))).collect(),
        }
    };
    if !extreme {
        let a = expected[0];
        let b = *expected.last().expect("nonempty");
        rho.check_index(b)?;
        let p = LatticePoint::new(rho, a, b, 1, 1);
        let q = p.swapped();
        let (p, q) = if crate::geometry::point::cmp_x(&p.point, &q.point) == Ordering::Greater { (q, p) } else { (p, q) };
        let two_d = &rep.d * BigRational::from_integer(2.into());
        if p.x() + p.y() != two_d || q.x() + q.y() != two_d {
            return Err(Error::Inconsistent("edge endpoint off the line x+y=2d".into()));
        }
        let half = BigRational::new(1.into(), 2.into());
        if (p.x() + q.x()) * &half != rep.d || (p.y() + q.y()) * &half != rep.d {
            return Err(Error::Inconsistent("edge midpoint differs from D".into()));
        }
        if rho.regime() == Regime::Low {
            let j = rep.threshold.expect("threshold");
            let m1 = rep.m1.expect("m1");
            let mj = m_seq(rho, j);
            if p.x() != ratio(m1, (m1 + mj) * rep.t + j) {
                return Err(Error::Inconsistent("endpoint x differs from M_1/((M_1+M_j)t+j)".into()));
            }
        }
        rep.edge_endpoints = Some((p, q));
    }
    rep.classification = Some(if extreme { Classification::Extreme } else { Classification::NotExtreme });
    rep.domination = Some(domination(rho, &rep.d, bound, &expected)?);
    Ok(rep)
}

fn domination(rho: &RhoParam, d: &BigRational, bound: u64, expected: &[u64]) -> Result<Domination> {
    let a = d.numer();
    let b = d.denom();
    let two_a = BigInt::from(2) * a;
    let mut eq = Vec::new();
    let mut dominated = true;
    // g(n) = b·⌈nρ⌉ − 2a·n compared with a; g(0) = 0 < a
    for n in scan_oracle(rho, bound)? {
        let g = b * BigInt::from(rho.ceil_mul_unchecked(n)) - &two_a * BigInt::from(n);
        match g.cmp(a) {
            Ordering::Greater => dominated = false,
            Ordering::Equal => eq.push(n),
            Ordering::Less => {}
        }
    }
    let want: Vec<u64> = expected.iter().copied().filter(|&n| n <= bound).collect();
    let holds = dominated && eq == want;
    Ok(Domination { bound, equality_indices: eq, dominated, holds })
}

/// Brute-force argmax of `⌈nρ⌉/(2n+1)` over `n ∈ I ∩ [1, bound]`; the
/// smallest maximizing index is returned.
pub fn brute_best_diagonal(rho: &RhoParam, bound: u64) -> Result<(BigRational, u64)> {
    let mut best: Option<(u64, u64)> = None;
    for n in scan_oracle(rho, bound)? {
        let c = rho.ceil_mul_unchecked(n);
        let better = match best {
            None => true,
            Some((bc, bn)) => (c as u128) * (2 * bn as u128 + 1) > (bc as u128) * (2 * n as u128 + 1),
        };
        if better {
            best = Some((c, n));
        }
    }
    let (c, n) = best.ok_or_else(|| Error::Degenerate("no index in I below the bound".into()))?;
    Ok((ratio(c, 2 * n + 1), n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rho(s: &str) -> RhoParam {
        RhoParam::parse(s, 15).unwrap()
    }

    #[test]
    fn diagonal_values() {
        let r = best_diagonal(&rho("0.93+pi*1e-5")).unwrap();
        assert_eq!(r.d, ratio(13, 27));
        assert_eq!(r.realizing_index, 13);
        let r = best_diagonal(&rho("0.31+pi*1e-5")).unwrap();
        assert_eq!(r.d, ratio(4, 25));
        assert_eq!(r.realizing_index, 12);
        let r = best_diagonal(&rho("0.5+1e-6")).unwrap();
        assert_eq!(r.d, ratio(1, 3));
    }

    #[test]
    fn thresholds() {
        let r = rho("0.645+pi*1e-5");
        assert_eq!(k_rho(&r).unwrap(), 4);
        assert_eq!(u_seq(&r, 0).unwrap(), 0);
        assert_eq!(u_seq(&r, 4).unwrap(), 0);
        assert!(u_seq(&r, 5).unwrap() >= 1);
        assert_eq!(k_rho(&rho("0.61")).unwrap(), 1);
        assert_eq!(k_rho(&rho("0.55+pi*1e-7")).unwrap(), 0);
        let r = rho("0.395+pi*1e-5");
        assert_eq!(j_rho_t(&r).unwrap(), 8);
        assert_eq!(v_seq(&r, 1).unwrap(), 0);
        assert!(matches!(k_rho(&rho("0.93")), Err(Error::Regime(_))));
        assert!(matches!(j_rho_t(&rho("0.31+pi*1e-5")), Err(Error::Regime(_))));
    }

    #[test]
    fn tags() {
        assert_eq!(classify_intervals(&rho("0.645")), IntervalTag::HighMid);
        assert_eq!(classify_intervals(&rho("0.395+pi*1e-5")), IntervalTag::G(2));
        assert_eq!(classify_intervals(&rho("0.31+pi*1e-5")), IntervalTag::NotE(3));
        assert_eq!(classify_intervals(&rho("0.93")), IntervalTag::HighTop);
    }

    #[test]
    fn extremality_examples() {
        let r = extremality(&rho("0.93+pi*1e-5")).unwrap();
        assert_eq!(r.classification, Some(Classification::Extreme));
        assert!(r.domination.unwrap().holds);
        let r = extremality(&rho("0.645+pi*1e-5")).unwrap();
        assert_eq!(r.classification, Some(Classification::NotExtreme));
        let (a, b) = r.edge_endpoints.unwrap();
        assert_eq!((a.m, a.n), (1, n_high(&rho("0.645+pi*1e-5"), 4)));
        assert_eq!((b.m, b.n), (a.n, a.m));
        assert!(r.domination.unwrap().holds);
        let r = extremality(&rho("0.395+pi*1e-5")).unwrap();
        assert_eq!(r.classification, Some(Classification::NotExtreme));
        assert!(r.domination.unwrap().holds);
    }
}
