//! Slopes from `(0, ρ)` to family points.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::index_sets::scan_oracle;
use crate::rho::RhoParam;

/// `γ_{m,n} = −1 + (α_m + α_n − ρ)/⌈mρ⌉`, the slope from `(0, ρ)` to `A_{m,n}`.
pub fn slope_gamma(rho: &RhoParam, m: u64, n: u64) -> Result<BigRational> {
    for k in [m, n] {
        if !rho.member(k)? {
            return Err(Error::Invalid(format!("{k} is not in I")));
        }
    }
    let q = rho.denom();
    let num = rho.alpha_scaled(m) + rho.alpha_scaled(n) - rho.numer();
    Ok(BigRational::new(num, q * BigInt::from(rho.ceil_mul_unchecked(m))) - BigRational::from_integer(1.into()))
}

/// `γ = −ρ⌊1/ρ⌋`
pub fn gamma_sup(rho: &RhoParam) -> BigRational {
    -rho.value() * BigRational::from_integer(rho.floor_inv().into())
}

/// Maximum of `γ_{m,n}` over `m, n ∈ I ∩ [1, bound]`.
#[derive(Clone, Debug, Serialize)]
pub struct SlopeReport {
    pub bound: u64,
    #[serde(skip)]
    pub sup: BigRational,
    #[serde(skip)]
    pub max: BigRational,
    pub argmax: (u64, u64),
    /// Whether every slope is strictly below `sup`.
    pub strictly_below: bool,
}

/// For fixed `m` the slope grows with `α_n`, so only the largest α over
/// `I ∩ [1, bound]` has to be paired with each `m`.
pub fn slope_check(rho: &RhoParam, bound: u64) -> Result<SlopeReport> {
    let idx = scan_oracle(rho, bound)?;
    if idx.is_empty() {
        return Err(Error::Degenerate("no index in I below the bound".into()));
    }
    let (p, q) = (rho.numer(), rho.denom());
    let (n_best, a_best) = idx
        .iter()
        .map(|&n| (n, rho.alpha_scaled(n)))
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .expect("nonempty");
    let limit = q - BigInt::from(rho.floor_inv()) * p;
    let mut strictly_below = true;
    let mut best: Option<(BigInt, BigInt, u64)> = None;
    for &m in &idx {
        let num = rho.alpha_scaled(m) + &a_best - p;
        let c = BigInt::from(rho.ceil_mul_unchecked(m));
        // 1 + γ = num/(q·c) against 1 − ρt = limit/q
        if num >= &c * &limit {
            strictly_below = false;
        }
        let better = match &best {
            None => true,
            Some((bn, bc, _)) => &num * bc > bn * &c,
        };
        if better {
            best = Some((num, c, m));
        }
    }
    let (num, c, m) = best.expect("nonempty");
    let max = BigRational::new(num, q * c) - BigRational::from_integer(1.into());
    Ok(SlopeReport { bound, sup: gamma_sup(rho), max, argmax: (m, n_best), strictly_below })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn sup_values() {
        let r = RhoParam::parse("0.31+pi*1e-5", 15).unwrap();
        assert_eq!(gamma_sup(&r), -r.value() * BigRational::from_integer(3.into()));
        let r = RhoParam::parse("0.93+pi*1e-5", 15).unwrap();
        assert_eq!(gamma_sup(&r), -r.value());
    }

    #[test]
    fn matches_pairwise_brute_force() {
        for s in ["0.93+pi*1e-5", "0.31+pi*1e-5", "0.645+pi*1e-5"] {
            let r = RhoParam::parse(s, 15).unwrap();
            let rep = slope_check(&r, 300).unwrap();
            let idx = scan_oracle(&r, 300).unwrap();
            let mut brute = None::<BigRational>;
            for &m in &idx {
                for &n in &idx {
                    let g = slope_gamma(&r, m, n).unwrap();
                    assert!(g < rep.sup);
                    if brute.as_ref().is_none_or(|b| &g > b) {
                        brute = Some(g);
                    }
                }
            }
            assert_eq!(brute.unwrap(), rep.max);
            assert!(rep.strictly_below);
            assert!((rep.sup.clone() - rep.max).to_f64().unwrap() > 0.0);
        }
    }
}
