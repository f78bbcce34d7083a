//! Difference points against the four-quadrant hull.

use serde::Serialize;

use super::family::{admissible_indices, family_hull, gen_family, Quadrants};
use super::point::HPoint;
use crate::error::{Error, Result};
use crate::rho::RhoParam;

/// Largest index accepted for the quartic enumeration.
pub const MAX_DIFFERENCE_INDEX: u64 = 40;

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub quadrant_bound: u64,
    pub difference_bound: u64,
    pub difference_points: u64,
    /// Difference points outside the quadrant hull, as `(m, m′, n, n′)`.
    pub outside: Vec<(u64, u64, u64, u64)>,
    pub quadrant_points: u64,
    /// Quadrant points not reproduced as difference points.
    pub unmatched: u64,
}

impl ClaimReport {
    pub fn holds(&self) -> bool {
        self.outside.is_empty() && self.unmatched == 0
    }
}

/// Checks that every `((⌈mρ⌉−⌈m′ρ⌉), (⌈nρ⌉−⌈n′ρ⌉))/(m+m′+n+n′+1)` with
/// indices in `(I ∪ {0}) ∩ [0, m_difference]` lies in the four-quadrant hull
/// at `m_quadrant`, and that each four-quadrant point is such a difference
/// point with two primed indices zero.
pub fn claim_equivalence_check(rho: &RhoParam, m_quadrant: u64, m_difference: u64) -> Result<ClaimReport> {
    if m_difference > MAX_DIFFERENCE_INDEX {
        return Err(Error::Invalid(format!("difference bound {m_difference} exceeds {MAX_DIFFERENCE_INDEX}")));
    }
    if m_quadrant < 4 * m_difference + 1 {
        return Err(Error::Invalid(format!(
            "quadrant bound {m_quadrant} must be at least 4*{m_difference}+1"
        )));
    }
    let hull = family_hull(rho, m_quadrant, Quadrants::Four)?;
    let idx = admissible_indices(rho, m_difference)?;
    let c = |k: u64| rho.ceil_mul_unchecked(k) as i128;
    let mut outside = Vec::new();
    let mut count = 0;
    for &m in &idx {
        for &mp in &idx {
            for &n in &idx {
                for &np in &idx {
                    let s = (m + mp + n + np + 1) as i128;
                    let pt = HPoint::new(c(m) - c(mp), c(n) - c(np), s);
                    count += 1;
                    if !hull.contains(&pt) {
                        outside.push((m, mp, n, np));
                    }
                }
            }
        }
    }
    let fam = gen_family(rho, m_difference, Quadrants::Four)?;
    let mut unmatched = 0;
    for lp in &fam.points {
        let (m, mp) = if lp.sign_x > 0 { (lp.m, 0) } else { (0, lp.m) };
        let (n, np) = if lp.sign_y > 0 { (lp.n, 0) } else { (0, lp.n) };
        let d = HPoint::new(c(m) - c(mp), c(n) - c(np), (m + mp + n + np + 1) as i128);
        if !d.same(&lp.point) {
            unmatched += 1;
        }
    }
    Ok(ClaimReport {
        quadrant_bound: m_quadrant,
        difference_bound: m_difference,
        difference_points: count,
        outside,
        quadrant_points: fam.points.len() as u64,
        unmatched,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_claim() {
        let r = RhoParam::parse("0.6-pi*1e-5", 15).unwrap();
        let rep = claim_equivalence_check(&r, 41, 10).unwrap();
        assert!(rep.holds());
        assert!(claim_equivalence_check(&r, 40, 10).is_err());
        assert!(claim_equivalence_check(&r, 400, 41).is_err());
    }
}
