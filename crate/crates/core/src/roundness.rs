//! Roundness of `Λ′`: bounds, ISO roundness, hull estimate and ρ scans.
//!
//! Every roundness value is a rational multiple of `1/π`; only the rational
//! factor is stored, so comparisons between them are exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::diagonal::{best_diagonal, IntervalTag};
use crate::error::{Error, Result};
use crate::expr::{pi_bounds, sqrt_bounds};
use crate::geometry::{family_hull, gamma_sup, Quadrants};
use crate::rho::{Regime, RhoParam};
use crate::ser;

fn r(n: u64, d: u64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Lower and upper roundness factors.
///
/// `lower = 4d/ρ` and `upper = 4/(1+γ)·(−1 + 4d/ρ − 2(1−γ)(d/ρ)²)` with
/// `γ = −ρ⌊1/ρ⌋`, both to be divided by π.
pub fn bounds(rho: &RhoParam) -> Result<(BigRational, BigRational)> {
    let d = best_diagonal(rho)?.d;
    Ok(bounds_from(rho, &d))
}

fn bounds_from(rho: &RhoParam, d: &BigRational) -> (BigRational, BigRational) {
    let four = BigRational::from_integer(4.into());
    let two = BigRational::from_integer(2.into());
    let one = BigRational::one();
    let x = d / rho.value();
    let g = gamma_sup(rho);
    let lower = &four * &x;
    let upper = &four / (&one + &g) * (-&one + &four * &x - &two * (&one - &g) * &x * &x);
    (lower, upper)
}

/// Pentagon bounding the one-quadrant hull, counterclockwise from the origin:
/// the two slope-γ lines from the axis anchors meet `x+y = 2d` at `P` and its swap.
pub fn bounding_pentagon(rho: &RhoParam) -> Result<Vec<(BigRational, BigRational)>> {
    let d = best_diagonal(rho)?.d;
    let v = rho.value();
    let g = gamma_sup(rho);
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    let px = (&two * &d - &v) / (&one + &g);
    let py = (&two * &d * &g + &v) / (&one + &g);
    let z = BigRational::zero();
    Ok(vec![(z.clone(), z.clone()), (v.clone(), z.clone()), (py.clone(), px.clone()), (px, py), (z, v)])
}

/// Shoelace area of a counterclockwise polygon with rational vertices.
pub fn rational_area(v: &[(BigRational, BigRational)]) -> BigRational {
    let n = v.len();
    let mut s = BigRational::zero();
    for i in 0..n {
        let (a, b) = (&v[i], &v[(i + 1) % n]);
        s += &a.0 * &b.1 - &b.0 * &a.1;
    }
    s / BigRational::from_integer(2.into())
}

/// `4·area/ρ²`, the roundness factor of a one-quadrant hull of that area.
pub fn estimate_from_area(rho: &RhoParam, area: &BigRational) -> BigRational {
    let v = rho.value();
    BigRational::from_integer(4.into()) * area / (&v * &v)
}

/// Roundness factor of the hull truncated at `index_bound`.
pub fn numeric_roundness(rho: &RhoParam, index_bound: u64) -> Result<BigRational> {
    let h = family_hull(rho, index_bound, Quadrants::One)?;
    Ok(estimate_from_area(rho, h.area()))
}

/// Interval of ρ around the parameter on which `d` is constant, so that
/// the ISO roundness `d√2/ρ` decreases there.
pub fn iso_interval(rho: &RhoParam) -> (BigRational, BigRational) {
    match rho.regime() {
        Regime::High => {
            let f = rho.floor_inv_complement();
            (r(f - 1, f), r(f, f + 1))
        }
        Regime::Low => {
            let t = rho.floor_inv();
            let l = crate::index_sets::m_seq(rho, 1);
            (r(l, l * t + 1), r(l + 1, (l + 1) * t + 1))
        }
    }
}

/// `d/ρ`; the ISO roundness is this factor times `√2`.
pub fn iso_factor(rho: &RhoParam) -> Result<BigRational> {
    Ok(best_diagonal(rho)?.d / rho.value())
}

/// Decimal rendering of `factor·√2`, truncated to `digits` places.
pub fn iso_decimal(factor: &BigRational, digits: u32) -> String {
    let (lo, _) = sqrt_bounds(&BigInt::from(2), digits + 12);
    ser::decimal(&(factor * lo), digits)
}

/// Decimal rendering of `factor/π`, truncated to `digits` places.
pub fn over_pi_decimal(factor: &BigRational, digits: u32) -> String {
    let (_, hi) = pi_bounds(digits + 12);
    ser::decimal(&(factor / hi), digits)
}

/// Everything known about the roundness at one parameter.
#[derive(Clone, Debug, Serialize)]
pub struct RoundnessReport {
    #[serde(serialize_with = "ser::rational")]
    pub d: BigRational,
    #[serde(serialize_with = "ser::rational")]
    pub gamma: BigRational,
    /// Factor of `1/π`.
    #[serde(serialize_with = "ser::rational")]
    pub lower: BigRational,
    #[serde(serialize_with = "ser::rational")]
    pub upper: BigRational,
    /// Factor of `√2`.
    #[serde(serialize_with = "ser::rational")]
    pub iso_factor: BigRational,
    #[serde(serialize_with = "ser::rational_pair")]
    pub iso_interval: (BigRational, BigRational),
    /// Factor of `1/π` from the truncated hull, when requested.
    #[serde(serialize_with = "ser::opt_rational")]
    pub estimate: Option<BigRational>,
    pub index_bound: Option<u64>,
    /// Which closed form produced `d`.
    pub d_formula: Regime,
    pub tag: IntervalTag,
    /// `lower ≤ estimate ≤ upper`, when an estimate is present.
    pub sandwich: Option<bool>,
}

/// Bounds, ISO data and, with `index_bound`, the hull estimate.
pub fn report(rho: &RhoParam, index_bound: Option<u64>) -> Result<RoundnessReport> {
    let diag = best_diagonal(rho)?;
    let (lower, upper) = bounds_from(rho, &diag.d);
    let estimate = match index_bound {
        Some(b) => Some(numeric_roundness(rho, b)?),
        None => None,
    };
    let sandwich = estimate.as_ref().map(|e| &lower <= e && e <= &upper);
    Ok(RoundnessReport {
        iso_factor: &diag.d / rho.value(),
        iso_interval: iso_interval(rho),
        gamma: gamma_sup(rho),
        d: diag.d,
        lower,
        upper,
        estimate,
        index_bound,
        d_formula: diag.regime,
        tag: diag.interval_tag,
        sandwich,
    })
}

/// Options for [`scan`].
#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub from: BigRational,
    pub to: BigRational,
    pub step: BigRational,
    /// Truncation for the hull estimate; none skips the estimate.
    pub index_bound: Option<u64>,
    /// Coefficient of π added to every grid point; zero keeps them rational.
    pub jitter: BigRational,
    pub precision: u32,
    /// A step in `lower` larger than this multiple of the median step is
    /// flagged.
    pub jump_factor: f64,
}

/// One grid point of a scan.
#[derive(Clone, Debug)]
pub struct ScanRow {
    pub rho_expr: String,
    pub outcome: std::result::Result<(RhoParam, RoundnessReport), Error>,
    /// `lower` jumps between the previous successful row and this one.
    pub jump_candidate: bool,
}

/// The grid `from + (i + 1/2)·step` inside `(from, to)`.
pub fn grid(from: &BigRational, to: &BigRational, step: &BigRational) -> Result<Vec<BigRational>> {
    if step <= &BigRational::zero() || from >= to {
        return Err(Error::Invalid("scan needs from < to and a positive step".into()));
    }
    let n = ((to - from) / step).floor().to_integer();
    let n = n.to_u64().filter(|&n| n <= 10_000_000).ok_or_else(|| Error::Invalid("too many grid points".into()))?;
    let half = r(1, 2);
    Ok((0..n.max(1))
        .map(|i| from + (BigRational::from_integer(i.into()) + &half) * step)
        .filter(|a| a < to)
        .collect())
}

/// Renders a rational as a finite decimal when possible, else as `p/q`.
pub fn render_rational(v: &BigRational) -> String {
    let mut d = v.denom().clone();
    let mut places = 0u32;
    let (two, five, ten) = (BigInt::from(2), BigInt::from(5), BigInt::from(10));
    while (&d % &ten).is_zero() {
        d /= &ten;
        places += 1;
    }
    while (&d % &two).is_zero() {
        d /= &two;
        places += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        places += 1;
    }
    if d == BigInt::one() {
        ser::decimal(v, places)
    } else {
        format!("({}/{})", v.numer(), v.denom())
    }
}

fn row_expr(a: &BigRational, jitter: &BigRational) -> String {
    if jitter.is_zero() {
        render_rational(a)
    } else {
        format!("{}+pi*{}", render_rational(a), render_rational(jitter))
    }
}

/// Evaluates the grid; failures are kept per row and the scan continues.
pub fn scan(cfg: &ScanConfig) -> Result<Vec<ScanRow>> {
    let pts = grid(&cfg.from, &cfg.to, &cfg.step)?;
    let exprs: Vec<String> = pts.iter().map(|a| row_expr(a, &cfg.jitter)).collect();
    let eval = |e: &String| -> std::result::Result<(RhoParam, RoundnessReport), Error> {
        let rho = RhoParam::parse(e, cfg.precision)?;
        let window = cfg.index_bound.unwrap_or(0).max(rho.max_safe_index().min(1));
        let rho = if window > rho.max_safe_index() { rho.rewindow(window)? } else { rho };
        let rep = report(&rho, cfg.index_bound)?;
        Ok((rho, rep))
    };
    #[cfg(feature = "parallel")]
    let outcomes: Vec<_> = {
        use rayon::prelude::*;
        exprs.par_iter().map(eval).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let outcomes: Vec<_> = exprs.iter().map(eval).collect();
    let mut rows: Vec<ScanRow> = exprs
        .into_iter()
        .zip(outcomes)
        .map(|(rho_expr, outcome)| ScanRow { rho_expr, outcome, jump_candidate: false })
        .collect();
    flag_jumps(&mut rows, cfg.jump_factor);
    Ok(rows)
}

fn flag_jumps(rows: &mut [ScanRow], factor: f64) {
    let ok: Vec<(usize, f64)> = rows
        .iter()
        .enumerate()
        .filter_map(|(i, r)| r.outcome.as_ref().ok().map(|(_, rep)| (i, rep.lower.to_f64().unwrap_or(f64::NAN))))
        .collect();
    if ok.len() < 3 {
        return;
    }
    let mut steps: Vec<f64> = ok.windows(2).map(|w| (w[1].1 - w[0].1).abs()).collect();
    let diffs = steps.clone();
    steps.sort_by(f64::total_cmp);
    let median = steps[steps.len() / 2];
    let threshold = factor * median.max(f64::MIN_POSITIVE);
    for (k, w) in ok.windows(2).enumerate() {
        if diffs[k] > threshold {
            rows[w[1].0].jump_candidate = true;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::convex_hull;
    use crate::geometry::HPoint;

    fn rho(s: &str) -> RhoParam {
        RhoParam::parse(s, 15).unwrap()
    }

    fn f(v: &BigRational) -> f64 {
        v.to_f64().unwrap() / std::f64::consts::PI
    }

    #[test]
    fn near_half() {
        let (lo, up) = bounds(&rho("0.5+1e-6")).unwrap();
        assert!((f(&lo) - 8.0 / (3.0 * std::f64::consts::PI)).abs() < 1e-5);
        assert!(up >= lo);
    }

    #[test]
    fn point_nine_three() {
        let (lo, up) = bounds(&rho("0.93+pi*1e-5")).unwrap();
        assert!((f(&lo) - 0.659161886).abs() < 1e-8, "{}", f(&lo));
        assert!((f(&up) - 0.659686376).abs() < 1e-8, "{}", f(&up));
    }

    #[test]
    fn triangle_plus_diagonal_gives_lower() {
        let rp = rho("0.93+pi*1e-5");
        let (p, q) = rp.small().unwrap();
        let pts = [HPoint::origin(), HPoint::new(p, 0, q), HPoint::new(0, p, q), HPoint::new(13, 13, 27)];
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.area, rp.value() * r(13, 27));
        assert_eq!(estimate_from_area(&rp, &h.area), bounds(&rp).unwrap().0);
    }

    #[test]
    fn sandwich_and_monotone() {
        let r = rho("0.93+pi*1e-5");
        let a = report(&r, Some(1000)).unwrap();
        let b = report(&r, Some(10000)).unwrap();
        assert_eq!(a.sandwich, Some(true));
        assert_eq!(b.sandwich, Some(true));
        assert!(a.estimate.unwrap() <= b.estimate.unwrap());
    }

    #[test]
    fn pentagon_area_is_upper_bound() {
        for s in ["0.93+pi*1e-5", "0.645+pi*1e-5", "0.31+pi*1e-5", "0.395+pi*1e-5"] {
            let rp = rho(s);
            let pent = bounding_pentagon(&rp).unwrap();
            let v = rp.value();
            let d = best_diagonal(&rp).unwrap().d;
            let g = gamma_sup(&rp);
            let one = BigRational::one();
            let expect = (-&v * &v + r(4, 1) * &v * &d - r(2, 1) * (&one - &g) * &d * &d) / (&one + &g);
            assert_eq!(rational_area(&pent), expect);
            assert_eq!(estimate_from_area(&rp, &expect), bounds(&rp).unwrap().1);
            assert_eq!(&pent[3].0 + &pent[3].1, &d * r(2, 1));
        }
    }

    #[test]
    fn grid_points() {
        let g = grid(&r(1, 2), &r(1, 1), &r(1, 1000)).unwrap();
        assert_eq!(g.len(), 500);
        assert_eq!(g[0], r(1001, 2000));
        assert_eq!(render_rational(&g[0]), "0.5005");
        assert_eq!(render_rational(&r(1, 3)), "(1/3)");
    }

    #[test]
    fn jump_at_two_thirds() {
        let pi = std::f64::consts::PI;
        let (left, _) = bounds(&rho("2/3-pi*1e-9")).unwrap();
        let (right, _) = bounds(&rho("2/3+pi*1e-9")).unwrap();
        assert!((f(&left) - 2.0 / pi).abs() < 1e-6, "{}", f(&left));
        assert!((f(&right) - 12.0 / (5.0 * pi)).abs() < 1e-6, "{}", f(&right));
        assert!(f(&right) - f(&left) > 0.1);
    }

    #[test]
    fn jump_flags_near_reciprocals() {
        let cfg = ScanConfig {
            from: r(2, 5),
            to: r(9, 10),
            step: r(1, 1000),
            index_bound: None,
            jitter: r(1, 1_000_000_000),
            precision: 15,
            jump_factor: 10.0,
        };
        let rows = scan(&cfg).unwrap();
        let flagged: Vec<f64> = rows
            .iter()
            .filter(|row| row.jump_candidate)
            .map(|row| row.outcome.as_ref().unwrap().0.to_f64())
            .collect();
        for c in [0.5, 2.0 / 3.0, 0.75] {
            assert!(flagged.iter().any(|x| (x - c).abs() < 2e-3), "{c}: {flagged:?}");
        }
    }
}