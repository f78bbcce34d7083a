//! Browser bindings for the static demo page in `www/`.
//!
//! Each export has a plain Rust twin returning `Result<String, String>` so
//! the logic is testable off the browser.

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::json;
use wasm_bindgen::prelude::*;

use rotset_core::diagonal::extremality_with_bound;
use rotset_core::geometry::{family_hull, gen_family, Quadrants};
use rotset_core::roundness::{bounding_pentagon, iso_decimal, over_pi_decimal, report};
use rotset_core::ser::Rat;
use rotset_core::svg::{hull_svg, pentagon_outline, HullFigure};
use rotset_core::RhoParam;

/// Keeps the page responsive; the exact hull is cheap well beyond this.
pub const MAX_BOUND: u64 = 5000;
const FIGURE_POINTS_BOUND: u64 = 80;
const DIGITS: u32 = 8;

fn f(v: &BigRational) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

fn certified(expr: &str, precision: u32, window: Option<u64>) -> Result<RhoParam, String> {
    let rho = match window {
        Some(w) => RhoParam::parse_with_window(expr, precision, w),
        None => RhoParam::parse(expr, precision),
    }
    .map_err(|e| e.to_string())?;
    rho.require_certified().map_err(|e| e.to_string())?;
    Ok(rho)
}

/// SVG of the truncated hull with points, diagonal line and bounding pentagon.
pub fn hull_figure(expr: &str, bound: u64, four: bool) -> Result<String, String> {
    if bound == 0 || bound > MAX_BOUND {
        return Err(format!("index bound must lie in [1, {MAX_BOUND}]"));
    }
    let rho = certified(expr, 15, Some(bound))?;
    let q = if four { Quadrants::Four } else { Quadrants::One };
    let fh = family_hull(&rho, bound, q).map_err(|e| e.to_string())?;
    let fam = gen_family(&rho, bound.min(FIGURE_POINTS_BOUND), q).map_err(|e| e.to_string())?;
    let diag = extremality_with_bound(&rho, bound).map_err(|e| e.to_string())?;
    let pent: Vec<(f64, f64)> = bounding_pentagon(&rho).map_err(|e| e.to_string())?.iter().map(|(x, y)| (f(x), f(y))).collect();
    let fig = HullFigure {
        title: format!("rho = {expr}, M = {bound}"),
        rho: rho.to_f64(),
        hull: fh.polygon.vertices.iter().map(|p| p.to_f64()).collect(),
        points: fam.points.iter().map(|lp| lp.point.to_f64()).collect(),
        diagonal: Some(f(&diag.d)),
        pentagon: Some(pentagon_outline(&pent, four)),
        four_quadrants: four,
    };
    Ok(hull_svg(&fig))
}

/// JSON summary: surrogate, diagonal classification and roundness decimals.
pub fn summary(expr: &str, bound: u64) -> Result<String, String> {
    if bound > MAX_BOUND {
        return Err(format!("index bound must be at most {MAX_BOUND}"));
    }
    let rho = certified(expr, 15, None)?;
    let diag = extremality_with_bound(&rho, bound.max(1).min(rho.max_safe_index())).map_err(|e| e.to_string())?;
    let rep = report(&rho, (bound > 0).then_some(bound)).map_err(|e| e.to_string())?;
    let v = json!({
        "rho": rho,
        "d": Rat(&diag.d),
        "interval": diag.interval_tag,
        "classification": diag.classification,
        "threshold": diag.threshold,
        "digits": DIGITS,
        "lower_over_pi": over_pi_decimal(&rep.lower, DIGITS),
        "upper_over_pi": over_pi_decimal(&rep.upper, DIGITS),
        "estimate_over_pi": rep.estimate.as_ref().map(|e| over_pi_decimal(e, DIGITS)),
        "iso": iso_decimal(&rep.iso_factor, DIGITS),
        "index_bound": rep.index_bound,
    });
    serde_json::to_string(&v).map_err(|e| e.to_string())
}

/// JSON array of `[m, alpha_m as float, member of I]` for `m = 1..=count`.
pub fn alpha_rows(expr: &str, count: u64) -> Result<String, String> {
    if count == 0 || count > 2000 {
        return Err("count must lie in [1, 2000]".into());
    }
    let rho = certified(expr, 15, Some(count))?;
    let rows: Result<Vec<_>, String> = (1..=count)
        .map(|m| {
            let a = rho.alpha(m).map_err(|e| e.to_string())?;
            Ok(json!([m, f(&a), rho.member_unchecked(m)]))
        })
        .collect();
    serde_json::to_string(&rows?).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = hullSvg)]
pub fn hull_svg_js(expr: &str, bound: u32, four: bool) -> Result<String, JsValue> {
    hull_figure(expr, bound as u64, four).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = summary)]
pub fn summary_js(expr: &str, bound: u32) -> Result<String, JsValue> {
    summary(expr, bound as u64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = alphaRows)]
pub fn alpha_rows_js(expr: &str, count: u32) -> Result<String, JsValue> {
    alpha_rows(expr, count as u64).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_and_summary() {
        let s = hull_figure("0.93+pi*1e-5", 300, true).unwrap();
        assert!(s.starts_with("<svg") && s.contains("<polygon"));
        let v: serde_json::Value = serde_json::from_str(&summary("0.645+pi*1e-5", 500).unwrap()).unwrap();
        assert_eq!(v["classification"], "NotExtreme");
        assert_eq!(v["threshold"], 4);
        assert_eq!(v["d"]["num"], "1");
        assert_eq!(v["d"]["den"], "3");
    }

    #[test]
    fn alpha_membership() {
        let v: serde_json::Value = serde_json::from_str(&alpha_rows("7/10", 3).unwrap()).unwrap();
        assert_eq!(v[2][2], false);
        assert_eq!(v[0][2], true);
    }

    #[test]
    fn errors_are_messages() {
        assert!(hull_figure("1.5", 10, false).unwrap_err().contains("outside"));
        assert!(hull_figure("0.7+pi*1e-5", MAX_BOUND + 1, false).is_err());
        assert!(alpha_rows("0.7+pi*1e-5", 0).is_err());
    }
}
