//! The point family `A_{m,n} = (⌈mρ⌉, ⌈nρ⌉)/(m+n+1)` and its hulls.

use std::collections::HashSet;

use num_rational::BigRational;
use serde::Serialize;

use super::hull::{contains_ccw, hull_indices, polygon_area, HullPolygon};
use super::point::HPoint;
use crate::error::{Error, Result};
use crate::index_sets::scan_oracle;
use crate::rho::RhoParam;

/// One quadrant (`Λ`) or all four (`Λ′`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quadrants {
    One,
    Four,
}

impl Quadrants {
    pub fn signs(self) -> &'static [(i8, i8)] {
        match self {
            Quadrants::One => &[(1, 1)],
            Quadrants::Four => &[(1, 1), (-1, 1), (-1, -1), (1, -1)],
        }
    }
}

/// `(sign_x·⌈mρ⌉, sign_y·⌈nρ⌉)/(m+n+1)` with its indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticePoint {
    pub m: u64,
    pub n: u64,
    pub sign_x: i8,
    pub sign_y: i8,
    pub point: HPoint,
}

impl LatticePoint {
    pub fn new(rho: &RhoParam, m: u64, n: u64, sign_x: i8, sign_y: i8) -> Self {
        let cm = rho.ceil_mul_unchecked(m) as i128;
        let cn = rho.ceil_mul_unchecked(n) as i128;
        let point = HPoint::new(sign_x as i128 * cm, sign_y as i128 * cn, (m + n + 1) as i128);
        LatticePoint { m, n, sign_x, sign_y, point }
    }

    pub fn x(&self) -> BigRational {
        self.point.x()
    }

    pub fn y(&self) -> BigRational {
        self.point.y()
    }

    /// The coordinate swap `A_{n,m}`.
    pub fn swapped(&self) -> Self {
        LatticePoint { m: self.n, n: self.m, sign_x: self.sign_y, sign_y: self.sign_x, point: self.point.swap() }
    }
}

/// Where a hull vertex comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointLabel {
    Origin,
    /// `(sign_x·ρ, 0)` or `(0, sign_y·ρ)`; the other sign is 0.
    Axis { sign_x: i8, sign_y: i8 },
    Lattice(LatticePoint),
}

/// A materialized truncated family.
#[derive(Clone, Debug)]
pub struct PointFamily {
    pub rho: RhoParam,
    pub index_bound: u64,
    pub quadrants: Quadrants,
    pub points: Vec<LatticePoint>,
    pub anchors: Vec<(PointLabel, HPoint)>,
}

fn rho_small(rho: &RhoParam) -> Result<(i128, i128)> {
    rho.small()
        .filter(|&(_, q)| q < 10i128.pow(31))
        .ok_or_else(|| Error::Invalid(format!("denominator of {rho} is too large for geometry")))
}

fn anchors(rho: &RhoParam, quadrants: Quadrants) -> Result<Vec<(PointLabel, HPoint)>> {
    let (p, q) = rho_small(rho)?;
    let mut out = vec![(PointLabel::Origin, HPoint::origin())];
    let axes: &[(i8, i8)] = match quadrants {
        Quadrants::One => &[(1, 0), (0, 1)],
        Quadrants::Four => &[(1, 0), (0, 1), (-1, 0), (0, -1)],
    };
    for &(sx, sy) in axes {
        out.push((PointLabel::Axis { sign_x: sx, sign_y: sy }, HPoint::new(sx as i128 * p, sy as i128 * p, q)));
    }
    Ok(out)
}

/// Indices `(I ∪ {0}) ∩ [0, bound]`, ascending.
pub fn admissible_indices(rho: &RhoParam, bound: u64) -> Result<Vec<u64>> {
    let mut v = vec![0];
    v.extend(scan_oracle(rho, bound)?);
    Ok(v)
}

/// Every point `A_{m,n}` with `m, n ∈ (I ∪ {0}) ∩ [0, bound]`, reflected
/// into the requested quadrants and de-duplicated by coordinates. The first
/// `(m, n, signs)` producing a coordinate is kept.
pub fn gen_family(rho: &RhoParam, index_bound: u64, quadrants: Quadrants) -> Result<PointFamily> {
    let anchors = anchors(rho, quadrants)?;
    let idx = admissible_indices(rho, index_bound)?;
    let mut seen = HashSet::new();
    let mut points = Vec::new();
    for &m in &idx {
        for &n in &idx {
            for &(sx, sy) in quadrants.signs() {
                let lp = LatticePoint::new(rho, m, n, sx, sy);
                if seen.insert(lp.point) {
                    points.push(lp);
                }
            }
        }
    }
    Ok(PointFamily { rho: rho.clone(), index_bound, quadrants, points, anchors })
}

impl PointFamily {
    /// All points including anchors, with labels.
    pub fn labelled(&self) -> Vec<(PointLabel, HPoint)> {
        let mut v = self.anchors.clone();
        v.extend(self.points.iter().map(|lp| (PointLabel::Lattice(*lp), lp.point)));
        v
    }

    /// Exact hull of the materialized family.
    pub fn hull(&self) -> Result<FamilyHull> {
        let all = self.labelled();
        let pts: Vec<HPoint> = all.iter().map(|(_, p)| *p).collect();
        let idx = hull_indices(&pts)?;
        let vertices: Vec<HPoint> = idx.iter().map(|&i| pts[i]).collect();
        let labels = idx.iter().map(|&i| all[i].0).collect();
        let area = polygon_area(&vertices);
        Ok(FamilyHull {
            index_bound: self.index_bound,
            quadrants: self.quadrants,
            polygon: HullPolygon { vertices, area },
            labels,
        })
    }

    /// Lattice points that are vertices of the hull.
    pub fn extreme_points(&self) -> Result<Vec<LatticePoint>> {
        let h = self.hull()?;
        Ok(h.labels
            .iter()
            .filter_map(|l| match l {
                PointLabel::Lattice(lp) => Some(*lp),
                _ => None,
            })
            .collect())
    }
}

/// Hull of a truncated family with vertex provenance.
#[derive(Clone, Debug)]
pub struct FamilyHull {
    pub index_bound: u64,
    pub quadrants: Quadrants,
    pub polygon: HullPolygon,
    pub labels: Vec<PointLabel>,
}

impl FamilyHull {
    pub fn area(&self) -> &BigRational {
        &self.polygon.area
    }

    pub fn contains(&self, p: &HPoint) -> bool {
        self.polygon.contains(p)
    }

    pub fn is_vertex(&self, p: &HPoint) -> bool {
        self.polygon.is_vertex(p)
    }
}

const LEAF: usize = 16;

struct Pruner<'a> {
    p: i128,
    q: i128,
    idx: &'a [u64],
    c: &'a [i128],
    verts: Vec<HPoint>,
    labels: Vec<PointLabel>,
}

impl Pruner<'_> {
    fn point(&self, j: usize, r: usize) -> HPoint {
        HPoint::new(self.c[j], self.c[r], (self.idx[j] + self.idx[r] + 1) as i128)
    }

    /// Upper bound point `(ρ(m+1), ⌈nρ⌉)/(m+n+1)` of `A_{m,n}` for `m = idx[j]`.
    fn bound(&self, j: usize, r: usize) -> HPoint {
        let m = self.idx[j] as i128;
        let s = m + self.idx[r] as i128 + 1;
        HPoint { x: self.p * (m + 1), y: self.q * self.c[r], w: self.q * s }
    }

    fn scan(&self, lo: usize, hi: usize, r: usize, out: &mut Vec<usize>) {
        if hi + 1 - lo <= LEAF {
            for j in lo..=hi {
                if !contains_ccw(&self.verts, &self.point(j, r)) {
                    out.push(j);
                }
            }
            return;
        }
        if contains_ccw(&self.verts, &self.bound(lo, r)) && contains_ccw(&self.verts, &self.bound(hi, r)) {
            return;
        }
        let mid = (lo + hi) / 2;
        self.scan(lo, mid, r, out);
        self.scan(mid + 1, hi, r, out);
    }

    fn absorb(&mut self, extra: Vec<(PointLabel, HPoint)>) -> Result<()> {
        let mut pts = std::mem::take(&mut self.verts);
        let mut labels = std::mem::take(&mut self.labels);
        for (l, p) in extra {
            labels.push(l);
            pts.push(p);
        }
        let keep = hull_indices(&pts)?;
        self.verts = keep.iter().map(|&i| pts[i]).collect();
        self.labels = keep.iter().map(|&i| labels[i]).collect();
        Ok(())
    }
}

/// Hull of the truncated family without materializing it.
///
/// Rows `n ∈ I` are swept for `m ≥ n`; ranges of `m` whose upper bound
/// points already lie in the current hull are discarded wholesale, and the
/// survivors are mirrored across the diagonal.
pub fn family_hull(rho: &RhoParam, index_bound: u64, quadrants: Quadrants) -> Result<FamilyHull> {
    let (p, q) = rho_small(rho)?;
    let all = scan_oracle(rho, index_bound)?;
    let all_c: Vec<i128> = all.iter().map(|&m| rho.ceil_mul_unchecked(m) as i128).collect();
    let keep = run_endpoints(&all, &all_c);
    let idx: Vec<u64> = keep.iter().map(|&j| all[j]).collect();
    let c: Vec<i128> = keep.iter().map(|&j| all_c[j]).collect();
    let mut seed = anchors(rho, Quadrants::One)?;
    for (j, &m) in idx.iter().enumerate() {
        seed.push((PointLabel::Lattice(LatticePoint::new(rho, m, m, 1, 1)), HPoint::new(c[j], c[j], (2 * m + 1) as i128)));
    }
    let mut pr = Pruner { p, q, idx: &idx, c: &c, verts: vec![], labels: vec![] };
    pr.absorb(seed)?;
    let mut found = Vec::new();
    for r in 0..idx.len() {
        found.clear();
        pr.scan(r, idx.len() - 1, r, &mut found);
        if found.is_empty() {
            continue;
        }
        let mut extra = Vec::with_capacity(2 * found.len());
        for &j in &found {
            let lp = LatticePoint {
                m: idx[j],
                n: idx[r],
                sign_x: 1,
                sign_y: 1,
                point: pr.point(j, r),
            };
            extra.push((PointLabel::Lattice(lp), lp.point));
            let sw = lp.swapped();
            extra.push((PointLabel::Lattice(sw), sw.point));
        }
        pr.absorb(extra)?;
    }
    let (verts, labels) = match quadrants {
        Quadrants::One => (pr.verts, pr.labels),
        Quadrants::Four => {
            let mut pts = Vec::new();
            let mut labs = Vec::new();
            for &(sx, sy) in Quadrants::Four.signs() {
                for (v, l) in pr.verts.iter().zip(&pr.labels) {
                    pts.push(v.reflect(sx, sy));
                    labs.push(reflect_label(l, sx, sy));
                }
            }
            let keep = hull_indices(&pts)?;
            (keep.iter().map(|&i| pts[i]).collect(), keep.iter().map(|&i| labs[i]).collect())
        }
    };
    let area = polygon_area(&verts);
    Ok(FamilyHull { index_bound, quadrants, polygon: HullPolygon { vertices: verts, area }, labels })
}

/// Positions closing maximal runs on which `⌈mρ⌉` is affine in `m`.
///
/// Along such a run the points `A_{m,n}` of a fixed row are collinear
/// (both coordinates are affine in `1/(m+n+1)`), so only the run ends can
/// be vertices; the same holds for columns.
fn run_endpoints(m: &[u64], c: &[i128]) -> Vec<usize> {
    let n = m.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut out = vec![0];
    let mut start = 0;
    for j in 2..n {
        let (dm0, dc0) = (m[start + 1] as i128 - m[start] as i128, c[start + 1] - c[start]);
        let (dm, dc) = (m[j] as i128 - m[j - 1] as i128, c[j] - c[j - 1]);
        if dc * dm0 != dc0 * dm {
            out.push(j - 1);
            start = j - 1;
        }
    }
    out.push(n - 1);
    out
}

fn reflect_label(l: &PointLabel, sx: i8, sy: i8) -> PointLabel {
    match *l {
        PointLabel::Origin => PointLabel::Origin,
        PointLabel::Axis { sign_x, sign_y } => PointLabel::Axis { sign_x: sign_x * sx, sign_y: sign_y * sy },
        PointLabel::Lattice(lp) => PointLabel::Lattice(LatticePoint {
            sign_x: lp.sign_x * sx,
            sign_y: lp.sign_y * sy,
            point: lp.point.reflect(sx, sy),
            ..lp
        }),
    }
}

/// Number of pairs `m, n ∈ (I ∪ {0}) ∩ [0, bound]` with
/// `⌈mρ⌉² + ⌈nρ⌉² ≥ ρ²(m+n+1)²`, i.e. points off the open disc of radius ρ.
pub fn circle_violations(rho: &RhoParam, bound: u64) -> Result<u64> {
    let (p, q) = rho_small(rho)?;
    let idx = admissible_indices(rho, bound)?;
    let c: Vec<i128> = idx.iter().map(|&m| rho.ceil_mul_unchecked(m) as i128).collect();
    let rf = p as f64 / q as f64;
    let r2 = rf * rf;
    let mut bad = 0;
    for (a, &m) in idx.iter().enumerate() {
        for (b, &n) in idx.iter().enumerate() {
            let s = (m + n + 1) as f64;
            let lhs = (c[a] * c[a] + c[b] * c[b]) as f64;
            let rhs = r2 * s * s;
            let err = 1e-13 * (lhs + rhs);
            if rhs - lhs > err {
                continue;
            }
            // exact: p²s² > q²(c_m² + c_n²)
            let s = (m + n + 1) as i128;
            let l = num_bigint::BigInt::from(p * s) * num_bigint::BigInt::from(p * s);
            let r = num_bigint::BigInt::from(q) * num_bigint::BigInt::from(q) * num_bigint::BigInt::from(c[a] * c[a] + c[b] * c[b]);
            if l <= r {
                bad += 1;
            }
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rho(s: &str) -> RhoParam {
        RhoParam::parse(s, 15).unwrap()
    }

    #[test]
    fn contains_best_diagonal() {
        let r = rho("0.93+pi*1e-5");
        let f = gen_family(&r, 13, Quadrants::One).unwrap();
        let d = HPoint::new(13, 13, 27);
        assert!(f.points.iter().any(|lp| lp.point == d));
        assert!(f.points.iter().any(|lp| lp.point == HPoint::origin()));
    }

    #[test]
    fn four_quadrant_count() {
        let r = rho("0.31+pi*1e-5");
        let one = gen_family(&r, 60, Quadrants::One).unwrap();
        let four = gen_family(&r, 60, Quadrants::Four).unwrap();
        let axis = |lp: &&LatticePoint| lp.point.x == 0 || lp.point.y == 0;
        let off = one.points.iter().filter(|lp| !axis(lp)).count();
        let on_axis_four = four.points.iter().filter(axis).count();
        assert_eq!(four.points.len(), 4 * off + on_axis_four);
    }

    #[test]
    fn pruned_matches_materialized() {
        for s in ["0.93+pi*1e-5", "0.645+pi*1e-5", "0.31+pi*1e-5", "0.395+pi*1e-5", "0.52+pi*1e-7"] {
            let r = rho(s);
            for q in [Quadrants::One, Quadrants::Four] {
                let a = gen_family(&r, 150, q).unwrap().hull().unwrap();
                let b = family_hull(&r, 150, q).unwrap();
                assert_eq!(a.polygon, b.polygon, "{s} {q:?}");
            }
        }
    }

    #[test]
    fn circle() {
        assert_eq!(circle_violations(&rho("0.93+pi*1e-5"), 500).unwrap(), 0);
        assert_eq!(circle_violations(&rho("0.31+pi*1e-5"), 500).unwrap(), 0);
    }
}
