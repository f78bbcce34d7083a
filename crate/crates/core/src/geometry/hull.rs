//! Exact convex hulls of homogeneous points.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::point::{cmp_xy, orient, HPoint};
use crate::error::{Error, Result};

/// Vertices in counterclockwise order, strictly convex, with exact area.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullPolygon {
    pub vertices: Vec<HPoint>,
    pub area: BigRational,
}

/// Indices into `points` of the hull vertices, counterclockwise, starting
/// from the lexicographically smallest point. Points in the relative
/// interior of an edge are not vertices. Duplicates keep their first index.
pub fn hull_indices(points: &[HPoint]) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| cmp_xy(&points[a], &points[b]).then(a.cmp(&b)));
    order.dedup_by(|b, a| points[*a].same(&points[*b]));
    if order.len() < 3 {
        return Err(Error::Degenerate(format!("{} distinct points", order.len())));
    }
    let mut lower: Vec<usize> = Vec::new();
    for &i in &order {
        while lower.len() >= 2 && orient(&points[lower[lower.len() - 2]], &points[lower[lower.len() - 1]], &points[i]) <= 0 {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in order.iter().rev() {
        while upper.len() >= 2 && orient(&points[upper[upper.len() - 2]], &points[upper[upper.len() - 1]], &points[i]) <= 0 {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(Error::Degenerate("all points are collinear".into()));
    }
    Ok(lower)
}

/// Exact convex hull.
pub fn convex_hull(points: &[HPoint]) -> Result<HullPolygon> {
    let idx = hull_indices(points)?;
    let vertices: Vec<HPoint> = idx.iter().map(|&i| points[i]).collect();
    let area = polygon_area(&vertices);
    Ok(HullPolygon { vertices, area })
}

/// Shoelace area of a simple polygon given counterclockwise.
pub fn polygon_area(v: &[HPoint]) -> BigRational {
    let n = v.len();
    let mut num = BigInt::zero();
    let mut den = BigInt::from(1);
    // sum the terms over a running common denominator
    for i in 0..n {
        let a = &v[i];
        let b = &v[(i + 1) % n];
        let t = BigInt::from(a.x) * BigInt::from(b.y) - BigInt::from(b.x) * BigInt::from(a.y);
        if t.is_zero() {
            continue;
        }
        let w = BigInt::from(a.w) * BigInt::from(b.w);
        let g = num_integer::Integer::gcd(&den, &w);
        let scale = &w / &g;
        num = num * &scale + t * (&den / &g);
        den *= scale;
    }
    BigRational::new(num, den * 2)
}

impl HullPolygon {
    /// Closed containment test in `O(log n)`.
    pub fn contains(&self, p: &HPoint) -> bool {
        contains_ccw(&self.vertices, p)
    }

    /// Whether `p` is a vertex (compared as rationals).
    pub fn is_vertex(&self, p: &HPoint) -> bool {
        self.vertices.iter().any(|v| v.same(p))
    }

    /// Squared Euclidean distance from `p` to the polygon (0 inside).
    pub fn dist2(&self, p: &HPoint) -> BigRational {
        if self.contains(p) {
            return BigRational::zero();
        }
        let (px, py) = (p.x(), p.y());
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let a = &self.vertices[i];
                let b = &self.vertices[(i + 1) % n];
                seg_dist2(&px, &py, &a.x(), &a.y(), &b.x(), &b.y())
            })
            .min()
            .expect("nonempty polygon")
    }
}

fn seg_dist2(px: &BigRational, py: &BigRational, ax: &BigRational, ay: &BigRational, bx: &BigRational, by: &BigRational) -> BigRational {
    let dx = bx - ax;
    let dy = by - ay;
    let len2 = &dx * &dx + &dy * &dy;
    let t = ((px - ax) * &dx + (py - ay) * &dy) / &len2;
    let t = if t.is_negative() {
        BigRational::zero()
    } else if t > BigRational::from_integer(1.into()) {
        BigRational::from_integer(1.into())
    } else {
        t
    };
    let cx = ax + &t * &dx - px;
    let cy = ay + &t * &dy - py;
    &cx * &cx + &cy * &cy
}

/// Closed containment in a strictly convex counterclockwise polygon.
pub fn contains_ccw(v: &[HPoint], p: &HPoint) -> bool {
    let n = v.len();
    if n < 3 {
        return false;
    }
    if orient(&v[0], &v[1], p) < 0 || orient(&v[0], &v[n - 1], p) > 0 {
        return false;
    }
    let (mut lo, mut hi) = (1, n - 1);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if orient(&v[0], &v[mid], p) >= 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    orient(&v[lo], &v[lo + 1], p) >= 0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i128, y: i128, w: i128) -> HPoint {
        HPoint::new(x, y, w)
    }

    #[test]
    fn square() {
        let pts = vec![p(0, 0, 1), p(1, 0, 1), p(1, 1, 1), p(0, 1, 1), p(1, 1, 2), p(1, 0, 2)];
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.vertices.len(), 4);
        assert_eq!(h.area, BigRational::from_integer(1.into()));
        assert!(h.contains(&p(1, 0, 2)));
        assert!(h.contains(&p(1, 1, 1)));
        assert!(!h.contains(&p(3, 1, 2)));
        assert!(!h.contains(&p(2, 0, 1)));
        assert!(!h.contains(&p(-1, 0, 1)));
        assert_eq!(h.dist2(&p(2, 0, 1)), BigRational::from_integer(1.into()));
    }

    #[test]
    fn triangle_area() {
        // (0,0),(0,ρ),(ρ,0) with ρ = 7/10
        let h = convex_hull(&[p(0, 0, 1), p(0, 7, 10), p(7, 0, 10)]).unwrap();
        assert_eq!(h.area, BigRational::new(49.into(), 200.into()));
    }

    #[test]
    fn collinear_rejected() {
        assert!(matches!(convex_hull(&[p(0, 0, 1), p(1, 1, 1), p(2, 2, 1)]), Err(Error::Degenerate(_))));
        assert!(convex_hull(&[p(0, 0, 1), p(0, 0, 1)]).is_err());
    }
}
