//! Homogeneous rational points and exact predicates on them.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// The rational point `(x/w, y/w)` with `w > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HPoint {
    pub x: i128,
    pub y: i128,
    pub w: i128,
}

impl HPoint {
    /// Builds a point in lowest terms.
    pub fn new(x: i128, y: i128, w: i128) -> Self {
        assert!(w != 0, "zero weight");
        let (x, y, w) = if w < 0 { (-x, -y, -w) } else { (x, y, w) };
        let g = x.gcd(&y).gcd(&w);
        if g > 1 {
            HPoint { x: x / g, y: y / g, w: w / g }
        } else {
            HPoint { x, y, w }
        }
    }

    pub fn origin() -> Self {
        HPoint { x: 0, y: 0, w: 1 }
    }

    /// Converts a pair of rationals, if the common denominator fits.
    pub fn from_rationals(x: &BigRational, y: &BigRational) -> Option<Self> {
        let w = x.denom().lcm(y.denom());
        let xs = x.numer() * (&w / x.denom());
        let ys = y.numer() * (&w / y.denom());
        Some(HPoint::new(xs.to_i128()?, ys.to_i128()?, w.to_i128()?))
    }

    pub fn x(&self) -> BigRational {
        BigRational::new(self.x.into(), self.w.into())
    }

    pub fn y(&self) -> BigRational {
        BigRational::new(self.y.into(), self.w.into())
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let w = self.w as f64;
        (self.x as f64 / w, self.y as f64 / w)
    }

    pub fn swap(&self) -> Self {
        HPoint { x: self.y, y: self.x, w: self.w }
    }

    pub fn reflect(&self, sx: i8, sy: i8) -> Self {
        HPoint { x: self.x * sx as i128, y: self.y * sy as i128, w: self.w }
    }

    /// Same point, compared as rationals.
    pub fn same(&self, o: &HPoint) -> bool {
        cmp_x(self, o) == Ordering::Equal && cmp_y(self, o) == Ordering::Equal
    }
}

fn big(v: i128) -> BigInt {
    BigInt::from(v)
}

/// Sign of the orientation of `(a, b, c)`: positive for a counterclockwise
/// turn, zero when collinear.
pub fn orient(a: &HPoint, b: &HPoint, c: &HPoint) -> i32 {
    let f = |v: i128| v as f64;
    let (ax, ay, aw) = (f(a.x), f(a.y), f(a.w));
    let (bx, by, bw) = (f(b.x), f(b.y), f(b.w));
    let (cx, cy, cw) = (f(c.x), f(c.y), f(c.w));
    let t1 = by * cw - cy * bw;
    let t2 = bx * cw - cx * bw;
    let t3 = bx * cy - cx * by;
    let det = ax * t1 - ay * t2 + aw * t3;
    let perm = ax.abs() * ((by * cw).abs() + (cy * bw).abs())
        + ay.abs() * ((bx * cw).abs() + (cx * bw).abs())
        + aw.abs() * ((bx * cy).abs() + (cx * by).abs());
    let err = 1e-14 * perm;
    if det > err {
        return 1;
    }
    if det < -err {
        return -1;
    }
    orient_exact(a, b, c)
}

fn orient_exact(a: &HPoint, b: &HPoint, c: &HPoint) -> i32 {
    let small = || -> Option<i128> {
        let t1 = b.y.checked_mul(c.w)?.checked_sub(c.y.checked_mul(b.w)?)?;
        let t2 = b.x.checked_mul(c.w)?.checked_sub(c.x.checked_mul(b.w)?)?;
        let t3 = b.x.checked_mul(c.y)?.checked_sub(c.x.checked_mul(b.y)?)?;
        a.x.checked_mul(t1)?
            .checked_sub(a.y.checked_mul(t2)?)?
            .checked_add(a.w.checked_mul(t3)?)
    };
    if let Some(d) = small() {
        return d.signum() as i32;
    }
    let t1 = big(b.y) * big(c.w) - big(c.y) * big(b.w);
    let t2 = big(b.x) * big(c.w) - big(c.x) * big(b.w);
    let t3 = big(b.x) * big(c.y) - big(c.x) * big(b.y);
    let d = big(a.x) * t1 - big(a.y) * t2 + big(a.w) * t3;
    if d.is_zero() {
        0
    } else if d.is_positive() {
        1
    } else {
        -1
    }
}

fn cmp_frac(an: i128, aw: i128, bn: i128, bw: i128) -> Ordering {
    let l = an as f64 * bw as f64;
    let r = bn as f64 * aw as f64;
    let err = 1e-15 * (l.abs() + r.abs());
    if l > r + err {
        return Ordering::Greater;
    }
    if l < r - err {
        return Ordering::Less;
    }
    match (an.checked_mul(bw), bn.checked_mul(aw)) {
        (Some(l), Some(r)) => l.cmp(&r),
        _ => (big(an) * big(bw)).cmp(&(big(bn) * big(aw))),
    }
}

pub fn cmp_x(a: &HPoint, b: &HPoint) -> Ordering {
    cmp_frac(a.x, a.w, b.x, b.w)
}

pub fn cmp_y(a: &HPoint, b: &HPoint) -> Ordering {
    cmp_frac(a.y, a.w, b.y, b.w)
}

/// Lexicographic order by `(x, y)`.
pub fn cmp_xy(a: &HPoint, b: &HPoint) -> Ordering {
    cmp_x(a, b).then_with(|| cmp_y(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces() {
        assert_eq!(HPoint::new(2, 4, 6), HPoint { x: 1, y: 2, w: 3 });
        assert_eq!(HPoint::new(2, 4, -6), HPoint { x: -1, y: -2, w: 3 });
    }

    #[test]
    fn orientation() {
        let o = HPoint::origin();
        let a = HPoint::new(1, 0, 1);
        let b = HPoint::new(0, 1, 1);
        assert_eq!(orient(&o, &a, &b), 1);
        assert_eq!(orient(&o, &b, &a), -1);
        let m = HPoint::new(1, 1, 2);
        assert_eq!(orient(&a, &m, &b), 0);
        // near-degenerate with large coordinates
        let big = 10i128.pow(30);
        let p = HPoint::new(big + 1, big, big);
        let q = HPoint::new(2 * big + 1, 2 * big, 2 * big);
        assert_eq!(orient(&o, &p, &HPoint::new(1, 1, 1)), 1);
        assert_eq!(orient(&p, &q, &HPoint::new(1, 1, 1)), orient_exact(&p, &q, &HPoint::new(1, 1, 1)));
    }

    #[test]
    fn comparisons() {
        let a = HPoint::new(1, 2, 3);
        let b = HPoint::new(2, 4, 6);
        assert!(a.same(&b));
        assert_eq!(cmp_xy(&a, &HPoint::new(1, 3, 3)), Ordering::Less);
    }
}
