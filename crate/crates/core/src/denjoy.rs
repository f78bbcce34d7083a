//! One-dimensional model on a bouquet of four circles.
//!
//! A Denjoy map ψ with rotation number ρ is built by blowing up the orbit
//! `{frac(nρ) : |n| ≤ N_w}` into intervals of length `c/(|n|+2)²` (total 1/2).
//! The index-0 interval `J` is centered at the origin, `I = (17/18)·J`.
//! Unlike the rest of the crate this module runs in `f64`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{HPoint, HullPolygon};
use crate::rho::RhoParam;

/// Total length of the blown-up intervals.
pub const WANDER_MASS: f64 = 0.5;
/// Relative width of `I` inside `J`.
pub const COLLAPSE_RATIO: f64 = 17.0 / 18.0;
/// Grid used to round rotation estimates before exact containment.
pub const ROUND_SCALE: i128 = 1_000_000_000_000;
pub const DEFAULT_WANDER: u64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Circle {
    #[serde(rename = "h")]
    H,
    #[serde(rename = "h'")]
    HPrime,
    #[serde(rename = "v")]
    V,
    #[serde(rename = "v'")]
    VPrime,
}

impl Circle {
    pub const ALL: [Circle; 4] = [Circle::H, Circle::HPrime, Circle::V, Circle::VPrime];

    /// Lift of the circle through the wedge point, `z ↦ ℝ²`.
    pub fn embed(self, z: f64) -> (f64, f64) {
        let bump = 0.1 * (std::f64::consts::PI * z).sin().powi(2);
        match self {
            Circle::H => (z, bump),
            Circle::HPrime => (z, -bump),
            Circle::V => (bump, z),
            Circle::VPrime => (-bump, z),
        }
    }

    /// `+1` for the maps `F^(h)`, `F^(v)`, `-1` for the primed ones.
    pub fn direction(self) -> i8 {
        match self {
            Circle::H | Circle::V => 1,
            Circle::HPrime | Circle::VPrime => -1,
        }
    }
}

impl fmt::Display for Circle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Circle::H => "h",
            Circle::HPrime => "h'",
            Circle::V => "v",
            Circle::VPrime => "v'",
        })
    }
}

/// A point of the bouquet; angle 0 is the wedge point shared by all circles.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BouquetPoint {
    pub circle: Circle,
    pub angle: f64,
}

impl BouquetPoint {
    pub fn new(circle: Circle, angle: f64) -> Self {
        BouquetPoint { circle, angle: frac(angle) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LiftState {
    pub point: BouquetPoint,
    pub displacement: (f64, f64),
    pub steps: u64,
}

impl LiftState {
    pub fn new(point: BouquetPoint) -> Self {
        LiftState { point, displacement: (0.0, 0.0), steps: 0 }
    }
}

/// A stored wandering interval: orbit index, left end (in `[0,1)`), length.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Wandering {
    pub n: i64,
    pub start: f64,
    pub len: f64,
}

#[derive(Clone, Debug)]
pub struct DenjoyMap {
    rho: RhoParam,
    rho_f: f64,
    wander_count: u64,
    // exact orbit residues n·p mod q, indexed by n + N_w
    residues: Vec<BigInt>,
    theta: Vec<f64>,
    len: Vec<f64>,
    // sorted by theta; positions measured from the left end of J
    order: Vec<usize>,
    sorted_theta: Vec<f64>,
    sorted_start: Vec<f64>,
    prefix: Vec<f64>,
    half_j: f64,
    r_i: f64,
    tau: f64,
}

fn frac(x: f64) -> f64 {
    let f = x.rem_euclid(1.0);
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

/// Representative of an angle in `[-1/2, 1/2)`.
fn centered(a: f64) -> f64 {
    if (-0.5..0.5).contains(&a) {
        return a;
    }
    let f = frac(a);
    if f >= 0.5 {
        f - 1.0
    } else {
        f
    }
}

/// Build ψ from `2·N_w + 1` blown-up orbit points.
pub fn build_denjoy(rho: &RhoParam, wander_count: u64) -> Result<DenjoyMap> {
    rho.require_certified()?;
    if wander_count == 0 {
        return Err(Error::Invalid("wander count must be positive".into()));
    }
    let q = rho.denom();
    if BigInt::from(2 * wander_count + 1) >= *q {
        return Err(Error::Invalid(format!("2·{wander_count}+1 orbit points need a denominator larger than {q}")));
    }
    let nw = wander_count as i64;
    let count = (2 * wander_count + 1) as usize;
    let qf = q.to_f64().unwrap_or(f64::INFINITY);
    let mut residues = Vec::with_capacity(count);
    let mut theta = Vec::with_capacity(count);
    let mut len = Vec::with_capacity(count);
    for n in -nw..=nw {
        let r = (BigInt::from(n) * rho.numer()).mod_floor(q);
        theta.push(ratio_f64(&r, q, qf));
        residues.push(r);
        len.push(1.0 / ((n.unsigned_abs() + 2) as f64).powi(2));
    }
    let total: f64 = len.iter().sum();
    for l in &mut len {
        *l *= WANDER_MASS / total;
    }
    let mut order: Vec<usize> = (0..count).collect();
    order.sort_by(|&a, &b| residues[a].cmp(&residues[b]));
    let sorted_theta: Vec<f64> = order.iter().map(|&i| theta[i]).collect();
    let mut prefix = Vec::with_capacity(count + 1);
    prefix.push(0.0);
    for &i in &order {
        prefix.push(prefix.last().unwrap() + len[i]);
    }
    let sorted_start = (0..count).map(|k| (1.0 - WANDER_MASS) * sorted_theta[k] + prefix[k]).collect();
    let half_j = len[wander_count as usize] / 2.0;
    let mut map = DenjoyMap {
        rho: rho.clone(),
        rho_f: rho.to_f64(),
        wander_count,
        residues,
        theta,
        len,
        order,
        sorted_theta,
        sorted_start,
        prefix,
        half_j,
        r_i: COLLAPSE_RATIO * half_j,
        tau: 0.0,
    };
    map.tau = map.psi_step(0.0, 1);
    Ok(map)
}

fn ratio_f64(r: &BigInt, q: &BigInt, qf: f64) -> f64 {
    match (r.to_f64(), qf.is_finite()) {
        (Some(rf), true) => rf / qf,
        _ => {
            // scale down so both fit
            let shift = q.bits().saturating_sub(60);
            let rs = (r >> shift).to_f64().unwrap_or(0.0);
            let qs = (q >> shift).to_f64().unwrap_or(1.0);
            rs / qs
        }
    }
}

impl DenjoyMap {
    pub fn rho(&self) -> &RhoParam {
        &self.rho
    }

    pub fn wander_count(&self) -> u64 {
        self.wander_count
    }

    /// `J = [-j, j]`.
    pub fn j_half_width(&self) -> f64 {
        self.half_j
    }

    /// `I = [-r, r]`.
    pub fn i_half_width(&self) -> f64 {
        self.r_i
    }

    /// ψ-image of the origin, as a lift value in `(0, 1)`.
    pub fn tau(&self) -> f64 {
        self.tau
    }

    fn slot(&self, n: i64) -> usize {
        (n + self.wander_count as i64) as usize
    }

    /// The stored interval of orbit index `n`, in circle coordinates.
    pub fn interval(&self, n: i64) -> Option<Wandering> {
        if n.unsigned_abs() > self.wander_count {
            return None;
        }
        let i = self.slot(n);
        let k = self.order.iter().position(|&o| o == i).expect("slot present");
        Some(Wandering { n, start: frac(self.sorted_start[k] - self.half_j), len: self.len[i] })
    }

    pub fn intervals(&self) -> Vec<Wandering> {
        let nw = self.wander_count as i64;
        (-nw..=nw).filter_map(|n| self.interval(n)).collect()
    }

    /// Blow-up map `H` from the rotation circle to `J`-based coordinates.
    fn blow_up(&self, theta: f64) -> f64 {
        let j = self.sorted_theta.partition_point(|&t| t < theta);
        (1.0 - WANDER_MASS) * theta + self.prefix[j]
    }

    fn start_of(&self, n: i64) -> f64 {
        self.blow_up(self.theta[self.slot(n)])
    }

    /// One step of ψ (`dir = 1`) or its truncated inverse (`dir = -1`) on `[0,1)`.
    fn psi_step(&self, y: f64, dir: i8) -> f64 {
        let s = frac(y + self.half_j);
        let k = self.sorted_start.partition_point(|&x| x <= s).saturating_sub(1);
        let i = self.order[k];
        let n = i as i64 - self.wander_count as i64;
        let nw = self.wander_count as i64;
        let offset = s - self.sorted_start[k];
        let s2 = if offset < self.len[i] {
            let target = n + dir as i64;
            if target.abs() > nw {
                // truncated end of the orbit: collapse onto the next orbit point
                let theta = frac(self.theta[i] + dir as f64 * self.rho_f);
                self.blow_up(theta)
            } else {
                let t = self.slot(target);
                self.start_of(target) + offset * self.len[t] / self.len[i]
            }
        } else {
            let theta = self.sorted_theta[k] + (offset - self.len[i]) / (1.0 - WANDER_MASS);
            self.blow_up(frac(theta + dir as f64 * self.rho_f))
        };
        frac(s2 - self.half_j)
    }

    /// Lift displacement of ψ^dir at `y`: in `[0,1)` for `dir = 1`, `(-1,0]` for `-1`.
    fn psi_delta(&self, y: f64, dir: i8) -> (f64, f64) {
        let y2 = self.psi_step(y, dir);
        let d = if dir > 0 { frac(y2 - y) } else { -frac(y - y2) };
        (y2, d)
    }

    pub fn psi(&self, y: f64) -> f64 {
        self.psi_step(frac(y), 1)
    }

    pub fn psi_inv(&self, y: f64) -> f64 {
        self.psi_step(frac(y), -1)
    }

    /// Lift of ψ with `ψ̃(x) − x ∈ [0,1)`.
    pub fn psi_lift(&self, x: f64) -> f64 {
        x + self.psi_delta(frac(x), 1).1
    }

    /// Centered lift of the collapse `p`: `I → 0`, affine on `J∖I`, identity off `J`.
    fn p_centered(&self, x: f64) -> f64 {
        let a = x.abs();
        if a <= self.r_i {
            0.0
        } else if a < self.half_j {
            x.signum() * (a - self.r_i) * self.half_j / (self.half_j - self.r_i)
        } else {
            x
        }
    }

    pub fn collapse_p(&self, x: f64) -> f64 {
        frac(self.p_centered(centered(x)))
    }

    /// Lift of `p` with `p̃(x) − x ∈ (−1/2, 1/2)`.
    pub fn p_lift(&self, x: f64) -> f64 {
        let c = centered(x);
        x + self.p_centered(c) - c
    }

    /// φ = ψ∘p, exposed as a derived map only.
    pub fn phi(&self, x: f64) -> f64 {
        self.psi(self.collapse_p(x))
    }

    pub fn in_i(&self, x: f64) -> bool {
        centered(x).abs() <= self.r_i
    }

    /// `±η_τ` on `I` (angle given centered), as a lift value in `[-τ, τ]`.
    pub fn eta_tau(&self, x: f64, sign: i8) -> Result<f64> {
        let c = centered(x);
        if c.abs() > self.r_i {
            return Err(Error::OutOfRange(format!("{x} is outside I = [-{}, {}]", self.r_i, self.r_i)));
        }
        let u = c / self.r_i;
        Ok(sign as f64 * self.tau * (1.0 - u * u))
    }

    /// `±F^(σ)` applied to a bouquet point; returns the image and the lift displacement.
    pub fn f_sigma(&self, sigma: Circle, point: BouquetPoint, dir: i8) -> (BouquetPoint, (f64, f64)) {
        let a = point.angle;
        let own = point.circle;
        if own == sigma {
            let (y, d) = self.psi_delta(a, dir);
            return (BouquetPoint { circle: sigma, angle: y }, lift_delta(own, a, d));
        }
        let c = centered(a);
        if c.abs() <= self.r_i {
            let u = c / self.r_i;
            let y = dir as f64 * self.tau * (1.0 - u * u);
            let from = own.embed(c);
            let to = sigma.embed(y);
            (BouquetPoint::new(sigma, y), (to.0 - from.0, to.1 - from.1))
        } else {
            let d = self.p_centered(c) - c;
            (BouquetPoint::new(own, a + d), lift_delta(own, a, d))
        }
    }

    /// `F = (−F^(h′))∘(−F^(v′))∘F^(h)∘F^(v)`.
    pub fn f_composed(&self, point: BouquetPoint) -> (BouquetPoint, (f64, f64)) {
        let mut pt = point;
        let mut acc = (0.0, 0.0);
        for sigma in [Circle::V, Circle::H, Circle::VPrime, Circle::HPrime] {
            let (next, d) = self.f_sigma(sigma, pt, sigma.direction());
            pt = next;
            acc.0 += d.0;
            acc.1 += d.1;
        }
        (pt, acc)
    }

    pub fn step(&self, state: &mut LiftState) {
        let (pt, d) = self.f_composed(state.point);
        state.point = pt;
        state.displacement.0 += d.0;
        state.displacement.1 += d.1;
        state.steps += 1;
    }

    /// `displacement / T` after `T` steps of `F`.
    pub fn estimate_rotation(&self, start: BouquetPoint, steps: u64) -> Result<(f64, f64)> {
        if steps == 0 {
            return Err(Error::Invalid("need at least one step".into()));
        }
        let mut st = LiftState::new(start);
        for _ in 0..steps {
            self.step(&mut st);
        }
        let est = (st.displacement.0 / steps as f64, st.displacement.1 / steps as f64);
        if !est.0.is_finite() || !est.1.is_finite() {
            return Err(Error::NonFinite(format!("rotation estimate from {start:?}")));
        }
        Ok(est)
    }

    /// Rotation number of ψ from the lifted orbit of `x`.
    pub fn psi_rotation_number(&self, x: f64, steps: u64) -> f64 {
        let mut y = frac(x);
        let mut total = 0.0;
        for _ in 0..steps {
            let (y2, d) = self.psi_delta(y, 1);
            total += d;
            y = y2;
        }
        total / steps as f64
    }

    /// Stored intervals pairwise disjoint: orbit residues are distinct
    /// (exact) and the float placements are strictly ordered with gaps.
    pub fn intervals_disjoint(&self) -> bool {
        let exact = self.order.windows(2).all(|w| self.residues[w[0]] < self.residues[w[1]]);
        let n = self.order.len();
        let placed = (0..n).all(|k| {
            let end = self.sorted_start[k] + self.len[self.order[k]];
            let next = if k + 1 < n { self.sorted_start[k + 1] } else { 1.0 };
            end < next
        });
        exact && placed
    }

    /// A start in a gap of the blow-up: its ψ-orbit never meets a stored interval.
    pub fn complement_point(&self, theta: f64) -> f64 {
        let theta = frac(theta);
        frac(self.blow_up(theta) - self.half_j)
    }
}

fn lift_delta(c: Circle, a: f64, d: f64) -> (f64, f64) {
    let from = c.embed(a);
    let to = c.embed(a + d);
    (to.0 - from.0, to.1 - from.1)
}

/// Nondecreasing lift on an `n`-point grid of `[0,1)`, with `f(x+1) = f(x)+1` at 0.
pub fn monotone_on_grid(f: impl Fn(f64) -> f64, n: usize) -> bool {
    let vals: Vec<f64> = (0..=n).map(|i| f(i as f64 / n as f64)).collect();
    let tol = 1e-12;
    vals.windows(2).all(|w| w[1] >= w[0] - tol) && (vals[n] - vals[0] - 1.0).abs() < 1e-9
}

/// Radical inverse in `base`.
pub fn halton(mut i: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

/// Quasi-random bouquet starts: Halton (bases 2, 3) with a seeded rotation.
pub fn quasi_random_starts(count: usize, seed: u64) -> Vec<BouquetPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s0: f64 = rng.gen();
    let s1: f64 = rng.gen();
    (1..=count as u64)
        .map(|i| {
            let u = frac(halton(i, 2) + s0);
            let w = frac(halton(i, 3) + s1);
            let circle = Circle::ALL[((w * 4.0) as usize).min(3)];
            BouquetPoint::new(circle, u)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitEstimate {
    pub orbit_id: usize,
    pub start: BouquetPoint,
    pub estimate: (f64, f64),
    pub inside: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnsembleReport {
    pub steps: u64,
    pub epsilon: f64,
    pub seed: u64,
    pub orbits: Vec<OrbitEstimate>,
    pub fraction: f64,
}

/// Round to the `10⁻¹²` grid as an exact point.
pub fn rounded_point(v: (f64, f64)) -> HPoint {
    let s = ROUND_SCALE as f64;
    HPoint::new((v.0 * s).round() as i128, (v.1 * s).round() as i128, ROUND_SCALE)
}

/// Closed `ε`-dilation test against an exact polygon.
pub fn within_dilated(hull: &HullPolygon, v: (f64, f64), epsilon: f64) -> bool {
    let p = rounded_point(v);
    if hull.contains(&p) {
        return true;
    }
    let e = num_rational::BigRational::from_float(epsilon).expect("finite epsilon");
    hull.dist2(&p) <= &e * &e
}

/// Run `samples` orbits for `steps` and test each estimate against `hull` dilated by `epsilon`.
pub fn ensemble_containment(
    map: &DenjoyMap,
    hull: &HullPolygon,
    samples: usize,
    steps: u64,
    epsilon: f64,
    seed: u64,
) -> Result<EnsembleReport> {
    if steps < 1000 {
        return Err(Error::Invalid(format!("need at least 1000 steps, got {steps}")));
    }
    if !(epsilon.is_finite() && epsilon >= 0.0) {
        return Err(Error::Invalid(format!("bad epsilon {epsilon}")));
    }
    let starts = quasi_random_starts(samples, seed);
    let run = |(i, s): (usize, &BouquetPoint)| -> Result<OrbitEstimate> {
        let estimate = map.estimate_rotation(*s, steps)?;
        Ok(OrbitEstimate { orbit_id: i, start: *s, estimate, inside: within_dilated(hull, estimate, epsilon) })
    };
    #[cfg(feature = "parallel")]
    let orbits: Result<Vec<OrbitEstimate>> = {
        use rayon::prelude::*;
        starts.par_iter().enumerate().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let orbits: Result<Vec<OrbitEstimate>> = starts.iter().enumerate().map(run).collect();
    let orbits = orbits?;
    let inside = orbits.iter().filter(|o| o.inside).count();
    let fraction = if orbits.is_empty() { 1.0 } else { inside as f64 / orbits.len() as f64 };
    Ok(EnsembleReport { steps, epsilon, seed, orbits, fraction })
}

/// Closest family point `A_{m,n}` (`m, n ≤ max_index`, first quadrant up to sign) to any estimate.
pub fn vertex_search(rho: &RhoParam, estimates: &[(f64, f64)], max_index: u64) -> Option<(u64, u64, f64)> {
    let idx: Vec<u64> = (0..=max_index).filter(|&m| m == 0 || rho.member_unchecked(m)).collect();
    let mut best: Option<(u64, u64, f64)> = None;
    for &m in &idx {
        for &n in &idx {
            if m == 0 && n == 0 {
                continue;
            }
            let w = (m + n + 1) as f64;
            let (ax, ay) = (rho.ceil_mul_unchecked(m) as f64 / w, rho.ceil_mul_unchecked(n) as f64 / w);
            for e in estimates {
                let d = (e.0.abs() - ax).hypot(e.1.abs() - ay);
                if best.is_none_or(|b| d < b.2) {
                    best = Some((m, n, d));
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{family_hull, Quadrants};

    fn rp(s: &str) -> RhoParam {
        RhoParam::parse(s, 15).unwrap()
    }

    #[test]
    fn j_symmetric_and_tau() {
        let m = build_denjoy(&rp("0.93+pi*1e-5"), 200).unwrap();
        let j = m.interval(0).unwrap();
        assert!((frac(j.start + j.len / 2.0 + 0.5) - 0.5).abs() < 1e-15);
        assert!((m.psi_inv(0.0) - (1.0 - m.tau())).abs() < 1e-12);
        let j1 = m.interval(1).unwrap();
        assert!((m.tau() - (j1.start + j1.len / 2.0)).abs() < 1e-12);
    }

    #[test]
    fn psi_maps_intervals_affinely() {
        let m = build_denjoy(&rp("0.645+pi*1e-5"), 50).unwrap();
        for n in -49..49 {
            let a = m.interval(n).unwrap();
            let b = m.interval(n + 1).unwrap();
            for t in [0.1, 0.5, 0.9] {
                let y = m.psi(a.start + t * a.len);
                assert!((frac(y - b.start) - t * b.len).abs() < 1e-12, "n={n}");
            }
        }
    }

    #[test]
    fn rotation_number_and_monotone() {
        let r = rp("0.31+pi*1e-5");
        let m = build_denjoy(&r, 1000).unwrap();
        assert!(m.intervals_disjoint());
        let est = m.psi_rotation_number(0.123, 100_000);
        assert!((est - r.to_f64()).abs() < 1e-3);
        assert!(monotone_on_grid(|x| m.psi_lift(x), 1000));
        assert!(monotone_on_grid(|x| m.p_lift(x), 1000));
    }

    #[test]
    fn collapse_and_eta() {
        let m = build_denjoy(&rp("0.7+sqrt(2)*1e-3"), 100).unwrap();
        assert_eq!(m.collapse_p(0.0), 0.0);
        let r = m.i_half_width();
        assert!(m.eta_tau(r, 1).unwrap().abs() < 1e-15);
        assert!(m.eta_tau(-r, -1).unwrap().abs() < 1e-15);
        assert_eq!(m.eta_tau(0.0, 1).unwrap(), m.tau());
        assert!(m.eta_tau(m.j_half_width(), 1).is_err());
        assert_eq!(m.collapse_p(0.5), 0.5);
    }

    #[test]
    fn f_sigma_cases() {
        let m = build_denjoy(&rp("0.93+pi*1e-5"), 100).unwrap();
        let x = BouquetPoint::new(Circle::H, 0.4);
        let (y, _) = m.f_sigma(Circle::H, x, 1);
        assert_eq!(y, BouquetPoint::new(Circle::H, m.psi(0.4)));
        let w = BouquetPoint::new(Circle::V, 0.0);
        assert_eq!(m.f_sigma(Circle::H, w, 1).0, BouquetPoint::new(Circle::H, m.tau()));
        assert_eq!(m.f_sigma(Circle::HPrime, w, -1).0, BouquetPoint::new(Circle::HPrime, -m.tau()));
        let (z, d) = m.f_sigma(Circle::H, BouquetPoint::new(Circle::V, 0.4), 1);
        assert_eq!(z, BouquetPoint::new(Circle::V, 0.4));
        assert_eq!(d, (0.0, 0.0));
        // case boundary continuity at the edge of I
        let e = m.i_half_width();
        let (a, _) = m.f_sigma(Circle::H, BouquetPoint::new(Circle::V, e), 1);
        let (b, _) = m.f_sigma(Circle::H, BouquetPoint::new(Circle::V, e * (1.0 + 1e-12)), 1);
        assert!(a.angle.min(1.0 - a.angle) < 1e-9 && b.angle.min(1.0 - b.angle) < 1e-9);
    }

    #[test]
    fn complement_orbits_stay_on_their_circle() {
        let r = rp("0.93+pi*1e-5");
        let m = build_denjoy(&r, 1000).unwrap();
        let y = m.complement_point(0.5 + std::f64::consts::SQRT_2 * 1e-3);
        let rf = r.to_f64();
        let expect = [(rf, 0.0), (-rf, 0.0), (0.0, rf), (0.0, -rf)];
        for (c, e) in Circle::ALL.iter().zip(expect) {
            let est = m.estimate_rotation(BouquetPoint::new(*c, y), 10_000).unwrap();
            assert!((est.0 - e.0).abs() < 1e-2 && (est.1 - e.1).abs() < 1e-2, "{c}: {est:?}");
        }
    }

    #[test]
    fn ensemble_inside_hull() {
        let r = rp("0.93+pi*1e-5");
        let m = build_denjoy(&r, 1000).unwrap();
        let hull = family_hull(&r, 1000, Quadrants::Four).unwrap();
        let rep = ensemble_containment(&m, &hull.polygon, 40, 5000, 0.05, 7).unwrap();
        assert_eq!(rep.fraction, 1.0);
        let again = ensemble_containment(&m, &hull.polygon, 40, 5000, 0.05, 7).unwrap();
        let a: Vec<_> = rep.orbits.iter().map(|o| o.estimate).collect();
        let b: Vec<_> = again.orbits.iter().map(|o| o.estimate).collect();
        assert_eq!(a, b);
        let (_, _, dist) = vertex_search(&r, &a, 20).unwrap();
        assert!(dist < 0.05);
    }

    #[test]
    fn halton_prefix() {
        assert_eq!(halton(1, 2), 0.5);
        assert_eq!(halton(3, 2), 0.75);
        assert!((halton(2, 3) - 2.0 / 3.0).abs() < 1e-15);
    }
}
