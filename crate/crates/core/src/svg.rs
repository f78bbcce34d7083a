//! Static 1000×1000 SVG figures: hull plots and roundness-scan curves.

use std::fmt::Write;

pub const SIZE: f64 = 1000.0;
const MARGIN: f64 = 60.0;

/// Affine map from a data box to the viewport, y pointing up.
#[derive(Clone, Copy, Debug)]
struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) / (self.x1 - self.x0) * (SIZE - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        SIZE - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (SIZE - 2.0 * MARGIN)
    }

    fn pt(&self, p: (f64, f64)) -> String {
        format!("{:.2},{:.2}", self.px(p.0), self.py(p.1))
    }
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(out, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn axes(out: &mut String, f: &Frame, ticks_x: &[f64], ticks_y: &[f64]) {
    let (ax, ay) = (0.0f64.clamp(f.x0, f.x1), 0.0f64.clamp(f.y0, f.y1));
    let _ = writeln!(
        out,
        r##"<g stroke="#444" stroke-width="1"><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/></g>"##,
        f.px(f.x0),
        f.py(ay),
        f.px(f.x1),
        f.py(ay),
        f.px(ax),
        f.py(f.y0),
        f.px(ax),
        f.py(f.y1)
    );
    let _ = writeln!(out, r##"<g font-family="sans-serif" font-size="14" fill="#222">"##);
    for &t in ticks_x {
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{t:.3}</text>"#, f.px(t), f.py(ay) + 20.0);
    }
    for &t in ticks_y {
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{t:.3}</text>"#, f.px(ax) - 6.0, f.py(t) + 5.0);
    }
    out.push_str("</g>\n");
}

fn polygon(out: &mut String, f: &Frame, pts: &[(f64, f64)], style: &str) {
    let s: Vec<String> = pts.iter().map(|&p| f.pt(p)).collect();
    let _ = writeln!(out, r#"<polygon points="{}" {style}/>"#, s.join(" "));
}

/// Data for a hull plot; everything in rotation-vector units.
#[derive(Clone, Debug, Default)]
pub struct HullFigure {
    pub title: String,
    pub rho: f64,
    /// Counterclockwise hull vertices.
    pub hull: Vec<(f64, f64)>,
    /// Generating points to scatter (may be a subsample).
    pub points: Vec<(f64, f64)>,
    /// Best diagonal value; draws `x + y = 2d` in every drawn quadrant.
    pub diagonal: Option<f64>,
    pub pentagon: Option<Vec<(f64, f64)>>,
    pub four_quadrants: bool,
}

pub fn hull_svg(fig: &HullFigure) -> String {
    let r = fig.rho;
    let f = if fig.four_quadrants {
        Frame { x0: -1.1 * r, x1: 1.1 * r, y0: -1.1 * r, y1: 1.1 * r }
    } else {
        Frame { x0: -0.05 * r, x1: 1.1 * r, y0: -0.05 * r, y1: 1.1 * r }
    };
    let mut out = String::new();
    header(&mut out, &fig.title);
    let ticks: Vec<f64> = if fig.four_quadrants { vec![-r, r] } else { vec![r] };
    axes(&mut out, &f, &ticks, &ticks);
    let rad = (f.px(r) - f.px(0.0)).abs();
    let _ = writeln!(
        out,
        r##"<circle cx="{:.2}" cy="{:.2}" r="{rad:.2}" fill="none" stroke="#999" stroke-dasharray="6 4"/>"##,
        f.px(0.0),
        f.py(0.0)
    );
    polygon(&mut out, &f, &fig.hull, r##"fill="#cfe3f7" stroke="#1f5fa8" stroke-width="2""##);
    if let Some(p) = &fig.pentagon {
        polygon(&mut out, &f, p, r##"fill="none" stroke="#2a8a3a" stroke-width="1.5" stroke-dasharray="3 3""##);
    }
    if let Some(d) = fig.diagonal {
        let signs: &[(f64, f64)] = if fig.four_quadrants { &[(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)] } else { &[(1.0, 1.0)] };
        for &(sx, sy) in signs {
            let (a, b) = ((sx * 2.0 * d, 0.0), (0.0, sy * 2.0 * d));
            let _ = writeln!(
                out,
                r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#888" stroke-width="1.5"/>"##,
                f.px(a.0),
                f.py(a.1),
                f.px(b.0),
                f.py(b.1)
            );
            let _ = writeln!(
                out,
                r##"<circle cx="{:.2}" cy="{:.2}" r="5" fill="none" stroke="#c0392b" stroke-width="2"/>"##,
                f.px(sx * d),
                f.py(sy * d)
            );
        }
    }
    out.push_str("<g fill=\"#c0392b\">\n");
    for &p in &fig.points {
        let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="1.6"/>"#, f.px(p.0), f.py(p.1));
    }
    out.push_str("</g>\n<g fill=\"#1f5fa8\">\n");
    for &p in &fig.hull {
        let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="3"/>"#, f.px(p.0), f.py(p.1));
    }
    out.push_str("</g>\n</svg>\n");
    out
}

/// The first-quadrant pentagon `(0,0), (ρ,0), .., (0,ρ)` as given, or the
/// polygon glued from its four reflections.
pub fn pentagon_outline(pentagon: &[(f64, f64)], four_quadrants: bool) -> Vec<(f64, f64)> {
    if !four_quadrants || pentagon.len() < 2 {
        return pentagon.to_vec();
    }
    let q1 = &pentagon[1..];
    let mut v: Vec<(f64, f64)> = Vec::new();
    for (sx, sy, rev) in [(1.0, 1.0, false), (-1.0, 1.0, true), (-1.0, -1.0, false), (1.0, -1.0, true)] {
        let mut part: Vec<(f64, f64)> = q1.iter().map(|&(x, y)| (sx * x, sy * y)).collect();
        if rev {
            part.reverse();
        }
        for p in part {
            if v.last() != Some(&p) {
                v.push(p);
            }
        }
    }
    if v.len() > 1 && v.first() == v.last() {
        v.pop();
    }
    v
}

/// One column of a scan plot; `None` values break the curve.
#[derive(Clone, Copy, Debug)]
pub struct ScanPoint {
    pub rho: f64,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub estimate: Option<f64>,
}

/// Lower (red) and upper (blue) roundness curves against ρ, estimates as dots.
pub fn scan_svg(title: &str, pts: &[ScanPoint]) -> String {
    let vals: Vec<f64> = pts.iter().flat_map(|p| [p.lower, p.upper, p.estimate]).flatten().collect();
    let (mut y0, mut y1) = vals.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    if !y0.is_finite() {
        (y0, y1) = (0.0, 1.0);
    }
    if y1 - y0 < 1e-9 {
        y1 = y0 + 1e-3;
    }
    let pad = 0.05 * (y1 - y0);
    let (mut x0, mut x1) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.rho), b.max(p.rho)));
    if !x0.is_finite() {
        (x0, x1) = (0.0, 1.0);
    }
    if x1 - x0 < 1e-12 {
        x1 = x0 + 1e-3;
    }
    let f = Frame { x0, x1, y0: y0 - pad, y1: y1 + pad };
    let mut out = String::new();
    header(&mut out, title);
    let _ = writeln!(
        out,
        r##"<rect x="{MARGIN}" y="{MARGIN}" width="{w}" height="{w}" fill="none" stroke="#444"/>"##,
        w = SIZE - 2.0 * MARGIN
    );
    let _ = writeln!(out, r##"<g font-family="sans-serif" font-size="14" fill="#222">"##);
    for i in 0..=4 {
        let x = x0 + (x1 - x0) * i as f64 / 4.0;
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{x:.3}</text>"#, f.px(x), SIZE - MARGIN + 22.0);
        let y = f.y0 + (f.y1 - f.y0) * i as f64 / 4.0;
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{y:.3}</text>"#, MARGIN - 6.0, f.py(y) + 5.0);
    }
    out.push_str("</g>\n");
    for (pick, colour) in [(0usize, "#c0392b"), (1, "#1f5fa8")] {
        let mut run: Vec<String> = Vec::new();
        let flush = |run: &mut Vec<String>, out: &mut String| {
            if run.len() > 1 {
                let _ = writeln!(out, r#"<polyline points="{}" fill="none" stroke="{colour}" stroke-width="1.5"/>"#, run.join(" "));
            }
            run.clear();
        };
        for p in pts {
            let v = if pick == 0 { p.lower } else { p.upper };
            match v {
                Some(v) => run.push(f.pt((p.rho, v))),
                None => flush(&mut run, &mut out),
            }
        }
        flush(&mut run, &mut out);
    }
    out.push_str("<g fill=\"#2a8a3a\">\n");
    for p in pts {
        if let Some(e) = p.estimate {
            let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="1.8"/>"#, f.px(p.rho), f.py(e));
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}
