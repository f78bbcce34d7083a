mod emit;

use std::collections::HashSet;
use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::builder::TypedValueParser;
use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::json;

use rotset_core::denjoy::{build_denjoy, ensemble_containment, DEFAULT_WANDER};
use rotset_core::diagonal::{best_diagonal, extremality, j_rho_t, k_rho, u_seq, v_seq};
use rotset_core::expr::parse_linear;
use rotset_core::geometry::{
    claim_equivalence_check, family_hull, gen_family, FamilyHull, HPoint, PointLabel, Quadrants,
};
use rotset_core::index_sets::m_seq;
use rotset_core::rho::DEFAULT_PRECISION;
use rotset_core::roundness::{self, bounding_pentagon, iso_decimal, over_pi_decimal, RoundnessReport, ScanConfig};
use rotset_core::ser::Rat;
use rotset_core::svg::{hull_svg, pentagon_outline, scan_svg, HullFigure, ScanPoint};
use rotset_core::{Error, RhoParam};

use emit::{csv_doc, deliver, json_doc, svg_doc, Format, Header};

/// Largest bound for which `hull --points all` materializes the family.
const ALL_POINTS_LIMIT: u64 = 1000;
/// Bound of the scattered points in hull figures.
const FIGURE_POINTS_BOUND: u64 = 150;

#[derive(Parser, Debug)]
#[command(name = "rotset", version, about = "Exact rotation sets of a family of torus maps")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct RhoArgs {
    /// Parameter expression, e.g. `0.93+pi*1e-5` or `7/10`.
    #[arg(long)]
    rho: String,
    /// Decimal places kept for irrational expressions.
    #[arg(long, env = "ROTSET_PRECISION", default_value_t = DEFAULT_PRECISION)]
    precision: u32,
    /// Override the uncertainty radius of the surrogate (a rational expression).
    #[arg(long)]
    uncertainty: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct OutArgs {
    #[arg(long)]
    emit: Option<Format>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum PointSet {
    Extreme,
    All,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// The sequence α_m and membership in I.
    Alpha {
        #[command(flatten)]
        rho: RhoArgs,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Truncated hull of the point family.
    Hull {
        #[command(flatten)]
        rho: RhoArgs,
        #[arg(long, default_value_t = 1000)]
        max_index: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::builder::PossibleValuesParser::new(["1", "4"]).map(|s| s.parse::<u8>().unwrap()))]
        quadrants: u8,
        /// Rows of the CSV output.
        #[arg(long, value_enum, default_value_t = PointSet::Extreme)]
        points: PointSet,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Best diagonal point and its extremality.
    Classify {
        #[command(flatten)]
        rho: RhoArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Roundness bounds, ISO data and the optional hull estimate.
    Roundness {
        #[command(flatten)]
        rho: RhoArgs,
        #[arg(long)]
        max_index: Option<u64>,
        /// Places in the decimal renderings.
        #[arg(long, default_value_t = 12)]
        digits: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Roundness over a grid of parameters.
    Scan {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        step: String,
        /// Coefficient of π added to each grid point; 0 keeps them rational.
        #[arg(long, default_value = "1e-9")]
        jitter: String,
        #[arg(long)]
        max_index: Option<u64>,
        #[arg(long, env = "ROTSET_PRECISION", default_value_t = DEFAULT_PRECISION)]
        precision: u32,
        #[arg(long, default_value_t = 10.0)]
        jump_factor: f64,
        #[arg(long, default_value_t = 12)]
        digits: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Rotation vectors of the bouquet model.
    Simulate {
        #[command(flatten)]
        rho: RhoArgs,
        #[arg(long, default_value_t = 10_000)]
        steps: u64,
        #[arg(long, default_value_t = 100)]
        orbits: usize,
        #[arg(long, default_value_t = 0.05)]
        epsilon: f64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_WANDER)]
        wander: u64,
        /// Truncation of the four-quadrant hull used for containment.
        #[arg(long, default_value_t = 1000)]
        max_index: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Certify the surrogate on a window; exit 2 on failure.
    Certify {
        #[command(flatten)]
        rho: RhoArgs,
        #[arg(long, default_value_t = 100_000)]
        max_index: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Difference points against the four-quadrant hull.
    ClaimCheck {
        #[command(flatten)]
        rho: RhoArgs,
        #[arg(long, default_value_t = 81)]
        quadrant_bound: u64,
        #[arg(long, default_value_t = 20)]
        difference_index: u64,
        #[command(flatten)]
        out: OutArgs,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let uncertified = matches!(e.downcast_ref::<Error>(), Some(Error::Uncertified(_)));
            ExitCode::from(if uncertified { 2 } else { 1 })
        }
    }
}

fn rational_arg(name: &str, src: &str) -> Result<BigRational> {
    let lin = parse_linear(src).with_context(|| format!("--{name}"))?;
    if !lin.is_rational() {
        bail!("--{name} must be rational, got {src}");
    }
    Ok(lin.rational)
}

/// Parses ρ, certifies on `window` (default window when absent) and applies
/// an uncertainty override.
fn resolve(a: &RhoArgs, window: Option<u64>) -> Result<RhoParam> {
    let base = match window {
        Some(w) => RhoParam::parse_with_window(&a.rho, a.precision, w)?,
        None => RhoParam::parse(&a.rho, a.precision)?,
    };
    match &a.uncertainty {
        None => Ok(base),
        Some(u) => {
            let u = rational_arg("uncertainty", u)?;
            Ok(RhoParam::with_window(base.numer().clone(), base.denom().clone(), u, base.max_safe_index())?)
        }
    }
}

fn rho_header(command: &str, a: &RhoArgs, rho: &RhoParam) -> Header {
    let mut h = Header::new(command);
    h.push("rho_expr", &a.rho);
    h.push("precision", a.precision);
    h.push("rho_num", rho.numer().to_string());
    h.push("rho_den", rho.denom().to_string());
    h.push("uncertainty_num", rho.uncertainty().numer().to_string());
    h.push("uncertainty_den", rho.uncertainty().denom().to_string());
    h.push("window", rho.max_safe_index());
    h.push("certified", rho.is_certified());
    h
}

fn nd(r: &BigRational) -> [String; 2] {
    [r.numer().to_string(), r.denom().to_string()]
}

fn opt_nd(r: Option<&BigRational>) -> [String; 2] {
    r.map(nd).unwrap_or_default()
}

fn f(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn finish(text: String, out: &OutArgs) -> Result<u8> {
    deliver(&text, out.out.as_deref())?;
    Ok(0)
}

fn run(cmd: Cmd) -> Result<u8> {
    match cmd {
        Cmd::Alpha { rho, count, out } => alpha(&rho, count, &out),
        Cmd::Hull { rho, max_index, quadrants, points, out } => hull(&rho, max_index, quadrants, points, &out),
        Cmd::Classify { rho, out } => classify(&rho, &out),
        Cmd::Roundness { rho, max_index, digits, out } => roundness_cmd(&rho, max_index, digits, &out),
        Cmd::Scan { from, to, step, jitter, max_index, precision, jump_factor, digits, out } => {
            let cfg = ScanConfig {
                from: rational_arg("from", &from)?,
                to: rational_arg("to", &to)?,
                step: rational_arg("step", &step)?,
                index_bound: max_index,
                jitter: rational_arg("jitter", &jitter)?,
                precision,
                jump_factor,
            };
            scan_cmd(&cfg, [&from, &to, &step, &jitter], digits, &out)
        }
        Cmd::Simulate { rho, steps, orbits, epsilon, seed, wander, max_index, out } => {
            simulate(&rho, steps, orbits, epsilon, seed, wander, max_index, &out)
        }
        Cmd::Certify { rho, max_index, out } => certify(&rho, max_index, &out),
        Cmd::ClaimCheck { rho, quadrant_bound, difference_index, out } => {
            claim_check(&rho, quadrant_bound, difference_index, &out)
        }
    }
}

fn alpha(a: &RhoArgs, count: u64, out: &OutArgs) -> Result<u8> {
    let rho = resolve(a, Some(count))?;
    rho.require_certified()?;
    let mut h = rho_header("alpha", a, &rho);
    h.push("count", count);
    let rows: Vec<(u64, BigRational, bool)> =
        (1..=count).map(|m| Ok((m, rho.alpha(m)?, rho.member(m)?))).collect::<rotset_core::Result<_>>()?;
    let text = match out.emit.unwrap_or(Format::Csv) {
        Format::Csv => {
            let rows: Vec<Vec<String>> = rows
                .iter()
                .map(|(m, al, mem)| {
                    let [n, d] = nd(al);
                    vec![m.to_string(), n, d, mem.to_string()]
                })
                .collect();
            csv_doc(&h, &["m", "alpha_num", "alpha_den", "member_i"], &rows)?
        }
        Format::Json => {
            let v: Vec<_> = rows.iter().map(|(m, al, mem)| json!({"m": m, "alpha": Rat(al), "member_i": mem})).collect();
            json_doc(&h, v)?
        }
        Format::Svg => bail!("alpha supports csv and json"),
    };
    finish(text, out)
}

fn label_cells(l: &PointLabel) -> [String; 4] {
    match l {
        PointLabel::Origin => [String::new(), String::new(), "0".into(), "0".into()],
        PointLabel::Axis { sign_x, sign_y } => [String::new(), String::new(), sign_x.to_string(), sign_y.to_string()],
        PointLabel::Lattice(lp) => [lp.m.to_string(), lp.n.to_string(), lp.sign_x.to_string(), lp.sign_y.to_string()],
    }
}

fn point_row(l: &PointLabel, p: &HPoint, extreme: bool) -> Vec<String> {
    let mut row: Vec<String> = label_cells(l).into();
    row.extend(nd(&p.x()));
    row.extend(nd(&p.y()));
    row.push(extreme.to_string());
    row
}

fn label_json(l: &PointLabel, p: &HPoint) -> serde_json::Value {
    let kind = match l {
        PointLabel::Origin => "origin",
        PointLabel::Axis { .. } => "axis",
        PointLabel::Lattice(_) => "lattice",
    };
    let [m, n, sx, sy] = label_cells(l);
    let num = |s: String| s.parse::<i64>().ok();
    json!({"kind": kind, "m": num(m), "n": num(n), "sign_x": num(sx), "sign_y": num(sy), "x": Rat(&p.x()), "y": Rat(&p.y())})
}

fn hull(a: &RhoArgs, bound: u64, quadrants: u8, points: PointSet, out: &OutArgs) -> Result<u8> {
    let rho = resolve(a, Some(bound))?;
    rho.require_certified()?;
    let q = if quadrants == 4 { Quadrants::Four } else { Quadrants::One };
    let fh: FamilyHull = family_hull(&rho, bound, q)?;
    let d = best_diagonal(&rho)?.d;
    let mut h = rho_header("hull", a, &rho);
    h.push("max_index", bound);
    h.push("quadrants", quadrants);
    let verts = || fh.labels.iter().zip(&fh.polygon.vertices);
    let text = match out.emit.unwrap_or(Format::Json) {
        Format::Csv => {
            h.push("points", if points == PointSet::All { "all" } else { "extreme" });
            let cols = ["m", "n", "sign_x", "sign_y", "x_num", "x_den", "y_num", "y_den", "is_extreme"];
            let rows: Vec<Vec<String>> = match points {
                PointSet::Extreme => verts().map(|(l, p)| point_row(l, p, true)).collect(),
                PointSet::All => {
                    if bound > ALL_POINTS_LIMIT {
                        bail!("--points all needs --max-index <= {ALL_POINTS_LIMIT}");
                    }
                    let vs: HashSet<HPoint> = fh.polygon.vertices.iter().copied().collect();
                    gen_family(&rho, bound, q)?.labelled().iter().map(|(l, p)| point_row(l, p, vs.contains(p))).collect()
                }
            };
            csv_doc(&h, &cols, &rows)?
        }
        Format::Json => {
            let pent: Vec<_> = bounding_pentagon(&rho)?.iter().map(|(x, y)| json!([Rat(x), Rat(y)])).collect();
            let v: Vec<_> = verts().map(|(l, p)| label_json(l, p)).collect();
            json_doc(
                &h,
                json!({"index_bound": bound, "quadrants": q, "area": Rat(fh.area()), "d": Rat(&d), "vertices": v, "bounding_pentagon": pent}),
            )?
        }
        Format::Svg => {
            let fam = gen_family(&rho, bound.min(FIGURE_POINTS_BOUND), q)?;
            let fig = HullFigure {
                title: format!("rho = {} (M = {bound})", a.rho),
                rho: rho.to_f64(),
                hull: fh.polygon.vertices.iter().map(|p| p.to_f64()).collect(),
                points: fam.points.iter().map(|lp| lp.point.to_f64()).collect(),
                diagonal: Some(f(&d)),
                pentagon: Some(pentagon_outline(
                    &bounding_pentagon(&rho)?.iter().map(|(x, y)| (f(x), f(y))).collect::<Vec<_>>(),
                    q == Quadrants::Four,
                )),
                four_quadrants: q == Quadrants::Four,
            };
            svg_doc(&h, hull_svg(&fig))
        }
    };
    finish(text, out)
}

fn classify(a: &RhoArgs, out: &OutArgs) -> Result<u8> {
    let rho = resolve(a, None)?;
    let rep = extremality(&rho)?;
    let k = k_rho(&rho).ok();
    let j = j_rho_t(&rho).ok();
    let h = rho_header("classify", a, &rho);
    let text = match out.emit.unwrap_or(Format::Json) {
        Format::Json => json_doc(&h, json!({"report": rep, "k_rho": k, "j_rho_t": j}))?,
        Format::Csv => {
            let mut rows = Vec::new();
            if let Some(k) = k {
                for i in 0..=k + 20 {
                    if let Ok(u) = u_seq(&rho, i) {
                        rows.push(vec!["u".into(), i.to_string(), rotset_core::index_sets::n_high(&rho, i).to_string(), u.to_string()]);
                    }
                }
            }
            if let Some(j) = j {
                for i in 1..=j + 20 {
                    if let Ok(v) = v_seq(&rho, i) {
                        rows.push(vec!["v".into(), i.to_string(), m_seq(&rho, i).to_string(), v.to_string()]);
                    }
                }
            }
            csv_doc(&h, &["sequence", "index", "term", "value"], &rows)?
        }
        Format::Svg => bail!("classify supports json and csv"),
    };
    finish(text, out)
}

const SCAN_COLUMNS: [&str; 17] = [
    "rho_expr",
    "rho_num",
    "rho_den",
    "lower_factor_num",
    "lower_factor_den",
    "upper_factor_num",
    "upper_factor_den",
    "estimate_num",
    "estimate_den",
    "iso_decimal",
    "iso_digits",
    "d_num",
    "d_den",
    "tag",
    "jump_candidate",
    "status",
    "index_bound",
];

fn report_row(expr: &str, rho: &RhoParam, rep: &RoundnessReport, digits: u32, jump: bool) -> Vec<String> {
    let mut row = vec![expr.to_string(), rho.numer().to_string(), rho.denom().to_string()];
    row.extend(nd(&rep.lower));
    row.extend(nd(&rep.upper));
    row.extend(opt_nd(rep.estimate.as_ref()));
    row.push(iso_decimal(&rep.iso_factor, digits));
    row.push(digits.to_string());
    row.extend(nd(&rep.d));
    row.push(rep.tag.to_string());
    row.push(jump.to_string());
    row.push("ok".into());
    row.push(rep.index_bound.map(|b| b.to_string()).unwrap_or_default());
    row
}

fn roundness_cmd(a: &RhoArgs, bound: Option<u64>, digits: u32, out: &OutArgs) -> Result<u8> {
    let rho = resolve(a, bound)?;
    let rep = roundness::report(&rho, bound)?;
    let mut h = rho_header("roundness", a, &rho);
    h.push("max_index", bound);
    h.push("digits", digits);
    let text = match out.emit.unwrap_or(Format::Json) {
        Format::Json => {
            let decimals = json!({
                "precision": digits,
                "lower_over_pi": over_pi_decimal(&rep.lower, digits),
                "upper_over_pi": over_pi_decimal(&rep.upper, digits),
                "estimate_over_pi": rep.estimate.as_ref().map(|e| over_pi_decimal(e, digits)),
                "iso": iso_decimal(&rep.iso_factor, digits),
            });
            json_doc(&h, json!({"report": rep, "decimals": decimals}))?
        }
        Format::Csv => csv_doc(&h, &SCAN_COLUMNS, &[report_row(&a.rho, &rho, &rep, digits, false)])?,
        Format::Svg => bail!("roundness supports json and csv; use scan for plots"),
    };
    finish(text, out)
}

fn scan_cmd(cfg: &ScanConfig, raw: [&String; 4], digits: u32, out: &OutArgs) -> Result<u8> {
    let rows = roundness::scan(cfg)?;
    let mut h = Header::new("scan");
    for (k, v) in ["from", "to", "step", "jitter"].iter().zip(raw) {
        h.push(k, v);
    }
    h.push("max_index", cfg.index_bound);
    h.push("precision", cfg.precision);
    h.push("jump_factor", cfg.jump_factor);
    h.push("digits", digits);
    h.push("points", rows.len());
    h.push("failed", rows.iter().filter(|r| r.outcome.is_err()).count());
    let text = match out.emit.unwrap_or(Format::Csv) {
        Format::Csv => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| match &r.outcome {
                    Ok((rho, rep)) => report_row(&r.rho_expr, rho, rep, digits, r.jump_candidate),
                    Err(e) => {
                        let mut row = vec![String::new(); SCAN_COLUMNS.len()];
                        row[0] = r.rho_expr.clone();
                        row[14] = r.jump_candidate.to_string();
                        row[15] = e.to_string();
                        row
                    }
                })
                .collect();
            csv_doc(&h, &SCAN_COLUMNS, &table)?
        }
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|r| match &r.outcome {
                    Ok((rho, rep)) => json!({"rho_expr": r.rho_expr, "rho": rho, "report": rep, "jump_candidate": r.jump_candidate, "status": "ok"}),
                    Err(e) => json!({"rho_expr": r.rho_expr, "jump_candidate": r.jump_candidate, "status": e.to_string()}),
                })
                .collect();
            json_doc(&h, v)?
        }
        Format::Svg => {
            let pts: Vec<ScanPoint> = rows
                .iter()
                .map(|r| {
                    // failed rows carry no abscissa; a NaN one only breaks the curves
                    let (rho, rep) = match &r.outcome {
                        Ok((rho, rep)) => (rho.to_f64(), Some(rep)),
                        Err(_) => (f64::NAN, None),
                    };
                    ScanPoint {
                        rho,
                        lower: rep.map(|p| f(&p.lower) / PI),
                        upper: rep.map(|p| f(&p.upper) / PI),
                        estimate: rep.and_then(|p| p.estimate.as_ref()).map(|e| f(e) / PI),
                    }
                })
                .collect();
            svg_doc(&h, scan_svg("roundness factors over pi: lower (red), upper (blue)", &pts))
        }
    };
    finish(text, out)
}

#[allow(clippy::too_many_arguments)]
fn simulate(
    a: &RhoArgs,
    steps: u64,
    orbits: usize,
    epsilon: f64,
    seed: u64,
    wander: u64,
    bound: u64,
    out: &OutArgs,
) -> Result<u8> {
    let rho = resolve(a, None)?;
    if bound > rho.max_safe_index() {
        bail!("--max-index {bound} exceeds the certified window {}", rho.max_safe_index());
    }
    let map = build_denjoy(&rho, wander)?;
    let fh = family_hull(&rho, bound, Quadrants::Four)?;
    let rep = ensemble_containment(&map, &fh.polygon, orbits, steps, epsilon, seed)?;
    let mut h = rho_header("simulate", a, &rho);
    h.push("steps", steps);
    h.push("orbits", orbits);
    h.push("epsilon", epsilon);
    h.push("seed", seed);
    h.push("wander", wander);
    h.push("max_index", bound);
    h.push("inside", rep.orbits.iter().filter(|o| o.inside).count());
    h.push("fraction", rep.fraction);
    let text = match out.emit.unwrap_or(Format::Csv) {
        Format::Csv => {
            let rows: Vec<Vec<String>> = rep
                .orbits
                .iter()
                .map(|o| {
                    vec![
                        o.orbit_id.to_string(),
                        o.start.circle.to_string(),
                        format!("{:.15}", o.start.angle),
                        format!("{:.12}", o.estimate.0),
                        format!("{:.12}", o.estimate.1),
                        o.inside.to_string(),
                    ]
                })
                .collect();
            csv_doc(&h, &["orbit_id", "start_circle", "start_angle", "est_x", "est_y", "inside_hull"], &rows)?
        }
        Format::Json => json_doc(&h, &rep)?,
        Format::Svg => {
            let fig = HullFigure {
                title: format!("rho = {}: {} orbits, T = {steps}", a.rho, rep.orbits.len()),
                rho: rho.to_f64(),
                hull: fh.polygon.vertices.iter().map(|p| p.to_f64()).collect(),
                points: rep.orbits.iter().map(|o| o.estimate).collect(),
                diagonal: None,
                pentagon: None,
                four_quadrants: true,
            };
            svg_doc(&h, hull_svg(&fig))
        }
    };
    finish(text, out)
}

fn certify(a: &RhoArgs, bound: u64, out: &OutArgs) -> Result<u8> {
    let rho = resolve(a, None)?;
    let cert = rho.certify(bound)?;
    let mut h = rho_header("certify", a, &rho);
    h.push("max_index", bound);
    let status = if cert.passed { "PASS" } else { "FAIL" };
    let text = match out.emit.unwrap_or(Format::Csv) {
        Format::Csv => {
            let row = vec![
                status.to_string(),
                cert.window.to_string(),
                cert.first_violation.map(|m| m.to_string()).unwrap_or_default(),
                cert.kind.map(|k| serde_json::to_value(k).unwrap().as_str().unwrap_or_default().to_string()).unwrap_or_default(),
            ];
            csv_doc(&h, &["status", "window", "first_violation", "kind"], &[row])?
        }
        Format::Json => json_doc(&h, json!({"status": status, "certification": cert}))?,
        Format::Svg => bail!("certify supports csv and json"),
    };
    deliver(&text, out.out.as_deref())?;
    if cert.passed {
        Ok(0)
    } else {
        eprintln!("certification failed at m = {}", cert.first_violation.unwrap_or(0));
        Ok(2)
    }
}

fn claim_check(a: &RhoArgs, mq: u64, md: u64, out: &OutArgs) -> Result<u8> {
    let rho = resolve(a, None)?;
    let rep = claim_equivalence_check(&rho, mq, md)?;
    let mut h = rho_header("claim-check", a, &rho);
    h.push("quadrant_bound", mq);
    h.push("difference_index", md);
    h.push("holds", rep.holds());
    let text = match out.emit.unwrap_or(Format::Json) {
        Format::Json => json_doc(&h, json!({"holds": rep.holds(), "report": rep}))?,
        Format::Csv => {
            h.push("difference_points", rep.difference_points);
            h.push("quadrant_points", rep.quadrant_points);
            h.push("unmatched", rep.unmatched);
            let rows: Vec<Vec<String>> =
                rep.outside.iter().map(|&(m, m2, n, n2)| vec![m.to_string(), m2.to_string(), n.to_string(), n2.to_string()]).collect();
            csv_doc(&h, &["m", "m_prime", "n", "n_prime"], &rows)?
        }
        Format::Svg => bail!("claim-check supports json and csv"),
    };
    deliver(&text, out.out.as_deref())?;
    if rep.holds() {
        Ok(0)
    } else {
        eprintln!("difference-point claim does not hold");
        Ok(1)
    }
}
