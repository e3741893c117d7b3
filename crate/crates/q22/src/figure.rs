//! CSV and SVG figure data for the discriminant-circle diagrams: the unit
//! circle, the discriminant locus of a family quadric, and the branch
//! points, in the planar slice used by the classification.

use crate::quadric::{classify_family, DiscriminantCircle, FamilyParams, Position, RelPosition};
use crate::tolerance::Tolerance;
use std::fmt::Write;

pub const CURVE_SAMPLES: usize = 256;

/// CSV with columns `curve_id,x,y`: 256 samples of the unit circle, 256 of
/// the discriminant locus, then one row per branch point. Full-precision
/// floats, '.' decimal separator.
pub fn emit_figure_csv(fp: &FamilyParams, tol: &Tolerance) -> String {
    let (circle, pos) = classify_family(fp, tol);
    let mut out = String::from("curve_id,x,y\n");
    for k in 0..CURVE_SAMPLES {
        let t = 2.0 * std::f64::consts::PI * (k as f64) / (CURVE_SAMPLES as f64);
        writeln!(out, "unit_circle,{},{}", t.cos(), t.sin()).unwrap();
    }
    for z in circle.sample(CURVE_SAMPLES) {
        writeln!(out, "discriminant,{},{}", z.re, z.im).unwrap();
    }
    for b in &pos.branch_points {
        writeln!(out, "branch_point,{},{}", b.re, b.im).unwrap();
    }
    out
}

const VIEW: f64 = 2.5;
const SIZE: f64 = 600.0;

fn sx(x: f64) -> f64 {
    (x + VIEW) * (SIZE / (2.0 * VIEW))
}

fn sy(y: f64) -> f64 {
    (VIEW - y) * (SIZE / (2.0 * VIEW))
}

/// Self-contained static SVG: fixed 600×600 viewbox mapping [−2.5, 2.5]²,
/// unit circle solid, discriminant locus dashed, branch points marked, and
/// a legend carrying the position and the inversive distance I.
pub fn emit_figure_svg(fp: &FamilyParams, tol: &Tolerance) -> String {
    let (circle, pos) = classify_family(fp, tol);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = SIZE
    )
    .unwrap();
    writeln!(
        out,
        r#"  <rect width="{s}" height="{s}" fill="white"/>"#,
        s = SIZE
    )
    .unwrap();
    // unit circle, solid
    writeln!(
        out,
        r##"  <circle cx="{:.3}" cy="{:.3}" r="{:.3}" fill="none" stroke="#1f4e9c" stroke-width="2"/>"##,
        sx(0.0),
        sy(0.0),
        SIZE / (2.0 * VIEW)
    )
    .unwrap();
    // discriminant locus, dashed
    match &circle {
        DiscriminantCircle::Circle { center, radius } => {
            writeln!(
                out,
                r##"  <circle cx="{:.3}" cy="{:.3}" r="{:.3}" fill="none" stroke="#c03030" stroke-width="2" stroke-dasharray="8 5"/>"##,
                sx(*center),
                sy(0.0),
                radius * SIZE / (2.0 * VIEW)
            )
            .unwrap();
        }
        DiscriminantCircle::ContainedUnitCircle => {
            writeln!(
                out,
                r##"  <circle cx="{:.3}" cy="{:.3}" r="{:.3}" fill="none" stroke="#c03030" stroke-width="2" stroke-dasharray="8 5"/>"##,
                sx(0.0),
                sy(0.0),
                SIZE / (2.0 * VIEW)
            )
            .unwrap();
        }
        DiscriminantCircle::Line { re_equals } => {
            writeln!(
                out,
                r##"  <line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#c03030" stroke-width="2" stroke-dasharray="8 5"/>"##,
                sx(*re_equals),
                sy(-VIEW),
                sx(*re_equals),
                sy(VIEW)
            )
            .unwrap();
        }
    }
    // branch points
    for b in &pos.branch_points {
        writeln!(
            out,
            r##"  <circle cx="{:.3}" cy="{:.3}" r="5" fill="#2e8b2e"/>"##,
            sx(b.re),
            sy(b.im)
        )
        .unwrap();
    }
    writeln!(
        out,
        r#"  <text x="12" y="24" font-family="monospace" font-size="16">Q_(a={}, r={}): {} , I = {}</text>"#,
        fp.a,
        fp.r,
        position_label(&pos),
        pos.inversive_distance
    )
    .unwrap();
    writeln!(out, "</svg>").unwrap();
    out
}

fn position_label(pos: &RelPosition) -> &'static str {
    match pos.position {
        Position::Contained => "contained",
        Position::TwoPoints => "two intersection points",
        Position::Tangent => "tangent",
        Position::Disjoint => "disjoint",
    }
}

/// Parse a figure CSV back into per-curve point lists (used to verify the
/// round-trip property).
pub fn parse_figure_csv(csv: &str) -> Result<Vec<(String, f64, f64)>, String> {
    let mut rows = Vec::new();
    for (k, line) in csv.lines().enumerate() {
        if k == 0 {
            if line != "curve_id,x,y" {
                return Err(format!("unexpected header: {line}"));
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != 3 {
            return Err(format!("row {k} must have 3 fields"));
        }
        let x: f64 = parts[1].parse().map_err(|e| format!("row {k}: {e}"))?;
        let y: f64 = parts[2].parse().map_err(|e| format!("row {k}: {e}"))?;
        rows.push((parts[0].to_string(), x, y));
    }
    Ok(rows)
}

/// Fit center and radius from uniformly sampled circle points (exact for
/// the emitted sampling: the mean of a full uniform sample is the center).
pub fn fit_circle(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = points.len() as f64;
    let cx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let cy = points.iter().map(|p| p.1).sum::<f64>() / n;
    let r = points
        .iter()
        .map(|p| ((p.0 - cx).powi(2) + (p.1 - cy).powi(2)).sqrt())
        .sum::<f64>()
        / n;
    (cx, cy, r)
}
