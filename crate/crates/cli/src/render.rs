//! SVG figures and CSV samples.

use std::fmt::Write as _;

use poncelet_core::{PlaneCurve, Vec2};

use crate::scene::{NamedCurve, Role, Scene};
use crate::CliError;

pub const ENVELOPE_COLOR: &str = "#d62728";
pub const VERTEX_COLORS: [&str; 3] = ["#1f77b4", "#2ca02c", "#8c564b"];
pub const POLYGON_COLOR: &str = "#000000";

#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    pub samples: usize,
    pub margin: f64,
    pub width: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        Self { samples: 1024, margin: 0.05, width: 800.0 }
    }
}

#[derive(Debug, Clone)]
pub struct SvgCurve<'a> {
    pub name: &'a str,
    pub color: &'a str,
    pub curve: &'a dyn PlaneCurve,
}

/// Fixed-point coordinates; negative zero prints as zero.
fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.trim_start_matches('-').bytes().all(|b| b == b'0' || b == b'.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// SVG 1.1 document with one polyline per curve, in the given order, then one
/// closed path per polygon. The y axis points up.
pub fn render_svg(curves: &[SvgCurve<'_>], polygons: &[Vec<Vec2>], opts: &SvgOptions) -> Result<String, CliError> {
    if curves.is_empty() {
        return Err(CliError::Usage("nothing to render: the scene has no curves".into()));
    }
    if opts.samples < 2 {
        return Err(CliError::Usage(format!("{} samples per curve is too few", opts.samples)));
    }
    let sampled: Vec<Vec<Vec2>> = curves.iter().map(|c| c.curve.sample(opts.samples)).collect();
    let (mut lo, mut hi) = (Vec2::new(f64::INFINITY, f64::INFINITY), Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
    for p in sampled.iter().flatten().chain(polygons.iter().flatten()) {
        if !(p.x.is_finite() && p.y.is_finite()) {
            return Err(CliError::Usage("curve sample is not finite".into()));
        }
        lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let size = (hi - lo).x.max((hi - lo).y).max(1e-9);
    let pad = opts.margin * size;
    let (w, h) = ((hi.x - lo.x).max(1e-9) + 2.0 * pad, (hi.y - lo.y).max(1e-9) + 2.0 * pad);
    let (x0, y0) = (lo.x - pad, -(hi.y + pad));
    let stroke = num(0.003 * w.max(h));
    let px_h = opts.width * h / w;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        num(opts.width),
        num(px_h),
        num(x0),
        num(y0),
        num(w),
        num(h)
    );
    let _ = writeln!(out, "<g fill=\"none\" stroke-width=\"{stroke}\" stroke-linejoin=\"round\">");
    for (c, pts) in curves.iter().zip(&sampled) {
        let _ = write!(out, "<polyline id=\"{}\" stroke=\"{}\" points=\"", xml_escape(c.name), c.color);
        for (i, p) in pts.iter().chain(pts.first()).enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{},{}", num(p.x), num(-p.y));
        }
        out.push_str("\"/>\n");
    }
    for (k, poly) in polygons.iter().enumerate() {
        let _ = write!(out, "<path id=\"polygon{k}\" stroke=\"{POLYGON_COLOR}\" d=\"");
        for (i, p) in poly.iter().enumerate() {
            let _ = write!(out, "{}{} {} ", if i == 0 { 'M' } else { 'L' }, num(p.x), num(-p.y));
        }
        out.push_str("Z\"/>\n");
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

fn color(c: &NamedCurve, vertex_index: usize) -> &'static str {
    match c.role {
        Role::Envelope => ENVELOPE_COLOR,
        Role::Vertex => VERTEX_COLORS[vertex_index % VERTEX_COLORS.len()],
    }
}

/// Polygons at the document's start parameters, or one polygon from `0` if none are given.
pub fn scene_polygons(scene: &Scene) -> Vec<Vec<Vec2>> {
    let starts = if scene.config.render.polygon_starts.is_empty() {
        vec![0.0]
    } else {
        scene.config.render.polygon_starts.clone()
    };
    starts
        .iter()
        .map(|&t| {
            let p = scene.poncelet.polygon(t);
            let n = p.vertex_count();
            p.vertices[..n].to_vec()
        })
        .collect()
}

pub fn render_scene(scene: &Scene) -> Result<String, CliError> {
    let mut vi = 0;
    let curves: Vec<SvgCurve<'_>> = scene
        .curves
        .iter()
        .map(|c| {
            let color = color(c, vi);
            if c.role == Role::Vertex {
                vi += 1;
            }
            SvgCurve { name: &c.name, color, curve: c.curve.as_ref() }
        })
        .collect();
    let r = &scene.config.render;
    render_svg(&curves, &scene_polygons(scene), &SvgOptions { samples: r.samples, margin: r.margin, width: r.width })
}

/// `n` rows `t,x,y` at `t = iL/n` with 17 significant digits.
pub fn sample_points(curve: &dyn PlaneCurve, n: usize) -> Result<String, CliError> {
    if n < 2 {
        return Err(CliError::Usage(format!("need at least 2 samples, got {n}")));
    }
    let l = curve.period();
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    w.write_record(["t", "x", "y"]).map_err(CliError::Csv)?;
    for i in 0..n {
        let t = l * i as f64 / n as f64;
        let p = curve.point(t);
        w.write_record([format!("{t:.16e}"), format!("{:.16e}", p.x), format!("{:.16e}", p.y)])
            .map_err(CliError::Csv)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ascii"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use poncelet_core::curve::Circle;

    #[test]
    fn numbers_are_fixed_point_without_negative_zero() {
        assert_eq!(num(-1e-9), "0.000000");
        assert_eq!(num(-0.5), "-0.500000");
        assert_eq!(num(2.0), "2.000000");
    }

    #[test]
    fn concentric_circles_view_box() {
        let (a, b) = (Circle::new(Vec2::ZERO, 1.0), Circle::new(Vec2::ZERO, 2.0));
        let curves = [
            SvgCurve { name: "C", color: ENVELOPE_COLOR, curve: &a },
            SvgCurve { name: "K", color: VERTEX_COLORS[0], curve: &b },
        ];
        let svg =
            render_svg(&curves, &[vec![Vec2::new(2.0, 0.0), Vec2::new(-1.0, 3f64.sqrt())]], &SvgOptions::default())
                .unwrap();
        assert!(svg.contains("viewBox=\"-2.200000 -2.200000 4.400000 4.400000\""), "{svg}");
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg.matches("<path").count(), 1);
        assert!(svg.find("id=\"C\"").unwrap() < svg.find("id=\"K\"").unwrap());
        // y is flipped
        assert!(svg.contains("L-1.000000 -1.732051 Z"));
    }

    #[test]
    fn empty_scene_is_rejected() {
        assert!(render_svg(&[], &[], &SvgOptions::default()).is_err());
    }

    #[test]
    fn csv_layout() {
        let c = Circle::new(Vec2::ZERO, 1.0);
        let text = sample_points(&c, 4).unwrap();
        let lines: Vec<&str> = text.split("\r\n").collect();
        assert_eq!(lines.len(), 6);
        assert_eq!(lines[0], "t,x,y");
        assert_eq!(lines[1], "0.0000000000000000e0,1.0000000000000000e0,0.0000000000000000e0");
        assert_eq!(lines[5], "");
        assert!(sample_points(&c, 1).is_err());
    }
}
