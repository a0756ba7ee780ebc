//! SVG scatter of labeled points on the warmth–competence plane.
//!
//! Warmth runs left to right, competence bottom to top, and the axes cross
//! at the origin in the middle of a fixed 800×800 canvas.

use std::fmt::Write;

use crate::polar::PolarPoint;

const SIZE: f64 = 800.0;
const MARGIN: f64 = 60.0;

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPoint {
    pub label: String,
    pub point: PolarPoint,
    /// Draw with the accent style (e.g. a cluster mean).
    pub highlight: bool,
}

impl LabeledPoint {
    pub fn new(label: impl Into<String>, point: PolarPoint) -> Self {
        LabeledPoint {
            label: label.into(),
            point,
            highlight: false,
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Renders the scatter. `generator` is embedded as a comment and is the only
/// part that varies across tool versions.
pub fn scatter_svg(points: &[LabeledPoint], title: &str, generator: &str) -> String {
    let extent = points
        .iter()
        .flat_map(|p| [p.point.warmth.abs(), p.point.competence.abs()])
        .filter(|x| x.is_finite())
        .fold(0.0f64, f64::max);
    let extent = if extent > 0.0 { extent * 1.15 } else { 1.0 };
    let half = (SIZE - 2.0 * MARGIN) / 2.0;
    let center = SIZE / 2.0;
    let sx = |w: f64| center + w / extent * half;
    let sy = |c: f64| center - c / extent * half;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(svg, "<!-- generator: {} -->", escape(generator));
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" width="{SIZE}" height="{SIZE}" font-family="sans-serif">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{center}" y="30" font-size="18" text-anchor="middle">{}</text>"#,
        escape(title)
    );
    let (lo, hi) = (MARGIN, SIZE - MARGIN);
    let _ = writeln!(
        svg,
        r##"<g stroke="#444" stroke-width="1.5"><line x1="{lo}" y1="{center}" x2="{hi}" y2="{center}"/><line x1="{center}" y1="{lo}" x2="{center}" y2="{hi}"/></g>"##
    );
    let _ = writeln!(
        svg,
        r##"<g font-size="14" fill="#888"><text x="{}" y="{}" text-anchor="end">HC-HW</text><text x="{}" y="{}" text-anchor="end">LC-HW</text><text x="{}" y="{}">LC-LW</text><text x="{}" y="{}">HC-LW</text></g>"##,
        hi - 6.0,
        lo + 18.0,
        hi - 6.0,
        hi - 8.0,
        lo + 6.0,
        hi - 8.0,
        lo + 6.0,
        lo + 18.0,
    );
    let _ = writeln!(
        svg,
        r##"<g font-size="13" fill="#222"><text x="{}" y="{}" text-anchor="end">warmth →</text><text x="{}" y="{}" transform="rotate(-90 {} {})">competence →</text></g>"##,
        hi,
        center - 6.0,
        center - 8.0,
        lo,
        center - 8.0,
        lo,
    );
    let _ = writeln!(svg, r#"<g font-size="12">"#);
    for p in points {
        if !(p.point.warmth.is_finite() && p.point.competence.is_finite()) {
            continue;
        }
        let (x, y) = (sx(p.point.warmth), sy(p.point.competence));
        let (r, fill) = if p.highlight {
            (7.0, "#c0392b")
        } else {
            (4.5, "#2c6fbb")
        };
        let _ = writeln!(
            svg,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r}" fill="{fill}"><title>{} ({:.4}, {:.4})</title></circle><text x="{:.2}" y="{:.2}">{}</text>"#,
            escape(&p.label),
            p.point.warmth,
            p.point.competence,
            x + 7.0,
            y - 6.0,
            escape(&p.label),
        );
    }
    let _ = writeln!(svg, "</g>\n</svg>");
    svg
}
