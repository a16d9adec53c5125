//! SVG pictures of planar realizations.

use std::fmt::Write;

use num_traits::ToPrimitive;
use pierced_core::geometry::{BallRealization, HyperplaneRealization};

const SIZE: f64 = 480.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// Maps a bounding box onto the square canvas, flipping `y`.
struct Frame {
    lo: (f64, f64),
    scale: f64,
}

impl Frame {
    fn new(points: impl Iterator<Item = (f64, f64)>) -> Self {
        let (mut lo, mut hi) = (
            (f64::INFINITY, f64::INFINITY),
            (f64::NEG_INFINITY, f64::NEG_INFINITY),
        );
        for (x, y) in points {
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9);
        let pad = 0.05 * span;
        Frame {
            lo: (lo.0 - pad, lo.1 - pad),
            scale: SIZE / (span + 2.0 * pad),
        }
    }

    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        ((x - self.lo.0) * self.scale, SIZE - (y - self.lo.1) * self.scale)
    }
}

fn label(c: pierced_core::Codeword) -> String {
    if c.is_empty() {
        "∅".into()
    } else {
        c.to_digits()
    }
}

fn header() -> String {
    format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n")
}

/// `None` unless the arrangement is planar.
pub fn hyperplane_svg(r: &HyperplaneRealization) -> Option<String> {
    if r.dim != 2 {
        return None;
    }
    let f = |v: &[num_rational::BigRational]| (v[0].to_f64().unwrap_or(0.0), v[1].to_f64().unwrap_or(0.0));
    let bound: Vec<(f64, f64)> = r.bound.iter().map(|v| f(v)).collect();
    let frame = Frame::new(bound.iter().copied());
    let mut out = header();
    let poly: Vec<String> = bound
        .iter()
        .map(|p| frame.map(*p))
        .map(|(x, y)| format!("{x:.2},{y:.2}"))
        .collect();
    let _ = writeln!(
        out,
        "<clipPath id=\"bound\"><polygon points=\"{}\"/></clipPath>",
        poly.join(" ")
    );
    let _ = writeln!(
        out,
        "<polygon points=\"{}\" fill=\"none\" stroke=\"black\"/>",
        poly.join(" ")
    );
    // each line drawn long enough to cross the bound, then clipped
    let (cx, cy) = (
        bound.iter().map(|p| p.0).sum::<f64>() / 3.0,
        bound.iter().map(|p| p.1).sum::<f64>() / 3.0,
    );
    let reach = bound
        .iter()
        .map(|p| (p.0 - cx).hypot(p.1 - cy))
        .fold(0.0, f64::max)
        * 2.0;
    for (i, h) in r.halfspaces.iter().enumerate() {
        let (a, b) = f(&h.normal);
        let c = h.offset.to_f64().unwrap_or(0.0);
        let norm2 = a * a + b * b;
        let t = (c - a * cx - b * cy) / norm2;
        let foot = (cx + t * a, cy + t * b);
        let dir = (-b / norm2.sqrt(), a / norm2.sqrt());
        let (x1, y1) = frame.map((foot.0 - reach * dir.0, foot.1 - reach * dir.1));
        let (x2, y2) = frame.map((foot.0 + reach * dir.0, foot.1 + reach * dir.1));
        let color = COLORS[i % COLORS.len()];
        let _ = writeln!(
            out,
            "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"{color}\" clip-path=\"url(#bound)\"/>"
        );
    }
    for (c, p) in &r.witnesses {
        let (x, y) = frame.map(f(p));
        let _ = writeln!(out, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"2\"/><text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\">{}</text>", x + 3.0, y - 3.0, label(*c));
    }
    out.push_str("</svg>\n");
    Some(out)
}

pub fn ball_svg(r: &BallRealization) -> Option<String> {
    if r.dim != 2 {
        return None;
    }
    let corners = r.balls.iter().flat_map(|b| {
        [
            (b.center[0] - b.radius, b.center[1] - b.radius),
            (b.center[0] + b.radius, b.center[1] + b.radius),
        ]
    });
    let frame = Frame::new(corners);
    let mut out = header();
    for (i, b) in r.balls.iter().enumerate() {
        let (x, y) = frame.map((b.center[0], b.center[1]));
        let color = COLORS[i % COLORS.len()];
        let _ = writeln!(
            out,
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{:.2}\" fill=\"{color}\" fill-opacity=\"0.15\" stroke=\"{color}\"/>",
            b.radius * frame.scale
        );
    }
    for (c, p) in &r.witnesses {
        let (x, y) = frame.map((p[0], p[1]));
        let _ = writeln!(out, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"1.5\"/><text x=\"{:.2}\" y=\"{:.2}\" font-size=\"9\">{}</text>", x + 2.0, y - 2.0, label(*c));
    }
    out.push_str("</svg>\n");
    Some(out)
}
