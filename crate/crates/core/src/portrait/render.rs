//! SVG and CSV emission for trajectory sets. Both emitters are pure
//! functions of their input: identical sets produce byte-identical
//! documents, which the tests assert by rendering twice.

use std::fmt::Write;

use super::{TrajectorySet, Window};
use crate::planar::Kind;

/// Figure styling in one record: canvas geometry, stroke widths, marker
/// radii and colours. The marker conventions are fixed — an open circle at
/// the trivial solution, filled circles at the nonzero fixed points.
#[derive(Clone, Debug)]
pub struct PortraitStyle {
    pub canvas: f64,
    pub margin: f64,
    pub background: String,
    pub axis_color: String,
    pub trajectory_color: String,
    pub marker_color: String,
    pub trajectory_width: f64,
    pub axis_width: f64,
    pub marker_radius: f64,
    pub arrow_length: f64,
}

impl Default for PortraitStyle {
    fn default() -> Self {
        PortraitStyle {
            canvas: 640.0,
            margin: 32.0,
            background: "#ffffff".into(),
            axis_color: "#b8b8b8".into(),
            trajectory_color: "#38506b".into(),
            marker_color: "#000000".into(),
            trajectory_width: 1.1,
            axis_width: 0.8,
            marker_radius: 5.0,
            arrow_length: 9.0,
        }
    }
}

/// World-to-screen map for a square canvas; y flips so that the
/// mathematical orientation is preserved.
struct Frame {
    window: Window,
    margin: f64,
    side: f64,
}

impl Frame {
    fn new(window: Window, style: &PortraitStyle) -> Frame {
        Frame {
            window,
            margin: style.margin,
            side: style.canvas - 2.0 * style.margin,
        }
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        (
            self.margin + (x - self.window.x_min) / self.window.width() * self.side,
            self.margin + (self.window.y_max - y) / self.window.height() * self.side,
        )
    }
}

fn px(v: f64) -> String {
    format!("{:.2}", v)
}

/// Standalone SVG 1.1 document: axes, trajectories clipped to the window,
/// flow arrows at the middle of each polyline, filled circles at the
/// nonzero fixed points and an open circle at the origin. Arrow direction
/// follows point order, which always agrees with the flow, so portraits
/// built for mu < 0 show all arrows reversed.
pub fn render_portrait(ts: &TrajectorySet, style: &PortraitStyle) -> String {
    let frame = Frame::new(ts.window, style);
    let c = style.canvas;
    let mut svg = String::new();
    let _ = write!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{c}\" height=\"{c}\" viewBox=\"0 0 {c} {c}\">\n",
        c = px(c)
    );
    let _ = write!(
        svg,
        "<desc>planar phase portrait, mu = {:.6e}, {} trajectories, {} fixed points</desc>\n",
        ts.mu,
        ts.trajectories.len(),
        ts.fixed_points.len()
    );
    let _ = write!(
        svg,
        "<rect x=\"0\" y=\"0\" width=\"{c}\" height=\"{c}\" fill=\"{bg}\"/>\n",
        c = px(c),
        bg = style.background
    );
    let _ = write!(
        svg,
        "<clipPath id=\"plot\"><rect x=\"{m}\" y=\"{m}\" width=\"{s}\" height=\"{s}\"/></clipPath>\n",
        m = px(style.margin),
        s = px(frame.side)
    );

    // axes across the window (the window is centred, so both pass through)
    let (x0, y0) = frame.map(ts.window.x_min, 0.0);
    let (x1, _) = frame.map(ts.window.x_max, 0.0);
    let _ = write!(
        svg,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\"/>\n",
        px(x0),
        px(y0),
        px(x1),
        px(y0),
        style.axis_color,
        style.axis_width
    );
    let (vx, vy0) = frame.map(0.0, ts.window.y_min);
    let (_, vy1) = frame.map(0.0, ts.window.y_max);
    let _ = write!(
        svg,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\"/>\n",
        px(vx),
        px(vy0),
        px(vx),
        px(vy1),
        style.axis_color,
        style.axis_width
    );

    // trajectories, decimated to half-pixel resolution
    let _ = write!(
        svg,
        "<g clip-path=\"url(#plot)\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\">\n",
        style.trajectory_color, style.trajectory_width
    );
    let mut screen_polylines = Vec::new();
    for tr in &ts.trajectories {
        let pts = decimate(tr.points.iter().map(|&(_, x, y)| frame.map(x, y)));
        if pts.len() >= 2 {
            let mut attr = String::new();
            for (i, (sx, sy)) in pts.iter().enumerate() {
                if i > 0 {
                    attr.push(' ');
                }
                let _ = write!(attr, "{},{}", px(*sx), px(*sy));
            }
            let _ = write!(svg, "<polyline points=\"{}\"/>\n", attr);
        }
        screen_polylines.push(pts);
    }
    svg.push_str("</g>\n");

    // one arrowhead per polyline at half arc length
    let _ = write!(
        svg,
        "<g clip-path=\"url(#plot)\" fill=\"{}\" stroke=\"none\">\n",
        style.trajectory_color
    );
    for pts in &screen_polylines {
        if let Some(d) = arrow_at_midpoint(pts, style.arrow_length) {
            let _ = write!(svg, "<path class=\"arrow\" d=\"{}\"/>\n", d);
        }
    }
    svg.push_str("</g>\n");

    for fp in &ts.fixed_points {
        let (sx, sy) = frame.map(fp.x, fp.y);
        let _ = write!(
            svg,
            "<circle class=\"fixed-point\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>\n",
            px(sx),
            px(sy),
            style.marker_radius,
            style.marker_color
        );
    }
    let (ox, oy) = frame.map(0.0, 0.0);
    let _ = write!(
        svg,
        "<circle class=\"origin\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n",
        px(ox),
        px(oy),
        style.marker_radius,
        style.marker_color
    );
    svg.push_str("</svg>\n");
    svg
}

/// Keep the first point, then only points at least half a pixel from the
/// last kept one, then the final point.
fn decimate(points: impl Iterator<Item = (f64, f64)>) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::new();
    let mut last_seen = None;
    for p in points {
        match out.last() {
            None => out.push(p),
            Some(&(kx, ky)) => {
                if (p.0 - kx).hypot(p.1 - ky) >= 0.5 {
                    out.push(p);
                }
            }
        }
        last_seen = Some(p);
    }
    if let (Some(&kept), Some(seen)) = (out.last(), last_seen) {
        if kept != seen {
            out.push(seen);
        }
    }
    out
}

/// Triangle marker centred on the vertex nearest half the total screen
/// arc length, oriented along the local flow. Short polylines get none.
fn arrow_at_midpoint(pts: &[(f64, f64)], len: f64) -> Option<String> {
    if pts.len() < 2 {
        return None;
    }
    let seg = |i: usize| {
        let (x0, y0) = pts[i];
        let (x1, y1) = pts[i + 1];
        (x1 - x0).hypot(y1 - y0)
    };
    let total: f64 = (0..pts.len() - 1).map(seg).sum();
    if total < 4.0 * len {
        return None;
    }
    let mut acc = 0.0;
    let mut i = 0;
    while i < pts.len() - 1 && acc + seg(i) < total / 2.0 {
        acc += seg(i);
        i += 1;
    }
    let (x0, y0) = pts[i];
    let (x1, y1) = pts[i + 1];
    let norm = (x1 - x0).hypot(y1 - y0);
    if norm == 0.0 {
        return None;
    }
    let f = (total / 2.0 - acc) / norm;
    let (mx, my) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
    let (dx, dy) = ((x1 - x0) / norm, (y1 - y0) / norm);
    let (px_, py_) = (-dy, dx);
    let tip = (mx + 0.5 * len * dx, my + 0.5 * len * dy);
    let left = (
        mx - 0.5 * len * dx + 0.35 * len * px_,
        my - 0.5 * len * dy + 0.35 * len * py_,
    );
    let right = (
        mx - 0.5 * len * dx - 0.35 * len * px_,
        my - 0.5 * len * dy - 0.35 * len * py_,
    );
    Some(format!(
        "M {} {} L {} {} L {} {} Z",
        px(tip.0),
        px(tip.1),
        px(left.0),
        px(left.1),
        px(right.0),
        px(right.1)
    ))
}

fn num(v: f64) -> String {
    // 17 significant digits: enough to reproduce any f64 exactly
    format!("{:.16e}", v)
}

/// Two-section CSV: every trajectory point under a
/// `trajectory_id,t,x,y` header, a blank line, then the fixed points.
/// All numbers carry 17 significant digits and parse back exactly.
pub fn export_csv(ts: &TrajectorySet) -> String {
    let mut out = String::from("trajectory_id,t,x,y\n");
    for (id, tr) in ts.trajectories.iter().enumerate() {
        for &(t, x, y) in &tr.points {
            let _ = writeln!(out, "{},{},{},{}", id, num(t), num(x), num(y));
        }
    }
    out.push('\n');
    out.push_str("fixed_point_id,x,y,kind,eigenvalue_radial,eigenvalue_transverse\n");
    for (id, fp) in ts.fixed_points.iter().enumerate() {
        let kind = match fp.kind {
            Kind::Saddle => "saddle",
            Kind::Node => "node",
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            id,
            num(fp.x),
            num(fp.y),
            kind,
            num(fp.eigenvalues.0),
            num(fp.eigenvalues.1)
        );
    }
    out
}
