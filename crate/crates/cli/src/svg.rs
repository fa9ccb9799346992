//! Self-contained SVG plots of numerical-range boundaries: 800x800 viewport,
//! equal-aspect axes, 5% margin, inline styles only.

use std::fmt::Write as _;

use numrange::{cardioid_point, sample_boundary, C64, CMat, FlatPortion};

use crate::report::reducible5_family;

const SIZE: f64 = 800.0;

struct Frame {
    cx: f64,
    cy: f64,
    scale: f64,
}

impl Frame {
    fn fit(points: &[C64]) -> Frame {
        let (mut xmin, mut xmax) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in points {
            xmin = xmin.min(p.re);
            xmax = xmax.max(p.re);
            ymin = ymin.min(p.im);
            ymax = ymax.max(p.im);
        }
        let cx = 0.5 * (xmin + xmax);
        let cy = 0.5 * (ymin + ymax);
        let half = 0.5 * (xmax - xmin).max(ymax - ymin).max(1e-9) * 1.05;
        Frame { cx, cy, scale: SIZE / (2.0 * half) }
    }

    fn x(&self, wx: f64) -> f64 {
        SIZE / 2.0 + (wx - self.cx) * self.scale
    }

    fn y(&self, wy: f64) -> f64 {
        SIZE / 2.0 - (wy - self.cy) * self.scale
    }

    fn point(&self, z: C64) -> (f64, f64) {
        (self.x(z.re), self.y(z.im))
    }
}

fn polyline(frame: &Frame, pts: &[C64], style: &str, close: bool) -> String {
    let mut d = String::new();
    for (k, z) in pts.iter().enumerate() {
        let (x, y) = frame.point(*z);
        let _ = write!(d, "{}{x:.3},{y:.3} ", if k == 0 { "M " } else { "L " });
    }
    if close {
        d.push('Z');
    }
    format!("<path d=\"{}\" {} />\n", d.trim_end(), style)
}

/// Render the sampled boundary with detected flat portions emphasized.
/// Members of the 5-by-5 direct-sum family with equal block parameters also
/// get their (scaled) cardioid boundary generating curve.
pub fn render(a: &CMat, samples: usize, portions: &[FlatPortion], support_lines: bool) -> String {
    let boundary = sample_boundary(a, samples);
    let mut all = boundary.clone();
    for fp in portions {
        all.push(fp.z1);
        all.push(fp.z2);
    }
    let cardioid_scale = reducible5_family(a).and_then(|p| {
        (p.r1 == p.r2 && p.r2 == p.r3 && p.r2 > 0.0).then_some(p.r1 / 3.0)
    });
    if let Some(s) = cardioid_scale {
        for k in 0..64 {
            all.push(cardioid_point(std::f64::consts::TAU * k as f64 / 64.0) * s);
        }
    }
    let frame = Frame::fit(&all);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\" />\n");

    // axes through the origin when visible
    let (ox, oy) = (frame.x(0.0), frame.y(0.0));
    if (0.0..=SIZE).contains(&ox) {
        let _ = writeln!(
            svg,
            "<line x1=\"{ox:.3}\" y1=\"0\" x2=\"{ox:.3}\" y2=\"{SIZE}\" stroke=\"#cccccc\" stroke-width=\"1\" />"
        );
    }
    if (0.0..=SIZE).contains(&oy) {
        let _ = writeln!(
            svg,
            "<line x1=\"0\" y1=\"{oy:.3}\" x2=\"{SIZE}\" y2=\"{oy:.3}\" stroke=\"#cccccc\" stroke-width=\"1\" />"
        );
    }

    if let Some(s) = cardioid_scale {
        let pts: Vec<C64> = (0..=256)
            .map(|k| cardioid_point(-std::f64::consts::PI + std::f64::consts::TAU * k as f64 / 256.0) * s)
            .collect();
        svg.push_str(&polyline(
            &frame,
            &pts,
            "fill=\"none\" stroke=\"#2e7d32\" stroke-width=\"1.5\" stroke-dasharray=\"2,3\"",
            false,
        ));
    }

    if support_lines {
        for fp in portions {
            // the support line through the portion, extended across the frame
            let dir = C64::from_polar(1.0, fp.line.theta + std::f64::consts::FRAC_PI_2);
            let base = C64::from_polar(1.0, fp.line.theta) * fp.line.d;
            let reach = 2.0 * SIZE / frame.scale;
            let p1 = base + dir * reach;
            let p2 = base - dir * reach;
            svg.push_str(&polyline(
                &frame,
                &[p1, p2],
                "fill=\"none\" stroke=\"#9e9e9e\" stroke-width=\"1\" stroke-dasharray=\"6,4\"",
                false,
            ));
        }
    }

    svg.push_str(&polyline(
        &frame,
        &boundary,
        "fill=\"none\" stroke=\"#1a237e\" stroke-width=\"2\"",
        true,
    ));

    for fp in portions {
        svg.push_str(&polyline(
            &frame,
            &[fp.z1, fp.z2],
            "fill=\"none\" stroke=\"#c62828\" stroke-width=\"4\" stroke-linecap=\"round\"",
            false,
        ));
    }

    svg.push_str("</svg>\n");
    svg
}

/// CSV form of the sampled boundary: header theta,x,y and one full-precision
/// row per sample.
pub fn boundary_csv(a: &CMat, samples: usize) -> String {
    let mut out = String::from("theta,x,y\n");
    for k in 0..samples {
        let theta = std::f64::consts::TAU * k as f64 / samples as f64;
        let z = numrange::boundary_point(a, theta);
        let _ = writeln!(out, "{theta:.16e},{:.16e},{:.16e}", z.re, z.im);
    }
    out
}
