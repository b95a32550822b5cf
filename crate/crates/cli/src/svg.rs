//! Minimal SVG output for planar instances and single wiring layers.

use geosep::cubewiring::Wiring;
use geosep::rational::to_f64;
use geosep::separator::{CliqueSeparator, Hypercube};
use geosep::{ObjectSet, Shape};
use std::fmt::Write;

const SIZE: f64 = 800.0;
const MARGIN: f64 = 10.0;

fn hue(i: usize) -> String {
    format!("hsl({},70%,50%)", (i * 137) % 360)
}

struct Frame {
    lo: [f64; 2],
    scale: f64,
}

impl Frame {
    fn fit(lo: [f64; 2], hi: [f64; 2]) -> Frame {
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
        Frame { lo, scale: (SIZE - 2.0 * MARGIN) / span }
    }

    fn x(&self, v: f64) -> f64 {
        MARGIN + (v - self.lo[0]) * self.scale
    }

    // flip so that y grows upwards
    fn y(&self, v: f64) -> f64 {
        SIZE - MARGIN - (v - self.lo[1]) * self.scale
    }
}

fn header(out: &mut String) {
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
}

fn square(out: &mut String, fr: &Frame, h: &Hypercube, stroke: &str) {
    let x0 = to_f64(&h.lower[0]);
    let y0 = to_f64(&h.lower[1]);
    let s = to_f64(&h.side);
    let _ = writeln!(
        out,
        r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="{stroke}" stroke-dasharray="6 4"/>"#,
        fr.x(x0),
        fr.y(y0 + s),
        s * fr.scale,
        s * fr.scale
    );
}

/// Objects of a planar instance, filled by `color(vertex)`, with optional
/// hypercubes drawn as dashed outlines.
pub fn instance(f: &ObjectSet, color: impl Fn(usize) -> String, frames: &[(&Hypercube, &str)]) -> String {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for o in &f.objects {
        let (a, b) = o.bbox();
        for j in 0..2 {
            lo[j] = lo[j].min(to_f64(&a[j]));
            hi[j] = hi[j].max(to_f64(&b[j]));
        }
    }
    for (h, _) in frames {
        let up = h.upper();
        for j in 0..2 {
            lo[j] = lo[j].min(to_f64(&h.lower[j]));
            hi[j] = hi[j].max(to_f64(&up[j]));
        }
    }
    if f.objects.is_empty() && frames.is_empty() {
        lo = [0.0; 2];
        hi = [1.0; 2];
    }
    let fr = Frame::fit(lo, hi);
    let mut out = String::new();
    header(&mut out);
    for (v, o) in f.objects.iter().enumerate() {
        let fill = color(v);
        match &o.shape {
            Shape::Ball { center, radius } => {
                let _ = writeln!(
                    out,
                    r#"<circle cx="{:.2}" cy="{:.2}" r="{:.2}" fill="{fill}" fill-opacity="0.35" stroke="{fill}"/>"#,
                    fr.x(to_f64(&center.0[0])),
                    fr.y(to_f64(&center.0[1])),
                    to_f64(radius) * fr.scale
                );
            }
            Shape::Box { min, sides } => {
                let (w, h) = (to_f64(&sides[0]), to_f64(&sides[1]));
                let _ = writeln!(
                    out,
                    r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{fill}" fill-opacity="0.35" stroke="{fill}"/>"#,
                    fr.x(to_f64(&min.0[0])),
                    fr.y(to_f64(&min.0[1]) + h),
                    w * fr.scale,
                    h * fr.scale
                );
            }
        }
    }
    for (h, stroke) in frames {
        square(&mut out, &fr, h, stroke);
    }
    out.push_str("</svg>\n");
    out
}

/// Side A blue, side B orange, separator cliques in distinct hues.
pub fn separator(f: &ObjectSet, sep: &CliqueSeparator) -> String {
    let mut color = vec![String::from("#999999"); f.len()];
    for &v in &sep.side_a {
        color[v] = "#1f77b4".into();
    }
    for &v in &sep.side_b {
        color[v] = "#ff7f0e".into();
    }
    for (i, c) in sep.cliques.iter().enumerate() {
        for &v in c {
            color[v] = hue(i);
        }
    }
    instance(f, |v| color[v].clone(), &[(&sep.base, "#2ca02c"), (&sep.shell, "#d62728")])
}

/// Layer `h` of a three-dimensional wiring: occupied cells colored per wire,
/// in-layer steps as segments, vertical passes as dots.
pub fn wiring_layer(w: &Wiring, h: i64) -> String {
    let (sx, sy) = (w.sides[0] as f64, w.sides[1] as f64);
    let fr = Frame::fit([0.5, 0.5], [sx + 0.5, sy + 0.5]);
    let mut out = String::new();
    header(&mut out);
    let _ = writeln!(
        out,
        r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="#cccccc"/>"##,
        fr.x(0.5),
        fr.y(sy + 0.5),
        sx * fr.scale,
        sy * fr.scale
    );
    let r = (0.3 * fr.scale).max(0.5);
    for (i, wire) in w.wires.iter().enumerate() {
        let c = hue(i);
        for (k, p) in wire.path.iter().enumerate() {
            if p[2] != h {
                continue;
            }
            let (x, y) = (fr.x(p[0] as f64), fr.y(p[1] as f64));
            let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r:.2}" fill="{c}"/>"#);
            if let Some(q) = wire.path.get(k + 1).filter(|q| q[2] == h) {
                let _ = writeln!(
                    out,
                    r#"<line x1="{x:.2}" y1="{y:.2}" x2="{:.2}" y2="{:.2}" stroke="{c}" stroke-width="{:.2}"/>"#,
                    fr.x(q[0] as f64),
                    fr.y(q[1] as f64),
                    (0.2 * fr.scale).max(0.5)
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
