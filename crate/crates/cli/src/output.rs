//! Batch serializations. Numbers are written in Rust's shortest round-trip
//! decimal form, so re-parsing yields bit-identical values.

use hyperellipsoid::{BallPoint, Ellipsoid, SampleBatch, Vector};
use std::fmt::Write;

pub fn csv(batch: &SampleBatch) -> String {
    let mut out = String::new();
    let header: Vec<String> = (1..=batch.dim).map(|i| format!("x{i}")).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for p in &batch.points {
        let row: Vec<String> = p.as_slice().iter().map(f64::to_string).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn json(batch: &SampleBatch) -> String {
    let mut s = serde_json::to_string(batch).expect("batch serializes");
    s.push('\n');
    s
}

const OUTLINE_SEGMENTS: usize = 360;

/// Scatter plot of a 2-D batch over the ellipse outline. Point coordinates
/// are written verbatim in data space; the y-flip lives in a transform.
pub fn svg(batch: &SampleBatch, e: &Ellipsoid) -> String {
    let w = e.bounding_halfwidths();
    let c = e.centre();
    let margin = 1.05;
    let (hx, hy) = (w[0] * margin, w[1] * margin);
    let (x0, y0) = (c[0] - hx, -(c[1] + hy));
    let (width, height) = (2.0 * hx, 2.0 * hy);
    let dot = 0.004 * width.max(height);
    let px = 600.0;
    let py = (px * height / width).round();

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{px}" height="{py}" viewBox="{x0} {y0} {width} {height}">"#
    );
    let _ = writeln!(out, r#"<g transform="scale(1,-1)">"#);
    let mut path = String::new();
    for k in 0..OUTLINE_SEGMENTS {
        let t = k as f64 / OUTLINE_SEGMENTS as f64 * std::f64::consts::TAU;
        let u = BallPoint::new(Vector::new(vec![t.cos(), t.sin()]).expect("finite"))
            .expect("unit circle");
        let x = e.forward(&u).expect("2-D");
        let _ = write!(path, "{}{} {} ", if k == 0 { "M" } else { "L" }, x[0], x[1]);
    }
    path.push('Z');
    let _ = writeln!(
        out,
        r#"<path d="{path}" fill="none" stroke="black" stroke-width="1" vector-effect="non-scaling-stroke"/>"#
    );
    let _ = writeln!(
        out,
        r#"<g fill="steelblue" stroke="steelblue" stroke-width="1" vector-effect="non-scaling-stroke">"#
    );
    for p in &batch.points {
        let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="{dot}"/>"#, p[0], p[1]);
    }
    out.push_str("</g>\n</g>\n</svg>\n");
    out
}
