//! SVG output and sampled linear morphs.
//!
//! Drawing uses floating point only; every geometric test here is exact.

use std::fmt::Write;

use crate::compat::SetData;
use crate::geom::{convex_hull, orient, segments_conflict, Orientation, Point};
use crate::rational::{self, Rational};

const VIEW: f64 = 1000.0;
const MARGIN: f64 = 40.0;

/// Maps the bounding box of `points` into the viewport, y pointing up.
struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
    off_x: f64,
    off_y: f64,
}

impl Frame {
    fn new(points: &[Point]) -> Self {
        let xy: Vec<(f64, f64)> = points.iter().map(Point::to_f64).collect();
        let fold = |f: fn(f64, f64) -> f64, init: f64, pick: fn(&(f64, f64)) -> f64| {
            xy.iter().map(pick).fold(init, f)
        };
        let min_x = fold(f64::min, f64::INFINITY, |p| p.0);
        let max_x = fold(f64::max, f64::NEG_INFINITY, |p| p.0);
        let min_y = fold(f64::min, f64::INFINITY, |p| p.1);
        let max_y = fold(f64::max, f64::NEG_INFINITY, |p| p.1);
        let span = (max_x - min_x).max(max_y - min_y);
        let inner = VIEW - 2.0 * MARGIN;
        let scale = if span > 0.0 && span.is_finite() { inner / span } else { 1.0 };
        Frame {
            min_x,
            max_y,
            scale,
            off_x: MARGIN + (inner - (max_x - min_x) * scale) / 2.0,
            off_y: MARGIN + (inner - (max_y - min_y) * scale) / 2.0,
        }
    }

    fn map(&self, p: &Point) -> String {
        let (x, y) = p.to_f64();
        let sx = self.off_x + (x - self.min_x) * self.scale;
        let sy = self.off_y + (self.max_y - y) * self.scale;
        format!("{:.3},{:.3}", sx + 0.0, sy + 0.0)
    }
}

/// One drawable triangulated set. Output bytes depend only on the geometry,
/// not on the labels, so relabeled copies of a set render identically.
pub fn render_svg(points: &[Point], steiner: &[bool], triangles: &[[usize; 3]]) -> String {
    let frame = Frame::new(points);
    let mapped: Vec<String> = points.iter().map(|p| frame.map(p)).collect();

    let mut polygons: Vec<String> = triangles
        .iter()
        .map(|t| {
            let k = (0..3).min_by_key(|&k| &mapped[t[k]]).unwrap_or(0);
            let ring: Vec<&str> = (0..3).map(|i| mapped[t[(k + i) % 3]].as_str()).collect();
            ring.join(" ")
        })
        .collect();
    polygons.sort();

    let hull = convex_hull(points);
    let start = (0..hull.len()).min_by_key(|&k| &mapped[hull[k]]).unwrap_or(0);
    let mut hull_path = String::new();
    for i in 0..hull.len() {
        let p = &mapped[hull[(start + i) % hull.len()]];
        let _ = write!(hull_path, "{}{} ", if i == 0 { "M" } else { "L" }, p.replace(',', " "));
    }
    hull_path.push('Z');

    let mut originals: Vec<&str> = Vec::new();
    let mut extras: Vec<&str> = Vec::new();
    for (l, m) in mapped.iter().enumerate() {
        if steiner.get(l).copied().unwrap_or(false) {
            extras.push(m);
        } else {
            originals.push(m);
        }
    }
    originals.sort();
    extras.sort();

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{VIEW}" height="{VIEW}" viewBox="0 0 {VIEW} {VIEW}">"#
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{VIEW}" height="{VIEW}" fill="white"/>"#);
    let _ = writeln!(out, r##"<g fill="#eef3fb" stroke="#4a6fa5" stroke-width="1">"##);
    for poly in &polygons {
        let _ = writeln!(out, r#"<polygon points="{poly}"/>"#);
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<path d="{hull_path}" fill="none" stroke="black" stroke-width="3"/>"#);
    let _ = writeln!(out, r#"<g fill="black">"#);
    for p in &originals {
        let (x, y) = p.split_once(',').unwrap_or(("0", "0"));
        let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="4"/>"#);
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r##"<g fill="#d1495b">"##);
    for p in &extras {
        let (x, y) = p.split_once(',').unwrap_or(("0", "0"));
        let (x, y): (f64, f64) = (x.parse().unwrap_or(0.0), y.parse().unwrap_or(0.0));
        let _ = writeln!(out, r#"<rect x="{:.3}" y="{:.3}" width="10" height="10"/>"#, x - 5.0, y - 5.0);
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}

pub fn render_set(set: &SetData) -> String {
    render_svg(&set.points, &set.steiner, &set.triangles)
}

/// Exact defects of one sampled frame: inverted or flat triangles and
/// crossing edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrameReport {
    pub inverted: Vec<[usize; 3]>,
    pub crossings: Vec<((usize, usize), (usize, usize))>,
}

impl FrameReport {
    pub fn is_clean(&self) -> bool {
        self.inverted.is_empty() && self.crossings.is_empty()
    }
}

pub fn check_frame(points: &[Point], triangles: &[[usize; 3]]) -> FrameReport {
    let mut report = FrameReport::default();
    let mut edges = std::collections::BTreeSet::new();
    for t in triangles {
        if orient(&points[t[0]], &points[t[1]], &points[t[2]]) != Orientation::Cw {
            report.inverted.push(*t);
        }
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            edges.insert((a.min(b), a.max(b)));
        }
    }
    let edges: Vec<(usize, usize)> = edges.into_iter().collect();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            if segments_conflict(&points[a], &points[b], &points[c], &points[d]) {
                report.crossings.push(((a, b), (c, d)));
            }
        }
    }
    report
}

pub struct MorphFrame {
    pub parameter: Rational,
    pub svg: String,
    pub report: FrameReport,
}

/// `frames` samples of the straight-line motion taking each label `l` of
/// `source` to `forward[l]` of `target`, drawn with the source triangles.
pub fn morph(source: &SetData, target: &SetData, forward: &[usize], frames: usize) -> Vec<MorphFrame> {
    let steps = frames.max(2) - 1;
    (0..=steps)
        .map(|k| {
            let t = rational::ratio(k as i64, steps as i64);
            let points: Vec<Point> = source
                .points
                .iter()
                .enumerate()
                .map(|(l, p)| p.lerp(&target.points[forward[l]], &t))
                .collect();
            let report = check_frame(&points, &source.triangles);
            MorphFrame {
                svg: render_svg(&points, &source.steiner, &source.triangles),
                parameter: t,
                report,
            }
        })
        .collect()
}
