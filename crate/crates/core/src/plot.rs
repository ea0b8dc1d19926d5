//! SVG pictures of the real image in an affine chart, with solitary nodes as
//! dots.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::exactmath::{to_f64, Rational};
use crate::nodes::{find_nodes, NodeKind};
use crate::persist::write_atomic;
use crate::realize::Curve;

const SIZE: f64 = 512.0;

/// Which coordinate is divided out: chart `x_k` shows `x_i/x_k, x_j/x_k` for
/// the other two indices in increasing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    X0,
    X1,
    X2,
}

impl Chart {
    pub fn index(self) -> usize {
        match self {
            Chart::X0 => 0,
            Chart::X1 => 1,
            Chart::X2 => 2,
        }
    }

    fn axes(self) -> (usize, usize) {
        match self {
            Chart::X0 => (1, 2),
            Chart::X1 => (0, 2),
            Chart::X2 => (0, 1),
        }
    }
}

impl std::str::FromStr for Chart {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "x0" => Ok(Chart::X0),
            "x1" => Ok(Chart::X1),
            "x2" => Ok(Chart::X2),
            _ => Err(format!("unknown chart {s:?} (expected x0, x1 or x2)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PlotSpec {
    pub chart: Chart,
    /// `[xmin, xmax, ymin, ymax]`; `None` fits the real nodes.
    pub window: Option<[Rational; 4]>,
    pub samples: usize,
    pub stroke: f64,
    pub dot: f64,
}

impl Default for PlotSpec {
    fn default() -> Self {
        Self { chart: Chart::X2, window: None, samples: 400, stroke: 1.5, dot: 4.0 }
    }
}

impl PlotSpec {
    pub fn validate(&self) -> Result<()> {
        if self.samples < 100 {
            return Err(Error::InvalidPlot(format!("samples must be at least 100, got {}", self.samples)));
        }
        if let Some(w) = &self.window {
            if w[0] >= w[1] || w[2] >= w[3] {
                return Err(Error::InvalidPlot("window is empty".into()));
            }
        }
        Ok(())
    }
}

/// Parses `xmin,xmax,ymin,ymax` with rational entries such as `-3/2`.
pub fn parse_window(text: &str) -> Result<[Rational; 4]> {
    let parts: Vec<Rational> = text
        .split(',')
        .map(|p| {
            crate::exactmath::encode::parse_rational(p.trim())
                .ok_or_else(|| Error::InvalidPlot(format!("bad window bound {p:?}")))
        })
        .collect::<Result<_>>()?;
    parts.try_into().map_err(|_| Error::InvalidPlot("window needs four bounds".into()))
}

fn chart_point(p: [f64; 3], chart: Chart) -> Option<(f64, f64)> {
    let (i, j) = chart.axes();
    let d = p[chart.index()];
    (d.abs() > 1e-12 * (p[0].abs() + p[1].abs() + p[2].abs())).then(|| (p[i] / d, p[j] / d))
}

struct Sampler {
    coeffs: [[f64; 5]; 3],
}

impl Sampler {
    fn new(c: &Curve) -> Self {
        let r = c.real_coeffs();
        Self { coeffs: std::array::from_fn(|i| std::array::from_fn(|k| r[i].get(k).map(to_f64).unwrap_or(0.0))) }
    }

    /// `θ(cos φ, sin φ)`; `φ ∈ [0, π)` covers `RP¹` once.
    fn at(&self, phi: f64) -> [f64; 3] {
        let (s, t) = (phi.cos(), phi.sin());
        self.coeffs.map(|cf| (0..5).map(|m| cf[m] * s.powi(4 - m as i32) * t.powi(m as i32)).sum())
    }
}

/// Square window around the visible nodes and the bulk of the curve (the
/// middle 90% of sampled chart coordinates, so branches running off to
/// infinity do not flatten the picture).
fn default_window(c: &Curve, chart: Chart) -> Result<[f64; 4]> {
    let nodes = find_nodes(c)?;
    let mut pts: Vec<(f64, f64)> =
        nodes.iter().filter_map(|n| chart_point([0, 1, 2].map(|k| n.position[k].to_f64()), chart)).collect();
    let sampler = Sampler::new(c);
    let samples: Vec<(f64, f64)> = (0..2000)
        .filter_map(|k| chart_point(sampler.at(std::f64::consts::PI * k as f64 / 2000.0), chart))
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .collect();
    if !samples.is_empty() {
        let quantiles = |mut v: Vec<f64>| {
            v.sort_by(f64::total_cmp);
            (v[v.len() / 20], v[v.len() - 1 - v.len() / 20])
        };
        let (x0, x1) = quantiles(samples.iter().map(|p| p.0).collect());
        let (y0, y1) = quantiles(samples.iter().map(|p| p.1).collect());
        pts.extend([(x0, y0), (x1, y1)]);
    }
    let (mut lo, mut hi) = ((f64::INFINITY, f64::INFINITY), (f64::NEG_INFINITY, f64::NEG_INFINITY));
    for (x, y) in pts {
        lo = (lo.0.min(x), lo.1.min(y));
        hi = (hi.0.max(x), hi.1.max(y));
    }
    if !lo.0.is_finite() {
        return Ok([-1.0, 1.0, -1.0, 1.0]);
    }
    let (cx, cy) = ((lo.0 + hi.0) / 2.0, (lo.1 + hi.1) / 2.0);
    let half = ((hi.0 - lo.0).max(hi.1 - lo.1) * 1.2 / 2.0).max(1e-3);
    Ok([cx - half, cx + half, cy - half, cy + half])
}

/// Both ends beyond the same edge of the canvas (with a margin): a short
/// parameter interval there cannot reach the picture.
fn off_canvas(a: (f64, f64), b: (f64, f64)) -> bool {
    let m = SIZE / 4.0;
    (a.0 < -m && b.0 < -m) || (a.0 > SIZE + m && b.0 > SIZE + m) || (a.1 < -m && b.1 < -m) || (a.1 > SIZE + m && b.1 > SIZE + m)
}

fn fmt(x: f64) -> String {
    format!("{x:.9}")
}

/// Renders the real image of `c`. Branches are broken where they cross the
/// chart's line at infinity or leave the window far behind; the sampling
/// step is halved where consecutive points are far apart on screen.
pub fn render_svg(c: &Curve, spec: &PlotSpec) -> Result<String> {
    spec.validate()?;
    let w = match &spec.window {
        Some(w) => w.each_ref().map(to_f64),
        None => default_window(c, spec.chart)?,
    };
    let screen = |(x, y): (f64, f64)| ((x - w[0]) / (w[1] - w[0]) * SIZE, (w[3] - y) / (w[3] - w[2]) * SIZE);
    let far = |(x, y): (f64, f64)| x.abs() > 1e4 * SIZE || y.abs() > 1e4 * SIZE;
    let sampler = Sampler::new(c);
    let chart = spec.chart;
    let pi = std::f64::consts::PI;
    let limit = SIZE / 100.0;

    let mut polylines: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut current: Vec<(f64, f64)> = Vec::new();
    let flush = |current: &mut Vec<(f64, f64)>, polylines: &mut Vec<Vec<(f64, f64)>>| {
        if current.len() > 1 {
            polylines.push(std::mem::take(current));
        } else {
            current.clear();
        }
    };
    for k in 0..spec.samples {
        let (a, b) = (pi * k as f64 / spec.samples as f64, pi * (k + 1) as f64 / spec.samples as f64);
        let mut stack = vec![(a, b, 0u32)];
        while let Some((a, b, depth)) = stack.pop() {
            let (pa, pb) = (sampler.at(a), sampler.at(b));
            let infinity_between = pa[chart.index()] * pb[chart.index()] < 0.0;
            let (qa, qb) = (chart_point(pa, chart).map(screen), chart_point(pb, chart).map(screen));
            match (qa, qb) {
                (Some(qa), Some(qb)) if depth >= 4 && off_canvas(qa, qb) => flush(&mut current, &mut polylines),
                (Some(qa), Some(qb)) if !infinity_between && !far(qa) && !far(qb) => {
                    let d = ((qa.0 - qb.0).powi(2) + (qa.1 - qb.1).powi(2)).sqrt();
                    if d > limit && depth < 12 {
                        let m = 0.5 * (a + b);
                        stack.push((m, b, depth + 1));
                        stack.push((a, m, depth + 1));
                        continue;
                    }
                    if current.last() != Some(&qa) {
                        flush(&mut current, &mut polylines);
                        current.push(qa);
                    }
                    current.push(qb);
                }
                _ if depth < 12 => {
                    let m = 0.5 * (a + b);
                    stack.push((m, b, depth + 1));
                    stack.push((a, m, depth + 1));
                }
                _ => flush(&mut current, &mut polylines),
            }
        }
    }
    flush(&mut current, &mut polylines);

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = SIZE as u32
    )
    .expect("string write");
    writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#).expect("string write");
    for line in &polylines {
        let pts: Vec<String> = line.iter().map(|&(x, y)| format!("{},{}", fmt(x), fmt(y))).collect();
        writeln!(
            svg,
            r#"<polyline class="branch" fill="none" stroke="black" stroke-width="{}" points="{}"/>"#,
            fmt(spec.stroke),
            pts.join(" ")
        )
        .expect("string write");
    }
    for node in find_nodes(c)?.iter().filter(|n| n.kind == NodeKind::Solitary) {
        if let Some((x, y)) = chart_point([0, 1, 2].map(|k| node.position[k].to_f64()), chart).map(screen) {
            writeln!(
                svg,
                r#"<circle class="solitary" cx="{}" cy="{}" r="{}" fill="black"/>"#,
                fmt(x),
                fmt(y),
                fmt(spec.dot)
            )
            .expect("string write");
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn write_svg(c: &Curve, spec: &PlotSpec, path: &Path) -> Result<()> {
    write_atomic(path, render_svg(c, spec)?.as_bytes())
}

/// One SVG per frame (`step_NNNN.svg`), all drawn in the window of the first
/// frame so the pictures line up.
pub fn write_frame_svgs(frames: &[Curve], spec: &PlotSpec, dir: &Path) -> Result<Vec<std::path::PathBuf>> {
    let first = frames.first().ok_or_else(|| Error::InvalidPlot("no frames".into()))?;
    let mut spec = spec.clone();
    if spec.window.is_none() {
        let w = default_window(first, spec.chart)?;
        spec.window = Some(w.map(|x| crate::exactmath::dyadic(x, 20)));
    }
    let mut out = Vec::new();
    for (k, c) in frames.iter().enumerate() {
        let path = dir.join(format!("step_{k:04}.svg"));
        write_svg(c, &spec, &path)?;
        out.push(path);
    }
    Ok(out)
}

/// Number of solitary-node dots in an SVG produced by [`render_svg`].
pub fn dot_count(svg: &str) -> usize {
    svg.matches(r#"class="solitary""#).count()
}
