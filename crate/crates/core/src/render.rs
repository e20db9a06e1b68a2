//! Deterministic SVG output.
//!
//! Four targets: Newton polygons with their subdivisions, tropical curves
//! (vertices, edges, arrow-headed rays), coamoeba models (filled triangle
//! pieces plus stroked codual lines over `k×k` fundamental domains), and
//! torus rasters (run-length rectangles). Output is plain SVG 1.1 text with
//! a fixed palette and 9-significant-digit coordinates, byte-identical
//! across runs and platforms.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::angle::TAU;
use crate::coamoeba::CoamoebaModel;
use crate::lattice::rat_to_f64;
use crate::newton::{NewtonPolytope, RegularSubdivision};
use crate::sampler::TorusRaster;
use crate::tropical::TropicalCurve;

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("render target does not match the supplied data")]
    TargetMismatch,
    #[error("bad render spec: {0}")]
    BadSpec(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderTarget {
    Newton,
    TropicalCurve,
    CoamoebaModel,
    Raster,
}

impl RenderTarget {
    pub fn parse(s: &str) -> Option<RenderTarget> {
        match s {
            "newton" => Some(RenderTarget::Newton),
            "tropical_curve" => Some(RenderTarget::TropicalCurve),
            "coamoeba_model" => Some(RenderTarget::CoamoebaModel),
            "raster" => Some(RenderTarget::Raster),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Style {
    pub stroke_width: f64,
    pub palette: &'static [&'static str],
}

impl Default for Style {
    fn default() -> Self {
        Style {
            stroke_width: 2.0,
            palette: &[
                "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2",
                "#7f7f7f",
            ],
        }
    }
}

#[derive(Clone, Debug)]
pub struct RenderSpec {
    pub target: RenderTarget,
    pub width: u32,
    pub height: u32,
    /// Render `domains × domains` fundamental domains (tori only).
    pub domains: u32,
    pub styling: Style,
}

impl RenderSpec {
    pub fn new(target: RenderTarget) -> Self {
        RenderSpec {
            target,
            width: 800,
            height: 800,
            domains: 1,
            styling: Style::default(),
        }
    }

    fn validate(&self) -> Result<(), RenderError> {
        if !(64..=4096).contains(&self.width) || !(64..=4096).contains(&self.height) {
            return Err(RenderError::BadSpec(format!(
                "viewport {}x{} outside [64, 4096]",
                self.width, self.height
            )));
        }
        if !(1..=4).contains(&self.domains) {
            return Err(RenderError::BadSpec(format!(
                "domain count {} outside [1, 4]",
                self.domains
            )));
        }
        Ok(())
    }
}

pub enum RenderData<'a> {
    Newton(&'a NewtonPolytope, Option<&'a RegularSubdivision>),
    Curve(&'a TropicalCurve),
    Model(&'a CoamoebaModel),
    Raster(&'a TorusRaster),
}

/// Deterministic coordinate formatting: 9 significant digits.
fn fmt(x: f64) -> String {
    let s = format!("{:.9e}", x);
    // Rebuild as plain decimal so the output stays human-readable.
    let v: f64 = s.parse().expect("formatted float");
    if v == v.trunc() && v.abs() < 1e9 {
        format!("{}", v as i64)
    } else {
        let s = format!("{:.6}", v);
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

struct Mapper {
    scale_x: f64,
    scale_y: f64,
    min_x: f64,
    max_y: f64,
}

impl Mapper {
    fn new(min: [f64; 2], max: [f64; 2], width: u32, height: u32, margin: f64) -> Mapper {
        let span_x = (max[0] - min[0]).max(1e-9);
        let span_y = (max[1] - min[1]).max(1e-9);
        Mapper {
            scale_x: (width as f64 - 2.0 * margin) / span_x,
            scale_y: (height as f64 - 2.0 * margin) / span_y,
            min_x: min[0] - margin * span_x / (width as f64 - 2.0 * margin),
            max_y: max[1] + margin * span_y / (height as f64 - 2.0 * margin),
        }
    }

    fn x(&self, x: f64) -> f64 {
        (x - self.min_x) * self.scale_x
    }

    /// SVG y points down.
    fn y(&self, y: f64) -> f64 {
        (self.max_y - y) * self.scale_y
    }
}

pub fn render_svg(data: &RenderData, spec: &RenderSpec) -> Result<String, RenderError> {
    spec.validate()?;
    let ok = matches!(
        (data, spec.target),
        (RenderData::Newton(..), RenderTarget::Newton)
            | (RenderData::Curve(_), RenderTarget::TropicalCurve)
            | (RenderData::Model(_), RenderTarget::CoamoebaModel)
            | (RenderData::Raster(_), RenderTarget::Raster)
    );
    if !ok {
        return Err(RenderError::TargetMismatch);
    }
    let mut svg = String::new();
    let _ = write!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n",
        w = spec.width,
        h = spec.height
    );
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n");
    match data {
        RenderData::Newton(polytope, sub) => render_newton(&mut svg, polytope, *sub, spec),
        RenderData::Curve(curve) => render_curve(&mut svg, curve, spec),
        RenderData::Model(model) => render_model(&mut svg, model, spec),
        RenderData::Raster(raster) => render_raster(&mut svg, raster, spec),
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn render_newton(
    svg: &mut String,
    polytope: &NewtonPolytope,
    sub: Option<&RegularSubdivision>,
    spec: &RenderSpec,
) {
    let coords: Vec<[f64; 2]> = polytope
        .support
        .iter()
        .map(|p| {
            [
                p.coord(0).to_f64().expect("desk-scale"),
                p.coord(1).to_f64().expect("desk-scale"),
            ]
        })
        .collect();
    let min = [
        coords.iter().map(|c| c[0]).fold(f64::INFINITY, f64::min) - 0.5,
        coords.iter().map(|c| c[1]).fold(f64::INFINITY, f64::min) - 0.5,
    ];
    let max = [
        coords
            .iter()
            .map(|c| c[0])
            .fold(f64::NEG_INFINITY, f64::max)
            + 0.5,
        coords
            .iter()
            .map(|c| c[1])
            .fold(f64::NEG_INFINITY, f64::max)
            + 0.5,
    ];
    let map = Mapper::new(min, max, spec.width, spec.height, 10.0);
    let stroke = spec.styling.stroke_width;

    if let Some(sub) = sub {
        for (ci, cell) in sub.cells.iter().enumerate() {
            if cell.vertices.len() < 3 {
                continue;
            }
            let fill = spec.styling.palette[ci % spec.styling.palette.len()];
            let points: Vec<String> = cell
                .vertices
                .iter()
                .map(|p| {
                    let x = p.coord(0).to_f64().expect("desk-scale");
                    let y = p.coord(1).to_f64().expect("desk-scale");
                    format!("{},{}", fmt(map.x(x)), fmt(map.y(y)))
                })
                .collect();
            let _ = write!(
                svg,
                "<polygon points=\"{}\" fill=\"{}\" fill-opacity=\"0.35\" stroke=\"#333333\" stroke-width=\"{}\"/>\n",
                points.join(" "),
                fill,
                fmt(stroke)
            );
        }
        for e in &sub.edges {
            let ax = e.a.coord(0).to_f64().expect("desk-scale");
            let ay = e.a.coord(1).to_f64().expect("desk-scale");
            let bx = e.b.coord(0).to_f64().expect("desk-scale");
            let by = e.b.coord(1).to_f64().expect("desk-scale");
            let _ = write!(
                svg,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#333333\" stroke-width=\"{}\"/>\n",
                fmt(map.x(ax)),
                fmt(map.y(ay)),
                fmt(map.x(bx)),
                fmt(map.y(by)),
                fmt(if e.external { stroke } else { stroke * 0.6 })
            );
        }
    }
    for (p, c) in polytope.support.iter().zip(&coords) {
        let vertex = polytope.vertices.contains(p);
        let _ = write!(
            svg,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>\n",
            fmt(map.x(c[0])),
            fmt(map.y(c[1])),
            fmt(if vertex { 5.0 } else { 3.5 }),
            if vertex { "#d62728" } else { "#555555" }
        );
    }
}

fn render_curve(svg: &mut String, curve: &TropicalCurve, spec: &RenderSpec) {
    let mut min = [-2.0f64, -2.0];
    let mut max = [2.0f64, 2.0];
    for v in &curve.vertices {
        let x = rat_to_f64(&v[0]);
        let y = rat_to_f64(&v[1]);
        min[0] = min[0].min(x - 2.0);
        min[1] = min[1].min(y - 2.0);
        max[0] = max[0].max(x + 2.0);
        max[1] = max[1].max(y + 2.0);
    }
    for l in &curve.lines {
        let o = rat_to_f64(&l.offset);
        min[0] = min[0].min(-o.abs() - 2.0);
        min[1] = min[1].min(-o.abs() - 2.0);
        max[0] = max[0].max(o.abs() + 2.0);
        max[1] = max[1].max(o.abs() + 2.0);
    }
    let map = Mapper::new(min, max, spec.width, spec.height, 10.0);
    let stroke = spec.styling.stroke_width;
    let ray_len = (max[0] - min[0]).max(max[1] - min[1]);

    svg.push_str(
        "<defs><marker id=\"arrow\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" refY=\"3\" orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" fill=\"#1f77b4\"/></marker></defs>\n",
    );

    for e in &curve.edges {
        let a = &curve.vertices[e.from];
        let b = &curve.vertices[e.to];
        let _ = write!(
            svg,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#1f77b4\" stroke-width=\"{}\"/>\n",
            fmt(map.x(rat_to_f64(&a[0]))),
            fmt(map.y(rat_to_f64(&a[1]))),
            fmt(map.x(rat_to_f64(&b[0]))),
            fmt(map.y(rat_to_f64(&b[1]))),
            fmt(stroke * e.weight.to_f64().unwrap_or(1.0).max(1.0))
        );
    }
    for r in &curve.rays {
        let base = &curve.vertices[r.base];
        let bx = rat_to_f64(&base[0]);
        let by = rat_to_f64(&base[1]);
        let dx = r.direction.coord(0).to_f64().expect("primitive direction");
        let dy = r.direction.coord(1).to_f64().expect("primitive direction");
        let norm = (dx * dx + dy * dy).sqrt();
        let ex = bx + dx / norm * ray_len;
        let ey = by + dy / norm * ray_len;
        let _ = write!(
            svg,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#1f77b4\" stroke-width=\"{}\" marker-end=\"url(#arrow)\"/>\n",
            fmt(map.x(bx)),
            fmt(map.y(by)),
            fmt(map.x(ex)),
            fmt(map.y(ey)),
            fmt(stroke * r.weight.to_f64().unwrap_or(1.0).max(1.0))
        );
    }
    for l in &curve.lines {
        // Full affine line <normal, x> = offset clipped to the viewport box.
        let nx = l.normal.coord(0).to_f64().expect("primitive normal");
        let ny = l.normal.coord(1).to_f64().expect("primitive normal");
        let o = rat_to_f64(&l.offset);
        let n2 = nx * nx + ny * ny;
        let px = o * nx / n2;
        let py = o * ny / n2;
        let (dx, dy) = (-ny / n2.sqrt(), nx / n2.sqrt());
        let _ = write!(
            svg,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#1f77b4\" stroke-width=\"{}\"/>\n",
            fmt(map.x(px - dx * ray_len)),
            fmt(map.y(py - dy * ray_len)),
            fmt(map.x(px + dx * ray_len)),
            fmt(map.y(py + dy * ray_len)),
            fmt(stroke * l.weight.to_f64().unwrap_or(1.0).max(1.0))
        );
    }
    for v in &curve.vertices {
        let _ = write!(
            svg,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#d62728\"/>\n",
            fmt(map.x(rat_to_f64(&v[0]))),
            fmt(map.y(rat_to_f64(&v[1]))),
            fmt(4.0)
        );
    }
}

/// Clip a polygon to the axis box `[0, side]²` (Sutherland–Hodgman).
fn clip_to_box(poly: &[[f64; 2]], side: f64) -> Vec<[f64; 2]> {
    let mut current: Vec<[f64; 2]> = poly.to_vec();
    // (component, bound, keep_less_than)
    let planes = [
        (0usize, 0.0f64, false),
        (0, side, true),
        (1, 0.0, false),
        (1, side, true),
    ];
    for (axis, bound, keep_lt) in planes {
        if current.is_empty() {
            break;
        }
        let inside = |p: &[f64; 2]| {
            if keep_lt {
                p[axis] <= bound
            } else {
                p[axis] >= bound
            }
        };
        let mut next: Vec<[f64; 2]> = Vec::with_capacity(current.len() + 2);
        for i in 0..current.len() {
            let a = current[i];
            let b = current[(i + 1) % current.len()];
            let ia = inside(&a);
            let ib = inside(&b);
            if ia {
                next.push(a);
            }
            if ia != ib {
                let t = (bound - a[axis]) / (b[axis] - a[axis]);
                let mut p = [0.0; 2];
                p[axis] = bound;
                p[1 - axis] = a[1 - axis] + t * (b[1 - axis] - a[1 - axis]);
                next.push(p);
            }
        }
        current = next;
    }
    current
}

fn render_model(svg: &mut String, model: &CoamoebaModel, spec: &RenderSpec) {
    let k = spec.domains as f64;
    let side = k * TAU;
    let map = Mapper::new([0.0, 0.0], [side, side], spec.width, spec.height, 6.0);
    let stroke = spec.styling.stroke_width;

    // One filled polygon per piece triangle per rendered domain.
    for (pi, piece) in model.pieces.iter().enumerate() {
        let fill = spec.styling.palette[pi % spec.styling.palette.len()];
        for tri in piece.polygons_2d() {
            for dom_i in 0..spec.domains {
                for dom_j in 0..spec.domains {
                    let shifted: Vec<[f64; 2]> = tri
                        .iter()
                        .map(|v| [v[0] + TAU * dom_i as f64, v[1] + TAU * dom_j as f64])
                        .collect();
                    let clipped = clip_to_box(&shifted, side);
                    if clipped.len() < 3 {
                        continue;
                    }
                    let points: Vec<String> = clipped
                        .iter()
                        .map(|v| format!("{},{}", fmt(map.x(v[0])), fmt(map.y(v[1]))))
                        .collect();
                    let _ = write!(
                        svg,
                        "<polygon points=\"{}\" fill=\"{}\" fill-opacity=\"0.75\"/>\n",
                        points.join(" "),
                        fill
                    );
                }
            }
        }
    }

    // One path per codual hyperplane, containing all of its branch segments
    // in every rendered domain.
    for line in &model.codual_lines {
        let prim = line.normal.primitive();
        let content = line.normal.content().to_f64().expect("desk-scale");
        let nx = prim.coord(0).to_f64().expect("desk-scale");
        let ny = prim.coord(1).to_f64().expect("desk-scale");
        let n2 = nx * nx + ny * ny;
        let (dx, dy) = (-ny, nx);
        let mut d = String::new();
        let branches = content as i64;
        for b in 0..branches {
            let target = (line.offset + TAU * b as f64) / content;
            // All translates <p,x> = target + 2πm that cross the box.
            let m_range = (k * (nx.abs() + ny.abs())).ceil() as i64 + 1;
            for m in -m_range..=m_range {
                let c = target + TAU * m as f64;
                let px = c * nx / n2;
                let py = c * ny / n2;
                // Long segment, clipped as a degenerate polygon.
                let len = 3.0 * side;
                let a = [px - dx * len, py - dy * len];
                let bpt = [px + dx * len, py + dy * len];
                let (sa, sb) = clip_segment_to_box(a, bpt, side);
                if let Some((sa, sb)) = sa.zip(sb) {
                    let _ = write!(
                        d,
                        "M{},{} L{},{} ",
                        fmt(map.x(sa[0])),
                        fmt(map.y(sa[1])),
                        fmt(map.x(sb[0])),
                        fmt(map.y(sb[1]))
                    );
                }
            }
        }
        if !d.is_empty() {
            let _ = write!(
                svg,
                "<path d=\"{}\" stroke=\"{}\" stroke-width=\"{}\" fill=\"none\"/>\n",
                d.trim_end(),
                if line.external { "#d62728" } else { "#2ca02c" },
                fmt(stroke)
            );
        }
    }
}

fn clip_segment_to_box(
    a: [f64; 2],
    b: [f64; 2],
    side: f64,
) -> (Option<[f64; 2]>, Option<[f64; 2]>) {
    // Liang–Barsky.
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    let dx = b[0] - a[0];
    let dy = b[1] - a[1];
    for (p, q) in [
        (-dx, a[0]),
        (dx, side - a[0]),
        (-dy, a[1]),
        (dy, side - a[1]),
    ] {
        if p == 0.0 {
            if q < 0.0 {
                return (None, None);
            }
            continue;
        }
        let r = q / p;
        if p < 0.0 {
            if r > t1 {
                return (None, None);
            }
            t0 = t0.max(r);
        } else {
            if r < t0 {
                return (None, None);
            }
            t1 = t1.min(r);
        }
    }
    (
        Some([a[0] + t0 * dx, a[1] + t0 * dy]),
        Some([a[0] + t1 * dx, a[1] + t1 * dy]),
    )
}

fn render_raster(svg: &mut String, raster: &TorusRaster, spec: &RenderSpec) {
    let n = raster.size();
    let k = spec.domains as usize;
    let cell_w = spec.width as f64 / (k * n) as f64;
    let cell_h = spec.height as f64 / (k * n) as f64;
    // Run-length encode marked rows; y flips so angle axes point up.
    for dom_j in 0..k {
        for dom_i in 0..k {
            let ox = dom_i as f64 * spec.width as f64 / k as f64;
            let oy = dom_j as f64 * spec.height as f64 / k as f64;
            for j in 0..n {
                let mut i = 0usize;
                while i < n {
                    if !raster.get(i, j) {
                        i += 1;
                        continue;
                    }
                    let start = i;
                    while i < n && raster.get(i, j) {
                        i += 1;
                    }
                    let _ = write!(
                        svg,
                        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#1f77b4\"/>\n",
                        fmt(ox + start as f64 * cell_w),
                        fmt(oy + (n - 1 - j) as f64 * cell_h),
                        fmt((i - start) as f64 * cell_w),
                        fmt(cell_h)
                    );
                }
            }
        }
    }
}
