//! Plane drawings of symmetric frameworks: joints, bars, mirror lines,
//! rotation centres and optional velocity arrows.

use std::fmt::Write as _;

use nalgebra::{DVector, Vector2};
use thiserror::Error;

use crate::framework::SymmetricFramework;
use crate::symmetry::{self, ElementKind};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SvgError {
    #[error("drawing needs a framework in the plane, got dimension {0}")]
    Unsupported(usize),
    #[error("velocity vector has {found} entries, expected {expected}")]
    WrongLength { expected: usize, found: usize },
}

const CANVAS: f64 = 400.0;
const MARGIN: f64 = 30.0;
/// Longest arrow as a fraction of the bounding-box diagonal.
pub const ARROW_FRACTION: f64 = 0.15;

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

struct View {
    min: Vector2<f64>,
    max: Vector2<f64>,
    scale: f64,
}

impl View {
    fn new(points: &[Vector2<f64>]) -> Self {
        // the origin is always in view so that mirrors and centres show
        let mut min = Vector2::zeros();
        let mut max = Vector2::zeros();
        for p in points {
            min = min.inf(p);
            max = max.sup(p);
        }
        let extent = (max - min).max().max(1e-9);
        View {
            min,
            max,
            scale: (CANVAS - 2.0 * MARGIN) / extent,
        }
    }

    fn diagonal(&self) -> f64 {
        (self.max - self.min).norm()
    }

    fn width(&self) -> f64 {
        (self.max.x - self.min.x) * self.scale + 2.0 * MARGIN
    }

    fn height(&self) -> f64 {
        (self.max.y - self.min.y) * self.scale + 2.0 * MARGIN
    }

    /// Screen coordinates, with y pointing down.
    fn map(&self, p: &Vector2<f64>) -> (String, String) {
        (
            num((p.x - self.min.x) * self.scale + MARGIN),
            num((self.max.y - p.y) * self.scale + MARGIN),
        )
    }
}

/// Renders a plane framework as SVG 1.1. Velocities, if given, hold two
/// entries per joint; the longest arrow spans 15% of the bounding-box
/// diagonal and zero velocities get no arrow.
pub fn render(fw: &SymmetricFramework, velocities: Option<&DVector<f64>>) -> Result<String, SvgError> {
    if fw.dim() != 2 {
        return Err(SvgError::Unsupported(fw.dim()));
    }
    let n = fw.graph().vertex_count();
    if let Some(v) = velocities {
        if v.len() != 2 * n {
            return Err(SvgError::WrongLength {
                expected: 2 * n,
                found: v.len(),
            });
        }
    }
    let points: Vec<Vector2<f64>> = fw.config().points().iter().map(|p| Vector2::new(p[0], p[1])).collect();
    let view = View::new(&points);
    let tol = fw.tol();
    let group = fw.group();

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = num(view.width()),
        h = num(view.height())
    );
    let _ = writeln!(
        out,
        r##"<defs><marker id="head" markerWidth="8" markerHeight="8" refX="7" refY="4" orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="#888888"/></marker></defs>"##
    );

    let reach = view.diagonal().max(1e-9) + view.min.norm().max(view.max.norm());
    let mut has_rotation = false;
    for x in 0..group.order() {
        match group.element_kind(x, tol) {
            ElementKind::Reflection => {
                let Ok(line) = symmetry::fixed_subspace(group.matrix(x), tol) else {
                    continue;
                };
                let Some(dir) = line.vectors().next() else {
                    continue;
                };
                let dir = Vector2::new(dir[0], dir[1]);
                let (x1, y1) = view.map(&(dir * -reach));
                let (x2, y2) = view.map(&(dir * reach));
                let _ = writeln!(
                    out,
                    r##"<line class="mirror" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#3366cc" stroke-width="1" stroke-dasharray="6,4"/>"##
                );
            }
            ElementKind::Identity => {}
            _ => has_rotation = true,
        }
    }
    if has_rotation {
        let (cx, cy) = view.map(&Vector2::zeros());
        let _ = writeln!(out, r##"<circle class="center" cx="{cx}" cy="{cy}" r="3" fill="#cc3333"/>"##);
    }

    for &(i, j) in fw.graph().edges() {
        let (x1, y1) = view.map(&points[i]);
        let (x2, y2) = view.map(&points[j]);
        let _ = writeln!(
            out,
            r##"<line class="bar" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#000000" stroke-width="2"/>"##
        );
    }

    if let Some(v) = velocities {
        let arrows: Vec<Vector2<f64>> = (0..n).map(|i| Vector2::new(v[2 * i], v[2 * i + 1])).collect();
        let longest = arrows.iter().map(|a| a.norm()).fold(0.0, f64::max);
        if longest > 0.0 {
            let factor = ARROW_FRACTION * view.diagonal() / longest;
            for (p, a) in points.iter().zip(&arrows) {
                if a.norm() <= 1e-9 * longest {
                    continue;
                }
                let (x1, y1) = view.map(p);
                let (x2, y2) = view.map(&(p + a * factor));
                let _ = writeln!(
                    out,
                    r##"<line class="velocity" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#888888" stroke-width="1.5" marker-end="url(#head)"/>"##
                );
            }
        }
    }

    for (k, p) in points.iter().enumerate() {
        let (cx, cy) = view.map(p);
        let _ = writeln!(
            out,
            r##"<circle class="joint" cx="{cx}" cy="{cy}" r="5" fill="#ffffff" stroke="#000000" stroke-width="1.5"><title>{}</title></circle>"##,
            k + 1
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
