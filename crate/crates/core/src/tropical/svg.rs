use std::fmt::Write;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{Skeleton, TropicalError};
use crate::lattice::Polytope;

const SCALE: f64 = 40.0;

fn f(x: &BigRational) -> f64 {
    x.to_f64().expect("finite coordinate")
}

struct View {
    min: [f64; 2],
    max: [f64; 2],
}

impl View {
    fn px(&self, p: [f64; 2]) -> (f64, f64) {
        ((p[0] - self.min[0]) * SCALE, (self.max[1] - p[1]) * SCALE)
    }

    // Largest t with start + t * dir inside the box.
    fn clip(&self, start: [f64; 2], dir: [f64; 2]) -> [f64; 2] {
        let mut t = f64::INFINITY;
        for k in 0..2 {
            if dir[k] > 0.0 {
                t = t.min((self.max[k] - start[k]) / dir[k]);
            } else if dir[k] < 0.0 {
                t = t.min((self.min[k] - start[k]) / dir[k]);
            }
        }
        let t = t.max(0.0);
        [start[0] + t * dir[0], start[1] + t * dir[1]]
    }
}

/// Renders the skeleton with the polytope filled underneath.
///
/// The viewport is the bounding box of all finite points plus a margin of one
/// unit; rays are clipped at its border. Styling: polytope `#dddddd` fill,
/// bounded edges black, rays dashed grey, vertices as small black dots.
pub fn export_svg(
    skeleton: &Skeleton,
    polytope: Option<&Polytope>,
) -> Result<String, TropicalError> {
    if let Some(p) = polytope {
        if p.dim() != 2 {
            return Err(TropicalError::NotPlanar(p.dim()));
        }
    }
    let mut pts: Vec<[f64; 2]> = skeleton
        .vertices
        .iter()
        .map(|p| [f(&p[0]), f(&p[1])])
        .collect();
    for e in &skeleton.edges {
        pts.push([f(&e.from[0]), f(&e.from[1])]);
        pts.push([f(&e.to[0]), f(&e.to[1])]);
    }
    for r in &skeleton.rays {
        pts.push([f(&r.start[0]), f(&r.start[1])]);
    }
    let poly: Vec<[f64; 2]> = polytope
        .map(|p| p.vertices().iter().map(|v| [f(&v[0]), f(&v[1])]).collect())
        .unwrap_or_default();
    pts.extend(poly.iter().copied());
    if pts.is_empty() {
        pts.push([0.0, 0.0]);
    }
    let mut min = [f64::INFINITY; 2];
    let mut max = [f64::NEG_INFINITY; 2];
    for p in &pts {
        for k in 0..2 {
            min[k] = min[k].min(p[k]);
            max[k] = max[k].max(p[k]);
        }
    }
    let view = View {
        min: [min[0] - 1.0, min[1] - 1.0],
        max: [max[0] + 1.0, max[1] + 1.0],
    };
    let width = (view.max[0] - view.min[0]) * SCALE;
    let height = (view.max[1] - view.min[1]) * SCALE;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.3}" height="{height:.3}" viewBox="0 0 {width:.3} {height:.3}">"#
    );
    if poly.len() >= 3 {
        let cx = poly.iter().map(|p| p[0]).sum::<f64>() / poly.len() as f64;
        let cy = poly.iter().map(|p| p[1]).sum::<f64>() / poly.len() as f64;
        let mut sorted = poly.clone();
        sorted.sort_by(|a, b| {
            let ta = (a[1] - cy).atan2(a[0] - cx);
            let tb = (b[1] - cy).atan2(b[0] - cx);
            ta.total_cmp(&tb)
        });
        let coords: Vec<String> = sorted
            .iter()
            .map(|&p| {
                let (x, y) = view.px(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            s,
            r##"  <polygon class="polytope" points="{}" fill="#dddddd" stroke="none"/>"##,
            coords.join(" ")
        );
    }
    for e in &skeleton.edges {
        let (x1, y1) = view.px([f(&e.from[0]), f(&e.from[1])]);
        let (x2, y2) = view.px([f(&e.to[0]), f(&e.to[1])]);
        let _ = writeln!(
            s,
            r#"  <line class="edge" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="black" stroke-width="2"/>"#
        );
    }
    for r in &skeleton.rays {
        let start = [f(&r.start[0]), f(&r.start[1])];
        let dir = [r.direction[0] as f64, r.direction[1] as f64];
        let end = view.clip(start, dir);
        let begin = if r.full_line {
            view.clip(start, [-dir[0], -dir[1]])
        } else {
            start
        };
        let (x1, y1) = view.px(begin);
        let (x2, y2) = view.px(end);
        let _ = writeln!(
            s,
            r#"  <line class="ray" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="grey" stroke-width="2" stroke-dasharray="6,4"/>"#
        );
    }
    for v in &skeleton.vertices {
        let (x, y) = view.px([f(&v[0]), f(&v[1])]);
        let _ = writeln!(
            s,
            r#"  <circle class="vertex" cx="{x:.3}" cy="{y:.3}" r="3" fill="black"/>"#
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}
