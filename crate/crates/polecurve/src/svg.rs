//! Self-contained SVG 1.1 plots: Poincare disk for the hyperbolic plane,
//! orthographic z-projection for the sphere, plain planar axes otherwise.
//! No external renderer; output is deterministic for fixed input.

use std::path::Path;

use crate::curves::CurveSamples;
use crate::error::Result;
use crate::geometry::{embed, orthographic_project, poincare_project, PolarPoint, SpaceKind};

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// A disk-bounded figure assembled from projected polylines.
pub struct DiskPlot {
    size: u32,
    /// Radius of the boundary circle in model coordinates; curves are drawn
    /// in the same coordinates.
    model_radius: f64,
    draw_boundary: bool,
    polylines: Vec<(Vec<(f64, f64)>, String)>,
}

impl DiskPlot {
    pub fn new(model_radius: f64, draw_boundary: bool) -> Self {
        Self {
            size: 640,
            model_radius,
            draw_boundary,
            polylines: Vec::new(),
        }
    }

    pub fn with_size(mut self, size: u32) -> Self {
        self.size = size;
        self
    }

    pub fn add_polyline(&mut self, points: Vec<(f64, f64)>, color: Option<&str>) {
        let color = color
            .map(str::to_owned)
            .unwrap_or_else(|| PALETTE[self.polylines.len() % PALETTE.len()].to_owned());
        self.polylines.push((points, color));
    }

    pub fn render(&self) -> String {
        let s = self.size as f64;
        let scale = s / (2.2 * self.model_radius);
        let to_px = |p: (f64, f64)| -> (f64, f64) {
            (s / 2.0 + p.0 * scale, s / 2.0 - p.1 * scale)
        };
        let mut out = String::new();
        out.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n",
            self.size
        ));
        out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
        if self.draw_boundary {
            out.push_str(&format!(
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"{:.2}\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1.5\"/>\n",
                s / 2.0,
                s / 2.0,
                self.model_radius * scale
            ));
        }
        // pole marker at the origin
        let (cx, cy) = to_px((0.0, 0.0));
        out.push_str(&format!(
            "<circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"2.5\" fill=\"#333333\"/>\n"
        ));
        for (points, color) in &self.polylines {
            if points.len() < 2 {
                continue;
            }
            out.push_str(&format!(
                "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.2\" points=\""
            ));
            for &p in points {
                let (x, y) = to_px(p);
                out.push_str(&format!("{x:.4},{y:.4} "));
            }
            out.push_str("\"/>\n");
        }
        out.push_str("</svg>\n");
        out
    }
}

/// Projects curve samples with the model projection of their space.
pub fn project_curve(c: &CurveSamples) -> Result<Vec<(f64, f64)>> {
    let mut pts = Vec::with_capacity(c.len());
    for i in 0..c.len() {
        let p = embed(c.space, PolarPoint::new(c.u[i], c.v[i]))?;
        pts.push(match c.space {
            SpaceKind::Hyperbolic => poincare_project(p),
            SpaceKind::Spherical => orthographic_project(p),
            SpaceKind::Euclidean => (p.x, p.y),
        });
    }
    Ok(pts)
}

/// Renders one or more curves of the same space into a disk figure.
pub fn plot_curves(space: SpaceKind, curves: &[&CurveSamples]) -> Result<String> {
    let mut radius: f64 = 1.0;
    if space == SpaceKind::Euclidean {
        for c in curves {
            for &u in &c.u {
                radius = radius.max(u * 1.05);
            }
        }
    }
    let mut plot = DiskPlot::new(radius, true);
    for c in curves {
        plot.add_polyline(project_curve(c)?, None);
    }
    Ok(plot.render())
}

pub fn write_svg(path: &Path, content: &str) -> Result<()> {
    std::fs::write(path, content)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::circle_samples;

    #[test]
    fn hyperbolic_plot_contains_boundary_and_polyline() {
        let c = circle_samples(SpaceKind::Hyperbolic, 1.0, 128).unwrap();
        let svg = plot_curves(SpaceKind::Hyperbolic, &[&c]).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("<circle"));
        assert!(svg.contains("<polyline"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn projected_points_stay_in_the_disk() {
        let c = circle_samples(SpaceKind::Hyperbolic, 2.5, 64).unwrap();
        for (x, y) in project_curve(&c).unwrap() {
            assert!(x * x + y * y < 1.0);
        }
        let c = circle_samples(SpaceKind::Spherical, 2.0, 64).unwrap();
        for (x, y) in project_curve(&c).unwrap() {
            assert!(x * x + y * y <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn rendering_is_deterministic() {
        let c = circle_samples(SpaceKind::Spherical, 1.0, 32).unwrap();
        let a = plot_curves(SpaceKind::Spherical, &[&c]).unwrap();
        let b = plot_curves(SpaceKind::Spherical, &[&c]).unwrap();
        assert_eq!(a, b);
    }
}
