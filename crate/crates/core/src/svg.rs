//! SVG pictures of an instance: points, tree, enclosing circle, and optionally
//! the diametral disks and ratio ellipses of the tree edges.
//!
//! Output is a pure function of the input, so rendered files can be diffed.

use std::fmt::Write as _;
use std::path::Path;

use crate::enclosing::smallest_enclosing_circle;
use crate::error::Result;
use crate::fingerhut::EllipseSpec;
use crate::geom::{dist, Edge, Point};
use crate::piercing::diametral_disks;
use crate::spanning::{max_spanning_tree, Instance};

const CANVAS: f64 = 512.0;
const MARGIN: f64 = 24.0;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SvgOptions {
    pub disks: bool,
    /// Draw each tree edge's ellipse at this ratio.
    pub ellipses: Option<f64>,
    pub sec_seed: u64,
}

/// Maps the enclosing circle into the canvas, y pointing up.
struct View {
    center: Point,
    scale: f64,
}

impl View {
    fn x(&self, p: Point) -> f64 {
        CANVAS / 2.0 + (p.x - self.center.x) * self.scale
    }

    fn y(&self, p: Point) -> f64 {
        CANVAS / 2.0 - (p.y - self.center.y) * self.scale
    }

    fn len(&self, l: f64) -> f64 {
        l * self.scale
    }
}

pub fn render_svg(inst: &Instance, opts: &SvgOptions) -> Result<String> {
    let pts = inst.points();
    let tree = max_spanning_tree(inst);
    let sec = smallest_enclosing_circle(inst, opts.sec_seed).circle;

    // Ellipses reach further out than the circle; leave room for them.
    let mut extent = sec.radius;
    let mut ellipses = Vec::new();
    if let Some(alpha) = opts.ellipses {
        for e in &tree.edges {
            let spec = EllipseSpec::new(pts[e.i], pts[e.j], alpha)?;
            let mid = pts[e.i].midpoint(pts[e.j]);
            extent = extent.max(dist(mid, sec.center) + spec.semi_axes().0);
            ellipses.push(spec);
        }
    }
    let scale = if extent > 0.0 { (CANVAS / 2.0 - MARGIN) / extent } else { 1.0 };
    let v = View { center: sec.center, scale };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if opts.disks {
        let _ = writeln!(s, r#"<g fill="steelblue" fill-opacity="0.12" stroke="steelblue" stroke-width="0.5">"#);
        for d in diametral_disks(inst, &tree) {
            circle(&mut s, &v, d.center, d.radius);
        }
        s.push_str("</g>\n");
    }
    if !ellipses.is_empty() {
        let _ = writeln!(s, r#"<g fill="none" stroke="darkorange" stroke-width="0.75">"#);
        for e in &ellipses {
            ellipse(&mut s, &v, e);
        }
        s.push_str("</g>\n");
    }
    let _ = writeln!(s, r#"<g fill="none" stroke="black" stroke-width="2">"#);
    circle(&mut s, &v, sec.center, sec.radius);
    s.push_str("</g>\n");
    let _ = writeln!(s, r#"<g stroke="crimson" stroke-width="1.5">"#);
    for e in &tree.edges {
        line(&mut s, &v, e, pts);
    }
    s.push_str("</g>\n");
    let _ = writeln!(s, r#"<g fill="black">"#);
    for &p in pts {
        let _ = writeln!(s, r#"<circle cx="{:.3}" cy="{:.3}" r="3"/>"#, v.x(p), v.y(p));
    }
    s.push_str("</g>\n");
    let (cx, cy) = (v.x(sec.center), v.y(sec.center));
    let _ = writeln!(
        s,
        r#"<path d="M {:.3} {:.3} L {:.3} {:.3} M {:.3} {:.3} L {:.3} {:.3}" stroke="black" stroke-width="1.5"/>"#,
        cx - 6.0,
        cy - 6.0,
        cx + 6.0,
        cy + 6.0,
        cx - 6.0,
        cy + 6.0,
        cx + 6.0,
        cy - 6.0
    );
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn write_svg(inst: &Instance, opts: &SvgOptions, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, render_svg(inst, opts)?)?;
    Ok(())
}

fn circle(s: &mut String, v: &View, c: Point, r: f64) {
    let _ = writeln!(s, r#"<circle cx="{:.3}" cy="{:.3}" r="{:.3}"/>"#, v.x(c), v.y(c), v.len(r));
}

fn line(s: &mut String, v: &View, e: &Edge, pts: &[Point]) {
    let (a, b) = e.endpoints(pts);
    let _ = writeln!(s, r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#, v.x(a), v.y(a), v.x(b), v.y(b));
}

fn ellipse(s: &mut String, v: &View, e: &EllipseSpec) {
    let (major, minor) = e.semi_axes();
    let c = e.focus_a.midpoint(e.focus_b);
    // SVG rotates clockwise in screen space, which is counterclockwise once y is flipped.
    let tilt = 0.0 - (e.focus_b - e.focus_a).polar_angle().to_degrees();
    let _ = writeln!(
        s,
        r#"<ellipse cx="{:.3}" cy="{:.3}" rx="{:.3}" ry="{:.3}" transform="rotate({:.3} {:.3} {:.3})"/>"#,
        v.x(c),
        v.y(c),
        v.len(major),
        v.len(minor),
        tilt,
        v.x(c),
        v.y(c)
    );
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn square() -> Instance {
        Instance::with_id(
            vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 1.0)],
            "unit-square",
        )
        .unwrap()
    }

    #[test]
    fn square_matches_golden() {
        let opts = SvgOptions { disks: true, ellipses: Some(2f64.sqrt()), sec_seed: 0 };
        let got = render_svg(&square(), &opts).unwrap();
        let golden = include_str!("../tests/golden/unit_square.svg");
        assert_eq!(got, golden);
    }

    #[test]
    fn plain_picture_has_no_disks() {
        let got = render_svg(&square(), &SvgOptions::default()).unwrap();
        assert!(!got.contains("<ellipse"));
        assert!(!got.contains("steelblue"));
        assert_eq!(got.matches("<line").count(), 3);
        assert!(got.ends_with("</svg>\n"));
    }

    #[test]
    fn two_points_and_single_point() {
        let two = Instance::new(vec![Point::new(-1.0, 0.0), Point::new(1.0, 0.0)]).unwrap();
        let s = render_svg(&two, &SvgOptions { disks: true, ..Default::default() }).unwrap();
        assert_eq!(s.matches("<line").count(), 1);
        let one = Instance::new(vec![Point::new(3.0, 4.0)]).unwrap();
        let s = render_svg(&one, &SvgOptions::default()).unwrap();
        assert!(s.contains(r#"<circle cx="256.000" cy="256.000" r="3"/>"#));
    }

    #[test]
    fn rejects_ratio_below_one() {
        let opts = SvgOptions { ellipses: Some(0.5), ..Default::default() };
        assert!(matches!(render_svg(&square(), &opts), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn unwritable_path_is_io_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("missing").join("x.svg");
        assert!(matches!(write_svg(&square(), &SvgOptions::default(), path), Err(Error::Io(_))));
    }
}
