//! SVG rendering of both pictures of a polygon.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use crate::{CuspPoint, IdealPolygon, PolygonPicture};

const PANEL_WIDTH: f64 = 480.0;
const PANEL_HEIGHT: f64 = 360.0;
const MARGIN: f64 = 20.0;

struct Frame {
    x0: f64,
    scale: f64,
    base: f64,
    offset: f64,
}

impl Frame {
    fn new(picture: &PolygonPicture, offset: f64) -> Frame {
        let mut xs: Vec<f64> = picture
            .corners
            .iter()
            .chain([&picture.before_first, &picture.after_last])
            .filter(|c| !c.is_infinity())
            .map(CuspPoint::to_f64)
            .collect();
        xs.push(picture.finite_vertex.0);
        let lo = xs.iter().cloned().fold(f64::INFINITY, f64::min) - 0.5;
        let hi = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 0.5;
        let width = PANEL_WIDTH - 2.0 * MARGIN;
        Frame {
            x0: lo,
            scale: width / (hi - lo),
            base: PANEL_HEIGHT - MARGIN,
            offset,
        }
    }

    fn point(&self, x: f64, y: f64) -> (f64, f64) {
        (
            self.offset + MARGIN + (x - self.x0) * self.scale,
            self.base - y * self.scale,
        )
    }
}

/// The geodesic through the finite point `z` and the ideal point `b`, as
/// `Some((center, radius))` or `None` for a vertical line.
fn circle_through(z: (f64, f64), b: &CuspPoint) -> Option<(f64, f64)> {
    if b.is_infinity() {
        return None;
    }
    let bx = b.to_f64();
    if (z.0 - bx).abs() < 1e-12 {
        return None;
    }
    let c = (z.0 * z.0 + z.1 * z.1 - bx * bx) / (2.0 * (z.0 - bx));
    Some((c, (bx - c).abs()))
}

fn arc(out: &mut String, f: &Frame, from: (f64, f64), to: (f64, f64), circle: Option<(f64, f64)>) {
    let (x1, y1) = f.point(from.0, from.1);
    let (x2, y2) = f.point(to.0, to.1);
    match circle {
        Some((c, r)) => {
            let phi1 = from.1.atan2(from.0 - c);
            let phi2 = to.1.atan2(to.0 - c);
            let sweep = u8::from(phi2 > phi1);
            let rr = r * f.scale;
            let _ = writeln!(
                out,
                r#"<path d="M {x1:.2} {y1:.2} A {rr:.2} {rr:.2} 0 0 {sweep} {x2:.2} {y2:.2}" fill="none" stroke="black"/>"#
            );
        }
        None => {
            let _ = writeln!(
                out,
                r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="black"/>"#
            );
        }
    }
}

/// Endpoint on screen of an ideal point: the real axis, or the top edge
/// above `x` for infinity.
fn ideal(f: &Frame, c: &CuspPoint, x: f64) -> (f64, f64) {
    if c.is_infinity() {
        (x, (f.base - MARGIN) / f.scale)
    } else {
        (c.to_f64(), 0.0)
    }
}

fn panel(out: &mut String, picture: &PolygonPicture, offset: f64, title: &str) {
    let f = Frame::new(picture, offset);
    let (ax1, ay) = f.point(f.x0, 0.0);
    let _ = writeln!(
        out,
        r#"<line x1="{ax1:.2}" y1="{ay:.2}" x2="{:.2}" y2="{ay:.2}" stroke="gray"/>"#,
        offset + PANEL_WIDTH - MARGIN
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-size="14">{title}</text>"#,
        offset + MARGIN,
        MARGIN
    );
    let corners = &picture.corners;
    for pair in corners.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        match (a.is_infinity(), b.is_infinity()) {
            (false, false) => {
                let (xa, xb) = (a.to_f64(), b.to_f64());
                let c = 0.5 * (xa + xb);
                arc(
                    out,
                    &f,
                    (xa, 0.0),
                    (xb, 0.0),
                    Some((c, 0.5 * (xb - xa).abs())),
                );
            }
            (true, false) => arc(out, &f, ideal(&f, a, b.to_f64()), (b.to_f64(), 0.0), None),
            (false, true) => arc(out, &f, (a.to_f64(), 0.0), ideal(&f, b, a.to_f64()), None),
            (true, true) => {}
        }
    }
    let z = picture.finite_vertex;
    for end in [&corners[0], &corners[corners.len() - 1]] {
        let circle = circle_through(z, end);
        arc(out, &f, z, ideal(&f, end, z.0), circle);
    }
    for c in corners.iter().filter(|c| !c.is_infinity()) {
        let (x, y) = f.point(c.to_f64(), 0.0);
        let _ = writeln!(
            out,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="blue"/>"#
        );
        let _ = writeln!(
            out,
            r#"<text x="{x:.2}" y="{:.2}" font-size="10" text-anchor="middle">{c}</text>"#,
            y + 14.0
        );
    }
    let (zx, zy) = f.point(z.0, z.1);
    let _ = writeln!(
        out,
        r#"<circle cx="{zx:.2}" cy="{zy:.2}" r="3" fill="red"/>"#
    );
}

/// Renders `P` and `P'` side by side.
pub fn polygon_svg(poly: &IdealPolygon) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        2.0 * PANEL_WIDTH,
        PANEL_HEIGHT + MARGIN,
        2.0 * PANEL_WIDTH,
        PANEL_HEIGHT + MARGIN
    );
    panel(&mut out, &poly.picture, 0.0, "P");
    panel(&mut out, &poly.picture_prime, PANEL_WIDTH, "P'");
    out.push_str("</svg>\n");
    out
}

/// Writes [`polygon_svg`] to a file.
pub fn write_polygon_svg(poly: &IdealPolygon, path: &Path) -> io::Result<()> {
    std::fs::write(path, polygon_svg(poly))
}
