//! Standalone SVG rendering of regions and containers.
//!
//! Output is a fixed 800x800 canvas. The view box fits all shapes with a 5%
//! margin and the y axis points up. Numbers are printed with a fixed number
//! of decimals so identical input gives identical bytes.

use std::fmt::Write as _;
use std::path::Path;

use crate::ellipse::Ellipse;
use crate::error::Result;
use crate::geom::{ConvexPolygon, Point};
use crate::rect::OrientedRectangle;

pub const CANVAS: u32 = 800;
const MARGIN: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    /// Input region, drawn filled.
    Polygon(ConvexPolygon),
    Rectangle(OrientedRectangle),
    Triangle([Point; 3]),
    Ellipse(Ellipse),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Item {
    pub shape: Shape,
    pub color: &'static str,
    /// Dashed stroke.
    pub dashed: bool,
}

impl Item {
    pub fn new(shape: Shape, color: &'static str) -> Self {
        Item {
            shape,
            color,
            dashed: false,
        }
    }

    pub fn dashed(mut self) -> Self {
        self.dashed = true;
        self
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.trim_start_matches('-').trim_matches(|c| c == '0' || c == '.').is_empty() {
        "0.000000".to_string()
    } else {
        s
    }
}

fn extent(shape: &Shape) -> (f64, f64, f64, f64) {
    let pts: Vec<Point> = match shape {
        Shape::Polygon(p) => p.vertices().to_vec(),
        Shape::Rectangle(r) => r.vertices().to_vec(),
        Shape::Triangle(t) => t.to_vec(),
        Shape::Ellipse(e) => {
            let (c, s) = (e.phi.cos(), e.phi.sin());
            let hx = (e.a * e.a * c * c + e.b * e.b * s * s).sqrt();
            let hy = (e.a * e.a * s * s + e.b * e.b * c * c).sqrt();
            vec![e.center - Point::new(hx, hy), e.center + Point::new(hx, hy)]
        }
    };
    pts.iter().fold(
        (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY),
        |(x0, y0, x1, y1), p| (x0.min(p.x), y0.min(p.y), x1.max(p.x), y1.max(p.y)),
    )
}

fn points_attr(pts: &[Point]) -> String {
    pts.iter()
        .map(|p| format!("{},{}", num(p.x), num(p.y)))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn render_svg(items: &[Item]) -> String {
    let (mut x0, mut y0, mut x1, mut y1) = items.iter().map(|i| extent(&i.shape)).fold(
        (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY),
        |a, b| (a.0.min(b.0), a.1.min(b.1), a.2.max(b.2), a.3.max(b.3)),
    );
    if !x0.is_finite() {
        (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
    }
    // square view box so the figure is not distorted
    let side = (x1 - x0).max(y1 - y0).max(1e-12);
    let pad = side * MARGIN;
    let (cx, cy) = (0.5 * (x0 + x1), 0.5 * (y0 + y1));
    let view = side + 2.0 * pad;
    let stroke = view / CANVAS as f64 * 2.0;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS}" height="{CANVAS}" viewBox="{} {} {} {}">"#,
        num(cx - view / 2.0),
        num(-cy - view / 2.0),
        num(view),
        num(view)
    );
    let _ = writeln!(s, r#"<g transform="scale(1,-1)" stroke-width="{}">"#, num(stroke));
    for item in items {
        let dash = if item.dashed {
            format!(r#" stroke-dasharray="{} {}""#, num(4.0 * stroke), num(3.0 * stroke))
        } else {
            String::new()
        };
        let paint = format!(r#"stroke="{}"{dash}"#, item.color);
        let _ = match &item.shape {
            Shape::Polygon(p) => writeln!(
                s,
                r#"<polygon points="{}" fill="{}" fill-opacity="0.35" {paint}/>"#,
                points_attr(p.vertices()),
                item.color
            ),
            Shape::Rectangle(r) => writeln!(
                s,
                r#"<rect x="{}" y="{}" width="{}" height="{}" transform="rotate({} {} {})" fill="none" {paint}/>"#,
                num(r.center.x - r.half_long),
                num(r.center.y - r.half_short),
                num(2.0 * r.half_long),
                num(2.0 * r.half_short),
                num(r.orientation.to_degrees()),
                num(r.center.x),
                num(r.center.y)
            ),
            Shape::Triangle(t) => writeln!(
                s,
                r#"<path d="M {} {} L {} {} L {} {} Z" fill="none" {paint}/>"#,
                num(t[0].x),
                num(t[0].y),
                num(t[1].x),
                num(t[1].y),
                num(t[2].x),
                num(t[2].y)
            ),
            Shape::Ellipse(e) => writeln!(
                s,
                r#"<ellipse cx="{}" cy="{}" rx="{}" ry="{}" transform="rotate({} {} {})" fill="none" {paint}/>"#,
                num(e.center.x),
                num(e.center.y),
                num(e.a),
                num(e.b),
                num(e.phi.to_degrees()),
                num(e.center.x),
                num(e.center.y)
            ),
        };
    }
    s.push_str("</g>\n</svg>\n");
    s
}

pub fn write_svg(items: &[Item], path: &Path) -> Result<()> {
    std::fs::write(path, render_svg(items))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rect::min_rects;

    #[test]
    fn fig1_has_one_polygon_three_rects() {
        let t = fixtures::fig1_triangle();
        let rep = min_rects(&t);
        let mut items = vec![Item::new(Shape::Polygon(t), "gray")];
        items.push(Item::new(Shape::Rectangle(rep.r_perim), "blue"));
        items.extend(rep.area_ties.iter().map(|r| Item::new(Shape::Rectangle(*r), "red").dashed()));
        let svg = render_svg(&items);
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert_eq!(svg.matches("<rect").count(), 3);
        assert_eq!(svg, render_svg(&items));
        assert!(svg.contains(r#"width="800" height="800""#));
    }

    #[test]
    fn number_format_has_no_negative_zero() {
        assert_eq!(num(-0.0), "0.000000");
        assert_eq!(num(-1e-9), "0.000000");
        assert_eq!(num(-1.5), "-1.500000");
        assert_eq!(num(10.0), "10.000000");
    }
}
