//! Named input shapes used by tests, the CLI and the reproduction run.

use std::f64::consts::{PI, TAU};

use crate::geom::{ConvexPolygon, Point};
use crate::rect::hexagon_family;

/// Coordinates are rounded to this grid so that fixtures built from
/// trigonometry are reproducible across platforms.
pub const COORD_GRID: f64 = 1e-12;

pub fn round_coord(x: f64) -> f64 {
    let r = (x / COORD_GRID).round() * COORD_GRID;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn polygon(points: impl IntoIterator<Item = (f64, f64)>) -> ConvexPolygon {
    ConvexPolygon::new(
        points
            .into_iter()
            .map(|(x, y)| Point::new(round_coord(x), round_coord(y)))
            .collect(),
    )
    .expect("fixture is a valid convex polygon")
}

pub fn unit_square() -> ConvexPolygon {
    polygon([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
}

/// Isosceles right triangle with unit legs.
pub fn fig1_triangle() -> ConvexPolygon {
    polygon([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])
}

/// Isosceles triangle with unit legs meeting at the origin with the given
/// apex angle; the first leg lies on the x axis. Apex 90 gives
/// `fig1_triangle`.
pub fn isosceles_apex(apex_deg: f64) -> ConvexPolygon {
    let a = apex_deg.to_radians();
    polygon([(0.0, 0.0), (1.0, 0.0), (a.cos(), a.sin())])
}

/// `fig1_triangle` opened up to a 91 degree apex.
pub fn t_prime() -> ConvexPolygon {
    isosceles_apex(91.0)
}

/// Equilateral triangle with its base from the origin along the x axis.
pub fn equilateral(side: f64) -> ConvexPolygon {
    polygon([(0.0, 0.0), (side, 0.0), (side / 2.0, side * 3f64.sqrt() / 2.0)])
}

/// Equilateral triangle inscribed in the circle of radius `r` about the
/// origin, one vertex straight up.
pub fn equilateral_circumradius(r: f64) -> ConvexPolygon {
    regular_polygon(3, r)
}

/// Regular `n`-gon inscribed in the circle of radius `r` about the origin,
/// one vertex straight up.
pub fn regular_polygon(n: usize, r: f64) -> ConvexPolygon {
    polygon((0..n).map(|k| {
        let t = PI / 2.0 + TAU * k as f64 / n as f64;
        (r * t.cos(), r * t.sin())
    }))
}

/// Named fixtures accepted by the command line.
pub fn by_name(name: &str) -> Option<ConvexPolygon> {
    Some(match name {
        "square" | "unit-square" => unit_square(),
        "fig1" | "fig1-triangle" => fig1_triangle(),
        "tprime" | "t-prime" => t_prime(),
        "equilateral" => equilateral(1.0),
        "hexagon" => hexagon_family(0.5).ok()?,
        "thin-obtuse" => polygon([(0.0, 0.0), (1.0, 0.0), (0.5, 0.05)]),
        _ => return None,
    })
}

pub const NAMES: &[&str] = &["square", "fig1", "tprime", "equilateral", "hexagon", "thin-obtuse"];
