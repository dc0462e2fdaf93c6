//! Minimum-area and minimum-perimeter bounding rectangles.
//!
//! An optimal rectangle always has a side flush with an edge of the
//! polygon, so the candidates are the bounding rectangles aligned with each
//! hull edge. This is the plain O(n^2) enumeration, not the linear-time
//! caliper walk; `experiments::rect_grid_oracle` checks it independently
//! on a dense angle grid.
//!
//! The module also builds the three rectangle constructions: the
//! isosceles-triangle tie, the shaved-square hexagon family, and the
//! octagon cut out of two crossed rectangles.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{angular_gap, intersect_convex, normalize_angle, ConvexPolygon, HalfPlane, Point};
use crate::{FLUSH_REL, TIE_TOL_REL, TOL_OPT};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrientedRectangle {
    pub center: Point,
    pub half_long: f64,
    pub half_short: f64,
    /// Direction of the longer side, in `[0, pi)`. For squares, the smaller
    /// of the two side directions.
    pub orientation: f64,
    pub degenerate_square: bool,
}

impl OrientedRectangle {
    /// Rectangle with half-extent `half_u` along `theta` and `half_v` along
    /// `theta + pi/2`. `eps` decides when it counts as a square.
    pub fn new(center: Point, half_u: f64, half_v: f64, theta: f64, eps: f64) -> Self {
        let degenerate_square = (half_u - half_v).abs() <= eps;
        let (half_long, half_short, long_dir) = if half_u >= half_v {
            (half_u, half_v, theta)
        } else {
            (half_v, half_u, theta + FRAC_PI_2)
        };
        let orientation = if degenerate_square {
            normalize_angle(theta, FRAC_PI_2)
        } else {
            normalize_angle(long_dir, PI)
        };
        OrientedRectangle {
            center,
            half_long,
            half_short,
            orientation,
            degenerate_square,
        }
    }

    pub fn area(&self) -> f64 {
        4.0 * self.half_long * self.half_short
    }

    pub fn perimeter(&self) -> f64 {
        4.0 * (self.half_long + self.half_short)
    }

    /// Unit vectors along the long and the short side.
    pub fn axes(&self) -> (Point, Point) {
        let u = Point::unit(self.orientation);
        (u, u.perp())
    }

    /// Corners, counter-clockwise.
    pub fn vertices(&self) -> [Point; 4] {
        let (u, v) = self.axes();
        let (a, b) = (u * self.half_long, v * self.half_short);
        let c = self.center;
        [c - a - b, c + a - b, c + a + b, c - a + b]
    }

    /// The four sides as half-planes, starting with the one on `-v`.
    pub fn sides(&self) -> [HalfPlane; 4] {
        let (u, v) = self.axes();
        let c = self.center;
        let o = self.orientation;
        [
            HalfPlane::new(o - FRAC_PI_2, self.half_short - c.dot(v)),
            HalfPlane::new(o, self.half_long + c.dot(u)),
            HalfPlane::new(o + FRAC_PI_2, self.half_short + c.dot(v)),
            HalfPlane::new(o + PI, self.half_long - c.dot(u)),
        ]
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.sides().iter().all(|h| h.contains(p, tol))
    }

    pub fn to_polygon(&self) -> Result<ConvexPolygon> {
        ConvexPolygon::new(self.vertices().to_vec())
    }

    /// Side directions modulo pi (two of them for a square).
    pub fn side_directions(&self) -> Vec<f64> {
        if self.degenerate_square {
            vec![self.orientation, normalize_angle(self.orientation + FRAC_PI_2, PI)]
        } else {
            vec![self.orientation]
        }
    }

    /// Same rectangle up to `rel_tol` (relative to `scale`) in extents and
    /// center and `rel_tol` radians in orientation.
    pub fn approx_eq(&self, other: &OrientedRectangle, rel_tol: f64, scale: f64) -> bool {
        (self.half_long - other.half_long).abs() <= rel_tol * scale
            && (self.half_short - other.half_short).abs() <= rel_tol * scale
            && self.center.dist(other.center) <= rel_tol * scale
            && orientation_gap(self, other).to_radians() <= rel_tol
    }
}

/// Orientation gap in degrees, `[0, 90]`. A square's orientation is
/// ambiguous, so the smallest gap over its side directions is used.
pub fn orientation_gap(a: &OrientedRectangle, b: &OrientedRectangle) -> f64 {
    let mut best = f64::INFINITY;
    for da in a.side_directions() {
        for db in b.side_directions() {
            best = best.min(angular_gap(da, db, PI));
        }
    }
    best
}

/// Smallest rectangle with sides along `theta` and `theta + pi/2` that
/// contains `c`.
pub fn bounding_rect_at(c: &ConvexPolygon, theta: f64) -> OrientedRectangle {
    let u = Point::unit(theta);
    let v = u.perp();
    let (up, um) = (c.support_value(u), c.support_value(-u));
    let (vp, vm) = (c.support_value(v), c.support_value(-v));
    let center = u * ((up - um) / 2.0) + v * ((vp - vm) / 2.0);
    OrientedRectangle::new(center, (up + um) / 2.0, (vp + vm) / 2.0, theta, c.eps())
}

/// Lengths of contact between each rectangle side and the polygon.
pub fn side_contact_lengths(c: &ConvexPolygon, rect: &OrientedRectangle) -> [f64; 4] {
    let tol = c.eps() * 10.0;
    rect.sides().map(|h| h.contact_length(c, tol))
}

/// Whether some side of `rect` lies flush along an edge of `c`.
pub fn has_flush_side(c: &ConvexPolygon, rect: &OrientedRectangle) -> bool {
    let min_len = FLUSH_REL * c.diameter();
    side_contact_lengths(c, rect).iter().any(|&l| l > min_len)
}

/// One bounding rectangle per hull edge direction, duplicates removed.
pub fn flush_candidates(c: &ConvexPolygon) -> Vec<OrientedRectangle> {
    let scale = c.bbox_extent();
    let mut out: Vec<OrientedRectangle> = Vec::with_capacity(c.len());
    for i in 0..c.len() {
        let r = bounding_rect_at(c, c.edge_angle(i));
        if !out.iter().any(|q| q.approx_eq(&r, 1e-9, scale)) {
            out.push(r);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RectGapReport {
    pub r_area: OrientedRectangle,
    pub r_perim: OrientedRectangle,
    /// In degrees, `[0, 90]`.
    pub gap_degrees: f64,
    /// Every candidate within the tie tolerance of the minimum area, sorted
    /// by orientation. `r_area` is the first.
    pub area_ties: Vec<OrientedRectangle>,
    pub perim_ties: Vec<OrientedRectangle>,
}

fn ties_by<F: Fn(&OrientedRectangle) -> f64>(cands: &[OrientedRectangle], obj: F) -> Vec<OrientedRectangle> {
    let best = cands.iter().map(&obj).fold(f64::INFINITY, f64::min);
    let tol = TIE_TOL_REL * best.abs();
    let mut ties: Vec<OrientedRectangle> = cands.iter().filter(|r| obj(r) <= best + tol).copied().collect();
    ties.sort_by(|a, b| a.orientation.total_cmp(&b.orientation));
    ties
}

pub fn min_rects(c: &ConvexPolygon) -> RectGapReport {
    let cands = flush_candidates(c);
    let area_ties = ties_by(&cands, OrientedRectangle::area);
    let perim_ties = ties_by(&cands, OrientedRectangle::perimeter);
    let r_area = area_ties[0];
    let r_perim = perim_ties[0];
    RectGapReport {
        r_area,
        r_perim,
        gap_degrees: orientation_gap(&r_area, &r_perim),
        area_ties,
        perim_ties,
    }
}

/// `w x h` rectangle centered at the origin with its `w` side along `angle`.
pub fn centered_rectangle(w: f64, h: f64, angle: f64) -> Result<ConvexPolygon> {
    let (a, b) = (w / 2.0, h / 2.0);
    ConvexPolygon::new(
        [(-a, -b), (a, -b), (a, b), (-a, b)]
            .iter()
            .map(|&(x, y)| Point::new(x, y).rotate(angle))
            .collect(),
    )
}

/// Unit square with isosceles right triangles of leg `s` shaved off the
/// corners (1,0) and (0,1).
pub fn hexagon_family(s: f64) -> Result<ConvexPolygon> {
    if !(0.0..1.0).contains(&s) {
        return Err(Error::InvalidInput(format!("shave parameter {s} outside [0, 1)")));
    }
    ConvexPolygon::from_coords(&[
        (0.0, 0.0),
        (1.0 - s, 0.0),
        (1.0, s),
        (1.0, 1.0),
        (s, 1.0),
        (0.0, 1.0 - s),
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HexagonSweep {
    /// Shave depth at which the minimum-area rectangle turns to the diagonal.
    pub s_area: f64,
    /// Same for the minimum-perimeter rectangle.
    pub s_perim: f64,
}

fn is_diagonal(r: &OrientedRectangle) -> bool {
    let diag = OrientedRectangle {
        orientation: FRAC_PI_4,
        degenerate_square: false,
        ..*r
    };
    orientation_gap(r, &diag) < 22.5
}

fn switch_point(steps: usize, pick: impl Fn(&RectGapReport) -> OrientedRectangle + Sync) -> Result<f64> {
    let pred = |s: f64| -> Result<bool> { Ok(is_diagonal(&pick(&min_rects(&hexagon_family(s)?)))) };
    let grid: Vec<bool> = (0..steps)
        .into_par_iter()
        .map(|i| pred(i as f64 / steps as f64))
        .collect::<Result<_>>()?;
    let i = grid
        .iter()
        .position(|&d| d)
        .ok_or_else(|| Error::InvalidInput("no orientation switch found".into()))?;
    if i == 0 {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = ((i - 1) as f64 / steps as f64, i as f64 / steps as f64);
    while hi - lo > 1e-7 {
        let mid = 0.5 * (lo + hi);
        if pred(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Locates, for the shaved hexagons, where the area- and perimeter-optimal
/// rectangles switch from the square to the diagonal orientation.
pub fn hexagon_sweep(steps: usize) -> Result<HexagonSweep> {
    if steps < 100 {
        return Err(Error::InvalidInput(format!("hexagon sweep needs >= 100 steps, got {steps}")));
    }
    Ok(HexagonSweep {
        s_area: switch_point(steps, |r| r.r_area)?,
        s_perim: switch_point(steps, |r| r.r_perim)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OctagonPreconditions {
    pub perimeter_r1_less: bool,
    pub area_r1_greater: bool,
    pub diagonal_r1_exceeds_long_r2: bool,
    pub angle_above_45: bool,
}

impl OctagonPreconditions {
    pub fn all(&self) -> bool {
        self.perimeter_r1_less && self.area_r1_greater && self.diagonal_r1_exceeds_long_r2 && self.angle_above_45
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OctagonResult {
    #[serde(skip)]
    pub polygon: ConvexPolygon,
    pub r1: OrientedRectangle,
    pub r2: OrientedRectangle,
    pub report: RectGapReport,
    pub preconditions: OctagonPreconditions,
    pub perim_is_r1: bool,
    pub area_is_r2: bool,
    pub valid: bool,
}

/// Intersects a `w1 x h1` axis-parallel rectangle with a `w2 x h2` one
/// tilted by `angle_deg`, both centered at the origin, and checks whether
/// the result has the first as its perimeter-optimal and the second as its
/// area-optimal rectangle.
pub fn octagon_construct(w1: f64, h1: f64, w2: f64, h2: f64, angle_deg: f64) -> Result<OctagonResult> {
    if !(w1 > h1 && h1 > 0.0 && w2 > h2 && h2 > 0.0) {
        return Err(Error::InvalidInput(format!(
            "rectangles must satisfy w > h > 0 (got {w1}x{h1}, {w2}x{h2})"
        )));
    }
    if !(angle_deg > 0.0 && angle_deg < 90.0) {
        return Err(Error::InvalidInput(format!("angle {angle_deg} outside (0, 90)")));
    }
    let a = angle_deg.to_radians();
    let p1 = centered_rectangle(w1, h1, 0.0)?;
    let p2 = centered_rectangle(w2, h2, a)?;
    let polygon = intersect_convex(&p1, &p2)?;
    let report = min_rects(&polygon);

    let r1 = bounding_rect_at(&p1, 0.0);
    let r2 = bounding_rect_at(&p2, a);
    let preconditions = OctagonPreconditions {
        perimeter_r1_less: r1.perimeter() < r2.perimeter(),
        area_r1_greater: r1.area() > r2.area(),
        diagonal_r1_exceeds_long_r2: w1.hypot(h1) > w2,
        angle_above_45: angle_deg > 45.0,
    };
    let scale = polygon.bbox_extent();
    let perim_is_r1 = report.r_perim.approx_eq(&r1, TOL_OPT, scale);
    let area_is_r2 = report.r_area.approx_eq(&r2, TOL_OPT, scale);
    Ok(OctagonResult {
        valid: preconditions.all() && perim_is_r1 && area_is_r2,
        polygon,
        r1,
        r2,
        report,
        preconditions,
        perim_is_r1,
        area_is_r2,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OctagonSweepPoint {
    pub angle_deg: f64,
    pub valid: bool,
    pub gap_degrees: f64,
}

/// Evaluates `octagon_construct` on `from, from + step, ..., <= to`.
pub fn octagon_sweep(w1: f64, h1: f64, w2: f64, h2: f64, from: f64, to: f64, step: f64) -> Result<Vec<OctagonSweepPoint>> {
    if step.is_nan() || step <= 0.0 || to < from {
        return Err(Error::InvalidInput("empty sweep range".into()));
    }
    let n = ((to - from) / step + 1e-9).floor() as usize + 1;
    (0..n)
        .into_par_iter()
        .map(|i| {
            let angle_deg = from + i as f64 * step;
            let o = octagon_construct(w1, h1, w2, h2, angle_deg)?;
            Ok(OctagonSweepPoint {
                angle_deg,
                valid: o.valid,
                gap_degrees: o.report.gap_degrees,
            })
        })
        .collect()
}

/// Largest valid angle of a sweep.
pub fn largest_valid_angle(sweep: &[OctagonSweepPoint]) -> Option<f64> {
    sweep.iter().filter(|p| p.valid).map(|p| p.angle_deg).reduce(f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn fig1() -> ConvexPolygon {
        ConvexPolygon::from_coords(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]).unwrap()
    }

    #[test]
    fn bounding_rect_of_fig1_triangle() {
        let t = fig1();
        let r = bounding_rect_at(&t, 0.0);
        assert!(r.degenerate_square);
        assert!((r.area() - 1.0).abs() < 1e-15);
        assert!((r.perimeter() - 4.0).abs() < 1e-15);

        let r = bounding_rect_at(&t, FRAC_PI_4);
        assert!((2.0 * r.half_long - SQRT_2).abs() < 1e-15);
        assert!((2.0 * r.half_short - SQRT_2 / 2.0).abs() < 1e-15);
        assert!((r.area() - 1.0).abs() < 1e-15);
        assert!((r.perimeter() - 3.0 * SQRT_2).abs() < 1e-14);
        // theta and theta + pi/2 describe the same rectangle
        let r2 = bounding_rect_at(&t, FRAC_PI_4 + FRAC_PI_2);
        assert!(r.approx_eq(&r2, 1e-12, 1.0));
    }

    #[test]
    fn bounding_rect_of_square_is_itself() {
        let s = centered_rectangle(1.0, 1.0, 0.0).unwrap();
        let r = bounding_rect_at(&s, 0.0);
        assert!(r.center.norm() < 1e-15);
        assert_eq!(r.half_long, 0.5);
        assert_eq!(r.half_short, 0.5);
        assert_eq!(r.orientation, 0.0);
    }

    #[test]
    fn bounding_rect_contains_and_touches() {
        let p = ConvexPolygon::from_coords(&[(0.0, 0.0), (3.0, 0.5), (2.5, 2.0), (0.2, 1.5)]).unwrap();
        for k in 0..100 {
            let r = bounding_rect_at(&p, k as f64 * 0.0731);
            for v in p.vertices() {
                assert!(r.contains(*v, p.eps()));
            }
            for h in r.sides() {
                assert!(p.vertices().iter().any(|v| h.signed_distance(*v).abs() <= p.eps()));
            }
        }
    }

    #[test]
    fn fig1_triangle_has_two_area_ties() {
        let rep = min_rects(&fig1());
        assert!((rep.r_perim.perimeter() - 4.0).abs() < 1e-12);
        assert_eq!(rep.area_ties.len(), 2);
        assert!(rep.area_ties.iter().all(|r| (r.area() - 1.0).abs() < 1e-12));
        let tilted = rep.area_ties.iter().find(|r| !r.degenerate_square).unwrap();
        assert!((tilted.perimeter() - 3.0 * SQRT_2).abs() < 1e-12);
        assert!((tilted.orientation - 3.0 * FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn rectangle_contains_itself_with_zero_gap() {
        let r = centered_rectangle(3.0, 1.0, 0.0).unwrap().translated(Point::new(2.0, 5.0)).unwrap();
        let rep = min_rects(&r);
        assert_eq!(rep.gap_degrees, 0.0);
        assert!((rep.r_area.area() - 3.0).abs() < 1e-12);
        assert_eq!(rep.r_area, rep.r_perim);
    }

    #[test]
    fn hexagon_family_examples() {
        let h0 = hexagon_family(0.0).unwrap();
        assert_eq!(h0.len(), 4);
        assert_eq!(h0.area(), 1.0);
        let h = hexagon_family(0.5).unwrap();
        assert_eq!(h.len(), 6);
        assert!((h.area() - 0.75).abs() < 1e-15);
        assert!((h.diameter() - SQRT_2).abs() < 1e-15);
        let thin = hexagon_family(0.999_999).unwrap();
        assert!(thin.area() < 1e-5);
        assert!((thin.diameter() - SQRT_2).abs() < 1e-15);
        assert!(hexagon_family(1.0).is_err());
    }

    #[test]
    fn hexagon_gap_between_switch_points() {
        let rep = min_rects(&hexagon_family(0.55).unwrap());
        assert!((rep.gap_degrees - 45.0).abs() < 1e-9);
    }

    #[test]
    fn octagon_precondition_gate() {
        let o = octagon_construct(10.0, 9.9, 11.0, 8.99, 30.0).unwrap();
        assert!(!o.preconditions.angle_above_45);
        assert!(!o.valid);
        assert!(octagon_construct(9.9, 10.0, 11.0, 8.99, 60.0).is_err());
        assert!(octagon_construct(10.0, 9.9, 11.0, 8.99, 90.0).is_err());
    }

    #[test]
    fn octagon_at_eighty_degrees() {
        let o = octagon_construct(10.0, 9.9, 11.0, 8.99, 80.0).unwrap();
        assert!(o.valid, "{:?}", o);
        assert_eq!(o.polygon.len(), 8);
        assert!((o.report.gap_degrees - 80.0).abs() < 1e-9);
    }

    #[test]
    fn square_gap_uses_nearest_side() {
        let sq = OrientedRectangle::new(Point::default(), 1.0, 1.0, 0.0, 1e-9);
        let r = OrientedRectangle::new(Point::default(), 2.0, 1.0, 80f64.to_radians(), 1e-9);
        assert!((orientation_gap(&sq, &r) - 10.0).abs() < 1e-9);
    }
}
