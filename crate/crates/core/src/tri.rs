//! Optimal isosceles and right-triangle containers.
//!
//! A triangle with prescribed side directions that contains a convex region
//! is smallest (in both area and perimeter) when every side lies on a
//! supporting line, so each family reduces to a two-parameter search:
//!
//! * isosceles: apex direction `theta` and apex half-angle `alpha`, with
//!   outward side normals `theta +- (pi/2 - alpha)` and `theta + pi`;
//! * right: leg direction `theta` and hypotenuse normal `psi`, with outward
//!   normals `theta - pi/2`, `psi` and `theta + pi`.
//!
//! The search is a 1 degree grid followed by Nelder–Mead from the four best
//! grid local minima. Optimal containers need not have a side flush with the
//! region and need not share an angle with a triangular input, so nothing
//! is anchored to edges or vertices.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::experiments::{generate_one, ShapeKind};
use crate::geom::{angular_gap, intersect_convex, normalize_angle, ConvexPolygon, HalfPlane, Point};
use crate::optimize::{minimize_with_restarts, NelderMeadOptions};
use crate::FLUSH_REL;

/// Relative tolerance for equal side lengths (equilateral / equal legs).
pub const EQUAL_SIDES_REL: f64 = 1e-6;

/// Vertex and ray tolerance used when comparing an optimized container to a
/// triangle (relative to the triangle's diameter, and in radians).
pub const SHARED_ANGLE_TOL: f64 = 1e-6;

/// Vertex tolerance, relative to the region's diameter, for matching an
/// optimized container against a construction.
pub const MATCH_REL: f64 = 1e-4;

const GRID_THETA: usize = 360;
const GRID_BETA: usize = 89;
const STARTS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TriFamily {
    Iso,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IsoParams {
    /// Apex direction, `[0, 2pi)`.
    pub theta: f64,
    /// Apex half-angle, `(0, pi/2)`.
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RightParams {
    /// Direction of the first leg, `[0, 2pi)`.
    pub theta: f64,
    /// Outward normal of the hypotenuse, strictly between `theta` and
    /// `theta + pi/2`.
    pub psi: f64,
    /// Direction of the longer leg, `[0, pi)`.
    pub rect_orientation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum TriangleParams {
    Iso(IsoParams),
    Right(RightParams),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangleContainer {
    pub params: TriangleParams,
    /// Supporting half-planes, outward normals in counter-clockwise order.
    pub sides: [HalfPlane; 3],
    /// `vertices[k]` is where side `k` meets side `k + 1`; counter-clockwise.
    /// For isosceles containers `vertices[0]` is the apex, for right ones
    /// `vertices[2]` is the right angle.
    pub vertices: [Point; 3],
    pub area: f64,
    pub perimeter: f64,
    /// `flush_sides[k]` is side `k`.
    pub flush_sides: [bool; 3],
    /// All three sides equal, so the apex is ambiguous.
    pub near_equilateral: bool,
    /// Right triangle with equal legs, so the orientation is ambiguous.
    pub equal_legs: bool,
}

impl TriangleContainer {
    pub fn family(&self) -> TriFamily {
        match self.params {
            TriangleParams::Iso(_) => TriFamily::Iso,
            TriangleParams::Right(_) => TriFamily::Right,
        }
    }

    pub fn side_lengths(&self) -> [f64; 3] {
        let v = &self.vertices;
        // side k runs from vertices[k-1] to vertices[k]
        [v[2].dist(v[0]), v[0].dist(v[1]), v[1].dist(v[2])]
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.sides.iter().all(|h| h.contains(p, tol))
    }

    pub fn to_polygon(&self) -> Result<ConvexPolygon> {
        ConvexPolygon::new(self.vertices.to_vec())
    }

    /// Orientations that describe this container, with its period.
    fn directions(&self) -> (Vec<f64>, f64) {
        match self.params {
            TriangleParams::Iso(p) if self.near_equilateral => {
                (vec![p.theta, p.theta + TAU / 3.0, p.theta + 2.0 * TAU / 3.0], TAU)
            }
            TriangleParams::Iso(p) => (vec![p.theta], TAU),
            TriangleParams::Right(p) if self.equal_legs => {
                (vec![p.rect_orientation, p.rect_orientation + FRAC_PI_2], PI)
            }
            TriangleParams::Right(p) => (vec![p.rect_orientation], PI),
        }
    }
}

/// Orientation gap between two containers of the same family, in degrees.
/// Ambiguous orientations (equilateral, equal legs) use the nearest one.
pub fn container_gap(a: &TriangleContainer, b: &TriangleContainer) -> f64 {
    let (da, period) = a.directions();
    let (db, _) = b.directions();
    da.iter()
        .flat_map(|x| db.iter().map(move |y| angular_gap(*x, *y, period)))
        .fold(f64::INFINITY, f64::min)
}

fn iso_normals(theta: f64, alpha: f64) -> [f64; 3] {
    [theta - (FRAC_PI_2 - alpha), theta + (FRAC_PI_2 - alpha), theta + PI]
}

fn right_normals(theta: f64, psi: f64) -> [f64; 3] {
    [theta - FRAC_PI_2, psi, theta + PI]
}

fn family_normals(family: TriFamily, theta: f64, beta: f64) -> [f64; 3] {
    match family {
        TriFamily::Iso => iso_normals(theta, beta),
        TriFamily::Right => right_normals(theta, theta + beta),
    }
}

/// Supporting lines with the given outward normals (CCW order) and their
/// pairwise intersections.
fn supporting_triangle(c: &ConvexPolygon, normals: [f64; 3]) -> Option<([HalfPlane; 3], [Point; 3])> {
    let dirs = normals.map(Point::unit);
    let offs = dirs.map(|d| c.support_value(d));
    let mut vertices = [Point::default(); 3];
    for k in 0..3 {
        let j = (k + 1) % 3;
        vertices[k] = crate::geom::line_intersection(dirs[k], offs[k], dirs[j], offs[j])?;
    }
    let sides = [0, 1, 2].map(|k| HalfPlane::new(normals[k], offs[k]));
    Some((sides, vertices))
}

fn area_perimeter(v: &[Point; 3]) -> (f64, f64) {
    let area = 0.5 * (v[1] - v[0]).cross(v[2] - v[0]);
    let perim = v[0].dist(v[1]) + v[1].dist(v[2]) + v[2].dist(v[0]);
    (area, perim)
}

fn objectives(c: &ConvexPolygon, family: TriFamily, theta: f64, beta: f64) -> (f64, f64) {
    if !(beta > 0.0 && beta < FRAC_PI_2) {
        return (f64::INFINITY, f64::INFINITY);
    }
    match supporting_triangle(c, family_normals(family, theta, beta)) {
        Some((_, v)) => {
            let (a, p) = area_perimeter(&v);
            if a > 0.0 && a.is_finite() {
                (a, p)
            } else {
                (f64::INFINITY, f64::INFINITY)
            }
        }
        None => (f64::INFINITY, f64::INFINITY),
    }
}

fn build(c: &ConvexPolygon, family: TriFamily, theta: f64, beta: f64) -> Result<TriangleContainer> {
    if !(beta > 0.0 && beta < FRAC_PI_2) {
        return Err(Error::DegenerateTriangle(format!(
            "angle parameter {beta} outside (0, pi/2)"
        )));
    }
    let theta = normalize_angle(theta, TAU);
    let (sides, vertices) = supporting_triangle(c, family_normals(family, theta, beta))
        .ok_or_else(|| Error::DegenerateTriangle("parallel sides".into()))?;
    let (area, perimeter) = area_perimeter(&vertices);
    if !(area > 0.0 && area.is_finite()) {
        return Err(Error::DegenerateTriangle("zero or unbounded area".into()));
    }
    let tol = 10.0 * c.eps();
    let min_flush = FLUSH_REL * c.diameter();
    let flush_sides = sides.map(|h| h.contact_length(c, tol) > min_flush);

    let mut container = TriangleContainer {
        params: TriangleParams::Iso(IsoParams { theta, alpha: beta }),
        sides,
        vertices,
        area,
        perimeter,
        flush_sides,
        near_equilateral: false,
        equal_legs: false,
    };
    let len = container.side_lengths();
    let longest = len.iter().cloned().fold(0.0, f64::max);
    match family {
        TriFamily::Iso => {
            let shortest = len.iter().cloned().fold(f64::INFINITY, f64::min);
            container.near_equilateral = longest - shortest <= EQUAL_SIDES_REL * longest;
        }
        TriFamily::Right => {
            // side 0 is the leg along theta, side 2 the leg along theta + pi/2
            let (leg0, leg2) = (len[0], len[2]);
            container.equal_legs = (leg0 - leg2).abs() <= EQUAL_SIDES_REL * leg0.max(leg2);
            let long_dir = if leg0 >= leg2 { theta } else { theta + FRAC_PI_2 };
            container.params = TriangleParams::Right(RightParams {
                theta,
                psi: theta + beta,
                rect_orientation: normalize_angle(long_dir, PI),
            });
        }
    }
    Ok(container)
}

/// Smallest isosceles triangle with apex direction `theta` and apex
/// half-angle `alpha` that contains `c`.
pub fn iso_triangle_at(c: &ConvexPolygon, theta: f64, alpha: f64) -> Result<TriangleContainer> {
    build(c, TriFamily::Iso, theta, alpha)
}

/// Smallest right triangle with legs along `theta`, `theta + pi/2` and
/// hypotenuse normal `psi` that contains `c`.
pub fn right_triangle_at(c: &ConvexPolygon, theta: f64, psi: f64) -> Result<TriangleContainer> {
    build(c, TriFamily::Right, theta, psi - theta)
}

/// Result of one family search: best container for each objective.
struct FamilyOptimum {
    area: (f64, f64),
    perim: (f64, f64),
}

fn grid_starts(values: &[f64], count: usize) -> Vec<(usize, usize)> {
    let at = |i: usize, j: usize| values[i * GRID_BETA + j];
    let mut minima: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..GRID_THETA {
        for j in 0..GRID_BETA {
            let v = at(i, j);
            if !v.is_finite() {
                continue;
            }
            let mut is_min = true;
            'nb: for di in [GRID_THETA - 1, 0, 1] {
                for dj in [-1i64, 0, 1] {
                    let jj = j as i64 + dj;
                    if (di == 0 && dj == 0) || jj < 0 || jj >= GRID_BETA as i64 {
                        continue;
                    }
                    if at((i + di) % GRID_THETA, jj as usize) < v {
                        is_min = false;
                        break 'nb;
                    }
                }
            }
            if is_min {
                minima.push((v, i, j));
            }
        }
    }
    minima.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    minima.into_iter().take(count).map(|(_, i, j)| (i, j)).collect()
}

fn optimize_family(c: &ConvexPolygon, family: TriFamily) -> FamilyOptimum {
    let step = 1f64.to_radians();
    let grid_param = |i: usize, j: usize| (i as f64 * step, (j + 1) as f64 * step);
    let mut area_grid = vec![f64::INFINITY; GRID_THETA * GRID_BETA];
    let mut perim_grid = vec![f64::INFINITY; GRID_THETA * GRID_BETA];
    for i in 0..GRID_THETA {
        for j in 0..GRID_BETA {
            let (t, b) = grid_param(i, j);
            let (a, p) = objectives(c, family, t, b);
            area_grid[i * GRID_BETA + j] = a;
            perim_grid[i * GRID_BETA + j] = p;
        }
    }

    let refine = |grid: &[f64], pick: fn((f64, f64)) -> f64| -> (f64, f64) {
        let mut best: Option<(f64, f64, f64)> = None;
        for (i, j) in grid_starts(grid, STARTS) {
            let (t0, b0) = grid_param(i, j);
            let f0 = grid[i * GRID_BETA + j];
            let opts = NelderMeadOptions {
                xtol: 1e-10,
                ftol: 1e-15 * f0,
                max_evals: 4000,
            };
            let m = minimize_with_restarts(
                |x: &[f64]| pick(objectives(c, family, x[0], x[1])),
                &[t0, b0],
                &[step, step],
                &opts,
                6,
            );
            if best.is_none_or(|b| m.value < b.0) {
                best = Some((m.value, m.x[0], m.x[1]));
            }
        }
        let (_, t, b) = best.expect("grid has finite cells");
        (t, b)
    };
    FamilyOptimum {
        area: refine(&area_grid, |o| o.0),
        perim: refine(&perim_grid, |o| o.1),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriGapReport {
    pub family: TriFamily,
    pub t_area: TriangleContainer,
    pub t_perim: TriangleContainer,
    /// Degrees; `[0, 180]` for isosceles, `[0, 90]` for right triangles.
    pub gap_degrees: f64,
    /// For triangular inputs: whether both optima share an angle with it.
    pub shared_angle_with_input: Option<bool>,
    pub shared_angle_area: Option<bool>,
    pub shared_angle_perim: Option<bool>,
}

fn gap_report(c: &ConvexPolygon, family: TriFamily) -> Result<TriGapReport> {
    let opt = optimize_family(c, family);
    let t_area = build(c, family, opt.area.0, opt.area.1)?;
    let t_perim = build(c, family, opt.perim.0, opt.perim.1)?;
    let (sa, sp) = if c.is_triangle() {
        (Some(shared_angle_check(c, &t_area)?), Some(shared_angle_check(c, &t_perim)?))
    } else {
        (None, None)
    };
    Ok(TriGapReport {
        family,
        gap_degrees: container_gap(&t_area, &t_perim),
        shared_angle_with_input: sa.zip(sp).map(|(a, p)| a && p),
        shared_angle_area: sa,
        shared_angle_perim: sp,
        t_area,
        t_perim,
    })
}

/// Minimum-area and minimum-perimeter isosceles containers.
pub fn min_iso_containers(c: &ConvexPolygon) -> Result<TriGapReport> {
    gap_report(c, TriFamily::Iso)
}

/// Minimum-area and minimum-perimeter right-triangle containers.
pub fn min_right_containers(c: &ConvexPolygon) -> Result<TriGapReport> {
    gap_report(c, TriFamily::Right)
}

/// Whether `container` has an angle in common with the triangle `t`: a
/// coincident vertex whose two sides run along `t`'s two edges there.
pub fn shared_angle_check(t: &ConvexPolygon, container: &TriangleContainer) -> Result<bool> {
    if !t.is_triangle() {
        return Err(Error::InvalidInput(format!(
            "angle sharing needs a triangle, got {} vertices",
            t.len()
        )));
    }
    let tv = t.vertices();
    let cv = &container.vertices;
    let tol = SHARED_ANGLE_TOL * t.diameter();
    let ray_gap = |a: Point, b: Point| angular_gap(a.angle(), b.angle(), TAU).to_radians();
    for k in 0..3 {
        for j in 0..3 {
            if cv[k].dist(tv[j]) > tol {
                continue;
            }
            let c_next = cv[(k + 1) % 3] - cv[k];
            let c_prev = cv[(k + 2) % 3] - cv[k];
            let t_next = tv[(j + 1) % 3] - tv[j];
            let t_prev = tv[(j + 2) % 3] - tv[j];
            if ray_gap(c_next, t_next) <= SHARED_ANGLE_TOL && ray_gap(c_prev, t_prev) <= SHARED_ANGLE_TOL {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Every isosceles container of the triangle `t` that shares an angle with
/// it: each vertex as apex, and each acute vertex as a base angle with the
/// base along either adjacent edge.
pub fn angle_sharing_iso_candidates(t: &ConvexPolygon) -> Result<Vec<TriangleContainer>> {
    if !t.is_triangle() {
        return Err(Error::InvalidInput("angle sharing needs a triangle".into()));
    }
    let v = t.vertices();
    let mut out = Vec::new();
    for j in 0..3 {
        let a = v[j];
        let to_next = v[(j + 1) % 3] - a;
        let to_prev = v[(j + 2) % 3] - a;
        let (un, up) = (to_next * (1.0 / to_next.norm()), to_prev * (1.0 / to_prev.norm()));
        let angle = un.cross(up).atan2(un.dot(up));
        // as apex: bisector points into the triangle, apex direction opposite
        let inward = (un + up).angle();
        if let Ok(tc) = iso_triangle_at(t, inward + PI, angle / 2.0) {
            out.push(tc);
        }
        if angle < FRAC_PI_2 {
            for edge in [un, up] {
                let other = if edge == un { up } else { un };
                // inward normal of the base edge points to the other vertex
                let mut inward_normal = edge.perp();
                if inward_normal.dot(other) < 0.0 {
                    inward_normal = -inward_normal;
                }
                if let Ok(tc) = iso_triangle_at(t, inward_normal.angle(), FRAC_PI_2 - angle) {
                    out.push(tc);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimCounterexample {
    pub sample_index: usize,
    pub vertices: Vec<Point>,
    /// `"area"` or `"perimeter"`.
    pub objective: &'static str,
    pub optimum: f64,
    pub best_angle_sharing: f64,
    pub shared_angle_check: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimSearch {
    pub samples_checked: usize,
    pub counterexample: Option<ClaimCounterexample>,
}

fn claim_violation(index: usize, t: &ConvexPolygon) -> Result<Option<ClaimCounterexample>> {
    let rep = min_iso_containers(t)?;
    let cands = angle_sharing_iso_candidates(t)?;
    let best_a = cands.iter().map(|c| c.area).fold(f64::INFINITY, f64::min);
    let best_p = cands.iter().map(|c| c.perimeter).fold(f64::INFINITY, f64::min);
    // certify only clear improvements over every angle-sharing container
    let margin = 1e-6;
    let found = if rep.t_area.area < best_a * (1.0 - margin) {
        Some(("area", rep.t_area.area, best_a, rep.shared_angle_area))
    } else if rep.t_perim.perimeter < best_p * (1.0 - margin) {
        Some(("perimeter", rep.t_perim.perimeter, best_p, rep.shared_angle_perim))
    } else {
        None
    };
    Ok(found.map(|(objective, optimum, best, shared)| ClaimCounterexample {
        sample_index: index,
        vertices: t.vertices().to_vec(),
        objective,
        optimum,
        best_angle_sharing: best,
        shared_angle_check: shared.unwrap_or(false),
    }))
}

/// Searches seeded obtuse triangles for one whose optimal isosceles
/// container (area or perimeter) beats every container sharing an angle
/// with it. Returns the first such sample, or none after `max_samples`.
pub fn search_shared_angle_counterexample(seed: u64, max_samples: usize) -> Result<ClaimSearch> {
    const CHUNK: usize = 64;
    let mut start = 0;
    while start < max_samples {
        let end = (start + CHUNK).min(max_samples);
        let hits: Vec<Option<ClaimCounterexample>> = (start..end)
            .into_par_iter()
            .map(|i| {
                let t = generate_one(ShapeKind::ObtuseTriangle, seed, i as u64)?;
                claim_violation(i, &t)
            })
            .collect::<Result<_>>()?;
        if let Some(hit) = hits.into_iter().flatten().next() {
            return Ok(ClaimSearch {
                samples_checked: hit.sample_index + 1,
                counterexample: Some(hit),
            });
        }
        start = end;
    }
    Ok(ClaimSearch {
        samples_checked: max_samples,
        counterexample: None,
    })
}

/// How each rectangle is cut into the right triangle that is kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Fig7Placement {
    /// Cut along the lower-right to upper-left diagonal instead of the
    /// lower-left to upper-right one.
    pub anti_diagonal: bool,
    /// Keep the triangle above the diagonal instead of below.
    pub keep_upper: bool,
}

fn half_rectangle(w: f64, h: f64, angle: f64, placement: Fig7Placement) -> Result<ConvexPolygon> {
    let (a, b) = (w / 2.0, h / 2.0);
    let corners: [(f64, f64); 3] = match (placement.anti_diagonal, placement.keep_upper) {
        (false, false) => [(-a, -b), (a, -b), (a, b)],
        (false, true) => [(-a, -b), (a, b), (-a, b)],
        (true, false) => [(-a, -b), (a, -b), (-a, b)],
        (true, true) => [(a, -b), (a, b), (-a, b)],
    };
    ConvexPolygon::new(corners.iter().map(|&(x, y)| Point::new(x, y).rotate(angle)).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fig7Result {
    #[serde(skip)]
    pub region: ConvexPolygon,
    #[serde(skip)]
    pub half1: ConvexPolygon,
    #[serde(skip)]
    pub half2: ConvexPolygon,
    pub is_hexagon: bool,
    pub half1_less_perimeter: bool,
    pub half1_more_area: bool,
    pub report: TriGapReport,
    pub perim_matches_low_perimeter_half: bool,
    pub area_matches_low_area_half: bool,
    /// Measurement, not an assertion.
    pub guess_holds: bool,
}

fn same_triangle(container: &TriangleContainer, half: &ConvexPolygon, tol: f64) -> bool {
    half.vertices()
        .iter()
        .all(|v| container.vertices.iter().any(|w| w.dist(*v) <= tol))
}

/// Intersects right-triangle halves of a `w1 x h1` rectangle and of a
/// `w2 x h2` rectangle tilted by `angle_deg` (centers at the origin) and
/// checks whether the optimal right-triangle containers of the result are
/// the two halves.
pub fn figure7_construct(
    w1: f64,
    h1: f64,
    w2: f64,
    h2: f64,
    angle_deg: f64,
    placement: Fig7Placement,
) -> Result<Fig7Result> {
    if !(w1 > h1 && h1 > 0.0 && w2 > h2 && h2 > 0.0) {
        return Err(Error::InvalidInput(format!(
            "rectangles must satisfy w > h > 0 (got {w1}x{h1}, {w2}x{h2})"
        )));
    }
    if !(0.0..90.0).contains(&angle_deg) {
        return Err(Error::InvalidInput(format!("angle {angle_deg} outside [0, 90)")));
    }
    let half1 = half_rectangle(w1, h1, 0.0, placement)?;
    let half2 = half_rectangle(w2, h2, angle_deg.to_radians(), placement)?;
    let region = intersect_convex(&half1, &half2)?;
    let report = min_right_containers(&region)?;

    let half1_less_perimeter = half1.perimeter() < half2.perimeter();
    let half1_more_area = half1.area() > half2.area();
    let (low_perim, low_area) = (
        if half1_less_perimeter { &half1 } else { &half2 },
        if half1_more_area { &half2 } else { &half1 },
    );
    let tol = MATCH_REL * region.diameter();
    let perim_ok = same_triangle(&report.t_perim, low_perim, tol);
    let area_ok = same_triangle(&report.t_area, low_area, tol);
    Ok(Fig7Result {
        is_hexagon: region.len() == 6,
        half1_less_perimeter,
        half1_more_area,
        perim_matches_low_perimeter_half: perim_ok,
        area_matches_low_area_half: area_ok,
        guess_holds: perim_ok && area_ok,
        report,
        region,
        half1,
        half2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn iso_at_for_unit_square() {
        let sq = fixtures::unit_square();
        let t = iso_triangle_at(&sq, FRAC_PI_2, PI / 4.0).unwrap();
        let expect = [Point::new(0.5, 1.5), Point::new(-1.0, 0.0), Point::new(2.0, 0.0)];
        for (v, e) in t.vertices.iter().zip(expect) {
            assert!(v.dist(e) < 1e-12, "{v:?} vs {e:?}");
        }
        assert!((t.area - 2.25).abs() < 1e-12);
        assert_eq!(t.flush_sides, [false, false, true]);
    }

    #[test]
    fn equilateral_is_its_own_iso_container() {
        let e = fixtures::equilateral(1.0);
        let t = iso_triangle_at(&e, FRAC_PI_2, PI / 6.0).unwrap();
        assert!((t.area - e.area()).abs() < 1e-12);
        assert!(t.near_equilateral);
        assert_eq!(t.flush_sides, [true; 3]);
    }

    #[test]
    fn every_side_touches() {
        let p = ConvexPolygon::from_coords(&[(0.0, 0.0), (3.0, 0.5), (2.5, 2.0), (0.2, 1.5)]).unwrap();
        for k in 0..40 {
            let theta = k as f64 * 0.17;
            for t in [
                iso_triangle_at(&p, theta, 0.1 + k as f64 * 0.03).unwrap(),
                right_triangle_at(&p, theta, theta + 0.05 + k as f64 * 0.035).unwrap(),
            ] {
                for h in &t.sides {
                    let touch = p.vertices().iter().map(|v| h.signed_distance(*v)).fold(f64::MIN, f64::max);
                    assert!(touch.abs() <= p.eps());
                }
                for v in p.vertices() {
                    assert!(t.contains(*v, p.eps()));
                }
            }
        }
    }

    #[test]
    fn right_at_examples() {
        let t = fixtures::fig1_triangle();
        let r = right_triangle_at(&t, 0.0, PI / 4.0).unwrap();
        assert!((r.area - 0.5).abs() < 1e-12);
        assert!(r.equal_legs);
        let sq = fixtures::unit_square();
        let r = right_triangle_at(&sq, 0.0, PI / 4.0).unwrap();
        assert!((r.area - 2.0).abs() < 1e-12);
        let expect = [Point::new(2.0, 0.0), Point::new(0.0, 2.0), Point::new(0.0, 0.0)];
        for (v, e) in r.vertices.iter().zip(expect) {
            assert!(v.dist(e) < 1e-12);
        }
    }

    #[test]
    fn degenerate_parameters_rejected() {
        let sq = fixtures::unit_square();
        assert!(matches!(iso_triangle_at(&sq, 0.0, 0.0), Err(Error::DegenerateTriangle(_))));
        assert!(matches!(iso_triangle_at(&sq, 0.0, FRAC_PI_2), Err(Error::DegenerateTriangle(_))));
        assert!(matches!(right_triangle_at(&sq, 0.3, 0.3), Err(Error::DegenerateTriangle(_))));
        assert!(matches!(right_triangle_at(&sq, 0.3, 0.3 + FRAC_PI_2), Err(Error::DegenerateTriangle(_))));
    }

    #[test]
    fn shared_angle_examples() {
        let e = fixtures::equilateral(1.0);
        let own = iso_triangle_at(&e, FRAC_PI_2, PI / 6.0).unwrap();
        assert!(shared_angle_check(&e, &own).unwrap());
        // a strictly larger similar copy about the centroid
        let big = iso_triangle_at(&e.scaled(1.5).unwrap(), FRAC_PI_2, PI / 6.0).unwrap();
        let centered = e.translated(big_centroid_offset(&e, &big)).unwrap();
        assert!(!shared_angle_check(&centered, &big).unwrap());
        assert!(shared_angle_check(&fixtures::unit_square(), &own).is_err());
    }

    fn big_centroid_offset(e: &ConvexPolygon, big: &TriangleContainer) -> Point {
        let c = (big.vertices[0] + big.vertices[1] + big.vertices[2]) * (1.0 / 3.0);
        c - e.centroid()
    }

    #[test]
    fn angle_sharing_candidates_share_angles() {
        let t = ConvexPolygon::from_coords(&[(0.0, 0.0), (1.0, 0.0), (0.2, 0.3)]).unwrap();
        let cands = angle_sharing_iso_candidates(&t).unwrap();
        // obtuse at (0.2, 0.3): 3 apex candidates + 2 per acute vertex
        assert_eq!(cands.len(), 7);
        for c in &cands {
            assert!(shared_angle_check(&t, c).unwrap(), "{c:?}");
        }
    }
}
