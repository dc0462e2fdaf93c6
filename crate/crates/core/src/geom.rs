//! Planar primitives: points, convex polygons, supporting half-planes and
//! angle arithmetic.
//!
//! Every tolerance in this module is relative to the scale of the input:
//! a polygon carries `eps`, which is `EPS_REL` times the largest side of its
//! axis-aligned bounding box. Collinearity, flushness and emptiness tests
//! all go through it.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative geometric tolerance.
pub const EPS_REL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Unit vector at `angle` radians from the positive x axis.
    pub fn unit(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Point::new(c, s)
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    /// Rotation by `angle` about the origin.
    pub fn rotate(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn perp(self) -> Self {
        Point::new(-self.y, self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point::new(x, y)
    }
}

/// Reduces `angle` into `[0, period)`.
pub fn normalize_angle(angle: f64, period: f64) -> f64 {
    let r = angle.rem_euclid(period);
    if r >= period {
        0.0
    } else {
        r
    }
}

/// Smallest difference between two orientations that are only defined
/// modulo `period`, in degrees. Always lies in `[0, period / 2]`.
pub fn angular_gap(theta1: f64, theta2: f64, period: f64) -> f64 {
    let d = (theta1 - theta2).rem_euclid(period);
    d.min(period - d).max(0.0).to_degrees()
}

/// Signed distance of `p` from the directed line `a -> b` (positive on the left).
fn line_distance(a: Point, b: Point, p: Point) -> f64 {
    let d = b - a;
    let len = d.norm();
    if len == 0.0 {
        return p.dist(a);
    }
    d.cross(p - a) / len
}

fn scale_eps(points: &[Point]) -> f64 {
    let (mut minx, mut miny) = (f64::INFINITY, f64::INFINITY);
    let (mut maxx, mut maxy) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        minx = minx.min(p.x);
        miny = miny.min(p.y);
        maxx = maxx.max(p.x);
        maxy = maxy.max(p.y);
    }
    EPS_REL * (maxx - minx).max(maxy - miny)
}

fn signed_area(points: &[Point]) -> f64 {
    let n = points.len();
    (0..n)
        .map(|i| points[i].cross(points[(i + 1) % n]))
        .sum::<f64>()
        / 2.0
}

/// Maximum of the support function in one direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Support {
    pub value: f64,
    /// Lowest vertex index attaining `value` (within the polygon's eps).
    pub index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Measures {
    pub area: f64,
    pub perimeter: f64,
    pub diameter: f64,
    /// Direction of the diameter, in `[0, pi)`.
    pub diameter_angle: f64,
}

/// Strictly convex polygon with counter-clockwise vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
    eps: f64,
}

impl ConvexPolygon {
    /// Builds a polygon from vertices already in convex position.
    ///
    /// Clockwise input is reversed; duplicate and collinear vertices are
    /// merged. Any reflex turn gives `NotConvex`.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::DegenerateInput("non-finite coordinate".into()));
        }
        if vertices.len() < 3 {
            return Err(Error::DegenerateInput(format!(
                "need at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        let eps = scale_eps(&vertices);
        let mut v: Vec<Point> = Vec::with_capacity(vertices.len());
        for p in vertices {
            if v.last().is_none_or(|q: &Point| q.dist(p) > eps) {
                v.push(p);
            }
        }
        while v.len() > 1 && v[0].dist(*v.last().unwrap()) <= eps {
            v.pop();
        }
        if v.len() < 3 || signed_area(&v).abs() <= eps * (eps / EPS_REL) {
            return Err(Error::DegenerateInput("polygon has no area".into()));
        }
        if signed_area(&v) < 0.0 {
            v.reverse();
        }

        // merge collinear vertices, reject reflex ones
        let mut changed = true;
        while changed && v.len() >= 3 {
            changed = false;
            let n = v.len();
            for i in 0..n {
                let prev = v[(i + n - 1) % n];
                let next = v[(i + 1) % n];
                let d = line_distance(prev, next, v[i]);
                // For a left turn at v[i], v[i] lies to the right of prev->next.
                if d.abs() <= eps {
                    let seg = next - prev;
                    let t = (v[i] - prev).dot(seg) / seg.dot(seg);
                    if !(-1e-12..=1.0 + 1e-12).contains(&t) {
                        return Err(Error::NotConvex);
                    }
                    v.remove(i);
                    changed = true;
                    break;
                } else if d > 0.0 {
                    return Err(Error::NotConvex);
                }
            }
        }
        if v.len() < 3 {
            return Err(Error::DegenerateInput("all vertices collinear".into()));
        }
        // all turns are left; reject polygons that wind more than once
        let n = v.len();
        let turning: f64 = (0..n)
            .map(|i| {
                let e0 = v[(i + 1) % n] - v[i];
                let e1 = v[(i + 2) % n] - v[(i + 1) % n];
                e0.cross(e1).atan2(e0.dot(e1))
            })
            .sum();
        if (turning - TAU).abs() > 1e-6 {
            return Err(Error::NotConvex);
        }
        let poly = ConvexPolygon { vertices: v, eps };
        if poly.area() <= eps * poly.bbox_extent() {
            return Err(Error::DegenerateInput("polygon has no area".into()));
        }
        Ok(poly)
    }

    pub fn from_coords(coords: &[(f64, f64)]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| c.into()).collect())
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_triangle(&self) -> bool {
        self.vertices.len() == 3
    }

    /// Absolute geometric tolerance for this polygon.
    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn bbox_extent(&self) -> f64 {
        self.eps / EPS_REL
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i % self.vertices.len()]
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> (Point, Point) {
        (self.vertex(i), self.vertex(i + 1))
    }

    /// Direction of edge `i`, in `[0, 2pi)`.
    pub fn edge_angle(&self, i: usize) -> f64 {
        let (a, b) = self.edge(i);
        normalize_angle((b - a).angle(), TAU)
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        (0..self.len())
            .map(|i| {
                let (a, b) = self.edge(i);
                a.dist(b)
            })
            .sum()
    }

    /// Area centroid.
    pub fn centroid(&self) -> Point {
        let n = self.len();
        let o = self.vertices[0];
        let (mut cx, mut cy, mut a2) = (0.0, 0.0, 0.0);
        for i in 0..n {
            let p = self.vertices[i] - o;
            let q = self.vertices[(i + 1) % n] - o;
            let c = p.cross(q);
            a2 += c;
            cx += (p.x + q.x) * c;
            cy += (p.y + q.y) * c;
        }
        o + Point::new(cx / (3.0 * a2), cy / (3.0 * a2))
    }

    pub fn diameter(&self) -> f64 {
        self.measures().diameter
    }

    pub fn measures(&self) -> Measures {
        let v = &self.vertices;
        let mut best = 0.0_f64;
        let mut best_angle = 0.0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                let d = v[i].dist(v[j]);
                let ang = normalize_angle((v[j] - v[i]).angle(), PI);
                if d > best + self.eps {
                    best = d;
                    best_angle = ang;
                } else if (d - best).abs() <= self.eps {
                    best = best.max(d);
                    best_angle = best_angle.min(ang);
                }
            }
        }
        Measures {
            area: self.area(),
            perimeter: self.perimeter(),
            diameter: best,
            diameter_angle: best_angle,
        }
    }

    /// Support function: `max_v dot(v, unit(angle))`.
    pub fn support(&self, angle: f64) -> Support {
        self.support_dir(Point::unit(angle))
    }

    pub(crate) fn support_dir(&self, dir: Point) -> Support {
        let value = self
            .vertices
            .iter()
            .map(|v| v.dot(dir))
            .fold(f64::NEG_INFINITY, f64::max);
        let index = self
            .vertices
            .iter()
            .position(|v| v.dot(dir) >= value - self.eps)
            .unwrap_or(0);
        Support { value, index }
    }

    pub(crate) fn support_value(&self, dir: Point) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.dot(dir))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Width of the polygon measured along `angle`.
    pub fn extent(&self, angle: f64) -> f64 {
        let u = Point::unit(angle);
        self.support_value(u) + self.support_value(-u)
    }

    /// Point-in-polygon with tolerance `tol` (points within `tol` of the
    /// boundary count as inside).
    pub fn contains(&self, p: Point, tol: f64) -> bool {
        (0..self.len()).all(|i| {
            let (a, b) = self.edge(i);
            line_distance(a, b, p) >= -tol
        })
    }

    /// Applies an affine map to every vertex and rebuilds the polygon.
    pub fn map(&self, f: impl Fn(Point) -> Point) -> Result<Self> {
        Self::new(self.vertices.iter().map(|&p| f(p)).collect())
    }

    pub fn rotated(&self, angle: f64) -> Result<Self> {
        self.map(|p| p.rotate(angle))
    }

    pub fn scaled(&self, k: f64) -> Result<Self> {
        self.map(|p| p * k)
    }

    pub fn translated(&self, d: Point) -> Result<Self> {
        self.map(|p| p + d)
    }
}

/// Convex hull (counter-clockwise, collinear points removed).
pub fn convex_hull(points: &[Point]) -> Result<ConvexPolygon> {
    if points.iter().any(|p| !p.is_finite()) {
        return Err(Error::DegenerateInput("non-finite coordinate".into()));
    }
    if points.len() < 3 {
        return Err(Error::DegenerateInput(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return Err(Error::DegenerateInput("fewer than 3 distinct points".into()));
    }
    let mut hull: Vec<Point> = Vec::with_capacity(pts.len() + 1);
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                if (b - a).cross(p - a) <= 0.0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        hull.pop();
    }
    if hull.len() < 3 {
        return Err(Error::DegenerateInput("all points collinear".into()));
    }
    ConvexPolygon::new(hull)
}

/// `C1 ∩ C2`, by clipping `c1` against every edge line of `c2`.
pub fn intersect_convex(c1: &ConvexPolygon, c2: &ConvexPolygon) -> Result<ConvexPolygon> {
    let mut subject: Vec<Point> = c1.vertices.clone();
    for i in 0..c2.len() {
        let (a, b) = c2.edge(i);
        let mut out = Vec::with_capacity(subject.len() + 1);
        let n = subject.len();
        for k in 0..n {
            let s = subject[(k + n - 1) % n];
            let e = subject[k];
            let ds = line_distance(a, b, s);
            let de = line_distance(a, b, e);
            if de >= 0.0 {
                if ds < 0.0 {
                    out.push(s + (e - s) * (ds / (ds - de)));
                }
                out.push(e);
            } else if ds >= 0.0 {
                out.push(s + (e - s) * (ds / (ds - de)));
            }
        }
        subject = out;
        if subject.len() < 3 {
            return Err(Error::EmptyIntersection);
        }
    }
    let scale = c1.bbox_extent().max(c2.bbox_extent());
    match convex_hull(&subject) {
        Ok(p) if p.area() > EPS_REL * scale * scale => Ok(p),
        _ => Err(Error::EmptyIntersection),
    }
}

/// Closed half-plane `{p : dot(p, unit(normal_angle)) <= offset}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HalfPlane {
    pub normal_angle: f64,
    pub offset: f64,
}

impl HalfPlane {
    pub fn new(normal_angle: f64, offset: f64) -> Self {
        HalfPlane {
            normal_angle: normalize_angle(normal_angle, TAU),
            offset,
        }
    }

    /// Supporting half-plane of `c` with the given outward normal.
    pub fn supporting(c: &ConvexPolygon, normal_angle: f64) -> Self {
        HalfPlane::new(normal_angle, c.support(normal_angle).value)
    }

    pub fn normal(&self) -> Point {
        Point::unit(self.normal_angle)
    }

    /// Positive outside, negative inside.
    pub fn signed_distance(&self, p: Point) -> f64 {
        p.dot(self.normal()) - self.offset
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.signed_distance(p) <= tol
    }

    /// Intersection of the two boundary lines, `None` when parallel.
    pub fn boundary_intersection(&self, other: &HalfPlane) -> Option<Point> {
        line_intersection(self.normal(), self.offset, other.normal(), other.offset)
    }

    /// Length of the part of `c` lying on the boundary line (within `tol`).
    pub fn contact_length(&self, c: &ConvexPolygon, tol: f64) -> f64 {
        contact_length(c, self.normal(), self.offset, tol)
    }
}

pub(crate) fn line_intersection(n1: Point, o1: f64, n2: Point, o2: f64) -> Option<Point> {
    let det = n1.cross(n2);
    if det.abs() < 1e-15 {
        return None;
    }
    Some(Point::new(
        (o1 * n2.y - o2 * n1.y) / det,
        (n1.x * o2 - n2.x * o1) / det,
    ))
}

/// Spread, along the line `dot(p, normal) = offset`, of the vertices of `c`
/// that lie on it.
pub(crate) fn contact_length(c: &ConvexPolygon, normal: Point, offset: f64, tol: f64) -> f64 {
    let along = normal.perp();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in &c.vertices {
        if (v.dot(normal) - offset).abs() <= tol {
            let t = v.dot(along);
            lo = lo.min(t);
            hi = hi.max(t);
        }
    }
    if hi > lo {
        hi - lo
    } else {
        0.0
    }
}

/// Smallest circle containing every point (incremental Welzl).
pub fn min_enclosing_circle(points: &[Point]) -> (Point, f64) {
    fn inside(c: Point, r: f64, p: Point) -> bool {
        c.dist(p) <= r * (1.0 + 1e-12) + 1e-300
    }
    fn from_two(a: Point, b: Point) -> (Point, f64) {
        let c = (a + b) * 0.5;
        (c, c.dist(a))
    }
    fn from_three(a: Point, b: Point, c: Point) -> (Point, f64) {
        let ab = b - a;
        let ac = c - a;
        let d = 2.0 * ab.cross(ac);
        if d.abs() <= 1e-18 * (ab.dot(ab) + ac.dot(ac)) {
            // collinear: widest pair
            let cands = [from_two(a, b), from_two(a, c), from_two(b, c)];
            return cands
                .into_iter()
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
        }
        let ux = (ac.y * ab.dot(ab) - ab.y * ac.dot(ac)) / d;
        let uy = (ab.x * ac.dot(ac) - ac.x * ab.dot(ab)) / d;
        let center = a + Point::new(ux, uy);
        let r = center.dist(a).max(center.dist(b)).max(center.dist(c));
        (center, r)
    }

    let Some(&first) = points.first() else {
        return (Point::default(), 0.0);
    };
    let (mut c, mut r) = (first, 0.0);
    for i in 1..points.len() {
        if inside(c, r, points[i]) {
            continue;
        }
        (c, r) = (points[i], 0.0);
        for j in 0..i {
            if inside(c, r, points[j]) {
                continue;
            }
            (c, r) = from_two(points[i], points[j]);
            for k in 0..j {
                if !inside(c, r, points[k]) {
                    (c, r) = from_three(points[i], points[j], points[k]);
                }
            }
        }
    }
    (c, r)
}
