//! Minimum-area and minimum-perimeter enclosing ellipses.
//!
//! The minimum-area ellipse comes from Khachiyan's barycentric iteration
//! with Todd–Yıldırım away steps. The minimum-perimeter ellipse has no such
//! algorithm: it is searched over shape (major-axis angle, log aspect) with
//! the scale and center eliminated exactly. For a fixed shape the smallest
//! containing ellipse is the smallest enclosing circle of the points mapped
//! into the frame where that shape is a circle.
//!
//! Perimeters are the Gauss–Kummer series truncated after the quartic term;
//! `perimeter_oracle` integrates the arc length numerically so the truncation
//! error can be measured.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{angular_gap, min_enclosing_circle, normalize_angle, ConvexPolygon, Point};
use crate::optimize::{minimize_with_restarts, NelderMeadOptions};
use crate::rect::min_rects;
use crate::rng::SplitMix64;
use crate::TOL_OPT;

/// Default relative duality gap for `mvee`.
pub const MVEE_EPS: f64 = 1e-7;
pub const MVEE_MAX_ITER: usize = 1_000_000;

/// `(a - b) / a` at or below which an ellipse counts as a circle.
pub const NEAR_CIRCULAR_REL: f64 = 1e-6;

/// Largest axis ratio explored by the perimeter search.
pub const ASPECT_CAP: f64 = 50.0;

const RANDOM_STARTS: usize = 8;
const START_SEED: u64 = 0x0E11_1F5E;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Ellipse {
    pub center: Point,
    /// Semi-major axis.
    pub a: f64,
    /// Semi-minor axis.
    pub b: f64,
    /// Major-axis direction, `[0, pi)`.
    pub phi: f64,
    pub near_circular: bool,
}

impl Ellipse {
    /// Ellipse with semi-axis `axis_u` along `angle` and `axis_v`
    /// perpendicular to it, in either order.
    pub fn new(center: Point, axis_u: f64, axis_v: f64, angle: f64) -> Self {
        let (a, b, phi) = if axis_u >= axis_v {
            (axis_u, axis_v, angle)
        } else {
            (axis_v, axis_u, angle + PI / 2.0)
        };
        Ellipse {
            center,
            a,
            b,
            phi: normalize_angle(phi, PI),
            near_circular: (a - b) <= NEAR_CIRCULAR_REL * a,
        }
    }

    pub fn area(&self) -> f64 {
        PI * self.a * self.b
    }

    /// Quartic Gauss–Kummer perimeter.
    pub fn perimeter(&self) -> f64 {
        gk_series(self.a, self.b)
    }

    /// Quadratic form; `<= 1` inside.
    pub fn qf(&self, p: Point) -> f64 {
        let d = p - self.center;
        let u = Point::unit(self.phi);
        let (x, y) = (d.dot(u) / self.a, d.dot(u.perp()) / self.b);
        x * x + y * y
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.qf(p) <= 1.0 + tol
    }
}

fn gk_series(a: f64, b: f64) -> f64 {
    let h = ((a - b) / (a + b)).powi(2);
    PI * (a + b) * (1.0 + h / 4.0 + h * h / 64.0 + h.powi(3) / 256.0 + 25.0 * h.powi(4) / 16384.0)
}

fn check_axes(a: f64, b: f64) -> Result<()> {
    if a >= b && b > 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidAxes { a, b })
    }
}

/// Ellipse perimeter from the Gauss–Kummer series
/// `pi (a + b) (1 + h/4 + h^2/64 + h^3/256 + 25 h^4/16384)`,
/// `h = ((a - b) / (a + b))^2`, truncated after the quartic term.
pub fn gk_perimeter(a: f64, b: f64) -> Result<f64> {
    check_axes(a, b)?;
    Ok(gk_series(a, b))
}

/// Arc length `4 int_0^{pi/2} sqrt(a^2 sin^2 t + b^2 cos^2 t) dt` by adaptive
/// Simpson quadrature with Richardson correction.
pub fn perimeter_oracle(a: f64, b: f64) -> Result<f64> {
    check_axes(a, b)?;
    let f = |t: f64| {
        let (s, c) = t.sin_cos();
        (a * a * s * s + b * b * c * c).sqrt()
    };
    fn simpson(lo: f64, hi: f64, flo: f64, fmid: f64, fhi: f64) -> f64 {
        (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)
    }
    #[allow(clippy::too_many_arguments)]
    fn adapt(
        f: &impl Fn(f64) -> f64,
        lo: f64,
        hi: f64,
        flo: f64,
        fmid: f64,
        fhi: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let mid = 0.5 * (lo + hi);
        let (lm, rm) = (0.5 * (lo + mid), 0.5 * (mid + hi));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(lo, mid, flo, flm, fmid);
        let right = simpson(mid, hi, fmid, frm, fhi);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        adapt(f, lo, mid, flo, flm, fmid, left, tol / 2.0, depth - 1)
            + adapt(f, mid, hi, fmid, frm, fhi, right, tol / 2.0, depth - 1)
    }
    let (lo, hi) = (0.0, PI / 2.0);
    let (flo, fmid, fhi) = (f(lo), f(0.25 * PI), f(hi));
    let whole = simpson(lo, hi, flo, fmid, fhi);
    let tol = 1e-15 * a;
    Ok(4.0 * adapt(&f, lo, hi, flo, fmid, fhi, whole, tol, 40))
}

fn inverse3(m: &[[f64; 3]; 3]) -> Option<[[f64; 3]; 3]> {
    let c = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    let cof = [
        [c(1, 2, 1, 2), -c(1, 2, 0, 2), c(1, 2, 0, 1)],
        [-c(0, 2, 1, 2), c(0, 2, 0, 2), -c(0, 2, 0, 1)],
        [c(0, 1, 1, 2), -c(0, 1, 0, 2), c(0, 1, 0, 1)],
    ];
    let det = m[0][0] * cof[0][0] + m[0][1] * cof[0][1] + m[0][2] * cof[0][2];
    if det.abs() < 1e-300 {
        return None;
    }
    let mut inv = [[0.0; 3]; 3];
    for (i, row) in inv.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = cof[j][i] / det;
        }
    }
    Some(inv)
}

/// Ellipse `{x : (x - c)^T S^{-1} (x - c) <= 2}` from barycentric weights,
/// rescaled so the farthest vertex lies exactly on it.
fn ellipse_from_weights(points: &[Point], u: &[f64], origin: Point) -> Ellipse {
    let c = points
        .iter()
        .zip(u)
        .fold(Point::default(), |acc, (p, w)| acc + *p * *w);
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (p, w) in points.iter().zip(u) {
        let d = *p - c;
        sxx += w * d.x * d.x;
        sxy += w * d.x * d.y;
        syy += w * d.y * d.y;
    }
    let mean = 0.5 * (sxx + syy);
    let dev = (0.25 * (sxx - syy).powi(2) + sxy * sxy).sqrt();
    let (l1, l2) = (mean + dev, (mean - dev).max(0.0));
    let phi = 0.5 * (2.0 * sxy).atan2(sxx - syy);
    let e = Ellipse::new(c + origin, (2.0 * l1).sqrt(), (2.0 * l2).sqrt(), phi);
    let worst = points.iter().map(|p| e.qf(*p + origin)).fold(0.0, f64::max);
    let k = worst.sqrt();
    Ellipse::new(e.center, e.a * k, e.b * k, e.phi)
}

/// Minimum-area enclosing ellipse of the vertices of `c` to relative
/// duality gap `epsilon`.
pub fn mvee(c: &ConvexPolygon, epsilon: f64) -> Result<Ellipse> {
    if !(epsilon > 0.0 && epsilon <= 1e-3) {
        return Err(Error::InvalidInput(format!("mvee epsilon {epsilon} outside (0, 1e-3]")));
    }
    // work relative to the centroid for conditioning
    let origin = c.centroid();
    let pts: Vec<Point> = c.vertices().iter().map(|p| *p - origin).collect();
    let n = pts.len();
    let lifted: Vec<[f64; 3]> = pts.iter().map(|p| [p.x, p.y, 1.0]).collect();
    let mut u = vec![1.0 / n as f64; n];
    const D1: f64 = 3.0; // lifted dimension

    let mut iterations = 0;
    loop {
        let mut x = [[0.0; 3]; 3];
        for (q, w) in lifted.iter().zip(&u) {
            for i in 0..3 {
                for j in 0..3 {
                    x[i][j] += w * q[i] * q[j];
                }
            }
        }
        let Some(xi) = inverse3(&x) else {
            return Err(Error::DegenerateInput("singular moment matrix".into()));
        };
        let m: Vec<f64> = lifted
            .iter()
            .map(|q| {
                (0..3)
                    .map(|i| q[i] * (0..3).map(|j| xi[i][j] * q[j]).sum::<f64>())
                    .sum()
            })
            .collect();
        let (jp, kp) = m
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |b, (i, &v)| if v > b.1 { (i, v) } else { b });
        let (jm, km) = m
            .iter()
            .enumerate()
            .filter(|(i, _)| u[*i] > 0.0)
            .fold((0, f64::INFINITY), |b, (i, &v)| if v < b.1 { (i, v) } else { b });
        let eps_plus = kp / D1 - 1.0;
        let eps_minus = 1.0 - km / D1;
        if eps_plus <= epsilon && eps_minus <= epsilon {
            break;
        }
        if iterations >= MVEE_MAX_ITER {
            return Err(Error::NoConvergence {
                iterations,
                best: Box::new(ellipse_from_weights(&pts, &u, origin)),
            });
        }
        iterations += 1;
        if eps_plus > eps_minus {
            let tau = (kp - D1) / (D1 * (kp - 1.0));
            u.iter_mut().for_each(|w| *w *= 1.0 - tau);
            u[jp] += tau;
        } else {
            // away step, clipped so the weight stays non-negative
            let tau = ((km - D1) / (D1 * (km - 1.0))).max(-u[jm] / (1.0 - u[jm]));
            u.iter_mut().for_each(|w| *w *= 1.0 - tau);
            u[jm] = (u[jm] + tau).max(0.0);
        }
    }
    Ok(ellipse_from_weights(&pts, &u, origin))
}

/// Smallest `s` for which the ellipse centered at `center` with semi-axes
/// `s * aspect` along `phi` and `s` across contains every vertex.
pub fn min_scale_to_contain(c: &ConvexPolygon, center: Point, phi: f64, aspect: f64) -> f64 {
    let u = Point::unit(phi);
    let v = u.perp();
    c.vertices()
        .iter()
        .map(|p| {
            let d = *p - center;
            ((d.dot(u) / aspect).powi(2) + d.dot(v).powi(2)).sqrt()
        })
        .fold(0.0, f64::max)
}

/// Tightest ellipse with axis ratio `exp(log_aspect)` along `phi`, over all
/// centers.
fn tightest_with_shape(c: &ConvexPolygon, phi: f64, log_aspect: f64) -> Ellipse {
    let u = Point::unit(phi);
    let v = u.perp();
    let k = log_aspect.exp();
    let mapped: Vec<Point> = c
        .vertices()
        .iter()
        .map(|p| Point::new(p.dot(u) / k, p.dot(v)))
        .collect();
    let (m, s) = min_enclosing_circle(&mapped);
    let center = u * (m.x * k) + v * m.y;
    Ellipse::new(center, s * k, s, phi)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerimeterEllipse {
    pub ellipse: Ellipse,
    /// Other local optima within `TOL_OPT` of the best perimeter whose
    /// orientation differs by more than a degree.
    pub alternatives: Vec<Ellipse>,
    /// Some start ran into the aspect-ratio cap.
    pub aspect_cap_hit: bool,
}

/// Minimum-perimeter (Gauss–Kummer) enclosing ellipse.
pub fn min_perimeter_ellipse(c: &ConvexPolygon) -> Result<PerimeterEllipse> {
    let e_area = mvee(c, MVEE_EPS)?;
    min_perimeter_ellipse_from(c, &e_area)
}

fn min_perimeter_ellipse_from(c: &ConvexPolygon, e_area: &Ellipse) -> Result<PerimeterEllipse> {
    let cap = ASPECT_CAP.ln();
    let objective = |x: &[f64]| {
        if x[1].abs() > cap {
            return f64::INFINITY;
        }
        tightest_with_shape(c, x[0], x[1]).perimeter()
    };

    let rects = min_rects(c);
    let m = c.measures();
    let across = c.extent(m.diameter_angle + PI / 2.0);
    let ln = |r: f64| r.max(1.0).ln().min(cap * (1.0 - 1e-9));
    let mut starts: Vec<[f64; 2]> = vec![
        [e_area.phi, ln(e_area.a / e_area.b)],
        [0.0, 0.0],
        [rects.r_area.orientation, ln(rects.r_area.half_long / rects.r_area.half_short)],
        [rects.r_perim.orientation, ln(rects.r_perim.half_long / rects.r_perim.half_short)],
        [m.diameter_angle, ln(m.diameter / across)],
    ];
    let mut rng = SplitMix64::new(START_SEED);
    for _ in 0..RANDOM_STARTS {
        starts.push([rng.uniform(0.0, PI), rng.uniform(0.0, 4f64.ln())]);
    }

    let mut aspect_cap_hit = false;
    let mut results: Vec<(f64, Ellipse)> = Vec::with_capacity(starts.len());
    for s in &starts {
        let f0 = objective(s);
        let opts = NelderMeadOptions {
            xtol: 1e-8,
            ftol: 1e-10 * f0,
            max_evals: 3000,
        };
        let r = minimize_with_restarts(objective, s, &[0.2, 0.2], &opts, 6);
        if r.x[1].abs() > cap * 0.999 {
            aspect_cap_hit = true;
        }
        results.push((r.value, tightest_with_shape(c, r.x[0], r.x[1])));
    }

    // polish in the full (center, angle, log aspect) space
    let (best_idx, _) = results
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |b, (i, r)| if r.0 < b.1 { (i, r.0) } else { b });
    let best = results[best_idx].1;
    let diam = m.diameter;
    let full = |x: &[f64]| {
        if x[3].abs() > cap {
            return f64::INFINITY;
        }
        let k = x[3].exp();
        let s = min_scale_to_contain(c, Point::new(x[0], x[1]), x[2], k);
        Ellipse::new(Point::new(x[0], x[1]), s * k, s, x[2]).perimeter()
    };
    let x0 = [best.center.x, best.center.y, best.phi, (best.a / best.b).ln()];
    let polish = minimize_with_restarts(
        full,
        &x0,
        &[1e-3 * diam, 1e-3 * diam, 1e-3, 1e-3],
        &NelderMeadOptions {
            xtol: 1e-10,
            ftol: 1e-13 * results[best_idx].0,
            max_evals: 3000,
        },
        3,
    );
    if polish.value < results[best_idx].0 {
        let k = polish.x[3].exp();
        let center = Point::new(polish.x[0], polish.x[1]);
        let s = min_scale_to_contain(c, center, polish.x[2], k);
        results[best_idx] = (polish.value, Ellipse::new(center, s * k, s, polish.x[2]));
    }

    let (best_value, best) = results[best_idx];
    let mut distinct: Vec<Ellipse> = vec![best];
    for (v, e) in &results {
        if *v <= best_value * (1.0 + TOL_OPT)
            && !e.near_circular
            && distinct.iter().all(|d| angular_gap(d.phi, e.phi, PI) > 1.0)
        {
            distinct.push(*e);
        }
    }
    let chosen = if distinct.len() > 1 && !best.near_circular {
        *distinct
            .iter()
            .min_by(|x, y| {
                angular_gap(x.phi, e_area.phi, PI).total_cmp(&angular_gap(y.phi, e_area.phi, PI))
            })
            .unwrap()
    } else {
        best
    };
    let alternatives = if best.near_circular {
        Vec::new()
    } else {
        distinct.into_iter().filter(|e| *e != chosen).collect()
    };
    Ok(PerimeterEllipse {
        ellipse: chosen,
        alternatives,
        aspect_cap_hit,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EllipseGapReport {
    pub e_area: Ellipse,
    pub e_perim: Ellipse,
    /// Degrees, `[0, 90]`; zero when either ellipse is near circular.
    pub gap_degrees: f64,
    pub near_circular: bool,
    pub center_distance: f64,
    /// Triangles: largest gap between either ellipse and the longest side.
    pub gap_vs_longest_side: Option<f64>,
    /// Quadrilaterals: largest gap between either ellipse and the diameter.
    pub gap_vs_diameter: Option<f64>,
    /// Distinct near-optimal perimeter ellipses exist.
    pub e_perim_ambiguous: bool,
    pub e_perim_alternatives: Vec<Ellipse>,
    pub aspect_cap_hit: bool,
}

fn gap_to_direction(es: [&Ellipse; 2], dir: f64) -> f64 {
    es.iter()
        .filter(|e| !e.near_circular)
        .map(|e| angular_gap(e.phi, dir, PI))
        .fold(0.0, f64::max)
}

pub fn ellipse_gap_report(c: &ConvexPolygon) -> Result<EllipseGapReport> {
    let e_area = mvee(c, MVEE_EPS)?;
    let pe = min_perimeter_ellipse_from(c, &e_area)?;
    let e_perim = pe.ellipse;
    let near_circular = e_area.near_circular || e_perim.near_circular;
    let gap_degrees = if near_circular {
        0.0
    } else {
        angular_gap(e_area.phi, e_perim.phi, PI)
    };
    let gap_vs_longest_side = c.is_triangle().then(|| {
        let longest = (0..3)
            .max_by(|&i, &j| {
                let (a, b) = c.edge(i);
                let (p, q) = c.edge(j);
                a.dist(b).total_cmp(&p.dist(q))
            })
            .unwrap();
        gap_to_direction([&e_area, &e_perim], c.edge_angle(longest))
    });
    let gap_vs_diameter =
        (c.len() == 4).then(|| gap_to_direction([&e_area, &e_perim], c.measures().diameter_angle));
    Ok(EllipseGapReport {
        gap_degrees,
        near_circular,
        center_distance: e_area.center.dist(e_perim.center),
        gap_vs_longest_side,
        gap_vs_diameter,
        e_perim_ambiguous: !pe.alternatives.is_empty(),
        e_perim_alternatives: pe.alternatives,
        aspect_cap_hit: pe.aspect_cap_hit,
        e_area,
        e_perim,
    })
}

/// Points on the boundary of `e`, counter-clockwise.
pub fn ellipse_points(e: &Ellipse, count: usize) -> Vec<Point> {
    let u = Point::unit(e.phi);
    let v = u.perp();
    (0..count)
        .map(|k| {
            let t = TAU * k as f64 / count as f64;
            e.center + u * (e.a * t.cos()) + v * (e.b * t.sin())
        })
        .collect()
}
