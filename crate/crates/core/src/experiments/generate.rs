//! Seeded random shapes.
//!
//! Sample `k` of a spec only depends on `(kind, seed, k)`, never on the other
//! samples, so generation can run in parallel and still be reproducible.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixtures::round_coord;
use crate::geom::{convex_hull, ConvexPolygon, Point};
use crate::rng::SplitMix64;

pub const MAX_ATTEMPTS: usize = 100_000;

/// Generated shapes below this area are rejected.
pub const AREA_FLOOR: f64 = 1e-3;

/// Obtuse triangles must have an angle above this many degrees.
pub const OBTUSE_MIN_DEG: f64 = 95.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeKind {
    Triangle,
    ObtuseTriangle,
    Quadrilateral,
    Parallelogram,
    ConvexNgon(usize),
}

impl fmt::Display for ShapeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeKind::Triangle => f.write_str("triangle"),
            ShapeKind::ObtuseTriangle => f.write_str("obtuse_triangle"),
            ShapeKind::Quadrilateral => f.write_str("quadrilateral"),
            ShapeKind::Parallelogram => f.write_str("parallelogram"),
            ShapeKind::ConvexNgon(n) => write!(f, "ngon{n}"),
        }
    }
}

impl FromStr for ShapeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase().replace('-', "_");
        Ok(match s.as_str() {
            "triangle" => ShapeKind::Triangle,
            "obtuse_triangle" | "obtuse" => ShapeKind::ObtuseTriangle,
            "quadrilateral" | "quad" => ShapeKind::Quadrilateral,
            "parallelogram" => ShapeKind::Parallelogram,
            other => {
                let n = other
                    .strip_prefix("ngon")
                    .or_else(|| other.strip_prefix("convex_ngon"))
                    .map(|r| r.trim_matches(|c| c == ':' || c == '(' || c == ')'))
                    .and_then(|r| r.parse::<usize>().ok())
                    .ok_or_else(|| Error::InvalidInput(format!("unknown shape kind '{other}'")))?;
                if n < 3 {
                    return Err(Error::InvalidInput(format!("ngon needs n >= 3, got {n}")));
                }
                ShapeKind::ConvexNgon(n)
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeSpec {
    pub kind: ShapeKind,
    pub seed: u64,
    pub count: usize,
}

impl ShapeSpec {
    pub fn new(kind: ShapeKind, seed: u64, count: usize) -> Self {
        ShapeSpec { kind, seed, count }
    }

    fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::InvalidInput("count must be at least 1".into()));
        }
        if let ShapeKind::ConvexNgon(n) = self.kind {
            if n < 3 {
                return Err(Error::InvalidInput(format!("ngon needs n >= 3, got {n}")));
            }
        }
        Ok(())
    }
}

fn point(rng: &mut SplitMix64) -> Point {
    Point::new(round_coord(rng.next_f64()), round_coord(rng.next_f64()))
}

fn max_angle_deg(t: &ConvexPolygon) -> f64 {
    let v = t.vertices();
    (0..v.len())
        .map(|i| {
            let a = v[(i + 1) % v.len()] - v[i];
            let b = v[(i + v.len() - 1) % v.len()] - v[i];
            a.cross(b).abs().atan2(a.dot(b)).to_degrees()
        })
        .fold(0.0, f64::max)
}

/// Random convex polygon with `n` vertices (Valtr's construction), scaled
/// into the unit square.
fn valtr(rng: &mut SplitMix64, n: usize) -> Result<ConvexPolygon> {
    let chain = |rng: &mut SplitMix64| -> Vec<f64> {
        let mut xs: Vec<f64> = (0..n).map(|_| rng.next_f64()).collect();
        xs.sort_by(f64::total_cmp);
        let (lo, hi) = (xs[0], xs[n - 1]);
        let (mut top, mut bot) = (lo, lo);
        let mut out = Vec::with_capacity(n);
        for &x in &xs[1..n - 1] {
            if rng.next_f64() < 0.5 {
                out.push(x - top);
                top = x;
            } else {
                out.push(bot - x);
                bot = x;
            }
        }
        out.push(hi - top);
        out.push(bot - hi);
        out
    };
    let xv = chain(rng);
    let mut yv = chain(rng);
    for i in (1..n).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        yv.swap(i, j);
    }
    let mut vecs: Vec<Point> = xv.into_iter().zip(yv).map(|(x, y)| Point::new(x, y)).collect();
    vecs.sort_by(|a, b| a.angle().total_cmp(&b.angle()));
    let mut pts = Vec::with_capacity(n);
    let mut p = Point::default();
    for v in vecs {
        pts.push(p);
        p = p + v;
    }
    let (minx, miny) = pts.iter().fold((f64::MAX, f64::MAX), |(a, b), q| (a.min(q.x), b.min(q.y)));
    let (maxx, maxy) = pts.iter().fold((f64::MIN, f64::MIN), |(a, b), q| (a.max(q.x), b.max(q.y)));
    let k = 1.0 / (maxx - minx).max(maxy - miny);
    ConvexPolygon::new(
        pts.iter()
            .map(|q| Point::new(round_coord((q.x - minx) * k), round_coord((q.y - miny) * k)))
            .collect(),
    )
}

fn attempt(kind: ShapeKind, rng: &mut SplitMix64) -> Option<ConvexPolygon> {
    let poly = match kind {
        ShapeKind::Triangle | ShapeKind::ObtuseTriangle => {
            ConvexPolygon::new(vec![point(rng), point(rng), point(rng)]).ok()?
        }
        ShapeKind::Quadrilateral => {
            let pts: Vec<Point> = (0..4).map(|_| point(rng)).collect();
            let h = convex_hull(&pts).ok()?;
            if h.len() != 4 {
                return None;
            }
            h
        }
        ShapeKind::Parallelogram => {
            let p = point(rng);
            let u = Point::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
            let v = Point::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
            let r = |q: Point| Point::new(round_coord(q.x), round_coord(q.y));
            let u = r(u);
            let v = r(v);
            ConvexPolygon::new(vec![p, p + u, p + u + v, p + v]).ok()?
        }
        ShapeKind::ConvexNgon(n) => {
            let p = valtr(rng, n).ok()?;
            if p.len() != n {
                return None;
            }
            p
        }
    };
    if poly.area() < AREA_FLOOR {
        return None;
    }
    if kind == ShapeKind::ObtuseTriangle && max_angle_deg(&poly) <= OBTUSE_MIN_DEG {
        return None;
    }
    Some(poly)
}

/// Sample `index` of the stream `(kind, seed)`.
pub fn generate_one(kind: ShapeKind, seed: u64, index: u64) -> Result<ConvexPolygon> {
    let mut rng = SplitMix64::for_index(seed, index);
    for _ in 0..MAX_ATTEMPTS {
        if let Some(p) = attempt(kind, &mut rng) {
            return Ok(p);
        }
    }
    Err(Error::GenerationExhausted {
        kind: kind.to_string(),
        attempts: MAX_ATTEMPTS,
    })
}

pub fn generate(spec: &ShapeSpec) -> Result<Vec<ConvexPolygon>> {
    spec.validate()?;
    (0..spec.count as u64)
        .into_par_iter()
        .map(|i| generate_one(spec.kind, spec.seed, i))
        .collect()
}
