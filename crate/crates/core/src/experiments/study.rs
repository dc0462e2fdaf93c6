use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generate::{generate_one, ShapeSpec};
use crate::ellipse::ellipse_gap_report;
use crate::error::{Error, Result};
use crate::geom::{ConvexPolygon, Point};
use crate::rect::{bounding_rect_at, min_rects};
use crate::tri::{min_iso_containers, min_right_containers};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Rect,
    Iso,
    Right,
    Ellipse,
}

impl Family {
    /// Largest possible gap, in degrees.
    pub fn max_gap(self) -> f64 {
        match self {
            Family::Iso => 180.0,
            _ => 90.0,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Rect => "rect",
            Family::Iso => "iso",
            Family::Right => "right",
            Family::Ellipse => "ellipse",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "rect" | "rectangle" => Family::Rect,
            "iso" | "isosceles" | "isotri" => Family::Iso,
            "right" | "righttri" => Family::Right,
            "ellipse" => Family::Ellipse,
            other => return Err(Error::InvalidInput(format!("unknown family '{other}'"))),
        })
    }
}

/// Best rectangles over a uniform angle grid on `[0, pi/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RectGridOracle {
    pub best_area_angle: f64,
    pub best_perim_angle: f64,
    pub best_area: f64,
    pub best_perim: f64,
}

pub fn rect_grid_oracle(c: &ConvexPolygon, grid_size: usize) -> Result<RectGridOracle> {
    if grid_size < 360 {
        return Err(Error::InvalidInput(format!("grid oracle needs >= 360 angles, got {grid_size}")));
    }
    let mut out = RectGridOracle {
        best_area_angle: 0.0,
        best_perim_angle: 0.0,
        best_area: f64::INFINITY,
        best_perim: f64::INFINITY,
    };
    for k in 0..grid_size {
        let theta = k as f64 * std::f64::consts::FRAC_PI_2 / grid_size as f64;
        let r = bounding_rect_at(c, theta);
        if r.area() < out.best_area {
            out.best_area = r.area();
            out.best_area_angle = theta;
        }
        if r.perimeter() < out.best_perim {
            out.best_perim = r.perimeter();
            out.best_perim_angle = theta;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleRecord {
    pub id: usize,
    pub gap_degrees: Option<f64>,
    pub center_distance: Option<f64>,
    pub gap_vs_longest_side: Option<f64>,
    pub gap_vs_diameter: Option<f64>,
    /// `;`-separated markers such as `near_circular` or `ambiguous`.
    pub flags: String,
    pub error: Option<String>,
    pub vertices: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Aggregates {
    pub samples: usize,
    pub failures: usize,
    pub max_gap: f64,
    pub max_gap_id: Option<usize>,
    pub mean_gap: f64,
    /// Fraction of samples whose two optima have the same orientation
    /// (gap below 1e-6 degrees).
    pub zero_gap_fraction: f64,
    pub max_gap_vs_longest_side: Option<f64>,
    pub max_gap_vs_diameter: Option<f64>,
    pub max_center_distance: Option<f64>,
    pub flagged: usize,
    /// Counts per 1 degree bin, `[k, k + 1)`; the top bin is closed.
    pub histogram: Vec<usize>,
}

const ZERO_GAP_DEG: f64 = 1e-6;

fn fold_max(it: impl Iterator<Item = f64>) -> Option<f64> {
    it.fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.max(x))))
}

impl Aggregates {
    pub fn from_records(records: &[SampleRecord], family: Family) -> Self {
        let bins = family.max_gap() as usize;
        let mut histogram = vec![0usize; bins];
        let ok: Vec<&SampleRecord> = records.iter().filter(|r| r.gap_degrees.is_some()).collect();
        let mut max_gap = 0.0;
        let mut max_gap_id = None;
        let mut sum = 0.0;
        let mut zero = 0usize;
        for r in &ok {
            let g = r.gap_degrees.unwrap();
            sum += g;
            if max_gap_id.is_none() || g > max_gap {
                max_gap = g;
                max_gap_id = Some(r.id);
            }
            if g < ZERO_GAP_DEG {
                zero += 1;
            }
            histogram[(g.floor() as usize).min(bins - 1)] += 1;
        }
        let n = ok.len();
        Aggregates {
            samples: records.len(),
            failures: records.len() - n,
            max_gap,
            max_gap_id,
            mean_gap: if n > 0 { sum / n as f64 } else { 0.0 },
            zero_gap_fraction: if n > 0 { zero as f64 / n as f64 } else { 0.0 },
            max_gap_vs_longest_side: fold_max(ok.iter().filter_map(|r| r.gap_vs_longest_side)),
            max_gap_vs_diameter: fold_max(ok.iter().filter_map(|r| r.gap_vs_diameter)),
            max_center_distance: fold_max(ok.iter().filter_map(|r| r.center_distance)),
            flagged: ok.iter().filter(|r| !r.flags.is_empty()).count(),
            histogram,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub seed: u64,
    pub samples: usize,
    pub kind: String,
    pub family: Family,
    pub version: &'static str,
    pub eps_rel: f64,
    pub tol_opt: f64,
    pub mvee_eps: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudyResult {
    pub spec: ShapeSpec,
    pub family: Family,
    #[serde(skip)]
    pub records: Vec<SampleRecord>,
    pub aggregates: Aggregates,
    pub provenance: Provenance,
}

impl StudyResult {
    /// Recomputes the aggregates from the records and compares.
    pub fn aggregates_consistent(&self) -> bool {
        Aggregates::from_records(&self.records, self.family) == self.aggregates
    }

    /// Record with the largest gap.
    pub fn worst(&self) -> Option<&SampleRecord> {
        let id = self.aggregates.max_gap_id?;
        self.records.iter().find(|r| r.id == id)
    }

    /// JSON summary: everything but the per-sample rows.
    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("study serializes")
    }

    /// One CSV row per sample with a header row.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::InvalidInput(format!("csv: {e}"));
        w.write_record([
            "id",
            "kind",
            "family",
            "gap_degrees",
            "center_distance",
            "gap_vs_longest_side",
            "gap_vs_diameter",
            "flags",
            "error",
            "vertices",
        ])
        .map_err(io)?;
        let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
        for r in &self.records {
            let verts = r
                .vertices
                .iter()
                .map(|p| format!("{},{}", p.x, p.y))
                .collect::<Vec<_>>()
                .join(" ");
            w.write_record([
                r.id.to_string(),
                self.spec.kind.to_string(),
                self.family.to_string(),
                opt(r.gap_degrees),
                opt(r.center_distance),
                opt(r.gap_vs_longest_side),
                opt(r.gap_vs_diameter),
                r.flags.clone(),
                r.error.clone().unwrap_or_default(),
                verts,
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidInput(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }
}

fn run_family(c: &ConvexPolygon, family: Family, rec: &mut SampleRecord) -> Result<()> {
    let mut flags: Vec<&str> = Vec::new();
    match family {
        Family::Rect => {
            let r = min_rects(c);
            if r.area_ties.len() > 1 || r.perim_ties.len() > 1 {
                flags.push("tie");
            }
            rec.gap_degrees = Some(r.gap_degrees);
        }
        Family::Iso | Family::Right => {
            let r = if family == Family::Iso {
                min_iso_containers(c)?
            } else {
                min_right_containers(c)?
            };
            if r.t_area.near_equilateral || r.t_perim.near_equilateral {
                flags.push("near_equilateral");
            }
            if r.t_area.equal_legs || r.t_perim.equal_legs {
                flags.push("equal_legs");
            }
            if r.shared_angle_with_input == Some(false) {
                flags.push("no_shared_angle");
            }
            rec.gap_degrees = Some(r.gap_degrees);
        }
        Family::Ellipse => {
            let r = ellipse_gap_report(c)?;
            if r.near_circular {
                flags.push("near_circular");
            }
            if r.e_perim_ambiguous {
                flags.push("ambiguous");
            }
            if r.aspect_cap_hit {
                flags.push("aspect_cap");
            }
            rec.gap_degrees = Some(r.gap_degrees);
            rec.center_distance = Some(r.center_distance);
            rec.gap_vs_longest_side = r.gap_vs_longest_side;
            rec.gap_vs_diameter = r.gap_vs_diameter;
        }
    }
    rec.flags = flags.join(";");
    Ok(())
}

fn study_sample(spec: &ShapeSpec, family: Family, id: usize) -> SampleRecord {
    let mut rec = SampleRecord {
        id,
        gap_degrees: None,
        center_distance: None,
        gap_vs_longest_side: None,
        gap_vs_diameter: None,
        flags: String::new(),
        error: None,
        vertices: Vec::new(),
    };
    let outcome = generate_one(spec.kind, spec.seed, id as u64).and_then(|c| {
        rec.vertices = c.vertices().to_vec();
        run_family(&c, family, &mut rec)
    });
    if let Err(e) = outcome {
        rec = SampleRecord {
            gap_degrees: None,
            center_distance: None,
            gap_vs_longest_side: None,
            gap_vs_diameter: None,
            error: Some(e.to_string()),
            ..rec
        };
    }
    rec
}

/// Runs one family's gap report on every shape of `spec`. Per-sample
/// failures are kept as records with `error` set and left out of the
/// aggregates.
pub fn batch_gap_study(spec: &ShapeSpec, family: Family) -> Result<StudyResult> {
    if spec.count == 0 {
        return Err(Error::InvalidInput("count must be at least 1".into()));
    }
    let records: Vec<SampleRecord> = (0..spec.count)
        .into_par_iter()
        .map(|i| study_sample(spec, family, i))
        .collect();
    let aggregates = Aggregates::from_records(&records, family);
    Ok(StudyResult {
        spec: *spec,
        family,
        records,
        aggregates,
        provenance: Provenance {
            seed: spec.seed,
            samples: spec.count,
            kind: spec.kind.to_string(),
            family,
            version: crate::VERSION,
            eps_rel: crate::geom::EPS_REL,
            tol_opt: crate::TOL_OPT,
            mvee_eps: crate::ellipse::MVEE_EPS,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::ShapeKind;
    use crate::fixtures;

    #[test]
    fn grid_oracle_fig1() {
        let o = rect_grid_oracle(&fixtures::fig1_triangle(), 36_000).unwrap();
        assert!((o.best_area - 1.0).abs() < 1e-6);
        assert!((o.best_perim - 4.0).abs() < 1e-9);
        assert!(rect_grid_oracle(&fixtures::fig1_triangle(), 100).is_err());
    }

    #[test]
    fn grid_oracle_square_is_flat_at_one() {
        let o = rect_grid_oracle(&fixtures::unit_square(), 360).unwrap();
        assert_eq!(o.best_area, 1.0);
        assert_eq!(o.best_perim, 4.0);
    }

    #[test]
    fn aggregates_recompute() {
        let spec = ShapeSpec::new(ShapeKind::Quadrilateral, 1, 50);
        let s = batch_gap_study(&spec, Family::Rect).unwrap();
        assert!(s.aggregates_consistent());
        assert_eq!(s.aggregates.histogram.iter().sum::<usize>(), 50);
        let csv = s.to_csv().unwrap();
        assert_eq!(csv.lines().count(), 51);
    }

    #[test]
    fn family_parsing() {
        assert_eq!("isotri".parse::<Family>().unwrap(), Family::Iso);
        assert!("blob".parse::<Family>().is_err());
    }
}
