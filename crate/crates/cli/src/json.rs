//! JSON views of core results. Every angle here is in degrees.

use oc_core::ellipse::{Ellipse, EllipseGapReport, MVEE_EPS};
use oc_core::geom::{ConvexPolygon, Point, EPS_REL};
use oc_core::rect::{OctagonResult, OrientedRectangle, RectGapReport};
use oc_core::tri::{Fig7Result, TriGapReport, TriangleContainer, TriangleParams};
use oc_core::{FLUSH_REL, TIE_TOL_REL, TOL_OPT};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

pub fn envelope(command: &str, input: Value, result: Value, warnings: &[String]) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "version": oc_core::VERSION,
        "command": command,
        "tolerances": {
            "eps_rel": EPS_REL,
            "tol_opt": TOL_OPT,
            "tie_tol_rel": TIE_TOL_REL,
            "flush_rel": FLUSH_REL,
            "mvee_eps": MVEE_EPS,
        },
        "input": input,
        "warnings": warnings,
        "result": result,
    })
}

pub fn point(p: Point) -> Value {
    json!([p.x, p.y])
}

fn points(ps: &[Point]) -> Value {
    Value::Array(ps.iter().map(|p| point(*p)).collect())
}

pub fn polygon(c: &ConvexPolygon) -> Value {
    json!({
        "vertices": points(c.vertices()),
        "area": c.area(),
        "perimeter": c.perimeter(),
    })
}

pub fn rectangle(r: &OrientedRectangle) -> Value {
    json!({
        "center": point(r.center),
        "width": 2.0 * r.half_long,
        "height": 2.0 * r.half_short,
        "orientation_deg": r.orientation.to_degrees(),
        "area": r.area(),
        "perimeter": r.perimeter(),
        "degenerate_square": r.degenerate_square,
        "vertices": points(&r.vertices()),
    })
}

pub fn rect_report(r: &RectGapReport) -> Value {
    json!({
        "r_area": rectangle(&r.r_area),
        "r_perim": rectangle(&r.r_perim),
        "gap_degrees": r.gap_degrees,
        "area_ties": r.area_ties.iter().map(rectangle).collect::<Vec<_>>(),
        "perim_ties": r.perim_ties.iter().map(rectangle).collect::<Vec<_>>(),
    })
}

pub fn octagon(o: &OctagonResult) -> Value {
    json!({
        "octagon": polygon(&o.polygon),
        "r1": rectangle(&o.r1),
        "r2": rectangle(&o.r2),
        "report": rect_report(&o.report),
        "gap_degrees": o.report.gap_degrees,
        "preconditions": o.preconditions,
        "perim_is_r1": o.perim_is_r1,
        "area_is_r2": o.area_is_r2,
        "valid": o.valid,
    })
}

pub fn triangle(t: &TriangleContainer) -> Value {
    let params = match t.params {
        TriangleParams::Iso(p) => json!({
            "family": "iso",
            "theta_deg": p.theta.to_degrees(),
            "alpha_deg": p.alpha.to_degrees(),
        }),
        TriangleParams::Right(p) => json!({
            "family": "right",
            "theta_deg": p.theta.to_degrees(),
            "psi_deg": p.psi.to_degrees(),
            "rect_orientation_deg": p.rect_orientation.to_degrees(),
        }),
    };
    json!({
        "params": params,
        "vertices": points(&t.vertices),
        "side_lengths": t.side_lengths(),
        "area": t.area,
        "perimeter": t.perimeter,
        "flush_sides": t.flush_sides,
        "near_equilateral": t.near_equilateral,
        "equal_legs": t.equal_legs,
    })
}

pub fn tri_report(r: &TriGapReport) -> Value {
    json!({
        "family": r.family,
        "t_area": triangle(&r.t_area),
        "t_perim": triangle(&r.t_perim),
        "gap_degrees": r.gap_degrees,
        "shared_angle_with_input": r.shared_angle_with_input,
        "shared_angle_area": r.shared_angle_area,
        "shared_angle_perim": r.shared_angle_perim,
    })
}

pub fn fig7(f: &Fig7Result) -> Value {
    json!({
        "region": polygon(&f.region),
        "half1": polygon(&f.half1),
        "half2": polygon(&f.half2),
        "is_hexagon": f.is_hexagon,
        "half1_less_perimeter": f.half1_less_perimeter,
        "half1_more_area": f.half1_more_area,
        "report": tri_report(&f.report),
        "perim_matches_low_perimeter_half": f.perim_matches_low_perimeter_half,
        "area_matches_low_area_half": f.area_matches_low_area_half,
        "guess_holds": f.guess_holds,
    })
}

pub fn ellipse(e: &Ellipse) -> Value {
    json!({
        "center": point(e.center),
        "a": e.a,
        "b": e.b,
        "phi_deg": e.phi.to_degrees(),
        "area": e.area(),
        "perimeter": e.perimeter(),
        "near_circular": e.near_circular,
    })
}

pub fn ellipse_report(r: &EllipseGapReport) -> Value {
    json!({
        "e_area": ellipse(&r.e_area),
        "e_perim": ellipse(&r.e_perim),
        "gap_degrees": r.gap_degrees,
        "near_circular": r.near_circular,
        "center_distance": r.center_distance,
        "gap_vs_longest_side": r.gap_vs_longest_side,
        "gap_vs_diameter": r.gap_vs_diameter,
        "e_perim_ambiguous": r.e_perim_ambiguous,
        "e_perim_alternatives": r.e_perim_alternatives.iter().map(ellipse).collect::<Vec<_>>(),
        "aspect_cap_hit": r.aspect_cap_hit,
    })
}
