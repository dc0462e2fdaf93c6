use oc_cli::run;
use serde_json::Value;

fn oc(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("oc").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = oc(args);
    assert_eq!(code, 0, "stderr: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn rect_on_fig1_triangle() {
    let v = json(&["rect", "--vertices", "0,0 1,0 0,1"]);
    assert_eq!(v["schema_version"], 1);
    let r = &v["result"];
    assert!((r["r_perim"]["perimeter"].as_f64().unwrap() - 4.0).abs() < 1e-9);
    assert_eq!(r["area_ties"].as_array().unwrap().len(), 2);
    assert!(v["tolerances"]["tol_opt"].is_number());
}

#[test]
fn octagon_example() {
    let v = json(&["octagon", "--r1", "10,9.9", "--r2", "11,8.99", "--angle", "80"]);
    assert!((v["result"]["gap_degrees"].as_f64().unwrap() - 80.0).abs() < 0.01);
    assert_eq!(v["result"]["valid"], true);
}

#[test]
fn octagon_invalid_angle_flags() {
    let (code, out, err) = oc(&["octagon", "--r1", "10,9.9", "--r2", "11,8.99", "--angle", "30"]);
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["valid"], false);
    assert!(err.contains("warning"));
}

#[test]
fn missing_file_is_invalid_input() {
    let (code, out, err) = oc(&["hull", "--file", "missing.json"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("missing.json"));
}

#[test]
fn input_sources_are_exclusive() {
    let (code, out, _) = oc(&["rect", "--vertices", "0,0 1,0 0,1", "--fixture", "square"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    let (code, _, _) = oc(&["rect"]);
    assert_eq!(code, 1);
}

#[test]
fn bad_vertices_rejected() {
    for bad in ["0,0 1,0", "0,0 1,x 0,1", "0,0 1,0 2,0", "0,0,1 1,0 0,1", "0,0 inf,0 0,1"] {
        let (code, out, err) = oc(&["rect", "--vertices", bad]);
        assert_eq!(code, 1, "{bad}: {err}");
        assert!(out.is_empty());
    }
}

#[test]
fn non_convex_input_is_hulled_with_warning() {
    let (code, out, err) = oc(&["hull", "--vertices", "0,0 1,0 1,1 0.9,0.2 0,1"]);
    assert_eq!(code, 0);
    assert!(err.contains("convex hull"));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["vertices"].as_array().unwrap().len(), 4);
}

#[test]
fn polygon_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&["hull", "--vertices", "0.1,0.2 3.7,0.05 2.2,1.9 0.3,1.1"]);
    let path = dir.path().join("p.json");
    std::fs::write(&path, serde_json::to_string(&v["input"]).unwrap()).unwrap();
    let w = json(&["hull", "--file", path.to_str().unwrap()]);
    assert_eq!(v["input"], w["input"]);
    assert_eq!(v["result"], w["result"]);
}

#[test]
fn fixtures_and_families() {
    let v = json(&["isotri", "--fixture", "equilateral"]);
    assert!(v["result"]["gap_degrees"].as_f64().unwrap() < 1e-3);
    let v = json(&["righttri", "--fixture", "fig1"]);
    assert!((v["result"]["t_area"]["area"].as_f64().unwrap() - 0.5).abs() < 1e-6);
    let v = json(&["ellipse", "--fixture", "square"]);
    assert_eq!(v["result"]["near_circular"], true);
    let (code, _, err) = oc(&["rect", "--fixture", "blob"]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown fixture"));
}

#[test]
fn fig1_apex_91() {
    let v = json(&["fig1", "--apex", "91"]);
    let g = v["result"]["gap_degrees"].as_f64().unwrap();
    assert!(g > 40.0 && g <= 45.0);
}

#[test]
fn hexagon_modes() {
    let v = json(&["hexagon", "--s", "0.55"]);
    assert!((v["result"]["report"]["gap_degrees"].as_f64().unwrap() - 45.0).abs() < 0.1);
    let (code, _, _) = oc(&["hexagon"]);
    assert_eq!(code, 1);
    let (code, _, _) = oc(&["hexagon", "--s", "1.5"]);
    assert_eq!(code, 1);
}

#[test]
fn svg_rendering() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for p in [&a, &b] {
        json(&["fig1", "--svg", p.to_str().unwrap()]);
    }
    let svg = std::fs::read_to_string(&a).unwrap();
    assert_eq!(svg.matches("<polygon").count(), 1);
    assert_eq!(svg.matches("<rect").count(), 3);
    assert_eq!(svg, std::fs::read_to_string(&b).unwrap());

    let o = dir.path().join("o.svg");
    json(&["octagon", "--r1", "10,9.9", "--r2", "11,8.99", "--angle", "80", "--svg", o.to_str().unwrap()]);
    let svg = std::fs::read_to_string(&o).unwrap();
    assert_eq!(svg.matches("<polygon").count(), 1);
    assert_eq!(svg.matches("<rect").count(), 2);

    let (code, out, _) = oc(&["rect", "--fixture", "square", "--svg", "/nonexistent/dir/x.svg"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
}

#[test]
fn fig7_placements() {
    let v = json(&["fig7", "--r1", "10,9.9", "--r2", "11,8.99", "--angle", "80"]);
    assert_eq!(v["result"]["is_hexagon"], true);
    assert!(v["result"]["guess_holds"].is_boolean());
    let (code, out, _) = oc(&["fig7", "--r1", "10,9.9", "--r2", "11,8.99", "--angle", "80", "--anti-diagonal", "--upper"]);
    assert!(code == 0 || code == 2);
    assert!(serde_json::from_str::<Value>(&out).is_ok());
}

#[test]
fn study_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let v = json(&[
        "study", "--kind", "quadrilateral", "--family", "rect", "--n", "20", "--seed", "3", "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(v["result"]["summary"]["aggregates"]["samples"], 20);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 21);
    assert!(text.starts_with("id,kind,family,gap_degrees"));
    let (code, _, _) = oc(&["study", "--kind", "blob", "--family", "rect", "--n", "2"]);
    assert_eq!(code, 1);
    let (code, _, _) = oc(&["study", "--kind", "triangle", "--family", "rect", "--n", "0"]);
    assert_eq!(code, 1);
}

#[test]
fn bad_reproduce_scale() {
    let (code, out, err) = oc(&["reproduce", "--scale", "huge"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("small or full"));
}

#[test]
fn help_and_version() {
    let (code, out, _) = oc(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("reproduce"));
    let (code, out, _) = oc(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.contains(oc_core::VERSION));
}
