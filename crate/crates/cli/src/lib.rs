//! Command-line front end: parses shapes, runs the container computations
//! and prints JSON reports, with optional SVG renderings.
//!
//! Exit codes: 0 on success, 1 on invalid input (nothing is printed to
//! stdout), 2 when a computation raised a flag (the JSON is still printed).

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use oc_core::ellipse::ellipse_gap_report;
use oc_core::experiments::{batch_gap_study, reproduce_findings, Family, Scale, ShapeKind, ShapeSpec};
use oc_core::geom::{convex_hull, ConvexPolygon, Point};
use oc_core::rect::{hexagon_family, hexagon_sweep, largest_valid_angle, min_rects, octagon_construct, octagon_sweep};
use oc_core::svg::{write_svg, Item, Shape};
use oc_core::tri::{figure7_construct, min_iso_containers, min_right_containers, Fig7Placement};
use oc_core::{fixtures, Error};
use serde::Deserialize;
use serde_json::{json, Value};

pub mod json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_FLAGGED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "oc", version, about = "Optimal oriented containers of convex polygons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Inline vertices, e.g. "0,0 1,0 0,1".
    #[arg(long, allow_hyphen_values = true)]
    vertices: Option<String>,
    /// JSON file of the form {"vertices": [[x, y], ...]}.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Named fixture (square, fig1, tprime, equilateral, hexagon, thin-obtuse).
    #[arg(long)]
    fixture: Option<String>,
}

#[derive(Debug, Args)]
struct PolyArgs {
    #[command(flatten)]
    source: Source,
    /// Also write an SVG rendering to this path.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PairArgs {
    /// First rectangle, W,H with W > H.
    #[arg(long)]
    r1: String,
    /// Second rectangle, W,H with W > H.
    #[arg(long)]
    r2: String,
    /// Tilt of the second rectangle, degrees.
    #[arg(long, default_value_t = 80.0)]
    angle: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convex hull of the input.
    Hull(PolyArgs),
    /// Minimum-area and minimum-perimeter rectangles.
    Rect(PolyArgs),
    /// Minimum-area and minimum-perimeter isosceles triangles.
    Isotri(PolyArgs),
    /// Minimum-area and minimum-perimeter right triangles.
    Righttri(PolyArgs),
    /// Minimum-area and minimum-perimeter ellipses.
    Ellipse(PolyArgs),
    /// Intersection of two centered rectangles and its optimal rectangles.
    Octagon {
        #[command(flatten)]
        pair: PairArgs,
        /// Sweep the tilt instead and report the largest valid angle.
        #[arg(long)]
        sweep: bool,
        /// Sweep step, degrees.
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Shaved square hexagons.
    #[command(group(clap::ArgGroup::new("mode").required(true).args(["s", "sweep"])))]
    Hexagon {
        /// Shave depth in [0, 1).
        #[arg(long)]
        s: Option<f64>,
        /// Locate both switch points on a grid of this many steps.
        #[arg(long)]
        sweep: Option<usize>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Isosceles triangle with unit legs and its optimal rectangles.
    Fig1 {
        /// Apex angle, degrees.
        #[arg(long, default_value_t = 90.0)]
        apex: f64,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Intersection of two half-rectangle right triangles.
    Fig7 {
        #[command(flatten)]
        pair: PairArgs,
        /// Cut along the other diagonal.
        #[arg(long)]
        anti_diagonal: bool,
        /// Keep the triangle above the diagonal.
        #[arg(long)]
        upper: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Batch orientation-gap study on seeded random shapes.
    Study {
        /// triangle, obtuse_triangle, quadrilateral, parallelogram or ngonN.
        #[arg(long)]
        kind: String,
        /// rect, iso, right or ellipse.
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write per-sample rows to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Every construction and study, as one comparison table.
    Reproduce {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// small or full.
        #[arg(long, default_value = "small")]
        scale: String,
        /// Write report.json, CSVs and SVGs into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Deserialize)]
struct PolygonFile {
    vertices: Vec<[f64; 2]>,
}

struct Input {
    polygon: ConvexPolygon,
    warnings: Vec<String>,
}

/// Failure that maps to exit code 1.
struct Invalid(String);

impl From<Error> for Invalid {
    fn from(e: Error) -> Self {
        Invalid(e.to_string())
    }
}

type Outcome = std::result::Result<(Value, bool), Invalid>;

fn parse_points(s: &str) -> std::result::Result<Vec<Point>, Invalid> {
    s.split_whitespace()
        .map(|pair| {
            let mut it = pair.split(',');
            let (x, y) = (it.next(), it.next());
            match (x, y, it.next()) {
                (Some(x), Some(y), None) => match (x.parse::<f64>(), y.parse::<f64>()) {
                    (Ok(x), Ok(y)) if x.is_finite() && y.is_finite() => Ok(Point::new(x, y)),
                    _ => Err(Invalid(format!("bad coordinate pair '{pair}'"))),
                },
                _ => Err(Invalid(format!("bad coordinate pair '{pair}'"))),
            }
        })
        .collect()
}

fn parse_pair(s: &str) -> std::result::Result<(f64, f64), Invalid> {
    match parse_points(s)?.as_slice() {
        [p] => Ok((p.x, p.y)),
        _ => Err(Invalid(format!("expected W,H, got '{s}'"))),
    }
}

fn read_input(src: &Source) -> std::result::Result<Input, Invalid> {
    let points = if let Some(v) = &src.vertices {
        parse_points(v)?
    } else if let Some(path) = &src.file {
        let text = std::fs::read_to_string(path).map_err(|e| Invalid(format!("{}: {e}", path.display())))?;
        let f: PolygonFile =
            serde_json::from_str(&text).map_err(|e| Invalid(format!("{}: {e}", path.display())))?;
        if f.vertices.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Invalid(format!("{}: non-finite coordinate", path.display())));
        }
        f.vertices.iter().map(|&[x, y]| Point::new(x, y)).collect()
    } else {
        let name = src.fixture.as_deref().unwrap_or_default();
        let polygon = fixtures::by_name(name).ok_or_else(|| {
            Invalid(format!("unknown fixture '{name}' (known: {})", fixtures::NAMES.join(", ")))
        })?;
        return Ok(Input {
            polygon,
            warnings: Vec::new(),
        });
    };
    match ConvexPolygon::new(points.clone()) {
        Ok(polygon) => Ok(Input {
            polygon,
            warnings: Vec::new(),
        }),
        Err(Error::NotConvex) => Ok(Input {
            polygon: convex_hull(&points)?,
            warnings: vec!["input is not a convex polygon; using its convex hull".into()],
        }),
        Err(e) => Err(e.into()),
    }
}

fn render(path: &Option<PathBuf>, items: &[Item]) -> std::result::Result<(), Invalid> {
    if let Some(p) = path {
        write_svg(items, p).map_err(|e| Invalid(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn poly_input(c: &ConvexPolygon) -> Value {
    json!({ "vertices": c.vertices().iter().map(|p| json::point(*p)).collect::<Vec<_>>() })
}

fn poly_command(name: &str, args: &PolyArgs, warnings: &mut Vec<String>) -> Outcome {
    let input = read_input(&args.source)?;
    warnings.extend(input.warnings);
    let c = &input.polygon;
    let region = Item::new(Shape::Polygon(c.clone()), "gray");
    let (result, flagged) = match name {
        "hull" => {
            render(&args.svg, &[region])?;
            (json::polygon(c), false)
        }
        "rect" => {
            let r = min_rects(c);
            let mut items = vec![region, Item::new(Shape::Rectangle(r.r_perim), "blue")];
            items.extend(r.area_ties.iter().map(|t| Item::new(Shape::Rectangle(*t), "red").dashed()));
            render(&args.svg, &items)?;
            (json::rect_report(&r), false)
        }
        "isotri" | "righttri" => {
            let r = if name == "isotri" {
                min_iso_containers(c)?
            } else {
                min_right_containers(c)?
            };
            render(
                &args.svg,
                &[
                    region,
                    Item::new(Shape::Triangle(r.t_area.vertices), "red"),
                    Item::new(Shape::Triangle(r.t_perim.vertices), "blue").dashed(),
                ],
            )?;
            (json::tri_report(&r), false)
        }
        _ => {
            let r = ellipse_gap_report(c)?;
            render(
                &args.svg,
                &[
                    region,
                    Item::new(Shape::Ellipse(r.e_area), "red"),
                    Item::new(Shape::Ellipse(r.e_perim), "blue").dashed(),
                ],
            )?;
            if r.aspect_cap_hit {
                warnings.push("aspect ratio cap reached in the perimeter search".into());
            }
            (json::ellipse_report(&r), r.aspect_cap_hit)
        }
    };
    Ok((json::envelope(name, poly_input(c), result, warnings), flagged))
}

fn dispatch(cmd: Command, warnings: &mut Vec<String>) -> Outcome {
    match cmd {
        Command::Hull(a) => poly_command("hull", &a, warnings),
        Command::Rect(a) => poly_command("rect", &a, warnings),
        Command::Isotri(a) => poly_command("isotri", &a, warnings),
        Command::Righttri(a) => poly_command("righttri", &a, warnings),
        Command::Ellipse(a) => poly_command("ellipse", &a, warnings),
        Command::Octagon { pair, sweep, step, svg } => {
            let ((w1, h1), (w2, h2)) = (parse_pair(&pair.r1)?, parse_pair(&pair.r2)?);
            let input = json!({ "r1": [w1, h1], "r2": [w2, h2], "angle_deg": pair.angle });
            if sweep {
                let points = octagon_sweep(w1, h1, w2, h2, 45.0 + step, 90.0 - step, step)?;
                let best = largest_valid_angle(&points);
                let result = json!({ "largest_valid_angle_deg": best, "points": points });
                return Ok((json::envelope("octagon", input, result, warnings), best.is_none()));
            }
            let o = octagon_construct(w1, h1, w2, h2, pair.angle)?;
            render(
                &svg,
                &[
                    Item::new(Shape::Polygon(o.polygon.clone()), "gray"),
                    Item::new(Shape::Rectangle(o.r1), "blue"),
                    Item::new(Shape::Rectangle(o.r2), "red"),
                ],
            )?;
            if !o.valid {
                warnings.push("construction is not valid for these parameters".into());
            }
            Ok((json::envelope("octagon", input, json::octagon(&o), warnings), !o.valid))
        }
        Command::Hexagon { s, sweep, svg } => {
            if let Some(steps) = sweep {
                let r = hexagon_sweep(steps)?;
                let input = json!({ "steps": steps });
                return Ok((json::envelope("hexagon", input, json!(r), warnings), false));
            }
            let s = s.unwrap_or_default();
            let c = hexagon_family(s)?;
            let r = min_rects(&c);
            render(
                &svg,
                &[
                    Item::new(Shape::Polygon(c.clone()), "gray"),
                    Item::new(Shape::Rectangle(r.r_area), "red"),
                    Item::new(Shape::Rectangle(r.r_perim), "blue").dashed(),
                ],
            )?;
            let result = json!({ "hexagon": json::polygon(&c), "report": json::rect_report(&r) });
            Ok((json::envelope("hexagon", json!({ "s": s }), result, warnings), false))
        }
        Command::Fig1 { apex, svg } => {
            if !(apex > 0.0 && apex < 180.0) {
                return Err(Invalid(format!("apex {apex} outside (0, 180)")));
            }
            let c = fixtures::isosceles_apex(apex);
            let r = min_rects(&c);
            let mut items = vec![
                Item::new(Shape::Polygon(c.clone()), "gray"),
                Item::new(Shape::Rectangle(r.r_perim), "blue"),
            ];
            items.extend(r.area_ties.iter().map(|t| Item::new(Shape::Rectangle(*t), "red").dashed()));
            render(&svg, &items)?;
            let input = json!({ "apex_deg": apex, "vertices": poly_input(&c)["vertices"] });
            Ok((json::envelope("fig1", input, json::rect_report(&r), warnings), false))
        }
        Command::Fig7 {
            pair,
            anti_diagonal,
            upper,
            svg,
        } => {
            let ((w1, h1), (w2, h2)) = (parse_pair(&pair.r1)?, parse_pair(&pair.r2)?);
            let placement = Fig7Placement {
                anti_diagonal,
                keep_upper: upper,
            };
            let f = figure7_construct(w1, h1, w2, h2, pair.angle, placement)?;
            render(
                &svg,
                &[
                    Item::new(Shape::Polygon(f.region.clone()), "gray"),
                    Item::new(Shape::Triangle(f.report.t_area.vertices), "red"),
                    Item::new(Shape::Triangle(f.report.t_perim.vertices), "blue").dashed(),
                ],
            )?;
            if !f.is_hexagon {
                warnings.push("intersection is not a hexagon".into());
            }
            let input = json!({
                "r1": [w1, h1],
                "r2": [w2, h2],
                "angle_deg": pair.angle,
                "anti_diagonal": anti_diagonal,
                "keep_upper": upper,
            });
            Ok((json::envelope("fig7", input, json::fig7(&f), warnings), !f.is_hexagon))
        }
        Command::Study {
            kind,
            family,
            n,
            seed,
            csv,
        } => {
            let kind: ShapeKind = kind.parse()?;
            let family: Family = family.parse()?;
            let spec = ShapeSpec::new(kind, seed, n);
            let st = batch_gap_study(&spec, family)?;
            if let Some(path) = &csv {
                write_file(path, st.to_csv()?.as_bytes())?;
            }
            let worst = st.worst().map(|r| json!({ "id": r.id, "gap_degrees": r.gap_degrees, "vertices": r.vertices }));
            let result = json!({ "summary": st.summary_json(), "worst": worst });
            let failed = st.aggregates.failures > 0;
            if failed {
                warnings.push(format!("{} samples failed", st.aggregates.failures));
            }
            let input = json!({ "kind": kind.to_string(), "family": family, "n": n, "seed": seed });
            Ok((json::envelope("study", input, result, warnings), failed))
        }
        Command::Reproduce { seed, scale, out } => {
            let scale: Scale = scale.parse()?;
            let report = reproduce_findings(seed, scale)?;
            if let Some(dir) = &out {
                report.write_to(dir).map_err(|e| Invalid(format!("{}: {e}", dir.display())))?;
            }
            let flagged = report.any_flagged();
            let input = json!({ "seed": seed, "scale": scale });
            Ok((json::envelope("reproduce", input, json!(report), warnings), flagged))
        }
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> std::result::Result<(), Invalid> {
    std::fs::write(path, bytes).map_err(|e| Invalid(format!("{}: {e}", path.display())))
}

fn configure_threads() -> std::result::Result<(), Invalid> {
    let Ok(v) = std::env::var("OC_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Invalid(format!("OC_THREADS must be a positive integer, got '{v}'")))?;
    // a second call in the same process finds the pool already built
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Runs the command line `argv` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_INVALID
                }
            };
        }
    };
    if let Err(Invalid(msg)) = configure_threads() {
        let _ = writeln!(err, "error: {msg}");
        return EXIT_INVALID;
    }
    let mut warnings = Vec::new();
    match dispatch(cli.command, &mut warnings) {
        Ok((value, flagged)) => {
            for w in &warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            let text = serde_json::to_string_pretty(&value).expect("report serializes");
            let _ = writeln!(out, "{text}");
            if flagged {
                EXIT_FLAGGED
            } else {
                EXIT_OK
            }
        }
        Err(Invalid(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INVALID
        }
    }
}
