//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a check fails (verification failure,
//! witness inside the quadrilateral, or a witness where positivity was
//! expected), 2 on usage and parse errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::dual::{check_shadow_equation, sigma_of_root};
use crate::error::{Error, Result};
use crate::linear::{transfer_matrix, ShadowVector};
use crate::positivity::constraints::ConstraintSet;
use crate::positivity::geometry::{polygon_intersect, ChartPoint, ConvexPolygon, HalfPlane};
use crate::positivity::sweep::{
    default_bbox, default_spacing, lattice_points, rows_to_csv, scan_points, summarize, DEFAULT_SWEEP_DEPTH,
};
use crate::positivity::svg::render_svg;
use crate::positivity::witness::{find_witness_for_root, replay_witness, slot_name, DEFAULT_DIGIT_BUDGET};
use crate::rational::{approx, parse_rational, parse_rational_list, Rational};
use crate::tree::{
    branch_sequence, build_tree_limited, path, prefix_node, rows_to_json, rows_to_sage_pretty, Move, MovePath,
    SixTuple, DEFAULT_MAX_HEIGHT, FIELD_NAMES,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Significant digits shown by `--approx`.
const APPROX_DIGITS: usize = 6;

#[derive(Debug, Parser)]
#[command(name = "shadow-markoff", version, about = "Shadow Markoff trees over exact dual rationals")]
pub struct Cli {
    /// Worker threads for parallel commands (0 = one per core).
    #[arg(long, global = true, env = "SHADOW_MARKOFF_JOBS", default_value_t = 0)]
    jobs: usize,

    /// Write the result to a file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rows visited from the root along r, l, then the word.
    Path {
        #[arg(long, value_parser = parse_root, allow_hyphen_values = true)]
        root: ShadowVector,
        #[arg(long, default_value = "", value_parser = parse_word)]
        word: MovePath,
        /// Select one row (0 = root).
        #[arg(long)]
        row: Option<usize>,
        /// Select one field of the row: a, alpha, b, beta, c, gamma or 0..5.
        #[arg(long, value_parser = parse_field)]
        field: Option<usize>,
        /// Print the transfer matrix of the last node as CSV instead.
        #[arg(long)]
        matrix: bool,
        #[arg(long)]
        approx: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Perfect tree of the given height below the prefix node.
    Tree {
        #[arg(long, value_parser = parse_root, allow_hyphen_values = true)]
        root: ShadowVector,
        #[arg(long)]
        height: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_HEIGHT)]
        max_height: usize,
        /// Single-line Sage list instead of the indented layout.
        #[arg(long)]
        compact: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Third body and shadow along a straight branch from the prefix node.
    Branch {
        #[arg(long, value_parser = parse_root, allow_hyphen_values = true)]
        root: ShadowVector,
        #[arg(long, value_parser = parse_move)]
        direction: Move,
        #[arg(long, default_value_t = 15)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the shadow equation at every node to a depth.
    Verify {
        #[arg(long, value_parser = parse_root, allow_hyphen_values = true)]
        root: ShadowVector,
        #[arg(long, default_value_t = 10)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_HEIGHT)]
        max_height: usize,
        /// Also require every shadow to be nonnegative.
        #[arg(long)]
        expect_positive: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// First negative shadow in breadth-first order.
    Witness {
        /// Chart point alpha,beta (gamma = 1).
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true, conflicts_with = "root", required_unless_present = "root")]
        point: Option<ChartPoint>,
        #[arg(long, value_parser = parse_root, allow_hyphen_values = true)]
        root: Option<ShadowVector>,
        #[arg(long, default_value_t = DEFAULT_SWEEP_DEPTH)]
        max_depth: usize,
        /// Exit with 1 if a witness is found.
        #[arg(long)]
        expect_positive: bool,
        #[arg(long, default_value_t = DEFAULT_DIGIT_BUDGET)]
        digit_budget: usize,
        #[arg(long)]
        approx: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Classify lattice points of a window against the quadrilateral and positivity.
    Region {
        /// alpha_min,alpha_max,beta_min,beta_max
        #[arg(long, value_parser = parse_bbox, allow_hyphen_values = true)]
        bbox: Option<ConvexPolygon>,
        #[arg(long, value_parser = parse_rational_arg)]
        spacing: Option<Rational>,
        #[arg(long, default_value_t = DEFAULT_SWEEP_DEPTH)]
        depth: usize,
        /// Exterior points farther than this from the quadrilateral are
        /// expected to have a witness (text summary only).
        #[arg(long, value_parser = parse_rational_arg, default_value = "1/10")]
        margin: Rational,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Half-planes cut out by every node to a depth, and their intersection.
    Constraints {
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Clipping window for the intersection polygon.
        #[arg(long, value_parser = parse_bbox, allow_hyphen_values = true)]
        bbox: Option<ConvexPolygon>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn parse_root(s: &str) -> std::result::Result<ShadowVector, String> {
    let v = parse_rational_list(s, 3).map_err(|e| e.to_string())?;
    let [a, b, c]: [Rational; 3] = v.try_into().expect("three values");
    Ok(ShadowVector::new(a, b, c))
}

fn parse_point(s: &str) -> std::result::Result<ChartPoint, String> {
    let v = parse_rational_list(s, 2).map_err(|e| e.to_string())?;
    let [a, b]: [Rational; 2] = v.try_into().expect("two values");
    Ok(ChartPoint::new(a, b))
}

fn parse_bbox(s: &str) -> std::result::Result<ConvexPolygon, String> {
    let v = parse_rational_list(s, 4).map_err(|e| e.to_string())?;
    let [a0, a1, b0, b1]: [Rational; 4] = v.try_into().expect("four values");
    ConvexPolygon::rectangle(a0, a1, b0, b1).map_err(|e| e.to_string())
}

fn parse_rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_word(s: &str) -> std::result::Result<MovePath, String> {
    s.parse::<MovePath>().map_err(|e| e.to_string())
}

fn parse_move(s: &str) -> std::result::Result<Move, String> {
    match s.to_ascii_lowercase().as_str() {
        "l" | "left" => Ok(Move::Left),
        "r" | "right" => Ok(Move::Right),
        _ => Err(format!("expected l or r, got {s:?}")),
    }
}

fn parse_field(s: &str) -> std::result::Result<usize, String> {
    if let Some(i) = FIELD_NAMES.iter().position(|f| f.eq_ignore_ascii_case(s)) {
        return Ok(i);
    }
    match s.parse::<usize>() {
        Ok(i) if i < 6 => Ok(i),
        _ => Err(format!("expected one of {} or 0..5, got {s:?}", FIELD_NAMES.join(", "))),
    }
}

/// Outcome of a command: text to emit and the exit status.
struct Outcome {
    text: String,
    status: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, status: EXIT_OK }
    }
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn rational_json(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn value_line(r: &Rational, with_approx: bool) -> String {
    if with_approx {
        format!("{r} ~ {}", approx(r, APPROX_DIGITS))
    } else {
        r.to_string()
    }
}

fn approx_row(row: &SixTuple) -> String {
    let items: Vec<String> = row.fields().iter().map(|v| approx(v, APPROX_DIGITS)).collect();
    format!("[{}]", items.join(", "))
}

fn root_parts(root: &ShadowVector) -> (Rational, Rational, Rational) {
    (root.alpha.clone(), root.beta.clone(), root.gamma.clone())
}

#[allow(clippy::too_many_arguments)]
fn cmd_path(
    root: &ShadowVector,
    word: &MovePath,
    row: Option<usize>,
    field: Option<usize>,
    matrix: bool,
    with_approx: bool,
    format: Format,
) -> Result<Outcome> {
    if matrix {
        return Ok(Outcome::ok(transfer_matrix(word).to_csv()));
    }
    let (a, b, c) = root_parts(root);
    let rows = path(a, b, c, word)?;
    let row = match (row, field) {
        (None, None) => None,
        (Some(i), _) => Some(i),
        (None, Some(_)) => Some(rows.len() - 1),
    };
    let Some(i) = row else {
        let text = match format {
            Format::Json => serde_json::to_string(&rows_to_json(&rows)).expect("json"),
            Format::Text => {
                let mut s = rows_to_sage_pretty(&rows);
                if with_approx {
                    s.push_str("\n~ ");
                    let approx_rows: Vec<String> = rows.iter().map(approx_row).collect();
                    s.push_str(&format!("[{}]", approx_rows.join(",\n   ")));
                }
                s
            }
            other => return Err(unsupported(other, "path")),
        };
        return Ok(Outcome::ok(text));
    };
    let selected = rows.get(i).ok_or_else(|| {
        Error::Precondition(format!("row {i} is past the end of a {}-row path", rows.len()))
    })?;
    let text = match (field, format) {
        (Some(f), Format::Json) => {
            let value = selected.field(f).expect("field index checked");
            let mut obj = json!({ "row": i, "field": FIELD_NAMES[f], "value": rational_json(value) });
            if with_approx {
                obj["approx"] = Value::String(approx(value, APPROX_DIGITS));
            }
            serde_json::to_string(&obj).expect("json")
        }
        (Some(f), Format::Text) => value_line(selected.field(f).expect("field index checked"), with_approx),
        (None, Format::Json) => serde_json::to_string(&selected.to_json()).expect("json"),
        (None, Format::Text) => {
            let mut s = selected.to_string();
            if with_approx {
                s.push_str(&format!(" ~ {}", approx_row(selected)));
            }
            s
        }
        (_, other) => return Err(unsupported(other, "path")),
    };
    Ok(Outcome::ok(text))
}

fn unsupported(format: Format, command: &str) -> Error {
    Error::Precondition(format!("format {format:?} is not available for {command}").to_lowercase())
}

fn cmd_tree(root: &ShadowVector, height: usize, max_height: usize, compact: bool, format: Format) -> Result<Outcome> {
    let (a, b, c) = root_parts(root);
    let tree = build_tree_limited(a, b, c, height, max_height)?;
    let text = match format {
        Format::Text if compact => tree.to_sage_compact(),
        Format::Text => tree.to_sage_pretty(),
        Format::Json => serde_json::to_string(&tree.to_json()).expect("json"),
        other => return Err(unsupported(other, "tree")),
    };
    Ok(Outcome::ok(text))
}

fn cmd_branch(root: &ShadowVector, direction: Move, count: usize, format: Format) -> Result<Outcome> {
    let (a, b, c) = root_parts(root);
    let pairs = branch_sequence(a, b, c, direction, count)?;
    let text = match format {
        Format::Text => {
            let bodies: Vec<String> = pairs.iter().map(|(c, _)| c.to_string()).collect();
            let shadows: Vec<String> = pairs.iter().map(|(_, g)| g.to_string()).collect();
            format!("bodies: [{}]\nshadows: [{}]", bodies.join(", "), shadows.join(", "))
        }
        Format::Csv => {
            let mut s = String::from("index,body,shadow\n");
            for (k, (c, g)) in pairs.iter().enumerate() {
                s.push_str(&format!("{k},{c},{g}\n"));
            }
            s
        }
        Format::Json => {
            let bodies: Vec<Value> = pairs.iter().map(|(c, _)| rational_json(c)).collect();
            let shadows: Vec<Value> = pairs.iter().map(|(_, g)| rational_json(g)).collect();
            serde_json::to_string(&json!({ "direction": direction.as_char().to_string(), "bodies": bodies, "shadows": shadows }))
                .expect("json")
        }
        other => return Err(unsupported(other, "branch")),
    };
    Ok(Outcome::ok(text))
}

#[derive(Debug)]
struct Failure {
    word: MovePath,
    step_index: usize,
    reason: String,
}

fn check_node(node: &SixTuple, sigma: &crate::dual::Sigma, expect_positive: bool) -> Option<String> {
    if !check_shadow_equation(&node.to_triple(), sigma) {
        return Some("shadow equation fails".into());
    }
    if expect_positive {
        if let Some(i) = node.shadows().iter().position(|v| v.is_negative()) {
            return Some(format!("{} is negative", FIELD_NAMES[2 * i + 1]));
        }
    }
    None
}

fn cmd_verify(
    root: &ShadowVector,
    depth: usize,
    max_height: usize,
    expect_positive: bool,
    format: Format,
) -> Result<Outcome> {
    if depth >= max_height {
        return Err(Error::DepthLimit {
            requested: depth,
            limit: max_height.saturating_sub(1),
        });
    }
    let (a, b, c) = root_parts(root);
    let sigma = sigma_of_root(&a, &b, &c);
    let start = SixTuple::root(a.clone(), b.clone(), c.clone());
    let after_right = start.step(Move::Right)?;
    let mut checked = 0usize;
    let mut failure = None;

    for (step_index, node) in [&start, &after_right].into_iter().enumerate() {
        checked += 1;
        if let Some(reason) = check_node(node, &sigma, expect_positive) {
            failure = Some(Failure {
                word: MovePath::empty(),
                step_index,
                reason,
            });
            break;
        }
    }
    if failure.is_none() {
        let mut level = vec![(MovePath::empty(), prefix_node(a, b, c)?)];
        'levels: for d in 0..=depth {
            let verdicts: Vec<Option<String>> = level
                .par_iter()
                .map(|(_, node)| check_node(node, &sigma, expect_positive))
                .collect();
            for ((word, _), verdict) in level.iter().zip(verdicts) {
                checked += 1;
                if let Some(reason) = verdict {
                    failure = Some(Failure {
                        word: word.clone(),
                        step_index: d + 2,
                        reason,
                    });
                    break 'levels;
                }
            }
            if d < depth {
                level = level
                    .par_iter()
                    .map(|(word, node)| -> Result<[(MovePath, SixTuple); 2]> {
                        Ok([
                            (word.child(Move::Left), node.step(Move::Left)?),
                            (word.child(Move::Right), node.step(Move::Right)?),
                        ])
                    })
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .flatten()
                    .collect();
            }
        }
    }

    let failures = usize::from(failure.is_some());
    let text = match format {
        Format::Text => {
            let mut s = format!("checked {checked} nodes to depth {depth}: {failures} failures");
            if let Some(f) = &failure {
                s.push_str(&format!("\nfirst failure: word={:?} row={} {}", f.word.to_string(), f.step_index, f.reason));
            }
            s
        }
        Format::Json => {
            let first = failure.as_ref().map(|f| {
                json!({ "word": f.word.to_string(), "row": f.step_index, "reason": f.reason })
            });
            serde_json::to_string(&json!({ "depth": depth, "checked": checked, "failures": failures, "first_failure": first }))
                .expect("json")
        }
        other => return Err(unsupported(other, "verify")),
    };
    Ok(Outcome {
        text,
        status: if failure.is_some() { EXIT_CHECK_FAILED } else { EXIT_OK },
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_witness(
    point: Option<&ChartPoint>,
    root: Option<&ShadowVector>,
    max_depth: usize,
    expect_positive: bool,
    digit_budget: usize,
    with_approx: bool,
    format: Format,
) -> Result<Outcome> {
    if max_depth == 0 {
        return Err(Error::Precondition("witness search depth must be at least 1".into()));
    }
    let root = match (point, root) {
        (Some(p), _) => p.to_root(),
        (None, Some(r)) => r.clone(),
        (None, None) => return Err(Error::Precondition("either --point or --root is required".into())),
    };
    let witness = find_witness_for_root(&root, max_depth);
    let replayed = witness
        .as_ref()
        .map(|w| replay_witness(&root, w, digit_budget))
        .transpose()?;
    let text = match format {
        Format::Text => match (&witness, &replayed) {
            (Some(w), Some(v)) => {
                let mut s = w.to_string();
                if with_approx {
                    s.push_str(&format!(" ~ {}", approx(v, APPROX_DIGITS)));
                }
                s
            }
            _ => format!("no negative shadow to depth {max_depth}"),
        },
        Format::Json => {
            let body = match &witness {
                Some(w) => {
                    let mut obj = json!({
                        "word": w.word.to_string(),
                        "row": w.step_index,
                        "field": slot_name(w.slot),
                        "value": rational_json(&w.value),
                    });
                    if with_approx {
                        obj["approx"] = Value::String(approx(&w.value, APPROX_DIGITS));
                    }
                    obj
                }
                None => Value::Null,
            };
            serde_json::to_string(&json!({ "max_depth": max_depth, "witness": body })).expect("json")
        }
        other => return Err(unsupported(other, "witness")),
    };
    let status = if expect_positive && witness.is_some() {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    };
    Ok(Outcome { text, status })
}

fn cmd_region(
    bbox: Option<ConvexPolygon>,
    spacing: Option<Rational>,
    depth: usize,
    margin: &Rational,
    format: Format,
) -> Result<Outcome> {
    let bbox = bbox.unwrap_or_else(default_bbox);
    let spacing = spacing.unwrap_or_else(default_spacing);
    let points = lattice_points(&bbox, &spacing)?;
    let constraints = ConstraintSet::build(depth);
    let rows = scan_points(points, &constraints);
    let summary = summarize(&rows, margin);
    let text = match format {
        Format::Csv => rows_to_csv(&rows),
        Format::Text => summary.render(margin),
        Format::Svg => {
            let outer = polygon_intersect(&constraints.halfplanes(), &bbox).ok();
            render_svg(&bbox, outer.as_ref(), &rows)
        }
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "alpha": rational_json(&r.point.alpha),
                        "beta": rational_json(&r.point.beta),
                        "inside_conjecture": r.inside_conjecture(),
                        "positive_to_depth": r.positive(),
                        "witness_word": r.witness.as_ref().map(|w| w.word.to_string()),
                    })
                })
                .collect();
            serde_json::to_string(&Value::Array(items)).expect("json")
        }
    };
    let status = if summary.interior_negative.is_empty() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    };
    Ok(Outcome { text, status })
}

fn halfplane_text(h: &HalfPlane) -> String {
    format!("{}*alpha + {}*beta + {} >= 0", h.u, h.v, h.w)
}

fn cmd_constraints(depth: usize, bbox: Option<ConvexPolygon>, format: Format) -> Result<Outcome> {
    let bbox = bbox.unwrap_or_else(default_bbox);
    let set = ConstraintSet::build(depth);
    let halfplanes = set.halfplanes();
    let outer = polygon_intersect(&halfplanes, &bbox);
    let text = match format {
        Format::Text => {
            let mut s = format!("{} half-planes to depth {depth}\n", set.len());
            for c in set.constraints() {
                s.push_str(&format!(
                    "{}  word={:?} row={} field={}\n",
                    halfplane_text(&c.halfplane),
                    c.word.to_string(),
                    c.step_index,
                    slot_name(c.slot)
                ));
            }
            match &outer {
                Ok(poly) => {
                    let vs: Vec<String> = poly.vertices().iter().map(ToString::to_string).collect();
                    s.push_str(&format!("intersection: [{}]", vs.join(", ")));
                }
                Err(_) => s.push_str("intersection: empty"),
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("u,v,w,word,row,field\n");
            for c in set.constraints() {
                let h = &c.halfplane;
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    h.u,
                    h.v,
                    h.w,
                    c.word,
                    c.step_index,
                    slot_name(c.slot)
                ));
            }
            s
        }
        Format::Json => {
            let items: Vec<Value> = set
                .constraints()
                .iter()
                .map(|c| {
                    json!({
                        "u": rational_json(&c.halfplane.u),
                        "v": rational_json(&c.halfplane.v),
                        "w": rational_json(&c.halfplane.w),
                        "word": c.word.to_string(),
                        "row": c.step_index,
                        "field": slot_name(c.slot),
                    })
                })
                .collect();
            let vertices = outer.as_ref().ok().map(|poly| {
                poly.vertices()
                    .iter()
                    .map(|p| json!([rational_json(&p.alpha), rational_json(&p.beta)]))
                    .collect::<Vec<_>>()
            });
            serde_json::to_string(&json!({ "depth": depth, "halfplanes": items, "intersection": vertices }))
                .expect("json")
        }
        Format::Svg => render_svg(&bbox, outer.as_ref().ok(), &[]),
    };
    Ok(Outcome::ok(text))
}

fn dispatch(command: &Command) -> Result<Outcome> {
    match command {
        Command::Path {
            root,
            word,
            row,
            field,
            matrix,
            approx,
            format,
        } => cmd_path(root, word, *row, *field, *matrix, *approx, *format),
        Command::Tree {
            root,
            height,
            max_height,
            compact,
            format,
        } => cmd_tree(root, *height, *max_height, *compact, *format),
        Command::Branch {
            root,
            direction,
            count,
            format,
        } => cmd_branch(root, *direction, *count, *format),
        Command::Verify {
            root,
            depth,
            max_height,
            expect_positive,
            format,
        } => cmd_verify(root, *depth, *max_height, *expect_positive, *format),
        Command::Witness {
            point,
            root,
            max_depth,
            expect_positive,
            digit_budget,
            approx,
            format,
        } => cmd_witness(
            point.as_ref(),
            root.as_ref(),
            *max_depth,
            *expect_positive,
            *digit_budget,
            *approx,
            *format,
        ),
        Command::Region {
            bbox,
            spacing,
            depth,
            margin,
            format,
        } => cmd_region(bbox.clone(), spacing.clone(), *depth, margin, *format),
        Command::Constraints { depth, bbox, format } => cmd_constraints(*depth, bbox.clone(), *format),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status. Results go to `out` (or `--output`), diagnostics to `err`.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };

    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return EXIT_USAGE;
        }
    };
    let outcome = match pool.install(|| dispatch(&cli.command)) {
        Ok(outcome) => outcome,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };

    let text = with_newline(outcome.text);
    let written = match &cli.output {
        Some(file) => std::fs::write(file, text.as_bytes()).map_err(|e| format!("{}: {e}", file.display())),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    outcome.status
}

pub fn run() -> std::process::ExitCode {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = run_from(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    std::process::ExitCode::from(code as u8)
}
