//! The `leab` command line: `refine`, `orbit`, `verify` and `plot`.
//!
//! Each command is a plain function writing to caller-supplied streams, so
//! the binary stays a thin wrapper and tests can drive commands directly.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::analysis::{level_stats, stats_csv, BoundKind, BoundsChecker, BoundsReport, LevelStats};
use crate::error::{Error, Result};
use crate::mesh::{
    default_hanging_tol, find_hanging_nodes, read_mesh, refine_step, write_mesh, HangingNode,
    Method, TriMesh,
};
use crate::shape_space::{orbit, parse_complex, w_left, w_right, ShapePoint, Word};
use crate::svg::{mesh_svg, shape_space_svg, LabeledPoint};

/// 2^24 elements per seed triangle.
pub const MAX_STEPS: u8 = 24;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "leab",
    version,
    about = "Longest-edge altitude bisection of triangles"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Refine a mesh globally; writes level_NNN.json files and stats.csv.
    Refine(RefineArgs),
    /// Trace a shape-space orbit under a word over {L, R}.
    Orbit(OrbitArgs),
    /// Check the two-sided diameter bounds on a refinement sequence.
    Verify(VerifyArgs),
    /// Write SVG plots of shape space and/or a refined mesh.
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RefineArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value = ".")]
    pub output: PathBuf,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=MAX_STEPS as i64))]
    pub steps: u8,
    #[arg(long, default_value = "leab", value_parser = parse_method)]
    pub method: Method,
    /// Hanging-node distance tolerance (default: 1e-9 × bounding-box diagonal).
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct OrbitArgs {
    /// Start point "a+bi" in the shape space.
    #[arg(long, allow_hyphen_values = true)]
    pub z: String,
    #[arg(long, default_value = "")]
    pub word: String,
    /// Also write orbit.txt and orbit.svg here.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Seed mesh, or (with --recheck) a directory of level_NNN.json files.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=MAX_STEPS as i64))]
    pub steps: u8,
    /// Re-verify previously written level files instead of refining.
    #[arg(long)]
    pub recheck: bool,
    /// Also write stats.csv here.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PlotArgs {
    #[arg(long, default_value = ".")]
    pub output: PathBuf,
    /// Points file: one "a+bi [label]" per line, '#' starts a comment.
    #[arg(long)]
    pub points: Option<PathBuf>,
    /// Plot this shape together with its two children.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// Mesh to refine and draw.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=MAX_STEPS as i64))]
    pub steps: u8,
    #[arg(long, default_value = "leab", value_parser = parse_method)]
    pub method: Method,
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Process exit code for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::DegenerateTriangle { .. }
        | Error::NotLongestEdge { .. }
        | Error::DegenerateShape { .. } => EXIT_DEGENERATE,
        _ => EXIT_USAGE,
    }
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

pub fn level_file_name(k: u32) -> String {
    format!("level_{k:03}.json")
}

#[derive(Debug, Clone, PartialEq)]
pub struct RefineSummary {
    pub files: Vec<PathBuf>,
    pub stats: Vec<LevelStats>,
    pub report: Option<BoundsReport>,
    /// Hanging nodes of the final level, as `(node, x, y)`.
    pub hanging: Vec<(HangingNode, f64, f64)>,
}

pub fn cmd_refine(
    args: &RefineArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<RefineSummary> {
    let seed = read_mesh(&args.input)?;
    create_dir(&args.output)?;
    let mut files = Vec::new();
    let mut stats = Vec::new();
    let mut checker: Option<BoundsChecker> = None;
    let mut bounds = Vec::new();
    let mut prev: Option<TriMesh> = None;
    let mut current = seed;
    current.level = 0;
    for k in 0..=u32::from(args.steps) {
        if k > 0 {
            let next = refine_step(&current, args.method)?;
            prev = Some(std::mem::replace(&mut current, next));
        }
        let path = args.output.join(level_file_name(k));
        write_mesh(&path, &current)?;
        files.push(path);
        stats.push(level_stats(&current)?);
        if args.method == Method::Leab && k >= 1 {
            if k == 1 {
                checker = Some(BoundsChecker::new(
                    prev.as_ref().expect("level 0"),
                    &current,
                )?);
            }
            let c = checker.as_ref().expect("set at level 1");
            bounds.push(c.check_level(k as usize, &current)?);
        }
        let _ = writeln!(out, "level {k}: {} triangles", current.len());
    }
    let report = checker.map(|c| c.report(bounds));
    let csv_path = args.output.join("stats.csv");
    write_file(&csv_path, &stats_csv(&stats, report.as_ref()))?;

    let tol = args.tol.unwrap_or_else(|| default_hanging_tol(&current));
    let hanging: Vec<_> = find_hanging_nodes(&current, tol)
        .into_iter()
        .map(|h| {
            let p = current.vertices[h.vertex];
            (h, p.x, p.y)
        })
        .collect();
    if !hanging.is_empty() {
        let _ = writeln!(
            err,
            "warning: level {} is not conforming ({} hanging node incidences)",
            current.level,
            hanging.len()
        );
        for (h, x, y) in &hanging {
            let _ = writeln!(
                err,
                "warning: vertex {} at ({x}, {y}) hangs on edge {} of triangle {}",
                h.vertex, h.edge, h.triangle
            );
        }
    }
    let _ = writeln!(
        out,
        "wrote {} level files and {}",
        files.len(),
        csv_path.display()
    );
    Ok(RefineSummary {
        files,
        stats,
        report,
        hanging,
    })
}

pub fn cmd_orbit(args: &OrbitArgs, out: &mut dyn Write) -> Result<String> {
    let start = ShapePoint::from_complex(parse_complex(&args.z)?)?;
    let word: Word = args.word.parse()?;
    let trace = orbit(start, &word);

    let mut table = format!(
        "{:>5} {:>6} {:>20} {:>20} {:>12}\n",
        "step", "letter", "re", "im", "residual"
    );
    let row = |step: usize, letter: &str, z: ShapePoint, res: f64| {
        format!(
            "{step:>5} {letter:>6} {:>20.15} {:>20.15} {res:>12.3e}\n",
            z.re(),
            z.im()
        )
    };
    table += &row(0, "-", trace.start, trace.start.gamma_residual());
    for (i, ((letter, z), res)) in trace.steps.iter().zip(&trace.residuals).enumerate() {
        table += &row(i + 1, &letter.to_string(), *z, *res);
    }
    let _ = out.write_all(table.as_bytes());

    if let Some(dir) = &args.output {
        create_dir(dir)?;
        write_file(&dir.join("orbit.txt"), &table)?;
        let mut points = vec![LabeledPoint::new(trace.start.to_complex(), "z")];
        let mut prefix = String::new();
        for (letter, z) in &trace.steps {
            prefix += &letter.to_string();
            points.push(LabeledPoint::new(z.to_complex(), prefix.clone()));
        }
        write_file(&dir.join("orbit.svg"), &shape_space_svg(&points))?;
    }
    Ok(table)
}

/// Lists `level_NNN.json` files in a directory, sorted by level.
fn level_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name()
                .and_then(|n| n.to_str())
                .is_some_and(|n| n.starts_with("level_") && n.ends_with(".json"))
        })
        .collect();
    files.sort();
    Ok(files)
}

/// Returns the report; the caller maps `report.pass` to the exit status.
pub fn cmd_verify(
    args: &VerifyArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<BoundsReport> {
    let mut stats = Vec::new();
    let mut records = Vec::new();
    let mut checker: Option<BoundsChecker> = None;
    let mut prev: Option<TriMesh> = None;

    let mut visit = |k: usize, mesh: TriMesh| -> Result<()> {
        stats.push(level_stats(&mesh)?);
        if k == 1 {
            checker = Some(BoundsChecker::new(prev.as_ref().expect("level 0"), &mesh)?);
        }
        if let Some(c) = &checker {
            records.push(c.check_level(k, &mesh)?);
        }
        prev = Some(mesh);
        Ok(())
    };

    if args.recheck {
        let files = level_files(&args.input)?;
        if files.len() < 2 {
            return Err(Error::InsufficientLevels {
                needed: 2,
                got: files.len(),
            });
        }
        for (k, path) in files.iter().enumerate() {
            let mut mesh = read_mesh(path)?;
            mesh.level = k as u32;
            visit(k, mesh)?;
        }
    } else {
        let mut mesh = read_mesh(&args.input)?;
        mesh.level = 0;
        for k in 0..=usize::from(args.steps) {
            let next = if k < usize::from(args.steps) {
                Some(refine_step(&mesh, Method::Leab)?)
            } else {
                None
            };
            visit(k, mesh)?;
            match next {
                Some(n) => mesh = n,
                None => break,
            }
        }
    }

    let checker = checker.expect("at least two levels were visited");
    let report = checker.report(records);
    let _ = out.write_all(report.render().as_bytes());
    if let Some(dir) = &args.output {
        create_dir(dir)?;
        write_file(&dir.join("stats.csv"), &stats_csv(&stats, Some(&report)))?;
    }
    if !report.angle_halving {
        let _ = writeln!(
            err,
            "error: alpha1 = {} deg is below alpha0 / 2 = {} deg",
            report.alpha1,
            report.alpha0 / 2.0
        );
    }
    if let Some(v) = report.first_violation() {
        let _ = writeln!(
            err,
            "error: level {} triangle {}: diameter {:e} {} bound {:e}",
            v.k,
            v.triangle,
            v.observed,
            match v.kind {
                BoundKind::Lower => "below lower",
                BoundKind::Upper => "above upper",
            },
            v.bound
        );
    }
    Ok(report)
}

/// Parses a points file: `a+bi [label]` per line, blank lines and `#` comments ignored.
pub fn parse_points(text: &str) -> Result<Vec<LabeledPoint>> {
    let mut points = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (z, label) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let z = parse_complex(z).map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        points.push(LabeledPoint::new(z, label.trim()));
    }
    Ok(points)
}

pub fn cmd_plot(args: &PlotArgs, out: &mut dyn Write) -> Result<Vec<PathBuf>> {
    create_dir(&args.output)?;
    let mut written = Vec::new();

    let mut points = match &args.points {
        Some(path) => parse_points(&fs::read_to_string(path).map_err(|e| Error::io(path, e))?)?,
        None => Vec::new(),
    };
    if let Some(z) = &args.z {
        let z = ShapePoint::from_complex(parse_complex(z)?)?;
        points.push(LabeledPoint::new(z.to_complex(), "z"));
        points.push(LabeledPoint::new(w_left(z).to_complex(), "W_L(z)"));
        points.push(LabeledPoint::new(w_right(z).to_complex(), "W_R(z)"));
    }
    if args.points.is_some() || args.z.is_some() || args.input.is_none() {
        let path = args.output.join("shape_space.svg");
        write_file(&path, &shape_space_svg(&points))?;
        written.push(path);
    }

    if let Some(input) = &args.input {
        let mut mesh = read_mesh(input)?;
        mesh.level = 0;
        for _ in 0..args.steps {
            mesh = refine_step(&mesh, args.method)?;
        }
        let path = args
            .output
            .join(format!("mesh_level_{:03}.svg", mesh.level));
        write_file(&path, &mesh_svg(&mesh))?;
        written.push(path);
    }
    for p in &written {
        let _ = writeln!(out, "wrote {}", p.display());
    }
    Ok(written)
}

/// Runs a parsed command and returns the process exit code.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &config.command {
        Command::Refine(a) => cmd_refine(a, out, err).map(|_| EXIT_OK),
        Command::Orbit(a) => cmd_orbit(a, out).map(|_| EXIT_OK),
        Command::Verify(a) => {
            cmd_verify(a, out, err).map(|r| if r.pass { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Plot(a) => cmd_plot(a, out).map(|_| EXIT_OK),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        exit_code(&e)
    })
}
