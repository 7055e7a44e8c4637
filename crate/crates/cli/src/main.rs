use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

mod render;

use render::{Format, Output};

/// Exit status when `eval` finds that the pure condition vanishes.
const EXIT_VANISHES: u8 = 10;
/// Exit status for unreadable or invalid input.
const EXIT_INPUT: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "incidence",
    version,
    about = "Realizability analysis for point-hyperplane incidence geometries"
)]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Deterministic,
    Randomized,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a geometry document
    Validate { file: PathBuf },
    /// Independence and basis test in the d-plane matroid
    Matroid {
        file: PathBuf,
        /// Force a method instead of choosing by size
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        /// Largest incidence count decided by enumeration
        #[arg(long, default_value_t = incidence::matroid::DEFAULT_THRESHOLD)]
        threshold: usize,
        /// Repetitions of the randomized rank test
        #[arg(long, default_value_t = 3)]
        repetitions: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Canonical pure condition of a basis
    Purecond {
        file: PathBuf,
        /// Point to pin (defaults to the first point)
        #[arg(long)]
        pin: Option<String>,
        /// Also print the pure condition as a bracket polynomial
        #[arg(long)]
        bracket: bool,
    },
    /// Evaluate the pure condition at concrete normals
    Eval {
        file: PathBuf,
        /// Normals document; overrides normals in the geometry file
        #[arg(long)]
        normals: Option<PathBuf>,
        #[arg(long)]
        pin: Option<String>,
    },
    /// Space of redrawings at concrete normals
    Realize {
        file: PathBuf,
        #[arg(long)]
        normals: Option<PathBuf>,
        #[arg(long)]
        pin: Option<String>,
    },
    /// Check independence of the pinned point and invariance under unimodular maps
    Invariance {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rank and minor analysis of a geometry with more incidences than a basis
    Overconstrained {
        file: PathBuf,
        #[arg(long)]
        normals: Option<PathBuf>,
        #[arg(long)]
        pin: Option<String>,
        /// Count nonzero maximal minors
        #[arg(long)]
        minors: bool,
        /// Random normal assignments for the minor count
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load(path: &Path) -> Result<incidence::geometry::GeometryDocument> {
    incidence::geometry::parse_document(&read(path)?).with_context(|| format!("invalid geometry {}", path.display()))
}

/// Normals from the separate file, falling back per hyperplane to the
/// geometry file and then to normals derived from its coordinates.
fn resolve_normals(
    doc: &incidence::geometry::GeometryDocument,
    separate: Option<&Path>,
) -> Result<incidence::geometry::NormalAssignment> {
    let g = &doc.geometry;
    let mut merged = match (&doc.normals, &doc.coordinates) {
        (Some(n), _) => n.clone(),
        (None, Some(c)) => {
            incidence::geometry::normals_from_points(g, c)
                .context("cannot derive normals from the coordinates")?
                .0
        }
        (None, None) => incidence::geometry::NormalAssignment::new(),
    };
    if let Some(path) = separate {
        let extra = incidence::geometry::parse_normals(&read(path)?)
            .with_context(|| format!("invalid normals {}", path.display()))?;
        for (label, v) in extra.entries {
            g.hyperplane_index(&label)?;
            merged.insert(label, v);
        }
    }
    if merged.entries.is_empty() {
        bail!("no normals given: pass --normals or include them in the geometry file");
    }
    merged.vectors(g)?;
    Ok(merged)
}

fn pin_or_first(g: &incidence::geometry::IncidenceGeometry, pin: Option<String>) -> Result<String> {
    match pin {
        Some(p) => {
            g.point_index(&p)?;
            Ok(p)
        }
        None => g.points().first().cloned().context("the geometry has no points"),
    }
}

fn run(cli: Cli) -> Result<Output> {
    let format = cli.format;
    match cli.command {
        Command::Validate { file } => {
            let doc = load(&file)?;
            Ok(render::validate(format, &doc))
        }
        Command::Matroid {
            file,
            method,
            threshold,
            repetitions,
            seed,
        } => {
            let doc = load(&file)?;
            let opts = incidence::matroid::MatroidOptions {
                threshold,
                method: method.map(|m| match m {
                    MethodArg::Deterministic => incidence::matroid::Method::Deterministic,
                    MethodArg::Randomized => incidence::matroid::Method::Randomized,
                }),
                repetitions,
                seed,
                ..Default::default()
            };
            let report = incidence::matroid::is_independent_with(&doc.geometry, &opts)?;
            Ok(render::matroid(format, &report))
        }
        Command::Purecond { file, pin, bracket } => {
            let doc = load(&file)?;
            let g = &doc.geometry;
            let opts = incidence::purecond::PureOptions {
                pin: Some(pin_or_first(g, pin)?),
                ..Default::default()
            };
            let pc = incidence::purecond::pure_condition_with(g, &opts)?;
            let bracket = if bracket {
                Some(incidence::bracket::bracketize(&pc.polynomial, g.dimension())?)
            } else {
                None
            };
            Ok(render::purecond(format, g, &pc, bracket.as_ref()))
        }
        Command::Eval { file, normals, pin } => {
            let doc = load(&file)?;
            let g = &doc.geometry;
            let n = resolve_normals(&doc, normals.as_deref())?;
            let opts = incidence::purecond::PureOptions {
                pin: Some(pin_or_first(g, pin)?),
                ..Default::default()
            };
            let pc = incidence::purecond::pure_condition_with(g, &opts)?;
            let value = incidence::purecond::evaluate(&pc, g, &n)?;
            Ok(render::eval(format, &pc, &value, EXIT_VANISHES))
        }
        Command::Realize { file, normals, pin } => {
            let doc = load(&file)?;
            let g = &doc.geometry;
            let n = resolve_normals(&doc, normals.as_deref())?;
            let report = incidence::redraw::redrawing_space(g, &n, &pin_or_first(g, pin)?)?;
            Ok(render::realize(format, g, &report))
        }
        Command::Invariance { file, trials, seed } => {
            let doc = load(&file)?;
            let g = &doc.geometry;
            let exec = incidence::Execution::default();
            let pins = incidence::purecond::pin_invariance_check(g, exec)?;
            let sl = incidence::purecond::sl_invariance_check(g, trials, seed, exec)?;
            Ok(render::invariance(format, &pins, &sl))
        }
        Command::Overconstrained {
            file,
            normals,
            pin,
            minors,
            trials,
            seed,
        } => {
            let doc = load(&file)?;
            let g = &doc.geometry;
            let n = resolve_normals(&doc, normals.as_deref())?;
            let opts = incidence::redraw::OverconstrainedOptions {
                with_minors: minors,
                seed,
                trials,
                exec: incidence::Execution::default(),
            };
            let report = incidence::redraw::overconstrained_report(g, &n, &pin_or_first(g, pin)?, &opts)?;
            Ok(render::overconstrained(format, &report, seed))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
