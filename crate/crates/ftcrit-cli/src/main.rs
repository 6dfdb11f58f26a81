//! `ftcrit` — fault-tree analysis from the command line.
//!
//! Every subcommand is a thin wrapper over the library: it parses an FTDL
//! file, runs one analysis, and prints the library values unchanged (CSV or
//! key:value text, or a JSON mirror with `--json`). Analysis failures exit 1
//! with a single machine-parsable `error: KIND: detail` line on stderr;
//! usage errors exit 2.

mod render;

use std::fmt;
use std::fs;
use std::num::NonZeroU64;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ftcrit::casestudy::CASE_STUDY_FTDL;
use ftcrit::coherence::coherence_report;
use ftcrit::cutset::{minimize, to_cutsets};
use ftcrit::importance::{importance_report, relative_compare, Measure};
use ftcrit::montecarlo::{estimate_criticality, estimate_unreliability, McConfig};
use ftcrit::{parse_ftdl, system_unreliability, FaultTree, TimePoint};
use render::{fmt_value, json_number};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "ftcrit",
    version,
    about = "Exact fault-tree analysis: unreliability, minimal cut sets, coherence, and importance measures"
)]
struct Cli {
    /// Emit a JSON object with the same numeric content instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a fault-tree file; exits 0 when valid.
    Validate { file: PathBuf },
    /// Minimal cut sets, one per line, comma-separated ids, canonical order.
    Mcs { file: PathBuf },
    /// System unreliability at one time point.
    Prob {
        file: PathBuf,
        /// Time in hours.
        #[arg(long)]
        t: f64,
    },
    /// Unreliability time series as CSV over [0, t-max].
    Curve {
        file: PathBuf,
        /// Largest time on the grid, in hours.
        #[arg(long = "t-max")]
        t_max: f64,
        /// Number of grid points (including 0 and t-max).
        #[arg(long)]
        points: NonZeroU64,
    },
    /// Coherence report; exit code 0 iff the tree is coherent.
    Coherence { file: PathBuf },
    /// CSV importance report (Birnbaum, Fussell-Vesely, RRW, RAW) per component.
    Importance {
        file: PathBuf,
        /// Time in hours.
        #[arg(long)]
        t: f64,
        /// Measure used for the rank column.
        #[arg(long, value_enum, default_value_t)]
        measure: MeasureArg,
        /// Use the source-literal forcings for FV/RRW/RAW instead of the
        /// standard ones.
        #[arg(long)]
        paper_literal: bool,
    },
    /// Components in descending order of one importance measure.
    Rank {
        file: PathBuf,
        /// Time in hours.
        #[arg(long)]
        t: f64,
        /// Measure to rank by.
        #[arg(long, value_enum)]
        measure: MeasureArg,
    },
    /// Relative-importance comparison of two components.
    Compare {
        file: PathBuf,
        /// Time in hours.
        #[arg(long)]
        t: f64,
        /// First component id.
        #[arg(long)]
        i: String,
        /// Second component id.
        #[arg(long)]
        j: String,
    },
    /// Monte Carlo estimate of unreliability (or of one component's
    /// criticality with --component).
    Simulate {
        file: PathBuf,
        /// Time in hours.
        #[arg(long)]
        t: f64,
        #[arg(long)]
        samples: NonZeroU64,
        #[arg(long)]
        seed: u64,
        /// Estimate this component's criticality instead of system
        /// unreliability.
        #[arg(long)]
        component: Option<String>,
    },
    /// Write the bundled case-study model and its full analysis outputs.
    Casestudy { outdir: PathBuf },
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum MeasureArg {
    #[default]
    Birnbaum,
    Fv,
    Rrw,
    Raw,
}

impl From<MeasureArg> for Measure {
    fn from(arg: MeasureArg) -> Measure {
        match arg {
            MeasureArg::Birnbaum => Measure::Birnbaum,
            MeasureArg::Fv => Measure::FussellVesely,
            MeasureArg::Rrw => Measure::Rrw,
            MeasureArg::Raw => Measure::Raw,
        }
    }
}

enum CliError {
    Lib(ftcrit::Error),
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Lib(e) => e.kind(),
            CliError::Io { .. } => "Io",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
        }
    }
}

impl From<ftcrit::Error> for CliError {
    fn from(e: ftcrit::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<ftcrit::ParseError> for CliError {
    fn from(e: ftcrit::ParseError) -> Self {
        CliError::Lib(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}: {}", e.kind(), e);
            ExitCode::from(1)
        }
    }
}

fn load_tree(path: &Path) -> Result<FaultTree, CliError> {
    let source = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(parse_ftdl(&source)?)
}

fn time_point(hours: f64) -> Result<TimePoint, CliError> {
    Ok(TimePoint::new(hours)?)
}

fn emit(json_mode: bool, json: Value, text: String) {
    if json_mode {
        println!("{json}");
    } else {
        print!("{text}");
    }
}

fn curve_points(tree: &FaultTree, t_max: f64, points: u64) -> Result<Vec<(f64, f64)>, CliError> {
    time_point(t_max)?;
    let mut rows = Vec::with_capacity(points as usize);
    for k in 0..points {
        let hours = if points == 1 {
            t_max
        } else {
            t_max * (k as f64 / (points - 1) as f64)
        };
        let f = system_unreliability(tree, time_point(hours)?)?;
        rows.push((hours, f));
    }
    Ok(rows)
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    match &cli.command {
        Command::Validate { file } => {
            let tree = load_tree(file)?;
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "valid": true,
                        "events": tree.event_count(),
                        "repeated_events": tree.repeated_events(),
                    })
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Mcs { file } => {
            let tree = load_tree(file)?;
            let form = minimize(&to_cutsets(&tree)?);
            emit(
                cli.json,
                render::mcs_json(&form, &tree),
                render::mcs_text(&form, &tree),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Prob { file, t } => {
            let tree = load_tree(file)?;
            let tp = time_point(*t)?;
            let f = system_unreliability(&tree, tp)?;
            emit(
                cli.json,
                json!({ "t": json_number(tp.hours()), "unreliability": json_number(f) }),
                format!("{}\n", fmt_value(f)),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Curve {
            file,
            t_max,
            points,
        } => {
            let tree = load_tree(file)?;
            let rows = curve_points(&tree, *t_max, points.get())?;
            emit(
                cli.json,
                render::curve_json(&rows),
                render::curve_text(&rows),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Coherence { file } => {
            let tree = load_tree(file)?;
            let report = coherence_report(&tree)?;
            emit(
                cli.json,
                render::coherence_json(&report, &tree),
                render::coherence_text(&report, &tree),
            );
            Ok(if report.is_coherent {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Importance {
            file,
            t,
            measure,
            paper_literal,
        } => {
            let tree = load_tree(file)?;
            let report = importance_report(&tree, time_point(*t)?, *paper_literal)?;
            let measure = Measure::from(*measure);
            emit(
                cli.json,
                render::importance_json(&report, measure),
                render::importance_text(&report, measure),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Rank { file, t, measure } => {
            let tree = load_tree(file)?;
            let report = importance_report(&tree, time_point(*t)?, false)?;
            let measure = Measure::from(*measure);
            emit(
                cli.json,
                render::importance_json(&report, measure),
                render::rank_text(&report, measure),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare { file, t, i, j } => {
            let tree = load_tree(file)?;
            let cmp = relative_compare(&tree, time_point(*t)?, i, j)?;
            emit(
                cli.json,
                render::compare_json(&cmp),
                render::compare_text(&cmp),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate {
            file,
            t,
            samples,
            seed,
            component,
        } => {
            let tree = load_tree(file)?;
            let cfg = McConfig {
                samples: *samples,
                seed: *seed,
                t: time_point(*t)?,
            };
            let est = match component {
                Some(id) => estimate_criticality(&tree, &cfg, id)?,
                None => estimate_unreliability(&tree, &cfg)?,
            };
            emit(
                cli.json,
                render::estimate_json(&est),
                render::estimate_text(&est),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Casestudy { outdir } => {
            let files = write_case_study(outdir)?;
            emit(
                cli.json,
                json!({ "outdir": outdir.display().to_string(), "files": files }),
                files
                    .iter()
                    .map(|f| format!("{}\n", Path::new(&outdir).join(f).display()))
                    .collect(),
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

// The full analysis suite over the bundled model: the model file itself,
// cut sets, coherence, the unreliability curve (t up to 2000 h), and the
// importance outputs at t = 5 h.
fn write_case_study(outdir: &Path) -> Result<Vec<String>, CliError> {
    let io_err = |source: std::io::Error, path: &Path| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    fs::create_dir_all(outdir).map_err(|e| io_err(e, outdir))?;
    let tree = ftcrit::casestudy::case_study_tree();
    let t5 = time_point(5.0)?;

    let form = minimize(&to_cutsets(&tree)?);
    let coherence = coherence_report(&tree)?;
    let report = importance_report(&tree, t5, false)?;
    let curve = curve_points(&tree, 2000.0, 201)?;
    let compare = relative_compare(&tree, t5, "x9", "x1")?;
    let estimate = estimate_unreliability(
        &tree,
        &McConfig {
            samples: NonZeroU64::new(100_000).expect("nonzero"),
            seed: 42,
            t: t5,
        },
    )?;
    let f5 = system_unreliability(&tree, t5)?;

    let outputs: Vec<(&str, String)> = vec![
        ("casestudy.ftdl", CASE_STUDY_FTDL.to_string()),
        ("mcs.csv", render::mcs_text(&form, &tree)),
        ("coherence.txt", render::coherence_text(&coherence, &tree)),
        (
            "unreliability_t5.csv",
            format!(
                "t,unreliability\n{},{}\n",
                render::fmt_time(5.0),
                fmt_value(f5)
            ),
        ),
        ("curve.csv", render::curve_text(&curve)),
        (
            "importance_t5.csv",
            render::importance_text(&report, Measure::Birnbaum),
        ),
        (
            "rank_birnbaum_t5.csv",
            render::rank_text(&report, Measure::Birnbaum),
        ),
        ("compare_x9_x1_t5.txt", render::compare_text(&compare)),
        ("simulate_t5.csv", render::estimate_text(&estimate)),
    ];
    let mut written = Vec::with_capacity(outputs.len());
    for (name, content) in outputs {
        let path = outdir.join(name);
        fs::write(&path, content).map_err(|e| io_err(e, &path))?;
        written.push(name.to_string());
    }
    Ok(written)
}
