//! Command-line front end.
//!
//! Exit codes: `0` the claim was verified, `1` it was refuted (the written
//! certificate carries the evidence), `2` the input or invocation was bad.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::constructions::{
    construct_cross_polytope, construct_half_cube, construct_pn, DelaunayInstance,
};
use crate::delaunay::verify_delaunay_with_limit;
use crate::error::{Error, Result};
use crate::extremality::certify_extreme_with_limit;
use crate::io;
use crate::lattice::DEFAULT_MAX_NODES;
use crate::report::{render_text, run_pn_report};
use crate::symmetry::automorphisms;

/// Environment variable capping enumeration tree nodes.
pub const MAX_ENUM_VAR: &str = "DELFORGE_MAX_ENUM";

pub const EXIT_VERIFIED: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "delforge",
    version,
    about = "Exact certificates for lattice Delaunay polytopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build an instance and write it as JSON.
    Construct(InputArgs),
    /// Certify that the circumscribed sphere is empty.
    VerifyDelaunay(InputArgs),
    /// Compute the space of quadrics through the vertices.
    CertifyExtreme(InputArgs),
    /// Compute the isometry group of the vertex set.
    Symmetry(InputArgs),
    /// Run every check for P_n and print a consolidated report.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Pn,
    HalfCube,
    CrossPolytope,
}

#[derive(Debug, Args)]
struct InputArgs {
    #[arg(long, value_enum)]
    family: Option<Family>,
    #[arg(long)]
    dim: Option<usize>,
    /// Instance JSON file.
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long)]
    quiet: bool,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long)]
    quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Construct,
    VerifyDelaunay,
    CertifyExtreme,
    Symmetry,
    Report,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputSource {
    Family { family: Family, dim: usize },
    File(PathBuf),
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub source: InputSource,
    pub out: Option<PathBuf>,
    pub quiet: bool,
    pub max_nodes: u64,
}

fn source_of(args: &InputArgs) -> Result<InputSource> {
    match (&args.family, args.dim, &args.input) {
        (Some(family), Some(dim), None) => Ok(InputSource::Family {
            family: *family,
            dim,
        }),
        (None, None, Some(path)) => Ok(InputSource::File(path.clone())),
        _ => Err(Error::Parse(
            "give exactly one input: --family with --dim, or --in".into(),
        )),
    }
}

fn max_nodes_from(value: Option<String>) -> Result<u64> {
    match value {
        None => Ok(DEFAULT_MAX_NODES),
        Some(v) => v
            .trim()
            .parse::<u64>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| {
                Error::Parse(format!(
                    "{MAX_ENUM_VAR} must be a positive integer, got {v:?}"
                ))
            }),
    }
}

impl RunConfig {
    fn from_cli(cli: Cli, max_nodes: u64) -> Result<Self> {
        let (command, args) = match cli.command {
            Command::Report(r) => {
                return Ok(Self {
                    command: CommandKind::Report,
                    source: InputSource::Family {
                        family: Family::Pn,
                        dim: r.dim,
                    },
                    out: r.out,
                    quiet: r.quiet,
                    max_nodes,
                })
            }
            Command::Construct(a) => (CommandKind::Construct, a),
            Command::VerifyDelaunay(a) => (CommandKind::VerifyDelaunay, a),
            Command::CertifyExtreme(a) => (CommandKind::CertifyExtreme, a),
            Command::Symmetry(a) => (CommandKind::Symmetry, a),
        };
        Ok(Self {
            command,
            source: source_of(&args)?,
            out: args.out,
            quiet: args.quiet,
            max_nodes,
        })
    }
}

pub fn build_instance(family: Family, dim: usize) -> Result<DelaunayInstance> {
    match family {
        Family::Pn => construct_pn(dim),
        Family::HalfCube => construct_half_cube(dim),
        Family::CrossPolytope => construct_cross_polytope(dim),
    }
}

fn load(source: &InputSource) -> Result<DelaunayInstance> {
    match source {
        InputSource::Family { family, dim } => build_instance(*family, *dim),
        InputSource::File(path) => io::parse_instance(&fs::read_to_string(path)?),
    }
}

/// Writes `json` to `out` (or stdout) and the summary to whichever stream
/// the JSON is not using.
fn emit(out: Option<&Path>, quiet: bool, json: &str, summary: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, json)?;
            if !quiet {
                print!("{summary}");
            }
        }
        None => {
            print!("{json}");
            if !quiet {
                eprint!("{summary}");
            }
        }
    }
    Ok(())
}

fn execute(cfg: &RunConfig) -> Result<i32> {
    if cfg.command == CommandKind::Report {
        let InputSource::Family { dim, .. } = cfg.source else {
            unreachable!("report always takes a dimension");
        };
        let report = run_pn_report(dim, cfg.max_nodes);
        emit(
            cfg.out.as_deref(),
            cfg.quiet,
            &io::to_json(&report),
            &render_text(&report),
        )?;
        return Ok(match (&report.error, report.all_passed) {
            (Some(_), _) => EXIT_ERROR,
            (None, true) => EXIT_VERIFIED,
            (None, false) => EXIT_REFUTED,
        });
    }

    let inst = load(&cfg.source)?;
    let out = cfg.out.as_deref();
    match cfg.command {
        CommandKind::Construct => {
            let summary = format!("{}: {} vertices\n", inst.label, inst.vertices.len());
            emit(out, cfg.quiet, &io::instance_json(&inst), &summary)?;
            Ok(EXIT_VERIFIED)
        }
        CommandKind::VerifyDelaunay => {
            let cert = verify_delaunay_with_limit(&inst, cfg.max_nodes)?;
            let mut summary = format!(
                "{}: {} ({} lattice points on the sphere, r^2 = {})\n",
                inst.label,
                if cert.is_verified() {
                    "Delaunay"
                } else {
                    "NOT Delaunay"
                },
                cert.on_sphere_count,
                cert.radius_sq
            );
            if let Some(w) = &cert.witness {
                let coords: Vec<String> = w.point.iter().map(ToString::to_string).collect();
                summary.push_str(&format!(
                    "  witness ({}): {}\n",
                    coords.join(", "),
                    w.kind.as_str()
                ));
            }
            emit(
                out,
                cfg.quiet,
                &io::sphere_certificate_json(&cert),
                &summary,
            )?;
            Ok(if cert.is_verified() {
                EXIT_VERIFIED
            } else {
                EXIT_REFUTED
            })
        }
        CommandKind::CertifyExtreme => {
            let cert = certify_extreme_with_limit(&inst, cfg.max_nodes)?;
            let summary = format!(
                "{}: kernel dimension {}, {}\n",
                inst.label,
                cert.kernel_dim,
                if cert.is_extreme {
                    "extreme"
                } else {
                    "NOT extreme"
                }
            );
            emit(
                out,
                cfg.quiet,
                &io::extremality_certificate_json(&cert),
                &summary,
            )?;
            Ok(if cert.is_extreme {
                EXIT_VERIFIED
            } else {
                EXIT_REFUTED
            })
        }
        CommandKind::Symmetry => {
            let report = automorphisms(&inst);
            let summary = format!(
                "{}: isometry group of order {}, {} vertex orbit(s)\n",
                inst.label, report.group_order, report.orbit_count
            );
            emit(out, cfg.quiet, &io::symmetry_report_json(&report), &summary)?;
            Ok(EXIT_VERIFIED)
        }
        CommandKind::Report => unreachable!(),
    }
}

/// Parses arguments, runs one command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_ERROR
            } else {
                EXIT_VERIFIED
            };
        }
    };
    let outcome = max_nodes_from(std::env::var(MAX_ENUM_VAR).ok())
        .and_then(|max_nodes| RunConfig::from_cli(cli, max_nodes))
        .and_then(|cfg| execute(&cfg));
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
