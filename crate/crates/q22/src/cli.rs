//! Command-line surface.
//!
//! Subcommands: `classify-hyperplane`, `classify-quadric`, `line-sphere`,
//! `tangency`, `levi`, `sections`, `section-levi`, `figure`. Payloads are
//! JSON with complex numbers as `[re, im]`; results are deterministic for a
//! fixed seed. Exit codes: 0 success, 2 validation error, 3 mathematical
//! precondition failure.

use crate::branches::{section_levi_type, sections_over_region};
use crate::chart::{levi_report, to_chart, Chart};
use crate::figure::{emit_figure_csv, emit_figure_svg};
use crate::hyperplane::{section_kind, SectionKind};
use crate::lines::{line_from_unitary, line_sphere, tangency_relation, TangencyRelation};
use crate::projective::HyperplaneDual;
use crate::quadric::{classify_family, family_quadric, FamilyParams};
use crate::symmetry::classify_hyperplane;
use crate::tolerance::Tolerance;
use crate::wire;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("validation: {0}")]
    Validation(String),
    #[error("{0}")]
    Math(String),
    #[error("io: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Math(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

fn math<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Math(e.to_string())
}

fn validation<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Validation(e.to_string())
}

/// Geometry queries on Q^{2,2} ⊂ CP³.
#[derive(Debug, Parser)]
#[command(name = "q22", version, about)]
pub struct CommandRequest {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for every internal sampler.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the result to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Override the eq_abs tolerance (also: env Q22_TOL).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChartArg {
    U0,
    U3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureFormat {
    Csv,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a hyperplane by the sign of Δ and emit the orbit witness.
    ClassifyHyperplane {
        /// Covector as a JSON 4-array of [re, im] pairs.
        #[arg(long)]
        v: String,
    },
    /// Classify the family quadric Q_{a,r}: discriminant circle, inversive
    /// distance, relative position, branch points.
    ClassifyQuadric {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        r: f64,
    },
    /// Sphere (or fibre basepoint) a line projects to.
    LineSphere {
        /// Unitary 2×2 graph matrix as nested JSON.
        #[arg(long)]
        matrix: String,
    },
    /// Oriented tangency type of the spheres of two lines.
    Tangency {
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
    },
    /// Levi matrix, determinant, and signature at a point of Q^{2,2}.
    Levi {
        /// Point as a JSON 4-array of [re, im] pairs.
        #[arg(long)]
        point: String,
        #[arg(long, value_enum, default_value = "u0")]
        chart: ChartArg,
    },
    /// Global two-sheeted section run over Σ for a disjoint family quadric.
    Sections {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
        #[arg(long, default_value_t = 100)]
        loops: usize,
    },
    /// Levi type of the induced CR structure at a section point.
    SectionLevi {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        point: String,
    },
    /// Figure data (unit circle, discriminant locus, branch points).
    Figure {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        r: f64,
        #[arg(long, value_enum, default_value = "csv")]
        format: FigureFormat,
    },
}

fn resolve_tolerance(flag: Option<f64>) -> Result<Tolerance, CliError> {
    let mut eq_abs = None;
    if let Ok(env) = std::env::var("Q22_TOL") {
        let parsed: f64 = env
            .parse()
            .map_err(|_| CliError::Validation(format!("Q22_TOL is not a number: {env}")))?;
        eq_abs = Some(parsed);
    }
    if let Some(t) = flag {
        eq_abs = Some(t);
    }
    match eq_abs {
        None => Ok(Tolerance::default()),
        Some(t) if t > 0.0 => Ok(Tolerance::with_eq_abs(t)),
        Some(t) => Err(CliError::Validation(format!(
            "tolerance must be positive, got {t}"
        ))),
    }
}

fn parse_json(s: &str) -> Result<Value, CliError> {
    serde_json::from_str(s).map_err(validation)
}

fn family(a: f64, r: f64) -> Result<FamilyParams, CliError> {
    FamilyParams::new(a, r).map_err(math)
}

/// Dispatch a parsed request to the library and serialize the result.
pub fn dispatch(req: &CommandRequest) -> Result<String, CliError> {
    let tol = resolve_tolerance(req.tol)?;
    let payload = match &req.command {
        Command::ClassifyHyperplane { v } => {
            let vec = wire::vec4_from(&parse_json(v)?).map_err(validation)?;
            let plane = HyperplaneDual::new(vec).map_err(math)?;
            let (class, witness) = classify_hyperplane(&plane, &tol);
            let delta = crate::symmetry::hyperplane_delta(&plane);
            let mut obj = json!({
                "class": wire::orbit_class(&class),
                "delta": delta,
                "witness": wire::witness(&witness),
            });
            if let SectionKind::TangentLeviFlat { singular_point } = section_kind(&plane, &tol) {
                obj["singular_point"] = wire::proj_point(&singular_point);
            }
            obj.to_string()
        }
        Command::ClassifyQuadric { a, r } => {
            let fp = family(*a, *r)?;
            let (circle, pos) = classify_family(&fp, &tol);
            let mut obj = wire::rel_position(&pos);
            let circle_json = wire::discriminant_circle(&circle);
            for (k, v) in circle_json.as_object().unwrap() {
                obj[k] = v.clone();
            }
            obj.to_string()
        }
        Command::LineSphere { matrix } => {
            let m = wire::mat2_from(&parse_json(matrix)?).map_err(validation)?;
            let line = line_from_unitary(&m, &tol).map_err(math)?;
            let s = line_sphere(&line, &tol).map_err(math)?;
            wire::sphere_or_point(&s).to_string()
        }
        Command::Tangency { a, b } => {
            let ma = wire::mat2_from(&parse_json(a)?).map_err(validation)?;
            let mb = wire::mat2_from(&parse_json(b)?).map_err(validation)?;
            let la = line_from_unitary(&ma, &tol).map_err(math)?;
            let lb = line_from_unitary(&mb, &tol).map_err(math)?;
            let rel = tangency_relation(&la, &lb, &tol).map_err(math)?;
            json!({
                "relation": match rel {
                    TangencyRelation::Compatible => "compatible",
                    TangencyRelation::Opposite => "opposite",
                    TangencyRelation::Both => "both",
                    TangencyRelation::None => "none",
                }
            })
            .to_string()
        }
        Command::Levi { point, chart } => {
            let p = wire::proj_point_from(&parse_json(point)?, &tol).map_err(validation)?;
            let c = match chart {
                ChartArg::U0 => Chart::U0,
                ChartArg::U3 => Chart::U3,
            };
            let cp = to_chart(&p, c, &tol).map_err(math)?;
            let rep = levi_report(&cp, &tol).map_err(math)?;
            wire::levi_report(&rep).to_string()
        }
        Command::Sections { a, r, grid, loops } => {
            let fp = family(*a, *r)?;
            let report =
                sections_over_region(&fp, *grid, *loops, req.seed, &tol).map_err(math)?;
            wire::section_report(&report).to_string()
        }
        Command::SectionLevi { a, r, point } => {
            let fp = family(*a, *r)?;
            let q = family_quadric(&fp);
            let p = wire::proj_point_from(&parse_json(point)?, &tol).map_err(validation)?;
            let lt = section_levi_type(&q, &p, &tol).map_err(math)?;
            wire::section_levi(&lt).to_string()
        }
        Command::Figure { a, r, format } => {
            let fp = family(*a, *r)?;
            match format {
                FigureFormat::Csv => emit_figure_csv(&fp, &tol),
                FigureFormat::Svg => emit_figure_svg(&fp, &tol),
            }
        }
    };
    Ok(payload)
}

/// Entry point for the binary: parse, dispatch, write, map errors to exit
/// codes.
pub fn run() -> i32 {
    let req = match CommandRequest::try_parse() {
        Ok(req) => req,
        Err(e) => {
            // clap handles --help/--version with success exits
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&req) {
        Ok(payload) => {
            let text = if payload.ends_with('\n') {
                payload
            } else {
                format!("{payload}\n")
            };
            if let Some(path) = &req.out {
                if let Err(e) = std::fs::write(path, text) {
                    eprintln!("io error: {e}");
                    return 1;
                }
            } else {
                print!("{text}");
            }
            0
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
