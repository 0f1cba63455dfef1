//! `tropsing`: JSON front end for the tropical singularity library.

mod plot;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use tropsing_core::intersection::{intersection_samples, vertex_shortcuts};
use tropsing_core::lift::{SingularCertificate, TangencyCertificate};
use tropsing_core::singularity::univariate_singular;
use tropsing_core::{
    classify_planar, complex, is_nontransversal, is_singular_point, nontransversal_locus, parse_point, render_point,
    singular_locus, subdivision, verify_singular_lift, AffineForm, CurvePair, Rational, TropPoly,
};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] tropsing_core::Error),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Read { .. } | CliError::Write { .. } => "io",
            CliError::Usage(_) => "usage",
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "tropsing",
    version,
    about = "Singular points and tangencies of tropical hypersurfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Euler derivative of a polynomial along an affine form.
    Derive {
        poly: PathBuf,
        /// `j1,j2[,j3]:beta`
        #[arg(long, allow_hyphen_values = true)]
        form: String,
    },
    /// Marked regular subdivision of the support.
    Subdivision { poly: PathBuf },
    /// Cells of the hypersurface with their markings.
    Complex { poly: PathBuf },
    /// Singularity test at one point.
    IsSingular {
        poly: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Every face of the hypersurface with its verdict (dimension at most 3).
    SingularLocus { poly: PathBuf },
    /// Circuit classification of a plane curve, or the marking test in one
    /// variable.
    ClassifyPlanar { poly: PathBuf },
    /// Transversality test of two plane curves at a common point.
    Intersect {
        f: PathBuf,
        g: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// All non-transversal intersection points of two plane curves.
    IntersectLocus { f: PathBuf, g: PathBuf },
    /// Checks a lift certificate over Q(t).
    VerifyLift {
        certificate: PathBuf,
        /// Tropical polynomial to compare against instead of Trop(F).
        #[arg(long)]
        poly: Option<PathBuf>,
    },
    /// Draws a plane curve.
    Plot {
        poly: PathBuf,
        /// `x0,y0,x1,y1`
        #[arg(long = "box", allow_hyphen_values = true)]
        bbox: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// `j1,j2:beta`
        #[arg(long, allow_hyphen_values = true)]
        overlay_derivative: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Svg)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Svg,
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(serde_json::from_str(&text).map_err(tropsing_core::Error::from)?)
}

fn read_poly(path: &Path) -> CliResult<TropPoly> {
    Ok(TropPoly::from_json(&read_json(path)?)?)
}

/// Planar curves may have lower-dimensional supports.
fn read_curve(path: &Path) -> CliResult<TropPoly> {
    Ok(TropPoly::from_json_deficient(&read_json(path)?)?)
}

fn parse_form(s: &str) -> CliResult<AffineForm> {
    let bad = || CliError::Usage(format!("invalid affine form {s:?}, expected j1,j2[,j3]:beta"));
    let (j, beta) = s.split_once(':').ok_or_else(bad)?;
    let j = j
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| bad()))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(AffineForm::new(j, beta.trim().parse().map_err(|_| bad())?))
}

fn parse_box(s: &str) -> CliResult<[Rational; 4]> {
    let v = parse_point(s)?;
    let arr: [Rational; 4] = v
        .try_into()
        .map_err(|_| CliError::Usage("--box expects x0,y0,x1,y1".into()))?;
    if arr[0] >= arr[2] || arr[1] >= arr[3] {
        return Err(CliError::Usage("--box must be nonempty".into()));
    }
    Ok(arr)
}

fn check_form_dim(form: &AffineForm, f: &TropPoly) -> CliResult<()> {
    if form.dim() != f.dim() {
        return Err(tropsing_core::Error::DimensionMismatch {
            expected: f.dim(),
            got: form.dim(),
        }
        .into());
    }
    Ok(())
}

enum Output {
    Json(Value),
    Text(String),
}

fn run(cli: Cli) -> CliResult<Output> {
    let out = match cli.command {
        Command::Derive { poly, form } => {
            let f = read_curve(&poly)?;
            let form = parse_form(&form)?;
            check_form_dim(&form, &f)?;
            let d = f.euler_derivative(&form);
            json!({"form": form, "derivative": d.to_json(), "display": d.to_string()})
        }
        Command::Subdivision { poly } => {
            let f = read_poly(&poly)?;
            subdivision(&f)?.to_json(f.support())
        }
        Command::Complex { poly } => {
            let f = read_poly(&poly)?;
            let cells: Vec<Value> = complex(&f)?.iter().map(|c| c.to_json(f.support())).collect();
            json!({"cells": cells})
        }
        Command::IsSingular { poly, point } => {
            let f = read_poly(&poly)?;
            is_singular_point(&f, &parse_point(&point)?)?.to_json()
        }
        Command::SingularLocus { poly } => singular_locus(&read_poly(&poly)?)?.to_json(),
        Command::ClassifyPlanar { poly } => {
            let f = read_poly(&poly)?;
            if f.dim() == 1 {
                json!({"univariate": true, "singular": univariate_singular(&f)?})
            } else {
                classify_planar(&f)?.to_json()
            }
        }
        Command::Intersect { f, g, point } => {
            let pair = CurvePair::new(read_curve(&f)?, read_curve(&g)?)?;
            let q = parse_point(&point)?;
            let mut report = is_nontransversal(&pair, &q)?.to_json();
            if report["verdict"] != "not_intersecting" {
                let shortcut = vertex_shortcuts(&pair, &q)?.map(|s| format!("{s:?}"));
                report["shortcut"] = json!(shortcut);
            }
            report
        }
        Command::IntersectLocus { f, g } => {
            let pair = CurvePair::new(read_curve(&f)?, read_curve(&g)?)?;
            let locus = nontransversal_locus(&pair)?;
            let mut out = locus.to_json();
            let checked: Vec<Value> = intersection_samples(&pair)
                .iter()
                .map(|q| {
                    Ok(json!({
                        "point": render_point(q),
                        "non_transversal": is_nontransversal(&pair, q)?.is_nontransversal(),
                    }))
                })
                .collect::<CliResult<_>>()?;
            out["samples"] = json!(checked);
            out
        }
        Command::VerifyLift { certificate, poly } => {
            let v = read_json(&certificate)?;
            if v.get("G").is_some() {
                TangencyCertificate::from_json(&v)?.verify()?.to_json()
            } else {
                let c = SingularCertificate::from_json(&v)?;
                let f = match poly {
                    Some(p) => read_poly(&p)?,
                    None => c.poly.tropicalize(),
                };
                verify_singular_lift(&c.poly, &c.point, &f, &c.trop_point)?.to_json()
            }
        }
        Command::Plot {
            poly,
            bbox,
            out,
            overlay_derivative,
            format,
        } => {
            let f = read_curve(&poly)?;
            let overlay = overlay_derivative.as_deref().map(parse_form).transpose()?;
            if let Some(form) = &overlay {
                check_form_dim(form, &f)?;
            }
            let bbox = bbox.as_deref().map(parse_box).transpose()?;
            let scene = plot::Scene::build(&f, overlay.as_ref(), bbox)?;
            let rendered = match format {
                Format::Svg => Output::Text(scene.to_svg()),
                Format::Json => Output::Json(scene.to_json()),
            };
            return match out {
                Some(path) => {
                    let text = match &rendered {
                        Output::Text(t) => t.clone(),
                        Output::Json(v) => pretty(v),
                    };
                    fs::write(&path, text).map_err(|source| CliError::Write {
                        path: path.clone(),
                        source,
                    })?;
                    Ok(Output::Json(json!({"written": path.display().to_string()})))
                }
                None => Ok(rendered),
            };
        }
    };
    Ok(Output::Json(out))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::Usage(e.kind().to_string());
            eprint!("{e}");
            print!(
                "{}",
                pretty(&json!({"error": {"kind": err.kind(), "message": err.to_string()}}))
            );
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(Output::Json(v)) => {
            print!("{}", pretty(&v));
            ExitCode::SUCCESS
        }
        Ok(Output::Text(t)) => {
            print!("{t}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            print!(
                "{}",
                pretty(&json!({"error": {"kind": e.kind(), "message": e.to_string()}}))
            );
            ExitCode::from(2)
        }
    }
}
