//! Command-line front end for the tropical coamoeba kernel.
//!
//! One binary, subcommand style; every subcommand reads the polynomial JSON
//! schema (see the repository README) and writes JSON, SVG, or PGM
//! artifacts. Exit codes: 0 success, 2 validation problems (flags, schemas,
//! input files), 3 computation errors (a precondition of the mathematics
//! failed). All diagnostics go to standard error.

use std::fmt::Display;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use coamoeba::coamoeba::{classify_localization, glue_coamoeba, ModelDoc};
use coamoeba::lattice::parse_rational;
use coamoeba::mirror::{deformed_polynomial, mirror_polynomial};
use coamoeba::newton::{
    lower_hull_subdivision, perturb_to_triangulation, LiftedPointSet, SubdivisionDoc,
};
use coamoeba::poly::{PolynomialDocument, PolynomialOverSeries};
use coamoeba::render::{render_svg, RenderData, RenderSpec, RenderTarget};
use coamoeba::sampler::{
    complement_components, ft_family, raster_hausdorff, sample_coamoeba, RasterSummary,
    SampleConfig, TorusRaster,
};
use coamoeba::tropical::{corner_locus_2d, CurveDoc, TropicalPolynomial};

const EXIT_VALIDATION: i32 = 2;
const EXIT_COMPUTATION: i32 = 3;

struct Failure {
    code: i32,
    message: String,
}

fn invalid(err: impl Display) -> Failure {
    Failure {
        code: EXIT_VALIDATION,
        message: err.to_string(),
    }
}

fn computation(err: impl Display) -> Failure {
    Failure {
        code: EXIT_COMPUTATION,
        message: err.to_string(),
    }
}

type Exec = Result<(), Failure>;

#[derive(Parser)]
#[command(
    name = "coam",
    about = "Tropical plane curves, regular subdivisions, and coamoebas",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArg {
    /// Polynomial JSON document.
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
}

#[derive(Args)]
struct GridArgs {
    /// Raster side length.
    #[arg(long, default_value_t = 512)]
    raster: usize,
    /// Modulus sample count.
    #[arg(long, default_value_t = 768)]
    moduli: usize,
    /// Argument sample count.
    #[arg(long = "args", default_value_t = 768)]
    arguments: usize,
    /// Range of log|z| as "lo,hi".
    #[arg(long, default_value = "-6,6", allow_hyphen_values = true)]
    mrange: String,
    /// Root residual acceptance threshold.
    #[arg(long, default_value_t = 1e-8)]
    tolerance: f64,
    /// Deterministic seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (results are independent of this).
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

impl GridArgs {
    fn to_config(&self) -> Result<SampleConfig, Failure> {
        let (lo, hi) = self
            .mrange
            .split_once(',')
            .ok_or_else(|| invalid("--mrange expects \"lo,hi\""))?;
        let lo: f64 = lo.trim().parse().map_err(invalid)?;
        let hi: f64 = hi.trim().parse().map_err(invalid)?;
        Ok(SampleConfig {
            log_modulus_range: (lo, hi),
            modulus_count: self.moduli,
            argument_count: self.arguments,
            raster_size: self.raster,
            root_tolerance: self.tolerance,
            seed: self.seed,
            threads: self.threads,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Regular subdivision of the Newton polytope from coefficient orders.
    Subdivide {
        #[command(flatten)]
        input: InputArg,
        /// Output JSON file (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Perturb heights until the subdivision is a triangulation.
        #[arg(long)]
        perturb: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Tropical curve (corner locus of the tropicalization).
    Curve {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write an SVG rendering.
        #[arg(long)]
        render: Option<PathBuf>,
    },
    /// Mirror polynomial of the deformed family at parameter u.
    Mirror {
        #[command(flatten)]
        input: InputArg,
        /// Deformation parameter in (-1, 0], as a rational "p/q".
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the mirror tropical curve JSON.
        #[arg(long)]
        curve: Option<PathBuf>,
    },
    /// Glued coamoeba model over the dual triangulation.
    Coamoeba {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        render: Option<PathBuf>,
        /// Fundamental domains per axis in renderings (1..=4).
        #[arg(long, default_value_t = 1)]
        domains: u32,
        #[arg(long)]
        perturb: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sample the coamoeba of a complex polynomial into a torus raster.
    Sample {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        grid: GridArgs,
        /// Apply the maximally sparse coefficient family at this t before
        /// sampling (t in (0, 1/e]; 1/e is the identity).
        #[arg(long)]
        t: Option<f64>,
        /// PGM output file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Summary JSON file (stdout when absent).
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Count complement components of the sampled coamoeba.
    Components {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        grid: GridArgs,
        /// Multiply the coefficient of the lexicographically smallest
        /// exponent by e^{i·alpha} before sampling.
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
    },
    /// Hausdorff distance between two PGM rasters on the flat torus.
    Hausdorff {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Render an exported artifact to SVG.
    Render {
        /// Input artifact: subdivision/curve/model JSON or raster PGM.
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// newton | tropical_curve | coamoeba_model | raster
        #[arg(long)]
        target: String,
        /// Output SVG file (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        domains: u32,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 800)]
        height: u32,
    },
    /// Classify the coamoeba localization along one codual line.
    Localize {
        #[command(flatten)]
        input: InputArg,
        /// Index into the model's codual lines.
        #[arg(long)]
        line: usize,
        #[arg(long, default_value_t = 1024)]
        resolution: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        perturb: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(failure) = run(cli.command) {
        eprintln!("error: {}", failure.message);
        std::process::exit(failure.code);
    }
}

fn read_polynomial(path: &Path) -> Result<PolynomialOverSeries, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    let doc: PolynomialDocument = serde_json::from_str(&text).map_err(invalid)?;
    doc.to_series_polynomial().map_err(invalid)
}

fn read_complex_polynomial(path: &Path) -> Result<coamoeba::poly::ComplexPolynomial2, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    let doc: PolynomialDocument = serde_json::from_str(&text).map_err(invalid)?;
    doc.to_complex_polynomial().map_err(invalid)
}

fn write_text(out: &Option<PathBuf>, text: &str) -> Exec {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| invalid(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(invalid)?;
    s.push('\n');
    Ok(s)
}

fn subdivision_of(
    f: &PolynomialOverSeries,
    perturb: bool,
    seed: u64,
) -> Result<coamoeba::newton::RegularSubdivision, Failure> {
    let mut lift = LiftedPointSet::new(f.order_lift()).map_err(computation)?;
    if perturb {
        lift = perturb_to_triangulation(&lift, seed).map_err(computation)?;
    }
    lower_hull_subdivision(&lift).map_err(computation)
}

fn run(command: Command) -> Exec {
    match command {
        Command::Subdivide {
            input,
            out,
            perturb,
            seed,
        } => {
            let f = read_polynomial(&input.input)?;
            let sub = subdivision_of(&f, perturb, seed)?;
            write_text(&out, &to_json(&SubdivisionDoc::from_subdivision(&sub))?)
        }
        Command::Curve { input, out, render } => {
            let f = read_polynomial(&input.input)?;
            let trop = TropicalPolynomial::from_series_polynomial(&f);
            let curve = corner_locus_2d(&trop).map_err(computation)?;
            if let Some(svg_path) = render {
                let spec = RenderSpec::new(RenderTarget::TropicalCurve);
                let svg = render_svg(&RenderData::Curve(&curve), &spec).map_err(computation)?;
                write_text(&Some(svg_path), &svg)?;
            }
            write_text(&out, &to_json(&CurveDoc::from_curve(&curve))?)
        }
        Command::Mirror {
            input,
            u,
            out,
            curve,
        } => {
            let f = read_polynomial(&input.input)?;
            let u = parse_rational(&u).map_err(invalid)?;
            if u > num_rational::BigRational::from_integer(0.into()) {
                return Err(computation(format!(
                    "mirror parameter {} outside (-1, 0]",
                    u
                )));
            }
            let deformed = deformed_polynomial(&f, &u).map_err(computation)?;
            let mirrored = mirror_polynomial(&deformed);
            if let Some(curve_path) = curve {
                let trop = TropicalPolynomial::from_series_polynomial(&mirrored);
                let mirror_curve = corner_locus_2d(&trop).map_err(computation)?;
                write_text(
                    &Some(curve_path),
                    &to_json(&CurveDoc::from_curve(&mirror_curve))?,
                )?;
            }
            write_text(
                &out,
                &to_json(&PolynomialDocument::from_series_polynomial(&mirrored))?,
            )
        }
        Command::Coamoeba {
            input,
            out,
            render,
            domains,
            perturb,
            seed,
        } => {
            let f = read_polynomial(&input.input)?;
            let sub = subdivision_of(&f, perturb, seed)?;
            let model = glue_coamoeba(&f, &sub).map_err(computation)?;
            if let Some(svg_path) = render {
                let mut spec = RenderSpec::new(RenderTarget::CoamoebaModel);
                spec.domains = domains;
                let svg = render_svg(&RenderData::Model(&model), &spec).map_err(computation)?;
                write_text(&Some(svg_path), &svg)?;
            }
            write_text(&out, &to_json(&ModelDoc::from_model(&model))?)
        }
        Command::Sample {
            input,
            grid,
            t,
            out,
            summary,
        } => {
            let mut f = read_complex_polynomial(&input.input)?;
            if let Some(t) = t {
                f = ft_family(&f, t).map_err(computation)?;
            }
            let cfg = grid.to_config()?;
            let raster = sample_coamoeba(&f, &cfg).map_err(computation)?;
            if let Some(pgm) = &out {
                std::fs::write(pgm, raster.to_pgm())
                    .map_err(|e| invalid(format!("{}: {e}", pgm.display())))?;
            }
            let info = RasterSummary {
                size: raster.size(),
                fraction: raster.fraction(),
                components: complement_components(&raster),
            };
            write_text(&summary, &to_json(&info)?)
        }
        Command::Components { input, grid, alpha } => {
            let mut f = read_complex_polynomial(&input.input)?;
            if let Some(alpha) = alpha {
                let first = f.support().into_iter().next().expect("nonempty");
                let rotation = Complex64::from_polar(1.0, alpha);
                f = f.map_coefficients(|p, c| if *p == first { c * rotation } else { c });
            }
            let cfg = grid.to_config()?;
            let raster = sample_coamoeba(&f, &cfg).map_err(computation)?;
            println!("{}", complement_components(&raster));
            Ok(())
        }
        Command::Hausdorff { a, b } => {
            let read = |p: &PathBuf| -> Result<TorusRaster, Failure> {
                let bytes =
                    std::fs::read(p).map_err(|e| invalid(format!("{}: {e}", p.display())))?;
                TorusRaster::from_pgm(&bytes).map_err(invalid)
            };
            let ra = read(&a)?;
            let rb = read(&b)?;
            let d = raster_hausdorff(&ra, &rb).map_err(computation)?;
            println!("{d}");
            Ok(())
        }
        Command::Render {
            input,
            target,
            out,
            domains,
            width,
            height,
        } => {
            let target = RenderTarget::parse(&target)
                .ok_or_else(|| invalid(format!("unknown render target {target:?}")))?;
            let mut spec = RenderSpec::new(target);
            spec.domains = domains;
            spec.width = width;
            spec.height = height;
            let svg = match target {
                RenderTarget::Newton => {
                    let text = std::fs::read_to_string(&input)
                        .map_err(|e| invalid(format!("{}: {e}", input.display())))?;
                    let doc: SubdivisionDoc = serde_json::from_str(&text).map_err(invalid)?;
                    let sub = doc.to_subdivision().map_err(invalid)?;
                    let polytope = sub.polytope();
                    render_svg(&RenderData::Newton(&polytope, Some(&sub)), &spec)
                        .map_err(computation)?
                }
                RenderTarget::TropicalCurve => {
                    let text = std::fs::read_to_string(&input)
                        .map_err(|e| invalid(format!("{}: {e}", input.display())))?;
                    let doc: CurveDoc = serde_json::from_str(&text).map_err(invalid)?;
                    let curve = doc.to_curve().map_err(invalid)?;
                    render_svg(&RenderData::Curve(&curve), &spec).map_err(computation)?
                }
                RenderTarget::CoamoebaModel => {
                    let text = std::fs::read_to_string(&input)
                        .map_err(|e| invalid(format!("{}: {e}", input.display())))?;
                    let doc: ModelDoc = serde_json::from_str(&text).map_err(invalid)?;
                    let model = doc.to_model();
                    render_svg(&RenderData::Model(&model), &spec).map_err(computation)?
                }
                RenderTarget::Raster => {
                    let bytes = std::fs::read(&input)
                        .map_err(|e| invalid(format!("{}: {e}", input.display())))?;
                    let raster = TorusRaster::from_pgm(&bytes).map_err(invalid)?;
                    render_svg(&RenderData::Raster(&raster), &spec).map_err(computation)?
                }
            };
            write_text(&out, &svg)
        }
        Command::Localize {
            input,
            line,
            resolution,
            out,
            perturb,
            seed,
        } => {
            let f = read_polynomial(&input.input)?;
            let sub = subdivision_of(&f, perturb, seed)?;
            let model = glue_coamoeba(&f, &sub).map_err(computation)?;
            if line >= model.codual_lines.len() {
                return Err(invalid(format!(
                    "line index {line} out of range (model has {})",
                    model.codual_lines.len()
                )));
            }
            let components =
                classify_localization(&model, line, resolution).map_err(computation)?;
            write_text(&out, &to_json(&components)?)
        }
    }
}
