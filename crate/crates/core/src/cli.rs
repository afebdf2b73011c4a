//! Command-line front end. [`run`] is the whole program; the binary only
//! forwards its arguments and prints the [`Outcome`].

use std::fs;
use std::path::{Path, PathBuf};

use clap::{error::ErrorKind, Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ktheory::{higher_trace_range_generators, trace_range_generators, GeneratorTag, SubsetGenerator};
use crate::landau::{
    l2_index, max_landau_level, spectrum_report, vanishing_h1, von_neumann_dimension, BundleData, SurfaceField,
};
use crate::nct::{self, LatticeVector, NctElement, PhaseScalar, PhaseSum};
use crate::oracle::{self, GridParams, NumericOptions};
use crate::orbifold::{chern_report, smooth_chern_number, OrbifoldCoverData};
use crate::scalar::{format_fraction, Rational, Scalar};
use crate::skew::{json_entries_are_exact, SkewMatrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ORACLE_MISMATCH: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "hyperlandau",
    version,
    about = "Landau levels, indices and Chern numbers on hyperbolic surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Use exact rational arithmetic wherever it is available.
    #[arg(long, global = true)]
    pub exact: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Landau levels below the certified cutoff.
    Spectrum(SurfaceArgs),
    /// L² Riemann–Roch index of a bundle twisted by the field.
    Index(IndexArgs),
    /// Generators of the range of the trace on K_0.
    TraceRange(ThetaFileArgs),
    /// Generators of the range of the higher trace on K_0.
    HigherTraceRange(HigherArgs),
    /// Chern number of the eigenspace bundles (smooth or orbifold).
    Chern(ChernArgs),
    /// Operations in the twisted group algebra.
    Nct(NctArgs),
    /// Cross-check the levels against the radial eigensolver.
    VerifyLandau(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    #[arg(long)]
    pub genus: u32,
    /// Field strength, as "a/b" or a decimal.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: String,
}

#[derive(Debug, Args)]
pub struct IndexArgs {
    #[arg(long)]
    pub genus: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: String,
    /// Bundle degree; defaults to the degree of K^{-q} when --q is given, else 0.
    #[arg(long, allow_hyphen_values = true)]
    pub deg: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub rank: u32,
    /// Use the bundle K^{-q} and report the matching level data.
    #[arg(long)]
    pub q: Option<u32>,
}

#[derive(Debug, Args)]
pub struct ThetaFileArgs {
    #[arg(long)]
    pub theta_file: PathBuf,
}

#[derive(Debug, Args)]
pub struct HigherArgs {
    #[arg(long)]
    pub theta_file: PathBuf,
    /// Half rank g; defaults to p/2.
    #[arg(long)]
    pub genus: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ChernArgs {
    /// Genus of a smooth surface; mutually exclusive with the cover data.
    #[arg(long, conflicts_with_all = ["g_cover", "group_order", "orbits"])]
    pub genus: Option<u32>,
    #[arg(long)]
    pub g_cover: Option<u32>,
    #[arg(long)]
    pub group_order: Option<u32>,
    /// Isotropy order of each ramification orbit, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub orbits: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NctOp {
    Sigma,
    Product,
    Adjoint,
    Trace,
    Derivation,
    Cocycle,
}

#[derive(Debug, Args)]
pub struct NctArgs {
    #[arg(long)]
    pub theta_file: PathBuf,
    #[arg(long, value_enum)]
    pub op: NctOp,
    /// Element documents, in argument order.
    #[arg(long = "element")]
    pub elements: Vec<PathBuf>,
    /// One-based derivation index.
    #[arg(long)]
    pub index: Option<usize>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub gamma: Vec<i64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub gamma_prime: Vec<i64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Field strength at unit curvature.
    #[arg(long, conflicts_with_all = ["genus", "theta"])]
    pub beta: Option<f64>,
    /// Genus, rescaled together with --theta.
    #[arg(long, requires = "theta")]
    pub genus: Option<u32>,
    #[arg(long, requires = "genus")]
    pub theta: Option<String>,
    /// Highest level to verify; defaults to the largest discrete level below 4.
    #[arg(long)]
    pub q_max: Option<u32>,
    #[arg(long, allow_hyphen_values = true, default_value_t = oracle::radial::DEFAULT_ELL_RANGE.0)]
    pub ell_min: i64,
    #[arg(long, allow_hyphen_values = true, default_value_t = oracle::radial::DEFAULT_ELL_RANGE.1)]
    pub ell_max: i64,
    #[arg(long, default_value_t = oracle::radial::DEFAULT_GRID_POINTS)]
    pub grid: usize,
    #[arg(long, default_value_t = oracle::radial::DEFAULT_R_MAX)]
    pub rmax: f64,
    #[arg(long, default_value_t = oracle::radial::DEFAULT_TOLERANCE)]
    pub tolerance: f64,
}

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(text),
                ErrorKind::InvalidSubcommand
                | ErrorKind::MissingSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => Outcome::fail(EXIT_USAGE, text),
                _ => Outcome::fail(EXIT_VALIDATION, text),
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Spectrum(a) => spectrum(a, cli),
        Command::Index(a) => index(a, cli),
        Command::TraceRange(a) => trace_range(a, cli),
        Command::HigherTraceRange(a) => higher_trace_range(a, cli),
        Command::Chern(a) => chern(a, cli.format),
        Command::Nct(a) => nct_op(a, cli),
        Command::VerifyLandau(a) => return verify_landau(a, cli.format),
    };
    match result {
        Ok(out) => Outcome::ok(out),
        Err(e) => Outcome::fail(EXIT_VALIDATION, format!("error: {e}\n")),
    }
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

fn spectrum(a: &SurfaceArgs, cli: &Cli) -> Result<String> {
    fn go<S: Scalar>(a: &SurfaceArgs, format: Format) -> Result<String> {
        let s = SurfaceField::new(a.genus, S::parse_text(&a.theta)?)?;
        let report = spectrum_report(&s)?;
        Ok(match format {
            Format::Json => render_json(&report.to_json()),
            Format::Csv => report.to_csv(),
        })
    }
    if cli.exact {
        go::<Rational>(a, cli.format)
    } else {
        go::<f64>(a, cli.format)
    }
}

fn index(a: &IndexArgs, cli: &Cli) -> Result<String> {
    fn go<S: Scalar>(a: &IndexArgs, format: Format) -> Result<String> {
        let s = SurfaceField::new(a.genus, S::parse_text(&a.theta)?)?;
        let bundle = match (&a.deg, a.q) {
            (Some(deg), _) => BundleData::new(S::parse_text(deg)?, a.rank)?,
            (None, Some(q)) => {
                let base = BundleData::<S>::canonical_power(a.genus, q);
                BundleData::new(base.deg * S::from_int(a.rank as i64), a.rank)?
            }
            (None, None) => BundleData::new(S::zero(), a.rank)?,
        };
        let value = l2_index(&s, &bundle);
        let mut doc = json!({
            "g": a.genus,
            "theta": s.theta.to_json(),
            "deg": bundle.deg.to_json(),
            "rank": bundle.rank,
            "index": value.to_json(),
        });
        if let Some(q) = a.q {
            doc["q"] = json!(q);
            doc["vanishing_h1"] = json!(vanishing_h1(&s, q));
            let dim = if s.theta > S::zero() && q < max_landau_level(&s)? {
                von_neumann_dimension(&s, q as i64)?.to_json()
            } else {
                Value::Null
            };
            doc["dim_tau"] = dim;
        }
        Ok(match format {
            Format::Json => render_json(&doc),
            Format::Csv => format!(
                "g,theta,deg,rank,index\n{},{},{},{},{}\n",
                a.genus,
                s.theta.to_text(),
                bundle.deg.to_text(),
                bundle.rank,
                value.to_text()
            ),
        })
    }
    if cli.exact {
        go::<Rational>(a, cli.format)
    } else {
        go::<f64>(a, cli.format)
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn render_generators<S: Scalar>(gens: &[SubsetGenerator<S>], format: Format) -> String {
    match format {
        Format::Json => {
            let list: Vec<Value> = gens.iter().map(SubsetGenerator::to_json).collect();
            render_json(&json!({ "generators": list }))
        }
        Format::Csv => {
            let higher = gens.iter().any(|g| matches!(g.tag, GeneratorTag::Higher { .. }));
            let mut out = String::from(if higher {
                "subset,parent,value,tag\n"
            } else {
                "subset,value,tag\n"
            });
            let join = |s: &[usize]| s.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            for g in gens {
                let parent = match &g.tag {
                    GeneratorTag::Higher { parent, .. } => format!("{},", join(parent)),
                    _ => String::new(),
                };
                out.push_str(&format!(
                    "{},{parent}{},{}\n",
                    join(&g.subset),
                    g.value.to_text(),
                    g.tag
                ));
            }
            out
        }
    }
}

fn theta_is_exact(doc: &Value, cli: &Cli) -> bool {
    cli.exact || json_entries_are_exact(doc)
}

fn trace_range(a: &ThetaFileArgs, cli: &Cli) -> Result<String> {
    let doc = read_json(&a.theta_file)?;
    if theta_is_exact(&doc, cli) {
        let theta = SkewMatrix::<Rational>::from_json(&doc)?;
        Ok(render_generators(&trace_range_generators(&theta)?, cli.format))
    } else {
        let theta = SkewMatrix::<f64>::from_json(&doc)?;
        Ok(render_generators(&trace_range_generators(&theta)?, cli.format))
    }
}

fn higher_trace_range(a: &HigherArgs, cli: &Cli) -> Result<String> {
    let doc = read_json(&a.theta_file)?;
    fn go<S: Scalar>(doc: &Value, g: Option<usize>, format: Format) -> Result<String> {
        let theta = SkewMatrix::<S>::from_json(doc)?;
        let p = theta.dim();
        if !p.is_multiple_of(2) {
            return Err(Error::OddDimension(p));
        }
        Ok(render_generators(
            &higher_trace_range_generators(&theta, g.unwrap_or(p / 2))?,
            format,
        ))
    }
    if theta_is_exact(&doc, cli) {
        go::<Rational>(&doc, a.genus, cli.format)
    } else {
        go::<f64>(&doc, a.genus, cli.format)
    }
}

fn chern(a: &ChernArgs, format: Format) -> Result<String> {
    if let Some(g) = a.genus {
        let c = smooth_chern_number(g)?;
        return Ok(match format {
            Format::Json => {
                render_json(&json!({ "genus": g, "chern": format_fraction(&Rational::from_int(c as i64)) }))
            }
            Format::Csv => format!("genus,chern\n{g},{c}/1\n"),
        });
    }
    let (Some(g_cover), Some(group_order)) = (a.g_cover, a.group_order) else {
        return Err(Error::InvalidArgument(
            "chern needs --genus, or --g-cover and --group-order".into(),
        ));
    };
    let report = chern_report(&OrbifoldCoverData::new(g_cover, group_order, a.orbits.clone())?)?;
    Ok(match format {
        Format::Json => render_json(&report.to_json()),
        Format::Csv => format!(
            "base_genus,n_points,n_orbits,chern,cover_identity_check\n{},{},{},{},{}\n",
            report.base_genus,
            report.n_points,
            report.n_orbits,
            format_fraction(&report.chern),
            report.cover_identity_check
        ),
    })
}

/// How one arithmetic mode reads and prints the algebra.
trait NctMode: PhaseScalar {
    /// Multiplier left out of derivation and cocycle values, if any.
    const DERIVATION_SCALE: Option<&'static str>;
    const COCYCLE_SCALE: Option<&'static str>;

    fn read_element(v: &Value) -> Result<NctElement<Self::Phase>>;
    fn scalar_json(z: &Self::Phase) -> Value;
    fn scalar_csv(z: &Self::Phase) -> String;
    fn element_json(f: &NctElement<Self::Phase>) -> Value;
    fn element_csv(f: &NctElement<Self::Phase>) -> String;
    fn derivation(j: usize, f: &NctElement<Self::Phase>) -> Result<NctElement<Self::Phase>>;
    fn cocycle(fs: &[NctElement<Self::Phase>], theta: &SkewMatrix<Self>) -> Result<Self::Phase>;
}

impl NctMode for f64 {
    const DERIVATION_SCALE: Option<&'static str> = None;
    const COCYCLE_SCALE: Option<&'static str> = None;

    fn read_element(v: &Value) -> Result<NctElement<Complex64>> {
        NctElement::<Complex64>::from_json(v)
    }

    fn scalar_json(z: &Complex64) -> Value {
        json!({ "re": z.re, "im": z.im })
    }

    fn scalar_csv(z: &Complex64) -> String {
        format!("re,im\n{},{}\n", z.re, z.im)
    }

    fn element_json(f: &NctElement<Complex64>) -> Value {
        f.to_json()
    }

    fn element_csv(f: &NctElement<Complex64>) -> String {
        let mut out = String::from("n,re,im\n");
        for (n, c) in f.terms() {
            out.push_str(&format!("{},{},{}\n", join(n.components()), c.re, c.im));
        }
        out
    }

    fn derivation(j: usize, f: &NctElement<Complex64>) -> Result<NctElement<Complex64>> {
        nct::derivation(j, f)
    }

    fn cocycle(fs: &[NctElement<Complex64>], theta: &SkewMatrix<f64>) -> Result<Complex64> {
        nct::cyclic_2cocycle(&fs[0], &fs[1], &fs[2], theta, theta.dim() / 2)
    }
}

impl NctMode for Rational {
    const DERIVATION_SCALE: Option<&'static str> = Some("2*pi*i");
    const COCYCLE_SCALE: Option<&'static str> = Some("(2*pi*i)^2");

    fn read_element(v: &Value) -> Result<NctElement<PhaseSum>> {
        NctElement::<PhaseSum>::from_json(v)
    }

    fn scalar_json(z: &PhaseSum) -> Value {
        z.to_json()
    }

    fn scalar_csv(z: &PhaseSum) -> String {
        let mut out = String::from("turns,coeff\n");
        for (t, c) in z.terms() {
            out.push_str(&format!("{},{}\n", t.to_text(), c.to_text()));
        }
        out
    }

    fn element_json(f: &NctElement<PhaseSum>) -> Value {
        f.to_json()
    }

    fn element_csv(f: &NctElement<PhaseSum>) -> String {
        let mut out = String::from("n,turns,coeff\n");
        for (n, c) in f.terms() {
            for (t, k) in c.terms() {
                out.push_str(&format!("{},{},{}\n", join(n.components()), t.to_text(), k.to_text()));
            }
        }
        out
    }

    fn derivation(j: usize, f: &NctElement<PhaseSum>) -> Result<NctElement<PhaseSum>> {
        nct::gauge_generator(j, f)
    }

    fn cocycle(fs: &[NctElement<PhaseSum>], theta: &SkewMatrix<Rational>) -> Result<PhaseSum> {
        nct::cyclic_2cocycle_reduced(&fs[0], &fs[1], &fs[2], theta, theta.dim() / 2)
    }
}

fn join(n: &[i64]) -> String {
    n.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

fn nct_op(a: &NctArgs, cli: &Cli) -> Result<String> {
    let doc = read_json(&a.theta_file)?;
    if theta_is_exact(&doc, cli) {
        nct_in::<Rational>(a, &doc, cli.format)
    } else {
        nct_in::<f64>(a, &doc, cli.format)
    }
}

fn nct_in<S: NctMode>(a: &NctArgs, doc: &Value, format: Format) -> Result<String> {
    let theta = SkewMatrix::<S>::from_json(doc)?;
    let elements = a
        .elements
        .iter()
        .map(|p| S::read_element(&read_json(p)?))
        .collect::<Result<Vec<_>>>()?;
    let need = |n: usize| {
        if elements.len() == n {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "{:?} takes {n} --element files, got {}",
                a.op,
                elements.len()
            )))
        }
    };
    let scalar = |z: S::Phase, scale: Option<&str>| match format {
        Format::Json => {
            let mut out = json!({ "value": S::scalar_json(&z) });
            if let Some(scale) = scale {
                out["scale"] = json!(scale);
            }
            render_json(&out)
        }
        Format::Csv => S::scalar_csv(&z),
    };
    let element = |f: NctElement<S::Phase>, scale: Option<&str>| match format {
        Format::Json => {
            let mut out = S::element_json(&f);
            if let Some(scale) = scale {
                out["scale"] = json!(scale);
            }
            render_json(&out)
        }
        Format::Csv => S::element_csv(&f),
    };
    Ok(match a.op {
        NctOp::Sigma => {
            let s = nct::sigma(
                &theta,
                &LatticeVector::new(a.gamma.clone()),
                &LatticeVector::new(a.gamma_prime.clone()),
            )?;
            scalar(s, None)
        }
        NctOp::Product => {
            need(2)?;
            element(nct::star_product(&elements[0], &elements[1], &theta)?, None)
        }
        NctOp::Adjoint => {
            need(1)?;
            element(nct::adjoint(&elements[0], &theta)?, None)
        }
        NctOp::Trace => {
            need(1)?;
            scalar(nct::trace(&elements[0]), None)
        }
        NctOp::Derivation => {
            need(1)?;
            let j = a
                .index
                .ok_or_else(|| Error::InvalidArgument("derivation needs --index".into()))?;
            element(S::derivation(j, &elements[0])?, S::DERIVATION_SCALE)
        }
        NctOp::Cocycle => {
            need(3)?;
            let p = theta.dim();
            if !p.is_multiple_of(2) {
                return Err(Error::OddDimension(p));
            }
            scalar(S::cocycle(&elements, &theta)?, S::COCYCLE_SCALE)
        }
    })
}

fn verify_landau(a: &VerifyArgs, format: Format) -> Outcome {
    let beta = match (a.beta, a.genus, &a.theta) {
        (Some(b), _, _) => Ok(b),
        (None, Some(g), Some(t)) => Rational::parse_text(t)
            .and_then(|theta| SurfaceField::new(g, theta))
            .and_then(|s| oracle::rescale_to_unit_curvature(&s))
            .map(|b| b.to_f64().unwrap_or(f64::NAN)),
        _ => Err(Error::InvalidArgument(
            "verify-landau needs --beta, or --genus and --theta".into(),
        )),
    };
    let beta = match beta {
        Ok(b) => b,
        Err(e) => return Outcome::fail(EXIT_VALIDATION, format!("error: {e}\n")),
    };
    let q_max = a.q_max.unwrap_or_else(|| default_q_max(beta));
    let opts = NumericOptions {
        ell_range: (a.ell_min, a.ell_max),
        grid: GridParams {
            r_max: a.rmax,
            grid_points: a.grid,
        },
        tolerance: a.tolerance,
    };
    let result = match oracle::landau_levels_numeric(beta, q_max, &opts) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(EXIT_VALIDATION, format!("error: {e}\n")),
    };
    let stdout = match format {
        Format::Json => render_json(&result.to_json()),
        Format::Csv => result.to_csv(),
    };
    if result.all_passed() {
        return Outcome::ok(stdout);
    }
    let stderr = format!("error: oracle mismatch at beta = {beta}\n{}", result.failure_table());
    Outcome {
        code: EXIT_ORACLE_MISMATCH,
        stdout,
        stderr,
    }
}

/// Highest discrete level `q < β - 1/2`, capped at 3.
fn default_q_max(beta: f64) -> u32 {
    let top = (beta - 0.5).ceil() as i64 - 1;
    top.clamp(0, 3) as u32
}
