//! Command-line driver. Every subcommand produces a report with the echoed
//! inputs, outputs, residuals and truncation radii, serialized as JSON (floats
//! with 17 significant digits) or as a flat CSV residual table.
//!
//! Exit status: 0 on success, 2 on invalid input, 3 when a certification fails.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::degeneration::{involution_fixed_points, DegenerationPath, Locus, SemiAbelicDatum};
use crate::error::{Error, Result};
use crate::heisenberg::HeisenbergElement;
use crate::kummer::{
    build_catalog, decomposable_component, evaluate_f, heisenberg_character,
    kummer_embed_with_radius, quadric_proximity, MatrixVariant, QuarticCatalog,
};
use crate::poly::SparsePoly;
use crate::siegel::{random_cell_point, random_siegel_point_with, SiegelPoint};
use crate::theta::{
    eval_riemann_theta, eval_theta_char, eval_theta_second_order, eval_theta_vector,
    SecondOrderIndex, ThetaCharacteristic, TruncationPolicy,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_CERTIFICATION: i32 = 3;

/// Environment variable overriding the default certification tolerance.
pub const TOL_ENV: &str = "KUMMER_TOL";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "kummer",
    version,
    about = "Theta functions, Kummer surfaces and their degenerations"
)]
pub struct JobConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Residual tolerance for certification.
    #[arg(long, global = true, env = TOL_ENV, default_value_t = 1e-8)]
    pub tol: f64,

    /// Truncation tolerance of the theta lattice sums.
    #[arg(long, global = true, default_value_t = TruncationPolicy::DEFAULT_TOL)]
    pub theta_tol: f64,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,

    /// Write the report here instead of standard output.
    #[arg(long = "out", global = true)]
    pub out_path: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Evaluate a theta function at (tau, z).
    EvalTheta(EvalThetaArgs),
    /// Map z to the Kummer surface in P^3 x P^3 and evaluate F there.
    Embed(TauZArgs),
    /// Check that F vanishes on random Kummer points.
    VerifyQuartic(VerifyArgs),
    /// Distance of the theta constants from each quadric q_i.
    Thetanull(TauArgs),
    /// Compare rescaled thetas with their semi-abelic limits.
    Degenerate(DegenerateArgs),
    /// List the certified fixed points of the involution j.
    FixedPoints(SemiAbelicArgs),
    /// Build and certify the universal quartic and its factorizations.
    CertifyCatalog,
}

#[derive(Debug, Clone, Args)]
pub struct TauArgs {
    /// Period matrix: "[[a, b], [b, c]]", "diag(a, c)", or a file holding either.
    #[arg(long)]
    pub tau: String,
}

#[derive(Debug, Clone, Args)]
pub struct TauZArgs {
    #[arg(long)]
    pub tau: String,
    /// Vector "[z1, z2]" of complex numbers such as 0.1-2.5i.
    #[arg(long)]
    pub z: String,
}

#[derive(Debug, Clone, Args)]
pub struct EvalThetaArgs {
    #[command(flatten)]
    pub at: TauZArgs,
    /// Characteristic "a;b" as bit strings, e.g. "01;10".
    #[arg(long = "char", conflicts_with = "sigma")]
    pub characteristic: Option<String>,
    /// Second-order index as a bit string, e.g. "10".
    #[arg(long)]
    pub sigma: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    /// Fix tau instead of drawing one per sample.
    #[arg(long)]
    pub tau: Option<String>,
    /// Use the matrix with entry (4,4) equal to u01^2 u10^2 instead of u01^2 u10.
    #[arg(long)]
    pub verbatim: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SemiAbelicArgs {
    /// Period matrix of the base, of genus g - 1.
    #[arg(long)]
    pub tau_prime: String,
    /// Gluing shift; zero when omitted.
    #[arg(long)]
    pub b: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct DegenerateArgs {
    #[command(flatten)]
    pub base: SemiAbelicArgs,
    #[arg(long, default_value = "0.17+3.75i", allow_hyphen_values = true)]
    pub z1: String,
    /// Base coordinate z'; zero when omitted.
    #[arg(long)]
    pub z_prime: Option<String>,
    #[arg(long, value_delimiter = ',', default_value = "4,8,12")]
    pub t: Vec<f64>,
}

/// Result of one invocation: exit status, the rendered report, and a message for stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub document: String,
    pub message: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
struct Residual {
    name: String,
    value: f64,
}

#[derive(Debug, Clone, Serialize)]
struct Report {
    command: &'static str,
    inputs: Value,
    outputs: Value,
    residuals: Vec<Residual>,
    truncation_radius: u32,
    tolerance: f64,
    certified: bool,
}

impl Report {
    fn new(command: &'static str, inputs: Value, tolerance: f64) -> Self {
        Self {
            command,
            inputs,
            outputs: Value::Null,
            residuals: Vec::new(),
            truncation_radius: 0,
            tolerance,
            certified: true,
        }
    }

    fn residual(&mut self, name: impl Into<String>, value: f64) {
        self.residuals.push(Residual {
            name: name.into(),
            value,
        });
    }

    fn radius(&mut self, r: u32) {
        self.truncation_radius = self.truncation_radius.max(r);
    }
}

/// Writes every float as `{:.16e}`, so output is byte-stable.
struct FixedFormatter;

impl serde_json::ser::Formatter for FixedFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()> {
        write!(writer, "{:.16e}", value as f64)
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFormatter);
    value.serialize(&mut ser).expect("reports serialize");
    buf.push(b'\n');
    String::from_utf8(buf).expect("utf-8")
}

fn to_csv(report: &Report) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["command", "name", "value", "tolerance", "certified"])
        .expect("in-memory write");
    for r in &report.residuals {
        w.write_record([
            report.command.to_string(),
            r.name.clone(),
            format!("{:.16e}", r.value),
            format!("{:.16e}", report.tolerance),
            report.certified.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

/// Parses `args` (including the program name) and runs the job.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match JobConfig::try_parse_from(args) {
        Ok(config) => execute(&config),
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_VALIDATION
            } else {
                EXIT_OK
            };
            Outcome {
                code,
                document: if code == EXIT_OK {
                    e.to_string()
                } else {
                    String::new()
                },
                message: (code != EXIT_OK).then(|| e.to_string()),
            }
        }
    }
}

/// Runs a parsed job and writes the report to `out_path` when one is given.
pub fn execute(config: &JobConfig) -> Outcome {
    let report = match validate(config).and_then(|()| dispatch(config)) {
        Ok(r) => r,
        Err(e) => {
            let code = match e {
                Error::Certification(_) => EXIT_CERTIFICATION,
                _ => EXIT_VALIDATION,
            };
            return Outcome {
                code,
                document: String::new(),
                message: Some(e.to_string()),
            };
        }
    };
    let document = match config.output {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Csv => to_csv(&report),
    };
    let (code, message) = if report.certified {
        (EXIT_OK, None)
    } else {
        (
            EXIT_CERTIFICATION,
            Some(format!("{}: residual above tolerance", report.command)),
        )
    };
    if let Some(path) = &config.out_path {
        if let Err(e) = std::fs::write(path, &document) {
            return Outcome {
                code: EXIT_VALIDATION,
                document: String::new(),
                message: Some(format!("cannot write {}: {e}", path.display())),
            };
        }
        return Outcome {
            code,
            document: String::new(),
            message,
        };
    }
    Outcome {
        code,
        document,
        message,
    }
}

fn validate(config: &JobConfig) -> Result<()> {
    if !(config.tol > 0.0 && config.tol.is_finite()) {
        return Err(Error::Parse(format!(
            "tolerance must be positive, got {}",
            config.tol
        )));
    }
    TruncationPolicy::with_tol(config.theta_tol).map(|_| ())
}

fn dispatch(config: &JobConfig) -> Result<Report> {
    let policy = TruncationPolicy::with_tol(config.theta_tol)?;
    let tol = config.tol;
    match &config.command {
        Command::EvalTheta(a) => eval_theta(a, &policy, tol),
        Command::Embed(a) => embed(a, &policy, tol),
        Command::VerifyQuartic(a) => verify_quartic(a, &policy, tol),
        Command::Thetanull(a) => thetanull(a, &policy, tol),
        Command::Degenerate(a) => degenerate(a, &policy, tol),
        Command::FixedPoints(a) => fixed_points(a, tol),
        Command::CertifyCatalog => certify_catalog(tol),
    }
}

fn cj(c: Complex64) -> Value {
    json!([c.re, c.im])
}

fn vj(v: &[Complex64]) -> Value {
    Value::Array(v.iter().copied().map(cj).collect())
}

fn mj(tau: &SiegelPoint) -> Value {
    Value::Array(tau.to_rows().iter().map(|r| vj(r)).collect())
}

fn eval_theta(a: &EvalThetaArgs, policy: &TruncationPolicy, tol: f64) -> Result<Report> {
    let tau = parse_tau(&a.at.tau)?;
    let z = parse_vector(&a.at.z, tau.genus())?;
    let neg: Vec<Complex64> = z.iter().map(|v| -v).collect();
    let (kind, label, value, mirrored, sign) = if let Some(s) = &a.characteristic {
        let m = parse_characteristic(s, tau.genus())?;
        let v = eval_theta_char(&m, &tau, &z, policy)?;
        let w = eval_theta_char(&m, &tau, &neg, policy)?;
        let sign = if m.is_even() { 1.0 } else { -1.0 };
        ("characteristic", m.to_string(), v, w, sign)
    } else if let Some(s) = &a.sigma {
        let sigma = SecondOrderIndex::new(parse_bits(s, tau.genus())?)?;
        let v = eval_theta_second_order(&sigma, &tau, &z, policy)?;
        let w = eval_theta_second_order(&sigma, &tau, &neg, policy)?;
        ("second_order", s.clone(), v, w, 1.0)
    } else {
        let v = eval_riemann_theta(&tau, &z, policy)?;
        let w = eval_riemann_theta(&tau, &neg, policy)?;
        ("riemann", String::new(), v, w, 1.0)
    };
    let mut report = Report::new(
        "eval-theta",
        json!({"tau": mj(&tau), "z": vj(&z), "kind": kind, "index": label, "theta_tol": policy.tol()}),
        tol,
    );
    report.outputs = json!({"value": cj(value.value), "abs": value.value.norm()});
    let scale = value.value.norm() + mirrored.value.norm();
    let parity = if scale == 0.0 {
        0.0
    } else {
        (mirrored.value - value.value * sign).norm() / scale
    };
    report.residual("parity", parity);
    report.radius(value.radius.max(mirrored.radius));
    report.certified = parity < tol;
    Ok(report)
}

fn embed(a: &TauZArgs, policy: &TruncationPolicy, tol: f64) -> Result<Report> {
    let tau = parse_tau(&a.tau)?;
    let z = parse_vector(&a.z, tau.genus())?;
    let cat = build_catalog()?;
    let (point, radius) = kummer_embed_with_radius(&tau, &z, policy)?;
    let f = evaluate_f(&cat, &point);
    let mut report = Report::new(
        "embed",
        json!({"tau": mj(&tau), "z": vj(&z), "theta_tol": policy.tol()}),
        tol,
    );
    report.outputs =
        json!({"u": vj(&point.u), "x": vj(&point.x), "f_value": cj(f.value), "f_scale": f.scale});
    report.residual("f_relative", f.relative());
    report.radius(radius);
    report.certified = f.relative() < tol;
    Ok(report)
}

fn verify_quartic(a: &VerifyArgs, policy: &TruncationPolicy, tol: f64) -> Result<Report> {
    if a.samples == 0 {
        return Err(Error::Parse("samples must be positive".into()));
    }
    let fixed = a.tau.as_deref().map(parse_tau).transpose()?;
    if let Some(t) = &fixed {
        if t.genus() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: t.genus(),
            });
        }
    }
    let variant = if a.verbatim {
        MatrixVariant::Verbatim
    } else {
        MatrixVariant::Corrected
    };
    let cat = match variant {
        MatrixVariant::Corrected => build_catalog()?,
        MatrixVariant::Verbatim => verbatim_catalog()?,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut report = Report::new(
        "verify-quartic",
        json!({
            "seed": a.seed,
            "samples": a.samples,
            "tau": fixed.as_ref().map(mj),
            "variant": if a.verbatim { "verbatim" } else { "corrected" },
            "theta_tol": policy.tol(),
        }),
        tol,
    );
    let mut values = Vec::with_capacity(a.samples);
    for i in 0..a.samples {
        let tau = match &fixed {
            Some(t) => t.clone(),
            None => random_siegel_point_with(2, &mut rng),
        };
        let z: Vec<Complex64> = random_cell_point(&tau, &mut rng).iter().copied().collect();
        let (point, radius) = kummer_embed_with_radius(&tau, &z, policy)?;
        let r = evaluate_f(&cat, &point).relative();
        report.residual(format!("sample_{i}"), r);
        report.radius(radius);
        values.push(r);
    }
    let max = values.iter().copied().fold(0.0, f64::max);
    let mut sorted = values.clone();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[sorted.len() / 2];
    report.outputs = json!({"max_relative_residual": max, "median_relative_residual": median});
    report.certified = max < tol;
    Ok(report)
}

/// The certified catalog with `F` replaced by the determinant of the verbatim matrix.
fn verbatim_catalog() -> Result<QuarticCatalog> {
    let mut cat = build_catalog()?;
    cat.kummer = crate::kummer::universal_quartic(MatrixVariant::Verbatim);
    Ok(cat)
}

fn thetanull(a: &TauArgs, policy: &TruncationPolicy, tol: f64) -> Result<Report> {
    let tau = parse_tau(&a.tau)?;
    if tau.genus() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: tau.genus(),
        });
    }
    let (u, radius) = eval_theta_vector(&tau, &[Complex64::new(0.0, 0.0); 2], policy)?;
    let u: [Complex64; 4] = u.try_into().expect("four theta constants");
    let proximity = quadric_proximity(&u);
    let mut report = Report::new(
        "thetanull",
        json!({"tau": mj(&tau), "theta_tol": policy.tol()}),
        tol,
    );
    for (i, p) in proximity.iter().enumerate() {
        report.residual(format!("q_{}", i + 1), *p);
    }
    report.outputs = json!({
        "theta_constants": vj(&u),
        "proximity": proximity.to_vec(),
        "component": decomposable_component(&proximity),
    });
    report.radius(radius);
    Ok(report)
}

fn semiabelic(a: &SemiAbelicArgs, q: Complex64) -> Result<SemiAbelicDatum> {
    let tau = parse_tau(&a.tau_prime)?;
    let b = match &a.b {
        Some(s) => parse_vector(s, tau.genus())?,
        None => vec![Complex64::new(0.0, 0.0); tau.genus()],
    };
    SemiAbelicDatum::new(tau, b, q)
}

fn degenerate(a: &DegenerateArgs, policy: &TruncationPolicy, tol: f64) -> Result<Report> {
    let d = semiabelic(&a.base, Complex64::new(1.0, 0.0))?;
    let z1 = parse_complex(&a.z1)?;
    let z_prime = match &a.z_prime {
        Some(s) => parse_vector(s, d.tau_prime().genus())?,
        None => vec![Complex64::new(0.0, 0.0); d.tau_prime().genus()],
    };
    if a.t.is_empty() || a.t.iter().any(|t| t.is_nan() || *t <= 0.0) {
        return Err(Error::Parse("t values must be positive".into()));
    }
    let path = DegenerationPath::new(d.tau_prime().clone(), d.b().to_vec(), z1, z_prime)?;
    let datum = path.datum();
    let limit = crate::degeneration::degenerate_theta_vector(&datum, &path.z_prime, policy)?;
    let semi = crate::degeneration::semiabelic_theta(&datum, &path.z_prime, policy)?;
    let mut report = Report::new(
        "degenerate",
        json!({
            "tau_prime": mj(d.tau_prime()),
            "b": vj(d.b()),
            "z1": cj(z1),
            "z_prime": vj(&path.z_prime),
            "t": a.t,
            "theta_tol": policy.tol(),
        }),
        tol,
    );
    let mut errors = Vec::new();
    let mut steps = Vec::new();
    for &t in &a.t {
        let tau = path.period(t)?;
        let (_, radius) = eval_theta_vector(&tau, &path.argument(t), policy)?;
        report.radius(radius);
        let err = path.vector_limit_error(t, policy)?;
        let scalar = path.theta_limit_error(t, policy)?;
        report.residual(format!("vector_t{t}"), err);
        report.residual(format!("theta_t{t}"), scalar);
        steps.push(json!({"t": t, "vector": vj(&path.rescaled_theta_vector(t, policy)?), "vector_error": err, "theta_error": scalar}));
        errors.push(err);
    }
    let decreasing = errors.windows(2).all(|w| w[1] < w[0]);
    let last = *errors.last().expect("nonempty");
    report.outputs = json!({
        "q": cj(datum.q()),
        "limit_vector": vj(&limit),
        "semiabelic_theta": cj(semi),
        "steps": steps,
        "strictly_decreasing": decreasing,
    });
    report.certified = decreasing && last < tol;
    Ok(report)
}

fn fixed_points(a: &SemiAbelicArgs, tol: f64) -> Result<Report> {
    let d = semiabelic(a, Complex64::new(1.0, 0.0))?;
    let points = involution_fixed_points(&d)?;
    let g = d.genus();
    let smooth = points.iter().filter(|p| p.locus == Locus::Smooth).count();
    let singular = points.len() - smooth;
    let total: u32 = points.iter().map(|p| p.multiplicity).sum();
    let mut report = Report::new(
        "fixed-points",
        json!({"tau_prime": mj(d.tau_prime()), "b": vj(d.b())}),
        tol,
    );
    let listed: Vec<Value> = points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let locus = match p.locus {
                Locus::Smooth => "smooth",
                Locus::Singular => "singular",
            };
            report.residual(format!("{locus}_{i}"), p.residual);
            json!({"locus": locus, "z": vj(&p.z), "x": p.x.map(cj), "multiplicity": p.multiplicity, "residual": p.residual})
        })
        .collect();
    report.outputs = json!({
        "genus": g,
        "smooth": smooth,
        "singular": singular,
        "total_with_multiplicity": total,
        "points": listed,
    });
    report.certified =
        smooth == 1 << (2 * g - 1) && singular == 1 << (2 * (g - 1)) && total == 1 << (2 * g);
    Ok(report)
}

/// SHA-256 of the text serialization, hex encoded.
pub fn poly_digest(p: &SparsePoly) -> String {
    hex::encode(Sha256::digest(p.to_text().as_bytes()))
}

fn certify_catalog(tol: f64) -> Result<Report> {
    let cat = build_catalog()?;
    let mut report = Report::new("certify-catalog", json!({}), tol);
    let factorizations: Vec<Value> = cat
        .factorizations
        .iter()
        .enumerate()
        .map(|(i, fz)| {
            report.residual(format!("remainder_{}", i + 1), 0.0);
            json!({
                "i": i + 1,
                "q": cat.q[i].to_string(),
                "f": cat.f[i].to_string(),
                "p_terms": fz.p.len(),
                "p_digest": poly_digest(&fz.p),
                "multiplier": fz.multiplier.to_string(),
                "denominator": fz.reduction.denominator.to_string(),
            })
        })
        .collect();
    let characters = HeisenbergElement::signed_elements(2)
        .iter()
        .map(|w| heisenberg_character(&cat, w))
        .collect::<Result<Vec<i8>>>()?;
    report.outputs = json!({
        "f_terms": cat.kummer.len(),
        "f_digest": poly_digest(&cat.kummer),
        "determinant_scale": cat.determinant_scale.to_string(),
        "heisenberg_characters": characters,
        "factorizations": factorizations,
    });
    Ok(report)
}

/// Parses `1.5`, `-2i`, `i`, `0.3-1e-2i`, `+4.0+0.5i`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("not a complex number: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return t
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
        .unwrap_or(0);
    let (re, im) = body.split_at(split);
    let re = if re.is_empty() {
        0.0
    } else {
        re.parse::<f64>().map_err(|_| bad())?
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => v.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

fn split_entries(s: &str) -> Vec<&str> {
    s.split(',')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .collect()
}

/// Parses `[a, b, ...]`, checking the length when `g > 0`.
pub fn parse_vector(s: &str, g: usize) -> Result<Vec<Complex64>> {
    let t = s.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|v| v.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [..], got {s:?}")))?;
    let v = split_entries(inner)
        .into_iter()
        .map(parse_complex)
        .collect::<Result<Vec<_>>>()?;
    if g > 0 && v.len() != g {
        return Err(Error::DimensionMismatch {
            expected: g,
            found: v.len(),
        });
    }
    Ok(v)
}

/// Parses `[[..], [..]]` or `diag(a, b)`; otherwise reads the argument as a file path.
pub fn parse_tau(s: &str) -> Result<SiegelPoint> {
    let t = s.trim();
    if let Some(inner) = t.strip_prefix("diag(").and_then(|v| v.strip_suffix(')')) {
        let entries = split_entries(inner)
            .into_iter()
            .map(parse_complex)
            .collect::<Result<Vec<_>>>()?;
        if entries.is_empty() {
            return Err(Error::Parse("diag() needs at least one entry".into()));
        }
        return SiegelPoint::diagonal(&entries);
    }
    if t.starts_with('[') {
        let compact: String = t.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix("[[")
            .and_then(|v| v.strip_suffix("]]"))
            .ok_or_else(|| Error::Parse(format!("expected [[..],[..]], got {s:?}")))?;
        let rows = inner
            .split("],[")
            .map(|r| parse_vector(&format!("[{r}]"), 0))
            .collect::<Result<Vec<_>>>()?;
        return SiegelPoint::from_rows(&rows);
    }
    let text =
        std::fs::read_to_string(t).map_err(|e| Error::Parse(format!("cannot read {t:?}: {e}")))?;
    let text = text.trim();
    if text.starts_with('[') || text.starts_with("diag(") {
        parse_tau(text)
    } else {
        Err(Error::Parse(format!(
            "{t:?} does not contain a period matrix"
        )))
    }
}

fn parse_bits(s: &str, g: usize) -> Result<Vec<u8>> {
    let bits = s
        .trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::InvalidCharacteristic),
        })
        .collect::<Result<Vec<u8>>>()?;
    if bits.len() != g {
        return Err(Error::DimensionMismatch {
            expected: g,
            found: bits.len(),
        });
    }
    Ok(bits)
}

fn parse_characteristic(s: &str, g: usize) -> Result<ThetaCharacteristic> {
    let (a, b) = s.split_once(';').ok_or_else(|| {
        Error::Parse(format!(
            "characteristic must look like \"01;10\", got {s:?}"
        ))
    })?;
    ThetaCharacteristic::new(parse_bits(a, g)?, parse_bits(b, g)?)
}

/// Entry point for the binary: runs, prints, and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let outcome = run(args);
    print!("{}", outcome.document);
    if let Some(m) = &outcome.message {
        eprintln!("{}", m.trim_end());
    }
    outcome.code
}
