//! The `stochop` command line: sample | spectrum | mc | verify | diagnose.
//!
//! Every subcommand takes `--seed`, `--out` and `--workers`, and can read its
//! flags from a JSON [`RunConfig`] via `--config`; explicit flags win.
//! `--dump-config` prints the resolved configuration and exits.
//!
//! Exit codes: 0 ok, 1 internal failure (or a failed verification), 2 usage.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::beta::Beta;
use crate::diagnostics::{report_from, smoothness_profiles, write_profiles_csv, MASK_TOL};
use crate::ensembles::{
    sample_hermite, sample_jacobi, sample_laguerre_l, sample_laguerre_m, Model,
};
use crate::error::{invalid, Result};
use crate::montecarlo::{
    export, run_mc, Bins, ExportFormat, Experiment, ExperimentKind, HardModel, SoftModel,
};
use crate::operators::RayleighRitzConfig;
use crate::randsrc::StreamKey;
use crate::scalings::{hermite_soft, jacobi_hard, laguerre_hard, laguerre_soft, ScaledModel};
use crate::verify::{run_suite, Suite, VerifyOptions};

/// A subcommand's resolved parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub seed: u64,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub workers: usize,
    #[serde(default)]
    pub params: BTreeMap<String, Value>,
}

impl RunConfig {
    /// SHA-256 (16 hex digits) of the canonical JSON; object keys are sorted,
    /// so field order in a config file does not matter.
    pub fn digest(&self) -> String {
        let canon = serde_json::to_value(self).expect("config serializes").to_string();
        Sha256::digest(canon.as_bytes())
            .iter()
            .take(8)
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_reader(io::BufReader::new(File::open(path)?))?)
    }
}

#[derive(Parser, Debug)]
#[command(name = "stochop", version, about = "Beta-ensemble edge statistics and stochastic operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample a matrix model and print it as JSON
    Sample(SampleArgs),
    /// Smallest eigenvalues / singular values of a scaled model, as CSV
    Spectrum(SpectrumArgs),
    /// Monte Carlo experiment: raw CSV, histogram CSV and JSON sidecar
    Mc(McArgs),
    /// Run a verification suite
    Verify(VerifyArgs),
    /// Smoothness profiles of two eigenvectors and their ratio
    Diagnose(DiagnoseArgs),
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct Common {
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output file (sample, spectrum, diagnose) or directory (mc)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads for Monte Carlo (0 = all cores)
    #[arg(long)]
    pub workers: Option<usize>,
    /// Read parameters from a JSON run configuration
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Print the resolved run configuration and exit
    #[arg(long)]
    #[serde(skip)]
    pub dump_config: bool,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct ModelParams {
    #[arg(long)]
    pub n: Option<usize>,
    /// Dyson index, a positive number or `inf`
    #[arg(long)]
    pub beta: Option<Beta>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelName {
    Hermite,
    LaguerreL,
    LaguerreM,
    Jacobi,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalingName {
    HermiteSoft,
    /// L_soft; M_soft with `--model laguerre-m`
    LaguerreSoft,
    /// L_hard; M_hard with `--model laguerre-m`
    LaguerreHard,
    JacobiHard,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum McKind {
    AiryRr,
    BesselRr,
    SoftEdge,
    HardEdge,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct SampleArgs {
    pub model: ModelName,
    #[command(flatten)]
    #[serde(flatten)]
    pub params: ModelParams,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumArgs {
    pub scaling: ScalingName,
    #[command(flatten)]
    #[serde(flatten)]
    pub params: ModelParams,
    /// Which Laguerre model to scale (laguerre-l or laguerre-m)
    #[arg(long)]
    pub model: Option<ModelName>,
    /// Number of values
    #[arg(long)]
    pub k: Option<usize>,
    /// Scale a model previously written by `sample` instead of sampling
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct McArgs {
    pub experiment: McKind,
    #[command(flatten)]
    #[serde(flatten)]
    pub params: ModelParams,
    /// Matrix model for soft-edge / hard-edge experiments
    #[arg(long)]
    pub model: Option<ModelName>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Rayleigh–Ritz basis size
    #[arg(long)]
    pub basis_size: Option<usize>,
    #[arg(long)]
    pub mesh: Option<f64>,
    #[arg(long)]
    pub left: Option<f64>,
    #[arg(long)]
    pub right: Option<f64>,
    /// `fd` (Freedman–Diaconis) or a bin count
    #[arg(long)]
    pub bins: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct VerifyArgs {
    /// zero-temp, identities or consistency
    pub suite: String,
    /// Samples per distribution in the consistency suite
    #[arg(long)]
    pub samples: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct DiagnoseArgs {
    pub scaling: ScalingName,
    #[command(flatten)]
    #[serde(flatten)]
    pub params: ModelParams,
    #[arg(long)]
    pub model: Option<ModelName>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long)]
    pub mask_tol: Option<f64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_usage() {
                2
            } else {
                1
            }
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Sample(a) => resolve("sample", a, |a| &a.common).and_then(cmd_sample),
        Command::Spectrum(a) => resolve("spectrum", a, |a| &a.common).and_then(cmd_spectrum),
        Command::Mc(a) => resolve("mc", a, |a| &a.common).and_then(cmd_mc),
        Command::Verify(a) => resolve("verify", a, |a| &a.common).and_then(cmd_verify),
        Command::Diagnose(a) => resolve("diagnose", a, |a| &a.common).and_then(cmd_diagnose),
    }
}

/// Resolved arguments, or None when only the configuration was requested.
type Resolved<A> = Option<(A, RunConfig)>;

/// Overlays explicit flags on a `--config` file and builds the RunConfig.
fn resolve<A>(command: &str, args: A, common: fn(&A) -> &Common) -> Result<Resolved<A>>
where
    A: Serialize + DeserializeOwned,
{
    let c = common(&args).clone();
    let mut flags = match serde_json::to_value(&args)? {
        Value::Object(m) => m,
        _ => unreachable!("argument structs serialize to objects"),
    };
    if let Some(path) = &c.config {
        let file = RunConfig::load(path)?;
        if file.command != command {
            return Err(invalid(format!(
                "config is for `{}`, not `{command}`",
                file.command
            )));
        }
        let base = [
            ("seed".to_string(), serde_json::to_value(file.seed)?),
            ("out".to_string(), serde_json::to_value(&file.out)?),
            ("workers".to_string(), serde_json::to_value(file.workers)?),
        ];
        for (k, v) in base.into_iter().chain(file.params) {
            match flags.get(&k) {
                Some(Value::Null) | None => {
                    flags.insert(k, v);
                }
                _ => {}
            }
        }
    }
    let mut params: BTreeMap<String, Value> = flags
        .iter()
        .filter(|(k, v)| !v.is_null() && !matches!(k.as_str(), "seed" | "out" | "workers"))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    params.remove("config");
    let rc = RunConfig {
        command: command.to_string(),
        seed: flags.get("seed").and_then(Value::as_u64).unwrap_or(0),
        out: flags.get("out").and_then(|v| v.as_str()).map(PathBuf::from),
        workers: flags.get("workers").and_then(Value::as_u64).unwrap_or(0) as usize,
        params,
    };
    if c.dump_config {
        println!("{}", serde_json::to_string_pretty(&rc)?);
        return Ok(None);
    }
    let args: A = serde_json::from_value(Value::Object(flags))
        .map_err(|e| invalid(format!("bad configuration: {e}")))?;
    Ok(Some((args, rc)))
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

struct Params {
    n: usize,
    beta: Beta,
    a: f64,
    b: f64,
}

impl Params {
    fn from(p: &ModelParams, n_default: usize) -> Self {
        Params {
            n: p.n.unwrap_or(n_default),
            beta: p.beta.unwrap_or(Beta::Finite(2.0)),
            a: p.a.unwrap_or(0.0),
            b: p.b.unwrap_or(0.0),
        }
    }
}

fn sample_model(name: ModelName, p: &Params, key: StreamKey) -> Result<Model> {
    Ok(match name {
        ModelName::Hermite => Model::Hermite(sample_hermite(key, p.n, p.beta)?),
        ModelName::LaguerreL => Model::LaguerreL(sample_laguerre_l(key, p.n, p.beta, p.a)?),
        ModelName::LaguerreM => Model::LaguerreM(sample_laguerre_m(key, p.n, p.beta, p.a)?),
        ModelName::Jacobi => Model::Jacobi(sample_jacobi(key, p.n, p.beta, p.a, p.b)?),
    })
}

fn cmd_sample(r: Resolved<SampleArgs>) -> Result<i32> {
    let Some((a, rc)) = r else { return Ok(0) };
    let p = Params::from(&a.params, 10);
    let model = sample_model(a.model, &p, StreamKey::new(rc.seed, 0))?;
    let mut w = sink(&rc.out)?;
    serde_json::to_writer_pretty(&mut w, &model)?;
    writeln!(w)?;
    w.flush()?;
    Ok(0)
}

/// The model a scaling applies to, honoring `--model` for Laguerre.
fn scaling_model(s: ScalingName, model: Option<ModelName>) -> Result<ModelName> {
    let m = match s {
        ScalingName::HermiteSoft => ModelName::Hermite,
        ScalingName::JacobiHard => ModelName::Jacobi,
        ScalingName::LaguerreSoft | ScalingName::LaguerreHard => model.unwrap_or(ModelName::LaguerreL),
    };
    if let Some(given) = model {
        if given != m {
            return Err(invalid(format!("{s:?} does not apply to the {given:?} model")));
        }
    }
    Ok(m)
}

fn apply_scaling(s: ScalingName, model: &Model) -> Result<ScaledModel> {
    match (s, model) {
        (ScalingName::HermiteSoft, Model::Hermite(h)) => hermite_soft(h),
        (ScalingName::LaguerreSoft, Model::LaguerreL(l)) => laguerre_soft(l),
        (ScalingName::LaguerreSoft, Model::LaguerreM(m)) => laguerre_soft(m),
        (ScalingName::LaguerreHard, Model::LaguerreL(l)) => laguerre_hard(l),
        (ScalingName::LaguerreHard, Model::LaguerreM(m)) => laguerre_hard(m),
        (ScalingName::JacobiHard, Model::Jacobi(j)) => jacobi_hard(j),
        _ => Err(invalid(format!("scaling {s:?} does not apply to this model"))),
    }
}

fn scaled(
    s: ScalingName,
    model: Option<ModelName>,
    p: &Params,
    seed: u64,
    input: Option<&Path>,
) -> Result<ScaledModel> {
    let m = match input {
        Some(path) => {
            let file = File::open(path)?;
            serde_json::from_reader(io::BufReader::new(file))
                .map_err(|e| invalid(format!("{}: not a model file: {e}", path.display())))?
        }
        None => sample_model(scaling_model(s, model)?, p, StreamKey::new(seed, 0))?,
    };
    apply_scaling(s, &m)
}

fn cmd_spectrum(r: Resolved<SpectrumArgs>) -> Result<i32> {
    let Some((a, rc)) = r else { return Ok(0) };
    let p = Params::from(&a.params, 1000);
    let k = a.k.unwrap_or(1);
    let m = scaled(a.scaling, a.model, &p, rc.seed, a.input.as_deref())?;
    if k == 0 || k > m.n {
        return Err(invalid(format!("k = {k} must lie in 1..={}", m.n)));
    }
    let vals = m.smallest(k)?;
    let mut w = csv::Writer::from_writer(sink(&rc.out)?);
    w.write_record(["k", "value"])?;
    for (i, v) in vals.iter().enumerate() {
        w.write_record([(i + 1).to_string(), format!("{v:.12}")])?;
    }
    w.flush()?;
    Ok(0)
}

fn parse_bins(s: Option<&str>) -> Result<Bins> {
    match s {
        None | Some("fd") => Ok(Bins::FreedmanDiaconis),
        Some(t) => t
            .parse()
            .map(Bins::Count)
            .map_err(|_| invalid(format!("--bins expects `fd` or a count, got {t:?}"))),
    }
}

fn experiment_from(a: &McArgs, seed: u64) -> Result<Experiment> {
    let p = Params::from(&a.params, 1000);
    let k = a.k.unwrap_or(1);
    let rr = |mut c: RayleighRitzConfig| {
        if let Some(v) = a.basis_size {
            c.basis_size = v;
        }
        if let Some(v) = a.mesh {
            c.mesh = v;
        }
        if let Some(v) = a.left {
            c.left = v;
        }
        if let Some(v) = a.right {
            c.right = v;
        }
        c
    };
    let (kind, default_samples) = match a.experiment {
        McKind::AiryRr => (ExperimentKind::AiryRr { config: rr(RayleighRitzConfig::airy(p.beta)), k }, 100_000),
        McKind::BesselRr => (
            ExperimentKind::BesselRr { config: rr(RayleighRitzConfig::bessel(p.beta, p.a)) },
            10_000,
        ),
        McKind::SoftEdge => {
            let model = match a.model.unwrap_or(ModelName::Hermite) {
                ModelName::Hermite => SoftModel::Hermite,
                ModelName::LaguerreL => SoftModel::LaguerreL,
                ModelName::LaguerreM => SoftModel::LaguerreM,
                ModelName::Jacobi => return Err(invalid("the Jacobi model has no soft edge here")),
            };
            (ExperimentKind::SoftEdgeMatrix { model, n: p.n, beta: p.beta, a: p.a, k }, 1000)
        }
        McKind::HardEdge => {
            let model = match a.model.unwrap_or(ModelName::LaguerreL) {
                ModelName::LaguerreL => HardModel::LaguerreL,
                ModelName::LaguerreM => HardModel::LaguerreM,
                ModelName::Jacobi => HardModel::Jacobi,
                ModelName::Hermite => return Err(invalid("the Hermite model has no hard edge")),
            };
            (ExperimentKind::HardEdgeMatrix { model, n: p.n, beta: p.beta, a: p.a, b: p.b, k }, 1000)
        }
    };
    Ok(Experiment::new(kind, a.samples.unwrap_or(default_samples), seed))
}

fn cmd_mc(r: Resolved<McArgs>) -> Result<i32> {
    let Some((a, rc)) = r else { return Ok(0) };
    let exp = experiment_from(&a, rc.seed)?;
    let bins = parse_bins(a.bins.as_deref())?;
    let dir = rc.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir)?;
    let res = run_mc(&exp, rc.workers, &bins)?;
    let raw = export(&res, &dir, ExportFormat::RawCsv)?;
    let hist = export(&res, &dir, ExportFormat::HistogramCsv)?;
    let json = export(&res, &dir, ExportFormat::Json)?;
    println!(
        "samples={} failures={} mean={:.6} sd={:.6}",
        res.raw.len(),
        res.failures.len(),
        res.histogram.mean,
        res.histogram.sd
    );
    for p in [raw, hist, json] {
        println!("{}", p.display());
    }
    Ok(0)
}

fn cmd_verify(r: Resolved<VerifyArgs>) -> Result<i32> {
    let Some((a, rc)) = r else { return Ok(0) };
    let suite: Suite = a.suite.parse()?;
    let mut opts = VerifyOptions {
        seed: rc.seed,
        workers: rc.workers,
        ..VerifyOptions::default()
    };
    if let Some(s) = a.samples {
        opts.samples = s;
    }
    let report = run_suite(suite, &opts)?;
    let mut w = sink(&rc.out)?;
    for c in &report.checks {
        writeln!(w, "{c}")?;
    }
    let ok = report.passed();
    writeln!(w, "suite {suite}: {}", if ok { "PASS" } else { "FAIL" })?;
    w.flush()?;
    Ok(if ok { 0 } else { 1 })
}

fn cmd_diagnose(r: Resolved<DiagnoseArgs>) -> Result<i32> {
    let Some((a, rc)) = r else { return Ok(0) };
    let p = Params::from(&a.params, 100_000);
    let (k, l) = (a.k.unwrap_or(2), a.l.unwrap_or(1));
    let m = scaled(a.scaling, a.model, &p, rc.seed, None)?;
    let profiles = smoothness_profiles(&m, k, l, a.mask_tol.unwrap_or(MASK_TOL))?;
    write_profiles_csv(&profiles, sink(&rc.out)?)?;
    let rep = report_from(k, l, &profiles);
    eprintln!(
        "roughness v_{k}={:.6} v_{l}={:.6} ratio={:.6} support={}",
        rep.roughness_k, rep.roughness_l, rep.roughness_ratio, rep.support
    );
    if p.beta.is_infinite() {
        eprintln!("beta = inf: no noise, all profiles are smooth; ordering not tested");
    } else {
        let ok = rep.ratio_smoother(1.0);
        eprintln!("ratio smoother than both vectors: {}", if ok { "yes" } else { "no" });
    }
    Ok(0)
}
