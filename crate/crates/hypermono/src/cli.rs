//! Command-line front end: configuration, the commands and the files they write.
//!
//! Every command resolves a [`RunConfig`] from an optional TOML file overlaid with flags,
//! builds the representation it needs and writes its outputs into `--out`.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::dynamics::{self, SampleKind};
use crate::error::{Error, Result};
use crate::fuchsian::{self, FuchsianModel, OrbifoldSignature, OrderConvention};
use crate::hyperparams::{self, HypergeomParams};
use crate::linalg::Mat;
use crate::monodromy::{self, FormKind, MonodromyRep};
use crate::symplectic;

#[derive(Parser, Debug)]
#[command(name = "hypermono", version, about = "Hypergeometric monodromy in Sp4: classification, certificates, limit sets, Lyapunov exponents")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Assumption A/B verdicts, Hodge numbers and the orbifold signature.
    Classify(Opts),
    /// Levelt matrices, invariant form and reflections as JSON.
    Monodromy(Opts),
    /// Log-Anosov scatter over a word ball and the fitted (ε̂, ĉ).
    Certify(Opts),
    /// Limit-curve samples as CSV and a projected SVG plot.
    Limitset(Opts),
    /// Monte Carlo Lyapunov spectrum along the geodesic flow.
    Lyapunov(Opts),
    /// Coverage of the Lagrangian limit set by the orbit of a cusp Lagrangian.
    Minimality(Opts),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Classify(_) => "classify",
            Command::Monodromy(_) => "monodromy",
            Command::Certify(_) => "certify",
            Command::Limitset(_) => "limitset",
            Command::Lyapunov(_) => "lyapunov",
            Command::Minimality(_) => "minimality",
        }
    }

    pub fn opts(&self) -> &Opts {
        match self {
            Command::Classify(o)
            | Command::Monodromy(o)
            | Command::Certify(o)
            | Command::Limitset(o)
            | Command::Lyapunov(o)
            | Command::Minimality(o) => o,
        }
    }
}

#[derive(Args, Debug, Clone, Default)]
pub struct Opts {
    /// TOML file with any of the options below; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// "ALPHA;BETA" as comma separated fractions, or "mirror-quintic".
    #[arg(long)]
    pub params: Option<String>,
    /// Triangle signature such as "2,3,inf"; uses its uniformizing rep instead of --params.
    #[arg(long)]
    pub triangle: Option<String>,
    /// Symmetric power applied to the triangle rep.
    #[arg(long)]
    pub sym: Option<usize>,
    #[arg(long = "L")]
    pub l: Option<usize>,
    #[arg(long)]
    pub gap_min: Option<f64>,
    #[arg(long = "T")]
    pub t: Option<f64>,
    #[arg(long)]
    pub ntraj: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long)]
    pub radius: Option<f64>,
    /// 2x4 projection for the SVG, eight comma separated numbers row by row.
    #[arg(long)]
    pub proj: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_parser = parse_convention)]
    pub orbifold_order: Option<OrderConvention>,
    #[arg(long)]
    pub no_timestamp: bool,
    /// Euler characteristic for the sum-formula comparison (default: that of the orbifold).
    #[arg(long)]
    pub chi: Option<f64>,
    /// Sum of the two extension degrees on the right of the sum formula.
    #[arg(long)]
    pub rhs: Option<f64>,
}

fn parse_convention(s: &str) -> std::result::Result<OrderConvention, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(untagged)]
pub enum ParamSpec {
    Joined(String),
    Split { alpha: String, beta: String },
}

impl ParamSpec {
    pub fn resolve(&self) -> Result<HypergeomParams> {
        match self {
            ParamSpec::Joined(s) if s.trim() == "mirror-quintic" => Ok(HypergeomParams::mirror_quintic()),
            ParamSpec::Joined(s) => {
                let (a, b) = s
                    .split_once(';')
                    .ok_or_else(|| Error::invalid(format!("params must look like 'ALPHA;BETA', got '{s}'")))?;
                HypergeomParams::parse(a.trim(), b.trim())
            }
            ParamSpec::Split { alpha, beta } => HypergeomParams::parse(alpha.trim(), beta.trim()),
        }
    }
}

/// Contents of a `--config` file.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub params: Option<ParamSpec>,
    pub model: Option<ModelSection>,
    #[serde(rename = "L")]
    pub l: Option<usize>,
    pub gap_min: Option<f64>,
    #[serde(rename = "T")]
    pub t: Option<f64>,
    pub ntraj: Option<usize>,
    pub seed: Option<u64>,
    pub depth: Option<usize>,
    pub radius: Option<f64>,
    pub proj: Option<Vec<f64>>,
    pub out: Option<PathBuf>,
    pub orbifold_order: Option<String>,
    pub no_timestamp: Option<bool>,
    pub chi: Option<f64>,
    pub rhs: Option<f64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub triangle: Option<String>,
    pub sym: Option<usize>,
}

/// Fully resolved options of one run.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub params: Option<ParamSpec>,
    pub triangle: Option<String>,
    pub sym: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub gap_min: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub ntraj: usize,
    pub seed: Option<u64>,
    pub depth: usize,
    pub radius: f64,
    pub proj: [f64; 8],
    pub out: PathBuf,
    pub orbifold_order: OrderConvention,
    pub no_timestamp: bool,
    pub chi: Option<f64>,
    pub rhs: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            params: None,
            triangle: None,
            sym: 1,
            l: 10,
            gap_min: 2.0,
            t: 1.0e4,
            ntraj: 16,
            seed: None,
            depth: 8,
            radius: 0.05,
            proj: [1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
            out: PathBuf::from("hypermono-out"),
            orbifold_order: OrderConvention::Gl,
            no_timestamp: false,
            chi: None,
            rhs: None,
        }
    }
}

fn parse_proj(v: &[f64]) -> Result<[f64; 8]> {
    let arr: [f64; 8] = v.try_into().map_err(|_| Error::invalid(format!("projection needs 8 numbers, got {}", v.len())))?;
    if arr.iter().any(|x| !x.is_finite()) {
        return Err(Error::invalid("projection entries must be finite"));
    }
    Ok(arr)
}

impl RunConfig {
    pub fn from_opts(o: &Opts) -> Result<Self> {
        let file = match &o.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
                toml::from_str::<FileConfig>(&text).map_err(|e| Error::invalid(format!("bad config {}: {e}", path.display())))?
            }
            None => FileConfig::default(),
        };
        let mut c = RunConfig::default();
        let model = file.model.unwrap_or_default();
        c.params = o.params.clone().map(ParamSpec::Joined).or(file.params);
        c.triangle = o.triangle.clone().or(model.triangle);
        c.sym = o.sym.or(model.sym).unwrap_or(c.sym);
        c.l = o.l.or(file.l).unwrap_or(c.l);
        c.gap_min = o.gap_min.or(file.gap_min).unwrap_or(c.gap_min);
        c.t = o.t.or(file.t).unwrap_or(c.t);
        c.ntraj = o.ntraj.or(file.ntraj).unwrap_or(c.ntraj);
        c.seed = o.seed.or(file.seed);
        c.depth = o.depth.or(file.depth).unwrap_or(c.depth);
        c.radius = o.radius.or(file.radius).unwrap_or(c.radius);
        if let Some(p) = &o.proj {
            let v = p
                .split(',')
                .map(|x| x.trim().parse::<f64>().map_err(|_| Error::invalid(format!("bad projection entry '{x}'"))))
                .collect::<Result<Vec<_>>>()?;
            c.proj = parse_proj(&v)?;
        } else if let Some(v) = &file.proj {
            c.proj = parse_proj(v)?;
        }
        c.out = o.out.clone().or(file.out).unwrap_or(c.out);
        c.orbifold_order = match (o.orbifold_order, &file.orbifold_order) {
            (Some(v), _) => v,
            (None, Some(s)) => s.parse()?,
            (None, None) => c.orbifold_order,
        };
        c.no_timestamp = o.no_timestamp || file.no_timestamp.unwrap_or(false);
        c.chi = o.chi.or(file.chi);
        c.rhs = o.rhs.or(file.rhs);
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        if !(self.gap_min > 0.0) || !self.gap_min.is_finite() {
            return Err(Error::invalid("gap-min must be positive"));
        }
        if !(self.t > 0.0) || !self.t.is_finite() {
            return Err(Error::invalid("T must be positive"));
        }
        if self.ntraj == 0 {
            return Err(Error::invalid("ntraj must be positive"));
        }
        if !(self.radius > 0.0 && self.radius < 1.0) {
            return Err(Error::invalid("radius must lie in (0, 1)"));
        }
        if self.sym == 0 {
            return Err(Error::invalid("sym must be at least 1"));
        }
        if self.params.is_some() && self.triangle.is_some() {
            return Err(Error::invalid("give either params or a triangle model, not both"));
        }
        Ok(())
    }

    fn hypergeometric(&self) -> Result<HypergeomParams> {
        self.params.as_ref().ok_or_else(|| Error::invalid("this command needs --params"))?.resolve()
    }

    fn seed(&self) -> Result<u64> {
        self.seed.ok_or_else(|| Error::invalid("this command is stochastic and needs --seed"))
    }
}

/// The representation a dynamical command runs on, with its base orbifold.
pub struct Source {
    pub label: String,
    pub rep: MonodromyRep,
    pub model: Option<FuchsianModel>,
    pub params: Option<HypergeomParams>,
}

impl Source {
    fn model(&self) -> Result<&FuchsianModel> {
        self.model.as_ref().ok_or_else(|| Error::invalid(format!("{} has no hyperbolic base orbifold", self.label)))
    }
}

/// Rank-4 symplectic monodromy is moved to a symplectic basis; triangle reps are used as is.
pub fn resolve_source(c: &RunConfig) -> Result<Source> {
    if let Some(t) = &c.triangle {
        let sig: OrbifoldSignature = t.parse()?;
        let model = fuchsian::triangle_group(&sig)?;
        let rep = if c.sym == 1 { model.rep() } else { model.symmetric_power_rep(c.sym) };
        let label = if c.sym == 1 { format!("triangle({sig})") } else { format!("Sym^{} triangle({sig})", c.sym) };
        return Ok(Source { label, rep, model: Some(model), params: None });
    }
    let p = c.hypergeometric()?;
    let mut rep = MonodromyRep::from_params(&p)?;
    if rep.n == 4 && rep.form.as_ref().is_some_and(|f| f.kind == FormKind::Antisymmetric) {
        rep = symplectic::standardize(&rep)?.0;
    }
    let model = match fuchsian::orbifold_signature(&p, c.orbifold_order) {
        Ok(sig) if sig.chi() < 0.0 => Some(fuchsian::triangle_group(&sig)?),
        _ => None,
    };
    Ok(Source { label: p.to_string(), rep, model, params: Some(p) })
}

/// Shortest decimal that reads back as the same double, padded to 17 significant digits.
pub fn fmt17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

fn rows(m: &Mat) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| Error::invalid(format!("cannot create {}: {e}", dir.display())))?;
    }
    std::fs::write(path, contents).map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display())))
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::numerical(format!("cannot serialize: {e}")))?;
    s.push('\n');
    Ok(s)
}

/// Runs one command, writing files under `out` and a human summary to `w`.
pub fn execute(cmd: &Command, w: &mut dyn Write) -> Result<()> {
    let c = RunConfig::from_opts(cmd.opts())?;
    let text = match cmd {
        Command::Classify(_) => cmd_classify(&c)?,
        Command::Monodromy(_) => cmd_monodromy(&c)?,
        Command::Certify(_) => cmd_certify(&c)?,
        Command::Limitset(_) => cmd_limitset(&c)?,
        Command::Lyapunov(_) => cmd_lyapunov(&c)?,
        Command::Minimality(_) => cmd_minimality(&c)?,
    };
    w.write_all(text.as_bytes()).map_err(|e| Error::invalid(format!("cannot write output: {e}")))
}

/// Parses arguments, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    match execute(&cli.command, &mut stdout.lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("hypermono {}: {e}", cli.command.name());
            e.exit_code()
        }
    }
}

#[derive(Serialize)]
struct ClassifyReport {
    params: HypergeomParams,
    rank: usize,
    self_dual: bool,
    hodge_numbers: Vec<usize>,
    assumption_a: Option<hyperparams::AssumptionACertificate>,
    assumption_b: Option<hyperparams::AssumptionBCertificate>,
    orbifold_order: OrderConvention,
    orbifold_signature: Option<String>,
    orbifold_chi: Option<f64>,
}

pub fn cmd_classify(c: &RunConfig) -> Result<String> {
    let p = c.hypergeometric()?;
    let hodge = hyperparams::hodge_numbers(&p);
    let a = if p.rank() == 4 && p.self_dual() { Some(hyperparams::satisfies_assumption_a(&p)?) } else { None };
    let b = if p.rank() == 5 && p.self_dual() { Some(hyperparams::satisfies_assumption_b(&p)?) } else { None };
    let sig = fuchsian::orbifold_signature(&p, c.orbifold_order).ok();
    let report = ClassifyReport {
        params: p.clone(),
        rank: p.rank(),
        self_dual: p.self_dual(),
        hodge_numbers: hodge.clone(),
        assumption_a: a.clone(),
        assumption_b: b.clone(),
        orbifold_order: c.orbifold_order,
        orbifold_signature: sig.map(|s| s.to_string()),
        orbifold_chi: sig.map(|s| s.chi()),
    };
    write_file(&c.out.join("classify.json"), &to_json(&report)?)?;
    let mut t = String::new();
    let _ = writeln!(t, "{p}");
    let _ = writeln!(t, "rank {}  self-dual {}  hodge {:?}", p.rank(), p.self_dual(), hodge);
    if let Some(a) = &a {
        let _ = writeln!(t, "assumption_a: {}", a.holds);
        let _ = writeln!(t, "  alpha {:?}  beta {:?}", a.alpha_class.tag, a.beta_class.tag);
        for f in &a.failed {
            let _ = writeln!(t, "  failed: {f}");
        }
    }
    if let Some(b) = &b {
        let _ = writeln!(t, "assumption_b: {}", b.holds);
    }
    match sig {
        Some(s) => {
            let _ = writeln!(t, "orbifold {} with chi {}", s, s.chi());
        }
        None => {
            let _ = writeln!(t, "orbifold: none");
        }
    }
    Ok(t)
}

#[derive(Serialize)]
struct MonodromyBundle {
    params: HypergeomParams,
    rank: usize,
    h0: Vec<Vec<f64>>,
    h1: Vec<Vec<f64>>,
    hinf: Vec<Vec<f64>>,
    char_poly_alpha: Vec<f64>,
    char_poly_beta: Vec<f64>,
    rank_h1_minus_id: usize,
    h1_minus_id_squared_zero: bool,
    form_kind: Option<FormKind>,
    form: Option<Vec<Vec<f64>>>,
    reflections: Option<[Vec<Vec<f64>>; 3]>,
}

pub fn cmd_monodromy(c: &RunConfig) -> Result<String> {
    let p = c.hypergeometric()?;
    let rep = MonodromyRep::from_params(&p)?;
    let polys = monodromy::char_polys(&p);
    let h1 = monodromy::monodromy_at_one(&rep)?;
    let bundle = MonodromyBundle {
        params: p.clone(),
        rank: rep.n,
        h0: rows(&rep.h0),
        h1: rows(&rep.h1),
        hinf: rows(&rep.hinf),
        char_poly_alpha: polys.a_real(),
        char_poly_beta: polys.b_real(),
        rank_h1_minus_id: h1.rank_h1_minus_id,
        h1_minus_id_squared_zero: h1.square_zero,
        form_kind: rep.form.as_ref().map(|f| f.kind),
        form: rep.form.as_ref().map(|f| rows(&f.j)),
        reflections: rep.reflections.as_ref().map(|(a, b, r)| [rows(a), rows(b), rows(r)]),
    };
    write_file(&c.out.join("monodromy.json"), &to_json(&bundle)?)?;
    let mut t = String::new();
    let _ = writeln!(t, "{p}");
    let _ = writeln!(t, "rank(h1 - id) = {}  (h1 - id)^2 = 0: {}", h1.rank_h1_minus_id, h1.square_zero);
    let _ = writeln!(t, "invariant form: {:?}", rep.form.as_ref().map(|f| f.kind));
    Ok(t)
}

#[derive(Serialize)]
struct CertifyReport {
    source: String,
    orbifold: String,
    #[serde(rename = "L")]
    l: usize,
    points: usize,
    epsilon: f64,
    c: f64,
}

pub fn cmd_certify(c: &RunConfig) -> Result<String> {
    let src = resolve_source(c)?;
    let model = src.model()?;
    let cert = dynamics::anosov_certificate(&src.rep, model, c.l)?;
    let mut csv = String::from("dist,gap,word\n");
    for p in &cert.scatter {
        let _ = writeln!(csv, "{},{},{}", fmt17(p.dist), fmt17(p.gap), p.word);
    }
    write_file(&c.out.join("scatter.csv"), &csv)?;
    let report = CertifyReport {
        source: src.label.clone(),
        orbifold: model.sig.to_string(),
        l: c.l,
        points: cert.scatter.len(),
        epsilon: cert.epsilon,
        c: cert.c,
    };
    write_file(&c.out.join("certificate.json"), &to_json(&report)?)?;
    Ok(format!(
        "{}\norbifold {}  L = {}  points {}\nepsilon {}  c {}\n",
        src.label,
        model.sig,
        c.l,
        cert.scatter.len(),
        fmt17(cert.epsilon),
        fmt17(cert.c)
    ))
}

fn unix_time() -> u64 {
    std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

/// Scatter plot of the projected samples; attracting points black, cusp points red.
pub fn limit_svg(samples: &[dynamics::LimitSample], proj: &[f64; 8], timestamp: Option<u64>) -> String {
    let size = 600.0;
    let margin = 20.0;
    let pts: Vec<(f64, f64, SampleKind)> = samples
        .iter()
        .map(|s| {
            let x = &s.point;
            let px: f64 = (0..4).map(|i| proj[i] * x[i]).sum();
            let py: f64 = (0..4).map(|i| proj[4 + i] * x[i]).sum();
            (px, py, s.kind)
        })
        .collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for (x, y, _) in &pts {
        x0 = x0.min(*x);
        x1 = x1.max(*x);
        y0 = y0.min(*y);
        y1 = y1.max(*y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-12);
    let scale = (size - 2.0 * margin) / span;
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#);
    let _ = writeln!(
        s,
        "<!-- projection rows [{}] [{}] applied to unit representatives -->",
        proj[..4].iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "),
        proj[4..].iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
    );
    if let Some(t) = timestamp {
        let _ = writeln!(s, "<!-- generated at unix time {t} -->");
    }
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (x, y, kind) in &pts {
        let cx = margin + (x - x0) * scale;
        let cy = size - margin - (y - y0) * scale;
        let (r, fill) = match kind {
            SampleKind::Attracting => (1.2, "black"),
            SampleKind::Cusp => (2.5, "red"),
        };
        let _ = writeln!(s, r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="{r}" fill="{fill}"/>"#);
    }
    s.push_str("</svg>\n");
    s
}

pub fn cmd_limitset(c: &RunConfig) -> Result<String> {
    let src = resolve_source(c)?;
    let samples = dynamics::limit_curve_samples(&src.rep, c.l, c.gap_min)?;
    let mut csv = String::from("x0,x1,x2,x3,gap,kind\n");
    for s in &samples {
        if s.point.len() != 4 {
            return Err(Error::invalid("limit-set output needs a rank-4 representation"));
        }
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{}",
            fmt17(s.point[0]),
            fmt17(s.point[1]),
            fmt17(s.point[2]),
            fmt17(s.point[3]),
            fmt17(s.gap),
            match s.kind {
                SampleKind::Attracting => "attracting",
                SampleKind::Cusp => "cusp",
            }
        );
    }
    write_file(&c.out.join("limitset.csv"), &csv)?;
    let stamp = (!c.no_timestamp).then(unix_time);
    write_file(&c.out.join("limitset.svg"), &limit_svg(&samples, &c.proj, stamp))?;
    let cusps = samples.iter().filter(|s| s.kind == SampleKind::Cusp).count();
    Ok(format!("{}\nL = {}  gap_min {}  samples {} ({} cusp)\n", src.label, c.l, c.gap_min, samples.len(), cusps))
}

#[derive(Serialize)]
struct LyapunovReport {
    source: String,
    orbifold: String,
    #[serde(rename = "T")]
    t: f64,
    ntraj: usize,
    seed: u64,
    spectrum: Vec<f64>,
    stderr: Vec<f64>,
    positive: Vec<f64>,
    trajectory_time: f64,
    discarded: usize,
    sum_formula: dynamics::SumFormulaReport,
}

pub fn cmd_lyapunov(c: &RunConfig) -> Result<String> {
    let seed = c.seed()?;
    let src = resolve_source(c)?;
    let model = src.model()?;
    let lyap = dynamics::lyapunov_mc(&src.rep, model, c.t, c.ntraj, seed)?;
    let chi = c.chi.unwrap_or_else(|| model.sig.chi());
    let sum = dynamics::sum_formula_report(&lyap, chi, c.rhs)?;
    let report = LyapunovReport {
        source: src.label.clone(),
        orbifold: model.sig.to_string(),
        t: c.t,
        ntraj: c.ntraj,
        seed,
        spectrum: lyap.spectrum.clone(),
        stderr: lyap.stderr.clone(),
        positive: lyap.positive_pair(),
        trajectory_time: lyap.trajectory_time,
        discarded: lyap.discarded,
        sum_formula: sum,
    };
    write_file(&c.out.join("lyapunov.json"), &to_json(&report)?)?;
    let series = dynamics::lyapunov_series(&src.rep, model, c.t, c.ntraj, seed, 200)?;
    let mut csv = String::from("time");
    for k in 0..src.rep.n {
        let _ = write!(csv, ",lambda{}", k + 1);
    }
    csv.push('\n');
    for (t, est) in &series {
        csv.push_str(&fmt17(*t));
        for e in est {
            csv.push(',');
            csv.push_str(&fmt17(*e));
        }
        csv.push('\n');
    }
    write_file(&c.out.join("lyapunov_series.csv"), &csv)?;
    let mut t = format!("{}\nT = {}  trajectories {}  seed {}\n", src.label, c.t, c.ntraj, seed);
    for (k, (l, e)) in lyap.spectrum.iter().zip(&lyap.stderr).enumerate() {
        let _ = writeln!(t, "lambda{} = {} +- {}", k + 1, fmt17(*l), fmt17(*e));
    }
    Ok(t)
}

pub fn cmd_minimality(c: &RunConfig) -> Result<String> {
    let src = resolve_source(c)?;
    let opts = dynamics::MinimalityOptions { gap_min: c.gap_min, ..Default::default() };
    let r = dynamics::minimality_scan(&src.rep, c.depth, c.radius, &opts)?;
    write_file(&c.out.join("minimality.json"), &to_json(&r)?)?;
    Ok(format!("{}\ndepth {}  radius {}  coverage {}\n", src.label, c.depth, c.radius, fmt17(r.coverage)))
}
