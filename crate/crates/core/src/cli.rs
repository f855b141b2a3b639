//! Command-line front end. Every command prints one JSON document (or CSV for
//! scans) on stdout; failures print `{"error": code, "message": ...}` on
//! stderr with exit code 2 (bad input) or 3 (trivial monodromy).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{
    min_genus_bound, slice_check_general, slice_check_simple, span_check_general_n, surface_betti, BoundsError,
    SliceBetti, SpanBetti, SurfaceDescriptor, SurfacePiece, Verdict,
};
use crate::chain_complex::{morse_estimate_check_over, twisted_betti, untwisted_betti, ChainError, GroupRingComplex};
use crate::invariants::{
    signature_scan, twisted_nullity, GeneralizedSeifertData, InvariantError, Mode, ScanResult, ScanSource,
    SignatureSample,
};
use crate::link::{
    braid_to_diagram, parse_braid, parse_coloring, parse_pd, seifert_from_diagram, ColoredLinkDiagram, LinkError,
    SeifertMatrix,
};
use crate::local_system::{comparison_field, CoefficientField, LocalSystemError, MonodromyAssignment};
use crate::par::Execution;

pub const CONVENTION: &str = "positive-trefoil:-2";

#[derive(Debug, Parser)]
#[command(name = "twisig", version, about = "Colored link signatures, twisted nullities and span/slice bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Signature and nullity at one weight tuple.
    Sig {
        #[command(flatten)]
        link: LinkInput,
        #[command(flatten)]
        zeta: ZetaArgs,
    },
    /// Signature and nullity on a grid of weights.
    Scan {
        #[command(flatten)]
        link: LinkInput,
        #[arg(long, default_value_t = 12)]
        grid: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, value_enum, default_value_t = ExecArg::Parallel)]
        execution: ExecArg,
    },
    /// Twisted nullity from the Fox complex of a diagram.
    Nullity {
        #[command(flatten)]
        link: LinkInput,
        #[arg(long)]
        zeta: String,
    },
    /// Betti numbers of a group-ring complex (JSON), twisted and/or untwisted.
    Homology {
        #[arg(long)]
        complex: String,
        #[arg(long)]
        zeta: Option<String>,
        #[arg(long)]
        field: Option<String>,
    },
    /// Comparison field for a weight tuple and the Morse-type estimate.
    Estimate {
        #[arg(long)]
        complex: Option<String>,
        #[arg(long)]
        zeta: String,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Span and slice inequalities; exit 1 when one is violated.
    Verify(VerifyArgs),
    /// Genus lower bound from the span inequality.
    Bound {
        #[command(flatten)]
        link: LinkInput,
        #[arg(long)]
        zeta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        sigma: Option<i64>,
        #[arg(long)]
        nullity: Option<i64>,
        #[arg(long, default_value_t = 1)]
        boundary: u64,
        /// Grid searched for the best weight when none is given.
        #[arg(long, default_value_t = 24)]
        grid: u32,
    },
}

/// Link or matrix input. Values starting with `@` are read from that file.
#[derive(Debug, Args, Default)]
struct LinkInput {
    /// PD code, e.g. `[[1,4,2,5],[3,6,4,1],[5,2,6,3]]`.
    #[arg(long, group = "source")]
    pd: Option<String>,
    /// Braid word, e.g. `1,1,1` or `s1 s2^-1`.
    #[arg(long, group = "source", allow_hyphen_values = true)]
    braid: Option<String>,
    /// Seifert matrix JSON `{"V": [[...]]}`.
    #[arg(long, group = "source")]
    matrix: Option<String>,
    /// Generalized Seifert data JSON `{"m": k, "matrices": {"+-": ...}}`.
    #[arg(long, group = "source")]
    generalized: Option<String>,
    /// `component:color` pairs, e.g. `0:1,1:2`; default is one color.
    #[arg(long)]
    coloring: Option<String>,
    /// Color every component separately.
    #[arg(long)]
    by_component: bool,
}

#[derive(Debug, Args)]
struct ZetaArgs {
    /// Weights as fractions of a turn, one per color: `1/2` or `1/3,2/5`.
    #[arg(long)]
    zeta: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    link: LinkInput,
    #[arg(long)]
    zeta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<i64>,
    #[arg(long)]
    nullity: Option<i64>,
    /// Surface pieces JSON `[{"genus": 0, "boundary": 1}]`.
    #[arg(long)]
    surface: Option<String>,
    /// Span Betti data JSON `{"n", "r", "relative", "absolute"}`.
    #[arg(long)]
    betti: Option<String>,
    /// Slice Betti data JSON `{"n", "r", "lambda", "complement"}`.
    #[arg(long)]
    slice_betti: Option<String>,
    /// `dim H_n(Λ; P)` for the simple slice inequality.
    #[arg(long)]
    lambda_betti: Option<u64>,
    /// Comparison field when no weight is given (`Q`, `F_2`, ...).
    #[arg(long)]
    field: Option<String>,
    #[arg(long, value_enum, default_value_t = Inequality::All)]
    inequality: Inequality,
    /// Whole request as JSON `{"sigma", "nullity", "surface", "P"}`.
    #[arg(long)]
    input: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ExecArg {
    Serial,
    Parallel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Inequality {
    All,
    Null2,
    Null3,
    SliceSimple,
    Slice,
}

#[derive(Debug)]
enum CliError {
    Parse(String),
    Trivial,
    Input(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> (&'static str, i32) {
        match self {
            CliError::Parse(_) => ("parse", 2),
            CliError::Trivial => ("trivial-monodromy", 3),
            CliError::Input(_) => ("invalid-input", 2),
            CliError::Io(_) => ("io", 2),
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Parse(m) | CliError::Input(m) | CliError::Io(m) => m.clone(),
            CliError::Trivial => InvariantError::TrivialMonodromy.to_string(),
        }
    }
}

impl From<LinkError> for CliError {
    fn from(e: LinkError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<LocalSystemError> for CliError {
    fn from(e: LocalSystemError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<ChainError> for CliError {
    fn from(e: ChainError) -> Self {
        match e {
            ChainError::Json(m) => CliError::Parse(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::TrivialMonodromy => CliError::Trivial,
            InvariantError::Link(l) => l.into(),
            InvariantError::Chain(c) => c.into(),
            InvariantError::LocalSystem(l) => l.into(),
            InvariantError::Malformed(m) => CliError::Parse(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Inline text, or the contents of the file after `@`.
fn load(arg: &str) -> CliResult<String> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(arg: &str, what: &str) -> CliResult<T> {
    serde_json::from_str(&load(arg)?).map_err(|e| CliError::Parse(format!("{what}: {e}")))
}

impl LinkInput {
    fn diagram(&self) -> CliResult<Option<ColoredLinkDiagram>> {
        let d = if let Some(pd) = &self.pd {
            parse_pd(&load(pd)?)?.to_diagram()?
        } else if let Some(b) = &self.braid {
            braid_to_diagram(&parse_braid(&load(b)?, None)?)
        } else {
            return Ok(None);
        };
        let colored = match (&self.coloring, self.by_component) {
            (Some(text), _) => {
                let colors = parse_coloring(text, d.component_count())?;
                ColoredLinkDiagram::new(d, colors)?
            }
            (None, true) => ColoredLinkDiagram::by_component(d),
            (None, false) => ColoredLinkDiagram::monochrome(d),
        };
        Ok(Some(colored))
    }

    fn require_diagram(&self) -> CliResult<ColoredLinkDiagram> {
        self.diagram()?.ok_or_else(|| CliError::Input("a diagram is required (--pd or --braid)".into()))
    }

    /// Seifert data for signature computations.
    fn source(&self) -> CliResult<Option<ScanSource>> {
        if let Some(m) = &self.matrix {
            let v: SeifertMatrix = parse_json(m, "Seifert matrix")?;
            return Ok(Some(ScanSource::Seifert(SeifertMatrix::new(v.v)?)));
        }
        if let Some(g) = &self.generalized {
            return Ok(Some(ScanSource::Generalized(GeneralizedSeifertData::from_json(&load(g)?)?)));
        }
        match self.diagram()? {
            None => Ok(None),
            Some(d) if d.m() > 1 => Err(InvariantError::NeedsGeneralizedData(d.m()).into()),
            Some(d) => Ok(Some(ScanSource::Seifert(seifert_from_diagram(&d.diagram)?))),
        }
    }

    fn require_source(&self) -> CliResult<ScanSource> {
        self.source()?
            .ok_or_else(|| CliError::Input("an input is required (--pd, --braid, --matrix or --generalized)".into()))
    }
}

fn sample_json(s: &SignatureSample, labels: &[String]) -> Value {
    json!({ "sigma": s.sigma, "nullity": s.nullity, "zeta": labels, "convention": CONVENTION })
}

fn cmd_sig(link: &LinkInput, z: &ZetaArgs) -> CliResult<Value> {
    let source = link.require_source()?;
    let exact: MonodromyAssignment = z.zeta.parse()?;
    let labels: Vec<String> = exact.weights().iter().map(|w| w.to_string()).collect();
    let zeta = if z.mode == ModeArg::Float { exact.to_float() } else { exact };
    let sample = source.evaluate(&zeta)?;
    Ok(sample_json(&sample, &labels))
}

fn scan_csv(scan: &ScanResult, m: usize) -> String {
    let mut out = String::new();
    let header: Vec<String> = (1..=m).map(|i| format!("zeta_{i}")).collect();
    out.push_str(&header.join(","));
    out.push_str(",sigma,nullity\n");
    for row in &scan.rows {
        out.push_str(&row.sample.zeta.join(","));
        out.push_str(&format!(",{},{}\n", row.sample.sigma, row.sample.nullity));
    }
    out
}

fn cmd_scan(link: &LinkInput, grid: u32, mode: ModeArg, format: Format, exec: ExecArg) -> CliResult<String> {
    let source = link.require_source()?;
    let exec = match exec {
        ExecArg::Serial => Execution::Serial,
        ExecArg::Parallel => Execution::Parallel,
    };
    let scan = signature_scan(&source, grid, mode.into(), exec)?;
    Ok(match format {
        Format::Csv => scan_csv(&scan, source.colors()),
        Format::Json => to_line(&serde_json::to_value(&scan).expect("serializable")),
    })
}

fn cmd_nullity(link: &LinkInput, zeta: &str) -> CliResult<Value> {
    let d = link.require_diagram()?;
    let z: MonodromyAssignment = zeta.parse()?;
    let nullity = twisted_nullity(&d, &z)?;
    Ok(json!({ "nullity": nullity, "zeta": z.to_string(), "method": "fox" }))
}

fn cmd_homology(complex: &str, zeta: Option<&str>, field: Option<&str>) -> CliResult<Value> {
    let c = GroupRingComplex::from_json(&load(complex)?)?;
    if zeta.is_none() && field.is_none() {
        return Err(CliError::Input("give --zeta, --field or both".into()));
    }
    let mut out = serde_json::Map::new();
    if let Some(z) = zeta {
        let z: MonodromyAssignment = z.parse()?;
        out.insert("twisted".into(), serde_json::to_value(twisted_betti(&c, &z)?).expect("serializable"));
    }
    if let Some(f) = field {
        let f: CoefficientField = f.parse().map_err(CliError::Parse)?;
        out.insert("untwisted".into(), serde_json::to_value(untwisted_betti(&c, &f)?).expect("serializable"));
    }
    Ok(Value::Object(out))
}

/// Returns the report and whether every estimate held.
fn cmd_estimate(complex: Option<&str>, zeta: &str, r: Option<usize>, n: Option<usize>) -> CliResult<(Value, bool)> {
    let z: MonodromyAssignment = zeta.parse()?;
    let choice = comparison_field(&z);
    let mut out = serde_json::to_value(&choice).expect("serializable");
    let Some(complex) = complex else {
        return Ok((out, true));
    };
    let c = GroupRingComplex::from_json(&load(complex)?)?;
    let top = c.ranks.len().saturating_sub(1);
    let windows: Vec<(usize, usize)> = match (r, n) {
        (Some(r), Some(n)) => vec![(r, n)],
        (Some(r), None) => (0..).take_while(|n| r + 2 * n <= top).map(|n| (r, n)).collect(),
        (None, Some(n)) => (0..).take_while(|r| r + 2 * n <= top).map(|r| (r, n)).collect(),
        (None, None) => {
            (0..=top).flat_map(|r| (0..).take_while(move |n| r + 2 * n <= top).map(move |n| (r, n))).collect()
        }
    };
    let mut reports = Vec::new();
    for field in choice.valid_fields() {
        for &(r, n) in &windows {
            reports.push(morse_estimate_check_over(&c, &z, &field, r, n)?);
        }
    }
    let holds = reports.iter().all(|m| m.holds && m.equality_holds);
    out["reports"] = serde_json::to_value(&reports).expect("serializable");
    out["holds"] = json!(holds);
    Ok((out, holds))
}

#[derive(Debug, Default, serde::Deserialize)]
struct VerifyRequest {
    sigma: Option<i64>,
    nullity: Option<i64>,
    #[serde(default, deserialize_with = "zeta_list")]
    zeta: Option<String>,
    surface: Option<Vec<SurfacePiece>>,
    betti: Option<SpanBetti>,
    slice_betti: Option<SliceBetti>,
    lambda_betti: Option<u64>,
    #[serde(rename = "P")]
    field: Option<String>,
}

/// Accepts `"1/2,1/3"` or `["1/2", "1/3"]`.
fn zeta_list<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Option<String>, D::Error> {
    #[derive(serde::Deserialize)]
    #[serde(untagged)]
    enum Spec {
        Text(String),
        List(Vec<String>),
    }
    Ok(<Option<Spec> as serde::Deserialize>::deserialize(d)?.map(|s| match s {
        Spec::Text(t) => t,
        Spec::List(l) => l.join(","),
    }))
}

#[derive(Serialize)]
struct FieldVerdict {
    #[serde(rename = "P")]
    field: String,
    #[serde(flatten)]
    verdict: Verdict,
}

fn invariants_at(link: &LinkInput, zeta: &str) -> CliResult<(i64, i64)> {
    let source = link.require_source()?;
    let z: MonodromyAssignment = zeta.parse()?;
    let s = source.evaluate(&z)?;
    Ok((s.sigma, s.nullity as i64))
}

/// Returns the report and whether an obstruction was found.
fn cmd_verify(a: &VerifyArgs) -> CliResult<(Value, bool)> {
    let mut req: VerifyRequest = match &a.input {
        Some(text) => parse_json(text, "verify input")?,
        None => VerifyRequest::default(),
    };
    req.sigma = a.sigma.or(req.sigma);
    req.nullity = a.nullity.or(req.nullity);
    req.zeta = a.zeta.clone().or(req.zeta);
    req.field = a.field.clone().or(req.field);
    req.lambda_betti = a.lambda_betti.or(req.lambda_betti);
    if let Some(s) = &a.surface {
        req.surface = Some(parse_json(s, "surface")?);
    }
    if let Some(b) = &a.betti {
        req.betti = Some(parse_json(b, "Betti data")?);
    }
    if let Some(b) = &a.slice_betti {
        req.slice_betti = Some(parse_json(b, "slice Betti data")?);
    }

    let (sigma, nullity) = match (req.sigma, &req.zeta) {
        (Some(s), _) => (s, req.nullity.unwrap_or(0)),
        (None, Some(z)) => invariants_at(&a.link, z)?,
        (None, None) => return Err(CliError::Input("give --sigma or a link with --zeta".into())),
    };
    let fields: Vec<CoefficientField> = match &req.zeta {
        Some(z) => {
            let choice = comparison_field(&z.parse()?);
            let fields = choice.valid_fields();
            if fields.is_empty() {
                return Err(CliError::Input(format!("no comparison field: d = {} for this weight", choice.d)));
            }
            fields
        }
        None => vec![req.field.as_deref().unwrap_or("Q").parse().map_err(CliError::Parse)?],
    };

    let mut warnings = Vec::new();
    let span = match (&req.surface, &req.betti) {
        (Some(pieces), _) => {
            let b = surface_betti(&SurfaceDescriptor::single(pieces.clone()))?;
            warnings.extend(b.warnings.iter().cloned());
            Some(b)
        }
        (None, Some(b)) => Some(b.clone()),
        (None, None) => None,
    };
    let want = |name: &str| match a.inequality {
        Inequality::All => true,
        Inequality::Null2 => name == "null2",
        Inequality::Null3 => name == "null3",
        Inequality::SliceSimple => name == "slice-simple",
        Inequality::Slice => name == "slice",
    };
    let mut verdicts = Vec::new();
    if let Some(b) = &span {
        verdicts.extend(span_check_general_n(sigma, nullity, b)?);
    }
    if let Some(h) = req.lambda_betti {
        verdicts.push(slice_check_simple(sigma, h));
    }
    if let Some(b) = &req.slice_betti {
        verdicts.push(slice_check_general(sigma, nullity, b)?);
    }
    verdicts.retain(|v| want(v.inequality));
    if verdicts.is_empty() {
        return Err(CliError::Input("no inequality applies: give a surface, Betti data or --lambda-betti".into()));
    }
    let report: Vec<FieldVerdict> = fields
        .iter()
        .flat_map(|f| verdicts.iter().map(move |v| FieldVerdict { field: f.to_string(), verdict: v.clone() }))
        .collect();
    let obstruction = report.iter().any(|v| !v.verdict.holds);
    let out = json!({
        "sigma": sigma,
        "nullity": nullity,
        "verdicts": report,
        "obstruction": obstruction,
        "warnings": warnings,
    });
    Ok((out, obstruction))
}

fn cmd_bound(
    link: &LinkInput,
    zeta: Option<&str>,
    sigma: Option<i64>,
    nullity: Option<i64>,
    boundary: u64,
    grid: u32,
) -> CliResult<Value> {
    let (sigma, nullity, at) = match (sigma, zeta) {
        (Some(s), _) => (s, nullity.unwrap_or(0), None),
        (None, Some(z)) => {
            let (s, n) = invariants_at(link, z)?;
            (s, n, Some(vec![z.to_string()]))
        }
        (None, None) => {
            let source = link.require_source()?;
            let scan = signature_scan(&source, grid, Mode::Exact, Execution::Parallel)?;
            // First grid point maximizing |sigma| + nullity.
            let best = scan
                .rows
                .iter()
                .rev()
                .max_by_key(|r| r.sample.sigma.abs() + r.sample.nullity as i64)
                .map(|r| (r.sample.sigma, r.sample.nullity as i64, Some(r.sample.zeta.clone())));
            best.unwrap_or((0, 0, None))
        }
    };
    if boundary == 0 {
        return Err(CliError::Input("boundary must be at least 1".into()));
    }
    Ok(json!({
        "genus_lower_bound": min_genus_bound(sigma, nullity, boundary),
        "sigma": sigma,
        "nullity": nullity,
        "zeta": at,
        "boundary": boundary,
    }))
}

fn to_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let msg = json!({ "error": "usage", "message": e.to_string().trim() });
            let _ = writeln!(stderr, "{msg}");
            return 2;
        }
    };
    let result: CliResult<(String, i32)> = match &cli.command {
        Command::Sig { link, zeta } => cmd_sig(link, zeta).map(|v| (to_line(&v), 0)),
        Command::Scan { link, grid, mode, format, execution } => {
            cmd_scan(link, *grid, *mode, *format, *execution).map(|s| (s, 0))
        }
        Command::Nullity { link, zeta } => cmd_nullity(link, zeta).map(|v| (to_line(&v), 0)),
        Command::Homology { complex, zeta, field } => {
            cmd_homology(complex, zeta.as_deref(), field.as_deref()).map(|v| (to_line(&v), 0))
        }
        Command::Estimate { complex, zeta, r, n } => {
            cmd_estimate(complex.as_deref(), zeta, *r, *n).map(|(v, ok)| (to_line(&v), if ok { 0 } else { 1 }))
        }
        Command::Verify(a) => cmd_verify(a).map(|(v, bad)| (to_line(&v), if bad { 1 } else { 0 })),
        Command::Bound { link, zeta, sigma, nullity, boundary, grid } => {
            cmd_bound(link, zeta.as_deref(), *sigma, *nullity, *boundary, *grid).map(|v| (to_line(&v), 0))
        }
    };
    match result {
        Ok((text, code)) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
                None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
            };
            match written {
                Ok(()) => code,
                Err(e) => report(&e, stderr),
            }
        }
        Err(e) => report(&e, stderr),
    }
}

fn report(e: &CliError, stderr: &mut dyn Write) -> i32 {
    let (code, exit) = e.code();
    let _ = writeln!(stderr, "{}", json!({ "error": code, "message": e.message() }));
    exit
}
