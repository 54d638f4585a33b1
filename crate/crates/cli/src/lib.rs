//! Command-line front end for the `cusplink` library.
//!
//! `parse_args` turns argv into a [`CliRequest`], `run` executes it, and
//! `emit` renders a [`Payload`] in the requested format. The binary is a thin
//! wrapper around [`invoke`].

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use cusplink::invariants::{
    adjunction_defect, c1_evaluations, d3_invariant, euler_class, euler_rot_vector, homology_cross_check, RationalJson,
};
use cusplink::legendrian::{canonical_filling, enumerate_stein_fillings, to_contact_surgery, Sign, SteinHandleDiagram};
use cusplink::openbook::family_openbook;
use cusplink::plumbing::{family_graph, intersection_matrix, smooth_surgery_description};
use cusplink::verify::{verify_family_with, verify_suite_with, FamilyReport};
use cusplink::{classify, factor_cycle, CycleWord, Error, Execution, Family, Sl2Matrix, SuiteBounds};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Family(Family),
    Matrix(Sl2Matrix),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Classify(Target),
    Factor(Sl2Matrix),
    Graph(Family),
    OpenBook(Family),
    Enumerate(Family),
    Canonical {
        family: Family,
        sign: Option<Sign>,
    },
    Invariants {
        family: Family,
        sign: Option<Sign>,
        euler: bool,
        d3: bool,
    },
    Verify(Option<Family>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliRequest {
    pub command: Command,
    /// `None` means the command's default format.
    pub format: Option<Format>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn invalid(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnsupportedOpenBook | Error::UnsupportedPresentation | Error::NonTorsionChernClass => {
                EXIT_UNSUPPORTED
            }
            _ => EXIT_INVALID,
        };
        let message = match &e {
            Error::InvalidCycleWord { .. } => format!("{e} (rule: {})", CycleWord::RULE),
            _ if code == EXIT_UNSUPPORTED => format!("unsupported: {e}"),
            _ => e.to_string(),
        };
        CliError { code, message }
    }
}

#[derive(Parser, Debug)]
#[command(name = "cusplink", version, about = "Simple elliptic and cusp singularity links")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Classify an SL(2,Z) matrix by trace
    Classify(Plain),
    /// Factor a hyperbolic matrix into a cycle word
    Factor(Plain),
    /// Plumbing graph (DOT by default)
    Graph(Plain),
    /// Open book page data and monodromy word
    Openbook(Plain),
    /// All Stein fillings with rotation vectors and c1 evaluations
    Enumerate(Plain),
    /// The two canonical-sign diagrams with adjunction defects
    Canonical(Signed),
    /// Homology cross-check, Euler class and d3 (JSON by default)
    #[command(alias = "inv")]
    Invariants(Inv),
    /// Run the invariant suite for one family or the whole standard suite
    Verify(Ver),
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct Spec {
    /// Simple elliptic link with parameter N
    #[arg(long, value_name = "N", allow_negative_numbers = true)]
    elliptic: Option<i64>,
    /// Cusp link with cycle word N1,N2,...
    #[arg(long, value_name = "N1,N2,...", value_delimiter = ',', allow_hyphen_values = true)]
    cusp: Option<Vec<i64>>,
    /// Matrix entries a,b,c,d of [[a,b],[c,d]]
    #[arg(long, value_name = "a,b,c,d", value_delimiter = ',', allow_hyphen_values = true)]
    matrix: Option<Vec<i64>>,
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct Fmt {
    #[arg(long)]
    json: bool,
    #[arg(long)]
    dot: bool,
    #[arg(long)]
    text: bool,
}

#[derive(Args, Debug)]
struct Plain {
    #[command(flatten)]
    spec: Spec,
    #[command(flatten)]
    fmt: Fmt,
}

#[derive(Args, Debug)]
struct Signed {
    #[command(flatten)]
    spec: Spec,
    #[command(flatten)]
    fmt: Fmt,
    /// Restrict to one sign choice
    #[arg(long, alias = "canonical", value_name = "min|max")]
    sign: Option<String>,
}

#[derive(Args, Debug)]
struct Inv {
    #[command(flatten)]
    signed: Signed,
    /// Only the Euler class
    #[arg(long)]
    euler: bool,
    /// Only the d3 invariant
    #[arg(long)]
    d3: bool,
}

#[derive(Args, Debug)]
struct Ver {
    #[command(flatten)]
    spec: Spec,
    #[command(flatten)]
    fmt: Fmt,
    /// Verify every family with k <= 4, ni <= 5 and n <= 10
    #[arg(long)]
    suite: bool,
}

impl Fmt {
    fn get(&self) -> Option<Format> {
        if self.json {
            Some(Format::Json)
        } else if self.dot {
            Some(Format::Dot)
        } else if self.text {
            Some(Format::Text)
        } else {
            None
        }
    }
}

impl Spec {
    fn target(&self) -> Result<Option<Target>, CliError> {
        if let Some(n) = self.elliptic {
            return Ok(Some(Target::Family(Family::elliptic(n)?)));
        }
        if let Some(w) = &self.cusp {
            return Ok(Some(Target::Family(Family::cusp(w.clone())?)));
        }
        if let Some(m) = &self.matrix {
            let [a, b, c, d] = m[..] else {
                return Err(CliError::invalid(format!(
                    "--matrix takes exactly 4 entries a,b,c,d, got {}",
                    m.len()
                )));
            };
            return Ok(Some(Target::Matrix(Sl2Matrix::new(a, b, c, d)?)));
        }
        Ok(None)
    }

    fn any(&self) -> Result<Target, CliError> {
        self.target()?
            .ok_or_else(|| CliError::invalid("expected one of --elliptic N, --cusp N1,N2,..., --matrix a,b,c,d"))
    }

    fn family(&self) -> Result<Family, CliError> {
        match self.target()? {
            Some(Target::Family(f)) => Ok(f),
            Some(Target::Matrix(_)) => Err(CliError::invalid("this command takes --elliptic N or --cusp N1,N2,...")),
            None => Err(CliError::invalid("expected one of --elliptic N or --cusp N1,N2,...")),
        }
    }

    fn matrix(&self) -> Result<Sl2Matrix, CliError> {
        match self.target()? {
            Some(Target::Matrix(m)) => Ok(m),
            _ => Err(CliError::invalid("this command takes --matrix a,b,c,d")),
        }
    }
}

fn parse_sign(s: &Option<String>) -> Result<Option<Sign>, CliError> {
    s.as_deref().map(str::parse).transpose().map_err(CliError::from)
}

/// Parses argv (including the program name). Help and version requests come
/// back as an error with code 0 and the text to print on stdout.
pub fn parse_args<I, T>(argv: I) -> Result<CliRequest, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        use clap::error::ErrorKind::*;
        let code = match e.kind() {
            DisplayHelp | DisplayVersion => EXIT_OK,
            _ => EXIT_INVALID,
        };
        CliError {
            code,
            message: e.render().to_string(),
        }
    })?;
    let (command, format) = match cli.command {
        Sub::Classify(p) => (Command::Classify(p.spec.any()?), p.fmt.get()),
        Sub::Factor(p) => (Command::Factor(p.spec.matrix()?), p.fmt.get()),
        Sub::Graph(p) => (Command::Graph(p.spec.family()?), p.fmt.get()),
        Sub::Openbook(p) => (Command::OpenBook(p.spec.family()?), p.fmt.get()),
        Sub::Enumerate(p) => (Command::Enumerate(p.spec.family()?), p.fmt.get()),
        Sub::Canonical(s) => (
            Command::Canonical {
                family: s.spec.family()?,
                sign: parse_sign(&s.sign)?,
            },
            s.fmt.get(),
        ),
        Sub::Invariants(i) => (
            Command::Invariants {
                family: i.signed.spec.family()?,
                sign: parse_sign(&i.signed.sign)?,
                euler: i.euler,
                d3: i.d3,
            },
            i.signed.fmt.get(),
        ),
        Sub::Verify(v) => {
            let target = v.spec.target()?;
            let family = match (v.suite, target) {
                (true, None) => None,
                (false, Some(Target::Family(f))) => Some(f),
                (true, Some(_)) => return Err(CliError::invalid("--suite cannot be combined with a family")),
                (false, Some(Target::Matrix(_))) => {
                    return Err(CliError::invalid(
                        "verify takes --elliptic N, --cusp N1,N2,... or --suite",
                    ))
                }
                (false, None) => return Err(CliError::invalid("expected --elliptic N, --cusp N1,N2,... or --suite")),
            };
            (Command::Verify(family), v.fmt.get())
        }
    };
    Ok(CliRequest { command, format })
}

/// The views a command can be rendered in. A payload with no views is empty.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Payload {
    pub text: Option<String>,
    pub json: Option<Value>,
    pub dot: Option<String>,
}

impl Payload {
    fn new(text: String, json: Value) -> Self {
        Payload {
            text: Some(text),
            json: Some(json),
            dot: None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_none() && self.json.is_none() && self.dot.is_none()
    }
}

fn newline_terminated(mut s: String) -> Vec<u8> {
    if !s.is_empty() && !s.ends_with('\n') {
        s.push('\n');
    }
    s.into_bytes()
}

/// Renders one view of the payload. JSON objects come out with sorted keys.
pub fn emit(format: Format, payload: &Payload) -> Result<Vec<u8>, CliError> {
    if payload.is_empty() {
        return Ok(Vec::new());
    }
    let missing = |name: &str| CliError::invalid(format!("{name} output is not available for this command"));
    match format {
        Format::Text => payload
            .text
            .clone()
            .map(newline_terminated)
            .ok_or_else(|| missing("text")),
        Format::Dot => payload
            .dot
            .clone()
            .map(newline_terminated)
            .ok_or_else(|| missing("DOT")),
        Format::Json => payload
            .json
            .as_ref()
            .map(|v| newline_terminated(v.to_string()))
            .ok_or_else(|| missing("JSON")),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

fn tuple(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

fn signs(sign: Option<Sign>) -> Vec<Sign> {
    match sign {
        Some(s) => vec![s],
        None => vec![Sign::Min, Sign::Max],
    }
}

fn sign_name(s: Sign) -> &'static str {
    match s {
        Sign::Min => "min",
        Sign::Max => "max",
    }
}

/// With a single sign the value itself, otherwise `{"min":..,"max":..}`.
fn by_sign(sign: Option<Sign>, values: Vec<(Sign, Value)>) -> Value {
    match sign {
        Some(_) => values.into_iter().next().map(|(_, v)| v).unwrap_or(Value::Null),
        None => Value::Object(values.into_iter().map(|(s, v)| (sign_name(s).to_string(), v)).collect()),
    }
}

fn classify_payload(target: &Target) -> Payload {
    let m = match target {
        Target::Matrix(m) => m.clone(),
        Target::Family(f) => f.monodromy(),
    };
    let class = classify(&m);
    let kind = to_value(&class.kind);
    let text = format!(
        "{m}: {} (trace {}){}",
        kind.as_str().unwrap_or_default().to_lowercase(),
        class.trace,
        if class.is_cusp_link() {
            ", cusp link monodromy"
        } else {
            ""
        }
    );
    Payload::new(
        text,
        json!({ "matrix": to_value(&m), "kind": kind, "trace": to_value(&cusplink::serde_int::Int(class.trace.clone())), "cusp_link": class.is_cusp_link() }),
    )
}

fn graph_payload(f: &Family) -> Payload {
    let g = family_graph(f);
    let q = intersection_matrix(&g);
    let mut text = format!("{f} plumbing graph\n");
    for (i, v) in g.vertices().iter().enumerate() {
        let _ = writeln!(text, "  v{i}: weight {}, genus {}", v.weight, v.genus);
    }
    for [i, j] in g.edges() {
        let _ = writeln!(text, "  v{i} -- v{j}");
    }
    let _ = writeln!(text, "intersection matrix {q}");
    let _ = write!(text, "surgery: {}", smooth_surgery_description(f).to_text());
    Payload {
        text: Some(text),
        json: Some(json!({
            "family": to_value(f),
            "graph": to_value(&g),
            "intersection_matrix": q.to_rows().iter().map(|r| r.iter().map(|x| to_value(&cusplink::serde_int::Int(x.clone()))).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "surgery": to_value(&smooth_surgery_description(f)),
        })),
        dot: Some(g.to_dot()),
    }
}

fn openbook_payload(f: &Family) -> Payload {
    let ob = family_openbook(f);
    Payload::new(ob.to_text(), to_value(&ob.to_json()))
}

fn diagram_entry(d: &SteinHandleDiagram) -> Value {
    json!({
        "rot": d.rot_vector(),
        "c1": c1_evaluations(d),
        "diagram": to_value(&d.to_json()),
    })
}

fn enumerate_payload(f: &Family) -> Payload {
    let all = enumerate_stein_fillings(f);
    let mut text = format!("{f}: {} Stein fillings", all.len());
    for d in &all {
        let _ = write!(
            text,
            "\n  rot {}  c1 {}",
            tuple(&d.rot_vector()),
            tuple(&c1_evaluations(d))
        );
    }
    let json = json!({
        "family": to_value(f),
        "count": all.len(),
        "fillings": all.iter().map(diagram_entry).collect::<Vec<_>>(),
    });
    Payload::new(text, json)
}

fn canonical_payload(f: &Family, sign: Option<Sign>) -> Payload {
    let mut text = String::new();
    let mut values = Vec::new();
    for s in signs(sign) {
        let d = canonical_filling(f, s);
        let defects: Vec<i64> = d.handles().iter().map(adjunction_defect).collect();
        let _ = writeln!(
            text,
            "{} {f}: rot {}  defects {}\n{}",
            sign_name(s),
            tuple(&d.rot_vector()),
            tuple(&defects),
            d.to_text().trim_end()
        );
        let mut entry = diagram_entry(&d);
        entry["defects"] = json!(defects);
        values.push((s, entry));
    }
    Payload::new(text, by_sign(sign, values))
}

fn rational_text(r: &RationalJson) -> String {
    if r.den == 1.into() {
        r.num.to_string()
    } else {
        format!("{}/{}", r.num, r.den)
    }
}

fn invariants_payload(f: &Family, sign: Option<Sign>, euler: bool, d3: bool) -> Result<Payload, CliError> {
    let (want_euler, want_d3, want_homology) = if euler || d3 {
        (euler, d3, false)
    } else {
        (true, true, true)
    };
    let mut text = String::new();
    let mut out = serde_json::Map::new();

    if want_homology {
        let h = homology_cross_check(f);
        let _ = writeln!(
            text,
            "{f} H1: plumbing {}, monodromy {}, open book {} ({})",
            h.plumbing,
            h.monodromy,
            h.openbook,
            if h.all_equal { "agree" } else { "DISAGREE" }
        );
        out.insert("homology".into(), to_value(&h));
    }
    if want_euler {
        let mut values = Vec::new();
        for s in signs(sign) {
            let d = canonical_filling(f, s);
            let e = euler_class(f, &euler_rot_vector(&d))?.to_json();
            let _ = writeln!(
                text,
                "euler class ({}): {}{}",
                sign_name(s),
                if e.is_zero { "zero" } else { "nonzero" },
                e.witness
                    .as_ref()
                    .map(|w| format!(
                        ", witness ({})",
                        w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                    ))
                    .unwrap_or_default()
            );
            values.push((s, to_value(&e)));
        }
        out.insert("euler".into(), by_sign(sign, values));
    }
    if want_d3 {
        let mut values = Vec::new();
        for s in signs(sign) {
            let cd = to_contact_surgery(&canonical_filling(f, s));
            match d3_invariant(&cd) {
                Ok(r) => {
                    let r = RationalJson::from(&r);
                    let _ = writeln!(text, "d3 ({}): {}", sign_name(s), rational_text(&r));
                    values.push((s, to_value(&r)));
                }
                // Explicitly asked for: report as unsupported. In the full
                // report it shows up as null.
                Err(e) if d3 => return Err(e.into()),
                Err(e) => {
                    let _ = writeln!(text, "d3 ({}): unavailable, {e}", sign_name(s));
                    values.push((s, Value::Null));
                }
            }
        }
        out.insert("d3".into(), by_sign(sign, values));
    }

    // A lone --euler or --d3 emits just that value.
    let json = if out.len() == 1 {
        out.into_iter().next().map(|(_, v)| v).unwrap_or(Value::Null)
    } else {
        out.insert("family".into(), to_value(f));
        Value::Object(out)
    };
    Ok(Payload::new(text, json))
}

fn verify_payload(family: Option<&Family>) -> (bool, Payload) {
    match family {
        Some(f) => {
            let r = verify_family_with(f, Execution::default());
            (r.passed(), Payload::new(r.to_text(), to_value(&r)))
        }
        None => {
            let reports: Vec<FamilyReport> = verify_suite_with(SuiteBounds::STANDARD, Execution::default());
            let passed = reports.iter().filter(|r| r.passed()).count();
            let mut text = String::new();
            for r in &reports {
                if r.passed() {
                    let _ = writeln!(text, "{}: ok", r.family);
                } else {
                    text.push_str(&r.to_text());
                }
            }
            let _ = write!(text, "{passed}/{} families passed", reports.len());
            let ok = passed == reports.len();
            let json = json!({
                "passed": passed,
                "total": reports.len(),
                "reports": to_value(&reports),
            });
            (ok, Payload::new(text, json))
        }
    }
}

fn default_format(c: &Command) -> Format {
    match c {
        Command::Graph(_) => Format::Dot,
        Command::Invariants { .. } => Format::Json,
        _ => Format::Text,
    }
}

/// Executes a validated request. Returns the exit code and the stdout bytes.
pub fn run(request: &CliRequest) -> Result<(i32, Vec<u8>), CliError> {
    let mut code = EXIT_OK;
    let payload = match &request.command {
        Command::Classify(t) => classify_payload(t),
        Command::Factor(m) => {
            let w = factor_cycle(m)?;
            Payload::new(w.to_string(), json!({ "word": to_value(&w) }))
        }
        Command::Graph(f) => graph_payload(f),
        Command::OpenBook(f) => openbook_payload(f),
        Command::Enumerate(f) => enumerate_payload(f),
        Command::Canonical { family, sign } => canonical_payload(family, *sign),
        Command::Invariants {
            family,
            sign,
            euler,
            d3,
        } => invariants_payload(family, *sign, *euler, *d3)?,
        Command::Verify(f) => {
            let (ok, p) = verify_payload(f.as_ref());
            if !ok {
                code = EXIT_VERIFY_FAILED;
            }
            p
        }
    };
    let format = request.format.unwrap_or_else(|| default_format(&request.command));
    Ok((code, emit(format, &payload)?))
}

/// Result of one full invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

pub fn invoke<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = parse_args(argv).and_then(|req| run(&req));
    match result {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) if e.code == EXIT_OK => Outcome {
            code: EXIT_OK,
            stdout: e.message.into_bytes(),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.code,
            stdout: Vec::new(),
            stderr: format!("error: {}\n", e.message.trim_end()),
        },
    }
}
