//! Command-line front end: JSON operator specs in, deterministic JSON (or a
//! human-oriented table) out.
//!
//! Exit codes: 0 success, 1 I/O or operator outside an operation's domain,
//! 2 malformed input, 3 schema or dimension violation, 4 disagreement between
//! the two classification methods.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::{DMatrix, DVector, Vector2};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{
    classification_report, cocoercivity_modulus, matrix_classification_report, ClassificationReport, Modulus,
};
use crate::error::Error;
use crate::fitzpatrick::fitzpatrick_value;
use crate::gallery::{self, ExpectedClassification, GalleryOperator};
use crate::numkernel::{FitzValue, DEFAULT_TOL};
use crate::relation::LinearRelation;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("invalid operator spec: {0}")]
    Schema(String),
    #[error("{0}")]
    Disagreement(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Malformed(_) => 2,
            CliError::Schema(_) => 3,
            CliError::Disagreement(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::MethodDisagreement { .. } => CliError::Disagreement(e.to_string()),
            Error::DimensionMismatch { .. } | Error::NotSquare { .. } => CliError::Schema(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

/// Wire form of an operator spec; every field except `kind` is optional and
/// validated against `kind` afterwards.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    entries: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    graph_basis: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gallery_name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    param: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpecOperator {
    Matrix(DMatrix<f64>),
    Relation { n: usize, graph_basis: Vec<DVector<f64>> },
    Gallery { name: String, param: Option<usize> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSpec {
    pub operator: SpecOperator,
    pub tolerance: Option<f64>,
}

impl OperatorSpec {
    pub fn tol(&self) -> f64 {
        self.tolerance.unwrap_or(DEFAULT_TOL)
    }

    pub fn matrix(m: DMatrix<f64>) -> Self {
        OperatorSpec {
            operator: SpecOperator::Matrix(m),
            tolerance: None,
        }
    }

    /// Serializes back to the input format.
    pub fn to_json(&self) -> String {
        let mut raw = RawSpec {
            kind: String::new(),
            entries: None,
            graph_basis: None,
            gallery_name: None,
            param: None,
            tolerance: self.tolerance,
        };
        match &self.operator {
            SpecOperator::Matrix(m) => {
                raw.kind = "matrix".into();
                raw.entries = Some(m.row_iter().map(|r| r.iter().cloned().collect()).collect());
            }
            SpecOperator::Relation { graph_basis, .. } => {
                raw.kind = "relation".into();
                raw.graph_basis = Some(graph_basis.iter().map(|v| v.iter().cloned().collect()).collect());
            }
            SpecOperator::Gallery { name, param } => {
                raw.kind = "gallery".into();
                raw.gallery_name = Some(name.clone());
                raw.param = param.map(|p| p as u64);
            }
        }
        serde_json::to_string(&raw).expect("spec serializes")
    }
}

fn forbid<T>(field: &Option<T>, name: &str, kind: &str) -> Result<(), CliError> {
    if field.is_some() {
        return Err(CliError::Schema(format!("field '{name}' is not allowed for kind '{kind}'")));
    }
    Ok(())
}

/// Parses and validates a JSON operator spec.
pub fn parse_spec(text: &[u8]) -> Result<OperatorSpec, CliError> {
    let text = std::str::from_utf8(text).map_err(|e| CliError::Malformed(e.to_string()))?;
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| CliError::Malformed(e.to_string()))?;
    let raw: RawSpec = serde_json::from_value(value).map_err(|e| CliError::Schema(e.to_string()))?;
    if let Some(t) = raw.tolerance {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Schema(format!("field 'tolerance' must be a positive number, got {t}")));
        }
    }
    let kind = raw.kind.as_str();
    let operator = match kind {
        "matrix" => {
            forbid(&raw.graph_basis, "graph_basis", kind)?;
            forbid(&raw.gallery_name, "gallery_name", kind)?;
            forbid(&raw.param, "param", kind)?;
            let rows = raw
                .entries
                .ok_or_else(|| CliError::Schema("field 'entries' is required for kind 'matrix'".into()))?;
            let n = rows.len();
            if n == 0 || rows.iter().any(|r| r.len() != n) {
                return Err(CliError::Schema("field 'entries' must be a nonempty square grid".into()));
            }
            SpecOperator::Matrix(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
        }
        "relation" => {
            forbid(&raw.entries, "entries", kind)?;
            forbid(&raw.gallery_name, "gallery_name", kind)?;
            forbid(&raw.param, "param", kind)?;
            let basis = raw
                .graph_basis
                .ok_or_else(|| CliError::Schema("field 'graph_basis' is required for kind 'relation'".into()))?;
            let len = basis.first().map(Vec::len).unwrap_or(0);
            if len == 0 || len % 2 != 0 || basis.iter().any(|v| v.len() != len) {
                return Err(CliError::Schema(
                    "field 'graph_basis' must hold nonempty vectors of one even length".into(),
                ));
            }
            SpecOperator::Relation {
                n: len / 2,
                graph_basis: basis.iter().map(|v| DVector::from_column_slice(v)).collect(),
            }
        }
        "gallery" => {
            forbid(&raw.entries, "entries", kind)?;
            forbid(&raw.graph_basis, "graph_basis", kind)?;
            let name = raw
                .gallery_name
                .ok_or_else(|| CliError::Schema("field 'gallery_name' is required for kind 'gallery'".into()))?;
            let takes_param = gallery::GALLERY
                .iter()
                .find(|(g, _)| *g == name)
                .ok_or_else(|| CliError::Schema(format!("field 'gallery_name': unknown operator '{name}'")))?
                .1
                .is_some();
            match (takes_param, raw.param) {
                (true, None) => {
                    return Err(CliError::Schema(format!("field 'param' is required for gallery '{name}'")))
                }
                (false, Some(_)) => {
                    return Err(CliError::Schema(format!("field 'param' is not allowed for gallery '{name}'")))
                }
                _ => {}
            }
            SpecOperator::Gallery {
                name,
                param: raw.param.map(|p| p as usize),
            }
        }
        other => {
            return Err(CliError::Schema(format!(
                "field 'kind' must be matrix, relation or gallery, got '{other}'"
            )))
        }
    };
    Ok(OperatorSpec {
        operator,
        tolerance: raw.tolerance,
    })
}

/// A spec resolved to something computable.
enum Resolved {
    Linear(LinearRelation),
    Matrix(DMatrix<f64>, LinearRelation),
    Ball(gallery::BallConstrainedOperator),
}

fn resolve(spec: &OperatorSpec, tol: f64) -> Result<(Resolved, Option<ExpectedClassification>), CliError> {
    match &spec.operator {
        SpecOperator::Matrix(m) => Ok((
            Resolved::Matrix(m.clone(), LinearRelation::from_matrix(m, tol)?),
            None,
        )),
        SpecOperator::Relation { n, graph_basis } => Ok((
            Resolved::Linear(LinearRelation::from_graph_vectors(*n, graph_basis, tol)?),
            None,
        )),
        SpecOperator::Gallery { name, param } => {
            let entry = gallery::build(name, *param, tol).map_err(|e| CliError::Schema(e.to_string()))?;
            let resolved = match entry.operator {
                GalleryOperator::Matrix(m) => {
                    let a = LinearRelation::from_matrix(&m, tol)?;
                    Resolved::Matrix(m, a)
                }
                GalleryOperator::Ball(op) => Resolved::Ball(op),
            };
            Ok((resolved, Some(entry.expected)))
        }
    }
}

/// A classification report plus the gallery metadata, when there is one.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifyOutput {
    pub report: ClassificationReport,
    pub gallery_expected: Option<ExpectedClassification>,
}

pub fn run_classify(spec: &OperatorSpec, tol: f64) -> Result<ClassifyOutput, CliError> {
    let (resolved, expected) = resolve(spec, tol)?;
    let report = match resolved {
        Resolved::Linear(a) => classification_report(&a)?,
        Resolved::Matrix(m, _) => matrix_classification_report(&m, tol)?,
        Resolved::Ball(op) => op.classification_report()?,
    };
    Ok(ClassifyOutput {
        report,
        gallery_expected: expected,
    })
}

pub fn run_fitz(spec: &OperatorSpec, tol: f64, x: &[f64], xstar: &[f64]) -> Result<FitzValue, CliError> {
    let (resolved, _) = resolve(spec, tol)?;
    let n = match &resolved {
        Resolved::Linear(a) | Resolved::Matrix(_, a) => a.n(),
        Resolved::Ball(_) => 2,
    };
    for (name, v) in [("x", x), ("xstar", xstar)] {
        if v.len() != n {
            return Err(CliError::Schema(format!(
                "--{name} has length {}, operator acts on R^{n}",
                v.len()
            )));
        }
    }
    match resolved {
        Resolved::Linear(a) | Resolved::Matrix(_, a) => Ok(fitzpatrick_value(
            &a,
            &DVector::from_column_slice(x),
            &DVector::from_column_slice(xstar),
        )?),
        Resolved::Ball(op) => Ok(op.fitzpatrick(&Vector2::new(x[0], x[1]), &Vector2::new(xstar[0], xstar[1]))),
    }
}

/// Cocoercivity modulus; `None` when the operator is not a full-domain
/// single-valued map.
pub fn run_modulus(spec: &OperatorSpec, tol: f64) -> Result<Option<Modulus>, CliError> {
    let (resolved, _) = resolve(spec, tol)?;
    match resolved {
        Resolved::Linear(a) => match a.to_matrix() {
            Ok(m) => Ok(Some(cocoercivity_modulus(&m, tol)?)),
            Err(_) => Ok(None),
        },
        Resolved::Matrix(m, _) => Ok(Some(cocoercivity_modulus(&m, tol)?)),
        Resolved::Ball(_) => Ok(None),
    }
}

/// 17 significant digits, trailing zeros trimmed, at least one fractional
/// digit; exponent form for very small or large magnitudes.
pub fn format_float(v: f64) -> String {
    if v.is_infinite() && v > 0.0 {
        return "\"inf\"".into();
    }
    if v.is_nan() {
        return "null".into();
    }
    if v == 0.0 {
        return "0.0".into();
    }
    let sci = format!("{:.16e}", v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let sign = if negative { "-" } else { "" };
    if !(-5..17).contains(&exp) {
        let trimmed = digits.trim_end_matches('0');
        let (head, tail) = trimmed.split_at(1);
        let tail = if tail.is_empty() { "0" } else { tail };
        return format!("{sign}{head}.{tail}e{exp}");
    }
    let (int_part, frac_part) = if exp >= 0 {
        let split = (exp + 1) as usize;
        let padded = format!("{:0<width$}", digits, width = split.max(digits.len()));
        (padded[..split].to_string(), padded[split..].to_string())
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        ("0".to_string(), format!("{zeros}{digits}"))
    };
    let frac = frac_part.trim_end_matches('0');
    let frac = if frac.is_empty() { "0" } else { frac };
    format!("{sign}{int_part}.{frac}")
}

fn json_vec(v: &DVector<f64>) -> String {
    let items: Vec<String> = v.iter().map(|&x| format_float(x)).collect();
    format!("[{}]", items.join(","))
}

fn json_flag(f: Option<bool>) -> &'static str {
    match f {
        Some(true) => "true",
        Some(false) => "false",
        None => "null",
    }
}

fn json_modulus(m: Option<Modulus>) -> String {
    match m {
        None => "null".into(),
        Some(Modulus::PlusInfinity) => "\"inf\"".into(),
        Some(Modulus::Finite(b)) => format_float(b),
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("string serializes")
}

pub fn report_to_json(out: &ClassifyOutput) -> String {
    let r = &out.report;
    let mut s = String::new();
    write!(
        s,
        "{{\"n\":{},\"tol\":{},\"monotone\":{},\"maximal\":{},\"strictly_monotone\":{},\"paramonotone\":{},\"rectangular\":{},\"cocoercivity_modulus\":{},\"witnesses\":{{",
        r.n,
        format_float(r.tol),
        r.monotone,
        json_flag(r.maximal),
        json_flag(r.strictly_monotone),
        json_flag(r.paramonotone),
        json_flag(r.rectangular),
        json_modulus(r.cocoercivity_modulus),
    )
    .unwrap();
    for (i, (prop, w)) in r.witnesses.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        write!(s, "{}:{{", json_string(prop)).unwrap();
        for (j, (name, v)) in w.vectors.iter().enumerate() {
            if j > 0 {
                s.push(',');
            }
            write!(s, "{}:{}", json_string(name), json_vec(v)).unwrap();
        }
        s.push('}');
    }
    s.push('}');
    if r.near_singular {
        s.push_str(",\"near_singular\":true");
    }
    if let Some(e) = out.gallery_expected {
        write!(
            s,
            ",\"gallery_expected\":{{\"monotone\":{},\"maximal\":{},\"strictly_monotone\":{},\"paramonotone\":{},\"rectangular\":{}}}",
            e.monotone, e.maximal, e.strictly_monotone, e.paramonotone, e.rectangular
        )
        .unwrap();
    }
    s.push('}');
    s
}

fn report_to_table(out: &ClassifyOutput) -> String {
    let r = &out.report;
    let flag = |f: Option<bool>| f.map_or("-".to_string(), |b| b.to_string());
    let mut s = String::new();
    writeln!(s, "n                     {}", r.n).unwrap();
    writeln!(s, "tol                   {:e}", r.tol).unwrap();
    writeln!(s, "monotone              {}", r.monotone).unwrap();
    writeln!(s, "maximal               {}", flag(r.maximal)).unwrap();
    writeln!(s, "strictly monotone     {}", flag(r.strictly_monotone)).unwrap();
    writeln!(s, "paramonotone          {}", flag(r.paramonotone)).unwrap();
    writeln!(s, "rectangular           {}", flag(r.rectangular)).unwrap();
    let modulus = match r.cocoercivity_modulus {
        None => "-".to_string(),
        Some(Modulus::PlusInfinity) => "inf".to_string(),
        Some(Modulus::Finite(b)) => format!("{b}"),
    };
    writeln!(s, "cocoercivity modulus  {modulus}").unwrap();
    for (prop, w) in &r.witnesses {
        let parts: Vec<String> = w
            .vectors
            .iter()
            .map(|(k, v)| format!("{k}={:?}", v.as_slice()))
            .collect();
        writeln!(s, "witness {prop}: {}", parts.join(" ")).unwrap();
    }
    if r.near_singular {
        writeln!(s, "warning: near-singular range test").unwrap();
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "monofitz", about = "Classify monotone linear relations and evaluate Fitzpatrick functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Common {
    /// Operator spec file; reads stdin when absent or "-".
    input: Option<String>,
    /// Tolerance; overrides the spec's `tolerance`.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full classification report.
    Classify(Common),
    /// Fitzpatrick function value at (x, x*).
    Fitz {
        #[command(flatten)]
        common: Common,
        /// Comma-separated coordinates of x.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Comma-separated coordinates of x*.
        #[arg(long, allow_hyphen_values = true)]
        xstar: String,
    },
    /// Cocoercivity modulus of a single-valued operator.
    Modulus(Common),
    /// List gallery operators.
    Gallery {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Classify a gallery operator over a parameter range.
    Sweep {
        #[arg(long)]
        name: String,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long)]
        tol: Option<f64>,
    },
}

fn parse_vector(s: &str, flag: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Malformed(format!("--{flag}: cannot parse '{t}' as a number")))
        })
        .collect()
}

fn read_input(path: &Option<String>, stdin: &mut dyn Read) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    match path.as_deref() {
        None | Some("-") => {
            stdin
                .read_to_end(&mut buf)
                .map_err(|e| CliError::Failed(format!("reading stdin: {e}")))?;
        }
        Some(p) => {
            buf = std::fs::read(p).map_err(|e| CliError::Failed(format!("reading {p}: {e}")))?;
        }
    }
    Ok(buf)
}

fn effective_tol(spec: &OperatorSpec, flag: Option<f64>) -> Result<f64, CliError> {
    match flag {
        Some(t) if !(t > 0.0 && t.is_finite()) => Err(CliError::Malformed(format!("--tol must be positive, got {t}"))),
        Some(t) => Ok(t),
        None => Ok(spec.tol()),
    }
}

fn execute(cli: Cli, stdin: &mut dyn Read) -> Result<String, CliError> {
    match cli.command {
        Command::Classify(c) => {
            let spec = parse_spec(&read_input(&c.input, stdin)?)?;
            let out = run_classify(&spec, effective_tol(&spec, c.tol)?)?;
            Ok(match c.format {
                Format::Json => report_to_json(&out) + "\n",
                Format::Table => report_to_table(&out),
            })
        }
        Command::Fitz { common, x, xstar } => {
            let x = parse_vector(&x, "x")?;
            let xstar = parse_vector(&xstar, "xstar")?;
            let spec = parse_spec(&read_input(&common.input, stdin)?)?;
            let value = run_fitz(&spec, effective_tol(&spec, common.tol)?, &x, &xstar)?;
            let text = match value {
                FitzValue::Finite(v) => format_float(v),
                FitzValue::PlusInfinity => "\"inf\"".into(),
            };
            Ok(match common.format {
                Format::Json => format!("{{\"value\":{text}}}\n"),
                Format::Table => format!("F = {}\n", text.trim_matches('"')),
            })
        }
        Command::Modulus(c) => {
            let spec = parse_spec(&read_input(&c.input, stdin)?)?;
            let m = run_modulus(&spec, effective_tol(&spec, c.tol)?)?;
            Ok(match c.format {
                Format::Json => format!("{{\"cocoercivity_modulus\":{}}}\n", json_modulus(m)),
                Format::Table => format!("cocoercivity modulus  {}\n", json_modulus(m).trim_matches('"')),
            })
        }
        Command::Gallery { format } => {
            let mut s = String::new();
            match format {
                Format::Json => {
                    let items: Vec<String> = gallery::GALLERY
                        .iter()
                        .map(|(name, param)| {
                            format!(
                                "{{\"name\":{},\"param\":{}}}",
                                json_string(name),
                                param.map_or("null".to_string(), json_string)
                            )
                        })
                        .collect();
                    writeln!(s, "{{\"gallery\":[{}]}}", items.join(",")).unwrap();
                }
                Format::Table => {
                    for (name, param) in gallery::GALLERY {
                        writeln!(s, "{name:<28}{}", param.unwrap_or("(no parameter)")).unwrap();
                    }
                }
            }
            Ok(s)
        }
        Command::Sweep { name, from, to, tol } => {
            if from > to {
                return Err(CliError::Malformed(format!("--from {from} exceeds --to {to}")));
            }
            let tol = tol.unwrap_or(DEFAULT_TOL);
            let results: Vec<Result<String, CliError>> = (from..=to)
                .into_par_iter()
                .map(|p| {
                    let spec = OperatorSpec {
                        operator: SpecOperator::Gallery {
                            name: name.clone(),
                            param: Some(p),
                        },
                        tolerance: None,
                    };
                    run_classify(&spec, tol).map(|out| report_to_json(&out))
                })
                .collect();
            let reports = results.into_iter().collect::<Result<Vec<_>, _>>()?;
            Ok(format!("{{\"sweep\":[{}]}}\n", reports.join(",")))
        }
    }
}

/// Runs the CLI with explicit streams and returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(text.as_bytes());
            } else {
                let _ = stderr.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match execute(cli, stdin) {
        Ok(out) => {
            let _ = stdout.write_all(out.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let spec = parse_spec(br#"{"kind":"matrix","entries":[[0,1],[-1,0]]}"#).unwrap();
        assert_eq!(spec.operator, SpecOperator::Matrix(gallery::rotation()));
        let spec = parse_spec(br#"{"kind":"gallery","gallery_name":"volterra","param":8}"#).unwrap();
        assert_eq!(
            spec.operator,
            SpecOperator::Gallery {
                name: "volterra".into(),
                param: Some(8)
            }
        );
        let err = parse_spec(br#"{"kind":"matrix","entries":[[1,2,3]]}"#).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_spec(b"{not json").unwrap_err().exit_code(), 2);
        assert_eq!(parse_spec(&[0xff, 0xfe]).unwrap_err().exit_code(), 2);
        let cases: &[&[u8]] = &[
            br#"{"kind":"matrix"}"#,
            br#"{"kind":"matrix","entries":[[1]],"extra":1}"#,
            br#"{"kind":"matrix","entries":[[1]],"param":2}"#,
            br#"{"kind":"relation","graph_basis":[[1,0,0]]}"#,
            br#"{"kind":"relation","graph_basis":[[1,0],[1,0,0,0]]}"#,
            br#"{"kind":"gallery","gallery_name":"volterra"}"#,
            br#"{"kind":"gallery","gallery_name":"rotation","param":3}"#,
            br#"{"kind":"gallery","gallery_name":"unknown"}"#,
            br#"{"kind":"tensor"}"#,
            br#"{"kind":"matrix","entries":[[1]],"tolerance":-1}"#,
        ];
        for case in cases {
            let err = parse_spec(case).unwrap_err();
            assert_eq!(err.exit_code(), 3, "{}", String::from_utf8_lossy(case));
        }
    }

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(1.0), "1.0");
        assert_eq!(format_float(0.0), "0.0");
        assert_eq!(format_float(0.5), "0.5");
        assert_eq!(format_float(1.0 / 3.0), "0.33333333333333331");
        assert_eq!(format_float(-2.25), "-2.25");
        assert_eq!(format_float(1e-9), "1.0000000000000001e-9");
        assert_eq!(format_float(123.0), "123.0");
        assert_eq!(format_float(f64::INFINITY), "\"inf\"");
        for v in [1.0 / 3.0, -0.1, 12345.678, 1e-9, 2.5e20, 0.001] {
            let s = format_float(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
    }

    #[test]
    fn matrix_spec_round_trip() {
        let spec = parse_spec(br#"{"kind":"matrix","entries":[[0.5,1],[-1,2]],"tolerance":1e-8}"#).unwrap();
        assert_eq!(parse_spec(spec.to_json().as_bytes()).unwrap(), spec);
    }
}
