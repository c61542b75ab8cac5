use serde_json::{Map, Value};
use specsupp::Error;

use crate::args::Format;

pub enum CliError {
    /// Bad flags or unreadable inputs; exit 2.
    Usage(String),
    /// The computation itself failed; exit 1 with an error report.
    Failed(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Failed(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn usage(flag: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("{flag}: {msg}"))
}

/// Command output: a JSON body, an optional DOT rendering, and whether
/// every check in it passed.
pub struct Report {
    pub body: Map<String, Value>,
    pub dot: Option<String>,
    pub passed: bool,
}

impl Report {
    pub fn new(body: Value) -> Self {
        let body = match body {
            Value::Object(m) => m,
            other => Map::from_iter([("result".to_string(), other)]),
        };
        Report { body, dot: None, passed: true }
    }

    pub fn with_dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }

    pub fn passed(mut self, ok: bool) -> Self {
        self.passed = ok;
        self
    }

    pub fn header(&mut self, key: &str, v: Value) {
        self.body.insert(key.to_string(), v);
    }

    pub fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Json => Ok(json(&Value::Object(self.body.clone()))),
            Format::Text => Ok(text(&self.body)),
            Format::Dot => self.dot.clone().ok_or_else(|| {
                usage("--format", Error::UnsupportedFormat("dot is only available for dlattice and stone spec|unit".into()))
            }),
        }
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn text(body: &Map<String, Value>) -> String {
    let mut out = String::new();
    for (k, v) in body {
        let shown = match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        out.push_str(&format!("{k}: {shown}\n"));
    }
    out
}

pub fn error_report(e: &Error) -> Value {
    let kind = format!("{e:?}");
    let kind = kind.split(['(', ' ', '{']).next().unwrap_or("Error").to_string();
    serde_json::json!({"error": kind, "message": e.to_string()})
}
