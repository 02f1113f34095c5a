use std::fmt;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
}

/// A command result: a JSON value plus its table rendering.
pub struct Output {
    json: Value,
    table: String,
}

impl Output {
    pub fn new(value: &impl Serialize, table: String) -> Output {
        let json = serde_json::to_value(value).expect("results serialize to JSON");
        Output { json, table }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            // serde_json maps are ordered by key, so this is canonical
            Format::Json => format!("{}\n", self.json),
            Format::Table => {
                let mut t = self.table.clone();
                if !t.ends_with('\n') {
                    t.push('\n');
                }
                t
            }
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain { name: &'static str, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain { .. } => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "UsageError: {msg}"),
            CliError::Domain { name, message } => write!(f, "{name}: {message}"),
        }
    }
}

macro_rules! domain_error {
    ($($ty:ty),*) => {$(
        impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::Domain { name: e.name(), message: e.to_string() }
            }
        }
    )*};
}

domain_error!(
    steinkit::FrontError,
    steinkit::BrieskornError,
    steinkit::HandlebodyError,
    steinkit::CriteriaError
);

/// `Some(v)` as `v`, `None` as `n/a`.
pub fn opt<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref()
        .map_or_else(|| "n/a".to_string(), |x| x.to_string())
}
