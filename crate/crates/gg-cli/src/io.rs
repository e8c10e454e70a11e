//! Reading instances, writing results and mapping failures to exit codes.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::error::Category;

/// A failure that ends the process with a specific exit code.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable file, malformed JSON or a bad command line.
    Parse(String),
    /// Well-formed input that is not a valid instance.
    Invalid(String),
    /// The monotone strategy was asked to guard a non-monotone polygon.
    NotMonotone(String),
    /// A verification run found a violation.
    Violation(String),
}

impl Failure {
    /// The process exit code.
    pub fn code(&self) -> i32 {
        match self {
            Failure::Parse(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::NotMonotone(_) => 3,
            Failure::Violation(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Parse(m) | Failure::Invalid(m) | Failure::NotMonotone(m) | Failure::Violation(m) => f.write_str(m),
        }
    }
}

/// Reads a file as text.
pub fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

/// Parses JSON text into `T`. Syntax errors are parse failures reported
/// with line and column; well-formed JSON that does not describe a valid
/// `T` is a validation failure.
pub fn parse_json<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| {
        let msg = format!("{origin}: {e}");
        match e.classify() {
            Category::Data => Failure::Invalid(msg),
            Category::Syntax | Category::Eof | Category::Io => Failure::Parse(msg),
        }
    })
}

/// Reads and parses a JSON file.
pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    parse_json(&read_text(path)?, &path.display().to_string())
}

/// Pretty JSON text of a value, newline-terminated.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("results serialise");
    s.push('\n');
    s
}

/// Writes `text` to `out`, or to standard output when `out` is absent.
pub fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
