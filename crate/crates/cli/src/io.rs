//! Divisor input and report output.

use std::fs;
use std::path::Path;

use eisenstein_core::modular::Divisor;
use eisenstein_core::Rational;
use serde::Serialize;
use serde_json::Value;

use crate::error::{CliError, CliResult, SchemaProblem};
use crate::report::VerificationReport;

fn problem(pointer: String, message: impl Into<String>) -> SchemaProblem {
    SchemaProblem {
        pointer,
        message: message.into(),
    }
}

fn as_int(v: &Value) -> Option<i64> {
    v.as_i64()
}

/// Every violation of `{"N": int, "support": [{"t1", "t2", "coeff"}]}`,
/// in document order.
pub fn divisor_schema_problems(doc: &Value) -> Vec<SchemaProblem> {
    let mut out = Vec::new();
    let Some(root) = doc.as_object() else {
        out.push(problem(String::new(), "expected an object"));
        return out;
    };
    for key in root.keys().filter(|k| *k != "N" && *k != "support") {
        out.push(problem(format!("/{key}"), "unknown field"));
    }
    let n = match root.get("N") {
        None => {
            out.push(problem("/N".into(), "missing field"));
            None
        }
        Some(v) => match as_int(v) {
            Some(n) if n >= 3 && n <= u32::MAX as i64 => Some(n),
            Some(n) => {
                out.push(problem(
                    "/N".into(),
                    format!("modulus must be at least 3, got {n}"),
                ));
                None
            }
            None => {
                out.push(problem("/N".into(), "expected an integer"));
                None
            }
        },
    };
    let Some(support) = root.get("support") else {
        out.push(problem("/support".into(), "missing field"));
        return out;
    };
    let Some(items) = support.as_array() else {
        out.push(problem("/support".into(), "expected an array"));
        return out;
    };
    let mut seen = std::collections::BTreeSet::new();
    for (i, item) in items.iter().enumerate() {
        let at = format!("/support/{i}");
        let Some(obj) = item.as_object() else {
            out.push(problem(at, "expected an object"));
            continue;
        };
        for key in obj
            .keys()
            .filter(|k| !["t1", "t2", "coeff"].contains(&k.as_str()))
        {
            out.push(problem(format!("{at}/{key}"), "unknown field"));
        }
        let mut coords = [None, None];
        for (slot, key) in ["t1", "t2"].iter().enumerate() {
            match obj.get(*key).map(as_int) {
                None => out.push(problem(format!("{at}/{key}"), "missing field")),
                Some(None) => out.push(problem(format!("{at}/{key}"), "expected an integer")),
                Some(Some(t)) => match n {
                    Some(n) if t < 0 || t >= n => out.push(problem(
                        format!("{at}/{key}"),
                        format!("must lie in 0..{n}, got {t}"),
                    )),
                    _ => coords[slot] = Some(t),
                },
            }
        }
        match obj.get("coeff") {
            None => out.push(problem(format!("{at}/coeff"), "missing field")),
            Some(Value::String(s)) => {
                if s.parse::<Rational>().is_err() {
                    out.push(problem(
                        format!("{at}/coeff"),
                        format!("not a rational \"p/q\": {s:?}"),
                    ));
                }
            }
            Some(_) => out.push(problem(format!("{at}/coeff"), "expected a string \"p/q\"")),
        }
        if let [Some(t1), Some(t2)] = coords {
            if t1 == 0 && t2 == 0 {
                out.push(problem(
                    at,
                    "the origin (0, 0) is not allowed in the support",
                ));
            } else if !seen.insert((t1, t2)) {
                out.push(problem(at, format!("duplicate point ({t1}, {t2})")));
            }
        }
    }
    out
}

/// Parses a divisor document; `path` only labels diagnostics.
pub fn parse_divisor(text: &str, path: &Path) -> CliResult<Divisor> {
    let doc: Value = serde_json::from_str(text).map_err(|e| CliError::Syntax {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let problems = divisor_schema_problems(&doc);
    if !problems.is_empty() {
        return Err(CliError::Schema {
            path: path.to_path_buf(),
            problems,
        });
    }
    serde_json::from_value(doc).map_err(|e| CliError::Schema {
        path: path.to_path_buf(),
        problems: vec![problem(String::new(), e.to_string())],
    })
}

pub fn load_divisor(path: &Path) -> CliResult<Divisor> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_divisor(&text, path)
}

/// Writes pretty JSON with a trailing newline.
pub fn save_json<T: Serialize>(value: &T, path: &Path) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("values serialize");
    text.push('\n');
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn save_report(report: &VerificationReport, path: &Path) -> CliResult<()> {
    fs::write(path, report.to_json()).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}
