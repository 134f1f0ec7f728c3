use serde::Serialize;
use serde_json::{Map, Value};

use crate::request::CommandRequest;

/// Name and version of the tool that produced a report.
pub const TOOL: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

impl Summary {
    fn of<'a>(verdicts: impl Iterator<Item = &'a bool>) -> Self {
        let mut s = Summary::default();
        for &v in verdicts {
            s.total += 1;
            if v {
                s.passed += 1;
            } else {
                s.failed += 1;
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Case {
    pub name: String,
    pub params: Map<String, Value>,
    pub passed: bool,
    pub detail: Value,
}

impl Case {
    pub fn new(name: &str, params: Value, passed: bool, detail: Value) -> Self {
        let params = match params {
            Value::Object(m) => m,
            Value::Null => Map::new(),
            other => Map::from_iter([("value".to_string(), other)]),
        };
        Case {
            name: name.to_string(),
            params,
            passed,
            detail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub summary: Summary,
    pub cases: Vec<Case>,
}

impl SuiteReport {
    pub fn new(suite: &str, cases: Vec<Case>) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            summary: Summary::of(cases.iter().map(|c| &c.passed)),
            cases,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn case(&self, name: &str) -> impl Iterator<Item = &Case> {
        let name = name.to_string();
        self.cases.iter().filter(move |c| c.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub tool: String,
    pub request: CommandRequest,
    pub summary: Summary,
    pub suites: Vec<SuiteReport>,
}

impl VerificationReport {
    pub fn new(request: CommandRequest, suites: Vec<SuiteReport>) -> Self {
        let verdicts: Vec<bool> = suites
            .iter()
            .flat_map(|s| s.cases.iter().map(|c| c.passed))
            .collect();
        VerificationReport {
            tool: TOOL.to_string(),
            request,
            summary: Summary::of(verdicts.iter()),
            suites,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// 0 when every verdict passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.suite == name)
    }

    /// Pretty JSON with a trailing newline; stable across runs.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
