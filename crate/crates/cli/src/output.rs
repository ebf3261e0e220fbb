use alexandrite_core::{Error, ErrorKind};

/// A finished report: human text, machine JSON and the exit code to use.
pub struct Report {
    pub text: String,
    pub json: serde_json::Value,
    pub exit_code: u8,
}

impl Report {
    pub fn ok(text: String, json: serde_json::Value) -> Self {
        Report { text, json, exit_code: 0 }
    }

    pub fn print(&self, json: bool) {
        if json {
            println!("{}", serde_json::to_string_pretty(&self.json).expect("reports serialize"));
        } else {
            print!("{}", self.text);
        }
    }
}

pub struct Failure {
    pub kind: ErrorKind,
    pub message: String,
    /// Partial report to print before the error, for hypothesis failures.
    pub report: Option<Report>,
}

impl Failure {
    pub fn hypothesis(message: impl Into<String>, report: Report) -> Self {
        Failure { kind: ErrorKind::Hypothesis, message: message.into(), report: Some(report) }
    }

    pub fn input(message: impl Into<String>) -> Self {
        Failure { kind: ErrorKind::Input, message: message.into(), report: None }
    }

    pub fn internal(message: impl Into<String>, report: Report) -> Self {
        Failure { kind: ErrorKind::Internal, message: message.into(), report: Some(report) }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { kind: e.kind(), message: e.to_string(), report: None }
    }
}
