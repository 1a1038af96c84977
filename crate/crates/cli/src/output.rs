use std::fmt;

use henselian::Error;
use serde_json::{json, Value as Json};

/// A command's result with the path taken and the postconditions verified
/// before printing.
#[derive(Debug)]
pub struct Output {
    pub result: Json,
    pub route: Option<String>,
    pub checks: Vec<String>,
}

impl Output {
    pub fn new(result: Json) -> Self {
        Output {
            result,
            route: None,
            checks: Vec::new(),
        }
    }

    pub fn route(mut self, route: impl Into<String>) -> Self {
        self.route = Some(route.into());
        self
    }

    /// Records a verified postcondition; a failed one is an internal error.
    pub fn check(&mut self, ok: bool, name: &str) -> Result<(), Failure> {
        if !ok {
            return Err(Failure::Lib(Error::Internal(format!("postcondition failed: {}", name))));
        }
        self.checks.push(name.to_string());
        Ok(())
    }

    pub fn to_json(&self) -> Json {
        json!({
            "result": self.result,
            "route": self.route,
            "checks": self.checks,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.result {
            Json::Object(map) => {
                for (k, v) in map {
                    out.push_str(&format!("{}: {}\n", k, v));
                }
            }
            other => out.push_str(&format!("{}\n", other)),
        }
        if let Some(r) = &self.route {
            out.push_str(&format!("route: {}\n", r));
        }
        for c in &self.checks {
            out.push_str(&format!("checked: {}\n", c));
        }
        out
    }
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Lib(Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 64,
            Failure::Lib(Error::Parse(_) | Error::InvalidRing(_)) => 64,
            Failure::Lib(e) if e.is_internal() => 1,
            Failure::Lib(_) => 2,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "Usage",
            Failure::Lib(e) => e.code(),
        }
    }

    pub fn to_json(&self) -> Json {
        json!({ "error": { "code": self.code(), "message": self.to_string() } })
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "{}", m),
            Failure::Lib(e) => write!(f, "{}", e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

pub fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(Failure::Lib(Error::Internal("x".into())).exit_code(), 1);
        assert_eq!(Failure::Lib(Error::NotMonic).exit_code(), 2);
        assert_eq!(Failure::Lib(Error::Parse("x".into())).exit_code(), 64);
        assert_eq!(usage("x").exit_code(), 64);
    }

    #[test]
    fn failed_check_is_internal() {
        let mut out = Output::new(Json::Null);
        let err = out.check(false, "f(root)=0").unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(out.checks.is_empty());
    }
}
