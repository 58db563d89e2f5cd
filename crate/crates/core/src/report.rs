//! Named pass/fail checks shared by the verification routines.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::fock::FockElement;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: Option<String>) -> Self {
        Check { name: name.into(), pass, detail }
    }

    /// Exact equality of two elements; on failure the detail is `left - right`.
    pub fn equal<S: Scalar>(name: impl Into<String>, left: &FockElement<S>, right: &FockElement<S>) -> Self {
        let diff = left.sub(right);
        let detail = (!diff.is_zero()).then(|| format!("left - right = {diff}"));
        Check { name: name.into(), pass: diff.is_zero(), detail }
    }

    pub fn from_result(name: impl Into<String>, r: crate::Result<Check>) -> Self {
        match r {
            Ok(c) => c,
            Err(e) => Check::new(name, false, Some(e.to_string())),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "pass" } else { "FAIL" };
        write!(f, "{status} {}", self.name)?;
        if let Some(d) = &self.detail {
            write!(f, ": {d}")?;
        }
        Ok(())
    }
}

/// A titled list of checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        for c in &self.checks {
            writeln!(f, "  {c}")?;
        }
        Ok(())
    }
}
