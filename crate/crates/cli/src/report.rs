use std::collections::BTreeMap;

use rdual_core::Tolerances;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Measured,
}

/// A named quantity. Residuals with a tolerance are asserted; the others are
/// reported as measurements.
#[derive(Clone, Debug, Serialize)]
pub struct Residual {
    pub name: String,
    pub value: f64,
    pub tolerance: Option<f64>,
}

impl Residual {
    pub fn asserted(name: &str, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tolerance: Some(tolerance),
        }
    }

    pub fn measured(name: &str, value: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tolerance: None,
        }
    }

    pub fn holds(&self) -> bool {
        match self.tolerance {
            Some(t) => self.value <= t,
            None => true,
        }
    }
}

/// What a command produced: its result body and residuals.
#[derive(Debug)]
pub struct Outcome {
    pub results: Value,
    pub residuals: Vec<Residual>,
}

impl Outcome {
    pub fn new(results: Value, residuals: Vec<Residual>) -> Self {
        Self { results, residuals }
    }

    /// Fail if an asserted residual is exceeded, measured if anything was
    /// only measured, pass otherwise.
    pub fn verdict(&self) -> Verdict {
        if !self.residuals.iter().all(Residual::holds) {
            Verdict::Fail
        } else if self.residuals.iter().any(|r| r.tolerance.is_none()) {
            Verdict::Measured
        } else {
            Verdict::Pass
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub tolerances: Tolerances,
    pub results: Value,
    pub residuals: Vec<Residual>,
    pub verdict: Verdict,
}

impl RunReport {
    pub fn from_outcome(
        command: &str,
        inputs: BTreeMap<String, String>,
        tolerances: Tolerances,
        outcome: Outcome,
    ) -> Self {
        let verdict = outcome.verdict();
        Self {
            command: command.into(),
            inputs,
            tolerances,
            results: outcome.results,
            residuals: outcome.residuals,
            verdict,
        }
    }

    pub fn failed(
        command: &str,
        inputs: BTreeMap<String, String>,
        tolerances: Tolerances,
        error: String,
    ) -> Self {
        Self {
            command: command.into(),
            inputs,
            tolerances,
            results: serde_json::json!({ "error": error }),
            residuals: Vec::new(),
            verdict: Verdict::Fail,
        }
    }

    /// One line per residual, for standard error.
    pub fn summary(&self) -> String {
        let verdict = match self.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Measured => "measured",
        };
        let mut out = format!("{}: {verdict}\n", self.command);
        if let Some(err) = self.results.get("error").and_then(Value::as_str) {
            out.push_str(&format!("  error: {err}\n"));
        }
        for r in &self.residuals {
            match r.tolerance {
                Some(t) => out.push_str(&format!(
                    "  {} = {:.3e} (<= {:.1e}: {})\n",
                    r.name,
                    r.value,
                    t,
                    if r.holds() { "ok" } else { "violated" }
                )),
                None => out.push_str(&format!("  {} = {:.3e} (measured)\n", r.name, r.value)),
            }
        }
        out
    }
}
