use std::io::Write;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    /// Largest residual magnitude; exact checks report 0 or infinity.
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Debug, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub lines: Vec<String>,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub matrix: Option<Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), ..Default::default() }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    /// A numeric check passes when `residual < tol`.
    pub fn numeric(&mut self, name: impl Into<String>, residual: f64, tol: f64) {
        let pass = residual < tol;
        self.checks.push(Check { name: name.into(), residual, tol, pass });
    }

    pub fn exact(&mut self, name: impl Into<String>, zero: bool) {
        let residual = if zero { 0.0 } else { f64::INFINITY };
        self.checks.push(Check { name: name.into(), residual, tol: 0.0, pass: zero });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn print(&self, out: &mut impl Write) -> std::io::Result<()> {
        writeln!(out, "{}", self.command)?;
        for l in &self.lines {
            writeln!(out, "  {l}")?;
        }
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            if c.tol == 0.0 {
                let state = if c.residual == 0.0 { "zero" } else { "nonzero" };
                writeln!(out, "  {tag} {}: exact residual {state}", c.name)?;
            } else {
                writeln!(out, "  {tag} {}: residual {:.3e} (tol {:.0e})", c.name, c.residual, c.tol)?;
            }
        }
        if !self.checks.is_empty() {
            let n = self.checks.iter().filter(|c| c.pass).count();
            let max = self.checks.iter().filter(|c| c.tol > 0.0).map(|c| c.residual).fold(0.0, f64::max);
            writeln!(out, "  {n}/{} pass, max residual {:.3e}", self.checks.len(), max)?;
        }
        Ok(())
    }

    /// The exported matrix when there is one, the report otherwise.
    pub fn to_json(&self) -> Value {
        match &self.matrix {
            Some(m) => m.clone(),
            None => serde_json::to_value(self).expect("report serializes"),
        }
    }
}
