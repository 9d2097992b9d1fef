use serde::{Deserialize, Serialize};
use serde_json::Value;

use schubert::verify::Check;

pub const SCHEMA: &str = include_str!("../report.schema.json");
pub const SCHEMA_VERSION: u32 = 1;

/// Everything a subcommand prints. The JSON form is validated against
/// `report.schema.json` in the tests.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<Check>,
    pub version: String,
    pub seed: Option<u64>,
}

impl ReportDocument {
    pub fn new(command: &str, inputs: Value, results: Value) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs,
            results,
            checks: Vec::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn print_checks(&self) {
        if self.checks.is_empty() {
            return;
        }
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        println!();
        for c in &self.checks {
            println!(
                "  {:<width$}  {}  {:.3e} (tol {:.0e})",
                c.name,
                if c.passed { "pass" } else { "FAIL" },
                c.deviation,
                c.tolerance
            );
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        println!("\n{} checks, {} failed", self.checks.len(), failed);
    }
}
