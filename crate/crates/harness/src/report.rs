//! Report model and rendering.
//!
//! The report body (everything except `total_millis`) is deterministic
//! for a fixed instance and seed: entries are sorted by check name and
//! all data comes from exact arithmetic.

use serde::Serialize;

use wakkit_core::check::{CheckItem, Witness};
use wakkit_core::exactlin::Mat;

#[derive(Debug, Clone, Serialize)]
pub struct WitnessJson {
    pub label: String,
    pub lhs: MatJson,
    pub rhs: MatJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct MatJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<u64>,
}

impl From<&Mat> for MatJson {
    fn from(m: &Mat) -> MatJson {
        MatJson { rows: m.rows, cols: m.cols, entries: m.entries().to_vec() }
    }
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> WitnessJson {
        WitnessJson { label: w.label.clone(), lhs: (&w.lhs).into(), rhs: (&w.rhs).into() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    pub details: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

impl From<&CheckItem> for CheckEntry {
    fn from(item: &CheckItem) -> CheckEntry {
        CheckEntry {
            name: item.name.clone(),
            status: if item.passed { "pass".into() } else { "fail".into() },
            bound: item.bound,
            details: item.details.clone(),
            witness: item.witness.as_ref().map(|w| w.into()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub instance: String,
    pub seed: u64,
    pub max_dim: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub checks: Vec<CheckEntry>,
    /// wall-clock time; excluded from the determinism contract
    pub total_millis: u128,
}

impl Report {
    pub fn from_items(
        instance: &str,
        seed: u64,
        max_dim: usize,
        mut items: Vec<CheckItem>,
        skipped: Vec<(String, String)>,
        total_millis: u128,
    ) -> Report {
        items.sort_by(|a, b| a.name.cmp(&b.name));
        let mut checks: Vec<CheckEntry> = items.iter().map(|i| i.into()).collect();
        for (name, why) in &skipped {
            checks.push(CheckEntry {
                name: name.clone(),
                status: "skip".into(),
                bound: None,
                details: why.clone(),
                witness: None,
            });
        }
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let passed = checks.iter().filter(|c| c.status == "pass").count();
        let failed = checks.iter().filter(|c| c.status == "fail").count();
        let skipped_n = checks.iter().filter(|c| c.status == "skip").count();
        Report {
            instance: instance.to_string(),
            seed,
            max_dim,
            passed,
            failed,
            skipped: skipped_n,
            checks,
            total_millis,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    /// The deterministic portion: the report with the timing zeroed.
    pub fn body_json(&self) -> String {
        let mut clone = self.clone();
        clone.total_millis = 0;
        serde_json::to_string_pretty(&clone).expect("report serialization")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("instance: {}  (seed {})\n", self.instance, self.seed));
        for c in &self.checks {
            let bound = match c.bound {
                Some(b) => format!(" [bound {}]", b),
                None => String::new(),
            };
            out.push_str(&format!("{:<4} {:<42}{} {}\n", c.status, c.name, bound, c.details));
            if let Some(w) = &c.witness {
                out.push_str(&format!(
                    "     witness: {} ({}x{} vs {}x{})\n",
                    w.label, w.lhs.rows, w.lhs.cols, w.rhs.rows, w.rhs.cols
                ));
            }
        }
        out.push_str(&format!(
            "{} passed, {} failed, {} skipped ({} ms)\n",
            self.passed, self.failed, self.skipped, self.total_millis
        ));
        out
    }
}
