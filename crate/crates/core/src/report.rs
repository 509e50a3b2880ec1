//! Residual reports: named identity checks with a tolerance and a pass flag.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// One identity check. `gated` items count towards the overall verdict.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportItem {
    pub name: String,
    pub anchor: String,
    #[serde(serialize_with = "round12")]
    pub residual: f64,
    #[serde(default)]
    pub tol: f64,
    pub pass: bool,
    #[serde(default = "yes")]
    pub gated: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResidualReport {
    pub suite: String,
    #[serde(default)]
    pub model: String,
    #[serde(default)]
    pub digest: String,
    pub items: Vec<ReportItem>,
}

fn yes() -> bool {
    true
}

/// Residuals are written with 12 significant digits so reports are stable
/// across platforms.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn round12<S: serde::Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig(*x))
}

/// Hex SHA-256 of the given bytes.
pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl ResidualReport {
    pub fn new(suite: impl Into<String>, model: impl Into<String>, digest: impl Into<String>) -> Self {
        ResidualReport { suite: suite.into(), model: model.into(), digest: digest.into(), items: Vec::new() }
    }

    pub fn check(&mut self, name: &str, anchor: &str, residual: f64, tol: f64) {
        self.items.push(ReportItem {
            name: name.into(),
            anchor: anchor.into(),
            residual,
            tol,
            pass: residual <= tol,
            gated: true,
        });
    }

    /// Recorded with its verdict but excluded from `all_pass`.
    pub fn note(&mut self, name: &str, anchor: &str, residual: f64, tol: f64) {
        self.check(name, anchor, residual, tol);
        self.items.last_mut().expect("just pushed").gated = false;
    }

    /// One direction of an equivalence: when the antecedent residual is within
    /// tolerance the consequent residual must be too.
    pub fn implies(&mut self, name: &str, anchor: &str, antecedent: f64, consequent: f64, tol: f64) {
        let r = if antecedent <= tol { consequent } else { 0.0 };
        self.check(name, anchor, r, tol);
    }

    pub fn extend(&mut self, other: ResidualReport) {
        self.items.extend(other.items);
    }

    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.pass || !i.gated)
    }

    pub fn get(&self, name: &str) -> Option<&ReportItem> {
        self.items.iter().find(|i| i.name == name)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "suite {} on {} [{}]", self.suite, self.model, &self.digest[..self.digest.len().min(12)]);
        let w = self.items.iter().map(|i| i.name.chars().count()).max().unwrap_or(0);
        for i in &self.items {
            let verdict = match (i.gated, i.pass) {
                (false, _) => "note",
                (true, true) => "PASS",
                (true, false) => "FAIL",
            };
            let pad = w - i.name.chars().count();
            let _ = writeln!(
                s,
                "  {verdict}  {}{}  {:>10.3e}  (tol {:.0e})  {}",
                i.name,
                " ".repeat(pad),
                round_sig(i.residual),
                i.tol,
                i.anchor
            );
        }
        let _ = writeln!(s, "  {}", if self.all_pass() { "all gated checks pass" } else { "some gated checks FAIL" });
        s
    }
}
