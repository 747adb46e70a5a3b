//! The full verification suite: every exact identity and numerical monitor,
//! collected into one deterministic report.

mod checks;

use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::distribution::DistributionError;
use crate::extremals::ExtremalError;
use crate::models::ModelError;
use crate::quartic_metric::QuarticMetricError;

pub use checks::GROUPS;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Distribution(#[from] DistributionError),
    #[error(transparent)]
    Extremal(#[from] ExtremalError),
    #[error(transparent)]
    Quartic(#[from] QuarticMetricError),
    #[error("unknown check or group `{0}`")]
    UnknownSelector(String),
    #[error("unknown tolerance `{0}`")]
    UnknownTolerance(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

/// Numerical thresholds, one per monitored quantity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub h_drift: f64,
    pub inv_sum: f64,
    pub inv_prod: f64,
    pub barycenter: f64,
    pub control: f64,
    /// Minimum drift ratio when the step is halved.
    pub halving_ratio: f64,
    pub reduced_invariant: f64,
    pub closed_form: f64,
    pub elliptic: f64,
    pub exponential: f64,
    pub fuchsian: f64,
    pub stationary: f64,
    pub parallel: f64,
    pub area: f64,
    pub bisectrix: f64,
    pub speed_spread: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            h_drift: 1e-8,
            inv_sum: 1e-12,
            inv_prod: 1e-8,
            barycenter: 1e-8,
            control: 1e-8,
            halving_ratio: 8.0,
            reduced_invariant: 1e-8,
            closed_form: 1e-6,
            elliptic: 1e-6,
            exponential: 1e-6,
            fuchsian: 1e-6,
            stationary: 1e-9,
            parallel: 1e-8,
            area: 1e-8,
            bisectrix: 1e-6,
            speed_spread: 1e-9,
        }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 16] = [
        "h_drift",
        "inv_sum",
        "inv_prod",
        "barycenter",
        "control",
        "halving_ratio",
        "reduced_invariant",
        "closed_form",
        "elliptic",
        "exponential",
        "fuchsian",
        "stationary",
        "parallel",
        "area",
        "bisectrix",
        "speed_spread",
    ];

    /// Sets a tolerance by name; `-` and `_` are interchangeable.
    pub fn set(&mut self, name: &str, value: f64) -> Result<(), VerifyError> {
        if !(value.is_finite() && value > 0.0) {
            return Err(VerifyError::InvalidConfig(format!("tolerance {name} must be positive, got {value}")));
        }
        let slot = match name.replace('-', "_").as_str() {
            "h_drift" => &mut self.h_drift,
            "inv_sum" => &mut self.inv_sum,
            "inv_prod" => &mut self.inv_prod,
            "barycenter" => &mut self.barycenter,
            "control" => &mut self.control,
            "halving_ratio" => &mut self.halving_ratio,
            "reduced_invariant" => &mut self.reduced_invariant,
            "closed_form" => &mut self.closed_form,
            "elliptic" => &mut self.elliptic,
            "exponential" => &mut self.exponential,
            "fuchsian" => &mut self.fuchsian,
            "stationary" => &mut self.stationary,
            "parallel" => &mut self.parallel,
            "area" => &mut self.area,
            "bisectrix" => &mut self.bisectrix,
            "speed_spread" => &mut self.speed_spread,
            _ => return Err(VerifyError::UnknownTolerance(name.into())),
        };
        *slot = value;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub step: f64,
    pub duration: f64,
    pub tolerances: Tolerances,
    /// Group names or check ids; empty runs everything.
    pub only: Vec<String>,
    /// Fill `runtime_ms`; off by default so reports are reproducible.
    pub timing: bool,
    /// Mutation control: perturbs one structure-equation coefficient.
    pub mutate_structure: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            step: 1e-4,
            duration: 1.0,
            tolerances: Tolerances::default(),
            only: Vec::new(),
            timing: false,
            mutate_structure: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub paper_anchor: String,
    pub status: String,
    pub residual_or_value: String,
    pub tolerance: String,
    pub runtime_ms: Option<u64>,
    #[serde(skip)]
    pub group: String,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub step: f64,
    pub duration: f64,
    pub tolerances: Tolerances,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn get(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check_id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    /// One row per check; the anchor is quoted.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check_id,status,residual_or_value,tolerance,runtime_ms,paper_anchor\n");
        for c in &self.checks {
            let quote = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                c.check_id,
                c.status,
                quote(&c.residual_or_value),
                c.tolerance,
                c.runtime_ms.map(|v| v.to_string()).unwrap_or_default(),
                quote(&c.paper_anchor)
            ));
        }
        out
    }
}

/// A pending check: its id, group and the computation producing it.
pub(crate) struct Pending<'a> {
    pub id: &'static str,
    pub group: &'static str,
    pub anchor: &'static str,
    pub run: Box<dyn FnOnce() -> Result<Outcome, VerifyError> + 'a>,
}

/// What a check computed.
pub(crate) enum Outcome {
    /// Exact identity; `None` means the residual is zero.
    Exact(Option<String>),
    /// `value < tolerance`.
    Below { value: f64, tolerance: f64 },
    /// `value ≥ tolerance` (convergence ratios).
    AtLeast { value: f64, tolerance: f64 },
    /// Discrete value compared with its expected form.
    Equals { value: String, expected: String },
}

fn finish(p: &Pending<'_>, outcome: Outcome, runtime_ms: Option<u64>) -> CheckResult {
    let (pass, residual, tolerance) = match outcome {
        Outcome::Exact(None) => (true, "0".to_string(), "0".to_string()),
        Outcome::Exact(Some(r)) => (false, truncate(&r), "0".to_string()),
        Outcome::Below { value, tolerance } => (value < tolerance, format!("{value:e}"), format!("{tolerance:e}")),
        Outcome::AtLeast { value, tolerance } => (value >= tolerance, format!("{value:e}"), format!(">= {tolerance:e}")),
        Outcome::Equals { value, expected } => (value == expected, value, format!("== {expected}")),
    };
    CheckResult {
        check_id: p.id.into(),
        paper_anchor: p.anchor.into(),
        status: if pass { "pass" } else { "fail" }.into(),
        residual_or_value: residual,
        tolerance,
        runtime_ms,
        group: p.group.into(),
    }
}

fn truncate(s: &str) -> String {
    const MAX: usize = 240;
    if s.chars().count() <= MAX {
        s.to_string()
    } else {
        format!("{}…", s.chars().take(MAX).collect::<String>())
    }
}

/// Runs the selected checks. A check whose computation errors is reported
/// as failed with the error text rather than aborting the run.
pub fn run_verify(config: &VerifyConfig) -> Result<VerifyReport, VerifyError> {
    if !(config.step > 0.0 && config.step.is_finite() && config.duration > 0.0 && config.duration.is_finite()) {
        return Err(VerifyError::InvalidConfig("step and duration must be positive".into()));
    }
    let shared = checks::Shared::new(config);
    let pending = checks::all(&shared);
    for sel in &config.only {
        if !GROUPS.contains(&sel.as_str()) && !pending.iter().any(|p| p.id == sel) {
            return Err(VerifyError::UnknownSelector(sel.clone()));
        }
    }
    let selected = |p: &Pending<'_>| {
        config.only.is_empty() || config.only.iter().any(|s| s == p.group || s == p.id)
    };
    let mut results = Vec::new();
    for mut p in pending.into_iter().filter(|p| selected(p)) {
        let start = Instant::now();
        let run = std::mem::replace(&mut p.run, Box::new(|| Ok(Outcome::Exact(None))));
        let outcome = run().unwrap_or_else(|e| Outcome::Exact(Some(format!("error: {e}"))));
        let ms = config.timing.then(|| start.elapsed().as_millis() as u64);
        results.push(finish(&p, outcome, ms));
    }
    results.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    Ok(VerifyReport {
        seed: config.seed,
        step: config.step,
        duration: config.duration,
        tolerances: config.tolerances.clone(),
        checks: results,
    })
}
