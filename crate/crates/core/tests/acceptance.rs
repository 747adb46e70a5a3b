//! Acceptance gate: one line per criterion, nonzero exit if any fails.
//!
//! Runs the default verification suite (seed 1, step 1e-4, T = 1) and groups
//! its checks into the eight acceptance criteria; the last criterion reruns
//! the suite and compares the serialized reports byte for byte.

use std::process::ExitCode;

use ants_core::verify::{run_verify, CheckResult, VerifyConfig, VerifyReport};

struct Criterion {
    number: u8,
    title: &'static str,
    /// Checks that decide the criterion.
    gating: &'static [&'static str],
    /// Reported alongside, not gating.
    context: &'static [&'static str],
}

const CRITERIA: [Criterion; 7] = [
    Criterion {
        number: 1,
        title: "exact identities",
        gating: &[
            "rule-a-bracket-formula",
            "rule-a-top-wedge",
            "rule-b-top-wedge",
            "rule-b-relation",
            "rule-b-area-differential",
            "rule-b-first-integral",
            "sqrt-bracket-relation",
            "sqrt-wedge-identity",
            "affine-det-annihilation",
            "affine-maurer-cartan",
            "affine-tau6-pullback",
            "eq15-structure-equations",
            "affine-theta-annihilation",
        ],
        context: &[],
    },
    Criterion {
        number: 2,
        title: "growth vectors",
        gating: &[
            "growth-rule-a",
            "growth-rule-b",
            "growth-rule-b-integrable",
            "growth-sqrt-b",
            "growth-affine-sqrt",
            "growth-flat36",
            "growth-quadric235",
            "growth-rule-a-collinear",
        ],
        context: &[],
    },
    Criterion {
        number: 3,
        title: "symmetries",
        gating: &[
            "symmetry-rule-a-projective",
            "symmetry-rule-a-solve-degree2",
            "symmetry-structure-constants",
            "symmetry-killing-signature",
            "symmetry-s-generators",
        ],
        context: &[],
    },
    Criterion {
        number: 4,
        title: "extremal dynamics",
        gating: &[
            "extremal-h-drift",
            "extremal-inv-sum",
            "extremal-inv-prod",
            "extremal-barycenter-second-difference",
            "extremal-system-b-match",
            "extremal-step-halving",
        ],
        context: &["extremal-barycenter-line", "extremal-lifted-system-match"],
    },
    Criterion {
        number: 5,
        title: "reduced system",
        gating: &[
            "reduced-e-conservation",
            "reduced-cubic-conservation",
            "reduced-closed-form-zeta",
            "reduced-elliptic-residual",
            "reduced-elliptic-inverse",
        ],
        context: &[],
    },
    Criterion {
        number: 6,
        title: "substitution chain and fixed vertex",
        gating: &[
            "chain-exponential",
            "chain-fuchsian",
            "chain-fuchsian-traceless",
            "vertex-stationary",
            "vertex-parallel-side",
            "vertex-area",
            "vertex-bisectrix",
        ],
        context: &[],
    },
    Criterion {
        number: 7,
        title: "quartic and metric",
        gating: &[
            "quartic-cartan-no-real",
            "metric-signature",
            "steiner-vertex-tangency",
            "steiner-affine-commutation",
            "speed-constant",
        ],
        context: &["speed-constant-value"],
    },
];

fn describe(c: &CheckResult) -> String {
    format!("{} {} [{} vs {}]", c.check_id, c.status, c.residual_or_value, c.tolerance)
}

fn evaluate(report: &VerifyReport, crit: &Criterion) -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for id in crit.gating {
        match report.get(id) {
            Some(c) => {
                ok &= c.passed();
                if !c.passed() {
                    parts.push(describe(c));
                }
            }
            None => {
                ok = false;
                parts.push(format!("{id} missing"));
            }
        }
    }
    if ok {
        parts.insert(0, format!("{} checks", crit.gating.len()));
    }
    for id in crit.context {
        if let Some(c) = report.get(id) {
            parts.push(format!("context: {}", describe(c)));
        }
    }
    (ok, parts.join("; "))
}

fn main() -> ExitCode {
    let config = VerifyConfig::default();
    let first = match run_verify(&config) {
        Ok(r) => r,
        Err(e) => {
            println!("acceptance: suite did not run: {e}");
            return ExitCode::FAILURE;
        }
    };
    let mut all_ok = true;
    for crit in &CRITERIA {
        let (ok, detail) = evaluate(&first, crit);
        all_ok &= ok;
        println!("criterion {} ({}): {}: {}", crit.number, crit.title, if ok { "PASS" } else { "FAIL" }, detail);
    }
    let second = run_verify(&config).expect("same config as the first run");
    let (a, b) = (first.to_json(), second.to_json());
    let same = a == b;
    all_ok &= same;
    println!(
        "criterion 8 (determinism): {}: {} bytes, {}",
        if same { "PASS" } else { "FAIL" },
        a.len(),
        if same { "identical" } else { "reports differ" }
    );
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
