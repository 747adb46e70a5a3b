//! One-shot report on a named model: derived flag, growth vector, first
//! integrals among a few candidates, and the dimension of its low-degree
//! polynomial symmetries.

use serde::Serialize;

use crate::algebra::{fmt_rational, int, MultiPoly};
use crate::distribution::{derived_flag, fmt_ranks, solve_symmetries, Distribution, DistributionError};
use crate::models::{
    build_affine_model, build_flat36, build_quadric235, build_rule_a, build_rule_b, reference, ModelError, MODEL_NAMES,
};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ModelAnalysis {
    pub model: String,
    pub seed: u64,
    pub manifold_dim: usize,
    /// Generic ranks of the derived flag, terminal repeat included.
    pub derived_flag: Vec<usize>,
    /// Flag without the repeated terminal rank, e.g. `(3,5)`.
    pub growth: String,
    pub witness_points: Vec<Vec<String>>,
    pub integrable: bool,
    pub first_integrals: Vec<String>,
    pub symmetry_degree: u32,
    pub symmetry_dimension: Option<usize>,
    /// Why the symmetry solve was skipped, if it was.
    pub symmetry_note: Option<String>,
}

struct Target {
    distribution: Distribution,
    candidates: Vec<(&'static str, MultiPoly)>,
}

fn target(name: &str) -> Result<Target, ModelError> {
    Ok(match name {
        "rule-a" | "rule-b" => {
            let m = if name == "rule-a" { build_rule_a() } else { build_rule_b() };
            Target {
                distribution: m.distribution(),
                candidates: vec![("32A", m.area32.clone())],
            }
        }
        "sqrt-b" => {
            let m = build_rule_b();
            Target {
                distribution: m.square_root_distribution(int(1))?,
                candidates: vec![("32A", m.area32.clone())],
            }
        }
        "affine" => {
            let m = build_affine_model(int(1))?;
            Target {
                distribution: m.rank3_distribution(),
                candidates: vec![("Det", m.det.clone())],
            }
        }
        "flat36" => Target {
            distribution: build_flat36(),
            candidates: vec![("p.q", reference::quadric_function())],
        },
        "quadric235" => Target {
            distribution: build_quadric235()?,
            candidates: vec![("p.q", reference::quadric_function())],
        },
        other => {
            return Err(ModelError::Unsupported(format!(
                "unknown model {other}; expected one of {}",
                MODEL_NAMES.join(", ")
            )))
        }
    })
}

pub fn analyze_model(name: &str, seed: u64, symmetry_degree: u32) -> Result<ModelAnalysis, ModelError> {
    let t = target(name)?;
    let d = &t.distribution;
    let flag = derived_flag(d, 4, seed, 3)?;
    let n = flag.ranks.len();
    let trimmed = if n >= 2 && flag.ranks[n - 1] == flag.ranks[n - 2] { &flag.ranks[..n - 1] } else { &flag.ranks[..] };
    let mut first_integrals = Vec::new();
    for (label, f) in &t.candidates {
        if d.check_first_integral(&f.clone().into())? {
            first_integrals.push(label.to_string());
        }
    }
    let (symmetry_dimension, symmetry_note) = match solve_symmetries(d, symmetry_degree) {
        Ok(basis) => (Some(basis.len()), None),
        Err(e @ (DistributionError::NotPolynomial(_) | DistributionError::AnsatzTooLarge { .. })) => (None, Some(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    Ok(ModelAnalysis {
        model: name.into(),
        seed,
        manifold_dim: d.manifold_dim(),
        growth: fmt_ranks(trimmed),
        derived_flag: flag.ranks.clone(),
        witness_points: flag
            .witness_points
            .iter()
            .map(|p| p.iter().map(fmt_rational).collect())
            .collect(),
        integrable: d.is_integrable(),
        first_integrals,
        symmetry_degree,
        symmetry_dimension,
        symmetry_note,
    })
}

impl ModelAnalysis {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("model: {}\n", self.model);
        out += &format!("manifold dimension: {}\n", self.manifold_dim);
        out += &format!("derived flag: {}\n", fmt_ranks(&self.derived_flag));
        out += &format!("growth: {}\n", self.growth);
        out += &format!("integrable: {}\n", self.integrable);
        if self.first_integrals.is_empty() {
            out += "first integral: none among candidates\n";
        }
        for f in &self.first_integrals {
            out += &format!("first integral: {f}\n");
        }
        match (self.symmetry_dimension, &self.symmetry_note) {
            (Some(k), _) => out += &format!("symmetry dimension (degree <= {}): {k}\n", self.symmetry_degree),
            (None, Some(note)) => out += &format!("symmetry dimension: skipped ({note})\n"),
            (None, None) => {}
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let sym = self.symmetry_dimension.map(|k| k.to_string()).unwrap_or_default();
        format!(
            "model,manifold_dim,derived_flag,growth,integrable,first_integrals,symmetry_degree,symmetry_dimension\n{},{},\"{}\",\"{}\",{},\"{}\",{},{}\n",
            self.model,
            self.manifold_dim,
            fmt_ranks(&self.derived_flag),
            self.growth,
            self.integrable,
            self.first_integrals.join(";"),
            self.symmetry_degree,
            sym
        )
    }
}
