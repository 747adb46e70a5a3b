//! JSON dumps of the models with canonical polynomial strings.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{affine, ants, reference, ModelError};
use crate::algebra::{fmt_rational, int};

/// Model names accepted by [`model_dump`].
pub const MODEL_NAMES: [&str; 6] = ["rule-a", "rule-b", "sqrt-b", "affine", "flat36", "quadric235"];

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ModelDump {
    pub name: String,
    pub chart: Vec<String>,
    pub fields: BTreeMap<String, String>,
    pub forms: BTreeMap<String, String>,
    pub functions: BTreeMap<String, String>,
    pub leaf: Option<(String, String)>,
}

impl ModelDump {
    fn new(name: &str, chart: &crate::algebra::Chart) -> Self {
        Self {
            name: name.into(),
            chart: (0..chart.dim()).map(|i| chart.name(i).to_string()).collect(),
            fields: BTreeMap::new(),
            forms: BTreeMap::new(),
            functions: BTreeMap::new(),
            leaf: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

fn ant_dump(name: &str, m: &ants::AntModel) -> ModelDump {
    let mut d = ModelDump::new(name, &m.chart);
    let [z12, z23, z31] = m.brackets();
    for (i, z) in m.z.iter().enumerate() {
        d.fields.insert(format!("Z{}", i + 1), z.to_string());
    }
    d.fields.insert("Z12".into(), z12.to_string());
    d.fields.insert("Z23".into(), z23.to_string());
    d.fields.insert("Z31".into(), z31.to_string());
    for (i, w) in m.omega.iter().enumerate() {
        d.forms.insert(format!("omega{}", i + 1), w.to_string());
    }
    d.functions.insert("area32".into(), m.area32.to_string());
    d
}

pub fn model_dump(name: &str) -> Result<ModelDump, ModelError> {
    match name {
        "rule-a" => Ok(ant_dump(name, &ants::build_rule_a())),
        "rule-b" => Ok(ant_dump(name, &ants::build_rule_b())),
        "sqrt-b" => {
            let m = ants::build_rule_b();
            let level = ants::default_area_level();
            let sq = m.square_root_distribution(level.clone())?;
            let mut d = ModelDump::new(name, &m.chart);
            for (i, g) in sq.generators().iter().enumerate() {
                d.fields.insert(format!("D{}", i + 1), g.to_string());
            }
            d.leaf = Some((m.area32.to_string(), fmt_rational(&level)));
            Ok(d)
        }
        "affine" => {
            let m = affine::build_affine_model(int(1))?;
            let mut d = ModelDump::new(name, &m.chart);
            for (i, v) in m.moves.iter().enumerate() {
                d.fields.insert(format!("V{}", i + 1), v.to_string());
            }
            for (i, t) in m.tau.iter().enumerate() {
                d.forms.insert(format!("tau{}", i + 1), t.to_string());
            }
            for (i, t) in m.theta_poly.iter().enumerate() {
                d.forms.insert(format!("theta{}_cleared", i + 1), t.to_string());
            }
            d.functions.insert("det".into(), m.det.to_string());
            d.leaf = Some((m.det.to_string(), fmt_rational(&m.level)));
            Ok(d)
        }
        "flat36" => {
            let c = reference::flat_chart();
            let mut d = ModelDump::new(name, &c);
            for (i, q) in reference::flat_fields().iter().enumerate() {
                d.fields.insert(format!("Q{}", i + 1), q.to_string());
            }
            for (i, l) in reference::flat_forms().iter().enumerate() {
                d.forms.insert(format!("lambda{}", i + 1), l.to_string());
            }
            Ok(d)
        }
        "quadric235" => {
            let q = reference::build_quadric235()?;
            let mut d = ModelDump::new(name, q.chart());
            for (i, g) in q.generators().iter().enumerate() {
                d.fields.insert(format!("W{}", i + 1), g.to_string());
            }
            d.leaf = Some((reference::quadric_function().to_string(), "1".into()));
            Ok(d)
        }
        other => Err(ModelError::Unsupported(format!("unknown model {other}"))),
    }
}
