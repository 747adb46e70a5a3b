//! CSV and manifest output for extremal runs.

use std::fmt::Write;

use serde::Serialize;

use super::trajectory::{DriftSummary, ExtremalTrajectory, MonitorTolerances};

pub const CSV_HEADER: &str = "t,x1,y1,x2,y2,x3,y3,l1,l2,l3,l4,l5,l6,u1,u2,u3,inv_sum,inv_prod,bary_x,bary_y";

/// One row per step; floats in shortest round-trip form.
pub fn trajectory_csv(traj: &ExtremalTrajectory) -> String {
    let mut out = String::with_capacity(traj.states.len() * 200);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for (n, (s, u)) in traj.states.iter().zip(&traj.u).enumerate() {
        let b = traj.barycenter(n);
        let mut row: Vec<f64> = vec![s.t];
        row.extend(s.q);
        row.extend(s.lambda);
        row.extend(u);
        row.push(u[0] + u[1] + u[2]);
        row.push(u[0] * u[1] * u[2]);
        row.extend(b);
        let line = row.iter().map(|v| format!("{v:e}")).collect::<Vec<_>>().join(",");
        let _ = writeln!(out, "{line}");
    }
    out
}

/// Run metadata written next to a trajectory.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub seed: u64,
    pub rule: String,
    pub step: f64,
    pub duration: f64,
    pub u0: [String; 3],
    pub q0: [String; 6],
    pub lambda0: [String; 6],
    pub tolerances: MonitorTolerances,
    pub drift: DriftSummary,
    pub flags: Vec<String>,
}
