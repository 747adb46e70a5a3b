//! Singular trajectories with one vertex at rest (`u2 ≡ 0`).

use serde::Serialize;

use super::rk4::Rk4;
use super::trajectory::control_rhs;
use super::ExtremalError;
use crate::models::Rule;

#[derive(Clone, Debug, Serialize)]
pub struct FixedVertexReport {
    pub step: f64,
    /// Vertices `z1, z2, z3` and controls `u` at each step.
    pub vertices: Vec<[[f64; 2]; 3]>,
    pub u: Vec<[f64; 3]>,
    /// `max |z2(t) − z2(0)|`.
    pub stationary_vertex: f64,
    /// `max |sin ∠(z3 − z1, (z3 − z1)(0))|`.
    pub parallel_side: f64,
    /// `max |area(t) − area(0)|`.
    pub area_drift: f64,
    /// `max |sin ∠(m(t), m(0))|` for the median `m = (z1 + z3)/2 − z2`
    /// through the fixed vertex.
    pub bisectrix_collinearity: f64,
}

fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn unit_sine(a: [f64; 2], b: [f64; 2]) -> f64 {
    cross(a, b) / (a[0].hypot(a[1]) * b[0].hypot(b[1]))
}

/// Integrates `ż1 = u1(z2 − z3)`, `ż2 = u2(z3 − z1)`, `ż3 = u3(z1 − z2)`
/// together with system (B) from `u = (u1, 0, −u1)`.
pub fn fixed_vertex_trajectory(
    triangle: [[f64; 2]; 3],
    u1: f64,
    duration: f64,
    step: f64,
) -> Result<FixedVertexReport, ExtremalError> {
    let area = |z: &[[f64; 2]; 3]| 0.5 * cross(sub(z[1], z[0]), sub(z[2], z[0]));
    if area(&triangle) == 0.0 {
        return Err(ExtremalError::InvalidParameter("degenerate triangle".into()));
    }
    if u1 > 0.0 && duration >= 1.0 / u1 {
        return Err(ExtremalError::InvalidParameter(format!("u1 blows up at t = {}", 1.0 / u1)));
    }
    let plan = Rk4::new(step, duration)
        .ok_or_else(|| ExtremalError::InvalidParameter(format!("step {step} and duration {duration}")))?;
    let f = |_: f64, y: &[f64; 9]| -> [f64; 9] {
        let z = |i: usize| [y[2 * (i % 3)], y[2 * (i % 3) + 1]];
        let u = [y[6], y[7], y[8]];
        let mut out = [0.0; 9];
        for i in 0..3 {
            let d = sub(z(i + 1), z(i + 2));
            out[2 * i] = u[i] * d[0];
            out[2 * i + 1] = u[i] * d[1];
        }
        let du = control_rhs(Rule::B, u);
        out[6..].copy_from_slice(&du);
        out
    };
    let t = triangle;
    let y0 = [t[0][0], t[0][1], t[1][0], t[1][1], t[2][0], t[2][1], u1, 0.0, -u1];
    let ys = plan.run(f, y0);
    let vertices: Vec<[[f64; 2]; 3]> = ys.iter().map(|y| [[y[0], y[1]], [y[2], y[3]], [y[4], y[5]]]).collect();
    let z0 = vertices[0];
    let side0 = sub(z0[2], z0[0]);
    let median = |z: &[[f64; 2]; 3]| sub([(z[0][0] + z[2][0]) / 2.0, (z[0][1] + z[2][1]) / 2.0], z[1]);
    let m0 = median(&z0);
    let a0 = area(&z0);
    let mut rep = FixedVertexReport {
        step: plan.step,
        u: ys.iter().map(|y| [y[6], y[7], y[8]]).collect(),
        stationary_vertex: 0.0,
        parallel_side: 0.0,
        area_drift: 0.0,
        bisectrix_collinearity: 0.0,
        vertices: Vec::new(),
    };
    for z in &vertices {
        let d = sub(z[1], z0[1]);
        rep.stationary_vertex = rep.stationary_vertex.max(d[0].hypot(d[1]));
        rep.parallel_side = rep.parallel_side.max(unit_sine(sub(z[2], z[0]), side0).abs());
        rep.area_drift = rep.area_drift.max((area(z) - a0).abs());
        rep.bisectrix_collinearity = rep.bisectrix_collinearity.max(unit_sine(median(z), m0).abs());
    }
    rep.vertices = vertices;
    Ok(rep)
}
