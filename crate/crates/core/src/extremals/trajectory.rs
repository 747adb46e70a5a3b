//! The extremal flow `λ̇ = h23 h⃗1 + h31 h⃗2 + h12 h⃗3` with drift monitors, and
//! the decoupled control systems for `u = (h23, h31, h12)`.

use serde::Serialize;

use super::lift::{CompiledLift, HamiltonianLift};
use super::rk4::Rk4;
use super::ExtremalError;
use crate::algebra::linalg::{nullspace, solve};
use crate::algebra::{fmt_rational, to_f64, Rational};
use crate::models::{AntModel, Rule};

/// Thresholds beyond which a trajectory is flagged.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonitorTolerances {
    pub h_drift: f64,
    pub inv_sum: f64,
    pub inv_prod: f64,
    pub barycenter: f64,
    pub control: f64,
}

impl Default for MonitorTolerances {
    fn default() -> Self {
        Self {
            h_drift: 1e-8,
            inv_sum: 1e-12,
            inv_prod: 1e-8,
            barycenter: 1e-8,
            control: 1e-8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtremalState {
    pub t: f64,
    pub q: [f64; 6],
    pub lambda: [f64; 6],
}

/// Largest deviations observed along a trajectory.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct DriftSummary {
    /// `max |h_i|`.
    pub h_drift: f64,
    /// `max |u1 + u2 + u3|` (rule B).
    pub inv_sum: f64,
    /// `max |u1 u2 u3 − u1 u2 u3 (0)|` (rule B).
    pub inv_prod: f64,
    /// `max |b_{n+1} − 2 b_n + b_{n−1}|` for the barycenter `b` (rule B).
    pub barycenter_second_difference: f64,
    /// `max |b(t) − b(0) − t ḃ(0)|` (rule B).
    pub barycenter_line: f64,
    /// `max |u̇ − control_rhs(u)|` with `u̇` from the Poisson table.
    pub control_residual: f64,
    /// `max |u̇ − lifted_control_rhs(u)|`, same `u̇`.
    pub lifted_residual: f64,
    /// Some `u_i` changed sign.
    pub sign_change: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtremalTrajectory {
    pub rule: Rule,
    pub step: f64,
    pub states: Vec<ExtremalState>,
    pub u: Vec<[f64; 3]>,
    pub drift: DriftSummary,
    pub tolerances: MonitorTolerances,
    /// Monitors that exceeded their tolerance.
    pub flags: Vec<String>,
}

impl ExtremalTrajectory {
    pub fn flagged(&self) -> bool {
        !self.flags.is_empty()
    }

    pub fn barycenter(&self, n: usize) -> [f64; 2] {
        barycenter(&self.states[n].q)
    }
}

fn barycenter(q: &[f64; 6]) -> [f64; 2] {
    [(q[0] + q[2] + q[4]) / 3.0, (q[1] + q[3] + q[5]) / 3.0]
}

/// Right-hand side of the decoupled control systems (A) and (B) for `u`.
pub fn control_rhs(rule: Rule, u: [f64; 3]) -> [f64; 3] {
    let [u1, u2, u3] = u;
    match rule {
        Rule::A => [-u1 * (u1 + u2), -u2 * (u2 + u3), -u3 * (u3 + u1)],
        Rule::B => [u1 * (u2 - u3), u2 * (u3 - u1), u3 * (u1 - u2)],
    }
}

/// What the extremal flow actually induces on `u = (h23, h31, h12)`, read
/// off the Poisson table on the annihilator:
/// rule A `u̇_i = −u_i (u_i − u_{i+1})`, rule B `u̇_i = −u_i (u_{i+1} − u_{i+2})`.
///
/// Rule B is [`control_rhs`] with the opposite sign (equivalently, with the
/// labels 2 and 3 swapped); rule A differs in the sign of the cross term.
pub fn lifted_control_rhs(rule: Rule, u: [f64; 3]) -> [f64; 3] {
    let [u1, u2, u3] = u;
    match rule {
        Rule::A => [-u1 * (u1 - u2), -u2 * (u2 - u3), -u3 * (u3 - u1)],
        Rule::B => [-u1 * (u2 - u3), -u2 * (u3 - u1), -u3 * (u1 - u2)],
    }
}

pub fn integrate_control(rule: Rule, u0: [f64; 3], duration: f64, step: f64) -> Result<Vec<[f64; 3]>, ExtremalError> {
    let plan = Rk4::new(step, duration).ok_or_else(|| bad_plan(step, duration))?;
    Ok(plan.run(|_, u: &[f64; 3]| control_rhs(rule, *u), u0))
}

pub fn integrate_lifted_control(rule: Rule, u0: [f64; 3], duration: f64, step: f64) -> Result<Vec<[f64; 3]>, ExtremalError> {
    let plan = Rk4::new(step, duration).ok_or_else(|| bad_plan(step, duration))?;
    Ok(plan.run(|_, u: &[f64; 3]| lifted_control_rhs(rule, *u), u0))
}

fn bad_plan(step: f64, duration: f64) -> ExtremalError {
    ExtremalError::InvalidParameter(format!("step {step} and duration {duration} must be positive and finite"))
}

/// `λ0 = Σ c_i ω_i(q0)` with rational `c` chosen so that
/// `(h23, h31, h12)(q0, λ0) = u`. When `u = 0` a nonzero kernel element is
/// used so that `λ0 ≠ 0`.
pub fn initial_covector(
    model: &AntModel,
    lift: &HamiltonianLift,
    q0: &[Rational; 6],
    u: &[Rational; 3],
) -> Result<[Rational; 6], ExtremalError> {
    let omegas: Vec<[Rational; 6]> = model
        .omega
        .iter()
        .map(|w| {
            let mut row: [Rational; 6] = std::array::from_fn(|_| Rational::from_integer(0.into()));
            for (idx, c) in w.terms() {
                row[idx[0]] = c.eval(q0)?;
            }
            Ok(row)
        })
        .collect::<Result<_, ExtremalError>>()?;
    let point = |lambda: &[Rational; 6]| -> Vec<Rational> { q0.iter().chain(lambda.iter()).cloned().collect() };
    // matrix[a][i] = u_a(ω_i)
    let matrix: Vec<Vec<Rational>> = (0..3)
        .map(|a| (0..3).map(|i| lift.h_brackets[a].eval(&point(&omegas[i]))).collect())
        .collect();
    let mut c = solve(&matrix, u).ok_or_else(|| ExtremalError::Unreachable(fmt_u(u)))?;
    let combine = |c: &[Rational]| -> [Rational; 6] {
        std::array::from_fn(|k| (0..3).map(|i| &c[i] * &omegas[i][k]).sum())
    };
    let mut lambda = combine(&c);
    if lambda.iter().all(num_traits::Zero::is_zero) {
        let kernel = nullspace(&matrix, 3);
        let v = kernel
            .iter()
            .find(|v| !combine(v).iter().all(num_traits::Zero::is_zero))
            .ok_or_else(|| ExtremalError::Unreachable(format!("{} with a nonzero covector", fmt_u(u))))?;
        for (ci, vi) in c.iter_mut().zip(v) {
            *ci += vi;
        }
        lambda = combine(&c);
    }
    check_annihilator(lift, q0, &lambda)?;
    Ok(lambda)
}

fn fmt_u(u: &[Rational]) -> String {
    format!("({})", u.iter().map(fmt_rational).collect::<Vec<_>>().join(", "))
}

/// Exact test `h_i(q0, λ0) = 0` for `i = 1, 2, 3`.
pub fn check_annihilator(lift: &HamiltonianLift, q0: &[Rational; 6], lambda: &[Rational; 6]) -> Result<(), ExtremalError> {
    let point: Vec<Rational> = q0.iter().chain(lambda.iter()).cloned().collect();
    if lambda.iter().all(num_traits::Zero::is_zero) {
        return Err(ExtremalError::NotAnnihilator("λ0 = 0".into()));
    }
    for (i, h) in lift.h.iter().enumerate() {
        let v = h.eval(&point);
        if !num_traits::Zero::is_zero(&v) {
            return Err(ExtremalError::NotAnnihilator(format!("h{} = {}", i + 1, fmt_rational(&v))));
        }
    }
    Ok(())
}

const BLOWUP_RESOLUTION: f64 = 0.5;

/// Integrates the extremal flow from an exact initial covector.
///
/// Fails with [`ExtremalError::BlowUp`] once `step · max|u_i|` reaches 1/2.
pub fn integrate_extremal(
    rule: Rule,
    lift: &HamiltonianLift,
    q0: &[Rational; 6],
    lambda0: &[Rational; 6],
    duration: f64,
    step: f64,
    tolerances: &MonitorTolerances,
) -> Result<ExtremalTrajectory, ExtremalError> {
    if lift.base_dim() != 6 {
        return Err(ExtremalError::InvalidParameter("extremals live on the six-dimensional ant chart".into()));
    }
    check_annihilator(lift, q0, lambda0)?;
    let plan = Rk4::new(step, duration).ok_or_else(|| bad_plan(step, duration))?;
    let compiled: CompiledLift = lift.compile();
    let y0: [f64; 12] = std::array::from_fn(|k| if k < 6 { to_f64(&q0[k]) } else { to_f64(&lambda0[k - 6]) });
    let ys = plan.run(
        |_, y: &[f64; 12]| {
            let r = compiled.rhs(y);
            std::array::from_fn(|k| r[k])
        },
        y0,
    );

    let mut drift = DriftSummary::default();
    let mut u_all = Vec::with_capacity(ys.len());
    let mut states = Vec::with_capacity(ys.len());
    let u0 = compiled.controls(&y0);
    let prod0 = u0[0] * u0[1] * u0[2];
    let b0 = barycenter(&std::array::from_fn(|k| y0[k]));
    let bdot0 = {
        let r = compiled.rhs(&y0);
        [(r[0] + r[2] + r[4]) / 3.0, (r[1] + r[3] + r[5]) / 3.0]
    };
    for (n, y) in ys.iter().enumerate() {
        let t = plan.time(n);
        let q: [f64; 6] = std::array::from_fn(|k| y[k]);
        let u = compiled.controls(y);
        // u is a rate: once step·|u| is of order one the step no longer
        // resolves the motion (quadratic systems reach infinity in finite time)
        let magnitude = u.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if !(magnitude * plan.step < BLOWUP_RESOLUTION) || y.iter().any(|v| !v.is_finite()) {
            return Err(ExtremalError::BlowUp { t, magnitude });
        }
        for h in compiled.h(y) {
            drift.h_drift = drift.h_drift.max(h.abs());
        }
        let predicted = control_rhs(rule, u);
        let lifted = lifted_control_rhs(rule, u);
        let actual = compiled.control_derivative(y);
        for i in 0..3 {
            drift.control_residual = drift.control_residual.max((predicted[i] - actual[i]).abs());
            drift.lifted_residual = drift.lifted_residual.max((lifted[i] - actual[i]).abs());
            if u[i] * u0[i] < 0.0 {
                drift.sign_change = true;
            }
        }
        if rule == Rule::B {
            drift.inv_sum = drift.inv_sum.max((u[0] + u[1] + u[2]).abs());
            drift.inv_prod = drift.inv_prod.max((u[0] * u[1] * u[2] - prod0).abs());
            let b = barycenter(&q);
            for k in 0..2 {
                drift.barycenter_line = drift.barycenter_line.max((b[k] - b0[k] - t * bdot0[k]).abs());
            }
        }
        u_all.push(u);
        states.push(ExtremalState {
            t,
            q,
            lambda: std::array::from_fn(|k| y[6 + k]),
        });
    }
    if rule == Rule::B {
        for w in states.windows(3) {
            let [a, b, c] = [barycenter(&w[0].q), barycenter(&w[1].q), barycenter(&w[2].q)];
            for k in 0..2 {
                drift.barycenter_second_difference =
                    drift.barycenter_second_difference.max((a[k] - 2.0 * b[k] + c[k]).abs());
            }
        }
    }
    let mut flags = Vec::new();
    let mut flag = |name: &str, value: f64, tol: f64| {
        if !(value < tol) {
            flags.push(format!("{name}: {value:e} >= {tol:e}"));
        }
    };
    flag("h_drift", drift.h_drift, tolerances.h_drift);
    flag("control_residual", drift.control_residual, tolerances.control);
    flag("lifted_residual", drift.lifted_residual, tolerances.control);
    if rule == Rule::B {
        flag("inv_sum", drift.inv_sum, tolerances.inv_sum);
        flag("inv_prod", drift.inv_prod, tolerances.inv_prod);
        flag("barycenter", drift.barycenter_second_difference, tolerances.barycenter);
        flag("barycenter_line", drift.barycenter_line, tolerances.barycenter);
    }
    if drift.sign_change && rule == Rule::B {
        flags.push("sign_change: some u_i changed sign".into());
    }
    Ok(ExtremalTrajectory {
        rule,
        step: plan.step,
        states,
        u: u_all,
        drift,
        tolerances: tolerances.clone(),
        flags,
    })
}
