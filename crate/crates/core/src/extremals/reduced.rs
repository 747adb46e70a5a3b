//! The reduced triangle system
//! `u̇1 = u1(u1 + 2u2)`, `u̇2 = −u2(2u1 + u2)`,
//! `ζ̇1 = (u1 + u2)ζ1 + u1ζ2`, `ζ̇2 = −u2ζ1 − (u1 + u2)ζ2`,
//! and the closed-form quadrature for `ζ`.

use num_complex::Complex64;
use serde::Serialize;

use super::rk4::Rk4;
use super::ExtremalError;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ReducedState {
    pub t: f64,
    pub u1: f64,
    pub u2: f64,
    pub zeta1: Complex64,
    pub zeta2: Complex64,
}

impl ReducedState {
    fn pack(&self) -> [f64; 6] {
        [self.u1, self.u2, self.zeta1.re, self.zeta1.im, self.zeta2.re, self.zeta2.im]
    }

    fn unpack(t: f64, y: &[f64; 6]) -> Self {
        Self {
            t,
            u1: y[0],
            u2: y[1],
            zeta1: Complex64::new(y[2], y[3]),
            zeta2: Complex64::new(y[4], y[5]),
        }
    }

    /// `u1 u2 (u1 + u2)`.
    pub fn cubic_integral(&self) -> f64 {
        self.u1 * self.u2 * (self.u1 + self.u2)
    }

    /// `e = u1 ζ2 − u2 ζ1`.
    pub fn barycenter_velocity(&self) -> Complex64 {
        self.zeta2 * self.u1 - self.zeta1 * self.u2
    }

    pub fn derivative(&self) -> [f64; 6] {
        rhs(&self.pack())
    }
}

fn rhs(y: &[f64; 6]) -> [f64; 6] {
    let (u1, u2) = (y[0], y[1]);
    let z1 = Complex64::new(y[2], y[3]);
    let z2 = Complex64::new(y[4], y[5]);
    let s = u1 + u2;
    let d1 = z1 * s + z2 * u1;
    let d2 = -(z1 * u2) - z2 * s;
    [u1 * (u1 + 2.0 * u2), -u2 * (2.0 * u1 + u2), d1.re, d1.im, d2.re, d2.im]
}

#[derive(Clone, Debug, Serialize)]
pub struct ReducedTrajectory {
    pub step: f64,
    pub states: Vec<ReducedState>,
    /// `max |u1u2(u1+u2) − value at 0|`.
    pub cubic_drift: f64,
    /// `max |e − e(0)|`.
    pub e_drift: f64,
    pub flags: Vec<String>,
}

/// Fixed-step integration; `tolerance` flags drift of either invariant.
pub fn integrate_reduced(
    state0: ReducedState,
    duration: f64,
    step: f64,
    tolerance: f64,
) -> Result<ReducedTrajectory, ExtremalError> {
    if state0.u1 < 0.0 || state0.u2 < 0.0 {
        return Err(ExtremalError::InvalidParameter("the reduced system is studied for u1, u2 >= 0".into()));
    }
    let plan = Rk4::new(step, duration)
        .ok_or_else(|| ExtremalError::InvalidParameter(format!("step {step} and duration {duration}")))?;
    let ys = plan.run(|_, y: &[f64; 6]| rhs(y), state0.pack());
    let states: Vec<ReducedState> = ys
        .iter()
        .enumerate()
        .map(|(n, y)| ReducedState::unpack(state0.t + plan.time(n), y))
        .collect();
    let c0 = states[0].cubic_integral();
    let e0 = states[0].barycenter_velocity();
    let cubic_drift = states.iter().map(|s| (s.cubic_integral() - c0).abs()).fold(0.0, f64::max);
    let e_drift = states.iter().map(|s| (s.barycenter_velocity() - e0).norm()).fold(0.0, f64::max);
    let mut flags = Vec::new();
    if !(cubic_drift < tolerance) {
        flags.push(format!("cubic_integral: {cubic_drift:e} >= {tolerance:e}"));
    }
    if !(e_drift < tolerance) {
        flags.push(format!("barycenter_velocity: {e_drift:e} >= {tolerance:e}"));
    }
    Ok(ReducedTrajectory {
        step: plan.step,
        states,
        cubic_drift,
        e_drift,
        flags,
    })
}

fn u1_of(s: &ReducedState) -> f64 {
    s.u1
}

fn u2_of(s: &ReducedState) -> f64 {
    s.u2
}

/// Composite Simpson weights over `n` uniform intervals (3/8 rule on the last
/// three when `n` is odd).
fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len() - 1;
    match n {
        0 => 0.0,
        1 => 0.5 * h * (values[0] + values[1]),
        _ => {
            let (even_end, tail) = if n % 2 == 0 { (n, 0.0) } else { (n - 3, 3.0 * h / 8.0 * (values[n - 3] + 3.0 * values[n - 2] + 3.0 * values[n - 1] + values[n])) };
            let mut s = values[0] + values[even_end];
            for (k, v) in values.iter().enumerate().take(even_end).skip(1) {
                s += if k % 2 == 1 { 4.0 * v } else { 2.0 * v };
            }
            s * h / 3.0 + tail
        }
    }
}

/// `ζ_k(t) = u_k(t)/u_k(0) ζ_k(0) + e ∫_0^t u_k(t)/u_k(τ) dτ` evaluated by
/// composite quadrature over the stored samples up to index `n`.
pub fn zeta_closed_form(traj: &ReducedTrajectory, n: usize) -> Result<(Complex64, Complex64), ExtremalError> {
    let s0 = traj.states[0];
    if n == 0 {
        return Ok((s0.zeta1, s0.zeta2));
    }
    let e = s0.barycenter_velocity();
    let part = &traj.states[..=n];
    let mut out = [Complex64::new(0.0, 0.0); 2];
    for (k, (u, z0)) in [(u1_of as fn(&ReducedState) -> f64, s0.zeta1), (u2_of, s0.zeta2)]
        .into_iter()
        .enumerate()
    {
        if part.iter().any(|s| u(s) == 0.0) {
            return Err(ExtremalError::Singular(format!("u{}", k + 1)));
        }
        let inv: Vec<f64> = part.iter().map(|s| 1.0 / u(s)).collect();
        let ut = u(&part[n]);
        out[k] = z0 * (ut / u(&s0)) + e * (ut * simpson(&inv, traj.step));
    }
    Ok((out[0], out[1]))
}
