//! The symmetric-function reduction `ν1 = u1 + u2`, `ν2 = u1 u2`,
//! `δ = u1 − u2`, the time changes `ds = δ dt` and
//! `τ = (1 − c e^{−3s})^{−1/2}`, and the resulting Fuchsian system
//! `3 dΨ/dτ = [M1/(τ−1) + M0/τ + M2/(τ+1)] Ψ`.

use num_complex::Complex64;
use serde::Serialize;

use super::reduced::ReducedTrajectory;
use super::ExtremalError;
use crate::algebra::{int, Rational};

/// `(ν̇1, ν̇2, δ̇) = (δν1, −δν2, ν1² + 2ν2)`.
pub fn symmetric_reduction_rhs(nu1: f64, nu2: f64, delta: f64) -> [f64; 3] {
    [delta * nu1, -delta * nu2, nu1 * nu1 + 2.0 * nu2]
}

pub type Matrix2 = [[Rational; 2]; 2];

/// `[M1, M0, M2]`, the residues at `τ = 1, 0, −1`.
pub fn fuchsian_matrices() -> [Matrix2; 3] {
    let m = |a: i64, b: i64, c: i64, d: i64| [[int(a), int(b)], [int(c), int(d)]];
    [m(-1, -1, 0, 1), m(0, 1, 1, 0), m(1, 0, -1, -1)]
}

const POLES: [f64; 3] = [-1.0, 0.0, 1.0];

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FuchsianState {
    pub tau: f64,
    pub psi: [Complex64; 2],
}

pub fn fuchsian_rhs(state: &FuchsianState) -> Result<[Complex64; 2], ExtremalError> {
    let t = state.tau;
    if let Some(&pole) = POLES.iter().find(|&&p| p == t) {
        return Err(ExtremalError::PoleCrossing { from: t, to: t, pole });
    }
    let ms = fuchsian_matrices();
    let weights = [1.0 / (t - 1.0), 1.0 / t, 1.0 / (t + 1.0)];
    let mut a = [[0.0f64; 2]; 2];
    for (m, w) in ms.iter().zip(weights) {
        for i in 0..2 {
            for j in 0..2 {
                a[i][j] += w * crate::algebra::to_f64(&m[i][j]);
            }
        }
    }
    let [p0, p1] = state.psi;
    Ok([
        (p0 * a[0][0] + p1 * a[0][1]) / 3.0,
        (p0 * a[1][0] + p1 * a[1][1]) / 3.0,
    ])
}

/// RK4 in `τ` from `state0.tau` to `tau_end`; refuses to cross a pole.
pub fn integrate_fuchsian(state0: FuchsianState, tau_end: f64, step: f64) -> Result<Vec<FuchsianState>, ExtremalError> {
    let (lo, hi) = if tau_end < state0.tau { (tau_end, state0.tau) } else { (state0.tau, tau_end) };
    if let Some(&pole) = POLES.iter().find(|&&p| lo <= p && p <= hi) {
        return Err(ExtremalError::PoleCrossing {
            from: state0.tau,
            to: tau_end,
            pole,
        });
    }
    if !(step > 0.0) {
        return Err(ExtremalError::InvalidParameter(format!("step {step}")));
    }
    let mut out = vec![state0];
    if hi == lo {
        return Ok(out);
    }
    let steps = ((hi - lo) / step).ceil() as usize;
    let h = (tau_end - state0.tau) / steps as f64;
    let f = |tau: f64, y: &[f64; 4]| -> [f64; 4] {
        let s = FuchsianState {
            tau,
            psi: [Complex64::new(y[0], y[1]), Complex64::new(y[2], y[3])],
        };
        let d = fuchsian_rhs(&s).expect("pole excluded above");
        [d[0].re, d[0].im, d[1].re, d[1].im]
    };
    let mut y = [state0.psi[0].re, state0.psi[0].im, state0.psi[1].re, state0.psi[1].im];
    for n in 0..steps {
        let tau = state0.tau + n as f64 * h;
        y = super::rk4::rk4_step(f, tau, &y, h);
        out.push(FuchsianState {
            tau: if n + 1 == steps { tau_end } else { tau + h },
            psi: [Complex64::new(y[0], y[1]), Complex64::new(y[2], y[3])],
        });
    }
    Ok(out)
}

/// Results of pushing a reduced trajectory through both time changes.
#[derive(Clone, Debug, Serialize)]
pub struct SubstitutionChain {
    pub c1: f64,
    pub c2: f64,
    /// `c = 4 c2 / c1²`.
    pub c: f64,
    /// `max |δ² − ν1² + 4ν2|`.
    pub constraint_residual: f64,
    /// `max |ν̇ − symmetric_reduction_rhs|` with `ν̇` from the reduced field.
    pub rhs_residual: f64,
    /// `max(|ν1 − c1 eˢ|, |ν2 − c2 e⁻ˢ|)`.
    pub exponential_residual: f64,
    /// `max |τ(s) − ν1/δ|`.
    pub tau_residual: f64,
    pub tau_start: f64,
    pub tau_end: f64,
    /// `max |Ψ(τ(s(t))) − ζ(t)|` over the checkpoints.
    pub fuchsian_residual: f64,
}

impl SubstitutionChain {
    /// Runs the chain on `traj`, comparing the Fuchsian solution with `ζ` at
    /// `checkpoints` evenly spaced sample indices.
    pub fn run(traj: &ReducedTrajectory, checkpoints: usize, fuchsian_step: f64) -> Result<Self, ExtremalError> {
        let st = &traj.states;
        let nu = |k: usize| (st[k].u1 + st[k].u2, st[k].u1 * st[k].u2, st[k].u1 - st[k].u2);
        let (c1, c2, d0) = nu(0);
        if c1 <= 0.0 || d0 == 0.0 {
            return Err(ExtremalError::Singular("δ(0) or ν1(0)".into()));
        }
        let c = 4.0 * c2 / (c1 * c1);
        let mut s = vec![0.0; st.len()];
        for k in 1..st.len() {
            s[k] = s[k - 1] + 0.5 * traj.step * (nu(k - 1).2 + nu(k).2);
        }
        let tau_of = |s: f64| (1.0 - c * (-3.0 * s).exp()).powf(-0.5);
        let mut out = Self {
            c1,
            c2,
            c,
            constraint_residual: 0.0,
            rhs_residual: 0.0,
            exponential_residual: 0.0,
            tau_residual: 0.0,
            tau_start: tau_of(0.0),
            tau_end: tau_of(s[st.len() - 1]),
            fuchsian_residual: 0.0,
        };
        for k in 0..st.len() {
            let (n1, n2, d) = nu(k);
            out.constraint_residual = out.constraint_residual.max((d * d - n1 * n1 + 4.0 * n2).abs());
            let du = st[k].derivative();
            let actual = [du[0] + du[1], du[0] * st[k].u2 + st[k].u1 * du[1], du[0] - du[1]];
            let predicted = symmetric_reduction_rhs(n1, n2, d);
            for i in 0..3 {
                out.rhs_residual = out.rhs_residual.max((actual[i] - predicted[i]).abs());
            }
            out.exponential_residual = out
                .exponential_residual
                .max((n1 - c1 * s[k].exp()).abs())
                .max((n2 - c2 * (-s[k]).exp()).abs());
            out.tau_residual = out.tau_residual.max((tau_of(s[k]) - n1 / d).abs());
        }
        let mut state = FuchsianState {
            tau: out.tau_start,
            psi: [st[0].zeta1, st[0].zeta2],
        };
        let last = st.len() - 1;
        for j in 1..=checkpoints.max(1) {
            let k = last * j / checkpoints.max(1);
            let seg = integrate_fuchsian(state, tau_of(s[k]), fuchsian_step)?;
            state = *seg.last().expect("nonempty");
            let err = (state.psi[0] - st[k].zeta1).norm().max((state.psi[1] - st[k].zeta2).norm());
            out.fuchsian_residual = out.fuchsian_residual.max(err);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices_and_rhs() {
        for m in fuchsian_matrices() {
            assert_eq!(&m[0][0] + &m[1][1], int(0));
        }
        let d = fuchsian_rhs(&FuchsianState {
            tau: 2.0,
            psi: [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        })
        .unwrap();
        assert!((d[0].re + 2.0 / 9.0).abs() < 1e-15 && (d[1].re - 1.0 / 18.0).abs() < 1e-15);
        let s0 = FuchsianState {
            tau: 0.5,
            psi: [Complex64::new(1.0, 0.0); 2],
        };
        assert!(matches!(integrate_fuchsian(s0, 1.5, 0.01), Err(ExtremalError::PoleCrossing { pole, .. }) if pole == 1.0));
        assert!(fuchsian_rhs(&FuchsianState { tau: 0.0, ..s0 }).is_err());
    }

    #[test]
    fn axis_substitution() {
        // ν2 = 0, ν1 = δ gives ν̇1 = ν1²
        let [d1, d2, _] = symmetric_reduction_rhs(0.7, 0.0, 0.7);
        assert_eq!((d1, d2), (0.7 * 0.7, 0.0));
    }
}
