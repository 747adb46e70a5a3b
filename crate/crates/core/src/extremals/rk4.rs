//! Classical fixed-step fourth-order Runge–Kutta.

/// One step of size `h` for `y' = f(t, y)`.
pub fn rk4_step<const N: usize>(f: impl Fn(f64, &[f64; N]) -> [f64; N], t: f64, y: &[f64; N], h: f64) -> [f64; N] {
    let axpy = |a: &[f64; N], k: &[f64; N], s: f64| -> [f64; N] { std::array::from_fn(|i| a[i] + s * k[i]) };
    let k1 = f(t, y);
    let k2 = f(t + h / 2.0, &axpy(y, &k1, h / 2.0));
    let k3 = f(t + h / 2.0, &axpy(y, &k2, h / 2.0));
    let k4 = f(t + h, &axpy(y, &k3, h));
    std::array::from_fn(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
}

/// Fixed-step integration plan over `[0, duration]`; the last step lands on
/// `duration` exactly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rk4 {
    pub step: f64,
    pub steps: usize,
}

impl Rk4 {
    pub fn new(step: f64, duration: f64) -> Option<Self> {
        if !(step > 0.0 && duration > 0.0 && step.is_finite() && duration.is_finite()) {
            return None;
        }
        let steps = (duration / step).round().max(1.0) as usize;
        Some(Self {
            step: duration / steps as f64,
            steps,
        })
    }

    /// All states `y(t_0), …, y(t_steps)`.
    pub fn run<const N: usize>(&self, f: impl Fn(f64, &[f64; N]) -> [f64; N], y0: [f64; N]) -> Vec<[f64; N]> {
        let mut out = Vec::with_capacity(self.steps + 1);
        out.push(y0);
        let mut y = y0;
        for n in 0..self.steps {
            y = rk4_step(&f, n as f64 * self.step, &y, self.step);
            out.push(y);
        }
        out
    }

    pub fn time(&self, n: usize) -> f64 {
        n as f64 * self.step
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_is_fourth_order() {
        let err = |h: f64| {
            let plan = Rk4::new(h, 1.0).unwrap();
            let ys = plan.run(|_, y: &[f64; 1]| [y[0]], [1.0]);
            (ys.last().unwrap()[0] - 1f64.exp()).abs()
        };
        let ratio = err(0.1) / err(0.05);
        assert!(ratio > 14.0 && ratio < 18.0, "{ratio}");
        assert!(Rk4::new(0.0, 1.0).is_none());
    }
}
