//! Adaptive Gauss–Kronrod (7/15) quadrature and the elliptic time integral
//! `t = ∫ dv / √(v (v³ + 4c))`.

use super::ExtremalError;

/// Default absolute tolerance.
pub const QUADRATURE_TOL: f64 = 1e-10;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_0,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One Kronrod panel: `(kronrod, |kronrod − gauss|)`.
fn panel(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// `∫_a^b f` to absolute tolerance `tol` by recursive bisection.
pub fn gauss_kronrod(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64, ExtremalError> {
    if a == b {
        return Ok(0.0);
    }
    let mut stack = vec![(a, b, tol, 0u32)];
    let mut total = 0.0;
    let mut worst = 0.0f64;
    while let Some((lo, hi, t, depth)) = stack.pop() {
        let (v, err) = panel(&f, lo, hi);
        if !v.is_finite() {
            return Err(ExtremalError::QuadratureFailed { tol, estimate: v });
        }
        if err <= t || depth >= 50 {
            if err > t {
                worst = worst.max(err);
            }
            total += v;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, t / 2.0, depth + 1));
            stack.push((mid, hi, t / 2.0, depth + 1));
        }
    }
    if worst > tol {
        return Err(ExtremalError::QuadratureFailed { tol, estimate: worst });
    }
    Ok(total)
}

/// Signed time for `u̇ = √(u (u³ + 4c))` to travel from `start` to `target`;
/// negative when `target < start`.
pub fn elliptic_time(target: f64, start: f64, c: f64, tol: f64) -> Result<f64, ExtremalError> {
    let (lo, hi) = if target < start { (target, start) } else { (start, target) };
    // roots of v (v³ + 4c)
    let roots = [0.0, -(4.0 * c).cbrt()];
    for r in roots {
        if lo <= r && r <= hi {
            return Err(ExtremalError::SingularIntegrand { root: r });
        }
    }
    let g = |v: f64| v * (v * v * v + 4.0 * c);
    if g(lo) <= 0.0 || g(hi) <= 0.0 {
        let root = roots.into_iter().min_by(|a, b| (a - lo).abs().total_cmp(&(b - lo).abs())).unwrap();
        return Err(ExtremalError::SingularIntegrand { root });
    }
    let t = gauss_kronrod(|v| 1.0 / g(v).sqrt(), lo, hi, tol)?;
    Ok(if target < start { -t } else { t })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_smooth_and_peaked_functions() {
        let v = gauss_kronrod(|x| x.sin(), 0.0, std::f64::consts::PI, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
        let v = gauss_kronrod(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-10).unwrap();
        let exact = 2.0 * (1.0f64 / 1e-2).atan() / 1e-2;
        assert!((v - exact).abs() < 1e-8);
    }

    #[test]
    fn elliptic_time_basics() {
        assert_eq!(elliptic_time(1.0, 1.0, 2.0, QUADRATURE_TOL).unwrap(), 0.0);
        assert!(matches!(
            elliptic_time(-1.0, 1.0, 2.0, QUADRATURE_TOL),
            Err(ExtremalError::SingularIntegrand { root }) if root == 0.0
        ));
        let fwd = elliptic_time(2.0, 1.0, 2.0, QUADRATURE_TOL).unwrap();
        let back = elliptic_time(1.0, 2.0, 2.0, QUADRATURE_TOL).unwrap();
        assert!(fwd > 0.0 && (fwd + back).abs() < 1e-14);
    }
}
