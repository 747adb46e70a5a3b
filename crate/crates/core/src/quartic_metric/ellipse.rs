//! The Steiner circumellipse of a triangle and the norm it induces on the
//! plane.

use num_traits::{One, Zero};
use serde::Serialize;

use super::QuarticMetricError;
use crate::algebra::linalg::nullspace;
use crate::algebra::{fmt_rational, int, rat, to_f64, Rational};

pub type Point = [Rational; 2];
pub type Triangle = [Point; 3];
pub type Matrix2 = [[Rational; 2]; 2];

/// `{r : (r − center)ᵀ gram (r − center) = 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ellipse {
    pub center: Point,
    pub gram: Matrix2,
}

#[derive(Serialize)]
struct EllipseJson {
    center: [String; 2],
    gram: [[String; 2]; 2],
    conic: [String; 6],
}

fn sub(a: &Point, b: &Point) -> Point {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

fn dot(a: &Point, b: &Point) -> Rational {
    &a[0] * &b[0] + &a[1] * &b[1]
}

fn mat_vec(m: &Matrix2, v: &Point) -> Point {
    [dot(&m[0], v), dot(&m[1], v)]
}

fn det2(m: &Matrix2) -> Rational {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

fn inverse(m: &Matrix2) -> Option<Matrix2> {
    let d = det2(m);
    if d.is_zero() {
        return None;
    }
    Some([
        [&m[1][1] / &d, -&m[0][1] / &d],
        [-&m[1][0] / &d, &m[0][0] / &d],
    ])
}

fn transpose(m: &Matrix2) -> Matrix2 {
    [[m[0][0].clone(), m[1][0].clone()], [m[0][1].clone(), m[1][1].clone()]]
}

fn mat_mul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    std::array::from_fn(|i| std::array::from_fn(|j| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j]))
}

/// Twice the signed area.
pub fn twice_area(t: &Triangle) -> Rational {
    let (a, b) = (sub(&t[1], &t[0]), sub(&t[2], &t[0]));
    &a[0] * &b[1] - &a[1] * &b[0]
}

pub fn centroid(t: &Triangle) -> Point {
    std::array::from_fn(|k| (&t[0][k] + &t[1][k] + &t[2][k]) / int(3))
}

/// The ellipse through the vertices, centered at the centroid, tangent at
/// each vertex to the parallel of the opposite side.
///
/// Built by transport: an affine map `w ↦ g + M w` takes the regular
/// triangle inscribed in the unit circle onto `t`, and the ellipse is the
/// image of that circle, with gram `(M Mᵀ)⁻¹`. Since the unit vectors `e_k`
/// of the regular triangle satisfy `Σ e_k e_kᵀ = (3/2) I`, the product
/// `M Mᵀ = (2/3) Σ (z_k − g)(z_k − g)ᵀ` is rational even though `M` is not.
pub fn steiner_circumellipse(t: &Triangle) -> Result<Ellipse, QuarticMetricError> {
    if twice_area(t).is_zero() {
        return Err(QuarticMetricError::DegenerateTriangle);
    }
    let g = centroid(t);
    let mut mmt: Matrix2 = Default::default();
    for z in t {
        let d = sub(z, &g);
        for i in 0..2 {
            for j in 0..2 {
                mmt[i][j] += &d[i] * &d[j] * rat(2, 3);
            }
        }
    }
    let gram = inverse(&mmt).ok_or(QuarticMetricError::DegenerateTriangle)?;
    Ok(Ellipse { center: g, gram })
}

/// Independent construction: the conic `a x² + b xy + c y² + d x + e y + f`
/// through the vertices whose gradient at each vertex is orthogonal to the
/// opposite side. Six homogeneous linear conditions of rank five; the
/// solution is scaled so its first nonzero coefficient is 1.
pub fn conic_through_constraints(t: &Triangle) -> Result<[Rational; 6], QuarticMetricError> {
    if twice_area(t).is_zero() {
        return Err(QuarticMetricError::DegenerateTriangle);
    }
    let mut rows = Vec::with_capacity(6);
    for (i, z) in t.iter().enumerate() {
        let (x, y) = (&z[0], &z[1]);
        rows.push(vec![x * x, x * y, y * y, x.clone(), y.clone(), int(1)]);
        let s = sub(&t[(i + 1) % 3], &t[(i + 2) % 3]);
        // ∇f = (2ax + by + d, bx + 2cy + e)
        rows.push(vec![
            int(2) * x * &s[0],
            y * &s[0] + x * &s[1],
            int(2) * y * &s[1],
            s[0].clone(),
            s[1].clone(),
            int(0),
        ]);
    }
    let ns = nullspace(&rows, 6);
    if ns.len() != 1 {
        return Err(QuarticMetricError::DegenerateTriangle);
    }
    Ok(normalize(ns[0].clone().try_into().expect("six")))
}

fn normalize(c: [Rational; 6]) -> [Rational; 6] {
    let lead = c.iter().find(|v| !v.is_zero()).cloned().unwrap_or_else(Rational::one);
    c.map(|v| v / &lead)
}

impl Ellipse {
    /// Unit circle centered at the origin.
    pub fn unit_circle() -> Self {
        Self {
            center: [int(0), int(0)],
            gram: [[int(1), int(0)], [int(0), int(1)]],
        }
    }

    /// `(r − center)ᵀ gram (r − center)`; equals 1 on the ellipse.
    pub fn level(&self, r: &Point) -> Rational {
        self.norm_sq(&sub(r, &self.center))
    }

    pub fn norm_sq(&self, v: &Point) -> Rational {
        dot(v, &mat_vec(&self.gram, v))
    }

    /// Gram matrix symmetric with positive leading minors.
    pub fn is_valid(&self) -> bool {
        self.gram[0][1] == self.gram[1][0] && self.gram[0][0] > int(0) && det2(&self.gram) > int(0)
    }

    /// Normalized `(a, b, c, d, e, f)` of `a x² + b xy + c y² + d x + e y + f = 0`.
    pub fn conic_coefficients(&self) -> [Rational; 6] {
        let g = &self.gram;
        let [cx, cy] = &self.center;
        let off = &g[0][1] + &g[1][0];
        let a = g[0][0].clone();
        let c = g[1][1].clone();
        let d = -(int(2) * &g[0][0] * cx + &off * cy);
        let e = -(int(2) * &g[1][1] * cy + &off * cx);
        let f = self.norm_sq(&self.center) - int(1);
        normalize([a, off, c, d, e, f])
    }

    /// `∇(level)(z_i) · (z_{i+1} − z_{i+2})` up to the factor 2; zero when
    /// the tangent at `z_i` is parallel to the opposite side.
    pub fn tangent_residual(&self, t: &Triangle, i: usize) -> Rational {
        let grad = mat_vec(&self.gram, &sub(&t[i], &self.center));
        dot(&grad, &sub(&t[(i + 1) % 3], &t[(i + 2) % 3]))
    }

    /// Image under `r ↦ A r + b`.
    pub fn transformed(&self, a: &Matrix2, b: &Point) -> Result<Ellipse, QuarticMetricError> {
        let inv = inverse(a).ok_or(QuarticMetricError::SingularMap)?;
        let ac = mat_vec(a, &self.center);
        Ok(Ellipse {
            center: [&ac[0] + &b[0], &ac[1] + &b[1]],
            gram: mat_mul(&transpose(&inv), &mat_mul(&self.gram, &inv)),
        })
    }

    pub fn to_json(&self) -> String {
        let j = EllipseJson {
            center: self.center.clone().map(|v| fmt_rational(&v)),
            gram: self.gram.clone().map(|r| r.map(|v| fmt_rational(&v))),
            conic: self.conic_coefficients().map(|v| fmt_rational(&v)),
        };
        serde_json::to_string_pretty(&j).expect("plain data")
    }
}

pub fn affine_image(t: &Triangle, a: &Matrix2, b: &Point) -> Triangle {
    t.clone().map(|z| {
        let w = mat_vec(a, &z);
        [&w[0] + &b[0], &w[1] + &b[1]]
    })
}

/// `√(vᵀ gram v)`.
pub fn ellipse_norm(e: &Ellipse, v: [f64; 2]) -> f64 {
    let g = e.gram.clone().map(|r| r.map(|x| to_f64(&x)));
    (v[0] * (g[0][0] * v[0] + g[0][1] * v[1]) + v[1] * (g[1][0] * v[0] + g[1][1] * v[1])).sqrt()
}

/// `Σ ‖u_i (z_{i+1} − z_{i+2})‖²` in the norm of the Steiner ellipse of `t`,
/// the squared length of the rule-B velocity `u`.
pub fn subriemannian_speed(t: &Triangle, u: [f64; 3]) -> Result<f64, QuarticMetricError> {
    let sum = u[0] + u[1] + u[2];
    if sum.abs() > 1e-12 {
        return Err(QuarticMetricError::ConstraintViolation(format!("{sum:e}")));
    }
    let e = steiner_circumellipse(t)?;
    Ok((0..3)
        .map(|i| {
            let s = sub(&t[(i + 1) % 3], &t[(i + 2) % 3]).map(|x| u[i] * to_f64(&x));
            ellipse_norm(&e, s).powi(2)
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn right_triangle() -> Triangle {
        [[int(0), int(0)], [int(1), int(0)], [int(0), int(1)]]
    }

    #[test]
    fn right_triangle_conic() {
        let t = right_triangle();
        let e = steiner_circumellipse(&t).unwrap();
        assert_eq!(e.center, [rat(1, 3), rat(1, 3)]);
        let expected = [1, 1, 1, -1, -1, 0].map(int);
        assert_eq!(e.conic_coefficients(), expected);
        assert_eq!(conic_through_constraints(&t).unwrap(), expected);
        for i in 0..3 {
            assert_eq!(e.level(&t[i]), int(1));
            assert_eq!(e.tangent_residual(&t, i), int(0));
            // every side has squared norm 3
            assert_eq!(e.norm_sq(&sub(&t[(i + 1) % 3], &t[(i + 2) % 3])), int(3));
        }
        let v = sub(&t[0], &e.center).map(|x| to_f64(&x));
        assert!((ellipse_norm(&e, v) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn unit_circle_norm() {
        let c = Ellipse::unit_circle();
        assert_eq!(ellipse_norm(&c, [1.0, 0.0]), 1.0);
        assert_eq!(ellipse_norm(&c, [3.0, 4.0]), 5.0);
    }

    #[test]
    fn degenerate_and_constraint_errors() {
        let flat = [[int(0), int(0)], [int(1), int(1)], [int(2), int(2)]];
        assert_eq!(steiner_circumellipse(&flat), Err(QuarticMetricError::DegenerateTriangle));
        assert!(subriemannian_speed(&right_triangle(), [1.0, 0.0, 0.0]).is_err());
        assert_eq!(subriemannian_speed(&right_triangle(), [0.0; 3]).unwrap(), 0.0);
    }
}
