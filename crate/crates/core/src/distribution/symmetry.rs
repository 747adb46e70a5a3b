//! Infinitesimal symmetries `[X, 𝒟] ⊂ 𝒟`.

use std::collections::BTreeMap;

use super::{Distribution, DistributionError};
use crate::algebra::linalg::SparseEchelon;
use crate::algebra::{lie_bracket, Monomial, MultiPoly, Rational, RationalFn, VectorField};

/// Largest coefficient degree accepted by [`solve_symmetries`].
pub const MAX_ANSATZ_DEGREE: u32 = 3;

#[derive(Clone, Debug)]
pub struct SymmetryCheck {
    pub holds: bool,
    /// First bracket that leaves the span: generator index and the
    /// nonvanishing annihilator value.
    pub residual: Option<(usize, RationalFn)>,
    /// `X(constraint)` when the distribution lives on a leaf.
    pub tangency: Option<RationalFn>,
}

pub fn is_symmetry(x: &VectorField, d: &Distribution) -> Result<SymmetryCheck, DistributionError> {
    d.chart().ensure_same(x.chart())?;
    let span = d.span();
    let mut residual = None;
    for (j, g) in d.generators().iter().enumerate() {
        let br = lie_bracket(x, g)?;
        if let Some(r) = span.first_residual(&br) {
            residual = Some((j, r));
            break;
        }
    }
    let tangency = d.leaf().map(|leaf| x.apply_poly(&leaf.function));
    let holds = residual.is_none() && tangency.as_ref().map_or(true, RationalFn::is_zero);
    Ok(SymmetryCheck {
        holds,
        residual,
        tangency,
    })
}

fn monomials_up_to(n: usize, degree: u32) -> Vec<Monomial> {
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            go(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    go(0, degree, &mut vec![0; n], &mut out);
    out.sort();
    out
}

/// Basis of the polynomial symmetries whose coefficients have degree at
/// most `degree`.
///
/// The ansatz `X = Σ c · m · ∂_k` turns `α([X, g]) = 0` for every generator
/// `g` and every annihilator form `α` of the span into linear equations on
/// the constants `c`, one per monomial. On a leaf, `X(constraint) = 0` is
/// added.
pub fn solve_symmetries(d: &Distribution, degree: u32) -> Result<Vec<VectorField>, DistributionError> {
    if degree > MAX_ANSATZ_DEGREE {
        return Err(DistributionError::AnsatzTooLarge {
            degree,
            max: MAX_ANSATZ_DEGREE,
        });
    }
    for (i, g) in d.generators().iter().enumerate() {
        if !g.is_polynomial() {
            return Err(DistributionError::NotPolynomial(i));
        }
    }
    let chart = d.chart().clone();
    let n = chart.dim();
    let monos = monomials_up_to(n, degree);
    let unknowns = n * monos.len();
    let ansatz = |u: usize| -> VectorField {
        let (k, m) = (u / monos.len(), u % monos.len());
        let mut comps = vec![MultiPoly::zero(&chart); n];
        comps[k] = MultiPoly::monomial(&chart, monos[m].clone(), Rational::from_integer(1.into()));
        VectorField::from_polys(&chart, comps).expect("ansatz field")
    };

    let span = d.span();
    // (generator, form, monomial) -> equation row
    let mut equations: BTreeMap<(usize, usize, Monomial), BTreeMap<usize, Rational>> = BTreeMap::new();
    let mut tangency: BTreeMap<Monomial, BTreeMap<usize, Rational>> = BTreeMap::new();
    for u in 0..unknowns {
        let b = ansatz(u);
        for (j, g) in d.generators().iter().enumerate() {
            let br = lie_bracket(&b, g)?;
            for (s, r) in span.poly_residuals(&br).into_iter().enumerate() {
                for (m, c) in r.terms() {
                    equations.entry((j, s, m.clone())).or_default().insert(u, c.clone());
                }
            }
        }
        if let Some(leaf) = d.leaf() {
            let t = b.apply_poly(&leaf.function);
            let t = t.as_poly().expect("polynomial");
            for (m, c) in t.terms() {
                tangency.entry(m.clone()).or_default().insert(u, c.clone());
            }
        }
    }
    let mut echelon = SparseEchelon::new(unknowns);
    for row in equations.into_values().chain(tangency.into_values()) {
        echelon.insert(row);
        if echelon.rank() == unknowns {
            break;
        }
    }
    let basis = echelon
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut comps = vec![MultiPoly::zero(&chart); n];
            for (u, c) in v.iter().enumerate() {
                if num_traits::Zero::is_zero(c) {
                    continue;
                }
                let (k, m) = (u / monos.len(), u % monos.len());
                comps[k] = &comps[k] + &MultiPoly::monomial(&chart, monos[m].clone(), c.clone());
            }
            VectorField::from_polys(&chart, comps).expect("solution field")
        })
        .collect();
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Chart;

    #[test]
    fn symmetries_of_a_coordinate_line_field() {
        // 𝒟 = span(∂x) on the plane; degree-1 symmetries: a(x)∂x + b(y)∂y with
        // b depending on y only: {∂x, x∂x, y∂x, ∂y, y∂y}
        let c = Chart::new(["x", "y"]).unwrap();
        let d = Distribution::new(vec![VectorField::coordinate(&c, 0)]).unwrap();
        let sols = solve_symmetries(&d, 1).unwrap();
        assert_eq!(sols.len(), 5);
        for s in &sols {
            assert!(is_symmetry(s, &d).unwrap().holds);
        }
        let x_dy = VectorField::from_polys(&c, vec![MultiPoly::zero(&c), MultiPoly::var(&c, 0)]).unwrap();
        assert!(!is_symmetry(&x_dy, &d).unwrap().holds);
        assert!(matches!(solve_symmetries(&d, 4), Err(DistributionError::AnsatzTooLarge { .. })));
    }
}
