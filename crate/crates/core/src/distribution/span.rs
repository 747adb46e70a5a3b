//! Exact membership in the span of vector fields over the function field.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::linalg::{function_rank, poly_det, rank};
use crate::algebra::{rat, MultiPoly, Rational, RationalFn, VectorField};

/// Annihilator 1-forms of an independent generator set, built from its
/// maximal minors: `v` lies in the span iff every form kills `v`.
#[derive(Clone, Debug)]
pub struct SpanTest {
    dim: usize,
    basis: Vec<usize>,
    /// `(columns S, coefficient of dx_k for k ∈ S)` per annihilator.
    forms: Vec<Vec<(usize, MultiPoly)>>,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Greedy maximal subset that is independent over the function field.
pub(crate) fn independent_subset(fields: &[VectorField]) -> Vec<usize> {
    let Some(first) = fields.first() else {
        return Vec::new();
    };
    let n = first.chart().dim();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let point: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-97..=97), rng.gen_range(1..=13))).collect();
    let mut chosen: Vec<usize> = Vec::new();
    let mut values: Vec<Vec<Rational>> = Vec::new();
    for (i, f) in fields.iter().enumerate() {
        if chosen.len() == n {
            break;
        }
        if f.is_zero() {
            continue;
        }
        // A rank increase at one point certifies the generic increase.
        if let Ok(v) = f.eval(&point) {
            let mut m = values.clone();
            m.push(v.clone());
            if rank(&m) == chosen.len() + 1 {
                chosen.push(i);
                values = m;
                continue;
            }
        }
        let rows: Vec<Vec<RationalFn>> = chosen
            .iter()
            .chain(std::iter::once(&i))
            .map(|&j| fields[j].components().to_vec())
            .collect();
        if function_rank(&rows) == chosen.len() + 1 {
            chosen.push(i);
            values = chosen
                .iter()
                .filter_map(|&j| fields[j].eval(&point).ok())
                .collect();
        }
    }
    chosen
}

/// Generic rank of a list of fields.
pub fn generic_rank(fields: &[VectorField]) -> usize {
    independent_subset(fields).len()
}

impl SpanTest {
    pub fn new(fields: &[VectorField]) -> Self {
        let basis = independent_subset(fields);
        let dim = fields.first().map_or(0, |f| f.chart().dim());
        let r = basis.len();
        let mut forms = Vec::new();
        if let (Some(first), true) = (fields.first(), r < dim) {
            let chart = first.chart();
            // denominators are cleared row by row; this rescales every minor
            // by the same nonzero factor
            let rows: Vec<Vec<MultiPoly>> = basis
                .iter()
                .map(|&j| {
                    let comps = fields[j].components();
                    let mut l = MultiPoly::one(chart);
                    for c in comps {
                        if !c.denom().is_one() {
                            let g = l.gcd(c.denom());
                            l = &l * &c.denom().div_exact(&g).unwrap();
                        }
                    }
                    comps
                        .iter()
                        .map(|c| c.numer() * &l.div_exact(c.denom()).unwrap())
                        .collect()
                })
                .collect();
            let minor = |cols: &[usize]| -> MultiPoly {
                if cols.is_empty() {
                    return MultiPoly::one(chart);
                }
                let m: Vec<Vec<MultiPoly>> = rows
                    .iter()
                    .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
                    .collect();
                poly_det(&m)
            };
            for s in subsets(dim, r + 1) {
                let mut form = Vec::new();
                for (j, &col) in s.iter().enumerate() {
                    let rest: Vec<usize> = s.iter().copied().filter(|&c| c != col).collect();
                    let m = minor(&rest);
                    if m.is_zero() {
                        continue;
                    }
                    let m = if (r + j) % 2 == 1 { -m } else { m };
                    form.push((col, m));
                }
                if !form.is_empty() {
                    forms.push(form);
                }
            }
        }
        Self { dim, basis, forms }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Indices of the generators kept as a basis.
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Values of the annihilator forms on `v`.
    pub fn residuals(&self, v: &VectorField) -> Vec<RationalFn> {
        self.forms
            .iter()
            .map(|form| {
                form.iter().fold(RationalFn::zero(v.chart()), |acc, (k, m)| {
                    let c = v.component(*k);
                    if c.is_zero() {
                        acc
                    } else {
                        &acc + &(c * &RationalFn::from_poly(m.clone()))
                    }
                })
            })
            .collect()
    }

    /// Annihilator values for a polynomial field, as polynomials.
    pub fn poly_residuals(&self, v: &VectorField) -> Vec<MultiPoly> {
        self.forms
            .iter()
            .map(|form| {
                form.iter().fold(MultiPoly::zero(v.chart()), |acc, (k, m)| {
                    let c = v.component(*k).as_poly().expect("polynomial field");
                    if c.is_zero() {
                        acc
                    } else {
                        &acc + &(c * m)
                    }
                })
            })
            .collect()
    }

    pub fn contains(&self, v: &VectorField) -> bool {
        self.residuals(v).iter().all(RationalFn::is_zero)
    }

    /// First nonvanishing annihilator value, if any.
    pub fn first_residual(&self, v: &VectorField) -> Option<RationalFn> {
        self.residuals(v).into_iter().find(|r| !r.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Chart;

    #[test]
    fn plane_field_membership() {
        let c = Chart::new(["x", "y", "z"]).unwrap();
        let ex = VectorField::coordinate(&c, 0);
        let ey = VectorField::coordinate(&c, 1);
        let ez = VectorField::coordinate(&c, 2);
        let span = SpanTest::new(&[ex.clone(), ey.clone()]);
        assert_eq!(span.rank(), 2);
        assert!(span.contains(&ex.add(&ey)));
        assert!(!span.contains(&ez));
        let xz = VectorField::from_polys(&c, vec![MultiPoly::zero(&c), MultiPoly::zero(&c), MultiPoly::var(&c, 0)]).unwrap();
        assert!(!span.contains(&xz));
    }
}
