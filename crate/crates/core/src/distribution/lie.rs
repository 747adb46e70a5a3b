//! Structure constants and Killing forms of finite-dimensional algebras of
//! polynomial vector fields.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_traits::Zero;
use serde::Serialize;

use super::DistributionError;
use crate::algebra::linalg::{rank, solve};
use crate::algebra::{lie_bracket, to_f64, Monomial, Rational, VectorField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KillingSignature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

#[derive(Clone, Debug)]
pub struct LieAlgebraTable {
    pub basis: Vec<VectorField>,
    /// `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
    pub structure_constants: Vec<Vec<Vec<Rational>>>,
    pub killing_form: Vec<Vec<Rational>>,
    pub killing_signature: KillingSignature,
}

type Key = (usize, Monomial);

fn flatten(f: &VectorField, index: usize) -> Result<BTreeMap<Key, Rational>, DistributionError> {
    let mut out = BTreeMap::new();
    for (k, c) in f.components().iter().enumerate() {
        let p = c.as_poly().ok_or(DistributionError::NotPolynomial(index))?;
        for (m, v) in p.terms() {
            out.insert((k, m.clone()), v.clone());
        }
    }
    Ok(out)
}

/// Rank of `fields` as vectors over ℚ (constant linear combinations).
pub fn rational_rank(fields: &[VectorField]) -> Result<usize, DistributionError> {
    let flat: Vec<BTreeMap<Key, Rational>> = fields
        .iter()
        .enumerate()
        .map(|(i, f)| flatten(f, i))
        .collect::<Result<_, _>>()?;
    let mut keys: Vec<Key> = flat.iter().flat_map(|m| m.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    let rows: Vec<Vec<Rational>> = flat
        .iter()
        .map(|m| keys.iter().map(|k| m.get(k).cloned().unwrap_or_else(Rational::zero)).collect())
        .collect();
    Ok(rank(&rows))
}

/// Expands every bracket of `fields` in the same basis.
pub fn structure_constants(fields: &[VectorField]) -> Result<LieAlgebraTable, DistributionError> {
    let n = fields.len();
    if n == 0 {
        return Err(DistributionError::Empty);
    }
    let flat: Vec<BTreeMap<Key, Rational>> = fields
        .iter()
        .enumerate()
        .map(|(i, f)| flatten(f, i))
        .collect::<Result<_, _>>()?;
    let mut keys: Vec<Key> = flat.iter().flat_map(|m| m.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    let column = |m: &BTreeMap<Key, Rational>, keys: &[Key]| -> Vec<Rational> {
        keys.iter().map(|k| m.get(k).cloned().unwrap_or_else(Rational::zero)).collect()
    };
    let matrix_for = |keys: &[Key]| -> Vec<Vec<Rational>> {
        let cols: Vec<Vec<Rational>> = flat.iter().map(|m| column(m, keys)).collect();
        (0..keys.len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
    };
    if rank(&matrix_for(&keys)) < n {
        return Err(DistributionError::Dependent);
    }

    let zero = vec![Rational::zero(); n];
    let mut c = vec![vec![zero.clone(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let br = lie_bracket(&fields[i], &fields[j])?;
            let fb = flatten(&br, i)?;
            let mut all_keys = keys.clone();
            all_keys.extend(fb.keys().cloned());
            all_keys.sort();
            all_keys.dedup();
            let a = matrix_for(&all_keys);
            let b = column(&fb, &all_keys);
            let x = solve(&a, &b).ok_or_else(|| DistributionError::NotClosed(i, j, br.to_string()))?;
            c[j][i] = x.iter().map(|v| -v.clone()).collect();
            c[i][j] = x;
        }
    }
    let killing = killing_form(&c);
    let killing_signature = signature(&killing);
    Ok(LieAlgebraTable {
        basis: fields.to_vec(),
        structure_constants: c,
        killing_form: killing,
        killing_signature,
    })
}

/// `K(a, b) = tr(ad_a ∘ ad_b)`.
pub fn killing_form(c: &[Vec<Vec<Rational>>]) -> Vec<Vec<Rational>> {
    let n = c.len();
    let mut k = vec![vec![Rational::zero(); n]; n];
    for a in 0..n {
        for b in 0..n {
            let mut s = Rational::zero();
            for i in 0..n {
                for j in 0..n {
                    // (ad_a)_{ji} = c[a][i][j]
                    if !c[a][i][j].is_zero() && !c[b][j][i].is_zero() {
                        s += &c[a][i][j] * &c[b][j][i];
                    }
                }
            }
            k[a][b] = s;
        }
    }
    k
}

/// Inertia of a rational symmetric matrix: zeros from the exact rank, signs
/// from the largest eigenvalues in magnitude.
pub fn signature(m: &[Vec<Rational>]) -> KillingSignature {
    let n = m.len();
    let r = rank(m);
    let dm = DMatrix::from_fn(n, n, |i, j| to_f64(&m[i][j]));
    let mut eig: Vec<f64> = dm.symmetric_eigen().eigenvalues.iter().copied().collect();
    eig.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
    let positive = eig[..r].iter().filter(|&&v| v > 0.0).count();
    KillingSignature {
        positive,
        negative: r - positive,
        zero: n - r,
    }
}

impl LieAlgebraTable {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Antisymmetry and the Jacobi identity of the table itself.
    pub fn is_consistent(&self) -> bool {
        let c = &self.structure_constants;
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if c[i][j][k] != -c[j][i][k].clone() {
                        return false;
                    }
                }
            }
        }
        // Σ_l c[i][j][l] c[l][k][m] + cyclic = 0
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for m in 0..n {
                        let mut s = Rational::zero();
                        for l in 0..n {
                            s += &c[i][j][l] * &c[l][k][m];
                            s += &c[j][k][l] * &c[l][i][m];
                            s += &c[k][i][l] * &c[l][j][m];
                        }
                        if !s.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// `span(e_i : i ∈ idx)` is an ideal.
    pub fn is_ideal(&self, idx: &[usize]) -> bool {
        (0..self.dim()).all(|a| {
            idx.iter().all(|&b| {
                self.structure_constants[a][b]
                    .iter()
                    .enumerate()
                    .all(|(k, v)| v.is_zero() || idx.contains(&k))
            })
        })
    }

    pub fn is_abelian(&self, idx: &[usize]) -> bool {
        idx.iter().all(|&a| {
            idx.iter()
                .all(|&b| self.structure_constants[a][b].iter().all(Zero::is_zero))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Chart, MultiPoly};

    #[test]
    fn affine_line_algebra() {
        let c = Chart::new(["x"]).unwrap();
        let dx = VectorField::coordinate(&c, 0);
        let xdx = VectorField::from_polys(&c, vec![MultiPoly::var(&c, 0)]).unwrap();
        let t = structure_constants(&[dx, xdx]).unwrap();
        assert_eq!(t.structure_constants[0][1], vec![int(1), int(0)]);
        assert!(t.is_consistent());
        assert!(t.is_ideal(&[0]));
        assert_eq!(
            t.killing_signature,
            KillingSignature {
                positive: 1,
                negative: 0,
                zero: 1
            }
        );
    }

    #[test]
    fn diagonal_signature() {
        let m: Vec<Vec<Rational>> = (0..5)
            .map(|i| (0..5).map(|j| if i == j { int(if i < 2 { 1 } else { -1 }) } else { int(0) }).collect())
            .collect();
        let s = signature(&m);
        assert_eq!((s.positive, s.negative, s.zero), (2, 3, 0));
    }
}
