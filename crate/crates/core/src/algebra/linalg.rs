//! Exact linear algebra over the rationals and over polynomial rings.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::rational::Rational;
use super::{MultiPoly, RationalFn};

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (top, bottom) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&mut a[i], &b[0])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&mut b[0], &a[r])
                };
                for (x, y) in top.iter_mut().zip(bottom.iter()) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Basis of `{v : m v = 0}`.
pub fn nullspace(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    free_basis(&a, &pivots, cols)
}

fn free_basis(a: &[Vec<Rational>], pivots: &[usize], cols: usize) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for f in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[f] = Rational::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -a[r][f].clone();
        }
        out.push(v);
    }
    out
}

/// One solution of `m x = b`, or `None` when inconsistent.
pub fn solve(m: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][cols].clone();
    }
    Some(x)
}

pub fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    d
}

/// Fraction-free (Bareiss) elimination on a polynomial matrix with full
/// pivoting. Returns `(rank, last pivot, sign of the permutation)`.
fn bareiss(mut a: Vec<Vec<MultiPoly>>) -> (usize, Option<MultiPoly>, i32) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let Some(chart) = a.iter().flatten().next().map(|p| p.chart().clone()) else {
        return (0, None, 1);
    };
    let mut prev = MultiPoly::one(&chart);
    let mut sign = 1;
    let mut k = 0;
    while k < rows.min(cols) {
        // smallest nonzero pivot keeps degrees low
        let mut best: Option<(usize, usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if !a[i][j].is_zero() {
                    let w = a[i][j].num_terms();
                    if best.map_or(true, |(_, _, bw)| w < bw) {
                        best = Some((i, j, w));
                    }
                }
            }
        }
        let Some((pi, pj, _)) = best else {
            break;
        };
        if pi != k {
            a.swap(pi, k);
            sign = -sign;
        }
        if pj != k {
            for row in a.iter_mut() {
                row.swap(pj, k);
            }
            sign = -sign;
        }
        for i in k + 1..rows {
            for j in k + 1..cols {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = MultiPoly::zero(&chart);
        }
        prev = a[k][k].clone();
        k += 1;
    }
    (k, Some(prev), sign)
}

/// Clears the denominators of each row; returns the cleared rows and the
/// polynomial multiplier used for each.
fn clear_rows(rows: &[Vec<RationalFn>]) -> (Vec<Vec<MultiPoly>>, Vec<MultiPoly>) {
    rows.iter()
        .map(|row| {
            let chart = row[0].chart();
            let mut l = MultiPoly::one(chart);
            for f in row {
                let d = f.denom();
                if !d.is_one() {
                    let g = l.gcd(d);
                    l = &l * &d.div_exact(&g).unwrap();
                }
            }
            let cleared = row
                .iter()
                .map(|f| f.numer() * &l.div_exact(f.denom()).unwrap())
                .collect();
            (cleared, l)
        })
        .unzip()
}

/// Rank over the field of rational functions.
pub fn function_rank(rows: &[Vec<RationalFn>]) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    bareiss(clear_rows(rows).0).0
}

/// Determinant of a square polynomial matrix.
pub fn poly_det(rows: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "square matrix expected");
    let chart = rows[0][0].chart().clone();
    let (r, last, sign) = bareiss(rows.to_vec());
    if r < n {
        return MultiPoly::zero(&chart);
    }
    let d = last.unwrap();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Determinant of a square matrix of rational functions.
pub fn function_det(rows: &[Vec<RationalFn>]) -> RationalFn {
    let (cleared, mult) = clear_rows(rows);
    let scale = mult.iter().fold(MultiPoly::one(rows[0][0].chart()), |acc, m| &acc * m);
    RationalFn::new(poly_det(&cleared), scale).expect("row multipliers are nonzero")
}

/// Incrementally maintained reduced echelon basis of sparse rational rows.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    cols: usize,
    // pivot column -> normalized row (pivot entry 1)
    rows: BTreeMap<usize, BTreeMap<usize, Rational>>,
}

impl SparseEchelon {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut row: BTreeMap<usize, Rational>) -> BTreeMap<usize, Rational> {
        loop {
            let hit = row.iter().find(|(c, _)| self.rows.contains_key(c)).map(|(c, v)| (*c, v.clone()));
            let Some((c, f)) = hit else {
                return row;
            };
            for (j, v) in &self.rows[&c] {
                let e = row.entry(*j).or_insert_with(Rational::zero);
                *e -= &f * v;
                if e.is_zero() {
                    row.remove(j);
                }
            }
        }
    }

    /// Inserts a row; returns whether the rank grew.
    pub fn insert(&mut self, row: BTreeMap<usize, Rational>) -> bool {
        let mut row = self.reduce(row.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        let Some((&p, pv)) = row.iter().next() else {
            return false;
        };
        assert!(p < self.cols, "column out of range");
        let inv = pv.recip();
        for v in row.values_mut() {
            *v *= &inv;
        }
        for r in self.rows.values_mut() {
            if let Some(f) = r.get(&p).cloned() {
                for (j, v) in &row {
                    let e = r.entry(*j).or_insert_with(Rational::zero);
                    *e -= &f * v;
                    if e.is_zero() {
                        r.remove(j);
                    }
                }
            }
        }
        self.rows.insert(p, row);
        true
    }

    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|c| !self.rows.contains_key(c)) {
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (&p, r) in &self.rows {
                if let Some(x) = r.get(&f) {
                    v[p] = -x.clone();
                }
            }
            out.push(v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::int;
    use super::super::Chart;
    use super::*;

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn rational_rank_and_nullspace() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&m), 2);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        for row in &m {
            let s: Rational = row.iter().zip(&ns[0]).map(|(a, b)| a * b).sum();
            assert!(s.is_zero());
        }
        assert_eq!(det(&q(&[&[2, 1], &[1, 3]])), int(5));
    }

    #[test]
    fn sparse_echelon_matches_dense() {
        let m = q(&[&[1, 2, 3, 0], &[0, 1, 1, 1], &[1, 3, 4, 1]]);
        let mut e = SparseEchelon::new(4);
        for row in &m {
            e.insert(row.iter().cloned().enumerate().collect());
        }
        assert_eq!(e.rank(), rank(&m));
        assert_eq!(e.nullspace().len(), 4 - rank(&m));
    }

    #[test]
    fn polynomial_determinant() {
        let c = Chart::new(["a", "b", "p", "q"]).unwrap();
        let v = |i| MultiPoly::var(&c, i);
        let d = poly_det(&[vec![v(0), v(1)], vec![v(2), v(3)]]);
        assert_eq!(d.to_string(), "a*q - b*p");
        assert_eq!(function_rank(&[vec![v(0).into(), v(1).into()], vec![(&v(0) * &v(2)).into(), (&v(1) * &v(2)).into()]]), 1);
    }
}
