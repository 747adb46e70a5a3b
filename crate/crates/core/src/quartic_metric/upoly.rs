//! Dense univariate polynomials over ℚ, coefficients in ascending order.

use num_traits::{Signed, Zero};

use crate::algebra::Rational;

pub type UPoly = Vec<Rational>;

pub fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Degree, with `None` for the zero polynomial.
pub fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn derivative(p: &[Rational]) -> UPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer((k as i64).into()))
            .collect(),
    )
}

fn sub(a: &[Rational], b: &[Rational]) -> UPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|k| a.get(k).cloned().unwrap_or_else(Rational::zero) - b.get(k).cloned().unwrap_or_else(Rational::zero))
            .collect(),
    )
}

/// Euclidean division `a = q b + r`; `b` must be nonzero.
pub fn div_rem(a: &[Rational], b: &[Rational]) -> (UPoly, UPoly) {
    let db = degree(b).expect("nonzero divisor");
    let lead = &b[db];
    let mut r = trim(a.to_vec());
    let mut q = vec![Rational::zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / lead;
        let shift = dr - db;
        for (k, bk) in b.iter().enumerate().take(db + 1) {
            r[k + shift] -= &c * bk;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

pub fn monic(p: &[Rational]) -> UPoly {
    match degree(p) {
        Some(d) => {
            let lead = p[d].clone();
            p[..=d].iter().map(|c| c / &lead).collect()
        }
        None => Vec::new(),
    }
}

pub fn gcd(a: &[Rational], b: &[Rational]) -> UPoly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while degree(&b).is_some() {
        let (_, r) = div_rem(&a, &b);
        a = b;
        b = r;
    }
    monic(&a)
}

/// Yun's square-free decomposition: `p = lc · Π f_i^i` with monic, pairwise
/// coprime, square-free `f_i`. Returns `(i, f_i)` for the nonconstant factors.
pub fn square_free(p: &[Rational]) -> Vec<(u32, UPoly)> {
    let mut out = Vec::new();
    if degree(p).unwrap_or(0) == 0 {
        return out;
    }
    let dp = derivative(p);
    let a0 = gcd(p, &dp);
    let mut b = div_rem(p, &a0).0;
    let c = div_rem(&dp, &a0).0;
    let mut d = sub(&c, &derivative(&b));
    let mut i = 1;
    while degree(&b).unwrap_or(0) > 0 {
        let a = gcd(&b, &d);
        let next_b = div_rem(&b, &a).0;
        let c = div_rem(&d, &a).0;
        d = sub(&c, &derivative(&next_b));
        if degree(&a).unwrap_or(0) > 0 {
            out.push((i, a));
        }
        b = next_b;
        i += 1;
    }
    out
}

/// Number of distinct real roots of a square-free polynomial, from the
/// sign changes of its Sturm sequence at `−∞` and `+∞`.
pub fn sturm_count(p: &[Rational]) -> usize {
    let mut seq = vec![trim(p.to_vec()), derivative(p)];
    while degree(seq.last().unwrap()).is_some() {
        let n = seq.len();
        let (_, r) = div_rem(&seq[n - 2], &seq[n - 1]);
        if degree(&r).is_none() {
            break;
        }
        seq.push(r.iter().map(|c| -c).collect());
    }
    let changes = |at_plus: bool| {
        let signs: Vec<bool> = seq
            .iter()
            .filter_map(|q| {
                let d = degree(q)?;
                let positive = q[d].is_positive();
                Some(if at_plus || d % 2 == 0 { positive } else { !positive })
            })
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    changes(false) - changes(true)
}

#[cfg(test)]
pub fn is_one(p: &[Rational]) -> bool {
    degree(p) == Some(0) && num_traits::One::is_one(&p[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn poly(c: &[i64]) -> UPoly {
        c.iter().map(|&v| int(v)).collect()
    }

    #[test]
    fn yun_and_sturm() {
        // (x − 1)^2 (x + 2) = x³ − 3x + 2
        let p = poly(&[2, -3, 0, 1]);
        let sf = square_free(&p);
        assert_eq!(sf, vec![(1, poly(&[2, 1])), (2, poly(&[-1, 1]))]);
        assert_eq!(sturm_count(&poly(&[-1, 0, 1])), 2);
        assert_eq!(sturm_count(&poly(&[1, 0, 1])), 0);
        assert_eq!(sturm_count(&poly(&[0, -1, 0, 1])), 3);
        let (q, r) = div_rem(&p, &poly(&[-1, 1]));
        assert_eq!(q, poly(&[-2, 1, 1]));
        assert!(r.is_empty());
        assert!(is_one(&gcd(&poly(&[1, 1]), &poly(&[-1, 1]))));
    }
}
