//! Sparse multivariate polynomials with rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic in chart order. Iteration therefore runs from the
//! smallest term to the leading term, and serialization walks it in reverse.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{fmt_rational, to_f64, Rational};
use super::{AlgebraError, Chart, RationalFn};

/// Exponent vector with the graded lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial over the rationals on a fixed chart.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    chart: Chart,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(chart: &Chart) -> Self {
        Self {
            chart: chart.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(chart: &Chart) -> Self {
        Self::constant(chart, Rational::one())
    }

    pub fn constant(chart: &Chart, c: Rational) -> Self {
        let mut p = Self::zero(chart);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(chart.dim()), c);
        }
        p
    }

    /// The coordinate function of variable `i`.
    pub fn var(chart: &Chart, i: usize) -> Self {
        let mut p = Self::zero(chart);
        p.terms.insert(Monomial::var(chart.dim(), i), Rational::one());
        p
    }

    /// The coordinate function of the variable called `name`.
    pub fn named(chart: &Chart, name: &str) -> Result<Self, AlgebraError> {
        Ok(Self::var(chart, chart.require(name)?))
    }

    pub fn monomial(chart: &Chart, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), chart.dim(), "monomial arity");
        let mut p = Self::zero(chart);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I>(chart: &Chart, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(chart);
        for (m, c) in terms {
            assert_eq!(m.0.len(), chart.dim(), "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, c)| m.is_one() && c.is_one())
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.chart.dim()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.chart.dim())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_chart(&self, other: &MultiPoly) {
        assert!(
            self.chart == other.chart,
            "polynomial chart mismatch: {} vs {}",
            self.chart,
            other.chart
        );
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.chart);
        }
        Self {
            chart: self.chart.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    fn mul_monomial(&self, mono: &Monomial, c: &Rational) -> Self {
        Self {
            chart: self.chart.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.mul(mono), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.chart);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.chart);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.add_term(m2, c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Leading coefficient normalized to one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.chart.dim(), "point arity");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.chart.dim(), "point arity");
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(point)
                    .fold(to_f64(c), |t, (&e, &x)| t * x.powi(e as i32))
            })
            .sum()
    }

    /// Composition: replaces variable `i` by `values[i]` when present.
    pub fn substitute(&self, values: &[Option<RationalFn>]) -> RationalFn {
        assert_eq!(values.len(), self.chart.dim(), "substitution arity");
        let target = values
            .iter()
            .flatten()
            .next()
            .map(|v| v.chart().clone())
            .unwrap_or_else(|| self.chart.clone());
        // Powers are cached per variable.
        let mut powers: Vec<Vec<RationalFn>> = vec![Vec::new(); values.len()];
        let mut acc = RationalFn::zero(&target);
        for (m, c) in &self.terms {
            let mut kept = vec![0u32; self.chart.dim()];
            let mut t = RationalFn::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match &values[i] {
                    Some(v) => {
                        let cache = &mut powers[i];
                        if cache.is_empty() {
                            cache.push(RationalFn::one(&target));
                        }
                        while cache.len() <= e as usize {
                            let next = cache.last().unwrap() * v;
                            cache.push(next);
                        }
                        t = &t * &cache[e as usize];
                    }
                    None => kept[i] = e,
                }
            }
            if kept.iter().any(|&e| e > 0) {
                assert!(target == self.chart, "partial substitution across charts");
                let mono = MultiPoly::monomial(&target, Monomial(kept), Rational::one());
                t = &t * &RationalFn::from_poly(mono);
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Re-expresses the polynomial on a chart that contains all its variables
    /// (matched by name).
    pub fn embed(&self, target: &Chart) -> Result<Self, AlgebraError> {
        let map: Vec<usize> = self
            .chart
            .names()
            .iter()
            .map(|n| target.require(n))
            .collect::<Result<_, _>>()?;
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.dim()];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] = k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        self.check_chart(divisor);
        let (lm, lc) = divisor.leading_term()?;
        if divisor.terms.len() == 1 {
            let mut q = Self::zero(&self.chart);
            let inv = lc.recip();
            for (m, c) in &self.terms {
                q.terms.insert(m.div(lm)?, c * &inv);
            }
            return Some(q);
        }
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.chart);
        let inv = lc.recip();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lm)?;
            let qc = c * &inv;
            let sub = divisor.mul_monomial(&qm, &qc);
            rem = &rem - &sub;
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Coefficients with respect to variable `v`: `self = Σ_k coeffs[k]·v^k`.
    pub fn coeffs_in(&self, v: usize) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m.0[v];
            let mut m2 = m.clone();
            m2.0[v] = 0;
            out.entry(k)
                .or_insert_with(|| Self::zero(&self.chart))
                .add_term(m2, c.clone());
        }
        out
    }

    fn lead_in(&self, v: usize) -> (u32, MultiPoly) {
        let d = self.degree_in(v);
        let mut c = Self::zero(&self.chart);
        for (m, k) in &self.terms {
            if m.0[v] == d {
                let mut m2 = m.clone();
                m2.0[v] = 0;
                c.add_term(m2, k.clone());
            }
        }
        (d, c)
    }

    fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Greatest common divisor, normalized to leading coefficient one.
    ///
    /// Content / primitive-part recursion over the chart variables with a
    /// primitive pseudo-remainder sequence in the main variable.
    pub fn gcd(&self, other: &MultiPoly) -> MultiPoly {
        self.check_chart(other);
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Self::one(&self.chart);
        }
        if self.is_monomial() || other.is_monomial() {
            let (mono, poly) = if self.is_monomial() {
                (self, other)
            } else {
                (other, self)
            };
            let (m0, _) = mono.leading_term().unwrap();
            let mut e = m0.0.clone();
            for m in poly.terms.keys() {
                for (a, b) in e.iter_mut().zip(&m.0) {
                    *a = (*a).min(*b);
                }
            }
            return Self::monomial(&self.chart, Monomial(e), Rational::one());
        }
        if self == other {
            return self.monic();
        }
        let sa = self.support();
        let sb = other.support();
        // A variable present in only one argument: the gcd is the gcd of that
        // argument's coefficients with the other argument.
        if let Some(&v) = sa.iter().find(|v| !sb.contains(v)) {
            return Self::gcd_with_coeffs(other, self, v);
        }
        if let Some(&v) = sb.iter().find(|v| !sa.contains(v)) {
            return Self::gcd_with_coeffs(self, other, v);
        }
        if self.total_degree() >= other.total_degree() {
            if self.div_exact(other).is_some() {
                return other.monic();
            }
        } else if other.div_exact(self).is_some() {
            return self.monic();
        }
        let v = sa[0];
        let ca = self.content_in(v);
        let cb = other.content_in(v);
        let c = ca.gcd(&cb);
        let pa = self.div_exact(&ca).expect("content divides");
        let pb = other.div_exact(&cb).expect("content divides");
        let (mut f, mut g) = if pa.degree_in(v) >= pb.degree_in(v) {
            (pa, pb)
        } else {
            (pb, pa)
        };
        loop {
            let r = f.pseudo_rem(&g, v);
            if r.is_zero() {
                break;
            }
            if r.degree_in(v) == 0 {
                return c;
            }
            f = g;
            g = r.primitive_in(v);
        }
        (&c * &g.primitive_in(v)).monic()
    }

    /// gcd(base, all v-coefficients of `poly`), where `base` is free of `v`.
    fn gcd_with_coeffs(base: &MultiPoly, poly: &MultiPoly, v: usize) -> MultiPoly {
        let mut g = base.monic();
        for c in poly.coeffs_in(v).values() {
            if g.is_constant() {
                break;
            }
            g = g.gcd(c);
        }
        g
    }

    /// gcd of the coefficients with respect to `v`.
    fn content_in(&self, v: usize) -> MultiPoly {
        let mut it = self.coeffs_in(v).into_values();
        let mut g = it.next().map(|p| p.monic()).unwrap_or_else(|| Self::zero(&self.chart));
        for c in it {
            if g.is_constant() {
                break;
            }
            g = g.gcd(&c);
        }
        g
    }

    fn primitive_in(&self, v: usize) -> MultiPoly {
        let c = self.content_in(v);
        if c.is_constant() {
            return self.monic();
        }
        self.div_exact(&c).expect("content divides").monic()
    }

    /// Pseudo-remainder of `self` by `divisor` as polynomials in `v`.
    fn pseudo_rem(&self, divisor: &MultiPoly, v: usize) -> MultiPoly {
        let (n, lb) = divisor.lead_in(v);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= n {
            let (d, la) = r.lead_in(v);
            let mut shift = Monomial::one(self.chart.dim());
            shift.0[v] = d - n;
            let t = (&la * divisor).mul_monomial(&shift, &Rational::one());
            r = &(&lb * &r) - &t;
        }
        r
    }

    fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.chart.name(i).to_string()),
                _ => parts.push(format!("{}^{}", self.chart.name(i), e)),
            }
        }
        parts.join("*")
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical serialization: terms in descending graded-lex order,
    /// e.g. `-x1*y2 + 1/2*x2 - 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{}", self.fmt_monomial(m))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&a), self.fmt_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_chart(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_chart(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_chart(rhs);
        let mut out = MultiPoly::zero(&self.chart);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::{int, rat};
    use super::*;

    fn chart() -> Chart {
        Chart::new(["x", "y", "z"]).unwrap()
    }

    fn v(c: &Chart, i: usize) -> MultiPoly {
        MultiPoly::var(c, i)
    }

    #[test]
    fn graded_lex_serialization() {
        let c = chart();
        let p = &(&v(&c, 1) - &v(&c, 0)) + &(&v(&c, 0) * &v(&c, 2)).scale(&rat(1, 2));
        assert_eq!(p.to_string(), "1/2*x*z - x + y");
        let q = &(&v(&c, 0).pow(2) * &v(&c, 1)).scale(&int(-3)) + &MultiPoly::constant(&c, int(5));
        assert_eq!(q.to_string(), "-3*x^2*y + 5");
        assert_eq!(MultiPoly::zero(&c).to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let c = chart();
        let a = &v(&c, 0) + &v(&c, 1);
        let b = &v(&c, 0) - &v(&c, 2);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(p.div_exact(&(&v(&c, 0) + &MultiPoly::one(&c))).is_none());
    }

    #[test]
    fn gcd_of_products() {
        let c = chart();
        let x = v(&c, 0);
        let y = v(&c, 1);
        let z = v(&c, 2);
        let f = &(&x * &y) - &z; // xy - z
        let g = &x + &(&y * &z).scale(&int(2));
        let h = &x - &MultiPoly::one(&c);
        let a = &(&f * &g) * &h;
        let b = &(&f * &h) * &(&y + &z);
        let expected = (&f * &h).monic();
        assert_eq!(a.gcd(&b), expected);
        assert!(g.gcd(&h).is_one());
        assert_eq!(x.pow(3).gcd(&(&x * &y)), x);
    }

    #[test]
    fn derivative_and_eval() {
        let c = chart();
        let p = &v(&c, 0).pow(3) * &v(&c, 1);
        let d = p.derivative(0);
        assert_eq!(d.to_string(), "3*x^2*y");
        assert_eq!(d.eval(&[int(2), int(5), int(0)]), int(60));
        assert_eq!(d.eval_f64(&[2.0, 5.0, 0.0]), 60.0);
    }

    #[test]
    fn embed_by_name() {
        let c = chart();
        let big = Chart::new(["w", "z", "y", "x"]).unwrap();
        let p = &v(&c, 0) * &v(&c, 2);
        let q = p.embed(&big).unwrap();
        assert_eq!(q.to_string(), "z*x");
    }
}
