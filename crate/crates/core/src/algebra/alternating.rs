//! Sparse alternating tensors shared by forms and multivector fields.

use std::collections::BTreeMap;

use super::{Chart, RationalFn};

/// Coefficients keyed by strictly increasing index tuples.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct Alternating {
    pub chart: Chart,
    pub degree: usize,
    pub terms: BTreeMap<Vec<usize>, RationalFn>,
}

/// Sorts `idx` in place and returns the permutation sign, or `None` on a
/// repeated index.
pub(crate) fn sort_with_sign(idx: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

impl Alternating {
    pub fn zero(chart: &Chart, degree: usize) -> Self {
        Self {
            chart: chart.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Adds `coef · e_{idx}` where `idx` may be unsorted.
    pub fn add_term(&mut self, idx: Vec<usize>, coef: RationalFn) {
        debug_assert_eq!(idx.len(), self.degree);
        if coef.is_zero() {
            return;
        }
        let mut idx = idx;
        let Some(sign) = sort_with_sign(&mut idx) else {
            return;
        };
        let coef = if sign < 0 { -&coef } else { coef };
        use std::collections::btree_map::Entry;
        match self.terms.entry(idx) {
            Entry::Vacant(v) => {
                v.insert(coef);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &coef;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.chart == other.chart, "chart mismatch");
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, f: &RationalFn) -> Self {
        let mut out = Self::zero(&self.chart, self.degree);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c * f);
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert!(self.chart == other.chart, "chart mismatch");
        let mut out = Self::zero(&self.chart, self.degree + other.degree);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                if k1.iter().any(|i| k2.contains(i)) {
                    continue;
                }
                let mut idx = k1.clone();
                idx.extend_from_slice(k2);
                out.add_term(idx, c1 * c2);
            }
        }
        out
    }

    pub fn fmt_with(&self, prefix: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(k, c)| {
                let basis = if k.is_empty() {
                    "1".to_string()
                } else {
                    k.iter()
                        .map(|&i| format!("{}{}", prefix, self.chart.name(i)))
                        .collect::<Vec<_>>()
                        .join("∧")
                };
                format!("({}) {}", c, basis)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_signs() {
        let mut a = vec![2, 0, 1];
        assert_eq!(sort_with_sign(&mut a), Some(1));
        assert_eq!(a, vec![0, 1, 2]);
        let mut b = vec![1, 0];
        assert_eq!(sort_with_sign(&mut b), Some(-1));
        let mut c = vec![1, 3, 1];
        assert_eq!(sort_with_sign(&mut c), None);
    }
}
