use serde::Serialize;

use super::QuarticMetricError;
use crate::algebra::linalg::rank;
use crate::algebra::Rational;
use crate::distribution::signature;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MetricSignature {
    pub positive: usize,
    pub negative: usize,
}

impl MetricSignature {
    /// Unordered comparison: a conformal class does not fix the overall sign.
    pub fn matches_unordered(&self, a: usize, b: usize) -> bool {
        (self.positive, self.negative) == (a, b) || (self.positive, self.negative) == (b, a)
    }
}

/// Eigenvalue sign count of an evaluated symmetric Gram matrix; errors
/// with the exact rank when it is degenerate.
pub fn metric_signature(g: &[Vec<Rational>]) -> Result<MetricSignature, QuarticMetricError> {
    let n = g.len();
    if g.iter().any(|row| row.len() != n) || (0..n).any(|i| (0..i).any(|j| g[i][j] != g[j][i])) {
        return Err(QuarticMetricError::NotSymmetric);
    }
    let r = rank(g);
    if r < n {
        return Err(QuarticMetricError::DegenerateForm { rank: r, dim: n });
    }
    let s = signature(g);
    Ok(MetricSignature {
        positive: s.positive,
        negative: s.negative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn diagonal_forms() {
        let diag = |d: &[i64]| -> Vec<Vec<Rational>> {
            (0..d.len())
                .map(|i| (0..d.len()).map(|j| int(if i == j { d[i] } else { 0 })).collect())
                .collect()
        };
        let s = metric_signature(&diag(&[1, 1, -1, -1, -1])).unwrap();
        assert_eq!((s.positive, s.negative), (2, 3));
        assert!(s.matches_unordered(3, 2));
        assert_eq!(
            metric_signature(&diag(&[1, 0, -1])),
            Err(QuarticMetricError::DegenerateForm { rank: 2, dim: 3 })
        );
        let mut skew = diag(&[1, 1]);
        skew[0][1] = int(1);
        assert_eq!(metric_signature(&skew), Err(QuarticMetricError::NotSymmetric));
    }
}
