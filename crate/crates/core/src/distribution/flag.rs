//! Derived flags and growth vectors.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::span::independent_subset;
use super::{Distribution, DistributionError};
use crate::algebra::linalg::rank;
use crate::algebra::{fmt_rational, lie_bracket, Rational, VectorField};

/// Generic ranks of `𝒟 ⊂ 𝒟¹ ⊂ …` with `𝒟^{k+1} = 𝒟^k + [𝒟^k, 𝒟^k]`.
#[derive(Clone, Debug)]
pub struct DerivedFlag {
    pub ranks: Vec<usize>,
    pub stabilized: bool,
    pub witness_points: Vec<Vec<Rational>>,
    /// Independent generators of each level.
    pub levels: Vec<Vec<VectorField>>,
}

fn bracket_closure(fields: &[VectorField]) -> Vec<VectorField> {
    let mut out = fields.to_vec();
    for (i, a) in fields.iter().enumerate() {
        for b in &fields[i + 1..] {
            out.push(lie_bracket(a, b).expect("shared chart"));
        }
    }
    out
}

fn pointwise_rank(fields: &[VectorField], point: &[Rational]) -> Result<usize, DistributionError> {
    let rows = fields
        .iter()
        .map(|f| f.eval(point))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(rank(&rows))
}

/// Computes the derived flag until it fills the manifold, repeats a rank,
/// or reaches `max_depth` bracket steps.
///
/// Ranks are exact over the field of rational functions; every rank is also
/// confirmed at `samples` seeded random points off the singular locus.
pub fn derived_flag(d: &Distribution, max_depth: usize, seed: u64, samples: usize) -> Result<DerivedFlag, DistributionError> {
    let full = d.manifold_dim();
    let basis = independent_subset(d.generators());
    let mut levels: Vec<Vec<VectorField>> = vec![basis.iter().map(|&i| d.generators()[i].clone()).collect()];
    let mut ranks = vec![levels[0].len()];
    let mut stabilized = false;
    for _ in 0..max_depth.max(1) {
        let last = ranks[ranks.len() - 1];
        if last >= full {
            break;
        }
        let candidates = bracket_closure(levels.last().unwrap());
        let next: Vec<VectorField> = independent_subset(&candidates)
            .into_iter()
            .map(|i| candidates[i].clone())
            .collect();
        ranks.push(next.len());
        levels.push(next);
        if ranks[ranks.len() - 1] == last {
            stabilized = true;
            break;
        }
    }
    if ranks.last() == Some(&full) {
        stabilized = true;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut witness_points = Vec::new();
    let mut attempts = 0;
    while witness_points.len() < samples {
        attempts += 1;
        if attempts > 50 * samples.max(1) {
            return Err(DistributionError::SamplingFailed {
                attempts,
                reason: "every sample dropped rank".into(),
            });
        }
        let p = d.sample_point(&mut rng)?;
        let mut ok = true;
        for (level, &r) in levels.iter().zip(&ranks) {
            let pr = pointwise_rank(level, &p)?;
            if pr > r {
                return Err(DistributionError::RankMismatch {
                    generic: r,
                    pointwise: pr,
                    point: fmt_point(&p),
                });
            }
            ok &= pr == r;
        }
        if ok {
            witness_points.push(p);
        }
    }
    Ok(DerivedFlag {
        ranks,
        stabilized,
        witness_points,
        levels,
    })
}

pub(crate) fn fmt_point(p: &[Rational]) -> String {
    format!("({})", p.iter().map(fmt_rational).collect::<Vec<_>>().join(","))
}

/// Ranks of the flag evaluated at `point`, using every iterated bracket up
/// to `max_depth` (no generic pruning, so rank drops are seen). Stops at
/// full rank or when the rank repeats.
pub fn growth_vector(d: &Distribution, point: &[Rational], max_depth: usize) -> Result<Vec<usize>, DistributionError> {
    if let Some(leaf) = d.leaf() {
        let v = leaf.function.eval(point);
        if v != leaf.level {
            return Err(DistributionError::SamplingFailed {
                attempts: 0,
                reason: format!("point {} is not on the leaf", fmt_point(point)),
            });
        }
    }
    let full = d.manifold_dim();
    let mut level: Vec<VectorField> = d.generators().to_vec();
    let mut ranks = vec![pointwise_rank(&level, point)?];
    for _ in 0..max_depth {
        let last = *ranks.last().unwrap();
        if last >= full {
            break;
        }
        let mut next = bracket_closure(&level);
        next.retain(|f| !f.is_zero());
        dedup(&mut next);
        let r = pointwise_rank(&next, point)?;
        ranks.push(r);
        level = next;
        if r == last {
            break;
        }
    }
    Ok(ranks)
}

fn dedup(fields: &mut Vec<VectorField>) {
    let mut out: Vec<VectorField> = Vec::with_capacity(fields.len());
    let minus = Rational::from_integer((-1).into());
    for f in fields.drain(..) {
        let neg = f.scale(&minus);
        if !out.iter().any(|g| *g == f || *g == neg) {
            out.push(f);
        }
    }
    *fields = out;
}
