use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::count::{count_layers_to_end, representative, DpOptions};
use crate::error::{Error, Result};
use crate::guard::SizeGuards;
use crate::partition::CycleType;
use crate::perm::Permutation;
use crate::walk::WalkMode;

/// The coefficient sequence of the large-`N` expansion of a unitary
/// Weingarten function: `coefficients[r]` counts monotone walks of
/// length `r` from the identity to a fixed permutation of the target
/// type, without any transitivity constraint.  The coefficient at `r`
/// vanishes unless `r` matches the parity and is at least the minimal
/// factorization length of the target type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeingartenExpansion {
    pub degree: usize,
    pub target_type: CycleType,
    pub coefficients: Vec<BigUint>,
}

pub fn expansion(
    degree: usize,
    target_type: &CycleType,
    r_max: usize,
    guards: &SizeGuards,
) -> Result<WeingartenExpansion> {
    if target_type.degree() != degree {
        return Err(Error::DegreeMismatch {
            left: degree,
            right: target_type.degree(),
        });
    }
    let opts = DpOptions {
        mode: WalkMode::Monotone,
        transitive_only: false,
        refine_colours: false,
    };
    let layers = count_layers_to_end(
        &Permutation::identity(degree),
        &representative(target_type),
        r_max,
        opts,
        guards,
    )?;
    Ok(WeingartenExpansion {
        degree,
        target_type: target_type.clone(),
        coefficients: layers.into_iter().map(|t| t.total).collect(),
    })
}

/// A finite evaluation of the alternating expansion
/// `Wg(σ; N) = (1/N^d) Σ_r (−1)^r w⃗^r / N^r` at a concrete `N`,
/// truncated after the `N^{-r_max}` term.  The partial sum is exact;
/// the tail estimate is the geometric bound read off the last two
/// nonzero terms, when their ratio is below one.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub partial_sum: BigRational,
    pub terms_used: usize,
    pub tail_estimate: Option<f64>,
}

pub fn evaluate(expansion: &WeingartenExpansion, n: u64, r_max: usize) -> Result<Evaluation> {
    if (n as usize) < expansion.degree {
        return Err(Error::EvaluationBelowDegree {
            n,
            degree: expansion.degree,
        });
    }
    if r_max >= expansion.coefficients.len() {
        return Err(Error::InsufficientData {
            reason: format!(
                "expansion holds orders 0..={}, order {} requested",
                expansion.coefficients.len().saturating_sub(1),
                r_max
            ),
        });
    }
    let n_big = BigInt::from(n);
    let mut power = n_big.pow(expansion.degree as u32);
    let mut sum = BigRational::zero();
    let mut nonzero: Vec<BigRational> = Vec::new();
    for (r, w) in expansion.coefficients[..=r_max].iter().enumerate() {
        if !w.is_zero() {
            let term = BigRational::new(BigInt::from(w.clone()), power.clone());
            if r % 2 == 1 {
                sum -= &term;
            } else {
                sum += &term;
            }
            nonzero.push(term);
        }
        power *= &n_big;
    }
    let tail_estimate = match nonzero.as_slice() {
        [.., prev, last] => {
            let ratio = (last / prev).to_f64().unwrap_or(f64::NAN);
            (ratio > 0.0 && ratio < 1.0)
                .then(|| last.to_f64().unwrap_or(f64::NAN) * ratio / (1.0 - ratio))
        }
        _ => None,
    };
    Ok(Evaluation {
        partial_sum: sum,
        terms_used: r_max + 1,
        tail_estimate,
    })
}
