use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::guard::SizeGuards;
use crate::hurwitz::{double_hurwitz, hurwitz_sum, simple_colour_refined, HurwitzQuery,
                     HurwitzVariant};
use crate::partition::CycleType;

/// A sequence of exact rational coefficients, indexed from
/// `first_index` (degree 1 for the walk series, order 0 for the
/// hypergeometric reference).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientSeries {
    pub label: String,
    pub first_index: usize,
    pub terms: Vec<BigRational>,
}

impl CoefficientSeries {
    pub fn term(&self, index: usize) -> Option<&BigRational> {
        index
            .checked_sub(self.first_index)
            .and_then(|i| self.terms.get(i))
    }

    pub fn indexed_terms(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.terms
            .iter()
            .enumerate()
            .map(|(i, t)| (self.first_index + i, t))
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product()
}

/// Coefficients of the fixed-genus series over all type pairs:
/// term `d` is `(Σ_{α,β ⊢ d} H⃗_g(α,β)) / d!`.
pub fn fg_coefficients(
    genus: usize,
    d_max: usize,
    guards: &SizeGuards,
) -> Result<CoefficientSeries> {
    let mut terms = Vec::with_capacity(d_max);
    for d in 1..=d_max {
        let sum = hurwitz_sum(genus, d, HurwitzVariant::Monotone, guards)?;
        terms.push(BigRational::new(
            BigInt::from(sum),
            BigInt::from(factorial(d)),
        ));
    }
    Ok(CoefficientSeries {
        label: format!("F_{genus}"),
        first_index: 1,
        terms,
    })
}

/// Coefficients of the simple fixed-genus series: term `d` is
/// `H⃗_g(1^d, 1^d) / d!`.
pub fn sg_coefficients(
    genus: usize,
    d_max: usize,
    guards: &SizeGuards,
) -> Result<CoefficientSeries> {
    let mut terms = Vec::with_capacity(d_max);
    for d in 1..=d_max {
        let ones = CycleType::all_ones(d);
        let h = double_hurwitz(
            &HurwitzQuery {
                genus,
                alpha: ones.clone(),
                beta: ones,
                variant: HurwitzVariant::Monotone,
                colour_refined: false,
            },
            guards,
        )?;
        terms.push(BigRational::new(
            BigInt::from(h.total),
            BigInt::from(factorial(d)),
        ));
    }
    Ok(CoefficientSeries {
        label: format!("S_{genus}"),
        first_index: 1,
        terms,
    })
}

/// Taylor coefficients of the Gauss hypergeometric reference series
/// in the variable `z`: term `k` is
/// `(2/3)_k (4/3)_k / ((3/2)_k k!) · (27/2)^k`, by the Pochhammer
/// recurrence.  Its radius of convergence is `2/27`.
pub fn hypergeometric_coefficients(k_max: usize) -> CoefficientSeries {
    let mut terms = vec![BigRational::one()];
    let mut a = BigRational::one();
    for k in 0..k_max {
        a *= hypergeometric_term_ratio(k);
        terms.push(a.clone());
    }
    CoefficientSeries {
        label: "2F1(2/3,4/3;3/2;27z/2)".to_string(),
        first_index: 0,
        terms,
    }
}

/// The exact ratio `a_{k+1}/a_k` of consecutive hypergeometric terms:
/// `(2/3+k)(4/3+k) / ((3/2+k)(1+k)) · 27/2`, approaching `27/2`.
pub fn hypergeometric_term_ratio(k: usize) -> BigRational {
    let q = |num: usize, den: usize| BigRational::new(BigInt::from(num), BigInt::from(den));
    q(3 * k + 2, 3) * q(3 * k + 4, 3) / (q(2 * k + 3, 2) * q(k + 1, 1)) * q(27, 2)
}

/// Finite-order radius estimates read off a coefficient series.  The
/// window extrapolation is a heuristic: a least-squares line through
/// the last few ratio points against `1/d`, read at `1/d = 0`.  No
/// convergence claim is made.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusDiagnostics {
    /// Pairs `(d, c_d / c_{d+1})`, defined where both terms are nonzero.
    pub ratios: Vec<(usize, BigRational)>,
    /// Pairs `(d, c_d^{-1/d})` for nonzero terms, `d ≥ 1`.
    pub root_estimates: Vec<(usize, f64)>,
    pub window_extrapolation: f64,
}

pub fn radius_diagnostics(series: &CoefficientSeries) -> Result<RadiusDiagnostics> {
    let terms = &series.terms;
    let has_three_consecutive = terms
        .windows(3)
        .any(|w| w.iter().all(|t| !t.is_zero()));
    if !has_three_consecutive {
        return Err(Error::InsufficientData {
            reason: format!(
                "series {} needs at least 3 consecutive nonzero terms",
                series.label
            ),
        });
    }

    let mut ratios = Vec::new();
    for (i, pair) in terms.windows(2).enumerate() {
        if !pair[0].is_zero() && !pair[1].is_zero() {
            ratios.push((series.first_index + i, &pair[0] / &pair[1]));
        }
    }

    let root_estimates = series
        .indexed_terms()
        .filter(|(d, t)| *d >= 1 && !t.is_zero())
        .map(|(d, t)| {
            let v = t.to_f64().unwrap_or(f64::NAN).abs();
            (d, v.powf(-1.0 / d as f64))
        })
        .collect();

    let window = &ratios[ratios.len().saturating_sub(3)..];
    let pts: Vec<(f64, f64)> = window
        .iter()
        .map(|(d, r)| (1.0 / *d as f64, r.to_f64().unwrap_or(f64::NAN)))
        .collect();
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    let window_extrapolation = if denom.abs() < f64::EPSILON {
        sy / n
    } else {
        let slope = (n * sxy - sx * sy) / denom;
        (sy - slope * sx) / n
    };

    Ok(RadiusDiagnostics {
        ratios,
        root_estimates,
        window_extrapolation,
    })
}

/// One degree of the inequality report: the three exact quantities of
/// the two-sided bound and the `4^d` bound, with pass flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityRow {
    pub degree: usize,
    /// `Σ_c 3^c H⃗_g(1^d,1^d;c)`
    pub lower: BigUint,
    /// `Σ_{α,β ⊢ d} H⃗_g(α,β)`
    pub middle: BigUint,
    /// `Σ_c 4^c H⃗_g(1^d,1^d;c)`
    pub upper: BigUint,
    /// `4^d H⃗_g(1^d,1^d)`
    pub bound: BigUint,
    pub lower_ok: bool,
    pub upper_ok: bool,
    pub bound_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityReport {
    pub genus: usize,
    pub rows: Vec<InequalityRow>,
}

impl InequalityReport {
    pub fn all_pass(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.lower_ok && r.upper_ok && r.bound_ok)
    }
}

/// The exact two-sided bound and the `4^d` bound for every degree up
/// to `d_max` at the given genus.  All comparisons are exact integer
/// comparisons.
pub fn inequality_report(
    genus: usize,
    d_max: usize,
    guards: &SizeGuards,
) -> Result<InequalityReport> {
    let mut rows = Vec::with_capacity(d_max);
    for d in 1..=d_max {
        let refined = simple_colour_refined(genus, d, guards)?;
        let weighted = |base: u32| -> BigUint {
            refined
                .iter()
                .map(|(&c, n)| BigUint::from(base).pow(c as u32) * n)
                .sum()
        };
        let lower = weighted(3);
        let upper = weighted(4);
        let simple: BigUint = refined.values().sum();
        let bound = BigUint::from(4u32).pow(d as u32) * &simple;
        let middle = hurwitz_sum(genus, d, HurwitzVariant::Monotone, guards)?;
        rows.push(InequalityRow {
            degree: d,
            lower_ok: lower <= middle,
            upper_ok: middle <= upper,
            bound_ok: middle <= bound,
            lower,
            middle,
            upper,
            bound,
        });
    }
    Ok(InequalityReport { genus, rows })
}
