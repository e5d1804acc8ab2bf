use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;

use crate::count::{count_layers, CountTable, DpOptions};
use crate::error::{Error, Result};
use crate::guard::SizeGuards;
use crate::partition::CycleType;
use crate::perm::Permutation;
use crate::sorting::{apply_r, apply_sort, strictly_monotone_factorization};
use crate::walk::{Walk, WalkMode};

/// Which walks a Hurwitz count ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HurwitzVariant {
    /// Weakly increasing spectrum.
    Monotone,
    /// No constraint on the spectrum.
    Classical,
}

impl HurwitzVariant {
    pub fn walk_mode(&self) -> WalkMode {
        match self {
            HurwitzVariant::Monotone => WalkMode::Monotone,
            HurwitzVariant::Classical => WalkMode::Any,
        }
    }
}

/// A double Hurwitz number query: genus, start and end cycle types,
/// variant, and optional refinement by distinct colour count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HurwitzQuery {
    pub genus: usize,
    pub alpha: CycleType,
    pub beta: CycleType,
    pub variant: HurwitzVariant,
    pub colour_refined: bool,
}

/// The step count `r = 2g − 2 + ℓ(α) + ℓ(β)`.
pub fn step_count(genus: usize, alpha: &CycleType, beta: &CycleType) -> Result<usize> {
    if alpha.degree() != beta.degree() {
        return Err(Error::DegreeMismatch {
            left: alpha.degree(),
            right: beta.degree(),
        });
    }
    let r = 2 * genus as i64 - 2 + alpha.len() as i64 + beta.len() as i64;
    if r < 0 {
        return Err(Error::NegativeStepCount { value: r });
    }
    Ok(r as usize)
}

/// The double Hurwitz number for the query: the exact number of
/// `r_g(α,β)`-step transitive walks whose start has type α and end has
/// type β, summed over all start permutations of type α, monotone when
/// the variant asks for it.
pub fn double_hurwitz(q: &HurwitzQuery, guards: &SizeGuards) -> Result<CountTable> {
    guards.check_genus(q.genus)?;
    let r = step_count(q.genus, &q.alpha, &q.beta)?;
    let d = q.alpha.degree();
    let starts: Vec<Permutation> = q.alpha.permutations().collect();
    let opts = DpOptions {
        mode: q.variant.walk_mode(),
        transitive_only: true,
        refine_colours: q.colour_refined,
    };
    let layers = count_layers(d, &starts, r, opts, guards)?;
    Ok(layers[r]
        .get(&q.beta)
        .cloned()
        .unwrap_or_else(|| CountTable::zero(q.colour_refined)))
}

/// The full table over all pairs `(α, β ⊢ d)` at the given genus.  One
/// DP run per α serves every β.
pub fn genus_degree_table(
    genus: usize,
    degree: usize,
    variant: HurwitzVariant,
    colour_refined: bool,
    guards: &SizeGuards,
) -> Result<BTreeMap<(CycleType, CycleType), CountTable>> {
    guards.check_genus(genus)?;
    let types = CycleType::all_of_degree(degree);
    let opts = DpOptions {
        mode: variant.walk_mode(),
        transitive_only: true,
        refine_colours: colour_refined,
    };
    let mut table = BTreeMap::new();
    for alpha in &types {
        let r_max = step_count(genus, alpha, &CycleType::all_ones(degree))?;
        let starts: Vec<Permutation> = alpha.permutations().collect();
        let layers = count_layers(degree, &starts, r_max, opts, guards)?;
        for beta in &types {
            let r = step_count(genus, alpha, beta)?;
            let cell = layers[r]
                .get(beta)
                .cloned()
                .unwrap_or_else(|| CountTable::zero(colour_refined));
            table.insert((alpha.clone(), beta.clone()), cell);
        }
    }
    Ok(table)
}

/// `Σ_{α,β ⊢ d}` of the double Hurwitz numbers at the given genus.
pub fn hurwitz_sum(
    genus: usize,
    degree: usize,
    variant: HurwitzVariant,
    guards: &SizeGuards,
) -> Result<BigUint> {
    let table = genus_degree_table(genus, degree, variant, false, guards)?;
    Ok(table.values().map(|c| c.total.clone()).sum())
}

/// Counts of monotone transitive identity-based loops of length
/// `2g − 2 + 2d`, split by the number `c` of distinct spectrum
/// colours.  The empty loop (`d = 1`, `g = 0`) is recorded at `c = 0`.
pub fn simple_colour_refined(
    genus: usize,
    degree: usize,
    guards: &SizeGuards,
) -> Result<BTreeMap<usize, BigUint>> {
    guards.check_genus(genus)?;
    let ones = CycleType::all_ones(degree);
    let r = step_count(genus, &ones, &ones)?;
    let opts = DpOptions {
        mode: WalkMode::Monotone,
        transitive_only: true,
        refine_colours: true,
    };
    let layers = count_layers(degree, &[Permutation::identity(degree)], r, opts, guards)?;
    Ok(layers[r]
        .get(&ones)
        .and_then(|t| t.by_colour_count.clone())
        .unwrap_or_default())
}

/// A sorted transitive identity-based loop together with the colour
/// sets of the two strict factorizations absorbed into it.  Encodings
/// produced by `encode_to_loop` always have every shared colour at
/// multiplicity ≥ 2 in the spectrum; hand-built pairs need not, and
/// `decode_from_loop` reports exactly those as invalid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopEncoding {
    loop_walk: Walk,
    c_rho: BTreeSet<usize>,
    c_sigma: BTreeSet<usize>,
}

impl LoopEncoding {
    pub fn new(
        loop_walk: Walk,
        c_rho: BTreeSet<usize>,
        c_sigma: BTreeSet<usize>,
    ) -> Result<Self> {
        if !loop_walk.start().is_identity() || !loop_walk.end_point().is_identity() {
            return Err(Error::InvalidWalk {
                reason: "loop must start and end at the identity".to_string(),
            });
        }
        if !loop_walk.is_monotone() {
            return Err(Error::InvalidWalk {
                reason: "loop spectrum must be sorted".to_string(),
            });
        }
        if !loop_walk.is_transitive() {
            return Err(Error::InvalidWalk {
                reason: "loop must be transitive".to_string(),
            });
        }
        let colours: BTreeSet<usize> = loop_walk.spectrum().into_iter().collect();
        for &c in c_rho.union(&c_sigma) {
            if !colours.contains(&c) {
                return Err(Error::InvalidWalk {
                    reason: format!("colour {c} not present in the loop spectrum"),
                });
            }
        }
        Ok(LoopEncoding {
            loop_walk,
            c_rho,
            c_sigma,
        })
    }

    pub fn loop_walk(&self) -> &Walk {
        &self.loop_walk
    }

    pub fn c_rho(&self) -> &BTreeSet<usize> {
        &self.c_rho
    }

    pub fn c_sigma(&self) -> &BTreeSet<usize> {
        &self.c_sigma
    }
}

/// Result of decoding: either the reconstructed walk with its types,
/// or the smallest colour witnessing an invalid subset pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeOutcome {
    Decoded {
        walk: Walk,
        alpha: CycleType,
        beta: CycleType,
    },
    InvalidPair {
        colour: usize,
    },
}

/// Turns a monotone transitive walk from type α to type β into a
/// sorted identity-based loop: prepend the strict factorization of the
/// start, append the reversed strict factorization of the end, and
/// sort.  The colour sets of the two factorizations are kept so the
/// construction can be undone.
pub fn encode_to_loop(
    w: &Walk,
    alpha: &CycleType,
    beta: &CycleType,
    genus: usize,
) -> Result<LoopEncoding> {
    let d = w.degree();
    if alpha.degree() != d || beta.degree() != d {
        return Err(Error::DegreeMismatch {
            left: d,
            right: if alpha.degree() != d {
                alpha.degree()
            } else {
                beta.degree()
            },
        });
    }
    if !w.is_monotone() {
        return Err(Error::InvalidWalk {
            reason: "walk is not monotone".to_string(),
        });
    }
    if !w.is_transitive() {
        return Err(Error::InvalidWalk {
            reason: "walk is not transitive".to_string(),
        });
    }
    let sigma = w.end_point();
    if &w.start().cycle_type() != alpha || &sigma.cycle_type() != beta {
        return Err(Error::InvalidWalk {
            reason: "start or end cycle type does not match the query".to_string(),
        });
    }
    if w.len() != step_count(genus, alpha, beta)? {
        return Err(Error::InvalidWalk {
            reason: format!(
                "walk length {} does not match the step count for genus {genus}",
                w.len()
            ),
        });
    }

    let front = strictly_monotone_factorization(w.start());
    let back = strictly_monotone_factorization(&sigma);
    let c_rho: BTreeSet<usize> = front.spectrum().into_iter().collect();
    let c_sigma: BTreeSet<usize> = back.spectrum().into_iter().collect();

    let mut steps = front.steps().to_vec();
    steps.extend_from_slice(w.steps());
    steps.extend(back.steps().iter().rev());
    let raw = Walk::new(Permutation::identity(d), steps)?;
    debug_assert_eq!(raw.len(), 2 * genus + 2 * d - 2);
    debug_assert!(raw.end_point().is_identity());
    let (sorted, _) = apply_sort(&raw);
    LoopEncoding::new(sorted, c_rho, c_sigma)
}

/// Rearranges a sorted loop so its spectrum matches `target`, using
/// only adjacent operators.  `target` must be an arrangement of the
/// loop's colour multiset.
fn rearrange_to_spectrum(loop_walk: &Walk, target: &[usize]) -> Walk {
    let mut cur = loop_walk.clone();
    for (idx, &want) in target.iter().enumerate() {
        if cur.steps()[idx].colour() == want {
            continue;
        }
        let j = (idx + 1..cur.len())
            .find(|&j| cur.steps()[j].colour() == want)
            .expect("target is an arrangement of the spectrum");
        for k in (idx + 1..=j).rev() {
            cur = apply_r(&cur, k).expect("swap index in range");
        }
    }
    cur
}

/// Undoes `encode_to_loop`.  Succeeds for every subset pair except
/// those reusing a multiplicity-one colour on both sides.
pub fn decode_from_loop(e: &LoopEncoding) -> DecodeOutcome {
    let mult = e.loop_walk.colour_multiplicities();
    for &c in e.c_rho.intersection(&e.c_sigma) {
        if mult[&c] < 2 {
            return DecodeOutcome::InvalidPair { colour: c };
        }
    }

    let mut remaining = mult;
    for c in &e.c_rho {
        *remaining.get_mut(c).unwrap() -= 1;
    }
    for c in &e.c_sigma {
        *remaining.get_mut(c).unwrap() -= 1;
    }
    let mut target: Vec<usize> = e.c_rho.iter().copied().collect();
    for (&c, &m) in &remaining {
        target.extend(std::iter::repeat_n(c, m));
    }
    target.extend(e.c_sigma.iter().rev());

    let arranged = rearrange_to_spectrum(&e.loop_walk, &target);
    let d = arranged.degree();
    let k1 = e.c_rho.len();
    let k3 = e.c_sigma.len();
    let split = arranged.len() - k3;

    let rho = Walk::new(Permutation::identity(d), arranged.steps()[..k1].to_vec())
        .expect("prefix of a valid walk")
        .end_point();
    let sigma = Walk::new(Permutation::identity(d), arranged.steps()[split..].to_vec())
        .expect("suffix of a valid walk")
        .end_point()
        .inverse();
    let walk = Walk::new(rho.clone(), arranged.steps()[k1..split].to_vec())
        .expect("middle of a valid walk");
    debug_assert_eq!(walk.end_point(), sigma);
    debug_assert!(walk.is_monotone());
    DecodeOutcome::Decoded {
        alpha: rho.cycle_type(),
        beta: sigma.cycle_type(),
        walk,
    }
}

/// Number of subset pairs `(C^ρ, C^σ)` the decoding succeeds for:
/// the product over distinct colours of `3 + [multiplicity ≥ 2]`.
///
/// Panics if `loop_walk` is not a sorted transitive identity-based
/// loop.
pub fn valid_pair_count(loop_walk: &Walk) -> BigUint {
    assert!(
        loop_walk.start().is_identity()
            && loop_walk.is_monotone()
            && loop_walk.end_point().is_identity()
            && loop_walk.is_transitive(),
        "valid_pair_count requires a sorted transitive identity-based loop"
    );
    loop_walk
        .colour_multiplicities()
        .values()
        .map(|&m| BigUint::from(if m >= 2 { 4u32 } else { 3 }))
        .product()
}
