//! Self-contained verification suites.  Each suite recomputes a family
//! of facts two independent ways (closed form vs dynamic program vs
//! brute-force enumeration, relation checks on explicit walks, round
//! trips) and reports every failed comparison.  The suites back both
//! the `verify` subcommand and the acceptance tests.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::count::{count_layers, CountTable, DpOptions};
use crate::error::Result;
use crate::guard::SizeGuards;
use crate::hurwitz::{
    decode_from_loop, encode_to_loop, step_count, valid_pair_count, DecodeOutcome, HurwitzQuery,
    HurwitzVariant,
};
use crate::partition::CycleType;
use crate::perm::{Permutation, Transposition};
use crate::series::inequality_report;
use crate::sorting::{apply_r, orbit, spectrum_arrangements};
use crate::walk::{for_each_walk, is_transitive, Walk, WalkMode};

/// Outcome of one verification suite: how many comparisons ran and a
/// description of each one that failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub suite: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    fn new(suite: &str) -> Self {
        CheckReport {
            suite: suite.to_string(),
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{}: {} checks, {} failures",
            self.suite,
            self.checks,
            self.failures.len()
        );
        for f in &self.failures {
            let _ = write!(s, "\n  FAIL {f}");
        }
        s
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product()
}

fn binomial(n: usize, k: usize) -> BigUint {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Both genus-zero closed forms for degrees up to `d_max`: the count
/// from the dynamic program must match the closed form, and both must
/// match a direct enumeration.  The enumeration guard is raised to
/// `d_max` internally since the caller asked for exactly that range.
pub fn verify_closed_forms(d_max: usize, guards: &SizeGuards) -> Result<CheckReport> {
    let mut rep = CheckReport::new("closedforms");
    let brute_guards = SizeGuards {
        max_brute_degree: guards.max_brute_degree.max(d_max),
        max_brute_steps: guards.max_brute_steps.max(d_max.saturating_sub(1)),
        ..guards.clone()
    };
    for d in 1..=d_max {
        let monotone_formula = factorial(d) * binomial(2 * d - 2, d - 1) / BigUint::from(d * d);
        let classical_formula = if d < 3 {
            BigUint::from(1u32)
        } else {
            factorial(d) * BigUint::from(d).pow(d as u32 - 3)
        };
        for (variant, formula) in [
            (HurwitzVariant::Monotone, &monotone_formula),
            (HurwitzVariant::Classical, &classical_formula),
        ] {
            let query = HurwitzQuery {
                genus: 0,
                alpha: CycleType::all_ones(d),
                beta: CycleType::single_cycle(d),
                variant,
                colour_refined: false,
            };
            let dp = crate::hurwitz::double_hurwitz(&query, guards)?.total;
            rep.record(&dp == formula, || {
                format!("{variant:?} d = {d}: dp {dp} vs closed form {formula}")
            });

            let start = Permutation::identity(d);
            let target = CycleType::single_cycle(d);
            let mut brute = BigUint::zero();
            for_each_walk(&start, d - 1, variant.walk_mode(), &brute_guards, |steps, end| {
                if end.cycle_type() == target && is_transitive(&start, steps) {
                    brute += 1u32;
                }
            })?;
            rep.record(&brute == formula, || {
                format!("{variant:?} d = {d}: enumeration {brute} vs closed form {formula}")
            });
        }
    }
    Ok(rep)
}

/// The two-sided colour bound and the crude exponential bound, exactly,
/// for every genus up to `g_max` and degree up to `d_max`.
pub fn verify_inequalities(g_max: usize, d_max: usize, guards: &SizeGuards) -> Result<CheckReport> {
    let mut rep = CheckReport::new("inequalities");
    for genus in 0..=g_max {
        let report = inequality_report(genus, d_max, guards)?;
        for row in &report.rows {
            let d = row.degree;
            rep.record(row.lower_ok, || {
                format!(
                    "g = {genus}, d = {d}: lower {} > middle {}",
                    row.lower, row.middle
                )
            });
            rep.record(row.upper_ok, || {
                format!(
                    "g = {genus}, d = {d}: middle {} > upper {}",
                    row.middle, row.upper
                )
            });
            rep.record(row.bound_ok, || {
                format!(
                    "g = {genus}, d = {d}: middle {} > bound {}",
                    row.middle, row.bound
                )
            });
        }
    }
    Ok(rep)
}

fn expect_apply(w: &Walk, i: usize) -> Walk {
    apply_r(w, i).expect("relation index within range")
}

fn relation_checks(w: &Walk, rep: &mut CheckReport) {
    let r = w.len();
    let spectrum = w.spectrum();
    let end = w.end_point();
    let orbit_blocks = w.orbit_partition();
    for i in 1..r {
        let wi = expect_apply(w, i);
        rep.record(expect_apply(&wi, i) == *w, || {
            format!("R_{i}^2 differs from the identity on {w}")
        });
        let mut swapped = spectrum.clone();
        swapped.swap(i - 1, i);
        rep.record(wi.spectrum() == swapped, || {
            format!("R_{i} does not transpose spectrum positions on {w}")
        });
        rep.record(
            wi.start() == w.start()
                && wi.end_point() == end
                && wi.orbit_partition() == orbit_blocks,
            || format!("R_{i} fails to preserve endpoints or orbits on {w}"),
        );
    }
    for i in 1..r.saturating_sub(1) {
        let lhs = expect_apply(&expect_apply(&expect_apply(w, i), i + 1), i);
        let rhs = expect_apply(&expect_apply(&expect_apply(w, i + 1), i), i + 1);
        rep.record(lhs == rhs, || format!("braid relation fails at i = {i} on {w}"));
    }
    for i in 1..r {
        for j in i + 2..r {
            let lhs = expect_apply(&expect_apply(w, j), i);
            let rhs = expect_apply(&expect_apply(w, i), j);
            rep.record(lhs == rhs, || {
                format!("commutation fails at (i, j) = ({i}, {j}) on {w}")
            });
        }
    }
}

/// Involution, braid, and commutation relations, spectrum equivariance,
/// and endpoint/orbit preservation on every walk with the given bounds.
pub fn verify_coxeter_exhaustive(
    d_max: usize,
    r_max: usize,
    guards: &SizeGuards,
) -> Result<CheckReport> {
    let mut rep = CheckReport::new("coxeter-exhaustive");
    for d in 1..=d_max {
        for start in Permutation::all(d) {
            for r in 0..=r_max {
                for_each_walk(&start, r, WalkMode::Any, guards, |steps, _| {
                    let w = Walk::new(start.clone(), steps.to_vec()).expect("enumerated walk");
                    relation_checks(&w, &mut rep);
                })?;
            }
        }
    }
    Ok(rep)
}

/// The same relation checks on uniformly sampled walks.
pub fn verify_coxeter_random(
    samples: usize,
    d_max: usize,
    r_max: usize,
    seed: u64,
) -> Result<CheckReport> {
    let mut rep = CheckReport::new("coxeter-random");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let d = rng.gen_range(2..=d_max.max(2));
        let r = rng.gen_range(2..=r_max.max(2));
        let mut images: Vec<usize> = (1..=d).collect();
        images.shuffle(&mut rng);
        let start = Permutation::from_images(images).expect("shuffled images");
        let pool: Vec<Transposition> = Transposition::all(d).collect();
        let steps: Vec<Transposition> = (0..r)
            .map(|_| *pool.choose(&mut rng).expect("nonempty pool"))
            .collect();
        let w = Walk::new(start, steps).expect("sampled walk");
        relation_checks(&w, &mut rep);
    }
    Ok(rep)
}

/// Orbit structure under the sorting action: every orbit has size
/// `r!/Πmᵢ!`, contains exactly one monotone walk (its representative),
/// and distinct members carry distinct spectra.  Orbits are enumerated
/// once each through their monotone representatives, and the orbit
/// sizes are cross-checked against the total walk count.
pub fn verify_orbits(d_max: usize, r_max: usize, guards: &SizeGuards) -> Result<CheckReport> {
    let mut rep = CheckReport::new("orbits");
    for d in 1..=d_max {
        for start in Permutation::all(d) {
            for r in 0..=r_max {
                let mut total = 0u64;
                for_each_walk(&start, r, WalkMode::Any, guards, |_, _| total += 1)?;
                let mut covered = 0u64;
                for_each_walk(&start, r, WalkMode::Monotone, guards, |steps, _| {
                    let w = Walk::new(start.clone(), steps.to_vec()).expect("enumerated walk");
                    let orb = orbit(&w, guards).expect("orbit within guards");
                    covered += orb.size() as u64;
                    rep.record(orb.size() as u64 == spectrum_arrangements(&w), || {
                        format!("orbit of {w} has size {}", orb.size())
                    });
                    rep.record(orb.monotone_members().len() == 1, || {
                        format!(
                            "orbit of {w} has {} monotone members",
                            orb.monotone_members().len()
                        )
                    });
                    rep.record(orb.representative() == &w, || {
                        format!("orbit of {w} sorts to a different representative")
                    });
                    let spectra: std::collections::BTreeSet<Vec<usize>> =
                        orb.members().iter().map(|m| m.spectrum()).collect();
                    rep.record(spectra.len() == orb.size(), || {
                        format!("spectra collide within the orbit of {w}")
                    });
                })?;
                rep.record(covered == total, || {
                    format!(
                        "orbits through monotone representatives cover {covered} of {total} \
                         walks at d = {d}, r = {r}"
                    )
                });
            }
        }
    }
    Ok(rep)
}

/// Encode/decode round trips and the valid-pair count formula over all
/// monotone transitive walks and sorted loops with the given bounds.
pub fn verify_roundtrip(d_max: usize, g_max: usize, guards: &SizeGuards) -> Result<CheckReport> {
    let mut rep = CheckReport::new("roundtrip");
    for d in 1..=d_max {
        let types = CycleType::all_of_degree(d);
        for genus in 0..=g_max {
            let mut walk_total = BigUint::zero();
            for alpha in &types {
                for beta in &types {
                    let r = step_count(genus, alpha, beta)?;
                    for start in alpha.permutations() {
                        let mut walks = Vec::new();
                        for_each_walk(&start, r, WalkMode::Monotone, guards, |steps, end| {
                            if end.cycle_type() == *beta && is_transitive(&start, steps) {
                                walks.push(
                                    Walk::new(start.clone(), steps.to_vec())
                                        .expect("enumerated walk"),
                                );
                            }
                        })?;
                        for w in walks {
                            walk_total += 1u32;
                            let encoding = encode_to_loop(&w, alpha, beta, genus)?;
                            let decoded = decode_from_loop(&encoding);
                            rep.record(
                                decoded
                                    == DecodeOutcome::Decoded {
                                        walk: w.clone(),
                                        alpha: alpha.clone(),
                                        beta: beta.clone(),
                                    },
                                || format!("round trip fails on {w} (g = {genus})"),
                            );
                        }
                    }
                }
            }

            let loop_len = 2 * genus + 2 * d - 2;
            let id = Permutation::identity(d);
            let mut loops = Vec::new();
            for_each_walk(&id, loop_len, WalkMode::Monotone, guards, |steps, end| {
                if end.is_identity() && is_transitive(&id, steps) {
                    loops.push(Walk::new(id.clone(), steps.to_vec()).expect("enumerated walk"));
                }
            })?;
            let mut pair_total = BigUint::zero();
            for lp in &loops {
                let colours: Vec<usize> = lp.colour_multiplicities().keys().copied().collect();
                let mut trial = BigUint::zero();
                for rho_bits in 0u32..(1 << colours.len()) {
                    for sigma_bits in 0u32..(1 << colours.len()) {
                        let pick = |bits: u32| {
                            colours
                                .iter()
                                .enumerate()
                                .filter(|(i, _)| bits >> i & 1 == 1)
                                .map(|(_, &c)| c)
                                .collect()
                        };
                        let encoding = crate::hurwitz::LoopEncoding::new(
                            lp.clone(),
                            pick(rho_bits),
                            pick(sigma_bits),
                        )?;
                        if matches!(decode_from_loop(&encoding), DecodeOutcome::Decoded { .. }) {
                            trial += 1u32;
                        }
                    }
                }
                let formula = valid_pair_count(lp);
                rep.record(trial == formula, || {
                    format!("valid pairs on {lp}: trial {trial} vs formula {formula}")
                });
                pair_total += formula;
            }
            rep.record(pair_total == walk_total, || {
                format!(
                    "d = {d}, g = {genus}: {pair_total} valid pairs vs {walk_total} walks"
                )
            });
        }
    }
    Ok(rep)
}

#[derive(Default)]
struct BruteCell {
    total: u64,
    by_colours: BTreeMap<usize, u64>,
}

/// Dynamic-programming counts against full enumeration, for every start
/// permutation, every step count up to `r_max`, every mode, and both
/// settings of the transitivity and colour-refinement flags.
pub fn verify_oracle(d_max: usize, r_max: usize, guards: &SizeGuards) -> Result<CheckReport> {
    let mut rep = CheckReport::new("oracle");
    let modes = [WalkMode::Any, WalkMode::Monotone, WalkMode::Strict];
    for d in 1..=d_max {
        let types = CycleType::all_of_degree(d);
        for start in Permutation::all(d) {
            let mut brute: BTreeMap<(usize, usize, bool, CycleType), BruteCell> = BTreeMap::new();
            for r in 0..=r_max {
                for_each_walk(&start, r, WalkMode::Any, guards, |steps, end| {
                    let w = Walk::new(start.clone(), steps.to_vec()).expect("enumerated walk");
                    let ty = end.cycle_type();
                    let colours = w.distinct_colour_count();
                    let transitive = w.is_transitive();
                    let mode_indices: &[usize] = if w.is_strictly_monotone() {
                        &[0, 1, 2]
                    } else if w.is_monotone() {
                        &[0, 1]
                    } else {
                        &[0]
                    };
                    for &m in mode_indices {
                        for trans in [false, true] {
                            if trans && !transitive {
                                continue;
                            }
                            let cell = brute
                                .entry((r, m, trans, ty.clone()))
                                .or_default();
                            cell.total += 1;
                            *cell.by_colours.entry(colours).or_insert(0) += 1;
                        }
                    }
                })?;
            }
            for (m, mode) in modes.into_iter().enumerate() {
                for trans in [false, true] {
                    for refine in [false, true] {
                        let opts = DpOptions {
                            mode,
                            transitive_only: trans,
                            refine_colours: refine,
                        };
                        let layers =
                            count_layers(d, std::slice::from_ref(&start), r_max, opts, guards)?;
                        for (r, layer) in layers.iter().enumerate() {
                            for ty in &types {
                                let empty = CountTable::zero(refine);
                                let got = layer.get(ty).unwrap_or(&empty);
                                let want = brute.get(&(r, m, trans, ty.clone()));
                                let want_total =
                                    want.map_or_else(BigUint::zero, |c| BigUint::from(c.total));
                                rep.record(got.total == want_total, || {
                                    format!(
                                        "{start} r = {r} {mode:?} transitive = {trans} \
                                         refine = {refine} type {ty}: dp {} vs brute {}",
                                        got.total, want_total
                                    )
                                });
                                if refine {
                                    let want_map: BTreeMap<usize, BigUint> = want
                                        .map(|c| {
                                            c.by_colours
                                                .iter()
                                                .map(|(&k, &v)| (k, BigUint::from(v)))
                                                .collect()
                                        })
                                        .unwrap_or_default();
                                    let got_map =
                                        got.by_colour_count.clone().unwrap_or_default();
                                    rep.record(got_map == want_map, || {
                                        format!(
                                            "{start} r = {r} {mode:?} transitive = {trans} \
                                             type {ty}: refined counts differ"
                                        )
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}
