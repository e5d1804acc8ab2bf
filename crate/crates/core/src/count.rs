use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::guard::{SizeGuards, DP_DEGREE_CEILING};
use crate::partition::{CycleType, OrbitPartition};
use crate::perm::{Permutation, Transposition};
use crate::walk::WalkMode;

const MAXD: usize = DP_DEGREE_CEILING;

/// Exact walk counts: the total and, when colour refinement was
/// requested, the split by number of distinct spectrum colours.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub total: BigUint,
    pub by_colour_count: Option<BTreeMap<usize, BigUint>>,
}

impl CountTable {
    pub fn zero(refined: bool) -> Self {
        CountTable {
            total: BigUint::zero(),
            by_colour_count: refined.then(BTreeMap::new),
        }
    }

    fn add(&mut self, colours: usize, count: &BigUint) {
        self.total += count;
        if let Some(by) = &mut self.by_colour_count {
            *by.entry(colours).or_insert_with(BigUint::zero) += count;
        }
    }
}

/// Flags shared by the counting queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpOptions {
    pub mode: WalkMode,
    pub transitive_only: bool,
    pub refine_colours: bool,
}

/// One cell of the layered DP.  `pos` is the current permutation in
/// one-line form, `orbit` the canonical restricted-growth string of
/// the merged blocks (all zeros when transitivity is not tracked),
/// `last` the last colour when the mode needs it, and `colours` the
/// bitmask of used colours (bit t-2) when refinement is on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct State {
    pos: [u8; MAXD],
    orbit: [u8; MAXD],
    last: u8,
    colours: u16,
}

fn pack_pos(p: &Permutation) -> [u8; MAXD] {
    let mut pos = [0u8; MAXD];
    for (i, &x) in p.images().iter().enumerate() {
        pos[i] = x as u8;
    }
    pos
}

fn pos_right_mul(mut pos: [u8; MAXD], d: usize, s: u8, t: u8) -> [u8; MAXD] {
    for x in pos.iter_mut().take(d) {
        if *x == s {
            *x = t;
        } else if *x == t {
            *x = s;
        }
    }
    pos
}

fn cycle_type_of_pos(pos: &[u8; MAXD], d: usize) -> CycleType {
    let mut seen = [false; MAXD];
    let mut parts = Vec::new();
    for start in 0..d {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            len += 1;
            x = pos[x] as usize - 1;
        }
        parts.push(len);
    }
    CycleType::from_parts(d, parts).expect("cycle lengths partition the degree")
}

fn canonical_rgs(mut o: [u8; MAXD], d: usize) -> [u8; MAXD] {
    let mut map = [u8::MAX; MAXD];
    let mut next = 0u8;
    for x in o.iter_mut().take(d) {
        let l = *x as usize;
        if map[l] == u8::MAX {
            map[l] = next;
            next += 1;
        }
        *x = map[l];
    }
    o
}

fn orbit_merge(orbit: [u8; MAXD], d: usize, s: usize, t: usize) -> [u8; MAXD] {
    let (la, lb) = (orbit[s], orbit[t]);
    if la == lb {
        return orbit;
    }
    let mut merged = orbit;
    for x in merged.iter_mut().take(d) {
        if *x == lb {
            *x = la;
        }
    }
    canonical_rgs(merged, d)
}

fn block_count(orbit: &[u8; MAXD], d: usize) -> usize {
    orbit[..d].iter().copied().max().map_or(0, |m| m as usize + 1)
}

fn pack_orbit(op: &OrbitPartition) -> [u8; MAXD] {
    let mut orbit = [0u8; MAXD];
    for (i, l) in op.restricted_growth_string().into_iter().enumerate() {
        orbit[i] = l;
    }
    orbit
}

/// Highest colour constraint carried by a state under the options.
fn effective_last(state: &State, opts: DpOptions) -> usize {
    match opts.mode {
        WalkMode::Any => 0,
        _ if opts.refine_colours => {
            // Monotone spectra make the last colour the largest used.
            if state.colours == 0 {
                0
            } else {
                (15 - state.colours.leading_zeros() as usize) + 2
            }
        }
        _ => state.last as usize,
    }
}

/// Runs the layered DP from the given start distribution and hands
/// each layer's state map to `visit` (layer index first).
fn run_dp(
    degree: usize,
    starts: &[Permutation],
    r_max: usize,
    opts: DpOptions,
    guards: &SizeGuards,
    mut visit: impl FnMut(usize, &HashMap<State, BigUint>),
) -> Result<()> {
    guards.check_dp_degree(degree)?;
    let track_last = opts.mode != WalkMode::Any && !opts.refine_colours;
    let mut layer: HashMap<State, BigUint> = HashMap::new();
    for start in starts {
        if start.degree() != degree {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: start.degree(),
            });
        }
        let orbit = if opts.transitive_only {
            pack_orbit(&OrbitPartition::from_permutation(start))
        } else {
            [0u8; MAXD]
        };
        if opts.transitive_only && block_count(&orbit, degree) > r_max + 1 {
            // Not enough steps left to ever merge down to one block.
            continue;
        }
        let state = State {
            pos: pack_pos(start),
            orbit,
            last: 0,
            colours: 0,
        };
        *layer.entry(state).or_insert_with(BigUint::zero) += 1u32;
    }

    let trans: Vec<(usize, usize, u16)> = Transposition::all(degree)
        .map(|t| (t.s() - 1, t.t() - 1, 1u16 << (t.colour() - 2)))
        .collect();

    visit(0, &layer);
    for step in 1..=r_max {
        let mut next: HashMap<State, BigUint> = HashMap::with_capacity(layer.len());
        for (state, count) in &layer {
            let last = effective_last(state, opts);
            for &(s, t, bit) in &trans {
                let colour = t + 1;
                if !opts.mode.allows(last, colour) {
                    continue;
                }
                let orbit = if opts.transitive_only {
                    let merged = orbit_merge(state.orbit, degree, s, t);
                    if block_count(&merged, degree) > r_max - step + 1 {
                        continue;
                    }
                    merged
                } else {
                    state.orbit
                };
                let ns = State {
                    pos: pos_right_mul(state.pos, degree, s as u8 + 1, t as u8 + 1),
                    orbit,
                    last: if track_last { colour as u8 } else { 0 },
                    colours: if opts.refine_colours {
                        state.colours | bit
                    } else {
                        0
                    },
                };
                *next.entry(ns).or_insert_with(BigUint::zero) += count;
            }
        }
        layer = next;
        visit(step, &layer);
    }
    Ok(())
}

fn table_from_layer(
    layer: &HashMap<State, BigUint>,
    degree: usize,
    opts: DpOptions,
) -> BTreeMap<CycleType, CountTable> {
    let mut out: BTreeMap<CycleType, CountTable> = BTreeMap::new();
    for (state, count) in layer {
        if opts.transitive_only && block_count(&state.orbit, degree) != 1 {
            continue;
        }
        let ty = cycle_type_of_pos(&state.pos, degree);
        out.entry(ty)
            .or_insert_with(|| CountTable::zero(opts.refine_colours))
            .add(state.colours.count_ones() as usize, count);
    }
    out
}

/// Walk counts from the given start distribution, one table per layer
/// `r = 0..=r_max`, grouped by endpoint cycle type.  With
/// `transitive_only`, a layer's table counts the walks transitive by
/// that layer.  Missing cycle types count zero.
pub fn count_layers(
    degree: usize,
    starts: &[Permutation],
    r_max: usize,
    opts: DpOptions,
    guards: &SizeGuards,
) -> Result<Vec<BTreeMap<CycleType, CountTable>>> {
    let mut layers = Vec::with_capacity(r_max + 1);
    run_dp(degree, starts, r_max, opts, guards, |_, layer| {
        layers.push(table_from_layer(layer, degree, opts));
    })?;
    Ok(layers)
}

/// Exact count of `r`-step walks from `start` whose endpoint has the
/// given cycle type.  Infeasible queries (parity, unreachable types)
/// return a zero table, not an error.
pub fn count_walks(
    start: &Permutation,
    end_type: &CycleType,
    r: usize,
    mode: WalkMode,
    transitive_only: bool,
    refine_colours: bool,
    guards: &SizeGuards,
) -> Result<CountTable> {
    if end_type.degree() != start.degree() {
        return Err(Error::DegreeMismatch {
            left: start.degree(),
            right: end_type.degree(),
        });
    }
    let opts = DpOptions {
        mode,
        transitive_only,
        refine_colours,
    };
    let layers = count_layers(start.degree(), std::slice::from_ref(start), r, opts, guards)?;
    Ok(layers[r]
        .get(end_type)
        .cloned()
        .unwrap_or_else(|| CountTable::zero(refine_colours)))
}

/// Walk counts from `start` to the exact permutation `end`, one table
/// per layer `r = 0..=r_max`.
pub fn count_layers_to_end(
    start: &Permutation,
    end: &Permutation,
    r_max: usize,
    opts: DpOptions,
    guards: &SizeGuards,
) -> Result<Vec<CountTable>> {
    let degree = start.degree();
    if end.degree() != degree {
        return Err(Error::DegreeMismatch {
            left: degree,
            right: end.degree(),
        });
    }
    let target = pack_pos(end);
    let mut tables = Vec::with_capacity(r_max + 1);
    run_dp(degree, std::slice::from_ref(start), r_max, opts, guards, |_, layer| {
        let mut table = CountTable::zero(opts.refine_colours);
        for (state, count) in layer {
            if state.pos != target {
                continue;
            }
            if opts.transitive_only && block_count(&state.orbit, degree) != 1 {
                continue;
            }
            table.add(state.colours.count_ones() as usize, count);
        }
        tables.push(table);
    })?;
    Ok(tables)
}

/// Exact count of `r`-step walks from `start` ending at the exact
/// permutation `end`.
pub fn count_walks_to_end(
    start: &Permutation,
    end: &Permutation,
    r: usize,
    mode: WalkMode,
    transitive_only: bool,
    refine_colours: bool,
    guards: &SizeGuards,
) -> Result<CountTable> {
    let opts = DpOptions {
        mode,
        transitive_only,
        refine_colours,
    };
    let mut tables = count_layers_to_end(start, end, r, opts, guards)?;
    Ok(tables.swap_remove(r))
}

/// The canonical permutation of a cycle type: cycles laid out over
/// consecutive points, longest first.
pub fn representative(ty: &CycleType) -> Permutation {
    let mut cycles = Vec::new();
    let mut next = 1;
    for &p in ty.parts() {
        cycles.push((next..next + p).collect());
        next += p;
    }
    Permutation::from_cycles(ty.degree(), &cycles).expect("parts partition the degree")
}

/// The monotone walk count from the identity to any fixed permutation
/// of the target cycle type, with no transitivity filter.  The count
/// depends on the endpoint only through its cycle type.
pub fn monotone_count_by_target_type(
    degree: usize,
    r: usize,
    target: &CycleType,
    guards: &SizeGuards,
) -> Result<BigUint> {
    if target.degree() != degree {
        return Err(Error::DegreeMismatch {
            left: degree,
            right: target.degree(),
        });
    }
    let table = count_walks_to_end(
        &Permutation::identity(degree),
        &representative(target),
        r,
        WalkMode::Monotone,
        false,
        false,
        guards,
    )?;
    Ok(table.total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::{enumerate_from, is_transitive};

    fn id(d: usize) -> Permutation {
        Permutation::identity(d)
    }

    fn ty(d: usize, parts: &[usize]) -> CycleType {
        CycleType::from_parts(d, parts.to_vec()).unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn hand_counted_examples() {
        let g = SizeGuards::default();
        let one = count_walks(&id(2), &ty(2, &[1, 1]), 2, WalkMode::Monotone, true, false, &g)
            .unwrap();
        assert_eq!(one.total, big(1));
        let four = count_walks(&id(3), &ty(3, &[3]), 2, WalkMode::Monotone, true, false, &g)
            .unwrap();
        assert_eq!(four.total, big(4));
    }

    #[test]
    fn zero_step_conventions() {
        let g = SizeGuards::default();
        let t = count_walks(&id(3), &ty(3, &[1, 1, 1]), 0, WalkMode::Any, true, false, &g)
            .unwrap();
        assert_eq!(t.total, big(0));
        let t = count_walks(&id(3), &ty(3, &[1, 1, 1]), 0, WalkMode::Any, false, false, &g)
            .unwrap();
        assert_eq!(t.total, big(1));
        let t = count_walks(&id(1), &ty(1, &[1]), 0, WalkMode::Any, true, false, &g).unwrap();
        assert_eq!(t.total, big(1));
    }

    #[test]
    fn parity_gives_zero_tables() {
        let g = SizeGuards::default();
        for r in [0usize, 2, 4] {
            let t = count_walks(&id(3), &ty(3, &[2, 1]), r, WalkMode::Any, false, false, &g)
                .unwrap();
            assert!(t.total.is_zero());
        }
    }

    #[test]
    fn degree_two_forced_walks() {
        let g = SizeGuards::default();
        for r in 0..=8 {
            let expect_id = if r % 2 == 0 { 1 } else { 0 };
            assert_eq!(
                monotone_count_by_target_type(2, r, &ty(2, &[1, 1]), &g).unwrap(),
                big(expect_id)
            );
            assert_eq!(
                monotone_count_by_target_type(2, r, &ty(2, &[2]), &g).unwrap(),
                big(1 - expect_id)
            );
        }
    }

    #[test]
    fn monotone_counts_by_type_degree_three() {
        let g = SizeGuards::default();
        let expect: [(&[usize], [u64; 5]); 3] = [
            (&[1, 1, 1], [1, 0, 3, 0, 11]),
            (&[2, 1], [0, 1, 0, 5, 0]),
            (&[3], [0, 0, 2, 0, 10]),
        ];
        for (parts, values) in expect {
            for (r, &v) in values.iter().enumerate() {
                assert_eq!(
                    monotone_count_by_target_type(3, r, &ty(3, parts), &g).unwrap(),
                    big(v),
                    "type {parts:?}, r = {r}"
                );
            }
        }
    }

    #[test]
    fn refinement_sums_to_total() {
        let g = SizeGuards::default();
        for r in 0..=4 {
            for end in CycleType::all_of_degree(4) {
                let t = count_walks(&id(4), &end, r, WalkMode::Monotone, true, true, &g)
                    .unwrap();
                let sum: BigUint = t.by_colour_count.unwrap().values().sum();
                assert_eq!(sum, t.total);
            }
        }
    }

    #[test]
    fn dp_matches_brute_force_on_small_instances() {
        let g = SizeGuards::default();
        let starts = [
            id(3),
            Permutation::from_cycles(3, &[vec![1, 2]]).unwrap(),
            Permutation::from_cycles(3, &[vec![1, 3, 2]]).unwrap(),
        ];
        for start in &starts {
            for r in 0..=4 {
                for mode in [WalkMode::Any, WalkMode::Monotone, WalkMode::Strict] {
                    for transitive in [false, true] {
                        // classify the brute-force walks
                        let mut expect: BTreeMap<CycleType, BTreeMap<usize, u64>> =
                            BTreeMap::new();
                        for w in enumerate_from(start, r, mode, &g).unwrap() {
                            if transitive && !is_transitive(start, w.steps()) {
                                continue;
                            }
                            *expect
                                .entry(w.end_point().cycle_type())
                                .or_default()
                                .entry(w.distinct_colour_count())
                                .or_insert(0) += 1;
                        }
                        for end in CycleType::all_of_degree(3) {
                            let got = count_walks(start, &end, r, mode, transitive, true, &g)
                                .unwrap();
                            let by = expect.get(&end).cloned().unwrap_or_default();
                            let total: u64 = by.values().sum();
                            assert_eq!(got.total, big(total));
                            let refined: BTreeMap<usize, BigUint> = by
                                .into_iter()
                                .map(|(c, n)| (c, big(n)))
                                .collect();
                            assert_eq!(got.by_colour_count.unwrap(), refined);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn multi_source_distribution_sums_over_starts() {
        let g = SizeGuards::default();
        let alpha = ty(3, &[2, 1]);
        let starts: Vec<Permutation> = alpha.permutations().collect();
        let opts = DpOptions {
            mode: WalkMode::Any,
            transitive_only: true,
            refine_colours: false,
        };
        let layers = count_layers(3, &starts, 1, opts, &g).unwrap();
        assert_eq!(layers[1][&ty(3, &[3])].total, big(6));
    }

    #[test]
    fn guards_cap_the_degree() {
        let g = SizeGuards::default();
        assert!(matches!(
            count_walks(&id(7), &ty(7, &[7]), 1, WalkMode::Any, false, false, &g),
            Err(Error::GuardExceeded { .. })
        ));
        let raised = SizeGuards {
            max_dp_degree: 16,
            ..SizeGuards::default()
        };
        assert!(matches!(
            count_walks(&id(9), &ty(9, &[9]), 1, WalkMode::Any, false, false, &raised),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
