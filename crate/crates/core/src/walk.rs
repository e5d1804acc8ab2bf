use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::guard::SizeGuards;
use crate::partition::OrbitPartition;
use crate::perm::{Permutation, Transposition};

/// The sequence of colours along a walk's steps.
pub type Spectrum = Vec<usize>;

/// Constraint on the colour sequence of a walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WalkMode {
    /// No constraint.
    Any,
    /// Colours weakly increasing.
    Monotone,
    /// Colours strictly increasing.
    Strict,
}

impl WalkMode {
    /// Whether a step of colour `next` may follow a step of colour
    /// `last` (`last = 0` means no step taken yet).
    pub fn allows(&self, last: usize, next: usize) -> bool {
        match self {
            WalkMode::Any => true,
            WalkMode::Monotone => next >= last,
            WalkMode::Strict => next > last,
        }
    }
}

/// A walk on the Cayley graph of `S(d)`: a start permutation and a
/// sequence of transposition steps, applied left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk {
    start: Permutation,
    steps: Vec<Transposition>,
}

impl Walk {
    pub fn new(start: Permutation, steps: Vec<Transposition>) -> Result<Self> {
        let d = start.degree();
        for step in &steps {
            if step.t() > d {
                return Err(Error::InvalidWalk {
                    reason: format!("step ({} {}) exceeds degree {d}", step.s(), step.t()),
                });
            }
        }
        Ok(Walk { start, steps })
    }

    pub fn degree(&self) -> usize {
        self.start.degree()
    }

    pub fn start(&self) -> &Permutation {
        &self.start
    }

    pub fn steps(&self) -> &[Transposition] {
        &self.steps
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn spectrum(&self) -> Spectrum {
        self.steps.iter().map(|t| t.colour()).collect()
    }

    /// The product of the start with all steps, left to right.
    pub fn end_point(&self) -> Permutation {
        let mut p = self.start.clone();
        for &step in &self.steps {
            p.right_mul_transposition(step);
        }
        p
    }

    pub fn is_monotone(&self) -> bool {
        self.steps.windows(2).all(|w| w[0].colour() <= w[1].colour())
    }

    pub fn is_strictly_monotone(&self) -> bool {
        self.steps.windows(2).all(|w| w[0].colour() < w[1].colour())
    }

    /// Multiplicity of each colour in the spectrum.
    pub fn colour_multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for step in &self.steps {
            *m.entry(step.colour()).or_insert(0) += 1;
        }
        m
    }

    pub fn distinct_colour_count(&self) -> usize {
        self.steps.iter().map(|t| t.colour()).unique().count()
    }

    /// The join of the cycle partition of the start with the `{s, t}`
    /// merges of all steps.
    pub fn orbit_partition(&self) -> OrbitPartition {
        let mut op = OrbitPartition::from_permutation(&self.start);
        for step in &self.steps {
            op.union(step.s(), step.t());
        }
        op
    }

    /// Whether the start and the steps generate a transitive subgroup.
    pub fn is_transitive(&self) -> bool {
        self.orbit_partition().is_single_block()
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |", self.start)?;
        for step in &self.steps {
            write!(f, " {step}")?;
        }
        Ok(())
    }
}

/// Whether `start` together with `steps` generates a transitive
/// subgroup of `S(d)`.  The endpoint need not be considered: it is the
/// product of the start and the steps.
pub fn is_transitive(start: &Permutation, steps: &[Transposition]) -> bool {
    let mut op = OrbitPartition::from_permutation(start);
    for step in steps {
        op.union(step.s(), step.t());
    }
    op.is_single_block()
}

/// Visits every `r`-step walk from `start` in the given mode, in
/// lexicographic step order, without materializing the whole list.
/// The callback receives the steps and the current endpoint.
pub fn for_each_walk(
    start: &Permutation,
    r: usize,
    mode: WalkMode,
    guards: &SizeGuards,
    mut f: impl FnMut(&[Transposition], &Permutation),
) -> Result<()> {
    guards.check_brute_degree(start.degree())?;
    guards.check_brute_steps(r)?;
    let all: Vec<Transposition> = Transposition::all(start.degree()).collect();
    let mut steps: Vec<Transposition> = Vec::with_capacity(r);
    let mut pos = start.clone();
    rec(&all, r, mode, &mut steps, &mut pos, &mut f);
    return Ok(());

    fn rec(
        all: &[Transposition],
        r: usize,
        mode: WalkMode,
        steps: &mut Vec<Transposition>,
        pos: &mut Permutation,
        f: &mut impl FnMut(&[Transposition], &Permutation),
    ) {
        if steps.len() == r {
            f(steps, pos);
            return;
        }
        let last = steps.last().map_or(0, |t| t.colour());
        for &step in all {
            if !mode.allows(last, step.colour()) {
                continue;
            }
            steps.push(step);
            pos.right_mul_transposition(step);
            rec(all, r, mode, steps, pos, f);
            pos.right_mul_transposition(step);
            steps.pop();
        }
    }
}

/// All `r`-step walks from `start` in the given mode, lexicographic in
/// the step sequence.
pub fn enumerate_from(
    start: &Permutation,
    r: usize,
    mode: WalkMode,
    guards: &SizeGuards,
) -> Result<Vec<Walk>> {
    let mut out = Vec::new();
    for_each_walk(start, r, mode, guards, |steps, _| {
        out.push(Walk {
            start: start.clone(),
            steps: steps.to_vec(),
        });
    })?;
    Ok(out)
}

/// All `r`-step walks from `start` to `end`, optionally transitive
/// only.  Exact, duplicate-free, lexicographic; this is the oracle the
/// fast counters are verified against.
pub fn enumerate_walks(
    start: &Permutation,
    end: &Permutation,
    r: usize,
    mode: WalkMode,
    transitive_only: bool,
    guards: &SizeGuards,
) -> Result<Vec<Walk>> {
    if start.degree() != end.degree() {
        return Err(Error::DegreeMismatch {
            left: start.degree(),
            right: end.degree(),
        });
    }
    let mut out = Vec::new();
    for_each_walk(start, r, mode, guards, |steps, pos| {
        if pos == end && (!transitive_only || is_transitive(start, steps)) {
            out.push(Walk {
                start: start.clone(),
                steps: steps.to_vec(),
            });
        }
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: usize, b: usize) -> Transposition {
        Transposition::new(a, b).unwrap()
    }

    fn id(d: usize) -> Permutation {
        Permutation::identity(d)
    }

    #[test]
    fn end_point_of_empty_walk_is_start() {
        let rho = Permutation::from_cycles(3, &[vec![1, 3]]).unwrap();
        let w = Walk::new(rho.clone(), vec![]).unwrap();
        assert_eq!(w.end_point(), rho);
    }

    #[test]
    fn end_point_multiplies_left_to_right() {
        let w = Walk::new(id(2), vec![t(1, 2), t(1, 2)]).unwrap();
        assert!(w.end_point().is_identity());
        let w = Walk::new(id(3), vec![t(1, 2), t(1, 3)]).unwrap();
        assert_eq!(w.end_point().images(), &[2, 3, 1]);
    }

    #[test]
    fn walk_rejects_steps_beyond_degree() {
        assert!(Walk::new(id(2), vec![t(1, 3)]).is_err());
    }

    #[test]
    fn spectrum_and_modes() {
        let w = Walk::new(id(4), vec![t(1, 2), t(2, 3), t(1, 3)]).unwrap();
        assert_eq!(w.spectrum(), vec![2, 3, 3]);
        assert!(w.is_monotone());
        assert!(!w.is_strictly_monotone());
        assert_eq!(w.distinct_colour_count(), 2);
        assert_eq!(
            w.colour_multiplicities(),
            BTreeMap::from([(2, 1), (3, 2)])
        );
    }

    #[test]
    fn transitivity_joins_start_cycles_with_step_merges() {
        assert!(is_transitive(&id(1), &[]));
        assert!(is_transitive(&id(2), &[t(1, 2)]));
        assert!(!is_transitive(&id(3), &[t(1, 2), t(1, 2)]));
        assert!(is_transitive(&id(3), &[t(1, 2), t(2, 3)]));
        let three_cycle = Permutation::from_cycles(3, &[vec![1, 2, 3]]).unwrap();
        assert!(Walk::new(three_cycle, vec![]).unwrap().is_transitive());
    }

    #[test]
    fn enumerate_matches_hand_listing() {
        let g = SizeGuards::default();
        let walks = enumerate_walks(&id(2), &id(2), 2, WalkMode::Monotone, true, &g).unwrap();
        assert_eq!(walks.len(), 1);
        assert_eq!(walks[0].steps(), &[t(1, 2), t(1, 2)]);

        let sigma = Permutation::from_cycles(3, &[vec![1, 2, 3]]).unwrap();
        let walks = enumerate_walks(&id(3), &sigma, 2, WalkMode::Monotone, false, &g).unwrap();
        let steps: Vec<&[Transposition]> = walks.iter().map(|w| w.steps()).collect();
        assert_eq!(steps, vec![&[t(1, 2), t(1, 3)][..], &[t(1, 3), t(2, 3)][..]]);
    }

    #[test]
    fn zero_step_walks() {
        let g = SizeGuards::default();
        let sigma = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        assert!(enumerate_walks(&id(3), &sigma, 0, WalkMode::Any, false, &g)
            .unwrap()
            .is_empty());
        let loops = enumerate_walks(&id(1), &id(1), 0, WalkMode::Monotone, true, &g).unwrap();
        assert_eq!(loops.len(), 1);
        assert!(loops[0].is_empty());
    }

    #[test]
    fn mode_counts_nest() {
        let g = SizeGuards::default();
        for r in 0..=4 {
            let any = enumerate_from(&id(3), r, WalkMode::Any, &g).unwrap().len();
            let mono = enumerate_from(&id(3), r, WalkMode::Monotone, &g).unwrap().len();
            let strict = enumerate_from(&id(3), r, WalkMode::Strict, &g).unwrap().len();
            assert!(strict <= mono && mono <= any);
            assert_eq!(any, 3usize.pow(r as u32));
        }
        assert_eq!(
            enumerate_from(&id(3), 2, WalkMode::Strict, &SizeGuards::default())
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn degree_one_has_no_steps() {
        let g = SizeGuards::default();
        assert!(enumerate_from(&id(1), 1, WalkMode::Any, &g).unwrap().is_empty());
    }

    #[test]
    fn guards_reject_oversize_enumeration() {
        let g = SizeGuards::default();
        assert!(matches!(
            enumerate_from(&id(5), 2, WalkMode::Any, &g),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(matches!(
            enumerate_from(&id(3), 9, WalkMode::Any, &g),
            Err(Error::GuardExceeded { .. })
        ));
        let raised = SizeGuards {
            max_brute_degree: 5,
            ..SizeGuards::default()
        };
        assert!(enumerate_from(&id(5), 1, WalkMode::Any, &raised).is_ok());
    }

    #[test]
    fn parity_forces_emptiness() {
        let g = SizeGuards::default();
        let odd = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        for r in [0, 2, 4] {
            assert!(enumerate_walks(&id(3), &odd, r, WalkMode::Any, false, &g)
                .unwrap()
                .is_empty());
        }
    }
}
