use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::guard::SizeGuards;
use crate::perm::{Permutation, Transposition};
use crate::walk::Walk;

/// Applies the adjacent operator at position `i` (1-based, `1 ≤ i ≤
/// r−1`): swaps steps `i` and `i+1` and conjugates the step with the
/// higher colour by the step with the lower colour.  Steps of equal
/// colour are left alone.  Start and endpoint are preserved; the
/// spectrum has positions `i`, `i+1` swapped.
pub fn apply_r(w: &Walk, i: usize) -> Result<Walk> {
    let r = w.len();
    if i == 0 || i + 1 > r {
        return Err(Error::StepIndexOutOfRange {
            index: i,
            max: r.saturating_sub(1),
        });
    }
    let a = w.steps()[i - 1];
    let b = w.steps()[i];
    let (na, nb) = match a.colour().cmp(&b.colour()) {
        std::cmp::Ordering::Less => (b.conjugate_by(a), a),
        std::cmp::Ordering::Greater => (b, a.conjugate_by(b)),
        std::cmp::Ordering::Equal => (a, b),
    };
    let mut steps = w.steps().to_vec();
    steps[i - 1] = na;
    steps[i] = nb;
    Walk::new(w.start().clone(), steps)
}

/// Sorts the walk's steps into weakly increasing colour order with a
/// stable adjacent-swap insertion sort.  Returns the monotone walk and
/// the word of applied swap positions, in application order.
pub fn apply_sort(w: &Walk) -> (Walk, Vec<usize>) {
    let mut cur = w.clone();
    let mut word = Vec::new();
    for j in 1..cur.len() {
        let mut k = j;
        while k > 0 && cur.steps()[k - 1].colour() > cur.steps()[k].colour() {
            cur = apply_r(&cur, k).expect("swap index in range");
            word.push(k);
            k -= 1;
        }
    }
    (cur, word)
}

/// An orbit of the sorting action: all walks reachable from one walk
/// by adjacent operators, together with its unique monotone member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkOrbit {
    members: BTreeSet<Walk>,
    representative: Walk,
}

impl WalkOrbit {
    pub fn members(&self) -> &BTreeSet<Walk> {
        &self.members
    }

    /// The monotone member.
    pub fn representative(&self) -> &Walk {
        &self.representative
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn monotone_members(&self) -> Vec<&Walk> {
        self.members.iter().filter(|w| w.is_monotone()).collect()
    }
}

/// Breadth-first closure of `{w}` under all adjacent operators.
pub fn orbit(w: &Walk, guards: &SizeGuards) -> Result<WalkOrbit> {
    guards.check_orbit_steps(w.len())?;
    let mut members = BTreeSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(cur) = queue.pop_front() {
        for i in 1..cur.len() {
            let next = apply_r(&cur, i)?;
            if members.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let representative = apply_sort(w).0;
    Ok(WalkOrbit {
        members,
        representative,
    })
}

/// Number of distinct arrangements of the walk's colour multiset:
/// `r!/(m₂!…m_d!)`.  This is the orbit size.
pub fn spectrum_arrangements(w: &Walk) -> u64 {
    let factorial = |n: usize| (1..=n as u64).product::<u64>();
    let mut denom = 1u64;
    for m in w.colour_multiplicities().values() {
        denom *= factorial(*m);
    }
    factorial(w.len()) / denom
}

/// The unique strictly monotone walk from the identity to `sigma`, of
/// length `d − ℓ(cycle_type(sigma))`.  Peels the largest moved point:
/// the last step must be `(σ(t) t)` for `t` the largest moved point.
pub fn strictly_monotone_factorization(sigma: &Permutation) -> Walk {
    let mut rest = sigma.clone();
    let mut steps = Vec::new();
    while let Some(t) = rest.largest_moved_point() {
        let s = rest.apply(t);
        let step = Transposition::new(s, t).expect("moved point has a distinct image");
        steps.push(step);
        rest.right_mul_transposition(step);
    }
    steps.reverse();
    Walk::new(Permutation::identity(sigma.degree()), steps)
        .expect("factorization steps stay within the degree")
}
