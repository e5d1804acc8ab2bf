use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::partition::CycleType;

/// A permutation of `{1, ..., d}` stored as its image table:
/// `images[i - 1]` is the image of `i`.
///
/// Products compose left to right: `(p.compose(q))(x) = q(p(x))`,
/// so a walk that applies step `a` and then step `b` has end point
/// `start.compose(a).compose(b)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (1..=degree).collect(),
        }
    }

    /// Builds a permutation from a 1-based image table, rejecting
    /// anything that is not a bijection of `{1, ..., d}`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &x in &images {
            if x < 1 || x > d {
                return Err(Error::InvalidPermutation {
                    reason: format!("image {x} out of range 1..={d}"),
                });
            }
            if seen[x - 1] {
                return Err(Error::InvalidPermutation {
                    reason: format!("image {x} repeated"),
                });
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of `{1, ..., degree}` from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x < 1 || x > degree {
                    return Err(Error::InvalidPermutation {
                        reason: format!("cycle entry {x} out of range 1..={degree}"),
                    });
                }
                if used[x - 1] {
                    return Err(Error::InvalidPermutation {
                        reason: format!("point {x} appears in two cycles"),
                    });
                }
                used[x - 1] = true;
                let next = cycle[(k + 1) % cycle.len()];
                images[x - 1] = next;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the point `x` (1-based).
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// Left-to-right product: the result applies `self` first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        let images = self.images.iter().map(|&x| other.apply(x)).collect();
        Ok(Permutation { images })
    }

    /// Right-multiplies by the transposition `(s t)`, in place.
    /// Equivalent to `self.compose(&t.as_permutation(d))` but cheap.
    pub fn right_mul_transposition(&mut self, t: Transposition) {
        assert!(t.t() <= self.degree(), "transposition out of range");
        for x in self.images.iter_mut() {
            if *x == t.s() {
                *x = t.t();
            } else if *x == t.t() {
                *x = t.s();
            }
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x - 1] = i + 1;
        }
        Permutation { images }
    }

    /// `q^{-1} * self * q` in left-to-right order, i.e. the permutation
    /// sending `q(x)` to `q(self(x))`.
    pub fn conjugate_by(&self, q: &Permutation) -> Result<Permutation> {
        q.inverse().compose(self)?.compose(q)
    }

    /// Disjoint cycles, fixed points included.  Each cycle starts at its
    /// smallest point and cycles are ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 1..=d {
            if seen[start - 1] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start - 1] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x - 1] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut parts: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType::from_parts(self.degree(), parts).expect("cycle lengths partition the degree")
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// The largest point moved by the permutation, if any.
    pub fn largest_moved_point(&self) -> Option<usize> {
        (1..=self.degree()).rev().find(|&x| self.apply(x) != x)
    }

    /// All `d!` permutations of degree `d`, in lexicographic image order.
    pub fn all(degree: usize) -> impl Iterator<Item = Permutation> {
        (1..=degree)
            .permutations(degree)
            .map(|images| Permutation { images })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<Vec<usize>> =
            self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return write!(f, "()");
        }
        for cycle in nontrivial {
            write!(f, "({})", cycle.iter().join(" "))?;
        }
        Ok(())
    }
}

/// A transposition `(s t)` with `s < t`.  Its colour is the larger
/// point `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transposition {
    s: usize,
    t: usize,
}

impl Transposition {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b || a == 0 || b == 0 {
            return Err(Error::InvalidTransposition { a, b });
        }
        let (s, t) = if a < b { (a, b) } else { (b, a) };
        Ok(Transposition { s, t })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// The colour of the transposition: its larger point.
    pub fn colour(&self) -> usize {
        self.t
    }

    pub fn apply(&self, x: usize) -> usize {
        if x == self.s {
            self.t
        } else if x == self.t {
            self.s
        } else {
            x
        }
    }

    /// Conjugate by another transposition: `(s t)` becomes
    /// `(q(s) q(t))` for `q = (a b)`.
    pub fn conjugate_by(&self, q: Transposition) -> Transposition {
        Transposition::new(q.apply(self.s), q.apply(self.t))
            .expect("conjugation preserves distinctness")
    }

    pub fn as_permutation(&self, degree: usize) -> Result<Permutation> {
        if self.t > degree {
            return Err(Error::InvalidPermutation {
                reason: format!("transposition ({} {}) exceeds degree {degree}", self.s, self.t),
            });
        }
        Permutation::from_cycles(degree, &[vec![self.s, self.t]])
    }

    /// All transpositions on `{1, ..., d}`, ordered by colour, then by
    /// the smaller point.
    pub fn all(degree: usize) -> impl Iterator<Item = Transposition> {
        (2..=degree).flat_map(|t| (1..t).map(move |s| Transposition { s, t }))
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {})", self.s, self.t)
    }
}
