use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// An integer partition of `degree`, stored with parts in decreasing
/// order.  Used as the cycle type of a permutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    degree: usize,
    parts: Vec<usize>,
}

impl CycleType {
    pub fn from_parts(degree: usize, mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidCycleType {
                reason: "zero part".to_string(),
            });
        }
        let sum: usize = parts.iter().sum();
        if sum != degree {
            return Err(Error::InvalidCycleType {
                reason: format!("parts sum to {sum}, expected {degree}"),
            });
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType { degree, parts })
    }

    /// The type `(d)` of a full cycle.
    pub fn single_cycle(degree: usize) -> Self {
        CycleType {
            degree,
            parts: vec![degree],
        }
    }

    /// The type `(1, ..., 1)` of the identity.
    pub fn all_ones(degree: usize) -> Self {
        CycleType {
            degree,
            parts: vec![1; degree],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of permutations with this cycle type:
    /// `d! / (prod parts * prod mult!)`.
    pub fn class_size(&self) -> u64 {
        let factorial = |n: usize| (1..=n as u64).product::<u64>();
        let mut denom = 1u64;
        for &p in &self.parts {
            denom *= p as u64;
        }
        for (_, group) in &self.parts.iter().chunk_by(|&&p| p) {
            denom *= factorial(group.count());
        }
        factorial(self.degree) / denom
    }

    /// All permutations of this cycle type.
    pub fn permutations(&self) -> impl Iterator<Item = Permutation> + '_ {
        Permutation::all(self.degree).filter(move |p| &p.cycle_type() == self)
    }

    /// All partitions of `degree`, in decreasing lexicographic order.
    pub fn all_of_degree(degree: usize) -> Vec<CycleType> {
        fn rec(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if remaining == 0 {
                out.push(prefix.clone());
                return;
            }
            for next in (1..=remaining.min(max)).rev() {
                prefix.push(next);
                rec(remaining - next, next, prefix, out);
                prefix.pop();
            }
        }
        let mut raw = Vec::new();
        rec(degree, degree, &mut Vec::new(), &mut raw);
        raw.into_iter()
            .map(|parts| CycleType { degree, parts })
            .collect()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.parts.iter().join("+"))
    }
}

/// A partition of the points `{1, ..., d}` into blocks, maintained as
/// a union-find structure.  Tracks which points a walk has connected.
#[derive(Debug, Clone)]
pub struct OrbitPartition {
    parent: Vec<usize>,
    size: Vec<usize>,
    blocks: usize,
}

impl OrbitPartition {
    /// The discrete partition: every point in its own block.
    pub fn new(degree: usize) -> Self {
        OrbitPartition {
            parent: (0..degree).collect(),
            size: vec![1; degree],
            blocks: degree,
        }
    }

    /// The partition into cycles of `p` (the orbits of the group it
    /// generates).
    pub fn from_permutation(p: &Permutation) -> Self {
        let mut op = OrbitPartition::new(p.degree());
        for cycle in p.cycles() {
            for pair in cycle.windows(2) {
                op.union(pair[0], pair[1]);
            }
        }
        op
    }

    pub fn degree(&self) -> usize {
        self.parent.len()
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn root_of(&self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        root
    }

    /// Merges the blocks of the 1-based points `a` and `b`.
    pub fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a - 1), self.find(b - 1));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.blocks -= 1;
    }

    /// Whether the 1-based points `a` and `b` lie in the same block.
    pub fn connected(&self, a: usize, b: usize) -> bool {
        self.root_of(a - 1) == self.root_of(b - 1)
    }

    /// Coarsens `self` by every union recorded in `other`.
    pub fn merge(&mut self, other: &OrbitPartition) {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        for x in 0..other.parent.len() {
            let r = other.root_of(x);
            if r != x {
                self.union(x + 1, r + 1);
            }
        }
    }

    pub fn block_count(&self) -> usize {
        self.blocks
    }

    pub fn is_single_block(&self) -> bool {
        self.blocks == 1
    }

    /// The blocks as sorted lists of 1-based points, ordered by their
    /// smallest point.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for x in 0..d {
            by_root.entry(self.root_of(x)).or_default().push(x + 1);
        }
        let mut out: Vec<Vec<usize>> = by_root.into_values().collect();
        out.sort_by_key(|b| b[0]);
        out
    }

    /// Canonical form: block labels in order of first appearance, so
    /// two partitions are equal iff their labellings agree.
    pub fn restricted_growth_string(&self) -> Vec<u8> {
        let d = self.degree();
        let mut label_of_root = vec![u8::MAX; d];
        let mut next = 0u8;
        let mut out = Vec::with_capacity(d);
        for x in 0..d {
            let r = self.root_of(x);
            if label_of_root[r] == u8::MAX {
                label_of_root[r] = next;
                next += 1;
            }
            out.push(label_of_root[r]);
        }
        out
    }
}

impl PartialEq for OrbitPartition {
    fn eq(&self, other: &Self) -> bool {
        self.restricted_growth_string() == other.restricted_growth_string()
    }
}

impl Eq for OrbitPartition {}

impl std::hash::Hash for OrbitPartition {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.restricted_growth_string().hash(state);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_type_sorts_and_validates() {
        let t = CycleType::from_parts(5, vec![1, 3, 1]).unwrap();
        assert_eq!(t.parts(), &[3, 1, 1]);
        assert_eq!(t.len(), 3);
        assert!(CycleType::from_parts(5, vec![3, 1]).is_err());
        assert!(CycleType::from_parts(2, vec![2, 0]).is_err());
    }

    #[test]
    fn partition_enumeration_counts() {
        assert_eq!(CycleType::all_of_degree(1).len(), 1);
        assert_eq!(CycleType::all_of_degree(5).len(), 7);
        assert_eq!(CycleType::all_of_degree(8).len(), 22);
        let of4 = CycleType::all_of_degree(4);
        assert_eq!(of4[0].parts(), &[4]);
        assert_eq!(of4.last().unwrap().parts(), &[1, 1, 1, 1]);
    }

    #[test]
    fn class_sizes_sum_to_group_order() {
        for d in 1..=6 {
            let total: u64 = CycleType::all_of_degree(d)
                .iter()
                .map(|t| t.class_size())
                .sum();
            assert_eq!(total, (1..=d as u64).product::<u64>());
        }
        assert_eq!(CycleType::from_parts(4, vec![2, 2]).unwrap().class_size(), 3);
        assert_eq!(CycleType::single_cycle(4).class_size(), 6);
    }

    #[test]
    fn permutations_of_type_match_class_size() {
        for t in CycleType::all_of_degree(4) {
            assert_eq!(t.permutations().count() as u64, t.class_size());
        }
    }

    #[test]
    fn union_find_blocks_and_canonical_form() {
        let mut op = OrbitPartition::new(4);
        assert_eq!(op.block_count(), 4);
        op.union(1, 3);
        assert!(op.connected(1, 3));
        assert!(!op.connected(1, 2));
        assert_eq!(op.restricted_growth_string(), vec![0, 1, 0, 2]);
        op.union(2, 4);
        assert_eq!(op.blocks(), vec![vec![1, 3], vec![2, 4]]);
        assert!(!op.is_single_block());
        op.union(3, 2);
        assert!(op.is_single_block());
    }

    #[test]
    fn partition_from_permutation_follows_cycles() {
        let p = Permutation::from_cycles(5, &[vec![1, 4], vec![2, 5]]).unwrap();
        let op = OrbitPartition::from_permutation(&p);
        assert_eq!(op.blocks(), vec![vec![1, 4], vec![2, 5], vec![3]]);
    }

    #[test]
    fn merge_coarsens() {
        let p = Permutation::from_cycles(4, &[vec![1, 2]]).unwrap();
        let q = Permutation::from_cycles(4, &[vec![2, 3], vec![1, 4]]).unwrap();
        let mut op = OrbitPartition::from_permutation(&p);
        op.merge(&OrbitPartition::from_permutation(&q));
        assert!(op.is_single_block());
    }

    #[test]
    fn equality_ignores_union_order() {
        let mut a = OrbitPartition::new(5);
        a.union(1, 2);
        a.union(4, 5);
        let mut b = OrbitPartition::new(5);
        b.union(5, 4);
        b.union(2, 1);
        assert_eq!(a, b);
        let mut c = OrbitPartition::new(5);
        c.union(1, 2);
        c.union(3, 5);
        assert_ne!(a, c);
    }
}
