//! Congruences of solutions and the brute-force simplicity oracle.
//!
//! A congruence is a partition of the point set compatible with both
//! components of `r`. The principal congruence generated by identifying
//! two points is computed by a union-find closure: every merge of `a` and
//! `b` schedules the forced merges `sigma_a(v) ~ sigma_b(v)`,
//! `sigma_v(a) ~ sigma_v(b)`, `gamma_a(v) ~ gamma_b(v)` and
//! `gamma_v(a) ~ gamma_v(b)` for all `v`. A solution is simple when every
//! principal congruence collapses the whole point set.

use super::{SolutionError, SolutionTable};
use rayon::prelude::*;
use std::collections::VecDeque;

/// A partition of `{0, .., n-1}` in canonical form: classes are sorted
/// internally and ordered by least member, so equal partitions compare
/// equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl Congruence {
    /// Builds a partition from a class list, validating that every point
    /// occurs exactly once.
    pub fn from_classes(n: usize, classes: &[Vec<usize>]) -> Result<Congruence, SolutionError> {
        let mut class_of = vec![usize::MAX; n];
        for (k, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(SolutionError::NotAPartition);
            }
            for &x in class {
                if x >= n || class_of[x] != usize::MAX {
                    return Err(SolutionError::NotAPartition);
                }
                class_of[x] = k;
            }
        }
        if class_of.contains(&usize::MAX) {
            return Err(SolutionError::NotAPartition);
        }
        Ok(Self::canonicalize(n, &class_of))
    }

    /// Singleton classes.
    pub fn discrete(n: usize) -> Congruence {
        Congruence {
            class_of: (0..n).collect(),
            classes: (0..n).map(|x| vec![x]).collect(),
        }
    }

    /// One class containing everything.
    pub fn total(n: usize) -> Congruence {
        Congruence {
            class_of: vec![0; n],
            classes: vec![(0..n).collect()],
        }
    }

    fn canonicalize(n: usize, raw_class_of: &[usize]) -> Congruence {
        // Relabel classes by their least member.
        let mut first_seen: Vec<(usize, usize)> = Vec::new();
        for x in 0..n {
            let c = raw_class_of[x];
            if !first_seen.iter().any(|&(rc, _)| rc == c) {
                first_seen.push((c, x));
            }
        }
        first_seen.sort_by_key(|&(_, least)| least);
        let mut classes = vec![Vec::new(); first_seen.len()];
        let mut class_of = vec![0; n];
        for x in 0..n {
            let k = first_seen
                .iter()
                .position(|&(rc, _)| rc == raw_class_of[x])
                .expect("class present");
            class_of[x] = k;
            classes[k].push(x);
        }
        Congruence { class_of, classes }
    }

    pub fn n(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Least member of each class, in class order.
    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn same(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    pub fn is_total(&self) -> bool {
        self.classes.len() == 1
    }

    pub fn is_discrete(&self) -> bool {
        self.classes.len() == self.n()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; the smaller root stays the
    /// representative. Returns whether anything changed.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }
}

fn closure(s: &SolutionTable, seed: (usize, usize), reversed: bool) -> Congruence {
    let n = s.n();
    let mut uf = UnionFind::new(n);
    let mut remaining = n;
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();

    let merge = |uf: &mut UnionFind,
                     queue: &mut VecDeque<(usize, usize)>,
                     remaining: &mut usize,
                     a: usize,
                     b: usize| {
        if uf.union(a, b) {
            *remaining -= 1;
            queue.push_back((a.min(b), a.max(b)));
        }
    };

    merge(&mut uf, &mut queue, &mut remaining, seed.0, seed.1);
    while let Some((a, b)) = queue.pop_front() {
        if remaining == 1 {
            break;
        }
        let sweep: Vec<usize> = if reversed {
            (0..n).rev().collect()
        } else {
            (0..n).collect()
        };
        for v in sweep {
            let mut rules = [
                (s.sigma(a, v), s.sigma(b, v)),
                (s.sigma(v, a), s.sigma(v, b)),
                (s.gamma(a, v), s.gamma(b, v)),
                (s.gamma(v, a), s.gamma(v, b)),
            ];
            if reversed {
                rules.reverse();
            }
            for (u, w) in rules {
                merge(&mut uf, &mut queue, &mut remaining, u, w);
            }
        }
    }

    let raw: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
    Congruence::canonicalize(n, &raw)
}

/// The smallest congruence identifying `x` and `y`.
pub fn principal_congruence(s: &SolutionTable, x: usize, y: usize) -> Congruence {
    assert!(x < s.n() && y < s.n(), "points out of range");
    closure(s, (x, y), false)
}

#[cfg(test)]
pub(crate) fn principal_congruence_reversed(s: &SolutionTable, x: usize, y: usize) -> Congruence {
    closure(s, (x, y), true)
}

/// True when every principal congruence collapses the point set; requires
/// at least two points.
pub fn is_simple_oracle(s: &SolutionTable) -> bool {
    let n = s.n();
    assert!(n > 1, "simplicity is defined for at least two points");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .collect();
    pairs
        .par_iter()
        .all(|&(x, y)| principal_congruence(s, x, y).is_total())
}

/// The quotient of `s` by a congruence, with classes relabeled by least
/// member. Returns the quotient solution and the class map; fails with a
/// witness if the partition is not a congruence, and re-verifies the
/// quotient table in full.
pub fn quotient_solution(
    s: &SolutionTable,
    cong: &Congruence,
) -> Result<(SolutionTable, Vec<usize>), SolutionError> {
    let n = s.n();
    if cong.n() != n {
        return Err(SolutionError::SizeMismatch(n, cong.n()));
    }
    let reps = cong.representatives();

    // Compatibility against the least-member representatives; by
    // transitivity this covers all pairs of equivalent inputs.
    for x in 0..n {
        for y in 0..n {
            let rx = reps[cong.class_of(x)];
            let ry = reps[cong.class_of(y)];
            if !cong.same(s.sigma(x, y), s.sigma(rx, ry)) {
                return Err(SolutionError::NotCongruence { x1: x, y1: y, x2: rx, y2: ry });
            }
            if !cong.same(s.gamma(y, x), s.gamma(ry, rx)) {
                return Err(SolutionError::NotCongruence { x1: x, y1: y, x2: rx, y2: ry });
            }
        }
    }

    let m = cong.class_count();
    let rows: Vec<Vec<usize>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| cong.class_of(s.sigma(reps[i], reps[j])))
                .collect()
        })
        .collect();
    let quotient = SolutionTable::from_sigma(&rows)?;
    Ok((quotient, cong.class_of.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solution::tests::{cyclic_shift, twist};

    #[test]
    fn shift_principal_congruence_pairs_antipodes() {
        let s = cyclic_shift(4);
        let c = principal_congruence(&s, 0, 2);
        assert_eq!(c.classes(), &[vec![0, 2], vec![1, 3]]);
        assert!(!c.is_total());
        let c = principal_congruence(&s, 0, 1);
        assert!(c.is_total());
    }

    #[test]
    fn closure_is_independent_of_sweep_order() {
        for s in [cyclic_shift(4), cyclic_shift(6), twist(4)] {
            for x in 0..s.n() {
                for y in x + 1..s.n() {
                    assert_eq!(
                        principal_congruence(&s, x, y),
                        principal_congruence_reversed(&s, x, y)
                    );
                }
            }
        }
    }

    #[test]
    fn quotient_of_shift_by_antipodes_is_shift() {
        let s = cyclic_shift(4);
        let c = principal_congruence(&s, 0, 2);
        let (q, class_of) = quotient_solution(&s, &c).unwrap();
        assert_eq!(q, cyclic_shift(2));
        assert_eq!(class_of, vec![0, 1, 0, 1]);
    }

    #[test]
    fn non_congruence_partition_is_rejected_with_witness() {
        let s = cyclic_shift(4);
        let c = Congruence::from_classes(4, &[vec![0, 1], vec![2], vec![3]]).unwrap();
        let err = quotient_solution(&s, &c).unwrap_err();
        assert_eq!(err, SolutionError::NotCongruence { x1: 0, y1: 1, x2: 0, y2: 0 });
    }

    #[test]
    fn shift_solutions_are_not_simple_above_prime_edge() {
        assert!(!is_simple_oracle(&cyclic_shift(4)));
        assert!(is_simple_oracle(&cyclic_shift(2)));
        assert!(is_simple_oracle(&cyclic_shift(3)));
        assert!(!is_simple_oracle(&cyclic_shift(6)));
    }

    #[test]
    fn twist_solutions_are_not_simple_beyond_two_points() {
        assert!(!is_simple_oracle(&twist(3)));
        assert!(!is_simple_oracle(&twist(4)));
        // Two-point edge: both proper quotients are trivial, so the
        // oracle reports simple even though the solution is decomposable.
        assert!(is_simple_oracle(&twist(2)));
    }

    #[test]
    #[should_panic]
    fn oracle_requires_two_points() {
        let s = SolutionTable::from_sigma(&[vec![0]]).unwrap();
        is_simple_oracle(&s);
    }

    #[test]
    fn partition_validation() {
        assert!(Congruence::from_classes(3, &[vec![0, 1], vec![2]]).is_ok());
        assert!(Congruence::from_classes(3, &[vec![0, 1]]).is_err());
        assert!(Congruence::from_classes(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(Congruence::from_classes(3, &[vec![0, 1], vec![2, 3]]).is_err());
        assert!(Congruence::from_classes(3, &[vec![0], vec![], vec![1, 2]]).is_err());
    }

    #[test]
    fn canonical_class_order_is_by_least_member() {
        let c = Congruence::from_classes(4, &[vec![3, 1], vec![2, 0]]).unwrap();
        assert_eq!(c.classes(), &[vec![0, 2], vec![1, 3]]);
        assert_eq!(c.representatives(), vec![0, 1]);
        assert_eq!(c.class_of(3), 1);
    }
}
