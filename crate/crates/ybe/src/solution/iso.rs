//! Backtracking isomorphism search between two solutions.
//!
//! An isomorphism is a bijection `f` of point sets with
//! `f(sigma_x(y)) = sigma'_{f(x)}(f(y))` for all pairs; the derived gamma
//! maps then transport automatically. Candidate images are restricted by
//! the `(sigma order, orbit size)` signature, which any isomorphism must
//! preserve; that is only a pruning heuristic, correctness comes from the
//! final full check.

use super::{orbits, SolutionTable};
use crate::perm::Perm;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
struct Signature {
    sigma_order: u64,
    orbit_size: usize,
}

fn signatures(s: &SolutionTable) -> Vec<Signature> {
    let orb = orbits(s);
    (0..s.n())
        .map(|x| Signature {
            sigma_order: s.sigma_order(x),
            orbit_size: orb.classes()[orb.class_of(x)].len(),
        })
        .collect()
}

struct Search<'a> {
    a: &'a SolutionTable,
    b: &'a SolutionTable,
    sig_a: Vec<Signature>,
    sig_b: Vec<Signature>,
    map: Vec<usize>,
    used: Vec<bool>,
    assigned: Vec<usize>,
    order: Vec<usize>,
}

const UNSET: usize = usize::MAX;

impl<'a> Search<'a> {
    /// Forces `map[x] = y` and closes under `sigma` on all assigned
    /// pairs; returns the trail of new assignments, or `None` on clash.
    fn assign(&mut self, x: usize, y: usize) -> Option<usize> {
        let trail_start = self.assigned.len();
        if !self.push(x, y) {
            return None;
        }
        let mut cursor = trail_start;
        while cursor < self.assigned.len() {
            let u = self.assigned[cursor];
            cursor += 1;
            for k in 0..self.assigned.len() {
                let v = self.assigned[k];
                if !self.force(u, v) || !self.force(v, u) {
                    self.rollback(trail_start);
                    return None;
                }
            }
        }
        Some(trail_start)
    }

    /// Propagates `f(sigma_u(v)) = sigma'_{f(u)}(f(v))` for one pair.
    fn force(&mut self, u: usize, v: usize) -> bool {
        let src = self.a.sigma(u, v);
        let dst = self.b.sigma(self.map[u], self.map[v]);
        self.push(src, dst)
    }

    fn push(&mut self, x: usize, y: usize) -> bool {
        if self.map[x] != UNSET {
            return self.map[x] == y;
        }
        if self.used[y] || self.sig_b[y] != self.sig_a[x] {
            return false;
        }
        self.map[x] = y;
        self.used[y] = true;
        self.assigned.push(x);
        true
    }

    fn rollback(&mut self, trail_start: usize) {
        while self.assigned.len() > trail_start {
            let x = self.assigned.pop().expect("trail entry");
            self.used[self.map[x]] = false;
            self.map[x] = UNSET;
        }
    }

    fn solve(&mut self, k: usize) -> bool {
        let x = loop {
            match self.order.get(k) {
                None => return true,
                Some(&x) if self.map[x] == UNSET => break x,
                Some(_) => return self.solve(k + 1),
            }
        };
        for y in 0..self.b.n() {
            if self.used[y] {
                continue;
            }
            if let Some(trail) = self.assign(x, y) {
                if self.solve(k + 1) {
                    return true;
                }
                self.rollback(trail);
            }
        }
        false
    }
}

/// Finds an isomorphism from `a` to `b`, or `None` if there is none
/// (including when the sizes differ).
pub fn isomorphism_search(a: &SolutionTable, b: &SolutionTable) -> Option<Perm> {
    if a.n() != b.n() {
        return None;
    }
    let n = a.n();
    let sig_a = signatures(a);
    let sig_b = signatures(b);
    {
        let mut sa = sig_a.clone();
        let mut sb = sig_b.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return None;
        }
    }

    // Assign rarest signatures first to fail fast.
    let mut order: Vec<usize> = (0..n).collect();
    let bucket_size = |sig: &Signature| sig_a.iter().filter(|s| *s == sig).count();
    order.sort_by_key(|&x| (bucket_size(&sig_a[x]), x));

    let mut search = Search {
        a,
        b,
        sig_a,
        sig_b,
        map: vec![UNSET; n],
        used: vec![false; n],
        assigned: Vec::new(),
        order,
    };
    if !search.solve(0) {
        return None;
    }

    let f = Perm::from_images(&search.map).expect("search produced a bijection");
    assert!(
        is_isomorphism(a, b, &f),
        "propagation closed over sigma, so the full check must pass"
    );
    Some(f)
}

/// Full check that `f` intertwines the two sigma tables.
pub fn is_isomorphism(a: &SolutionTable, b: &SolutionTable, f: &Perm) -> bool {
    if a.n() != b.n() || f.degree() != a.n() {
        return false;
    }
    for x in 0..a.n() {
        for y in 0..a.n() {
            if f.apply(a.sigma(x, y)) != b.sigma(f.apply(x), f.apply(y)) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solution::tests::{cyclic_shift, twist};

    #[test]
    fn solution_is_isomorphic_to_itself() {
        let s = cyclic_shift(4);
        let f = isomorphism_search(&s, &s).unwrap();
        assert!(is_isomorphism(&s, &s, &f));
    }

    #[test]
    fn relabeling_is_found() {
        let s = cyclic_shift(5);
        let pi = Perm::from_images(&[2, 0, 4, 1, 3]).unwrap();
        let t = s.relabel(&pi).unwrap();
        let f = isomorphism_search(&s, &t).unwrap();
        assert!(is_isomorphism(&s, &t, &f));
    }

    #[test]
    fn different_structures_are_distinguished() {
        assert!(isomorphism_search(&cyclic_shift(4), &twist(4)).is_none());
        assert!(isomorphism_search(&cyclic_shift(4), &cyclic_shift(5)).is_none());
        assert!(isomorphism_search(&twist(2), &cyclic_shift(2)).is_none());
    }
}
