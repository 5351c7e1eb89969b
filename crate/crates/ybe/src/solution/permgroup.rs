//! The permutation group generated by the sigma maps of a solution.

use super::{Congruence, SolutionTable};
use crate::perm::Perm;
use indexmap::IndexSet;

/// Default ceiling on the number of explored group elements.
pub const DEFAULT_GROUP_CAP: usize = 10_000_000;

/// Breadth-first closure of the sigma maps under composition.
///
/// When `complete` is false the cap was hit and `elements` holds only the
/// explored part; its length is then a lower bound on the group order.
pub struct PermGroupClosure {
    pub generators: Vec<Perm>,
    pub elements: IndexSet<Perm>,
    pub complete: bool,
    pub cap: usize,
}

impl PermGroupClosure {
    /// Group order; only meaningful when the closure completed.
    pub fn order(&self) -> usize {
        assert!(self.complete, "closure hit the cap of {}", self.cap);
        self.elements.len()
    }

    pub fn explored(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.contains(p)
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.elements.get_index_of(p)
    }
}

/// Closes the distinct sigma maps of `s` under composition, up to `cap`
/// elements. In a finite group the compositions of generators already
/// contain all inverses, so this is the full generated group.
pub fn permutation_group(s: &SolutionTable, cap: usize) -> PermGroupClosure {
    let mut generators: Vec<Perm> = Vec::new();
    for x in 0..s.n() {
        let p = s.sigma_perm(x);
        if !generators.contains(&p) {
            generators.push(p);
        }
    }

    let mut elements: IndexSet<Perm> = IndexSet::new();
    elements.insert(Perm::identity(s.n()));
    let mut next = 0usize;
    let mut complete = true;
    'bfs: while next < elements.len() {
        let current = elements[next].clone();
        next += 1;
        for g in &generators {
            let product = current.compose(g);
            if elements.len() >= cap && !elements.contains(&product) {
                complete = false;
                break 'bfs;
            }
            elements.insert(product);
        }
    }

    PermGroupClosure {
        generators,
        elements,
        complete,
        cap,
    }
}

/// Orbit partition of the point set under the group generated by the
/// sigma maps, in canonical class order.
pub fn orbits(s: &SolutionTable) -> Congruence {
    let n = s.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for x in 0..n {
        for y in 0..n {
            let (rx, ry) = (find(&mut parent, y), find(&mut parent, s.sigma(x, y)));
            if rx != ry {
                let (lo, hi) = (rx.min(ry), rx.max(ry));
                parent[hi] = lo;
            }
        }
    }
    let raw: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    let classes: Vec<Vec<usize>> = {
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            by_root[raw[x]].push(x);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    };
    Congruence::from_classes(n, &classes).expect("orbit classes form a partition")
}

/// A solution is indecomposable when the sigma maps act transitively.
pub fn is_indecomposable(s: &SolutionTable) -> bool {
    orbits(s).is_total()
}
