//! Finite abelian groups presented as explicit products of cyclic groups.
//!
//! A group is a list of moduli `[n_1, ..., n_k]` standing for
//! `Z/n_1 x ... x Z/n_k`; elements are coordinate vectors reduced mod the
//! moduli. Two groups are equal only if their moduli lists are equal: no
//! normal-form canonicalization is performed, so `Z/2 x Z/3` and `Z/6` are
//! distinct for I/O purposes and isomorphism questions go through explicit
//! maps.
//!
//! Elements are indexed in mixed radix with the last coordinate varying
//! fastest; every enumeration in this crate follows that order.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Largest group order for which dense element tables are allocated.
pub const DENSE_ORDER_CAP: usize = 1 << 27;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AbelianError {
    #[error("modulus 0 is not allowed")]
    ZeroModulus,
    #[error("group order overflows a machine word")]
    OrderOverflow,
    #[error("element has {got} coordinates, group has {expected}")]
    WrongArity { expected: usize, got: usize },
    #[error("coordinate {value} out of range for modulus {modulus}")]
    CoordRange { value: u32, modulus: u32 },
    #[error("element index {index} out of range for group of order {order}")]
    IndexRange { index: usize, order: usize },
    #[error("cannot parse group literal {0:?}: expected comma-separated moduli like \"6\" or \"2,2\"")]
    BadLiteral(String),
    #[error("group of order {0} is too large for dense enumeration")]
    TooLarge(usize),
}

/// Element of an [`AbGroup`], stored as one coordinate per modulus.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbElem(pub Vec<u32>);

impl AbElem {
    pub fn coords(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Debug for AbElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Finite abelian group `Z/n_1 x ... x Z/n_k` with componentwise ring
/// multiplication (the product ring structure).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AbGroup {
    moduli: Vec<u32>,
    order: usize,
}

impl fmt::Debug for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbGroup({})", self.literal())
    }
}

impl AbGroup {
    pub fn new(moduli: Vec<u32>) -> Result<Self, AbelianError> {
        if moduli.contains(&0) {
            return Err(AbelianError::ZeroModulus);
        }
        let mut order = 1usize;
        for &m in &moduli {
            order = order
                .checked_mul(m as usize)
                .ok_or(AbelianError::OrderOverflow)?;
        }
        Ok(AbGroup { moduli, order })
    }

    pub fn cyclic(n: u32) -> Result<Self, AbelianError> {
        Self::new(vec![n])
    }

    /// The one-element group (empty moduli list).
    pub fn trivial() -> Self {
        AbGroup { moduli: vec![], order: 1 }
    }

    /// Parses a comma-separated moduli literal such as `"6"` or `"2,2"`.
    pub fn parse(s: &str) -> Result<Self, AbelianError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(AbelianError::BadLiteral(s.to_string()));
        }
        let mut moduli = Vec::new();
        for part in s.split(',') {
            let m: u32 = part
                .trim()
                .parse()
                .map_err(|_| AbelianError::BadLiteral(s.to_string()))?;
            moduli.push(m);
        }
        Self::new(moduli)
    }

    /// Comma-separated moduli, the inverse of [`AbGroup::parse`].
    pub fn literal(&self) -> String {
        self.moduli
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// The direct product, concatenating moduli lists.
    pub fn product(&self, other: &AbGroup) -> Result<AbGroup, AbelianError> {
        let mut moduli = self.moduli.clone();
        moduli.extend_from_slice(&other.moduli);
        AbGroup::new(moduli)
    }

    /// The direct power `G^k` (moduli list repeated `k` times).
    pub fn power(&self, k: usize) -> Result<AbGroup, AbelianError> {
        let mut moduli = Vec::with_capacity(self.moduli.len() * k);
        for _ in 0..k {
            moduli.extend_from_slice(&self.moduli);
        }
        AbGroup::new(moduli)
    }

    pub fn zero(&self) -> AbElem {
        AbElem(vec![0; self.moduli.len()])
    }

    /// Builds an element from signed coordinates, reducing each mod its
    /// modulus.
    pub fn elem(&self, coords: &[i64]) -> Result<AbElem, AbelianError> {
        if coords.len() != self.moduli.len() {
            return Err(AbelianError::WrongArity {
                expected: self.moduli.len(),
                got: coords.len(),
            });
        }
        let v = coords
            .iter()
            .zip(&self.moduli)
            .map(|(&c, &m)| c.rem_euclid(m as i64) as u32)
            .collect();
        Ok(AbElem(v))
    }

    /// Checks arity and coordinate ranges.
    pub fn check_elem(&self, e: &AbElem) -> Result<(), AbelianError> {
        if e.0.len() != self.moduli.len() {
            return Err(AbelianError::WrongArity {
                expected: self.moduli.len(),
                got: e.0.len(),
            });
        }
        for (&c, &m) in e.0.iter().zip(&self.moduli) {
            if c >= m {
                return Err(AbelianError::CoordRange { value: c, modulus: m });
            }
        }
        Ok(())
    }

    pub fn contains(&self, e: &AbElem) -> bool {
        self.check_elem(e).is_ok()
    }

    fn assert_elem(&self, e: &AbElem) {
        debug_assert!(
            self.contains(e),
            "element {e:?} does not belong to {self:?}"
        );
    }

    pub fn add(&self, a: &AbElem, b: &AbElem) -> AbElem {
        self.assert_elem(a);
        self.assert_elem(b);
        AbElem(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.moduli)
                .map(|((&x, &y), &m)| {
                    let s = x as u64 + y as u64;
                    (s % m as u64) as u32
                })
                .collect(),
        )
    }

    /// Like [`AbGroup::add`] but reports mismatched operands as an error
    /// instead of a debug assertion.
    pub fn checked_add(&self, a: &AbElem, b: &AbElem) -> Result<AbElem, AbelianError> {
        self.check_elem(a)?;
        self.check_elem(b)?;
        Ok(self.add(a, b))
    }

    pub fn neg(&self, a: &AbElem) -> AbElem {
        self.assert_elem(a);
        AbElem(
            a.0.iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| if x == 0 { 0 } else { m - x })
                .collect(),
        )
    }

    pub fn sub(&self, a: &AbElem, b: &AbElem) -> AbElem {
        self.add(a, &self.neg(b))
    }

    /// Componentwise product in the product ring `Z/n_1 x ... x Z/n_k`.
    pub fn ring_mul(&self, a: &AbElem, b: &AbElem) -> AbElem {
        self.assert_elem(a);
        self.assert_elem(b);
        AbElem(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.moduli)
                .map(|((&x, &y), &m)| ((x as u64 * y as u64) % m as u64) as u32)
                .collect(),
        )
    }

    pub fn scalar(&self, k: i64, a: &AbElem) -> AbElem {
        self.assert_elem(a);
        AbElem(
            a.0.iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| {
                    let m = m as i64;
                    ((k % m) * (x as i64) % m).rem_euclid(m) as u32
                })
                .collect(),
        )
    }

    /// Mixed-radix index of an element, last coordinate fastest.
    pub fn index_of(&self, e: &AbElem) -> usize {
        self.assert_elem(e);
        let mut idx = 0usize;
        for (&c, &m) in e.0.iter().zip(&self.moduli) {
            idx = idx * m as usize + c as usize;
        }
        idx
    }

    /// Inverse of [`AbGroup::index_of`]; panics if `idx >= order`.
    pub fn elem_at(&self, idx: usize) -> AbElem {
        assert!(idx < self.order, "index {idx} out of range 0..{}", self.order);
        let mut coords = vec![0u32; self.moduli.len()];
        let mut rest = idx;
        for (slot, &m) in coords.iter_mut().zip(&self.moduli).rev() {
            *slot = (rest % m as usize) as u32;
            rest /= m as usize;
        }
        AbElem(coords)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = AbElem> + '_ {
        (0..self.order).map(move |i| self.elem_at(i))
    }

    /// The subgroup generated by `gens`, returned as a sorted list of
    /// element indices.
    pub fn subgroup_closure(&self, gens: &[AbElem]) -> Vec<usize> {
        assert!(
            self.order <= DENSE_ORDER_CAP,
            "{}",
            AbelianError::TooLarge(self.order)
        );
        for g in gens {
            self.assert_elem(g);
        }
        let mut member = vec![false; self.order];
        member[self.index_of(&self.zero())] = true;
        let mut frontier = vec![self.zero()];
        while let Some(e) = frontier.pop() {
            for g in gens {
                let next = self.add(&e, g);
                let idx = self.index_of(&next);
                if !member[idx] {
                    member[idx] = true;
                    frontier.push(next);
                }
            }
        }
        member
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect()
    }

    pub fn is_full_subgroup(&self, gens: &[AbElem]) -> bool {
        self.subgroup_closure(gens).len() == self.order
    }
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// increasing prime order.
pub fn factor(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2u32;
    while p as u64 * p as u64 <= n as u64 {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_is_mixed_radix_last_fastest() {
        let g = AbGroup::parse("2,3").unwrap();
        let elems: Vec<Vec<u32>> = g.elements().map(|e| e.0).collect();
        assert_eq!(
            elems,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![0, 2],
                vec![1, 0],
                vec![1, 1],
                vec![1, 2]
            ]
        );
    }

    #[test]
    fn index_roundtrip() {
        let g = AbGroup::parse("4,2,3").unwrap();
        for i in 0..g.order() {
            assert_eq!(g.index_of(&g.elem_at(i)), i);
        }
    }

    #[test]
    fn group_laws_on_z6() {
        let g = AbGroup::cyclic(6).unwrap();
        for a in g.elements() {
            assert_eq!(g.add(&a, &g.zero()), a);
            assert_eq!(g.add(&a, &g.neg(&a)), g.zero());
            for b in g.elements() {
                assert_eq!(g.add(&a, &b), g.add(&b, &a));
                for c in g.elements() {
                    assert_eq!(
                        g.add(&g.add(&a, &b), &c),
                        g.add(&a, &g.add(&b, &c))
                    );
                }
            }
        }
    }

    #[test]
    fn ring_mul_is_componentwise() {
        let g = AbGroup::parse("2,3").unwrap();
        let a = g.elem(&[1, 2]).unwrap();
        let b = g.elem(&[1, 2]).unwrap();
        assert_eq!(g.ring_mul(&a, &b), g.elem(&[1, 1]).unwrap());
    }

    #[test]
    fn elem_reduces_signed_coords() {
        let g = AbGroup::cyclic(6).unwrap();
        assert_eq!(g.elem(&[-2]).unwrap(), g.elem(&[4]).unwrap());
    }

    #[test]
    fn mismatched_arity_is_an_error() {
        let g = AbGroup::parse("2,3").unwrap();
        let h = AbGroup::cyclic(6).unwrap();
        let a = g.zero();
        let b = h.zero();
        assert_eq!(
            g.checked_add(&a, &b),
            Err(AbelianError::WrongArity { expected: 2, got: 1 })
        );
    }

    #[test]
    fn closure_of_two_in_z6() {
        let g = AbGroup::cyclic(6).unwrap();
        let two = g.elem(&[2]).unwrap();
        assert_eq!(g.subgroup_closure(&[two]), vec![0, 2, 4]);
        let one = g.elem(&[1]).unwrap();
        assert!(g.is_full_subgroup(&[one]));
    }

    #[test]
    fn closure_in_product_group() {
        let g = AbGroup::parse("2,2").unwrap();
        let e1 = g.elem(&[1, 0]).unwrap();
        assert_eq!(g.subgroup_closure(&[e1.clone()]), vec![0, 2]);
        let e2 = g.elem(&[0, 1]).unwrap();
        assert!(g.is_full_subgroup(&[e1, e2]));
        assert!(!g.is_full_subgroup(&[g.elem(&[1, 1]).unwrap()]));
    }

    #[test]
    fn lagrange_on_small_groups() {
        for literal in ["4", "2,2", "6", "2,3", "5", "8", "2,4"] {
            let g = AbGroup::parse(literal).unwrap();
            for a in g.elements() {
                let n = g.subgroup_closure(&[a]).len();
                assert_eq!(g.order() % n, 0, "Lagrange fails in {literal}");
            }
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(AbGroup::parse("").is_err());
        assert!(AbGroup::parse("2,x").is_err());
        assert!(AbGroup::parse("0").is_err());
        assert_eq!(AbGroup::parse(" 2, 3 ").unwrap().literal(), "2,3");
    }

    #[test]
    fn trivial_group() {
        let g = AbGroup::trivial();
        assert_eq!(g.order(), 1);
        assert!(g.is_trivial());
        assert_eq!(g.index_of(&g.zero()), 0);
    }

    #[test]
    fn factor_and_primality() {
        assert_eq!(factor(1), vec![]);
        assert_eq!(factor(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factor(14), vec![(2, 1), (7, 1)]);
        assert!(is_prime(7));
        assert!(!is_prime(1));
        assert!(!is_prime(9));
    }
}
