//! Solutions on `A x A` built from a symmetric family of group elements.
//!
//! Given a finite abelian group `A` and values `j_a` in `A` with
//! `j_a = j_{-a}`, the map
//!
//! `sigma_{(a1,a2)}(c1,c2) = (c1 + a2, c2 - j_{c1+a2-a1})`
//!
//! defines an involutive non-degenerate solution on `A^2`. Three of its
//! properties have closed-form criteria in terms of the family alone:
//! indecomposability (the `j_a` generate `A`), irretractability (no
//! nonzero shift fixes the whole family), and simplicity (every chain
//! `V_{a,1} <= V_{a,2} <= ...` of difference subgroups climbs to `A`).
//! Every criterion here is cross-checked elsewhere against brute-force
//! oracles on the built tables.

use crate::abelian::{AbElem, AbGroup, AbelianError};
use crate::perm::Perm;
use crate::solution::{SolutionError, SolutionTable};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum A2Error {
    #[error(transparent)]
    Group(#[from] AbelianError),
    #[error(transparent)]
    Solution(#[from] SolutionError),
    #[error("j array has length {got}, group has order {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("family is not symmetric: j at index {a} differs from j at the negated index {neg_a}")]
    NotSymmetric { a: usize, neg_a: usize },
    #[error("j entry {index} is not an element index of the group")]
    JIndexRange { index: usize },
    #[error("criterion requires a nontrivial group")]
    TrivialGroup,
    #[error("chain requires a nonzero element")]
    ZeroShift,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = {p}: k must be odd (requires p congruent to 3 mod 4)")]
    KEven { p: u64 },
    #[error("at least two primes are required")]
    NeedTwoPrimes,
    #[error("primes must be pairwise distinct")]
    RepeatedPrime,
    #[error("modulus {0} is too large")]
    ModulusTooLarge(u64),
}

/// A symmetric family `j: A -> A`, stored by element index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JFamily {
    group: AbGroup,
    values: Vec<AbElem>,
}

impl JFamily {
    /// Validates the length, membership and symmetry `j_a = j_{-a}`.
    pub fn new(group: AbGroup, values: Vec<AbElem>) -> Result<JFamily, A2Error> {
        if values.len() != group.order() {
            return Err(A2Error::WrongLength {
                expected: group.order(),
                got: values.len(),
            });
        }
        for v in &values {
            group.check_elem(v)?;
        }
        for a in 0..group.order() {
            let neg_a = group.index_of(&group.neg(&group.elem_at(a)));
            if values[a] != values[neg_a] {
                return Err(A2Error::NotSymmetric { a: a.min(neg_a), neg_a: a.max(neg_a) });
            }
        }
        Ok(JFamily { group, values })
    }

    /// Builds a family from element indices, the file format's encoding.
    pub fn from_indices(group: AbGroup, indices: &[usize]) -> Result<JFamily, A2Error> {
        let mut values = Vec::with_capacity(indices.len());
        for &i in indices {
            if i >= group.order() {
                return Err(A2Error::JIndexRange { index: i });
            }
            values.push(group.elem_at(i));
        }
        JFamily::new(group, values)
    }

    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    pub fn values(&self) -> &[AbElem] {
        &self.values
    }

    pub fn value(&self, a: &AbElem) -> &AbElem {
        &self.values[self.group.index_of(a)]
    }

    pub fn indices(&self) -> Vec<usize> {
        self.values.iter().map(|v| self.group.index_of(v)).collect()
    }

    /// The point set `A^2` as a product group; point index of `(a1, a2)`
    /// is `index(a1) * |A| + index(a2)`.
    pub fn square_group(&self) -> AbGroup {
        self.group
            .product(&self.group)
            .expect("squaring a valid group cannot overflow here")
    }

    pub fn point_index(&self, a1: &AbElem, a2: &AbElem) -> usize {
        self.group.index_of(a1) * self.group.order() + self.group.index_of(a2)
    }

    pub fn point_at(&self, idx: usize) -> (AbElem, AbElem) {
        let n = self.group.order();
        (self.group.elem_at(idx / n), self.group.elem_at(idx % n))
    }

    /// The solution on `A^2`; the table is re-verified in full.
    pub fn build_solution(&self) -> Result<SolutionTable, A2Error> {
        let g = &self.group;
        let n = g.order();
        let points: Vec<AbElem> = g.elements().collect();
        let mut rows = Vec::with_capacity(n * n);
        for a1 in &points {
            for a2 in &points {
                let mut row = Vec::with_capacity(n * n);
                for c1 in &points {
                    for c2 in &points {
                        let first = g.add(c1, a2);
                        let shift = &self.values[g.index_of(&g.sub(&first, a1))];
                        let second = g.sub(c2, shift);
                        row.push(g.index_of(&first) * n + g.index_of(&second));
                    }
                }
                rows.push(row);
            }
        }
        Ok(SolutionTable::from_sigma(&rows)?)
    }

    /// Direct evaluation of `sigma_{(a1,a2)}(c1,c2)` from the formula.
    pub fn sigma(
        &self,
        a: (&AbElem, &AbElem),
        c: (&AbElem, &AbElem),
    ) -> (AbElem, AbElem) {
        let g = &self.group;
        let first = g.add(c.0, a.1);
        let shift = &self.values[g.index_of(&g.sub(&first, a.0))];
        let second = g.sub(c.1, shift);
        (first, second)
    }

    /// Direct evaluation of the inverse,
    /// `sigma_{(a1,a2)}^-1(c1,c2) = (c1 - a2, c2 + j_{c1-a1})`.
    pub fn sigma_inv(
        &self,
        a: (&AbElem, &AbElem),
        c: (&AbElem, &AbElem),
    ) -> (AbElem, AbElem) {
        let g = &self.group;
        let first = g.sub(c.0, a.1);
        let shift = &self.values[g.index_of(&g.sub(c.0, a.0))];
        let second = g.add(c.1, shift);
        (first, second)
    }
}

/// True iff the `j_a` generate `A`, which holds iff the solution on
/// `A^2` is indecomposable.
pub fn indecomposable_criterion(jf: &JFamily) -> bool {
    jf.group.is_full_subgroup(&jf.values)
}

/// True iff for every nonzero `a` some `c` has `j_c != j_{c+a}`, which
/// holds iff the solution on `A^2` is irretractable.
pub fn irretractable_criterion(jf: &JFamily) -> bool {
    let g = &jf.group;
    for a in g.elements() {
        if a == g.zero() {
            continue;
        }
        let moved = g.elements().any(|c| {
            jf.values[g.index_of(&c)] != jf.values[g.index_of(&g.add(&c, &a))]
        });
        if !moved {
            return false;
        }
    }
    true
}

/// The increasing chain of difference subgroups for a nonzero shift `a`:
/// `V_1` is generated by all `j_c - j_{c+a}`, and `V_i` adds the
/// differences `j_c - j_{c+v}` over `v` in `V_{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VChain {
    pub a: AbElem,
    /// Element-index sets of the stages, strictly increasing.
    pub stages: Vec<Vec<usize>>,
}

impl VChain {
    /// The stabilized subgroup `V_a`.
    pub fn limit(&self) -> &[usize] {
        self.stages.last().expect("chain has at least one stage")
    }

    pub fn is_full(&self, group: &AbGroup) -> bool {
        self.limit().len() == group.order()
    }
}

pub fn v_chain(jf: &JFamily, a: &AbElem) -> Result<VChain, A2Error> {
    let g = &jf.group;
    g.check_elem(a)?;
    if *a == g.zero() {
        return Err(A2Error::ZeroShift);
    }

    let differences_over = |shifts: &[AbElem]| -> Vec<AbElem> {
        let mut gens = Vec::new();
        for v in shifts {
            if *v == g.zero() {
                continue;
            }
            for c in g.elements() {
                let d = g.sub(
                    &jf.values[g.index_of(&c)],
                    &jf.values[g.index_of(&g.add(&c, v))],
                );
                if !gens.contains(&d) {
                    gens.push(d);
                }
            }
        }
        gens
    };

    let mut stages: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = g.subgroup_closure(&differences_over(&[a.clone()]));
    loop {
        stages.push(current.clone());
        let members: Vec<AbElem> = current.iter().map(|&i| g.elem_at(i)).collect();
        let mut gens = members.clone();
        gens.extend(differences_over(&members));
        let next = g.subgroup_closure(&gens);
        if next == current {
            return Ok(VChain { a: a.clone(), stages });
        }
        current = next;
    }
}

/// True iff `V_a = A` for every nonzero `a`; for finite nontrivial `A`
/// this is equivalent to simplicity of the solution on `A^2`.
pub fn simple_criterion(jf: &JFamily) -> Result<bool, A2Error> {
    let g = &jf.group;
    if g.is_trivial() {
        return Err(A2Error::TrivialGroup);
    }
    for a in g.elements() {
        if a == g.zero() {
            continue;
        }
        if !v_chain(jf, &a)?.is_full(g) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The family over `Z/(2p)` with `j_i = -j_{p-i} = -j_{p+i} = j_{2p-i} =
/// 2i - 1` for `i = 1..k` and `j_0 = -j_p = -2 * sum_i (-1)^i j_i`,
/// defined for primes `p = 2k + 1` with `k` odd.
pub fn exsimple_family(p: u64) -> Result<JFamily, A2Error> {
    if !crate::abelian::is_prime(p) {
        return Err(A2Error::NotPrime(p));
    }
    let k = (p - 1) / 2;
    if k % 2 == 0 {
        return Err(A2Error::KEven { p });
    }
    let m = 2 * p;
    if m > u32::MAX as u64 {
        return Err(A2Error::ModulusTooLarge(m));
    }
    let g = AbGroup::cyclic(m as u32)?;
    let (p, k, m) = (p as i64, k as i64, m as i64);

    let mut j = vec![g.zero(); m as usize];
    for i in 1..=k {
        let v = 2 * i - 1;
        j[i as usize] = g.elem(&[v])?;
        j[(p - i) as usize] = g.elem(&[-v])?;
        j[(p + i) as usize] = g.elem(&[-v])?;
        j[(m - i) as usize] = g.elem(&[v])?;
    }
    let alternating: i64 = (1..=k).map(|i| (if i % 2 == 0 { 1 } else { -1 }) * (2 * i - 1)).sum();
    j[0] = g.elem(&[-2 * alternating])?;
    j[p as usize] = g.neg(&j[0]);
    assert_eq!(j[0], g.elem(&[2 * k])?, "j_0 must evaluate to 2k");

    JFamily::new(g, j)
}

/// The family over `Z/(p_1 .. p_n)` whose component at `p_l` is
/// `1 - p_{l+1}` when `p_{l+1}` divides `k` and `1` otherwise (indices
/// cyclic), assembled through the Chinese remainder isomorphism.
pub fn crt_family(primes: &[u64]) -> Result<JFamily, A2Error> {
    if primes.len() < 2 {
        return Err(A2Error::NeedTwoPrimes);
    }
    for (i, &p) in primes.iter().enumerate() {
        if !crate::abelian::is_prime(p) {
            return Err(A2Error::NotPrime(p));
        }
        if primes[i + 1..].contains(&p) {
            return Err(A2Error::RepeatedPrime);
        }
    }
    let m: u64 = primes.iter().product();
    if m > u32::MAX as u64 {
        return Err(A2Error::ModulusTooLarge(m));
    }
    let g = AbGroup::cyclic(m as u32)?;

    let n = primes.len();
    let mut j = Vec::with_capacity(m as usize);
    for k in 0..m {
        let residues: Vec<(i64, i64)> = (0..n)
            .map(|l| {
                let p_l = primes[l] as i64;
                let p_next = primes[(l + 1) % n] as i64;
                let delta = (k as i64) % p_next == 0;
                let r = if delta { 1 - p_next } else { 1 };
                (r.rem_euclid(p_l), p_l)
            })
            .collect();
        j.push(g.elem(&[crt_combine(&residues)])?);
    }
    JFamily::new(g, j)
}

/// Chinese remainder combination for pairwise coprime moduli.
fn crt_combine(residues: &[(i64, i64)]) -> i64 {
    let (mut x, mut m) = residues[0];
    for &(r, p) in &residues[1..] {
        let t = ((r - x).rem_euclid(p) * mod_inverse(m.rem_euclid(p), p)).rem_euclid(p);
        x += m * t;
        m *= p;
    }
    x.rem_euclid(m)
}

fn mod_inverse(a: i64, m: i64) -> i64 {
    // Extended Euclid; moduli are small primes, a is nonzero mod m.
    let (mut old_r, mut r) = (a, m);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    assert_eq!(old_r.abs(), 1, "arguments must be coprime");
    (old_s * old_r.signum()).rem_euclid(m)
}

/// Outcome of the two identities satisfied by the `exsimple` families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingSumReport {
    /// First `u` where `sum_{i=-k}^{k} (-1)^i j_{u+i}` fails to vanish.
    pub failing_u: Option<usize>,
    /// Whether the telescoping product
    /// `sigma_{(-k,0)}^{(-1)^k} ... sigma_{(0,0)}^2 ... sigma_{(k,0)}^{(-1)^k}`
    /// equals `sigma_{(0,0)}` on the built solution.
    pub telescoping: bool,
}

impl AlternatingSumReport {
    pub fn ok(&self) -> bool {
        self.failing_u.is_none() && self.telescoping
    }
}

/// Checks the alternating-sum identity for every `u` in `Z/(2p)` and the
/// telescoping permutation identity on the built solution.
pub fn alternating_sum_check(jf: &JFamily, p: u64) -> Result<AlternatingSumReport, A2Error> {
    let g = jf.group();
    assert_eq!(
        g.moduli(),
        &[2 * p as u32],
        "family must live over Z/(2p)"
    );
    let k = ((p - 1) / 2) as i64;

    let mut failing_u = None;
    for u in 0..g.order() {
        let mut acc = g.zero();
        for i in -k..=k {
            let idx = g.index_of(&g.elem(&[u as i64 + i])?);
            let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
            acc = g.add(&acc, &g.scalar(sign, &jf.values[idx]));
        }
        if acc != g.zero() {
            failing_u = Some(u);
            break;
        }
    }

    let s = jf.build_solution()?;
    let sigma_at = |i: i64| -> Perm {
        let a1 = g.elem(&[i]).expect("cyclic element");
        let idx = jf.point_index(&a1, &g.zero());
        s.sigma_perm(idx)
    };
    let mut product = Perm::identity(s.n());
    for i in (-k..=k).rev() {
        // Terms are applied right to left; exponent of sigma_{(i,0)} is
        // (-1)^|i|, and the center term sigma_{(0,0)} is squared.
        let exp = if i == 0 {
            2
        } else if i.rem_euclid(2) == 0 {
            1
        } else {
            -1
        };
        product = sigma_at(i).pow(exp).compose(&product);
    }
    let telescoping = product == sigma_at(0);

    Ok(AlternatingSumReport { failing_u, telescoping })
}

/// On-disk form of a family: `{"group": "6", "j": [0,2,2,5,2,2]}` with
/// `j` given by element indices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JFamilyFile {
    pub group: String,
    pub j: Vec<usize>,
}

impl JFamilyFile {
    pub fn new(jf: &JFamily) -> JFamilyFile {
        JFamilyFile {
            group: jf.group().literal(),
            j: jf.indices(),
        }
    }

    pub fn from_json(json: &str) -> Result<JFamilyFile, A2Error> {
        serde_json::from_str(json).map_err(|e| {
            A2Error::Solution(SolutionError::Malformed(format!("bad JSON: {e}")))
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("family serialization cannot fail")
    }

    pub fn build(&self) -> Result<JFamily, A2Error> {
        let group = AbGroup::parse(&self.group)?;
        JFamily::from_indices(group, &self.j)
    }
}

/// All symmetric families over `A`: one free value per `{a, -a}` orbit.
pub fn symmetric_families(group: &AbGroup) -> Vec<JFamily> {
    let n = group.order();
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let neg = group.index_of(&group.neg(&group.elem_at(i)));
        let members = if neg == i { vec![i] } else { vec![i, neg] };
        for &m in &members {
            orbit_of[m] = orbits.len();
        }
        orbits.push(members);
    }

    let count = n.pow(orbits.len() as u32);
    let mut families = Vec::with_capacity(count);
    for code in 0..count {
        let mut rest = code;
        let mut values = vec![group.zero(); n];
        for orbit in orbits.iter().rev() {
            let v = group.elem_at(rest % n);
            rest /= n;
            for &m in orbit {
                values[m] = v.clone();
            }
        }
        families.push(JFamily::new(group.clone(), values).expect("symmetric by construction"));
    }
    families
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::solution::{is_indecomposable, is_simple_oracle};

    pub(crate) fn z6_example() -> JFamily {
        let g = AbGroup::cyclic(6).unwrap();
        JFamily::from_indices(g, &[0, 2, 2, 5, 2, 2]).unwrap()
    }

    pub(crate) fn klein_example() -> JFamily {
        let g = AbGroup::parse("2,2").unwrap();
        JFamily::from_indices(g, &[0, 3, 1, 2]).unwrap()
    }

    pub(crate) fn constant_family(group: &AbGroup, value_index: usize) -> JFamily {
        let v = group.elem_at(value_index);
        JFamily::new(group.clone(), vec![v; group.order()]).unwrap()
    }

    #[test]
    fn validation_accepts_the_z6_example_and_rejects_asymmetry() {
        z6_example();
        let g = AbGroup::cyclic(6).unwrap();
        let err = JFamily::from_indices(g.clone(), &[0, 1, 2, 3, 4, 5]).unwrap_err();
        assert_eq!(err, A2Error::NotSymmetric { a: 1, neg_a: 5 });
        constant_family(&g, 4);
    }

    #[test]
    fn z6_sigma_evaluation() {
        let jf = z6_example();
        let g = jf.group().clone();
        let e = |v: i64| g.elem(&[v]).unwrap();
        // sigma_{(0,0)}(1,0) = (1, -j_1) = (1, 4).
        let (x, y) = jf.sigma((&e(0), &e(0)), (&e(1), &e(0)));
        assert_eq!((x, y), (e(1), e(4)));
    }

    #[test]
    fn built_solution_verifies_and_matches_formula() {
        let jf = z6_example();
        let s = jf.build_solution().unwrap();
        assert_eq!(s.n(), 36);
        assert!(s.verify().ok());
        let g = jf.group().clone();
        let e = |v: i64| g.elem(&[v]).unwrap();
        let p = jf.point_index(&e(1), &e(0));
        let q = jf.point_index(&e(1), &e(4));
        assert_eq!(s.sigma(jf.point_index(&e(0), &e(0)), p), q);
    }

    #[test]
    fn sigma_inverse_formula_matches_table() {
        let jf = klein_example();
        let s = jf.build_solution().unwrap();
        for a_idx in 0..s.n() {
            let (a1, a2) = jf.point_at(a_idx);
            for c_idx in 0..s.n() {
                let (c1, c2) = jf.point_at(c_idx);
                let (i1, i2) = jf.sigma_inv((&a1, &a2), (&c1, &c2));
                assert_eq!(s.sigma_inv(a_idx, c_idx), jf.point_index(&i1, &i2));
            }
        }
    }

    #[test]
    fn zero_family_gives_translation_solution() {
        let g = AbGroup::cyclic(2).unwrap();
        let jf = constant_family(&g, 0);
        let s = jf.build_solution().unwrap();
        for a_idx in 0..4 {
            let (_, a2) = jf.point_at(a_idx);
            for c_idx in 0..4 {
                let (c1, c2) = jf.point_at(c_idx);
                let img = jf.point_index(&g.add(&c1, &a2), &c2);
                assert_eq!(s.sigma(a_idx, c_idx), img);
            }
        }
    }

    #[test]
    fn criteria_on_the_named_families() {
        let z6 = z6_example();
        assert!(indecomposable_criterion(&z6));
        assert!(irretractable_criterion(&z6));
        assert!(simple_criterion(&z6).unwrap());

        let klein = klein_example();
        assert!(indecomposable_criterion(&klein));
        assert!(irretractable_criterion(&klein));
        assert!(simple_criterion(&klein).unwrap());

        let zero6 = constant_family(&AbGroup::cyclic(6).unwrap(), 0);
        assert!(!indecomposable_criterion(&zero6));
        assert!(!irretractable_criterion(&zero6));
        assert!(!simple_criterion(&zero6).unwrap());
    }

    #[test]
    fn v_chain_stages_match_hand_computation() {
        let z6 = z6_example();
        let g = z6.group().clone();
        let chain = v_chain(&z6, &g.elem(&[3]).unwrap()).unwrap();
        assert_eq!(chain.stages.len(), 1);
        assert!(chain.is_full(&g));

        let klein = klein_example();
        let kg = klein.group().clone();
        let chain = v_chain(&klein, &kg.elem(&[1, 0]).unwrap()).unwrap();
        assert_eq!(chain.stages.len(), 2);
        assert_eq!(chain.stages[0], vec![0, 1]);
        assert!(chain.is_full(&kg));
    }

    #[test]
    fn v_chain_rejects_zero() {
        let z6 = z6_example();
        let zero = z6.group().zero();
        assert_eq!(v_chain(&z6, &zero).unwrap_err(), A2Error::ZeroShift);
    }

    #[test]
    fn exsimple_p3_matches_the_paper_values() {
        let jf = exsimple_family(3).unwrap();
        assert_eq!(jf.indices(), vec![2, 1, 5, 4, 5, 1]);
        assert!(simple_criterion(&jf).unwrap());
        assert!(irretractable_criterion(&jf));
    }

    #[test]
    fn exsimple_preconditions() {
        assert_eq!(exsimple_family(4).unwrap_err(), A2Error::NotPrime(4));
        assert_eq!(exsimple_family(5).unwrap_err(), A2Error::KEven { p: 5 });
        assert_eq!(exsimple_family(13).unwrap_err(), A2Error::KEven { p: 13 });
        assert!(exsimple_family(7).is_ok());
        assert!(exsimple_family(11).is_ok());
    }

    #[test]
    fn exsimple_p7_is_symmetric_with_expected_values() {
        let jf = exsimple_family(7).unwrap();
        assert_eq!(
            jf.indices(),
            vec![6, 1, 3, 5, 9, 11, 13, 8, 13, 11, 9, 5, 3, 1]
        );
    }

    #[test]
    fn crt_2_3_equals_exsimple_3() {
        let jf = crt_family(&[2, 3]).unwrap();
        assert_eq!(jf.indices(), vec![2, 1, 5, 4, 5, 1]);
        assert_eq!(jf, exsimple_family(3).unwrap());
    }

    #[test]
    fn crt_j0_difference_is_not_invertible() {
        let jf = crt_family(&[2, 3]).unwrap();
        let g = jf.group().clone();
        let d = g.sub(&jf.values()[0], &jf.values()[2]);
        assert_eq!(d, g.elem(&[3]).unwrap());
        // 3 does not generate Z/6, so j_0 - j_{p_1} is not invertible.
        assert!(!g.is_full_subgroup(&[d]));
    }

    #[test]
    fn crt_preconditions() {
        assert_eq!(crt_family(&[3]).unwrap_err(), A2Error::NeedTwoPrimes);
        assert_eq!(crt_family(&[3, 3]).unwrap_err(), A2Error::RepeatedPrime);
        assert_eq!(crt_family(&[4, 3]).unwrap_err(), A2Error::NotPrime(4));
        assert!(crt_family(&[3, 5]).is_ok());
    }

    #[test]
    fn crt_differs_from_exsimple_at_p7() {
        let crt = crt_family(&[2, 7]).unwrap();
        let exs = exsimple_family(7).unwrap();
        assert_eq!(crt.group(), exs.group());
        assert_ne!(crt, exs);
        assert!(simple_criterion(&crt).unwrap());
    }

    #[test]
    fn alternating_sums_hold_for_exsimple_families() {
        for p in [3u64, 7] {
            let jf = exsimple_family(p).unwrap();
            let rep = alternating_sum_check(&jf, p).unwrap();
            assert!(rep.ok(), "p = {p}: {rep:?}");
        }
    }

    #[test]
    fn alternating_sum_detects_perturbation() {
        let jf = exsimple_family(3).unwrap();
        let g = jf.group().clone();
        let mut values = jf.values().to_vec();
        // Perturb the symmetric pair {1, 5} so the family stays valid.
        values[1] = g.add(&values[1], &g.elem(&[2]).unwrap());
        values[5] = values[1].clone();
        let perturbed = JFamily::new(g, values).unwrap();
        let rep = alternating_sum_check(&perturbed, 3).unwrap();
        assert!(rep.failing_u.is_some());
    }

    #[test]
    fn family_file_roundtrip() {
        let jf = z6_example();
        let file = JFamilyFile::new(&jf);
        assert_eq!(file.group, "6");
        assert_eq!(file.j, vec![0, 2, 2, 5, 2, 2]);
        let back = JFamilyFile::from_json(&file.to_json()).unwrap().build().unwrap();
        assert_eq!(back, jf);
    }

    #[test]
    fn symmetric_family_counts() {
        assert_eq!(symmetric_families(&AbGroup::cyclic(2).unwrap()).len(), 4);
        assert_eq!(symmetric_families(&AbGroup::cyclic(3).unwrap()).len(), 9);
        assert_eq!(symmetric_families(&AbGroup::cyclic(4).unwrap()).len(), 64);
        assert_eq!(symmetric_families(&AbGroup::parse("2,2").unwrap()).len(), 256);
        assert_eq!(symmetric_families(&AbGroup::cyclic(6).unwrap()).len(), 1296);
    }

    #[test]
    fn small_census_criteria_match_oracles() {
        for literal in ["2", "3", "2,2"] {
            let group = AbGroup::parse(literal).unwrap();
            for jf in symmetric_families(&group) {
                let s = jf.build_solution().unwrap();
                assert_eq!(
                    simple_criterion(&jf).unwrap(),
                    is_simple_oracle(&s),
                    "simple mismatch over {literal} at {:?}",
                    jf.indices()
                );
                assert_eq!(
                    indecomposable_criterion(&jf),
                    is_indecomposable(&s),
                    "indecomposable mismatch over {literal} at {:?}",
                    jf.indices()
                );
                assert_eq!(
                    irretractable_criterion(&jf),
                    s.is_irretractable(),
                    "irretractable mismatch over {literal} at {:?}",
                    jf.indices()
                );
            }
        }
    }

    #[test]
    fn first_coordinate_blocks_are_preserved() {
        let jf = klein_example();
        let s = jf.build_solution().unwrap();
        let n = jf.group().order();
        let g = crate::solution::permutation_group(&s, 1 << 20);
        assert!(g.complete);
        for p in &g.elements {
            for c1 in 0..n {
                let first = p.apply(c1 * n) / n;
                for c2 in 1..n {
                    assert_eq!(p.apply(c1 * n + c2) / n, first);
                }
            }
        }
    }
}
