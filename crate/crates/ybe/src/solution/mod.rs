//! Finite involutive non-degenerate set-theoretic solutions of the
//! Yang-Baxter equation.
//!
//! A solution on `X = {0, ..., n-1}` is the map `r(x, y) = (sigma_x(y),
//! gamma_y(x))`. Only the `sigma` table is stored externally; `gamma` is
//! forced by involutivity via `gamma_y(x) = sigma_inv_{sigma_x(y)}(x)` and
//! is derived on construction. Verification is exhaustive: bijectivity of
//! every `sigma_x` and `gamma_y`, `r . r = id` on all pairs, and the braid
//! relation `r12 r23 r12 = r23 r12 r23` on all triples, cross-checked
//! against the equivalent symmetry `sigma_a sigma_{sigma_a^-1(c)} =
//! sigma_c sigma_{sigma_c^-1(a)}`.

mod congruence;
mod iso;
mod permgroup;

pub use congruence::{Congruence, is_simple_oracle, principal_congruence, quotient_solution};
pub use iso::{is_isomorphism, isomorphism_search};
pub use permgroup::{is_indecomposable, orbits, permutation_group, PermGroupClosure, DEFAULT_GROUP_CAP};

use crate::perm::Perm;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolutionError {
    #[error("malformed solution table: {0}")]
    Malformed(String),
    #[error("sigma row {x} is not a bijection (value {value} repeated at position {position})")]
    NonBijectiveRow { x: usize, position: usize, value: usize },
    #[error("right degeneracy: gamma_{y} maps both {x1} and {x2} to the same point")]
    RightDegenerate { y: usize, x1: usize, x2: usize },
    #[error("r is not involutive at the pair ({x}, {y})")]
    NotInvolutive { x: usize, y: usize },
    #[error("braid relation fails at the triple ({x}, {y}, {z})")]
    BraidViolation { x: usize, y: usize, z: usize },
    #[error("partition is not a congruence: pairs ({x1}, {y1}) and ({x2}, {y2}) in equal classes map to inequivalent points")]
    NotCongruence { x1: usize, y1: usize, x2: usize, y2: usize },
    #[error("class list is not a partition of the point set")]
    NotAPartition,
    #[error("solutions have different sizes {0} and {1}")]
    SizeMismatch(usize, usize),
}

/// First failure found by the exhaustive sweeps, in scan order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    NonBijectiveRow { x: usize, position: usize, value: usize },
    RightDegenerate { y: usize, x1: usize, x2: usize },
    NotInvolutive { x: usize, y: usize },
    BraidViolation { x: usize, y: usize, z: usize },
}

/// Outcome of the exhaustive checks on a sigma table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub left_nondegenerate: bool,
    pub right_nondegenerate: bool,
    pub involutive: bool,
    pub braid: bool,
    /// Braid relation re-derived through the sigma-only symmetry
    /// `sigma_a sigma_{sigma_a^-1(c)} = sigma_c sigma_{sigma_c^-1(a)}`;
    /// `None` when sigma rows are not invertible.
    pub sigma_symmetry: Option<bool>,
    /// Agreement between the triple sweep and the sigma-only route.
    pub cross_check: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.left_nondegenerate && self.right_nondegenerate && self.involutive && self.braid
    }

    fn error(&self) -> Option<SolutionError> {
        match self.witness.clone()? {
            Witness::NonBijectiveRow { x, position, value } => {
                Some(SolutionError::NonBijectiveRow { x, position, value })
            }
            Witness::RightDegenerate { y, x1, x2 } => {
                Some(SolutionError::RightDegenerate { y, x1, x2 })
            }
            Witness::NotInvolutive { x, y } => Some(SolutionError::NotInvolutive { x, y }),
            Witness::BraidViolation { x, y, z } => Some(SolutionError::BraidViolation { x, y, z }),
        }
    }
}

/// A verified involutive non-degenerate solution.
///
/// `sigma` and `gamma` are flat `n x n` tables: `sigma[x*n + y] =
/// sigma_x(y)` and `gamma[y*n + x] = gamma_y(x)`.
#[derive(Clone, PartialEq, Eq)]
pub struct SolutionTable {
    n: usize,
    sigma: Vec<u16>,
    sigma_inv: Vec<u16>,
    gamma: Vec<u16>,
}

impl std::fmt::Debug for SolutionTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SolutionTable").field("n", &self.n).finish()
    }
}

impl SolutionTable {
    /// Builds a solution from its sigma rows, deriving gamma and running
    /// every check; the first failure is returned with a witness.
    pub fn from_sigma(rows: &[Vec<usize>]) -> Result<SolutionTable, SolutionError> {
        let (table, report) = checked(rows)?;
        match report.error() {
            None => Ok(table.expect("clean report implies a table")),
            Some(e) => Err(e),
        }
    }

    /// Re-runs the exhaustive checks on an already-constructed table.
    pub fn verify(&self) -> VerifyReport {
        verify_rows(&self.sigma_rows()).expect("constructed table has valid shape")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn sigma(&self, x: usize, y: usize) -> usize {
        self.sigma[x * self.n + y] as usize
    }

    #[inline]
    pub fn sigma_inv(&self, x: usize, y: usize) -> usize {
        self.sigma_inv[x * self.n + y] as usize
    }

    #[inline]
    pub fn gamma(&self, y: usize, x: usize) -> usize {
        self.gamma[y * self.n + x] as usize
    }

    /// `r(x, y) = (sigma_x(y), gamma_y(x))`.
    #[inline]
    pub fn r(&self, x: usize, y: usize) -> (usize, usize) {
        (self.sigma(x, y), self.gamma(y, x))
    }

    pub fn sigma_perm(&self, x: usize) -> Perm {
        Perm::from_raw(self.sigma[x * self.n..(x + 1) * self.n].to_vec())
    }

    pub fn gamma_perm(&self, y: usize) -> Perm {
        Perm::from_raw(self.gamma[y * self.n..(y + 1) * self.n].to_vec())
    }

    /// Multiplicative order of `sigma_x`.
    pub fn sigma_order(&self, x: usize) -> u64 {
        self.sigma_perm(x).order()
    }

    pub fn sigma_rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|x| (0..self.n).map(|y| self.sigma(x, y)).collect())
            .collect()
    }

    /// Distinct sigma rows, each paired with the sorted list of points
    /// carrying it.
    pub fn sigma_classes(&self) -> Vec<Vec<usize>> {
        let mut classes: Vec<(Vec<u16>, Vec<usize>)> = Vec::new();
        for x in 0..self.n {
            let row = &self.sigma[x * self.n..(x + 1) * self.n];
            match classes.iter_mut().find(|(r, _)| r == row) {
                Some((_, members)) => members.push(x),
                None => classes.push((row.to_vec(), vec![x])),
            }
        }
        classes.into_iter().map(|(_, members)| members).collect()
    }

    /// The retract: the quotient by the relation `sigma_x = sigma_y`.
    pub fn retract(&self) -> Result<(SolutionTable, Vec<usize>), SolutionError> {
        let classes = self.sigma_classes();
        let cong = Congruence::from_classes(self.n, &classes)?;
        quotient_solution(self, &cong)
    }

    /// True when all sigma rows are distinct.
    pub fn is_irretractable(&self) -> bool {
        self.sigma_classes().len() == self.n
    }

    /// Transport along a relabeling `pi`: the solution with
    /// `sigma'_x(y) = pi(sigma_{pi^-1(x)}(pi^-1(y)))`.
    pub fn relabel(&self, pi: &Perm) -> Result<SolutionTable, SolutionError> {
        assert_eq!(pi.degree(), self.n);
        let inv = pi.inverse();
        let rows: Vec<Vec<usize>> = (0..self.n)
            .map(|x| {
                (0..self.n)
                    .map(|y| pi.apply(self.sigma(inv.apply(x), inv.apply(y))))
                    .collect()
            })
            .collect();
        SolutionTable::from_sigma(&rows)
    }

    /// Sizes of the iterated retracts, starting from `n` and ending at the
    /// first fixed point.
    pub fn retract_tower(&self) -> Result<Vec<usize>, SolutionError> {
        let mut sizes = vec![self.n];
        let mut current = self.clone();
        loop {
            let (next, _) = current.retract()?;
            if next.n() == current.n() {
                return Ok(sizes);
            }
            sizes.push(next.n());
            current = next;
        }
    }
}

/// Exhaustive verification of a sigma table given as rows.
///
/// Shape errors (wrong row count or out-of-range entries) are reported as
/// `Err`; mathematical failures land in the report with a witness.
pub fn verify_rows(rows: &[Vec<usize>]) -> Result<VerifyReport, SolutionError> {
    checked(rows).map(|(_, report)| report)
}

/// Runs every check, returning the table only when all of them pass.
fn checked(
    rows: &[Vec<usize>],
) -> Result<(Option<SolutionTable>, VerifyReport), SolutionError> {
    let n = rows.len();
    if n == 0 {
        return Err(SolutionError::Malformed("empty point set".into()));
    }
    if n > u16::MAX as usize {
        return Err(SolutionError::Malformed(format!(
            "size {n} exceeds the supported maximum"
        )));
    }
    let mut sigma = vec![0u16; n * n];
    for (x, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(SolutionError::Malformed(format!(
                "sigma row {x} has length {} but size is {n}",
                row.len()
            )));
        }
        for (y, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(SolutionError::Malformed(format!(
                    "sigma[{x}][{y}] = {v} out of range"
                )));
            }
            sigma[x * n + y] = v as u16;
        }
    }

    let mut witness = None;
    let note = |w: Witness, slot: &mut Option<Witness>| {
        if slot.is_none() {
            *slot = Some(w);
        }
    };

    // Left non-degeneracy: every sigma row is a bijection.
    let mut left_nondegenerate = true;
    let mut sigma_inv = vec![0u16; n * n];
    'rows: for x in 0..n {
        let mut seen = vec![usize::MAX; n];
        for y in 0..n {
            let v = sigma[x * n + y] as usize;
            if seen[v] != usize::MAX {
                left_nondegenerate = false;
                note(
                    Witness::NonBijectiveRow { x, position: y, value: v },
                    &mut witness,
                );
                continue 'rows;
            }
            seen[v] = y;
            sigma_inv[x * n + v] = y as u16;
        }
    }

    if !left_nondegenerate {
        // gamma cannot be derived without sigma inverses.
        let report = VerifyReport {
            left_nondegenerate,
            right_nondegenerate: false,
            involutive: false,
            braid: false,
            sigma_symmetry: None,
            cross_check: None,
            witness,
        };
        return Ok((None, report));
    }

    // gamma_y(x) = sigma_inv_{sigma_x(y)}(x), with a bijectivity check per
    // column index y.
    let mut gamma = vec![0u16; n * n];
    let mut right_nondegenerate = true;
    for y in 0..n {
        let mut seen = vec![usize::MAX; n];
        for x in 0..n {
            let u = sigma[x * n + y] as usize;
            let g = sigma_inv[u * n + x] as usize;
            gamma[y * n + x] = g as u16;
            if seen[g] != usize::MAX {
                if right_nondegenerate {
                    note(
                        Witness::RightDegenerate { y, x1: seen[g], x2: x },
                        &mut witness,
                    );
                }
                right_nondegenerate = false;
            } else {
                seen[g] = x;
            }
        }
    }

    let table = SolutionTable { n, sigma, sigma_inv, gamma };

    let mut involutive = true;
    'inv: for x in 0..n {
        for y in 0..n {
            let (u, v) = table.r(x, y);
            if table.r(u, v) != (x, y) {
                involutive = false;
                note(Witness::NotInvolutive { x, y }, &mut witness);
                break 'inv;
            }
        }
    }

    let mut braid = true;
    'braid: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if !braid_holds_at(&table, x, y, z) {
                    braid = false;
                    note(Witness::BraidViolation { x, y, z }, &mut witness);
                    break 'braid;
                }
            }
        }
    }

    let sigma_symmetry = sigma_symmetry_holds(&table);
    let report = VerifyReport {
        left_nondegenerate,
        right_nondegenerate,
        involutive,
        braid,
        sigma_symmetry: Some(sigma_symmetry),
        cross_check: Some(sigma_symmetry == braid),
        witness,
    };
    let table = report.ok().then_some(table);
    Ok((table, report))
}

fn braid_holds_at(t: &SolutionTable, x: usize, y: usize, z: usize) -> bool {
    let r12 = |(a, b, c): (usize, usize, usize)| {
        let (u, v) = t.r(a, b);
        (u, v, c)
    };
    let r23 = |(a, b, c): (usize, usize, usize)| {
        let (u, v) = t.r(b, c);
        (a, u, v)
    };
    r12(r23(r12((x, y, z)))) == r23(r12(r23((x, y, z))))
}

/// Checks `sigma_a . sigma_{sigma_a^-1(c)} = sigma_c . sigma_{sigma_c^-1(a)}`
/// for all pairs, the sigma-only equivalent of the braid relation for maps
/// of this involutive shape.
fn sigma_symmetry_holds(t: &SolutionTable) -> bool {
    let n = t.n;
    for a in 0..n {
        for c in a + 1..n {
            let u = t.sigma_inv(a, c);
            let v = t.sigma_inv(c, a);
            for x in 0..n {
                if t.sigma(a, t.sigma(u, x)) != t.sigma(c, t.sigma(v, x)) {
                    return false;
                }
            }
        }
    }
    true
}

/// On-disk form of a solution: `{"size": n, "sigma": [[..]], "label": ..}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionFile {
    pub size: usize,
    pub sigma: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub label: Option<String>,
}

impl SolutionFile {
    pub fn new(table: &SolutionTable, label: Option<String>) -> SolutionFile {
        SolutionFile {
            size: table.n(),
            sigma: table.sigma_rows(),
            label,
        }
    }

    pub fn from_json(json: &str) -> Result<SolutionFile, SolutionError> {
        let file: SolutionFile = serde_json::from_str(json)
            .map_err(|e| SolutionError::Malformed(format!("bad JSON: {e}")))?;
        if file.sigma.len() != file.size {
            return Err(SolutionError::Malformed(format!(
                "size field is {} but sigma has {} rows",
                file.size,
                file.sigma.len()
            )));
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("solution serialization cannot fail")
    }

    pub fn build(&self) -> Result<SolutionTable, SolutionError> {
        SolutionTable::from_sigma(&self.sigma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn twist(n: usize) -> SolutionTable {
        let rows: Vec<Vec<usize>> = (0..n).map(|_| (0..n).collect()).collect();
        SolutionTable::from_sigma(&rows).unwrap()
    }

    pub(crate) fn cyclic_shift(n: usize) -> SolutionTable {
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|_| (0..n).map(|y| (y + 1) % n).collect())
            .collect();
        SolutionTable::from_sigma(&rows).unwrap()
    }

    #[test]
    fn twist_solution_is_valid() {
        let s = twist(4);
        let rep = s.verify();
        assert!(rep.ok(), "{rep:?}");
        assert_eq!(rep.cross_check, Some(true));
        assert_eq!(s.r(1, 3), (3, 1));
    }

    #[test]
    fn one_point_solution_is_valid() {
        let s = SolutionTable::from_sigma(&[vec![0]]).unwrap();
        assert!(s.verify().ok());
    }

    #[test]
    fn cyclic_shift_is_valid_and_retracts_to_a_point() {
        let s = cyclic_shift(4);
        assert!(s.verify().ok());
        // gamma_y(x) = x - 1 here.
        assert_eq!(s.gamma(0, 0), 3);
        assert_eq!(s.retract_tower().unwrap(), vec![4, 1]);
        assert!(!s.is_irretractable());
    }

    #[test]
    fn constant_transposition_is_valid() {
        let s = SolutionTable::from_sigma(&[vec![1, 0], vec![1, 0]]).unwrap();
        assert!(s.verify().ok());
        assert_eq!(s.sigma_order(0), 2);
    }

    #[test]
    fn mixed_rows_fail_right_nondegeneracy() {
        // sigma_0 = id, sigma_1 = (0 1): gamma_0 sends both 0 and 1 to 0.
        let err = SolutionTable::from_sigma(&[vec![0, 1], vec![1, 0]]).unwrap_err();
        assert_eq!(err, SolutionError::RightDegenerate { y: 0, x1: 0, x2: 1 });
        let rep = verify_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(rep.left_nondegenerate);
        assert!(!rep.right_nondegenerate);
        assert!(!rep.braid);
        assert_eq!(rep.cross_check, Some(true));
    }

    #[test]
    fn non_bijective_row_is_rejected_with_witness() {
        let err = SolutionTable::from_sigma(&[vec![0, 0], vec![1, 0]]).unwrap_err();
        assert_eq!(
            err,
            SolutionError::NonBijectiveRow { x: 0, position: 1, value: 0 }
        );
    }

    #[test]
    fn shape_errors_are_malformed() {
        assert!(matches!(
            SolutionTable::from_sigma(&[]),
            Err(SolutionError::Malformed(_))
        ));
        assert!(matches!(
            SolutionTable::from_sigma(&[vec![0], vec![0, 1]]),
            Err(SolutionError::Malformed(_))
        ));
        assert!(matches!(
            SolutionTable::from_sigma(&[vec![2, 0], vec![1, 0]]),
            Err(SolutionError::Malformed(_))
        ));
    }

    #[test]
    fn file_roundtrip_preserves_label() {
        let s = cyclic_shift(3);
        let f = SolutionFile::new(&s, Some("shift".into()));
        let json = f.to_json();
        let back = SolutionFile::from_json(&json).unwrap();
        assert_eq!(back.label.as_deref(), Some("shift"));
        assert_eq!(back.build().unwrap(), s);
    }

    #[test]
    fn file_size_mismatch_is_rejected() {
        let json = r#"{"size": 3, "sigma": [[0, 1], [1, 0]]}"#;
        assert!(SolutionFile::from_json(json).is_err());
    }
}
