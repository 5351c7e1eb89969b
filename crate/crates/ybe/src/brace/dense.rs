//! Braces stored as explicit addition and multiplication tables.

use super::{Brace, BraceError, DENSE_BRACE_CAP};
use serde::{Deserialize, Serialize};

/// A brace realized by dense `n x n` tables, with negation and inversion
/// tables derived at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseBrace {
    n: usize,
    zero: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl DenseBrace {
    /// Builds a brace from row-major tables. This checks shape, locates
    /// the shared neutral element and derives inverses; the algebraic
    /// laws are the business of [`super::verify_axioms`].
    pub fn from_tables(add: &[Vec<usize>], mul: &[Vec<usize>]) -> Result<DenseBrace, BraceError> {
        let n = add.len();
        if n == 0 {
            return Err(BraceError::Malformed("empty table".into()));
        }
        if n > DENSE_BRACE_CAP {
            return Err(BraceError::TooLarge(n));
        }
        if mul.len() != n {
            return Err(BraceError::Malformed(format!(
                "addition table has {n} rows but multiplication has {}",
                mul.len()
            )));
        }
        let mut flat_add = Vec::with_capacity(n * n);
        let mut flat_mul = Vec::with_capacity(n * n);
        for (name, rows, flat) in [
            ("addition", add, &mut flat_add),
            ("multiplication", mul, &mut flat_mul),
        ] {
            for (i, row) in rows.iter().enumerate() {
                if row.len() != n {
                    return Err(BraceError::Malformed(format!(
                        "{name} row {i} has length {} in a table of size {n}",
                        row.len()
                    )));
                }
                for (j, &v) in row.iter().enumerate() {
                    if v >= n {
                        return Err(BraceError::Malformed(format!(
                            "{name} entry ({i}, {j}) = {v} out of range"
                        )));
                    }
                    flat.push(v as u16);
                }
            }
        }

        let zero = (0..n)
            .find(|&e| (0..n).all(|a| flat_add[a * n + e] as usize == a && flat_add[e * n + a] as usize == a))
            .ok_or(BraceError::NoAdditiveNeutral)?;
        let one = (0..n)
            .find(|&e| (0..n).all(|a| flat_mul[a * n + e] as usize == a && flat_mul[e * n + a] as usize == a))
            .ok_or(BraceError::NoMultiplicativeNeutral)?;
        if zero != one {
            return Err(BraceError::NeutralMismatch { zero, one });
        }

        let mut neg = vec![0u16; n];
        let mut inv = vec![0u16; n];
        for a in 0..n {
            neg[a] = (0..n)
                .find(|&x| flat_add[a * n + x] as usize == zero)
                .ok_or(BraceError::MissingInverse { table: "addition", a })? as u16;
            inv[a] = (0..n)
                .find(|&x| flat_mul[a * n + x] as usize == zero)
                .ok_or(BraceError::MissingInverse { table: "multiplication", a })? as u16;
        }

        Ok(DenseBrace { n, zero, add: flat_add, mul: flat_mul, neg, inv })
    }

    /// Densifies any brace realization.
    pub fn from_brace<B: Brace + ?Sized>(b: &B) -> Result<DenseBrace, BraceError> {
        let n = b.order();
        if n > DENSE_BRACE_CAP {
            return Err(BraceError::TooLarge(n));
        }
        let add: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| b.add(i, j)).collect()).collect();
        let mul: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| b.mul(i, j)).collect()).collect();
        DenseBrace::from_tables(&add, &mul)
    }
}

impl Brace for DenseBrace {
    fn order(&self) -> usize {
        self.n
    }
    fn zero(&self) -> usize {
        self.zero
    }
    fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b] as usize
    }
    fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }
    fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }
}

/// On-disk form of a dense brace: both tables, row-major.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DenseBraceFile {
    pub size: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

impl DenseBraceFile {
    pub fn from_json(text: &str) -> Result<DenseBraceFile, BraceError> {
        let file: DenseBraceFile =
            serde_json::from_str(text).map_err(|e| BraceError::Malformed(e.to_string()))?;
        if file.add.len() != file.size {
            return Err(BraceError::Malformed(format!(
                "size field is {} but the addition table has {} rows",
                file.size,
                file.add.len()
            )));
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_brace<B: Brace + ?Sized>(b: &B) -> Result<DenseBraceFile, BraceError> {
        let dense = DenseBrace::from_brace(b)?;
        let n = dense.order();
        Ok(DenseBraceFile {
            size: n,
            add: (0..n).map(|i| (0..n).map(|j| dense.add(i, j)).collect()).collect(),
            mul: (0..n).map(|i| (0..n).map(|j| dense.mul(i, j)).collect()).collect(),
        })
    }

    pub fn build(&self) -> Result<DenseBrace, BraceError> {
        DenseBrace::from_tables(&self.add, &self.mul)
    }
}
