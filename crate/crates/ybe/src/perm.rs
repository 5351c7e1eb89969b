//! Permutations of `{0, ..., n-1}` stored as image tables.

use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("image table of length {n} is not a bijection: value {value} at position {position}")]
    NotBijective { n: usize, value: usize, position: usize },
    #[error("degree {0} exceeds the supported maximum of 65535")]
    DegreeTooLarge(usize),
}

/// A permutation of `{0, ..., n-1}`; `img[x]` is the image of `x`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<u16>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut wrote = false;
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            wrote = true;
            write!(f, "(")?;
            let mut x = start;
            loop {
                seen[x] = true;
                write!(f, "{x}")?;
                x = self.apply(x);
                if x == start {
                    break;
                }
                write!(f, " ")?;
            }
            write!(f, ")")?;
        }
        if !wrote {
            write!(f, "id")?;
        }
        Ok(())
    }
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        assert!(n <= u16::MAX as usize + 1);
        Perm {
            img: (0..n).map(|x| x as u16).collect(),
        }
    }

    /// Validates that `img` is a bijection of `{0, .., len-1}`.
    pub fn from_images(img: &[usize]) -> Result<Perm, PermError> {
        let n = img.len();
        if n > u16::MAX as usize + 1 {
            return Err(PermError::DegreeTooLarge(n));
        }
        let mut seen = vec![false; n];
        for (position, &value) in img.iter().enumerate() {
            if value >= n || seen[value] {
                return Err(PermError::NotBijective { n, value, position });
            }
            seen[value] = true;
        }
        Ok(Perm {
            img: img.iter().map(|&x| x as u16).collect(),
        })
    }

    pub(crate) fn from_raw(img: Vec<u16>) -> Perm {
        Perm { img }
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    pub fn images(&self) -> &[u16] {
        &self.img
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.img[x] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(x, &y)| x as u16 == y)
    }

    /// `self.compose(other)` applies `other` first: `x -> self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree());
        Perm {
            img: other.img.iter().map(|&x| self.img[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut img = vec![0u16; self.degree()];
        for (x, &y) in self.img.iter().enumerate() {
            img[y as usize] = x as u16;
        }
        Perm { img }
    }

    /// `self` to the `k`-th power; negative `k` uses the inverse.
    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        acc
    }

    /// Cycle lengths in decreasing order, fixed points included.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.apply(x);
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// Multiplicative order: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, len| lcm(acc, len as u64))
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
