//! Companion-matrix instances of the asymmetric product. For a tuple of
//! distinct primes `p_1, ..., p_n` (indices cyclic), block `j` is the
//! space `(Z/p_j)^(p_{j+1} - 1)` carrying a companion matrix `C_j` of
//! order `p_{j+1}` and a Gram matrix `B_j` it preserves. The product of
//! the blocks, acted on blockwise through the next prime's coordinate
//! and paired by the block sum of the Gram forms, is a brace whose
//! lambda orbit of a distinguished point reproduces the square-carrier
//! solution of the CRT parameter family.
//!
//! A doubled-block variant over the primes 2 and 3 yields a simple
//! brace of order 288 in which no lambda orbit generates the additive
//! group, so "some orbit generates additively" is not necessary for
//! simplicity.

use super::linalg::{det_mod_p, mod_inverse};
use super::{AsymBrace, AsymError, ElemMap};
use crate::a2::{crt_family, A2Error};
use crate::abelian::{is_prime, AbElem, AbGroup};
use crate::brace::{lambda_orbit, solution_from_orbit, Brace};
use crate::perm::Perm;
use crate::solution::{is_isomorphism, isomorphism_search};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

type Mat = Vec<Vec<u32>>;

fn mat_id(k: usize) -> Mat {
    (0..k).map(|i| (0..k).map(|j| u32::from(i == j)).collect()).collect()
}

fn mat_mul(a: &Mat, b: &Mat, p: u32) -> Mat {
    let k = a.len();
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    ((0..k).map(|m| a[i][m] as u64 * b[m][j] as u64).sum::<u64>() % p as u64) as u32
                })
                .collect()
        })
        .collect()
}

fn mat_transpose(a: &Mat) -> Mat {
    let k = a.len();
    (0..k).map(|i| (0..k).map(|j| a[j][i]).collect()).collect()
}

fn mat_vec(a: &Mat, v: &[u32], p: u32) -> Vec<u32> {
    a.iter()
        .map(|row| {
            (row.iter().zip(v).map(|(&m, &x)| m as u64 * x as u64).sum::<u64>() % p as u64) as u32
        })
        .collect()
}

fn bilinear(v: &[u32], b: &Mat, w: &[u32], p: u32) -> u32 {
    let mut acc = 0u64;
    for (i, &vi) in v.iter().enumerate() {
        if vi == 0 {
            continue;
        }
        for (j, &wj) in w.iter().enumerate() {
            acc += vi as u64 * b[i][j] as u64 % p as u64 * wj as u64;
        }
    }
    (acc % p as u64) as u32
}

/// The companion and Gram matrices for a prime tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompanionData {
    pub primes: Vec<u64>,
    /// Block sizes `p_{j+1} - 1`.
    pub block_sizes: Vec<usize>,
    pub companions: Vec<Mat>,
    pub grams: Vec<Mat>,
}

pub fn companion_data(primes: &[u64]) -> Result<CompanionData, AsymError> {
    if primes.len() < 2 {
        return Err(A2Error::NeedTwoPrimes.into());
    }
    for (i, &p) in primes.iter().enumerate() {
        if !is_prime(p) {
            return Err(A2Error::NotPrime(p).into());
        }
        if primes[..i].contains(&p) {
            return Err(A2Error::RepeatedPrime.into());
        }
    }
    let n = primes.len();
    let mut block_sizes = Vec::with_capacity(n);
    let mut companions = Vec::with_capacity(n);
    let mut grams = Vec::with_capacity(n);
    for j in 0..n {
        let p = primes[j] as u32;
        let pn = primes[(j + 1) % n] as u32;
        let k = (pn - 1) as usize;
        // Row i: +1 in column i-1, -1 in the last column.
        let c: Mat = (0..k)
            .map(|i| {
                (0..k)
                    .map(|m| {
                        let plus = u32::from(i >= 1 && m == i - 1);
                        let minus = u32::from(m == k - 1);
                        (plus + p - minus) % p
                    })
                    .collect()
            })
            .collect();
        // All-ones matrix minus p_{j+1} on the diagonal.
        let b: Mat = (0..k)
            .map(|u| {
                (0..k)
                    .map(|v| {
                        let diag = if u == v { pn % p } else { 0 };
                        (1 + p - diag) % p
                    })
                    .collect()
            })
            .collect();
        block_sizes.push(k);
        companions.push(c);
        grams.push(b);
    }
    Ok(CompanionData { primes: primes.to_vec(), block_sizes, companions, grams })
}

impl CompanionData {
    fn p(&self, j: usize) -> u32 {
        self.primes[j] as u32
    }

    fn p_next(&self, j: usize) -> u32 {
        self.primes[(j + 1) % self.primes.len()] as u32
    }

    /// `C_j^0, ..., C_j^(p_{j+1} - 1)`.
    fn powers(&self, j: usize) -> Vec<Mat> {
        let mut pows = vec![mat_id(self.block_sizes[j])];
        for _ in 1..self.p_next(j) {
            pows.push(mat_mul(pows.last().unwrap(), &self.companions[j], self.p(j)));
        }
        pows
    }

    /// The companion matrix has multiplicative order `p_{j+1}`.
    pub fn companion_order_ok(&self, j: usize) -> bool {
        let pows = self.powers(j);
        let id = mat_id(self.block_sizes[j]);
        self.companions[j] != id
            && mat_mul(pows.last().unwrap(), &self.companions[j], self.p(j)) == id
    }

    /// `C^t B C = B`: the rotation preserves the form.
    pub fn gram_conjugation_ok(&self, j: usize) -> bool {
        let c = &self.companions[j];
        let ct = mat_transpose(c);
        mat_mul(&mat_mul(&ct, &self.grams[j], self.p(j)), c, self.p(j)) == self.grams[j]
    }

    /// For odd `p_j` the Gram matrix equals
    /// `-1/2 * sum_t (C^t)^T C^t` over a full period of `C`.
    pub fn gram_sum_ok(&self, j: usize) -> Option<bool> {
        let p = self.p(j);
        if p == 2 {
            return None;
        }
        let k = self.block_sizes[j];
        let mut acc = vec![vec![0u32; k]; k];
        for powc in self.powers(j) {
            let term = mat_mul(&mat_transpose(&powc), &powc, p);
            for u in 0..k {
                for v in 0..k {
                    acc[u][v] = (acc[u][v] + term[u][v]) % p;
                }
            }
        }
        let neg_half = (p as u64 - 1) * mod_inverse(2, p) as u64 % p as u64;
        for row in acc.iter_mut() {
            for entry in row.iter_mut() {
                *entry = (*entry as u64 * neg_half % p as u64) as u32;
            }
        }
        Some(acc == self.grams[j])
    }

    /// `det B_j = -(-p_{j+1})^(p_{j+1} - 2)` modulo `p_j`.
    pub fn det_ok(&self, j: usize) -> bool {
        let p = self.p(j);
        let pn = self.p_next(j);
        let base = (p - pn % p) % p;
        let mut val = 1u64;
        for _ in 0..pn - 2 {
            val = val * base as u64 % p as u64;
        }
        let expected = (p as u64 - val) % p as u64;
        det_mod_p(&self.grams[j], p) as u64 == expected
    }

    pub fn all_invariants_ok(&self) -> bool {
        (0..self.primes.len()).all(|j| {
            self.companion_order_ok(j)
                && self.gram_conjugation_ok(j)
                && self.gram_sum_ok(j).unwrap_or(true)
                && self.det_ok(j)
        })
    }
}

/// Start offset of each listed block inside the `T` coordinates.
fn offsets(data: &CompanionData, blocks: &[usize]) -> Vec<usize> {
    let mut off = Vec::with_capacity(blocks.len());
    let mut acc = 0;
    for &j in blocks {
        off.push(acc);
        acc += data.block_sizes[j];
    }
    off
}

/// Assembles the brace for a list of blocks (repetition allowed; block
/// `j` may appear several times and each copy pairs into the `H`
/// component of prime `p_j`).
fn build_block_brace(data: &CompanionData, blocks: &[usize]) -> Result<AsymBrace, AsymError> {
    let n = data.primes.len();
    let mut t_moduli = Vec::new();
    for &j in blocks {
        t_moduli.extend(std::iter::repeat(data.p(j)).take(data.block_sizes[j]));
    }
    let t = AbGroup::new(t_moduli).map_err(A2Error::from)?;
    let h = AbGroup::new(data.primes.iter().map(|&p| p as u32).collect())
        .map_err(A2Error::from)?;

    let off = offsets(data, blocks);
    let sizes: Vec<usize> = blocks.iter().map(|&j| data.block_sizes[j]).collect();
    let ps: Vec<u32> = blocks.iter().map(|&j| data.p(j)).collect();
    let comps: Vec<usize> = blocks.to_vec();
    let exps: Vec<usize> = blocks.iter().map(|&j| (j + 1) % n).collect();
    let pows: Vec<Vec<Mat>> = blocks.iter().map(|&j| data.powers(j)).collect();
    let grams: Vec<Mat> = blocks.iter().map(|&j| data.grams[j].clone()).collect();

    let (off_a, sz_a, ps_a) = (off.clone(), sizes.clone(), ps.clone());
    let alpha: ElemMap = Arc::new(move |a: &AbElem, f: &AbElem| {
        let mut out = f.coords().to_vec();
        for (bi, &o) in off_a.iter().enumerate() {
            let e = a.coords()[exps[bi]] as usize;
            let block = &f.coords()[o..o + sz_a[bi]];
            out[o..o + sz_a[bi]].copy_from_slice(&mat_vec(&pows[bi][e], block, ps_a[bi]));
        }
        AbElem(out)
    });

    let form: ElemMap = Arc::new(move |f: &AbElem, g: &AbElem| {
        let mut out = vec![0u32; n];
        for (bi, &o) in off.iter().enumerate() {
            let fb = &f.coords()[o..o + sizes[bi]];
            let gb = &g.coords()[o..o + sizes[bi]];
            let v = bilinear(fb, &grams[bi], gb, ps[bi]);
            out[comps[bi]] = (out[comps[bi]] + v) % ps[bi];
        }
        AbElem(out)
    });

    Ok(AsymBrace::new(t, h, alpha, form))
}

/// The brace with one block per prime; its order is the product of
/// `p_j^(p_{j+1})`.
pub fn theorem_example_brace(primes: &[u64]) -> Result<AsymBrace, AsymError> {
    let data = companion_data(primes)?;
    let blocks: Vec<usize> = (0..primes.len()).collect();
    build_block_brace(&data, &blocks)
}

/// The brace over two primes with the first block doubled: carrier
/// `V1 x V1 x V2` against `Z/(p1 p2)`. Simple, yet no lambda orbit
/// generates it additively. The second prime must be odd.
pub fn mod6_counterexample_brace(p1: u64, p2: u64) -> Result<AsymBrace, AsymError> {
    if p2 == 2 {
        return Err(AsymError::SecondPrimeEven);
    }
    let data = companion_data(&[p1, p2])?;
    build_block_brace(&data, &[0, 0, 1])
}

/// Outcome of matching the lambda orbit of the distinguished point
/// against the CRT parameter-family solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitIsoReport {
    pub primes: Vec<u64>,
    pub brace_order: usize,
    pub expected_brace_order: usize,
    pub orbit_size: usize,
    pub expected_orbit_size: usize,
    /// The coordinate-built map is a solution isomorphism.
    pub explicit_iso: bool,
    /// The backtracking search also finds one.
    pub search_found: bool,
}

impl OrbitIsoReport {
    pub fn ok(&self) -> bool {
        self.brace_order == self.expected_brace_order
            && self.orbit_size == self.expected_orbit_size
            && self.explicit_iso
            && self.search_found
    }
}

/// The one-block-per-prime brace together with the lambda orbit of the
/// distinguished point `((e_1, ..., e_1), 0)`.
pub fn theorem_example_orbit(primes: &[u64]) -> Result<(AsymBrace, Vec<usize>), AsymError> {
    let data = companion_data(primes)?;
    let brace = theorem_example_brace(primes)?;
    let order = Brace::order(&brace);
    if order > 100_000 {
        return Err(AsymError::EnumerationTooLarge(order));
    }
    let off = offsets(&data, &(0..primes.len()).collect::<Vec<_>>());
    let mut f0 = vec![0u32; brace.t().rank()];
    for (j, &o) in off.iter().enumerate() {
        f0[o] = 1 % data.p(j);
    }
    let x0 = brace.encode(&AbElem(f0), &brace.h().zero());
    let orbit = lambda_orbit(&brace, x0);
    Ok((brace, orbit))
}

/// Computes the lambda orbit of `((e_1, ..., e_1), 0)`, restricts the
/// associated solution to it, and matches it against the square-carrier
/// solution of the CRT family: explicitly, by reading each orbit element
/// as a pair (rotation exponents, `H` part) and rotating the exponents
/// one prime slot forward; and independently by isomorphism search.
pub fn theorem_example_solution_iso(primes: &[u64]) -> Result<OrbitIsoReport, AsymError> {
    let data = companion_data(primes)?;
    let (brace, orbit) = theorem_example_orbit(primes)?;
    let order = Brace::order(&brace);
    let n = primes.len();
    let off = offsets(&data, &(0..n).collect::<Vec<_>>());
    let sol = solution_from_orbit(&brace, &orbit)?;

    let jf = crt_family(primes)?;
    let target = jf.build_solution()?;
    let m: usize = primes.iter().product::<u64>() as usize;

    // Per block, the images of the first basis vector under all powers.
    let cands: Vec<Vec<Vec<u32>>> = (0..n)
        .map(|j| {
            let mut e1 = vec![0u32; data.block_sizes[j]];
            e1[0] = 1 % data.p(j);
            data.powers(j).iter().map(|c| mat_vec(c, &e1, data.p(j))).collect()
        })
        .collect();

    let mut images = Vec::with_capacity(orbit.len());
    let mut decodable = true;
    for &ci in &orbit {
        let (f, a) = brace.decode(ci);
        let v2 = (0..m)
            .find(|&v| (0..n).all(|l| v as u64 % primes[l] == a.coords()[l] as u64));
        let mut ts = vec![0usize; n];
        let mut found = true;
        for j in 0..n {
            let block = &f.coords()[off[j]..off[j] + data.block_sizes[j]];
            match cands[j].iter().position(|c| c == block) {
                Some(tj) => ts[j] = tj,
                None => {
                    found = false;
                    break;
                }
            }
        }
        // Rotation: the residue of the first coordinate at p_l is the
        // exponent of the previous block.
        let v1 = (0..m).find(|&v| {
            (0..n).all(|l| {
                let src = (l + n - 1) % n;
                v as u64 % primes[l] == ts[src] as u64 % primes[l]
            })
        });
        match (v1, v2, found) {
            (Some(v1), Some(v2), true) => images.push(v1 * m + v2),
            _ => {
                decodable = false;
                images.push(0);
            }
        }
    }

    let explicit_iso = decodable
        && Perm::from_images(&images)
            .map(|p| is_isomorphism(&sol, &target, &p))
            .unwrap_or(false);
    let search_found = isomorphism_search(&sol, &target).is_some();

    let expected_brace_order: usize = (0..n)
        .map(|j| (primes[j] as usize).pow(primes[(j + 1) % n] as u32))
        .product();
    let expected_orbit_size: usize = primes.iter().map(|&p| (p * p) as usize).product();
    Ok(OrbitIsoReport {
        primes: primes.to_vec(),
        brace_order: order,
        expected_brace_order,
        orbit_size: orbit.len(),
        expected_orbit_size,
        explicit_iso,
        search_found,
    })
}
