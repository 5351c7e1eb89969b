//! The brace attached to a symmetric parameter family: `T = A^A` acted
//! on by `H = A` through index shifts, with the form
//! `b(f, g) = sum_{x,y} f(x) j_{x-y} g(y)` (products in the component
//! ring of `A`). The basis functions `e_a` (indicator of `a` with ring
//! unit value) together with the `H` part realize the square-carrier
//! solution inside the brace: the pairs `(e_a, c)` map to its sigma
//! permutations.
//!
//! The permutation group of the solution is modeled by the additive
//! span of those pairs modulo its socle. The span's function parts are
//! exactly the unit-multiple functions `A -> Z*1`, a copy of `(Z/L)^A`
//! for `L` the exponent of `A`; its socle is the kernel of the group
//! matrix `J[c][x] = j_{x-c}` restricted to that copy, paired with a
//! zero shift. The quotient is realized either through prime-field
//! linear algebra (squarefree exponent) or through dense coset tables
//! (small carriers). The unrestricted kernel inside all of `A^A` is
//! computed separately, with brute-force enumeration as the oracle of
//! record for the linear-algebra description.

use super::linalg::nullspace_mod_p;
use super::{AsymBrace, AsymError};
use crate::a2::{simple_criterion, JFamily};
use crate::abelian::{factor, AbElem, AbGroup};
use crate::brace::{
    difference_span_certificate, generates_additively, quotient_brace, Brace, CertificateReport,
    DenseBrace, DENSE_BRACE_CAP,
};
use crate::perm::Perm;
use crate::solution::permutation_group;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Ceiling on `|A|^|A|` for brute-force kernel enumeration.
pub const ENUMERATION_CAP: usize = 1 << 20;

/// Ceiling on the quotient order for the difference-span certificate,
/// which keeps a dense membership table of the span.
pub const CERTIFICATE_CAP: usize = 1 << 24;

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Shared tables for one parameter family: the value list, index
/// arithmetic of `A`, and the function-space group.
struct JData {
    a: AbGroup,
    t: AbGroup,
    jvals: Vec<AbElem>,
    /// Exponent of `A` = order of the cyclic subgroup `Z*1`.
    l: u32,
    /// `diff[x * n + y]` is the index of `x - y`.
    diff: Vec<u32>,
    /// `sum[x * n + y]` is the index of `x + y`.
    sum: Vec<u32>,
}

impl JData {
    fn new(jf: &JFamily) -> Result<Arc<JData>, AsymError> {
        let a = jf.group().clone();
        let n = a.order();
        let t = a.power(n)?;
        let jvals = jf.values().to_vec();
        let l = a.moduli().iter().fold(1u32, |acc, &m| acc / gcd(acc, m) * m);
        let mut diff = vec![0u32; n * n];
        let mut sum = vec![0u32; n * n];
        for x in 0..n {
            let xe = a.elem_at(x);
            for y in 0..n {
                let ye = a.elem_at(y);
                diff[x * n + y] = a.index_of(&a.sub(&xe, &ye)) as u32;
                sum[x * n + y] = a.index_of(&a.add(&xe, &ye)) as u32;
            }
        }
        Ok(Arc::new(JData { a, t, jvals, l, diff, sum }))
    }

    fn n(&self) -> usize {
        self.a.order()
    }

    fn rank(&self) -> usize {
        self.a.rank()
    }

    fn neg_idx(&self, x: usize) -> usize {
        self.diff[x] as usize // diff[0 * n + x] = index of -x
    }

    /// `alpha_a(f)(x) = f(x - a)`.
    fn alpha_shift(&self, a_idx: usize, f: &[u32]) -> Vec<u32> {
        let (n, r) = (self.n(), self.rank());
        let mut out = vec![0u32; n * r];
        for x in 0..n {
            let src = self.diff[x * n + a_idx] as usize;
            out[x * r..(x + 1) * r].copy_from_slice(&f[src * r..(src + 1) * r]);
        }
        out
    }

    /// `b(f, g)` as coordinates of an element of `A`.
    fn form(&self, f: &[u32], g: &[u32]) -> Vec<u32> {
        let (n, r) = (self.n(), self.rank());
        let m = self.a.moduli();
        let mut out = vec![0u32; r];
        for l in 0..r {
            let modulus = m[l] as u64;
            let mut acc = 0u64;
            for x in 0..n {
                let fx = f[x * r + l] as u64;
                if fx == 0 {
                    continue;
                }
                for y in 0..n {
                    let j = self.jvals[self.diff[x * n + y] as usize].coords()[l] as u64;
                    acc += fx * j % modulus * g[y * r + l] as u64;
                }
            }
            out[l] = (acc % modulus) as u32;
        }
        out
    }

    fn in_kernel(&self, f: &[u32]) -> bool {
        let (n, r) = (self.n(), self.rank());
        let m = self.a.moduli();
        (0..n).all(|u| {
            (0..r).all(|l| {
                let modulus = m[l] as u64;
                let acc: u64 = (0..n)
                    .map(|x| {
                        let j = self.jvals[self.diff[x * n + u] as usize].coords()[l] as u64;
                        f[x * r + l] as u64 * j
                    })
                    .sum();
                acc % modulus == 0
            })
        })
    }

    /// Unit-multiple functions: `t` holds one scalar mod `l` per point,
    /// standing for the function `x -> t(x) * 1`.
    fn tv_add(&self, f: &[u32], g: &[u32]) -> Vec<u32> {
        f.iter().zip(g).map(|(&u, &v)| (u + v) % self.l).collect()
    }

    fn tv_neg(&self, f: &[u32]) -> Vec<u32> {
        f.iter().map(|&u| (self.l - u) % self.l).collect()
    }

    fn tv_shift(&self, a_idx: usize, f: &[u32]) -> Vec<u32> {
        let n = self.n();
        (0..n).map(|x| f[self.diff[x * n + a_idx] as usize]).collect()
    }

    /// `b(t*1, s*1)` as coordinates of an element of `A`.
    fn tv_form(&self, f: &[u32], g: &[u32]) -> Vec<u32> {
        let n = self.n();
        // c[d] = sum of t(x) s(y) over pairs with x - y = d, exactly.
        let mut c = vec![0u64; n];
        for x in 0..n {
            if f[x] == 0 {
                continue;
            }
            for y in 0..n {
                if g[y] != 0 {
                    c[self.diff[x * n + y] as usize] += f[x] as u64 * g[y] as u64;
                }
            }
        }
        let r = self.rank();
        let m = self.a.moduli();
        let mut out = vec![0u32; r];
        for l in 0..r {
            let modulus = m[l] as u64;
            let acc: u64 =
                (0..n).map(|d| c[d] % modulus * self.jvals[d].coords()[l] as u64).sum();
            out[l] = (acc % modulus) as u32;
        }
        out
    }

    /// Indices of `v(u) = sum_x t(x) j_{x-u}` for every `u`.
    fn tv_gram_idx(&self, f: &[u32]) -> Vec<usize> {
        let (n, r) = (self.n(), self.rank());
        let m = self.a.moduli();
        let mut coords = vec![0u32; r];
        (0..n)
            .map(|u| {
                for l in 0..r {
                    let modulus = m[l] as u64;
                    let acc: u64 = (0..n)
                        .map(|x| {
                            f[x] as u64 * self.jvals[self.diff[x * n + u] as usize].coords()[l] as u64
                        })
                        .sum();
                    coords[l] = (acc % modulus) as u32;
                }
                self.a.index_of(&AbElem(coords.clone()))
            })
            .collect()
    }

    fn tv_in_kernel(&self, f: &[u32]) -> bool {
        let (n, r) = (self.n(), self.rank());
        let m = self.a.moduli();
        (0..n).all(|u| {
            (0..r).all(|l| {
                let modulus = m[l] as u64;
                let acc: u64 = (0..n)
                    .map(|x| {
                        f[x] as u64 * self.jvals[self.diff[x * n + u] as usize].coords()[l] as u64
                    })
                    .sum();
                acc % modulus == 0
            })
        })
    }

    /// Scalar vector of the basis function `e_a`.
    fn e_tv(&self, a_idx: usize) -> Vec<u32> {
        let mut out = vec![0u32; self.n()];
        out[a_idx] = 1 % self.l;
        out
    }

}

/// The asymmetric product `A^A x| A` for a parameter family.
pub fn bj_brace(jf: &JFamily) -> Result<AsymBrace, AsymError> {
    let data = JData::new(jf)?;
    let d1 = Arc::clone(&data);
    let alpha: super::ElemMap = Arc::new(move |a: &AbElem, f: &AbElem| {
        AbElem(d1.alpha_shift(d1.a.index_of(a), f.coords()))
    });
    let d2 = Arc::clone(&data);
    let form: super::ElemMap =
        Arc::new(move |f: &AbElem, g: &AbElem| AbElem(d2.form(f.coords(), g.coords())));
    Ok(AsymBrace::new(data.t.clone(), data.a.clone(), alpha, form))
}

/// Brute-force kernel of the group matrix, as sorted indices into
/// `A^A`. The oracle of record for the linear-algebra description.
pub fn gram_radical_enumerated(jf: &JFamily) -> Result<Vec<usize>, AsymError> {
    let data = JData::new(jf)?;
    let nt = data.t.order();
    if nt > ENUMERATION_CAP {
        return Err(AsymError::EnumerationTooLarge(nt));
    }
    Ok((0..nt)
        .filter(|&ti| data.in_kernel(data.t.elem_at(ti).coords()))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalDim {
    pub component: usize,
    pub p: u32,
    pub dim: usize,
}

struct System {
    component: usize,
    p: u32,
    /// Kernel basis rows; row `i` has a `1` at `unit_cols[i]` and `0`
    /// at every other unit column.
    basis: Vec<Vec<u32>>,
    unit_cols: Vec<usize>,
}

struct CrtTable {
    systems: Vec<usize>,
    weights: Vec<u32>,
    lookup: Vec<u32>,
}

/// Kernel of the group matrix inside all of `A^A`, described by
/// per-prime nullspaces, for squarefree component moduli. Supports
/// canonical coset representatives.
pub struct GramRadical {
    systems: Vec<System>,
    crt: Vec<CrtTable>,
    order: u64,
}

impl GramRadical {
    pub fn compute(jf: &JFamily) -> Result<GramRadical, AsymError> {
        let data = JData::new(jf)?;
        let n = data.n();
        let mut systems = Vec::new();
        let mut crt = Vec::new();
        let mut order = 1u64;
        for (l, &m) in data.a.moduli().iter().enumerate() {
            let factors = factor(m);
            if factors.iter().any(|&(_, e)| e > 1) {
                return Err(AsymError::NotSquarefree { modulus: m });
            }
            let mut table = CrtTable {
                systems: Vec::new(),
                weights: Vec::new(),
                lookup: vec![0; m as usize],
            };
            let mut weight = 1u32;
            for &(p, _) in &factors {
                let rows: Vec<Vec<u32>> = (0..n)
                    .map(|c| {
                        (0..n)
                            .map(|x| data.jvals[data.diff[x * n + c] as usize].coords()[l] % p)
                            .collect()
                    })
                    .collect();
                let (basis, unit_cols) = nullspace_mod_p(&rows, p);
                order *= (p as u64).pow(basis.len() as u32);
                table.systems.push(systems.len());
                table.weights.push(weight);
                weight *= p;
                systems.push(System { component: l, p, basis, unit_cols });
            }
            for v in 0..m {
                let key: u32 = table
                    .systems
                    .iter()
                    .zip(&table.weights)
                    .map(|(&s, &w)| v % systems[s].p * w)
                    .sum();
                table.lookup[key as usize] = v;
            }
            crt.push(table);
        }
        Ok(GramRadical { systems, crt, order })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn dims(&self) -> Vec<RadicalDim> {
        self.systems
            .iter()
            .map(|s| RadicalDim { component: s.component, p: s.p, dim: s.basis.len() })
            .collect()
    }

    /// Rewrites `coords` (layout of `A^A`: per point, then per
    /// component) to the canonical representative of its coset: the
    /// unique member with zero residues at every unit column.
    fn canonicalize(&self, coords: &mut [u32], n: usize, r: usize) {
        let mut reduced: Vec<Vec<u32>> = Vec::with_capacity(self.systems.len());
        for sys in &self.systems {
            let p = sys.p;
            let mut v: Vec<u32> = (0..n).map(|x| coords[x * r + sys.component] % p).collect();
            for (i, &u) in sys.unit_cols.iter().enumerate() {
                let c = v[u];
                if c != 0 {
                    for x in 0..n {
                        let s = c * sys.basis[i][x] % p;
                        v[x] = (v[x] + p - s) % p;
                    }
                }
            }
            reduced.push(v);
        }
        for (l, table) in self.crt.iter().enumerate() {
            for x in 0..n {
                let key: u32 = table
                    .systems
                    .iter()
                    .zip(&table.weights)
                    .map(|(&s, &w)| reduced[s][x] * w)
                    .sum();
                coords[x * r + l] = table.lookup[key as usize];
            }
        }
    }

    pub fn is_member(&self, coords: &[u32], n: usize, r: usize) -> bool {
        let mut c = coords.to_vec();
        self.canonicalize(&mut c, n, r);
        c.iter().all(|&v| v == 0)
    }
}

/// Kernel size of the group matrix, through linear algebra when the
/// moduli are squarefree and through enumeration otherwise.
pub fn gram_radical_order(jf: &JFamily) -> Result<u64, AsymError> {
    let squarefree = jf
        .group()
        .moduli()
        .iter()
        .all(|&m| factor(m).iter().all(|&(_, e)| e == 1));
    if squarefree {
        Ok(GramRadical::compute(jf)?.order())
    } else {
        Ok(gram_radical_enumerated(jf)?.len() as u64)
    }
}

struct SpanSystem {
    p: u32,
    /// Kernel basis rows over `F_p`, unit at their own free column.
    basis: Vec<Vec<u32>>,
    unit_cols: Vec<usize>,
    rep_cols: Vec<usize>,
}

/// Kernel of the group matrix restricted to the unit-multiple
/// functions `(Z/L)^A`: one nullspace per prime dividing `L`, stacking
/// the rows of every component that prime touches. Doubles as the
/// canonical-coset codec for the quotient.
struct SpanRadical {
    systems: Vec<SpanSystem>,
    weights: Vec<u32>,
    /// CRT reassembly: residues keyed by `sum residue_p * weight_p`
    /// map back to a value mod `L`.
    lookup: Vec<u32>,
    order: u64,
}

impl SpanRadical {
    fn compute(data: &JData) -> Result<SpanRadical, AsymError> {
        let n = data.n();
        let factors = factor(data.l);
        if factors.iter().any(|&(_, e)| e > 1) {
            return Err(AsymError::NotSquarefree { modulus: data.l });
        }
        let mut systems = Vec::new();
        let mut weights = Vec::new();
        let mut order = 1u64;
        let mut weight = 1u32;
        for &(p, _) in &factors {
            let mut rows = Vec::new();
            for (comp, &m) in data.a.moduli().iter().enumerate() {
                if m % p != 0 {
                    continue;
                }
                for c in 0..n {
                    rows.push(
                        (0..n)
                            .map(|x| data.jvals[data.diff[x * n + c] as usize].coords()[comp] % p)
                            .collect::<Vec<u32>>(),
                    );
                }
            }
            let (basis, unit_cols) = nullspace_mod_p(&rows, p);
            let rep_cols: Vec<usize> = (0..n).filter(|c| !unit_cols.contains(c)).collect();
            order *= (p as u64).pow(basis.len() as u32);
            weights.push(weight);
            weight *= p;
            systems.push(SpanSystem { p, basis, unit_cols, rep_cols });
        }
        let mut lookup = vec![0u32; data.l as usize];
        for v in 0..data.l {
            let key: u32 = systems.iter().zip(&weights).map(|(s, &w)| v % s.p * w).sum();
            lookup[key as usize] = v;
        }
        Ok(SpanRadical { systems, weights, lookup, order })
    }

    fn quotient_order(&self) -> usize {
        self.systems
            .iter()
            .map(|s| (s.p as usize).pow(s.rep_cols.len() as u32))
            .product()
    }

    /// Rewrites a scalar vector to the canonical representative of its
    /// coset: the unique member with zero residues at every unit
    /// column.
    fn canonicalize(&self, t: &mut [u32]) {
        let n = t.len();
        let mut reduced: Vec<Vec<u32>> = Vec::with_capacity(self.systems.len());
        for sys in &self.systems {
            let p = sys.p;
            let mut v: Vec<u32> = t.iter().map(|&u| u % p).collect();
            for (i, &u) in sys.unit_cols.iter().enumerate() {
                let c = v[u];
                if c != 0 {
                    for x in 0..n {
                        let s = c * sys.basis[i][x] % p;
                        v[x] = (v[x] + p - s) % p;
                    }
                }
            }
            reduced.push(v);
        }
        for x in 0..n {
            let key: u32 =
                reduced.iter().zip(&self.weights).map(|(v, &w)| v[x] * w).sum();
            t[x] = self.lookup[key as usize];
        }
    }

    #[cfg(test)]
    fn is_member(&self, t: &[u32]) -> bool {
        let mut c = t.to_vec();
        self.canonicalize(&mut c);
        c.iter().all(|&v| v == 0)
    }

    /// Packs a canonical representative into a quotient index.
    fn encode(&self, t: &[u32]) -> usize {
        let mut acc = 0usize;
        for sys in &self.systems {
            for &x in &sys.rep_cols {
                acc = acc * sys.p as usize + (t[x] % sys.p) as usize;
            }
        }
        acc
    }

    fn decode(&self, mut idx: usize, n: usize) -> Vec<u32> {
        let mut residues: Vec<Vec<u32>> = self.systems.iter().map(|_| vec![0u32; n]).collect();
        for (k, sys) in self.systems.iter().enumerate().rev() {
            for &x in sys.rep_cols.iter().rev() {
                residues[k][x] = (idx % sys.p as usize) as u32;
                idx /= sys.p as usize;
            }
        }
        let mut t = vec![0u32; n];
        for x in 0..n {
            let key: u32 =
                residues.iter().zip(&self.weights).map(|(v, &w)| v[x] * w).sum();
            t[x] = self.lookup[key as usize];
        }
        t
    }
}

/// The additive span of the distinguished pairs, carried by scalar
/// vectors: element `code * n + h` stands for `(t*1, h)` with `t` the
/// base-`L` digits of `code`.
struct SpanCarrier {
    data: Arc<JData>,
    tn: usize,
}

impl SpanCarrier {
    fn tv(&self, mut code: usize) -> Vec<u32> {
        let l = self.data.l as usize;
        (0..self.data.n())
            .map(|_| {
                let d = (code % l) as u32;
                code /= l;
                d
            })
            .collect()
    }

    fn code(&self, t: &[u32]) -> usize {
        let l = self.data.l as usize;
        t.iter().rev().fold(0usize, |acc, &d| acc * l + d as usize)
    }
}

impl Brace for SpanCarrier {
    fn order(&self) -> usize {
        self.tn * self.data.n()
    }

    fn zero(&self) -> usize {
        0
    }

    fn add(&self, i: usize, j: usize) -> usize {
        let n = self.data.n();
        let (f, ai) = (self.tv(i / n), i % n);
        let (g, ci) = (self.tv(j / n), j % n);
        let bform = self.data.a.index_of(&AbElem(self.data.tv_form(&f, &g)));
        let h = self.data.sum[(self.data.sum[ai * n + ci] as usize) * n + bform] as usize;
        self.code(&self.data.tv_add(&f, &g)) * n + h
    }

    fn neg(&self, i: usize) -> usize {
        let n = self.data.n();
        let (f, ai) = (self.tv(i / n), i % n);
        let bff = self.data.a.index_of(&AbElem(self.data.tv_form(&f, &f)));
        let h = self.data.sum[self.data.neg_idx(ai) * n + bff] as usize;
        self.code(&self.data.tv_neg(&f)) * n + h
    }

    fn mul(&self, i: usize, j: usize) -> usize {
        let n = self.data.n();
        let (f, ai) = (self.tv(i / n), i % n);
        let (g, ci) = (self.tv(j / n), j % n);
        let shifted = self.data.tv_shift(ai, &g);
        self.code(&self.data.tv_add(&f, &shifted)) * n + self.data.sum[ai * n + ci] as usize
    }

    fn inv(&self, i: usize) -> usize {
        let n = self.data.n();
        let (f, ai) = (self.tv(i / n), i % n);
        let na = self.data.neg_idx(ai);
        self.code(&self.data.tv_neg(&self.data.tv_shift(na, &f))) * n + na
    }
}

enum Kind {
    Linear { rad: SpanRadical },
    Dense { brace: DenseBrace, class_of: Vec<usize>, reps: Vec<usize> },
}

/// The span of the distinguished pairs modulo its socle: the brace
/// carried by the permutation group of the square-carrier solution.
pub struct BjModel {
    jf: JFamily,
    data: Arc<JData>,
    socle_order: u64,
    kind: Kind,
}

/// Builds the socle quotient of the span of the pairs `(e_a, c)`.
pub fn bj_quotient(jf: &JFamily) -> Result<BjModel, AsymError> {
    let data = JData::new(jf)?;
    let squarefree = factor(data.l).iter().all(|&(_, e)| e == 1);
    if squarefree {
        let rad = SpanRadical::compute(&data)?;
        let socle_order = rad.order;
        return Ok(BjModel { jf: jf.clone(), data, socle_order, kind: Kind::Linear { rad } });
    }

    let n = data.n() as u64;
    let tn = (0..data.n()).fold(1u64, |acc, _| acc.saturating_mul(data.l as u64));
    let full = tn.saturating_mul(n);
    if full > DENSE_BRACE_CAP as u64 {
        return Err(AsymError::EnumerationTooLarge(full.min(usize::MAX as u64) as usize));
    }
    let carrier = SpanCarrier { data: Arc::clone(&data), tn: tn as usize };
    let dense_span = DenseBrace::from_brace(&carrier)?;
    let socle: Vec<usize> = (0..carrier.tn)
        .filter(|&c| data.tv_in_kernel(&carrier.tv(c)))
        .map(|c| c * data.n())
        .collect();
    let (brace, class_of) = quotient_brace(&dense_span, &socle)?;
    let mut reps = vec![usize::MAX; brace.order()];
    for (x, &k) in class_of.iter().enumerate() {
        if reps[k] == usize::MAX {
            reps[k] = x;
        }
    }
    assert_eq!(class_of[0], 0, "the zero class must be labeled 0");
    Ok(BjModel {
        jf: jf.clone(),
        data,
        socle_order: socle.len() as u64,
        kind: Kind::Dense { brace, class_of, reps },
    })
}

impl BjModel {
    pub fn family(&self) -> &JFamily {
        &self.jf
    }

    /// Order of the socle of the span: the restricted kernel paired
    /// with the zero shift.
    pub fn socle_order(&self) -> u64 {
        self.socle_order
    }

    /// Order of the span itself: `L^|A| * |A|`.
    pub fn span_order(&self) -> u64 {
        let n = self.data.n() as u64;
        (0..self.data.n())
            .fold(1u64, |acc, _| acc.saturating_mul(self.data.l as u64))
            .saturating_mul(n)
    }

    /// True when the model works through per-prime canonical forms
    /// rather than dense coset tables.
    pub fn is_linear(&self) -> bool {
        matches!(self.kind, Kind::Linear { .. })
    }

    fn h_order(&self) -> usize {
        self.data.n()
    }

    /// Canonical representative of a class: scalar vector and `H`
    /// index.
    fn rep_coords(&self, q: usize) -> (Vec<u32>, usize) {
        let n = self.data.n();
        match &self.kind {
            Kind::Linear { rad } => (rad.decode(q / n, n), q % n),
            Kind::Dense { reps, .. } => {
                let carrier = reps[q];
                let l = self.data.l as usize;
                let mut code = carrier / n;
                let t = (0..n)
                    .map(|_| {
                        let d = (code % l) as u32;
                        code /= l;
                        d
                    })
                    .collect();
                (t, carrier % n)
            }
        }
    }

    fn pack(&self, mut t: Vec<u32>, h_idx: usize) -> usize {
        let n = self.data.n();
        match &self.kind {
            Kind::Linear { rad } => {
                rad.canonicalize(&mut t);
                rad.encode(&t) * n + h_idx
            }
            Kind::Dense { class_of, .. } => {
                let l = self.data.l as usize;
                let code = t.iter().rev().fold(0usize, |acc, &d| acc * l + d as usize);
                class_of[code * n + h_idx]
            }
        }
    }

    /// Quotient index of the class of `(e_a, c)` for the square-carrier
    /// point `(a, c)`.
    pub fn x_class(&self, a_idx: usize, c_idx: usize) -> usize {
        self.pack(self.data.e_tv(a_idx), c_idx)
    }

    /// All `|A|^2` distinguished classes, in point-index order.
    pub fn x_classes(&self) -> Vec<usize> {
        let n = self.data.n();
        (0..n).flat_map(|a| (0..n).map(move |c| (a, c))).map(|(a, c)| self.x_class(a, c)).collect()
    }

    /// The class of `(e_0, 0)`, the target of the span certificate.
    pub fn base(&self) -> usize {
        self.x_class(0, 0)
    }

    /// The permutation of the square carrier induced by a class:
    /// `(c1, c2) -> (c1 + a, c2 - v(c1 + a))` with `v` the gram vector
    /// of the function part. Constant on classes since the kernel drops
    /// out of `v`.
    pub fn phi(&self, q: usize) -> Perm {
        let n = self.data.n();
        let (t, a_idx) = self.rep_coords(q);
        let v = self.data.tv_gram_idx(&t);
        let mut img = vec![0usize; n * n];
        for c1 in 0..n {
            let c1p = self.data.sum[c1 * n + a_idx] as usize;
            let w = v[c1p];
            for c2 in 0..n {
                let c2p = self.data.diff[c2 * n + w] as usize;
                img[c1 * n + c2] = c1p * n + c2p;
            }
        }
        Perm::from_images(&img).expect("fiberwise shifts are bijective")
    }
}

impl Brace for BjModel {
    fn order(&self) -> usize {
        match &self.kind {
            Kind::Linear { rad } => rad.quotient_order() * self.h_order(),
            Kind::Dense { brace, .. } => brace.order(),
        }
    }

    fn zero(&self) -> usize {
        0
    }

    fn add(&self, i: usize, j: usize) -> usize {
        match &self.kind {
            Kind::Dense { brace, .. } => brace.add(i, j),
            Kind::Linear { .. } => {
                let (f, ai) = self.rep_coords(i);
                let (g, ci) = self.rep_coords(j);
                let n = self.data.n();
                let bform = self.data.a.index_of(&AbElem(self.data.tv_form(&f, &g)));
                let h = self.data.sum[(self.data.sum[ai * n + ci] as usize) * n + bform] as usize;
                self.pack(self.data.tv_add(&f, &g), h)
            }
        }
    }

    fn neg(&self, i: usize) -> usize {
        match &self.kind {
            Kind::Dense { brace, .. } => brace.neg(i),
            Kind::Linear { .. } => {
                let (f, ai) = self.rep_coords(i);
                let n = self.data.n();
                let bff = self.data.a.index_of(&AbElem(self.data.tv_form(&f, &f)));
                let h = self.data.sum[self.data.neg_idx(ai) * n + bff] as usize;
                self.pack(self.data.tv_neg(&f), h)
            }
        }
    }

    fn mul(&self, i: usize, j: usize) -> usize {
        match &self.kind {
            Kind::Dense { brace, .. } => brace.mul(i, j),
            Kind::Linear { .. } => {
                let (f, ai) = self.rep_coords(i);
                let (g, ci) = self.rep_coords(j);
                let n = self.data.n();
                let shifted = self.data.tv_shift(ai, &g);
                self.pack(self.data.tv_add(&f, &shifted), self.data.sum[ai * n + ci] as usize)
            }
        }
    }

    fn inv(&self, i: usize) -> usize {
        match &self.kind {
            Kind::Dense { brace, .. } => brace.inv(i),
            Kind::Linear { .. } => {
                let (f, ai) = self.rep_coords(i);
                let na = self.data.neg_idx(ai);
                self.pack(self.data.tv_neg(&self.data.tv_shift(na, &f)), na)
            }
        }
    }
}

/// Runs the span certificate in the socle quotient: simplicity of the
/// quotient is equivalent to the base class lying in the additive span
/// of all pairwise differences of the distinguished classes. Requires a
/// family passing the simplicity criterion.
pub fn simplepermu_certificate(jf: &JFamily) -> Result<CertificateReport, AsymError> {
    if !simple_criterion(jf)? {
        return Err(AsymError::NotSimpleFamily);
    }
    let model = bj_quotient(jf)?;
    let nq = Brace::order(&model);
    if nq > CERTIFICATE_CAP {
        return Err(AsymError::EnumerationTooLarge(nq));
    }
    Ok(difference_span_certificate(&model, &model.x_classes(), model.base()))
}

/// Cross-check of the socle quotient against the permutation group of
/// the square-carrier solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermGroupBraceReport {
    pub group_order: usize,
    pub quotient_order: usize,
    pub span_order: u64,
    pub socle_order: u64,
    /// Distinguished classes map exactly onto the sigma permutations.
    pub sigma_match: bool,
    /// `phi(q o x) = phi(q) . sigma_x` over every class and point.
    pub multiplicative: bool,
    /// `phi(q + x) = phi(q) . sigma_{phi(q)^-1(x)}` over every class
    /// and point.
    pub additive: bool,
    /// Only the zero class maps to the identity permutation.
    pub injective: bool,
    /// Every class maps into the permutation closure.
    pub image_in_group: bool,
    pub bijective: bool,
    /// The distinguished classes generate the quotient additively.
    pub additively_generated: bool,
}

impl PermGroupBraceReport {
    pub fn ok(&self) -> bool {
        self.sigma_match
            && self.multiplicative
            && self.additive
            && self.injective
            && self.image_in_group
            && self.bijective
            && self.additively_generated
    }
}

/// Verifies that the class map `phi` is an isomorphism from the socle
/// quotient onto the permutation group of the solution, with the brace
/// addition mirrored by the generator rule.
pub fn permgroup_brace_map(jf: &JFamily, cap: usize) -> Result<PermGroupBraceReport, AsymError> {
    let s = jf.build_solution()?;
    let closure = permutation_group(&s, cap);
    if !closure.complete {
        return Err(AsymError::IncompleteGroup);
    }
    let model = bj_quotient(jf)?;
    let nq = Brace::order(&model);
    let npts = s.n();
    let xcs = model.x_classes();
    let sigmas: Vec<Perm> = (0..npts).map(|x| s.sigma_perm(x)).collect();

    let sigma_match = (0..npts).all(|pt| model.phi(xcs[pt]) == sigmas[pt]);
    let mut multiplicative = true;
    let mut additive = true;
    let mut injective = true;
    let mut image_in_group = true;
    for q in 0..nq {
        let pq = model.phi(q);
        if pq.is_identity() && q != model.zero() {
            injective = false;
        }
        if image_in_group && !closure.contains(&pq) {
            image_in_group = false;
        }
        let pq_inv = pq.inverse();
        for pt in 0..npts {
            if multiplicative {
                let lhs = model.phi(model.mul(q, xcs[pt]));
                multiplicative = lhs == pq.compose(&sigmas[pt]);
            }
            if additive {
                let lhs = model.phi(model.add(q, xcs[pt]));
                additive = lhs == pq.compose(&sigmas[pq_inv.apply(pt)]);
            }
        }
    }

    Ok(PermGroupBraceReport {
        group_order: closure.order(),
        quotient_order: nq,
        span_order: model.span_order(),
        socle_order: model.socle_order(),
        sigma_match,
        multiplicative,
        additive,
        injective,
        image_in_group,
        bijective: injective && closure.order() == nq,
        additively_generated: generates_additively(&model, &xcs),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::a2::tests::{klein_example, z6_example};
    use crate::a2::{exsimple_family, JFamily};
    use crate::abelian::AbGroup;
    use crate::brace::{is_simple_brace, verify_axioms};
    use crate::solution::DEFAULT_GROUP_CAP;

    #[test]
    fn small_function_space_brace_passes_all_axioms() {
        // A = Z/2 with the unique symmetric family j = (0, 1): the
        // brace has order 2^2 * 2 = 8 and dense tables are exact.
        let g = AbGroup::cyclic(2).unwrap();
        let jf = JFamily::from_indices(g, &[0, 1]).unwrap();
        let b = bj_brace(&jf).unwrap();
        assert!(b.validate().structure_ok);
        let rep = verify_axioms(&b);
        assert!(rep.ok(), "{rep:?}");
        assert!(rep.triples.exhaustive);
    }

    #[test]
    fn klein_brace_validates_and_has_radical_sixteen() {
        let jf = klein_example();
        let b = bj_brace(&jf).unwrap();
        assert!(b.validate().structure_ok);
        let rad = gram_radical_enumerated(&jf).unwrap();
        assert_eq!(rad.len(), 16);
        let linear = GramRadical::compute(&jf).unwrap();
        assert_eq!(linear.order(), 16);
        // Same set, not just the same size.
        let data = JData::new(&jf).unwrap();
        for ti in 0..data.t.order() {
            let coords = data.t.elem_at(ti).coords().to_vec();
            assert_eq!(
                rad.binary_search(&ti).is_ok(),
                linear.is_member(&coords, data.n(), data.rank()),
            );
        }
    }

    #[test]
    fn radical_is_invariant_under_index_shifts() {
        for jf in [klein_example(), exsimple_family(3).unwrap()] {
            let data = JData::new(&jf).unwrap();
            for &ti in &gram_radical_enumerated(&jf).unwrap() {
                let coords = data.t.elem_at(ti).coords().to_vec();
                for c in 0..data.n() {
                    assert!(data.in_kernel(&data.alpha_shift(c, &coords)));
                }
            }
        }
    }

    #[test]
    fn z6_radical_is_trivial_and_quotient_has_order_six_to_the_seventh() {
        let jf = z6_example();
        assert_eq!(gram_radical_order(&jf).unwrap(), 1);
        let model = bj_quotient(&jf).unwrap();
        assert!(model.is_linear());
        assert_eq!(model.socle_order(), 1);
        assert_eq!(Brace::order(&model), 279_936); // 6^7
    }

    #[test]
    fn exsimple3_radical_and_quotient_orders() {
        let jf = exsimple_family(3).unwrap();
        let rad = gram_radical_enumerated(&jf).unwrap();
        assert_eq!(rad.len(), 3888);
        assert_eq!(gram_radical_order(&jf).unwrap(), 3888);
        let model = bj_quotient(&jf).unwrap();
        // A is cyclic, so the span is the whole function-space brace
        // and its socle is the full kernel.
        assert_eq!(model.socle_order(), 3888);
        assert_eq!(Brace::order(&model), 72); // 6^7 / 3888
    }

    #[test]
    fn exsimple7_radical_dimensions_by_linear_algebra() {
        let jf = exsimple_family(7).unwrap();
        let rad = GramRadical::compute(&jf).unwrap();
        let d2: usize = rad.dims().iter().filter(|d| d.p == 2).map(|d| d.dim).sum();
        let d7: usize = rad.dims().iter().filter(|d| d.p == 7).map(|d| d.dim).sum();
        assert_eq!((d2, d7), (8, 9));
        assert_eq!(rad.order(), 2u64.pow(8) * 7u64.pow(9));
        let model = bj_quotient(&jf).unwrap();
        // 2^(14-8) * 7^(14-9) * 14
        assert_eq!(Brace::order(&model), 15_059_072);
        assert_eq!(model.span_order(), model.socle_order() * Brace::order(&model) as u64);
    }

    #[test]
    fn klein_span_is_carried_by_unit_multiples() {
        // The span's function parts take values in Z*1, which in
        // (Z/2)^2 is the two-element diagonal: 2^4 scalar patterns
        // against 2^8 functions overall.
        let jf = klein_example();
        let model = bj_quotient(&jf).unwrap();
        assert!(model.is_linear());
        assert_eq!(model.span_order(), 64);
        assert_eq!(model.socle_order(), 2);
        assert_eq!(Brace::order(&model), 32);

        // Brute-force cross-check of the restricted kernel: only the
        // two constant patterns die against every basis function, and
        // the linear-algebra codec agrees pattern by pattern.
        let data = JData::new(&jf).unwrap();
        let rad = SpanRadical::compute(&data).unwrap();
        let n = data.n();
        let mut members = Vec::new();
        for code in 0..16usize {
            let t: Vec<u32> = (0..n).map(|x| (code >> x) as u32 & 1).collect();
            assert_eq!(rad.is_member(&t), data.tv_in_kernel(&t));
            if data.tv_in_kernel(&t) {
                members.push(t);
            }
        }
        assert_eq!(members, vec![vec![0; 4], vec![1; 4]]);

        // The quotient is an honest brace of order 2^5 and, like every
        // brace of prime-power order, it is not simple.
        let dense = crate::brace::DenseBrace::from_brace(&model).unwrap();
        assert!(verify_axioms(&dense).ok());
        assert!(!is_simple_brace(&dense));
    }

    #[test]
    fn quotient_model_is_a_brace_in_both_realizations() {
        // Dense path: A = Z/4 (modulus not squarefree).
        let g = AbGroup::cyclic(4).unwrap();
        let jf = JFamily::from_indices(g, &[0, 1, 0, 1]).unwrap();
        let model = bj_quotient(&jf).unwrap();
        assert!(!model.is_linear());
        let rep = verify_axioms(&model);
        assert!(rep.ok(), "{rep:?}");

        // Linear path on the same order of magnitude: A = Z/6.
        let model = bj_quotient(&exsimple_family(3).unwrap()).unwrap();
        let rep = verify_axioms(&model);
        assert!(rep.ok(), "{rep:?}");
    }

    #[test]
    fn x_classes_realize_the_sigma_permutations() {
        for jf in [exsimple_family(3).unwrap(), klein_example()] {
            let s = jf.build_solution().unwrap();
            let model = bj_quotient(&jf).unwrap();
            let xcs = model.x_classes();
            for pt in 0..s.n() {
                assert_eq!(model.phi(xcs[pt]), s.sigma_perm(pt));
            }
        }
    }

    #[test]
    fn certificate_agrees_with_the_ideal_oracle_on_small_families() {
        // The quotient for the Klein-group family has order 2^5; a
        // prime-power brace is never simple, and the certificate
        // reports exactly that.
        let rep = simplepermu_certificate(&klein_example()).unwrap();
        assert_eq!(rep.order, 32);
        assert!(!rep.target_in_span);
        let dense = crate::brace::DenseBrace::from_brace(&bj_quotient(&klein_example()).unwrap())
            .unwrap();
        assert_eq!(rep.target_in_span, is_simple_brace(&dense));

        let rep = simplepermu_certificate(&exsimple_family(3).unwrap()).unwrap();
        assert_eq!(rep.order, 72);
        assert!(rep.target_in_span);
        let dense =
            crate::brace::DenseBrace::from_brace(&bj_quotient(&exsimple_family(3).unwrap()).unwrap())
                .unwrap();
        assert_eq!(rep.target_in_span, is_simple_brace(&dense));
    }

    #[test]
    fn certificate_requires_the_simplicity_criterion() {
        let g = AbGroup::cyclic(2).unwrap();
        let jf = JFamily::from_indices(g, &[0, 0]).unwrap();
        assert!(matches!(
            simplepermu_certificate(&jf),
            Err(AsymError::NotSimpleFamily)
        ));
    }

    #[test]
    fn certificate_confirms_the_simple_quotient_for_exsimple7() {
        let rep = simplepermu_certificate(&exsimple_family(7).unwrap()).unwrap();
        assert_eq!(rep.order, 15_059_072);
        assert!(rep.target_in_span);
        assert_eq!(rep.span_size, rep.order);
    }

    #[test]
    fn permutation_group_matches_the_quotient_for_exsimple3() {
        let jf = exsimple_family(3).unwrap();
        let report = permgroup_brace_map(&jf, DEFAULT_GROUP_CAP).unwrap();
        assert!(report.ok(), "{report:?}");
        assert_eq!(report.group_order, 72);
        assert_eq!(report.socle_order, 3888);
    }

    #[test]
    fn permutation_group_matches_the_quotient_for_the_klein_family() {
        let report = permgroup_brace_map(&klein_example(), DEFAULT_GROUP_CAP).unwrap();
        assert!(report.ok(), "{report:?}");
        assert_eq!(report.group_order, 32);
        assert_eq!(report.quotient_order, 32);
        assert_eq!((report.span_order, report.socle_order), (64, 2));
    }

    #[test]
    fn permutation_group_of_the_zero_family_is_a_plain_shift() {
        // j = 0 over Z/2: every sigma shifts the first coordinate, so
        // the group is Z/2 and the whole span collapses onto it.
        let g = AbGroup::cyclic(2).unwrap();
        let jf = JFamily::from_indices(g, &[0, 0]).unwrap();
        let report = permgroup_brace_map(&jf, DEFAULT_GROUP_CAP).unwrap();
        assert!(report.ok(), "{report:?}");
        assert_eq!(report.group_order, 2);
        assert_eq!(report.quotient_order, 2);
    }

    #[test]
    fn span_is_a_left_ideal_of_the_function_space_brace() {
        // The quotient model rests on the span being closed under
        // every lambda map of the *full* function-space brace, not
        // just under its own operations. The Klein-group family is
        // the one small case where the span is proper (64 of 1024),
        // so check the closure there element by element.
        let jf = klein_example();
        let full = bj_brace(&jf).unwrap();
        let data = JData::new(&jf).unwrap();
        let (n, r, l) = (data.n(), data.rank(), data.l);
        let m = data.a.moduli().to_vec();
        let in_span = |i: usize| -> bool {
            let (f, _) = full.decode(i);
            (0..n).all(|x| {
                (0..l).any(|k| (0..r).all(|c| f.coords()[x * r + c] == k % m[c]))
            })
        };
        let order = Brace::order(&full);
        let span: Vec<usize> = (0..order).filter(|&i| in_span(i)).collect();
        assert_eq!(span.len(), 64);
        for &x in &span {
            assert!(in_span(full.neg(x)));
            for &y in &span {
                assert!(in_span(full.add(x, y)));
            }
        }
        for a in 0..order {
            for &x in &span {
                assert!(in_span(full.lambda(a, x)), "lambda_{a} leaves the span at {x}");
            }
        }
    }
}
