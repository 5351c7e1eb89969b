//! Asymmetric products: braces built from two abelian groups `T` and
//! `H`, an action of `H` on `T` by automorphisms, and a symmetric
//! bilinear form `b : T x T -> H` invariant under the action. The
//! carrier is `T x H` with
//!
//! ```text
//! (f, a) o (g, c) = (f + alpha_a(g), a + c)
//! (f, a) + (g, c) = (f + g, a + c + b(f, g))
//! ```
//!
//! The multiplicative part is a semidirect product and the additive part
//! a central-extension-style twist of the direct sum; together they form
//! a left brace.

mod bj;
mod companion;
mod linalg;

pub use bj::{
    bj_brace, bj_quotient, gram_radical_enumerated, gram_radical_order, permgroup_brace_map,
    simplepermu_certificate, BjModel, GramRadical, PermGroupBraceReport, ENUMERATION_CAP,
};
pub use companion::{
    companion_data, mod6_counterexample_brace, theorem_example_brace, theorem_example_orbit,
    theorem_example_solution_iso, CompanionData, OrbitIsoReport,
};

use crate::a2::A2Error;
use crate::abelian::{AbElem, AbGroup, AbelianError};
use crate::brace::{Brace, BraceError};
use crate::solution::SolutionError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AsymError {
    #[error(transparent)]
    Group(#[from] AbelianError),
    #[error(transparent)]
    Family(#[from] A2Error),
    #[error(transparent)]
    Brace(#[from] BraceError),
    #[error(transparent)]
    Solution(#[from] SolutionError),
    #[error("component modulus {modulus} is not squarefree; the linear radical needs squarefree moduli")]
    NotSquarefree { modulus: u32 },
    #[error("function space of size {0} exceeds the enumeration cap")]
    EnumerationTooLarge(usize),
    #[error("the parameter family fails the simplicity criterion; the certificate requires it")]
    NotSimpleFamily,
    #[error("the second prime must be odd")]
    SecondPrimeEven,
    #[error("permutation group exceeded the exploration cap")]
    IncompleteGroup,
    #[error("structure validation failed: {0}")]
    Invalid(String),
}

/// Closure form of the action and of the bilinear form.
pub type ElemMap = Arc<dyn Fn(&AbElem, &AbElem) -> AbElem + Send + Sync>;

/// An asymmetric product brace with closures for the action and the
/// form. Carrier indices interleave `T` (major) and `H` (minor).
#[derive(Clone)]
pub struct AsymBrace {
    t: AbGroup,
    h: AbGroup,
    alpha: ElemMap,
    form: ElemMap,
}

impl AsymBrace {
    /// `alpha(a, f)` is the action of `a in H` on `f in T`; `form(f, g)`
    /// is the symmetric bilinear form. Structural laws are checked
    /// by [`AsymBrace::validate`], not here.
    pub fn new(t: AbGroup, h: AbGroup, alpha: ElemMap, form: ElemMap) -> AsymBrace {
        AsymBrace { t, h, alpha, form }
    }

    pub fn t(&self) -> &AbGroup {
        &self.t
    }

    pub fn h(&self) -> &AbGroup {
        &self.h
    }

    pub fn alpha(&self, a: &AbElem, f: &AbElem) -> AbElem {
        (self.alpha)(a, f)
    }

    pub fn form(&self, f: &AbElem, g: &AbElem) -> AbElem {
        (self.form)(f, g)
    }

    pub fn encode(&self, f: &AbElem, a: &AbElem) -> usize {
        self.t.index_of(f) * self.h.order() + self.h.index_of(a)
    }

    pub fn decode(&self, i: usize) -> (AbElem, AbElem) {
        let (ti, hi) = (i / self.h.order(), i % self.h.order());
        (self.t.elem_at(ti), self.h.elem_at(hi))
    }

    /// Checks the action and form laws. Exhaustive when the carrier is
    /// small, otherwise deterministically sampled.
    pub fn validate(&self) -> AsymReport {
        let nt = self.t.order();
        let nh = self.h.order();
        let exhaustive = nt.saturating_mul(nt).saturating_mul(nh) <= 1 << 22;
        let mut witness = None;
        let check = |f: &AbElem, g: &AbElem, a: &AbElem, c: &AbElem, w: &mut Option<String>| {
            let mut ok = true;
            // Action by additive automorphisms, compatible with H.
            ok &= self.alpha(a, &self.t.add(f, g)) == self.t.add(&self.alpha(a, f), &self.alpha(a, g));
            ok &= self.alpha(&self.h.add(a, c), f) == self.alpha(a, &self.alpha(c, f));
            ok &= self.alpha(&self.h.zero(), f) == *f;
            if !ok && w.is_none() {
                *w = Some(format!("action law fails at a={a:?}, f={f:?}"));
            }
            // Symmetric, biadditive, action-invariant form.
            let mut fok = self.form(f, g) == self.form(g, f);
            fok &= self.form(&self.t.add(f, g), &self.alpha(a, f))
                == self.h.add(&self.form(f, &self.alpha(a, f)), &self.form(g, &self.alpha(a, f)));
            fok &= self.form(&self.alpha(a, f), &self.alpha(a, g)) == self.form(f, g);
            if !fok && w.is_none() {
                *w = Some(format!("form law fails at f={f:?}, g={g:?}, a={a:?}"));
            }
            ok && fok
        };

        let mut all_ok = true;
        let checked;
        if exhaustive {
            let mut count = 0;
            for fi in 0..nt {
                let f = self.t.elem_at(fi);
                for gi in 0..nt {
                    let g = self.t.elem_at(gi);
                    for ai in 0..nh {
                        let a = self.h.elem_at(ai);
                        all_ok &= check(&f, &g, &a, &self.h.elem_at((ai + 1) % nh), &mut witness);
                        count += 1;
                    }
                }
            }
            checked = count;
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0xa57b);
            checked = 50_000;
            for _ in 0..checked {
                let f = self.t.elem_at(rng.gen_range(0..nt));
                let g = self.t.elem_at(rng.gen_range(0..nt));
                let a = self.h.elem_at(rng.gen_range(0..nh));
                let c = self.h.elem_at(rng.gen_range(0..nh));
                all_ok &= check(&f, &g, &a, &c, &mut witness);
            }
        }
        AsymReport {
            structure_ok: all_ok,
            checked,
            exhaustive,
            witness,
        }
    }
}

impl std::fmt::Debug for AsymBrace {
    fn fmt(&self, fmt: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fmt.debug_struct("AsymBrace")
            .field("t", &self.t)
            .field("h", &self.h)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsymReport {
    pub structure_ok: bool,
    pub checked: usize,
    pub exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Brace for AsymBrace {
    fn order(&self) -> usize {
        self.t.order() * self.h.order()
    }

    fn zero(&self) -> usize {
        0
    }

    fn add(&self, i: usize, j: usize) -> usize {
        let (f, a) = self.decode(i);
        let (g, c) = self.decode(j);
        let h = self.h.add(&self.h.add(&a, &c), &self.form(&f, &g));
        self.encode(&self.t.add(&f, &g), &h)
    }

    fn neg(&self, i: usize) -> usize {
        let (f, a) = self.decode(i);
        let h = self.h.add(&self.h.neg(&a), &self.form(&f, &f));
        self.encode(&self.t.neg(&f), &h)
    }

    fn mul(&self, i: usize, j: usize) -> usize {
        let (f, a) = self.decode(i);
        let (g, c) = self.decode(j);
        self.encode(&self.t.add(&f, &self.alpha(&a, &g)), &self.h.add(&a, &c))
    }

    fn inv(&self, i: usize) -> usize {
        let (f, a) = self.decode(i);
        let na = self.h.neg(&a);
        self.encode(&self.t.neg(&self.alpha(&na, &f)), &na)
    }
}
