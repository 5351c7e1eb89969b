//! Left braces: one carrier with an abelian group `(B, +)` and a group
//! `(B, o)` sharing a neutral element and linked by
//! `a o (b + c) + a = a o b + a o c`.
//!
//! Elements are referred to by stable indices `0..order`, so every
//! realization (dense tables or structured products) exposes the same
//! interface and all derived machinery works uniformly. The map
//! `lambda_a(b) = -a + a o b` is the lambda action; its fixed structure
//! (socle, ideals, orbits, additive spans) drives the simplicity
//! analysis.

mod cert;
mod dense;

pub use cert::{difference_span_certificate, CertificateReport};
pub use dense::{DenseBrace, DenseBraceFile};

use crate::solution::{SolutionError, SolutionTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest order for which dense tables and quadratic sweeps are allowed.
pub const DENSE_BRACE_CAP: usize = 4096;

/// Triple laws are checked exhaustively up to this order and sampled
/// above it.
pub const EXHAUSTIVE_TRIPLE_CAP: usize = 512;

/// Number of sampled triples per law above the exhaustive cap.
pub const SAMPLED_TRIPLES: usize = 100_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BraceError {
    #[error("malformed brace table: {0}")]
    Malformed(String),
    #[error("no additive neutral element")]
    NoAdditiveNeutral,
    #[error("no multiplicative neutral element")]
    NoMultiplicativeNeutral,
    #[error("additive neutral {zero} differs from multiplicative neutral {one}")]
    NeutralMismatch { zero: usize, one: usize },
    #[error("{table} table row {a} has no solution of {table}(a, x) = neutral")]
    MissingInverse { table: &'static str, a: usize },
    #[error("order {0} exceeds the dense cap")]
    TooLarge(usize),
    #[error("subset is not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("subset {x} is not closed under the lambda action of the orbit")]
    OrbitNotClosed { x: usize },
    #[error(transparent)]
    Solution(#[from] SolutionError),
}

/// Operation contract for a finite left brace over indices `0..order`.
pub trait Brace {
    fn order(&self) -> usize;
    /// The shared neutral element of both operations.
    fn zero(&self) -> usize;
    fn add(&self, a: usize, b: usize) -> usize;
    fn neg(&self, a: usize) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;

    fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `lambda_a(b) = -a + a o b`.
    fn lambda(&self, a: usize, b: usize) -> usize {
        self.add(self.neg(a), self.mul(a, b))
    }

    /// Solves `lambda_a(x) = b`: `x = a^-1 o (a + b)`.
    fn lambda_inv(&self, a: usize, b: usize) -> usize {
        self.mul(self.inv(a), self.add(a, b))
    }
}

/// How much of a law was checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scope {
    pub checked: usize,
    pub exhaustive: bool,
}

/// Outcome of the axiom sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub order: usize,
    pub zero: usize,
    pub additive_group: bool,
    pub multiplicative_group: bool,
    pub shared_neutral: bool,
    pub brace_law: bool,
    /// Scope of the associativity and brace-law triple sweeps.
    pub triples: Scope,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.additive_group && self.multiplicative_group && self.shared_neutral && self.brace_law
    }
}

/// Checks both group structures, the shared neutral element and the
/// brace law. Unary and pair laws are always exhaustive; triple laws are
/// exhaustive up to [`EXHAUSTIVE_TRIPLE_CAP`] and deterministically
/// sampled above it.
pub fn verify_axioms<B: Brace + ?Sized>(b: &B) -> AxiomReport {
    let n = b.order();
    let zero = b.zero();
    let mut witness: Option<String> = None;
    let note = |cond: bool, slot: &mut Option<String>, msg: &dyn Fn() -> String| -> bool {
        if !cond && slot.is_none() {
            *slot = Some(msg());
        }
        cond
    };

    let mut additive = true;
    let mut multiplicative = true;
    let mut shared = true;
    for a in 0..n {
        additive &= note(b.add(zero, a) == a && b.add(a, zero) == a, &mut witness, &|| {
            format!("zero is not additively neutral at {a}")
        });
        additive &= note(b.add(a, b.neg(a)) == zero, &mut witness, &|| {
            format!("{a} + neg({a}) is not zero")
        });
        shared &= note(b.mul(zero, a) == a && b.mul(a, zero) == a, &mut witness, &|| {
            format!("zero is not multiplicatively neutral at {a}")
        });
        multiplicative &= note(b.mul(a, b.inv(a)) == zero, &mut witness, &|| {
            format!("{a} o inv({a}) is not neutral")
        });
    }
    for a in 0..n {
        for c in 0..n {
            additive &= note(b.add(a, c) == b.add(c, a), &mut witness, &|| {
                format!("addition not commutative at ({a}, {c})")
            });
        }
    }

    let exhaustive = n <= EXHAUSTIVE_TRIPLE_CAP;
    let mut add_assoc = true;
    let mut mul_assoc = true;
    let mut brace_law = true;
    let mut check_triple = |a: usize, c: usize, d: usize, witness: &mut Option<String>| {
        add_assoc &= {
            let ok = b.add(b.add(a, c), d) == b.add(a, b.add(c, d));
            note(ok, witness, &|| format!("addition not associative at ({a}, {c}, {d})"))
        };
        mul_assoc &= {
            let ok = b.mul(b.mul(a, c), d) == b.mul(a, b.mul(c, d));
            note(ok, witness, &|| {
                format!("multiplication not associative at ({a}, {c}, {d})")
            })
        };
        brace_law &= {
            let ok = b.add(b.mul(a, b.add(c, d)), a) == b.add(b.mul(a, c), b.mul(a, d));
            note(ok, witness, &|| format!("brace law fails at ({a}, {c}, {d})"))
        };
    };

    let checked;
    if exhaustive {
        for a in 0..n {
            for c in 0..n {
                for d in 0..n {
                    check_triple(a, c, d, &mut witness);
                }
            }
        }
        checked = n * n * n;
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0b1ace);
        for _ in 0..SAMPLED_TRIPLES {
            let a = rng.gen_range(0..n);
            let c = rng.gen_range(0..n);
            let d = rng.gen_range(0..n);
            check_triple(a, c, d, &mut witness);
        }
        checked = SAMPLED_TRIPLES;
    }

    AxiomReport {
        order: n,
        zero,
        additive_group: additive && add_assoc,
        multiplicative_group: multiplicative && mul_assoc,
        shared_neutral: shared,
        brace_law,
        triples: Scope { checked, exhaustive },
        witness,
    }
}

/// Checks `lambda_{a o b} = lambda_a . lambda_b` and additivity of every
/// `lambda_a` on the given scope of pairs.
pub fn lambda_laws_hold<B: Brace + ?Sized>(b: &B) -> bool {
    let n = b.order();
    if n > EXHAUSTIVE_TRIPLE_CAP {
        let mut rng = ChaCha8Rng::seed_from_u64(0x1a3bda);
        return (0..SAMPLED_TRIPLES).all(|_| {
            let (a, c, d) = (
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            );
            lambda_law_at(b, a, c, d)
        });
    }
    (0..n).all(|a| (0..n).all(|c| (0..n).all(|d| lambda_law_at(b, a, c, d))))
}

fn lambda_law_at<B: Brace + ?Sized>(b: &B, a: usize, c: usize, d: usize) -> bool {
    b.lambda(b.mul(a, c), d) == b.lambda(a, b.lambda(c, d))
        && b.lambda(a, b.add(c, d)) == b.add(b.lambda(a, c), b.lambda(a, d))
        && b.lambda_inv(a, b.lambda(a, d)) == d
}

/// The socle: all `a` with `a o c = a + c` for every `c`, i.e. the kernel
/// of the lambda action.
pub fn socle<B: Brace + ?Sized>(b: &B) -> Vec<usize> {
    let n = b.order();
    (0..n)
        .filter(|&a| (0..n).all(|c| b.mul(a, c) == b.add(a, c)))
        .collect()
}

/// The difference `a - b` computed three ways: directly, as
/// `a + lambda_b(b^-1)`, and as `a o lambda_{a^-1 o b}(b^-1)`; the routes
/// must agree.
pub fn difference<B: Brace + ?Sized>(b: &B, x: usize, y: usize) -> usize {
    let routes = difference_routes(b, x, y);
    assert!(
        routes[0] == routes[1] && routes[1] == routes[2],
        "difference routes disagree: {routes:?}"
    );
    routes[0]
}

pub fn difference_routes<B: Brace + ?Sized>(b: &B, x: usize, y: usize) -> [usize; 3] {
    let direct = b.sub(x, y);
    let additive = b.add(x, b.lambda(y, b.inv(y)));
    let multiplicative = b.mul(x, b.lambda(b.mul(b.inv(x), y), b.inv(y)));
    [direct, additive, multiplicative]
}

/// The solution `r(a, c) = (lambda_a(c), lambda^-1_{lambda_a(c)}(a))` on
/// the whole carrier, verified in full.
pub fn associated_solution<B: Brace + ?Sized>(b: &B) -> Result<SolutionTable, BraceError> {
    let n = b.order();
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|c| b.lambda(a, c)).collect())
        .collect();
    Ok(SolutionTable::from_sigma(&rows)?)
}

/// Smallest set containing `x` and closed under every `lambda_a`.
pub fn lambda_orbit<B: Brace + ?Sized>(b: &B, x: usize) -> Vec<usize> {
    let n = b.order();
    let mut member = vec![false; n];
    let mut list = vec![x];
    member[x] = true;
    let mut next = 0;
    while next < list.len() {
        let u = list[next];
        next += 1;
        for a in 0..n {
            let v = b.lambda(a, u);
            if !member[v] {
                member[v] = true;
                list.push(v);
            }
        }
    }
    list.sort_unstable();
    list
}

/// The additive subgroup generated by `gens` (closure under addition
/// reaches inverses in a finite group).
pub fn additive_span<B: Brace + ?Sized>(b: &B, gens: &[usize]) -> Vec<usize> {
    let n = b.order();
    let mut member = vec![false; n];
    let mut list = vec![b.zero()];
    member[b.zero()] = true;
    let mut next = 0;
    while next < list.len() {
        let u = list[next];
        next += 1;
        for &g in gens {
            let v = b.add(u, g);
            if !member[v] {
                member[v] = true;
                list.push(v);
            }
        }
    }
    list.sort_unstable();
    list
}

pub fn generates_additively<B: Brace + ?Sized>(b: &B, gens: &[usize]) -> bool {
    additive_span(b, gens).len() == b.order()
}

/// The ideal generated by `x`: closure under addition, negation, the
/// lambda action and multiplicative conjugation.
pub fn ideal_generated<B: Brace + ?Sized>(b: &B, x: usize) -> Vec<usize> {
    let n = b.order();
    let mut member = vec![false; n];
    let mut list = vec![x];
    member[x] = true;
    let push = |v: usize, member: &mut Vec<bool>, list: &mut Vec<usize>| {
        if !member[v] {
            member[v] = true;
            list.push(v);
        }
    };
    let mut next = 0;
    while next < list.len() && list.len() < n {
        let u = list[next];
        next += 1;
        push(b.neg(u), &mut member, &mut list);
        for a in 0..n {
            push(b.lambda(a, u), &mut member, &mut list);
            push(b.mul(b.mul(a, u), b.inv(a)), &mut member, &mut list);
        }
        let mut k = 0;
        while k < list.len() {
            push(b.add(u, list[k]), &mut member, &mut list);
            k += 1;
        }
    }
    if list.len() == n {
        return (0..n).collect();
    }
    list.sort_unstable();
    list
}

/// Validates that a subset is an ideal: an additive subgroup, invariant
/// under every `lambda_a` and under multiplicative conjugation.
pub fn is_ideal<B: Brace + ?Sized>(b: &B, subset: &[usize]) -> Result<(), BraceError> {
    let n = b.order();
    let mut member = vec![false; n];
    for &x in subset {
        if x >= n {
            return Err(BraceError::NotAnIdeal(format!("{x} out of range")));
        }
        member[x] = true;
    }
    if !member[b.zero()] {
        return Err(BraceError::NotAnIdeal("missing the neutral element".into()));
    }
    for &x in subset {
        if !member[b.neg(x)] {
            return Err(BraceError::NotAnIdeal(format!("not closed under negation at {x}")));
        }
        for &y in subset {
            if !member[b.add(x, y)] {
                return Err(BraceError::NotAnIdeal(format!(
                    "not closed under addition at ({x}, {y})"
                )));
            }
        }
        for a in 0..n {
            if !member[b.lambda(a, x)] {
                return Err(BraceError::NotAnIdeal(format!(
                    "not lambda-invariant at lambda_{a}({x})"
                )));
            }
            if !member[b.mul(b.mul(a, x), b.inv(a))] {
                return Err(BraceError::NotAnIdeal(format!(
                    "not conjugation-invariant at {a} o {x} o {a}^-1"
                )));
            }
        }
    }
    Ok(())
}

/// True when the only ideals are trivial; bounded by the dense cap.
pub fn is_simple_brace<B: Brace + ?Sized>(b: &B) -> bool {
    let n = b.order();
    assert!(n > 1, "simplicity is defined for nontrivial braces");
    assert!(n <= DENSE_BRACE_CAP, "{}", BraceError::TooLarge(n));
    (1..n).all(|x| ideal_generated(b, x).len() == n)
}

/// The quotient brace by an ideal, with cosets labeled by least member.
pub fn quotient_brace<B: Brace + ?Sized>(
    b: &B,
    ideal: &[usize],
) -> Result<(DenseBrace, Vec<usize>), BraceError> {
    let n = b.order();
    if n > DENSE_BRACE_CAP {
        return Err(BraceError::TooLarge(n));
    }
    is_ideal(b, ideal)?;

    // Additive cosets; for an ideal these coincide with multiplicative
    // cosets, which the rebuilt tables verify implicitly.
    let mut coset_of = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let k = reps.len();
        for &i in ideal {
            let y = b.add(x, i);
            if coset_of[y] == usize::MAX {
                coset_of[y] = k;
            } else if coset_of[y] != k {
                return Err(BraceError::NotAnIdeal(
                    "cosets do not partition the carrier".into(),
                ));
            }
        }
        reps.push(x);
    }

    let m = reps.len();
    let add: Vec<Vec<usize>> = (0..m)
        .map(|i| (0..m).map(|j| coset_of[b.add(reps[i], reps[j])]).collect())
        .collect();
    let mul: Vec<Vec<usize>> = (0..m)
        .map(|i| (0..m).map(|j| coset_of[b.mul(reps[i], reps[j])]).collect())
        .collect();
    let q = DenseBrace::from_tables(&add, &mul)?;
    let report = verify_axioms(&q);
    if !report.ok() {
        return Err(BraceError::NotAnIdeal(format!(
            "quotient fails brace axioms: {}",
            report.witness.unwrap_or_default()
        )));
    }
    Ok((q, coset_of))
}

/// The associated solution restricted to a lambda-closed subset (for
/// example a lambda orbit), with points labeled by position in the sorted
/// subset.
pub fn solution_from_orbit<B: Brace + ?Sized>(
    b: &B,
    orbit: &[usize],
) -> Result<SolutionTable, BraceError> {
    let mut points = orbit.to_vec();
    points.sort_unstable();
    points.dedup();
    let position = |v: usize| points.binary_search(&v).ok();
    let mut rows = Vec::with_capacity(points.len());
    for &x in &points {
        let mut row = Vec::with_capacity(points.len());
        for &y in &points {
            let v = b.lambda(x, y);
            match position(v) {
                Some(p) => row.push(p),
                None => return Err(BraceError::OrbitNotClosed { x: v }),
            }
        }
        rows.push(row);
    }
    Ok(SolutionTable::from_sigma(&rows)?)
}
